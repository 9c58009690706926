//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the reachability, elimination or message-passing code under test.

#![allow(dead_code)]

use pcg_core::{Dag, Network, VariableId};

/// Every DAG over `n` labelled nodes: each unordered pair is absent, forward
/// or backward, and cyclic choices are dropped.
pub fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let names: Vec<String> = (0..n).map(|i| format!("N{i}")).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            match c % 3 {
                1 => edges.push((VariableId(i), VariableId(j))),
                2 => edges.push((VariableId(j), VariableId(i))),
                _ => {}
            }
            c /= 3;
        }
        if let Ok(dag) = Dag::from_indices(names.clone(), &edges) {
            out.push(dag);
        }
    }
    out
}

/// Transitive closure by Floyd-Warshall.
pub fn reachability(dag: &Dag) -> Vec<Vec<bool>> {
    let n = dag.len();
    let mut r = vec![vec![false; n]; n];
    for (p, c) in dag.edges() {
        r[p.0][c.0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// d-separation by enumerating every simple undirected path between `x` and
/// `y` and testing each interior node against the blocking rules.
pub fn dsep_by_paths(dag: &Dag, x: VariableId, y: VariableId, given: &[VariableId]) -> bool {
    let reach = reachability(dag);
    let n = dag.len();
    let adjacent =
        |a: usize, b: usize| dag.has_edge(VariableId(a), VariableId(b)) || dag.has_edge(VariableId(b), VariableId(a));
    let open_collider = |v: usize| given.iter().any(|g| g.0 == v || reach[v][g.0]);
    let mut path = vec![x.0];
    let mut on_path = vec![false; n];
    on_path[x.0] = true;

    fn walk(
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        target: usize,
        n: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        blocked: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if last == target {
            return !blocked(path);
        }
        for next in 0..n {
            if on_path[next] || !adjacent(last, next) {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            let open = walk(path, on_path, target, n, adjacent, blocked);
            on_path[next] = false;
            path.pop();
            if open {
                return true;
            }
        }
        false
    }

    let blocked = |p: &[usize]| {
        p.windows(3).any(|w| {
            let (a, m, b) = (w[0], w[1], w[2]);
            let collider = dag.has_edge(VariableId(a), VariableId(m)) && dag.has_edge(VariableId(b), VariableId(m));
            if collider {
                !open_collider(m)
            } else {
                given.iter().any(|g| g.0 == m)
            }
        })
    };
    !walk(&mut path, &mut on_path, y.0, n, &adjacent, &blocked)
}

/// Sum of `joint_probability` over all complete assignments matching `fixed`.
pub fn brute_marginal(net: &Network, fixed: &[(VariableId, usize)]) -> f64 {
    let arities = net.arities();
    let mut total = 0.0;
    let mut a = vec![0usize; arities.len()];
    loop {
        if fixed.iter().all(|&(v, s)| a[v.0] == s) {
            total += net.joint_probability(&a).unwrap();
        }
        let mut i = arities.len();
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < arities[i] {
                break;
            }
            a[i] = 0;
        }
    }
}

/// P(target = state | evidence) by brute summation.
pub fn brute_posterior(net: &Network, target: VariableId, evidence: &[(VariableId, usize)]) -> Vec<f64> {
    let den = brute_marginal(net, evidence);
    (0..net.arity(target))
        .map(|s| {
            let mut ev = evidence.to_vec();
            ev.push((target, s));
            brute_marginal(net, &ev) / den
        })
        .collect()
}

/// Every configuration of `vars` as (variable, state) pairs.
pub fn configurations(net: &Network, vars: &[VariableId]) -> Vec<Vec<(VariableId, usize)>> {
    let mut out = vec![Vec::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|c: Vec<(VariableId, usize)>| {
                (0..net.arity(v)).map(move |s| {
                    let mut c = c.clone();
                    c.push((v, s));
                    c
                })
            })
            .collect();
    }
    out
}

/// Link pairs by unbounded witness search with a path-enumeration d-separation oracle.
pub fn brute_links(dag: &Dag, order: &[VariableId], max_cond: usize) -> Vec<(VariableId, VariableId)> {
    let mut out = Vec::new();
    for (i, &x) in order.iter().enumerate() {
        let preds = &order[..i];
        for &y in &order[i + 1..] {
            let found = preds.iter().any(|&z| {
                let pool: Vec<VariableId> = preds.iter().copied().filter(|&v| v != z).collect();
                (0u32..1 << pool.len()).any(|mask| {
                    let s: Vec<VariableId> =
                        pool.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
                    if s.len() > max_cond {
                        return false;
                    }
                    let mut sx = s.clone();
                    sx.push(x);
                    !dsep_by_paths(dag, z, y, &s) && dsep_by_paths(dag, z, y, &sx)
                })
            });
            if found {
                out.push((x, y));
            }
        }
    }
    out
}
