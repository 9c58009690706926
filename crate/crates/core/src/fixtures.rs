//! Reference networks and a seeded random-network generator.
//!
//! All fixture variables are binary with states `false`/`true` (index 0/1),
//! except `SEASON` whose states are `summer`/`winter`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Dag, VariableId};
use crate::network::{Cpt, Network, Variable};
use crate::rng::UniformStream;

/// `[1 - p, p]` with the complement rounded to 12 decimals, so 0.1 gives
/// exactly the literal 0.9.
fn bern(p: f64) -> Vec<f64> {
    vec![libm::round((1.0 - p) * 1e12) / 1e12, p]
}

fn build(names: &[&str], edges: &[(&str, &str)], variables: Vec<Variable>, rows: Vec<Vec<Vec<f64>>>) -> Network {
    let dag = Dag::new(names, edges).expect("fixture graph is acyclic");
    let cpts = dag.ids().zip(rows).map(|(v, r)| Cpt::new(v, dag.parents(v).to_vec(), r)).collect();
    Network::new(dag, variables, cpts).expect("fixture network is valid")
}

/// Three-node chain `Z -> X -> Y` (C1).
pub fn chain() -> Network {
    build(
        &["Z", "X", "Y"],
        &[("Z", "X"), ("X", "Y")],
        vec![Variable::binary("Z"), Variable::binary("X"), Variable::binary("Y")],
        vec![vec![bern(0.5)], vec![bern(0.1), bern(0.9)], vec![bern(0.1), bern(0.9)]],
    )
}

/// Sprinkler network (F1): season drives sprinkler and rain, both wet the
/// grass, wet grass is slippery.
pub fn sprinkler() -> Network {
    build(
        &["SEASON", "SPRINKLER", "RAIN", "WET", "SLIPPERY"],
        &[("SEASON", "SPRINKLER"), ("SEASON", "RAIN"), ("SPRINKLER", "WET"), ("RAIN", "WET"), ("WET", "SLIPPERY")],
        vec![
            Variable::new("SEASON", &["summer", "winter"]),
            Variable::binary("SPRINKLER"),
            Variable::binary("RAIN"),
            Variable::binary("WET"),
            Variable::binary("SLIPPERY"),
        ],
        vec![
            vec![vec![0.5, 0.5]],
            // summer, winter
            vec![bern(0.7), bern(0.1)],
            vec![bern(0.2), bern(0.6)],
            // (sprinkler, rain): ff, ft, tf, tt
            vec![bern(0.1), bern(0.8), bern(0.9), bern(0.99)],
            vec![bern(0.05), bern(0.8)],
        ],
    )
}

/// Burglary network (F2): `BURGLAR -> ALARM <- EARTHQUAKE`, `BURGLAR -> FOOTPRINTS`.
pub fn holmes() -> Network {
    build(
        &["BURGLAR", "EARTHQUAKE", "ALARM", "FOOTPRINTS"],
        &[("BURGLAR", "ALARM"), ("EARTHQUAKE", "ALARM"), ("BURGLAR", "FOOTPRINTS")],
        vec![
            Variable::binary("BURGLAR"),
            Variable::binary("EARTHQUAKE"),
            Variable::binary("ALARM"),
            Variable::binary("FOOTPRINTS"),
        ],
        vec![
            vec![bern(0.01)],
            vec![bern(0.02)],
            // (burglar, earthquake): ff, ft, tf, tt
            vec![bern(0.001), bern(0.30), bern(0.95), bern(0.98)],
            vec![bern(0.05), bern(0.9)],
        ],
    )
}

/// Parameters for [`random_network`].
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub nodes: usize,
    pub edge_probability: f64,
    /// CPT entries `P(state 1 | parents)` are drawn uniformly from this range.
    pub entry_range: (f64, f64),
    /// When set, the generator only keeps graphs whose skeleton is a tree or forest.
    pub polytree: bool,
}

impl RandomSpec {
    pub fn binary(nodes: usize) -> RandomSpec {
        RandomSpec { nodes, edge_probability: 0.5, entry_range: (0.05, 0.95), polytree: false }
    }
}

/// Random binary network over `V0..V{n-1}`.
///
/// A random permutation fixes the causal order; each forward pair becomes an
/// edge with the given probability. The declared variable order is the index
/// order, so the causal order is generally not the index order.
pub fn random_network(seed: u64, spec: RandomSpec) -> Network {
    let mut rng = UniformStream::new(seed);
    let n = spec.nodes;
    let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = ((rng.next_f64() * (i + 1) as f64) as usize).min(i);
        order.swap(i, j);
    }
    let mut edges = Vec::new();
    // union-find over the skeleton, only consulted for polytrees
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            v = root[v];
        }
        v
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() >= spec.edge_probability {
                continue;
            }
            let (p, c) = (order[i], order[j]);
            if spec.polytree {
                let (a, b) = (find(&mut root, p), find(&mut root, c));
                if a == b {
                    continue;
                }
                root[a] = b;
            }
            edges.push((VariableId(p), VariableId(c)));
        }
    }
    let dag = Dag::from_indices(names.clone(), &edges).expect("forward edges cannot form a cycle");
    let (lo, hi) = spec.entry_range;
    let cpts = dag
        .ids()
        .map(|v| {
            let rows = 1usize << dag.parents(v).len();
            let rows = (0..rows).map(|_| lo + (hi - lo) * rng.next_f64()).map(|p| vec![1.0 - p, p]).collect();
            Cpt::new(v, dag.parents(v).to_vec(), rows)
        })
        .collect();
    let variables = names.iter().map(|n| Variable::binary(n)).collect();
    Network::new(dag, variables, cpts).expect("generated network is valid")
}
