//! Directed acyclic graphs over named variables.
//!
//! A [`Dag`] is validated once at construction and never mutated afterwards.
//! Nodes are addressed by [`VariableId`], the dense position of the variable
//! in the declaration order.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use thiserror::Error;

/// Dense index of a variable inside a [`Dag`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId(pub usize);

impl VariableId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("EmptyName: variable names must be non-empty")]
    EmptyName,
    #[error("DuplicateName: variable `{0}` declared twice")]
    DuplicateName(String),
    #[error("UnknownEndpoint: edge endpoint `{0}` is not a declared variable")]
    UnknownEndpoint(String),
    #[error("DuplicateEdge: edge `{0}` -> `{1}` listed twice")]
    DuplicateEdge(String, String),
    #[error("CycleDetected: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("OverlappingSets: query variables must be distinct and outside the conditioning set")]
    OverlappingSets,
}

/// A validated directed acyclic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    parents: Vec<Vec<VariableId>>,
    children: Vec<Vec<VariableId>>,
}

impl Dag {
    /// Builds a DAG from variable names and `(parent, child)` name pairs.
    ///
    /// Parent and child lists are kept sorted by index. Fails on empty or
    /// duplicate names, unknown endpoints, repeated edges and cycles; a
    /// self-edge is reported as a one-node cycle.
    pub fn new<N, E>(variable_names: &[N], edges: &[(E, E)]) -> Result<Dag, GraphError>
    where
        N: AsRef<str>,
        E: AsRef<str>,
    {
        let mut names: Vec<String> = Vec::with_capacity(variable_names.len());
        for n in variable_names {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if names.iter().any(|m| m == n) {
                return Err(GraphError::DuplicateName(n.to_string()));
            }
            names.push(n.to_string());
        }
        let lookup = |n: &str| {
            names.iter().position(|m| m == n).map(VariableId).ok_or_else(|| GraphError::UnknownEndpoint(n.to_string()))
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (p, c) in edges {
            pairs.push((lookup(p.as_ref())?, lookup(c.as_ref())?));
        }
        Dag::from_indices(names, &pairs)
    }

    /// Builds a DAG from owned names and index pairs.
    pub fn from_indices(names: Vec<String>, edges: &[(VariableId, VariableId)]) -> Result<Dag, GraphError> {
        let n = names.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(p, c) in edges {
            if p.0 >= n {
                return Err(GraphError::UnknownEndpoint(p.to_string()));
            }
            if c.0 >= n {
                return Err(GraphError::UnknownEndpoint(c.to_string()));
            }
            if p == c {
                return Err(GraphError::CycleDetected(vec![names[p.0].clone(), names[p.0].clone()]));
            }
            if children[p.0].contains(&c) {
                return Err(GraphError::DuplicateEdge(names[p.0].clone(), names[c.0].clone()));
            }
            children[p.0].push(c);
            parents[c.0].push(p);
        }
        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
        }
        let dag = Dag { names, parents, children };
        if let Some(cycle) = dag.find_cycle() {
            return Err(GraphError::CycleDetected(cycle.into_iter().map(|v| dag.names[v.0].clone()).collect()));
        }
        Ok(dag)
    }

    /// Returns one directed cycle (first node repeated at the end), if any.
    fn find_cycle(&self) -> Option<Vec<VariableId>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.len();
        let mut state = vec![0u8; n];
        let mut stack: Vec<(VariableId, usize)> = Vec::new();
        let mut path: Vec<VariableId> = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            stack.push((VariableId(start), 0));
            path.push(VariableId(start));
            state[start] = 1;
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                if let Some(&c) = self.children[v.0].get(top.1) {
                    top.1 += 1;
                    match state[c.0] {
                        0 => {
                            state[c.0] = 1;
                            stack.push((c, 0));
                            path.push(c);
                        }
                        1 => {
                            let at = path.iter().position(|&p| p == c).unwrap_or(0);
                            let mut cycle = path[at..].to_vec();
                            cycle.push(c);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[v.0] = 2;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VariableId> + '_ {
        (0..self.len()).map(VariableId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VariableId) -> &str {
        &self.names[v.0]
    }

    /// Looks a variable up by name.
    pub fn id(&self, name: &str) -> Option<VariableId> {
        self.names.iter().position(|n| n == name).map(VariableId)
    }

    pub fn contains(&self, v: VariableId) -> bool {
        v.0 < self.len()
    }

    fn check(&self, v: VariableId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVariable(v.to_string()))
        }
    }

    /// Parents of `v`, sorted by index.
    pub fn parents(&self, v: VariableId) -> &[VariableId] {
        &self.parents[v.0]
    }

    /// Children of `v`, sorted by index.
    pub fn children(&self, v: VariableId) -> &[VariableId] {
        &self.children[v.0]
    }

    /// All edges as `(parent, child)`, ordered by parent then child.
    pub fn edges(&self) -> Vec<(VariableId, VariableId)> {
        self.ids().flat_map(|p| self.children[p.0].iter().map(move |&c| (p, c))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, parent: VariableId, child: VariableId) -> bool {
        self.contains(parent) && self.children[parent.0].binary_search(&child).is_ok()
    }

    /// Kahn's algorithm; among ready nodes the lowest index goes first.
    pub fn topological_order(&self) -> Vec<VariableId> {
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<VariableId>> =
            self.ids().filter(|v| indegree[v.0] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &c in &self.children[v.0] {
                indegree[c.0] -= 1;
                if indegree[c.0] == 0 {
                    ready.push(Reverse(c));
                }
            }
        }
        order
    }

    /// Nodes reachable from `x` by a directed path, excluding `x`.
    pub fn descendants(&self, x: VariableId) -> Result<BTreeSet<VariableId>, GraphError> {
        self.check(x)?;
        let mut seen = BTreeSet::new();
        let mut stack: Vec<VariableId> = self.children[x.0].clone();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.children[v.0].iter().copied());
            }
        }
        Ok(seen)
    }

    /// Nodes from which `x` is reachable, excluding `x`.
    pub fn ancestors(&self, x: VariableId) -> Result<BTreeSet<VariableId>, GraphError> {
        self.check(x)?;
        let mut seen = BTreeSet::new();
        let mut stack: Vec<VariableId> = self.parents[x.0].clone();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.parents[v.0].iter().copied());
            }
        }
        Ok(seen)
    }

    /// Whether `x` and `y` are d-separated by `given`.
    ///
    /// Reachability formulation: a trail is explored as (node, direction)
    /// states, where "up" means the node was entered from a child and "down"
    /// means it was entered from a parent. Observed nodes stop chains and
    /// forks; a collider passes only if it is in `given` or has a descendant
    /// there.
    pub fn d_separated(&self, x: VariableId, y: VariableId, given: &[VariableId]) -> Result<bool, GraphError> {
        self.check(x)?;
        self.check(y)?;
        for &s in given {
            self.check(s)?;
        }
        if x == y || given.contains(&x) || given.contains(&y) {
            return Err(GraphError::OverlappingSets);
        }
        let n = self.len();
        let mut observed = vec![false; n];
        for &s in given {
            observed[s.0] = true;
        }
        // Observed nodes and their ancestors: the colliders that let a trail through.
        let mut opens_collider = vec![false; n];
        let mut stack: Vec<VariableId> = given.to_vec();
        while let Some(v) = stack.pop() {
            if !opens_collider[v.0] {
                opens_collider[v.0] = true;
                stack.extend(self.parents[v.0].iter().copied());
            }
        }

        const UP: usize = 0;
        const DOWN: usize = 1;
        let mut visited = vec![[false; 2]; n];
        let mut queue: Vec<(VariableId, usize)> = vec![(x, UP)];
        while let Some((v, dir)) = queue.pop() {
            if visited[v.0][dir] {
                continue;
            }
            visited[v.0][dir] = true;
            if v == y {
                return Ok(false);
            }
            if dir == UP {
                if !observed[v.0] {
                    queue.extend(self.parents[v.0].iter().map(|&p| (p, UP)));
                    queue.extend(self.children[v.0].iter().map(|&c| (c, DOWN)));
                }
            } else {
                if !observed[v.0] {
                    queue.extend(self.children[v.0].iter().map(|&c| (c, DOWN)));
                }
                if opens_collider[v.0] {
                    queue.extend(self.parents[v.0].iter().map(|&p| (p, UP)));
                }
            }
        }
        Ok(true)
    }

    /// True iff the undirected skeleton has no cycle.
    pub fn is_polytree(&self) -> bool {
        let mut root: Vec<usize> = (0..self.len()).collect();
        fn find(root: &mut [usize], mut v: usize) -> usize {
            while root[v] != v {
                root[v] = root[root[v]];
                v = root[v];
            }
            v
        }
        for (p, c) in self.edges() {
            let (a, b) = (find(&mut root, p.0), find(&mut root, c.0));
            if a == b {
                return false;
            }
            root[a] = b;
        }
        true
    }

    /// Same graph without the given edge; used to build mutants in checks.
    pub fn without_edge(&self, parent: VariableId, child: VariableId) -> Dag {
        let edges: Vec<_> = self.edges().into_iter().filter(|&e| e != (parent, child)).collect();
        Dag::from_indices(self.names.clone(), &edges).expect("removing an edge keeps a DAG acyclic")
    }
}
