//! Conditional independence `I(X, Y | S)`.
//!
//! Three answerers share the [`CiOracle`] interface: [`ExactOracle`] reads a
//! joint table, [`GTestOracle`] runs a G-test on data and [`DsepOracle`]
//! reads d-separation off a graph. [`check_markov`] and
//! [`check_faithfulness`] compare a joint table with a graph.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Dag, GraphError, VariableId};
use crate::network::{Dataset, JointTable};
use crate::stats::chi_square_sf;
use crate::subsets::for_each_subset;

/// Default significance level of the G-test.
pub const DEFAULT_ALPHA: f64 = 0.01;

/// Largest number of triples [`check_faithfulness`] enumerates by default.
pub const DEFAULT_TRIPLE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CiError {
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("OverlappingSets: query variables must be distinct and outside the conditioning set")]
    OverlappingSets,
    #[error("EmptyDataset: no rows to test")]
    EmptyDataset,
    #[error("DegenerateStrata: every conditioning stratum is empty")]
    DegenerateStrata,
    #[error("VariableMismatch: joint table and graph describe different variables")]
    VariableMismatch,
    #[error("TooLarge: {triples} independence triples exceed the cap of {cap}")]
    TooLarge { triples: usize, cap: usize },
    #[error("InvalidParameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The triple `(x, y, s)`. `s` is kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CiQuery {
    pub x: VariableId,
    pub y: VariableId,
    pub s: Vec<VariableId>,
}

impl CiQuery {
    pub fn new(x: VariableId, y: VariableId, s: &[VariableId]) -> Result<CiQuery, CiError> {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        if x == y || s.contains(&x) || s.contains(&y) {
            return Err(CiError::OverlappingSets);
        }
        Ok(CiQuery { x, y, s })
    }

    pub fn swapped(&self) -> CiQuery {
        CiQuery { x: self.y, y: self.x, s: self.s.clone() }
    }

    fn variables(&self) -> impl Iterator<Item = VariableId> + '_ {
        [self.x, self.y].into_iter().chain(self.s.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiMethod {
    Exact,
    GTest,
    DSeparation,
}

impl CiMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CiMethod::Exact => "exact",
            CiMethod::GTest => "g_test",
            CiMethod::DSeparation => "d_separation",
        }
    }
}

/// Verdict for one query.
///
/// Exact decisions report `statistic = 0`, `p_value = 1` when independent;
/// when dependent the statistic is the largest deviation
/// `|P(x,y|s) - P(x|s) P(y|s)|` found and `p_value = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CiDecision {
    pub query: CiQuery,
    pub independent: bool,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub method: CiMethod,
}

/// Anything that can answer `I(X, Y | S)` queries.
pub trait CiOracle {
    /// The variables this oracle can be asked about.
    fn variables(&self) -> Vec<VariableId>;

    fn decide(&self, query: &CiQuery) -> Result<CiDecision, CiError>;
}

impl<T: CiOracle + ?Sized> CiOracle for &T {
    fn variables(&self) -> Vec<VariableId> {
        (**self).variables()
    }

    fn decide(&self, query: &CiQuery) -> Result<CiDecision, CiError> {
        (**self).decide(query)
    }
}

/// Exact test on a joint table.
///
/// Independent iff for every configuration of `s` with `P(s) > tol` and all
/// states of `x` and `y`, `|P(x,y|s) - P(x|s) P(y|s)| <= tol`.
pub fn exact_ci(joint: &JointTable, query: &CiQuery, tol: f64) -> Result<CiDecision, CiError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CiError::InvalidParameter("tolerance must be positive"));
    }
    let (x, y) = ordered(query);
    let keep: Vec<VariableId> = query.variables().collect();
    let table = joint.marginalize(&keep).map_err(|_| CiError::UnknownVariable(missing(joint, &keep)))?;
    let pos = |v: VariableId| table.position(v).expect("kept variable present");
    let (px, py) = (pos(x), pos(y));
    let ps: Vec<usize> = query.s.iter().map(|&v| pos(v)).collect();
    let ar = table.arities();
    let (ax, ay) = (ar[px], ar[py]);
    let strata: usize = ps.iter().map(|&i| ar[i]).product();

    // P(x, y, s) gathered per stratum
    let mut cells = vec![0.0f64; strata * ax * ay];
    let mut states = vec![0usize; ar.len()];
    for &p in table.probs() {
        let si = ps.iter().fold(0, |acc, &i| acc * ar[i] + states[i]);
        cells[(si * ax + states[px]) * ay + states[py]] += p;
        crate::network::increment(&mut states, ar);
    }

    let mut worst = 0.0f64;
    for block in cells.chunks(ax * ay) {
        let p_s: f64 = block.iter().sum();
        if p_s <= tol {
            continue;
        }
        for i in 0..ax {
            let p_x: f64 = block[i * ay..(i + 1) * ay].iter().sum::<f64>() / p_s;
            for j in 0..ay {
                let p_y: f64 = (0..ax).map(|k| block[k * ay + j]).sum::<f64>() / p_s;
                let dev = libm::fabs(block[i * ay + j] / p_s - p_x * p_y);
                worst = worst.max(dev);
            }
        }
    }
    let independent = worst <= tol;
    Ok(CiDecision {
        query: query.clone(),
        independent,
        statistic: if independent { 0.0 } else { worst },
        dof: 0,
        p_value: if independent { 1.0 } else { 0.0 },
        method: CiMethod::Exact,
    })
}

fn missing(joint: &JointTable, keep: &[VariableId]) -> String {
    keep.iter().find(|v| joint.position(**v).is_none()).map(|v| v.to_string()).unwrap_or_default()
}

// The lower index plays `x` internally so swapped queries run identical arithmetic.
fn ordered(q: &CiQuery) -> (VariableId, VariableId) {
    if q.x < q.y {
        (q.x, q.y)
    } else {
        (q.y, q.x)
    }
}

/// G-test of `I(x, y | s)` on complete data.
///
/// `G = 2 sum O ln(O / E)` over the `(x, y)` cells of every nonempty stratum
/// of `s`, with `E` from the stratum margins. Each nonempty stratum adds
/// `(arity_x - 1)(arity_y - 1)` degrees of freedom; empty strata are skipped.
/// Independent iff the chi-square tail probability exceeds `alpha`.
pub fn g_test_ci(data: &Dataset, query: &CiQuery, alpha: f64) -> Result<CiDecision, CiError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CiError::InvalidParameter("alpha must lie in (0, 1)"));
    }
    if data.is_empty() {
        return Err(CiError::EmptyDataset);
    }
    let cols = data.variables().len();
    if let Some(v) = query.variables().find(|v| v.0 >= cols) {
        return Err(CiError::UnknownVariable(v.to_string()));
    }
    let (x, y) = ordered(query);
    let (ax, ay) = (data.arity(x), data.arity(y));
    let strata: usize = query.s.iter().map(|&v| data.arity(v)).product();
    let mut counts = vec![0u64; strata * ax * ay];
    for row in data.rows() {
        let si = query.s.iter().fold(0, |acc, &v| acc * data.arity(v) + row[v.0]);
        counts[(si * ax + row[x.0]) * ay + row[y.0]] += 1;
    }

    let mut g = 0.0;
    let mut dof = 0usize;
    let mut nonempty = 0usize;
    for block in counts.chunks(ax * ay) {
        let n: u64 = block.iter().sum();
        if n == 0 {
            continue;
        }
        nonempty += 1;
        dof += (ax - 1) * (ay - 1);
        let row_tot: Vec<u64> = (0..ax).map(|i| block[i * ay..(i + 1) * ay].iter().sum()).collect();
        let col_tot: Vec<u64> = (0..ay).map(|j| (0..ax).map(|i| block[i * ay + j]).sum()).collect();
        for i in 0..ax {
            for j in 0..ay {
                let o = block[i * ay + j];
                if o == 0 {
                    continue;
                }
                let e = row_tot[i] as f64 * col_tot[j] as f64 / n as f64;
                g += o as f64 * libm::log(o as f64 / e);
            }
        }
    }
    if nonempty == 0 {
        return Err(CiError::DegenerateStrata);
    }
    let g = (2.0 * g).max(0.0);
    let p_value = chi_square_sf(g, dof).expect("statistic is nonnegative");
    Ok(CiDecision {
        query: query.clone(),
        independent: p_value > alpha,
        statistic: g,
        dof,
        p_value,
        method: CiMethod::GTest,
    })
}

/// [`exact_ci`] behind the oracle interface.
#[derive(Debug, Clone, Copy)]
pub struct ExactOracle<'a> {
    pub joint: &'a JointTable,
    pub tol: f64,
}

impl<'a> ExactOracle<'a> {
    pub fn new(joint: &'a JointTable) -> Self {
        ExactOracle { joint, tol: crate::DEFAULT_TOL }
    }
}

impl CiOracle for ExactOracle<'_> {
    fn variables(&self) -> Vec<VariableId> {
        self.joint.variables().to_vec()
    }

    fn decide(&self, query: &CiQuery) -> Result<CiDecision, CiError> {
        exact_ci(self.joint, query, self.tol)
    }
}

/// [`g_test_ci`] behind the oracle interface.
#[derive(Debug, Clone, Copy)]
pub struct GTestOracle<'a> {
    pub data: &'a Dataset,
    pub alpha: f64,
}

impl<'a> GTestOracle<'a> {
    pub fn new(data: &'a Dataset) -> Self {
        GTestOracle { data, alpha: DEFAULT_ALPHA }
    }
}

impl CiOracle for GTestOracle<'_> {
    fn variables(&self) -> Vec<VariableId> {
        (0..self.data.variables().len()).map(VariableId).collect()
    }

    fn decide(&self, query: &CiQuery) -> Result<CiDecision, CiError> {
        g_test_ci(self.data, query, self.alpha)
    }
}

/// Independence read off the graph: independent iff d-separated.
#[derive(Debug, Clone, Copy)]
pub struct DsepOracle<'a> {
    pub dag: &'a Dag,
}

impl CiOracle for DsepOracle<'_> {
    fn variables(&self) -> Vec<VariableId> {
        self.dag.ids().collect()
    }

    fn decide(&self, query: &CiQuery) -> Result<CiDecision, CiError> {
        let independent = self.dag.d_separated(query.x, query.y, &query.s)?;
        Ok(CiDecision {
            query: query.clone(),
            independent,
            statistic: 0.0,
            dof: 0,
            p_value: if independent { 1.0 } else { 0.0 },
            method: CiMethod::DSeparation,
        })
    }
}

fn same_variables(dag: &Dag, joint: &JointTable) -> Result<(), CiError> {
    if joint.variables().iter().copied().eq(dag.ids()) {
        Ok(())
    } else {
        Err(CiError::VariableMismatch)
    }
}

/// Checks that every variable is independent of each nondescendant given
/// its parents. Returns the failing decisions, `x` being the child.
pub fn check_markov(dag: &Dag, joint: &JointTable, tol: f64) -> Result<Vec<CiDecision>, CiError> {
    same_variables(dag, joint)?;
    let mut violations = Vec::new();
    for x in dag.ids() {
        let desc = dag.descendants(x)?;
        let parents = dag.parents(x);
        for w in dag.ids() {
            if w == x || desc.contains(&w) || parents.contains(&w) {
                continue;
            }
            let d = exact_ci(joint, &CiQuery::new(x, w, parents)?, tol)?;
            if !d.independent {
                violations.push(d);
            }
        }
    }
    Ok(violations)
}

/// Number of triples `(x, y, s)` with `x < y` over `n` variables.
pub fn triple_count(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let pairs = n * (n - 1) / 2;
    1usize.checked_shl((n - 2) as u32).and_then(|s| s.checked_mul(pairs)).unwrap_or(usize::MAX)
}

/// Every query `(x, y, s)` with `x < y` and `s` drawn from the remaining
/// variables, ordered by `x`, `y`, then `s` by size and lexicographically.
pub fn all_queries(vars: &[VariableId]) -> Vec<CiQuery> {
    let mut out = Vec::with_capacity(triple_count(vars.len()));
    for (i, &x) in vars.iter().enumerate() {
        for &y in &vars[i + 1..] {
            let rest: Vec<VariableId> = vars.iter().copied().filter(|&v| v != x && v != y).collect();
            for k in 0..=rest.len() {
                for_each_subset::<_, ()>(&rest, k, |s| {
                    out.push(CiQuery { x, y, s: s.to_vec() });
                    None
                });
            }
        }
    }
    out
}

/// Reports each independence in the joint that d-separation does not entail.
pub fn check_faithfulness(dag: &Dag, joint: &JointTable, tol: f64, cap: usize) -> Result<Vec<CiDecision>, CiError> {
    same_variables(dag, joint)?;
    let triples = triple_count(dag.len());
    if triples > cap {
        return Err(CiError::TooLarge { triples, cap });
    }
    let vars: Vec<VariableId> = dag.ids().collect();
    let mut violations = Vec::new();
    for q in all_queries(&vars) {
        let d = exact_ci(joint, &q, tol)?;
        if d.independent && !dag.d_separated(q.x, q.y, &q.s)? {
            violations.push(d);
        }
    }
    Ok(violations)
}
