//! Bayesian networks: a [`Dag`] plus one conditional probability table per node.
//!
//! CPT rows are laid out row-major over the parent configurations with the
//! first listed parent varying slowest. The same layout is used for
//! [`JointTable`] cells (first variable slowest) and on disk.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Dag, VariableId};
use crate::rng::UniformStream;
use crate::DEFAULT_TOL;

/// Largest joint table [`Network::enumerate_joint`] builds by default.
pub const DEFAULT_JOINT_CAP: usize = 1 << 20;

/// A discrete variable and its ordered state names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub states: Vec<String>,
}

impl Variable {
    pub fn new<S: AsRef<str>>(name: &str, states: &[S]) -> Variable {
        Variable { name: name.into(), states: states.iter().map(|s| s.as_ref().into()).collect() }
    }

    /// States `false` (index 0) and `true` (index 1).
    pub fn binary(name: &str) -> Variable {
        Variable::new(name, &["false", "true"])
    }

    pub fn arity(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

/// Conditional probability table `P(child | parents)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cpt {
    pub child: VariableId,
    pub parents: Vec<VariableId>,
    pub rows: Vec<Vec<f64>>,
}

impl Cpt {
    pub fn new(child: VariableId, parents: Vec<VariableId>, rows: Vec<Vec<f64>>) -> Cpt {
        Cpt { child, parents, rows }
    }

    /// Row selected by a full assignment (state index per variable).
    pub fn row_index(&self, arities: &[usize], assignment: &[usize]) -> usize {
        self.parents.iter().fold(0, |acc, p| acc * arities[p.0] + assignment[p.0])
    }
}

/// One problem found by [`validate_network`].
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    VariableMismatch { expected: usize, found: usize },
    VariableName { index: usize, dag: String, variable: String },
    TooFewStates { variable: String },
    DuplicateState { variable: String, state: String },
    MissingCpt { child: String },
    DuplicateCpt { child: String },
    UnknownCptVariable { index: usize },
    ParentMismatch { child: String, expected: Vec<String>, found: Vec<String> },
    RowCount { child: String, expected: usize, found: usize },
    RowLength { child: String, row: usize, expected: usize, found: usize },
    EntryOutOfRange { child: String, row: usize, column: usize, value: f64 },
    RowSum { child: String, row: usize, sum: f64 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            VariableMismatch { expected, found } => {
                write!(f, "graph has {expected} variables but {found} were described")
            }
            VariableName { index, dag, variable } => {
                write!(f, "variable {index} is `{dag}` in the graph but `{variable}` in the variable list")
            }
            TooFewStates { variable } => write!(f, "{variable}: needs at least two states"),
            DuplicateState { variable, state } => write!(f, "{variable}: state `{state}` listed twice"),
            MissingCpt { child } => write!(f, "{child}: no CPT"),
            DuplicateCpt { child } => write!(f, "{child}: more than one CPT"),
            UnknownCptVariable { index } => write!(f, "CPT for unknown variable #{index}"),
            ParentMismatch { child, expected, found } => {
                write!(
                    f,
                    "{child}: CPT parents [{}] differ from graph parents [{}]",
                    found.join(", "),
                    expected.join(", ")
                )
            }
            RowCount { child, expected, found } => write!(f, "{child}: {found} rows, expected {expected}"),
            RowLength { child, row, expected, found } => {
                write!(f, "{child}: row {row} has {found} entries, expected {expected}")
            }
            EntryOutOfRange { child, row, column, value } => {
                write!(f, "{child}: row {row} entry {column} = {value} is outside [0, 1]")
            }
            RowSum { child, row, sum } => write!(f, "{child}: row {row} sums to {sum}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("InvalidNetwork: {}", join_issues(.0))]
    Invalid(Vec<ValidationIssue>),
    #[error("IncompleteAssignment: expected {expected} states, got {found}")]
    IncompleteAssignment { expected: usize, found: usize },
    #[error("StateOutOfRange: variable {variable} has no state {state}")]
    StateOutOfRange { variable: String, state: usize },
    #[error("TooLarge: {cells} cells exceed the cap of {cap}")]
    TooLarge { cells: usize, cap: usize },
    #[error("EmptySample: n must be at least 1")]
    EmptySample,
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("InvalidJoint: {0}")]
    InvalidJoint(&'static str),
    #[error("InvalidDataset: row {row}: {reason}")]
    InvalidDataset { row: usize, reason: &'static str },
}

fn join_issues(issues: &[ValidationIssue]) -> String {
    use alloc::string::ToString;
    issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Checks variables and CPTs against the graph. An empty report means the
/// parts form a valid network.
pub fn validate_network(dag: &Dag, variables: &[Variable], cpts: &[Cpt]) -> Vec<ValidationIssue> {
    validate_with_tol(dag, variables, cpts, DEFAULT_TOL)
}

fn validate_with_tol(dag: &Dag, variables: &[Variable], cpts: &[Cpt], tol: f64) -> Vec<ValidationIssue> {
    use ValidationIssue::*;
    let mut issues = Vec::new();
    if variables.len() != dag.len() {
        issues.push(VariableMismatch { expected: dag.len(), found: variables.len() });
        return issues;
    }
    for (index, (v, name)) in variables.iter().zip(dag.names()).enumerate() {
        if &v.name != name {
            issues.push(VariableName { index, dag: name.clone(), variable: v.name.clone() });
        }
        if v.arity() < 2 {
            issues.push(TooFewStates { variable: v.name.clone() });
        }
        let mut seen = BTreeSet::new();
        for s in &v.states {
            if !seen.insert(s) {
                issues.push(DuplicateState { variable: v.name.clone(), state: s.clone() });
            }
        }
    }

    let name = |v: VariableId| variables[v.0].name.clone();
    let mut owner: Vec<Option<&Cpt>> = vec![None; dag.len()];
    for cpt in cpts {
        if !dag.contains(cpt.child) {
            issues.push(UnknownCptVariable { index: cpt.child.0 });
            continue;
        }
        if owner[cpt.child.0].is_some() {
            issues.push(DuplicateCpt { child: name(cpt.child) });
        } else {
            owner[cpt.child.0] = Some(cpt);
        }
    }
    for v in dag.ids() {
        let Some(cpt) = owner[v.0] else {
            issues.push(MissingCpt { child: name(v) });
            continue;
        };
        let child = name(v);
        let found: BTreeSet<VariableId> = cpt.parents.iter().copied().collect();
        let expected: BTreeSet<VariableId> = dag.parents(v).iter().copied().collect();
        if found != expected || found.len() != cpt.parents.len() {
            issues.push(ParentMismatch {
                child,
                expected: dag.parents(v).iter().map(|&p| name(p)).collect(),
                found: cpt.parents.iter().filter(|p| dag.contains(**p)).map(|&p| name(p)).collect(),
            });
            continue;
        }
        let rows: usize = cpt.parents.iter().map(|p| variables[p.0].arity()).product();
        if cpt.rows.len() != rows {
            issues.push(RowCount { child: child.clone(), expected: rows, found: cpt.rows.len() });
        }
        let arity = variables[v.0].arity();
        for (r, row) in cpt.rows.iter().enumerate() {
            if row.len() != arity {
                issues.push(RowLength { child: child.clone(), row: r, expected: arity, found: row.len() });
                continue;
            }
            let mut bad_entry = false;
            for (c, &p) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&p) {
                    issues.push(EntryOutOfRange { child: child.clone(), row: r, column: c, value: p });
                    bad_entry = true;
                }
            }
            let sum: f64 = row.iter().sum();
            if !bad_entry && (sum - 1.0).abs() > tol {
                issues.push(RowSum { child: child.clone(), row: r, sum });
            }
        }
    }
    issues
}

/// A validated Bayesian network. CPTs are stored in variable order.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    dag: Dag,
    variables: Vec<Variable>,
    cpts: Vec<Cpt>,
}

impl Network {
    /// Validates the parts. Rows are stored exactly as given, so a network
    /// written out and read back compares equal.
    pub fn new(dag: Dag, variables: Vec<Variable>, mut cpts: Vec<Cpt>) -> Result<Network, NetworkError> {
        let issues = validate_network(&dag, &variables, &cpts);
        if !issues.is_empty() {
            return Err(NetworkError::Invalid(issues));
        }
        cpts.sort_by_key(|c| c.child);
        Ok(Network { dag, variables, cpts })
    }

    pub fn into_parts(self) -> (Dag, Vec<Variable>, Vec<Cpt>) {
        (self.dag, self.variables, self.cpts)
    }

    /// Re-runs validation; always empty for a constructed network.
    pub fn validate(&self) -> Vec<ValidationIssue> {
        validate_network(&self.dag, &self.variables, &self.cpts)
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, v: VariableId) -> &Variable {
        &self.variables[v.0]
    }

    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    pub fn cpt(&self, v: VariableId) -> &Cpt {
        &self.cpts[v.0]
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<VariableId> {
        self.dag.id(name)
    }

    pub fn arity(&self, v: VariableId) -> usize {
        self.variables[v.0].arity()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.variables.iter().map(Variable::arity).collect()
    }

    /// `P(child = state | parents)` under the given full assignment.
    pub fn cpt_entry(&self, v: VariableId, arities: &[usize], assignment: &[usize]) -> f64 {
        let cpt = &self.cpts[v.0];
        cpt.rows[cpt.row_index(arities, assignment)][assignment[v.0]]
    }

    fn check_assignment(&self, assignment: &[usize]) -> Result<(), NetworkError> {
        if assignment.len() != self.len() {
            return Err(NetworkError::IncompleteAssignment { expected: self.len(), found: assignment.len() });
        }
        for (v, &s) in self.variables.iter().zip(assignment) {
            if s >= v.arity() {
                return Err(NetworkError::StateOutOfRange { variable: v.name.clone(), state: s });
            }
        }
        Ok(())
    }

    /// Product of the CPT entries picked out by a complete assignment.
    pub fn joint_probability(&self, assignment: &[usize]) -> Result<f64, NetworkError> {
        self.check_assignment(assignment)?;
        Ok(self.joint_unchecked(&self.arities(), assignment))
    }

    fn joint_unchecked(&self, arities: &[usize], assignment: &[usize]) -> f64 {
        self.dag.ids().fold(1.0, |acc, v| acc * self.cpt_entry(v, arities, assignment))
    }

    /// Full joint table, capped at [`DEFAULT_JOINT_CAP`] cells.
    pub fn enumerate_joint(&self) -> Result<JointTable, NetworkError> {
        self.enumerate_joint_capped(DEFAULT_JOINT_CAP)
    }

    pub fn enumerate_joint_capped(&self, cap: usize) -> Result<JointTable, NetworkError> {
        let arities = self.arities();
        let cells = arities.iter().try_fold(1usize, |acc, &a| acc.checked_mul(a)).unwrap_or(usize::MAX);
        if cells > cap {
            return Err(NetworkError::TooLarge { cells, cap });
        }
        let mut probs = Vec::with_capacity(cells);
        let mut assignment = vec![0usize; arities.len()];
        for _ in 0..cells {
            probs.push(self.joint_unchecked(&arities, &assignment));
            increment(&mut assignment, &arities);
        }
        Ok(JointTable { vars: self.dag.ids().collect(), arities, probs })
    }

    /// Draws `n` complete rows ancestrally in topological order.
    ///
    /// Each variable consumes one uniform draw `u` and takes the first state
    /// whose cumulative probability exceeds `u`. Same `(seed, n)`, same rows.
    pub fn forward_sample(&self, seed: u64, n: usize) -> Result<Dataset, NetworkError> {
        if n == 0 {
            return Err(NetworkError::EmptySample);
        }
        let arities = self.arities();
        let order = self.dag.topological_order();
        let mut rng = UniformStream::new(seed);
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row = vec![0usize; self.len()];
            for &v in &order {
                let cpt = &self.cpts[v.0];
                let probs = &cpt.rows[cpt.row_index(&arities, &row)];
                row[v.0] = pick_state(probs, rng.next_f64());
            }
            rows.push(row);
        }
        Ok(Dataset { variables: self.variables.clone(), rows })
    }
}

fn pick_state(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (s, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return s;
        }
    }
    // rounding left the cumulative sum short of u: take the last possible state
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
}

/// Advances a mixed-radix counter, last position fastest.
pub(crate) fn increment(digits: &mut [usize], radices: &[usize]) {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return;
        }
        digits[i] = 0;
    }
}

/// Explicit joint distribution over an ordered list of variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    vars: Vec<VariableId>,
    arities: Vec<usize>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new(vars: Vec<VariableId>, arities: Vec<usize>, probs: Vec<f64>) -> Result<JointTable, NetworkError> {
        if vars.len() != arities.len() {
            return Err(NetworkError::InvalidJoint("one arity per variable"));
        }
        if arities.iter().product::<usize>() != probs.len() {
            return Err(NetworkError::InvalidJoint("cell count must equal the product of arities"));
        }
        if probs.iter().any(|p| p.is_nan() || *p < 0.0) {
            return Err(NetworkError::InvalidJoint("entries must be nonnegative"));
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > DEFAULT_TOL {
            return Err(NetworkError::InvalidJoint("entries must sum to 1"));
        }
        Ok(JointTable { vars, arities, probs })
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.vars
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn position(&self, v: VariableId) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn arity(&self, v: VariableId) -> Option<usize> {
        self.position(v).map(|i| self.arities[i])
    }

    /// Cell index of an assignment given in this table's variable order.
    pub fn index_of(&self, states: &[usize]) -> usize {
        states.iter().zip(&self.arities).fold(0, |acc, (&s, &a)| acc * a + s)
    }

    pub fn get(&self, states: &[usize]) -> f64 {
        self.probs[self.index_of(states)]
    }

    /// Sums out every variable not in `keep`. The result lists the kept
    /// variables in this table's order.
    pub fn marginalize(&self, keep: &[VariableId]) -> Result<JointTable, NetworkError> {
        for &k in keep {
            if self.position(k).is_none() {
                return Err(NetworkError::UnknownVariable(alloc::string::ToString::to_string(&k)));
            }
        }
        let kept: Vec<usize> = (0..self.vars.len()).filter(|&i| keep.contains(&self.vars[i])).collect();
        let arities: Vec<usize> = kept.iter().map(|&i| self.arities[i]).collect();
        let mut probs = vec![0.0; arities.iter().product()];
        let mut states = vec![0usize; self.vars.len()];
        for &p in &self.probs {
            let idx = kept.iter().fold(0, |acc, &i| acc * self.arities[i] + states[i]);
            probs[idx] += p;
            increment(&mut states, &self.arities);
        }
        Ok(JointTable { vars: kept.iter().map(|&i| self.vars[i]).collect(), arities, probs })
    }
}

/// Complete observations, one state index per variable per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    variables: Vec<Variable>,
    rows: Vec<Vec<usize>>,
}

impl Dataset {
    pub fn new(variables: Vec<Variable>, rows: Vec<Vec<usize>>) -> Result<Dataset, NetworkError> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != variables.len() {
                return Err(NetworkError::InvalidDataset { row: r, reason: "wrong number of columns" });
            }
            if row.iter().zip(&variables).any(|(&s, v)| s >= v.arity()) {
                return Err(NetworkError::InvalidDataset { row: r, reason: "state index out of range" });
            }
        }
        Ok(Dataset { variables, rows })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<VariableId> {
        self.variables.iter().position(|v| v.name == name).map(VariableId)
    }

    pub fn arity(&self, v: VariableId) -> usize {
        self.variables[v.0].arity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::string::ToString;

    fn single(p: f64) -> Network {
        let dag = Dag::new::<_, &str>(&["A"], &[]).unwrap();
        Network::new(dag, vec![Variable::binary("A")], vec![Cpt::new(VariableId(0), vec![], vec![vec![1.0 - p, p]])])
            .unwrap()
    }

    #[test]
    fn fixtures_validate_clean() {
        for net in [fixtures::sprinkler(), fixtures::holmes(), fixtures::chain()] {
            assert!(net.validate().is_empty());
        }
    }

    #[test]
    fn row_sum_issue_names_child_row_and_sum() {
        let (dag, vars, mut cpts) = fixtures::sprinkler().into_parts();
        let wet = dag.id("WET").unwrap();
        cpts[wet.0].rows[2] = cpts[wet.0].rows[2].iter().map(|p| p * 1.1).collect();
        let issues = validate_network(&dag, &vars, &cpts);
        assert_eq!(issues.len(), 1);
        match &issues[0] {
            ValidationIssue::RowSum { child, row, sum } => {
                assert_eq!(child, "WET");
                assert_eq!(*row, 2);
                assert!((sum - 1.1).abs() < 1e-12);
            }
            other => panic!("unexpected issue {other:?}"),
        }
        assert!(matches!(Network::new(dag, vars, cpts), Err(NetworkError::Invalid(_))));
    }

    #[test]
    fn parent_mismatch_is_reported() {
        let (dag, vars, mut cpts) = fixtures::sprinkler().into_parts();
        let wet = dag.id("WET").unwrap();
        let sprinkler = dag.id("SPRINKLER").unwrap();
        cpts[wet.0] = Cpt::new(wet, vec![sprinkler], vec![vec![0.5, 0.5], vec![0.1, 0.9]]);
        let issues = validate_network(&dag, &vars, &cpts);
        assert_eq!(
            issues,
            vec![ValidationIssue::ParentMismatch {
                child: "WET".into(),
                expected: vec!["SPRINKLER".into(), "RAIN".into()],
                found: vec!["SPRINKLER".into()],
            }]
        );
    }

    #[test]
    fn other_issues() {
        let (dag, mut vars, mut cpts) = fixtures::chain().into_parts();
        vars[0].states = vec!["only".into()];
        cpts.pop();
        cpts[1].rows[0] = vec![1.5, -0.5];
        let issues = validate_network(&dag, &vars, &cpts);
        assert!(issues.contains(&ValidationIssue::TooFewStates { variable: "Z".into() }));
        assert!(issues.contains(&ValidationIssue::MissingCpt { child: "Y".into() }));
        assert!(issues.iter().any(|i| matches!(i, ValidationIssue::EntryOutOfRange { row: 0, column: 0, .. })));
    }

    #[test]
    fn near_unit_rows_are_kept_as_given() {
        let dag = Dag::new::<_, &str>(&["A"], &[]).unwrap();
        let net = Network::new(
            dag,
            vec![Variable::binary("A")],
            vec![Cpt::new(VariableId(0), vec![], vec![vec![0.3, 0.7 + 5e-10]])],
        )
        .unwrap();
        assert_eq!(net.cpt(VariableId(0)).rows[0], vec![0.3, 0.7 + 5e-10]);
    }

    #[test]
    fn joint_probability_single_and_chain() {
        assert_eq!(single(0.3).joint_probability(&[1]).unwrap(), 0.3);
        let c1 = fixtures::chain();
        // Z=1, X=1, Y=0: 0.5 * 0.9 * 0.1
        assert!((c1.joint_probability(&[1, 1, 0]).unwrap() - 0.045).abs() < 1e-15);
        // Z=0, X=1, Y=1: 0.5 * 0.1 * 0.9
        assert!((c1.joint_probability(&[0, 1, 1]).unwrap() - 0.045).abs() < 1e-15);
        // Z=1, X=1, Y=1: 0.5 * 0.9 * 0.9
        assert!((c1.joint_probability(&[1, 1, 1]).unwrap() - 0.405).abs() < 1e-15);
        assert_eq!(c1.joint_probability(&[1, 1]), Err(NetworkError::IncompleteAssignment { expected: 3, found: 2 }));
        assert!(matches!(c1.joint_probability(&[1, 1, 2]), Err(NetworkError::StateOutOfRange { .. })));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(single(0.3).enumerate_joint().unwrap().probs(), &[0.7, 0.3]);
        let dag = Dag::new::<_, &str>(&["A", "B"], &[]).unwrap();
        let coins = Network::new(
            dag,
            vec![Variable::binary("A"), Variable::binary("B")],
            vec![
                Cpt::new(VariableId(0), vec![], vec![vec![0.5, 0.5]]),
                Cpt::new(VariableId(1), vec![], vec![vec![0.5, 0.5]]),
            ],
        )
        .unwrap();
        assert_eq!(coins.enumerate_joint().unwrap().probs(), &[0.25; 4]);
        let f1 = fixtures::sprinkler().enumerate_joint().unwrap();
        assert_eq!(f1.probs().len(), 32);
        assert!((f1.probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert_eq!(
            fixtures::sprinkler().enumerate_joint_capped(16),
            Err(NetworkError::TooLarge { cells: 32, cap: 16 })
        );
    }

    #[test]
    fn marginalize_examples() {
        let joint = fixtures::sprinkler().enumerate_joint().unwrap();
        let all: Vec<VariableId> = (0..5).map(VariableId).collect();
        assert_eq!(joint.marginalize(&all).unwrap(), joint);
        let none = joint.marginalize(&[]).unwrap();
        assert_eq!(none.probs().len(), 1);
        assert!((none.probs()[0] - 1.0).abs() < 1e-12);
        assert_eq!(joint.marginalize(&[VariableId(7)]), Err(NetworkError::UnknownVariable(VariableId(7).to_string())));
    }

    #[test]
    fn wet_marginal_matches_hand_sum() {
        // sum over season, sprinkler, rain of the fixture factors
        let p_season = [0.5, 0.5]; // summer, winter
        let p_sprinkler = [0.7, 0.1];
        let p_rain = [0.2, 0.6];
        let p_wet = |s: bool, r: bool| match (s, r) {
            (true, true) => 0.99,
            (true, false) => 0.9,
            (false, true) => 0.8,
            (false, false) => 0.1,
        };
        let mut expected = 0.0;
        for season in 0..2 {
            for s in [false, true] {
                for r in [false, true] {
                    let ps = if s { p_sprinkler[season] } else { 1.0 - p_sprinkler[season] };
                    let pr = if r { p_rain[season] } else { 1.0 - p_rain[season] };
                    expected += p_season[season] * ps * pr * p_wet(s, r);
                }
            }
        }
        let net = fixtures::sprinkler();
        let wet = net.id("WET").unwrap();
        let m = net.enumerate_joint().unwrap().marginalize(&[wet]).unwrap();
        assert!((m.probs()[1] - expected).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_reproducible_and_rejects_zero() {
        let net = fixtures::chain();
        assert_eq!(net.forward_sample(7, 0), Err(NetworkError::EmptySample));
        assert_eq!(net.forward_sample(7, 500).unwrap(), net.forward_sample(7, 500).unwrap());
        assert_ne!(net.forward_sample(7, 500).unwrap(), net.forward_sample(8, 500).unwrap());
    }

    #[test]
    fn one_hot_cpts_sample_the_forced_assignment() {
        let dag = Dag::new(&["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap();
        let vars = vec![Variable::new("A", &["a0", "a1", "a2"]), Variable::binary("B"), Variable::binary("C")];
        let cpts = vec![
            Cpt::new(VariableId(0), vec![], vec![vec![0.0, 0.0, 1.0]]),
            Cpt::new(VariableId(1), vec![VariableId(0)], vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]),
            Cpt::new(VariableId(2), vec![VariableId(1)], vec![vec![0.0, 1.0], vec![1.0, 0.0]]),
        ];
        let net = Network::new(dag, vars, cpts).unwrap();
        let data = net.forward_sample(3, 200).unwrap();
        assert!(data.rows().iter().all(|r| r == &vec![2, 1, 0]));
    }

    #[test]
    fn chain_sample_matches_prior_within_three_standard_errors() {
        let data = fixtures::chain().forward_sample(42, 10_000).unwrap();
        let ones = data.rows().iter().filter(|r| r[0] == 1).count() as f64;
        let se = (0.5f64 * 0.5 / 10_000.0).sqrt();
        assert!((ones / 10_000.0 - 0.5).abs() < 3.0 * se);
    }

    #[test]
    fn dataset_rejects_bad_rows() {
        let vars = vec![Variable::binary("A")];
        assert!(Dataset::new(vars.clone(), vec![vec![0], vec![2]]).is_err());
        assert!(Dataset::new(vars, vec![vec![0, 1]]).is_err());
    }
}
