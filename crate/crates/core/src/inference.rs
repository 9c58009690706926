//! Exact posteriors and discounting analysis.
//!
//! [`eliminate`] runs sum-product variable elimination on any network.
//! [`propagate_polytree`] runs pi/lambda message passing, which is
//! exact on polytrees and needs one inward and one outward sweep.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::VariableId;
use crate::network::{increment, Network};

/// Evidence probabilities below this are treated as impossible.
pub const IMPOSSIBLE_EVIDENCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferenceError {
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("StateOutOfRange: variable {variable} has no state {state}")]
    StateOutOfRange { variable: String, state: usize },
    #[error("DuplicateEvidence: {0} observed twice")]
    DuplicateEvidence(String),
    #[error("QueryObserved: {0} is both the query and evidence")]
    QueryObserved(String),
    #[error("ImpossibleEvidence: evidence has probability {0:e}")]
    ImpossibleEvidence(f64),
    #[error("NotAPolytree: the graph skeleton has a cycle")]
    NotAPolytree,
    #[error("NotDistinct: cause, alternative cause and effect must be three different variables")]
    NotDistinct,
    #[error("InvalidProbability: {0} must lie in [0, 1]")]
    InvalidProbability(&'static str),
    #[error("ZeroEvidenceProbability: the effect cannot occur under these inputs")]
    ZeroEvidenceProbability,
}

/// Observed states, at most one per variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evidence(BTreeMap<VariableId, usize>);

impl Evidence {
    pub fn new() -> Evidence {
        Evidence::default()
    }

    pub fn from_pairs(pairs: &[(VariableId, usize)]) -> Result<Evidence, InferenceError> {
        let mut ev = Evidence::new();
        for &(v, s) in pairs {
            ev.insert(v, s)?;
        }
        Ok(ev)
    }

    pub fn insert(&mut self, v: VariableId, state: usize) -> Result<(), InferenceError> {
        if self.0.insert(v, state).is_some() {
            return Err(InferenceError::DuplicateEvidence(v.to_string()));
        }
        Ok(())
    }

    pub fn get(&self, v: VariableId) -> Option<usize> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VariableId, usize)> + '_ {
        self.0.iter().map(|(&v, &s)| (v, s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, net: &Network) -> Result<(), InferenceError> {
        for (v, s) in self.iter() {
            if v.0 >= net.len() {
                return Err(InferenceError::UnknownVariable(v.to_string()));
            }
            if s >= net.arity(v) {
                return Err(InferenceError::StateOutOfRange { variable: net.variable(v).name.clone(), state: s });
            }
        }
        Ok(())
    }
}

/// Distribution of one variable given the evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct Posterior {
    pub variable: VariableId,
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Factor {
    // sorted ascending; first variable varies slowest
    vars: Vec<VariableId>,
    cards: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    fn from_cpt(net: &Network, child: VariableId, arities: &[usize], evidence: &Evidence) -> Factor {
        let cpt = net.cpt(child);
        let mut scope: Vec<VariableId> = cpt.parents.iter().copied().chain([child]).collect();
        scope.sort_unstable();
        let free: Vec<VariableId> = scope.iter().copied().filter(|&v| evidence.get(v).is_none()).collect();
        let cards: Vec<usize> = free.iter().map(|v| arities[v.0]).collect();
        let size: usize = cards.iter().product();
        let mut full = vec![0usize; arities.len()];
        for (v, s) in evidence.iter() {
            full[v.0] = s;
        }
        let mut states = vec![0usize; free.len()];
        let mut values = Vec::with_capacity(size);
        for _ in 0..size {
            for (v, &s) in free.iter().zip(&states) {
                full[v.0] = s;
            }
            values.push(cpt.rows[cpt.row_index(arities, &full)][full[child.0]]);
            increment(&mut states, &cards);
        }
        Factor { vars: free, cards, values }
    }

    fn product(&self, other: &Factor) -> Factor {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().copied().filter(|v| !self.vars.contains(v)));
        vars.sort_unstable();
        let card_of = |v: VariableId| {
            self.vars
                .iter()
                .position(|&w| w == v)
                .map(|i| self.cards[i])
                .unwrap_or_else(|| other.cards[other.vars.iter().position(|&w| w == v).unwrap()])
        };
        let cards: Vec<usize> = vars.iter().map(|&v| card_of(v)).collect();
        let a_map: Vec<Option<usize>> = vars.iter().map(|v| self.vars.iter().position(|w| w == v)).collect();
        let b_map: Vec<Option<usize>> = vars.iter().map(|v| other.vars.iter().position(|w| w == v)).collect();
        let a_strides = strides(&self.cards);
        let b_strides = strides(&other.cards);
        let size: usize = cards.iter().product();
        let mut values = Vec::with_capacity(size);
        let mut states = vec![0usize; vars.len()];
        for _ in 0..size {
            let mut ia = 0;
            let mut ib = 0;
            for (k, &s) in states.iter().enumerate() {
                if let Some(i) = a_map[k] {
                    ia += s * a_strides[i];
                }
                if let Some(i) = b_map[k] {
                    ib += s * b_strides[i];
                }
            }
            values.push(self.values[ia] * other.values[ib]);
            increment(&mut states, &cards);
        }
        Factor { vars, cards, values }
    }

    fn sum_out(&self, v: VariableId) -> Factor {
        let Some(pos) = self.vars.iter().position(|&w| w == v) else {
            return self.clone();
        };
        let mut vars = self.vars.clone();
        vars.remove(pos);
        let mut cards = self.cards.clone();
        cards.remove(pos);
        let out_strides = strides(&cards);
        let mut values = vec![0.0; cards.iter().product()];
        let mut states = vec![0usize; self.vars.len()];
        for &x in &self.values {
            let mut idx = 0;
            let mut k = 0;
            for (i, &s) in states.iter().enumerate() {
                if i == pos {
                    continue;
                }
                idx += s * out_strides[k];
                k += 1;
            }
            values[idx] += x;
            increment(&mut states, &self.cards);
        }
        Factor { vars, cards, values }
    }
}

fn strides(cards: &[usize]) -> Vec<usize> {
    let mut out = vec![1usize; cards.len()];
    for i in (0..cards.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * cards[i + 1];
    }
    out
}

fn product_all(factors: &[Factor]) -> Factor {
    factors.iter().fold(Factor { vars: Vec::new(), cards: Vec::new(), values: vec![1.0] }, |acc, f| acc.product(f))
}

/// `P(query | evidence)` by variable elimination.
///
/// Elimination order is greedy min-degree on the current factor interaction
/// graph; ties go to the lowest variable index.
pub fn eliminate(net: &Network, query: VariableId, evidence: &Evidence) -> Result<Posterior, InferenceError> {
    if query.0 >= net.len() {
        return Err(InferenceError::UnknownVariable(query.to_string()));
    }
    evidence.check(net)?;
    if evidence.get(query).is_some() {
        return Err(InferenceError::QueryObserved(net.variable(query).name.clone()));
    }
    let arities = net.arities();
    let mut factors: Vec<Factor> = net.dag().ids().map(|v| Factor::from_cpt(net, v, &arities, evidence)).collect();
    let mut pending: Vec<VariableId> = net.dag().ids().filter(|&v| v != query && evidence.get(v).is_none()).collect();

    while !pending.is_empty() {
        let degree = |v: VariableId| {
            let mut nb: Vec<VariableId> =
                factors.iter().filter(|f| f.vars.contains(&v)).flat_map(|f| f.vars.iter().copied()).collect();
            nb.sort_unstable();
            nb.dedup();
            nb.len()
        };
        // pending is ascending, so min_by_key keeps the lowest index on ties
        let (at, &v) = pending.iter().enumerate().min_by_key(|(_, &v)| degree(v)).expect("pending is nonempty");
        pending.remove(at);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = rest;
        if !touching.is_empty() {
            factors.push(product_all(&touching).sum_out(v));
        }
    }

    let result = product_all(&factors);
    debug_assert_eq!(result.vars, vec![query]);
    let z: f64 = result.values.iter().sum();
    if z.is_nan() || z < IMPOSSIBLE_EVIDENCE {
        return Err(InferenceError::ImpossibleEvidence(z));
    }
    Ok(Posterior { variable: query, probs: result.values.iter().map(|p| p / z).collect() })
}

/// Beliefs for every variable by pi/lambda message passing on a polytree.
///
/// Messages are left unnormalized, so the belief mass at any node of a
/// connected component equals the probability of that component's evidence.
pub fn propagate_polytree(net: &Network, evidence: &Evidence) -> Result<Vec<Posterior>, InferenceError> {
    let dag = net.dag();
    if !dag.is_polytree() {
        return Err(InferenceError::NotAPolytree);
    }
    evidence.check(net)?;
    let mut engine = Propagation::new(net, evidence);

    let n = net.len();
    let mut visited = vec![false; n];
    let mut tree_parent: Vec<Option<VariableId>> = vec![None; n];
    let mut evidence_prob = 1.0;
    let mut roots = Vec::new();
    for start in dag.ids() {
        if visited[start.0] {
            continue;
        }
        visited[start.0] = true;
        roots.push(start);
        let mut bfs = vec![start];
        let mut head = 0;
        while head < bfs.len() {
            let v = bfs[head];
            head += 1;
            for &w in dag.parents(v).iter().chain(dag.children(v)) {
                if !visited[w.0] {
                    visited[w.0] = true;
                    tree_parent[w.0] = Some(v);
                    bfs.push(w);
                }
            }
        }
        for &v in bfs.iter().rev() {
            if let Some(p) = tree_parent[v.0] {
                engine.send(v, p);
            }
        }
        for &v in &bfs {
            for &w in dag.parents(v).iter().chain(dag.children(v)) {
                if tree_parent[w.0] == Some(v) {
                    engine.send(v, w);
                }
            }
        }
        evidence_prob *= engine.belief(start).iter().sum::<f64>();
    }
    if evidence_prob.is_nan() || evidence_prob < IMPOSSIBLE_EVIDENCE {
        return Err(InferenceError::ImpossibleEvidence(evidence_prob));
    }
    Ok(dag
        .ids()
        .map(|v| {
            let bel = engine.belief(v);
            let z: f64 = bel.iter().sum();
            Posterior { variable: v, probs: bel.iter().map(|p| p / z).collect() }
        })
        .collect())
}

struct Propagation<'a> {
    net: &'a Network,
    evidence: &'a Evidence,
    // parent -> child, over parent states
    pi: BTreeMap<(VariableId, VariableId), Vec<f64>>,
    // child -> parent, over parent states
    lambda: BTreeMap<(VariableId, VariableId), Vec<f64>>,
}

impl<'a> Propagation<'a> {
    fn new(net: &'a Network, evidence: &'a Evidence) -> Self {
        Propagation { net, evidence, pi: BTreeMap::new(), lambda: BTreeMap::new() }
    }

    fn send(&mut self, from: VariableId, to: VariableId) {
        if self.net.dag().has_edge(from, to) {
            let msg = self.pi_message(from, to);
            self.pi.insert((from, to), msg);
        } else {
            let msg = self.lambda_message(from, to);
            self.lambda.insert((from, to), msg);
        }
    }

    fn evidence_vector(&self, x: VariableId) -> Vec<f64> {
        let arity = self.net.arity(x);
        match self.evidence.get(x) {
            Some(s) => (0..arity).map(|i| if i == s { 1.0 } else { 0.0 }).collect(),
            None => vec![1.0; arity],
        }
    }

    /// lambda(x): local evidence times messages from children other than `skip`.
    fn lambda_value(&self, x: VariableId, skip: Option<VariableId>) -> Vec<f64> {
        let mut out = self.evidence_vector(x);
        for &c in self.net.dag().children(x) {
            if Some(c) == skip {
                continue;
            }
            let msg = &self.lambda[&(c, x)];
            out.iter_mut().zip(msg).for_each(|(o, m)| *o *= m);
        }
        out
    }

    /// Walks every parent configuration of `x` with the product of incoming
    /// pi messages, leaving out the message from `skip`.
    fn for_each_parent_config(
        &self,
        x: VariableId,
        skip: Option<VariableId>,
        mut f: impl FnMut(&[usize], &[f64], f64),
    ) {
        let cpt = self.net.cpt(x);
        let cards: Vec<usize> = cpt.parents.iter().map(|&p| self.net.arity(p)).collect();
        let mut states = vec![0usize; cards.len()];
        for row in &cpt.rows {
            let weight = cpt
                .parents
                .iter()
                .zip(&states)
                .filter(|(p, _)| Some(**p) != skip)
                .fold(1.0, |acc, (&p, &s)| acc * self.pi[&(p, x)][s]);
            f(&states, row, weight);
            increment(&mut states, &cards);
        }
    }

    /// pi(x) = sum over parent configurations of P(x | u) prod_i pi_{U_i -> X}(u_i).
    fn pi_value(&self, x: VariableId) -> Vec<f64> {
        let mut out = vec![0.0; self.net.arity(x)];
        self.for_each_parent_config(x, None, |_, row, w| {
            out.iter_mut().zip(row).for_each(|(o, p)| *o += p * w);
        });
        out
    }

    fn pi_message(&self, x: VariableId, child: VariableId) -> Vec<f64> {
        let pi = self.pi_value(x);
        let lambda = self.lambda_value(x, Some(child));
        pi.iter().zip(&lambda).map(|(a, b)| a * b).collect()
    }

    fn lambda_message(&self, x: VariableId, parent: VariableId) -> Vec<f64> {
        let lambda = self.lambda_value(x, None);
        let cpt = self.net.cpt(x);
        let slot = cpt.parents.iter().position(|&p| p == parent).expect("parent of x");
        let mut out = vec![0.0; self.net.arity(parent)];
        self.for_each_parent_config(x, Some(parent), |states, row, w| {
            let likelihood: f64 = row.iter().zip(&lambda).map(|(p, l)| p * l).sum();
            out[states[slot]] += likelihood * w;
        });
        out
    }

    fn belief(&self, x: VariableId) -> Vec<f64> {
        let pi = self.pi_value(x);
        let lambda = self.lambda_value(x, None);
        pi.iter().zip(&lambda).map(|(a, b)| a * b).collect()
    }
}

/// Which state counts as "present" for each role in [`discounting_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresentStates {
    pub cause: usize,
    pub alt_cause: usize,
    pub effect: usize,
}

impl Default for PresentStates {
    fn default() -> Self {
        PresentStates { cause: 1, alt_cause: 1, effect: 1 }
    }
}

/// How much observing an alternative cause discounts a cause of an observed effect.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountingReport {
    pub cause: VariableId,
    pub alt_cause: VariableId,
    pub effect: VariableId,
    /// P(cause)
    pub p_prior: f64,
    /// P(cause | effect)
    pub p_given_effect: f64,
    /// P(cause | effect, alt_cause)
    pub p_given_effect_and_alt: f64,
}

impl DiscountingReport {
    /// True when the alternative cause lowered belief in the cause.
    pub fn discounted(&self) -> bool {
        self.p_given_effect_and_alt < self.p_given_effect
    }
}

pub fn discounting_report(
    net: &Network,
    cause: VariableId,
    alt_cause: VariableId,
    effect: VariableId,
    present: PresentStates,
) -> Result<DiscountingReport, InferenceError> {
    if cause == alt_cause || cause == effect || alt_cause == effect {
        return Err(InferenceError::NotDistinct);
    }
    let mut evidence = Evidence::new();
    let p_prior = eliminate(net, cause, &evidence)?.probs[present.cause];
    evidence.insert(effect, present.effect)?;
    let p_given_effect = eliminate(net, cause, &evidence)?.probs[present.cause];
    evidence.insert(alt_cause, present.alt_cause)?;
    let p_given_effect_and_alt = eliminate(net, cause, &evidence)?.probs[present.cause];
    Ok(DiscountingReport { cause, alt_cause, effect, p_prior, p_given_effect, p_given_effect_and_alt })
}

/// Bayes' rule on the two-cause collider model with independent causes.
///
/// `effect_table` holds `P(e | c1, c2)` ordered `(c1 c2, c1 !c2, !c1 c2, !c1 !c2)`.
/// Returns `(P(c1 | e), P(c1 | e, c2))`.
pub fn normative_discounting(p_c1: f64, p_c2: f64, effect_table: [f64; 4]) -> Result<(f64, f64), InferenceError> {
    let unit = |p: f64| (0.0..=1.0).contains(&p);
    if !unit(p_c1) {
        return Err(InferenceError::InvalidProbability("p_c1"));
    }
    if !unit(p_c2) {
        return Err(InferenceError::InvalidProbability("p_c2"));
    }
    if !effect_table.iter().all(|&p| unit(p)) {
        return Err(InferenceError::InvalidProbability("effect_table"));
    }
    let [t11, t10, t01, t00] = effect_table;
    let e_and_c1 = p_c1 * (p_c2 * t11 + (1.0 - p_c2) * t10);
    let e_and_not_c1 = (1.0 - p_c1) * (p_c2 * t01 + (1.0 - p_c2) * t00);
    let p_e = e_and_c1 + e_and_not_c1;
    // P(c2) cancels from P(c1 | e, c2)
    let e_c2_and_c1 = p_c1 * t11;
    let e_c2 = e_c2_and_c1 + (1.0 - p_c1) * t01;
    if p_e < IMPOSSIBLE_EVIDENCE || p_c2 * e_c2 < IMPOSSIBLE_EVIDENCE {
        return Err(InferenceError::ZeroEvidenceProbability);
    }
    Ok((e_and_c1 / p_e, e_c2_and_c1 / e_c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Dag;
    use crate::network::{Cpt, Variable};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn single_node_prior() {
        let dag = Dag::new::<_, &str>(&["A"], &[]).unwrap();
        let net =
            Network::new(dag, vec![Variable::binary("A")], vec![Cpt::new(VariableId(0), vec![], vec![vec![0.3, 0.7]])])
                .unwrap();
        assert_eq!(eliminate(&net, VariableId(0), &Evidence::new()).unwrap().probs, vec![0.3, 0.7]);
        let bel = propagate_polytree(&net, &Evidence::new()).unwrap();
        assert!(close(bel[0].probs[1], 0.7, 1e-15));
    }

    #[test]
    fn slippery_screened_by_wet() {
        let f1 = fixtures::sprinkler();
        let v = |n| f1.id(n).unwrap();
        let wet_only = Evidence::from_pairs(&[(v("WET"), 1)]).unwrap();
        let base = eliminate(&f1, v("SLIPPERY"), &wet_only).unwrap();
        assert!(close(base.probs[1], 0.8, 1e-12));
        for extra in [("SPRINKLER", 1), ("SPRINKLER", 0), ("RAIN", 1), ("SEASON", 0)] {
            let ev = Evidence::from_pairs(&[(v("WET"), 1), (v(extra.0), extra.1)]).unwrap();
            assert!(close(eliminate(&f1, v("SLIPPERY"), &ev).unwrap().probs[1], 0.8, 1e-12));
        }
    }

    #[test]
    fn sprinkler_lowers_rain() {
        let f1 = fixtures::sprinkler();
        let v = |n| f1.id(n).unwrap();
        let prior = eliminate(&f1, v("RAIN"), &Evidence::new()).unwrap().probs[1];
        let ev = Evidence::from_pairs(&[(v("SPRINKLER"), 1)]).unwrap();
        let post = eliminate(&f1, v("RAIN"), &ev).unwrap().probs[1];
        assert!(post < prior);
    }

    #[test]
    fn explaining_away_on_holmes() {
        let f2 = fixtures::holmes();
        let v = |n| f2.id(n).unwrap();
        let b = v("BURGLAR");
        let belief = |pairs: &[(VariableId, usize)]| {
            let ev = Evidence::from_pairs(pairs).unwrap();
            propagate_polytree(&f2, &ev).unwrap()[b.0].probs[1]
        };
        let prior = belief(&[]);
        let alarm = belief(&[(v("ALARM"), 1)]);
        let alarm_quake = belief(&[(v("ALARM"), 1), (v("EARTHQUAKE"), 1)]);
        let alarm_prints = belief(&[(v("ALARM"), 1), (v("FOOTPRINTS"), 1)]);
        assert!(alarm > prior + 1e-6);
        assert!(alarm_quake < alarm - 1e-6);
        assert!(alarm_prints > alarm + 1e-6);
    }

    #[test]
    fn engines_agree_on_holmes() {
        let f2 = fixtures::holmes();
        let ev = Evidence::from_pairs(&[(VariableId(2), 1), (VariableId(3), 0)]).unwrap();
        let beliefs = propagate_polytree(&f2, &ev).unwrap();
        for v in [VariableId(0), VariableId(1)] {
            let ve = eliminate(&f2, v, &ev).unwrap();
            for (a, b) in ve.probs.iter().zip(&beliefs[v.0].probs) {
                assert!(close(*a, *b, 1e-12));
            }
        }
        assert_eq!(beliefs[2].probs, vec![0.0, 1.0]);
    }

    #[test]
    fn errors() {
        let f1 = fixtures::sprinkler();
        let f2 = fixtures::holmes();
        assert_eq!(propagate_polytree(&f1, &Evidence::new()), Err(InferenceError::NotAPolytree));
        let ev = Evidence::from_pairs(&[(VariableId(3), 1)]).unwrap();
        assert!(matches!(eliminate(&f1, VariableId(3), &ev), Err(InferenceError::QueryObserved(_))));
        assert!(matches!(eliminate(&f1, VariableId(9), &Evidence::new()), Err(InferenceError::UnknownVariable(_))));
        let bad = Evidence::from_pairs(&[(VariableId(3), 2)]).unwrap();
        assert!(matches!(eliminate(&f1, VariableId(0), &bad), Err(InferenceError::StateOutOfRange { .. })));
        assert!(matches!(
            Evidence::from_pairs(&[(VariableId(3), 1), (VariableId(3), 0)]),
            Err(InferenceError::DuplicateEvidence(_))
        ));
        // a one-hot chain makes Y=1 impossible once Z=0 is seen
        let (dag, vars, mut cpts) = fixtures::chain().into_parts();
        cpts[1].rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        cpts[2].rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let det = Network::new(dag, vars, cpts).unwrap();
        let ev = Evidence::from_pairs(&[(VariableId(0), 0), (VariableId(2), 1)]).unwrap();
        assert!(matches!(eliminate(&det, VariableId(1), &ev), Err(InferenceError::ImpossibleEvidence(_))));
        assert!(matches!(propagate_polytree(&det, &ev), Err(InferenceError::ImpossibleEvidence(_))));
        let _ = f2;
    }

    #[test]
    fn discounting_on_fixtures() {
        let f2 = fixtures::holmes();
        let v = |n| f2.id(n).unwrap();
        let r = discounting_report(&f2, v("BURGLAR"), v("EARTHQUAKE"), v("ALARM"), PresentStates::default()).unwrap();
        assert!(r.discounted());
        assert!(r.p_given_effect > r.p_prior);

        let f1 = fixtures::sprinkler();
        let w = |n| f1.id(n).unwrap();
        let r = discounting_report(&f1, w("SPRINKLER"), w("RAIN"), w("WET"), PresentStates::default()).unwrap();
        assert!(r.discounted());

        assert_eq!(
            discounting_report(&f1, w("WET"), w("WET"), w("RAIN"), PresentStates::default()),
            Err(InferenceError::NotDistinct)
        );
    }

    #[test]
    fn vacuous_alternative_does_not_discount() {
        // E depends on C only; A -> E is a vacuous edge
        let dag = Dag::new(&["C", "A", "E"], &[("C", "E"), ("A", "E")]).unwrap();
        let vars = vec![Variable::binary("C"), Variable::binary("A"), Variable::binary("E")];
        let cpts = vec![
            Cpt::new(VariableId(0), vec![], vec![vec![0.7, 0.3]]),
            Cpt::new(VariableId(1), vec![], vec![vec![0.4, 0.6]]),
            Cpt::new(
                VariableId(2),
                vec![VariableId(0), VariableId(1)],
                vec![vec![0.9, 0.1], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.2, 0.8]],
            ),
        ];
        let net = Network::new(dag, vars, cpts).unwrap();
        let r =
            discounting_report(&net, VariableId(0), VariableId(1), VariableId(2), PresentStates::default()).unwrap();
        assert!(close(r.p_given_effect_and_alt, r.p_given_effect, 1e-9));
    }

    #[test]
    fn normative_special_cases() {
        // c2 sufficient for the effect: P(c1 | e, c2) falls back to the prior
        let (_, with_c2) = normative_discounting(0.37, 0.2, [1.0, 0.6, 1.0, 0.05]).unwrap();
        assert!(close(with_c2, 0.37, 1e-12));
        // effect ignores c1
        let (given_e, _) = normative_discounting(0.37, 0.2, [0.8, 0.3, 0.8, 0.3]).unwrap();
        assert!(close(given_e, 0.37, 1e-12));
        assert_eq!(normative_discounting(0.5, 0.5, [0.0; 4]), Err(InferenceError::ZeroEvidenceProbability));
        assert_eq!(normative_discounting(1.5, 0.5, [0.5; 4]), Err(InferenceError::InvalidProbability("p_c1")));
    }
}
