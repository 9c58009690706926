//! Causal influence discovery from a time ordering.
//!
//! For every pair `X` before `Y` the search looks for a variable `Z` and a
//! set `S`, all strictly earlier than `X`, such that
//!
//! 1. `Z` and `Y` are dependent given `S`, and
//! 2. `Z` and `Y` are independent given `S ∪ {X}`.
//!
//! When such a witness exists and the oracle answers faithfully for some DAG,
//! that DAG has a directed path from `X` to `Y`. A link is therefore a causal
//! *influence*, not necessarily a direct edge, and the search is not
//! complete: the earliest variable can never be the source of a link.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Dag, VariableId};
use crate::independence::{CiError, CiOracle, CiQuery};
use crate::subsets::for_each_subset;

/// Default bound on `|S|`.
pub const DEFAULT_MAX_COND_SIZE: usize = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscoveryError {
    #[error("InvalidOrder: {0}")]
    InvalidOrder(String),
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error(transparent)]
    Oracle(#[from] CiError),
}

/// Variables listed earliest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeOrder(Vec<VariableId>);

impl TimeOrder {
    pub fn new(order: Vec<VariableId>) -> TimeOrder {
        TimeOrder(order)
    }

    pub fn as_slice(&self) -> &[VariableId] {
        &self.0
    }

    pub fn position(&self, v: VariableId) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    fn check_permutation_of(&self, vars: &[VariableId]) -> Result<(), DiscoveryError> {
        let mut mine = self.0.clone();
        mine.sort_unstable();
        if mine.windows(2).any(|w| w[0] == w[1]) {
            return Err(DiscoveryError::InvalidOrder("a variable appears twice".into()));
        }
        let mut theirs = vars.to_vec();
        theirs.sort_unstable();
        if mine != theirs {
            return Err(DiscoveryError::InvalidOrder("order must list every oracle variable exactly once".into()));
        }
        Ok(())
    }
}

/// A learned influence `from -> to` with the witness that licensed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalLink {
    pub from: VariableId,
    pub to: VariableId,
    pub witness_z: VariableId,
    pub witness_s: Vec<VariableId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveryResult {
    /// Links in pair order: by position of `from`, then of `to`.
    pub links: Vec<CausalLink>,
    pub queries_issued: usize,
    /// Largest `|S|` among the recorded witnesses (0 when there are none).
    pub max_cond_size_used: usize,
}

impl DiscoveryResult {
    pub fn has_link(&self, from: VariableId, to: VariableId) -> bool {
        self.links.iter().any(|l| l.from == from && l.to == to)
    }

    pub fn pairs(&self) -> Vec<(VariableId, VariableId)> {
        self.links.iter().map(|l| (l.from, l.to)).collect()
    }
}

/// Runs the search over every ordered pair.
///
/// Witness search order: `Z` by time position; for each `Z`, sets `S` drawn
/// from the remaining predecessors of `X` by size, then lexicographically by
/// variable index. The first witness found for a pair is kept.
pub fn algorithm_i<O: CiOracle + ?Sized>(
    oracle: &O,
    order: &TimeOrder,
    max_cond_size: usize,
) -> Result<DiscoveryResult, DiscoveryError> {
    order.check_permutation_of(&oracle.variables())?;
    let seq = order.as_slice();
    let mut links = Vec::new();
    let mut queries = 0usize;

    for (i, &x) in seq.iter().enumerate() {
        let preds = &seq[..i];
        for &y in &seq[i + 1..] {
            let mut found = None;
            for &z in preds {
                let mut pool: Vec<VariableId> = preds.iter().copied().filter(|&v| v != z).collect();
                pool.sort_unstable();
                for k in 0..=max_cond_size.min(pool.len()) {
                    let hit = for_each_subset(&pool, k, |s| match licenses(oracle, x, y, z, s, &mut queries) {
                        Ok(true) => Some(Ok(s.to_vec())),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    });
                    if let Some(hit) = hit {
                        found = Some((z, hit?));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            if let Some((z, s)) = found {
                links.push(CausalLink { from: x, to: y, witness_z: z, witness_s: s });
            }
        }
    }
    let max_cond_size_used = links.iter().map(|l| l.witness_s.len()).max().unwrap_or(0);
    Ok(DiscoveryResult { links, queries_issued: queries, max_cond_size_used })
}

/// Both witness conditions for `(z, s)` on the pair `x -> y`. The second
/// query is only issued when the first succeeds.
fn licenses<O: CiOracle + ?Sized>(
    oracle: &O,
    x: VariableId,
    y: VariableId,
    z: VariableId,
    s: &[VariableId],
    queries: &mut usize,
) -> Result<bool, CiError> {
    *queries += 1;
    if oracle.decide(&CiQuery::new(z, y, s)?)?.independent {
        return Ok(false);
    }
    let mut with_x = s.to_vec();
    with_x.push(x);
    *queries += 1;
    Ok(oracle.decide(&CiQuery::new(z, y, &with_x)?)?.independent)
}

/// Links with no directed path `from ⇝ to` in `truth`.
pub fn soundness_check(result: &DiscoveryResult, truth: &Dag) -> Result<Vec<CausalLink>, DiscoveryError> {
    let mut bad = Vec::new();
    for link in &result.links {
        for v in [link.from, link.to, link.witness_z].iter().chain(&link.witness_s) {
            if !truth.contains(*v) {
                return Err(DiscoveryError::UnknownVariable(v.to_string()));
            }
        }
        let reach = truth.descendants(link.from).map_err(|e| DiscoveryError::UnknownVariable(e.to_string()))?;
        if !reach.contains(&link.to) {
            bad.push(link.clone());
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::independence::{DsepOracle, ExactOracle};
    use alloc::vec;

    fn order_of(net: &crate::Network, names: &[&str]) -> TimeOrder {
        TimeOrder::new(names.iter().map(|n| net.id(n).unwrap()).collect())
    }

    #[test]
    fn chain_finds_single_link() {
        let c1 = fixtures::chain();
        let joint = c1.enumerate_joint().unwrap();
        let result = algorithm_i(&ExactOracle::new(&joint), &order_of(&c1, &["Z", "X", "Y"]), 1).unwrap();
        let (z, x, y) = (VariableId(0), VariableId(1), VariableId(2));
        assert_eq!(result.links, vec![CausalLink { from: x, to: y, witness_z: z, witness_s: vec![] }]);
        assert_eq!(result.max_cond_size_used, 0);
        // pair (X, Y): one dependence query and one independence query
        assert_eq!(result.queries_issued, 2);
        assert!(soundness_check(&result, c1.dag()).unwrap().is_empty());
    }

    #[test]
    fn two_variables_give_nothing() {
        let dag = Dag::new(&["A", "B"], &[("A", "B")]).unwrap();
        let result =
            algorithm_i(&DsepOracle { dag: &dag }, &TimeOrder::new(vec![VariableId(0), VariableId(1)]), 2).unwrap();
        assert!(result.links.is_empty());
        assert_eq!(result.queries_issued, 0);
    }

    #[test]
    fn order_must_be_a_permutation() {
        let c1 = fixtures::chain();
        let oracle = DsepOracle { dag: c1.dag() };
        let short = TimeOrder::new(vec![VariableId(0), VariableId(1)]);
        assert!(matches!(algorithm_i(&oracle, &short, 1), Err(DiscoveryError::InvalidOrder(_))));
        let dup = TimeOrder::new(vec![VariableId(0), VariableId(1), VariableId(1)]);
        assert!(matches!(algorithm_i(&oracle, &dup, 1), Err(DiscoveryError::InvalidOrder(_))));
    }

    #[test]
    fn fabricated_link_is_flagged() {
        let c1 = fixtures::chain();
        let fake = DiscoveryResult {
            links: vec![CausalLink {
                from: VariableId(2),
                to: VariableId(0),
                witness_z: VariableId(1),
                witness_s: vec![],
            }],
            queries_issued: 0,
            max_cond_size_used: 0,
        };
        assert_eq!(soundness_check(&fake, c1.dag()).unwrap(), fake.links);
        let stray = DiscoveryResult {
            links: vec![CausalLink {
                from: VariableId(7),
                to: VariableId(0),
                witness_z: VariableId(1),
                witness_s: vec![],
            }],
            queries_issued: 0,
            max_cond_size_used: 0,
        };
        assert!(matches!(soundness_check(&stray, c1.dag()), Err(DiscoveryError::UnknownVariable(_))));
    }
}
