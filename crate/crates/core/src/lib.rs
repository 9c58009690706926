//! Discrete probabilistic-causal graphs.
//!
//! The crate covers the full loop from a Bayesian network to learned causal
//! influences:
//!
//! * [`graph`]: validated DAGs, topological order, descendants, d-separation.
//! * [`network`]: CPTs, exact joint enumeration, ancestral sampling.
//! * [`independence`]: the relation `I(X, Y | S)` as an exact oracle over a
//!   joint table and as a G-test over data, plus Markov and faithfulness
//!   checkers.
//! * [`inference`]: variable elimination, polytree message passing and
//!   discounting (explaining away) analysis.
//! * [`discovery`]: time-ordered causal influence discovery with witnesses,
//!   and a soundness checker against a known DAG.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `pcg` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod discovery;
pub mod fixtures;
pub mod graph;
pub mod independence;
pub mod inference;
pub mod network;
pub mod stats;

mod rng;
mod subsets;

pub use discovery::{algorithm_i, soundness_check, CausalLink, DiscoveryError, DiscoveryResult, TimeOrder};
pub use graph::{Dag, GraphError, VariableId};
pub use independence::{
    check_faithfulness, check_markov, exact_ci, g_test_ci, CiDecision, CiError, CiMethod, CiOracle, CiQuery,
    DsepOracle, ExactOracle, GTestOracle,
};
pub use inference::{
    discounting_report, eliminate, normative_discounting, propagate_polytree, DiscountingReport, Evidence,
    InferenceError, Posterior, PresentStates,
};
pub use network::{Cpt, Dataset, JointTable, Network, NetworkError, ValidationIssue, Variable};

/// Tolerance used for exact decisions and row-sum checks unless a caller
/// passes its own.
pub const DEFAULT_TOL: f64 = 1e-9;
