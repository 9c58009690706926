//! Named JSON records for library results.

use pcg_core::inference::Evidence;
use pcg_core::{CausalLink, CiDecision, DiscountingReport, DiscoveryResult, Posterior, VariableId};
use serde::{Deserialize, Serialize};

/// Name lookup used when turning ids into records.
pub trait Names {
    fn var_name(&self, v: VariableId) -> &str;
    fn state_names(&self, v: VariableId) -> &[String];
}

impl Names for pcg_core::Network {
    fn var_name(&self, v: VariableId) -> &str {
        &self.variable(v).name
    }

    fn state_names(&self, v: VariableId) -> &[String] {
        &self.variable(v).states
    }
}

impl Names for pcg_core::Dataset {
    fn var_name(&self, v: VariableId) -> &str {
        &self.variables()[v.0].name
    }

    fn state_names(&self, v: VariableId) -> &[String] {
        &self.variables()[v.0].states
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservedState {
    pub variable: String,
    pub state: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateProbability {
    pub state: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorRecord {
    pub variable: String,
    pub engine: String,
    pub evidence: Vec<ObservedState>,
    pub posterior: Vec<StateProbability>,
}

impl PosteriorRecord {
    pub fn new(names: &impl Names, posterior: &Posterior, evidence: &Evidence, engine: &str) -> Self {
        let v = posterior.variable;
        PosteriorRecord {
            variable: names.var_name(v).into(),
            engine: engine.into(),
            evidence: evidence
                .iter()
                .map(|(e, s)| ObservedState {
                    variable: names.var_name(e).into(),
                    state: names.state_names(e)[s].clone(),
                })
                .collect(),
            posterior: names
                .state_names(v)
                .iter()
                .zip(&posterior.probs)
                .map(|(s, &p)| StateProbability { state: s.clone(), probability: p })
                .collect(),
        }
    }

    pub fn probability(&self, state: &str) -> Option<f64> {
        self.posterior.iter().find(|s| s.state == state).map(|s| s.probability)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiRecord {
    pub x: String,
    pub y: String,
    pub s: Vec<String>,
    pub independent: bool,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub method: String,
}

impl CiRecord {
    pub fn new(names: &impl Names, d: &CiDecision) -> Self {
        CiRecord {
            x: names.var_name(d.query.x).into(),
            y: names.var_name(d.query.y).into(),
            s: d.query.s.iter().map(|&v| names.var_name(v).to_string()).collect(),
            independent: d.independent,
            statistic: d.statistic,
            dof: d.dof,
            p_value: d.p_value,
            method: d.method.as_str().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub from: String,
    pub to: String,
    /// Always "influence": a directed path, not necessarily an edge.
    pub kind: String,
    pub witness_z: String,
    pub witness_s: Vec<String>,
}

impl LinkRecord {
    pub fn new(names: &impl Names, l: &CausalLink) -> Self {
        LinkRecord {
            from: names.var_name(l.from).into(),
            to: names.var_name(l.to).into(),
            kind: "influence".into(),
            witness_z: names.var_name(l.witness_z).into(),
            witness_s: l.witness_s.iter().map(|&v| names.var_name(v).to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryRecord {
    pub oracle: String,
    pub order: Vec<String>,
    pub max_cond_size: usize,
    pub links: Vec<LinkRecord>,
    pub queries_issued: usize,
    pub max_cond_size_used: usize,
}

impl DiscoveryRecord {
    pub fn new(
        names: &impl Names,
        r: &DiscoveryResult,
        oracle: &str,
        order: &[VariableId],
        max_cond_size: usize,
    ) -> Self {
        DiscoveryRecord {
            oracle: oracle.into(),
            order: order.iter().map(|&v| names.var_name(v).to_string()).collect(),
            max_cond_size,
            links: r.links.iter().map(|l| LinkRecord::new(names, l)).collect(),
            queries_issued: r.queries_issued,
            max_cond_size_used: r.max_cond_size_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscountingRecord {
    pub cause: String,
    pub alt_cause: String,
    pub effect: String,
    pub p_prior: f64,
    pub p_given_effect: f64,
    pub p_given_effect_and_alt: f64,
    pub discounted: bool,
}

impl DiscountingRecord {
    pub fn new(names: &impl Names, r: &DiscountingReport) -> Self {
        DiscountingRecord {
            cause: names.var_name(r.cause).into(),
            alt_cause: names.var_name(r.alt_cause).into(),
            effect: names.var_name(r.effect).into(),
            p_prior: r.p_prior,
            p_given_effect: r.p_given_effect,
            p_given_effect_and_alt: r.p_given_effect_and_alt,
            discounted: r.discounted(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}
