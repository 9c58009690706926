//! Reference values for the fixture networks, computed by summing the full
//! joint (no elimination, no message passing), and the drift check against
//! the committed copy in `fixtures/goldens.json`.

use std::path::Path;

use pcg_core::fixtures;
use pcg_core::{normative_discounting, Network};
use serde::{Deserialize, Serialize};

use crate::format::network_to_json;
use crate::{PcgError, Result};

/// Allowed drift between a committed and a regenerated value.
pub const GOLDEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Golden {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

/// P(target = state | evidence) by summing `joint_probability` over every
/// full assignment. Evidence and target are given by name.
pub fn enumerated_posterior(net: &Network, target: (&str, &str), evidence: &[(&str, &str)]) -> Result<f64> {
    let lookup = |(v, s): (&str, &str)| -> Result<(usize, usize)> {
        let id = net.id(v).ok_or_else(|| PcgError::UnknownVariable(v.into()))?;
        let idx = net
            .variable(id)
            .state_index(s)
            .ok_or_else(|| PcgError::UnknownState { variable: v.into(), state: s.into() })?;
        Ok((id.0, idx))
    };
    let (t, ts) = lookup(target)?;
    let ev = evidence.iter().map(|&e| lookup(e)).collect::<Result<Vec<_>>>()?;
    let radices = net.arities();
    let mut digits = vec![0; radices.len()];
    let (mut num, mut den) = (0.0, 0.0);
    loop {
        if ev.iter().all(|&(v, s)| digits[v] == s) {
            let p = net.joint_probability(&digits)?;
            den += p;
            if digits[t] == ts {
                num += p;
            }
        }
        if !next_assignment(&mut digits, &radices) {
            break;
        }
    }
    if den <= 0.0 {
        return Err(PcgError::Format(format!("evidence {evidence:?} has probability zero")));
    }
    Ok(num / den)
}

/// Odometer step, last digit fastest; false after the final assignment.
fn next_assignment(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

type Case = (&'static str, (&'static str, &'static str), &'static [(&'static str, &'static str)]);

const CHAIN: &[Case] = &[
    ("c1/P(Z=true)", ("Z", "true"), &[]),
    ("c1/P(X=true)", ("X", "true"), &[]),
    ("c1/P(Y=true)", ("Y", "true"), &[]),
    ("c1/P(Y=true|Z=true)", ("Y", "true"), &[("Z", "true")]),
    ("c1/P(Z=true|Y=true)", ("Z", "true"), &[("Y", "true")]),
];

const SPRINKLER: &[Case] = &[
    ("f1/P(SPRINKLER=true)", ("SPRINKLER", "true"), &[]),
    ("f1/P(RAIN=true)", ("RAIN", "true"), &[]),
    ("f1/P(WET=true)", ("WET", "true"), &[]),
    ("f1/P(SLIPPERY=true)", ("SLIPPERY", "true"), &[]),
    ("f1/P(RAIN=true|SPRINKLER=true)", ("RAIN", "true"), &[("SPRINKLER", "true")]),
    ("f1/P(SPRINKLER=true|WET=true)", ("SPRINKLER", "true"), &[("WET", "true")]),
    ("f1/P(SPRINKLER=true|WET=true,RAIN=true)", ("SPRINKLER", "true"), &[("WET", "true"), ("RAIN", "true")]),
    ("f1/P(SEASON=summer|SLIPPERY=true)", ("SEASON", "summer"), &[("SLIPPERY", "true")]),
];

const HOLMES: &[Case] = &[
    ("f2/P(BURGLAR=true)", ("BURGLAR", "true"), &[]),
    ("f2/P(BURGLAR=true|ALARM=true)", ("BURGLAR", "true"), &[("ALARM", "true")]),
    (
        "f2/P(BURGLAR=true|ALARM=true,EARTHQUAKE=true)",
        ("BURGLAR", "true"),
        &[("ALARM", "true"), ("EARTHQUAKE", "true")],
    ),
    (
        "f2/P(BURGLAR=true|ALARM=true,FOOTPRINTS=true)",
        ("BURGLAR", "true"),
        &[("ALARM", "true"), ("FOOTPRINTS", "true")],
    ),
    ("f2/P(EARTHQUAKE=true|ALARM=true)", ("EARTHQUAKE", "true"), &[("ALARM", "true")]),
];

/// Every reference value, in a fixed order.
pub fn compute() -> Result<Vec<Golden>> {
    let mut out = Vec::new();
    for (net, cases) in [(fixtures::chain(), CHAIN), (fixtures::sprinkler(), SPRINKLER), (fixtures::holmes(), HOLMES)] {
        for &(name, target, evidence) in cases {
            let value = enumerated_posterior(&net, target, evidence)?;
            out.push(Golden { name: name.into(), value, tol: GOLDEN_TOL });
        }
    }
    // two equiprobable causes, each sufficient alone, effect absent without them
    let (c_given_e, c_given_e_alt) = normative_discounting(0.5, 0.5, [1.0, 1.0, 1.0, 0.0])?;
    out.push(Golden { name: "discount/P(c1|e)".into(), value: c_given_e, tol: GOLDEN_TOL });
    out.push(Golden { name: "discount/P(c1|e,c2)".into(), value: c_given_e_alt, tol: GOLDEN_TOL });
    Ok(out)
}

/// Differences between committed and fresh values, one line each.
pub fn drift(committed: &[Golden], fresh: &[Golden]) -> Vec<String> {
    let mut problems = Vec::new();
    for f in fresh {
        match committed.iter().find(|c| c.name == f.name) {
            None => problems.push(format!("{}: missing from committed goldens", f.name)),
            Some(c) if (c.value - f.value).abs() > c.tol => {
                problems.push(format!("{}: committed {} but regenerated {} (tol {})", f.name, c.value, f.value, c.tol))
            }
            Some(_) => {}
        }
    }
    for c in committed {
        if !fresh.iter().any(|f| f.name == c.name) {
            problems.push(format!("{}: no longer generated", c.name));
        }
    }
    problems
}

pub fn goldens_to_json(goldens: &[Golden]) -> String {
    crate::report::to_json(&goldens)
}

pub fn goldens_from_json(text: &str) -> Result<Vec<Golden>> {
    Ok(serde_json::from_str(text)?)
}

/// The fixture networks as they are committed: `(file name, JSON text)`.
pub fn fixture_files() -> Vec<(&'static str, String)> {
    vec![
        ("c1.json", network_to_json(&fixtures::chain())),
        ("f1.json", network_to_json(&fixtures::sprinkler())),
        ("f2.json", network_to_json(&fixtures::holmes())),
    ]
}

/// Regenerates everything under `dir`. Fails without writing anything when
/// an existing `goldens.json` has drifted.
pub fn regenerate(dir: &Path) -> Result<Vec<Golden>> {
    let fresh = compute()?;
    let path = dir.join("goldens.json");
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|source| PcgError::Io { path: path.clone(), source })?;
        let problems = drift(&goldens_from_json(&text)?, &fresh);
        if !problems.is_empty() {
            return Err(PcgError::Format(format!("goldens drifted: {}", problems.join("; "))));
        }
    }
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).map_err(|source| PcgError::Io { path: p, source })
    };
    for (name, text) in fixture_files() {
        write(name, &text)?;
    }
    write("goldens.json", &goldens_to_json(&fresh))?;
    Ok(fresh)
}
