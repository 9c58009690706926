//! Network JSON and dataset CSV.
//!
//! Network files look like
//!
//! ```json
//! {
//!   "variables": [{"name": "A", "states": ["false", "true"]}, ...],
//!   "edges": [["A", "B"], ...],
//!   "cpts": {"B": {"parents": ["A"], "rows": [[0.9, 0.1], [0.2, 0.8]]}, ...}
//! }
//! ```
//!
//! with rows ordered over parent configurations, first parent slowest.
//! Loading validates the whole network. Dataset files carry a header of
//! variable names and one row of state names per observation.

use std::fs;
use std::path::Path;

use pcg_core::{Cpt, Dag, Dataset, Network, Variable, VariableId};
use serde::{Deserialize, Serialize};

use crate::{PcgError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableSpec {
    name: String,
    states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CptSpec {
    parents: Vec<String>,
    rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    variables: Vec<VariableSpec>,
    edges: Vec<(String, String)>,
    cpts: serde_json::Map<String, serde_json::Value>,
}

pub fn network_from_json(text: &str) -> Result<Network> {
    let file: NetworkFile = serde_json::from_str(text)?;
    let names: Vec<&str> = file.variables.iter().map(|v| v.name.as_str()).collect();
    let dag = Dag::new(&names, &file.edges)?;
    let lookup = |n: &str| dag.id(n).ok_or_else(|| PcgError::UnknownVariable(n.to_string()));
    let mut cpts = Vec::with_capacity(file.cpts.len());
    for (child, spec) in &file.cpts {
        let spec: CptSpec = serde_json::from_value(spec.clone())?;
        let parents = spec.parents.iter().map(|p| lookup(p)).collect::<Result<Vec<VariableId>>>()?;
        cpts.push(Cpt::new(lookup(child)?, parents, spec.rows));
    }
    let variables =
        file.variables.iter().map(|v| Variable { name: v.name.clone(), states: v.states.clone() }).collect();
    Ok(Network::new(dag, variables, cpts)?)
}

pub fn network_to_json(net: &Network) -> String {
    let dag = net.dag();
    let name = |v: VariableId| dag.name(v).to_string();
    let mut cpts = serde_json::Map::new();
    for cpt in net.cpts() {
        let spec = CptSpec { parents: cpt.parents.iter().map(|&p| name(p)).collect(), rows: cpt.rows.clone() };
        cpts.insert(name(cpt.child), serde_json::to_value(spec).expect("plain data serializes"));
    }
    let file = NetworkFile {
        variables: net
            .variables()
            .iter()
            .map(|v| VariableSpec { name: v.name.clone(), states: v.states.clone() })
            .collect(),
        edges: dag.edges().into_iter().map(|(p, c)| (name(p), name(c))).collect(),
        cpts,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| PcgError::Io { path: path.to_path_buf(), source })
}

pub fn load_network(path: &Path) -> Result<Network> {
    network_from_json(&read(path)?)
}

pub fn save_network(path: &Path, net: &Network) -> Result<()> {
    fs::write(path, network_to_json(net)).map_err(|source| PcgError::Io { path: path.to_path_buf(), source })
}

/// Parses CSV text. With `schema`, columns are matched to those variables by
/// name and reordered to match; without it, each column's states are its
/// distinct values in sorted order.
pub fn dataset_from_csv(text: &str, schema: Option<&[Variable]>) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut records = Vec::new();
    for rec in reader.records() {
        records.push(rec?);
    }
    for (i, h) in header.iter().enumerate() {
        if header[..i].contains(h) {
            return Err(PcgError::Format(format!("column `{h}` appears twice")));
        }
    }

    let (variables, column_of): (Vec<Variable>, Vec<usize>) = match schema {
        Some(vars) => {
            if header.len() != vars.len() {
                return Err(PcgError::Format(format!("expected {} columns, found {}", vars.len(), header.len())));
            }
            let cols = vars
                .iter()
                .map(|v| {
                    header.iter().position(|h| h == &v.name).ok_or_else(|| PcgError::UnknownVariable(v.name.clone()))
                })
                .collect::<Result<Vec<usize>>>()?;
            (vars.to_vec(), cols)
        }
        None => {
            let vars = header
                .iter()
                .enumerate()
                .map(|(c, name)| {
                    let mut states: Vec<String> = records.iter().filter_map(|r| r.get(c)).map(str::to_string).collect();
                    states.sort();
                    states.dedup();
                    Variable { name: name.clone(), states }
                })
                .collect();
            (vars, (0..header.len()).collect())
        }
    };

    let mut rows = Vec::with_capacity(records.len());
    for rec in &records {
        let row = variables
            .iter()
            .zip(&column_of)
            .map(|(v, &c)| {
                let cell = rec.get(c).unwrap_or_default();
                v.state_index(cell)
                    .ok_or_else(|| PcgError::UnknownState { variable: v.name.clone(), state: cell.into() })
            })
            .collect::<Result<Vec<usize>>>()?;
        rows.push(row);
    }
    Ok(Dataset::new(variables, rows)?)
}

pub fn dataset_to_csv(data: &Dataset) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(data.variables().iter().map(|v| v.name.as_str()))?;
    for row in data.rows() {
        writer.write_record(row.iter().zip(data.variables()).map(|(&s, v)| v.states[s].as_str()))?;
    }
    let bytes = writer.into_inner().map_err(|e| PcgError::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("state names are UTF-8"))
}

pub fn load_dataset(path: &Path, schema: Option<&[Variable]>) -> Result<Dataset> {
    dataset_from_csv(&read(path)?, schema)
}

pub fn save_dataset(path: &Path, data: &Dataset) -> Result<()> {
    fs::write(path, dataset_to_csv(data)?).map_err(|source| PcgError::Io { path: path.to_path_buf(), source })
}
