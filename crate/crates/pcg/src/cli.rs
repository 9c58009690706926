//! The `pcg` command.
//!
//! Results go to standard output, diagnostics to standard error. Exit code 0
//! on success, 1 on a domain error (or a nonempty `check` report), 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use pcg_core::discovery::DEFAULT_MAX_COND_SIZE;
use pcg_core::independence::{DEFAULT_ALPHA, DEFAULT_TRIPLE_CAP};
use pcg_core::inference::PresentStates;
use pcg_core::{
    algorithm_i, check_faithfulness, check_markov, discounting_report, eliminate, exact_ci, g_test_ci,
    propagate_polytree, CiQuery, Dataset, Evidence, ExactOracle, GTestOracle, Network, TimeOrder, VariableId,
    DEFAULT_TOL,
};

use crate::format::{load_dataset, load_network, save_dataset};
use crate::report::{to_json, CiRecord, DiscountingRecord, DiscoveryRecord, PosteriorRecord};
use crate::PcgError;

#[derive(Debug, Parser)]
#[command(name = "pcg", version, about = "Discrete Bayesian networks, d-separation and causal influence discovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Posterior of one variable given evidence
    Query(QueryArgs),
    /// Draw a dataset by ancestral sampling
    Sample(SampleArgs),
    /// Test d-separation in the network graph
    Dsep(DsepArgs),
    /// Conditional independence from the exact joint or from data
    Ci(CiArgs),
    /// Learn causal influences from a time order
    Learn(LearnArgs),
    /// Check the Markov or faithfulness condition
    Check(CheckArgs),
    /// Discounting (explaining away) report
    Discount(DiscountArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Ve,
    Polytree,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub target: String,
    /// Observations as VARIABLE=state
    #[arg(long, num_args = 1..)]
    pub evidence: Vec<String>,
    #[arg(long, value_enum, default_value = "ve")]
    pub engine: Engine,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DsepArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, num_args = 1..)]
    pub given: Vec<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["joint_from_net", "data"])))]
pub struct CiArgs {
    #[arg(long)]
    pub joint_from_net: Option<PathBuf>,
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, num_args = 1..)]
    pub given: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["net", "data"])))]
pub struct LearnArgs {
    #[arg(long)]
    pub net: Option<PathBuf>,
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Variables earliest first, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub order: Vec<String>,
    #[arg(long = "max-cond", default_value_t = DEFAULT_MAX_COND_SIZE)]
    pub max_cond: usize,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("condition").required(true).args(["markov", "faithfulness"])))]
pub struct CheckArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub markov: bool,
    #[arg(long)]
    pub faithfulness: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DiscountArgs {
    #[arg(long)]
    pub net: PathBuf,
    #[arg(long)]
    pub cause: String,
    #[arg(long)]
    pub alt: String,
    #[arg(long)]
    pub effect: String,
    #[arg(long)]
    pub json: bool,
}

enum Failure {
    Usage(String),
    Domain(PcgError),
}

impl From<PcgError> for Failure {
    fn from(e: PcgError) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| Failure::Domain(e.into()))
    };
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn var(names: &impl Lookup, name: &str) -> std::result::Result<VariableId, Failure> {
    names.lookup(name).ok_or_else(|| Failure::Domain(PcgError::UnknownVariable(name.into())))
}

trait Lookup {
    fn lookup(&self, name: &str) -> Option<VariableId>;
}

impl Lookup for Network {
    fn lookup(&self, name: &str) -> Option<VariableId> {
        self.id(name)
    }
}

impl Lookup for Dataset {
    fn lookup(&self, name: &str) -> Option<VariableId> {
        self.id(name)
    }
}

fn vars(names: &impl Lookup, list: &[String]) -> std::result::Result<Vec<VariableId>, Failure> {
    list.iter().map(|n| var(names, n)).collect()
}

fn parse_evidence(net: &Network, items: &[String]) -> std::result::Result<Evidence, Failure> {
    let mut evidence = Evidence::new();
    for item in items {
        let (name, state) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("evidence `{item}` must look like VARIABLE=state")))?;
        let v = var(net, name)?;
        let s = net
            .variable(v)
            .state_index(state)
            .ok_or_else(|| Failure::Domain(PcgError::UnknownState { variable: name.into(), state: state.into() }))?;
        domain!(evidence.insert(v, s))?;
    }
    Ok(evidence)
}

fn write_out(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|source| Failure::Domain(PcgError::Io { path: PathBuf::from("<stdout>"), source }))
}

fn execute(command: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match command {
        Command::Query(a) => {
            let net = load_network(&a.net)?;
            let target = var(&net, &a.target)?;
            let evidence = parse_evidence(&net, &a.evidence)?;
            let (posterior, engine) = match a.engine {
                Engine::Ve => (domain!(eliminate(&net, target, &evidence))?, "ve"),
                Engine::Polytree => {
                    let mut all = domain!(propagate_polytree(&net, &evidence))?;
                    (all.swap_remove(target.0), "polytree")
                }
            };
            let record = PosteriorRecord::new(&net, &posterior, &evidence, engine);
            if a.json {
                write_out(out, &to_json(&record))?;
            } else {
                let mut text = format!("P({} | {})\n", record.variable, evidence_text(&record));
                let width = record.posterior.iter().map(|s| s.state.len()).max().unwrap_or(0).max(5);
                text += &format!("{:<width$}  probability\n", "state");
                for s in &record.posterior {
                    text += &format!("{:<width$}  {:.10}\n", s.state, s.probability);
                }
                write_out(out, &text)?;
            }
        }
        Command::Sample(a) => {
            let net = load_network(&a.net)?;
            if a.n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let data = domain!(net.forward_sample(a.seed, a.n))?;
            save_dataset(&a.out, &data)?;
            write_out(out, &format!("wrote {} rows to {}\n", data.len(), a.out.display()))?;
        }
        Command::Dsep(a) => {
            let net = load_network(&a.net)?;
            let (x, y) = (var(&net, &a.x)?, var(&net, &a.y)?);
            let given = vars(&net, &a.given)?;
            let separated = domain!(net.dag().d_separated(x, y, &given))?;
            write_out(out, &format!("{separated}\n"))?;
        }
        Command::Ci(a) => {
            if !(a.alpha > 0.0 && a.alpha < 1.0) {
                return Err(Failure::Usage("--alpha must lie in (0, 1)".into()));
            }
            let record = if let Some(path) = &a.joint_from_net {
                let net = load_network(path)?;
                let q = domain!(CiQuery::new(var(&net, &a.x)?, var(&net, &a.y)?, &vars(&net, &a.given)?))?;
                let joint = domain!(net.enumerate_joint())?;
                CiRecord::new(&net, &domain!(exact_ci(&joint, &q, DEFAULT_TOL))?)
            } else {
                let data = load_dataset(a.data.as_ref().expect("group requires a source"), None)?;
                let q = domain!(CiQuery::new(var(&data, &a.x)?, var(&data, &a.y)?, &vars(&data, &a.given)?))?;
                CiRecord::new(&data, &domain!(g_test_ci(&data, &q, a.alpha))?)
            };
            if a.json {
                write_out(out, &to_json(&record))?;
            } else {
                write_out(out, &ci_line(&record))?;
            }
        }
        Command::Learn(a) => {
            if !(a.alpha > 0.0 && a.alpha < 1.0) {
                return Err(Failure::Usage("--alpha must lie in (0, 1)".into()));
            }
            let record = if let Some(path) = &a.net {
                let net = load_network(path)?;
                let order = vars(&net, &a.order)?;
                let joint = domain!(net.enumerate_joint())?;
                let result =
                    domain!(algorithm_i(&ExactOracle::new(&joint), &TimeOrder::new(order.clone()), a.max_cond))?;
                DiscoveryRecord::new(&net, &result, "exact", &order, a.max_cond)
            } else {
                let data = load_dataset(a.data.as_ref().expect("group requires a source"), None)?;
                let order = vars(&data, &a.order)?;
                let oracle = GTestOracle { data: &data, alpha: a.alpha };
                let result = domain!(algorithm_i(&oracle, &TimeOrder::new(order.clone()), a.max_cond))?;
                DiscoveryRecord::new(&data, &result, "g_test", &order, a.max_cond)
            };
            if a.json {
                write_out(out, &to_json(&record))?;
            } else {
                write_out(out, &learn_table(&record))?;
            }
        }
        Command::Check(a) => {
            let net = load_network(&a.net)?;
            let joint = domain!(net.enumerate_joint())?;
            let (label, violations) = if a.markov {
                ("markov", domain!(check_markov(net.dag(), &joint, DEFAULT_TOL))?)
            } else {
                ("faithfulness", domain!(check_faithfulness(net.dag(), &joint, DEFAULT_TOL, DEFAULT_TRIPLE_CAP))?)
            };
            let records: Vec<CiRecord> = violations.iter().map(|d| CiRecord::new(&net, d)).collect();
            if a.json {
                write_out(out, &to_json(&records))?;
            } else if records.is_empty() {
                write_out(out, &format!("{label}: no violations\n"))?;
            } else {
                let mut text = format!("{label}: {} violation(s)\n", records.len());
                for r in &records {
                    text += &ci_line(r);
                }
                write_out(out, &text)?;
            }
            return Ok(if records.is_empty() { 0 } else { 1 });
        }
        Command::Discount(a) => {
            let net = load_network(&a.net)?;
            let (cause, alt, effect) = (var(&net, &a.cause)?, var(&net, &a.alt)?, var(&net, &a.effect)?);
            let report = domain!(discounting_report(&net, cause, alt, effect, PresentStates::default()))?;
            let r = DiscountingRecord::new(&net, &report);
            if a.json {
                write_out(out, &to_json(&r))?;
            } else {
                let present = |v: VariableId| net.variable(v).states[1].clone();
                let (c, al, e) = (
                    format!("{}={}", r.cause, present(cause)),
                    format!("{}={}", r.alt_cause, present(alt)),
                    format!("{}={}", r.effect, present(effect)),
                );
                let rows = [
                    (format!("P({c})"), r.p_prior),
                    (format!("P({c} | {e})"), r.p_given_effect),
                    (format!("P({c} | {e}, {al})"), r.p_given_effect_and_alt),
                ];
                let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
                let mut text = String::new();
                for (label, p) in &rows {
                    text += &format!("{label:<width$}  {p:.10}\n");
                }
                text += &format!("discounted: {}\n", r.discounted);
                write_out(out, &text)?;
            }
        }
    }
    Ok(0)
}

fn evidence_text(r: &PosteriorRecord) -> String {
    if r.evidence.is_empty() {
        return "no evidence".into();
    }
    r.evidence.iter().map(|e| format!("{}={}", e.variable, e.state)).collect::<Vec<_>>().join(", ")
}

fn ci_line(r: &CiRecord) -> String {
    let given = if r.s.is_empty() { String::new() } else { format!(" | {}", r.s.join(", ")) };
    let verdict = if r.independent { "independent" } else { "dependent" };
    format!(
        "{} _||_ {}{}: {} (method {}, statistic {:.6}, dof {}, p {:.6})\n",
        r.x, r.y, given, verdict, r.method, r.statistic, r.dof, r.p_value
    )
}

fn learn_table(r: &DiscoveryRecord) -> String {
    let rows: Vec<[String; 3]> = r
        .links
        .iter()
        .map(|l| {
            let s = if l.witness_s.is_empty() { "{}".to_string() } else { format!("{{{}}}", l.witness_s.join(", ")) };
            [format!("{} -> {}", l.from, l.to), l.witness_z.clone(), s]
        })
        .collect();
    let header = ["influence", "witness Z", "witness S"];
    let widths: Vec<usize> =
        (0..3).map(|i| rows.iter().map(|row| row[i].len()).chain([header[i].len()]).max().unwrap_or(0)).collect();
    let line = |cells: [&str; 3]| {
        format!("{:<w0$}  {:<w1$}  {}\n", cells[0], cells[1], cells[2], w0 = widths[0], w1 = widths[1])
    };
    let mut text =
        format!("{} influence link(s), {} oracle queries ({} oracle)\n", r.links.len(), r.queries_issued, r.oracle);
    text += &line(header);
    for row in &rows {
        text += &line([&row[0], &row[1], &row[2]]);
    }
    text
}
