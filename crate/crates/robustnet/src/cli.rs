//! Command implementations behind the `robustnet` binary: configuration
//! parsing, run-directory layout, persistence, and the delimited exports.
//!
//! Every command is deterministic given its inputs and seed. Exit codes are
//! fixed: 0 success, 1 usage error, 2 data error, 3 numerical
//! non-convergence.

use crate::blockmodel::{BlockModel, ModelError};
use crate::entropy::{self, ReductionReport};
use crate::moo::{self, Checkpoint, Front, OptConfig, SmsEmoa};
use crate::oracle::{self, OracleError};
use crate::percolation::{self, PercError, RemovalSchedule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Convergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Convergence(_) => 3,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<PercError> for CliError {
    fn from(err: PercError) -> Self {
        match err {
            PercError::Convergence { .. } => CliError::Convergence(err.to_string()),
            PercError::Model(inner) => inner.into(),
            PercError::Domain(_) => CliError::Usage(err.to_string()),
        }
    }
}

impl From<moo::MooError> for CliError {
    fn from(err: moo::MooError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(err: OracleError) -> Self {
        match err {
            OracleError::TooFewNodes(_) => CliError::Usage(err.to_string()),
            OracleError::Model(inner) => inner.into(),
            OracleError::Percolation(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

/// Run mode of the `optimize` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    /// Two-objective SMS-EMOA tracing the Pareto front.
    Pareto,
    /// Single-objective run maximizing `R_random` at fixed `R_targeted`.
    Constrained,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstrainedParams {
    pub target: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    moo::DEFAULT_CONSTRAINED_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReduceParams {
    pub epsilon: f64,
}

impl Default for ReduceParams {
    fn default() -> Self {
        ReduceParams {
            epsilon: entropy::DEFAULT_EPSILON,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleParams {
    pub nodes: usize,
    pub trials: usize,
    pub grid_size: usize,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams {
            nodes: 100_000,
            trials: 5,
            grid_size: 51,
        }
    }
}

/// One plain-text configuration file per run; unknown keys are rejected and
/// the parsed value round-trips losslessly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub out_dir: PathBuf,
    pub mode: RunMode,
    pub opt: OptConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constrained: Option<ConstrainedParams>,
    #[serde(default)]
    pub reduce: ReduceParams,
    #[serde(default)]
    pub oracle: OracleParams,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|err| CliError::Data(format!("reading {}: {err}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text)
            .map_err(|err| CliError::Data(format!("parsing run configuration: {err}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("run configuration serialization")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.opt.validate()?;
        if self.mode == RunMode::Constrained && self.constrained.is_none() {
            return Err(CliError::Data(
                "mode = \"constrained\" requires a [constrained] section".into(),
            ));
        }
        if !(self.reduce.epsilon > 0.0) {
            return Err(CliError::Data(format!(
                "reduce.epsilon = {} must be positive",
                self.reduce.epsilon
            )));
        }
        Ok(())
    }

    /// Directory holding this run's artifacts.
    pub fn run_dir(&self) -> PathBuf {
        self.out_dir.join("run").join(self.opt.seed.to_string())
    }
}

fn read_model(path: &Path) -> Result<BlockModel, CliError> {
    let model = BlockModel::read_file(path)
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
    model
        .require_valid()
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
    Ok(model)
}

/// Computes the giant-component curve, writes `s_curve.csv` under `out_dir`
/// and returns the robustness value for the caller to print.
pub fn cmd_robustness(
    model_path: &Path,
    schedule: RemovalSchedule,
    grid: usize,
    out_dir: &Path,
) -> Result<f64, CliError> {
    let model = read_model(model_path)?;
    let curve = percolation::s_curve(&model, schedule, grid)?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("s_curve.csv"), curve.to_csv())?;
    Ok(curve.robustness)
}

/// Reduces a model, writing `reduced_model.json` and
/// `reduction_report.json`; returns the report and the robustness drift
/// `(targeted, random)` of the reduction.
pub fn cmd_reduce(
    model_path: &Path,
    epsilon: f64,
    out_dir: &Path,
) -> Result<(ReductionReport, (f64, f64)), CliError> {
    let model = read_model(model_path)?;
    let (reduced, report) = entropy::reduce(&model, epsilon)?;
    let before = percolation::robustness_pair(&model)?;
    let after = percolation::robustness_pair(&reduced)?;
    fs::create_dir_all(out_dir)?;
    reduced.write_file(&out_dir.join("reduced_model.json"))?;
    fs::write(out_dir.join("reduction_report.json"), report.to_json())?;
    Ok((report, (after.0 - before.0, after.1 - before.1)))
}

/// Runs the Monte-Carlo validator and writes `validation_report.csv`.
pub fn cmd_validate(
    model_path: &Path,
    schedule: RemovalSchedule,
    nodes: usize,
    trials: usize,
    grid: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<oracle::McRobustness, CliError> {
    let model = read_model(model_path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = oracle::mc_robustness(&model, schedule, nodes, grid, trials, &mut rng)?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("validation_report.csv"), result.to_csv())?;
    Ok(result)
}

fn write_front_dir(dir: &Path, front: &Front, config: &OptConfig) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("front.csv"), front.to_csv())?;
    for (i, member) in front.members.iter().enumerate() {
        let model = member.model.clone().or_else(|| {
            moo::decode(
                &member.genome,
                config.blocks,
                config.kappa,
                config.size_bounds,
                config.edge_bounds,
            )
        });
        if let Some(model) = model {
            model.write_file(&dir.join(format!("m{i:03}.json")))?;
        }
    }
    Ok(())
}

fn write_checkpoint(run_dir: &Path, checkpoint: &Checkpoint) -> Result<(), CliError> {
    let text = serde_json::to_string(checkpoint)
        .map_err(|err| CliError::Data(format!("serializing checkpoint: {err}")))?;
    fs::write(run_dir.join("checkpoint.json"), text)?;
    Ok(())
}

fn load_checkpoint(run_dir: &Path) -> Result<Checkpoint, CliError> {
    let path = run_dir.join("checkpoint.json");
    let text = fs::read_to_string(&path)
        .map_err(|err| CliError::Data(format!("reading checkpoint {}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| CliError::Data(format!("corrupt checkpoint {}: {err}", path.display())))
}

/// Runs the optimizer described by a configuration file. Archive snapshots
/// land in `run/<seed>/gen<step>/`, each with its front export and
/// per-member model files; the final front and a resumable checkpoint sit
/// at the run-directory root. Returns the run directory.
pub fn cmd_optimize(config_path: &Path, resume: bool) -> Result<PathBuf, CliError> {
    let config = RunConfig::from_file(config_path)?;
    let run_dir = config.run_dir();
    fs::create_dir_all(&run_dir)?;
    fs::write(config.out_dir.join("config.toml"), config.to_toml())?;
    match config.mode {
        RunMode::Pareto => run_pareto(&config, &run_dir, resume)?,
        RunMode::Constrained => run_constrained(&config, &run_dir)?,
    }
    Ok(run_dir)
}

fn run_pareto(config: &RunConfig, run_dir: &Path, resume: bool) -> Result<(), CliError> {
    let evaluator = moo::robustness_evaluator(config.opt.grid_size);
    let mut engine = if resume {
        let checkpoint = load_checkpoint(run_dir)?;
        if checkpoint.config != config.opt {
            return Err(CliError::Data(
                "checkpoint was produced by a different configuration; refusing to resume".into(),
            ));
        }
        SmsEmoa::from_checkpoint(checkpoint)?
    } else {
        SmsEmoa::new(config.opt.clone(), &evaluator)?
    };

    let snapshot_dir = |snapshot: &moo::FrontSnapshot| {
        let step = snapshot.evaluations - config.opt.population_size as u64;
        run_dir.join(format!("gen{step:06}"))
    };
    for snapshot in engine.archive() {
        write_front_dir(&snapshot_dir(snapshot), &snapshot.front, &config.opt)?;
    }
    let mut written = engine.archive().len();
    write_checkpoint(run_dir, &engine.checkpoint())?;

    while engine.step(&evaluator) {
        if engine.archive().len() > written {
            for snapshot in &engine.archive()[written..] {
                write_front_dir(&snapshot_dir(snapshot), &snapshot.front, &config.opt)?;
            }
            written = engine.archive().len();
            write_checkpoint(run_dir, &engine.checkpoint())?;
        }
    }
    write_checkpoint(run_dir, &engine.checkpoint())?;

    let final_front = &engine
        .archive()
        .last()
        .expect("archive always holds the initial front")
        .front;
    fs::write(run_dir.join("front.csv"), final_front.to_csv())?;
    let models_dir = run_dir.join("models");
    write_front_dir(&models_dir, final_front, &config.opt)?;
    Ok(())
}

fn run_constrained(config: &RunConfig, run_dir: &Path) -> Result<(), CliError> {
    let params = config
        .constrained
        .as_ref()
        .expect("validated constrained configuration");
    let evaluator = moo::robustness_evaluator(config.opt.grid_size);
    let result = moo::constrained_run(&config.opt, params.target, params.tolerance, evaluator)?;
    let text = serde_json::to_string_pretty(&result)
        .map_err(|err| CliError::Data(format!("serializing result: {err}")))?;
    fs::write(run_dir.join("constrained.json"), text)?;
    let models_dir = run_dir.join("models");
    fs::create_dir_all(&models_dir)?;
    let write_model = |ind: &moo::Individual, name: &str| -> Result<(), CliError> {
        if let Some(model) = &ind.model {
            model.write_file(&models_dir.join(name))?;
        }
        Ok(())
    };
    match &result.best_feasible {
        Some(best) => write_model(best, "best.json")?,
        None => write_model(&result.best_attempt, "best_attempt.json")?,
    }
    Ok(())
}

/// Per-front structure tables for plotting: block sizes, mean degrees, and
/// log-scale edge matrices along the front, members ordered by rising
/// `R_targeted` and blocks sorted by descending mean degree. Models are
/// reduced at `epsilon` first, matching how the structures are read off in
/// practice.
pub fn cmd_front_report(run_dir: &Path, epsilon: f64, out_dir: &Path) -> Result<(), CliError> {
    let front_path = run_dir.join("front.csv");
    let text = fs::read_to_string(&front_path).map_err(|err| {
        CliError::Data(format!(
            "missing run artifacts: {}: {err}",
            front_path.display()
        ))
    })?;
    let mut rows: Vec<(f64, f64, String)> = Vec::new();
    for line in text.lines().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Data(format!(
                "malformed front row in {}: {line:?}",
                front_path.display()
            )));
        }
        let rt: f64 = fields[0]
            .parse()
            .map_err(|_| CliError::Data(format!("bad R_targeted value {:?}", fields[0])))?;
        let rr: f64 = fields[1]
            .parse()
            .map_err(|_| CliError::Data(format!("bad R_random value {:?}", fields[1])))?;
        rows.push((rt, rr, fields[2].to_string()));
    }
    rows.sort_by(|a, b| a.partial_cmp(b).expect("finite objectives"));

    let mut reduced_models: Vec<(f64, f64, Option<BlockModel>)> = Vec::new();
    for (rt, rr, id) in &rows {
        let model_path = run_dir.join("models").join(format!("{id}.json"));
        let reduced = if model_path.exists() {
            let model = read_model(&model_path)?;
            let (reduced, _) = entropy::reduce(&model, epsilon)?;
            Some(reduced)
        } else {
            None
        };
        reduced_models.push((*rt, *rr, reduced));
    }
    let max_blocks = reduced_models
        .iter()
        .filter_map(|(_, _, m)| m.as_ref().map(BlockModel::block_count))
        .max()
        .unwrap_or(0);

    let mut front = String::from("R_targeted,R_random\n");
    let mut sizes = String::from("R_targeted");
    let mut degrees = String::from("R_targeted");
    for r in 0..max_blocks {
        write!(sizes, ",n_{r}").unwrap();
        write!(degrees, ",kappa_{r}").unwrap();
    }
    sizes.push('\n');
    degrees.push('\n');
    let mut edges = String::from("R_targeted");
    for r in 0..max_blocks {
        for s in r..max_blocks {
            write!(edges, ",log10_e_{r}_{s}").unwrap();
        }
    }
    edges.push('\n');

    for (rt, rr, model) in &reduced_models {
        writeln!(front, "{rt},{rr}").unwrap();
        write!(sizes, "{rt}").unwrap();
        write!(degrees, "{rt}").unwrap();
        write!(edges, "{rt}").unwrap();
        // Blocks in descending mean-degree order, the coloring convention
        // of the structure plots.
        let order: Vec<usize> = match model {
            Some(m) => {
                let mut idx: Vec<usize> = (0..m.block_count()).collect();
                idx.sort_by(|&a, &b| {
                    m.mean_degree(b)
                        .partial_cmp(&m.mean_degree(a))
                        .expect("finite degrees")
                });
                idx
            }
            None => Vec::new(),
        };
        for col in 0..max_blocks {
            match (model, order.get(col)) {
                (Some(m), Some(&r)) => {
                    write!(sizes, ",{}", m.sizes()[r]).unwrap();
                    write!(degrees, ",{}", m.mean_degree(r)).unwrap();
                }
                _ => {
                    sizes.push(',');
                    degrees.push(',');
                }
            }
        }
        for i in 0..max_blocks {
            for j in i..max_blocks {
                match (model, order.get(i), order.get(j)) {
                    (Some(m), Some(&r), Some(&s)) if m.edge(r, s) > 0.0 => {
                        write!(edges, ",{}", m.edge(r, s).log10()).unwrap();
                    }
                    _ => edges.push(','),
                }
            }
        }
        sizes.push('\n');
        degrees.push('\n');
        edges.push('\n');
    }

    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("report_front.csv"), front)?;
    fs::write(out_dir.join("report_block_sizes.csv"), sizes)?;
    fs::write(out_dir.join("report_block_degrees.csv"), degrees)?;
    fs::write(out_dir.join("report_edge_matrices.csv"), edges)?;
    Ok(())
}
