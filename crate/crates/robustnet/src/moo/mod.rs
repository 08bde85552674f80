//! Steady-state hypervolume-selection evolutionary optimizer (SMS-EMOA)
//! over block-model genomes, maximizing the pair
//! `(R_targeted, R_random)`, plus the constrained single-objective mode
//! that fills in trade-off points the Pareto front cannot reach.
//!
//! Genomes live in the unit hypercube and decode through a log scale to a
//! [`BlockModel`]; the log decoding is what makes the extreme optimized
//! structures (core sizes around 1e-3 of the network at mean degrees of
//! 1e3 and beyond) reachable at all. Decodes with any block mean degree at
//! or below the feasibility floor score `(0, 0)` instead of being repaired;
//! with a reference point strictly below the objective box, hypervolume
//! selection eliminates them on its own.

pub mod hypervolume;
pub mod operators;

pub use hypervolume::{
    dominates, hv_contribution, hypervolume_2d, hypervolume_2d_checked, non_dominated_ranks,
    pareto_front_indices,
};
pub use operators::{polynomial_mutation, sbx_crossover};

use crate::blockmodel::{BlockModel, KAPPA_FLOOR};
use crate::percolation::{self, PercError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Penalty weight for constraint violation in [`constrained_run`].
pub const CONSTRAINED_PENALTY_WEIGHT: f64 = 10.0;

/// Default tolerance on the targeted-robustness constraint.
pub const DEFAULT_CONSTRAINED_TOLERANCE: f64 = 0.005;

#[derive(Debug, Error)]
pub enum MooError {
    #[error("invalid optimizer configuration: {0}")]
    Config(String),
    #[error("corrupt checkpoint: {0}")]
    Checkpoint(String),
}

/// Search-space point: `blocks` size weights followed by the upper triangle
/// of the edge-weight matrix (row-major, diagonal included), all in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genome(Vec<f64>);

impl Genome {
    pub fn new(genes: Vec<f64>) -> Self {
        Genome(genes)
    }

    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Genome length for a block count: `B` size weights plus `B(B+1)/2` edge
/// weights.
pub fn genome_length(blocks: usize) -> usize {
    blocks + blocks * (blocks + 1) / 2
}

/// A genome with its decoded model (when feasible) and objective pair
/// `(R_targeted, R_random)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Individual {
    pub genome: Genome,
    #[serde(skip)]
    pub model: Option<BlockModel>,
    pub objectives: (f64, f64),
}

/// Optimizer settings. The footnoted operator parameters of the reference
/// algorithm are the defaults: population 50, crossover always applied with
/// eta 20, mutation always applied with eta 15 at per-gene rate `1/d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptConfig {
    pub blocks: usize,
    /// Total mean degree every decoded model is normalized to.
    pub kappa: f64,
    pub population_size: usize,
    /// Total objective-evaluation budget, initial population included.
    pub max_evaluations: u64,
    pub seed: u64,
    pub eta_crossover: f64,
    pub eta_mutation: f64,
    pub p_crossover: f64,
    pub p_mutation: f64,
    /// Hypervolume reference point, strictly below the objective box.
    pub reference: (f64, f64),
    /// Quadrature grid for the robustness objectives.
    pub grid_size: usize,
    /// Archive a front snapshot every this many offspring evaluations.
    pub archive_interval: u64,
    /// log10 bounds for the size-weight decoding.
    pub size_bounds: (f64, f64),
    /// log10 bounds for the edge-weight decoding.
    pub edge_bounds: (f64, f64),
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig {
            blocks: 3,
            kappa: 2.5,
            population_size: 50,
            max_evaluations: 50_000,
            seed: 0,
            eta_crossover: 20.0,
            eta_mutation: 15.0,
            p_crossover: 1.0,
            p_mutation: 1.0,
            reference: (-1e-3, -1e-3),
            grid_size: percolation::DEFAULT_GRID,
            archive_interval: 1000,
            size_bounds: (-8.0, 0.0),
            edge_bounds: (-8.0, 0.0),
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<(), MooError> {
        let fail = |msg: String| Err(MooError::Config(msg));
        if self.blocks == 0 {
            return fail("block count must be at least 1".into());
        }
        if !(self.kappa > 1.0) {
            return fail(format!("total mean degree {} must exceed 1", self.kappa));
        }
        if self.population_size < 2 {
            return fail(format!(
                "population size {} must be at least 2",
                self.population_size
            ));
        }
        for (name, p) in [("p_crossover", self.p_crossover), ("p_mutation", self.p_mutation)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} = {p} must lie in [0, 1]"));
            }
        }
        if !(self.eta_crossover > 0.0) || !(self.eta_mutation > 0.0) {
            return fail("distribution parameters must be positive".into());
        }
        if self.reference.0 >= 0.0 || self.reference.1 >= 0.0 {
            return fail(format!(
                "reference point {:?} must be strictly below the objective box",
                self.reference
            ));
        }
        if self.grid_size < 3 || self.grid_size % 2 == 0 {
            return fail(format!("grid size {} must be odd and >= 3", self.grid_size));
        }
        if self.archive_interval == 0 {
            return fail("archive interval must be positive".into());
        }
        for (name, (lo, hi)) in [
            ("size_bounds", self.size_bounds),
            ("edge_bounds", self.edge_bounds),
        ] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return fail(format!("{name} = ({lo}, {hi}) must be finite and ordered"));
            }
        }
        Ok(())
    }

    pub fn genome_length(&self) -> usize {
        genome_length(self.blocks)
    }

    fn offspring_budget(&self) -> u64 {
        self.max_evaluations
            .saturating_sub(self.population_size as u64)
    }
}

fn log_decode(gene: f64, (lo, hi): (f64, f64)) -> f64 {
    f64::powf(10.0, lo + gene * (hi - lo))
}

/// Decodes a genome into a block model with total mean degree `kappa`, or
/// `None` when any block mean degree falls at or below the feasibility
/// floor. Deterministic: identical genomes give bit-identical models.
pub fn decode(
    genome: &Genome,
    blocks: usize,
    kappa: f64,
    size_bounds: (f64, f64),
    edge_bounds: (f64, f64),
) -> Option<BlockModel> {
    assert_eq!(
        genome.len(),
        genome_length(blocks),
        "genome length must match the block count"
    );
    let genes = genome.genes();
    let weights: Vec<f64> = genes[..blocks]
        .iter()
        .map(|&g| log_decode(g, size_bounds))
        .collect();
    let total_weight: f64 = weights.iter().sum();
    let n: Vec<f64> = weights.iter().map(|w| w / total_weight).collect();

    let mut e = vec![vec![0.0; blocks]; blocks];
    let mut idx = blocks;
    let mut full_sum = 0.0;
    for r in 0..blocks {
        for s in r..blocks {
            let w = log_decode(genes[idx], edge_bounds);
            idx += 1;
            e[r][s] = w;
            e[s][r] = w;
            full_sum += if r == s { w } else { 2.0 * w };
        }
    }
    let scale = kappa / full_sum;
    for row in &mut e {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    let model = BlockModel::new(n, e).expect("decoded matrix is symmetric by construction");
    for r in 0..blocks {
        if model.mean_degree(r) <= KAPPA_FLOOR {
            return None;
        }
    }
    Some(model)
}

/// Evaluator used by the runs: maps a model to `(R_targeted, R_random)` on
/// the configured quadrature grid.
pub fn robustness_evaluator(
    grid_size: usize,
) -> impl Fn(&BlockModel) -> Result<(f64, f64), PercError> + Send + Sync {
    move |model| percolation::robustness_pair_with_grid(model, grid_size)
}

fn evaluate<F>(config: &OptConfig, genome: Genome, evaluator: &F) -> Individual
where
    F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
{
    match decode(
        &genome,
        config.blocks,
        config.kappa,
        config.size_bounds,
        config.edge_bounds,
    ) {
        None => Individual {
            genome,
            model: None,
            objectives: (0.0, 0.0),
        },
        Some(model) => match evaluator(&model) {
            Ok(objectives) => Individual {
                genome,
                model: Some(model),
                objectives,
            },
            Err(err) => {
                log::warn!("objective evaluation failed, scoring (0, 0): {err}");
                Individual {
                    genome,
                    model: Some(model),
                    objectives: (0.0, 0.0),
                }
            }
        },
    }
}

/// Non-dominated subset of a population with hypervolume bookkeeping
/// against a reference point. Members are kept sorted by rising
/// `R_targeted`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Front {
    pub members: Vec<Individual>,
    pub reference: (f64, f64),
}

impl Front {
    pub fn from_population(population: &[Individual], reference: (f64, f64)) -> Front {
        let points: Vec<(f64, f64)> = population.iter().map(|i| i.objectives).collect();
        let mut members: Vec<Individual> = pareto_front_indices(&points)
            .into_iter()
            .map(|i| population[i].clone())
            .collect();
        members.sort_by(|a, b| {
            a.objectives
                .partial_cmp(&b.objectives)
                .expect("objectives are finite")
        });
        Front { members, reference }
    }

    pub fn objectives(&self) -> Vec<(f64, f64)> {
        self.members.iter().map(|m| m.objectives).collect()
    }

    pub fn hypervolume(&self) -> f64 {
        hypervolume_2d(&self.objectives(), self.reference)
    }

    /// Delimited export: `R_targeted,R_random,model_id`, members ordered by
    /// rising `R_targeted`, ids matching the per-member model file names.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R_targeted,R_random,model_id\n");
        for (i, m) in self.members.iter().enumerate() {
            out.push_str(&format!(
                "{},{},m{i:03}\n",
                m.objectives.0, m.objectives.1
            ));
        }
        out
    }
}

/// Front archived after a given number of evaluations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrontSnapshot {
    pub evaluations: u64,
    pub front: Front,
}

/// Everything a finished run hands back.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub archive: Vec<FrontSnapshot>,
    pub population: Vec<Individual>,
    pub evaluations: u64,
}

impl RunResult {
    pub fn final_front(&self) -> &Front {
        &self
            .archive
            .last()
            .expect("a run always archives at least the initial front")
            .front
    }
}

/// Serialized engine state; a resumed run reproduces the uninterrupted one
/// exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config: OptConfig,
    pub rng_word_pos: u128,
    pub steps_done: u64,
    pub evaluations: u64,
    pub population: Vec<Individual>,
    pub archive: Vec<FrontSnapshot>,
}

/// Steady-state SMS-EMOA engine. One offspring per step; the individual
/// with the lowest hypervolume contribution among the worst non-dominated
/// rank is removed to keep the population size constant.
pub struct SmsEmoa {
    config: OptConfig,
    rng: ChaCha8Rng,
    population: Vec<Individual>,
    steps_done: u64,
    evaluations: u64,
    archive: Vec<FrontSnapshot>,
}

impl SmsEmoa {
    /// Initializes the population from the seeded generator and archives
    /// the initial front.
    pub fn new<F>(config: OptConfig, evaluator: &F) -> Result<Self, MooError>
    where
        F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
    {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let d = config.genome_length();
        let mut population = Vec::with_capacity(config.population_size);
        for _ in 0..config.population_size {
            let genome = Genome::new((0..d).map(|_| rng.random()).collect());
            population.push(evaluate(&config, genome, evaluator));
        }
        let mut engine = SmsEmoa {
            evaluations: population.len() as u64,
            population,
            steps_done: 0,
            archive: Vec::new(),
            rng,
            config,
        };
        engine.snapshot();
        Ok(engine)
    }

    pub fn config(&self) -> &OptConfig {
        &self.config
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn archive(&self) -> &[FrontSnapshot] {
        &self.archive
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn steps_done(&self) -> u64 {
        self.steps_done
    }

    pub fn budget_exhausted(&self) -> bool {
        self.steps_done >= self.config.offspring_budget()
    }

    fn snapshot(&mut self) {
        self.archive.push(FrontSnapshot {
            evaluations: self.evaluations,
            front: Front::from_population(&self.population, self.config.reference),
        });
    }

    /// Runs one steady-state step: variation, evaluation, insertion,
    /// hypervolume-based removal. Returns false once the budget is spent.
    /// Snapshots land on archive-interval boundaries and on the final step.
    pub fn step<F>(&mut self, evaluator: &F) -> bool
    where
        F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
    {
        if self.budget_exhausted() {
            return false;
        }
        let offspring = self.make_offspring();
        let child = evaluate(&self.config, offspring, evaluator);
        self.evaluations += 1;
        self.steps_done += 1;
        self.population.push(child);
        let points: Vec<(f64, f64)> = self.population.iter().map(|i| i.objectives).collect();
        let removal = select_removal(&points, self.config.reference);
        self.population.remove(removal);
        if self.steps_done % self.config.archive_interval == 0 || self.budget_exhausted() {
            self.snapshot();
        }
        true
    }

    pub fn run<F>(&mut self, evaluator: &F)
    where
        F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
    {
        while self.step(evaluator) {}
    }

    fn make_offspring(&mut self) -> Genome {
        let a = self.rng.random_range(0..self.population.len());
        let b = self.rng.random_range(0..self.population.len());
        let p1 = self.population[a].genome.clone();
        let p2 = self.population[b].genome.clone();
        let (c1, c2) = if self.rng.random::<f64>() < self.config.p_crossover {
            sbx_crossover(&p1, &p2, self.config.eta_crossover, &mut self.rng)
        } else {
            (p1, p2)
        };
        let mut child = if self.rng.random_bool(0.5) { c1 } else { c2 };
        if self.rng.random::<f64>() < self.config.p_mutation {
            let rate = 1.0 / self.config.genome_length() as f64;
            child = polynomial_mutation(&child, self.config.eta_mutation, rate, &mut self.rng);
        }
        child
    }

    pub fn into_result(self) -> RunResult {
        RunResult {
            archive: self.archive,
            population: self.population,
            evaluations: self.evaluations,
        }
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            config: self.config.clone(),
            rng_word_pos: self.rng.get_word_pos(),
            steps_done: self.steps_done,
            evaluations: self.evaluations,
            population: self.population.clone(),
            archive: self.archive.clone(),
        }
    }

    /// Rebuilds an engine mid-run. Decoded models are restored from the
    /// genomes; objectives are taken from the checkpoint, not re-evaluated.
    pub fn from_checkpoint(checkpoint: Checkpoint) -> Result<Self, MooError> {
        let config = checkpoint.config;
        config.validate()?;
        if checkpoint.population.len() != config.population_size {
            return Err(MooError::Checkpoint(format!(
                "population size {} does not match configured {}",
                checkpoint.population.len(),
                config.population_size
            )));
        }
        if checkpoint.steps_done > config.offspring_budget()
            || checkpoint.evaluations
                != checkpoint.steps_done + config.population_size as u64
        {
            return Err(MooError::Checkpoint(
                "evaluation counters are inconsistent with the configuration".into(),
            ));
        }
        let redecode = |mut ind: Individual| {
            ind.model = decode(
                &ind.genome,
                config.blocks,
                config.kappa,
                config.size_bounds,
                config.edge_bounds,
            );
            ind
        };
        let population: Vec<Individual> = checkpoint
            .population
            .into_iter()
            .map(|ind| {
                if ind.genome.len() != config.genome_length() {
                    Err(MooError::Checkpoint("genome length mismatch".into()))
                } else {
                    Ok(redecode(ind))
                }
            })
            .collect::<Result<_, _>>()?;
        let archive = checkpoint
            .archive
            .into_iter()
            .map(|snap| FrontSnapshot {
                evaluations: snap.evaluations,
                front: Front {
                    members: snap.front.members.into_iter().map(redecode).collect(),
                    reference: snap.front.reference,
                },
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_word_pos(checkpoint.rng_word_pos);
        Ok(SmsEmoa {
            config,
            rng,
            population,
            steps_done: checkpoint.steps_done,
            evaluations: checkpoint.evaluations,
            archive,
        })
    }
}

/// Index to evict: lowest hypervolume contribution within the worst
/// non-dominated rank, ties resolved towards the lowest index.
fn select_removal(points: &[(f64, f64)], reference: (f64, f64)) -> usize {
    let ranks = non_dominated_ranks(points);
    let worst = *ranks.iter().max().expect("population is never empty");
    let members: Vec<usize> = (0..points.len()).filter(|&i| ranks[i] == worst).collect();
    if members.len() == 1 {
        return members[0];
    }
    let layer: Vec<(f64, f64)> = members.iter().map(|&i| points[i]).collect();
    let mut best = 0;
    let mut best_contribution = f64::INFINITY;
    for (i, _) in members.iter().enumerate() {
        let contribution = hv_contribution(&layer, i, reference);
        if contribution < best_contribution {
            best_contribution = contribution;
            best = i;
        }
    }
    members[best]
}

/// Full steady-state run: initialize, iterate to the evaluation budget,
/// return archive and final population. Reproducible from the seed.
pub fn sms_emoa_run<F>(config: &OptConfig, evaluator: F) -> Result<RunResult, MooError>
where
    F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
{
    let mut engine = SmsEmoa::new(config.clone(), &evaluator)?;
    engine.run(&evaluator);
    Ok(engine.into_result())
}

/// Outcome of a constrained single-objective run.
#[derive(Debug, Clone, Serialize)]
pub struct ConstrainedResult {
    /// Best individual with `|R_targeted - target| <= tolerance`, when any
    /// was found.
    pub best_feasible: Option<Individual>,
    /// Highest-fitness individual seen, kept even when infeasible so a
    /// failed search still reports what it reached.
    pub best_attempt: Individual,
    pub evaluations: u64,
}

/// Maximizes `R_random` subject to `R_targeted` staying within `tolerance`
/// of `target`, using the same variation operators with greedy steady-state
/// replacement and a linear penalty of weight
/// [`CONSTRAINED_PENALTY_WEIGHT`] outside the tolerance band.
pub fn constrained_run<F>(
    config: &OptConfig,
    target: f64,
    tolerance: f64,
    evaluator: F,
) -> Result<ConstrainedResult, MooError>
where
    F: Fn(&BlockModel) -> Result<(f64, f64), PercError>,
{
    config.validate()?;
    if !(0.0..=1.0).contains(&target) {
        return Err(MooError::Config(format!(
            "constraint target {target} outside [0, 1]"
        )));
    }
    if !(tolerance >= 0.0) {
        return Err(MooError::Config(format!(
            "constraint tolerance {tolerance} must be nonnegative"
        )));
    }
    let fitness = |objectives: (f64, f64)| -> f64 {
        let (rt, rr) = objectives;
        rr - CONSTRAINED_PENALTY_WEIGHT * ((rt - target).abs() - tolerance).max(0.0)
    };
    // A solution must be a decodable model on top of meeting the
    // constraint band; infeasible decodes score (0, 0) and would otherwise
    // masquerade as feasible whenever the target is 0.
    let feasible =
        |ind: &Individual| ind.model.is_some() && (ind.objectives.0 - target).abs() <= tolerance;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let d = config.genome_length();
    let mut population = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let genome = Genome::new((0..d).map(|_| rng.random()).collect());
        population.push(evaluate(config, genome, &evaluator));
    }
    let mut evaluations = population.len() as u64;

    let better = |a: &Individual, b: &Individual| {
        (a.objectives.1, a.objectives.0) > (b.objectives.1, b.objectives.0)
    };
    let mut best_feasible: Option<Individual> = population
        .iter()
        .filter(|i| feasible(i))
        .cloned()
        .reduce(|a, b| if better(&b, &a) { b } else { a });
    let attempt_beats = |a: &Individual, b: &Individual| {
        // Prefer decodable attempts; among equals, higher fitness wins.
        (a.model.is_some(), fitness(a.objectives)) > (b.model.is_some(), fitness(b.objectives))
    };
    let mut best_attempt = population
        .iter()
        .cloned()
        .reduce(|a, b| if attempt_beats(&b, &a) { b } else { a })
        .expect("population is never empty");

    for _ in 0..config.offspring_budget() {
        let a = rng.random_range(0..population.len());
        let b = rng.random_range(0..population.len());
        let p1 = population[a].genome.clone();
        let p2 = population[b].genome.clone();
        let (c1, c2) = if rng.random::<f64>() < config.p_crossover {
            sbx_crossover(&p1, &p2, config.eta_crossover, &mut rng)
        } else {
            (p1, p2)
        };
        let mut child = if rng.random_bool(0.5) { c1 } else { c2 };
        if rng.random::<f64>() < config.p_mutation {
            child = polynomial_mutation(&child, config.eta_mutation, 1.0 / d as f64, &mut rng);
        }
        let child = evaluate(config, child, &evaluator);
        evaluations += 1;

        if feasible(&child)
            && best_feasible
                .as_ref()
                .map_or(true, |cur| better(&child, cur))
        {
            best_feasible = Some(child.clone());
        }
        if attempt_beats(&child, &best_attempt) {
            best_attempt = child.clone();
        }
        let (worst_idx, worst_fit) = population
            .iter()
            .enumerate()
            .map(|(i, ind)| (i, fitness(ind.objectives)))
            .reduce(|a, b| if b.1 < a.1 { b } else { a })
            .expect("population is never empty");
        if fitness(child.objectives) >= worst_fit {
            population[worst_idx] = child;
        }
    }
    Ok(ConstrainedResult {
        best_feasible,
        best_attempt,
        evaluations,
    })
}
