//! Finite-network Monte-Carlo validation of the analytic machinery.
//!
//! Networks are sampled with configuration-model stub matching: per block,
//! degrees are drawn from the zero-truncated Poisson distribution, each
//! half-edge picks a target block from the mixing-matrix row, and the stubs
//! of every block pair are matched uniformly. The O(sqrt(N)) unmatched
//! surplus per bucket is discarded uniformly at random, then self-loops and
//! parallel edges are removed; both biases vanish at validation tolerances.
//!
//! The oracle is validation-only and never runs inside optimization fitness.

use crate::blockmodel::{BlockModel, DegreeDist, ModelError};
use crate::percolation::{self, PercError, RemovalSchedule};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("node count {0} is too small for a faithful sample (need at least 1000)")]
    TooFewNodes(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Percolation(#[from] PercError),
}

/// A concrete network drawn from a block-model ensemble.
#[derive(Debug, Clone)]
pub struct SampledNetwork {
    model: BlockModel,
    node_count: usize,
    block_of: Vec<u32>,
    /// Node ids per block, grouped for fast uniform removal.
    members: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    /// Unmatched stubs discarded per (r, s) bucket, `r <= s`.
    discarded_stubs: Vec<((usize, usize), usize)>,
    removed_self_loops: usize,
    removed_multi_edges: usize,
}

impl SampledNetwork {
    pub fn model(&self) -> &BlockModel {
        &self.model
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn block_of(&self, node: u32) -> usize {
        self.block_of[node as usize] as usize
    }

    pub fn block_size(&self, r: usize) -> usize {
        self.members[r].len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn discarded_stubs(&self) -> &[((usize, usize), usize)] {
        &self.discarded_stubs
    }

    pub fn removed_self_loops(&self) -> usize {
        self.removed_self_loops
    }

    pub fn removed_multi_edges(&self) -> usize {
        self.removed_multi_edges
    }

    /// Realized mean degree of block `r` after cleanup.
    pub fn realized_mean_degree(&self, r: usize) -> f64 {
        let mut stubs = 0usize;
        for &(a, b) in &self.edges {
            if self.block_of(a) == r {
                stubs += 1;
            }
            if self.block_of(b) == r {
                stubs += 1;
            }
        }
        stubs as f64 / self.block_size(r) as f64
    }

    /// Degree histogram of block `r` after cleanup, normalized to one.
    pub fn degree_distribution(&self, r: usize) -> Vec<f64> {
        let mut degree = vec![0usize; self.node_count];
        for &(a, b) in &self.edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut histogram = Vec::new();
        for &node in &self.members[r] {
            let k = degree[node as usize];
            if histogram.len() <= k {
                histogram.resize(k + 1, 0.0);
            }
            histogram[k] += 1.0;
        }
        let total = self.block_size(r) as f64;
        for v in &mut histogram {
            *v /= total;
        }
        histogram
    }
}

/// Mean and standard error of a Monte-Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Draws one degree from the zero-truncated Poisson distribution.
///
/// Small parameters walk the inverse CDF directly; above `c = 20` the k = 0
/// mass is below 3e-9, so a plain Poisson draw with a reject loop is the
/// same distribution without the underflow-prone recurrence.
fn sample_truncated_poisson<R: Rng>(c: f64, rng: &mut R) -> u64 {
    if c > 20.0 {
        let poisson = rand_distr::Poisson::new(c).expect("positive parameter");
        loop {
            let k = rng.sample(poisson) as u64;
            if k >= 1 {
                return k;
            }
        }
    }
    let u: f64 = rng.random();
    let mut k = 1u64;
    let mut p = c / c.exp_m1();
    let mut cumulative = p;
    while u > cumulative && k < 10_000 {
        k += 1;
        p *= c / k as f64;
        cumulative += p;
    }
    k
}

/// Samples a concrete `n`-node network from the ensemble.
pub fn sample_network<R: Rng>(
    model: &BlockModel,
    n: usize,
    rng: &mut R,
) -> Result<SampledNetwork, OracleError> {
    model.require_valid()?;
    if n < 1000 {
        return Err(OracleError::TooFewNodes(n));
    }
    let b = model.block_count();

    // Apportion nodes to blocks by largest remainder so every block size is
    // within one node of n * n_r.
    let targets: Vec<f64> = model.sizes().iter().map(|&f| f * n as f64).collect();
    let mut counts: Vec<usize> = targets.iter().map(|&t| t.floor() as usize).collect();
    let mut leftover = n - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&a, &bb| {
        let ra = targets[a] - targets[a].floor();
        let rb = targets[bb] - targets[bb].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&bb))
    });
    for &r in order.iter().cycle() {
        if leftover == 0 {
            break;
        }
        counts[r] += 1;
        leftover -= 1;
    }

    let mut block_of = Vec::with_capacity(n);
    let mut members: Vec<Vec<u32>> = Vec::with_capacity(b);
    for (r, &count) in counts.iter().enumerate() {
        let start = block_of.len() as u32;
        block_of.extend(std::iter::repeat(r as u32).take(count));
        members.push((start..start + count as u32).collect());
    }

    // Draw degrees and route every stub to a target block.
    let mixing = model.mixing_matrix();
    let dists: Vec<Option<DegreeDist>> = (0..b)
        .map(|r| {
            if counts[r] == 0 || model.row_sum(r) == 0.0 {
                Ok(None)
            } else {
                model.degree_dist(r).map(Some)
            }
        })
        .collect::<Result<_, ModelError>>()?;
    let mut buckets: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); b]; b];
    for r in 0..b {
        let Some(dist) = dists[r] else { continue };
        let row = &mixing[r];
        for &node in &members[r] {
            let degree = sample_truncated_poisson(dist.param(), rng);
            for _ in 0..degree {
                let mut u: f64 = rng.random();
                let mut s = b - 1;
                for (j, &m) in row.iter().enumerate() {
                    if u < m {
                        s = j;
                        break;
                    }
                    u -= m;
                }
                buckets[r][s].push(node);
            }
        }
    }

    // Match stubs uniformly within each block pair; surplus stubs are
    // discarded uniformly because each side is shuffled first.
    let mut edges = Vec::new();
    let mut discarded = Vec::new();
    for r in 0..b {
        for s in r..b {
            if r == s {
                let list = &mut buckets[r][r];
                list.shuffle(rng);
                let pairs = list.len() / 2;
                for i in 0..pairs {
                    edges.push((list[2 * i], list[2 * i + 1]));
                }
                let surplus = list.len() % 2;
                if surplus > 0 {
                    discarded.push(((r, s), surplus));
                }
            } else {
                let mut from_r = std::mem::take(&mut buckets[r][s]);
                let mut from_s = std::mem::take(&mut buckets[s][r]);
                from_r.shuffle(rng);
                from_s.shuffle(rng);
                let pairs = from_r.len().min(from_s.len());
                for i in 0..pairs {
                    edges.push((from_r[i], from_s[i]));
                }
                let surplus = from_r.len() + from_s.len() - 2 * pairs;
                if surplus > 0 {
                    discarded.push(((r, s), surplus));
                }
            }
        }
    }

    // Cleanup: no self-loops, no parallel edges.
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(edges.len());
    let mut removed_self_loops = 0;
    let mut removed_multi_edges = 0;
    let mut cleaned = Vec::with_capacity(edges.len());
    for (a, bb) in edges {
        if a == bb {
            removed_self_loops += 1;
            continue;
        }
        let key = (a.min(bb), a.max(bb));
        if seen.insert(key) {
            cleaned.push(key);
        } else {
            removed_multi_edges += 1;
        }
    }

    Ok(SampledNetwork {
        model: model.clone(),
        node_count: n,
        block_of,
        members,
        edges: cleaned,
        discarded_stubs: discarded,
        removed_self_loops,
        removed_multi_edges,
    })
}

struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Empirical giant component after removing a fraction `q` of nodes under
/// `schedule`: survival fractions come from the analytic schedule, removal
/// within each block is uniform, and the removed node count per trial is
/// apportioned so the total matches `round(q N)` exactly.
pub fn mc_giant<R: Rng>(
    network: &SampledNetwork,
    schedule: RemovalSchedule,
    q: f64,
    rng: &mut R,
    trials: usize,
) -> Result<McEstimate, OracleError> {
    assert!(trials >= 1, "need at least one trial");
    let phi = percolation::phi_for(network.model(), schedule, q)?;
    let n = network.node_count();
    let b = network.model().block_count();

    // Per-block removal targets by largest remainder against the exact
    // total.
    let total_remove = (q * n as f64).round() as usize;
    let raw: Vec<f64> = (0..b)
        .map(|r| (1.0 - phi.phi[r]) * network.block_size(r) as f64)
        .collect();
    let mut remove: Vec<usize> = raw
        .iter()
        .enumerate()
        .map(|(r, &t)| (t.floor() as usize).min(network.block_size(r)))
        .collect();
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&a, &bb| {
        let ra = raw[a] - raw[a].floor();
        let rb = raw[bb] - raw[bb].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&bb))
    });
    let mut assigned: usize = remove.iter().sum();
    'outer: while assigned < total_remove {
        let mut progressed = false;
        for &r in &order {
            if assigned == total_remove {
                break 'outer;
            }
            if remove[r] < network.block_size(r) {
                remove[r] += 1;
                assigned += 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    while assigned > total_remove {
        for r in 0..b {
            if assigned == total_remove {
                break;
            }
            if remove[r] > 0 {
                remove[r] -= 1;
                assigned -= 1;
            }
        }
    }

    let mut samples = Vec::with_capacity(trials);
    let mut surviving = vec![true; n];
    for _ in 0..trials {
        surviving.fill(true);
        for r in 0..b {
            let block = &network.members[r];
            for i in rand::seq::index::sample(rng, block.len(), remove[r]).iter() {
                surviving[block[i] as usize] = false;
            }
        }
        let mut dsu = DisjointSet::new(n);
        for &(a, bb) in network.edges() {
            if surviving[a as usize] && surviving[bb as usize] {
                dsu.union(a, bb);
            }
        }
        let mut largest = 0u32;
        for v in 0..n as u32 {
            if surviving[v as usize] {
                let root = dsu.find(v);
                largest = largest.max(dsu.size[root as usize]);
            }
        }
        samples.push(largest as f64 / n as f64);
    }
    Ok(estimate(&samples))
}

fn estimate(samples: &[f64]) -> McEstimate {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let std_error = if samples.len() > 1 {
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    McEstimate { mean, std_error }
}

/// One row of a validation report: analytic vs Monte-Carlo giant component
/// at a grid point.
#[derive(Debug, Clone)]
pub struct ValidationPoint {
    pub q: f64,
    pub s_analytic: f64,
    pub s_mc: f64,
    pub std_error: f64,
}

/// Monte-Carlo robustness estimate with the per-point comparison data.
#[derive(Debug, Clone)]
pub struct McRobustness {
    pub points: Vec<ValidationPoint>,
    pub r_analytic: f64,
    pub r_mc: f64,
    pub r_std_error: f64,
}

impl McRobustness {
    /// Delimited export `q,S_analytic,S_mc,stderr` plus a summary row for R.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,S_analytic,S_mc,stderr\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.q, p.s_analytic, p.s_mc, p.std_error
            ));
        }
        out.push_str(&format!(
            "R,{},{},{}\n",
            self.r_analytic, self.r_mc, self.r_std_error
        ));
        out
    }
}

/// Samples one network and estimates the robustness integral by Simpson
/// quadrature of the per-point Monte-Carlo means, with the quadrature error
/// of the standard errors propagated.
pub fn mc_robustness<R: Rng>(
    model: &BlockModel,
    schedule: RemovalSchedule,
    n: usize,
    grid_size: usize,
    trials: usize,
    rng: &mut R,
) -> Result<McRobustness, OracleError> {
    let analytic = percolation::s_curve(model, schedule, grid_size)?;
    let network = sample_network(model, n, rng)?;
    let mut points = Vec::with_capacity(grid_size);
    for (&q, &s_analytic) in analytic.q_grid.iter().zip(&analytic.s_values) {
        let mc = mc_giant(&network, schedule, q, rng, trials)?;
        points.push(ValidationPoint {
            q,
            s_analytic,
            s_mc: mc.mean,
            std_error: mc.std_error,
        });
    }
    let means: Vec<f64> = points.iter().map(|p| p.s_mc).collect();
    let r_mc = 2.0 * percolation::simpson_unit_interval(&means);
    let h = 1.0 / (grid_size - 1) as f64;
    let variance: f64 = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let w = if i == 0 || i == grid_size - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (2.0 * w * h / 3.0 * p.std_error).powi(2)
        })
        .sum();
    Ok(McRobustness {
        points,
        r_analytic: analytic.robustness,
        r_mc,
        r_std_error: variance.sqrt(),
    })
}
