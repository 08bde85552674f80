//! Ensemble entropy of block models and entropy-guided block reduction.
//!
//! Only the partition-dependent part of the microcanonical ensemble entropy
//! is computed:
//!
//! ```text
//! s = -1/2 sum_rs e[r][s] ln( e[r][s] / (n_r kappa_r * n_s kappa_s) )
//! ```
//!
//! in nats per node, with the convention `0 ln 0 = 0`. Terms that do not
//! depend on the partition (total edge count, degree-sequence factorials,
//! system size) cancel in every degree-preserving merge comparison, which is
//! the only use this module has for the entropy.
//!
//! Writing `w_rs = e_rs / kappa` the sum equals `(kappa/2)(ln kappa - I(w))`
//! with `I` the mutual information of the edge-endpoint distribution, so
//! merging blocks (which coarsens both margins) can never decrease `s`. Two
//! blocks whose merge leaves `s` unchanged are an arbitrary subdivision of a
//! single group and carry no structural information.

use crate::blockmodel::{BlockModel, ModelError};
use serde::Serialize;

/// Default merge threshold in nats per node. Well below the
/// `(kappa/2) ln 2 ~ 0.87` gap of a maximally structured pair at
/// `kappa = 2.5`, so genuine structure is never merged away.
pub const DEFAULT_EPSILON: f64 = 0.025;

/// Blocks with both `n_r` and `n_r kappa_r` below this are dropped before
/// merging; they would otherwise distort merge-gain denominators.
pub const DROP_THRESHOLD: f64 = 1e-8;

/// One executed merge: the pair of block indices (valid in the model state
/// at the time of the merge) and the entropy gain it produced.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MergeRecord {
    pub first: usize,
    pub second: usize,
    pub gain: f64,
}

/// A block removed by the drop phase, with the size it had.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DroppedBlock {
    pub index: usize,
    pub size: f64,
}

/// What [`reduce`] did to a model.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub original_blocks: usize,
    pub reduced_blocks: usize,
    pub epsilon: f64,
    pub merges: Vec<MergeRecord>,
    pub dropped: Vec<DroppedBlock>,
    pub entropy_before: f64,
    pub entropy_after: f64,
}

impl ReductionReport {
    /// Structured text export, suitable for diffing across runs.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

/// Partition-dependent ensemble entropy density in nats per node.
pub fn entropy_density(model: &BlockModel) -> f64 {
    let b = model.block_count();
    let row: Vec<f64> = (0..b).map(|r| model.row_sum(r)).collect();
    let mut acc = 0.0;
    for r in 0..b {
        for s in 0..b {
            let e = model.edge(r, s);
            if e > 0.0 {
                acc += e * (e / (row[r] * row[s])).ln();
            }
        }
    }
    -0.5 * acc
}

/// Entropy gain of merging blocks `a` and `b`; nonnegative up to rounding
/// for every feasible merge.
pub fn merge_gain(model: &BlockModel, a: usize, b: usize) -> Result<f64, ModelError> {
    let merged = model.merge_blocks(a, b)?;
    Ok(entropy_density(&merged) - entropy_density(model))
}

/// Removes blocks whose size and edge mass are both below
/// [`DROP_THRESHOLD`], renormalizing the remaining sizes to sum to one and
/// rescaling the edge matrix by the same factor so that every surviving
/// block keeps its mean degree.
pub fn drop_negligible(model: &BlockModel) -> (BlockModel, Vec<DroppedBlock>) {
    let b = model.block_count();
    let mut dropped = Vec::new();
    let keep: Vec<usize> = (0..b)
        .filter(|&r| {
            let negligible = model.sizes()[r] < DROP_THRESHOLD && model.row_sum(r) < DROP_THRESHOLD;
            if negligible && b - dropped.len() > 1 {
                dropped.push(DroppedBlock {
                    index: r,
                    size: model.sizes()[r],
                });
                false
            } else {
                true
            }
        })
        .collect();
    if dropped.is_empty() {
        return (model.clone(), dropped);
    }
    let kept_mass: f64 = keep.iter().map(|&r| model.sizes()[r]).sum();
    let n: Vec<f64> = keep.iter().map(|&r| model.sizes()[r] / kept_mass).collect();
    let e: Vec<Vec<f64>> = keep
        .iter()
        .map(|&r| keep.iter().map(|&s| model.edge(r, s) / kept_mass).collect())
        .collect();
    (
        BlockModel::new(n, e).expect("dropping blocks preserves shape"),
        dropped,
    )
}

/// Reduces a model to its minimal block structure: drops negligible blocks,
/// then greedily merges the pair with the smallest entropy gain while that
/// gain stays below `epsilon`. Ties break towards the lowest index pair, so
/// the result is deterministic. A model admitting no action is returned
/// unchanged.
pub fn reduce(model: &BlockModel, epsilon: f64) -> Result<(BlockModel, ReductionReport), ModelError> {
    if !(epsilon > 0.0) {
        return Err(ModelError::Shape(format!(
            "merge threshold {epsilon} must be positive"
        )));
    }
    model.require_valid()?;
    let entropy_before = entropy_density(model);
    let (mut current, dropped) = drop_negligible(model);
    let mut merges = Vec::new();
    while current.block_count() > 1 {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..current.block_count() {
            for b in (a + 1)..current.block_count() {
                if let Ok(gain) = merge_gain(&current, a, b) {
                    if best.map_or(true, |(_, _, g)| gain < g) {
                        best = Some((a, b, gain));
                    }
                }
            }
        }
        match best {
            Some((a, b, gain)) if gain < epsilon => {
                current = current.merge_blocks(a, b)?;
                merges.push(MergeRecord {
                    first: a,
                    second: b,
                    gain,
                });
            }
            _ => break,
        }
    }
    let report = ReductionReport {
        original_blocks: model.block_count(),
        reduced_blocks: current.block_count(),
        epsilon,
        merges,
        dropped,
        entropy_before,
        entropy_after: entropy_density(&current),
    };
    Ok((current, report))
}
