//! Block-model ensembles with zero-truncated Poisson degree distributions.
//!
//! A [`BlockModel`] is an intensive parametrization of an ensemble of
//! infinitely large random networks: block-size fractions `n_r` and a
//! symmetric edge-density matrix `e`, where `e[r][s]` counts half-edges
//! between blocks `r` and `s` per node of the whole network and the diagonal
//! holds twice the internal edges of a block per network node. Block mean
//! degrees are always derived as `kappa_r = sum_s e[r][s] / n_r`, never
//! stored, so the degree/edge consistency constraint cannot be violated by
//! construction.
//!
//! Each block draws its degrees from the zero-truncated ("modified") Poisson
//! distribution `p_k = c^k / ((e^c - 1) k!)` for `k >= 1`, whose mean
//! `c / (1 - e^{-c})` is always above one. Generating functions are evaluated
//! in overflow-safe form; optimized models reach block mean degrees of 1e3
//! and beyond, where `e^c` is far outside double range.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// Blocks smaller than this fraction carry no ensemble weight and are
/// treated as absent by consumers.
pub const DEGENERATE_BLOCK_THRESHOLD: f64 = 1e-10;

/// Feasibility floor for block mean degrees; keeps the inversion of the
/// truncated-Poisson mean well conditioned near its singular limit at 1.
pub const KAPPA_FLOOR: f64 = 1.0 + 1e-6;

/// Relative tolerance accepted (and then symmetrized away) when reading an
/// edge matrix from external input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("block structure shape error: {0}")]
    Shape(String),
    #[error("edge matrix asymmetric at ({r},{s}): {a} vs {b}")]
    Asymmetric { r: usize, s: usize, a: f64, b: f64 },
    #[error("mean degree {0} is not above 1; the zero-truncated Poisson cannot realize it")]
    MeanDegreeNotAboveOne(f64),
    #[error("merging blocks {a} and {b} yields mean degree {kappa} <= 1")]
    InfeasibleMerge { a: usize, b: usize, kappa: f64 },
    #[error("invalid model: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("reading model file: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing model file: {0}")]
    Parse(#[from] serde_json::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A violated model invariant. Violations are data, not failures: `validate`
/// reports all of them and leaves acting on them to the caller.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    /// `sum_r n_r` differs from 1 beyond 1e-12.
    SizeSum { sum: f64 },
    /// A block-size fraction is zero or negative.
    SizeNotPositive { block: usize, size: f64 },
    /// An edge-density entry is negative.
    NegativeEdge { row: usize, col: usize, value: f64 },
    /// The edge matrix is not symmetric.
    AsymmetricEdge { row: usize, col: usize },
    /// A block mean degree does not exceed 1.
    MeanDegreeNotAboveOne { block: usize, kappa: f64 },
    /// Warning: block mean degree sits between 1 and the feasibility floor.
    MeanDegreeNearFloor { block: usize, kappa: f64 },
    /// Warning: block size is below [`DEGENERATE_BLOCK_THRESHOLD`]; consumers
    /// treat the block as absent.
    DegenerateBlock { block: usize, size: f64 },
}

impl Violation {
    /// Warnings do not make a model invalid.
    pub fn is_warning(&self) -> bool {
        matches!(
            self,
            Violation::MeanDegreeNearFloor { .. } | Violation::DegenerateBlock { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SizeSum { sum } => write!(f, "block sizes sum to {sum}, expected 1"),
            Violation::SizeNotPositive { block, size } => {
                write!(f, "n_{block} = {size} is not positive")
            }
            Violation::NegativeEdge { row, col, value } => {
                write!(f, "e_{row}{col} = {value} is negative")
            }
            Violation::AsymmetricEdge { row, col } => {
                write!(f, "e_{row}{col} != e_{col}{row}")
            }
            Violation::MeanDegreeNotAboveOne { block, kappa } => {
                write!(f, "kappa_{block} = {kappa} <= 1")
            }
            Violation::MeanDegreeNearFloor { block, kappa } => {
                write!(f, "warning: kappa_{block} = {kappa} is below the floor {KAPPA_FLOOR}")
            }
            Violation::DegenerateBlock { block, size } => {
                write!(f, "warning: n_{block} = {size} is below {DEGENERATE_BLOCK_THRESHOLD}")
            }
        }
    }
}

/// Intensive parametrization of a block-model ensemble.
///
/// Immutable after construction; all operations are pure functions, so values
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockModel {
    n: Vec<f64>,
    e: Vec<Vec<f64>>,
}

impl BlockModel {
    /// Builds a model from block-size fractions and an edge-density matrix.
    ///
    /// Shapes must agree and all entries must be finite. Asymmetry up to
    /// [`SYMMETRY_TOLERANCE`] (relative) is accepted and symmetrized away so
    /// that `e[r][s] == e[s][r]` holds exactly afterwards; anything beyond
    /// that is rejected. Invariant checks beyond shape live in [`validate`].
    ///
    /// [`validate`]: BlockModel::validate
    pub fn new(n: Vec<f64>, e: Vec<Vec<f64>>) -> Result<Self, ModelError> {
        let b = n.len();
        if b == 0 {
            return Err(ModelError::Shape("need at least one block".into()));
        }
        if e.len() != b || e.iter().any(|row| row.len() != b) {
            return Err(ModelError::Shape(format!(
                "edge matrix must be {b}x{b} to match {b} block sizes"
            )));
        }
        if n.iter().chain(e.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(ModelError::Shape("non-finite entry".into()));
        }
        let mut e = e;
        for r in 0..b {
            for s in (r + 1)..b {
                let (a, bb) = (e[r][s], e[s][r]);
                if (a - bb).abs() > SYMMETRY_TOLERANCE * a.abs().max(bb.abs()) {
                    return Err(ModelError::Asymmetric { r, s, a, b: bb });
                }
                let sym = 0.5 * (a + bb);
                e[r][s] = sym;
                e[s][r] = sym;
            }
        }
        Ok(BlockModel { n, e })
    }

    /// Single fully random block with total mean degree `kappa`.
    pub fn single_block(kappa: f64) -> Self {
        BlockModel {
            n: vec![1.0],
            e: vec![vec![kappa]],
        }
    }

    pub fn block_count(&self) -> usize {
        self.n.len()
    }

    /// Block-size fractions `n_r`.
    pub fn sizes(&self) -> &[f64] {
        &self.n
    }

    /// Symmetric edge-density matrix.
    pub fn edge_matrix(&self) -> &[Vec<f64>] {
        &self.e
    }

    pub fn edge(&self, r: usize, s: usize) -> f64 {
        self.e[r][s]
    }

    /// Half-edges incident to block `r` per network node, `n_r * kappa_r`.
    pub fn row_sum(&self, r: usize) -> f64 {
        self.e[r].iter().sum()
    }

    /// Derived block mean degree `kappa_r = sum_s e[r][s] / n_r`.
    pub fn mean_degree(&self, r: usize) -> f64 {
        self.row_sum(r) / self.n[r]
    }

    /// Total mean degree `kappa = sum_rs e[r][s]`.
    pub fn total_mean_degree(&self) -> f64 {
        self.e.iter().flatten().sum()
    }

    /// Zero-truncated Poisson degree distribution of block `r`.
    pub fn degree_dist(&self, r: usize) -> Result<DegreeDist, ModelError> {
        DegreeDist::from_mean(self.mean_degree(r))
    }

    /// Checks every model invariant and returns all violations, warnings
    /// included. An empty list means the model is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let b = self.block_count();
        let sum: f64 = self.n.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            out.push(Violation::SizeSum { sum });
        }
        for (r, &nr) in self.n.iter().enumerate() {
            if nr <= 0.0 {
                out.push(Violation::SizeNotPositive { block: r, size: nr });
            } else if nr < DEGENERATE_BLOCK_THRESHOLD {
                out.push(Violation::DegenerateBlock { block: r, size: nr });
            }
        }
        for r in 0..b {
            for s in 0..b {
                if self.e[r][s] < 0.0 {
                    out.push(Violation::NegativeEdge {
                        row: r,
                        col: s,
                        value: self.e[r][s],
                    });
                }
                if s > r && self.e[r][s] != self.e[s][r] {
                    out.push(Violation::AsymmetricEdge { row: r, col: s });
                }
            }
        }
        for r in 0..b {
            // Absent blocks are exempt from the mean-degree constraint.
            if self.n[r] < DEGENERATE_BLOCK_THRESHOLD {
                continue;
            }
            let kappa = self.mean_degree(r);
            if !(kappa > 1.0) {
                out.push(Violation::MeanDegreeNotAboveOne { block: r, kappa });
            } else if kappa < KAPPA_FLOOR {
                out.push(Violation::MeanDegreeNearFloor { block: r, kappa });
            }
        }
        out
    }

    /// True when no error-severity violation is present (warnings allowed).
    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(Violation::is_warning)
    }

    pub fn require_valid(&self) -> Result<(), ModelError> {
        let errors: Vec<Violation> = self
            .validate()
            .into_iter()
            .filter(|v| !v.is_warning())
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ModelError::Invalid(errors))
        }
    }

    /// Mixing matrix `m[r][s] = e[r][s] / (n_r kappa_r)`: the fraction of
    /// edges from block `r` leading to block `s`. Rows sum to 1.
    pub fn mixing_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.block_count())
            .map(|r| {
                let row = self.row_sum(r);
                self.e[r].iter().map(|&v| v / row).collect()
            })
            .collect()
    }

    /// Merges blocks `a` and `b` into one, preserving every edge count and
    /// therefore the total mean degree exactly.
    ///
    /// The merged block takes the lower of the two indices; all other blocks
    /// keep their relative order.
    pub fn merge_blocks(&self, a: usize, b: usize) -> Result<BlockModel, ModelError> {
        let bc = self.block_count();
        if a == b || a >= bc || b >= bc {
            return Err(ModelError::Shape(format!(
                "cannot merge blocks {a} and {b} of a {bc}-block model"
            )));
        }
        let (a, b) = (a.min(b), a.max(b));
        let keep: Vec<usize> = (0..bc).filter(|&t| t != b).collect();
        let mut n: Vec<f64> = keep.iter().map(|&t| self.n[t]).collect();
        let merged_pos = keep.iter().position(|&t| t == a).unwrap();
        n[merged_pos] = self.n[a] + self.n[b];
        let mut e = vec![vec![0.0; keep.len()]; keep.len()];
        for (i, &r) in keep.iter().enumerate() {
            for (j, &s) in keep.iter().enumerate() {
                e[i][j] = if i == merged_pos && j == merged_pos {
                    self.e[a][a] + self.e[b][b] + 2.0 * self.e[a][b]
                } else if i == merged_pos {
                    self.e[a][s] + self.e[b][s]
                } else if j == merged_pos {
                    self.e[r][a] + self.e[r][b]
                } else {
                    self.e[r][s]
                };
            }
        }
        let merged = BlockModel { n, e };
        let kappa = merged.mean_degree(merged_pos);
        if !(kappa > 1.0) {
            return Err(ModelError::InfeasibleMerge { a, b, kappa });
        }
        Ok(merged)
    }

    /// Reads a model from the structured text format (`B`, `n`, `e`).
    pub fn read_file(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.b != file.n.len() {
            return Err(ModelError::Shape(format!(
                "field B = {} does not match n of length {}",
                file.b,
                file.n.len()
            )));
        }
        Self::new(file.n, file.e)
    }

    /// Writes the model at full decimal precision.
    pub fn write_file(&self, path: &Path) -> Result<(), ModelError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            b: self.block_count(),
            n: self.n.clone(),
            e: self.e.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("model serialization");
        text.push('\n');
        text
    }
}

/// On-disk layout of a model file.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    #[serde(rename = "B")]
    b: usize,
    n: Vec<f64>,
    e: Vec<Vec<f64>>,
}

/// Zero-truncated Poisson degree distribution with parameter `c > 0`:
/// `p_0 = 0`, `p_k = c^k / ((e^c - 1) k!)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeDist {
    c: f64,
}

impl DegreeDist {
    pub fn new(c: f64) -> Result<Self, ModelError> {
        if c > 0.0 && c.is_finite() {
            Ok(DegreeDist { c })
        } else {
            Err(ModelError::Shape(format!("distribution parameter {c} must be positive")))
        }
    }

    /// Inverts the mean `c / (1 - e^{-c})` for a given `mean > 1`.
    pub fn from_mean(mean: f64) -> Result<Self, ModelError> {
        Ok(DegreeDist {
            c: poisson_param_from_mean(mean)?,
        })
    }

    pub fn param(&self) -> f64 {
        self.c
    }

    /// Mean degree `c / (1 - e^{-c})`, always above 1.
    pub fn mean(&self) -> f64 {
        truncated_poisson_mean(self.c)
    }

    pub fn g0(&self, z: f64) -> f64 {
        g0(self.c, z)
    }

    pub fn g1(&self, z: f64) -> f64 {
        g1(self.c, z)
    }

    /// Probability mass at degree `k`.
    pub fn pmf(&self, k: u64) -> f64 {
        if k == 0 {
            return 0.0;
        }
        // c^k / ((e^c - 1) k!) via logs; safe for large c and k.
        let c = self.c;
        let log_p = k as f64 * c.ln() - log_exp_m1(c) - ln_factorial(k);
        log_p.exp()
    }
}

/// Mean of the zero-truncated Poisson distribution with parameter `c`.
pub fn truncated_poisson_mean(c: f64) -> f64 {
    c / (-(-c).exp_m1())
}

/// `ln(e^c - 1)` without overflow.
fn log_exp_m1(c: f64) -> f64 {
    if c > 30.0 {
        // e^{-c} is negligible against 1.
        c + (-(-c).exp()).ln_1p()
    } else {
        c.exp_m1().ln()
    }
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Solves `c / (1 - e^{-c}) = mean_degree` for the distribution parameter.
///
/// The mean is strictly increasing in `c` and bracketed by
/// `mean - 1 < c < mean`, so plain bisection converges unconditionally.
pub fn poisson_param_from_mean(mean_degree: f64) -> Result<f64, ModelError> {
    if !(mean_degree > 1.0) || !mean_degree.is_finite() {
        return Err(ModelError::MeanDegreeNotAboveOne(mean_degree));
    }
    let mut lo = (mean_degree - 1.0).max(f64::MIN_POSITIVE);
    let mut hi = mean_degree;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if truncated_poisson_mean(mid) < mean_degree {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Degree generating function `g0(c, z) = (e^{cz} - 1) / (e^c - 1)`,
/// evaluated in the overflow-safe form
/// `e^{c(z-1)} (1 - e^{-cz}) / (1 - e^{-c})`.
pub fn g0(c: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if z == 1.0 {
        return 1.0;
    }
    (c * (z - 1.0)).exp() * (-c * z).exp_m1() / (-c).exp_m1()
}

/// Excess-degree generating function `g1(c, z) = g0'(c, z) / g0'(c, 1)`,
/// which collapses to `e^{c(z-1)}`.
pub fn g1(c: f64, z: f64) -> f64 {
    (c * (z - 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Mean of the truncated Poisson at c = 1; also the percolation threshold
    // of a single-block model on the mean-degree axis.
    const MEAN_AT_C1: f64 = 1.5819767068693265;

    fn bipartite() -> BlockModel {
        BlockModel::new(
            vec![0.5, 0.5],
            vec![vec![0.0, 1.25], vec![1.25, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn single_block_is_valid() {
        let m = BlockModel::single_block(2.5);
        assert!(m.validate().is_empty());
        assert_eq!(m.total_mean_degree(), 2.5);
        assert_eq!(m.mean_degree(0), 2.5);
    }

    #[test]
    fn bipartite_model_is_valid() {
        let m = bipartite();
        assert!(m.validate().is_empty());
        assert_abs_diff_eq!(m.total_mean_degree(), 2.5, epsilon = 1e-15);
    }

    #[test]
    fn low_degree_block_is_flagged_with_index() {
        let m = BlockModel::new(
            vec![0.9, 0.1],
            vec![vec![0.9, 0.0], vec![0.0, 0.05]],
        )
        .unwrap();
        let violations = m.validate();
        assert!(violations.contains(&Violation::MeanDegreeNotAboveOne { block: 1, kappa: 0.5 }));
        assert!(!m.is_valid());
    }

    #[test]
    fn degenerate_block_is_a_warning_not_an_error() {
        let m = BlockModel::new(
            vec![1.0 - 1e-12, 1e-12],
            vec![vec![2.5, 0.0], vec![0.0, 0.0]],
        )
        .unwrap();
        let violations = m.validate();
        assert!(violations.iter().all(Violation::is_warning));
        assert!(m.is_valid());
        assert!(m.require_valid().is_ok());
    }

    #[test]
    fn size_sum_violation_reported() {
        let m = BlockModel::new(vec![0.5, 0.4], vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        assert!(m
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::SizeSum { .. })));
    }

    #[test]
    fn param_from_mean_matches_threshold_mean() {
        // The mean at c = 1 is e/(e-1); inverting it must return 1.
        let c = poisson_param_from_mean(MEAN_AT_C1).unwrap();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn param_from_mean_of_two_and_a_half() {
        // Oracle: bisection on c/(1 - e^{-c}) performed independently.
        let c = poisson_param_from_mean(2.5).unwrap();
        assert_abs_diff_eq!(c, 2.231611884023023, epsilon = 1e-12);
        assert_abs_diff_eq!(truncated_poisson_mean(c), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn param_from_mean_near_singular_limit() {
        let c = poisson_param_from_mean(1.0 + 1e-9).unwrap();
        assert!(c > 0.0 && c < 1e-6);
        assert_abs_diff_eq!(truncated_poisson_mean(c), 1.0 + 1e-9, epsilon = 1e-12);
    }

    #[test]
    fn param_from_mean_rejects_subcritical_means() {
        assert!(poisson_param_from_mean(1.0).is_err());
        assert!(poisson_param_from_mean(0.3).is_err());
    }

    #[test]
    fn generating_functions_normalize() {
        for &c in &[1e-3, 0.5, 2.0, 50.0, 1e4] {
            assert_eq!(g0(c, 1.0), 1.0);
            assert_eq!(g1(c, 1.0), 1.0);
            assert_eq!(g0(c, 0.0), 0.0);
        }
    }

    #[test]
    fn g1_matches_direct_evaluation() {
        assert_abs_diff_eq!(g1(2.0, 0.2032), 0.2031927993856349, epsilon = 1e-15);
    }

    #[test]
    fn g0_overflow_safe_matches_naive_form_where_finite() {
        for &c in &[0.1, 1.0, 5.0, 30.0] {
            for i in 0..=10 {
                let z = i as f64 / 10.0;
                let naive = ((c * z).exp() - 1.0) / (c.exp() - 1.0);
                assert_abs_diff_eq!(g0(c, z), naive, epsilon = 1e-12);
            }
        }
        // Far beyond double range for the naive form (inf/inf), while the
        // safe form reduces to e^{-1} here.
        let naive = ((1e4_f64 * 0.9999).exp() - 1.0) / (1e4_f64.exp() - 1.0);
        assert!(naive.is_nan());
        assert_abs_diff_eq!(g0(1e4, 0.9999), (-1.0_f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn mixing_matrix_of_bipartite_model() {
        let m = bipartite().mixing_matrix();
        assert_eq!(m, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn mixing_matrix_single_block() {
        assert_eq!(
            BlockModel::single_block(2.5).mixing_matrix(),
            vec![vec![1.0]]
        );
    }

    #[test]
    fn merge_of_proportional_split_reassembles_single_block() {
        let m = BlockModel::new(
            vec![0.5, 0.5],
            vec![vec![0.625, 0.625], vec![0.625, 0.625]],
        )
        .unwrap();
        let merged = m.merge_blocks(0, 1).unwrap();
        assert_eq!(merged.sizes(), &[1.0]);
        assert_abs_diff_eq!(merged.edge(0, 0), 2.5, epsilon = 1e-15);
    }

    #[test]
    fn merge_doubles_cross_edges_into_diagonal() {
        let merged = bipartite().merge_blocks(0, 1).unwrap();
        assert_eq!(merged.block_count(), 1);
        assert_abs_diff_eq!(merged.edge(0, 0), 2.5, epsilon = 1e-15);
    }

    #[test]
    fn merge_preserves_total_mean_degree_and_commutes() {
        let m = BlockModel::new(
            vec![0.2, 0.3, 0.5],
            vec![
                vec![0.4, 0.3, 0.2],
                vec![0.3, 0.5, 0.4],
                vec![0.2, 0.4, 0.8],
            ],
        )
        .unwrap();
        let ab = m.merge_blocks(0, 2).unwrap();
        let ba = m.merge_blocks(2, 0).unwrap();
        assert_eq!(ab, ba);
        assert_abs_diff_eq!(
            ab.total_mean_degree(),
            m.total_mean_degree(),
            epsilon = 1e-14
        );
        let n_sum: f64 = ab.sizes().iter().sum();
        assert_abs_diff_eq!(n_sum, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn merge_rejects_infeasible_result() {
        let m = BlockModel::new(
            vec![0.5, 0.5],
            vec![vec![0.3, 0.0], vec![0.0, 0.3]],
        )
        .unwrap();
        // Both blocks have kappa = 0.6 (already invalid); the merge stays
        // below 1 and must be refused.
        assert!(matches!(
            m.merge_blocks(0, 1),
            Err(ModelError::InfeasibleMerge { .. })
        ));
    }

    #[test]
    fn model_file_round_trip() {
        let m = bipartite();
        let text = m.to_json();
        let back = BlockModel::from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn model_file_rejects_unknown_fields_and_shape_mismatch() {
        assert!(BlockModel::from_json(r#"{"B":1,"n":[1.0],"e":[[2.5]],"x":1}"#).is_err());
        assert!(BlockModel::from_json(r#"{"B":2,"n":[1.0],"e":[[2.5]]}"#).is_err());
    }

    #[test]
    fn reader_symmetrizes_small_asymmetry_and_rejects_large() {
        let small = r#"{"B":2,"n":[0.5,0.5],"e":[[0.0,1.25],[1.2500000000001,0.0]]}"#;
        let m = BlockModel::from_json(small).unwrap();
        assert_eq!(m.edge(0, 1), m.edge(1, 0));
        let large = r#"{"B":2,"n":[0.5,0.5],"e":[[0.0,1.25],[1.26,0.0]]}"#;
        assert!(matches!(
            BlockModel::from_json(large),
            Err(ModelError::Asymmetric { .. })
        ));
    }

    #[test]
    fn pmf_sums_to_one_with_zero_class_empty() {
        for &c in &[0.2, 1.0, 4.0] {
            let d = DegreeDist::new(c).unwrap();
            assert_eq!(d.pmf(0), 0.0);
            let total: f64 = (1..200).map(|k| d.pmf(k)).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            let mean: f64 = (1..200).map(|k| k as f64 * d.pmf(k)).sum();
            assert_abs_diff_eq!(mean, d.mean(), epsilon = 1e-10);
        }
    }
}
