//! Site percolation on block-model ensembles.
//!
//! For a removal schedule and removed fraction `q`, each block keeps a
//! survival fraction `phi_r`. The probabilities `u_r` that an edge into
//! block `r` fails to reach the giant component solve the self-consistency
//! system
//!
//! ```text
//! u_r = 1 - sum_s m[r][s] * phi_s * (1 - g1_s(u_s))
//! ```
//!
//! iterated from `u = 0`, which converges monotonically to the least fixed
//! point and therefore to the maximal giant component. The form above keeps
//! `u = 1` an exact fixed point in floating point: at `u_s = 1` every term
//! vanishes identically, independent of rounding in the mixing matrix.
//!
//! The giant-component fraction is `S(q) = sum_s n_s phi_s (1 - g0_s(u_s))`,
//! and the robustness scalar is twice the integral of `S` over `q in [0,1]`,
//! evaluated with composite Simpson quadrature on a uniform grid.

use crate::blockmodel::{
    g0, poisson_param_from_mean, BlockModel, ModelError, DEGENERATE_BLOCK_THRESHOLD,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default number of grid points for robustness quadrature.
pub const DEFAULT_GRID: usize = 201;

/// Max-norm change below which the fixed-point iteration stops.
pub const FIXED_POINT_TOLERANCE: f64 = 1e-12;

/// Iteration cap; reached only asymptotically close to criticality.
pub const FIXED_POINT_MAX_ITER: usize = 1_000_000;

/// Residual tolerance for the targeted-removal root solve.
pub const TARGETED_RESIDUAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PercError {
    #[error("{0}")]
    Domain(String),
    #[error("self-consistency iteration did not converge{}: residual {residual:.3e}",
            q.map(|q| format!(" at q = {q}")).unwrap_or_default())]
    Convergence { residual: f64, q: Option<f64> },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Node-removal strategy.
///
/// `Targeted` biases removal towards blocks with higher mean degree; within
/// a block removal is always uniform. When every block has the same mean
/// degree the two schedules coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemovalSchedule {
    Random,
    Targeted,
}

impl std::fmt::Display for RemovalSchedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RemovalSchedule::Random => write!(f, "random"),
            RemovalSchedule::Targeted => write!(f, "targeted"),
        }
    }
}

/// Per-block survival fractions at a removed fraction `q`.
///
/// Invariant: `0 <= phi_r <= 1` and `sum_r n_r phi_r = 1 - q` within 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiVector {
    pub q: f64,
    pub phi: Vec<f64>,
}

/// Sampled giant-component curve and the robustness scalar it integrates to.
#[derive(Debug, Clone)]
pub struct SCurve {
    pub q_grid: Vec<f64>,
    pub s_values: Vec<f64>,
    pub robustness: f64,
}

impl SCurve {
    /// Delimited export: header `q,S`, one row per grid point, full decimal
    /// precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,S\n");
        for (q, s) in self.q_grid.iter().zip(&self.s_values) {
            out.push_str(&format!("{q},{s}\n"));
        }
        out
    }
}

/// Survival fractions for `model` under `schedule` at removed fraction `q`.
pub fn phi_for(
    model: &BlockModel,
    schedule: RemovalSchedule,
    q: f64,
) -> Result<PhiVector, PercError> {
    Solver::new(model)?.phi_for(schedule, q)
}

/// Least fixed point of the self-consistency system for the given survival
/// fractions.
pub fn solve_u(model: &BlockModel, phi: &PhiVector) -> Result<Vec<f64>, PercError> {
    let solver = Solver::new(model)?;
    let u_active = solver.solve(&solver.active_phi(phi))?;
    // Absent blocks never carry giant-component mass; report u = 1 for them.
    let mut u = vec![1.0; model.block_count()];
    for (i, &r) in solver.active.iter().enumerate() {
        u[r] = u_active[i];
    }
    Ok(u)
}

/// Giant-component fraction for the given survival fractions.
pub fn giant_component(model: &BlockModel, phi: &PhiVector) -> Result<f64, PercError> {
    let solver = Solver::new(model)?;
    let phi_active = solver.active_phi(phi);
    let u = solver.solve(&phi_active)?;
    Ok(solver.giant(&phi_active, &u))
}

/// Giant-component curve on a uniform `grid_size`-point grid over `[0,1]`
/// plus the Simpson-integrated robustness.
pub fn s_curve(
    model: &BlockModel,
    schedule: RemovalSchedule,
    grid_size: usize,
) -> Result<SCurve, PercError> {
    Solver::new(model)?.s_curve(schedule, grid_size)
}

/// `(R_targeted, R_random)` on the default grid.
pub fn robustness_pair(model: &BlockModel) -> Result<(f64, f64), PercError> {
    robustness_pair_with_grid(model, DEFAULT_GRID)
}

/// `(R_targeted, R_random)` with both curves sampled on the same grid.
pub fn robustness_pair_with_grid(
    model: &BlockModel,
    grid_size: usize,
) -> Result<(f64, f64), PercError> {
    let solver = Solver::new(model)?;
    let targeted = solver.s_curve(RemovalSchedule::Targeted, grid_size)?;
    let random = solver.s_curve(RemovalSchedule::Random, grid_size)?;
    Ok((targeted.robustness, random.robustness))
}

/// Composite Simpson rule on `values` sampled uniformly over `[0,1]`.
/// Requires an odd number of points.
pub fn simpson_unit_interval(values: &[f64]) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "composite Simpson needs an odd grid");
    let h = 1.0 / (n - 1) as f64;
    let mut acc = values[0] + values[n - 1];
    for (i, &v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc += v * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Per-model solver context: active blocks, their truncated-Poisson
/// parameters, and the row-normalized mixing matrix.
struct Solver {
    block_count: usize,
    /// Indices of blocks that carry ensemble weight. A block is absent when
    /// both its size and its edge mass are negligible; its survivors are
    /// accounted for exactly but it never contributes to the components.
    active: Vec<usize>,
    n: Vec<f64>,
    kappa: Vec<f64>,
    c: Vec<f64>,
    mixing: Vec<f64>,
    absent_mass: f64,
}

impl Solver {
    fn new(model: &BlockModel) -> Result<Self, PercError> {
        model.require_valid()?;
        let b = model.block_count();
        let mut active = Vec::with_capacity(b);
        let mut absent_mass = 0.0;
        for r in 0..b {
            if model.sizes()[r] < DEGENERATE_BLOCK_THRESHOLD && model.row_sum(r) < 1e-8 {
                absent_mass += model.sizes()[r];
            } else {
                active.push(r);
            }
        }
        let n: Vec<f64> = active.iter().map(|&r| model.sizes()[r]).collect();
        let kappa: Vec<f64> = active.iter().map(|&r| model.mean_degree(r)).collect();
        let c = kappa
            .iter()
            .map(|&k| poisson_param_from_mean(k))
            .collect::<Result<Vec<f64>, _>>()?;
        let k = active.len();
        let mut mixing = vec![0.0; k * k];
        for (i, &r) in active.iter().enumerate() {
            let row = model.row_sum(r);
            for (j, &s) in active.iter().enumerate() {
                mixing[i * k + j] = model.edge(r, s) / row;
            }
        }
        Ok(Solver {
            block_count: b,
            active,
            n,
            kappa,
            c,
            mixing,
            absent_mass,
        })
    }

    fn phi_for(&self, schedule: RemovalSchedule, q: f64) -> Result<PhiVector, PercError> {
        if !(0.0..=1.0).contains(&q) {
            return Err(PercError::Domain(format!(
                "removed fraction q = {q} outside [0, 1]"
            )));
        }
        let survivors = 1.0 - q;
        let mut phi = vec![survivors; self.block_count];
        match schedule {
            RemovalSchedule::Random => {}
            RemovalSchedule::Targeted => {
                if q > 0.0 && q < 1.0 {
                    let x = self.targeted_bias(q);
                    for (i, &r) in self.active.iter().enumerate() {
                        phi[r] = (-self.kappa[i] * (1.0 - x) / x).exp();
                    }
                }
                // q = 0 keeps phi = 1 (x* = 1); q = 1 keeps phi = 0, the
                // analytic x -> 0 limit.
            }
        }
        Ok(PhiVector { q, phi })
    }

    /// Root of `(1-q') = sum_r n_r exp(-kappa_r (1-x)/x)` over the active
    /// blocks, with the absent survivor mass subtracted exactly. The left
    /// side is constant and the right side increases monotonically in `x`,
    /// so bisection brackets unconditionally.
    fn targeted_bias(&self, q: f64) -> f64 {
        // Absent blocks survive at the random rate; their mass leaves the
        // constraint exactly.
        let target = (1.0 - q) * (1.0 - self.absent_mass);
        let residual = |x: f64| {
            let kept: f64 = self
                .n
                .iter()
                .zip(&self.kappa)
                .map(|(&n, &k)| n * (-k * (1.0 - x) / x).exp())
                .sum();
            target - kept
        };
        let mut lo = 1e-15;
        let mut hi = 1.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let r = residual(mid);
            if r.abs() < TARGETED_RESIDUAL_TOLERANCE {
                return mid;
            }
            if r > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Survival fractions restricted to the active blocks.
    fn active_phi(&self, phi: &PhiVector) -> Vec<f64> {
        self.active.iter().map(|&r| phi.phi[r]).collect()
    }

    /// Fixed-point iteration from `u = 0` to the least fixed point.
    fn solve(&self, phi: &[f64]) -> Result<Vec<f64>, PercError> {
        let k = self.active.len();
        let mut u = vec![0.0; k];
        let mut next = vec![0.0; k];
        let mut t = vec![0.0; k];
        for _ in 0..FIXED_POINT_MAX_ITER {
            for s in 0..k {
                t[s] = phi[s] * (1.0 - (self.c[s] * (u[s] - 1.0)).exp());
            }
            let mut delta: f64 = 0.0;
            for r in 0..k {
                let row = &self.mixing[r * k..(r + 1) * k];
                let acc: f64 = row.iter().zip(&t).map(|(&m, &t)| m * t).sum();
                let value = 1.0 - acc;
                delta = delta.max((value - u[r]).abs());
                next[r] = value;
            }
            std::mem::swap(&mut u, &mut next);
            if delta < FIXED_POINT_TOLERANCE {
                return Ok(u);
            }
        }
        let residual = self.residual(phi, &u);
        Err(PercError::Convergence { residual, q: None })
    }

    /// Max-norm residual of the self-consistency system; carried by
    /// convergence errors and used in tests.
    fn residual(&self, phi: &[f64], u: &[f64]) -> f64 {
        let k = self.active.len();
        let mut worst: f64 = 0.0;
        for r in 0..k {
            let acc: f64 = (0..k)
                .map(|s| self.mixing[r * k + s] * phi[s] * (1.0 - (self.c[s] * (u[s] - 1.0)).exp()))
                .sum();
            worst = worst.max((1.0 - acc - u[r]).abs());
        }
        worst
    }

    fn giant(&self, phi: &[f64], u: &[f64]) -> f64 {
        self.n
            .iter()
            .zip(phi)
            .zip(self.c.iter().zip(u))
            .map(|((&n, &phi), (&c, &u))| n * phi * (1.0 - g0(c, u)))
            .sum()
    }

    fn point(&self, schedule: RemovalSchedule, q: f64) -> Result<f64, PercError> {
        let phi = self.phi_for(schedule, q)?;
        let phi_active = self.active_phi(&phi);
        let u = self.solve(&phi_active).map_err(|err| match err {
            PercError::Convergence { residual, .. } => PercError::Convergence {
                residual,
                q: Some(q),
            },
            other => other,
        })?;
        Ok(self.giant(&phi_active, &u))
    }

    fn s_curve(&self, schedule: RemovalSchedule, grid_size: usize) -> Result<SCurve, PercError> {
        if grid_size < 3 || grid_size % 2 == 0 {
            return Err(PercError::Domain(format!(
                "grid size {grid_size} must be odd and at least 3"
            )));
        }
        let h = 1.0 / (grid_size - 1) as f64;
        let q_grid: Vec<f64> = (0..grid_size).map(|i| i as f64 * h).collect();
        let s_values: Vec<f64> = q_grid
            .par_iter()
            .map(|&q| self.point(schedule, q))
            .collect::<Result<_, _>>()?;
        let robustness = 2.0 * simpson_unit_interval(&s_values);
        Ok(SCurve {
            q_grid,
            s_values,
            robustness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Independently computed by bisection on psi(u) = F(u) - u and on the
    // targeted-bias equation (see tests below for the oracles themselves).
    const U_STAR_C2: f64 = 0.20318786997998006;
    const S_C2_Q0: f64 = 0.9215272863250936;
    const R_C2_RANDOM_201: f64 = 0.4909586620356836;
    const MEAN_OF_C2: f64 = 2.3130352854993315;

    /// Oracle: least fixed point of `u = 1 - phi (1 - e^{c(u-1)})` for a
    /// single block, located by bisection instead of iteration.
    fn u_single_oracle(c: f64, phi: f64) -> f64 {
        if phi * c <= 1.0 {
            return 1.0;
        }
        let psi = |u: f64| 1.0 - phi * (1.0 - (c * (u - 1.0)).exp()) - u;
        let (mut lo, mut hi) = (0.0, 1.0 - 1e-13);
        if psi(hi) >= 0.0 {
            return 1.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if psi(mid) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn single_block_c(c: f64) -> BlockModel {
        BlockModel::single_block(crate::blockmodel::truncated_poisson_mean(c))
    }

    #[test]
    fn oracle_agrees_with_frozen_constants() {
        assert_abs_diff_eq!(u_single_oracle(2.0, 1.0), U_STAR_C2, epsilon = 1e-12);
        let s = 1.0 - g0(2.0, u_single_oracle(2.0, 1.0));
        assert_abs_diff_eq!(s, S_C2_Q0, epsilon = 1e-12);
    }

    #[test]
    fn random_phi_is_uniform() {
        let m = BlockModel::new(vec![0.5, 0.5], vec![vec![0.6, 0.7], vec![0.7, 0.6]]).unwrap();
        let phi = phi_for(&m, RemovalSchedule::Random, 0.3).unwrap();
        assert_eq!(phi.phi, vec![0.7, 0.7]);
    }

    #[test]
    fn phi_at_no_removal_is_one_for_both_schedules() {
        let m = BlockModel::new(vec![0.5, 0.5], vec![vec![0.9, 0.3], vec![0.3, 1.05]]).unwrap();
        for schedule in [RemovalSchedule::Random, RemovalSchedule::Targeted] {
            let phi = phi_for(&m, schedule, 0.0).unwrap();
            assert_eq!(phi.phi, vec![1.0, 1.0]);
        }
    }

    #[test]
    fn phi_at_full_removal_is_zero() {
        let m = single_block_c(2.0);
        for schedule in [RemovalSchedule::Random, RemovalSchedule::Targeted] {
            let phi = phi_for(&m, schedule, 1.0).unwrap();
            assert_eq!(phi.phi, vec![0.0]);
        }
    }

    #[test]
    fn single_block_targeted_equals_random() {
        let m = single_block_c(2.0);
        for i in 0..=10 {
            let q = i as f64 / 10.0;
            let phi = phi_for(&m, RemovalSchedule::Targeted, q).unwrap();
            assert_abs_diff_eq!(phi.phi[0], 1.0 - q, epsilon = 1e-11);
        }
    }

    #[test]
    fn targeted_phi_matches_independent_bisection() {
        // n = (1/2, 1/2), kappa = (1.5, 3.5), q = 0.2. Oracle values from a
        // separate bisection on 0 = 1 - q - sum_r n_r exp(-kappa_r (1-x)/x).
        let m = BlockModel::new(
            vec![0.5, 0.5],
            vec![vec![0.375, 0.375], vec![0.375, 1.375]],
        )
        .unwrap();
        assert_abs_diff_eq!(m.mean_degree(0), 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(m.mean_degree(1), 3.5, epsilon = 1e-14);
        let phi = phi_for(&m, RemovalSchedule::Targeted, 0.2).unwrap();
        assert_abs_diff_eq!(phi.phi[0], 0.8725267181664339, epsilon = 1e-10);
        assert_abs_diff_eq!(phi.phi[1], 0.7274732818335662, epsilon = 1e-10);
        let survivors: f64 = m
            .sizes()
            .iter()
            .zip(&phi.phi)
            .map(|(n, p)| n * p)
            .sum();
        assert_abs_diff_eq!(survivors, 0.8, epsilon = 1e-10);
    }

    #[test]
    fn targeted_bias_decreases_with_q() {
        let m = BlockModel::new(
            vec![0.5, 0.5],
            vec![vec![0.375, 0.375], vec![0.375, 1.375]],
        )
        .unwrap();
        let solver = Solver::new(&m).unwrap();
        let mut last = 1.0;
        for i in 1..10 {
            let q = i as f64 / 10.0;
            let x = solver.targeted_bias(q);
            assert!(x < last, "x* must decrease with q: {x} at q = {q}");
            last = x;
        }
    }

    #[test]
    fn supercritical_fixed_point_matches_oracle() {
        let m = single_block_c(2.0);
        let phi = phi_for(&m, RemovalSchedule::Random, 0.0).unwrap();
        let u = solve_u(&m, &phi).unwrap();
        assert_abs_diff_eq!(u[0], U_STAR_C2, epsilon = 1e-10);
    }

    #[test]
    fn subcritical_block_has_no_giant_component() {
        let m = single_block_c(0.5);
        let phi = phi_for(&m, RemovalSchedule::Random, 0.0).unwrap();
        let u = solve_u(&m, &phi).unwrap();
        assert_abs_diff_eq!(u[0], 1.0, epsilon = 1e-9);
        assert!(giant_component(&m, &phi).unwrap() < 1e-9);
    }

    #[test]
    fn full_removal_gives_exact_unit_fixed_point() {
        let m = BlockModel::new(vec![0.5, 0.5], vec![vec![0.9, 0.3], vec![0.3, 1.05]]).unwrap();
        let phi = phi_for(&m, RemovalSchedule::Random, 1.0).unwrap();
        let u = solve_u(&m, &phi).unwrap();
        assert_eq!(u, vec![1.0, 1.0]);
        assert_eq!(giant_component(&m, &phi).unwrap(), 0.0);
    }

    #[test]
    fn unit_vector_is_exact_fixed_point_of_the_map() {
        // F(1) = 1 must hold bitwise for any survival fractions.
        let m = BlockModel::new(
            vec![0.3, 0.45, 0.25],
            vec![
                vec![0.4, 0.3, 0.2],
                vec![0.3, 0.5, 0.4],
                vec![0.2, 0.4, 0.8],
            ],
        )
        .unwrap();
        let solver = Solver::new(&m).unwrap();
        for &q in &[0.0, 0.17, 0.5, 0.93] {
            for schedule in [RemovalSchedule::Random, RemovalSchedule::Targeted] {
                let phi = solver.phi_for(schedule, q).unwrap();
                let phi_active = solver.active_phi(&phi);
                let k = phi_active.len();
                let u = vec![1.0; k];
                for r in 0..k {
                    let acc: f64 = (0..k)
                        .map(|s| {
                            solver.mixing[r * k + s]
                                * phi_active[s]
                                * (1.0 - (solver.c[s] * (u[s] - 1.0)).exp())
                        })
                        .sum();
                    assert_eq!(1.0 - acc, 1.0);
                }
            }
        }
    }

    #[test]
    fn giant_component_at_origin_matches_oracle() {
        let m = single_block_c(2.0);
        let phi = phi_for(&m, RemovalSchedule::Random, 0.0).unwrap();
        let s = giant_component(&m, &phi).unwrap();
        assert_abs_diff_eq!(s, S_C2_Q0, epsilon = 1e-10);
    }

    #[test]
    fn s_curve_integrates_to_frozen_robustness() {
        // Oracle route: per-point bisection plus the same Simpson rule,
        // frozen into R_C2_RANDOM_201.
        let m = single_block_c(2.0);
        assert_abs_diff_eq!(m.total_mean_degree(), MEAN_OF_C2, epsilon = 1e-12);
        let curve = s_curve(&m, RemovalSchedule::Random, 201).unwrap();
        // The q = 0.5 grid point sits exactly at criticality, where the
        // change-based stop leaves u about 1e-6 short of 1; that floor
        // bounds the comparison against the sharp bisection oracle.
        assert_abs_diff_eq!(curve.robustness, R_C2_RANDOM_201, epsilon = 5e-8);

        let oracle: Vec<f64> = curve
            .q_grid
            .iter()
            .map(|&q| {
                let phi = 1.0 - q;
                phi * (1.0 - g0(2.0, u_single_oracle(2.0, phi)))
            })
            .collect();
        let r_oracle = 2.0 * simpson_unit_interval(&oracle);
        assert_abs_diff_eq!(curve.robustness, r_oracle, epsilon = 5e-8);
    }

    #[test]
    fn subcritical_curve_has_zero_robustness() {
        let m = single_block_c(0.5);
        let curve = s_curve(&m, RemovalSchedule::Random, 51).unwrap();
        assert!(curve.robustness.abs() < 1e-9);
        assert!(curve.s_values.iter().all(|&s| s.abs() < 1e-9));
    }

    #[test]
    fn dense_network_is_nearly_fully_robust() {
        let m = BlockModel::single_block(100.0);
        let curve = s_curve(&m, RemovalSchedule::Random, 201).unwrap();
        assert!(curve.robustness >= 0.999, "R = {}", curve.robustness);
        assert!(curve.robustness <= 1.0);
    }

    #[test]
    fn s_curve_rejects_even_grids() {
        let m = single_block_c(2.0);
        assert!(matches!(
            s_curve(&m, RemovalSchedule::Random, 100),
            Err(PercError::Domain(_))
        ));
    }

    #[test]
    fn robustness_pair_equal_for_single_block() {
        let m = single_block_c(2.0);
        let (rt, rr) = robustness_pair_with_grid(&m, 101).unwrap();
        assert_abs_diff_eq!(rt, rr, epsilon = 1e-9);
    }

    #[test]
    fn s_is_monotone_and_bounded_on_the_grid() {
        let m = BlockModel::new(
            vec![0.3, 0.45, 0.25],
            vec![
                vec![0.4, 0.3, 0.2],
                vec![0.3, 0.5, 0.4],
                vec![0.2, 0.4, 0.8],
            ],
        )
        .unwrap();
        for schedule in [RemovalSchedule::Random, RemovalSchedule::Targeted] {
            let curve = s_curve(&m, schedule, 101).unwrap();
            for (i, (&q, &s)) in curve.q_grid.iter().zip(&curve.s_values).enumerate() {
                assert!(s >= 0.0 && s <= 1.0 - q + 1e-12, "S({q}) = {s}");
                if i > 0 {
                    assert!(
                        s <= curve.s_values[i - 1] + 1e-9,
                        "S must not increase: {} -> {s} at q = {q}",
                        curve.s_values[i - 1]
                    );
                }
            }
        }
    }

    #[test]
    fn phi_domain_is_checked() {
        let m = single_block_c(2.0);
        assert!(matches!(
            phi_for(&m, RemovalSchedule::Random, 1.5),
            Err(PercError::Domain(_))
        ));
    }

    #[test]
    fn invalid_model_is_rejected() {
        let m = BlockModel::new(vec![1.0], vec![vec![0.5]]).unwrap();
        assert!(matches!(
            robustness_pair(&m),
            Err(PercError::Model(ModelError::Invalid(_)))
        ));
    }
}
