//! Shared generators for randomized test models.

use rand::Rng;
use robustnet::blockmodel::BlockModel;

/// Random valid model: up to `max_blocks` blocks, total mean degree in
/// `kappa_range`, every block mean degree comfortably above the floor.
pub fn random_valid_model<R: Rng>(
    rng: &mut R,
    max_blocks: usize,
    kappa_range: (f64, f64),
) -> BlockModel {
    loop {
        let b = rng.random_range(1..=max_blocks);
        let kappa = rng.random_range(kappa_range.0..kappa_range.1);
        let weights: Vec<f64> = (0..b).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let n: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut e = vec![vec![0.0; b]; b];
        let mut sum = 0.0;
        for r in 0..b {
            for s in r..b {
                let v = rng.random_range(0.0..1.0);
                e[r][s] = v;
                e[s][r] = v;
                sum += if r == s { v } else { 2.0 * v };
            }
        }
        for row in &mut e {
            for v in row.iter_mut() {
                *v *= kappa / sum;
            }
        }
        let model = BlockModel::new(n, e).unwrap();
        let feasible = (0..b).all(|r| model.mean_degree(r) > 1.05);
        if feasible && model.is_valid() {
            return model;
        }
    }
}

/// Random model whose blocks all share the same mean degree `kappa`:
/// a convex combination of proportional mixing and a block-diagonal part,
/// both of which preserve the row sums `n_r * kappa`.
pub fn random_equal_kappa_model<R: Rng>(rng: &mut R, kappa: f64) -> BlockModel {
    let b = rng.random_range(1..=4);
    let weights: Vec<f64> = (0..b).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let n: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let alpha: f64 = rng.random_range(0.0..1.0);
    let mut e = vec![vec![0.0; b]; b];
    for r in 0..b {
        for s in 0..b {
            let mut v = alpha * kappa * n[r] * n[s];
            if r == s {
                v += (1.0 - alpha) * kappa * n[r];
            }
            e[r][s] = v;
        }
    }
    BlockModel::new(n, e).unwrap()
}
