//! Real-coded variation operators on unit-hypercube genomes: simulated
//! binary crossover and polynomial mutation, both with distribution
//! parameter `eta` controlling spread (larger eta stays closer to the
//! parents).

use super::Genome;
use rand::Rng;

/// Simulated binary crossover applied gene by gene, followed by a random
/// per-gene swap of the two children. Offspring are clamped to `[0, 1]`.
/// Identical parents produce bit-identical offspring.
pub fn sbx_crossover<R: Rng>(
    p1: &Genome,
    p2: &Genome,
    eta: f64,
    rng: &mut R,
) -> (Genome, Genome) {
    assert_eq!(p1.len(), p2.len(), "parent genomes must have equal length");
    assert!(eta > 0.0, "distribution parameter must be positive");
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p2.len());
    for (&x1, &x2) in p1.genes().iter().zip(p2.genes()) {
        let u: f64 = rng.random();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(1.0 / (eta + 1.0))
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta + 1.0))
        };
        // Difference form: coincident parents give exactly x1 back.
        let sum = x1 + x2;
        let diff = x2 - x1;
        let mut y1 = (0.5 * (sum - beta * diff)).clamp(0.0, 1.0);
        let mut y2 = (0.5 * (sum + beta * diff)).clamp(0.0, 1.0);
        if rng.random_bool(0.5) {
            std::mem::swap(&mut y1, &mut y2);
        }
        c1.push(y1);
        c2.push(y2);
    }
    (Genome::new(c1), Genome::new(c2))
}

/// Polynomial mutation on `[0, 1]` bounds: each gene is perturbed with
/// probability `per_gene_rate` by the eta-parameterized polynomial
/// distribution and clamped back into the box.
pub fn polynomial_mutation<R: Rng>(
    genome: &Genome,
    eta: f64,
    per_gene_rate: f64,
    rng: &mut R,
) -> Genome {
    assert!(eta > 0.0, "distribution parameter must be positive");
    assert!(
        (0.0..=1.0).contains(&per_gene_rate),
        "per-gene rate must lie in [0, 1]"
    );
    let genes = genome
        .genes()
        .iter()
        .map(|&x| {
            if rng.random::<f64>() >= per_gene_rate {
                return x;
            }
            let u: f64 = rng.random();
            let delta = if u < 0.5 {
                let base = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - x).powf(eta + 1.0);
                base.powf(1.0 / (eta + 1.0)) - 1.0
            } else {
                let base = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * x.powf(eta + 1.0);
                1.0 - base.powf(1.0 / (eta + 1.0))
            };
            (x + delta).clamp(0.0, 1.0)
        })
        .collect();
    Genome::new(genes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_parents_yield_identical_offspring() {
        let p = Genome::new(vec![0.1, 0.5, 0.9]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (a, b) = sbx_crossover(&p, &p, 20.0, &mut rng);
            assert_eq!(a, p);
            assert_eq!(b, p);
        }
    }

    #[test]
    fn offspring_stay_in_the_unit_box() {
        let p1 = Genome::new(vec![0.01, 0.99, 0.5, 0.0]);
        let p2 = Genome::new(vec![0.99, 0.01, 0.6, 1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b) = sbx_crossover(&p1, &p2, 2.0, &mut rng);
            for g in a.genes().iter().chain(b.genes()) {
                assert!((0.0..=1.0).contains(g));
            }
        }
    }

    #[test]
    fn offspring_mean_matches_parent_mean() {
        // Monte-Carlo estimate of the operator's symmetry: the mean over
        // many offspring gene pairs equals the parent-pair mean.
        let p1 = Genome::new(vec![0.4]);
        let p2 = Genome::new(vec![0.6]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 100_000;
        let mut acc = 0.0;
        for _ in 0..trials {
            let (a, b) = sbx_crossover(&p1, &p2, 20.0, &mut rng);
            acc += 0.5 * (a.genes()[0] + b.genes()[0]);
        }
        assert!((acc / trials as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn zero_rate_mutation_is_identity() {
        let g = Genome::new(vec![0.2, 0.8, 0.5]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(polynomial_mutation(&g, 15.0, 0.0, &mut rng), g);
    }

    #[test]
    fn mutation_output_stays_in_the_unit_box() {
        let g = Genome::new(vec![0.0, 1.0, 0.5, 0.999, 0.001]);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10_000 {
            let m = polynomial_mutation(&g, 15.0, 1.0, &mut rng);
            for v in m.genes() {
                assert!((0.0..=1.0).contains(v));
            }
        }
    }

    #[test]
    fn expected_changed_gene_count_is_one_at_rate_one_over_d() {
        let d = 9;
        let g = Genome::new(vec![0.5; d]);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let trials = 50_000;
        let mut changed = 0usize;
        for _ in 0..trials {
            let m = polynomial_mutation(&g, 15.0, 1.0 / d as f64, &mut rng);
            changed += m
                .genes()
                .iter()
                .zip(g.genes())
                .filter(|(a, b)| a != b)
                .count();
        }
        let mean = changed as f64 / trials as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean changed genes {mean}");
    }
}
