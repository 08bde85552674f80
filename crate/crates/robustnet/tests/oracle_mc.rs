//! Finite-network Monte-Carlo checks of the analytic machinery.

mod common;

use common::{random_equal_kappa_model, random_valid_model};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use robustnet::blockmodel::BlockModel;
use robustnet::oracle;
use robustnet::percolation::{self, RemovalSchedule};

const N: usize = 100_000;

#[test]
fn sampled_degree_distribution_matches_the_model() {
    let model = BlockModel::new(
        vec![0.6, 0.4],
        vec![vec![0.9, 0.45], vec![0.45, 0.7]],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let network = oracle::sample_network(&model, N, &mut rng).unwrap();
    for r in 0..2 {
        let dist = model.degree_dist(r).unwrap();
        let histogram = network.degree_distribution(r);
        let max_k = histogram.len().max(200);
        let tv: f64 = (0..max_k)
            .map(|k| {
                let sampled = histogram.get(k).copied().unwrap_or(0.0);
                (sampled - dist.pmf(k as u64)).abs()
            })
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.01, "block {r} total variation {tv}");
        let realized = network.realized_mean_degree(r);
        let expected = model.mean_degree(r);
        assert!(
            (realized - expected).abs() / expected < 0.05,
            "block {r} realized mean degree {realized} vs {expected}"
        );
    }
}

#[test]
fn analytic_and_monte_carlo_giant_components_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for trial in 0..5 {
        let model = random_valid_model(&mut rng, 3, (1.6, 6.0));
        let network = oracle::sample_network(&model, N, &mut rng).unwrap();
        for schedule in [RemovalSchedule::Random, RemovalSchedule::Targeted] {
            for &q in &[0.0, 0.2, 0.4] {
                let phi = percolation::phi_for(&model, schedule, q).unwrap();
                let analytic = percolation::giant_component(&model, &phi).unwrap();
                let mc = oracle::mc_giant(&network, schedule, q, &mut rng, 3).unwrap();
                let tolerance = 3.0 * mc.std_error + 0.005;
                assert!(
                    (analytic - mc.mean).abs() < tolerance,
                    "trial {trial} {schedule} q={q}: analytic {analytic} vs mc {} +- {}",
                    mc.mean,
                    mc.std_error
                );
            }
        }
    }
}

#[test]
fn discarded_stubs_stay_within_the_square_root_envelope() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5 {
        let model = random_valid_model(&mut rng, 3, (1.6, 6.0));
        let network = oracle::sample_network(&model, N, &mut rng).unwrap();
        for &((r, s), count) in network.discarded_stubs() {
            let expected_stubs = N as f64 * model.edge(r, s);
            let bound = 5.0 * (expected_stubs + 1.0).sqrt();
            assert!(
                (count as f64) < bound,
                "bucket ({r},{s}): discarded {count} vs bound {bound}"
            );
        }
    }
}

#[test]
fn equal_degree_schedules_agree_within_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let model = random_equal_kappa_model(&mut rng, 3.0);
    let network = oracle::sample_network(&model, N, &mut rng).unwrap();
    for &q in &[0.1, 0.3] {
        let random = oracle::mc_giant(&network, RemovalSchedule::Random, q, &mut rng, 4).unwrap();
        let targeted =
            oracle::mc_giant(&network, RemovalSchedule::Targeted, q, &mut rng, 4).unwrap();
        let spread = 2.0 * (random.std_error + targeted.std_error) + 0.004;
        assert!(
            (random.mean - targeted.mean).abs() < spread,
            "q={q}: random {} vs targeted {}",
            random.mean,
            targeted.mean
        );
    }
}

#[test]
fn mc_robustness_tracks_the_analytic_curve() {
    // Single block with truncated-Poisson parameter 2.
    let model = BlockModel::single_block(2.3130352854993315);
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let result =
        oracle::mc_robustness(&model, RemovalSchedule::Random, N, 51, 3, &mut rng).unwrap();
    assert!(
        (result.r_mc - result.r_analytic).abs() < 0.01,
        "R mc {} vs analytic {}",
        result.r_mc,
        result.r_analytic
    );
    let csv = result.to_csv();
    assert!(csv.starts_with("q,S_analytic,S_mc,stderr\n"));
    assert!(csv.lines().last().unwrap().starts_with("R,"));
}
