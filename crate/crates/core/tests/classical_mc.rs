use nalgebra::DVector;
use statest::classical::{
    bias_variance_curve, least_squares, ls_risk_formula, ortho_denoise, orthogonal_statistic, universal_threshold,
};
use statest::model_gen::{dct_orthogonal_design, gaussian_design, linear_observe, seeded_rng, sparse_signal, substream};
use statest::shrinkage::{normal_cdf, ShrinkageRule};
use rand_distr::{Distribution, StandardNormal};

#[test]
fn least_squares_risk_monte_carlo() {
    let (n, p, sigma) = (200, 20, 1.0);
    let x = gaussian_design(n, p, 11).unwrap();
    let th = sparse_signal(p, 5, 1.0, 12).unwrap();
    let formula = ls_risk_formula(&x, sigma).unwrap();
    let reps = 500;
    let total: f64 = (0..reps)
        .map(|r| {
            let y = linear_observe(&x, &th, sigma, substream(r, 2)).unwrap().y;
            (least_squares(&x, &y).unwrap() - th.values()).norm_squared()
        })
        .sum();
    let emp = total / reps as f64;
    assert!((emp - formula).abs() <= 0.05 * formula, "{emp} vs {formula}");
}

#[test]
fn least_squares_is_idempotent() {
    let x = gaussian_design(50, 8, 5).unwrap();
    let th = sparse_signal(8, 3, 2.0, 6).unwrap();
    let y = linear_observe(&x, &th, 0.7, 7).unwrap().y;
    let fit = least_squares(&x, &y).unwrap();
    let again = least_squares(&x, &x.apply(&fit)).unwrap();
    assert!((again - fit).amax() < 1e-10);
}

// Chance that none of p independent N(0, 1) exceed c in absolute value.
fn prob_all_below(c: f64, p: usize) -> f64 {
    (1.0 - 2.0 * normal_cdf(-c)).powi(p as i32)
}

#[test]
fn universal_threshold_on_a_large_orthogonal_design() {
    let (n, sigma, reps) = (10_000, 1.0, 100);
    let x = dct_orthogonal_design(n, 1).unwrap();
    let lam = universal_threshold(sigma, n, n).unwrap();
    let ceiling = sigma * (2.2 * (n as f64).ln() / n as f64).sqrt();
    let rule = ShrinkageRule::soft(lam).unwrap();
    let (mut zero, mut below) = (0, 0);
    for r in 0..reps {
        let mut rng = seeded_rng(substream(r, 2));
        let y = DVector::from_fn(n, |_, _| sigma * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng));
        if orthogonal_statistic(&x, &y).unwrap().amax() <= ceiling {
            below += 1;
        }
        if ortho_denoise(&x, &y, rule).unwrap().iter().all(|&v| v == 0.0) {
            zero += 1;
        }
    }
    // Frequencies against the exact probabilities, 3 binomial sd wide.
    for (count, c) in [(zero, (2.0 * (n as f64).ln()).sqrt()), (below, (2.2 * (n as f64).ln()).sqrt())] {
        let q = prob_all_below(c, n);
        let sd = (q * (1.0 - q) / reps as f64).sqrt();
        let freq = count as f64 / reps as f64;
        assert!((freq - q).abs() <= 3.0 * sd, "freq {freq} vs exact {q}");
    }
    assert!((prob_all_below((2.0 * (n as f64).ln()).sqrt(), n) - 0.8377).abs() < 1e-4);
    assert!((prob_all_below((2.2 * (n as f64).ln()).sqrt(), n) - 0.9347).abs() < 1e-4);

    // Sparse signal on the same design.
    let s0 = 10;
    let bound = s0 as f64 * sigma * sigma * 2.0 * (n as f64).ln() / n as f64;
    let mean_loss = (0..50)
        .map(|r| {
            let th = sparse_signal(n, s0, 10.0 * lam, substream(r, 1)).unwrap();
            let y = linear_observe(&x, &th, sigma, substream(r, 2)).unwrap().y;
            (ortho_denoise(&x, &y, rule).unwrap() - th.values()).norm_squared()
        })
        .sum::<f64>()
        / 50.0;
    assert!(mean_loss >= bound / 2.0 && mean_loss <= 2.0 * bound, "{mean_loss} vs {bound}");
}

#[test]
fn bias_variance_shape_and_rate() {
    let kink = |t: f64| (t - 0.5).abs();
    let curve = bias_variance_curve(kink, 512, 0.5, 64, 200, 3).unwrap();
    let j = curve.argmin_j;
    assert!(j > 1 && j < 64);
    assert!(curve.grid[0].1 > curve.min_risk() && curve.grid[63].1 > curve.min_risk());

    let ns = [256usize, 512, 1024, 2048, 4096, 8192];
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let c = bias_variance_curve(kink, n, 0.5, 64, 200, 100).unwrap();
            ((n as f64).ln(), c.min_risk().ln())
        })
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((-1.0..=-0.6).contains(&slope), "{slope}");
}

#[test]
fn bias_variance_noiseless_is_nonincreasing_past_truth() {
    let f = |t: f64| 1.0 + 2.0_f64.sqrt() * (std::f64::consts::PI * t).cos() * 0.5;
    let curve = bias_variance_curve(f, 256, 0.0, 12, 1, 0).unwrap();
    assert!(curve.grid[1..].windows(2).all(|w| w[1].1 <= w[0].1 + 1e-15));
    assert!(curve.grid[1].1 < 1e-20);
}
