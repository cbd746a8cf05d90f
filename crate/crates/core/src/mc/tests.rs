use super::*;
use crate::basis::{LinearStatistic, PlanarRegion};
use crate::exact::{circular_covariance, FourierWeights};

#[test]
fn constant_statistic_has_zero_variance() {
    let spec = EnsembleSpec::Cue { n: 8 };
    let c = LinearStatistic::cosine_mode(0);
    let est = estimate_covariance(&c, &c, &spec, 200, 1).unwrap();
    assert_eq!(est.covariance, 0.0);
    assert_relative(est.mean_f, 8.0, 1e-12);
}

fn assert_relative(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{a} vs {b}");
}

#[test]
fn cue_small_n_matches_weights() {
    let spec = EnsembleSpec::Cue { n: 10 };
    let f = LinearStatistic::cosine_mode(2);
    let exact = circular_covariance(&f, &f, &FourierWeights::Cue { n: 10 }).unwrap().value;
    let est = estimate_covariance(&f, &f, &spec, 3000, 7).unwrap();
    assert!(
        (est.covariance - exact).abs() < 3.0 * est.se,
        "{} vs {exact} (se {})",
        est.covariance,
        est.se
    );
}

#[test]
fn se_scales_with_sample_count() {
    let spec = EnsembleSpec::Cue { n: 8 };
    let f = LinearStatistic::cosine_mode(1);
    let e1 = estimate_covariance(&f, &f, &spec, 1200, 3).unwrap();
    let e2 = estimate_covariance(&f, &f, &spec, 2400, 3).unwrap();
    let ratio = e2.se / e1.se;
    let target = 1.0 / 2.0f64.sqrt();
    assert!(
        (ratio / target - 1.0).abs() < 0.35,
        "se ratio {ratio} vs {target}"
    );
}

#[test]
fn aggregation_is_order_independent() {
    let spec = EnsembleSpec::GaussianBeta { n: 12, beta: 2.0 };
    let f = LinearStatistic::poly(&[0.0, 1.0]);
    let g = LinearStatistic::poly(&[0.0, 0.0, 1.0]);
    let pairs = sample_pairs(&f, &g, &spec, 500, 17).unwrap();
    let (mf, mg, cov, _) = covariance_from_pairs(&pairs);
    // permute the stream assignment
    let mut shuffled = pairs.clone();
    shuffled.reverse();
    let mid = shuffled.len() / 2;
    shuffled.swap(0, mid);
    let (mf2, mg2, cov2, _) = covariance_from_pairs(&shuffled);
    assert!((mf - mf2).abs() < 1e-12 * (1.0 + mf.abs()));
    assert!((mg - mg2).abs() < 1e-12 * (1.0 + mg.abs()));
    assert!((cov - cov2).abs() < 1e-12 * (1.0 + cov.abs()));
}

#[test]
fn oracle_cue_n2_and_n3() {
    // Var(sum cos x) = sum_l min(|l|, N)|f_l|^2 = 1/2 (N=2); cos 2x at N=3:
    // m_2 = 2 -> 2 * 2 * (1/4) = 1
    for (n, m, expect) in [(2usize, 1usize, 0.5f64), (3, 1, 0.5), (2, 2, 1.0), (3, 2, 1.0)] {
        let f = LinearStatistic::cosine_mode(m);
        let expect_check = circular_covariance(&f, &f, &FourierWeights::Cue { n }).unwrap().value;
        assert_relative(expect, expect_check, 1e-12);
        let o = brute_force_covariance(&EnsembleSpec::Cue { n }, &f, &f, 1e-8).unwrap();
        assert!(
            (o.covariance - expect).abs() < 1e-8,
            "N={n} m={m}: oracle {} vs {expect}",
            o.covariance
        );
    }
}

#[test]
fn oracle_cue_alpha_matches_finite_weights() {
    let alpha = 0.5;
    for n in [2usize, 3] {
        let f = LinearStatistic::cosine_mode(1);
        let o =
            brute_force_covariance(&EnsembleSpec::CueAlpha { n, alpha }, &f, &f, 1e-6).unwrap();
        let w = FourierWeights::CueAlpha { n, alpha };
        let exact = circular_covariance(&f, &f, &w).unwrap().value;
        assert!(
            (o.covariance - exact).abs() < 1e-6,
            "N={n}: oracle {} vs weights {exact}",
            o.covariance
        );
    }
}

#[test]
fn oracle_gaussian_beta_finite_n_laws() {
    // Var sum x = 1/(2 beta) at every N; Var sum x^2 = (2 + beta(N-1))/(4 beta^2 N)
    let x = LinearStatistic::poly(&[0.0, 1.0]);
    let x2 = LinearStatistic::poly(&[0.0, 0.0, 1.0]);
    for &beta in &[1.0f64, 2.0, 4.0] {
        let spec = EnsembleSpec::GaussianBeta { n: 2, beta };
        let o = brute_force_covariance(&spec, &x, &x, 1e-7).unwrap();
        assert!(
            (o.covariance - 1.0 / (2.0 * beta)).abs() < 1e-6,
            "beta={beta}: Var sum x = {}",
            o.covariance
        );
        let o2 = brute_force_covariance(&spec, &x2, &x2, 1e-7).unwrap();
        let expect = (2.0 + beta) / (4.0 * beta * beta * 2.0);
        assert!(
            (o2.covariance - expect).abs() < 1e-6,
            "beta={beta}: Var sum x^2 = {} vs {expect}",
            o2.covariance
        );
        // odd-even covariance vanishes by symmetry
        let oc = brute_force_covariance(&spec, &x, &x2, 1e-7).unwrap();
        assert!(oc.covariance.abs() < 1e-6);
    }
}

#[test]
fn oracle_matches_gaussian_sampler_scaling() {
    // validates the tridiagonal scaling against the exact N = 2 density
    let x = LinearStatistic::poly(&[0.0, 1.0]);
    let x2 = LinearStatistic::poly(&[0.0, 0.0, 1.0]);
    for &beta in &[1.0f64, 2.0] {
        let spec = EnsembleSpec::GaussianBeta { n: 2, beta };
        let of = brute_force_covariance(&spec, &x, &x, 1e-7).unwrap();
        let est = estimate_covariance(&x, &x, &spec, 6000, 29).unwrap();
        assert!(
            (est.covariance - of.covariance).abs() < 3.0 * est.se,
            "beta={beta}: MC {} vs oracle {}",
            est.covariance,
            of.covariance
        );
        let om = brute_force_covariance(&spec, &x2, &x2, 1e-7).unwrap();
        let est2 = estimate_covariance(&x2, &x2, &spec, 6000, 31).unwrap();
        assert!(
            (est2.covariance - om.covariance).abs() < 3.0 * est2.se,
            "beta={beta}: MC {} vs oracle {}",
            est2.covariance,
            om.covariance
        );
        // means agree too (pins the support convention)
        assert!((est.mean_f - of.mean_f).abs() < 0.05, "{} vs {}", est.mean_f, of.mean_f);
    }
}

#[test]
fn oracle_matches_laguerre_sampler_scaling() {
    let x = LinearStatistic::poly(&[0.0, 1.0]);
    let spec = EnsembleSpec::LaguerreBeta { n: 2, beta: 2.0, alpha: 0.0 };
    let o = brute_force_covariance(&spec, &x, &x, 1e-7).unwrap();
    // finite-N law: sum x ~ Gamma(N + beta N^2 alpha/2 + beta N(N-1)/2, 2/(beta N))
    let k = 2.0 + 2.0; // N + beta N (N-1)/2 at alpha = 0
    let theta: f64 = 2.0 / (2.0 * 2.0);
    assert!((o.covariance - k * theta * theta).abs() < 1e-6, "oracle {}", o.covariance);
    assert!((o.mean_f - k * theta).abs() < 1e-6);
    let est = estimate_covariance(&x, &x, &spec, 6000, 37).unwrap();
    assert!(
        (est.covariance - o.covariance).abs() < 3.0 * est.se,
        "MC {} vs oracle {}",
        est.covariance,
        o.covariance
    );
}

#[test]
fn jackknife_covers_truth() {
    // >= 99/100 seeds put the true value inside 3 SE
    let spec = EnsembleSpec::Cue { n: 10 };
    let f = LinearStatistic::cosine_mode(2);
    let truth = 1.0;
    let mut covered = 0;
    for seed in 0..100u64 {
        let est = estimate_covariance(&f, &f, &spec, 400, 1000 + seed).unwrap();
        if (est.covariance - truth).abs() <= 3.0 * est.se {
            covered += 1;
        }
    }
    assert!(covered >= 99, "coverage {covered}/100");
}

#[test]
fn counting_profile_basics() {
    let spec = EnsembleSpec::Cue { n: 20 };
    let rows = counting_profile(
        &spec,
        &[Region::Interval { a: 0.0, b: std::f64::consts::PI }],
        400,
        3,
        false,
    )
    .unwrap();
    assert!((rows[0].mean - 10.0).abs() < 0.5);
    assert!(rows[0].variance > 0.0);
    // kind mismatch errors
    assert!(counting_profile(
        &spec,
        &[Region::Planar(PlanarRegion::Disk { radius: 1.0 })],
        100,
        3,
        false
    )
    .is_err());
}

#[test]
fn minimum_sample_count_enforced() {
    let spec = EnsembleSpec::Cue { n: 4 };
    let f = LinearStatistic::cosine_mode(1);
    assert!(estimate_covariance(&f, &f, &spec, 50, 1).is_err());
}
