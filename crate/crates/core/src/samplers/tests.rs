use super::*;
use crate::linalg;
use approx::assert_relative_eq;
use std::f64::consts::PI;

fn angles_of(s: &SpectrumSample) -> &[f64] {
    match &s.values {
        SpectrumValues::Angles(v) => v,
        _ => panic!("expected angles"),
    }
}

fn reals_of(s: &SpectrumSample) -> &[f64] {
    match &s.values {
        SpectrumValues::Reals(v) => v,
        _ => panic!("expected reals"),
    }
}

fn planar_of(s: &SpectrumSample) -> &[(f64, f64)] {
    match &s.values {
        SpectrumValues::Planar(v) => v,
        _ => panic!("expected planar"),
    }
}

#[test]
fn determinism_bitwise() {
    let specs = vec![
        EnsembleSpec::Cue { n: 12 },
        EnsembleSpec::GaussianBeta { n: 20, beta: 2.5 },
        EnsembleSpec::GinUe { n: 10 },
        EnsembleSpec::CircularBeta { n: 15, beta: 3.0 },
        EnsembleSpec::LaguerreBeta { n: 8, beta: 1.0, alpha: 0.5 },
    ];
    for spec in specs {
        let a = sample(&spec, 99, 3).unwrap();
        let b = sample(&spec, 99, 3).unwrap();
        match (&a.values, &b.values) {
            (SpectrumValues::Angles(x), SpectrumValues::Angles(y))
            | (SpectrumValues::Reals(x), SpectrumValues::Reals(y)) => assert_eq!(x, y),
            (SpectrumValues::Planar(x), SpectrumValues::Planar(y)) => assert_eq!(x, y),
            _ => panic!("kind mismatch"),
        }
        // different stream differs
        let c = sample(&spec, 99, 4).unwrap();
        let same = match (&a.values, &c.values) {
            (SpectrumValues::Angles(x), SpectrumValues::Angles(y))
            | (SpectrumValues::Reals(x), SpectrumValues::Reals(y)) => x == y,
            (SpectrumValues::Planar(x), SpectrumValues::Planar(y)) => x == y,
            _ => false,
        };
        assert!(!same);
    }
}

#[test]
fn cue_eigenvalues_on_unit_circle() {
    let mut rng = crate::rng::substream(5, 0);
    let u = linalg::haar_unitary(30, &mut rng).unwrap();
    for z in linalg::eigvals_complex(&u).unwrap() {
        assert!((z.norm() - 1.0).abs() < 1e-10);
    }
    let s = sample(&EnsembleSpec::Cue { n: 30 }, 5, 0).unwrap();
    assert_eq!(angles_of(&s).len(), 30);
}

#[test]
fn cue_mean_of_cos2x_vanishes() {
    // 2000 samples at N = 40: mean of sum cos 2x within 3 SE of zero
    let spec = EnsembleSpec::Cue { n: 40 };
    let stat = crate::basis::LinearStatistic::cosine_mode(2);
    let est = crate::mc::estimate_covariance(&stat, &stat, &spec, 2000, 11).unwrap();
    let se_mean = (est.covariance / est.n_samples as f64).sqrt();
    assert!(est.mean_f.abs() < 3.0 * se_mean, "mean {} vs se {}", est.mean_f, se_mean);
    // and the variance is the finite-N exact value 1 (weights min(|l|, N))
    assert!((est.covariance - 1.0).abs() < 3.0 * est.se);
}

/// Kolmogorov distance of pooled sorted points against a CDF.
fn ks_distance(points: &mut Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = points.len() as f64;
    let mut worst = 0.0f64;
    for (i, &x) in points.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        worst = worst.max((f - lo).abs().max((f - hi).abs()));
    }
    worst
}

#[test]
fn gaussian_beta_semicircle_law() {
    let spec = EnsembleSpec::GaussianBeta { n: 400, beta: 2.0 };
    let mut pooled = Vec::new();
    for stream in 0..40 {
        pooled.extend_from_slice(reals_of(&sample(&spec, 7, stream).unwrap()));
    }
    let ks = ks_distance(&mut pooled, |x| {
        let x = x.clamp(-1.0, 1.0);
        0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI
    });
    assert!(ks < 0.05, "KS distance {ks}");
}

#[test]
fn cue_uniform_angle_law() {
    let spec = EnsembleSpec::Cue { n: 64 };
    let mut pooled = Vec::new();
    for stream in 0..40 {
        pooled.extend_from_slice(angles_of(&sample(&spec, 13, stream).unwrap()));
    }
    let ks = ks_distance(&mut pooled, |x| x / TAU);
    assert!(ks < 0.05, "KS distance {ks}");
}

#[test]
fn laguerre_marchenko_pastur_law() {
    let alpha = 1.0;
    let spec = EnsembleSpec::LaguerreBeta { n: 300, beta: 2.0, alpha };
    let mut pooled = Vec::new();
    for stream in 0..30 {
        pooled.extend_from_slice(reals_of(&sample(&spec, 17, stream).unwrap()));
    }
    let s = (1.0f64 + alpha).sqrt();
    let (c, d) = ((1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s));
    // numeric CDF of sqrt((x-c)(d-x))/(2 pi x)
    let cdf = |x: f64| -> f64 {
        if x <= c {
            return 0.0;
        }
        let hi = x.min(d);
        crate::quad::integrate(
            |t| ((t - c) * (d - t)).max(0.0).sqrt() / (2.0 * PI * t),
            c,
            hi,
            1e-9,
            2_000_000,
        )
        .unwrap()
    };
    let ks = ks_distance(&mut pooled, cdf);
    assert!(ks < 0.05, "KS distance {ks}");
}

#[test]
fn ginue_uniform_disk_law() {
    // |z|^2 is asymptotically uniform on [0,1]
    let spec = EnsembleSpec::GinUe { n: 400 };
    let mut pooled = Vec::new();
    for stream in 0..12 {
        let s = sample(&spec, 23, stream).unwrap();
        pooled.extend(planar_of(&s).iter().map(|&(x, y)| x * x + y * y));
    }
    let ks = ks_distance(&mut pooled, |t| t.clamp(0.0, 1.0));
    assert!(ks < 0.05, "KS distance {ks}");
}

#[test]
fn elliptic_support_semi_axes() {
    let tau = 0.5;
    let spec = EnsembleSpec::EllipticGinibre { n: 400, tau };
    let mut max_x = 0.0f64;
    let mut max_y = 0.0f64;
    let mut inside = 0usize;
    let mut total = 0usize;
    for stream in 0..10 {
        for &(x, y) in planar_of(&sample(&spec, 31, stream).unwrap()) {
            max_x = max_x.max(x.abs());
            max_y = max_y.max(y.abs());
            let u = x / (1.0 + tau);
            let v = y / (1.0 - tau);
            total += 1;
            if u * u + v * v <= 1.1 {
                inside += 1;
            }
        }
    }
    assert!(max_x < (1.0 + tau) * 1.15 && max_x > (1.0 + tau) * 0.9, "max_x = {max_x}");
    assert!(max_y < (1.0 - tau) * 1.15 && max_y > (1.0 - tau) * 0.9, "max_y = {max_y}");
    assert!(inside as f64 / total as f64 > 0.99);
}

#[test]
fn cse_returns_distinct_angles() {
    let s = sample(&EnsembleSpec::Cse { n: 12 }, 3, 0).unwrap();
    let a = angles_of(&s);
    assert_eq!(a.len(), 12);
    for w in a.windows(2) {
        assert!(w[1] > w[0]);
    }
}

#[test]
fn oplus_angles_in_open_interval() {
    let s = sample(&EnsembleSpec::OPlus { n: 24 }, 9, 1).unwrap();
    let a = angles_of(&s);
    assert_eq!(a.len(), 12);
    for &x in a {
        assert!(x > 0.0 && x < PI);
    }
    assert!(sample(&EnsembleSpec::OPlus { n: 13 }, 1, 0).is_err());
}

#[test]
fn circular_beta_two_is_cue_law() {
    // Var(sum cos 2x) for beta = 2 equals the CUE finite-N value
    let spec = EnsembleSpec::CircularBeta { n: 50, beta: 2.0 };
    let stat = crate::basis::LinearStatistic::cosine_mode(2);
    let est = crate::mc::estimate_covariance(&stat, &stat, &spec, 3000, 41).unwrap();
    assert!((est.covariance - 1.0).abs() < 3.0 * est.se, "{} +- {}", est.covariance, est.se);
}

#[test]
fn ginoe_conjugation_and_real_count() {
    let n = 400;
    let spec = EnsembleSpec::GinOe { n };
    let mut real_counts = Vec::new();
    for stream in 0..10 {
        let s = sample(&spec, 47, stream).unwrap();
        let pts = planar_of(&s);
        let mut reals = 0usize;
        for &(x, y) in pts {
            if y == 0.0 {
                reals += 1;
            } else {
                // conjugate partner must exist
                let found = pts
                    .iter()
                    .any(|&(x2, y2)| (x2 - x).abs() < 1e-8 && (y2 + y).abs() < 1e-8);
                assert!(found, "unpaired complex eigenvalue ({x}, {y})");
            }
        }
        real_counts.push(reals as f64);
    }
    let avg = real_counts.iter().sum::<f64>() / real_counts.len() as f64;
    let ratio = avg / (n as f64).sqrt();
    assert!((0.3..3.0).contains(&ratio), "real-eigenvalue ratio {ratio}");
}

#[test]
fn product_ginibre_values() {
    let spec = EnsembleSpec::GinibreProduct { n: 60, etas: vec![0, 0] };
    let s = sample(&spec, 53, 0).unwrap();
    let v = reals_of(&s);
    assert_eq!(v.len(), 60);
    assert!(v.iter().all(|&x| x >= 0.0));
    // support edge 27/4 for the squared product
    assert!(v.iter().all(|&x| x < 27.0 / 4.0 * 1.3));
    // mean of sum x is N (trace identity), check loosely over streams
    let mut acc = 0.0;
    let reps = 40;
    for stream in 0..reps {
        acc += reals_of(&sample(&spec, 53, stream).unwrap()).iter().sum::<f64>();
    }
    let mean = acc / reps as f64;
    assert!((mean - 60.0).abs() < 3.0, "mean sum = {mean}");
}

#[test]
fn cgp_zero_count_and_support() {
    let spec = EnsembleSpec::Cgp { degree: 200 };
    let s = sample(&spec, 61, 0).unwrap();
    let pts = planar_of(&s);
    assert_eq!(pts.len(), 200);
    // bulk zeros live within |z| ~ sqrt(degree); allow headroom for outliers
    let r_max = pts.iter().map(|&(x, y)| (x * x + y * y).sqrt()).fold(0.0f64, f64::max);
    assert!(r_max < 3.0 * (200.0f64).sqrt(), "furthest zero at {r_max}");
    // density near the origin is 1/pi: count in a disk of radius 5
    let mut c = 0usize;
    let reps = 30;
    for stream in 0..reps {
        let s = sample(&spec, 61, stream).unwrap();
        c += planar_of(&s).iter().filter(|&&(x, y)| x * x + y * y < 25.0).count();
    }
    let mean = c as f64 / reps as f64;
    assert!((mean - 25.0).abs() < 2.5, "mean disk count {mean} (expect ~25)");
}

#[test]
fn thinning_keeps_expected_fraction() {
    let spec = EnsembleSpec::Cue { n: 100 };
    let zeta = 0.6;
    let mut kept = 0usize;
    let reps = 200;
    for stream in 0..reps {
        let s = sample(&spec, 71, stream).unwrap();
        let t = thin(&s, zeta, 5).unwrap();
        kept += t.values.len();
        // determinism
        let t2 = thin(&s, zeta, 5).unwrap();
        assert_eq!(t.values.len(), t2.values.len());
    }
    let mean = kept as f64 / reps as f64;
    let sd = (100.0 * zeta * (1.0 - zeta) / reps as f64).sqrt();
    assert!((mean - 60.0).abs() < 4.0 * sd, "kept {mean} expected 60 +- {sd}");
    // near-1 retention
    let s = sample(&spec, 71, 0).unwrap();
    let t = thin(&s, 0.9999, 5).unwrap();
    assert!(t.values.len() >= 99);
    assert!(thin(&s, 1.0, 5).is_err());
}

#[test]
fn high_temperature_families_run() {
    let s = sample(&EnsembleSpec::HighTempGaussian { n: 50, alpha: 1.0 }, 81, 0).unwrap();
    assert_eq!(reals_of(&s).len(), 50);
    let s = sample(&EnsembleSpec::HighTempLaguerre { n: 50, alpha: 1.0, alpha1: 0.0 }, 81, 0).unwrap();
    assert!(reals_of(&s).iter().all(|&x| x >= 0.0));
}

#[test]
fn dense_gaussian_and_submatrices() {
    let n = 60;
    let h = sample_gaussian_dense(n, 2, 91, 0).unwrap();
    // Hermitian
    for i in 0..n {
        for j in 0..n {
            assert!((h[[i, j]] - h[[j, i]].conj()).norm() < 1e-15);
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    let (full, _) = principal_submatrix_spectra(&h, &idx, &idx).unwrap();
    let direct = linalg::eigvalsh_complex(&h).unwrap();
    for (a, b) in full.iter().zip(direct.iter()) {
        assert_relative_eq!(*a, *b, epsilon = 1e-10);
    }
    // half-set spectra have roughly semicircular support after rescaling
    let half: Vec<usize> = (0..n / 2).collect();
    let (sub, _) = principal_submatrix_spectra(&h, &half, &half).unwrap();
    assert_eq!(sub.len(), n / 2);
    assert!(sub.iter().all(|&x| x.abs() < 1.6));
    assert!(principal_submatrix_spectra(&h, &[], &idx).is_err());
}

#[test]
fn wigner_rademacher_runs_and_scales() {
    let law = WignerLaw {
        offdiag: EntryDist::Rademacher,
        diag: EntryDist::Gaussian { sd: 1.0 },
    };
    let (sigma2, beta_tilde) = law.moments();
    assert_relative_eq!(sigma2, 1.0, epsilon = 1e-14);
    assert_relative_eq!(beta_tilde, -2.0, epsilon = 1e-14);
    let s = sample(&EnsembleSpec::Wigner { n: 80, law }, 101, 0).unwrap();
    let v = reals_of(&s);
    assert!(v.iter().all(|&x| x.abs() < 1.4));
    // GOE moments: Gaussian sd sqrt(2) on the diagonal gives beta_tilde 0
    let goe = WignerLaw {
        offdiag: EntryDist::Gaussian { sd: 1.0 },
        diag: EntryDist::Gaussian { sd: 2.0f64.sqrt() },
    };
    let (s2, bt) = goe.moments();
    assert_relative_eq!(s2, 2.0, epsilon = 1e-14);
    assert_relative_eq!(bt, 0.0, epsilon = 1e-12);
}

#[test]
fn cue_alpha_small_n_matches_oracle() {
    // Metropolis chain against the N = 2 quadrature oracle (Var cos x = 0.75
    // at alpha = 0.5)
    let spec = EnsembleSpec::CueAlpha { n: 2, alpha: 0.5 };
    let stat = crate::basis::LinearStatistic::cosine_mode(1);
    let est = crate::mc::estimate_covariance(&stat, &stat, &spec, 4000, 111).unwrap();
    assert!(
        (est.covariance - 0.75).abs() < 3.0 * est.se,
        "{} +- {}",
        est.covariance,
        est.se
    );
}

#[test]
fn invalid_specs_rejected() {
    assert!(sample(&EnsembleSpec::CueAlpha { n: 5, alpha: 1.2 }, 1, 0).is_err());
    assert!(sample(&EnsembleSpec::GaussianBeta { n: 5, beta: -1.0 }, 1, 0).is_err());
    assert!(sample(&EnsembleSpec::EllipticGinibre { n: 5, tau: 1.0 }, 1, 0).is_err());
    assert!(sample(&EnsembleSpec::Cgp { degree: 1200 }, 1, 0).is_err());
    let bad = WignerLaw {
        offdiag: EntryDist::Gaussian { sd: 2.0 },
        diag: EntryDist::Gaussian { sd: 1.0 },
    };
    assert!(sample(&EnsembleSpec::Wigner { n: 5, law: bad }, 1, 0).is_err());
}
