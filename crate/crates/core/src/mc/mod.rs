//! Monte Carlo estimation of linear-statistic covariances and the small-N
//! brute-force quadrature oracle.
//!
//! Estimates are deterministic in `(spec, seed, n_samples)`: sample `i` draws
//! from stream `i`, per-sample values are reduced in index order with
//! compensated summation, and the jackknife runs over 20 contiguous batches.
//! Workers only affect who computes which stream, never the result.

use crate::basis::{LinearStatistic, PlanarRegion};
use crate::error::{Error, Result};
use crate::quad;
use crate::rng::derive_seed;
use crate::samplers::{sample, EnsembleSpec, SpectrumSample, SpectrumValues};
use rand::RngExt;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::time::Instant;

pub const JACKKNIFE_BATCHES: usize = 20;

/// Monte Carlo estimate with jackknife standard error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean_f: f64,
    pub mean_g: f64,
    pub covariance: f64,
    pub se: f64,
    pub n_samples: usize,
    pub wall_time_ms: f64,
    pub spec: EnsembleSpec,
    pub seed: u64,
}

/// Kahan-Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Sum of a statistic over the points of a realisation.
pub fn statistic_sum(stat: &LinearStatistic, values: &SpectrumValues) -> Result<f64> {
    let mut acc = Compensated::default();
    match values {
        SpectrumValues::Angles(v) => {
            for &x in v {
                acc.add(stat.eval_angle(x)?);
            }
        }
        SpectrumValues::Reals(v) => {
            for &x in v {
                acc.add(stat.eval_real(x)?);
            }
        }
        SpectrumValues::Planar(v) => {
            for &(x, y) in v {
                acc.add(stat.eval_planar(x, y)?);
            }
        }
    }
    Ok(acc.value())
}

/// Reduce paired per-sample values to (means, covariance, jackknife SE).
pub fn covariance_from_pairs(pairs: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let n = pairs.len();
    let nf = n as f64;
    let mut sf = Compensated::default();
    let mut sg = Compensated::default();
    for &(a, b) in pairs {
        sf.add(a);
        sg.add(b);
    }
    let mf = sf.value() / nf;
    let mg = sg.value() / nf;
    let mut sc = Compensated::default();
    for &(a, b) in pairs {
        sc.add((a - mf) * (b - mg));
    }
    let cov = sc.value() / (nf - 1.0);

    // jackknife over contiguous batches
    let b = JACKKNIFE_BATCHES.min(n);
    let mut leave_out = Vec::with_capacity(b);
    for k in 0..b {
        let lo = k * n / b;
        let hi = (k + 1) * n / b;
        let mut sf_k = Compensated::default();
        let mut sg_k = Compensated::default();
        let mut cnt = 0.0;
        for (i, &(a, c)) in pairs.iter().enumerate() {
            if i >= lo && i < hi {
                continue;
            }
            sf_k.add(a);
            sg_k.add(c);
            cnt += 1.0;
        }
        let mfk = sf_k.value() / cnt;
        let mgk = sg_k.value() / cnt;
        let mut sck = Compensated::default();
        for (i, &(a, c)) in pairs.iter().enumerate() {
            if i >= lo && i < hi {
                continue;
            }
            sck.add((a - mfk) * (c - mgk));
        }
        leave_out.push(sck.value() / (cnt - 1.0));
    }
    let bar: f64 = leave_out.iter().sum::<f64>() / b as f64;
    let var_jk: f64 =
        leave_out.iter().map(|v| (v - bar) * (v - bar)).sum::<f64>() * (b as f64 - 1.0) / b as f64;
    let se = var_jk.sqrt().max(f64::MIN_POSITIVE);
    (mf, mg, cov, se)
}

/// Unbiased sample covariance of `(sum_j f(x_j), sum_j g(x_j))` over
/// `n_samples` independent realisations, one RNG stream per sample.
pub fn estimate_covariance(
    f: &LinearStatistic,
    g: &LinearStatistic,
    spec: &EnsembleSpec,
    n_samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if n_samples < 100 {
        return Err(Error::input("need at least 100 samples"));
    }
    let t0 = Instant::now();
    let pairs = sample_pairs(f, g, spec, n_samples, seed)?;
    let (mf, mg, cov, se) = covariance_from_pairs(&pairs);
    Ok(MCEstimate {
        mean_f: mf,
        mean_g: mg,
        covariance: cov,
        se,
        n_samples,
        wall_time_ms: t0.elapsed().as_secs_f64() * 1e3,
        spec: spec.clone(),
        seed,
    })
}

/// Per-sample statistic pairs, evaluated stream-by-stream.
pub fn sample_pairs(
    f: &LinearStatistic,
    g: &LinearStatistic,
    spec: &EnsembleSpec,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    map_samples(spec, n_samples, seed, |s| {
        let a = statistic_sum(f, &s.values)?;
        let b = statistic_sum(g, &s.values)?;
        Ok((a, b))
    })
}

/// Apply a per-sample map over streams `0..n_samples`, preserving order.
/// Parallel when a rayon pool is active (the work partition never changes the
/// values: results land by index).
pub fn map_samples<T, F>(
    spec: &EnsembleSpec,
    n_samples: usize,
    seed: u64,
    func: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&SpectrumSample) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    let results: Result<Vec<T>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = sample(spec, seed, i)?;
            func(&s)
        })
        .collect();
    results
}

/// One row of a counting profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingRow {
    pub mean: f64,
    pub variance: f64,
    pub se_variance: f64,
}

/// A counting region on the sample's value kind.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum Region {
    /// Interval of angles or reals (boundary points count as inside).
    Interval { a: f64, b: f64 },
    Planar(PlanarRegion),
}

/// Mean and variance of the counts in each region, all regions evaluated on
/// the same realisations. With `randomize_rotation`, planar regions are
/// rotated by a per-sample uniform angle (same angle for every region of the
/// sample).
pub fn counting_profile(
    spec: &EnsembleSpec,
    regions: &[Region],
    n_samples: usize,
    seed: u64,
    randomize_rotation: bool,
) -> Result<Vec<CountingRow>> {
    if n_samples < 2 {
        return Err(Error::input("need at least 2 samples"));
    }
    let rot_seed = derive_seed(seed, 0x0_507);
    let counts: Vec<Vec<f64>> = map_samples(spec, n_samples, seed, |s| {
        let rot = if randomize_rotation {
            let mut r = crate::rng::substream(rot_seed, s.stream);
            r.random::<f64>() * TAU
        } else {
            0.0
        };
        let (sin_r, cos_r) = rot.sin_cos();
        let mut row = Vec::with_capacity(regions.len());
        for region in regions {
            let c = match (region, &s.values) {
                (Region::Interval { a, b }, SpectrumValues::Angles(v)) => {
                    v.iter().filter(|&&x| x >= *a && x <= *b).count()
                }
                (Region::Interval { a, b }, SpectrumValues::Reals(v)) => {
                    v.iter().filter(|&&x| x >= *a && x <= *b).count()
                }
                (Region::Planar(p), SpectrumValues::Planar(v)) => v
                    .iter()
                    .filter(|&&(x, y)| {
                        // rotating the region by rot = rotating points by -rot
                        let xr = cos_r * x + sin_r * y;
                        let yr = -sin_r * x + cos_r * y;
                        p.contains(xr, yr)
                    })
                    .count(),
                _ => {
                    return Err(Error::input(
                        "region kind does not match the sample's value kind",
                    ))
                }
            };
            row.push(c as f64);
        }
        Ok(row)
    })?;
    let mut out = Vec::with_capacity(regions.len());
    for r in 0..regions.len() {
        let vals: Vec<(f64, f64)> = counts.iter().map(|row| (row[r], row[r])).collect();
        let (mean, _, var, se) = covariance_from_pairs(&vals);
        out.push(CountingRow { mean, variance: var, se_variance: se });
    }
    Ok(out)
}

/// Brute-force oracle result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    pub covariance: f64,
    pub mean_f: f64,
    pub mean_g: f64,
    pub error_bound: f64,
    pub n: usize,
}

/// Covariance by adaptive N-dimensional quadrature over the explicit joint
/// density, N <= 3. Supports the CUE, the Gaudin deformation, and the
/// Gaussian/Laguerre beta densities.
pub fn brute_force_covariance(
    spec: &EnsembleSpec,
    f: &LinearStatistic,
    g: &LinearStatistic,
    tol: f64,
) -> Result<OracleResult> {
    match spec {
        EnsembleSpec::Cue { n } if *n <= 3 => {
            let dens = |x: &[f64]| cue_density_unnorm(x, 0.0);
            circular_oracle(*n, 64, dens, f, g, tol)
        }
        EnsembleSpec::CueAlpha { n, alpha } if *n <= 3 => {
            let a = *alpha;
            let dens = move |x: &[f64]| cue_density_unnorm(x, a);
            circular_oracle(*n, 160, dens, f, g, tol)
        }
        EnsembleSpec::GaussianBeta { n, beta } if *n <= 3 => {
            let b = *beta;
            let nn = *n as f64;
            // support cut-off where e^{-beta N x^2} is below 1e-22
            let r = (50.0 / (b * nn)).sqrt().max(2.0);
            let dens = move |x: &[f64]| {
                let mut v = 0.0f64;
                for i in 0..x.len() {
                    v += -b * nn * x[i] * x[i];
                    for j in (i + 1)..x.len() {
                        v += b * (x[i] - x[j]).abs().max(1e-300).ln();
                    }
                }
                v.exp()
            };
            line_oracle(*n, -r, r, dens, f, g, tol)
        }
        EnsembleSpec::LaguerreBeta { n, beta, alpha } if *n <= 3 => {
            let b = *beta;
            let nn = *n as f64;
            let a = *alpha;
            let r = (120.0 / (b * nn)).max(12.0);
            let dens = move |x: &[f64]| {
                let mut v = 0.0f64;
                for i in 0..x.len() {
                    if x[i] <= 0.0 {
                        return 0.0;
                    }
                    v += 0.5 * b * nn * (a * x[i].ln() - x[i]);
                    for j in (i + 1)..x.len() {
                        v += b * (x[i] - x[j]).abs().max(1e-300).ln();
                    }
                }
                v.exp()
            };
            line_oracle(*n, 1e-12, r, dens, f, g, tol)
        }
        _ => Err(Error::input(
            "oracle densities are available for CUE, CUE_alpha, Gaussian and Laguerre at N <= 3",
        )),
    }
}

/// Unnormalised CUE / Gaudin density at angles `x` (alpha = 0 gives the CUE).
fn cue_density_unnorm(x: &[f64], alpha: f64) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let num = 2.0 - 2.0 * (x[i] - x[j]).cos(); // |e^{ix_i} - e^{ix_j}|^2
            let den = if alpha == 0.0 {
                1.0
            } else {
                // |e^{ix_i} - alpha e^{ix_j}|^2
                1.0 + alpha * alpha - 2.0 * alpha * (x[i] - x[j]).cos()
            };
            v *= num / den;
        }
    }
    v
}

/// Periodic tensor-trapezoid oracle for circular densities (spectrally
/// accurate for analytic periodic integrands).
fn circular_oracle<D>(
    n: usize,
    m: usize,
    dens: D,
    f: &LinearStatistic,
    g: &LinearStatistic,
    tol: f64,
) -> Result<OracleResult>
where
    D: Fn(&[f64]) -> f64,
{
    let run = |m: usize| -> Result<(f64, f64, f64)> {
        let h = TAU / m as f64;
        let grid: Vec<f64> = (0..m).map(|j| j as f64 * h).collect();
        let fs: Result<Vec<f64>> = grid.iter().map(|&x| f.eval_angle(x)).collect();
        let gs: Result<Vec<f64>> = grid.iter().map(|&x| g.eval_angle(x)).collect();
        let (fs, gs) = (fs?, gs?);
        let mut z = Compensated::default();
        let mut ef = Compensated::default();
        let mut eg = Compensated::default();
        let mut efg = Compensated::default();
        let mut idx = vec![0usize; n];
        loop {
            let xs: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
            let w = dens(&xs);
            if w > 0.0 {
                let sf: f64 = idx.iter().map(|&i| fs[i]).sum();
                let sg: f64 = idx.iter().map(|&i| gs[i]).sum();
                z.add(w);
                ef.add(w * sf);
                eg.add(w * sg);
                efg.add(w * sf * sg);
            }
            // advance the tensor index
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == n {
                    let zz = z.value();
                    return Ok((ef.value() / zz, eg.value() / zz, efg.value() / zz));
                }
            }
        }
    };
    let (ef1, eg1, efg1) = run(m)?;
    let (ef2, eg2, efg2) = run(m + m / 2)?;
    let cov1 = efg1 - ef1 * eg1;
    let cov2 = efg2 - ef2 * eg2;
    let err = (cov1 - cov2).abs();
    if err > tol {
        return Err(Error::Precision(format!(
            "circular oracle grids disagree by {err:.2e} (> {tol:.2e})"
        )));
    }
    Ok(OracleResult { covariance: cov2, mean_f: ef2, mean_g: eg2, error_bound: err.max(1e-15), n })
}

/// Adaptive tensor oracle for interval densities (Gaussian/Laguerre).
fn line_oracle<D>(
    n: usize,
    lo: f64,
    hi: f64,
    dens: D,
    f: &LinearStatistic,
    g: &LinearStatistic,
    tol: f64,
) -> Result<OracleResult>
where
    D: Fn(&[f64]) -> f64 + Sync,
{
    let cap = 100_000_000usize;
    let eval = |which: usize| -> Result<f64> {
        // which: 0 = Z, 1 = E F, 2 = E G, 3 = E FG (unnormalised)
        let integrand = |xs: &[f64]| -> f64 {
            let w = dens(xs);
            if w == 0.0 {
                return 0.0;
            }
            match which {
                0 => w,
                1 => w * xs.iter().map(|&x| f.eval_real(x).unwrap_or(f64::NAN)).sum::<f64>(),
                2 => w * xs.iter().map(|&x| g.eval_real(x).unwrap_or(f64::NAN)).sum::<f64>(),
                _ => {
                    let sf: f64 = xs.iter().map(|&x| f.eval_real(x).unwrap_or(f64::NAN)).sum();
                    let sg: f64 = xs.iter().map(|&x| g.eval_real(x).unwrap_or(f64::NAN)).sum();
                    w * sf * sg
                }
            }
        };
        let inner_tol = tol * 1e-3;
        match n {
            1 => quad::integrate(|x| integrand(&[x]), lo, hi, inner_tol, cap),
            2 => quad::integrate2(|x, y| integrand(&[x, y]), lo, hi, lo, hi, inner_tol, cap),
            3 => {
                // iterated: outer adaptive over x, inner 2-D adaptive
                quad::integrate(
                    |x| {
                        quad::integrate2(
                            |y, z| integrand(&[x, y, z]),
                            lo,
                            hi,
                            lo,
                            hi,
                            inner_tol / (hi - lo),
                            cap,
                        )
                        .unwrap_or(f64::NAN)
                    },
                    lo,
                    hi,
                    inner_tol,
                    cap,
                )
            }
            _ => Err(Error::input("oracle supports N <= 3")),
        }
    };
    let z = eval(0)?;
    if !(z > 0.0) {
        return Err(Error::Precision("oracle normalisation vanished".into()));
    }
    let ef = eval(1)? / z;
    let eg = eval(2)? / z;
    let efg = eval(3)? / z;
    let cov = efg - ef * eg;
    Ok(OracleResult { covariance: cov, mean_f: ef, mean_g: eg, error_bound: tol, n })
}

/// Convenience wrapper: thinned sampling combined with counting.
pub fn thinned_counting_profile(
    spec: &EnsembleSpec,
    zeta: f64,
    regions: &[Region],
    n_samples: usize,
    seed: u64,
) -> Result<Vec<CountingRow>> {
    let thin_seed = derive_seed(seed, 0x771);
    let counts: Vec<Vec<f64>> = map_samples(spec, n_samples, seed, |s| {
        let thinned = crate::samplers::thin(s, zeta, thin_seed)?;
        let mut row = Vec::with_capacity(regions.len());
        for region in regions {
            let c = match (region, &thinned.values) {
                (Region::Interval { a, b }, SpectrumValues::Angles(v)) => {
                    v.iter().filter(|&&x| x >= *a && x <= *b).count()
                }
                (Region::Interval { a, b }, SpectrumValues::Reals(v)) => {
                    v.iter().filter(|&&x| x >= *a && x <= *b).count()
                }
                (Region::Planar(p), SpectrumValues::Planar(v)) => {
                    v.iter().filter(|&&(x, y)| p.contains(x, y)).count()
                }
                _ => return Err(Error::input("region kind mismatch")),
            };
            row.push(c as f64);
        }
        Ok(row)
    })?;
    let mut out = Vec::with_capacity(regions.len());
    for r in 0..regions.len() {
        let vals: Vec<(f64, f64)> = counts.iter().map(|row| (row[r], row[r])).collect();
        let (mean, _, var, se) = covariance_from_pairs(&vals);
        out.push(CountingRow { mean, variance: var, se_variance: se });
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
