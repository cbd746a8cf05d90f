//! Deterministic samplers for every ensemble the fluctuation formulas cover.
//!
//! Each sampler is a pure function of `(spec, seed, stream)`: identical
//! arguments give bitwise-identical spectra, and distinct streams are
//! independent, so Monte Carlo loops parallelise over streams with no
//! ordering concerns. Scaling conventions are owned by the samplers: circular
//! families return raw angles in [0, 2pi), interval families return points
//! whose limiting support matches the formulas' coordinates ((-1,1) for the
//! Gaussian family, the Marchenko-Pastur interval for Laguerre), and planar
//! families return points supported on the unit disk or ellipse.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::{derive_seed, substream};
use ndarray::Array2;
use num_complex::Complex64;
use rand::RngExt;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

type C64 = Complex64;

/// Zero-mean entry distribution for Wigner matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EntryDist {
    Gaussian { sd: f64 },
    Rademacher,
}

impl EntryDist {
    pub fn variance(&self) -> f64 {
        match *self {
            EntryDist::Gaussian { sd } => sd * sd,
            EntryDist::Rademacher => 1.0,
        }
    }
    pub fn fourth_moment(&self) -> f64 {
        match *self {
            EntryDist::Gaussian { sd } => 3.0 * sd.powi(4),
            EntryDist::Rademacher => 1.0,
        }
    }
    fn draw(&self, rng: &mut ChaCha12Rng) -> f64 {
        match *self {
            EntryDist::Gaussian { sd } => {
                let x: f64 = StandardNormal.sample(rng);
                sd * x
            }
            EntryDist::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Wigner entry law: off-diagonal (unit variance expected) and diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerLaw {
    pub offdiag: EntryDist,
    pub diag: EntryDist,
}

impl WignerLaw {
    /// sigma^2, beta-tilde entering the covariance corrections; real case.
    pub fn moments(&self) -> (f64, f64) {
        let sigma2 = self.diag.variance();
        // beta_tilde = <(x^2 - 1)^2> - 1/kappa, kappa = 1/2 for real entries
        let beta_tilde = self.offdiag.fourth_moment() - 2.0 * self.offdiag.variance() + 1.0 - 2.0;
        (sigma2, beta_tilde)
    }
}

/// Ensemble family plus all parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EnsembleSpec {
    Cue { n: usize },
    CueAlpha { n: usize, alpha: f64 },
    Coe { n: usize },
    Cse { n: usize },
    /// Haar SO(n), n even: the n/2 independent eigenangles in (0, pi).
    OPlus { n: usize },
    CircularBeta { n: usize, beta: f64 },
    GaussianBeta { n: usize, beta: f64 },
    LaguerreBeta { n: usize, beta: f64, alpha: f64 },
    GinUe { n: usize },
    GinOe { n: usize },
    EllipticGinibre { n: usize, tau: f64 },
    Wigner { n: usize, law: WignerLaw },
    /// Squared singular values of G_M ... G_1 over prod N_j, sizes N_j = n + eta_j.
    GinibreProduct { n: usize, etas: Vec<usize> },
    /// Zeros of the flat random polynomial of the given degree.
    Cgp { degree: usize },
    HighTempGaussian { n: usize, alpha: f64 },
    HighTempLaguerre { n: usize, alpha: f64, alpha1: f64 },
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            EnsembleSpec::Cue { n } | EnsembleSpec::Coe { n } | EnsembleSpec::Cse { n } => *n >= 1,
            EnsembleSpec::CueAlpha { n, alpha } => *n >= 1 && (0.0..1.0).contains(alpha),
            EnsembleSpec::OPlus { n } => *n >= 2 && n % 2 == 0,
            EnsembleSpec::CircularBeta { n, beta } => *n >= 1 && *beta > 0.0,
            EnsembleSpec::GaussianBeta { n, beta } => *n >= 1 && *beta > 0.0,
            EnsembleSpec::LaguerreBeta { n, beta, alpha } => *n >= 1 && *beta > 0.0 && *alpha >= 0.0,
            EnsembleSpec::GinUe { n } | EnsembleSpec::GinOe { n } => *n >= 1,
            EnsembleSpec::EllipticGinibre { n, tau } => *n >= 1 && (0.0..1.0).contains(tau),
            EnsembleSpec::Wigner { n, law } => {
                *n >= 1 && (law.offdiag.variance() - 1.0).abs() < 1e-12
            }
            EnsembleSpec::GinibreProduct { n, etas } => *n >= 1 && !etas.is_empty(),
            EnsembleSpec::Cgp { degree } => *degree >= 1 && *degree <= 600,
            EnsembleSpec::HighTempGaussian { n, alpha } => *n >= 1 && *alpha > 0.0,
            EnsembleSpec::HighTempLaguerre { n, alpha, alpha1 } => {
                *n >= 1 && *alpha > 0.0 && *alpha1 >= 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!("invalid ensemble parameters: {self:?}")))
        }
    }

    /// Number of points a realisation carries.
    pub fn point_count(&self) -> usize {
        match self {
            EnsembleSpec::Cue { n }
            | EnsembleSpec::CueAlpha { n, .. }
            | EnsembleSpec::Coe { n }
            | EnsembleSpec::Cse { n }
            | EnsembleSpec::CircularBeta { n, .. }
            | EnsembleSpec::GaussianBeta { n, .. }
            | EnsembleSpec::LaguerreBeta { n, .. }
            | EnsembleSpec::GinUe { n }
            | EnsembleSpec::GinOe { n }
            | EnsembleSpec::EllipticGinibre { n, .. }
            | EnsembleSpec::Wigner { n, .. }
            | EnsembleSpec::GinibreProduct { n, .. }
            | EnsembleSpec::HighTempGaussian { n, .. }
            | EnsembleSpec::HighTempLaguerre { n, .. } => *n,
            EnsembleSpec::OPlus { n } => n / 2,
            EnsembleSpec::Cgp { degree } => *degree,
        }
    }
}

/// The value kind of a realisation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SpectrumValues {
    /// Angles in [0, 2pi) (or (0, pi) for the orthogonal family), sorted.
    Angles(Vec<f64>),
    /// Real points, sorted ascending.
    Reals(Vec<f64>),
    /// Complex points.
    Planar(Vec<(f64, f64)>),
}

impl SpectrumValues {
    pub fn len(&self) -> usize {
        match self {
            SpectrumValues::Angles(v) | SpectrumValues::Reals(v) => v.len(),
            SpectrumValues::Planar(v) => v.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One realisation with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub values: SpectrumValues,
    pub seed: u64,
    pub stream: u64,
    pub spec: EnsembleSpec,
}

/// Draw one realisation. Deterministic in `(spec, seed, stream)`; eigensolver
/// non-convergence triggers up to three deterministic resamples on derived
/// seeds before a hard error.
pub fn sample(spec: &EnsembleSpec, seed: u64, stream: u64) -> Result<SpectrumSample> {
    spec.validate()?;
    let mut last_err = None;
    for attempt in 0..4u64 {
        let eff_seed = if attempt == 0 { seed } else { derive_seed(seed, attempt) };
        let mut rng = substream(eff_seed, stream);
        match sample_once(spec, &mut rng) {
            Ok(values) => return Ok(SpectrumSample { values, seed, stream, spec: clone_spec(spec) }),
            Err(e @ Error::NonConvergence(_)) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NonConvergence("sampling failed".into())))
}

fn clone_spec(spec: &EnsembleSpec) -> EnsembleSpec {
    spec.clone()
}

fn sample_once(spec: &EnsembleSpec, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    match spec {
        EnsembleSpec::Cue { n } => {
            let u = linalg::haar_unitary(*n, rng)?;
            Ok(SpectrumValues::Angles(linalg::unitary_eigenangles(&u)?))
        }
        EnsembleSpec::Coe { n } => {
            let u = linalg::haar_unitary(*n, rng)?;
            let s = linalg::matmul_c64(&u.t().to_owned(), &u);
            Ok(SpectrumValues::Angles(linalg::unitary_eigenangles(&s)?))
        }
        EnsembleSpec::Cse { n } => sample_cse(*n, rng),
        EnsembleSpec::OPlus { n } => sample_oplus(*n, rng),
        EnsembleSpec::CueAlpha { n, alpha } => sample_cue_alpha(*n, *alpha, rng),
        EnsembleSpec::CircularBeta { n, beta } => sample_circular_beta(*n, *beta, rng),
        EnsembleSpec::GaussianBeta { n, beta } => {
            let lam = gaussian_beta_raw(*n, *beta, rng)?;
            let scale = (2.0 * beta * *n as f64).sqrt();
            Ok(SpectrumValues::Reals(lam.into_iter().map(|x| x / scale).collect()))
        }
        EnsembleSpec::LaguerreBeta { n, beta, alpha } => {
            let lam = laguerre_beta_raw(*n, *beta, laguerre_a(*n, *beta, *alpha), rng)?;
            let scale = beta * *n as f64;
            Ok(SpectrumValues::Reals(lam.into_iter().map(|x| x / scale).collect()))
        }
        EnsembleSpec::GinUe { n } => {
            let g = ginibre_matrix(*n, *n, rng);
            let ev = linalg::eigvals_complex(&g)?;
            let s = (*n as f64).sqrt();
            Ok(SpectrumValues::Planar(ev.iter().map(|z| (z.re / s, z.im / s)).collect()))
        }
        EnsembleSpec::GinOe { n } => {
            let g = Array2::from_shape_fn((*n, *n), |_| {
                let x: f64 = StandardNormal.sample(rng);
                x
            });
            let ev = linalg::eigvals_real(&g)?;
            let s = (*n as f64).sqrt();
            Ok(SpectrumValues::Planar(ev.iter().map(|z| (z.re / s, z.im / s)).collect()))
        }
        EnsembleSpec::EllipticGinibre { n, tau } => {
            let a = 0.5 * ((1.0 + tau).sqrt() + (1.0 - tau).sqrt());
            let c = 0.5 * ((1.0 + tau).sqrt() - (1.0 - tau).sqrt());
            let g = ginibre_matrix(*n, *n, rng);
            let gh = g.t().mapv(|z| z.conj());
            let y = &g.mapv(|z| z * a) + &gh.mapv(|z| z * c);
            let ev = linalg::eigvals_complex(&y)?;
            let s = (*n as f64).sqrt();
            Ok(SpectrumValues::Planar(ev.iter().map(|z| (z.re / s, z.im / s)).collect()))
        }
        EnsembleSpec::Wigner { n, law } => {
            let nn = *n;
            let mut h = Array2::<f64>::zeros((nn, nn));
            for i in 0..nn {
                h[[i, i]] = law.diag.draw(rng);
                for j in (i + 1)..nn {
                    let v = law.offdiag.draw(rng);
                    h[[i, j]] = v;
                    h[[j, i]] = v;
                }
            }
            let scale = (2.0 * nn as f64).sqrt();
            h.mapv_inplace(|v| v / scale);
            let mut ev = linalg::eigvalsh_real(&h)?;
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok(SpectrumValues::Reals(ev))
        }
        EnsembleSpec::GinibreProduct { n, etas } => {
            let mut sizes = Vec::with_capacity(etas.len() + 1);
            sizes.push(*n);
            for eta in etas {
                sizes.push(*n + *eta);
            }
            // W = G_M ... G_1, G_j of shape sizes[j] x sizes[j-1]
            let mut w = ginibre_matrix(sizes[1], sizes[0], rng);
            for j in 2..sizes.len() {
                let g = ginibre_matrix(sizes[j], sizes[j - 1], rng);
                w = linalg::matmul_c64(&g, &w);
            }
            let wh = w.t().mapv(|z| z.conj());
            let wtw = linalg::matmul_c64(&wh, &w);
            let mut ev = linalg::eigvalsh_complex(&wtw)?;
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let denom: f64 = sizes.iter().skip(1).map(|&s| s as f64).product();
            Ok(SpectrumValues::Reals(ev.into_iter().map(|x| (x / denom).max(0.0)).collect()))
        }
        EnsembleSpec::Cgp { degree } => sample_cgp(*degree, rng),
        EnsembleSpec::HighTempGaussian { n, alpha } => {
            let beta_eff = 2.0 * alpha / *n as f64;
            let lam = gaussian_beta_raw(*n, beta_eff, rng)?;
            Ok(SpectrumValues::Reals(lam))
        }
        EnsembleSpec::HighTempLaguerre { n, alpha, alpha1 } => {
            let beta_eff = 2.0 * alpha / *n as f64;
            let a = *alpha1 + 0.5 * beta_eff * (*n as f64 - 1.0) + 1.0;
            let lam = laguerre_beta_raw(*n, beta_eff, a, rng)?;
            Ok(SpectrumValues::Reals(lam.into_iter().map(|x| x / 2.0).collect()))
        }
    }
}

/// Standard complex Gaussian matrix with unit-variance entries.
fn ginibre_matrix(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> Array2<C64> {
    Array2::from_shape_fn((rows, cols), |_| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

fn chi(rng: &mut ChaCha12Rng, dof: f64) -> f64 {
    // chi_k = sqrt(Gamma(k/2, 2))
    if dof <= 0.0 {
        return 0.0;
    }
    let g = Gamma::new(dof / 2.0, 2.0).expect("gamma params");
    g.sample(rng).max(0.0).sqrt()
}

/// Raw Dumitriu-Edelman tridiagonal eigenvalues for the weight
/// `prod e^{-lambda^2/2} |Delta|^beta` (no rescaling).
fn gaussian_beta_raw(n: usize, beta: f64, rng: &mut ChaCha12Rng) -> Result<Vec<f64>> {
    let mut d = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = StandardNormal.sample(rng);
        d.push(x);
    }
    let mut e = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        e.push(chi(rng, beta * (n - 1 - i) as f64) / 2.0f64.sqrt());
    }
    linalg::symtridiag_eigenvalues(&d, &e)
}

fn laguerre_a(n: usize, beta: f64, alpha: f64) -> f64 {
    0.5 * beta * n as f64 * alpha + 0.5 * beta * (n as f64 - 1.0) + 1.0
}

/// Raw bidiagonal Laguerre eigenvalues for the weight
/// `prod lambda^{a - beta(n-1)/2 - 1} e^{-lambda/2} |Delta|^beta`.
fn laguerre_beta_raw(n: usize, beta: f64, a: f64, rng: &mut ChaCha12Rng) -> Result<Vec<f64>> {
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        x.push(chi(rng, 2.0 * a - beta * i as f64));
    }
    let mut y = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        y.push(chi(rng, beta * (n - 1 - i) as f64));
    }
    // L = B B^T for lower-bidiagonal B with diag x, subdiag y
    let mut d = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let prev = if i == 0 { 0.0 } else { y[i - 1] * y[i - 1] };
        d.push(x[i] * x[i] + prev);
        if i + 1 < n {
            e.push(x[i] * y[i]);
        }
    }
    let mut lam = linalg::symtridiag_eigenvalues(&d, &e)?;
    lam.iter_mut().for_each(|v| *v = v.max(0.0));
    Ok(lam)
}

/// Circular beta ensemble via the Killip-Nenciu Verblunsky coefficients and
/// the paraorthogonal rootfinder (O(N^2)).
fn sample_circular_beta(n: usize, beta: f64, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    let alphas = verblunsky_coefficients(n, beta, rng);
    let roots = linalg::paraorthogonal_roots(&alphas)?;
    Ok(SpectrumValues::Angles(roots))
}

fn verblunsky_coefficients(n: usize, beta: f64, rng: &mut ChaCha12Rng) -> Vec<C64> {
    let mut alphas = Vec::with_capacity(n);
    for k in 0..n.saturating_sub(1) {
        let b = 0.5 * beta * (n - k - 1) as f64;
        // |alpha|^2 ~ Beta(1, b) by inverse CDF
        let u: f64 = rng.random::<f64>();
        let r2: f64 = 1.0 - (1.0 - u).powf(1.0 / b);
        let phase: f64 = rng.random::<f64>() * TAU;
        alphas.push(C64::new(0.0, phase).exp() * r2.sqrt());
    }
    let phase: f64 = rng.random::<f64>() * TAU;
    alphas.push(C64::new(0.0, phase).exp());
    alphas
}

/// CSE through the self-dual construction; the doubly degenerate spectrum is
/// deduplicated after checking Kramers pairs coincide.
fn sample_cse(n: usize, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    let n2 = 2 * n;
    let u = linalg::haar_unitary(n2, rng)?;
    // Z = I_n (x) [[0,1],[-1,0]]; S = Z^{-1} U^T Z U, Z^{-1} = -Z = Z^T
    let mut zu = Array2::<C64>::zeros((n2, n2));
    let mut utz = Array2::<C64>::zeros((n2, n2));
    // (Z U)[2i][j] = U[2i+1][j]; (Z U)[2i+1][j] = -U[2i][j]
    for i in 0..n {
        for j in 0..n2 {
            zu[[2 * i, j]] = u[[2 * i + 1, j]];
            zu[[2 * i + 1, j]] = -u[[2 * i, j]];
        }
    }
    // Z^{-1} U^T = -Z U^T: (-Z U^T)[2i][j] = -U^T[2i+1][j] = -U[j][2i+1]
    for i in 0..n {
        for j in 0..n2 {
            utz[[2 * i, j]] = -u[[j, 2 * i + 1]];
            utz[[2 * i + 1, j]] = u[[j, 2 * i]];
        }
    }
    let s = linalg::matmul_c64(&utz, &zu);
    let ev = linalg::eigvals_complex(&s)?;
    let ang = linalg::angles_sorted(&ev);
    // Kramers doublets: consecutive pairs after sorting
    let mut distinct = Vec::with_capacity(n);
    let mut i = 0;
    while i + 1 < ang.len() {
        let gap = (ang[i + 1] - ang[i]).abs();
        let wrap = TAU - gap;
        if gap.min(wrap) > 1e-8 {
            return Err(Error::NonConvergence(format!(
                "CSE Kramers doublet split by {gap:.2e}"
            )));
        }
        distinct.push(0.5 * (ang[i] + ang[i + 1]));
        i += 2;
    }
    // wrap-around pair (one angle near 0, its partner near 2pi)
    if distinct.len() < n {
        let gap = TAU - (ang[ang.len() - 1] - ang[0]);
        if gap > 1e-8 {
            return Err(Error::NonConvergence("CSE wrap-around doublet split".into()));
        }
        distinct.insert(0, ang[0]);
    }
    Ok(SpectrumValues::Angles(distinct))
}

/// Haar SO(n) independent eigenangles via the symmetric part (O + O^T)/2,
/// whose eigenvalues are the doubled cosines.
fn sample_oplus(n: usize, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    let o = linalg::haar_special_orthogonal(n, rng)?;
    let sym = (&o + &o.t()).mapv(|v| 0.5 * v);
    let mut c = linalg::eigvalsh_real(&sym)?;
    c.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut angles = Vec::with_capacity(n / 2);
    let mut i = 0;
    while i + 1 < c.len() {
        if (c[i + 1] - c[i]).abs() > 1e-8 {
            return Err(Error::NonConvergence(format!(
                "orthogonal cosine pair split by {:.2e}",
                c[i + 1] - c[i]
            )));
        }
        let v = 0.5 * (c[i] + c[i + 1]);
        angles.push(v.clamp(-1.0, 1.0).acos());
        i += 2;
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(SpectrumValues::Angles(angles))
}

/// Single-site Metropolis sampler for the Gaudin deformation: pairwise weight
/// `w(d) = 1/(1 + sinh^2(gamma)/sin^2(d/2))`, `gamma = -ln(alpha)/2`.
fn sample_cue_alpha(n: usize, alpha: f64, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    if alpha == 0.0 {
        // degenerates to the CUE
        let u = linalg::haar_unitary(n, rng)?;
        return Ok(SpectrumValues::Angles(linalg::unitary_eigenangles(&u)?));
    }
    let gamma = -alpha.ln() / 2.0;
    let sinh2 = gamma.sinh() * gamma.sinh();
    let log_w = |d: f64| -> f64 {
        let s = (d / 2.0).sin();
        -(1.0 + sinh2 / (s * s)).ln()
    };
    // equispaced start (the typical configuration is rigid), long burn-in
    let mut x: Vec<f64> = (0..n).map(|j| TAU * (j as f64 + 0.5) / n as f64).collect();
    let jitter = TAU / n as f64;
    for xi in x.iter_mut() {
        *xi = (*xi + jitter * (rng.random::<f64>() - 0.5)).rem_euclid(TAU);
    }
    let sweeps = cue_alpha_burn_in(n);
    let width = 2.5 * TAU / n as f64;
    for _ in 0..sweeps {
        for i in 0..n {
            let old = x[i];
            let prop = (old + width * (rng.random::<f64>() - 0.5)).rem_euclid(TAU);
            let mut dlog = 0.0;
            for (j, &xj) in x.iter().enumerate() {
                if j == i {
                    continue;
                }
                dlog += log_w(prop - xj) - log_w(old - xj);
            }
            if dlog >= 0.0 || rng.random::<f64>() < dlog.exp() {
                x[i] = prop;
            }
        }
    }
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(SpectrumValues::Angles(x))
}

pub(crate) fn cue_alpha_burn_in(n: usize) -> usize {
    // relaxation of the slowest (long-wavelength) modes scales mildly with N
    (8 * n).clamp(400, 1600)
}

/// Zeros of `sum a_j z^j`, `a_j` complex Gaussians of variance `1/j!`, via a
/// graded companion-matrix eigensolve.
///
/// The raw coefficients span e^{degree/2} orders of magnitude, which destroys
/// the inner zeros in a plain companion solve. Rescaling the variable by
/// `R = sqrt(degree)` and conjugating the companion matrix with the diagonal
/// of typical coefficient scales `s_j = R^j/sqrt(j!)` leaves every entry
/// O(1): subdiagonal `sqrt(i/degree)`, last column `-g_i/g_degree` with `g`
/// the raw unit Gaussians (the scales never get materialised).
fn sample_cgp(degree: usize, rng: &mut ChaCha12Rng) -> Result<SpectrumValues> {
    let r = (degree as f64).sqrt();
    let g: Vec<C64> = (0..=degree)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    if g[degree].norm() < 1e-8 {
        return Err(Error::NonConvergence("leading cGP coefficient too small".into()));
    }
    let mut comp = Array2::<C64>::zeros((degree, degree));
    for i in 1..degree {
        comp[[i, i - 1]] = C64::new((i as f64 / degree as f64).sqrt(), 0.0);
    }
    for i in 0..degree {
        comp[[i, degree - 1]] -= g[i] / g[degree];
    }
    let ev = linalg::eigvals_complex(&comp)?;
    Ok(SpectrumValues::Planar(ev.iter().map(|w| (w.re * r, w.im * r)).collect()))
}

/// Keep each point independently with probability `zeta`.
pub fn thin(sample: &SpectrumSample, zeta: f64, seed: u64) -> Result<SpectrumSample> {
    if !(0.0 < zeta && zeta < 1.0) {
        return Err(Error::domain("thinning fraction must lie in (0,1)"));
    }
    let mut rng = substream(derive_seed(seed, 0x7417), sample.stream);
    let keep = |vlen: usize, rng: &mut ChaCha12Rng| -> Vec<bool> {
        (0..vlen).map(|_| rng.random::<f64>() < zeta).collect()
    };
    let values = match &sample.values {
        SpectrumValues::Angles(v) => {
            let mask = keep(v.len(), &mut rng);
            SpectrumValues::Angles(
                v.iter().zip(mask).filter_map(|(x, m)| m.then_some(*x)).collect(),
            )
        }
        SpectrumValues::Reals(v) => {
            let mask = keep(v.len(), &mut rng);
            SpectrumValues::Reals(
                v.iter().zip(mask).filter_map(|(x, m)| m.then_some(*x)).collect(),
            )
        }
        SpectrumValues::Planar(v) => {
            let mask = keep(v.len(), &mut rng);
            SpectrumValues::Planar(
                v.iter().zip(mask).filter_map(|(x, m)| m.then_some(*x)).collect(),
            )
        }
    };
    Ok(SpectrumSample {
        values,
        seed: sample.seed,
        stream: sample.stream,
        spec: sample.spec.clone(),
    })
}

/// Dense GOE/GUE matrix (beta = 1 or 2), scaled by 1/sqrt(2N) so the full
/// spectrum has limiting support (-1, 1). Used by the submatrix statistics.
pub fn sample_gaussian_dense(
    n: usize,
    beta: u32,
    seed: u64,
    stream: u64,
) -> Result<Array2<C64>> {
    let mut rng = substream(seed, stream);
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    match beta {
        1 => {
            let mut h = Array2::<C64>::zeros((n, n));
            for i in 0..n {
                let d: f64 = StandardNormal.sample(&mut rng);
                h[[i, i]] = C64::new(d * 2.0f64.sqrt() * scale, 0.0);
                for j in (i + 1)..n {
                    let v: f64 = StandardNormal.sample(&mut rng);
                    h[[i, j]] = C64::new(v * scale, 0.0);
                    h[[j, i]] = C64::new(v * scale, 0.0);
                }
            }
            Ok(h)
        }
        2 => {
            let mut h = Array2::<C64>::zeros((n, n));
            for i in 0..n {
                let d: f64 = StandardNormal.sample(&mut rng);
                h[[i, i]] = C64::new(d * scale, 0.0);
                for j in (i + 1)..n {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    let v = C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2 * scale;
                    h[[i, j]] = v;
                    h[[j, i]] = v.conj();
                }
            }
            Ok(h)
        }
        _ => Err(Error::input("dense Gaussian matrices exist for beta = 1, 2 only")),
    }
}

/// Eigenvalues of the principal submatrices `H(I_p)`, `H(I_q)`, each rescaled
/// so the limiting support is (-1, 1).
pub fn principal_submatrix_spectra(
    h: &Array2<C64>,
    idx_p: &[usize],
    idx_q: &[usize],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = h.nrows();
    let extract = |idx: &[usize]| -> Result<Vec<f64>> {
        if idx.is_empty() {
            return Err(Error::input("index set must be nonempty"));
        }
        if idx.iter().any(|&i| i >= n) {
            return Err(Error::input("index out of range"));
        }
        let m = idx.len();
        let sub = Array2::from_shape_fn((m, m), |(a, b)| h[[idx[a], idx[b]]]);
        let b = m as f64 / n as f64;
        let ev = linalg::eigvalsh_complex(&sub)?;
        Ok(ev.into_iter().map(|x| x / b.sqrt()).collect())
    };
    Ok((extract(idx_p)?, extract(idx_q)?))
}

/// GOE/GUE convention check helper exposed for the oracle: the diagonal
/// variance is 2/beta times the off-diagonal one under (4.1c) with V = x^2.
pub fn gaussian_dense_diag_variance(beta: u32) -> f64 {
    match beta {
        1 => 2.0,
        _ => 1.0,
    }
}

#[cfg(test)]
mod tests;
