//! Linear-statistic representations and coefficient transforms.
//!
//! A linear statistic is a test function applied to every point of a spectrum
//! and summed. Each representation here is exact (coefficients, indicator
//! endpoints, polynomial coefficients); the transforms between them are
//! spectrally accurate FFT/midpoint quadratures, with closed forms for
//! indicator statistics where quadrature would converge slowly.

pub mod special;

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Which expansion a [`CoefficientTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    /// Two-sided Fourier coefficients `f_l = (1/2pi) int f e^{ilx} dx`.
    CircleFourier,
    /// Cosine coefficients on `[0, pi]`: `f_n = (1/pi) int f cos(nx) dx`,
    /// so that `f = f_0 + 2 sum_{n>=1} f_n cos(nx)`.
    Cosine,
    /// Cosine coefficients of `f(a1 + a2 cos t)` for a statistic on `[a,b]`.
    Chebyshev,
}

/// Dense table of expansion coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub repr: Representation,
    pub n_max: usize,
    /// CircleFourier: `values[i]` is `f_l` with `l = i - n_max` (length `2*n_max+1`).
    /// Cosine/Chebyshev: `values[n]` is `f_n` (length `n_max+1`).
    pub values: Vec<Complex64>,
}

impl CoefficientTable {
    pub fn circle(n_max: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != 2 * n_max + 1 {
            return Err(Error::input("circle table length must be 2*n_max+1"));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::input("non-finite coefficient"));
        }
        Ok(Self { repr: Representation::CircleFourier, n_max, values })
    }

    pub fn one_sided(repr: Representation, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("empty coefficient table"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("non-finite coefficient"));
        }
        Ok(Self {
            repr,
            n_max: values.len() - 1,
            values: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        })
    }

    /// Fourier coefficient `f_l`; zero outside the stored range.
    pub fn fourier(&self, l: i64) -> Complex64 {
        debug_assert_eq!(self.repr, Representation::CircleFourier);
        let idx = l + self.n_max as i64;
        if idx < 0 || idx as usize >= self.values.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[idx as usize]
        }
    }

    /// One-sided coefficient `f_n` (cosine/Chebyshev); zero outside the range.
    pub fn cos_coeff(&self, n: usize) -> f64 {
        debug_assert_ne!(self.repr, Representation::CircleFourier);
        self.values.get(n).map(|v| v.re).unwrap_or(0.0)
    }

    /// Largest index with a coefficient above `tol` in magnitude.
    pub fn effective_degree(&self, tol: f64) -> usize {
        match self.repr {
            Representation::CircleFourier => {
                let mut deg = 0;
                for l in 0..=self.n_max as i64 {
                    if self.fourier(l).norm() > tol || self.fourier(-l).norm() > tol {
                        deg = l as usize;
                    }
                }
                deg
            }
            _ => {
                let mut deg = 0;
                for (n, v) in self.values.iter().enumerate() {
                    if v.norm() > tol {
                        deg = n;
                    }
                }
                deg
            }
        }
    }
}

/// Radial profile for planar statistics: a polynomial in `r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialProfile {
    /// ascending coefficients: `p(r) = c_0 + c_1 r + ...`
    pub coeffs: Vec<f64>,
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
    }
    pub fn derivative(&self) -> RadialProfile {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        RadialProfile { coeffs }
    }
}

/// Planar counting region.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum PlanarRegion {
    Disk { radius: f64 },
    /// Axis-aligned square of side `side`, rotated by `angle`, centred at 0.
    Square { side: f64, angle: f64 },
}

impl PlanarRegion {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            PlanarRegion::Disk { radius } => x * x + y * y <= radius * radius,
            PlanarRegion::Square { side, angle } => {
                let (s, c) = angle.sin_cos();
                let u = c * x + s * y;
                let v = -s * x + c * y;
                u.abs() <= 0.5 * side && v.abs() <= 0.5 * side
            }
        }
    }

    pub fn measure(&self) -> f64 {
        match *self {
            PlanarRegion::Disk { radius } => PI * radius * radius,
            PlanarRegion::Square { side, .. } => side * side,
        }
    }
}

/// A test function in one of several exact representations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LinearStatistic {
    /// Band-limited function on the circle given by its Fourier table.
    CircleFourier(CoefficientTable),
    /// Indicator of the arc `[a, b)` in `[0, 2pi)`.
    CircleIndicator { a: f64, b: f64 },
    /// `f = f_0 + 2 sum f_n cos(n x)` on `[0, pi]`.
    HalfCircleCosine(CoefficientTable),
    /// Statistic on `[a, b]` stored as Chebyshev-type cosine coefficients.
    IntervalChebyshev { a: f64, b: f64, table: CoefficientTable },
    /// Real polynomial in `x` (ascending coefficients).
    Polynomial { coeffs: Vec<f64> },
    /// Radially symmetric planar statistic `f(|z|)`.
    PlanarRadial(RadialProfile),
    /// `sum c_{ij} x^i y^j`, stored as (i, j, c).
    PlanarPolynomial { terms: Vec<(u32, u32, f64)> },
    /// Indicator of a planar region.
    PlanarIndicator(PlanarRegion),
    /// Uniform samples of a periodic function on `[0, 2pi)`.
    Grid { samples: Vec<f64> },
}

impl LinearStatistic {
    /// `f(x) = cos(m x)` on the circle.
    pub fn cosine_mode(m: usize) -> Self {
        let n = m.max(1);
        let mut values = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
        if m == 0 {
            values[n] = Complex64::new(1.0, 0.0);
        } else {
            values[0] = Complex64::new(0.5, 0.0); // l = -m
            values[2 * n] = Complex64::new(0.5, 0.0); // l = +m
        }
        LinearStatistic::CircleFourier(CoefficientTable {
            repr: Representation::CircleFourier,
            n_max: n,
            values,
        })
    }

    pub fn poly(coeffs: &[f64]) -> Self {
        LinearStatistic::Polynomial { coeffs: coeffs.to_vec() }
    }

    /// Evaluate on a circle angle in `[0, 2pi)`.
    pub fn eval_angle(&self, theta: f64) -> Result<f64> {
        match self {
            LinearStatistic::CircleFourier(t) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in -(t.n_max as i64)..=(t.n_max as i64) {
                    acc += t.fourier(l) * Complex64::new(0.0, -(l as f64) * theta).exp();
                }
                Ok(acc.re)
            }
            LinearStatistic::CircleIndicator { a, b } => {
                let x = theta.rem_euclid(TAU);
                Ok(if x >= *a && x < *b { 1.0 } else { 0.0 })
            }
            LinearStatistic::HalfCircleCosine(t) => {
                let mut acc = t.cos_coeff(0);
                for n in 1..=t.n_max {
                    acc += 2.0 * t.cos_coeff(n) * (n as f64 * theta).cos();
                }
                Ok(acc)
            }
            LinearStatistic::Grid { samples } => {
                // nearest-node lookup; grids are dense enough by construction
                let m = samples.len();
                let idx = ((theta.rem_euclid(TAU)) / TAU * m as f64).round() as usize % m;
                Ok(samples[idx])
            }
            _ => Err(Error::input("statistic is not defined on circle angles")),
        }
    }

    /// Evaluate on a real point.
    pub fn eval_real(&self, x: f64) -> Result<f64> {
        match self {
            LinearStatistic::Polynomial { coeffs } => {
                Ok(coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c))
            }
            LinearStatistic::IntervalChebyshev { a, b, table } => {
                let alpha1 = 0.5 * (a + b);
                let alpha2 = 0.5 * (b - a);
                let u = ((x - alpha1) / alpha2).clamp(-1.0, 1.0);
                let theta = u.acos();
                let mut acc = table.cos_coeff(0);
                for n in 1..=table.n_max {
                    acc += 2.0 * table.cos_coeff(n) * (n as f64 * theta).cos();
                }
                Ok(acc)
            }
            _ => Err(Error::input("statistic is not defined on the real line")),
        }
    }

    /// Evaluate on a planar point.
    pub fn eval_planar(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            LinearStatistic::PlanarRadial(p) => Ok(p.eval((x * x + y * y).sqrt())),
            LinearStatistic::PlanarPolynomial { terms } => Ok(terms
                .iter()
                .map(|&(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32))
                .sum()),
            LinearStatistic::PlanarIndicator(r) => Ok(if r.contains(x, y) { 1.0 } else { 0.0 }),
            _ => Err(Error::input("statistic is not defined on the plane")),
        }
    }

    /// Parse the JSON descriptor format used by the CLI, e.g.
    /// `{"kind":"cos","m":2}`, `{"kind":"indicator","a":0,"b":3.14}`,
    /// `{"kind":"poly","coeffs":[0,1]}`, `{"kind":"planar_radial","expr":"r^2"}`.
    pub fn from_descriptor(v: &serde_json::Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::input("statistic descriptor needs a \"kind\""))?;
        let getf = |key: &str| -> Result<f64> {
            v.get(key)
                .and_then(|x| x.as_f64())
                .ok_or_else(|| Error::input(format!("descriptor field \"{key}\" missing")))
        };
        match kind {
            "cos" => {
                let m = getf("m")? as usize;
                Ok(LinearStatistic::cosine_mode(m))
            }
            "indicator" => Ok(LinearStatistic::CircleIndicator { a: getf("a")?, b: getf("b")? }),
            "poly" => {
                let coeffs: Vec<f64> = serde_json::from_value(
                    v.get("coeffs").cloned().ok_or_else(|| Error::input("poly needs coeffs"))?,
                )
                .map_err(|e| Error::input(format!("bad coeffs: {e}")))?;
                Ok(LinearStatistic::Polynomial { coeffs })
            }
            "planar_radial" => {
                let expr = v
                    .get("expr")
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| Error::input("planar_radial needs expr"))?;
                Ok(LinearStatistic::PlanarRadial(parse_radial_expr(expr)?))
            }
            "planar_poly" => {
                let terms: Vec<(u32, u32, f64)> = serde_json::from_value(
                    v.get("terms").cloned().ok_or_else(|| Error::input("planar_poly needs terms"))?,
                )
                .map_err(|e| Error::input(format!("bad terms: {e}")))?;
                Ok(LinearStatistic::PlanarPolynomial { terms })
            }
            "disk" => Ok(LinearStatistic::PlanarIndicator(PlanarRegion::Disk { radius: getf("r")? })),
            "square" => Ok(LinearStatistic::PlanarIndicator(PlanarRegion::Square {
                side: getf("side")?,
                angle: v.get("angle").and_then(|x| x.as_f64()).unwrap_or(0.0),
            })),
            other => Err(Error::input(format!("unknown statistic kind \"{other}\""))),
        }
    }
}

/// Parse sums of `c*r^k` terms, e.g. "r^2", "2r^3 - r", "1".
fn parse_radial_expr(expr: &str) -> Result<RadialProfile> {
    let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<f64> = Vec::new();
    let mut add = |p: usize, c: f64| {
        if coeffs.len() <= p {
            coeffs.resize(p + 1, 0.0);
        }
        coeffs[p] += c;
    };
    let normalized = cleaned.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (coef_str, pow) = match term.find('r') {
            None => (term, 0usize),
            Some(i) => {
                let rest = &term[i + 1..];
                let p = if let Some(stripped) = rest.strip_prefix('^') {
                    stripped
                        .parse::<usize>()
                        .map_err(|_| Error::input(format!("bad exponent in \"{expr}\"")))?
                } else if rest.is_empty() {
                    1
                } else {
                    return Err(Error::input(format!("bad radial term \"{term}\"")));
                };
                (&term[..i], p)
            }
        };
        let coef = match coef_str {
            "" => 1.0,
            "-" => -1.0,
            s => {
                let s = s.strip_suffix('*').unwrap_or(s);
                s.parse::<f64>()
                    .map_err(|_| Error::input(format!("bad coefficient in \"{term}\"")))?
            }
        };
        add(pow, coef);
    }
    if coeffs.is_empty() {
        return Err(Error::input(format!("empty radial expression \"{expr}\"")));
    }
    Ok(RadialProfile { coeffs })
}

/// Grid size used by the FFT-based transforms.
fn fft_grid_size(n_max: usize) -> usize {
    let m = (4 * n_max).max(256);
    m.next_power_of_two()
}

/// Fourier coefficients `f_l`, `|l| <= n_max`, of a statistic on the circle.
///
/// Indicators use the closed form; everything else goes through an FFT on a
/// uniform grid (exact for band-limited inputs).
pub fn circle_fourier_coeffs(stat: &LinearStatistic, n_max: usize) -> Result<CoefficientTable> {
    match stat {
        LinearStatistic::CircleIndicator { a, b } => {
            if !(b > a) {
                return Err(Error::input("indicator needs b > a"));
            }
            let mut values = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
            for l in -(n_max as i64)..=(n_max as i64) {
                let idx = (l + n_max as i64) as usize;
                values[idx] = if l == 0 {
                    Complex64::new((b - a) / TAU, 0.0)
                } else {
                    let il = Complex64::new(0.0, l as f64);
                    ((il * *b).exp() - (il * *a).exp()) / (TAU * il)
                };
            }
            CoefficientTable::circle(n_max, values)
        }
        LinearStatistic::CircleFourier(t) => {
            let mut values = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
            for l in -(n_max as i64)..=(n_max as i64) {
                values[(l + n_max as i64) as usize] = t.fourier(l);
            }
            CoefficientTable::circle(n_max, values)
        }
        LinearStatistic::Grid { samples } => {
            circle_fourier_coeffs_of_samples(samples, n_max)
        }
        other => {
            let f = |x: f64| other.eval_angle(x);
            let m = fft_grid_size(n_max);
            let samples: Result<Vec<f64>> = (0..m).map(|j| f(TAU * j as f64 / m as f64)).collect();
            circle_fourier_coeffs_of_samples(&samples?, n_max)
        }
    }
}

/// FFT path shared by the grid/generic cases.
fn circle_fourier_coeffs_of_samples(samples: &[f64], n_max: usize) -> Result<CoefficientTable> {
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::input("non-finite samples"));
    }
    let m = samples.len().max(fft_grid_size(n_max));
    let mut buf: Vec<Complex64> = if samples.len() == m {
        samples.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    } else {
        // resample by trigonometric interpolation is overkill; require callers
        // to provide enough samples
        return Err(Error::input(format!(
            "grid of {} samples too coarse for n_max = {n_max} (need >= {m})",
            samples.len()
        )));
    };
    let fft = FftPlanner::new().plan_fft_inverse(m);
    fft.process(&mut buf);
    // inverse (unnormalised): Y_k = sum_j f_j e^{+2pi i jk/M}; f_l = Y_{l mod M}/M
    let mut values = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
    for l in -(n_max as i64)..=(n_max as i64) {
        let k = l.rem_euclid(m as i64) as usize;
        values[(l + n_max as i64) as usize] = buf[k] / m as f64;
    }
    CoefficientTable::circle(n_max, values)
}

/// Cosine coefficients `f_n = (1/pi) int_0^pi f cos(nx) dx`, `n <= n_max`.
pub fn cosine_coeffs_fn<F: Fn(f64) -> f64>(f: F, n_max: usize) -> Result<CoefficientTable> {
    let m = fft_grid_size(n_max);
    let vals: Vec<f64> = (0..m).map(|j| f(PI * (j as f64 + 0.5) / m as f64)).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::input("non-finite samples in cosine transform"));
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = 0.0;
        for (j, v) in vals.iter().enumerate() {
            acc += v * (n as f64 * PI * (j as f64 + 0.5) / m as f64).cos();
        }
        coeffs.push(acc / m as f64);
    }
    CoefficientTable::one_sided(Representation::Cosine, coeffs)
}

/// Cosine coefficients of a statistic on `[0, pi]`; indicators in closed form.
pub fn cosine_coeffs(stat: &LinearStatistic, n_max: usize) -> Result<CoefficientTable> {
    match stat {
        LinearStatistic::CircleIndicator { a, b } => {
            // interpreted as the indicator of [a,b] inside [0, pi]
            if !(b > a) {
                return Err(Error::input("indicator needs b > a"));
            }
            let mut coeffs = vec![(b - a) / PI];
            for n in 1..=n_max {
                let nf = n as f64;
                coeffs.push(((nf * b).sin() - (nf * a).sin()) / (PI * nf));
            }
            CoefficientTable::one_sided(Representation::Cosine, coeffs)
        }
        LinearStatistic::HalfCircleCosine(t) => {
            let coeffs = (0..=n_max).map(|n| t.cos_coeff(n)).collect();
            CoefficientTable::one_sided(Representation::Cosine, coeffs)
        }
        other => cosine_coeffs_fn(|x| other.eval_angle(x).unwrap_or(f64::NAN), n_max),
    }
}

/// Chebyshev-type coefficients of a statistic on `[a, b]`: the cosine
/// coefficients of `f(a1 + a2 cos t)` with `a1 = (a+b)/2`, `a2 = (b-a)/2`.
pub fn chebyshev_coeffs(stat: &LinearStatistic, a: f64, b: f64, n_max: usize) -> Result<CoefficientTable> {
    if !(a < b) {
        return Err(Error::input(format!("need a < b, got [{a}, {b}]")));
    }
    let alpha1 = 0.5 * (a + b);
    let alpha2 = 0.5 * (b - a);
    let f = |t: f64| -> f64 {
        let x = alpha1 + alpha2 * t.cos();
        match stat {
            LinearStatistic::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
            other => other.eval_real(x).unwrap_or(f64::NAN),
        }
    };
    let mut t = cosine_coeffs_fn(f, n_max)?;
    t.repr = Representation::Chebyshev;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn fourier_of_cos_2x() {
        let stat = LinearStatistic::cosine_mode(2);
        let t = circle_fourier_coeffs(&stat, 8).unwrap();
        assert_relative_eq!(t.fourier(2).re, 0.5, epsilon = 1e-14);
        assert_relative_eq!(t.fourier(-2).re, 0.5, epsilon = 1e-14);
        for l in -8i64..=8 {
            if l.abs() != 2 {
                assert!(t.fourier(l).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn fourier_of_indicator() {
        let ll = 2.3;
        let t = circle_fourier_coeffs(&LinearStatistic::CircleIndicator { a: 0.0, b: ll }, 16).unwrap();
        for l in 1..=16i64 {
            let il = Complex64::new(0.0, l as f64);
            let expect = ((il * ll).exp() - 1.0) / (TAU * il);
            assert!((t.fourier(l) - expect).norm() < 1e-14);
        }
        assert_relative_eq!(t.fourier(0).re, ll / TAU, epsilon = 1e-14);
    }

    #[test]
    fn fourier_of_constant() {
        let mut samples = vec![1.0; 256];
        samples.iter_mut().for_each(|v| *v = 1.0);
        let t = circle_fourier_coeffs(&LinearStatistic::Grid { samples }, 10).unwrap();
        assert_relative_eq!(t.fourier(0).re, 1.0, epsilon = 1e-14);
        for l in 1..=10i64 {
            assert!(t.fourier(l).norm() < 1e-14);
            assert!(t.fourier(-l).norm() < 1e-14);
        }
    }

    #[test]
    fn fft_grid_matches_closed_form_for_smooth() {
        // f = cos 3x + 0.25 sin x as a grid
        let m = 512;
        let samples: Vec<f64> = (0..m)
            .map(|j| {
                let x = TAU * j as f64 / m as f64;
                (3.0 * x).cos() + 0.25 * x.sin()
            })
            .collect();
        let t = circle_fourier_coeffs(&LinearStatistic::Grid { samples }, 6).unwrap();
        assert_relative_eq!(t.fourier(3).re, 0.5, epsilon = 1e-13);
        // sin x = (e^{ix} - e^{-ix})/2i -> f_l with e^{+ilx} weight: f_1 = 1/(2i)*0.25... check Hermitian instead
        assert!((t.fourier(1) - t.fourier(-1).conj()).norm() < 1e-13);
    }

    #[test]
    fn cosine_modes_and_indicator() {
        // f = cos(mx): f_n = delta_{nm}/2
        for m in 1..=4usize {
            let t = cosine_coeffs_fn(|x| (m as f64 * x).cos(), 8).unwrap();
            for n in 0..=8 {
                let expect = if n == m { 0.5 } else { 0.0 };
                assert_relative_eq!(t.cos_coeff(n), expect, epsilon = 1e-13);
            }
        }
        // indicator [L0, L1]
        let (l0, l1) = (0.4, 2.2);
        let t = cosine_coeffs(&LinearStatistic::CircleIndicator { a: l0, b: l1 }, 12).unwrap();
        for n in 1..=12usize {
            let nf = n as f64;
            assert_relative_eq!(
                t.cos_coeff(n),
                ((nf * l1).sin() - (nf * l0).sin()) / (PI * nf),
                epsilon = 1e-13
            );
        }
        // constant
        let t = cosine_coeffs_fn(|_| 3.5, 6).unwrap();
        assert_relative_eq!(t.cos_coeff(0), 3.5, epsilon = 1e-13);
        for n in 1..=6 {
            assert!(t.cos_coeff(n).abs() < 1e-13);
        }
    }

    #[test]
    fn chebyshev_examples() {
        // [-1,1], f = x: f_1 = 1/2
        let t = chebyshev_coeffs(&LinearStatistic::poly(&[0.0, 1.0]), -1.0, 1.0, 6).unwrap();
        assert_relative_eq!(t.cos_coeff(1), 0.5, epsilon = 1e-13);
        assert!(t.cos_coeff(0).abs() < 1e-13);
        // [-1,1], f = x^2: f_0 = 1/2, f_2 = 1/4
        let t = chebyshev_coeffs(&LinearStatistic::poly(&[0.0, 0.0, 1.0]), -1.0, 1.0, 6).unwrap();
        assert_relative_eq!(t.cos_coeff(0), 0.5, epsilon = 1e-13);
        assert_relative_eq!(t.cos_coeff(2), 0.25, epsilon = 1e-13);
        // [0,4], f = x: x = 2 + 2 cos t -> f_0 = 2, f_1 = 1
        let t = chebyshev_coeffs(&LinearStatistic::poly(&[0.0, 1.0]), 0.0, 4.0, 6).unwrap();
        assert_relative_eq!(t.cos_coeff(0), 2.0, epsilon = 1e-13);
        assert_relative_eq!(t.cos_coeff(1), 1.0, epsilon = 1e-13);
        assert!(chebyshev_coeffs(&LinearStatistic::poly(&[1.0]), 2.0, 2.0, 4).is_err());
    }

    #[test]
    fn chebyshev_round_trip_at_nodes() {
        // synthesis at Chebyshev nodes reproduces f
        let (a, b) = (0.5, 3.5);
        let coeffs = [0.3, -1.2, 0.7, 0.05];
        let stat = LinearStatistic::poly(&coeffs);
        let t = chebyshev_coeffs(&stat, a, b, 16).unwrap();
        let synth = LinearStatistic::IntervalChebyshev { a, b, table: t };
        for k in 0..24 {
            let theta = PI * (k as f64 + 0.5) / 24.0;
            let x = 0.5 * (a + b) + 0.5 * (b - a) * theta.cos();
            assert_relative_eq!(
                synth.eval_real(x).unwrap(),
                stat.eval_real(x).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn radial_expr_parser() {
        let p = parse_radial_expr("r^2").unwrap();
        assert_eq!(p.coeffs, vec![0.0, 0.0, 1.0]);
        let p = parse_radial_expr("2r^3 - r + 1").unwrap();
        assert_eq!(p.coeffs, vec![1.0, -1.0, 0.0, 2.0]);
        let p = parse_radial_expr("1").unwrap();
        assert_eq!(p.coeffs, vec![1.0]);
        assert!(parse_radial_expr("r^x").is_err());
    }

    #[test]
    fn descriptor_parsing() {
        let v: serde_json::Value = serde_json::from_str(r#"{"kind":"cos","m":2}"#).unwrap();
        let s = LinearStatistic::from_descriptor(&v).unwrap();
        assert_relative_eq!(s.eval_angle(0.7).unwrap(), (1.4f64).cos(), epsilon = 1e-12);

        let v: serde_json::Value =
            serde_json::from_str(r#"{"kind":"poly","coeffs":[0,1]}"#).unwrap();
        let s = LinearStatistic::from_descriptor(&v).unwrap();
        assert_relative_eq!(s.eval_real(2.5).unwrap(), 2.5, epsilon = 1e-14);

        let v: serde_json::Value =
            serde_json::from_str(r#"{"kind":"planar_radial","expr":"r^2"}"#).unwrap();
        let s = LinearStatistic::from_descriptor(&v).unwrap();
        assert_relative_eq!(s.eval_planar(3.0, 4.0).unwrap(), 25.0, epsilon = 1e-12);
    }

    proptest! {
        /// Hermitian symmetry of real-statistic Fourier tables.
        #[test]
        fn fourier_tables_hermitian(seed in 0u64..500) {
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut next = || {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            };
            let m = 256;
            let c: Vec<f64> = (0..5).map(|_| next()).collect();
            let samples: Vec<f64> = (0..m).map(|j| {
                let x = TAU * j as f64 / m as f64;
                c[0] + c[1]*(x).cos() + c[2]*(2.0*x).sin() + c[3]*(5.0*x).cos() + c[4]*(3.0*x).sin()
            }).collect();
            let t = circle_fourier_coeffs(&LinearStatistic::Grid { samples }, 12).unwrap();
            for l in 0..=12i64 {
                prop_assert!((t.fourier(-l) - t.fourier(l).conj()).norm() < 1e-12);
            }
        }

        /// Parseval for band-limited grids: (1/2pi) int |f|^2 = sum |f_l|^2.
        #[test]
        fn parseval(seed in 0u64..500) {
            let mut state = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(3);
            let mut next = || {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            };
            let m = 512;
            let c: Vec<f64> = (0..6).map(|_| next()).collect();
            let f = |x: f64| c[0] + c[1]*x.cos() + c[2]*x.sin() + c[3]*(4.0*x).cos() + c[4]*(7.0*x).sin() + c[5]*(2.0*x).cos();
            let samples: Vec<f64> = (0..m).map(|j| f(TAU * j as f64 / m as f64)).collect();
            let t = circle_fourier_coeffs(&LinearStatistic::Grid { samples }, 10).unwrap();
            let lhs = crate::quad::integrate_periodic(|x| f(x)*f(x), 1024) / TAU;
            let rhs: f64 = (-10i64..=10).map(|l| t.fourier(l).norm_sqr()).sum();
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
