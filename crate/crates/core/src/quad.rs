//! Adaptive Gauss-Kronrod quadrature (7-15 pair) with interval bisection.
//!
//! Used for the brute-force oracles, the structure-function integrals and the
//! numeric cross-checks of the closed-form covariances. Multi-dimensional
//! integrals are iterated, each level adaptive.

use crate::error::{Error, Result};

// Nodes/weights of the 15-point Kronrod rule with embedded 7-point Gauss rule,
// on [-1, 1]. Standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526,
    0.949107912342758524526189684048,
    0.864864423359769072789712788641,
    0.741531185599394439863864773281,
    0.586087235467691130294144838259,
    0.405845151377397166906606412077,
    0.207784955007898467600689403773,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 evaluation on [a, b]; returns (kronrod, |kronrod - gauss|).
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut res_k = 0.0;
    let mut res_g = 0.0;
    for i in 0..8 {
        let x = XGK[i] * h;
        let (fl, fr) = if i == 7 {
            let v = f(c);
            (v, 0.0)
        } else {
            (f(c - x), f(c + x))
        };
        let s = fl + fr;
        res_k += WGK[i] * s;
        if i % 2 == 1 {
            res_g += WG[i / 2] * s;
        } else if i == 7 {
            res_g += WG[3] * s;
        }
    }
    res_k *= h;
    res_g *= h;
    (res_k, (res_k - res_g).abs())
}

/// Adaptive integration of `f` over [a, b] to absolute tolerance `tol`.
///
/// `cap` bounds the number of integrand evaluations; exceeding it is a
/// precision error per the oracle contract.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64, cap: usize) -> Result<f64> {
    integrate_with(&mut f, a, b, tol, &mut Evals { used: 0, cap })
}

pub(crate) struct Evals {
    pub used: usize,
    pub cap: usize,
}

pub(crate) fn integrate_with<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    evals: &mut Evals,
) -> Result<f64> {
    // Worst-interval-first bisection over (error, a, b, value) segments.
    let (v, e) = gk15(f, a, b);
    evals.used += 15;
    let mut segs = vec![(e, a, b, v)];
    let mut total_err = e;
    while total_err > tol {
        if evals.used >= evals.cap {
            return Err(Error::Precision(format!(
                "quadrature cap of {} evaluations hit (err {:.3e} > tol {:.3e})",
                evals.cap, total_err, tol
            )));
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .0.partial_cmp(&y.1 .0).unwrap())
            .unwrap();
        let (err, sa, sb, val) = segs.swap_remove(idx);
        let mid = 0.5 * (sa + sb);
        if mid <= sa || mid >= sb {
            // interval exhausted at machine precision; accept its value
            total_err -= err;
            segs.push((0.0, sa, sb, val));
            if segs.iter().all(|s| s.0 == 0.0) {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(f, sa, mid);
        let (v2, e2) = gk15(f, mid, sb);
        evals.used += 30;
        total_err += e1 + e2 - err;
        segs.push((e1, sa, mid, v1));
        segs.push((e2, mid, sb, v2));
    }
    Ok(segs.iter().map(|s| s.3).sum())
}

/// Integrate over the whole real line via the substitution x = t/(1-t^2).
pub fn integrate_real_line<F: FnMut(f64) -> f64>(mut f: F, tol: f64, cap: usize) -> Result<f64> {
    integrate(
        |t| {
            let d = 1.0 - t * t;
            let x = t / d;
            let jac = (1.0 + t * t) / (d * d);
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v * jac
            }
        },
        -1.0 + 1e-12,
        1.0 - 1e-12,
        tol,
        cap,
    )
}

/// Integrate over [0, inf) via x = t/(1-t).
pub fn integrate_half_line<F: FnMut(f64) -> f64>(mut f: F, tol: f64, cap: usize) -> Result<f64> {
    integrate(
        |t| {
            let d = 1.0 - t;
            let x = t / d;
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v / (d * d)
            }
        },
        0.0,
        1.0 - 1e-12,
        tol,
        cap,
    )
}

/// Iterated 2-D adaptive integration over [a1,b1] x [a2,b2].
pub fn integrate2<F>(mut f: F, a1: f64, b1: f64, a2: f64, b2: f64, tol: f64, cap: usize) -> Result<f64>
where
    F: FnMut(f64, f64) -> f64,
{
    use std::cell::Cell;
    let used = Cell::new(0usize);
    let inner_tol = tol / (b1 - a1).abs().max(1.0) / 4.0;
    let mut err: Option<Error> = None;
    let mut outer = Evals { used: 0, cap };
    let res = {
        let used_ref = &used;
        let err_ref = &mut err;
        let f_ref = &mut f;
        integrate_with(
            &mut |x| {
                if err_ref.is_some() {
                    return 0.0;
                }
                let mut inner = Evals { used: 0, cap: cap.saturating_sub(used_ref.get()) };
                match integrate_with(&mut |y| f_ref(x, y), a2, b2, inner_tol, &mut inner) {
                    Ok(v) => {
                        used_ref.set(used_ref.get() + inner.used);
                        v
                    }
                    Err(e) => {
                        *err_ref = Some(e);
                        0.0
                    }
                }
            },
            a1,
            b1,
            tol,
            &mut outer,
        )
    };
    match err {
        Some(e) => Err(e),
        None => res,
    }
}

/// Uniform trapezoid rule over one period for smooth periodic integrands
/// (spectrally accurate); `m` panels on [0, 2*pi).
pub fn integrate_periodic<F: FnMut(f64) -> f64>(mut f: F, m: usize) -> f64 {
    let h = std::f64::consts::TAU / m as f64;
    let mut s = 0.0;
    for j in 0..m {
        s += f(j as f64 * h);
    }
    s * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 10_000).unwrap();
        assert_relative_eq!(v, 20.0 - 8.0 + 4.0, epsilon = 1e-10); // 16
    }

    #[test]
    fn singular_endpoint() {
        // integral of 1/sqrt(x) over (0,1] = 2
        let v = integrate(|x| if x > 0.0 { x.sqrt().recip() } else { 0.0 }, 0.0, 1.0, 1e-9, 2_000_000).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-7);
    }

    #[test]
    fn gaussian_real_line() {
        let v = integrate_real_line(|x| (-x * x).exp(), 1e-11, 1_000_000).unwrap();
        assert_relative_eq!(v, PI.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn exp_half_line() {
        let v = integrate_half_line(|x| (-x).exp(), 1e-11, 1_000_000).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn two_dimensional() {
        let v = integrate2(|x, y| (x * y).sin().powi(2), 0.0, 1.0, 0.0, 2.0, 1e-9, 4_000_000).unwrap();
        // reference computed with the 1-D routine applied twice at tighter tolerance
        let r = integrate(
            |x| integrate(|y| (x * y).sin().powi(2), 0.0, 2.0, 1e-12, 1_000_000).unwrap(),
            0.0,
            1.0,
            1e-12,
            1_000_000,
        )
        .unwrap();
        assert_relative_eq!(v, r, epsilon = 1e-8);
    }

    #[test]
    fn cap_is_enforced() {
        let r = integrate(|x| (1e6 * x).sin() / (x.abs() + 1e-12).sqrt(), 0.0, 1.0, 1e-14, 500);
        assert!(matches!(r, Err(crate::error::Error::Precision(_))));
    }

    #[test]
    fn periodic_trapezoid_spectral() {
        let v = integrate_periodic(|x| (3.0 * x).cos().powi(2), 256);
        assert_relative_eq!(v, PI, epsilon = 1e-12);
    }
}
