//! Dense and structured eigenvalue kernels.
//!
//! Dense nonsymmetric/Hermitian problems go to LAPACK (via ndarray-linalg and
//! the system OpenBLAS). Two structured kernels are hand-rolled because the
//! samplers depend on their complexity class:
//!
//! - symmetric tridiagonal eigenvalues (implicit-shift QL, eigenvalues only,
//!   O(N^2)) for the tridiagonal/bidiagonal beta-ensemble models;
//! - eigenangles of unitary matrices in O(N^2) after a Hessenberg reduction,
//!   through the Schur-parameter (Verblunsky coefficient) form and a
//!   unit-circle rootfinder for the paraorthogonal characteristic polynomial.

use crate::error::{Error, Result};
use ndarray::Array2;
use ndarray_linalg::{Determinant, EigVals, EigValsh, QR, UPLO};
use num_complex::Complex64;

type C64 = Complex64;

/// Complex general eigenvalues (zgeev).
pub fn eigvals_complex(a: &Array2<C64>) -> Result<Vec<C64>> {
    let ev = a.eigvals().map_err(|e| Error::Linalg(format!("zgeev: {e}")))?;
    Ok(ev.to_vec())
}

/// Real nonsymmetric eigenvalues (dgeev), as complex numbers.
pub fn eigvals_real(a: &Array2<f64>) -> Result<Vec<C64>> {
    let ev = a.eigvals().map_err(|e| Error::Linalg(format!("dgeev: {e}")))?;
    Ok(ev.to_vec())
}

/// Hermitian eigenvalues (zheev), ascending.
pub fn eigvalsh_complex(a: &Array2<C64>) -> Result<Vec<f64>> {
    let ev = a
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Linalg(format!("zheev: {e}")))?;
    Ok(ev.to_vec())
}

/// Real symmetric eigenvalues (dsyev), ascending.
pub fn eigvalsh_real(a: &Array2<f64>) -> Result<Vec<f64>> {
    let ev = a
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Linalg(format!("dsyev: {e}")))?;
    Ok(ev.to_vec())
}

/// Complex matrix product through cblas zgemm (ndarray's fallback is naive
/// for complex element types).
pub fn matmul_c64(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    use cblas_sys::{cblas_zgemm, CBLAS_LAYOUT, CBLAS_TRANSPOSE};
    let (m, k) = a.dim();
    let n = b.dim().1;
    assert_eq!(k, b.dim().0, "inner dimensions must agree");
    let a = a.as_standard_layout();
    let b = b.as_standard_layout();
    let mut c = Array2::<C64>::zeros((m, n));
    let one = [1.0f64, 0.0];
    let zero = [0.0f64, 0.0];
    unsafe {
        cblas_zgemm(
            CBLAS_LAYOUT::CblasRowMajor,
            CBLAS_TRANSPOSE::CblasNoTrans,
            CBLAS_TRANSPOSE::CblasNoTrans,
            m as i32,
            n as i32,
            k as i32,
            one.as_ptr() as *const _,
            a.as_ptr() as *const _,
            k as i32,
            b.as_ptr() as *const _,
            n as i32,
            zero.as_ptr() as *const _,
            c.as_mut_ptr() as *mut _,
            n as i32,
        );
    }
    c
}

/// Haar-distributed unitary matrix: QR of a standard complex Gaussian with
/// the R-diagonal phase correction.
pub fn haar_unitary<R: rand::Rng>(n: usize, rng: &mut R) -> Result<Array2<C64>> {
    use rand_distr::{Distribution, StandardNormal};
    let g = Array2::from_shape_fn((n, n), |_| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let (mut q, r) = g.qr().map_err(|e| Error::Linalg(format!("zgeqrf: {e}")))?;
    for k in 0..n {
        let d = r[[k, k]];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        q.column_mut(k).iter_mut().for_each(|v| *v *= phase);
    }
    Ok(q)
}

/// Haar-distributed special orthogonal matrix (det = +1).
pub fn haar_special_orthogonal<R: rand::Rng>(n: usize, rng: &mut R) -> Result<Array2<f64>> {
    use rand_distr::{Distribution, StandardNormal};
    let g = Array2::from_shape_fn((n, n), |_| {
        let x: f64 = StandardNormal.sample(rng);
        x
    });
    let (mut q, r) = g.qr().map_err(|e| Error::Linalg(format!("dgeqrf: {e}")))?;
    for k in 0..n {
        if r[[k, k]] < 0.0 {
            q.column_mut(k).iter_mut().for_each(|v| *v = -*v);
        }
    }
    let det = q.det().map_err(|e| Error::Linalg(format!("det: {e}")))?;
    if det < 0.0 {
        let last = n - 1;
        q.column_mut(last).iter_mut().for_each(|v| *v = -*v);
    }
    Ok(q)
}

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// algorithm, eigenvalues only (O(N^2)). `diag` has length n, `offdiag` n-1.
pub fn symtridiag_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if offdiag.len() + 1 != n {
        return Err(Error::input("offdiag must have length n-1"));
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            // first negligible off-diagonal at or after l
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence(format!(
                    "tridiagonal QL stalled at index {l}"
                )));
            }
            // implicit shift from the 2x2 at l
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Householder reduction of a complex matrix to upper Hessenberg form
/// (similarity; the transform is not accumulated).
fn hessenberg_in_place(a: &mut Array2<C64>) {
    let n = a.nrows();
    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in (k + 1)..n {
            norm2 += a[[i, k]].norm_sqr();
        }
        if norm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[[k + 1, k]];
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm2.sqrt()
        } else {
            C64::new(-norm2.sqrt(), 0.0)
        };
        // v = x - alpha e1
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[[i, k]]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // A <- (I - beta v v^H) A on rows k+1..n
        for j in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * a[[k + 1 + t, j]];
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                a[[k + 1 + t, j]] -= vi * dot;
            }
        }
        // A <- A (I - beta v v^H) on columns k+1..n
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += a[[i, k + 1 + t]] * *vi;
            }
            dot *= beta;
            for (t, vi) in v.iter().enumerate() {
                a[[i, k + 1 + t]] -= dot * vi.conj();
            }
        }
        a[[k + 1, k]] = alpha;
        for i in (k + 2)..n {
            a[[i, k]] = C64::new(0.0, 0.0);
        }
    }
}

/// Diagonal-phase similarity making every subdiagonal entry real nonnegative.
fn normalize_subdiagonals(a: &mut Array2<C64>) {
    let n = a.nrows();
    let mut cum = vec![C64::new(1.0, 0.0); n];
    for j in 1..n {
        let h = a[[j, j - 1]] * cum[j - 1].conj();
        let m = h.norm();
        cum[j] = if m > 0.0 { (h / m).conj() } else { cum[j - 1] };
    }
    for i in 0..n {
        for j in 0..n {
            a[[i, j]] = cum[i] * a[[i, j]] * cum[j].conj();
        }
    }
}

/// Extract the Verblunsky (Schur) parameters of a unitary upper Hessenberg
/// matrix with nonnegative subdiagonals.
///
/// Such a matrix has entries
/// `H[k][j] = -conj(alpha_j) alpha_{k-1} prod_{i=k..j-1} rho_i` for `k <= j`
/// (with `alpha_{-1} = -1`, `rho_i = sqrt(1-|alpha_i|^2)`) and
/// `H[j+1][j] = rho_j`; the extraction inverts these relations column by
/// column, using the best-conditioned row each time.
fn verblunsky_from_hessenberg(a: &Array2<C64>) -> Result<Vec<C64>> {
    let n = a.nrows();
    let mut alphas: Vec<C64> = Vec::with_capacity(n);
    // w[k] = alpha_{k-1} * prod_{i=k..j-1} rho_i, maintained as j advances
    let mut w: Vec<C64> = vec![C64::new(-1.0, 0.0)];
    for j in 0..n {
        let (k_best, w_best) = w
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
            .map(|(k, v)| (k, *v))
            .unwrap();
        if w_best.norm() < 1e-250 {
            alphas.push(C64::new(0.0, 0.0));
        } else {
            let alpha_conj = -a[[k_best, j]] / w_best;
            let mut alpha = alpha_conj.conj();
            let m = alpha.norm();
            if m > 1.0 + 1e-6 {
                return Err(Error::NonConvergence(format!(
                    "Schur parameter {j} has modulus {m:.3e}"
                )));
            }
            if m > 1.0 {
                alpha /= m;
            }
            alphas.push(alpha);
        }
        if j + 1 < n {
            let rho = a[[j + 1, j]].re.max(0.0);
            for v in w.iter_mut() {
                *v *= rho;
            }
            w.push(alphas[j]);
        }
    }
    let m = alphas[n - 1].norm();
    if (m - 1.0).abs() > 1e-6 {
        return Err(Error::NonConvergence(format!(
            "final Schur parameter has modulus {m:.6}, expected 1"
        )));
    }
    alphas[n - 1] /= m;
    Ok(alphas)
}

/// Evaluate the paraorthogonal polynomial `Phi_N(e^{i theta})` through the
/// Szego recurrence, rescaled (by positive factors only) to dodge overflow.
fn phi_scaled(theta: f64, alphas: &[C64]) -> C64 {
    let z = C64::new(0.0, theta).exp();
    let mut phi = C64::new(1.0, 0.0);
    let mut phis = C64::new(1.0, 0.0);
    for a in alphas {
        let nphi = z * phi - a.conj() * phis;
        let nphis = phis - *a * z * phi;
        phi = nphi;
        phis = nphis;
        let m = phi.norm().max(phis.norm());
        if m > 1e100 {
            phi /= m;
            phis /= m;
        }
    }
    phi
}

/// Zeros of the paraorthogonal polynomial on the unit circle, i.e. the
/// eigenangles of the unitary Hessenberg matrix with Verblunsky parameters
/// `alphas` (last one unimodular). Sorted, in [0, 2pi).
pub fn paraorthogonal_roots(alphas: &[C64]) -> Result<Vec<f64>> {
    let n = alphas.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let tau = std::f64::consts::TAU;
    // h(theta) = Re[e^{-iN theta/2} Phi(e^{i theta}) conj(u)] is proportional
    // to prod_j sin((theta - theta_j)/2): real, sign change at each root
    let half = n as f64 / 2.0;
    let sign_flip = if n % 2 == 1 { -1.0 } else { 1.0 };
    for mult in [8usize, 16, 32, 64, 128] {
        let m = mult * n;
        let step = tau / m as f64;
        let mut vals: Vec<C64> = Vec::with_capacity(m);
        for i in 0..m {
            let th = i as f64 * step;
            vals.push(C64::new(0.0, -half * th).exp() * phi_scaled(th, alphas));
        }
        let u = {
            let vmax = vals
                .iter()
                .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
                .unwrap();
            if vmax.norm() == 0.0 {
                continue;
            }
            *vmax / vmax.norm()
        };
        let h: Vec<f64> = vals.iter().map(|v| (v * u.conj()).re).collect();
        let h_at =
            |th: f64| (C64::new(0.0, -half * th).exp() * phi_scaled(th, alphas) * u.conj()).re;
        let mut roots = Vec::with_capacity(n);
        for i in 0..m {
            let hi = h[i];
            let hj = if i + 1 < m { h[i + 1] } else { sign_flip * h[0] };
            if hi == 0.0 {
                roots.push(i as f64 * step);
            } else if hi * hj < 0.0 {
                let mut a = i as f64 * step;
                let mut b = a + step;
                let mut fa = hi;
                for _ in 0..52 {
                    let mid = 0.5 * (a + b);
                    let fm = h_at(mid);
                    if fa * fm <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                roots.push(0.5 * (a + b));
            }
        }
        if roots.len() == n {
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            return Ok(roots);
        }
    }
    Err(Error::NonConvergence(
        "root count mismatch for paraorthogonal polynomial after grid refinement".into(),
    ))
}

/// Eigenangles of a unitary matrix in [0, 2pi), via Hessenberg reduction and
/// the Schur-parameter rootfinder; falls back to LAPACK if the structured
/// path reports inconsistency.
pub fn unitary_eigenangles(u: &Array2<C64>) -> Result<Vec<f64>> {
    let n = u.nrows();
    if n == 1 {
        return Ok(vec![u[[0, 0]].arg().rem_euclid(std::f64::consts::TAU)]);
    }
    let mut h = u.clone();
    hessenberg_in_place(&mut h);
    normalize_subdiagonals(&mut h);
    match verblunsky_from_hessenberg(&h).and_then(|al| paraorthogonal_roots(&al)) {
        Ok(roots) => Ok(roots),
        Err(_) => {
            let ev = eigvals_complex(u)?;
            Ok(angles_sorted(&ev))
        }
    }
}

/// Unitary Hessenberg (GGT) matrix of a Verblunsky sequence; inverse of the
/// extraction above, used for cross-validation.
pub fn hessenberg_from_verblunsky(alphas: &[C64]) -> Array2<C64> {
    let n = alphas.len();
    let alpha_prev = |k: usize| if k == 0 { C64::new(-1.0, 0.0) } else { alphas[k - 1] };
    let rho: Vec<f64> = alphas.iter().map(|a| (1.0 - a.norm_sqr()).max(0.0).sqrt()).collect();
    let mut h = Array2::<C64>::zeros((n, n));
    for j in 0..n {
        for k in 0..=j {
            let mut prod = C64::new(1.0, 0.0);
            for r in rho.iter().take(j).skip(k) {
                prod *= *r;
            }
            h[[k, j]] = -alphas[j].conj() * alpha_prev(k) * prod;
        }
        if j + 1 < n {
            h[[j + 1, j]] = C64::new(rho[j], 0.0);
        }
    }
    h
}

/// Sorted angles of a complex spectrum.
pub fn angles_sorted(ev: &[C64]) -> Vec<f64> {
    let mut a: Vec<f64> = ev.iter().map(|z| z.arg().rem_euclid(std::f64::consts::TAU)).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    a
}
