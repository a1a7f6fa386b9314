//! Complex determinants and the lower-triangular log-det identity.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sampling::{cgauss, stream_rng};

/// Relative tolerance for the log-det identity.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Determinant by LU factorization with partial pivoting. `a` is row-major
/// `n x n`.
pub fn det(mut a: Vec<Complex64>, n: usize) -> Complex64 {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm())).unwrap();
        if a[piv * n + k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let d = a[k * n + k];
        det *= d;
        for i in k + 1..n {
            let f = a[i * n + k] / d;
            if f != Complex64::new(0.0, 0.0) {
                for j in k + 1..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= f * v;
                }
            }
        }
    }
    det
}

/// `I_n + L[:, :n]^H diag(d) L[:, :n]` for a row-major `m x cols` matrix `l`.
fn gram_plus_identity(l: &[Complex64], d: &[f64], m: usize, cols: usize, n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in 0..n {
            let mut s = Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0);
            for i in 0..m {
                s += l[i * cols + j].conj() * d[i] * l[i * cols + k];
            }
            out[j * n + k] = s;
        }
    }
    out
}

/// Relative gap between `det(I_T + L^H D L)` and `det(I_M + L_M^H D L_M)` for
/// one random lower-triangular `L` and positive diagonal `D`.
pub fn logdet_identity_error(m: usize, t: usize, seed: u64) -> Result<f64> {
    if !(m >= 1 && t > m) {
        return Err(Error::param(format!("need T > M >= 1, got M = {m}, T = {t}")));
    }
    let mut rng = stream_rng(seed, 0);
    let mut l = vec![Complex64::new(0.0, 0.0); m * t];
    for i in 0..m {
        for j in 0..=i {
            l[i * t + j] = cgauss(&mut rng, 1.0);
        }
    }
    let d: Vec<f64> = (0..m).map(|_| 10f64.powf(rng.random_range(-1.0..1.0))).collect();
    let full = det(gram_plus_identity(&l, &d, m, t, t), t);
    let small = det(gram_plus_identity(&l, &d, m, t, m), m);
    Ok((full - small).norm() / small.norm())
}

pub fn logdet_identity_check(m: usize, t: usize, seed: u64) -> Result<bool> {
    Ok(logdet_identity_error(m, t, seed)? < IDENTITY_TOL)
}
