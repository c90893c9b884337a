//! Small dense kernels: cyclic Jacobi for Hermitian matrices and the singular
//! values of a two-row matrix.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub(crate) const JACOBI_TOL: f64 = 1e-12;
pub(crate) const JACOBI_MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &[Complex64], dim: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                s += a[i * dim + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a Hermitian matrix (row-major, `dim × dim`), unsorted.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal unitary
/// and then applies the real Jacobi rotation that zeroes the pair.
pub(crate) fn jacobi_eigenvalues(matrix: &[Complex64], dim: usize) -> Vec<f64> {
    let mut a = matrix.to_vec();
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, dim) < JACOBI_TOL {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let z = a[p * dim + q];
                let r = z.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = z / r;
                let app = a[p * dim + p].re;
                let aqq = a[q * dim + q].re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                // U = diag(1, conj(phase)) · [[c, -s], [s, c]]
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(-s, 0.0);
                let u_qp = phase.conj() * s;
                let u_qq = phase.conj() * c;
                // A <- A U
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = akp * u_pp + akq * u_qp;
                    a[k * dim + q] = akp * u_pq + akq * u_qq;
                }
                // A <- U† A
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * dim + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * dim + q] = Complex64::new(0.0, 0.0);
                a[q * dim + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    (0..dim).map(|i| a[i * dim + i].re).collect()
}

/// Singular values `(σ₁, σ₂)`, `σ₁ ≥ σ₂`, of the matrix with rows `a` and `b`.
///
/// `σ₂` is obtained from `σ₁σ₂ = ‖a‖·‖b − proj_a b‖`, which keeps its
/// relative accuracy when the rows are nearly parallel.
pub(crate) fn two_row_singular_values(a: &[Complex64], b: &[Complex64]) -> (f64, f64) {
    let na2: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let nb2: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let (big, small, nbig2) = if na2 >= nb2 { (a, b, na2) } else { (b, a, nb2) };
    let total = na2 + nb2;
    if nbig2 == 0.0 {
        return (0.0, 0.0);
    }
    let proj: Complex64 = big.iter().zip(small).map(|(x, y)| x.conj() * y).sum::<Complex64>() / nbig2;
    let resid2: f64 = big.iter().zip(small).map(|(x, y)| (y - proj * x).norm_sqr()).sum();
    let det = nbig2.sqrt() * resid2.sqrt();
    let disc = (total * total - 4.0 * det * det).max(0.0);
    let s1 = ((total + disc.sqrt()) / 2.0).sqrt();
    let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
    (s1, s2)
}
