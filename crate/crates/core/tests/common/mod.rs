//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use gravtangle_core::qstate::PureState;
use gravtangle_core::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn ghz3() -> PureState {
    let mut a = vec![c(0.0, 0.0); 8];
    a[0] = c(FRAC_1_SQRT_2, 0.0);
    a[7] = c(FRAC_1_SQRT_2, 0.0);
    PureState::new(3, a).unwrap()
}

pub fn w3() -> PureState {
    let s = 1.0 / 3f64.sqrt();
    let mut a = vec![c(0.0, 0.0); 8];
    for b in [1, 2, 4] {
        a[b] = c(s, 0.0);
    }
    PureState::new(3, a).unwrap()
}

/// `|1⟩ ⊗ (|00⟩+|11⟩)/√2`.
pub fn biseparable3() -> PureState {
    let mut a = vec![c(0.0, 0.0); 8];
    a[0b100] = c(FRAC_1_SQRT_2, 0.0);
    a[0b111] = c(FRAC_1_SQRT_2, 0.0);
    PureState::new(3, a).unwrap()
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    c(gaussian(rng), gaussian(rng))
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> PureState {
    let a = (0..1 << n).map(|_| random_complex(rng)).collect();
    PureState::new(n, a).unwrap().normalized()
}

pub fn random_unitary(rng: &mut ChaCha8Rng) -> [[Complex64; 2]; 2] {
    let a = random_complex(rng);
    let b = random_complex(rng);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / norm, b / norm);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
    [[a, -b.conj() * phase], [b, a.conj() * phase]]
}

/// A random 2×2 matrix with `|det| ≥ 0.3` and entries of order one.
pub fn random_invertible(rng: &mut ChaCha8Rng) -> [[Complex64; 2]; 2] {
    loop {
        let m = [[random_complex(rng), random_complex(rng)], [random_complex(rng), random_complex(rng)]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let big = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if det.norm() >= 0.3 && big <= 3.0 {
            return m;
        }
    }
}

pub fn apply_local(psi: &PureState, ops: &[[[Complex64; 2]; 2]]) -> PureState {
    let mut out = psi.clone();
    for (q, m) in ops.iter().enumerate() {
        out = out.apply_single_qubit(q, *m).unwrap();
    }
    out
}

/// Coefficients `[c₀, …, c_{n−1}, 1]` of `det(λI − A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut coeffs = vec![c(0.0, 0.0); n + 1];
    coeffs[n] = c(1.0, 0.0);
    let mut m = vec![c(0.0, 0.0); n * n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        let mut next = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = c(0.0, 0.0);
                for l in 0..n {
                    s += a[i * n + l] * m[l * n + j];
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += coeffs[n - k + 1];
        }
        m = next;
        // c_{n−k} = −tr(A M_k)/k
        let mut tr = c(0.0, 0.0);
        for i in 0..n {
            for l in 0..n {
                tr += a[i * n + l] * m[l * n + i];
            }
        }
        coeffs[n - k] = -tr / k as f64;
    }
    coeffs
}

/// Coefficients of `Π (λ − rᵢ)`, same layout as [`char_poly`].
pub fn poly_from_roots(roots: &[f64]) -> Vec<Complex64> {
    let mut p = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![c(0.0, 0.0); p.len() + 1];
        for (k, &x) in p.iter().enumerate() {
            next[k + 1] += x;
            next[k] -= x * r;
        }
        p = next;
    }
    p
}

/// Closed-form `|⟨φ|ψ⟩|²` for the symmetric family with `Δφ₂ = Δφ₃` and
/// `φ = (cos α|0⟩ + e^{iθ} sin α|1⟩)^{⊗3}`.
pub fn abs2_closed_form(alpha: f64, theta: f64, dphi3: f64) -> f64 {
    let (s, co) = alpha.sin_cos();
    (co.powi(6)
        + co.powi(5) * s * (6.0 * (dphi3 - theta).cos())
        + co.powi(4) * s.powi(2) * (6.0 * (dphi3 - 2.0 * theta).cos() + 9.0)
        + co.powi(3) * s.powi(3) * (18.0 * theta.cos() + 2.0 * (3.0 * theta).cos())
        + co.powi(2) * s.powi(4) * (6.0 * (dphi3 + 2.0 * theta).cos() + 9.0)
        + co * s.powi(5) * (6.0 * (dphi3 + theta).cos())
        + s.powi(6))
        / 8.0
}

/// Maximal product overlap of a three-qubit state by exhaustive search.
///
/// The first qubit's `(α, θ)` runs over a grid of spacing `π/steps_per_pi`;
/// for each grid point the remaining two-qubit vector is exactly maximized,
/// its best product overlap being the largest squared singular value of the
/// contracted 2×2 matrix.
pub fn gm_grid_oracle(psi: &PureState, steps_per_pi: usize) -> f64 {
    let a = psi.amplitudes();
    let h = PI / steps_per_pi as f64;
    let n_alpha = (FRAC_PI_2 / h).round() as usize;
    let n_theta = 2 * steps_per_pi;
    let mut best: f64 = 0.0;
    for i in 0..=n_alpha {
        let (s, co) = (h * i as f64).sin_cos();
        for j in 0..n_theta {
            let v1 = Complex64::from_polar(s, h * j as f64).conj();
            let m: Vec<Complex64> = (0..4).map(|k| a[k] * co + a[4 + k] * v1).collect();
            let fro: f64 = m.iter().map(|z| z.norm_sqr()).sum();
            let det = (m[0] * m[3] - m[1] * m[2]).norm();
            let smax2 = 0.5 * (fro + (fro * fro - 4.0 * det * det).max(0.0).sqrt());
            best = best.max(smax2);
        }
    }
    best / psi.norm_sqr()
}
