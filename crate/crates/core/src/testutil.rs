//! Random states and local operators for unit tests.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::qstate::PureState;

pub(crate) fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (TAU * v).cos()
}

pub(crate) fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub(crate) fn random_state(n: usize, rng: &mut ChaCha8Rng) -> PureState {
    let a: Vec<Complex64> = (0..1 << n).map(|_| random_complex(rng)).collect();
    PureState::new(n, a).unwrap().normalized()
}

pub(crate) fn random_unitary(rng: &mut ChaCha8Rng) -> [[Complex64; 2]; 2] {
    let a = random_complex(rng);
    let b = random_complex(rng);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / norm, b / norm);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
    [[a, -b.conj() * phase], [b, a.conj() * phase]]
}

pub(crate) fn random_local_unitary(psi: &PureState, rng: &mut ChaCha8Rng) -> PureState {
    let mut out = psi.clone();
    for q in 0..psi.n_qubits() {
        out = out.apply_single_qubit(q, random_unitary(rng)).unwrap();
    }
    out
}
