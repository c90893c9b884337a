//! SLOCC classification of three-qubit states.
//!
//! Two independent routes are combined: the Schmidt ranks of the three
//! one-versus-two cuts together with the 3-tangle (valid for any state), and
//! the range-space/product-root analysis that applies to the symmetric-setup
//! family `|000⟩+|111⟩ + e^{iΔφ₂}(|001⟩+|011⟩+|100⟩+|110⟩) + e^{iΔφ₃}(|010⟩+|101⟩)`.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::{Euclid, Float};

use crate::linalg::two_row_singular_values;
use crate::qstate::{pauli_expectation, Pauli, PauliWord, PureState};
use crate::{Error, Result};

/// Relative singular-value threshold for numerical rank.
pub const RANK_REL_TOL: f64 = 1e-10;
/// 3-tangle threshold separating GHZ-type from W-type.
pub const TANGLE_TOL: f64 = 1e-8;
/// Tolerance of the two GHZ phase conditions.
pub const GHZ_CONDITION_TOL: f64 = 1e-10;

const COEFF_EPS: f64 = 1e-12;
const MANIFOLD_TOL: f64 = 1e-9;

/// Relative phases `(Δφ₂, Δφ₃)` of the symmetric three-qubit family, in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    dphi2: f64,
    dphi3: f64,
}

impl PhasePoint {
    pub fn new(dphi2: f64, dphi3: f64) -> Self {
        Self { dphi2: reduce_angle(dphi2), dphi3: reduce_angle(dphi3) }
    }

    pub fn dphi2(&self) -> f64 {
        self.dphi2
    }

    pub fn dphi3(&self) -> f64 {
        self.dphi3
    }

    /// The normalized state of the family at this point.
    pub fn state(&self) -> PureState {
        crate::gravity::symmetric_three_qubit_state(self.dphi2, self.dphi3)
    }

    /// Recovers the phase point when `psi` lies on the family, up to a global phase.
    pub fn from_state(psi: &PureState) -> Option<Self> {
        if psi.n_qubits() != 3 {
            return None;
        }
        let a = psi.amplitudes();
        let modulus = psi.norm() / 8f64.sqrt();
        if modulus == 0.0 || a.iter().any(|z| (z.norm() - modulus).abs() > MANIFOLD_TOL) {
            return None;
        }
        let r = |b: usize| a[b] / a[0];
        let same = |x: Complex64, y: Complex64| (x - y).norm() <= MANIFOLD_TOL;
        let u = r(0b001);
        let v = r(0b010);
        let on_family = same(r(0b111), Complex64::new(1.0, 0.0))
            && [0b011, 0b100, 0b110].iter().all(|&b| same(r(b), u))
            && same(r(0b101), v);
        on_family.then(|| Self::new(u.arg(), v.arg()))
    }
}

fn reduce_angle(x: f64) -> f64 {
    let r = Euclid::rem_euclid(&x, &TAU);
    // rem_euclid can round up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Conditional vectors of qubits 2–3 given qubit 1 in `|0⟩` (`a`) or `|1⟩` (`b`).
#[derive(Debug, Clone, PartialEq)]
pub struct RangeVectors {
    pub a: [Complex64; 4],
    pub b: [Complex64; 4],
    /// `[a; b]` has numerical rank one (qubit 1 factors out).
    pub dependent: bool,
    /// One of the vectors vanishes: qubit 1 is in a basis state.
    pub zero_vector: bool,
}

pub fn range_vectors(psi: &PureState) -> Result<RangeVectors> {
    expect_three_qubits(psi)?;
    let amps = psi.amplitudes();
    let mut a = [Complex64::new(0.0, 0.0); 4];
    let mut b = [Complex64::new(0.0, 0.0); 4];
    a.copy_from_slice(&amps[..4]);
    b.copy_from_slice(&amps[4..]);
    let scale = psi.norm().max(f64::MIN_POSITIVE);
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let zero_vector = norm(&a) < 1e-12 * scale || norm(&b) < 1e-12 * scale;
    let (s1, s2) = two_row_singular_values(&a, &b);
    let dependent = zero_vector || s2 < RANK_REL_TOL * s1;
    Ok(RangeVectors { a, b, dependent, zero_vector })
}

/// Solutions `x` for which `|a⟩ + x|b⟩` is a product vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootAnalysis {
    /// Two distinct roots: GHZ-type evidence.
    Distinct(Complex64, Complex64),
    /// A double root: W-type evidence.
    Double(Complex64),
    /// The quadratic degenerates to a linear equation with one root.
    Linear(Complex64),
    /// No `x` satisfies the equation.
    NoSolution,
    /// Every `x` satisfies it (`e^{iΔφ₃} = 1`, the separable regime).
    IdenticallySatisfied,
}

impl RootAnalysis {
    pub fn multiplicity(&self) -> Option<u8> {
        match self {
            RootAnalysis::Distinct(..) | RootAnalysis::Linear(_) => Some(1),
            RootAnalysis::Double(_) => Some(2),
            _ => None,
        }
    }
}

/// Coefficients `(A, B, C)` of `A x² + B x + C = 0` obtained by expanding
/// `(1+ux)(u+x) = (u+vx)(v+ux)` with `u = e^{iΔφ₂}`, `v = e^{iΔφ₃}`.
pub fn product_root_coefficients(p: PhasePoint) -> [Complex64; 3] {
    let u = Complex64::from_polar(1.0, p.dphi2);
    let v = Complex64::from_polar(1.0, p.dphi3);
    let one = Complex64::new(1.0, 0.0);
    // lhs = u x² + (1 + u²) x + u ; rhs = uv x² + (u² + v²) x + uv
    [u - u * v, one + u * u - u * u - v * v, u - u * v]
}

pub fn product_root_analysis(p: PhasePoint) -> RootAnalysis {
    let [a, b, c] = product_root_coefficients(p);
    let small = |z: Complex64| z.norm() < COEFF_EPS;
    if small(a) {
        if small(b) {
            return if small(c) { RootAnalysis::IdenticallySatisfied } else { RootAnalysis::NoSolution };
        }
        return RootAnalysis::Linear(-c / b);
    }
    let disc = b * b - a * c * 4.0;
    let scale = b.norm_sqr().max(4.0 * a.norm() * c.norm());
    if disc.norm() <= 1e-10 * scale {
        return RootAnalysis::Double(-b / (a * 2.0));
    }
    let sq = disc.sqrt();
    // pick the sign that avoids cancellation, then use x₁x₂ = C/A
    let q = if (b.conj() * sq).re >= 0.0 { -(b + sq) / 2.0 } else { -(b - sq) / 2.0 };
    let x1 = q / a;
    let x2 = if q.norm() > 0.0 { c / q } else { -b / a - x1 };
    RootAnalysis::Distinct(x1, x2)
}

/// `|(1 + e^{iΔφ₃})² − 4e^{2iΔφ₂}|`: zero exactly where the root is double.
pub fn w_multiplicity_residual(p: PhasePoint) -> f64 {
    let u = Complex64::from_polar(1.0, p.dphi2);
    let v = Complex64::from_polar(1.0, p.dphi3);
    let one = Complex64::new(1.0, 0.0);
    ((one + v) * (one + v) - u * u * 4.0).norm()
}

/// Both off-diagonal terms of the one-qubit reduced states vanish, i.e.
/// `e^{iΔφ₃}+e^{−iΔφ₃}+2 = 0` and `e^{iΔφ₂}+e^{−iΔφ₂}+e^{i(Δφ₂−Δφ₃)}+e^{i(Δφ₃−Δφ₂)} = 0`.
pub fn ghz_phase_condition(p: PhasePoint) -> bool {
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let (x, y) = (p.dphi2, p.dphi3);
    let first = e(y) + e(-y) + 2.0;
    let second = e(x) + e(-x) + e(x - y) + e(y - x);
    first.norm() <= GHZ_CONDITION_TOL && second.norm() <= GHZ_CONDITION_TOL
}

/// `4 |Det(ψ)|` with `Det` the Cayley hyperdeterminant of the 2×2×2 tensor.
pub fn three_tangle(psi: &PureState) -> Result<f64> {
    expect_three_qubits(psi)?;
    Ok(4.0 * hyperdeterminant(psi.amplitudes()).norm())
}

fn hyperdeterminant(a: &[Complex64]) -> Complex64 {
    let d1 = a[0] * a[0] * a[7] * a[7]
        + a[1] * a[1] * a[6] * a[6]
        + a[2] * a[2] * a[5] * a[5]
        + a[4] * a[4] * a[3] * a[3];
    let d2 = a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1];
    let d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    d1 - d2 * 2.0 + d3 * 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FullySeparable,
    Biseparable,
    GhzType,
    WType,
}

impl Verdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, Verdict::FullySeparable | Verdict::Biseparable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FullySeparable => "FullySeparable",
            Verdict::Biseparable => "Biseparable",
            Verdict::GhzType => "GHZType",
            Verdict::WType => "WType",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SloccEvidence {
    /// Schmidt rank of each cut `qubit k | rest`.
    pub schmidt_ranks: [usize; 3],
    /// `σ₂/σ₁` of each cut.
    pub singular_ratios: [f64; 3],
    /// 3-tangle of the normalized state.
    pub three_tangle: f64,
    /// Present when the state lies on the symmetric-setup family.
    pub phase_point: Option<PhasePoint>,
    pub range_dependent: Option<bool>,
    pub roots: Option<RootAnalysis>,
    /// The range/root analysis agrees with the verdict (always true off the family).
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SloccClass {
    pub verdict: Verdict,
    pub evidence: SloccEvidence,
}

pub fn classify_three_qubit(psi: &PureState) -> Result<SloccClass> {
    expect_three_qubits(psi)?;
    let mut ranks = [0usize; 3];
    let mut ratios = [0.0f64; 3];
    for q in 0..3 {
        let (s1, s2) = psi.split_singular_values(q)?;
        ratios[q] = if s1 > 0.0 { s2 / s1 } else { 0.0 };
        ranks[q] = if ratios[q] < RANK_REL_TOL { 1 } else { 2 };
    }
    let norm2 = psi.norm_sqr().max(f64::MIN_POSITIVE);
    let tangle = three_tangle(psi)? / (norm2 * norm2);
    let n_product_cuts = ranks.iter().filter(|&&r| r == 1).count();
    let verdict = match n_product_cuts {
        3 => Verdict::FullySeparable,
        1 | 2 => Verdict::Biseparable,
        _ if tangle > TANGLE_TOL => Verdict::GhzType,
        _ => Verdict::WType,
    };

    let phase_point = PhasePoint::from_state(psi);
    let mut range_dependent = None;
    let mut roots = None;
    let mut consistent = true;
    if let Some(p) = phase_point {
        let rv = range_vectors(psi)?;
        let ra = product_root_analysis(p);
        if rv.dependent && !verdict.is_separable() {
            consistent = false;
        }
        match ra {
            RootAnalysis::IdenticallySatisfied => consistent &= verdict.is_separable(),
            RootAnalysis::Distinct(..) => consistent &= verdict == Verdict::GhzType,
            RootAnalysis::Double(_) => consistent &= verdict == Verdict::WType,
            _ => {}
        }
        range_dependent = Some(rv.dependent);
        roots = Some(ra);
    }
    Ok(SloccClass {
        verdict,
        evidence: SloccEvidence {
            schmidt_ranks: ranks,
            singular_ratios: ratios,
            three_tangle: tangle,
            phase_point,
            range_dependent,
            roots,
            consistent,
        },
    })
}

/// The two bipartite witnesses quoted for the original two-mass experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `X⊗Z + Y⊗Y`; values above 1 signal entanglement.
    XzPlusYy,
    /// `I⊗I − X⊗X − Z⊗Y − Y⊗Z`.
    IiMinusXxZyYz,
}

impl Witness {
    pub fn terms(&self) -> Vec<(f64, PauliWord)> {
        use Pauli::*;
        let w = |a, b| PauliWord::new(alloc::vec![a, b]);
        match self {
            Witness::XzPlusYy => alloc::vec![(1.0, w(X, Z)), (1.0, w(Y, Y))],
            Witness::IiMinusXxZyYz => {
                alloc::vec![(1.0, w(I, I)), (-1.0, w(X, X)), (-1.0, w(Z, Y)), (-1.0, w(Y, Z)),]
            }
        }
    }
}

pub fn witness_expectation(psi: &PureState, witness: Witness) -> Result<f64> {
    if psi.n_qubits() != 2 {
        return Err(Error::WrongQubitCount { expected: 2, found: psi.n_qubits() });
    }
    witness.terms().iter().map(|(c, word)| pauli_expectation(psi, word).map(|e| c * e)).sum()
}

fn expect_three_qubits(psi: &PureState) -> Result<()> {
    if psi.n_qubits() != 3 {
        return Err(Error::WrongQubitCount { expected: 3, found: psi.n_qubits() });
    }
    Ok(())
}
