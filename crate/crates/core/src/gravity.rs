//! Masses on a line, their pairwise gravitational potential, and the phase
//! every left/right branch accumulates during the interaction time.
//!
//! Phases use `e^{iφ} = e^{−iVτ/ħ}`; with an attractive `V < 0` every branch
//! phase is positive. Only differences between branches matter physically.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::qstate::{complement_bits, reverse_bits, PureState};
use crate::{Error, Result};

/// Gravitational constant (CODATA 2018), m³ kg⁻¹ s⁻².
pub const G_NEWTON: f64 = 6.674_30e-11;
/// Reduced Planck constant (CODATA 2018), J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light, m s⁻¹.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Tolerance for phases inside one symmetry class, relative to `max(1, |φ|)`.
pub const CLASS_PHASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Masses spaced by `d` on a line, each split by `l` orthogonally to it.
    SymmetricLine,
    /// Two masses split along the line joining them: distances `d`, `d ± l`.
    ParallelLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corrections {
    Newtonian,
    /// Adds the post-Newtonian and one-loop quantum terms to the potential.
    WithCorrections,
}

/// Physical configuration of the experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SetupParams {
    /// One mass per qubit, kg.
    pub masses: Vec<f64>,
    /// Spacing between neighbouring masses, m.
    pub d: f64,
    /// Separation of the two superposed components of a mass, m.
    pub l: f64,
    /// Interaction (free-fall) time, s.
    pub tau: f64,
    pub g: f64,
    pub hbar: f64,
    pub c: f64,
    pub geometry: Geometry,
    pub corrections: Corrections,
}

impl SetupParams {
    /// `n` equal masses in the symmetric setup with SI constants.
    pub fn symmetric(n_masses: usize, mass: f64, d: f64, l: f64, tau: f64) -> Self {
        Self {
            masses: vec![mass; n_masses],
            d,
            l,
            tau,
            g: G_NEWTON,
            hbar: HBAR,
            c: SPEED_OF_LIGHT,
            geometry: Geometry::SymmetricLine,
            corrections: Corrections::Newtonian,
        }
    }

    /// The original two-mass setup with splits along the separation.
    pub fn parallel(m1: f64, m2: f64, d: f64, l: f64, tau: f64) -> Self {
        Self { masses: vec![m1, m2], geometry: Geometry::ParallelLine, ..Self::symmetric(2, m1, d, l, tau) }
    }

    /// Dimensionless units: `G = m = τ = ħ = d = 1`, so `G m² τ / (ħ d) = 1`.
    pub fn unit_scale(n_masses: usize, l: f64) -> Self {
        Self {
            masses: vec![1.0; n_masses],
            d: 1.0,
            l,
            tau: 1.0,
            g: 1.0,
            hbar: 1.0,
            c: SPEED_OF_LIGHT,
            geometry: Geometry::SymmetricLine,
            corrections: Corrections::Newtonian,
        }
    }

    pub fn n_masses(&self) -> usize {
        self.masses.len()
    }

    pub fn with_tau(&self, tau: f64) -> Self {
        Self { tau, ..self.clone() }
    }

    /// `G m² τ / (ħ d)` for the first mass: the natural phase scale.
    pub fn phase_scale(&self) -> f64 {
        let m = self.masses.first().copied().unwrap_or(0.0);
        self.g * m * m * self.tau / (self.hbar * self.d)
    }

    /// Checks the physical invariants. `tau = 0` is allowed (no interaction yet).
    pub fn validate(&self) -> Result<()> {
        if self.masses.is_empty() {
            return Err(Error::InvalidSetup("at least one mass is required"));
        }
        if self.masses.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidSetup("masses must be positive"));
        }
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.d) || !positive(self.l) {
            return Err(Error::InvalidSetup("d and l must be positive"));
        }
        if !positive(self.g) || !positive(self.hbar) || !positive(self.c) {
            return Err(Error::InvalidSetup("physical constants must be positive"));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidSetup("tau must be non-negative"));
        }
        if self.geometry == Geometry::ParallelLine {
            if self.n_masses() != 2 {
                return Err(Error::InvalidSetup("the parallel geometry has exactly two masses"));
            }
            if self.l >= self.d {
                return Err(Error::InvalidSetup("the parallel geometry needs l < d"));
            }
        }
        Ok(())
    }

    fn equal_masses(&self) -> bool {
        self.masses.windows(2).all(|w| w[0] == w[1])
    }
}

/// Distance between component `bi` of mass `i` and component `bj` of mass `j`.
///
/// Sites are zero-based; bit `0` is the left component, `1` the right one.
pub fn pair_distance(i: usize, j: usize, bi: u8, bj: u8, setup: &SetupParams) -> Result<f64> {
    if i == j {
        return Err(Error::SameSite(i, j));
    }
    let (i, j, bi, bj) = if i < j { (i, j, bi, bj) } else { (j, i, bj, bi) };
    let n = setup.n_masses();
    if j >= n {
        return Err(Error::QubitOutOfRange { index: j, n_qubits: n });
    }
    match setup.geometry {
        Geometry::SymmetricLine => {
            let sep = (j - i) as f64 * setup.d;
            Ok(if bi == bj { sep } else { sep.hypot(setup.l) })
        }
        Geometry::ParallelLine => {
            if n > 2 {
                return Err(Error::InvalidSetup("the parallel geometry has exactly two masses"));
            }
            if setup.l >= setup.d {
                return Err(Error::InvalidSetup("the parallel geometry needs l < d"));
            }
            Ok(match (bi, bj) {
                (0, 1) => setup.d + setup.l,
                (1, 0) => setup.d - setup.l,
                _ => setup.d,
            })
        }
    }
}

/// Gravitational potential energy of two point masses at distance `r`.
pub fn potential_energy(r: f64, m1: f64, m2: f64, setup: &SetupParams) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::NonPositiveDistance(r));
    }
    let newton = -setup.g * m1 * m2 / r;
    Ok(match setup.corrections {
        Corrections::Newtonian => newton,
        Corrections::WithCorrections => newton * correction_factor(r, m1, m2, setup),
    })
}

/// `1 + 3G(m₁+m₂)/(r c²) + 41 G ħ / (10 π r² c³)`.
pub fn correction_factor(r: f64, m1: f64, m2: f64, setup: &SetupParams) -> f64 {
    let (g, c) = (setup.g, setup.c);
    1.0 + 3.0 * g * (m1 + m2) / (r * c * c)
        + 41.0 * g * setup.hbar / (10.0 * core::f64::consts::PI * r * r * c * c * c)
}

/// Phase accumulated by the branch `bits` (basis index, qubit 0 = MSB).
///
/// The pair terms are summed in sorted order so that branches with the same
/// multiset of distances get bit-identical phases.
pub fn branch_phase(bits: usize, setup: &SetupParams) -> Result<f64> {
    let n = setup.n_masses();
    if bits >> n != 0 {
        return Err(Error::InvalidSetup("branch index has more bits than masses"));
    }
    let bit = |k: usize| ((bits >> (n - 1 - k)) & 1) as u8;
    let mut terms = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let r = pair_distance(i, j, bit(i), bit(j), setup)?;
            let v = potential_energy(r, setup.masses[i], setup.masses[j], setup)?;
            terms.push(-v * setup.tau / setup.hbar);
        }
    }
    terms.sort_by(f64::total_cmp);
    Ok(terms.iter().sum())
}

/// Partition of the `2^n` branches into classes sharing a phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub n_qubits: usize,
    /// Smallest basis index of each class, ascending.
    pub representatives: Vec<usize>,
    /// Members of each class, ascending.
    pub members: Vec<Vec<usize>>,
    /// Class index of every basis index.
    pub class_of: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    fn from_labels(n_qubits: usize, label: impl Fn(usize) -> usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut class_of = vec![usize::MAX; dim];
        let mut representatives = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut by_label: BTreeMap<usize, usize> = BTreeMap::new();
        for (b, slot) in class_of.iter_mut().enumerate() {
            let key = label(b);
            let k = *by_label.entry(key).or_insert_with(|| {
                representatives.push(b);
                members.push(Vec::new());
                representatives.len() - 1
            });
            *slot = k;
            members[k].push(b);
        }
        Self { n_qubits, representatives, members, class_of }
    }
}

/// Orbits of `{0,1}^n` under bit complement and string reversal.
pub fn symmetry_classes(n_qubits: usize) -> Result<ClassPartition> {
    if n_qubits < 2 {
        return Err(Error::TooFewQubits { min: 2, found: n_qubits });
    }
    Ok(ClassPartition::from_labels(n_qubits, |b| {
        let c = complement_bits(b, n_qubits);
        b.min(c).min(reverse_bits(b, n_qubits)).min(reverse_bits(c, n_qubits))
    }))
}

/// Branch phases grouped by class.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    pub classes: ClassPartition,
    /// Phase of each class, rad.
    pub phases: Vec<f64>,
}

impl PhaseTable {
    pub fn n_qubits(&self) -> usize {
        self.classes.n_qubits
    }

    pub fn phase_of(&self, bits: usize) -> f64 {
        self.phases[self.classes.class_of[bits]]
    }

    /// Class phases minus the phase of the class of `|0…0⟩`.
    pub fn relative_phases(&self) -> Vec<f64> {
        let base = self.phases[0];
        self.phases.iter().map(|p| p - base).collect()
    }
}

/// The state after the interaction time and the phase of every branch class.
///
/// The amplitude of branch `b` is `e^{iφ(b)} / 2^{n/2}`. Members of each class
/// are checked to share their representative's phase.
pub fn build_final_state(setup: &SetupParams) -> Result<(PureState, PhaseTable)> {
    setup.validate()?;
    let n = setup.n_masses();
    if n < 2 {
        return Err(Error::TooFewQubits { min: 2, found: n });
    }
    let phases: Vec<f64> = (0..1usize << n).map(|b| branch_phase(b, setup)).collect::<Result<_>>()?;
    let classes = match setup.geometry {
        Geometry::SymmetricLine => {
            if !setup.equal_masses() {
                return Err(Error::InvalidSetup("the symmetric geometry needs equal masses"));
            }
            symmetry_classes(n)?
        }
        Geometry::ParallelLine => distance_classes(setup)?,
    };
    for (rep, members) in classes.representatives.iter().zip(&classes.members) {
        let reference = phases[*rep];
        for &m in members {
            if (phases[m] - reference).abs() > CLASS_PHASE_TOL * reference.abs().max(1.0) {
                return Err(Error::PhaseClassMismatch { representative: *rep, member: m });
            }
        }
    }
    let class_phases = classes.representatives.iter().map(|&r| phases[r]).collect();
    let psi = state_from_phases(n, &phases);
    Ok((psi, PhaseTable { classes, phases: class_phases }))
}

/// Branches grouped by identical lists of pair distances.
fn distance_classes(setup: &SetupParams) -> Result<ClassPartition> {
    let n = setup.n_masses();
    let mut signatures: Vec<Vec<u64>> = Vec::with_capacity(1 << n);
    for b in 0..1usize << n {
        let bit = |k: usize| ((b >> (n - 1 - k)) & 1) as u8;
        let mut sig = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                sig.push(pair_distance(i, j, bit(i), bit(j), setup)?.to_bits());
            }
        }
        signatures.push(sig);
    }
    Ok(ClassPartition::from_labels(n, |b| signatures.iter().position(|s| *s == signatures[b]).unwrap_or(b)))
}

fn state_from_phases(n_qubits: usize, phases: &[f64]) -> PureState {
    let scale = (0.5f64).powf(n_qubits as f64 / 2.0);
    let amps = phases.iter().map(|&p| Complex64::from_polar(scale, p)).collect();
    PureState::new(n_qubits, amps).expect("phase list has 2^n entries")
}

/// Builds `Σ_b e^{iφ(b)} |b⟩ / 2^{n/2}` from an explicit phase for every branch.
pub fn build_from_phase_vector(n_qubits: usize, phases: &BTreeMap<usize, f64>) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::TooFewQubits { min: 1, found: 0 });
    }
    let dim = 1usize << n_qubits;
    if let Some((&k, _)) = phases.range(dim..).next() {
        return Err(Error::QubitOutOfRange { index: k, n_qubits });
    }
    let list: Vec<f64> =
        (0..dim).map(|b| phases.get(&b).copied().ok_or(Error::MissingBitString(b))).collect::<Result<_>>()?;
    Ok(state_from_phases(n_qubits, &list))
}

/// The three-qubit symmetric-setup state with relative phases `Δφ₂`, `Δφ₃`:
/// `(|000⟩+|111⟩ + e^{iΔφ₂}(|001⟩+|011⟩+|100⟩+|110⟩) + e^{iΔφ₃}(|010⟩+|101⟩)) / 2√2`.
pub fn symmetric_three_qubit_state(dphi2: f64, dphi3: f64) -> PureState {
    let phases: Vec<f64> = (0..8usize)
        .map(|b| match b {
            0b000 | 0b111 => 0.0,
            0b010 | 0b101 => dphi3,
            _ => dphi2,
        })
        .collect();
    state_from_phases(3, &phases)
}
