//! Recursive GHZ-type families.
//!
//! Odd sizes grow from the three-qubit pair built on `|m±⟩`, even sizes from
//! the four-qubit pair built on `|k±⟩`; every step prepends a two-qubit
//! block to the pair `(ψ, ψ′)` of two fewer qubits. The ± combinations of
//! the pair are product states at every level, which gives an explicit
//! two-term product decomposition (a rank-2 certificate) for each member.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::qstate::{
    apply_lattice_symmetry, tensor_product, Equality, LatticeSymmetry, PureState, MAX_QUBITS,
};
use crate::{Error, Result};

/// Tolerance of the spatial-symmetry comparison.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Largest reconstruction error a certificate may carry.
pub const CERTIFICATE_TOL: f64 = 1e-10;
/// Smallest site determinant modulus a certificate may carry.
pub const MIN_SITE_DETERMINANT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Main,
    Backup,
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|m₊⟩ = (|0⟩+|1⟩)/√2`.
pub fn m_plus() -> PureState {
    PureState::qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0))
}

/// `|m₋⟩ = (|0⟩−|1⟩)/√2`.
pub fn m_minus() -> PureState {
    PureState::qubit(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0))
}

/// `|k₊⟩ = [(|00⟩+|11⟩) + i(|01⟩+|10⟩)]/2`.
pub fn k_plus() -> PureState {
    two_qubit([c(0.5, 0.0), c(0.0, 0.5), c(0.0, 0.5), c(0.5, 0.0)])
}

/// `|k₋⟩ = [i(|00⟩+|11⟩) + (|01⟩+|10⟩)]/2`.
pub fn k_minus() -> PureState {
    two_qubit([c(0.0, 0.5), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.5)])
}

fn two_qubit(a: [Complex64; 4]) -> PureState {
    PureState::new(2, a.to_vec()).expect("four amplitudes")
}

/// `(|00⟩+|11⟩)/2`.
fn phi_half() -> PureState {
    two_qubit([c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)])
}

/// `(|10⟩−|01⟩)/2`, the odd-step partner block.
fn odd_partner_half() -> PureState {
    two_qubit([c(0.0, 0.0), c(-0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
}

/// `(|10⟩+|01⟩)/2`, the even-step partner block.
fn even_partner_half() -> PureState {
    two_qubit([c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
}

/// The main state `ψⁿ` and its back-up partner `ψ′ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursiveBasisPair {
    pub n_qubits: usize,
    pub main: PureState,
    pub backup: PureState,
}

impl RecursiveBasisPair {
    pub fn get(&self, which: Which) -> &PureState {
        match which {
            Which::Main => &self.main,
            Which::Backup => &self.backup,
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewQubits { min: 3, found: n });
    }
    if n > MAX_QUBITS {
        return Err(Error::InvalidSetup("qubit count exceeds MAX_QUBITS"));
    }
    Ok(())
}

fn combine(a: &PureState, x: &PureState, b: &PureState, y: &PureState) -> PureState {
    tensor_product(a, x).add(&tensor_product(b, y)).expect("equal sizes").normalized()
}

pub fn recursive_pair(n: usize) -> Result<RecursiveBasisPair> {
    check_size(n)?;
    let (mut main, mut backup, partner, neg_partner) = if n % 2 == 1 {
        let partner = odd_partner_half();
        let neg = partner.scaled(c(-1.0, 0.0));
        let main = combine(&phi_half(), &m_plus(), &partner, &m_minus());
        let backup = combine(&phi_half(), &m_minus(), &neg, &m_plus());
        (main, backup, partner, neg)
    } else {
        let partner = even_partner_half();
        let main = combine(&phi_half(), &k_plus(), &partner, &k_minus());
        let backup = combine(&phi_half(), &k_minus(), &partner, &k_plus());
        (main, backup, partner.clone(), partner)
    };
    let phi = phi_half();
    let mut size = if n % 2 == 1 { 3 } else { 4 };
    while size < n {
        let next_main = combine(&phi, &main, &partner, &backup);
        let next_backup = combine(&phi, &backup, &neg_partner, &main);
        main = next_main;
        backup = next_backup;
        size += 2;
    }
    Ok(RecursiveBasisPair { n_qubits: n, main, backup })
}

pub fn build_recursive(n: usize, which: Which) -> Result<PureState> {
    let pair = recursive_pair(n)?;
    Ok(match which {
        Which::Main => pair.main,
        Which::Backup => pair.backup,
    })
}

/// `ψ = u₁⊗…⊗u_N + v₁⊗…⊗v_N`.
///
/// The global coefficient of each branch is carried by its first site vector;
/// `site_determinants` are computed on the normalized site vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Certificate {
    pub branch_u: Vec<[Complex64; 2]>,
    pub branch_v: Vec<[Complex64; 2]>,
    pub site_determinants: Vec<f64>,
    pub reconstruction_error: f64,
}

impl Rank2Certificate {
    pub fn min_site_determinant(&self) -> f64 {
        self.site_determinants.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn branch_states(&self) -> (PureState, PureState) {
        (product_of(&self.branch_u), product_of(&self.branch_v))
    }
}

fn product_of(sites: &[[Complex64; 2]]) -> PureState {
    let mut it = sites.iter();
    let first = it.next().expect("at least one site");
    it.fold(PureState::qubit(first[0], first[1]), |acc, s| {
        tensor_product(&acc, &PureState::qubit(s[0], s[1]))
    })
}

/// A product vector as a scalar times unit site vectors.
struct Product {
    scale: Complex64,
    sites: Vec<[Complex64; 2]>,
}

impl Product {
    fn new() -> Self {
        Self { scale: c(1.0, 0.0), sites: Vec::new() }
    }

    fn push(&mut self, v: [Complex64; 2]) {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        self.scale *= norm;
        self.sites.push([v[0] / norm, v[1] / norm]);
    }

    fn into_sites(self, coeff: Complex64) -> Vec<[Complex64; 2]> {
        let mut sites = self.sites;
        let k = self.scale * coeff;
        sites[0] = [sites[0][0] * k, sites[0][1] * k];
        sites
    }
}

/// Builds the two product states `P₊`, `P₋` whose combination gives the
/// family member, together with the coefficients of that combination.
///
/// Odd n: `ψ ± iψ′ = [(Φ ± iΨ)/2]^{⊗blocks} ⊗ (|m₊⟩ ± i|m₋⟩)` with
/// `Φ ± iΨ = (|0⟩∓i|1⟩)(|0⟩±i|1⟩)`, `Ψ = |01⟩−|10⟩`.
/// Even n: `ψ ± ψ′ = [(Φ ± Ψ₊)/2]^{⊗blocks} ⊗ (|k₊⟩ ± |k₋⟩)` with
/// `Φ ± Ψ₊ = (|0⟩±|1⟩)^{⊗2}` and `|k₊⟩ ± |k₋⟩ = (1±i)/2 (|0⟩±|1⟩)^{⊗2}`.
fn unroll(n: usize, which: Which) -> (Product, Product, Complex64, Complex64) {
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let mut plus = Product::new();
    let mut minus = Product::new();
    if n % 2 == 1 {
        let blocks = (n - 3) / 2 + 1;
        for _ in 0..blocks {
            plus.scale *= 0.5;
            minus.scale *= 0.5;
            plus.push([one, -i]);
            plus.push([one, i]);
            minus.push([one, i]);
            minus.push([one, -i]);
        }
        let s = FRAC_1_SQRT_2;
        // |m₊⟩ ± i|m₋⟩
        plus.push([c(s, s), c(s, -s)]);
        minus.push([c(s, -s), c(s, s)]);
        match which {
            // ψ = (P₊ + P₋)/2, ψ′ = (P₊ − P₋)/(2i)
            Which::Main => (plus, minus, c(0.5, 0.0), c(0.5, 0.0)),
            Which::Backup => (plus, minus, c(0.0, -0.5), c(0.0, 0.5)),
        }
    } else {
        let blocks = (n - 4) / 2 + 1;
        for _ in 0..blocks {
            plus.scale *= 0.5;
            minus.scale *= 0.5;
            plus.push([one, one]);
            plus.push([one, one]);
            minus.push([one, -one]);
            minus.push([one, -one]);
        }
        plus.scale *= c(0.5, 0.5);
        minus.scale *= c(0.5, -0.5);
        plus.push([one, one]);
        plus.push([one, one]);
        minus.push([one, -one]);
        minus.push([one, -one]);
        match which {
            Which::Main => (plus, minus, c(0.5, 0.0), c(0.5, 0.0)),
            Which::Backup => (plus, minus, c(0.5, 0.0), c(-0.5, 0.0)),
        }
    }
}

pub fn rank2_certificate(n: usize, which: Which) -> Result<Rank2Certificate> {
    check_size(n)?;
    let (plus, minus, cu, cv) = unroll(n, which);
    let site_determinants: Vec<f64> =
        plus.sites.iter().zip(&minus.sites).map(|(u, v)| (u[0] * v[1] - u[1] * v[0]).norm()).collect();
    let branch_u = plus.into_sites(cu);
    let branch_v = minus.into_sites(cv);
    let target = build_recursive(n, which)?;
    let sum = product_of(&branch_u).add(&product_of(&branch_v))?;
    let reconstruction_error = sum.distance(&target)?;
    let cert = Rank2Certificate { branch_u, branch_v, site_determinants, reconstruction_error };
    if reconstruction_error.is_nan() || reconstruction_error >= CERTIFICATE_TOL {
        return Err(Error::CertificateInvalid("branches do not sum to the state"));
    }
    if cert.min_site_determinant().is_nan() || cert.min_site_determinant() <= MIN_SITE_DETERMINANT {
        return Err(Error::CertificateInvalid("site vectors are linearly dependent"));
    }
    Ok(cert)
}

/// `(invert_ok, turnover_ok)`: whether `psi` is unchanged by exchanging the
/// left/right positions of every mass, and by reversing the order of masses.
pub fn check_spatial_symmetry(psi: &PureState, mode: Equality) -> (bool, bool) {
    let check = |kind| apply_lattice_symmetry(psi, kind).approx_eq(psi, mode, SYMMETRY_TOL);
    (check(LatticeSymmetry::Invert), check(LatticeSymmetry::TurnOver))
}

/// The global factor relating `psi` to its image under `kind`, if any.
pub fn symmetry_factor(psi: &PureState, kind: LatticeSymmetry) -> Option<Complex64> {
    psi.global_factor(&apply_lattice_symmetry(psi, kind), SYMMETRY_TOL)
}

/// Single-qubit `σ_x` and `−σ_z`, for relating members of a pair.
pub fn sigma_x() -> [[Complex64; 2]; 2] {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn minus_sigma_z() -> [[Complex64; 2]; 2] {
    [[c(-1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}
