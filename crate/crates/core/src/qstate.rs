//! Dense statevectors and density operators for a handful of qubits.
//!
//! Basis index convention: qubit `0` is the most significant bit, so for
//! `n` qubits the bit of qubit `k` in index `b` is `(b >> (n - 1 - k)) & 1`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg;
use crate::{Error, Result};

/// Largest qubit count the dense routines are meant for.
pub const MAX_QUBITS: usize = 12;

const HERMITIAN_TOL: f64 = 1e-10;

#[inline]
pub(crate) fn bit_of(index: usize, qubit: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

/// Formats a basis index as a bit-string, qubit 0 first.
pub fn format_bits(index: usize, n_qubits: usize) -> String {
    (0..n_qubits).map(|q| if bit_of(index, q, n_qubits) == 1 { '1' } else { '0' }).collect()
}

/// Parses a bit-string such as `"0110"` into `(index, n_qubits)`.
pub fn parse_bits(s: &str) -> Result<(usize, usize)> {
    let s = s.trim();
    if s.is_empty() || s.len() > usize::BITS as usize - 1 {
        return Err(Error::InvalidBitString(s.into()));
    }
    let mut index = 0usize;
    for ch in s.chars() {
        index <<= 1;
        match ch {
            '0' => {}
            '1' => index |= 1,
            _ => return Err(Error::InvalidBitString(s.into())),
        }
    }
    Ok((index, s.len()))
}

/// Bit complement of every qubit.
#[inline]
pub fn complement_bits(index: usize, n_qubits: usize) -> usize {
    !index & ((1usize << n_qubits) - 1)
}

/// Reverses qubit order.
#[inline]
pub fn reverse_bits(index: usize, n_qubits: usize) -> usize {
    let mut out = 0;
    for q in 0..n_qubits {
        out |= ((index >> q) & 1) << (n_qubits - 1 - q);
    }
    out
}

/// How two states are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equality {
    /// Amplitude by amplitude.
    Strict,
    /// Up to a global phase.
    Ray,
}

/// Global symmetries of the line of masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSymmetry {
    /// Exchange `0 ↔ 1` on every qubit.
    Invert,
    /// Reverse the order of the qubits.
    TurnOver,
}

/// Pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::TooFewQubits { min: 1, found: 0 });
        }
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch { expected, found: amplitudes.len() });
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amplitudes }
    }

    /// Single-qubit state `a0|0⟩ + a1|1⟩`, not normalized.
    pub fn qubit(a0: Complex64, a1: Complex64) -> Self {
        Self { n_qubits: 1, amplitudes: vec![a0, a1] }
    }

    /// `|+⟩^{⊗n}`, the state every mass starts in.
    pub fn uniform(n_qubits: usize) -> Self {
        let a = Complex64::new((0.5f64).powf(n_qubits as f64 / 2.0), 0.0);
        Self { n_qubits, amplitudes: vec![a; 1 << n_qubits] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Returns the state rescaled to unit norm. A zero vector is returned as is.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { n_qubits: self.n_qubits, amplitudes: self.amplitudes.iter().map(|z| z * factor).collect() }
    }

    /// Sum of two states of the same size.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a + b).collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        tensor_product(self, other)
    }

    /// Applies a 2×2 matrix `[[m00, m01], [m10, m11]]` to one qubit.
    pub fn apply_single_qubit(&self, qubit: usize, m: [[Complex64; 2]; 2]) -> Result<Self> {
        self.check_qubit(qubit)?;
        let shift = self.n_qubits - 1 - qubit;
        let mut out = self.amplitudes.clone();
        for idx in 0..self.dim() {
            if (idx >> shift) & 1 == 0 {
                let j = idx | (1 << shift);
                let a0 = self.amplitudes[idx];
                let a1 = self.amplitudes[j];
                out[idx] = m[0][0] * a0 + m[0][1] * a1;
                out[j] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(Self { n_qubits: self.n_qubits, amplitudes: out })
    }

    /// Singular values of the `2 × 2^{n-1}` matrix that splits `qubit` from the
    /// rest; their squares are the eigenvalues of the one-qubit reduced state.
    pub fn split_singular_values(&self, qubit: usize) -> Result<(f64, f64)> {
        self.check_qubit(qubit)?;
        let (row0, row1) = self.conditional_rows(qubit);
        Ok(linalg::two_row_singular_values(&row0, &row1))
    }

    /// Schmidt rank (1 or 2) of the cut `qubit | rest`. The second singular
    /// value counts when it is at least `rel_tol` times the first.
    pub fn schmidt_rank_of_qubit(&self, qubit: usize, rel_tol: f64) -> Result<usize> {
        let (s1, s2) = self.split_singular_values(qubit)?;
        Ok(if s1 == 0.0 {
            0
        } else if s2 < rel_tol * s1 {
            1
        } else {
            2
        })
    }

    /// The two conditional vectors of the rest of the system when `qubit` is
    /// fixed to `|0⟩` and to `|1⟩`.
    pub fn conditional_rows(&self, qubit: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let shift = self.n_qubits - 1 - qubit;
        let mut row0 = Vec::with_capacity(self.dim() / 2);
        let mut row1 = Vec::with_capacity(self.dim() / 2);
        for idx in 0..self.dim() {
            if (idx >> shift) & 1 == 0 {
                row0.push(self.amplitudes[idx]);
            } else {
                row1.push(self.amplitudes[idx]);
            }
        }
        (row0, row1)
    }

    /// Compares two states within `tol` (max amplitude difference).
    ///
    /// In [`Equality::Ray`] mode both states are first rotated so that the
    /// amplitude at the largest-magnitude index of `self` is real and positive.
    pub fn approx_eq(&self, other: &Self, mode: Equality, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        match mode {
            Equality::Strict => max_abs_diff(&self.amplitudes, &other.amplitudes) <= tol,
            Equality::Ray => {
                let pivot = argmax_modulus(&self.amplitudes);
                let a = self.amplitudes[pivot];
                let b = other.amplitudes[pivot];
                if b.norm() == 0.0 || a.norm() == 0.0 {
                    return a.norm() == 0.0
                        && b.norm() == 0.0
                        && max_abs_diff(&self.amplitudes, &other.amplitudes) <= tol;
                }
                let ra = a.conj() / a.norm();
                let rb = b.conj() / b.norm();
                self.amplitudes.iter().zip(&other.amplitudes).all(|(x, y)| (x * ra - y * rb).norm() <= tol)
            }
        }
    }

    /// Returns `c` with `other = c · self` (within `tol`), if one exists.
    pub fn global_factor(&self, other: &Self, tol: f64) -> Option<Complex64> {
        if self.n_qubits != other.n_qubits {
            return None;
        }
        let pivot = argmax_modulus(&self.amplitudes);
        let a = self.amplitudes[pivot];
        if a.norm() == 0.0 {
            return None;
        }
        let c = other.amplitudes[pivot] / a;
        let ok = self.amplitudes.iter().zip(&other.amplitudes).all(|(x, y)| (x * c - y).norm() <= tol);
        ok.then_some(c)
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::LengthMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        Ok(())
    }
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn argmax_modulus(a: &[Complex64]) -> usize {
    let mut best = 0;
    let mut best_val = -1.0;
    for (i, z) in a.iter().enumerate() {
        let v = z.norm_sqr();
        // strict comparison keeps the lowest index among ties
        if v > best_val + 1e-14 {
            best = i;
            best_val = v;
        }
    }
    best
}

/// `a ⊗ b`: amplitude of the concatenated bit-string `xy` is `a(x)·b(y)`.
pub fn tensor_product(a: &PureState, b: &PureState) -> PureState {
    let mut amplitudes = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amplitudes {
        for y in &b.amplitudes {
            amplitudes.push(x * y);
        }
    }
    PureState { n_qubits: a.n_qubits + b.n_qubits, amplitudes }
}

/// Applies [`LatticeSymmetry::Invert`] or [`LatticeSymmetry::TurnOver`].
pub fn apply_lattice_symmetry(psi: &PureState, kind: LatticeSymmetry) -> PureState {
    let n = psi.n_qubits;
    let map: fn(usize, usize) -> usize = match kind {
        LatticeSymmetry::Invert => complement_bits,
        LatticeSymmetry::TurnOver => reverse_bits,
    };
    let amplitudes = (0..psi.dim()).map(|b| psi.amplitudes[map(b, n)]).collect();
    PureState { n_qubits: n, amplitudes }
}

/// Density operator on `n` qubits, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch { expected: dim * dim, found: entries.len() });
        }
        Ok(Self { n_qubits, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let d = self.dim();
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                s += self.get(i, j) * self.get(j, i);
            }
        }
        s.re
    }

    /// Largest `|m[i][j] − conj(m[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Reduced state on the qubits in `keep` (in increasing order of qubit).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits;
        for &q in keep {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
            }
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let k = kept.len();
        let keep_mask: usize = kept.iter().map(|&q| 1usize << (n - 1 - q)).sum();
        let compress =
            |idx: usize| -> usize { kept.iter().fold(0, |acc, &q| (acc << 1) | bit_of(idx, q, n)) };
        let rd = 1usize << k;
        let mut out = vec![Complex64::new(0.0, 0.0); rd * rd];
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if (i & !keep_mask) == (j & !keep_mask) {
                    out[compress(i) * rd + compress(j)] += self.get(i, j);
                }
            }
        }
        Ok(DensityMatrix { n_qubits: k, entries: out })
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn density_of(psi: &PureState) -> DensityMatrix {
    let d = psi.dim();
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            entries.push(psi.amplitudes[i] * psi.amplitudes[j].conj());
        }
    }
    DensityMatrix { n_qubits: psi.n_qubits, entries }
}

/// Transposes the indices of the qubits in `subsystem`.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    let mut mask = 0usize;
    for &q in subsystem {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
        }
        mask |= 1 << (n - 1 - q);
    }
    let d = rho.dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            let si = (i & !mask) | (j & mask);
            let sj = (j & !mask) | (i & mask);
            entries[i * d + j] = rho.get(si, sj);
        }
    }
    Ok(DensityMatrix { n_qubits: n, entries })
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DensityMatrix) -> Result<Vec<f64>> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let mut ev = linalg::jacobi_eigenvalues(&m.entries, m.dim());
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of Pauli letters, qubit 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliWord(Vec<Pauli>);

impl PauliWord {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidPauli(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliWord)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let c = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `⟨ψ|P|ψ⟩` for a Pauli word `P`.
pub fn pauli_expectation(psi: &PureState, word: &PauliWord) -> Result<f64> {
    let n = psi.n_qubits;
    if word.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: word.len() });
    }
    let mut flip = 0usize;
    let mut z_mask = 0usize;
    let mut n_y = 0u32;
    for (q, p) in word.0.iter().enumerate() {
        let bit = 1usize << (n - 1 - q);
        match p {
            Pauli::I => {}
            Pauli::X => flip |= bit,
            Pauli::Z => z_mask |= bit,
            Pauli::Y => {
                flip |= bit;
                z_mask |= bit;
                n_y += 1;
            }
        }
    }
    // Y = i·X·Z, so P|b⟩ = i^{n_y} (−1)^{popcount(b & z_mask)} |b ⊕ flip⟩
    let i_pow = match n_y % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for b in 0..psi.dim() {
        let sign = if (b & z_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += psi.amplitudes[b ^ flip].conj() * psi.amplitudes[b] * sign;
    }
    Ok((acc * i_pow).re)
}
