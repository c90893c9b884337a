//! Entanglement measures: the geometric measure via maximal product-state
//! overlap, the tripartite negativity, and sweeps over the interaction time.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::{Euclid, Float};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gravity::{build_final_state, symmetric_three_qubit_state, SetupParams};
use crate::qstate::{density_of, hermitian_eigenvalues, partial_transpose, PureState};
use crate::{Error, Result};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1729;
/// Largest qubit count accepted by the general optimizer.
pub const MAX_GM_QUBITS: usize = 8;

/// One `(α, θ)` pair per qubit: `cos α |0⟩ + e^{iθ} sin α |1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductAnsatz {
    pub sites: Vec<(f64, f64)>,
}

impl ProductAnsatz {
    pub fn new(sites: Vec<(f64, f64)>) -> Self {
        Self { sites }
    }

    /// The same `(α, θ)` on every qubit.
    pub fn symmetric(n_qubits: usize, alpha: f64, theta: f64) -> Self {
        Self { sites: vec![(alpha, theta); n_qubits] }
    }

    /// The ansatz equal to the given site vectors up to per-site phases,
    /// with `α ∈ [0, π/2]` and `θ ∈ [0, 2π)`.
    pub fn from_site_vectors(vectors: &[[Complex64; 2]]) -> Self {
        let sites = vectors
            .iter()
            .map(|v| {
                let alpha = v[1].norm().atan2(v[0].norm());
                let theta = if v[0].norm() > 0.0 && v[1].norm() > 0.0 {
                    Euclid::rem_euclid(&(v[1].arg() - v[0].arg()), &TAU)
                } else {
                    0.0
                };
                (alpha, if theta >= TAU { 0.0 } else { theta })
            })
            .collect();
        Self { sites }
    }

    pub fn n_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn site_vector(&self, qubit: usize) -> [Complex64; 2] {
        let (alpha, theta) = self.sites[qubit];
        let (s, c) = alpha.sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, theta)]
    }

    pub fn site_vectors(&self) -> Vec<[Complex64; 2]> {
        (0..self.n_qubits()).map(|q| self.site_vector(q)).collect()
    }

    pub fn state(&self) -> PureState {
        product_state(&self.site_vectors())
    }
}

fn product_state(vectors: &[[Complex64; 2]]) -> PureState {
    let n = vectors.len();
    let amps = (0..1usize << n)
        .map(|b| vectors.iter().enumerate().map(|(q, v)| v[(b >> (n - 1 - q)) & 1]).product())
        .collect();
    PureState::new(n, amps).expect("2^n amplitudes")
}

/// `|⟨φ|ψ⟩|²` for the product state `φ` described by `ansatz`.
pub fn overlap2(psi: &PureState, ansatz: &ProductAnsatz) -> Result<f64> {
    if ansatz.n_qubits() != psi.n_qubits() {
        return Err(Error::WrongQubitCount { expected: psi.n_qubits(), found: ansatz.n_qubits() });
    }
    Ok(product_inner(psi, &ansatz.site_vectors()).norm_sqr())
}

/// `⟨v₁⊗…⊗v_n|ψ⟩`.
fn product_inner(psi: &PureState, vectors: &[[Complex64; 2]]) -> Complex64 {
    let mut acc: Vec<Complex64> = psi.amplitudes().to_vec();
    // contract the last qubit first so the remaining index stays contiguous
    for v in vectors.iter().rev() {
        acc = acc.chunks_exact(2).map(|p| v[0].conj() * p[0] + v[1].conj() * p[1]).collect();
    }
    acc[0]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOpts {
    /// Points per axis of the `(α, θ)` seeding grid of [`gm_symmetric`].
    pub grid: usize,
    pub n_restarts: usize,
    pub seed: u64,
    /// Convergence threshold on the change of `Λ²` between sweeps.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerOpts {
    fn default() -> Self {
        Self { grid: 64, n_restarts: 64, seed: DEFAULT_SEED, tol: 1e-12, max_iter: 500 }
    }
}

impl OptimizerOpts {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// Largest product-state overlap found and the product state attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricMeasure {
    pub lambda2: f64,
    /// `−log₂ Λ²`.
    pub g: f64,
    pub argmax: ProductAnsatz,
    pub n_restarts_used: usize,
}

impl GeometricMeasure {
    fn new(lambda2: f64, argmax: ProductAnsatz, n_restarts_used: usize) -> Self {
        let lambda2 = lambda2.min(1.0);
        Self { lambda2, g: geometric_measure_from_lambda2(lambda2), argmax, n_restarts_used }
    }
}

/// `G = −2 log₂ Λ`.
pub fn geometric_measure_from_lambda2(lambda2: f64) -> f64 {
    let g = -lambda2.log2();
    // keep G = 0 rather than −0 for product states
    if g <= 0.0 {
        0.0
    } else {
        g
    }
}

/// Geometric measure and tripartite negativity of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub lambda2: f64,
    pub g: f64,
    pub negativity: f64,
    pub argmax: ProductAnsatz,
    pub n_restarts_used: usize,
}

pub fn measure_three_qubit(psi: &PureState, opts: &OptimizerOpts) -> Result<MeasureResult> {
    let gm = gm_general(psi, opts)?;
    let neg = negativity_tripartite(psi)?;
    Ok(MeasureResult {
        lambda2: gm.lambda2,
        g: gm.g,
        negativity: neg.value,
        argmax: gm.argmax,
        n_restarts_used: gm.n_restarts_used,
    })
}

/// Maximal overlap of a permutation-symmetric state with `(cos α|0⟩ + e^{iθ} sin α|1⟩)^{⊗n}`.
///
/// An `opts.grid × opts.grid` scan of `[0, π/2] × [0, 2π)` seeds Nelder-Mead
/// refinement from its best points.
pub fn gm_symmetric_state(psi: &PureState, opts: &OptimizerOpts) -> Result<GeometricMeasure> {
    let n = psi.n_qubits();
    let grid = opts.grid.max(2);
    let f = |x: &[f64]| {
        let (s, c) = x[0].sin_cos();
        let v = [Complex64::new(c, 0.0), Complex64::from_polar(s, x[1])];
        product_inner(psi, &vec![v; n]).norm_sqr()
    };
    let mut seeds: Vec<(f64, [f64; 2])> = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        let alpha = FRAC_PI_2 * i as f64 / (grid - 1) as f64;
        for j in 0..grid {
            let theta = TAU * j as f64 / grid as f64;
            seeds.push((f(&[alpha, theta]), [alpha, theta]));
        }
    }
    seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
    let step = [FRAC_PI_2 / grid as f64, TAU / grid as f64];
    let mut best = (seeds[0].0, seeds[0].1.to_vec());
    let n_refine = opts.n_restarts.clamp(1, 8).min(seeds.len());
    for (_, x0) in seeds.iter().take(n_refine) {
        let (x, fx) = nelder_mead(|x| -f(x), x0, &step, 1e-15, 4000);
        if -fx > best.0 {
            best = (-fx, x);
        }
    }
    let (s, c) = best.1[0].sin_cos();
    let v = [Complex64::new(c, 0.0), Complex64::from_polar(s, best.1[1])];
    let argmax = ProductAnsatz::from_site_vectors(&vec![v; n]);
    Ok(GeometricMeasure::new(best.0 / psi.norm_sqr(), argmax, n_refine))
}

/// Geometric measure on the symmetric three-qubit family with `Δφ₂ = Δφ₃ = dphi3`.
pub fn gm_symmetric(dphi3: f64, opts: &OptimizerOpts) -> GeometricMeasure {
    let psi = symmetric_three_qubit_state(dphi3, dphi3);
    gm_symmetric_state(&psi, opts).expect("three-qubit state")
}

/// One run of alternating maximization from a given start.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingRun {
    pub sites: Vec<[Complex64; 2]>,
    pub lambda2: f64,
    /// `Λ²` after every full sweep over the sites.
    pub history: Vec<f64>,
}

/// Alternating maximization of `|⟨v₁⊗…⊗v_n|ψ⟩|²`.
///
/// With every site but `k` fixed, the best `v_k` is the normalized contraction
/// of `ψ` with the other sites, and the overlap becomes its squared norm. Each
/// update therefore cannot decrease the overlap.
pub fn alternating_maximization(
    psi: &PureState,
    start: &[[Complex64; 2]],
    tol: f64,
    max_iter: usize,
) -> Result<AlternatingRun> {
    let n = psi.n_qubits();
    if start.len() != n {
        return Err(Error::WrongQubitCount { expected: n, found: start.len() });
    }
    let mut sites: Vec<[Complex64; 2]> = start
        .iter()
        .map(|v| {
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / norm, v[1] / norm]
        })
        .collect();
    let amps = psi.amplitudes();
    let mut history = Vec::new();
    let mut last = product_inner(psi, &sites).norm_sqr();
    for _ in 0..max_iter.max(1) {
        let mut value = last;
        for k in 0..n {
            let mut w = [Complex64::new(0.0, 0.0); 2];
            for (b, a) in amps.iter().enumerate() {
                let mut coeff = *a;
                for (q, v) in sites.iter().enumerate() {
                    if q != k {
                        coeff *= v[(b >> (n - 1 - q)) & 1].conj();
                    }
                }
                w[(b >> (n - 1 - k)) & 1] += coeff;
            }
            let norm2 = w[0].norm_sqr() + w[1].norm_sqr();
            if norm2 > 0.0 {
                let norm = norm2.sqrt();
                sites[k] = [w[0] / norm, w[1] / norm];
                value = norm2;
            }
        }
        history.push(value);
        let done = (value - last).abs() < tol;
        last = value;
        if done {
            break;
        }
    }
    Ok(AlternatingRun { sites, lambda2: last, history })
}

/// Geometric measure of a general state by alternating maximization from
/// `opts.n_restarts` random product states.
pub fn gm_general(psi: &PureState, opts: &OptimizerOpts) -> Result<GeometricMeasure> {
    let n = psi.n_qubits();
    if n > MAX_GM_QUBITS {
        return Err(Error::InvalidSetup("geometric measure supports at most 8 qubits"));
    }
    let norm2 = psi.norm_sqr();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let restarts = opts.n_restarts.max(1);
    let mut best: Option<AlternatingRun> = None;
    for _ in 0..restarts {
        let start: Vec<[Complex64; 2]> = (0..n)
            .map(|_| {
                let alpha: f64 = rng.gen_range(0.0..FRAC_PI_2);
                let theta: f64 = rng.gen_range(0.0..TAU);
                let (s, c) = alpha.sin_cos();
                [Complex64::new(c, 0.0), Complex64::from_polar(s, theta)]
            })
            .collect();
        let run = alternating_maximization(psi, &start, opts.tol, opts.max_iter)?;
        if best.as_ref().is_none_or(|b| run.lambda2 > b.lambda2) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one restart");
    let argmax = ProductAnsatz::from_site_vectors(&best.sites);
    Ok(GeometricMeasure::new(best.lambda2 / norm2, argmax, restarts))
}

/// `0.164·[atan(5.71x − 28.68) + atan(−3.79x + 4.83)] + 0.98`, the published
/// fit of `Λ²` on the symmetric family as a function of `x = Δφ₃`.
pub fn lambda2_fit(dphi3: f64) -> f64 {
    0.164 * ((5.71 * dphi3 - 28.68).atan() + (-3.79 * dphi3 + 4.83).atan()) + 0.98
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negativity {
    /// `N_{k−rest}` for qubits `k = 0, 1, 2`.
    pub cuts: [f64; 3],
    /// Geometric mean of the three cuts.
    pub value: f64,
}

/// `−2 Σ λ` over the negative eigenvalues `λ` of `ρ^{T_subsystem}`.
pub fn bipartite_negativity(psi: &PureState, subsystem: &[usize]) -> Result<f64> {
    let rho = density_of(psi);
    let pt = partial_transpose(&rho, subsystem)?;
    let ev = hermitian_eigenvalues(&pt)?;
    let sum: f64 = ev.iter().filter(|&&x| x < 0.0).sum();
    Ok((-2.0 * sum).max(0.0))
}

pub fn negativity_tripartite(psi: &PureState) -> Result<Negativity> {
    if psi.n_qubits() != 3 {
        return Err(Error::WrongQubitCount { expected: 3, found: psi.n_qubits() });
    }
    let psi = psi.normalized();
    let mut cuts = [0.0; 3];
    for (k, cut) in cuts.iter_mut().enumerate() {
        *cut = bipartite_negativity(&psi, &[k])?;
    }
    let value = (cuts[0] * cuts[1] * cuts[2]).cbrt();
    Ok(Negativity { cuts, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMeasure {
    /// `Λ²` from [`gm_general`].
    Lambda2,
    Negativity,
}

/// Seed for grid point `index`, so results do not depend on evaluation order.
pub fn point_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `n_points` equally spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 {
        return Err(Error::TooFewPoints { min: 2, found: n_points });
    }
    let step = (end - start) / (n_points - 1) as f64;
    Ok((0..n_points).map(|i| start + step * i as f64).collect())
}

/// The selected measure of the final state at interaction time `tau`.
pub fn tau_point(setup: &SetupParams, tau: f64, what: SweepMeasure, opts: &OptimizerOpts) -> Result<f64> {
    let (psi, _) = build_final_state(&setup.with_tau(tau))?;
    match what {
        SweepMeasure::Lambda2 => Ok(gm_general(&psi, opts)?.lambda2),
        SweepMeasure::Negativity => Ok(negativity_tripartite(&psi)?.value),
    }
}

/// `(τ, value)` for `n_points` times spanning `tau_range`; point `i` uses
/// seed [`point_seed`]`(opts.seed, i)`.
pub fn tau_sweep(
    setup: &SetupParams,
    tau_range: (f64, f64),
    n_points: usize,
    what: SweepMeasure,
    opts: &OptimizerOpts,
) -> Result<Vec<(f64, f64)>> {
    linspace(tau_range.0, tau_range.1, n_points)?
        .into_iter()
        .enumerate()
        .map(|(i, tau)| {
            let o = opts.with_seed(point_seed(opts.seed, i as u64));
            tau_point(setup, tau, what, &o).map(|v| (tau, v))
        })
        .collect()
}

/// Dominant period of an equally spaced series from its autocorrelation.
///
/// The autocorrelation of the mean-removed values is scanned up to three
/// quarters of the series length; the period is the lag of its highest point
/// after the first zero crossing. `None` when the series is constant or the
/// autocorrelation never turns negative.
pub fn detect_period(series: &[(f64, f64)]) -> Option<f64> {
    let n = series.len();
    if n < 4 {
        return None;
    }
    let dt = series[1].0 - series[0].0;
    let mean = series.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let x: Vec<f64> = series.iter().map(|p| p.1 - mean).collect();
    let max_lag = 3 * n / 4;
    let ac: Vec<f64> = (0..max_lag)
        .map(|k| x[..n - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum::<f64>() / (n - k) as f64)
        .collect();
    if ac[0] <= 0.0 {
        return None;
    }
    let zero = ac.iter().position(|&v| v < 0.0)?;
    let (lag, _) = ac.iter().enumerate().skip(zero).fold((zero, f64::NEG_INFINITY), |best, (k, &v)| {
        if v > best.1 {
            (k, v)
        } else {
            best
        }
    });
    Some(lag as f64 * dt)
}

/// Derivative-free minimization; returns the best vertex and its value.
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    step: &[f64],
    ftol: f64,
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step[i];
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = dim + 1;
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect()
    };
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[dim].1 - simplex[0].1).abs() <= ftol {
            break;
        }
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let worst = simplex[dim].clone();
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            evals += 1;
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let (toward, ft) = if fr < worst.1 { (&reflected, fr) } else { (&worst.0, worst.1) };
            let contracted = lerp(&centroid, toward, 0.5);
            let fc = f(&contracted);
            evals += 1;
            if fc < ft {
                simplex[dim] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.0 = lerp(&best, &v.0, 0.5);
                    v.1 = f(&v.0);
                }
                evals += dim;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
