//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! with a nonzero status when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::panic;
use std::time::{Duration, Instant};

use gravtangle_core::classify::{
    classify_three_qubit, ghz_phase_condition, w_multiplicity_residual, PhasePoint, Verdict, TANGLE_TOL,
};
use gravtangle_core::ghzlib::{
    build_recursive, check_spatial_symmetry, rank2_certificate, symmetry_factor, Which,
};
use gravtangle_core::gravity::{
    branch_phase, build_from_phase_vector, symmetric_three_qubit_state, SetupParams,
};
use gravtangle_core::measures::{
    detect_period, gm_general, gm_symmetric, lambda2_fit, negativity_tripartite, overlap2, tau_sweep,
    OptimizerOpts, ProductAnsatz, SweepMeasure,
};
use gravtangle_core::qstate::{
    density_of, hermitian_eigenvalues, parse_bits, partial_transpose, DensityMatrix, Equality,
    LatticeSymmetry,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

const TABLE1: [f64; 15] =
    [0.97, 0.89, 0.77, 0.625, 0.52, 0.50, 0.50, 0.50, 0.50, 0.50, 0.52, 0.625, 0.77, 0.89, 0.97];

fn table1_regression() -> Outcome {
    let start = Instant::now();
    let opts = OptimizerOpts::default();
    let mut worst = (0.0f64, 0usize);
    for (k, expected) in TABLE1.iter().enumerate() {
        let x = PI * (k + 1) as f64 / 8.0;
        let dev = (gm_symmetric(x, &opts).lambda2 - expected).abs();
        if dev > worst.0 {
            worst = (dev, k + 1);
        }
    }
    let t = start.elapsed();
    outcome(
        worst.0 <= 0.01 && within(t, 30.0),
        format!(
            "max |Λ² − table| = {:.4} at {}π/8 (tol 0.01), {:.2} s (limit 30 s)",
            worst.0,
            worst.1,
            t.as_secs_f64()
        ),
    )
}

/// Coefficients of `Gm²τ/ħ` at `d = 1`: a rational part plus `count / √(k² + l²)` terms.
fn tabulated_phase(rational: f64, surds: &[(f64, f64)], l: f64) -> f64 {
    rational + surds.iter().map(|(count, k)| count / (k * k + l * l).sqrt()).sum::<f64>()
}

/// Members of a class, rational coefficient, and `(count, k)` surd terms `count/√(k² + l²)`.
type PhaseClass = (&'static [&'static str], f64, &'static [(f64, f64)]);

fn phase_formula_exactness() -> Outcome {
    let start = Instant::now();
    // (members, rational part, [(count, k)]) for each class of three and four masses
    let three: [PhaseClass; 3] = [
        (&["000", "111"], 2.5, &[]),
        (&["001", "011", "100", "110"], 1.0, &[(1.0, 2.0), (1.0, 1.0)]),
        (&["010", "101"], 0.5, &[(2.0, 1.0)]),
    ];
    let four: [PhaseClass; 6] = [
        (&["0000", "1111"], 13.0 / 3.0, &[]),
        (&["0001", "0111", "1000", "1110"], 2.5, &[(1.0, 3.0), (1.0, 2.0), (1.0, 1.0)]),
        (&["0010", "1101", "0100", "1011"], 11.0 / 6.0, &[(1.0, 2.0), (2.0, 1.0)]),
        (&["1100", "0011"], 2.0, &[(1.0, 3.0), (2.0, 2.0), (1.0, 1.0)]),
        (&["1010", "0101"], 1.0, &[(1.0, 3.0), (3.0, 1.0)]),
        (&["1001", "0110"], 4.0 / 3.0, &[(2.0, 2.0), (2.0, 1.0)]),
    ];
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for l in [1.0, 4.0, 0.37] {
        for (n, table) in [(3usize, &three[..]), (4, &four[..])] {
            let setup = SetupParams::unit_scale(n, l);
            for (members, rational, surds) in table {
                let expected = tabulated_phase(*rational, surds, l);
                for m in members.iter() {
                    let (bits, _) = parse_bits(m).unwrap();
                    let got = branch_phase(bits, &setup).unwrap();
                    worst = worst.max((got - expected).abs());
                    checked += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-12 && checked == 72 && within(t, 1.0),
        format!(
            "{checked} branch phases at l ∈ {{1, 4, 0.37}}, max error {worst:.1e} (tol 1e-12), {:.3} s",
            t.as_secs_f64()
        ),
    )
}

fn ghz_loci() -> Outcome {
    let psi = symmetric_three_qubit_state(FRAC_PI_2, PI);
    let neg = negativity_tripartite(&psi).unwrap().value;
    let lambda2 = gm_general(&psi, &OptimizerOpts::default()).unwrap().lambda2;
    let cond = ghz_phase_condition(PhasePoint::new(FRAC_PI_2, PI));
    outcome(
        (neg - 1.0).abs() <= 1e-9 && (lambda2 - 0.5).abs() <= 1e-3 && cond,
        format!("N = {neg:.12} (1 ± 1e-9), Λ² = {lambda2:.6} (0.5 ± 1e-3), GHZ condition {cond}"),
    )
}

fn separability_loci() -> Outcome {
    let opts = OptimizerOpts::default();
    let mut ok = true;
    let mut worst_neg: f64 = 0.0;
    let mut worst_l2: f64 = 0.0;
    // Δφ₂ = nπ, Δφ₃ = 2mπ
    for k in 0..16i32 {
        let dphi2 = PI * (k - 8) as f64;
        let dphi3 = TAU * ((k % 5) - 2) as f64;
        let psi = symmetric_three_qubit_state(dphi2, dphi3);
        let verdict = classify_three_qubit(&psi).unwrap().verdict;
        let neg = negativity_tripartite(&psi).unwrap().value;
        let l2 = gm_general(&psi, &opts).unwrap().lambda2;
        worst_neg = worst_neg.max(neg);
        worst_l2 = worst_l2.max(1.0 - l2);
        ok &= verdict == Verdict::FullySeparable && neg < 1e-9 && l2 > 1.0 - 1e-9;
    }
    // informational: generic Δφ₂ with Δφ₃ = 0 leaves qubits 1 and 3 entangled
    let generic = symmetric_three_qubit_state(1.0, 0.0);
    let g_verdict = classify_three_qubit(&generic).unwrap().verdict;
    let g_l2 = gm_general(&generic, &opts).unwrap().lambda2;
    outcome(
        ok,
        format!(
            "16 points Δφ₂ = nπ, Δφ₃ = 2mπ: max N = {worst_neg:.1e}, max 1 − Λ² = {worst_l2:.1e}; \
             (info: Δφ₂ = 1, Δφ₃ = 0 → {g_verdict}, Λ² = {g_l2:.4})"
        ),
    )
}

fn w_impossibility() -> Outcome {
    let n = 256;
    let mut hits = 0;
    let mut hits_separable = 0;
    let mut w_verdicts = 0;
    for i in 0..n {
        for j in 0..n {
            let p = PhasePoint::new(TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
            let verdict = classify_three_qubit(&p.state()).unwrap().verdict;
            if verdict == Verdict::WType {
                w_verdicts += 1;
            }
            if w_multiplicity_residual(p) < 1e-6 {
                hits += 1;
                if verdict.is_separable() {
                    hits_separable += 1;
                }
            }
        }
    }
    outcome(
        hits_separable == hits && w_verdicts == 0,
        format!(
            "{hits} grid points meet the W condition, {hits_separable} classified separable; \
             {w_verdicts} WType verdicts in {} points",
            n * n
        ),
    )
}

fn w_off_manifold() -> Outcome {
    let mut phases = BTreeMap::new();
    for (s, p) in [
        ("000", 0.0),
        ("001", 0.0),
        ("010", 0.0),
        ("100", 0.0),
        ("111", 0.0),
        ("110", -FRAC_PI_2),
        ("101", PI),
        ("011", FRAC_PI_2),
    ] {
        phases.insert(parse_bits(s).unwrap().0, p);
    }
    let psi = build_from_phase_vector(3, &phases).unwrap();
    let k = classify_three_qubit(&psi).unwrap();
    let ev = &k.evidence;
    outcome(
        k.verdict == Verdict::WType && ev.three_tangle <= TANGLE_TOL && ev.schmidt_ranks == [2, 2, 2],
        format!(
            "verdict {}, τ₃ = {:.1e} (≤ 1e-8), Schmidt ranks {:?}",
            k.verdict, ev.three_tangle, ev.schmidt_ranks
        ),
    )
}

fn recursive_family() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut worst_err: f64 = 0.0;
    let mut min_det = f64::INFINITY;
    let mut notes = Vec::new();
    for n in 3..=10 {
        let main = build_recursive(n, Which::Main).unwrap();
        if check_spatial_symmetry(&main, Equality::Strict) != (true, true) {
            ok = false;
            notes.push(format!("main n={n} not symmetric"));
        }
        match rank2_certificate(n, Which::Main) {
            Ok(cert) => {
                worst_err = worst_err.max(cert.reconstruction_error);
                min_det = min_det.min(cert.min_site_determinant());
                ok &= cert.reconstruction_error < 1e-10 && cert.min_site_determinant() > 0.1;
            }
            Err(e) => {
                ok = false;
                notes.push(format!("certificate n={n}: {e}"));
            }
        }
        let backup = build_recursive(n, Which::Backup).unwrap();
        let strict = check_spatial_symmetry(&backup, Equality::Strict);
        if n % 2 == 1 {
            let factor = symmetry_factor(&backup, LatticeSymmetry::Invert);
            let minus_one = factor.is_some_and(|f| (f + 1.0).norm() < 1e-12);
            ok &= !strict.0 && strict.1 && minus_one;
        } else {
            ok &= strict == (true, true);
        }
    }
    let t = start.elapsed();
    ok &= within(t, 10.0);
    outcome(
        ok,
        format!(
            "n = 3..10: max certificate error {worst_err:.1e}, min site determinant {min_det:.3}, \
             {:.2} s{}",
            t.as_secs_f64(),
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join(", ")) }
        ),
    )
}

/// `(Δφ₂, Δφ₃, G)` on the 64×64 grid over `[0, 2π)²`.
fn general_grid() -> Vec<(f64, f64, f64)> {
    let n = 64;
    let opts = OptimizerOpts::default();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
            let psi = symmetric_three_qubit_state(x, y);
            out.push((x, y, gm_general(&psi, &opts).unwrap().g));
        }
    }
    out
}

fn general_case_maximum(grid: &[(f64, f64, f64)], elapsed: Duration) -> Outcome {
    let best = grid.iter().copied().fold((0.0, 0.0, f64::NEG_INFINITY), |b, p| if p.2 > b.2 { p } else { b });
    outcome(
        (1.08..=1.20).contains(&best.2) && within(elapsed, 600.0),
        format!(
            "max G = {:.4} at (Δφ₂, Δφ₃) = ({:.4}π, {:.4}π), expected in [1.08, 1.20]; {:.1} s",
            best.2,
            best.0 / PI,
            best.1 / PI,
            elapsed.as_secs_f64()
        ),
    )
}

fn robust_region(grid: &[(f64, f64, f64)]) -> Outcome {
    let (lo, hi) = (11.0 * PI / 16.0, 21.0 * PI / 16.0);
    let band: Vec<_> = grid.iter().filter(|p| p.1 >= lo - 1e-12 && p.1 <= hi + 1e-12).collect();
    let min = band.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
    outcome(
        min >= 0.8,
        format!("min G = {min:.4} over {} points with Δφ₃ ∈ [11π/16, 21π/16] (floor 0.8)", band.len()),
    )
}

fn tau_sweep_reproduction() -> Outcome {
    let d = 200e-6;
    let setup = SetupParams::symmetric(3, 1e-14, d, 20.0 * d, 0.0);
    let opts = OptimizerOpts { n_restarts: 16, ..OptimizerOpts::default() };
    let range = (0.0, 60.0);
    let lambda = tau_sweep(&setup, range, 601, SweepMeasure::Lambda2, &opts).unwrap();
    let neg = tau_sweep(&setup, range, 601, SweepMeasure::Negativity, &opts).unwrap();
    let pl = detect_period(&lambda).unwrap_or(f64::NAN);
    let pn = detect_period(&neg).unwrap_or(f64::NAN);
    let periods_ok =
        (9.0..=25.0).contains(&pl) && (9.0..=25.0).contains(&pn) && (pl - pn).abs() <= 0.1 * 0.5 * (pl + pn);

    let window: Vec<(f64, f64)> =
        neg.iter().copied().filter(|p| p.0 >= 5.0 - 1e-9 && p.0 <= 15.0 + 1e-9).collect();
    let max_n = window.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let (imin, &(t_min, n_min)) = window.iter().enumerate().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).unwrap();
    let interior = imin > 0 && imin + 1 < window.len() && (7.0..=13.0).contains(&t_min);
    let dip_ok = max_n > 0.5 && interior && n_min <= 0.5 * max_n;
    outcome(
        periods_ok && dip_ok,
        format!(
            "periods Λ²: {pl:.1} s, N: {pn:.1} s (in [9, 25], within 10%); in τ ∈ [5, 15] s: \
             max N = {max_n:.3}, minimum N = {n_min:.3} at τ = {t_min:.1} s"
        ),
    )
}

fn fit_consistency() -> Outcome {
    let opts = OptimizerOpts::default();
    let mut worst = (0.0f64, 0.0f64);
    let mut over = 0;
    let n = 121;
    for k in 0..n {
        let x = FRAC_PI_4 + 1.5 * PI * k as f64 / (n - 1) as f64;
        let dev = (gm_symmetric(x, &opts).lambda2 - lambda2_fit(x)).abs();
        if dev > 0.05 {
            over += 1;
        }
        if dev > worst.0 {
            worst = (dev, x);
        }
    }
    outcome(
        worst.0 <= 0.05,
        format!(
            "max |Λ² − fit| = {:.4} at Δφ₃ = {:.3}π (tol 0.05); {over}/{n} samples outside",
            worst.0,
            worst.1 / PI
        ),
    )
}

fn oracle_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240613);
    let mut notes = Vec::new();
    let mut ok = true;

    // eigenvalues vs characteristic polynomial
    let mut worst_poly: f64 = 0.0;
    for trial in 0..40 {
        let n = if trial % 4 == 0 { 2 } else { 3 };
        let rho = if trial % 2 == 0 {
            let psi = random_state(n, &mut rng);
            partial_transpose(&density_of(&psi), &[trial % n]).unwrap()
        } else {
            let dim = 1 << n;
            let a: Vec<_> = (0..dim * dim).map(|_| random_complex(&mut rng)).collect();
            let mut h = vec![c(0.0, 0.0); dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    h[i * dim + j] = (a[i * dim + j] + a[j * dim + i].conj()) * (0.5 / dim as f64);
                }
            }
            DensityMatrix::new(n, h).unwrap()
        };
        let ev = hermitian_eigenvalues(&rho).unwrap();
        let p1 = char_poly(rho.entries(), rho.dim());
        let p2 = poly_from_roots(&ev);
        for (x, y) in p1.iter().zip(&p2) {
            worst_poly = worst_poly.max((x - y).norm());
        }
    }
    ok &= worst_poly <= 1e-8;
    notes.push(format!("char-poly {worst_poly:.1e}"));

    // overlap vs closed form
    let mut worst_abs2: f64 = 0.0;
    for _ in 0..1000 {
        let alpha = rng.gen_range(0.0..FRAC_PI_2);
        let theta = rng.gen_range(0.0..TAU);
        let dphi3 = rng.gen_range(0.0..TAU);
        let psi = symmetric_three_qubit_state(dphi3, dphi3);
        let v = overlap2(&psi, &ProductAnsatz::symmetric(3, alpha, theta)).unwrap();
        worst_abs2 = worst_abs2.max((v - abs2_closed_form(alpha, theta, dphi3)).abs());
    }
    ok &= worst_abs2 <= 1e-12;
    notes.push(format!("abs2 {worst_abs2:.1e}"));

    // optimizer vs exhaustive search
    let mut worst_gm: f64 = 0.0;
    for psi in [ghz3(), random_state(3, &mut rng), random_state(3, &mut rng)] {
        let opt = gm_general(&psi, &OptimizerOpts::default()).unwrap().lambda2;
        let grid = gm_grid_oracle(&psi, 128);
        worst_gm = worst_gm.max((opt - grid).abs());
    }
    ok &= worst_gm <= 1e-3;
    notes.push(format!("GM grid {worst_gm:.1e}"));

    // SLOCC invariance
    let mut changed = 0;
    for (psi, class) in [
        (ghz3(), Verdict::GhzType),
        (w3(), Verdict::WType),
        (biseparable3(), Verdict::Biseparable),
        (ProductAnsatz::new(vec![(0.3, 1.0), (1.1, 2.0), (0.7, 4.0)]).state(), Verdict::FullySeparable),
    ] {
        assert_eq!(classify_three_qubit(&psi).unwrap().verdict, class);
        for _ in 0..100 {
            let ops: Vec<_> = (0..3).map(|_| random_invertible(&mut rng)).collect();
            let moved = apply_local(&psi, &ops);
            if classify_three_qubit(&moved).unwrap().verdict != class {
                changed += 1;
            }
        }
    }
    ok &= changed == 0;
    notes.push(format!("SLOCC changes {changed}/400"));

    outcome(ok, notes.join(", "))
}

fn run(id: u32, name: &str, f: impl FnOnce() -> Outcome + panic::UnwindSafe) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(f);
    let elapsed = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok(o) => (o.pass, o.detail),
        Err(_) => (false, "panicked".to_string()),
    };
    println!("{} criterion {id:>2} {name}: {detail} [{elapsed:.1} s]", if pass { "PASS" } else { "FAIL" });
    pass
}

fn main() {
    let mut passed = 0;
    let mut total = 0;
    let mut tally = |ok: bool| {
        total += 1;
        if ok {
            passed += 1;
        }
    };
    tally(run(1, "Table-1 regression", table1_regression));
    tally(run(2, "phase-formula exactness", phase_formula_exactness));
    tally(run(3, "GHZ loci", ghz_loci));
    tally(run(4, "separability loci", separability_loci));
    tally(run(5, "W impossibility on the symmetric manifold", w_impossibility));
    tally(run(6, "W producibility off the manifold", w_off_manifold));
    tally(run(7, "recursive family", recursive_family));

    let start = Instant::now();
    let grid = panic::catch_unwind(general_grid).ok();
    let elapsed = start.elapsed();
    match &grid {
        Some(g) => {
            tally(run(8, "general-case maximum", || general_case_maximum(g, elapsed)));
            tally(run(9, "robust region", || robust_region(g)));
        }
        None => {
            tally(run(8, "general-case maximum", || outcome(false, "grid panicked".into())));
            tally(run(9, "robust region", || outcome(false, "grid panicked".into())));
        }
    }

    tally(run(10, "τ-sweep reproduction", tau_sweep_reproduction));
    tally(run(11, "fit-curve consistency", fit_consistency));
    tally(run(12, "oracle suites", oracle_suites));

    println!("acceptance: {passed}/{total} criteria passed");
    if passed != total {
        std::process::exit(1);
    }
}
