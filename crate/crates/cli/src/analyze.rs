use std::fs::File;
use std::io::{self, Write};

use anyhow::{bail, Context, Result};
use gravtangle_core::classify::{classify_three_qubit, RootAnalysis};
use gravtangle_core::ghzlib::{
    build_recursive, check_spatial_symmetry, rank2_certificate, symmetry_factor, Which,
};
use gravtangle_core::gravity::{build_final_state, symmetric_three_qubit_state, SetupParams};
use gravtangle_core::measures::{bipartite_negativity, gm_general, negativity_tripartite};
use gravtangle_core::qstate::{format_bits, Equality, LatticeSymmetry, PureState};
use gravtangle_core::Complex64;

use crate::cli::{Analysis, Opts, WhichArg};
use crate::config;
use crate::output::{num, CsvOut};
use crate::phase_file::PhaseVector;

/// Runs one analysis; returns `false` when a construction check fails.
pub fn run(what: Analysis, opts: &Opts) -> Result<bool> {
    match what {
        Analysis::Phases => phases(opts).map(|_| true),
        Analysis::Build => build(opts).map(|_| true),
        Analysis::Classify => classify(opts).map(|_| true),
        Analysis::Gm => gm(opts).map(|_| true),
        Analysis::Negativity => negativity(opts).map(|_| true),
        Analysis::GhzConstruct => ghz_construct(opts),
    }
}

/// Where the analysed state came from.
enum Source {
    PhaseFile(PhaseVector),
    PhasePoint(f64, f64),
    Setup(SetupParams),
}

fn load(opts: &Opts) -> Result<(PureState, Source)> {
    if let Some(path) = &opts.phase_file {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        let pv =
            PhaseVector::parse(file).with_context(|| format!("malformed phase file {}", path.display()))?;
        return Ok((pv.state()?, Source::PhaseFile(pv)));
    }
    if let (Some(x), Some(y)) = (opts.dphi2, opts.dphi3) {
        return Ok((symmetric_three_qubit_state(x, y), Source::PhasePoint(x, y)));
    }
    let setup = config::setup(opts)?;
    let (psi, _) = build_final_state(&setup)?;
    Ok((psi, Source::Setup(setup)))
}

fn source_line(source: &Source) -> String {
    match source {
        Source::PhaseFile(pv) => format!("source: phase file ({} qubits)", pv.n_qubits),
        Source::PhasePoint(x, y) => format!("source: symmetric family, dphi2 = {x}, dphi3 = {y}"),
        Source::Setup(s) => format!(
            "source: setup, n = {}, m = {:?} kg, d = {:?} m, l = {:?} m, tau = {:?} s",
            s.n_masses(),
            s.masses[0],
            s.d,
            s.l,
            s.tau
        ),
    }
}

fn provenance(command: &str, source: &Source, opts: &Opts) -> String {
    match source {
        Source::Setup(s) => config::provenance(command, Some(s), opts, &[]),
        Source::PhaseFile(_) => {
            let file = opts.phase_file.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
            config::provenance(command, None, opts, &[("phase_file", file)])
        }
        Source::PhasePoint(x, y) => {
            config::provenance(command, None, opts, &[("dphi2", x.to_string()), ("dphi3", y.to_string())])
        }
    }
}

fn phases(opts: &Opts) -> Result<()> {
    let setup = config::setup(opts)?;
    let (_, table) = build_final_state(&setup)?;
    let n = table.n_qubits();
    let prov = config::provenance("analyze phases", Some(&setup), opts, &[]);
    let mut out = CsvOut::open(
        opts.out.as_deref(),
        &prov,
        &["representative", "members", "phase_rad", "relative_phase_rad"],
    )?;
    let classes = &table.classes;
    for (k, rel) in table.relative_phases().iter().enumerate() {
        let members: Vec<String> = classes.members[k].iter().map(|&b| format_bits(b, n)).collect();
        out.row([
            format_bits(classes.representatives[k], n),
            members.join(" "),
            num(table.phases[k]),
            num(*rel),
        ])?;
    }
    out.finish()
}

fn write_amplitudes(opts: &Opts, prov: &str, psi: &PureState) -> Result<()> {
    let n = psi.n_qubits();
    let mut out = CsvOut::open(opts.out.as_deref(), prov, &["bitstring", "re", "im", "phase_rad"])?;
    for (b, z) in psi.amplitudes().iter().enumerate() {
        out.row([format_bits(b, n), num(z.re), num(z.im), num(z.arg())])?;
    }
    out.finish()
}

fn build(opts: &Opts) -> Result<()> {
    let (psi, source) = load(opts)?;
    write_amplitudes(opts, &provenance("analyze build", &source, opts), &psi)
}

fn complex(z: Complex64) -> String {
    format!("{:.12} {:+.12}i", z.re, z.im)
}

fn roots_line(roots: &RootAnalysis) -> String {
    match roots {
        RootAnalysis::Distinct(a, b) => format!("two distinct: {}, {}", complex(*a), complex(*b)),
        RootAnalysis::Double(x) => format!("double: {}", complex(*x)),
        RootAnalysis::Linear(x) => format!("single (linear): {}", complex(*x)),
        RootAnalysis::NoSolution => "none".into(),
        RootAnalysis::IdenticallySatisfied => "every x".into(),
    }
}

fn classify(opts: &Opts) -> Result<()> {
    let (psi, source) = load(opts)?;
    if psi.n_qubits() != 3 {
        bail!("SLOCC classification needs three qubits, got {}", psi.n_qubits());
    }
    let k = classify_three_qubit(&psi)?;
    let ev = &k.evidence;
    let mut w = io::stdout().lock();
    writeln!(w, "{}", source_line(&source))?;
    writeln!(w, "verdict: {}", k.verdict)?;
    writeln!(w, "schmidt_ranks: {:?}", ev.schmidt_ranks)?;
    writeln!(
        w,
        "singular_ratios: [{:.6e}, {:.6e}, {:.6e}]",
        ev.singular_ratios[0], ev.singular_ratios[1], ev.singular_ratios[2]
    )?;
    writeln!(w, "three_tangle: {:.6e}", ev.three_tangle)?;
    match ev.phase_point {
        Some(p) => writeln!(w, "phase_point: dphi2 = {:.12}, dphi3 = {:.12}", p.dphi2(), p.dphi3())?,
        None => writeln!(w, "phase_point: off the symmetric family")?,
    }
    if let Some(dep) = ev.range_dependent {
        writeln!(w, "range_dependent: {dep}")?;
    }
    if let Some(roots) = &ev.roots {
        writeln!(w, "product_roots: {}", roots_line(roots))?;
    }
    writeln!(w, "consistent: {}", ev.consistent)?;
    Ok(())
}

fn gm(opts: &Opts) -> Result<()> {
    let (psi, source) = load(opts)?;
    let gm = gm_general(&psi, &config::optimizer(opts)?)?;
    let mut w = io::stdout().lock();
    writeln!(w, "{}", source_line(&source))?;
    writeln!(w, "lambda2: {:.12}", gm.lambda2)?;
    writeln!(w, "g: {:.12}", gm.g)?;
    writeln!(w, "restarts: {}", gm.n_restarts_used)?;
    for (q, (alpha, theta)) in gm.argmax.sites.iter().enumerate() {
        writeln!(w, "argmax qubit {q}: alpha = {alpha:.12}, theta = {theta:.12}")?;
    }
    if psi.n_qubits() == 3 {
        writeln!(w, "negativity: {:.12}", negativity_tripartite(&psi)?.value)?;
    }
    Ok(())
}

fn negativity(opts: &Opts) -> Result<()> {
    let (psi, source) = load(opts)?;
    let psi = psi.normalized();
    let mut w = io::stdout().lock();
    writeln!(w, "{}", source_line(&source))?;
    for q in 0..psi.n_qubits() {
        writeln!(w, "cut {q}|rest: {:.12}", bipartite_negativity(&psi, &[q])?)?;
    }
    if psi.n_qubits() == 3 {
        writeln!(w, "negativity: {:.12}", negativity_tripartite(&psi)?.value)?;
    }
    Ok(())
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn factor_line(psi: &PureState, kind: LatticeSymmetry) -> String {
    symmetry_factor(psi, kind).map_or_else(|| "none".into(), complex)
}

fn ghz_construct(opts: &Opts) -> Result<bool> {
    let n = opts.n;
    let which = match opts.which {
        WhichArg::Main => Which::Main,
        WhichArg::Backup => Which::Backup,
    };
    let psi = build_recursive(n, which)?;
    let strict = check_spatial_symmetry(&psi, Equality::Strict);
    let ray = check_spatial_symmetry(&psi, Equality::Ray);
    let cert = rank2_certificate(n, which);
    // odd-n backup states pick up a −1 under inversion
    let expected_strict = (which == Which::Main || n.is_multiple_of(2), true);
    let ok = strict == expected_strict && ray == (true, true) && cert.is_ok();

    let name = match which {
        Which::Main => "main",
        Which::Backup => "backup",
    };
    let mut w = io::stdout().lock();
    writeln!(w, "state: recursive {name}, n = {n}")?;
    writeln!(w, "strict symmetry (invert/turn-over): {}/{}", pass_fail(strict.0), pass_fail(strict.1))?;
    writeln!(w, "ray symmetry (invert/turn-over): {}/{}", pass_fail(ray.0), pass_fail(ray.1))?;
    writeln!(w, "invert factor: {}", factor_line(&psi, LatticeSymmetry::Invert))?;
    writeln!(w, "turn-over factor: {}", factor_line(&psi, LatticeSymmetry::TurnOver))?;
    match &cert {
        Ok(c) => {
            writeln!(w, "certificate error: {:.3e}", c.reconstruction_error)?;
            writeln!(w, "min site determinant: {:.12}", c.min_site_determinant())?;
            let dets: Vec<String> = c.site_determinants.iter().map(|d| format!("{d:.6}")).collect();
            writeln!(w, "site determinants: [{}]", dets.join(", "))?;
        }
        Err(e) => writeln!(w, "certificate: {e}")?,
    }
    writeln!(w, "checks: {}", pass_fail(ok))?;
    drop(w);
    let prov = config::provenance(
        "analyze ghz-construct",
        None,
        opts,
        &[("n", n.to_string()), ("which", name.to_string())],
    );
    write_amplitudes(opts, &prov, &psi)?;
    Ok(ok)
}
