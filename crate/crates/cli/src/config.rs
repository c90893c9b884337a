use anyhow::{bail, Result};
use gravtangle_core::gravity::{Corrections, Geometry, SetupParams};
use gravtangle_core::measures::OptimizerOpts;

use crate::cli::{GeometryArg, Opts, Switch};

/// Default interaction time for single-configuration analyses, s.
pub const DEFAULT_TAU: f64 = 1.0;

/// Physical setup described by the flags.
pub fn setup(opts: &Opts) -> Result<SetupParams> {
    let tau = opts.tau.unwrap_or(DEFAULT_TAU);
    let mut setup = if opts.unit_scale {
        let l = opts.l.unwrap_or(opts.l_over_d);
        let mut s = SetupParams::unit_scale(opts.n, l);
        s.tau = opts.tau.unwrap_or(1.0);
        s
    } else {
        let l = opts.l.unwrap_or(opts.l_over_d * opts.d);
        SetupParams::symmetric(opts.n, opts.mass, opts.d, l, tau)
    };
    if opts.geometry == GeometryArg::Parallel {
        if opts.n != 2 {
            bail!("the parallel geometry has exactly two masses (use --n 2)");
        }
        setup.geometry = Geometry::ParallelLine;
    }
    if opts.corrections == Switch::On {
        setup.corrections = Corrections::WithCorrections;
    }
    setup.validate()?;
    Ok(setup)
}

pub fn optimizer(opts: &Opts) -> Result<OptimizerOpts> {
    if opts.restarts == 0 {
        bail!("--restarts must be at least 1");
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        bail!("--tol must be positive");
    }
    Ok(OptimizerOpts {
        n_restarts: opts.restarts,
        seed: opts.seed,
        tol: opts.tol,
        ..OptimizerOpts::default()
    })
}

/// `--resolution` or the target's default, at least 2.
pub fn resolution(opts: &Opts, default: usize) -> Result<usize> {
    let r = opts.resolution.unwrap_or(default);
    if r < 2 {
        bail!("--resolution must be at least 2, got {r}");
    }
    Ok(r)
}

/// `(τ_min, τ_max)` with the given default end.
pub fn tau_range(opts: &Opts, default_max: f64) -> Result<(f64, f64)> {
    let range = (opts.tau_min, opts.tau_max.unwrap_or(default_max));
    if !(range.0 >= 0.0 && range.1 > range.0 && range.1.is_finite()) {
        bail!("τ range must satisfy 0 ≤ --tau-min < --tau-max, got {range:?}");
    }
    Ok(range)
}

/// Provenance line listing the resolved configuration.
pub fn provenance(
    command: &str,
    setup: Option<&SetupParams>,
    opts: &Opts,
    extra: &[(&str, String)],
) -> String {
    let mut fields: Vec<(String, String)> = vec![("command".into(), command.into())];
    if let Some(s) = setup {
        let geometry = match s.geometry {
            Geometry::SymmetricLine => "symmetric",
            Geometry::ParallelLine => "parallel",
        };
        let corrections = match s.corrections {
            Corrections::Newtonian => "off",
            Corrections::WithCorrections => "on",
        };
        fields.extend([
            ("G".into(), format!("{:?}", s.g)),
            ("hbar".into(), format!("{:?}", s.hbar)),
            ("c".into(), format!("{:?}", s.c)),
            ("n".into(), s.n_masses().to_string()),
            ("mass".into(), format!("{:?}", s.masses[0])),
            ("d".into(), format!("{:?}", s.d)),
            ("l".into(), format!("{:?}", s.l)),
            ("l_over_d".into(), format!("{:?}", s.l / s.d)),
            ("tau".into(), format!("{:?}", s.tau)),
            ("geometry".into(), geometry.into()),
            ("corrections".into(), corrections.into()),
            ("unit_scale".into(), opts.unit_scale.to_string()),
        ]);
    }
    fields.extend([
        ("restarts".into(), opts.restarts.to_string()),
        ("seed".into(), opts.seed.to_string()),
        ("tol".into(), format!("{:?}", opts.tol)),
    ]);
    fields.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    let body: Vec<String> = fields.into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# {}", body.join(" "))
}
