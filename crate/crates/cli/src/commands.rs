use crate::args::{Cli, Command, Format, Mode};
use crate::config::{Family, RunConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::output::{json_opt, json_value, CsvTable};
use dsop::lfreud::{ghahn_lf_run, hahn_closed_form, hahn_lf_run, meixner_closed_form, meixner_lf_run, GHahnParams};
use dsop::moments::{default_moments, moments_direct, moments_hahn_gamma};
use dsop::oracle::oracle_table;
use dsop::structure::{band_identity_residuals, de_pointwise_check, orthogonality_check, structure_coeffs, Residual, VerificationReport};
use dsop::{Arithmetic, RecurrenceTable, Scalar};
use serde_json::{json, Map, Value};

/// What a command printed and the exit code it asks for.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: EXIT_OK }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Table(args) => cmd_table(&RunConfig::from_args(args)?).map(Outcome::ok),
        Command::Verify(args) => cmd_verify(&RunConfig::from_args(&args.common)?, args.tolerance),
        Command::Moments(args) => cmd_moments(&RunConfig::from_args(&args.common)?, args.normalized).map(Outcome::ok),
        Command::Structure(args) => cmd_structure(&RunConfig::from_args(args)?).map(Outcome::ok),
    }
}

/// Largest error radius asked of the oracle: two digits beyond the output.
fn oracle_target(cfg: &RunConfig) -> f64 {
    match cfg.arithmetic {
        Arithmetic::Exact => 0.0,
        Arithmetic::Float { .. } => 10f64.powi(-(cfg.digits as i32 + 2)).max(1e-300),
    }
}

/// `β_0..β_N`, `γ_0..γ_N` by the configured path.
pub fn compute_table(cfg: &RunConfig, n: usize) -> Result<RecurrenceTable, CliError> {
    let w = &cfg.weight;
    let ar = cfg.arithmetic;
    let l = |v: &Scalar| ar.lift(v);
    let t = match (w.family, cfg.mode) {
        (_, Mode::Oracle) => oracle_table(&w.spec, n, ar, oracle_target(cfg))?,
        (Family::Meixner, Mode::Lf) => meixner_lf_run(&l(&w.a[0])?, &l(&w.z)?, n)?,
        (Family::Meixner, Mode::Closed) => meixner_closed_form(&l(&w.a[0])?, &l(&w.z)?, n)?,
        (Family::Hahn, Mode::Lf) => hahn_lf_run(&l(&w.a[0])?, &l(&w.a[1])?, &l(&w.b[0])?, n)?,
        (Family::Hahn, Mode::Closed) => hahn_closed_form(&l(&w.a[0])?, &l(&w.a[1])?, &l(&w.b[0])?, n)?,
        (Family::Ghahn1, Mode::Lf) => {
            let p = GHahnParams::new(l(&w.a[0])?, l(&w.a[1])?, l(&w.b[0])?, l(&w.z)?);
            ghahn_lf_run(&p, n, cfg.seeds.clone(), ar)?
        }
        (family, mode) => {
            return Err(CliError::Usage(format!("{family} does not support --mode {mode:?}")));
        }
    };
    Ok(t)
}

pub fn cmd_table(cfg: &RunConfig) -> Result<String, CliError> {
    let t = compute_table(cfg, cfg.n)?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut csv = CsvTable::new(&["n", "beta", "gamma"], cfg.digits);
            for (n, (b, g)) in t.beta.iter().zip(&t.gamma).enumerate() {
                csv.push(vec![Some(Scalar::int(n as i64)), Some(b.clone()), Some(g.clone())]);
            }
            csv.emit()
        }
        Format::Json => {
            let rows: Vec<Value> = t
                .beta
                .iter()
                .zip(&t.gamma)
                .enumerate()
                .map(|(n, (b, g))| json!({"n": n, "beta": json_value(b, cfg.digits), "gamma": json_value(g, cfg.digits)}))
                .collect();
            json_string(&Value::Array(rows))
        }
    })
}

fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Table long enough for complete bands up to `N`: `N + max(p, q+1) - 1`,
/// capped at the last support point. Falls back to `N` when the longer run
/// fails.
fn structure_table(cfg: &RunConfig) -> Result<RecurrenceTable, CliError> {
    let spec = &cfg.weight.spec;
    let d = spec.p().max(spec.q() + 1);
    let mut top = cfg.n + d.saturating_sub(1);
    if let Some(c) = spec.support_cutoff() {
        top = top.min(c as usize).max(cfg.n);
    }
    match compute_table(cfg, top) {
        Ok(t) => Ok(t),
        Err(_) if top > cfg.n => compute_table(cfg, cfg.n),
        Err(e) => Err(e),
    }
}

pub fn cmd_verify(cfg: &RunConfig, tolerance: Option<f64>) -> Result<Outcome, CliError> {
    let exact = cfg.arithmetic == Arithmetic::Exact;
    let tol = tolerance.unwrap_or(if exact { 0.0 } else { 1e-20 });
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage(format!("--tolerance must be nonnegative, got {tol}")));
    }
    let spec = &cfg.weight.spec;
    let primary = structure_table(cfg)?;
    let rec = primary.truncated(cfg.n);
    let mut skipped = Map::new();

    let mut diffs = None;
    if cfg.mode != Mode::Oracle {
        match oracle_table(spec, cfg.n, cfg.arithmetic, oracle_target(cfg)) {
            Ok(or) => diffs = Some(rec.max_diff(&or)),
            Err(e) => {
                skipped.insert("comparisons".into(), Value::String(e.to_string()));
            }
        }
    }

    let mut report = VerificationReport::new(cfg.n, cfg.precision_bits());
    match structure_coeffs(spec, &primary, cfg.n) {
        Ok(sc) => {
            report.merge(band_identity_residuals(&sc, &primary, &cfg.weight.z));
            report.merge(de_pointwise_check(spec, &primary, &sc, cfg.n, 0));
        }
        Err(e) => {
            skipped.insert("structure".into(), Value::String(e.to_string()));
        }
    }
    let tail_target = if tol > 0.0 { (tol * 1e-3).min(1e-25) } else { 1e-30 };
    match orthogonality_check(spec, &rec, cfg.n, tail_target) {
        Ok(o) => {
            let max = if o.exact_functional == Some(true) { 0.0 } else { o.max_offdiag };
            report.orthogonality = Some(Residual { max, instances: cfg.n * (cfg.n + 1) / 2 });
        }
        Err(e) => {
            skipped.insert("orthogonality".into(), Value::String(e.to_string()));
        }
    }

    let diffs_pass = diffs.is_none_or(|(db, dg)| db <= tol && dg <= tol);
    let pass = diffs_pass && report.passes(tol);
    let mut residuals = Map::new();
    for (name, r) in report.entries() {
        residuals.insert(name.into(), r.map_or(Value::Null, |r| json!(r.max)));
    }
    let w = &cfg.weight;
    let list = |v: &[Scalar]| Value::Array(v.iter().map(|x| json_value(x, cfg.digits)).collect());
    let out = json!({
        "family": w.family.name(),
        "params": {"a": list(&w.a), "b": list(&w.b), "z": json_value(&w.z, cfg.digits)},
        "n_max": cfg.n,
        "mode": format!("{:?}", cfg.mode).to_lowercase(),
        "method": primary.method.name(),
        "precision_bits": cfg.precision_bits(),
        "tolerance": tol,
        "comparisons": {
            "max_beta_diff": diffs.map(|d| d.0),
            "max_gamma_diff": diffs.map(|d| d.1),
        },
        "residuals": residuals,
        "skipped": skipped,
        "verdict": if pass { "pass" } else { "fail" },
    });
    Ok(Outcome { stdout: json_string(&out), code: if pass { EXIT_OK } else { EXIT_VERIFY_FAILED } })
}

pub fn cmd_moments(cfg: &RunConfig, normalized: bool) -> Result<String, CliError> {
    let w = &cfg.weight;
    let spec = &w.spec;
    let n = cfg.n;
    let mom = if normalized {
        default_moments(spec, n, cfg.arithmetic)?
    } else if spec.support_cutoff().is_some() {
        moments_direct(spec, n, 0.0, cfg.arithmetic)?
    } else {
        match cfg.arithmetic {
            Arithmetic::Exact => {
                return Err(CliError::Usage(
                    "μ_0 of an infinite-support weight is a series value; use --normalized or --arithmetic float".into(),
                ));
            }
            Arithmetic::Float { .. } if w.family == Family::Hahn => moments_hahn_gamma(&w.a[0], &w.a[1], &w.b[0], n, cfg.arithmetic)?,
            Arithmetic::Float { .. } => {
                let target = 10f64.powi(-(cfg.digits as i32 + 5)).max(1e-300);
                moments_direct(spec, n, target, cfg.arithmetic)?
            }
        }
    };
    Ok(match cfg.format {
        Format::Csv => {
            let mut csv = CsvTable::new(&["n", "mu"], cfg.digits);
            for (i, v) in mom.values.iter().enumerate() {
                csv.push(vec![Some(Scalar::int(i as i64)), Some(v.clone())]);
            }
            csv.emit()
        }
        Format::Json => {
            let rows = mom.values.iter().enumerate().map(|(i, v)| json!({"n": i, "mu": json_value(v, cfg.digits)})).collect();
            json_string(&Value::Array(rows))
        }
    })
}

pub fn cmd_structure(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = &cfg.weight.spec;
    let rec = structure_table(cfg)?;
    let sc = structure_coeffs(spec, &rec, cfg.n)?;
    let (ka, kb) = (sc.a.k_range(), sc.b.k_range());
    let k_lo = *ka.start().min(kb.start());
    let k_hi = *ka.end().max(kb.end());
    let mut rows = Vec::new();
    for n in 0..=cfg.n {
        for k in k_lo..=k_hi {
            if (n as i64) + k < 0 {
                continue;
            }
            let a = ka.contains(&k).then(|| sc.a.get(n, k)).flatten();
            let b = kb.contains(&k).then(|| sc.b.get(n, k)).flatten();
            rows.push((n, k, a, b));
        }
    }
    Ok(match cfg.format {
        Format::Csv => {
            let mut csv = CsvTable::new(&["n", "k", "A", "B"], cfg.digits);
            for (n, k, a, b) in rows {
                csv.push(vec![Some(Scalar::int(n as i64)), Some(Scalar::int(k)), a, b]);
            }
            csv.emit()
        }
        Format::Json => {
            let rows = rows
                .iter()
                .map(|(n, k, a, b)| json!({"n": n, "k": k, "A": json_opt(a.as_ref(), cfg.digits), "B": json_opt(b.as_ref(), cfg.digits)}))
                .collect();
            json_string(&Value::Array(rows))
        }
    })
}
