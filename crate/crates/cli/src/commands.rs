use std::fmt::Write as _;

use anyhow::Context;
use haarcalc::haar_mc::{compare, estimate_monomial, estimate_z, Comparison};
use haarcalc::largen::{wd_closed, wd_fixedpoint, wd_from_finite_n, ww_series, TraceSeries};
use haarcalc::sector::exact_z;
use haarcalc::su_shifted::{d_table_recursive, d_table_shift, epsilon_integral};
use haarcalc::verify::{suite_largen, suite_mc, suite_shift, suite_tables, SuiteReport};
use haarcalc::weingarten::{monomial_integral_unitary, z_table_character, z_table_recursive};
use haarcalc::{BigRational, CoeffTable, Group, GroupSpec, SourceMatrices};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::{CoeffMethod, FamilyArg, Format, GroupArg, SeriesMethod, Suite, Target};

/// Largest order for the finite-`N` route from the command line.
pub const FINITE_N_CLI_MAX: usize = 4;

/// Rendered output and whether every check it contains passed.
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, pass: true }
    }
}

/// Invalid flags or input; reported with exit status 2 like every other error.
fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn group(g: GroupArg) -> Group {
    match g {
        GroupArg::U => Group::Unitary,
        GroupArg::Su => Group::SpecialUnitary,
    }
}

fn only(format: Format, allowed: &[Format], command: &str) -> anyhow::Result<()> {
    if !allowed.contains(&format) {
        return Err(usage(format!("{command} does not support --format {format:?}").to_lowercase()));
    }
    Ok(())
}

pub fn coeffs(family: FamilyArg, n: usize, method: Option<CoeffMethod>, format: Option<Format>) -> anyhow::Result<Outcome> {
    let method = method.unwrap_or(match family {
        FamilyArg::Weingarten => CoeffMethod::Character,
        FamilyArg::SuShifted => CoeffMethod::Shift,
    });
    let table: CoeffTable = match (family, method) {
        (FamilyArg::Weingarten, CoeffMethod::Character) => z_table_character(n),
        (FamilyArg::Weingarten, CoeffMethod::Recursion) => z_table_recursive(n)?,
        (FamilyArg::SuShifted, CoeffMethod::Shift) => d_table_shift(n),
        (FamilyArg::SuShifted, CoeffMethod::Recursion) => d_table_recursive(n)?,
        (f, m) => {
            let f = if f == FamilyArg::Weingarten { "weingarten" } else { "su-shifted" };
            return Err(usage(format!("method {m:?} is not available for family {f}").to_lowercase()));
        }
    };
    let body = match format.unwrap_or(Format::Json) {
        Format::Json => pretty(&table.to_json()),
        Format::Csv => table.to_csv(),
        Format::Latex => format!("{}\n", table.to_latex_row()),
        Format::Text => {
            let sym = table.family.symbol();
            table.iter().rev().fold(String::new(), |mut s, (p, v)| {
                let _ = writeln!(s, "{sym}[{p}] = {v}");
                s
            })
        }
    };
    Ok(Outcome::ok(body))
}

fn wd_by(method: SeriesMethod, order: usize) -> anyhow::Result<TraceSeries> {
    Ok(match method {
        SeriesMethod::Closed => wd_closed(order),
        SeriesMethod::Fixedpoint => wd_fixedpoint(order),
        SeriesMethod::FiniteN => wd_from_finite_n(order)?,
    })
}

fn method_name(m: SeriesMethod) -> &'static str {
    match m {
        SeriesMethod::Closed => "closed",
        SeriesMethod::Fixedpoint => "fixedpoint",
        SeriesMethod::FiniteN => "finite-n",
    }
}

pub fn largen(target: Target, order: usize, method: SeriesMethod, do_compare: bool, format: Option<Format>) -> anyhow::Result<Outcome> {
    let format = format.unwrap_or(Format::Text);
    only(format, &[Format::Json, Format::Latex, Format::Text], "largen")?;
    if order == 0 {
        return Err(usage("--order must be at least 1"));
    }
    if method == SeriesMethod::FiniteN && order > FINITE_N_CLI_MAX {
        return Err(usage(format!("--method finite-n supports --order up to {FINITE_N_CLI_MAX}")));
    }
    let series = match target {
        Target::Ww => {
            if method != SeriesMethod::Closed || do_compare {
                return Err(usage("ww has a single derivation: use --method closed without --compare"));
            }
            ww_series(order)
        }
        Target::Wd => wd_by(method, order)?,
    };

    let mut diffs = Vec::new();
    if do_compare {
        for other in [SeriesMethod::Closed, SeriesMethod::Fixedpoint, SeriesMethod::FiniteN] {
            if other == method || (other == SeriesMethod::FiniteN && order > FINITE_N_CLI_MAX) {
                continue;
            }
            let d = series.diff(&wd_by(other, order)?);
            diffs.push((other, d));
        }
    }
    let pass = diffs.iter().all(|(_, d)| d.is_empty());

    let body = match format {
        Format::Json => {
            let mut v = series.to_json();
            if do_compare {
                v["compare"] = json!({
                    "method": method_name(method),
                    "pass": pass,
                    "against": diffs.iter().map(|(m, d)| json!({"method": method_name(*m), "diff": d})).collect::<Vec<_>>(),
                });
            }
            pretty(&v)
        }
        Format::Latex => format!("{}\n", series.to_latex()),
        _ => {
            let mut s = format!("{}\n", series.to_text());
            for (m, d) in &diffs {
                let _ = writeln!(s, "diff {} vs {}: {} terms", method_name(method), method_name(*m), d.len());
                for t in d {
                    let _ = writeln!(s, "  [{}] {} vs {}", t.partition, t.left, t.right);
                }
            }
            s
        }
    };
    Ok(Outcome { body, pass })
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn comparison_json(c: &Option<Comparison>) -> Value {
    c.as_ref().map_or(Value::Null, |c| serde_json::to_value(c).expect("comparison serializes"))
}

#[allow(clippy::too_many_arguments)]
pub fn mc(
    p: usize,
    n: usize,
    dim: usize,
    g: GroupArg,
    samples: u64,
    matrices: Option<&std::path::Path>,
    sigmas: f64,
    seed: u64,
    format: Option<Format>,
) -> anyhow::Result<Outcome> {
    only(format.unwrap_or(Format::Json), &[Format::Json], "mc")?;
    if sigmas <= 0.0 {
        return Err(usage("--sigmas must be positive"));
    }
    let spec = GroupSpec::new(group(g), dim).map_err(|e| usage(e.to_string()))?;
    let src = match matrices {
        Some(path) => SourceMatrices::load(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(|e| usage(format!("{e:#}")))?,
        None => SourceMatrices::identity(dim),
    };
    let est = estimate_z(p, n, &src, spec, samples, seed).map_err(|e| usage(e.to_string()))?;
    let exact = exact_z(p, n, &src, spec.group)?;
    let cmp = exact.map(|x| compare(&est, x, sigmas));
    let v = json!({
        "p": p,
        "n": n,
        "group": spec,
        "estimate": est,
        "exact": exact.map_or(Value::Null, complex_json),
        "comparison": comparison_json(&cmp),
    });
    Ok(Outcome { body: pretty(&v), pass: cmp.is_none_or(|c| c.pass) })
}

/// Exact value of the monomial, if one of the closed forms applies.
fn exact_monomial(i: &[usize], j: &[usize], k: &[usize], l: &[usize], dim: usize, g: Group) -> anyhow::Result<Option<BigRational>> {
    let (p, n) = (i.len(), k.len());
    if let Some(&index) = i.iter().chain(j).chain(k).chain(l).find(|&&x| x == 0 || x > dim) {
        return Err(usage(format!("index {index} out of range 1..={dim}")));
    }
    let vanishes = match g {
        Group::Unitary => p != n,
        Group::SpecialUnitary => (p as i64 - n as i64).rem_euclid(dim as i64) != 0,
    };
    if vanishes {
        return Ok(Some(BigRational::from_integer(0.into())));
    }
    if p == n && n < dim {
        return Ok(Some(monomial_integral_unitary(i, j, k, l, dim)?));
    }
    if g == Group::SpecialUnitary && p == dim && n == 0 {
        return Ok(Some(epsilon_integral(i, j, dim)?));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
pub fn tensor(
    i: &[usize],
    j: &[usize],
    k: &[usize],
    l: &[usize],
    dim: usize,
    g: GroupArg,
    samples: Option<u64>,
    sigmas: f64,
    seed: u64,
    format: Option<Format>,
) -> anyhow::Result<Outcome> {
    only(format.unwrap_or(Format::Json), &[Format::Json], "tensor")?;
    if i.len() != j.len() || k.len() != l.len() {
        return Err(usage("--i/--j and --k/--l must have equal lengths"));
    }
    let spec = GroupSpec::new(group(g), dim).map_err(|e| usage(e.to_string()))?;
    let exact = exact_monomial(i, j, k, l, dim, spec.group)?;
    if exact.is_none() && samples.is_none() {
        return Err(usage("no closed form for this monomial; pass --samples for an estimate"));
    }
    let est = samples
        .map(|s| estimate_monomial(i, j, k, l, spec, s, seed))
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let exact_f = exact.as_ref().map(|x| x.to_f64().unwrap_or(f64::NAN));
    let cmp = match (&est, exact_f) {
        (Some(e), Some(x)) => Some(compare(e, Complex64::new(x, 0.0), sigmas)),
        _ => None,
    };
    let v = json!({
        "group": spec,
        "i": i, "j": j, "k": k, "l": l,
        "exact": exact.as_ref().map(ToString::to_string),
        "exact_float": exact_f,
        "estimate": est,
        "comparison": comparison_json(&cmp),
    });
    Ok(Outcome { body: pretty(&v), pass: cmp.is_none_or(|c| c.pass) })
}

pub fn verify(suite: Suite, samples: u64, seed: u64, format: Option<Format>) -> anyhow::Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    only(format, &[Format::Json, Format::Text], "verify")?;
    let reports: Vec<SuiteReport> = match suite {
        Suite::Tables => vec![suite_tables()],
        Suite::Shift => vec![suite_shift()],
        Suite::Largen => vec![suite_largen()],
        Suite::Mc => vec![suite_mc(samples, seed)],
        Suite::All => vec![suite_tables(), suite_shift(), suite_largen(), suite_mc(samples, seed)],
    };
    let pass = reports.iter().all(|r| r.pass);
    let body = if format == Format::Json {
        pretty(&json!({ "pass": pass, "suites": reports }))
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(s, "{}: {}", r.suite, if r.pass { "PASS" } else { "FAIL" });
            for c in &r.checks {
                let _ = writeln!(s, "  {} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
        }
        s
    };
    Ok(Outcome { body, pass })
}
