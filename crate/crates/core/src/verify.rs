//! Regression and consistency suites shared by the `verify` command and the
//! acceptance tests. Each check is a named pass/fail with a one-line detail.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::fixtures::reference;
use crate::haar_mc::{
    compare, estimate_monomial, estimate_observables, monomial_observable, sample_haar, block_rng,
    unitarity_residual, z_observable, GroupSpec, MCEstimate, Observable,
};
use crate::largen::{w_fixedpoint, w_lagrange, wd_closed, wd_fixedpoint, wd_from_finite_n, ww_series, TraceSeries};
use crate::partitions::enumerate_partitions;
use crate::sector::exact_z;
use crate::sources::{CMatrix, SourceMatrices};
use crate::su_shifted::{d_table_shift, d_tables_recursive, verify_shift_identity};
use crate::tables::CoeffTable;
use crate::weingarten::{monomial_integral_unitary, z_table_character, z_tables_recursive};
use crate::haar_mc::Group;

/// Significance used by every statistical check.
pub const SIGMAS: f64 = 5.0;

/// Seed for the source matrices `J`, `K` of the Monte Carlo checks; the
/// sampling seed is separate.
pub const SOURCE_SEED: u64 = 2024;
pub const SOURCE_SCALE: f64 = 0.6;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), pass: checks.iter().all(|c| c.pass), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn table_diff(name: &str, got: &CoeffTable, want: &CoeffTable) -> Check {
    let bad: Vec<String> = want
        .iter()
        .filter(|(p, v)| got.get(p) != Some(*v))
        .map(|(p, v)| {
            let g = got.get(p).map_or("missing".to_string(), ToString::to_string);
            format!("[{p}]: got {g}, want {v}")
        })
        .collect();
    let detail = if bad.is_empty() { format!("{} entries equal", want.len()) } else { bad.join("; ") };
    Check::new(name, bad.is_empty() && got.len() == want.len(), detail)
}

fn series_diff(name: &str, got: &TraceSeries, want: &TraceSeries) -> Check {
    let d = got.diff(want);
    let detail = if d.is_empty() {
        format!("{} terms equal through order {}", want.terms().count(), want.max_order)
    } else {
        d.iter().map(|t| format!("[{}]: {} vs {}", t.partition, t.left, t.right)).collect::<Vec<_>>().join("; ")
    };
    Check::new(name, d.is_empty(), detail)
}

/// Computed tables against the shipped transcriptions, `n = 1..=4`.
pub fn table_regression() -> Vec<Check> {
    let r = match reference() {
        Ok(r) => r,
        Err(e) => return vec![Check::new("load fixtures", false, e.to_string())],
    };
    let mut out = Vec::new();
    for want in &r.d {
        out.push(table_diff(&format!("d table n={}", want.n), &d_table_shift(want.n), want));
    }
    for want in &r.z {
        out.push(table_diff(&format!("z table n={}", want.n), &z_table_character(want.n), want));
    }
    out
}

/// Recursion against characters and shift, `n = 1..=max_n`. A failure to
/// solve (rank deficiency or a non-vanishing redundant row) fails the check.
pub fn dual_derivation(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    match z_tables_recursive(max_n) {
        Ok(zs) => {
            for z in zs.iter().filter(|t| t.n >= 1) {
                out.push(table_diff(&format!("z recursion n={}", z.n), z, &z_table_character(z.n)));
            }
        }
        Err(e) => out.push(Check::new("z recursion", false, e.to_string())),
    }
    match d_tables_recursive(max_n) {
        Ok(ds) => {
            for d in ds.iter().filter(|t| t.n >= 1) {
                out.push(table_diff(&format!("d recursion n={}", d.n), d, &d_table_shift(d.n)));
            }
        }
        Err(e) => out.push(Check::new("d recursion", false, e.to_string())),
    }
    out
}

pub fn shift_identity(max_n: usize) -> Vec<Check> {
    (1..=max_n)
        .map(|n| {
            let r = verify_shift_identity(n);
            let detail = r
                .checks
                .iter()
                .map(|c| format!("[{}] P={} {}", c.partition, c.p_alpha, if c.pass { "ok" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("; ");
            Check::new(format!("shift identity n={n}"), r.pass(), detail)
        })
        .collect()
}

/// Sign `(-1)^{c+n}` of both families, degree gap `2n - c` of `z_alpha`, and
/// a strictly smaller gap for `d_alpha` when `n >= 2`.
pub fn sign_degree_laws(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let z = z_table_character(n);
        let d = d_table_shift(n);
        let mut bad = Vec::new();
        for alpha in enumerate_partitions(n) {
            let c = alpha.num_cycles();
            let sign = if (c + n) % 2 == 0 { 1 } else { -1 };
            let (zv, dv) = (z.get(&alpha).unwrap(), d.get(&alpha).unwrap());
            if zv.sign_at_infinity() != sign || dv.sign_at_infinity() != sign {
                bad.push(format!("[{alpha}] sign"));
            }
            let (gz, gd) = (zv.degree_gap(), dv.degree_gap());
            if gz != Some(2 * n as i64 - c as i64) {
                bad.push(format!("[{alpha}] z gap {gz:?}"));
            }
            if n >= 2 && !matches!((gd, gz), (Some(a), Some(b)) if a < b) {
                bad.push(format!("[{alpha}] d gap {gd:?} vs {gz:?}"));
            }
        }
        let detail = if bad.is_empty() { "all partitions".to_string() } else { bad.join("; ") };
        out.push(Check::new(format!("sign and degree n={n}"), bad.is_empty(), detail));
    }
    out
}

/// Closed form against the fixed point (order 8), the finite-`N` limit
/// (order 4), the Lagrange coefficients and the shipped display.
pub fn largen_agreement() -> Vec<Check> {
    let closed8 = wd_closed(8);
    let mut out = vec![series_diff("W_D fixed point = closed form, order 8", &wd_fixedpoint(8), &closed8)];
    match wd_from_finite_n(4) {
        Ok(s) => out.push(series_diff("W_D finite-N limit = closed form, order 4", &s, &closed8.truncate(4))),
        Err(e) => out.push(Check::new("W_D finite-N limit = closed form, order 4", false, e.to_string())),
    }
    let lagrange_ok = w_fixedpoint(8)[1..] == w_lagrange(8)[1..];
    out.push(Check::new("Lagrange coefficients of w, order 8", lagrange_ok, ""));
    out.push(Check::new(
        "truncation consistency",
        wd_fixedpoint(8).truncate(5) == wd_fixedpoint(5),
        "order 5 terms unchanged at order 8",
    ));
    match reference() {
        Ok(r) => out.push(series_diff("W_D display, order 4", &closed8.truncate(4), &r.wd)),
        Err(e) => out.push(Check::new("W_D display, order 4", false, e.to_string())),
    }
    out
}

pub fn ww_regression() -> Vec<Check> {
    match reference() {
        Ok(r) => vec![series_diff("W_W display, order 4", &ww_series(4), &r.ww)],
        Err(e) => vec![Check::new("W_W display, order 4", false, e.to_string())],
    }
}

fn mc_check(name: String, est: &MCEstimate, exact: Complex64) -> Check {
    let c = compare(est, exact, SIGMAS);
    let detail = format!(
        "mean {:.6}{:+.6}i, stderr ({:.2e}, {:.2e}), exact {:.6}{:+.6}i, pulls ({:.2}, {:.2})",
        est.mean.re,
        est.mean.im,
        est.stderr_real,
        est.stderr_imag,
        exact.re,
        exact.im,
        c.pull_real,
        c.pull_imag
    );
    Check::new(name, c.pass, detail)
}

/// Sectors `(p, n)` on `SU(3)` compared against closed forms: the base case,
/// the shifted sector for `n = 1, 2`, the balanced sector for `n = 1, 2`,
/// and every vanishing sector with `p - n` in `{1, 2, 4, 5}` and `p + n <= 6`.
pub fn mc_sectors() -> Vec<(usize, usize)> {
    let mut out = vec![(3, 0), (4, 1), (5, 2), (1, 1), (2, 2)];
    for p in 0..=6usize {
        for n in 0..=(6 - p) {
            if p > n && [1, 2, 4, 5].contains(&(p - n)) {
                out.push((p, n));
            }
        }
    }
    out
}

/// Statistical agreement on `SU(3)` at the given sample count, plus the two
/// `SU(2)` epsilon entries.
pub fn mc_agreement(samples: u64, seed: u64) -> Vec<Check> {
    let spec = GroupSpec::special_unitary(3);
    let src = SourceMatrices::random(3, SOURCE_SCALE, SOURCE_SEED);
    let sectors = mc_sectors();
    let fs: Vec<_> = sectors.iter().map(|&(p, n)| z_observable(p, n, &src)).collect();
    let obs: Vec<Observable<'_>> = fs.iter().map(|f| f as Observable<'_>).collect();
    let ests = estimate_observables(spec, samples, seed, &obs);
    let mut out = Vec::new();
    for (&(p, n), est) in sectors.iter().zip(&ests) {
        let name = format!("SU(3) Z_{{{p},{n}}}");
        match exact_z(p, n, &src, Group::SpecialUnitary) {
            Ok(Some(exact)) => out.push(mc_check(name, est, exact)),
            Ok(None) => out.push(Check::new(name, false, "no closed form")),
            Err(e) => out.push(Check::new(name, false, e.to_string())),
        }
    }
    let su2 = GroupSpec::special_unitary(2);
    for (j, want) in [([1, 2], 0.5), ([2, 1], -0.5)] {
        let name = format!("SU(2) int U_1{} U_2{}", j[0], j[1]);
        match estimate_monomial(&[1, 2], &j, &[], &[], su2, samples, seed) {
            Ok(est) => out.push(mc_check(name, &est, Complex64::new(want, 0.0))),
            Err(e) => out.push(Check::new(name, false, e.to_string())),
        }
    }
    out
}

fn exact_monomial(i: &[usize], j: &[usize], k: &[usize], l: &[usize], n0: usize) -> Complex64 {
    let v = monomial_integral_unitary(i, j, k, l, n0).expect("valid monomial");
    Complex64::new(v.to_f64().unwrap(), 0.0)
}

/// Residuals, low moments against exact values, and bit-exact reruns.
pub fn sampler_quality(samples: u64, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut worst_u: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    let mut rng = block_rng(seed, u64::MAX);
    for n in 1..=6 {
        for _ in 0..1000 {
            worst_u = worst_u.max(unitarity_residual(&sample_haar(GroupSpec::unitary(n), &mut rng)));
            let v = sample_haar(GroupSpec::special_unitary(n), &mut rng);
            worst_u = worst_u.max(unitarity_residual(&v));
            worst_det = worst_det.max((v.determinant() - Complex64::new(1.0, 0.0)).norm());
        }
    }
    out.push(Check::new("unitarity residual < 1e-12", worst_u < 1e-12, format!("max {worst_u:.2e}")));
    out.push(Check::new("determinant residual < 1e-12", worst_det < 1e-12, format!("max {worst_det:.2e}")));

    type Mono = (&'static [usize], &'static [usize], &'static [usize], &'static [usize]);
    let monos: [(&str, Mono); 5] = [
        ("U(3) int U_11 U+_11", (&[1], &[1], &[1], &[1])),
        ("U(3) int U_12 U+_21", (&[1], &[2], &[2], &[1])),
        ("U(3) int U_11 U+_21", (&[1], &[1], &[2], &[1])),
        ("U(3) int U_11 U_22 U+_11 U+_22", (&[1, 2], &[1, 2], &[1, 2], &[1, 2])),
        ("U(3) int U_11 U_22 U+_21 U+_12", (&[1, 2], &[1, 2], &[2, 1], &[1, 2])),
    ];
    let u3 = GroupSpec::unitary(3);
    let fs: Vec<_> = monos.iter().map(|(_, (i, j, k, l))| monomial_observable(i, j, k, l)).collect();
    let obs: Vec<Observable<'_>> = fs.iter().map(|f| f as Observable<'_>).collect();
    let ests = estimate_observables(u3, samples, seed, &obs);
    for ((name, (i, j, k, l)), est) in monos.iter().zip(&ests) {
        out.push(mc_check(name.to_string(), est, exact_monomial(i, j, k, l, 3)));
    }
    let tr = |u: &CMatrix| u.trace();
    let su2 = GroupSpec::special_unitary(2);
    let est = estimate_observables(su2, samples, seed, &[&tr]).remove(0);
    out.push(mc_check("SU(2) tr U".into(), &est, Complex64::new(0.0, 0.0)));

    let again = estimate_observables(u3, samples, seed, &obs);
    let same = again.iter().zip(&ests).all(|(a, b)| {
        a.mean.re.to_bits() == b.mean.re.to_bits()
            && a.mean.im.to_bits() == b.mean.im.to_bits()
            && a.stderr_real.to_bits() == b.stderr_real.to_bits()
            && a.stderr_imag.to_bits() == b.stderr_imag.to_bits()
    });
    out.push(Check::new("seed determinism", same, format!("{} estimates rerun", ests.len())));
    out
}

pub const MAX_EXACT_N: usize = 5;

pub fn suite_tables() -> SuiteReport {
    let mut checks = table_regression();
    checks.extend(dual_derivation(MAX_EXACT_N));
    checks.extend(sign_degree_laws(MAX_EXACT_N));
    SuiteReport::new("tables", checks)
}

pub fn suite_shift() -> SuiteReport {
    SuiteReport::new("shift", shift_identity(MAX_EXACT_N))
}

pub fn suite_largen() -> SuiteReport {
    let mut checks = largen_agreement();
    checks.extend(ww_regression());
    SuiteReport::new("largen", checks)
}

pub fn suite_mc(samples: u64, seed: u64) -> SuiteReport {
    let mut checks = mc_agreement(samples, seed);
    checks.extend(sampler_quality(samples, seed));
    SuiteReport::new("mc", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_suites_pass() {
        for r in [suite_tables(), suite_shift(), suite_largen()] {
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{}: {bad:?}", r.suite);
        }
    }

    #[test]
    fn sector_list() {
        let s = mc_sectors();
        assert!(s.contains(&(5, 1)) && s.contains(&(4, 2)) && s.contains(&(1, 0)));
        assert!(!s.contains(&(3, 3)) && !s.contains(&(6, 0)));
    }
}
