//! Large-`N` series for the two sectors.
//!
//! Shifted sector: with `kappa = N kt` and traces `t_q` of order one,
//! `W_D = lim (1/N) log(Z_D / det K)` is a series in `kt` whose weight-`n`
//! coefficient is a polynomial in the `t_q`. It is computed three ways:
//!
//! * [`wd_closed`]: the closed form with Catalan numbers,
//! * [`wd_fixedpoint`]: solving `y = kt sum_m f_m y^m` order by order, with
//!   `f_0 = 1`, `f_m = (-1)^{m-1} Cat(m-1) t_m`, `w = y/kt - 1`, and
//!   integrating `kt dW/dkt = w` term by term,
//! * [`wd_from_finite_n`]: taking the logarithm of the exact finite-`N`
//!   generating function built from the `d_alpha` tables and letting
//!   `N -> inf`.
//!
//! Ordinary sector: the strong-coupling coefficients `w_alpha` of
//! `W_W = sum_n kt^{2n} sum_alpha w_alpha tau_alpha`.
//!
//! Trace variables are formal symbols throughout.

pub mod series;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{factorial, rational, RatFuncN};
use crate::partitions::{catalan, enumerate_partitions, Partition};
use crate::su_shifted::d_table_shift;
use series::{PowerSeries, Ring, TracePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesFamily {
    /// coefficient of `kt^n t_alpha`
    #[serde(rename = "wd")]
    Wd,
    /// coefficient of `kt^{2n} tau_alpha`
    #[serde(rename = "ww")]
    Ww,
}

/// Exact series `sum_{n <= max_order} sum_{alpha |- n} c_alpha x^n m_alpha`,
/// keyed by `alpha`; the grade of a term is the weight of its partition.
/// Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceSeries {
    pub family: SeriesFamily,
    pub max_order: usize,
    terms: BTreeMap<Partition, BigRational>,
}

#[derive(Serialize)]
struct JsonTerm {
    grade: usize,
    partition: Partition,
    coefficient: String,
}

/// One entry of a termwise comparison.
#[derive(Clone, Debug, Serialize)]
pub struct TermDiff {
    pub partition: Partition,
    pub left: String,
    pub right: String,
}

impl TraceSeries {
    pub fn new(family: SeriesFamily, max_order: usize) -> Self {
        TraceSeries { family, max_order, terms: BTreeMap::new() }
    }

    pub fn insert(&mut self, alpha: Partition, c: BigRational) {
        debug_assert!(alpha.weight() >= 1 && alpha.weight() <= self.max_order);
        if Zero::is_zero(&c) {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, c);
        }
    }

    pub fn coeff(&self, alpha: &Partition) -> BigRational {
        self.terms.get(alpha).cloned().unwrap_or_else(<BigRational as Zero>::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn grade(&self, n: usize) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter().filter(move |(p, _)| p.weight() == n)
    }

    /// Restriction to grades `<= order`.
    pub fn truncate(&self, order: usize) -> TraceSeries {
        TraceSeries {
            family: self.family,
            max_order: order.min(self.max_order),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() <= order)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms where the two series differ, over the common order.
    pub fn diff(&self, other: &TraceSeries) -> Vec<TermDiff> {
        let order = self.max_order.min(other.max_order);
        let mut keys: Vec<&Partition> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|p| p.weight() <= order)
            .filter_map(|p| {
                let (a, b) = (self.coeff(p), other.coeff(p));
                (a != b).then(|| TermDiff {
                    partition: p.clone(),
                    left: a.to_string(),
                    right: b.to_string(),
                })
            })
            .collect()
    }

    fn symbol(&self) -> &'static str {
        match self.family {
            SeriesFamily::Wd => "t",
            SeriesFamily::Ww => "τ",
        }
    }

    fn power(&self, n: usize) -> usize {
        match self.family {
            SeriesFamily::Wd => n,
            SeriesFamily::Ww => 2 * n,
        }
    }

    /// Grade-by-grade rendering with the positive rational content of each
    /// grade factored out, e.g. `κ̃ t1 + (1/2) κ̃^2 (t1^2 - t2)`.
    pub fn to_text(&self) -> String {
        let sym = self.symbol();
        let mono = |p: &Partition| {
            p.iter()
                .map(|(q, a)| if a == 1 { format!("{sym}{q}") } else { format!("{sym}{q}^{a}") })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let var = |n: usize| match self.power(n) {
            1 => "κ̃".to_string(),
            k => format!("κ̃^{k}"),
        };
        let mut grades = Vec::new();
        for n in 1..=self.max_order {
            let terms: Vec<(&Partition, &BigRational)> = self.grade(n).collect();
            if terms.is_empty() {
                continue;
            }
            if let [(p, c)] = terms[..] {
                let lead = if c.is_one() {
                    String::new()
                } else if (-c).is_one() {
                    "-".to_string()
                } else {
                    format!("{c} ")
                };
                grades.push(format!("{lead}{} {}", var(n), mono(p)));
                continue;
            }
            let content = rational_content(terms.iter().map(|(_, c)| *c));
            let mut inner = String::new();
            for (i, (p, c)) in terms.iter().enumerate() {
                let r = *c / &content;
                let mag = r.abs();
                let sign = if r.is_negative() { "-" } else { "+" };
                if i == 0 {
                    if r.is_negative() {
                        inner.push('-');
                    }
                } else {
                    let _ = write!(inner, " {sign} ");
                }
                if !mag.is_one() {
                    let _ = write!(inner, "{mag} ");
                }
                inner.push_str(&mono(p));
            }
            let prefix = if content.is_one() { String::new() } else { format!("({content}) ") };
            grades.push(format!("{prefix}{} ({inner})", var(n)));
        }
        if grades.is_empty() {
            return "0".into();
        }
        grades.join(" + ")
    }

    pub fn to_latex(&self) -> String {
        let sym = match self.family {
            SeriesFamily::Wd => "t",
            SeriesFamily::Ww => "\\tau",
        };
        let mut out = String::new();
        for n in 1..=self.max_order {
            let terms: Vec<(&Partition, &BigRational)> = self.grade(n).collect();
            if terms.is_empty() {
                continue;
            }
            let content = rational_content(terms.iter().map(|(_, c)| *c));
            let mut inner = String::new();
            for (i, (p, c)) in terms.iter().enumerate() {
                let r = *c / &content;
                if r.is_negative() {
                    inner.push_str(" - ");
                } else if i > 0 {
                    inner.push_str(" + ");
                }
                let mag = r.abs();
                if !mag.is_one() {
                    inner.push_str(&mag.to_string());
                }
                for (q, a) in p.iter() {
                    if a == 1 {
                        let _ = write!(inner, "{sym}_{q}");
                    } else {
                        let _ = write!(inner, "{sym}_{q}^{a}");
                    }
                }
            }
            let frac = if content.is_one() {
                String::new()
            } else {
                format!("\\frac{{{}}}{{{}}}", content.numer(), content.denom())
            };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "{frac}\\tilde\\kappa^{{{}}}({})", self.power(n), inner.trim());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(p, c)| JsonTerm { grade: p.weight(), partition: p.clone(), coefficient: c.to_string() })
            .collect();
        serde_json::json!({
            "family": self.family,
            "max_order": self.max_order,
            "terms": terms,
            "text": self.to_text(),
        })
    }
}

/// Positive gcd of rationals: `gcd(numerators) / lcm(denominators)`.
fn rational_content<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigRational {
    let (g, l) = it.fold((BigInt::zero(), BigInt::one()), |(g, l), c| {
        (g.gcd(c.numer()), l.lcm(c.denom()))
    });
    if g.is_zero() {
        return <BigRational as One>::one();
    }
    BigRational::new(g, l)
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        <BigRational as One>::one()
    } else {
        -<BigRational as One>::one()
    }
}

/// Closed form: the coefficient of `kt^n t_alpha` in `W_D` is
/// `(-1)^{n-c} (n-1)! / (n-c+1)! prod_p Cat(p-1)^{alpha_p} / alpha_p!`
/// with `c` the number of parts.
pub fn wd_coeff(alpha: &Partition) -> BigRational {
    let n = alpha.weight();
    let c = alpha.num_cycles();
    let mut v = BigRational::new(factorial(n as u64 - 1), factorial((n - c + 1) as u64));
    for (p, a) in alpha.iter() {
        v *= BigRational::from_integer(catalan(p as u64 - 1).pow(a));
    }
    v /= BigRational::from_integer(alpha.multiplicity_factorials());
    v * sign(n - c)
}

pub fn wd_closed(max_order: usize) -> TraceSeries {
    let mut s = TraceSeries::new(SeriesFamily::Wd, max_order);
    for n in 1..=max_order {
        for alpha in enumerate_partitions(n) {
            let c = wd_coeff(&alpha);
            s.insert(alpha, c);
        }
    }
    s
}

/// `f_0 = 1`, `f_m = (-1)^{m-1} Cat(m-1) t_m`, as a list of trace polynomials.
pub fn fixed_point_generator(order: usize) -> Vec<TracePoly<BigRational>> {
    (0..=order)
        .map(|m| match m {
            0 => TracePoly::one(),
            m => TracePoly::monomial(
                Partition::single(m),
                BigRational::from_integer(catalan(m as u64 - 1)) * sign(m - 1),
            ),
        })
        .collect()
}

/// Coefficients `w_n`, `n = 0..=max_order`, of `w = y/kt - 1` where
/// `y = kt sum_m f_m y^m`, found by fixed-point iteration on truncated series.
pub fn w_fixedpoint(max_order: usize) -> Vec<TracePoly<BigRational>> {
    let order = max_order + 1;
    let f = fixed_point_generator(order);
    let mut y: PowerSeries<TracePoly<BigRational>> = PowerSeries::zero(order);
    // each pass fixes one more order of y
    for _ in 0..order {
        y = PowerSeries::compose_into(&f, &y).shift_up();
    }
    let mut w: Vec<TracePoly<BigRational>> = (0..=max_order).map(|n| y.coeff(n + 1).clone()).collect();
    w[0] = w[0].plus(&TracePoly::from_rational(&rational(-1, 1)));
    w
}

/// `w_n = sum_{alpha |- n} n! / ((n+1-c)! prod alpha_q!) prod_q f_q^{alpha_q}`.
pub fn w_lagrange(max_order: usize) -> Vec<TracePoly<BigRational>> {
    let f = fixed_point_generator(max_order);
    (0..=max_order)
        .map(|n| {
            if n == 0 {
                return TracePoly::zero();
            }
            let mut acc = TracePoly::zero();
            for alpha in enumerate_partitions(n) {
                let c = alpha.num_cycles();
                let coef = BigRational::new(
                    factorial(n as u64),
                    factorial((n + 1 - c) as u64) * alpha.multiplicity_factorials(),
                );
                let mono = alpha
                    .iter()
                    .fold(TracePoly::one(), |m, (q, a)| (0..a).fold(m, |m, _| m.times(&f[q])));
                acc = acc.plus(&mono.scaled(&coef));
            }
            acc
        })
        .collect()
}

pub fn wd_fixedpoint(max_order: usize) -> TraceSeries {
    let w = w_fixedpoint(max_order);
    let mut s = TraceSeries::new(SeriesFamily::Wd, max_order);
    for (n, wn) in w.iter().enumerate().skip(1) {
        let inv = rational(1, n as i64);
        for (alpha, c) in wn.terms() {
            s.insert(alpha.clone(), c * &inv);
        }
    }
    s
}

/// Largest order accepted by [`wd_from_finite_n`]; the exact finite-`N`
/// tables grow quickly past weight 5.
pub const FINITE_N_MAX_ORDER: usize = 5;

/// `lim_{N->inf} (1/N) log(sum_n (kappa^n/n!) sum_alpha d_alpha t_alpha)` at
/// `kappa = N kt`, computed with exact rational functions of `N`.
pub fn wd_from_finite_n(max_order: usize) -> Result<TraceSeries> {
    if max_order > FINITE_N_MAX_ORDER {
        return Err(Error::InvalidSector(format!(
            "finite-N route supports orders up to {FINITE_N_MAX_ORDER}"
        )));
    }
    let mut x: Vec<TracePoly<RatFuncN>> = vec![TracePoly::zero()];
    for n in 1..=max_order {
        let inv_fact = BigRational::new(BigInt::one(), factorial(n as u64));
        let mut poly = TracePoly::zero();
        for (alpha, d) in d_table_shift(n).iter() {
            poly = poly.plus(&TracePoly::monomial(alpha.clone(), d.scale(&inv_fact)));
        }
        x.push(poly);
    }
    let log = PowerSeries::log1p(&PowerSeries::new(x, max_order));
    let mut s = TraceSeries::new(SeriesFamily::Wd, max_order);
    for n in 1..=max_order {
        // kappa^n = N^n kt^n, then the overall 1/N
        let scale = RatFuncN::var().pow(n as u32 - 1);
        for (alpha, c) in log.coeff(n).terms() {
            let v = (c * &scale)
                .limit_at_infinity()
                .ok_or_else(|| Error::Divergent(format!("kt^{n} t[{alpha}]")))?;
            s.insert(alpha.clone(), v);
        }
    }
    Ok(s)
}

/// Strong-coupling coefficient
/// `w_alpha = (-1)^n (2n-3+c)!/(2n)! prod_q (-(2q)!/(q!)^2)^{alpha_q} / alpha_q!`.
pub fn ww_coeff(alpha: &Partition) -> Result<BigRational> {
    let n = alpha.weight();
    let c = alpha.num_cycles();
    let arg = 2 * n as i64 - 3 + c as i64;
    if arg < 0 {
        return Err(Error::NegativeFactorial(arg));
    }
    let mut v = BigRational::new(factorial(arg as u64), factorial(2 * n as u64));
    for (q, a) in alpha.iter() {
        let central = factorial(2 * q as u64) / (factorial(q as u64) * factorial(q as u64));
        v *= BigRational::from_integer((-central).pow(a));
    }
    v /= BigRational::from_integer(alpha.multiplicity_factorials());
    Ok(v * sign(n))
}

pub fn ww_series(max_order: usize) -> TraceSeries {
    let mut s = TraceSeries::new(SeriesFamily::Ww, max_order);
    for n in 1..=max_order {
        for alpha in enumerate_partitions(n) {
            let c = ww_coeff(&alpha).expect("weight >= 1");
            s.insert(alpha, c);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let s = wd_closed(4);
        assert_eq!(s.coeff(&part("1")), rational(1, 1));
        assert_eq!(s.coeff(&part("4")), rational(-5, 4));
        assert_eq!(s.coeff(&part("2^2")), rational(1, 2));
        assert_eq!(wd_closed(1).to_text(), "κ̃ t1");
    }

    #[test]
    fn fixedpoint_low_orders() {
        let s = wd_fixedpoint(3);
        assert_eq!(s.coeff(&part("1^2")), rational(1, 2));
        assert_eq!(s.coeff(&part("2")), rational(-1, 2));
        assert_eq!(s.coeff(&part("1^3")), rational(1, 3));
        assert_eq!(s.coeff(&part("1 2")), rational(-1, 1));
        assert_eq!(s.coeff(&part("3")), rational(2, 3));
    }

    #[test]
    fn fixedpoint_matches_closed_form() {
        assert!(wd_fixedpoint(8).diff(&wd_closed(8)).is_empty());
    }

    #[test]
    fn lagrange_coefficients_match_iteration() {
        assert_eq!(w_fixedpoint(7)[1..], w_lagrange(7)[1..]);
    }

    #[test]
    fn truncation_is_stable() {
        let lo = wd_fixedpoint(4);
        let hi = wd_fixedpoint(7).truncate(4);
        assert_eq!(lo, hi);
    }

    #[test]
    fn finite_n_limit_matches_closed_form() {
        let s = wd_from_finite_n(4).unwrap();
        assert!(s.diff(&wd_closed(4)).is_empty(), "{:?}", s.diff(&wd_closed(4)));
        assert!(wd_from_finite_n(FINITE_N_MAX_ORDER + 1).is_err());
    }

    #[test]
    fn ww_examples() {
        assert_eq!(ww_coeff(&part("1")).unwrap(), rational(1, 1));
        assert_eq!(ww_coeff(&part("4")).unwrap(), rational(-5, 4));
        assert_eq!(ww_coeff(&part("1^4")).unwrap(), rational(6, 1));
        assert_eq!(ww_series(3).coeff(&part("1 2")), rational(-2, 1));
        assert!(matches!(ww_coeff(&Partition::empty()), Err(Error::NegativeFactorial(-3))));
    }

    #[test]
    fn text_rendering_factors_content() {
        let s = ww_series(4);
        assert_eq!(
            s.to_text(),
            "κ̃^2 τ1 + (1/2) κ̃^4 (τ1^2 - τ2) + (2/3) κ̃^6 (2 τ1^3 - 3 τ1 τ2 + τ3) \
             + (1/4) κ̃^8 (24 τ1^4 - 48 τ1^2 τ2 + 9 τ2^2 + 20 τ1 τ3 - 5 τ4)"
        );
        assert!(wd_closed(2).to_latex().starts_with("\\tilde\\kappa^{1}(t_1) + \\frac{1}{2}"));
    }
}
