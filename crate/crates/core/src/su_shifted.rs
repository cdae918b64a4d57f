//! The sector `p = n + N` on `SU(N)`.
//!
//! ```text
//! Z_{N+n,n}(J,K) = int dU (tr UK)^{N+n} (tr U^+ J)^n = det K sum_{alpha |- n} d_alpha t_alpha
//! ```
//!
//! with the normalization fixed by `Z_{N,0} = det K`. The coefficients are
//! obtained from the Weingarten ones by
//! `d_alpha = (N+n)(N+n-1)...(N+1) z_alpha(N+1)` and, independently, from the
//! contraction recursion with the `(JK)^{q-1}` scalar raised to `N+1` and the
//! right-hand side multiplied by `N+n`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{factorial, rising_product, PolyN, RatFuncN};
use crate::partitions::Partition;
use crate::recursion::{unit_table, RecursionSystem};
use crate::sources::SourceMatrices;
use crate::tables::{CoeffTable, Family};
use crate::weingarten::{table_values, z_table_character};

/// Levi-Civita symbol of a 1-based index list of length `N`: the sign of the
/// permutation, or 0 if an index repeats or is out of range.
pub fn levi_civita(indices: &[usize]) -> i32 {
    let n = indices.len();
    let mut seen = vec![false; n];
    for &i in indices {
        if i == 0 || i > n || seen[i - 1] {
            return 0;
        }
        seen[i - 1] = true;
    }
    // parity via inversions
    let inversions = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| indices[a] > indices[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `int dU U_{i1 j1} ... U_{iN jN} = eps_i eps_j / N!` over `SU(N0)`.
pub fn epsilon_integral(i: &[usize], j: &[usize], n0: usize) -> Result<BigRational> {
    if i.len() != n0 || j.len() != n0 {
        return Err(Error::DimensionMismatch(format!(
            "epsilon integral over SU({n0}) needs {n0} row and column indices, got {} and {}",
            i.len(),
            j.len()
        )));
    }
    let s = levi_civita(i) * levi_civita(j);
    Ok(BigRational::new(s.into(), factorial(n0 as u64)))
}

/// `(N+n)(N+n-1)...(N+1)`.
fn shift_prefactor(n: usize) -> RatFuncN {
    RatFuncN::from_poly(rising_product(1, n as i64))
}

/// Shifted table from a Weingarten table of the same weight.
pub fn d_table_from_z(z: &CoeffTable) -> CoeffTable {
    let pre = shift_prefactor(z.n);
    let entries = z.iter().map(|(p, v)| (p.clone(), &pre * &v.shift())).collect();
    CoeffTable::new(z.n, Family::SuShifted, entries).expect("same keys")
}

/// `d_alpha` via the shift relation from the character-formula `z_alpha`.
pub fn d_table_shift(n: usize) -> CoeffTable {
    d_table_from_z(&z_table_character(n))
}

pub fn d_table_step(prev: &CoeffTable) -> Result<CoeffTable> {
    let n = prev.n as i64 + 1;
    let rhs = RatFuncN::from_poly(PolyN::linear(n).scale(&BigRational::from_integer(n.into())));
    let system = RecursionSystem::build(prev, &RatFuncN::linear(1), &rhs);
    system.solve(Family::SuShifted)
}

/// Tables for weights `0..=max_n` by recursion from `Z_{N,0} = det K`.
pub fn d_tables_recursive(max_n: usize) -> Result<Vec<CoeffTable>> {
    let mut out = vec![unit_table(Family::SuShifted)];
    for _ in 0..max_n {
        let next = d_table_step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

pub fn d_table_recursive(n: usize) -> Result<CoeffTable> {
    Ok(d_tables_recursive(n)?.pop().unwrap())
}

/// `Z_{N+n,n}(J,K) = det K sum_alpha d_alpha(N) t_alpha`, valid for `n < N`.
pub fn eval_z_shifted(n: usize, src: &SourceMatrices) -> Result<Complex64> {
    let dim = src.dim();
    if n >= dim {
        return Err(Error::InvalidSector(format!(
            "Z_{{N+n,n}} needs n < N, got n = {n}, N = {dim}"
        )));
    }
    let det = src.det_k();
    if n == 0 {
        return Ok(det);
    }
    let traces = src.traces(n);
    let sum: Complex64 = table_values(&d_table_shift(n), dim)?
        .into_iter()
        .map(|(alpha, d)| traces.monomial(&alpha) * d)
        .sum();
    Ok(det * sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftCheck {
    pub partition: Partition,
    /// `P_alpha(N)`, printed; empty when `z_alpha` times the denominator is not a polynomial.
    pub p_alpha: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftReport {
    pub n: usize,
    pub checks: Vec<ShiftCheck>,
}

impl ShiftReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks, for every `alpha |- n`, that writing
/// `z_alpha = P_alpha(N) / (N^2 (N^2-1) ... (N^2-(n-1)^2))` with `P_alpha` a
/// polynomial gives `d_alpha (N+1) N ... (N-(n-2)) = P_alpha(N+1)`.
///
/// For `n = 1` the second product is the single factor `N+1`.
pub fn verify_shift_identity(n: usize) -> ShiftReport {
    verify_shift_identity_with(&z_table_character(n), &d_table_shift(n))
}

pub fn verify_shift_identity_with(z: &CoeffTable, d: &CoeffTable) -> ShiftReport {
    let n = z.n as i64;
    // N^2 (N^2-1) ... (N^2-(n-1)^2) = prod_{k=1-n}^{n-1} (N+k) * N
    let z_den = if n == 0 { PolyN::one() } else { &rising_product(1 - n, n - 1) * &PolyN::var() };
    // (N+1) N ... (N-(n-2))
    let d_den = rising_product(2 - n, 1);
    let z_den = RatFuncN::from_poly(z_den);
    let d_den = RatFuncN::from_poly(if n == 0 { PolyN::one() } else { d_den });
    let checks = z
        .iter()
        .map(|(alpha, zv)| {
            let p = zv * &z_den;
            let Some(poly) = p.as_poly() else {
                return ShiftCheck { partition: alpha.clone(), p_alpha: String::new(), pass: false };
            };
            let lhs = d.get(alpha).map(|dv| dv * &d_den).unwrap_or_else(RatFuncN::zero);
            let rhs = RatFuncN::from_poly(poly.shift(1));
            ShiftCheck { partition: alpha.clone(), p_alpha: poly.to_string(), pass: lhs == rhs }
        })
        .collect();
    ShiftReport { n: z.n, checks }
}

/// `sum_{i, j} eps_i eps_j / N! prod_a K_{j_a i_a}` by brute force over all
/// index tuples; equals `det K`.
pub fn epsilon_contraction(k: &crate::sources::CMatrix) -> Complex64 {
    let n = k.nrows();
    let tuples = index_tuples(n);
    let nf = factorial(n as u64);
    let mut total = Complex64::zero();
    for i in &tuples {
        let ei = levi_civita(i);
        if ei == 0 {
            continue;
        }
        for j in &tuples {
            let ej = levi_civita(j);
            if ej == 0 {
                continue;
            }
            let prod: Complex64 = (0..n).map(|a| k[(j[a] - 1, i[a] - 1)]).product();
            total += prod * f64::from(ei * ej);
        }
    }
    use num_traits::ToPrimitive;
    total / nf.to_f64().unwrap()
}

fn index_tuples(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_ratfunc;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rf(s: &str) -> RatFuncN {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(epsilon_integral(&[1, 2], &[1, 2], 2).unwrap(), half);
        assert_eq!(epsilon_integral(&[1, 2], &[2, 1], 2).unwrap(), -half);
        assert!(epsilon_integral(&[1, 1, 2], &[3, 2, 1], 3).unwrap().is_zero());
        assert!(epsilon_integral(&[1, 2], &[1, 2], 3).is_err());
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita(&[1, 2, 3]), 1);
        assert_eq!(levi_civita(&[2, 1, 3]), -1);
        assert_eq!(levi_civita(&[2, 3, 1]), 1);
        assert_eq!(levi_civita(&[1, 4, 2]), 0);
    }

    #[test]
    fn shift_tables_small() {
        assert_eq!(d_table_shift(1).get(&part("1")), Some(&RatFuncN::one()));
        let t2 = d_table_shift(2);
        assert_eq!(t2.get(&part("2")), Some(&rf("-1/N")));
        assert_eq!(t2.get(&part("1^2")), Some(&rf("(N+1)/N")));
        let t4 = d_table_shift(4);
        assert_eq!(t4.get(&part("1 3")), Some(&rf("8(2(N+1)^2-3)/((N+1)N(N-1)(N-2))")));
    }

    #[test]
    fn recursive_tables_small() {
        let t3 = d_table_recursive(3).unwrap();
        assert_eq!(t3.get(&part("3")), Some(&rf("4/(N(N-1))")));
        assert_eq!(t3.get(&part("1 2")), Some(&rf("-3(N+1)/(N(N-1))")));
        assert_eq!(t3.get(&part("1^3")), Some(&rf("((N+1)^2-2)/(N(N-1))")));
        let t4 = d_table_recursive(4).unwrap();
        assert_eq!(t4.get(&part("4")), Some(&rf("-30/(N(N-1)(N-2))")));
    }

    #[test]
    fn recursion_matches_shift_through_five() {
        for (n, t) in d_tables_recursive(5).unwrap().iter().enumerate() {
            assert_eq!(t, &d_table_shift(n), "n = {n}");
        }
    }

    #[test]
    fn shift_identity_reports() {
        let r2 = verify_shift_identity(2);
        let c = r2.checks.iter().find(|c| c.partition == part("2")).unwrap();
        assert_eq!(c.p_alpha, "-N");
        assert!(r2.pass());
        let r1 = verify_shift_identity(1);
        assert_eq!(r1.checks[0].p_alpha, "N");
        assert!(r1.pass());
        for n in 0..=5 {
            assert!(verify_shift_identity(n).pass(), "n = {n}");
        }
    }

    #[test]
    fn shift_identity_detects_a_wrong_entry() {
        let z = z_table_character(2);
        let mut bad: std::collections::BTreeMap<_, _> =
            d_table_shift(2).iter().map(|(p, v)| (p.clone(), v.clone())).collect();
        bad.insert(part("2"), rf("1/N"));
        let d = CoeffTable::new(2, Family::SuShifted, bad).unwrap();
        let r = verify_shift_identity_with(&z, &d);
        assert!(!r.pass());
        assert_eq!(r.checks.iter().filter(|c| !c.pass).count(), 1);
    }

    #[test]
    fn slower_decay_and_sign() {
        for n in 1..=5 {
            let z = z_table_character(n);
            let d = d_table_shift(n);
            for (alpha, dv) in d.iter() {
                let zv = z.get(alpha).unwrap();
                assert_eq!(dv.sign_at_infinity(), zv.sign_at_infinity());
                if n >= 2 {
                    assert!(dv.degree_gap().unwrap() < zv.degree_gap().unwrap(), "{alpha}");
                }
            }
        }
    }

    #[test]
    fn base_case_is_det_k() {
        for n in 1..=4 {
            let src = SourceMatrices::random(n, 1.0, 100 + n as u64);
            let direct = epsilon_contraction(&src.k);
            let det = eval_z_shifted(0, &src).unwrap();
            assert!((direct - det).norm() < 1e-10, "N = {n}: {direct} vs {det}");
        }
    }

    #[test]
    fn z_shifted_first_order() {
        let src = SourceMatrices::random(3, 1.0, 3);
        let v = eval_z_shifted(1, &src).unwrap();
        let expect = src.det_k() * src.traces(1).get(1);
        assert!((v - expect).norm() < 1e-12);
        assert!(eval_z_shifted(3, &src).is_err());
    }
}
