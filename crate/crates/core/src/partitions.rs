//! Integer partitions, cycle types and symmetric-group representation data.
//!
//! A [`Partition`] doubles as the cycle type of a permutation and as the
//! label of a trace monomial `t_alpha = prod_q t_q^{alpha_q}`. A
//! [`YoungDiagram`] labels irreducible representations.
//!
//! Partitions are ordered by weight first, then by the lexicographic order of
//! their parts listed in decreasing order, so for weight 4:
//! `1^4 < 1^2 2^1 < 2^2 < 1^1 3^1 < 4^1`. Every table, series and solver
//! column in the crate uses this order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factorial, PolyN};

/// Multiplicity vector `(alpha_1, alpha_2, ...)`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    /// From a list of parts in any order; zero parts are ignored.
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut mult = vec![0u32; parts.iter().copied().max().unwrap_or(0)];
        for &p in parts.iter().filter(|&&p| p > 0) {
            mult[p - 1] += 1;
        }
        Self::from_multiplicities(mult)
    }

    /// Single part `[q]`.
    pub fn single(q: usize) -> Self {
        Self::from_parts(&[q])
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `alpha_q`, the number of parts equal to `q`.
    pub fn mult(&self, q: usize) -> u32 {
        if q == 0 {
            return 0;
        }
        self.mult.get(q - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.iter().map(|(q, a)| q * a as usize).sum()
    }

    /// Number of cycles `c(alpha) = sum_q alpha_q`.
    pub fn num_cycles(&self) -> usize {
        self.mult.iter().map(|&a| a as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Nonzero `(q, alpha_q)` pairs, ascending in `q`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i + 1, a))
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_cycles());
        for (q, a) in self.iter().collect::<Vec<_>>().into_iter().rev() {
            out.extend(std::iter::repeat_n(q, a as usize));
        }
        out
    }

    /// Removes one part `q`, if present.
    pub fn without(&self, q: usize) -> Option<Partition> {
        if self.mult(q) == 0 {
            return None;
        }
        let mut m = self.mult.clone();
        m[q - 1] -= 1;
        Some(Self::from_multiplicities(m))
    }

    /// Adds one part `q >= 1`.
    pub fn with(&self, q: usize) -> Partition {
        let mut m = self.mult.clone();
        if m.len() < q {
            m.resize(q, 0);
        }
        m[q - 1] += 1;
        Self::from_multiplicities(m)
    }

    /// Multiset union; corresponds to multiplying trace monomials.
    pub fn union(&self, other: &Partition) -> Partition {
        let len = self.mult.len().max(other.mult.len());
        Self::from_multiplicities(
            (1..=len).map(|q| self.mult(q) + other.mult(q)).collect(),
        )
    }

    /// `prod_q alpha_q!`.
    pub fn multiplicity_factorials(&self) -> BigInt {
        self.mult.iter().map(|&a| factorial(a as u64)).product()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts().cmp(&other.parts()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent notation `1^2 2^1`; the empty partition prints as an empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, a) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{q}^{a}")?;
        }
        Ok(())
    }
}

/// Accepts `1^2 2^1`, `1^2 2` and `[1^2,2]` style input.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut mult: Vec<u32> = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (q, a) = match tok.split_once('^') {
                Some((q, a)) => (q, a),
                None => (tok, "1"),
            };
            let bad = || Error::Parse(format!("bad partition token {tok:?}"));
            let q: usize = q.parse().map_err(|_| bad())?;
            let a: u32 = a.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            if mult.len() < q {
                mult.resize(q, 0);
            }
            mult[q - 1] += a;
        }
        Ok(Partition::from_multiplicities(mult))
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rows `lambda_1 >= lambda_2 >= ... > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<usize>) -> Self {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.rows.first().copied().unwrap_or(0);
        (0..width)
            .map(|j| self.rows.iter().filter(|&&r| r > j).count())
            .collect()
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    fn hook_product(&self) -> BigInt {
        let cols = self.conjugate();
        self.cells()
            .map(|(i, j)| BigInt::from(self.rows[i] - j + cols[j] - i - 1))
            .product()
    }

    /// Dimension of the irreducible `S_n` representation (hook length formula).
    pub fn sn_dimension(&self) -> BigInt {
        factorial(self.size() as u64) / self.hook_product()
    }
}

impl From<&Partition> for YoungDiagram {
    fn from(p: &Partition) -> Self {
        YoungDiagram { rows: p.parts() }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// All partitions of `n`, each exactly once, in the crate-wide order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(cur));
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn enumerate_diagrams(n: usize) -> Vec<YoungDiagram> {
    enumerate_partitions(n).iter().map(YoungDiagram::from).collect()
}

/// Size of the conjugacy class of cycle type `alpha`: `n! / prod_q q^{alpha_q} alpha_q!`.
pub fn class_size(alpha: &Partition) -> BigInt {
    let denom: BigInt = alpha
        .iter()
        .map(|(q, a)| BigInt::from(q).pow(a) * factorial(a as u64))
        .product();
    factorial(alpha.weight() as u64) / denom
}

type Memo = Mutex<HashMap<(Vec<usize>, Vec<usize>), BigInt>>;

/// Irreducible character `chi^lambda` on the class `alpha`, by Murnaghan–Nakayama.
pub fn character(lambda: &YoungDiagram, alpha: &Partition) -> Result<BigInt> {
    if lambda.size() != alpha.weight() {
        return Err(Error::WeightMismatch { diagram: lambda.size(), class: alpha.weight() });
    }
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    Ok(mn_rec(lambda.rows(), &alpha.parts(), memo))
}

fn mn_rec(
    rows: &[usize],
    parts: &[usize],
    memo: &Memo,
) -> BigInt {
    let Some((&r, rest)) = parts.split_first() else {
        return BigInt::one();
    };
    let key = (rows.to_vec(), parts.to_vec());
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return v.clone();
    }
    // beta-numbers: strictly decreasing, beta_i = lambda_i + (l - 1 - i)
    let l = rows.len();
    let beta: Vec<usize> = rows.iter().enumerate().map(|(i, &x)| x + l - 1 - i).collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // each beta strictly between target and b is a row the rim hook crosses
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let new_rows: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (l - 1 - k))
            .filter(|&x| x > 0)
            .collect();
        let sub = mn_rec(&new_rows, rest, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.lock().unwrap().insert(key, total.clone());
    total
}

/// `s_lambda(I_N)`, the dimension of the `GL(N)` irreducible, by the
/// hook-content formula `prod_{(i,j)} (N + j - i) / hook(i,j)`.
pub fn dim_gl(lambda: &YoungDiagram) -> PolyN {
    let contents = lambda
        .cells()
        .fold(PolyN::one(), |acc, (i, j)| &acc * &PolyN::linear(j as i64 - i as i64));
    let hooks = BigRational::from_integer(lambda.hook_product());
    contents.scale(&hooks.recip())
}

/// `Cat(m) = (2m)! / (m! (m+1)!)`.
pub fn catalan(m: u64) -> BigInt {
    factorial(2 * m) / (factorial(m) * factorial(m + 1))
}

/// Number of partitions of `n` (by enumeration of the generating recursion).
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec())
    }

    fn binomial(n: i64, k: i64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let num: BigInt = (0..k).map(|i| BigInt::from(n - i)).product();
        num / factorial(k as u64)
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate_partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(four, ["1^4", "1^2 2^1", "2^2", "1^1 3^1", "4^1"]);
        assert_eq!(enumerate_partitions(10).len(), 42);
        for n in 0..=12 {
            let ps = enumerate_partitions(n);
            assert_eq!(ps.len(), partition_count(n));
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
            assert!(ps.iter().all(|p| p.weight() == n));
        }
    }

    #[test]
    fn partition_text_roundtrip() {
        for p in enumerate_partitions(6) {
            assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        }
        assert_eq!(part("[1^2,2]"), part("1^2 2^1"));
        assert_eq!(part("3 1"), Partition::from_parts(&[1, 3]));
        assert!("0^1".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&part("1^5")), BigInt::one());
        assert_eq!(class_size(&part("3^1")), BigInt::from(2));
        let total: BigInt = enumerate_partitions(5).iter().map(class_size).sum();
        assert_eq!(total, BigInt::from(120));
    }

    #[test]
    fn character_examples() {
        for a in enumerate_partitions(4) {
            assert_eq!(character(&yd(&[4]), &a).unwrap(), BigInt::one());
        }
        assert_eq!(character(&yd(&[1, 1, 1]), &part("3^1")).unwrap(), BigInt::one());
        assert!(matches!(
            character(&yd(&[2, 1]), &part("1^2")),
            Err(Error::WeightMismatch { .. })
        ));
    }

    /// Trace of the standard 2-dimensional representation of S_3, realized as
    /// permutation matrices restricted to the sum-zero plane: the permutation
    /// character on 3 points minus the trivial character.
    #[test]
    fn standard_rep_of_s3_by_brute_force() {
        let perms = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let mut by_class: HashMap<Partition, i64> = HashMap::new();
        for p in perms {
            let fixed = (0..3).filter(|&i| p[i] == i).count() as i64;
            let mut seen = [false; 3];
            let mut lens = Vec::new();
            for s in 0..3 {
                if seen[s] {
                    continue;
                }
                let (mut k, mut len) = (s, 0);
                while !seen[k] {
                    seen[k] = true;
                    k = p[k];
                    len += 1;
                }
                lens.push(len);
            }
            by_class.insert(Partition::from_parts(&lens), fixed - 1);
        }
        for (cls, expect) in by_class {
            assert_eq!(character(&yd(&[2, 1]), &cls).unwrap(), BigInt::from(expect), "{cls}");
        }
        assert_eq!(character(&yd(&[2, 1]), &part("1^3")).unwrap(), BigInt::from(2));
    }

    #[test]
    fn column_orthogonality_and_dimensions() {
        for n in 0..=6 {
            let diagrams = enumerate_diagrams(n);
            let classes = enumerate_partitions(n);
            let mut dim_sq = BigInt::zero();
            for l in &diagrams {
                let d = character(l, &Partition::from_parts(&vec![1; n])).unwrap();
                assert_eq!(d, l.sn_dimension());
                dim_sq += &d * &d;
                for m in &diagrams {
                    let s: BigInt = classes
                        .iter()
                        .map(|a| class_size(a) * character(l, a).unwrap() * character(m, a).unwrap())
                        .sum();
                    let expect = if l == m { factorial(n as u64) } else { BigInt::zero() };
                    assert_eq!(s, expect, "{l} {m}");
                }
            }
            assert_eq!(dim_sq, factorial(n as u64));
        }
    }

    #[test]
    fn gl_dimensions() {
        let n = PolyN::var();
        assert_eq!(dim_gl(&yd(&[1])), n);
        assert_eq!(
            dim_gl(&yd(&[2])),
            (&n * &PolyN::linear(1)).scale(&BigRational::new(1.into(), 2.into()))
        );
        // strictly decreasing fillings of a column: binomial(N, k)
        for k in 1..=5 {
            let p = dim_gl(&yd(&vec![1; k]));
            for n0 in 0..=8 {
                let v = p.eval(&BigRational::from_integer(n0.into()));
                assert_eq!(v, BigRational::from_integer(binomial(n0, k as i64)));
            }
        }
    }

    #[test]
    fn gl_dimension_vanishes_iff_too_many_rows() {
        for n in 1..=6 {
            for l in enumerate_diagrams(n) {
                for n0 in 1..=3i64 {
                    let v = dim_gl(&l).eval(&BigRational::from_integer(n0.into()));
                    assert!(v.is_integer() && v >= BigRational::zero());
                    assert_eq!(v.is_zero(), l.num_rows() > n0 as usize, "{l} at N={n0}");
                }
            }
        }
    }

    #[test]
    fn catalan_values_and_recurrence() {
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(4), BigInt::from(14));
        for m in 0..=12u64 {
            let conv: BigInt = (0..=m).map(|i| catalan(i) * catalan(m - i)).sum();
            assert_eq!(catalan(m + 1), conv);
        }
    }

    #[test]
    fn union_and_removal() {
        let a = part("1^1 2^1");
        assert_eq!(a.union(&part("2^1 3^1")), part("1^1 2^2 3^1"));
        assert_eq!(a.without(2), Some(part("1^1")));
        assert_eq!(a.without(3), None);
        assert_eq!(a.with(3), part("1^1 2^1 3^1"));
        assert_eq!(a.num_cycles(), 2);
        assert_eq!(a.weight(), 3);
    }

}
