//! Truncated formal power series and polynomials in formal trace symbols.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::RatFuncN;
use crate::partitions::Partition;

/// Commutative ring with a map from `Q`, enough for series algebra.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn scaled(&self, q: &BigRational) -> Self {
        self.times(&Self::from_rational(q))
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Ring for RatFuncN {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(q: &BigRational) -> Self {
        RatFuncN::from_rational(q.clone())
    }
}

/// Polynomial in commuting symbols `t_1, t_2, ...`; the monomial
/// `prod_q t_q^{alpha_q}` is keyed by the partition `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct TracePoly<S> {
    terms: BTreeMap<Partition, S>,
}

impl<S: Ring> TracePoly<S> {
    pub fn monomial(alpha: Partition, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        TracePoly { terms }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Partition::empty(), c)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, S> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &Partition) -> S {
        self.terms.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&Partition, &S) -> T) -> TracePoly<T> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), f(p, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        TracePoly { terms }
    }

    fn add_term(&mut self, alpha: Partition, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }
}

impl<S: Ring> Ring for TracePoly<S> {
    fn zero() -> Self {
        TracePoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(S::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.union(q), a.times(b));
            }
        }
        out
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::constant(S::from_rational(q))
    }
}

/// `sum_{k=0}^{order} c_k x^k + O(x^{order+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> PowerSeries<C> {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![C::zero(); order + 1] }
    }

    /// Pads or truncates `coeffs` to the given order.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=order).map(|k| self.coeffs[k].plus(&other.coeffs[k])).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    /// Multiplies by `x`, dropping the term pushed past the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        PowerSeries { coeffs }
    }

    /// `sum_m g_m s^m` for a series `s` without constant term.
    pub fn compose_into(outer: &[C], s: &Self) -> Self {
        debug_assert!(s.coeffs[0].is_zero());
        // Horner
        let mut acc = Self::zero(s.order());
        for g in outer.iter().rev() {
            acc = acc.mul(s);
            acc.coeffs[0] = acc.coeffs[0].plus(g);
        }
        acc
    }

    /// `log(1 + s)` for a series `s` without constant term.
    pub fn log1p(s: &Self) -> Self {
        let outer: Vec<C> = (0..=s.order())
            .map(|k| match k {
                0 => C::zero(),
                k => {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    C::from_rational(&BigRational::new(sign.into(), (k as i64).into()))
                }
            })
            .collect();
        Self::compose_into(&outer, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational;
    use crate::partitions::catalan;

    #[test]
    fn catalan_generating_function() {
        let order = 12;
        let c = PowerSeries::new(
            (0..=order as u64).map(|m| BigRational::from_integer(catalan(m))).collect(),
            order,
        );
        // t C^2 - C + 1
        let lhs = c.mul(&c).shift_up().add(&c.scale(&rational(-1, 1)));
        let mut lhs = lhs.coeffs().to_vec();
        lhs[0] += rational(1, 1);
        assert!(lhs.iter().all(Zero::is_zero));
    }

    #[test]
    fn log1p_of_geometric() {
        // log(1 + x) from s = x
        let s = PowerSeries::new(vec![rational(0, 1), rational(1, 1)], 5);
        let l = PowerSeries::log1p(&s);
        assert_eq!(l.coeff(4), &rational(-1, 4));
        assert_eq!(l.coeff(5), &rational(1, 5));
    }

    #[test]
    fn trace_poly_product() {
        let t1 = TracePoly::monomial(Partition::single(1), rational(1, 1));
        let t2 = TracePoly::monomial(Partition::single(2), rational(-1, 1));
        let p = t1.plus(&t2).times(&t1.plus(&t2));
        assert_eq!(p.coeff(&Partition::from_parts(&[1, 1])), rational(1, 1));
        assert_eq!(p.coeff(&Partition::from_parts(&[1, 2])), rational(-2, 1));
        assert_eq!(p.coeff(&Partition::from_parts(&[2, 2])), rational(1, 1));
        assert!(t1.plus(&t1.scaled(&rational(-1, 1))).is_zero());
    }
}
