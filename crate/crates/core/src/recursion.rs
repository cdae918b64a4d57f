//! Linear recursion systems obtained by contracting a generating function
//! with `delta_{jk} d^2 / dJ_{lk} dK_{ji}`.
//!
//! Applied to a trace monomial `t_alpha`, the operator produces a sum of
//! tensors `(JK)^m_{il} t_beta` with `m + |beta| = n - 1`, where
//! `(JK)^0_{il} = delta_{il}`. Treating these tensors as independent and
//! matching coefficients against the right-hand side
//! `factor * delta_{il} * sum_beta c_beta t_beta` yields an overdetermined
//! linear system for the coefficients at weight `n`.
//!
//! The only differences between the ordinary and shifted sectors are the
//! scalar multiplying the `(JK)^{q-1}` term (`N` versus `N+1`, the latter
//! coming from differentiating `det K`) and the right-hand side factor.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::exactmath::{solve_linear_system, RatFuncN};
use crate::partitions::{enumerate_partitions, Partition};
use crate::tables::{CoeffTable, Family};

/// A basis tensor `(JK)^m_{il} t_beta`.
pub type BasisTensor = (usize, Partition);

/// Image of `t_alpha` under the contraction operator, with `trace_scalar`
/// multiplying the `(JK)^{q-1}` term.
pub fn contract_monomial(alpha: &Partition, trace_scalar: &RatFuncN) -> BTreeMap<BasisTensor, RatFuncN> {
    let mut out: BTreeMap<BasisTensor, RatFuncN> = BTreeMap::new();
    let mut add = |key: BasisTensor, v: RatFuncN| {
        let e = out.entry(key).or_insert_with(RatFuncN::zero);
        *e = &*e + &v;
    };
    for (q, aq) in alpha.iter() {
        let hat = alpha.without(q).unwrap();
        let w = (q * aq as usize) as i64;
        // derivative hits a K inside the differentiated trace
        add((q - 1, hat.clone()), trace_scalar.scale(&BigRational::from_integer(w.into())));
        for s in 1..q {
            add((q - 1 - s, hat.with(s)), RatFuncN::from_int(w));
        }
        // derivative hits another trace factor t_r
        for (r, ar) in hat.iter() {
            let coef = w * (r * ar as usize) as i64;
            add((q + r - 1, hat.without(r).unwrap()), RatFuncN::from_int(coef));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// All basis tensors of total weight `n - 1`, ordered by `m` then `beta`.
pub fn basis(n: usize) -> Vec<BasisTensor> {
    let mut out = Vec::new();
    for m in 0..n {
        for beta in enumerate_partitions(n - 1 - m) {
            out.push((m, beta));
        }
    }
    out
}

/// The assembled system: one row per basis tensor, one column per `alpha |- n`.
pub struct RecursionSystem {
    pub rows: Vec<BasisTensor>,
    pub columns: Vec<Partition>,
    pub matrix: Vec<Vec<RatFuncN>>,
    pub rhs: Vec<RatFuncN>,
}

impl RecursionSystem {
    pub fn build(prev: &CoeffTable, trace_scalar: &RatFuncN, rhs_factor: &RatFuncN) -> Self {
        let n = prev.n + 1;
        let rows = basis(n);
        let columns = enumerate_partitions(n);
        let index: BTreeMap<&BasisTensor, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut matrix = vec![vec![RatFuncN::zero(); columns.len()]; rows.len()];
        for (c, alpha) in columns.iter().enumerate() {
            for (key, v) in contract_monomial(alpha, trace_scalar) {
                matrix[index[&key]][c] = v;
            }
        }
        let mut rhs = vec![RatFuncN::zero(); rows.len()];
        for (beta, v) in prev.iter() {
            rhs[index[&(0, beta.clone())]] = rhs_factor * v;
        }
        RecursionSystem { rows, columns, matrix, rhs }
    }

    pub fn solve(&self, family: Family) -> Result<CoeffTable> {
        let x = solve_linear_system(&self.matrix, &self.rhs)?;
        let n = self.columns.first().map_or(0, Partition::weight);
        CoeffTable::new(n, family, self.columns.iter().cloned().zip(x).collect())
    }
}

/// The weight-0 table `{empty: 1}`, base of both recursions.
pub fn unit_table(family: Family) -> CoeffTable {
    let entries = BTreeMap::from([(Partition::empty(), RatFuncN::from_int(1))]);
    CoeffTable::new(0, family, entries).expect("weight 0 has one partition")
}
