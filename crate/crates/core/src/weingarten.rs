//! The ordinary sector `p = n`: Weingarten coefficients `z_alpha`, monomial
//! integrals over `U(N)` and the generating function `Z_{n,n}(J, K)`.
//!
//! For `n < N`,
//!
//! ```text
//! Z_{n,n}(J,K) = int dU (tr KU)^n (tr JU^+)^n = n! sum_{alpha |- n} z_alpha t_alpha
//! z_alpha      = |alpha| C([alpha])
//! C([sigma])   = sum_{lambda |- n} chi^lambda(1)^2 chi^lambda(sigma) / (n!^2 s_lambda(I_N))
//! ```
//!
//! `z_alpha` is computed two ways: from the character formula above and by
//! solving the contraction recursion (see [`crate::recursion`]).

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factorial, RatFuncN};
use crate::partitions::{character, class_size, dim_gl, enumerate_diagrams, enumerate_partitions, Partition};
use crate::recursion::{unit_table, RecursionSystem};
use crate::sources::SourceMatrices;
use crate::tables::{CoeffTable, Family};

/// Largest weight accepted by the permutation-sum tensor evaluator.
pub const MAX_TENSOR_WEIGHT: usize = 6;

/// The class function `C([alpha])` as a rational function of `N`.
pub fn weingarten_c(alpha: &Partition) -> RatFuncN {
    let n = alpha.weight();
    let nf = factorial(n as u64);
    let nf2 = BigRational::from_integer(&nf * &nf);
    let one_cycle_type = Partition::from_parts(&vec![1; n]);
    let mut acc = RatFuncN::zero();
    for lambda in enumerate_diagrams(n) {
        let dim = character(&lambda, &one_cycle_type).expect("same weight");
        let chi = character(&lambda, alpha).expect("same weight");
        if chi.is_zero() {
            continue;
        }
        let c = BigRational::from_integer(&dim * &dim * chi) / &nf2;
        let term = RatFuncN::from_rational(c)
            .checked_div(&RatFuncN::from_poly(dim_gl(&lambda)))
            .expect("GL dimension polynomial is nonzero");
        acc = &acc + &term;
    }
    acc
}

/// `z_alpha = |alpha| C([alpha])` for all `alpha |- n`, from characters.
pub fn z_table_character(n: usize) -> CoeffTable {
    let entries = enumerate_partitions(n)
        .into_iter()
        .map(|alpha| {
            let size = BigRational::from_integer(class_size(&alpha));
            let z = weingarten_c(&alpha).scale(&size);
            (alpha, z)
        })
        .collect();
    CoeffTable::new(n, Family::Weingarten, entries).expect("keys are the partitions of n")
}

/// One recursion step: the weight-`n` table from the weight-`n-1` one.
pub fn z_table_step(prev: &CoeffTable) -> Result<CoeffTable> {
    let n = prev.n + 1;
    let system = RecursionSystem::build(prev, &RatFuncN::var(), &RatFuncN::from_int(n as i64));
    system.solve(Family::Weingarten)
}

/// Tables for weights `0..=max_n` by recursion from `Z_{0,0} = 1`.
pub fn z_tables_recursive(max_n: usize) -> Result<Vec<CoeffTable>> {
    let mut out = vec![unit_table(Family::Weingarten)];
    for _ in 0..max_n {
        let next = z_table_step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

pub fn z_table_recursive(n: usize) -> Result<CoeffTable> {
    Ok(z_tables_recursive(n)?.pop().unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    out.push(cur.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                cur.swap(0, i);
            } else {
                cur.swap(c[i], i);
            }
            out.push(cur.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub(crate) fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let (mut k, mut len) = (s, 0);
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_parts(&lens)
}

fn check_indices(lists: &[&[usize]], dim: usize) -> Result<()> {
    for &index in lists.iter().flat_map(|l| l.iter()) {
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
    }
    Ok(())
}

/// Exact `int dU U_{i1 j1}...U_{in jn} U^+_{k1 l1}...U^+_{kn ln}` over `U(N0)`
/// (indices 1-based), as
/// `sum_{tau, sigma} C([sigma]) prod_a delta_{i_a l_tau(a)} delta_{j_a k_{tau sigma(a)}}`.
///
/// Requires `n < N0`; larger `n` needs the pseudo-inverse Weingarten calculus
/// and is refused.
pub fn monomial_integral_unitary(
    i: &[usize],
    j: &[usize],
    k: &[usize],
    l: &[usize],
    n0: usize,
) -> Result<BigRational> {
    let n = i.len();
    if j.len() != n || k.len() != n || l.len() != n {
        return Err(Error::InvalidSector(format!(
            "index lists have lengths {}, {}, {}, {}; the unitary sector needs equally many U and U^+",
            i.len(),
            j.len(),
            k.len(),
            l.len()
        )));
    }
    if n >= n0 {
        return Err(Error::InvalidSector(format!("n = {n} must be smaller than N = {n0}")));
    }
    if n > MAX_TENSOR_WEIGHT {
        return Err(Error::InvalidSector(format!("n = {n} exceeds the cap {MAX_TENSOR_WEIGHT}")));
    }
    check_indices(&[i, j, k, l], n0)?;

    let perms = permutations(n);
    let taus: Vec<&Vec<usize>> = perms
        .iter()
        .filter(|t| (0..n).all(|a| i[a] == l[t[a]]))
        .collect();
    let rhos: Vec<&Vec<usize>> = perms
        .iter()
        .filter(|r| (0..n).all(|a| j[a] == k[r[a]]))
        .collect();
    if taus.is_empty() || rhos.is_empty() {
        return Ok(BigRational::zero());
    }

    // C([sigma]) at N0, once per class
    let at = BigRational::from_integer(n0.into());
    let mut c_values: HashMap<Partition, BigRational> = HashMap::new();
    let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
    let mut tau_inv = vec![0usize; n];
    let mut sigma = vec![0usize; n];
    for tau in &taus {
        for (a, &t) in tau.iter().enumerate() {
            tau_inv[t] = a;
        }
        for rho in &rhos {
            // rho = tau . sigma
            for a in 0..n {
                sigma[a] = tau_inv[rho[a]];
            }
            *counts.entry(cycle_type(&sigma)).or_default() += 1;
        }
    }
    let mut total = BigRational::zero();
    for (cls, count) in counts {
        let c = match c_values.get(&cls) {
            Some(c) => c.clone(),
            None => {
                let c = weingarten_c(&cls).eval(&at)?;
                c_values.insert(cls.clone(), c.clone());
                c
            }
        };
        total += c * BigRational::from_integer(count.into());
    }
    Ok(total)
}

/// Evaluates a coefficient table at integer `N` to floating point.
pub(crate) fn table_values(table: &CoeffTable, n0: usize) -> Result<Vec<(Partition, f64)>> {
    table
        .iter()
        .map(|(p, v)| {
            let x = v.eval_int(n0 as i64)?;
            Ok((p.clone(), x.to_f64().unwrap_or(f64::NAN)))
        })
        .collect()
}

/// `Z_{n,n}(J,K) = n! sum_alpha z_alpha(N) t_alpha`, valid for `n < N`.
pub fn eval_znn(n: usize, src: &SourceMatrices) -> Result<Complex64> {
    let dim = src.dim();
    if n >= dim {
        return Err(Error::InvalidSector(format!("Z_{{n,n}} needs n < N, got n = {n}, N = {dim}")));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let traces = src.traces(n);
    let nf = factorial(n as u64).to_f64().unwrap();
    let sum: Complex64 = table_values(&z_table_character(n), dim)?
        .into_iter()
        .map(|(alpha, z)| traces.monomial(&alpha) * z)
        .sum();
    Ok(sum * nf)
}
