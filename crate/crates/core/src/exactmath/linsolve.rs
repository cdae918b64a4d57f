//! Fraction-free Gaussian elimination over `Q(N)`.

use num_traits::Zero;

use super::ratfunc::RatFuncN;
use crate::error::{Error, Result};

/// Solves `a * x = b` where `a` has at least as many rows as columns.
///
/// The system must determine `x` uniquely: a column without a pivot is
/// reported as [`Error::RankDeficient`], and any row left over after
/// elimination that does not vanish identically (including its right-hand
/// side) is reported as [`Error::Inconsistent`].
pub fn solve_linear_system(a: &[Vec<RatFuncN>], b: &[RatFuncN]) -> Result<Vec<RatFuncN>> {
    let rows = a.len();
    if rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{rows} rows but {} right-hand sides",
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged coefficient matrix".into()));
    }
    if rows < cols {
        return Err(Error::DimensionMismatch(format!(
            "underdetermined: {rows} rows for {cols} unknowns"
        )));
    }

    // augmented rows, rhs in the last slot; original row ids kept for diagnostics
    let mut m: Vec<(usize, Vec<RatFuncN>)> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, rhs))| {
            let mut row = r.clone();
            row.push(rhs.clone());
            (i, row)
        })
        .collect();

    for k in 0..cols {
        let pivot = (k..rows)
            .filter(|&r| !m[r].1[k].is_zero())
            // smallest numerator degree keeps intermediate expressions short
            .min_by_key(|&r| m[r].1[k].numer().degree().unwrap_or(0) + m[r].1[k].denom().degree().unwrap_or(0))
            .ok_or(Error::RankDeficient(k))?;
        m.swap(k, pivot);
        let (top, bottom) = m.split_at_mut(k + 1);
        let prow = &top[k].1;
        let p = prow[k].clone();
        for (_, row) in bottom.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for j in k..=cols {
                row[j] = &(&p * &row[j]) - &(&f * &prow[j]);
            }
        }
    }

    if let Some((orig, _)) = m[cols..]
        .iter()
        .find(|(_, row)| row.iter().any(|v| !v.is_zero()))
    {
        return Err(Error::Inconsistent(*orig));
    }

    let mut x = vec![RatFuncN::zero(); cols];
    for k in (0..cols).rev() {
        let row = &m[k].1;
        let mut acc = row[cols].clone();
        for j in k + 1..cols {
            acc = &acc - &(&row[j] * &x[j]);
        }
        x[k] = acc.checked_div(&row[k])?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> RatFuncN {
        RatFuncN::var()
    }

    fn inv_n() -> RatFuncN {
        RatFuncN::from_int(1).checked_div(&n()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let x = solve_linear_system(&[vec![RatFuncN::from_int(1)]], &[inv_n()]).unwrap();
        assert_eq!(x, vec![inv_n()]);
    }

    #[test]
    fn consistent_redundant_row() {
        let a = vec![vec![RatFuncN::from_int(1)], vec![n()]];
        let x = solve_linear_system(&a, &[inv_n(), RatFuncN::from_int(1)]).unwrap();
        assert_eq!(x, vec![inv_n()]);
    }

    #[test]
    fn inconsistent_redundant_row() {
        let a = vec![vec![RatFuncN::from_int(1)], vec![n()]];
        let r = solve_linear_system(&a, &[inv_n(), RatFuncN::from_int(2)]);
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn rank_deficient() {
        let a = vec![vec![n(), n()], vec![RatFuncN::from_int(2), RatFuncN::from_int(2)]];
        let r = solve_linear_system(&a, &[RatFuncN::from_int(1), RatFuncN::from_int(2)]);
        assert!(matches!(r, Err(Error::RankDeficient(1))));
    }

    #[test]
    fn pivot_needs_row_swap() {
        let z = RatFuncN::zero();
        let one = RatFuncN::from_int(1);
        let a = vec![vec![z.clone(), one.clone()], vec![n(), z.clone()]];
        let x = solve_linear_system(&a, &[one.clone(), one.clone()]).unwrap();
        assert_eq!(x, vec![inv_n(), one]);
    }
}
