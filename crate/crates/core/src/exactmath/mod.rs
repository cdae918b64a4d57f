//! Exact arithmetic kernel: rationals, polynomials in `N`, rational
//! functions of `N` and linear solving over `Q(N)`.
//!
//! Scalars are [`num_rational::BigRational`]; nothing here touches floating
//! point except the explicit `eval_f64` helpers.

mod linsolve;
mod parse;
mod poly;
mod ratfunc;

pub use linsolve::solve_linear_system;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use parse::parse_ratfunc;
pub use poly::PolyN;
pub use ratfunc::RatFuncN;

use num_traits::One;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `prod_{k=lo}^{hi} (N + k)`; the empty product is 1.
pub fn rising_product(lo: i64, hi: i64) -> PolyN {
    (lo..=hi).fold(PolyN::one(), |acc, k| &acc * &PolyN::linear(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = PolyN> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| PolyN::from_ints(&c))
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFuncN> {
        (small_poly(), small_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFuncN::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn mul_then_div_is_identity(a in small_ratfunc(), b in small_ratfunc()) {
            prop_assume!(!b.is_zero());
            let back = (&a * &b).checked_div(&b).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn evaluation_commutes_with_arithmetic(
            a in small_ratfunc(),
            b in small_ratfunc(),
            pts in prop::collection::vec((-50i64..50, 1i64..13), 20),
        ) {
            let sum = &a + &b;
            let prod = &a * &b;
            let diff = &a - &b;
            for (p, q) in pts {
                let x = rational(p, q);
                let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) else { continue };
                prop_assert_eq!(sum.eval(&x).unwrap(), &va + &vb);
                prop_assert_eq!(prod.eval(&x).unwrap(), &va * &vb);
                prop_assert_eq!(diff.eval(&x).unwrap(), &va - &vb);
                if !vb.is_zero() && !b.is_zero() {
                    if let Ok(v) = a.checked_div(&b).unwrap().eval(&x) {
                        prop_assert_eq!(v, &va / &vb);
                    }
                }
            }
        }

        #[test]
        fn solver_recovers_known_solution(
            entries in prop::collection::vec(small_ratfunc(), 16),
            xs in prop::collection::vec(small_ratfunc(), 4),
        ) {
            let a: Vec<Vec<RatFuncN>> = entries.chunks(4).map(<[RatFuncN]>::to_vec).collect();
            let b: Vec<RatFuncN> = a
                .iter()
                .map(|row| row.iter().zip(&xs).fold(RatFuncN::zero(), |acc, (r, x)| &acc + &(r * x)))
                .collect();
            match solve_linear_system(&a, &b) {
                Ok(sol) => prop_assert_eq!(sol, xs),
                // singular draws are legitimately rejected
                Err(crate::Error::RankDeficient(_)) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn rising_product_empty_and_nonempty() {
        assert_eq!(rising_product(1, 0), PolyN::one());
        assert_eq!(rising_product(0, 1), PolyN::from_ints(&[0, 1, 1]));
    }
}
