//! Reduced rational functions of `N`.
//!
//! Every value is kept in canonical form after each operation: numerator and
//! denominator are coprime and the denominator is monic. Zero is `0/1`. Two
//! rational functions are therefore equal exactly when their representations
//! are equal, which is what the table regression tests rely on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::PolyN;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncN {
    num: PolyN,
    den: PolyN,
}

impl RatFuncN {
    /// Builds `num/den` and reduces it. Fails when `den` is zero.
    pub fn new(num: PolyN, den: PolyN) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyN, den: PolyN) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().recip();
        RatFuncN { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: PolyN) -> Self {
        RatFuncN { num: p, den: PolyN::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(PolyN::from(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(PolyN::constant(c))
    }

    /// The indeterminate `N`.
    pub fn var() -> Self {
        Self::from_poly(PolyN::var())
    }

    /// `N + a`.
    pub fn linear(a: i64) -> Self {
        Self::from_poly(PolyN::linear(a))
    }

    pub fn numer(&self) -> &PolyN {
        &self.num
    }

    pub fn denom(&self) -> &PolyN {
        &self.den
    }

    pub fn checked_div(&self, rhs: &RatFuncN) -> Result<RatFuncN> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<RatFuncN> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> RatFuncN {
        RatFuncN { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &BigRational) -> RatFuncN {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Exact substitution `N = n0`.
    pub fn eval(&self, n0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(n0);
        if d.is_zero() {
            return Err(Error::Pole(n0.clone()));
        }
        Ok(self.num.eval(n0) / d)
    }

    pub fn eval_int(&self, n0: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(n0.into()))
    }

    /// Substitutes `N -> N + 1` and re-canonicalizes.
    pub fn shift(&self) -> RatFuncN {
        self.shift_by(1)
    }

    pub fn shift_by(&self, a: i64) -> RatFuncN {
        Self::reduce(self.num.shift(a), self.den.shift(a))
    }

    /// `deg(den) - deg(num)`; `None` for zero.
    pub fn degree_gap(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().unwrap() as i64 - dn)
    }

    /// Sign of the ratio for large positive `N`; zero for the zero function.
    pub fn sign_at_infinity(&self) -> i32 {
        match self.num.leading() {
            None => 0,
            // denominator is monic
            Some(lc) if lc.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// `lim_{N -> inf}`: the leading-coefficient ratio when degrees match,
    /// zero when the numerator has lower degree, `None` when it diverges.
    pub fn limit_at_infinity(&self) -> Option<BigRational> {
        match self.degree_gap() {
            None => Some(BigRational::zero()),
            Some(g) if g > 0 => Some(BigRational::zero()),
            Some(0) => Some(self.num.leading().unwrap().clone()),
            Some(_) => None,
        }
    }

    /// Returns the polynomial if the denominator is 1.
    pub fn as_poly(&self) -> Option<&PolyN> {
        self.den.is_one().then_some(&self.num)
    }

    /// Integer-coefficient representative `(p, q)` with `gcd` of all
    /// coefficients 1 and positive leading coefficient of `q`.
    pub fn integer_form(&self) -> (PolyN, PolyN) {
        let l = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let lr = BigRational::from_integer(l);
        let (p, q) = (self.num.scale(&lr), self.den.scale(&lr));
        debug_assert!(p.is_integral() && q.is_integral());
        let g = p.integer_content().gcd(&q.integer_content());
        let gr = BigRational::from_integer(if g.is_zero() { BigInt::one() } else { g }).recip();
        (p.scale(&gr), q.scale(&gr))
    }

    /// LaTeX `\frac{..}{..}` rendering of the integer form.
    pub fn to_latex(&self) -> String {
        let (p, q) = self.integer_form();
        if q.is_one() {
            return p.to_string().replace('*', "");
        }
        let (sign, p) = match p.leading() {
            Some(lc) if lc.is_negative() && p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 => {
                ("-", -&p)
            }
            _ => ("", p),
        };
        format!(
            "{sign}\\frac{{{}}}{{{}}}",
            p.to_string().replace('*', ""),
            q.to_string().replace('*', "")
        )
    }
}

fn term_count(p: &PolyN) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// Canonical text form, e.g. `(N+1)/N` or `-1/(N^3-N)`.
impl fmt::Display for RatFuncN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.integer_form();
        let ps = p.to_string();
        if q.is_one() {
            return f.write_str(&ps);
        }
        let qs = q.to_string();
        let wrap_num = term_count(&p) > 1;
        let q_lc_one = q.leading().is_some_and(One::is_one);
        let wrap_den = term_count(&q) > 1 || !q_lc_one;
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({ps})/({qs})"),
            (true, false) => write!(f, "({ps})/{qs}"),
            (false, true) => write!(f, "{ps}/({qs})"),
            (false, false) => write!(f, "{ps}/{qs}"),
        }
    }
}

impl Zero for RatFuncN {
    fn zero() -> Self {
        RatFuncN { num: PolyN::zero(), den: PolyN::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncN {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a RatFuncN> for &'a RatFuncN {
    type Output = RatFuncN;
    fn add(self, rhs: &RatFuncN) -> RatFuncN {
        if self.den == rhs.den {
            return RatFuncN::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFuncN::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RatFuncN> for &'a RatFuncN {
    type Output = RatFuncN;
    fn sub(self, rhs: &RatFuncN) -> RatFuncN {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFuncN> for &'a RatFuncN {
    type Output = RatFuncN;
    fn mul(self, rhs: &RatFuncN) -> RatFuncN {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncN::zero();
        }
        RatFuncN::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFuncN {
    type Output = RatFuncN;
    fn neg(self) -> RatFuncN {
        RatFuncN { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFuncN {
    type Output = RatFuncN;
    fn neg(self) -> RatFuncN {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFuncN> for RatFuncN {
            type Output = RatFuncN;
            fn $m(self, rhs: RatFuncN) -> RatFuncN {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<PolyN> for RatFuncN {
    fn from(p: PolyN) -> Self {
        Self::from_poly(p)
    }
}
