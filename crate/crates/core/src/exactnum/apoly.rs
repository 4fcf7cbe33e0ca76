use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in the deformation parameter `a` with exact rational
/// coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct APoly {
    terms: BTreeMap<i32, BigRational>,
}

pub(crate) static ZERO_APOLY: APoly = APoly { terms: BTreeMap::new() };

impl APoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The symbol `a`.
    pub fn a() -> Self {
        Self::monomial(1, BigRational::one())
    }

    /// `a^exp`.
    pub fn a_pow(exp: i32) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(exp: i32, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds the canonical form from an arbitrary term list: repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, BigRational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, exp: i32, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff.clone());
            }
        }
    }

    /// Terms in increasing order of the exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// All exponents even and non-negative, i.e. a polynomial in `a^2`.
    pub fn is_even_nonneg(&self) -> bool {
        self.terms.keys().all(|&e| e >= 0 && e % 2 == 0)
    }

    pub fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `a^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + shift, v.clone())).collect(),
        }
    }

    /// Inverse in the Laurent ring; only monomials are units.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((e, c)) => Ok(Self::monomial(-e, c.recip())),
            None => Err(Error::NotMonomial(self.to_string())),
        }
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Square root of a monomial `c a^(2t)` with `c` the square of a
    /// positive rational.
    pub fn monomial_sqrt(&self) -> Result<Self> {
        let not_square = || Error::NotMonomial(format!("sqrt({self})"));
        let (e, c) = self.as_monomial().ok_or_else(not_square)?;
        if e % 2 != 0 || !c.is_positive() {
            return Err(not_square());
        }
        let num = exact_isqrt(c.numer()).ok_or_else(not_square)?;
        let den = exact_isqrt(c.denom()).ok_or_else(not_square)?;
        Ok(Self::monomial(e / 2, BigRational::new(num, den)))
    }

    /// Substitutes an exact rational value for `a`.
    pub fn eval_exact(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Domain("a = 0 with negative powers of a".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_rational(a, e);
        }
        Ok(acc)
    }

    /// Floating-point evaluation at `a = a_val`.
    pub fn eval(&self, a_val: f64) -> Result<f64> {
        if a_val == 0.0 && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Domain("a = 0 with negative powers of a".into()));
        }
        Ok(self.terms().map(|(e, c)| rational_to_f64(c) * a_val.powi(e)).sum())
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl From<BigRational> for APoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for APoly {
    fn from(n: BigInt) -> Self {
        Self::constant(BigRational::from_integer(n))
    }
}

impl From<i64> for APoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a APoly> for &'a APoly {
    type Output = APoly;
    fn add(self, rhs: &'a APoly) -> APoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a APoly> for &'a APoly {
    type Output = APoly;
    fn sub(self, rhs: &'a APoly) -> APoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a APoly> for &'a APoly {
    type Output = APoly;
    fn mul(self, rhs: &'a APoly) -> APoly {
        let mut out = APoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        APoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<APoly> for APoly {
            type Output = APoly;
            fn $m(self, rhs: APoly) -> APoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a APoly> for APoly {
            type Output = APoly;
            fn $m(self, rhs: &'a APoly) -> APoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&APoly> for APoly {
    fn add_assign(&mut self, rhs: &APoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&APoly> for APoly {
    fn sub_assign(&mut self, rhs: &APoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Zero for APoly {
    fn zero() -> Self {
        APoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for APoly {
    fn one() -> Self {
        APoly::one()
    }
}

impl Sum for APoly {
    fn sum<I: Iterator<Item = APoly>>(iter: I) -> Self {
        iter.fold(APoly::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Plain text, highest power first: `a^6 + a^4`, `-2*a^2 + 1/2`, `3*a^-1`.
impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("a")?;
                    } else {
                        write!(f, "a^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
