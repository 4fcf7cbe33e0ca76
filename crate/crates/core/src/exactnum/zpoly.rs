use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::apoly::{APoly, ZERO_APOLY};
use super::factorial::falling_factorial;
use crate::error::Result;

/// Polynomial in `z` whose coefficients are [`APoly`] values.
///
/// `coeffs[j]` is the coefficient of `z^j`; the last stored coefficient is
/// never zero, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<APoly>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(APoly::one())
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(1, APoly::one())
    }

    pub fn constant(c: APoly) -> Self {
        Self::monomial(0, c)
    }

    /// `c z^power`.
    pub fn monomial(power: usize, c: APoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![APoly::zero(); power + 1];
        coeffs[power] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<APoly>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(APoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[APoly] {
        &self.coeffs
    }

    /// Coefficient of `z^power` (zero past the degree).
    pub fn coeff(&self, power: usize) -> &APoly {
        self.coeffs.get(power).unwrap_or(&ZERO_APOLY)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> &APoly {
        self.coeffs.last().unwrap_or(&ZERO_APOLY)
    }

    /// The `s`-th derivative in `z`.
    pub fn derivative(&self, s: usize) -> Self {
        if s == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= s {
            return Self::zero();
        }
        let coeffs = (s..self.coeffs.len())
            .map(|j| {
                let factor = BigRational::from_integer(falling_factorial(j, s));
                self.coeffs[j].scale(&factor)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Multiplies by `z^l`.
    pub fn shift(&self, l: usize) -> Self {
        if self.is_zero() || l == 0 {
            return self.clone();
        }
        let mut coeffs = vec![APoly::zero(); l];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &APoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Substitutes an exact value for `a`, leaving a rational polynomial in `z`.
    pub fn substitute_a(&self, a: &BigRational) -> Result<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.eval_exact(a)).collect()
    }

    /// Floating-point coefficients at `a = a_val`, lowest power first.
    pub fn eval_coeffs(&self, a_val: f64) -> Result<Vec<f64>> {
        self.coeffs.iter().map(|c| c.eval(a_val)).collect()
    }

    pub fn eval(&self, z: f64, a_val: f64) -> Result<f64> {
        Ok(horner(&self.eval_coeffs(a_val)?, z))
    }
}

/// Evaluates `sum c_j x^j` with `coeffs` lowest power first.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &'a ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &'a ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &'a ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![APoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(x * y);
            }
        }
        ZPoly::from_coeffs(coeffs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ZPoly> for ZPoly {
            type Output = ZPoly;
            fn $m(self, rhs: ZPoly) -> ZPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ZPoly> for ZPoly {
            type Output = ZPoly;
            fn $m(self, rhs: &'a ZPoly) -> ZPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<APoly> for ZPoly {
    fn from(c: APoly) -> Self {
        Self::constant(c)
    }
}

/// Plain text, highest power of `z` first, one parenthesized [`APoly`] per term.
impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{j}")?,
            }
        }
        Ok(())
    }
}

/// `sum_j c_j z^j` with integer `c_j`, lowest power first.
pub fn zpoly_from_ints(coeffs: &[i64]) -> ZPoly {
    ZPoly::from_coeffs(coeffs.iter().map(|&c| APoly::from(BigInt::from(c))).collect())
}
