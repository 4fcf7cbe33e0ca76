//! Generalized Chebyshev polynomials `Ch_n(z; k; a)`.
//!
//! They are generated by the three-term recurrence
//!
//! ```text
//! b_n Ch_{n+1} + b_{n-1} Ch_{n-1} = z Ch_n,   Ch_0 = 1, Ch_{-1} = 0,
//! ```
//!
//! where every off-diagonal Jacobi coefficient is 1 except the single defect
//! `b_{k-1} = a`. The recurrence is the reference; both closed forms here are
//! checked against it.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, APoly, ZPoly};

/// The single-defect Jacobi sequence `b_{pos_k - 1} = a`, `b_n = 1` otherwise,
/// `b_{-1} = 0`.
///
/// `pos_k` is the defect position (the `k` of `Ch_n(z; k; a)`); it is kept
/// distinct from the diagonal index used by the annihilator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    pos_k: usize,
}

impl RecurrenceSpec {
    pub fn new(pos_k: usize) -> Result<Self> {
        if pos_k == 0 {
            return Err(Error::out_of_range("pos_k", "must be >= 1"));
        }
        Ok(Self { pos_k })
    }

    /// The oscillator case `pos_k = 1`, whose polynomials are written `Psi_n`.
    pub const fn oscillator() -> Self {
        Self { pos_k: 1 }
    }

    pub fn pos_k(&self) -> usize {
        self.pos_k
    }

    /// `b_n` for `n >= -1`.
    pub fn b(&self, n: isize) -> APoly {
        assert!(n >= -1, "b_n queried at n = {n}");
        if n == -1 {
            APoly::zero()
        } else if n as usize == self.pos_k - 1 {
            APoly::a()
        } else {
            APoly::one()
        }
    }

    /// The bracket `[s] = b_{s-1}^2 / b_0^2` for `s >= 1`.
    pub fn bracket(&self, s: usize) -> APoly {
        let b = self.b(s as isize - 1);
        let b0 = self.b(0);
        // b_0 is a monomial, so its square is a unit
        let inv = (&b0 * &b0).inverse().expect("b_0 is a unit");
        &(&b * &b) * &inv
    }

    /// `[n]! = [1][2]...[n]`.
    pub fn bracket_factorial(&self, n: usize) -> APoly {
        (1..=n).fold(APoly::one(), |acc, s| &acc * &self.bracket(s))
    }
}

impl Default for RecurrenceSpec {
    fn default() -> Self {
        Self::oscillator()
    }
}

/// `Ch_0, ..., Ch_{n_max}` by the recurrence.
pub fn cheb_sequence(n_max: usize, spec: &RecurrenceSpec) -> Vec<ZPoly> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ZPoly::one());
    let mut prev = ZPoly::zero();
    for n in 0..n_max {
        let cur = &out[n];
        let b_n_inv = spec.b(n as isize).inverse().expect("b_n is a unit");
        let rhs = &ZPoly::z() * cur - prev.scale(&spec.b(n as isize - 1));
        prev = cur.clone();
        out.push(rhs.scale(&b_n_inv));
    }
    out
}

/// `Ch_n(z; pos_k; a)` by the recurrence.
pub fn cheb_recurrence(n: usize, spec: &RecurrenceSpec) -> ZPoly {
    cheb_sequence(n, spec).pop().expect("sequence is non-empty")
}

/// `Psi_n = Ch_n(z; 1; a)` by the recurrence.
pub fn psi(n: usize) -> ZPoly {
    cheb_recurrence(n, &RecurrenceSpec::oscillator())
}

/// `Psi_n` from the explicit sum over `m <= n/2`:
///
/// ```text
/// Psi_n = sum_m (-1)^m (n-m-1)! (n + m(a^2-2)) / ((n-2m)! m! a) z^{n-2m},   n >= 1.
/// ```
///
/// The `m = 0` and `m = 1` terms reduce to `z^n/a` and `-(n+a^2-2) z^{n-2}/a`.
pub fn cheb_closed_k1(n: usize) -> ZPoly {
    if n == 0 {
        return ZPoly::one();
    }
    let a_inv = APoly::a_pow(-1);
    let a2_minus_2 = &APoly::a_pow(2) - &APoly::from_int(2);
    let mut coeffs = vec![APoly::zero(); n + 1];
    for m in 0..=n / 2 {
        let num = factorial(n - m - 1);
        let den = factorial(n - 2 * m) * factorial(m);
        let mut c = BigRational::new(num, den);
        if m % 2 == 1 {
            c = -c;
        }
        let linear = &APoly::from_int(n as i64) + &a2_minus_2.scale(&int(m as i64));
        coeffs[n - 2 * m] = (&linear * &a_inv).scale(&c);
    }
    ZPoly::from_coeffs(coeffs)
}

/// The nested bracket sum `beta_{2m-1, n-1}`; `m = 0` is `beta_{-1, n-1} = 1`.
///
/// ```text
/// beta_{2m-1,n-1} = sum_{k_1=2m-1}^{n-1} [k_1] sum_{k_2=2m-3}^{k_1-2} [k_2] ... sum_{k_m=1}^{k_{m-1}-2} [k_m]
/// ```
pub fn beta_bracket(m: usize, n: usize, spec: &RecurrenceSpec) -> APoly {
    if m == 0 {
        return APoly::one();
    }
    let top = n as isize - 1;
    if top < 1 {
        return APoly::zero();
    }
    let top = top as usize;
    let brackets: Vec<APoly> = (0..=top)
        .map(|s| if s == 0 { APoly::zero() } else { spec.bracket(s) })
        .collect();
    // level[t] holds the (r-1)-fold sum whose outermost index runs up to t
    let mut level: Vec<APoly> = vec![APoly::one(); top + 1];
    for r in 1..=m {
        let lo = 2 * r - 1;
        let mut next = vec![APoly::zero(); top + 1];
        let mut running = APoly::zero();
        for t in 0..=top {
            if t >= lo {
                if r == 1 {
                    running += &brackets[t];
                } else {
                    running += &(&brackets[t] * &level[t - 2]);
                }
            }
            next[t] = running.clone();
        }
        level = next;
    }
    level[top].clone()
}

/// `Ch_n` from the general bracket formula
///
/// ```text
/// Ch_n = sum_{m=0}^{n/2} (-1)^m / sqrt([n]!) b_0^{2m-n} beta_{2m-1,n-1} z^{n-2m}.
/// ```
///
/// `sqrt([n]!)` is taken in the Laurent ring, which needs `[n]!` to be the
/// square of a monomial; that holds for every single-defect sequence.
pub fn cheb_closed_general(n: usize, spec: &RecurrenceSpec) -> Result<ZPoly> {
    let root = spec.bracket_factorial(n).monomial_sqrt()?;
    let inv_root = root.inverse()?;
    let b0 = spec.b(0);
    let mut coeffs = vec![APoly::zero(); n + 1];
    for m in 0..=n / 2 {
        let mut c = &(&inv_root * &b0.pow(2 * m as i32 - n as i32)?) * &beta_bracket(m, n, spec);
        if m % 2 == 1 {
            c = -c;
        }
        coeffs[n - 2 * m] = c;
    }
    Ok(ZPoly::from_coeffs(coeffs))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
