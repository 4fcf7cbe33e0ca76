//! The annihilation operator as an infinite-order differential operator.
//!
//! `A = sum_{s>=1} sum_{l<s} a_{ls} z^l d^s/dz^s` is fixed by
//! `A Psi_n = b_{n-1} Psi_{n-1}`. The coefficient matrix is computed three
//! ways, each independent of the others:
//!
//! - [`entry_closed`]: the closed form through Catalan numbers and the
//!   polynomials `P_{k,2k+2}(a)`;
//! - [`entry_recursive`]: the recursion expressing `a_{l,l+2k+1}` through
//!   entries with smaller indices;
//! - [`matrix_solve_oracle`]: solving the triangular system obtained by
//!   applying the ansatz to `Psi_1, ..., Psi_N` and equating powers of `z`.
//!   It uses nothing but the recurrence and the defining action.
//!
//! Only odd overdiagonals (`s - l` odd, `s > l`) are non-zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chebgen::{cheb_sequence, RecurrenceSpec};
use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, APoly, ZPoly};

/// `C_k = C(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> BigInt {
    let k = k as i64;
    binom(2 * k, k) / BigInt::from(k + 1)
}

/// Coefficient of `a^{2(k-i+1)}` in `P_{k,2k+2}(a)`:
/// `beta_{k,i} = C(k+i-1, k-1) - C(k+i-1, k)` for `1 <= i <= k-1`.
pub fn beta_coeff(k: usize, i: usize) -> Result<BigInt> {
    if k < 2 || i == 0 || i >= k {
        return Err(Error::out_of_range(
            "beta_coeff",
            format!("need k >= 2 and 1 <= i <= k-1, got k={k}, i={i}"),
        ));
    }
    let (k, i) = (k as i64, i as i64);
    Ok(binom(k + i - 1, k - 1) - binom(k + i - 1, k))
}

/// The even polynomial `P_{k,2k+2}(a)` carrying the `a`-dependence of the
/// `(2k+1)`-th overdiagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    pub k: usize,
    pub value: APoly,
}

impl PPoly {
    /// Leading term `a^{2k+2}` with coefficient 1 and lowest term `a^4`
    /// (`a^2` for `k = 0`), all exponents even.
    pub fn has_expected_shape(&self) -> bool {
        let lowest = if self.k == 0 { 2 } else { 4 };
        let top = 2 * self.k as i32 + 2;
        self.value.is_even_nonneg()
            && self.value.max_exp() == Some(top)
            && self.value.coeff(top).is_one()
            && self.value.min_exp() == Some(lowest)
    }
}

/// `P_{k,2k+2}(a)` from the closed coefficient formula.
pub fn p_poly_closed(k: usize) -> PPoly {
    let value = match k {
        0 => APoly::a_pow(2),
        1 => APoly::a_pow(4),
        _ => {
            let mut v = APoly::a_pow(2 * k as i32 + 2);
            for i in 1..k {
                let beta = beta_coeff(k, i).expect("index in range");
                v += &APoly::monomial(2 * (k - i + 1) as i32, BigRational::from_integer(beta));
            }
            v
        }
    };
    PPoly { k, value }
}

/// `P_0, ..., P_{k_max}` from the recursion
///
/// ```text
/// P_k = sum_{m=2}^{k+1} (-1)^m P_{k-m+1} (2k+1-m)! (2k+1 + (m-1)(a^2-2)) / ((2(k-m+1)+1)! (m-1)!)
///       + (-1)^k a^2
/// ```
///
/// seeded by `P_0 = a^2`.
pub fn p_poly_table_recursive(k_max: usize) -> Vec<PPoly> {
    let a2_minus_2 = &APoly::a_pow(2) - &APoly::from_int(2);
    let mut table: Vec<APoly> = vec![APoly::a_pow(2)];
    for k in 1..=k_max {
        let mut v = APoly::a_pow(2);
        if k % 2 == 1 {
            v = -v;
        }
        for m in 2..=k + 1 {
            let prev = &table[k + 1 - m];
            let num = factorial(2 * k + 1 - m);
            let den = factorial(2 * (k + 1 - m) + 1) * factorial(m - 1);
            let c = signed(m, BigRational::new(num, den));
            let linear = &APoly::from_int(2 * k as i64 + 1) + &a2_minus_2.scale(&int(m as i64 - 1));
            v += &(prev * &linear).scale(&c);
        }
        table.push(v);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(k, value)| PPoly { k, value })
        .collect()
}

/// `P_{k,2k+2}(a)` from the recursion; see [`p_poly_table_recursive`].
pub fn p_poly_recursive(k: usize) -> Result<PPoly> {
    if k == 0 {
        return Err(Error::out_of_range("p_poly_recursive", "k must be >= 1"));
    }
    Ok(p_poly_table_recursive(k).pop().expect("table is non-empty"))
}

/// `a_{l,l+2k+1}` by the closed form
///
/// ```text
/// a_{l,l+2k+1} = (-1)^{l+1} / (l+2k+1)! * ((1 - delta_{l,0}) C_k C(l+2k, 2k+1)
///                                          - C(l+2k+1, 2k+1) P_{k,2k+2}(a)).
/// ```
pub fn entry_closed(l: usize, k: usize) -> APoly {
    entry_closed_with(l, k, &p_poly_closed(k).value)
}

fn entry_closed_with(l: usize, k: usize, p: &APoly) -> APoly {
    let (li, ki) = (l as i64, k as i64);
    let head = if l == 0 {
        BigInt::zero()
    } else {
        catalan(k) * binom(li + 2 * ki, 2 * ki + 1)
    };
    let tail = binom(li + 2 * ki + 1, 2 * ki + 1);
    let bracket = &APoly::from(head) - &p.scale(&BigRational::from_integer(tail));
    let c = signed(l + 1, BigRational::new(BigInt::one(), factorial(l + 2 * k + 1)));
    bracket.scale(&c)
}

/// `a_{l,s}` for any position: zero off the odd overdiagonals, otherwise
/// [`entry_closed`].
pub fn entry(l: usize, s: usize) -> APoly {
    if s <= l || (s - l).is_multiple_of(2) {
        return APoly::zero();
    }
    entry_closed(l, (s - l - 1) / 2)
}

/// `a_{l,l+2k+1}` by the recursion
///
/// ```text
/// a_{l,l+2k+1} = 1/n! ( - sum_{t<l} a_{t,t+2k+1} n!/(l-t)!
///     + sum_{m=2}^{k+1} (-1)^m sum_{t<=l} a_{t,t+2k+1-2(m-1)}
///           (n-m)! (n + (m-1)(a^2-2)) / ((l-t)! (m-1)!)
///     + (-1)^k (l+k-1)! (l + k a^2) / (l! k!) ),        n = l+2k+1,
/// ```
///
/// with base `a_{0,1} = a^2`. Every entry on the right must already be in
/// `cache`.
pub fn entry_recursive(l: usize, k: usize, cache: &CoeffMatrix) -> Result<APoly> {
    if l == 0 && k == 0 {
        return Ok(APoly::a_pow(2));
    }
    let d = 2 * k + 1;
    let n = l + d;
    let lookup = |t: usize, s: usize| cache.get(t, s).ok_or(Error::MissingDependency { l: t, s });
    let n_fact = factorial(n);
    let mut total = APoly::zero();
    for t in 0..l {
        let c = BigRational::new(n_fact.clone(), factorial(l - t));
        total -= &lookup(t, t + d)?.scale(&c);
    }
    let a2_minus_2 = &APoly::a_pow(2) - &APoly::from_int(2);
    for m in 2..=k + 1 {
        let linear = &APoly::from_int(n as i64) + &a2_minus_2.scale(&int(m as i64 - 1));
        let mut inner = APoly::zero();
        for t in 0..=l {
            let c = BigRational::new(factorial(n - m), factorial(l - t) * factorial(m - 1));
            inner += &lookup(t, t + d - 2 * (m - 1))?.scale(&c);
        }
        total += &(&inner * &linear).scale(&signed(m, BigRational::one()));
    }
    let free = &APoly::from_int(l as i64) + &APoly::monomial(2, int(k as i64));
    let c = BigRational::new(factorial(l + k - 1), factorial(l) * factorial(k));
    total += &free.scale(&signed(k, c));
    Ok(total.scale(&BigRational::new(BigInt::one(), n_fact)))
}

/// Sparse upper-triangular coefficient matrix `(l, s) -> a_{ls}` for
/// derivative orders `s <= max_order`.
///
/// The map records every computed position, zeros included, so that a
/// missing entry can be told apart from a vanishing one. Equality compares
/// the non-zero entries and `max_order`.
#[derive(Clone, Debug, Default)]
pub struct CoeffMatrix {
    entries: BTreeMap<(usize, usize), APoly>,
    max_order: usize,
}

impl CoeffMatrix {
    pub fn new(max_order: usize) -> Self {
        Self {
            entries: BTreeMap::new(),
            max_order,
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Computed value at `(l, s)`; `None` if the position was never filled.
    pub fn get(&self, l: usize, s: usize) -> Option<&APoly> {
        self.entries.get(&(l, s))
    }

    /// Value at `(l, s)`, zero when absent.
    pub fn entry(&self, l: usize, s: usize) -> APoly {
        self.entries.get(&(l, s)).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, l: usize, s: usize, value: APoly) {
        self.max_order = self.max_order.max(s);
        self.entries.insert((l, s), value);
    }

    /// Non-zero entries ordered by `(l, s)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &APoly)> + '_ {
        self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.iter().count()
    }

    /// Non-zero entries in the top-left `rows x cols` block (`l < rows`, `s < cols`).
    pub fn block(&self, rows: usize, cols: usize) -> impl Iterator<Item = ((usize, usize), &APoly)> + '_ {
        self.iter().filter(move |((l, s), _)| *l < rows && *s < cols)
    }

    /// Positions holding a non-zero value where the sparsity pattern
    /// (`s > l`, `s - l` odd) requires zero.
    pub fn pattern_violations(&self) -> Vec<(usize, usize)> {
        self.iter()
            .map(|(pos, _)| pos)
            .filter(|(l, s)| s <= l || (s - l) % 2 == 0)
            .collect()
    }

    /// Every stored entry is a polynomial in `a^2` with rational coefficients.
    pub fn all_even_nonneg(&self) -> bool {
        self.entries.values().all(APoly::is_even_nonneg)
    }

    /// All entries with `s <= max_order` from [`entry_closed`].
    pub fn closed(max_order: usize) -> Self {
        let mut m = Self::new(max_order);
        let p_table: Vec<APoly> = (0..=max_order / 2).map(|k| p_poly_closed(k).value).collect();
        for s in 1..=max_order {
            for l in (0..s).rev().step_by(2) {
                let k = (s - l - 1) / 2;
                m.insert(l, s, entry_closed_with(l, k, &p_table[k]));
            }
        }
        m
    }

    /// All entries with `s <= max_order` from [`entry_recursive`], built by
    /// overdiagonal `2k+1` and then by row.
    pub fn recursive(max_order: usize) -> Result<Self> {
        let mut m = Self::new(max_order);
        let mut d = 1;
        while d <= max_order {
            let k = (d - 1) / 2;
            for l in 0..=max_order - d {
                let v = entry_recursive(l, k, &m)?;
                m.insert(l, l + d, v);
            }
            d += 2;
        }
        Ok(m)
    }

    /// `sum_{s=1}^{max_order} sum_{l<s} a_{ls} z^l p^{(s)}`.
    ///
    /// When `max_order >= deg p` this is the exact action of the full
    /// operator, since higher derivatives vanish.
    pub fn apply(&self, p: &ZPoly) -> ZPoly {
        let top = p.degree().unwrap_or(0).min(self.max_order);
        let mut out = ZPoly::zero();
        for s in 1..=top {
            let dp = p.derivative(s);
            let column = self.column(s);
            if !column.is_zero() {
                out = &out + &(&column * &dp);
            }
        }
        out
    }

    /// `sum_l a_{ls} z^l` for a fixed derivative order.
    pub fn column(&self, s: usize) -> ZPoly {
        let coeffs = (0..s).map(|l| self.entry(l, s)).collect();
        ZPoly::from_coeffs(coeffs)
    }
}

impl PartialEq for CoeffMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.max_order == other.max_order && self.iter().eq(other.iter())
    }
}

impl Eq for CoeffMatrix {}

/// Solves for `a_{ls}`, `s <= n_max`, from `A Psi_n = b_{n-1} Psi_{n-1}`,
/// `n = 1..=n_max`, using only the recurrence for `Psi_n`.
///
/// Column `s = n` enters the `n`-th equation only through the constant
/// `Psi_n^{(n)} = n! lc(Psi_n)`, and every other contribution has degree
/// below `n`, so the system is triangular and each column is read off from
/// the residual of the previous ones. Even-overdiagonal entries are computed
/// like any other and are not assumed to vanish.
pub fn matrix_solve_oracle(n_max: usize) -> Result<CoeffMatrix> {
    if n_max == 0 {
        return Err(Error::out_of_range("matrix_solve_oracle", "N must be >= 1"));
    }
    let spec = RecurrenceSpec::oscillator();
    let psis = cheb_sequence(n_max, &spec);
    let mut matrix = CoeffMatrix::new(n_max);
    let mut columns: Vec<ZPoly> = vec![ZPoly::zero()];
    for n in 1..=n_max {
        let rhs = psis[n - 1].scale(&spec.b(n as isize - 1));
        let mut known = ZPoly::zero();
        for (s, column) in columns.iter().enumerate().skip(1) {
            if !column.is_zero() {
                known = &known + &(column * &psis[n].derivative(s));
            }
        }
        let residual = &rhs - &known;
        if residual.degree().is_some_and(|d| d >= n) {
            return Err(Error::Singular { order: n });
        }
        let pivot = psis[n].leading_coeff().scale(&BigRational::from_integer(factorial(n)));
        let inv = pivot.inverse().map_err(|_| Error::Singular { order: n })?;
        let column = residual.scale(&inv);
        for l in 0..n {
            matrix.insert(l, n, column.coeff(l).clone());
        }
        columns.push(column);
    }
    Ok(matrix)
}

/// Applies the operator to `p`. Derivative orders above `max_order` are
/// dropped; the default order `deg p` gives the exact action.
pub fn apply_operator(p: &ZPoly, max_order: Option<usize>) -> ZPoly {
    let order = max_order.unwrap_or_else(|| p.degree().unwrap_or(0));
    CoeffMatrix::closed(order).apply(p)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(-1)^parity * c`.
fn signed(parity: usize, c: BigRational) -> BigRational {
    if parity % 2 == 1 {
        -c
    } else {
        c
    }
}
