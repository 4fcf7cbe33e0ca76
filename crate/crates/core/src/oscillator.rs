//! The generalized Chebyshev oscillator on the Fock basis `{Psi_n}`.
//!
//! Ladder actions are exact: the `sqrt(2)` in `a^± Psi_n = sqrt(2) b Psi_{n±1}`
//! is carried as a parity flag, so any composition of ladder operators is
//! again an exact object. The orthogonality measure is only used
//! numerically, through Gauss-Legendre quadrature.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use gauss_quad::GaussLegendre;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::chebgen::{cheb_sequence, RecurrenceSpec};
use crate::combinat::{IdentityId, IdentityReport, Value};
use crate::error::{Error, Result};
use crate::exactnum::{horner, APoly};

/// Jacobi coefficients of the oscillator: `b_{-1} = 0`, `b_0 = a`, `b_n = 1`
/// for `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LadderSpec {
    recurrence: RecurrenceSpec,
}

impl LadderSpec {
    pub fn a_sym(&self) -> APoly {
        APoly::a()
    }

    pub fn b(&self, n: isize) -> APoly {
        self.recurrence.b(n)
    }

    /// Eigenvalue of `B(N)` on `Psi_n`, i.e. `b_{n-1}^2`.
    pub fn b_psi(&self, n: usize) -> APoly {
        let b = self.b(n as isize - 1);
        &b * &b
    }
}

/// `value * sqrt(2)^{sqrt2 as u32}`; even powers of `sqrt(2)` are folded
/// into `value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LadderCoeff {
    pub sqrt2: bool,
    pub value: APoly,
}

impl LadderCoeff {
    pub fn rational(value: APoly) -> Self {
        Self { sqrt2: false, value }.normalized()
    }

    pub fn with_sqrt2(value: APoly) -> Self {
        Self { sqrt2: true, value }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.value.is_zero() {
            self.sqrt2 = false;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut value = &self.value * &other.value;
        let sqrt2 = self.sqrt2 ^ other.sqrt2;
        if self.sqrt2 && other.sqrt2 {
            value = value.scale(&BigRational::from_integer(BigInt::from(2)));
        }
        Self { sqrt2, value }.normalized()
    }

    /// Difference; `None` when the two sides carry different `sqrt(2)`
    /// parities and are both non-zero.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Self {
                sqrt2: other.sqrt2,
                value: -&other.value,
            });
        }
        (self.sqrt2 == other.sqrt2).then(|| {
            Self {
                sqrt2: self.sqrt2,
                value: &self.value - &other.value,
            }
            .normalized()
        })
    }
}

impl fmt::Display for LadderCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2 {
            write!(f, "sqrt(2)*({})", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// A multiple of one basis vector, `coeff * Psi_index`; the zero vector has
/// no index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FockTerm {
    pub coeff: LadderCoeff,
    pub index: Option<usize>,
}

impl FockTerm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(n: usize) -> Self {
        Self::new(LadderCoeff::rational(APoly::one()), Some(n))
    }

    pub fn new(coeff: LadderCoeff, index: Option<usize>) -> Self {
        match index {
            Some(_) if !coeff.is_zero() => Self { coeff, index },
            _ => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.index.is_none()
    }

    pub fn scale(&self, c: &LadderCoeff) -> Self {
        Self::new(self.coeff.mul(c), self.index)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        match (self.index, other.index) {
            (_, None) => Some(self.clone()),
            (None, Some(j)) => Some(Self::new(
                LadderCoeff::rational(APoly::zero()).checked_sub(&other.coeff)?,
                Some(j),
            )),
            (Some(i), Some(j)) if i == j => Some(Self::new(self.coeff.checked_sub(&other.coeff)?, Some(i))),
            _ => None,
        }
    }
}

impl fmt::Display for FockTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            None => f.write_str("0"),
            Some(n) => write!(f, "{} Psi_{n}", self.coeff),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ladder {
    /// `a^+ Psi_n = sqrt(2) b_n Psi_{n+1}`
    Plus,
    /// `a^- Psi_n = sqrt(2) b_{n-1} Psi_{n-1}`, `a^- Psi_0 = 0`
    Minus,
    /// `N Psi_n = n Psi_n`
    Number,
}

/// Image of the basis vector `Psi_n`.
pub fn ladder_apply(which: Ladder, n: usize, spec: &LadderSpec) -> FockTerm {
    match which {
        Ladder::Plus => FockTerm::new(LadderCoeff::with_sqrt2(spec.b(n as isize)), Some(n + 1)),
        Ladder::Minus => match n.checked_sub(1) {
            Some(m) => FockTerm::new(LadderCoeff::with_sqrt2(spec.b(m as isize)), Some(m)),
            None => FockTerm::zero(),
        },
        Ladder::Number => FockTerm::new(LadderCoeff::rational(APoly::from_int(n as i64)), Some(n)),
    }
}

/// Applies a ladder operator to a multiple of a basis vector.
pub fn apply(which: Ladder, term: &FockTerm, spec: &LadderSpec) -> FockTerm {
    match term.index {
        None => FockTerm::zero(),
        Some(n) => ladder_apply(which, n, spec).scale(&term.coeff),
    }
}

fn compose(ops: &[Ladder], n: usize, spec: &LadderSpec) -> FockTerm {
    // rightmost operator acts first
    ops.iter().rev().fold(FockTerm::basis(n), |t, &op| apply(op, &t, spec))
}

/// Checks one algebra relation on `Psi_n`.
///
/// # Panics
///
/// If `id` is not one of the four oscillator relations.
pub fn algebra_relation(id: IdentityId, n: usize, spec: &LadderSpec) -> IdentityReport {
    use Ladder::*;
    let two = |b: APoly| LadderCoeff::rational(b.scale(&BigRational::from_integer(BigInt::from(2))));
    let commutator = |op: Ladder| {
        let left = compose(&[Number, op], n, spec);
        let right = compose(&[op, Number], n, spec);
        left.checked_sub(&right)
            .expect("both orderings land on the same basis vector with equal sqrt(2) parity")
    };
    let (lhs, rhs) = match id {
        IdentityId::LowerAfterRaise => (
            compose(&[Minus, Plus], n, spec),
            FockTerm::new(two(spec.b_psi(n + 1)), Some(n)),
        ),
        IdentityId::RaiseAfterLower => (
            compose(&[Plus, Minus], n, spec),
            FockTerm::new(two(spec.b_psi(n)), Some(n)),
        ),
        IdentityId::NumberCommutatorRaise => (commutator(Plus), ladder_apply(Plus, n, spec)),
        IdentityId::NumberCommutatorLower => {
            let lowered = ladder_apply(Minus, n, spec);
            let negated = FockTerm::zero().checked_sub(&lowered).expect("subtracting from zero");
            (commutator(Minus), negated)
        }
        other => panic!("{other} is not an oscillator relation"),
    };
    IdentityReport::new(id, vec![n as i64], Value::Fock(lhs), Value::Fock(rhs))
}

/// All four algebra relations for every `n <= n_max`.
pub fn algebra_check(n_max: usize, spec: &LadderSpec) -> Result<Vec<IdentityReport>> {
    if n_max == 0 {
        return Err(Error::out_of_range("algebra_check", "N must be >= 1"));
    }
    let ids = [
        IdentityId::LowerAfterRaise,
        IdentityId::RaiseAfterLower,
        IdentityId::NumberCommutatorRaise,
        IdentityId::NumberCommutatorLower,
    ];
    Ok(ids
        .iter()
        .flat_map(|&id| (0..=n_max).map(move |n| algebra_relation(id, n, spec)))
        .collect())
}

/// Absolutely continuous orthogonality measure on `[-2, 2]`:
///
/// ```text
/// dmu_a = a^2 sqrt(4 - x^2) / (2 pi (a^4 - (a^2 - 1) x^2)) dx.
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureSpec {
    a_val: f64,
}

/// Default node count for the quadrature checks.
pub const DEFAULT_NODES: usize = 2000;
/// Largest change allowed when the node count is doubled.
pub const NODE_DOUBLING_TOL: f64 = 1e-10;

impl MeasureSpec {
    pub fn new(a_val: f64) -> Result<Self> {
        if !(a_val > 0.0 && a_val.is_finite()) {
            return Err(Error::Domain(format!(
                "a must be a positive finite number, got {a_val}"
            )));
        }
        Ok(Self { a_val })
    }

    pub fn a_val(&self) -> f64 {
        self.a_val
    }

    pub fn support(&self) -> (f64, f64) {
        (-2.0, 2.0)
    }

    pub fn density(&self, x: f64) -> f64 {
        if x.abs() >= 2.0 {
            return 0.0;
        }
        let a2 = self.a_val * self.a_val;
        a2 * (4.0 - x * x).sqrt() / (2.0 * PI * (a2 * a2 - (a2 - 1.0) * x * x))
    }

    /// Density times `dx/dtheta` after `x = 2 sin(theta)`.
    ///
    /// The denominator is rewritten as `(a^2-2)^2 + 4(a^2-1) cos^2(theta)` so
    /// that the `cos^2` factors cancel cleanly at `a^2 = 2`.
    pub fn angular_weight(&self, theta: f64) -> f64 {
        let a2 = self.a_val * self.a_val;
        let c2 = theta.cos().powi(2);
        let den = (a2 - 2.0).powi(2) + 4.0 * (a2 - 1.0) * c2;
        if den == 0.0 {
            return 0.0;
        }
        4.0 * a2 * c2 / (2.0 * PI * den)
    }

    /// Atoms of the full orthogonality measure of `{Psi_n}`, which the
    /// density above leaves out: for `a^2 > 2` the Jacobi matrix has the two
    /// eigenvalues `±a^2 / sqrt(a^2 - 1)` outside `[-2, 2]`, each of mass
    /// `(a^2 - 2) / (2(a^2 - 1))`. Empty for `a^2 <= 2` up to rounding.
    pub fn point_masses(&self) -> Vec<(f64, f64)> {
        let a2 = self.a_val * self.a_val;
        if a2 - 2.0 <= 8.0 * f64::EPSILON {
            return Vec::new();
        }
        let x = a2 / (a2 - 1.0).sqrt();
        let w = (a2 - 2.0) / (2.0 * (a2 - 1.0));
        vec![(-x, w), (x, w)]
    }
}

/// Density of the measure at `x`; zero outside `[-2, 2]`.
pub fn measure_density(x: f64, a_val: f64) -> Result<f64> {
    Ok(MeasureSpec::new(a_val)?.density(x))
}

/// Gauss-Legendre rule in `theta` for integrals against the measure.
pub struct OrthonormalityChecker {
    spec: MeasureSpec,
    rule: GaussLegendre,
    nodes: usize,
}

impl OrthonormalityChecker {
    pub fn new(spec: MeasureSpec, nodes: usize) -> Result<Self> {
        if nodes < 64 {
            return Err(Error::out_of_range("nodes", format!("need at least 64, got {nodes}")));
        }
        let rule = GaussLegendre::new(nodes).map_err(|e| Error::Quadrature(e.to_string()))?;
        Ok(Self { spec, rule, nodes })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `int p q dmu_a` for floating-point coefficient vectors (lowest power
    /// first).
    pub fn inner(&self, p: &[f64], q: &[f64]) -> f64 {
        self.rule.integrate(-FRAC_PI_2, FRAC_PI_2, |theta| {
            let x = 2.0 * theta.sin();
            horner(p, x) * horner(q, x) * self.spec.angular_weight(theta)
        })
    }

    /// [`inner`](Self::inner) plus the contribution of
    /// [`MeasureSpec::point_masses`].
    pub fn inner_with_point_masses(&self, p: &[f64], q: &[f64]) -> f64 {
        let atoms: f64 = self
            .spec
            .point_masses()
            .iter()
            .map(|&(x, w)| w * horner(p, x) * horner(q, x))
            .sum();
        self.inner(p, q) + atoms
    }
}

/// `Psi_0..=Psi_{n_max}` with `a` substituted, as floating-point coefficients.
pub fn psi_coeffs(n_max: usize, a_val: f64) -> Result<Vec<Vec<f64>>> {
    cheb_sequence(n_max, &RecurrenceSpec::oscillator())
        .iter()
        .map(|p| p.eval_coeffs(a_val))
        .collect()
}

/// `int Psi_m Psi_n dmu_a` with `nodes` points, cross-checked against
/// `2 * nodes` points.
pub fn orthonormality_check(m: usize, n: usize, spec: &MeasureSpec, nodes: usize) -> Result<f64> {
    let polys = psi_coeffs(m.max(n), spec.a_val())?;
    let coarse = OrthonormalityChecker::new(*spec, nodes)?;
    let fine = OrthonormalityChecker::new(*spec, 2 * nodes)?;
    converged(
        coarse.inner(&polys[m], &polys[n]),
        fine.inner(&polys[m], &polys[n]),
        m,
        n,
    )
}

fn converged(coarse: f64, fine: f64, m: usize, n: usize) -> Result<f64> {
    if (coarse - fine).abs() > NODE_DOUBLING_TOL {
        return Err(Error::Quadrature(format!(
            "<Psi_{m}, Psi_{n}>: {coarse:e} vs {fine:e} after doubling nodes"
        )));
    }
    Ok(coarse)
}

/// Gram matrix `G[m][n] = int Psi_m Psi_n dmu_a` for `m, n <= n_max`, each
/// entry cross-checked by node doubling.
pub fn gram_matrix(n_max: usize, spec: &MeasureSpec, nodes: usize) -> Result<Vec<Vec<f64>>> {
    let polys = psi_coeffs(n_max, spec.a_val())?;
    let coarse = OrthonormalityChecker::new(*spec, nodes)?;
    let fine = OrthonormalityChecker::new(*spec, 2 * nodes)?;
    (0..=n_max)
        .into_par_iter()
        .map(|m| {
            (0..=n_max)
                .map(|n| {
                    converged(
                        coarse.inner(&polys[m], &polys[n]),
                        fine.inner(&polys[m], &polys[n]),
                        m,
                        n,
                    )
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> LadderSpec {
        LadderSpec::default()
    }

    #[test]
    fn ladder_actions() {
        assert!(ladder_apply(Ladder::Minus, 0, &spec()).is_zero());
        let up = ladder_apply(Ladder::Plus, 0, &spec());
        assert_eq!(up, FockTerm::new(LadderCoeff::with_sqrt2(APoly::a()), Some(1)));
        let num = ladder_apply(Ladder::Number, 7, &spec());
        assert_eq!(num, FockTerm::new(LadderCoeff::rational(APoly::from_int(7)), Some(7)));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let r = LadderCoeff::with_sqrt2(APoly::a());
        let sq = r.mul(&r);
        assert!(!sq.sqrt2);
        assert_eq!(sq.value, APoly::a_pow(2).scale(&BigRational::from_integer(2.into())));
        assert!(r.checked_sub(&LadderCoeff::rational(APoly::one())).is_none());
    }

    #[test]
    fn algebra_examples() {
        let s = spec();
        let r1 = algebra_relation(IdentityId::RaiseAfterLower, 1, &s);
        assert!(r1.pass);
        let two_a2 = LadderCoeff::rational(APoly::a_pow(2).scale(&BigRational::from_integer(2.into())));
        assert_eq!(r1.lhs, Value::Fock(FockTerm::new(two_a2, Some(1))));

        let r0 = algebra_relation(IdentityId::RaiseAfterLower, 0, &s);
        assert!(r0.pass);
        assert_eq!(r0.lhs, Value::Fock(FockTerm::zero()));

        let r3 = algebra_relation(IdentityId::LowerAfterRaise, 3, &s);
        assert!(r3.pass);
        let two = LadderCoeff::rational(APoly::from_int(2));
        assert_eq!(r3.lhs, Value::Fock(FockTerm::new(two, Some(3))));
    }

    #[test]
    fn algebra_check_counts() {
        let reports = algebra_check(5, &spec()).unwrap();
        assert_eq!(reports.len(), 4 * 6);
        assert!(reports.iter().all(|r| r.pass));
        assert!(algebra_check(0, &spec()).is_err());
    }

    #[test]
    fn density_values() {
        let one = MeasureSpec::new(1.0).unwrap();
        assert!((one.density(0.0) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(MeasureSpec::new(0.7).unwrap().density(2.5), 0.0);
        for x in [-1.9f64, -0.3, 0.0, 1.2] {
            let semicircle = (4.0 - x * x).sqrt() / (2.0 * PI);
            assert!((one.density(x) - semicircle).abs() < 1e-15);
        }
        assert!(measure_density(0.0, 0.0).is_err());
        assert!(measure_density(0.0, -1.0).is_err());
    }

    #[test]
    fn density_nonnegative() {
        for a in [0.3, 0.5, 1.0, 1.3, 2f64.sqrt()] {
            let m = MeasureSpec::new(a).unwrap();
            for i in 0..=400 {
                let x = -2.0 + 4.0 * i as f64 / 400.0;
                assert!(m.density(x) >= 0.0, "a={a} x={x}");
            }
        }
    }

    #[test]
    fn angular_weight_matches_density() {
        let m = MeasureSpec::new(0.8).unwrap();
        for theta in [-1.2, -0.4, 0.1, 0.9] {
            let x: f64 = 2.0 * f64::sin(theta);
            let direct = m.density(x) * 2.0 * f64::cos(theta);
            assert!((m.angular_weight(theta) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn quadrature_examples() {
        let check = |m, n, a: f64| orthonormality_check(m, n, &MeasureSpec::new(a).unwrap(), DEFAULT_NODES).unwrap();
        assert!((check(0, 0, 1.0) - 1.0).abs() < 1e-8);
        assert!(check(2, 3, 0.5).abs() < 1e-8);
        assert!((check(3, 3, 2f64.sqrt()) - 1.0).abs() < 1e-8);
        let m = MeasureSpec::new(1.0).unwrap();
        assert!(orthonormality_check(0, 0, &m, 16).is_err());
    }

    #[test]
    fn point_masses_restore_normalization() {
        // for a^2 > 2 the density alone has total mass below one
        let m = MeasureSpec::new(2.0).unwrap();
        let polys = psi_coeffs(6, 2.0).unwrap();
        let q = OrthonormalityChecker::new(m, DEFAULT_NODES).unwrap();
        assert!((q.inner(&polys[0], &polys[0]) - 1.0 / 3.0).abs() < 1e-10);
        for i in 0..=6 {
            for j in 0..=6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (q.inner_with_point_masses(&polys[i], &polys[j]) - want).abs() < 1e-8,
                    "{i} {j}"
                );
            }
        }
        assert!(MeasureSpec::new(1.0).unwrap().point_masses().is_empty());
    }
}
