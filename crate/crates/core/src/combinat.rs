//! Binomial coefficients and exact verification of the finite combinatorial
//! identities behind the closed form for the coefficient matrix.
//!
//! Each identity is evaluated on both sides with exact arithmetic over its
//! whole admissible parameter grid. Results come back as [`IdentityReport`]s
//! sorted by identity and parameters, whatever order they were computed in.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::annihilator::catalan;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, APoly};
use crate::oscillator::FockTerm;

/// `C(n, k)`, zero when `n < 0`, `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Which identity a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    /// `sum_t (-1)^{t+1} t C(l+1,t+1) - a^2 sum_t (-1)^{t+1} (t+1) C(l+1,t+1) = 1`, `l >= 1`.
    FirstOverdiagonalSums,
    /// `sum_{q<k} (-1)^{k-q-1} C_q C(s+q, k-1-q) = (-1)^{k-1} C(s-1, k-1)`, `1 <= k <= s`.
    CatalanBinomialSum,
    /// `sum_{t=1}^{l} (-1)^{t+1} C(t+2q, 2q+1) C(l+2q+1, t+2q+1) = 1`.
    BinomialProductSum,
    /// The same sum after `tau = t + 2q + 1`.
    ReindexedBinomialProductSum,
    /// `sum_{m=1}^{i+2} S(m; k, i) = 0`, `2 <= i <= k-2`.
    TermSumVanishes,
    /// `(-1)^k C(k+1, k-2) + sum_{t=1}^{k-2} (-1)^{k-t} C_t C(k+2+t, k-1-t) = C_{k-1}`, `k >= 2`.
    BetaAtSixthPower,
    /// `(-1)^{k-1} C(k, k-1) + sum_{t=0}^{k-2} (-1)^{k-t} C_t C(k+1+t, k-1-t) = C_{k-1}`, `k >= 1`.
    BetaAtFourthPower,
    /// `sum_{s<l} (-1)^s C(l-1, s) / (s+c) = (l-1)! / prod_{s<l} (s+c)`, `l, c >= 1`.
    ReciprocalBinomialSum,
    /// The unrolled induction step for `beta_{k,i}`, `2 <= i <= k-2`.
    BetaInductionStep,
    /// `a^- a^+ Psi_n = 2 B(N+I) Psi_n`.
    LowerAfterRaise,
    /// `a^+ a^- Psi_n = 2 B(N) Psi_n`.
    RaiseAfterLower,
    /// `[N, a^+] Psi_n = a^+ Psi_n`.
    NumberCommutatorRaise,
    /// `[N, a^-] Psi_n = -a^- Psi_n`.
    NumberCommutatorLower,
}

impl IdentityId {
    /// The combinatorial identities, in sweep order.
    pub const COMBINATORIAL: [IdentityId; 9] = [
        IdentityId::FirstOverdiagonalSums,
        IdentityId::CatalanBinomialSum,
        IdentityId::BinomialProductSum,
        IdentityId::ReindexedBinomialProductSum,
        IdentityId::TermSumVanishes,
        IdentityId::BetaAtSixthPower,
        IdentityId::BetaAtFourthPower,
        IdentityId::ReciprocalBinomialSum,
        IdentityId::BetaInductionStep,
    ];

    /// Short family tag: `a`..`h` for the combinatorial identities, `alg`
    /// for the oscillator algebra relations.
    pub fn family(self) -> &'static str {
        use IdentityId::*;
        match self {
            FirstOverdiagonalSums => "a",
            CatalanBinomialSum => "b",
            BinomialProductSum | ReindexedBinomialProductSum => "c",
            TermSumVanishes => "d",
            BetaAtSixthPower => "e",
            BetaAtFourthPower => "f",
            ReciprocalBinomialSum => "g",
            BetaInductionStep => "h",
            LowerAfterRaise | RaiseAfterLower | NumberCommutatorRaise | NumberCommutatorLower => "alg",
        }
    }

    pub fn name(self) -> &'static str {
        use IdentityId::*;
        match self {
            FirstOverdiagonalSums => "first-overdiagonal-sums",
            CatalanBinomialSum => "catalan-binomial-sum",
            BinomialProductSum => "binomial-product-sum",
            ReindexedBinomialProductSum => "reindexed-binomial-product-sum",
            TermSumVanishes => "term-sum-vanishes",
            BetaAtSixthPower => "beta-at-a6",
            BetaAtFourthPower => "beta-at-a4",
            ReciprocalBinomialSum => "reciprocal-binomial-sum",
            BetaInductionStep => "beta-induction-step",
            LowerAfterRaise => "lower-after-raise",
            RaiseAfterLower => "raise-after-lower",
            NumberCommutatorRaise => "number-commutator-raise",
            NumberCommutatorLower => "number-commutator-lower",
        }
    }

    fn arity(self) -> usize {
        use IdentityId::*;
        match self {
            FirstOverdiagonalSums | BetaAtSixthPower | BetaAtFourthPower => 1,
            LowerAfterRaise | RaiseAfterLower | NumberCommutatorRaise | NumberCommutatorLower => 1,
            _ => 2,
        }
    }

    /// Every admissible parameter tuple with all entries `<= max_param`.
    pub fn grid(self, max_param: i64) -> Vec<Vec<i64>> {
        use IdentityId::*;
        let m = max_param;
        match self {
            FirstOverdiagonalSums => (1..=m).map(|l| vec![l]).collect(),
            CatalanBinomialSum => (1..=m).flat_map(|s| (1..=s).map(move |k| vec![k, s])).collect(),
            BinomialProductSum | ReindexedBinomialProductSum => {
                (1..=m).flat_map(|l| (0..=m).map(move |q| vec![l, q])).collect()
            }
            TermSumVanishes | BetaInductionStep => (4..=m).flat_map(|k| (2..=k - 2).map(move |i| vec![k, i])).collect(),
            BetaAtSixthPower => (2..=m).map(|k| vec![k]).collect(),
            BetaAtFourthPower => (1..=m).map(|k| vec![k]).collect(),
            ReciprocalBinomialSum => (1..=m).flat_map(|l| (1..=m).map(move |c| vec![l, c])).collect(),
            LowerAfterRaise | RaiseAfterLower | NumberCommutatorRaise | NumberCommutatorLower => {
                (0..=m).map(|n| vec![n]).collect()
            }
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.family(), self.name())
    }
}

/// One side of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(BigRational),
    Laurent(APoly),
    Fock(FockTerm),
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => write!(f, "{q}"),
            Value::Laurent(p) => write!(f, "{p}"),
            Value::Fock(t) => write!(f, "{t}"),
        }
    }
}

/// Outcome of checking one identity instance exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub params: Vec<i64>,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(identity_id: IdentityId, params: Vec<i64>, lhs: Value, rhs: Value) -> Self {
        let pass = lhs == rhs;
        Self {
            identity_id,
            params,
            lhs,
            rhs,
            pass,
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "FAIL" };
        write!(
            f,
            "{} {:?}: {} | lhs = {} | rhs = {}",
            self.identity_id, self.params, status, self.lhs, self.rhs
        )
    }
}

fn sign(parity: i64) -> BigInt {
    if parity.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn cat(k: i64) -> BigInt {
    catalan(k as usize)
}

/// `S(m; k, i)`, the generic term of the `beta_{k,i}` induction identity.
pub fn term_s(m: i64, k: i64, i: i64) -> BigInt {
    let first = (binom(k + i - 2 * m + 1, k - m) - binom(k + i - 2 * m + 1, k - m + 1)) * binom(2 * k - m + 1, m - 1);
    let second = (binom(k + i - 2 * m + 2, k - m) - binom(k + i - 2 * m + 2, k - m + 1)) * binom(2 * k - m + 1, m - 2);
    sign(m) * (first + second)
}

fn check_range(id: IdentityId, ok: bool, params: &[i64]) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::out_of_range(
            "identity parameters",
            format!("{id} does not admit {params:?}"),
        ))
    }
}

/// Evaluates both sides of `identity_id` at `params` exactly.
pub fn verify_identity(identity_id: IdentityId, params: &[i64]) -> Result<IdentityReport> {
    use IdentityId::*;
    if params.len() != identity_id.arity() {
        return Err(Error::out_of_range(
            "identity parameters",
            format!(
                "{identity_id} takes {} parameters, got {}",
                identity_id.arity(),
                params.len()
            ),
        ));
    }
    let p = params;
    let report = |lhs: Value, rhs: Value| Ok(IdentityReport::new(identity_id, p.to_vec(), lhs, rhs));
    match identity_id {
        FirstOverdiagonalSums => {
            let l = p[0];
            check_range(identity_id, l >= 1, p)?;
            let mut constant = BigInt::zero();
            let mut linear = BigInt::zero();
            for t in 0..=l {
                let c = sign(t + 1) * binom(l + 1, t + 1);
                constant += &c * t;
                linear += &c * (t + 1);
            }
            let lhs = &APoly::from(constant) - &APoly::monomial(2, BigRational::from_integer(linear));
            report(Value::Laurent(lhs), Value::Laurent(APoly::one()))
        }
        CatalanBinomialSum => {
            let (k, s) = (p[0], p[1]);
            check_range(identity_id, 1 <= k && k <= s, p)?;
            let lhs: BigInt = (0..k).map(|q| sign(k - q - 1) * cat(q) * binom(s + q, k - 1 - q)).sum();
            report(lhs.into(), (sign(k - 1) * binom(s - 1, k - 1)).into())
        }
        BinomialProductSum => {
            let (l, q) = (p[0], p[1]);
            check_range(identity_id, l >= 1 && q >= 0, p)?;
            let lhs: BigInt = (1..=l)
                .map(|t| sign(t + 1) * binom(t + 2 * q, 1 + 2 * q) * binom(l + 2 * q + 1, t + 2 * q + 1))
                .sum();
            report(lhs.into(), BigInt::one().into())
        }
        ReindexedBinomialProductSum => {
            let (l, q) = (p[0], p[1]);
            check_range(identity_id, l >= 1 && q >= 0, p)?;
            let lhs: BigInt = (2 * q + 2..=l + 2 * q + 1)
                .map(|tau| sign(tau - 2 * q) * binom(tau - 1, 1 + 2 * q) * binom(l + 2 * q + 1, tau))
                .sum();
            report(lhs.into(), BigInt::one().into())
        }
        TermSumVanishes => {
            let (k, i) = (p[0], p[1]);
            check_range(identity_id, 2 <= i && i <= k - 2, p)?;
            let lhs: BigInt = (1..=i + 2).map(|m| term_s(m, k, i)).sum();
            report(lhs.into(), BigInt::zero().into())
        }
        BetaAtSixthPower => {
            let k = p[0];
            check_range(identity_id, k >= 2, p)?;
            let mut lhs = sign(k - 2) * binom(k + 1, k - 2);
            for t in 1..=k - 2 {
                lhs += sign(k - 2 - t) * cat(t) * binom(k + 2 + t, k - 1 - t);
            }
            report(lhs.into(), cat(k - 1).into())
        }
        BetaAtFourthPower => {
            let k = p[0];
            check_range(identity_id, k >= 1, p)?;
            let mut lhs = sign(k - 1) * binom(k, k - 1);
            for t in 0..=k - 2 {
                lhs += sign(k - 2 - t) * cat(t) * binom(k + 1 + t, k - 1 - t);
            }
            report(lhs.into(), cat(k - 1).into())
        }
        ReciprocalBinomialSum => {
            let (l, c) = (p[0], p[1]);
            check_range(identity_id, l >= 1 && c >= 1, p)?;
            let lhs: BigRational = (0..l)
                .map(|s| BigRational::new(sign(s) * binom(l - 1, s), BigInt::from(s + c)))
                .sum();
            let prod: BigInt = (0..l).map(|s| BigInt::from(s + c)).product();
            let rhs = BigRational::new(factorial((l - 1) as usize), prod);
            report(Value::Rational(lhs), Value::Rational(rhs))
        }
        BetaInductionStep => {
            let (k, i) = (p[0], p[1]);
            check_range(identity_id, 2 <= i && i <= k - 2, p)?;
            let mut lhs = sign(i) * binom(2 * k - i - 1, i)
                + sign(i - 1) * binom(2 * k - i, i)
                + sign(i - 1) * binom(k - i - 1, 1) * binom(2 * k - i, i - 1);
            for m in 2..=i {
                lhs += term_s(m, k, i);
            }
            report(lhs.into(), (binom(k + i - 1, k - 1) - binom(k + i - 1, k)).into())
        }
        LowerAfterRaise | RaiseAfterLower | NumberCommutatorRaise | NumberCommutatorLower => {
            let n = p[0];
            check_range(identity_id, n >= 0, p)?;
            Ok(crate::oscillator::algebra_relation(
                identity_id,
                n as usize,
                &crate::oscillator::LadderSpec::default(),
            ))
        }
    }
}

/// Runs every combinatorial identity over its admissible grid up to
/// `max_param`.
pub fn identity_sweep(max_param: i64) -> Result<Vec<IdentityReport>> {
    if max_param < 4 {
        return Err(Error::out_of_range("max_param", "must be >= 4"));
    }
    let jobs: Vec<(IdentityId, Vec<i64>)> = IdentityId::COMBINATORIAL
        .iter()
        .flat_map(|&id| id.grid(max_param).into_iter().map(move |p| (id, p)))
        .collect();
    let mut reports = jobs
        .into_par_iter()
        .map(|(id, p)| verify_identity(id, &p))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|x, y| (x.identity_id, &x.params).cmp(&(y.identity_id, &y.params)));
    Ok(reports)
}

/// Pass counts for one identity family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySummary {
    pub family: &'static str,
    pub identities: Vec<IdentityId>,
    pub total: usize,
    pub passed: usize,
}

impl FamilySummary {
    pub fn all_pass(&self) -> bool {
        self.total == self.passed
    }
}

/// Groups reports by [`IdentityId::family`], keeping first-seen order.
pub fn summarize(reports: &[IdentityReport]) -> Vec<FamilySummary> {
    let mut out: Vec<FamilySummary> = Vec::new();
    for r in reports {
        let family = r.identity_id.family();
        let idx = match out.iter().position(|s| s.family == family) {
            Some(i) => i,
            None => {
                out.push(FamilySummary {
                    family,
                    identities: Vec::new(),
                    total: 0,
                    passed: 0,
                });
                out.len() - 1
            }
        };
        let s = &mut out[idx];
        if !s.identities.contains(&r.identity_id) {
            s.identities.push(r.identity_id);
        }
        s.total += 1;
        s.passed += usize::from(r.pass);
    }
    out
}
