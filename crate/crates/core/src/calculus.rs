//! Difference-operator realization of the algebra on finite sums of
//! generalized monomials `sum_i c_i z^{e_i}` with real exponents.
//!
//! * `a  = D`, with `D z^e = w(alpha e + beta) z^{e - l/alpha}`
//! * `a+ = z^{l/alpha}` (multiplication)
//! * `N  = alpha z d/dz`
//! * `p^{-alpha N - beta}` and `q^{alpha N + beta}` act as dilations
//!   `f(z) -> p^{-beta} f(p^{-alpha} z)` and `f(z) -> q^beta f(q^alpha z)`.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::numeric::{checked_pow, NumericError};
use crate::params::{DeformationParams, ParamError};
use crate::report::CheckReport;
use crate::structure::f_general;

/// Coefficients below this magnitude are dropped.
pub const PRUNE_EPS: f64 = 1e-300;
pub const MAX_TERMS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalculusError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("series exceeds {MAX_TERMS} terms")]
    TooManyTerms,
    #[error("non-finite exponent or coefficient")]
    NonFinite,
}

fn same_exponent(e1: f64, e2: f64) -> bool {
    (e1 - e2).abs() <= 1e-12 * (1.0 + e1.abs())
}

/// Finite generalized polynomial, terms sorted by exponent with distinct
/// exponents.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpSeries {
    terms: Vec<(f64, f64)>,
}

impl ExpSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: f64, coeff: f64) -> Self {
        let mut s = Self::zero();
        s.insert(exponent, coeff);
        s
    }

    /// Builds a series, merging terms whose exponents coincide.
    pub fn from_terms<I>(terms: I) -> Result<Self, CalculusError>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut s = Self::zero();
        for (e, c) in terms {
            if !e.is_finite() || !c.is_finite() {
                return Err(CalculusError::NonFinite);
            }
            s.insert(e, c);
            if s.terms.len() > MAX_TERMS {
                return Err(CalculusError::TooManyTerms);
            }
        }
        Ok(s)
    }

    fn insert(&mut self, exponent: f64, coeff: f64) {
        let idx = self.terms.partition_point(|&(e, _)| e < exponent);
        let hit = [idx.checked_sub(1), Some(idx)]
            .into_iter()
            .flatten()
            .find(|&i| i < self.terms.len() && same_exponent(self.terms[i].0, exponent));
        match hit {
            Some(i) => {
                self.terms[i].1 += coeff;
                if self.terms[i].1.abs() < PRUNE_EPS {
                    self.terms.remove(i);
                }
            }
            None if coeff.abs() >= PRUNE_EPS => self.terms.insert(idx, (exponent, coeff)),
            None => {}
        }
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^e`, zero if absent.
    pub fn coeff(&self, exponent: f64) -> f64 {
        self.terms
            .iter()
            .find(|(e, _)| same_exponent(*e, exponent))
            .map_or(0.0, |t| t.1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, (_, c)| m.max(c.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = Self::zero();
        for &(e, c) in &self.terms {
            out.insert(e, k * c);
        }
        out
    }

    /// Term-wise map. Exponent shifts are uniform so sort order is preserved
    /// up to merging.
    fn map_terms<F>(&self, mut f: F) -> Result<Self, CalculusError>
    where
        F: FnMut(f64, f64) -> Result<(f64, f64), CalculusError>,
    {
        let mut out = Self::zero();
        for &(e, c) in &self.terms {
            let (e2, c2) = f(e, c)?;
            out.insert(e2, c2);
        }
        Ok(out)
    }

    /// Evaluates the series at `z > 0`.
    pub fn eval(&self, z: f64) -> f64 {
        self.terms.iter().map(|(e, c)| c * z.powf(*e)).sum()
    }
}

impl Add for &ExpSeries {
    type Output = ExpSeries;

    fn add(self, rhs: &ExpSeries) -> ExpSeries {
        let mut out = self.clone();
        for &(e, c) in &rhs.terms {
            out.insert(e, c);
        }
        out
    }
}

impl Sub for &ExpSeries {
    type Output = ExpSeries;

    fn sub(self, rhs: &ExpSeries) -> ExpSeries {
        self + &(-rhs)
    }
}

impl Neg for &ExpSeries {
    type Output = ExpSeries;

    fn neg(self) -> ExpSeries {
        ExpSeries {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul<&ExpSeries> for f64 {
    type Output = ExpSeries;

    fn mul(self, rhs: &ExpSeries) -> ExpSeries {
        rhs.scale(self)
    }
}

/// Exponent shift `l / alpha` carried by the ladder operators.
fn ladder_shift(params: &DeformationParams) -> Result<f64, CalculusError> {
    params.require_nonzero_alpha()?;
    Ok(params.l() / params.alpha())
}

/// The difference derivative `a = D`.
pub fn d_op(s: &ExpSeries, params: &DeformationParams) -> Result<ExpSeries, CalculusError> {
    let shift = ladder_shift(params)?;
    s.map_terms(|e, c| Ok((e - shift, c * f_general(e, params)?)))
}

/// `a+ : f -> z^{l/alpha} f`.
pub fn mult_op(s: &ExpSeries, params: &DeformationParams) -> Result<ExpSeries, CalculusError> {
    let shift = ladder_shift(params)?;
    s.map_terms(|e, c| Ok((e + shift, c)))
}

/// `N : f -> alpha z f'`.
pub fn euler_op(s: &ExpSeries, params: &DeformationParams) -> ExpSeries {
    let alpha = params.alpha();
    let mut out = ExpSeries::zero();
    for &(e, c) in s.terms() {
        out.insert(e, c * alpha * e);
    }
    out
}

/// `f(z) -> prefactor * f(ratio * z)`.
pub fn dilation_op(s: &ExpSeries, ratio: f64, prefactor: f64) -> Result<ExpSeries, CalculusError> {
    s.map_terms(|e, c| Ok((e, c * prefactor * checked_pow(ratio, e)?)))
}

/// `p^{-alpha N - beta}` as a dilation.
pub fn p_exp_op(s: &ExpSeries, params: &DeformationParams) -> Result<ExpSeries, CalculusError> {
    let p = params.p();
    dilation_op(
        s,
        checked_pow(p, -params.alpha())?,
        checked_pow(p, -params.beta())?,
    )
}

/// `q^{alpha N + beta}` as a dilation.
pub fn q_exp_op(s: &ExpSeries, params: &DeformationParams) -> Result<ExpSeries, CalculusError> {
    let q = params.q();
    dilation_op(
        s,
        checked_pow(q, params.alpha())?,
        checked_pow(q, params.beta())?,
    )
}

/// Checks the four defining relations on the monomials `z^e` for each `e` in
/// `exponents`. Each label's residual is the max coefficient deviation over
/// all exponents; the tolerance is scaled by the largest operand coefficient.
pub fn check_realization(
    params: &DeformationParams,
    exponents: &[f64],
    tol: f64,
) -> Result<CheckReport, CalculusError> {
    params.require_nonzero_alpha()?;
    let l = params.l();
    let ql = checked_pow(params.q(), l)?;
    let pl = checked_pow(params.p(), -l)?;

    // (residual, scale) per identity
    let mut acc = [(0.0f64, 0.0f64); 4];
    let mut record = |slot: usize, parts: &[&ExpSeries], lhs: ExpSeries| {
        let scale = parts.iter().fold(0.0f64, |m, s| m.max(s.max_abs_coeff()));
        acc[slot].0 = acc[slot].0.max(lhs.max_abs_coeff());
        acc[slot].1 = acc[slot].1.max(scale);
    };

    for &e in exponents {
        let z = ExpSeries::monomial(e, 1.0);
        let up = mult_op(&z, params)?;
        let down = d_op(&z, params)?;

        let n_up = euler_op(&up, params);
        let up_n = mult_op(&euler_op(&z, params), params)?;
        let l_up = l * &up;
        record(0, &[&n_up, &up_n, &l_up], &(&n_up - &up_n) - &l_up);

        let n_down = euler_op(&down, params);
        let down_n = d_op(&euler_op(&z, params), params)?;
        let l_down = l * &down;
        record(
            1,
            &[&n_down, &down_n, &l_down],
            &(&n_down - &down_n) + &l_down,
        );

        let a_adag = d_op(&up, params)?;
        let adag_a = mult_op(&down, params)?;

        let q_part = ql * &adag_a;
        let p_exp = p_exp_op(&z, params)?;
        record(
            2,
            &[&a_adag, &q_part, &p_exp],
            &(&a_adag - &q_part) - &p_exp,
        );

        let p_part = pl * &adag_a;
        let q_exp = q_exp_op(&z, params)?;
        record(
            3,
            &[&a_adag, &p_part, &q_exp],
            &(&a_adag - &p_part) - &q_exp,
        );
    }

    let labels = [
        "[N,a+] - l a+",
        "[N,a] + l a",
        "aa+ - q^l a+a - p^(-alpha N - beta)",
        "aa+ - p^(-l) a+a - q^(alpha N + beta)",
    ];
    let mut report = CheckReport::new();
    for (label, (res, scale)) in labels.iter().zip(acc) {
        report.push_scaled(*label, res, tol, scale);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> DeformationParams {
        DeformationParams::new(2.0, 3.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn d_op_examples() {
        let p = fixture();
        let d = d_op(&ExpSeries::monomial(2.0, 1.0), &p).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.coeff(1.0) - 3.5).abs() < 1e-14);

        assert!(d_op(&ExpSeries::monomial(0.0, 1.0), &p).unwrap().is_empty());

        let d1 = d_op(&ExpSeries::monomial(1.0, 1.0), &p).unwrap();
        assert!((d1.coeff(0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mult_op_examples() {
        let p = DeformationParams::new(2.0, 3.0, 2.0, 0.0, 1.0).unwrap();
        let m = mult_op(&ExpSeries::monomial(2.0, 1.0), &p).unwrap();
        assert_eq!(m.terms(), &[(2.5, 1.0)]);
        assert!(mult_op(&ExpSeries::zero(), &p).unwrap().is_empty());

        let s = ExpSeries::from_terms([(0.0, 2.0), (1.0, 3.0)]).unwrap();
        let m = mult_op(&s, &fixture()).unwrap();
        assert_eq!(m.terms(), &[(1.0, 2.0), (2.0, 3.0)]);
    }

    #[test]
    fn euler_op_examples() {
        let p2 = DeformationParams::new(2.0, 3.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(
            euler_op(&ExpSeries::monomial(3.0, 1.0), &p2).terms(),
            &[(3.0, 6.0)]
        );
        assert!(euler_op(&ExpSeries::monomial(0.0, 4.0), &p2).is_empty());
        assert_eq!(
            euler_op(&ExpSeries::monomial(1.5, 1.0), &fixture()).terms(),
            &[(1.5, 1.5)]
        );
    }

    #[test]
    fn dilation_examples() {
        let z2 = ExpSeries::monomial(2.0, 1.0);
        assert!((dilation_op(&z2, 3.0, 1.0).unwrap().coeff(2.0) - 9.0).abs() < 1e-14);
        let zn = ExpSeries::monomial(4.0, 1.0);
        let d = dilation_op(&zn, 0.5, 1.0).unwrap();
        assert!((d.coeff(4.0) - 0.0625).abs() < 1e-16);
        // q^{alpha*1 + beta} with alpha=2, beta=1, q=3
        let z1 = ExpSeries::monomial(1.0, 1.0);
        let d = dilation_op(&z1, 9.0, 3.0).unwrap();
        assert!((d.coeff(1.0) - 27.0).abs() < 1e-13);
        let params = DeformationParams::new(2.0, 3.0, 2.0, 1.0, 1.0).unwrap();
        assert!((q_exp_op(&z1, &params).unwrap().coeff(1.0) - 27.0).abs() < 1e-13);
    }

    #[test]
    fn realization_closes() {
        let report = check_realization(&fixture(), &[0.0, 1.0, 2.0, 3.0], 1e-12).unwrap();
        assert!(report.all_pass(), "{report:?}");

        let p = DeformationParams::new(2.0, 3.0, 2.0, 0.5, 1.0).unwrap();
        let exps: Vec<f64> = (-2..=3).map(f64::from).collect();
        let report = check_realization(&p, &exps, 1e-12).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn zero_alpha_rejected() {
        let p = DeformationParams::new(2.0, 3.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(
            check_realization(&p, &[1.0], 1e-12),
            Err(CalculusError::Param(ParamError::ZeroAlpha))
        );
        assert!(d_op(&ExpSeries::monomial(1.0, 1.0), &p).is_err());
        assert!(mult_op(&ExpSeries::monomial(1.0, 1.0), &p).is_err());
    }

    #[test]
    fn series_merging_and_pruning() {
        let s = ExpSeries::from_terms([(1.0, 2.0), (1.0 + 1e-14, 3.0), (0.5, 1.0), (2.0, 0.0)])
            .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(1.0), 5.0);
        assert_eq!(s.terms()[0].0, 0.5);
        let cancel = &s - &s;
        assert!(cancel.is_empty());
        assert!(ExpSeries::from_terms([(f64::NAN, 1.0)]).is_err());
        let many = ExpSeries::from_terms((0..=MAX_TERMS).map(|i| (i as f64, 1.0)));
        assert_eq!(many, Err(CalculusError::TooManyTerms));
    }
}
