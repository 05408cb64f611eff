//! Structure functions `f(n)` of the deformed oscillator families.
//!
//! The general two-parameter function is
//!
//! ```text
//! f(n) = (p^{-(alpha n + beta)} - q^{alpha n + beta}) / (p^{-l} - q^l)
//! ```
//!
//! and most of the crate works with the underlying bracket
//! `w(x) = (p^{-x} - q^x) / (p^{-l} - q^l)` evaluated at a real exponent `x`.

use serde::{Deserialize, Serialize};

use crate::numeric::{checked_pow, NumericError};
use crate::params::{check_bases, DeformationParams, ParamError, DEGENERATE_EPS};

/// `w(x) = (p^{-x} - q^x) / (p^{-l} - q^l)`.
pub fn bracket(x: f64, p: f64, q: f64, l: f64) -> Result<f64, NumericError> {
    let num = checked_pow(p, -x)? - checked_pow(q, x)?;
    let den = checked_pow(p, -l)? - checked_pow(q, l)?;
    Ok(num / den)
}

/// The structure function at real argument `n`.
pub fn f_general(n: f64, params: &DeformationParams) -> Result<f64, NumericError> {
    let x = params.alpha() * n + params.beta();
    bracket(x, params.p(), params.q(), params.l())
}

/// Independent summation form of the `(p,q)`-number at `alpha = 1, beta = 0,
/// l = 1`: `sum_{k=0}^{n-1} p^{-(n-1-k)} q^k`.
pub fn pq_sum_oracle(n: u32, p: f64, q: f64) -> f64 {
    (0..n)
        .map(|k| p.powi(-((n - 1 - k) as i32)) * q.powi(k as i32))
        .sum()
}

/// Catalog of deformation schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Scheme {
    StandardQm,
    ArikCoon {
        q: f64,
    },
    ArikCoonGeneralized {
        q: f64,
        alpha: f64,
        beta: f64,
    },
    BiedenharnMacfarlane {
        q: f64,
    },
    BmSymmetricGeneralized {
        q: f64,
        alpha: f64,
        beta: f64,
    },
    TwoParameter {
        p: f64,
        q: f64,
        l: f64,
    },
    TwoParameterSymmetricGeneralized {
        p: f64,
        q: f64,
        alpha: f64,
        beta: f64,
        l: f64,
    },
    GeneralPq(DeformationParams),
}

fn one_base(q: f64, den: f64) -> Result<(), ParamError> {
    if q.is_nan() || q <= 0.0 {
        return Err(ParamError::NonPositiveBase { p: q, q });
    }
    if den.abs() <= DEGENERATE_EPS {
        return Err(ParamError::DegenerateDenominator);
    }
    Ok(())
}

impl Scheme {
    pub fn validate(&self) -> Result<(), ParamError> {
        match *self {
            Scheme::StandardQm => Ok(()),
            Scheme::ArikCoon { q } | Scheme::ArikCoonGeneralized { q, .. } => one_base(q, 1.0 - q),
            Scheme::BiedenharnMacfarlane { q } | Scheme::BmSymmetricGeneralized { q, .. } => {
                one_base(q, q.recip() - q)
            }
            Scheme::TwoParameter { p, q, l }
            | Scheme::TwoParameterSymmetricGeneralized { p, q, l, .. } => check_bases(p, q, l),
            Scheme::GeneralPq(_) => Ok(()),
        }
    }

    /// Evaluates the scheme's structure function at `n`.
    pub fn f(&self, n: f64) -> Result<f64, NumericError> {
        match *self {
            Scheme::StandardQm => Ok(0.5 * n),
            Scheme::ArikCoon { q } => Ok((1.0 - checked_pow(q, n)?) / (1.0 - q)),
            Scheme::ArikCoonGeneralized { q, alpha, beta } => {
                let prefactor = checked_pow(q, alpha * n + beta)?;
                Ok(prefactor * (1.0 - checked_pow(q, n)?) / (1.0 - q))
            }
            Scheme::BiedenharnMacfarlane { q } => symmetric_q(n, q),
            Scheme::BmSymmetricGeneralized { q, alpha, beta } => symmetric_q(alpha * n + beta, q),
            Scheme::TwoParameter { p, q, l } => bracket(n, p, q, l),
            Scheme::TwoParameterSymmetricGeneralized {
                p,
                q,
                alpha,
                beta,
                l,
            } => bracket(alpha * n + beta, p, q, l),
            Scheme::GeneralPq(params) => f_general(n, &params),
        }
    }
}

/// `(q^{-x} - q^x) / (q^{-1} - q)`
fn symmetric_q(x: f64, q: f64) -> Result<f64, NumericError> {
    Ok((checked_pow(q, -x)? - checked_pow(q, x)?) / (q.recip() - q))
}

pub fn f_scheme(scheme: &Scheme, n: f64) -> Result<f64, NumericError> {
    scheme.f(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> DeformationParams {
        DeformationParams::new(2.0, 3.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn oracle_values() {
        assert_eq!(pq_sum_oracle(0, 2.0, 3.0), 0.0);
        assert_eq!(pq_sum_oracle(2, 2.0, 3.0), 3.5);
        assert_eq!(pq_sum_oracle(3, 2.0, 3.0), 10.75);
        assert_eq!(pq_sum_oracle(5, 1.0, 1.0), 5.0);
    }

    #[test]
    fn general_fixture_values() {
        let p = fixture();
        assert_eq!(f_general(0.0, &p).unwrap(), 0.0);
        assert!((f_general(1.0, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!((f_general(2.0, &p).unwrap() - 3.5).abs() < 1e-14);
        assert!((f_general(3.0, &p).unwrap() - 10.75).abs() < 1e-13);
    }

    #[test]
    fn catalog_values() {
        assert_eq!(Scheme::StandardQm.f(4.0).unwrap(), 2.0);
        let ac = Scheme::ArikCoon { q: 0.5 }.f(3.0).unwrap();
        assert!((ac - 1.75).abs() < 1e-15);
        let bm = Scheme::BiedenharnMacfarlane { q: 2.0 }.f(2.0).unwrap();
        assert!((bm - 2.5).abs() < 1e-15);
        // q^{alpha n + beta} [n] with alpha=1, beta=0, q=0.5, n=2: 0.25 * 1.5
        let acg = Scheme::ArikCoonGeneralized {
            q: 0.5,
            alpha: 1.0,
            beta: 0.0,
        }
        .f(2.0)
        .unwrap();
        assert!((acg - 0.375).abs() < 1e-15);
        // symmetric generalization reduces to BM at alpha=1, beta=0
        let bmg = Scheme::BmSymmetricGeneralized {
            q: 2.0,
            alpha: 1.0,
            beta: 0.0,
        }
        .f(2.0)
        .unwrap();
        assert!((bmg - bm).abs() < 1e-15);
    }

    #[test]
    fn two_parameter_matches_general_at_unit_step() {
        let p = fixture();
        for n in 0..12 {
            let a = Scheme::TwoParameter {
                p: 2.0,
                q: 3.0,
                l: 1.0,
            }
            .f(n as f64)
            .unwrap();
            let b = f_general(n as f64, &p).unwrap();
            assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
            let c = Scheme::GeneralPq(p).f(n as f64).unwrap();
            assert_eq!(b, c);
        }
    }

    #[test]
    fn zero_locus() {
        let p = DeformationParams::new(0.7, 1.9, 2.0, 0.3, 0.5).unwrap();
        let n0 = -p.beta() / p.alpha();
        assert!(f_general(n0, &p).unwrap().abs() <= 1e-14);
    }

    #[test]
    fn overflow_is_an_error() {
        let p = fixture();
        assert!(matches!(
            f_general(1000.0, &p),
            Err(NumericError::Overflow { .. })
        ));
    }

    #[test]
    fn scheme_validation() {
        assert_eq!(
            Scheme::ArikCoon { q: 1.0 }.validate(),
            Err(ParamError::DegenerateDenominator)
        );
        assert_eq!(
            Scheme::BiedenharnMacfarlane { q: 1.0 }.validate(),
            Err(ParamError::DegenerateDenominator)
        );
        assert!(Scheme::TwoParameter {
            p: -2.0,
            q: 3.0,
            l: 1.0
        }
        .validate()
        .is_err());
        assert!(Scheme::TwoParameter {
            p: 2.0,
            q: 0.5,
            l: 1.0
        }
        .validate()
        .is_err());
        assert!(Scheme::StandardQm.validate().is_ok());
    }
}
