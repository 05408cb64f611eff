//! The deformation parameter tuple `(p, q, alpha, beta, l)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Guard on `|(pq)^l - 1|`: closer than this to the singular surface and the
/// denominator `p^{-l} - q^l` is treated as zero.
pub const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("non-positive deformation base (p = {p}, q = {q})")]
    NonPositiveBase { p: f64, q: f64 },
    #[error("degenerate denominator: (pq)^l = 1 within {DEGENERATE_EPS:e}")]
    DegenerateDenominator,
    #[error("alpha = 0: the difference-operator realization is undefined")]
    ZeroAlpha,
    #[error("non-finite parameter `{0}`")]
    NonFinite(&'static str),
}

impl ParamError {
    /// Variant name, for error messages.
    pub fn kind(&self) -> &'static str {
        match self {
            ParamError::NonPositiveBase { .. } => "NonPositiveBase",
            ParamError::DegenerateDenominator => "DegenerateDenominator",
            ParamError::ZeroAlpha => "ZeroAlpha",
            ParamError::NonFinite(_) => "NonFinite",
        }
    }
}

/// A validated parameter tuple.
///
/// Fields are private so that every value in circulation satisfies
/// `p, q > 0` and `(pq)^l != 1`. A zero `alpha` is accepted here; callers
/// that need the realization `N = alpha z d/dz` check it with
/// [`DeformationParams::require_nonzero_alpha`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct DeformationParams {
    p: f64,
    q: f64,
    alpha: f64,
    beta: f64,
    l: f64,
}

/// Unvalidated tuple, as read from configuration or the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub l: f64,
}

impl DeformationParams {
    pub fn new(p: f64, q: f64, alpha: f64, beta: f64, l: f64) -> Result<Self, ParamError> {
        Self::validate(RawParams {
            p,
            q,
            alpha,
            beta,
            l,
        })
    }

    pub fn validate(raw: RawParams) -> Result<Self, ParamError> {
        let RawParams {
            p,
            q,
            alpha,
            beta,
            l,
        } = raw;
        for (name, v) in [
            ("p", p),
            ("q", q),
            ("alpha", alpha),
            ("beta", beta),
            ("l", l),
        ] {
            if !v.is_finite() {
                return Err(ParamError::NonFinite(name));
            }
        }
        check_bases(p, q, l)?;
        Ok(Self {
            p,
            q,
            alpha,
            beta,
            l,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn raw(&self) -> RawParams {
        RawParams {
            p: self.p,
            q: self.q,
            alpha: self.alpha,
            beta: self.beta,
            l: self.l,
        }
    }

    pub fn require_nonzero_alpha(&self) -> Result<(), ParamError> {
        if self.alpha == 0.0 {
            Err(ParamError::ZeroAlpha)
        } else {
            Ok(())
        }
    }

    /// The involution `p -> 1/q`, `q -> 1/p`.
    pub fn dual(&self) -> Self {
        Self {
            p: self.q.recip(),
            q: self.p.recip(),
            ..*self
        }
    }

    /// `p^{-l} - q^l`, the common denominator of every bracket.
    pub fn denominator(&self) -> f64 {
        (-self.l * self.p.ln()).exp() - (self.l * self.q.ln()).exp()
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self, ParamError> {
        Self::new(self.p, self.q, self.alpha, beta, self.l)
    }
}

impl TryFrom<RawParams> for DeformationParams {
    type Error = ParamError;

    fn try_from(raw: RawParams) -> Result<Self, Self::Error> {
        Self::validate(raw)
    }
}

impl From<DeformationParams> for RawParams {
    fn from(p: DeformationParams) -> Self {
        p.raw()
    }
}

/// Shared base checks: positivity and the `(pq)^l != 1` guard.
pub(crate) fn check_bases(p: f64, q: f64, l: f64) -> Result<(), ParamError> {
    if !(p > 0.0 && q > 0.0) {
        return Err(ParamError::NonPositiveBase { p, q });
    }
    if (l * (p * q).ln()).exp_m1().abs() <= DEGENERATE_EPS {
        return Err(ParamError::DegenerateDenominator);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_generic_tuple() {
        let p = DeformationParams::new(2.0, 3.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(p.p(), 2.0);
        assert!((p.denominator() + 2.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_pq_one() {
        assert_eq!(
            DeformationParams::new(2.0, 0.5, 1.0, 0.0, 1.0),
            Err(ParamError::DegenerateDenominator)
        );
        // l = 0 collapses the denominator for any bases
        assert_eq!(
            DeformationParams::new(2.0, 3.0, 1.0, 0.0, 0.0),
            Err(ParamError::DegenerateDenominator)
        );
    }

    #[test]
    fn rejects_non_positive_bases() {
        assert!(matches!(
            DeformationParams::new(-1.0, 3.0, 1.0, 0.0, 1.0),
            Err(ParamError::NonPositiveBase { .. })
        ));
        assert!(matches!(
            DeformationParams::new(2.0, 0.0, 1.0, 0.0, 1.0),
            Err(ParamError::NonPositiveBase { .. })
        ));
        assert_eq!(
            DeformationParams::new(f64::NAN, 3.0, 1.0, 0.0, 1.0),
            Err(ParamError::NonFinite("p"))
        );
    }

    #[test]
    fn zero_alpha_is_soft() {
        let p = DeformationParams::new(2.0, 3.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(p.require_nonzero_alpha(), Err(ParamError::ZeroAlpha));
    }

    #[test]
    fn dual_examples() {
        let d = DeformationParams::new(2.0, 3.0, 1.0, 0.0, 1.0)
            .unwrap()
            .dual();
        assert_eq!(d.p(), 1.0 / 3.0);
        assert_eq!(d.q(), 0.5);

        let s = DeformationParams::new(1.7, 1.7, 1.0, 0.0, 1.0)
            .unwrap()
            .dual();
        assert_eq!(s.p(), s.q());
        assert_eq!(s.p(), 1.0 / 1.7);

        let x = DeformationParams::new(0.7, 1.3, 2.0, 0.5, 1.0).unwrap();
        let xx = x.dual().dual();
        assert!((xx.p() - x.p()).abs() <= 1e-15 * x.p());
        assert!((xx.q() - x.q()).abs() <= 1e-15 * x.q());
        assert_eq!((xx.alpha(), xx.beta(), xx.l()), (2.0, 0.5, 1.0));
    }

    #[test]
    fn serde_validates() {
        let ok: DeformationParams =
            serde_json::from_str(r#"{"p":2,"q":3,"alpha":1,"beta":0,"l":1}"#).unwrap();
        assert_eq!(ok.q(), 3.0);
        let bad = serde_json::from_str::<DeformationParams>(
            r#"{"p":2,"q":0.5,"alpha":1,"beta":0,"l":1}"#,
        );
        assert!(bad.is_err());
    }
}
