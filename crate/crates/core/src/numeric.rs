//! Guarded exponentials shared by every module that raises a deformation base
//! to a real power.

use thiserror::Error;

/// Largest admissible `|exponent * ln(base)|` before `exp` leaves the finite
/// double range.
pub const EXP_SATURATION: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NumericError {
    #[error("overflow: {base}^{exponent} saturates double precision")]
    Overflow { base: f64, exponent: f64 },
}

/// `base^exponent` for a positive base, computed as `exp(exponent * ln base)`.
pub fn checked_pow(base: f64, exponent: f64) -> Result<f64, NumericError> {
    let arg = exponent * base.ln();
    if !arg.is_finite() || arg.abs() > EXP_SATURATION {
        return Err(NumericError::Overflow { base, exponent });
    }
    Ok(arg.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_powf_in_range() {
        let v = checked_pow(3.0, 2.5).unwrap();
        assert!((v - 3f64.powf(2.5)).abs() < 1e-13 * v);
        assert_eq!(checked_pow(7.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn saturation_is_reported() {
        assert!(matches!(
            checked_pow(10.0, 400.0),
            Err(NumericError::Overflow { .. })
        ));
        assert!(matches!(
            checked_pow(0.1, 400.0),
            Err(NumericError::Overflow { .. })
        ));
        // just below the threshold
        assert!(checked_pow(std::f64::consts::E, 699.0).is_ok());
    }
}
