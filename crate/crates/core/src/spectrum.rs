//! Spectrum of `H = a+ a + a a+`.
//!
//! In closed form, with `x = alpha n + beta` and the bracket
//! `w(x) = (p^{-x} - q^x)/(p^{-l} - q^l)`,
//!
//! ```text
//! lambda_n = w(x + l) + w(x)
//!          = p^{-x} + (q^l + 1) w(x)
//!          = q^x + (p^{-l} + 1) w(x)
//! ```
//!
//! The last two forms are invariant under `p -> 1/q, q -> 1/p`.

use serde::{Deserialize, Serialize};

use crate::fock::FockRep;
use crate::numeric::{checked_pow, NumericError};
use crate::params::DeformationParams;
use crate::report::CheckReport;
use crate::structure::bracket;

/// Closed-form eigenvalue `lambda_n`.
pub fn lambda_n(n: i64, params: &DeformationParams) -> Result<f64, NumericError> {
    let x = params.alpha() * n as f64 + params.beta();
    let (p, q, l) = (params.p(), params.q(), params.l());
    Ok(bracket(x + l, p, q, l)? + bracket(x, p, q, l)?)
}

/// `(two-bracket sum, p-form, q-form)` for `lambda_n`.
pub fn lambda_forms(n: i64, params: &DeformationParams) -> Result<(f64, f64, f64), NumericError> {
    let x = params.alpha() * n as f64 + params.beta();
    let (p, q, l) = (params.p(), params.q(), params.l());
    let w = bracket(x, p, q, l)?;
    let p_form = checked_pow(p, -x)? + (checked_pow(q, l)? + 1.0) * w;
    let q_form = checked_pow(q, x)? + (checked_pow(p, -l)? + 1.0) * w;
    Ok((lambda_n(n, params)?, p_form, q_form))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: i64,
    pub lambda: f64,
    pub p_form: f64,
    pub q_form: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub params: DeformationParams,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    /// Levels `n = 0..=n_max`.
    pub fn compute(params: DeformationParams, n_max: i64) -> Result<Self, NumericError> {
        let entries = (0..=n_max)
            .map(|n| {
                let (lambda, p_form, q_form) = lambda_forms(n, &params)?;
                Ok(SpectrumEntry {
                    n,
                    lambda,
                    p_form,
                    q_form,
                })
            })
            .collect::<Result<Vec<_>, NumericError>>()?;
        Ok(Self { params, entries })
    }

    /// Largest disagreement between the three forms, relative to `1 + |lambda|`.
    pub fn max_form_deviation(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let d = (e.lambda - e.p_form).abs().max((e.lambda - e.q_form).abs());
                d / (1.0 + e.lambda.abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Diagonal of `a+ a + a a+` on levels `k <= dim - 2`.
pub fn hamiltonian_eigs(rep: &FockRep) -> Vec<f64> {
    let h = rep.a_dag() * rep.a() + rep.a() * rep.a_dag();
    (0..rep.dim() - 1).map(|k| h[(k, k)]).collect()
}

/// `max_n |lambda_n(params) - lambda_n(dual(params))|` for `n = 0..=n_max`.
pub fn check_pq_inversion(
    params: &DeformationParams,
    n_max: i64,
    tol: f64,
) -> Result<CheckReport, NumericError> {
    let dual = params.dual();
    let mut residual = 0.0f64;
    let mut scale = 0.0f64;
    for n in 0..=n_max {
        let a = lambda_n(n, params)?;
        let b = lambda_n(n, &dual)?;
        residual = residual.max((a - b).abs());
        scale = scale.max(a.abs());
    }
    let mut report = CheckReport::new();
    report.push_scaled("lambda_n(p,q) - lambda_n(1/q,1/p)", residual, tol, scale);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> DeformationParams {
        DeformationParams::new(2.0, 3.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn fixture_eigenvalues() {
        let p = fixture();
        assert!((lambda_n(0, &p).unwrap() - 1.0).abs() < 1e-14);
        assert!((lambda_n(1, &p).unwrap() - 4.5).abs() < 1e-14);
        assert!((lambda_n(2, &p).unwrap() - 14.25).abs() < 1e-13);
    }

    #[test]
    fn forms_agree() {
        let p = fixture();
        let (a, b, c) = lambda_forms(1, &p).unwrap();
        for v in [a, b, c] {
            assert!((v - 4.5).abs() < 1e-14);
        }
        let (a, b, c) = lambda_forms(0, &p).unwrap();
        assert!((a - b).abs() < 1e-12 && (a - c).abs() < 1e-12);
        let d = lambda_forms(3, &p.dual()).unwrap();
        let o = lambda_forms(3, &p).unwrap();
        assert!((d.0 - o.0).abs() < 1e-12 * o.0);
    }

    #[test]
    fn fixture_hamiltonian() {
        let rep = FockRep::new(fixture(), 4).unwrap();
        let eigs = hamiltonian_eigs(&rep);
        assert_eq!(eigs.len(), 3);
        for (e, x) in eigs.iter().zip([1.0, 4.5, 14.25]) {
            assert!((e - x).abs() < 1e-13, "{e} vs {x}");
        }
        let dual = hamiltonian_eigs(&FockRep::new(fixture().dual(), 4).unwrap());
        for (a, b) in eigs.iter().zip(&dual) {
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn inversion_examples() {
        assert!(check_pq_inversion(&fixture(), 20, 1e-11)
            .unwrap()
            .all_pass());
        let s = DeformationParams::new(1.4, 1.4, 1.0, 0.0, 1.0).unwrap();
        assert!(check_pq_inversion(&s, 5, 1e-11).unwrap().all_pass());
        let g = DeformationParams::new(0.7, 1.9, 2.0, 0.3, 0.5).unwrap();
        assert!(check_pq_inversion(&g, 20, 1e-11).unwrap().all_pass());
    }

    #[test]
    fn table_is_monotone_on_fixture() {
        let t = SpectrumTable::compute(fixture(), 10).unwrap();
        assert!(t.entries.windows(2).all(|w| w[1].lambda > w[0].lambda));
        assert!(t.max_form_deviation() < 1e-12);
    }
}
