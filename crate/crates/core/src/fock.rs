//! Truncated lowest-weight matrix representations of `{1, a, a+, N}`.
//!
//! Basis levels are indexed `k = 0..dim`. Level `k` carries the number
//! eigenvalue `nu_k = nu0 + l k` and the grading exponent `x_k = x0 + l k`.
//! The ladder weights are `w_k = (p^{-x_k} - q^{x_k}) / (p^{-l} - q^l)` and
//!
//! ```text
//! a |k>  = sqrt(w_k)     |k-1>
//! a+ |k> = sqrt(w_{k+1}) |k+1>
//! ```
//!
//! so that `a+ a = diag(w_k)` and, away from the top level, `a a+ = diag(w_{k+1})`.
//! The exponential generators `p^{-alpha N - beta}` and `q^{alpha N + beta}` are
//! either the grading diagonals `diag(p^{-x_k})`, `diag(q^{x_k})`, or, in literal
//! mode, functions of the spectrum of `N`. The two readings agree at `alpha = 1`
//! (with `x0 = nu0 + beta`); only the grading reading closes the defining
//! relations for general `alpha`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::numeric::{checked_pow, NumericError};
use crate::params::DeformationParams;
use crate::report::CheckReport;
use crate::structure::bracket;

/// Weights this far below zero (relative) are a genuine sign change.
const NEGATIVE_WEIGHT_EPS: f64 = 1e-14;
/// Tolerance on `w_0 = 0` for the lowest-weight condition.
const GROUND_WEIGHT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("negative ladder weight w_{0} = {1}: no real representation")]
    NegativeWeight(usize, f64),
    #[error("ground weight w_0 = {0} is not zero: basis is not lowest-weight")]
    NotLowestWeight(f64),
    #[error("dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty operator word")]
    EmptyWord,
    #[error("unknown generator symbol `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// How the exponential generators are read when checking relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationMode {
    #[default]
    Grading,
    Literal,
}

impl fmt::Display for RelationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationMode::Grading => "grading",
            RelationMode::Literal => "literal",
        })
    }
}

impl FromStr for RelationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grading" => Ok(RelationMode::Grading),
            "literal" => Ok(RelationMode::Literal),
            other => Err(format!("unknown mode `{other}` (expected grading|literal)")),
        }
    }
}

/// Generator symbols accepted by [`FockRep::apply_word`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    A,
    ADag,
    N,
    /// `p^{-alpha N - beta}`
    P,
    /// `q^{alpha N + beta}`
    Q,
}

impl FromStr for Generator {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(Generator::A),
            "a+" | "adag" => Ok(Generator::ADag),
            "N" => Ok(Generator::N),
            "P" => Ok(Generator::P),
            "Q" => Ok(Generator::Q),
            other => Err(FockError::UnknownGenerator(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FockRep {
    dim: usize,
    params: DeformationParams,
    x0: f64,
    nu0: f64,
    weights: Vec<f64>,
    a: DMatrix<f64>,
    a_dag: DMatrix<f64>,
    n: DMatrix<f64>,
    p_diag: DMatrix<f64>,
    q_diag: DMatrix<f64>,
}

impl FockRep {
    /// Builds the representation with `x0 = 0`, `nu0 = 0`.
    pub fn new(params: DeformationParams, dim: usize) -> Result<Self, FockError> {
        Self::build(params, dim, 0.0, 0.0)
    }

    pub fn build(
        params: DeformationParams,
        dim: usize,
        x0: f64,
        nu0: f64,
    ) -> Result<Self, FockError> {
        if dim < 2 {
            return Err(FockError::DimensionTooSmall(dim));
        }
        let (p, q, l) = (params.p(), params.q(), params.l());
        let weights = (0..=dim)
            .map(|k| bracket(x0 + l * k as f64, p, q, l))
            .collect::<Result<Vec<_>, _>>()?;
        let scale = 1.0 + weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));

        let w0 = weights[0];
        if !(w0 >= -NEGATIVE_WEIGHT_EPS * scale && w0 <= GROUND_WEIGHT_EPS * scale) {
            return Err(FockError::NotLowestWeight(w0));
        }
        if let Some((k, &w)) = weights
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &w)| w < -NEGATIVE_WEIGHT_EPS * scale)
        {
            return Err(FockError::NegativeWeight(k, w));
        }

        let mut a = DMatrix::zeros(dim, dim);
        for k in 1..dim {
            a[(k - 1, k)] = weights[k].max(0.0).sqrt();
        }
        let a_dag = a.transpose();
        let n = DMatrix::from_diagonal(&DVector::from_fn(dim, |k, _| nu0 + l * k as f64));
        let x = |k: usize| x0 + l * k as f64;
        let p_diag = diag_try(dim, |k| checked_pow(p, -x(k)))?;
        let q_diag = diag_try(dim, |k| checked_pow(q, x(k)))?;

        Ok(Self {
            dim,
            params,
            x0,
            nu0,
            weights,
            a,
            a_dag,
            n,
            p_diag,
            q_diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn params(&self) -> &DeformationParams {
        &self.params
    }
    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn nu0(&self) -> f64 {
        self.nu0
    }
    /// `w_0 ..= w_dim`
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().fold(0.0, |m, w| m.max(w.abs()))
    }
    /// Grading exponent of level `k`.
    pub fn x(&self, k: usize) -> f64 {
        self.x0 + self.params.l() * k as f64
    }
    /// Number eigenvalue of level `k`.
    pub fn nu(&self, k: usize) -> f64 {
        self.nu0 + self.params.l() * k as f64
    }
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }
    pub fn a_dag(&self) -> &DMatrix<f64> {
        &self.a_dag
    }
    pub fn n(&self) -> &DMatrix<f64> {
        &self.n
    }
    /// Grading diagonal `diag(p^{-x_k})`.
    pub fn p_diag(&self) -> &DMatrix<f64> {
        &self.p_diag
    }
    /// Grading diagonal `diag(q^{x_k})`.
    pub fn q_diag(&self) -> &DMatrix<f64> {
        &self.q_diag
    }

    pub fn generator(&self, g: Generator) -> &DMatrix<f64> {
        match g {
            Generator::A => &self.a,
            Generator::ADag => &self.a_dag,
            Generator::N => &self.n,
            Generator::P => &self.p_diag,
            Generator::Q => &self.q_diag,
        }
    }

    /// `diag(p^{-alpha nu_k - beta})`, `diag(q^{alpha nu_k + beta})`.
    fn literal_exponentials(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let (p, q) = (self.params.p(), self.params.q());
        let e = |k: usize| self.params.alpha() * self.nu(k) + self.params.beta();
        (
            DMatrix::from_diagonal(&DVector::from_fn(self.dim, |k, _| p.powf(-e(k)))),
            DMatrix::from_diagonal(&DVector::from_fn(self.dim, |k, _| q.powf(e(k)))),
        )
    }

    /// Residuals of the two twisted relations and the two `N` commutators.
    ///
    /// The twisted relations are compared on columns `k <= dim - 2` only: the
    /// top level's `a a+` entry is lost to truncation. Tolerances are scaled by
    /// `max(1, max_k w_k)`.
    pub fn check_relations(&self, mode: RelationMode, tol: f64) -> CheckReport {
        let (p_exp, q_exp) = match mode {
            RelationMode::Grading => (self.p_diag.clone(), self.q_diag.clone()),
            RelationMode::Literal => self.literal_exponentials(),
        };
        let l = self.params.l();
        let ql = self.params.q().powf(l);
        let pl = self.params.p().powf(-l);
        let aad = &self.a * &self.a_dag;
        let ada = &self.a_dag * &self.a;

        let q_twist = &aad - &ada * ql - p_exp;
        let p_twist = &aad - &ada * pl - q_exp;
        let n_a = &self.n * &self.a - &self.a * &self.n + &self.a * l;
        let n_ad = &self.n * &self.a_dag - &self.a_dag * &self.n - &self.a_dag * l;

        let interior = self.dim - 1;
        let scale = self.max_weight();
        let mut report = CheckReport::new();
        report.push_scaled(
            "aa+ - q^l a+a - p^(-alpha N - beta)",
            max_abs_cols(&q_twist, interior),
            tol,
            scale,
        );
        report.push_scaled(
            "aa+ - p^(-l) a+a - q^(alpha N + beta)",
            max_abs_cols(&p_twist, interior),
            tol,
            scale,
        );
        report.push_scaled("[N,a] + l a", n_a.amax(), tol, scale);
        report.push_scaled("[N,a+] - l a+", n_ad.amax(), tol, scale);
        report
    }

    /// Applies a word of generators to a state; the rightmost symbol acts first.
    pub fn apply_word(
        &self,
        word: &[Generator],
        state: &DVector<f64>,
    ) -> Result<DVector<f64>, FockError> {
        if word.is_empty() {
            return Err(FockError::EmptyWord);
        }
        if state.len() != self.dim {
            return Err(FockError::DimensionMismatch {
                expected: self.dim,
                got: state.len(),
            });
        }
        Ok(word
            .iter()
            .rev()
            .fold(state.clone(), |v, &g| self.generator(g) * v))
    }

    /// Basis vector `|k>`.
    pub fn basis(&self, k: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[k] = 1.0;
        v
    }
}

fn diag_try(
    dim: usize,
    f: impl Fn(usize) -> Result<f64, NumericError>,
) -> Result<DMatrix<f64>, NumericError> {
    let d = (0..dim).map(f).collect::<Result<Vec<_>, _>>()?;
    Ok(DMatrix::from_diagonal(&DVector::from_vec(d)))
}

/// Max absolute entry over the first `cols` columns.
pub(crate) fn max_abs_cols(m: &DMatrix<f64>, cols: usize) -> f64 {
    m.columns(0, cols.min(m.ncols())).amax()
}
