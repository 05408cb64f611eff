//! Hopf structure on the deformed oscillator algebra.
//!
//! The coproduct, counit and antipode are fixed on generators by the ansatz
//!
//! ```text
//! D(a+) = c1 a+ (x) p^{-alpha1 N} + c2 q^{alpha2 N} (x) a+
//! D(a)  = c3 a  (x) p^{-alpha3 N} + c4 q^{alpha4 N} (x) a
//! D(N)  = c5 N (x) 1 + c6 1 (x) N + gamma 1 (x) 1
//! e(a+) = c7, e(a) = c8, e(N) = c9
//! S(a+) = -c10 a+, S(a) = -c11 a, S(N) = -c12 N + c13
//! ```
//!
//! and extended to the exponentials `p^{-cN}`, `q^{cN}` multiplicatively.
//! [`solve_coefficients`] picks the symmetric branch `alpha_i = alpha/2` and
//! derives every constant from `(p, q, alpha, l, beta1, beta2)`.
//!
//! Numerical checks run on tensor powers of a truncated [`FockRep`]. The
//! exponentials use the representation's grading: with `y_k = x_k - beta`,
//! `p^{-cN}` is `diag(p^{-(c/alpha) y_k})` and `q^{cN}` is
//! `diag(q^{(c/alpha) y_k})`. All identities are compared on input levels
//! `k <= dim - 3` in every tensor factor.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{FockError, FockRep};
use crate::numeric::{checked_pow, NumericError};
use crate::params::{DeformationParams, ParamError};
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("gamma undefined: (pq)^(alpha gamma) would have to equal {ratio}, which has no real logarithm")]
    GammaUndefined { ratio: f64 },
    #[error("degenerate twisted commutator: p^(-beta1) - A p^(-beta2) = {0}")]
    ADegenerate(f64),
    #[error("beta1 - beta2 = {0} but the representation requires l = {1}")]
    Beta1Beta2Mismatch(f64, f64),
    #[error("representation and coefficients use different parameters")]
    InconsistentParams,
    #[error("dimension {0} leaves no interior levels (need at least 3)")]
    DimensionTooSmall(usize),
}

/// Parameters of the twisted relation
/// `aa+ - A a+a = ((p^{-beta1} - A p^{-beta2}) p^{-alpha N} - (q^{beta1} - A q^{beta2}) q^{alpha N}) / (p^{-l} - q^l)`.
/// With `beta1 - beta2 = l` this is the oscillator relation of the Fock
/// representation at `beta = beta2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfParams {
    p: f64,
    q: f64,
    alpha: f64,
    l: f64,
    beta1: f64,
    beta2: f64,
}

impl HopfParams {
    pub fn new(
        p: f64,
        q: f64,
        alpha: f64,
        l: f64,
        beta1: f64,
        beta2: f64,
    ) -> Result<Self, HopfError> {
        if !beta1.is_finite() {
            return Err(ParamError::NonFinite("beta1").into());
        }
        let base = DeformationParams::new(p, q, alpha, beta2, l)?;
        base.require_nonzero_alpha()?;
        Ok(Self {
            p,
            q,
            alpha,
            l,
            beta1,
            beta2,
        })
    }

    pub fn from_params(
        params: &DeformationParams,
        beta1: f64,
        beta2: f64,
    ) -> Result<Self, HopfError> {
        Self::new(
            params.p(),
            params.q(),
            params.alpha(),
            params.l(),
            beta1,
            beta2,
        )
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
    pub fn l(&self) -> f64 {
        self.l
    }
    pub fn beta1(&self) -> f64 {
        self.beta1
    }
    pub fn beta2(&self) -> f64 {
        self.beta2
    }

    /// Parameters of the matching Fock representation (`beta = beta2`).
    pub fn fock_params(&self) -> DeformationParams {
        DeformationParams::new(self.p, self.q, self.alpha, self.beta2, self.l)
            .expect("validated in HopfParams::new")
    }

    pub fn representation(&self, dim: usize) -> Result<FockRep, HopfError> {
        Ok(FockRep::new(self.fock_params(), dim)?)
    }

    /// `(p^{-beta1} - A p^{-beta2}, q^{beta1} - A q^{beta2})`
    fn twisted_offsets(&self, a_const: f64) -> Result<(f64, f64), NumericError> {
        let (p, q) = (self.p, self.q);
        let pt = checked_pow(p, -self.beta1)? - a_const * checked_pow(p, -self.beta2)?;
        let qt = checked_pow(q, self.beta1)? - a_const * checked_pow(q, self.beta2)?;
        Ok((pt, qt))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfCoefficients {
    pub params: HopfParams,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    #[serde(rename = "A")]
    pub a_const: f64,
    pub gamma: f64,
    /// `c1 ..= c13`
    pub c: [f64; 13],
}

impl HopfCoefficients {
    /// Symmetric-branch coefficients for a given `gamma`.
    pub fn from_gamma(hp: HopfParams, gamma: f64) -> Result<Self, HopfError> {
        let (p, q, alpha, l) = (hp.p, hp.q, hp.alpha, hp.l);
        let half = alpha / 2.0;
        let a_const = checked_pow(q / p, alpha * l / 2.0)?;
        let mut c = [0.0; 13];
        c[0] = checked_pow(p, -half * gamma)?;
        c[1] = checked_pow(q, half * gamma)?;
        c[2] = checked_pow(p, -half * gamma)?;
        c[3] = checked_pow(q, half * gamma)?;
        c[4] = 1.0;
        c[5] = 1.0;
        // c7 = c8 = 0 (counit on the ladder operators)
        c[8] = -gamma;
        c[9] = -1.0;
        c[10] = -1.0;
        c[11] = -1.0;
        c[12] = 0.0;
        Ok(Self {
            params: hp,
            alpha1: half,
            alpha2: half,
            alpha3: half,
            alpha4: half,
            a_const,
            gamma,
            c,
        })
    }

    /// 1-based access to `c_i`.
    pub fn c(&self, i: usize) -> f64 {
        self.c[i - 1]
    }

    pub fn c_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.c[i - 1]
    }

    pub fn coproduct(&self, e: Element) -> Vec<Term> {
        use Element::*;
        let (p, q) = (self.params.p, self.params.q);
        match e {
            One => vec![Term::new(1.0, One, One)],
            ADag => vec![
                Term::new(self.c(1), ADag, PPow(self.alpha1)),
                Term::new(self.c(2), QPow(self.alpha2), ADag),
            ],
            A => vec![
                Term::new(self.c(3), A, PPow(self.alpha3)),
                Term::new(self.c(4), QPow(self.alpha4), A),
            ],
            N => vec![
                Term::new(self.c(5), N, One),
                Term::new(self.c(6), One, N),
                Term::new(self.gamma, One, One),
            ],
            PPow(k) => vec![Term::new(
                p.powf(-k * self.gamma),
                PPow(k * self.c(5)),
                PPow(k * self.c(6)),
            )],
            QPow(k) => vec![Term::new(
                q.powf(k * self.gamma),
                QPow(k * self.c(5)),
                QPow(k * self.c(6)),
            )],
        }
    }

    pub fn counit(&self, e: Element) -> f64 {
        let (p, q) = (self.params.p, self.params.q);
        match e {
            Element::One => 1.0,
            Element::ADag => self.c(7),
            Element::A => self.c(8),
            Element::N => self.c(9),
            Element::PPow(k) => p.powf(-k * self.c(9)),
            Element::QPow(k) => q.powf(k * self.c(9)),
        }
    }

    /// `S(e)` as a linear combination of elements.
    pub fn antipode(&self, e: Element) -> Vec<(f64, Element)> {
        let (p, q) = (self.params.p, self.params.q);
        match e {
            Element::One => vec![(1.0, Element::One)],
            Element::ADag => vec![(-self.c(10), Element::ADag)],
            Element::A => vec![(-self.c(11), Element::A)],
            Element::N => vec![(-self.c(12), Element::N), (self.c(13), Element::One)],
            // S(p^{-kN}) = p^{-k S(N)}
            Element::PPow(k) => vec![(p.powf(-k * self.c(13)), Element::PPow(-k * self.c(12)))],
            Element::QPow(k) => vec![(q.powf(k * self.c(13)), Element::QPow(-k * self.c(12)))],
        }
    }
}

/// Algebra elements that occur in coproducts of generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    One,
    A,
    ADag,
    N,
    /// `p^{-kN}`
    PPow(f64),
    /// `q^{kN}`
    QPow(f64),
}

impl Element {
    pub const GENERATORS: [Element; 3] = [Element::A, Element::ADag, Element::N];

    pub fn name(&self) -> String {
        match self {
            Element::One => "1".into(),
            Element::A => "a".into(),
            Element::ADag => "a+".into(),
            Element::N => "N".into(),
            Element::PPow(k) => format!("p^(-{k} N)"),
            Element::QPow(k) => format!("q^({k} N)"),
        }
    }
}

/// `coef * left (x) right`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub left: Element,
    pub right: Element,
}

impl Term {
    pub fn new(coef: f64, left: Element, right: Element) -> Self {
        Self { coef, left, right }
    }
}

/// Named scalar reported alongside a check but never asserted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub label: String,
    pub value: f64,
}

/// Solves the coefficient system on the symmetric branch.
pub fn solve_coefficients(hp: &HopfParams) -> Result<HopfCoefficients, HopfError> {
    let a_const = checked_pow(hp.q / hp.p, hp.alpha * hp.l / 2.0)?;
    let (pt, qt) = hp.twisted_offsets(a_const)?;
    let scale = checked_pow(hp.p, -hp.beta1)?.max(a_const * checked_pow(hp.p, -hp.beta2)?);
    if pt.abs() < 1e-14 * scale {
        return Err(HopfError::ADegenerate(pt));
    }
    let ratio = qt / pt;
    let log_pq = (hp.p * hp.q).ln();
    if ratio.is_nan() || ratio <= 0.0 || log_pq == 0.0 {
        return Err(HopfError::GammaUndefined { ratio });
    }
    let gamma = ratio.ln() / (hp.alpha * log_pq);
    HopfCoefficients::from_gamma(*hp, gamma)
}

/// Every equality the coefficient system imposes, one entry per constraint.
/// Unlike the operator checks, residuals here are relative:
/// `|lhs - rhs| / max(|lhs|, |rhs|)`, compared with `tol` directly. The
/// second return value holds the product `c1 c4` for comparison with
/// `q^{alpha gamma}`.
pub fn check_constraints(hc: &HopfCoefficients, tol: f64) -> (CheckReport, Vec<Diagnostic>) {
    let hp = &hc.params;
    let (p, q, alpha, l) = (hp.p, hp.q, hp.alpha, hp.l);
    let g = hc.gamma;
    let mut r = CheckReport::new();
    let mut eq = |label: &str, lhs: f64, rhs: f64| {
        let scale = lhs.abs().max(rhs.abs());
        let rel = if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).abs() / scale
        };
        r.push(label, rel, tol);
    };

    eq("c1 = p^(-alpha1 gamma)", hc.c(1), p.powf(-hc.alpha1 * g));
    eq("c2 = q^(alpha2 gamma)", hc.c(2), q.powf(hc.alpha2 * g));
    eq("c3 = p^(-alpha3 gamma)", hc.c(3), p.powf(-hc.alpha3 * g));
    eq("c4 = q^(alpha4 gamma)", hc.c(4), q.powf(hc.alpha4 * g));
    eq("c5 = 1", hc.c(5), 1.0);
    eq("c6 = 1", hc.c(6), 1.0);
    eq("c7 = 0", hc.c(7), 0.0);
    eq("c8 = 0", hc.c(8), 0.0);
    eq("c9 = -gamma", hc.c(9), -g);
    eq("c10 = -1", hc.c(10), -1.0);
    eq("c11 = -1", hc.c(11), -1.0);
    eq("c12 = -1", hc.c(12), -1.0);
    eq("c13 = 0", hc.c(13), 0.0);
    eq("alpha1 = alpha3", hc.alpha1, hc.alpha3);
    eq("alpha2 = alpha4", hc.alpha2, hc.alpha4);
    eq("alpha1 + alpha3 = alpha", hc.alpha1 + hc.alpha3, alpha);
    eq("alpha2 + alpha4 = alpha", hc.alpha2 + hc.alpha4, alpha);
    eq(
        "A = p^(-alpha3 l) q^(alpha2 l)",
        hc.a_const,
        p.powf(-hc.alpha3 * l) * q.powf(hc.alpha2 * l),
    );
    eq(
        "A = p^(-alpha1 l) q^(alpha4 l)",
        hc.a_const,
        p.powf(-hc.alpha1 * l) * q.powf(hc.alpha4 * l),
    );
    eq(
        "A = (q/p)^(alpha l/2)",
        hc.a_const,
        (q / p).powf(alpha * l / 2.0),
    );
    eq(
        "c1 c3 = p^(-alpha gamma)",
        hc.c(1) * hc.c(3),
        p.powf(-alpha * g),
    );
    eq(
        "c2 c4 = q^(alpha gamma)",
        hc.c(2) * hc.c(4),
        q.powf(alpha * g),
    );

    let a = hc.a_const;
    let pt = p.powf(-hp.beta1) - a * p.powf(-hp.beta2);
    let qt = q.powf(hp.beta1) - a * q.powf(hp.beta2);
    eq(
        "(pq)^(alpha gamma) (p^-b1 - A p^-b2) = q^b1 - A q^b2",
        (p * q).powf(alpha * g) * pt,
        qt,
    );

    let diags = vec![
        Diagnostic {
            label: "c1 c4".into(),
            value: hc.c(1) * hc.c(4),
        },
        Diagnostic {
            label: "q^(alpha gamma)".into(),
            value: q.powf(alpha * g),
        },
    ];
    (r, diags)
}

fn ensure_consistent(rep: &FockRep, hc: &HopfCoefficients) -> Result<(), HopfError> {
    let rp = rep.params();
    let hp = &hc.params;
    if rp.p() != hp.p
        || rp.q() != hp.q
        || rp.alpha() != hp.alpha
        || rp.l() != hp.l
        || rp.beta() != hp.beta2
    {
        return Err(HopfError::InconsistentParams);
    }
    Ok(())
}

fn ensure_checkable(rep: &FockRep, hc: &HopfCoefficients) -> Result<(), HopfError> {
    ensure_consistent(rep, hc)?;
    if rep.dim() < 3 {
        return Err(HopfError::DimensionTooSmall(rep.dim()));
    }
    Ok(())
}

/// Matrix of an element on the representation.
pub fn element_matrix(rep: &FockRep, e: Element) -> DMatrix<f64> {
    let params = rep.params();
    let (p, q, alpha, beta) = (params.p(), params.q(), params.alpha(), params.beta());
    let y = |k: usize| rep.x(k) - beta;
    let diag = |f: &dyn Fn(usize) -> f64| {
        DMatrix::from_diagonal(&DVector::from_fn(rep.dim(), |k, _| f(k)))
    };
    match e {
        Element::One => DMatrix::identity(rep.dim(), rep.dim()),
        Element::A => rep.a().clone(),
        Element::ADag => rep.a_dag().clone(),
        Element::N => rep.n().clone(),
        Element::PPow(k) => diag(&|i| p.powf(-(k / alpha) * y(i))),
        Element::QPow(k) => diag(&|i| q.powf((k / alpha) * y(i))),
    }
}

/// Number of interior levels per tensor factor.
fn interior(rep: &FockRep) -> usize {
    rep.dim() - 2
}

/// `D(gen)` as a `dim^2 x dim^2` matrix.
pub fn coproduct_matrix(
    rep: &FockRep,
    hc: &HopfCoefficients,
    gen: Element,
) -> Result<DMatrix<f64>, HopfError> {
    ensure_consistent(rep, hc)?;
    let d = rep.dim();
    let mut out = DMatrix::zeros(d * d, d * d);
    for t in hc.coproduct(gen) {
        out += element_matrix(rep, t.left).kronecker(&element_matrix(rep, t.right)) * t.coef;
    }
    Ok(out)
}

/// Sparse accumulator for sums of simple tensors, restricted to input
/// columns whose every factor index is interior.
struct TensorSum {
    dim: usize,
    interior: usize,
    entries: HashMap<(usize, usize), f64>,
}

impl TensorSum {
    fn new(dim: usize, interior: usize) -> Self {
        Self {
            dim,
            interior,
            entries: HashMap::new(),
        }
    }

    fn add(&mut self, coef: f64, factors: &[&DMatrix<f64>]) {
        let nz: Vec<Vec<(usize, usize, f64)>> = factors
            .iter()
            .map(|m| {
                let mut v = Vec::new();
                for j in 0..self.interior {
                    for i in 0..self.dim {
                        let x = m[(i, j)];
                        if x != 0.0 {
                            v.push((i, j, x));
                        }
                    }
                }
                v
            })
            .collect();
        let mut stack = vec![(0usize, 0usize, coef)];
        for level in &nz {
            let mut next = Vec::with_capacity(stack.len() * level.len());
            for &(row, col, c) in &stack {
                for &(i, j, x) in level {
                    next.push((row * self.dim + i, col * self.dim + j, c * x));
                }
            }
            stack = next;
        }
        for (row, col, v) in stack {
            *self.entries.entry((row, col)).or_insert(0.0) += v;
        }
    }

    fn max_abs(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn max_abs_diff(&self, other: &TensorSum) -> f64 {
        let mut m = 0.0f64;
        for (k, v) in &self.entries {
            m = m.max((v - other.entries.get(k).copied().unwrap_or(0.0)).abs());
        }
        for (k, v) in &other.entries {
            if !self.entries.contains_key(k) {
                m = m.max(v.abs());
            }
        }
        m
    }
}

/// `(id (x) D) D(g)` and `(D (x) id) D(g)` for `g` in `{a, a+, N}`.
pub fn check_coassociativity(
    rep: &FockRep,
    hc: &HopfCoefficients,
    tol: f64,
) -> Result<CheckReport, HopfError> {
    ensure_checkable(rep, hc)?;
    let m = |e: Element| element_matrix(rep, e);
    let mut report = CheckReport::new();
    for g in Element::GENERATORS {
        let mut left = TensorSum::new(rep.dim(), interior(rep));
        let mut right = TensorSum::new(rep.dim(), interior(rep));
        for t in hc.coproduct(g) {
            let x = m(t.left);
            for u in hc.coproduct(t.right) {
                left.add(t.coef * u.coef, &[&x, &m(u.left), &m(u.right)]);
            }
            let y = m(t.right);
            for u in hc.coproduct(t.left) {
                right.add(t.coef * u.coef, &[&m(u.left), &m(u.right), &y]);
            }
        }
        let scale = left.max_abs().max(right.max_abs());
        report.push_scaled(
            format!("coassociativity {}", g.name()),
            left.max_abs_diff(&right),
            tol,
            scale,
        );
    }
    Ok(report)
}

/// Both sides of the homomorphism condition on the twisted relation,
/// `D(a)D(a+) - A D(a+)D(a)` and `D(rhs)`, as dense `dim^2 x dim^2` matrices.
pub fn homomorphism_sides(
    rep: &FockRep,
    hc: &HopfCoefficients,
) -> Result<(DMatrix<f64>, DMatrix<f64>), HopfError> {
    ensure_checkable(rep, hc)?;
    let hp = &hc.params;
    let diff = hp.beta1 - hp.beta2;
    if (diff - hp.l).abs() > 1e-12 {
        return Err(HopfError::Beta1Beta2Mismatch(diff, hp.l));
    }
    let a = coproduct_matrix(rep, hc, Element::A)?;
    let ad = coproduct_matrix(rep, hc, Element::ADag)?;
    let lhs = &a * &ad - (&ad * &a) * hc.a_const;

    let (pt, qt) = hp.twisted_offsets(hc.a_const)?;
    let den = rep.params().denominator();
    let d = rep.dim();
    let mut rhs = DMatrix::zeros(d * d, d * d);
    for (weight, e) in [
        (pt, Element::PPow(hp.alpha)),
        (-qt, Element::QPow(hp.alpha)),
    ] {
        for t in hc.coproduct(e) {
            rhs += element_matrix(rep, t.left).kronecker(&element_matrix(rep, t.right))
                * (weight * t.coef / den);
        }
    }
    Ok((lhs, rhs))
}

/// Max absolute entry over input columns with both factor indices interior.
fn max_abs_interior2(m: &DMatrix<f64>, dim: usize, interior: usize) -> f64 {
    let mut out = 0.0f64;
    for j1 in 0..interior {
        for j2 in 0..interior {
            out = out.max(m.column(j1 * dim + j2).amax());
        }
    }
    out
}

/// Homomorphism of the coproduct on the twisted relation. Requires
/// `beta1 - beta2 = l`, the case in which the relation holds on the Fock
/// representation; that is also reported as its own entry.
pub fn check_homomorphism(
    rep: &FockRep,
    hc: &HopfCoefficients,
    tol: f64,
) -> Result<CheckReport, HopfError> {
    let (lhs, rhs) = homomorphism_sides(rep, hc)?;
    let d = rep.dim();
    let inner = interior(rep);
    let scale = max_abs_interior2(&lhs, d, inner).max(max_abs_interior2(&rhs, d, inner));
    let mut report = CheckReport::new();

    // the relation itself, on one copy
    let hp = &hc.params;
    let (pt, qt) = hp.twisted_offsets(hc.a_const)?;
    let den = rep.params().denominator();
    let twisted = rep.a() * rep.a_dag() - (rep.a_dag() * rep.a()) * hc.a_const;
    let rel_rhs = (element_matrix(rep, Element::PPow(hp.alpha)) * pt
        - element_matrix(rep, Element::QPow(hp.alpha)) * qt)
        / den;
    let rel = &twisted - &rel_rhs;
    report.push_scaled(
        "[a,a+]_A - rhs on representation",
        rel.columns(0, inner).amax(),
        tol,
        twisted
            .columns(0, inner)
            .amax()
            .max(rel_rhs.columns(0, inner).amax()),
    );
    report.push_scaled(
        "D(a)D(a+) - A D(a+)D(a) - D(rhs)",
        max_abs_interior2(&(&lhs - &rhs), d, inner),
        tol,
        scale,
    );
    Ok(report)
}

fn counit_apply(rep: &FockRep, hc: &HopfCoefficients, g: Element, left: bool) -> DMatrix<f64> {
    let d = rep.dim();
    let mut out = DMatrix::zeros(d, d);
    for t in hc.coproduct(g) {
        let (kept, dropped) = if left {
            (t.left, t.right)
        } else {
            (t.right, t.left)
        };
        out += element_matrix(rep, kept) * (t.coef * hc.counit(dropped));
    }
    out
}

/// `(id (x) e) D(g) = g` and `(e (x) id) D(g) = g` for `g` in `{a, a+, N, 1}`.
pub fn check_counit(
    hc: &HopfCoefficients,
    rep: &FockRep,
    tol: f64,
) -> Result<CheckReport, HopfError> {
    ensure_checkable(rep, hc)?;
    let inner = interior(rep);
    let mut report = CheckReport::new();
    for g in [Element::A, Element::ADag, Element::N, Element::One] {
        let target = element_matrix(rep, g);
        for (left, label) in [(true, "(id x e)"), (false, "(e x id)")] {
            let got = counit_apply(rep, hc, g, left);
            let diff = (&got - &target).columns(0, inner).amax();
            let scale = got
                .columns(0, inner)
                .amax()
                .max(target.columns(0, inner).amax());
            report.push_scaled(
                format!("{label} D({}) - {}", g.name(), g.name()),
                diff,
                tol,
                scale,
            );
        }
    }
    Ok(report)
}

/// `m (id (x) S) D(g)` (or `m (S (x) id) D(g)` when `antipode_left`).
fn antipode_apply(
    rep: &FockRep,
    hc: &HopfCoefficients,
    g: Element,
    antipode_left: bool,
) -> DMatrix<f64> {
    let d = rep.dim();
    let mut out = DMatrix::zeros(d, d);
    let s = |e: Element| {
        hc.antipode(e)
            .into_iter()
            .fold(DMatrix::zeros(d, d), |acc, (c, x)| {
                acc + element_matrix(rep, x) * c
            })
    };
    for t in hc.coproduct(g) {
        let prod = if antipode_left {
            s(t.left) * element_matrix(rep, t.right)
        } else {
            element_matrix(rep, t.left) * s(t.right)
        };
        out += prod * t.coef;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntipodeReport {
    /// `m(id (x) S)D(g) = m(S (x) id)D(g)`, asserted.
    pub mutual: CheckReport,
    /// `|| m(id (x) S)D(g) - e(g) 1 ||`, reported only.
    pub closure: Vec<Diagnostic>,
}

pub fn check_antipode(
    hc: &HopfCoefficients,
    rep: &FockRep,
    tol: f64,
) -> Result<AntipodeReport, HopfError> {
    ensure_checkable(rep, hc)?;
    let inner = interior(rep);
    let d = rep.dim();
    let mut mutual = CheckReport::new();
    let mut closure = Vec::new();
    for g in [Element::A, Element::ADag, Element::N, Element::One] {
        let right = antipode_apply(rep, hc, g, false);
        let left = antipode_apply(rep, hc, g, true);
        let scale = right
            .columns(0, inner)
            .amax()
            .max(left.columns(0, inner).amax());
        mutual.push_scaled(
            format!("m(id x S)D({0}) - m(S x id)D({0})", g.name()),
            (&right - &left).columns(0, inner).amax(),
            tol,
            scale,
        );
        let unit = DMatrix::<f64>::identity(d, d) * hc.counit(g);
        closure.push(Diagnostic {
            label: format!("m(id x S)D({0}) - e({0}) 1", g.name()),
            value: (&right - &unit).columns(0, inner).amax(),
        });
    }
    Ok(AntipodeReport { mutual, closure })
}
