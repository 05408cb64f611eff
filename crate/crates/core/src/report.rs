//! Named residuals with pass/fail against a tolerance.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub label: String,
    /// Max absolute deviation of the checked identity.
    #[serde(with = "lossless")]
    pub residual: f64,
    /// Effective tolerance: the requested relative tolerance times the
    /// magnitude scale of the operands that entered the identity.
    #[serde(with = "lossless")]
    pub tol: f64,
    pub pass: bool,
}

impl CheckEntry {
    pub fn new(label: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            label: label.into(),
            residual,
            tol,
            pass: residual <= tol,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: impl Into<String>, residual: f64, tol: f64) {
        self.entries.push(CheckEntry::new(label, residual, tol));
    }

    /// Pushes `residual` against `rel_tol * max(1, scale)`.
    pub fn push_scaled(
        &mut self,
        label: impl Into<String>,
        residual: f64,
        rel_tol: f64,
        scale: f64,
    ) {
        self.push(label, residual, rel_tol * scale.max(1.0));
    }

    pub fn get(&self, label: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn residual(&self, label: &str) -> Option<f64> {
        self.get(label).map(|e| e.residual)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// JSON has no NaN or infinity; those go out as the strings `"NaN"`,
/// `"inf"`, `"-inf"` so a failing residual survives a round trip.
pub mod lossless {
    use super::*;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("not a number: `{other}`"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tol() {
        let mut r = CheckReport::new();
        r.push("a", 1e-13, 1e-12);
        r.push("b", 2e-12, 1e-12);
        r.push("nan", f64::NAN, 1.0);
        assert!(r.get("a").unwrap().pass);
        assert!(!r.get("b").unwrap().pass);
        assert!(!r.get("nan").unwrap().pass);
        assert!(!r.all_pass());
    }

    #[test]
    fn scaled_tolerance_has_unit_floor() {
        let mut r = CheckReport::new();
        r.push_scaled("small", 0.0, 1e-10, 1e-3);
        r.push_scaled("big", 0.0, 1e-10, 1e4);
        assert_eq!(r.get("small").unwrap().tol, 1e-10);
        assert_eq!(r.get("big").unwrap().tol, 1e-6);
    }

    #[test]
    fn non_finite_residuals_round_trip() {
        let mut r = CheckReport::new();
        r.push("inf", f64::INFINITY, 1e-10);
        r.push("x", 0.1 + 0.2, 1e-10);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"inf\""));
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        r.push("nan", f64::NAN, 1.0);
        let back: CheckReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert!(back.residual("nan").unwrap().is_nan());
    }
}
