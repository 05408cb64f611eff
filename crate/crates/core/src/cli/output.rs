//! Report documents and their JSON / CSV encodings.

use std::fmt;

use serde::de::{MapAccess, SeqAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::hopf::{Diagnostic, HopfCoefficients};
use crate::report::CheckEntry;

/// Numeric table with named columns. In JSON each row is an object whose
/// keys keep column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

struct RowRef<'a>(&'a [String], &'a [f64]);

impl Serialize for RowRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.rows.iter().map(|r| RowRef(&self.columns, r)))
    }
}

/// One row as it appears on the wire, keys in document order.
struct OrderedRow(Vec<(String, f64)>);

impl<'de> Deserialize<'de> for OrderedRow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OrderedRow;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a table row object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<OrderedRow, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, f64>()? {
                    out.push(entry);
                }
                Ok(OrderedRow(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Table;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of table rows")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Table, A::Error> {
                let mut table = Table {
                    columns: Vec::new(),
                    rows: Vec::new(),
                };
                while let Some(OrderedRow(row)) = seq.next_element()? {
                    let keys: Vec<String> = row.iter().map(|(k, _)| k.clone()).collect();
                    if table.rows.is_empty() {
                        table.columns = keys;
                    } else if keys != table.columns {
                        return Err(serde::de::Error::custom(
                            "table rows have differing columns",
                        ));
                    }
                    table.rows.push(row.into_iter().map(|(_, v)| v).collect());
                }
                Ok(table)
            }
        }
        d.deserialize_seq(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    #[serde(with = "crate::report::lossless")]
    pub p: f64,
    #[serde(with = "crate::report::lossless")]
    pub q: f64,
    #[serde(with = "crate::report::lossless")]
    pub alpha: f64,
    #[serde(with = "crate::report::lossless")]
    pub beta: f64,
    #[serde(with = "crate::report::lossless")]
    pub l: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub dim: usize,
    pub n_max: i64,
    pub tol: f64,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsEcho>,
    #[serde(default)]
    pub results: Vec<CheckEntry>,
    /// Reported quantities that do not affect the exit status.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<HopfCoefficients>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Per-point documents of a sweep.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Document>,
    /// Why a sweep point produced no results.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: None,
            results: Vec::new(),
            diagnostics: Vec::new(),
            notes: Vec::new(),
            coefficients: None,
            table: None,
            points: Vec::new(),
            error: None,
            metadata: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.results.iter().all(|e| e.pass)
            && self.points.iter().all(Document::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut sections = Vec::new();
        if !self.points.is_empty() {
            sections.push(sweep_csv(&self.points));
        } else {
            if let Some(t) = &self.table {
                let mut w = writer();
                w.write_record(&t.columns).unwrap();
                for r in &t.rows {
                    w.write_record(r.iter().map(|v| fmt_num(*v))).unwrap();
                }
                sections.push(finish(w));
            }
            sections.push(results_csv(&self.results));
            if let Some(c) = &self.coefficients {
                let mut w = writer();
                w.write_record(["name", "value"]).unwrap();
                for (name, value) in coefficient_rows(c) {
                    w.write_record([name, fmt_num(value)]).unwrap();
                }
                sections.push(finish(w));
            }
        }
        if !self.diagnostics.is_empty() {
            let mut w = writer();
            w.write_record(["diagnostic", "value"]).unwrap();
            for d in &self.diagnostics {
                w.write_record([d.label.clone(), fmt_num(d.value)]).unwrap();
            }
            sections.push(finish(w));
        }
        sections.join("\n")
    }
}

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-5, 1e16)` so tiny residuals stay readable.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

fn results_csv(results: &[CheckEntry]) -> String {
    let mut w = writer();
    w.write_record(["label", "residual", "tol", "pass"])
        .unwrap();
    for e in results {
        w.write_record([
            e.label.clone(),
            fmt_num(e.residual),
            fmt_num(e.tol),
            e.pass.to_string(),
        ])
        .unwrap();
    }
    finish(w)
}

fn sweep_csv(points: &[Document]) -> String {
    let mut w = writer();
    w.write_record([
        "p", "q", "alpha", "beta", "l", "beta1", "beta2", "label", "residual", "tol", "pass",
        "error",
    ])
    .unwrap();
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
    for pt in points {
        let head: Vec<String> = match &pt.params {
            Some(e) => vec![
                fmt_num(e.p),
                fmt_num(e.q),
                fmt_num(e.alpha),
                fmt_num(e.beta),
                fmt_num(e.l),
                opt(e.beta1),
                opt(e.beta2),
            ],
            None => vec![String::new(); 7],
        };
        if let Some(err) = &pt.error {
            let mut rec = head.clone();
            rec.extend(["".into(), "".into(), "".into(), "false".into(), err.clone()]);
            w.write_record(&rec).unwrap();
        }
        for e in &pt.results {
            let mut rec = head.clone();
            rec.extend([
                e.label.clone(),
                fmt_num(e.residual),
                fmt_num(e.tol),
                e.pass.to_string(),
                String::new(),
            ]);
            w.write_record(&rec).unwrap();
        }
    }
    finish(w)
}

fn coefficient_rows(c: &HopfCoefficients) -> Vec<(String, f64)> {
    let mut rows = vec![
        ("alpha1".to_string(), c.alpha1),
        ("alpha2".to_string(), c.alpha2),
        ("alpha3".to_string(), c.alpha3),
        ("alpha4".to_string(), c.alpha4),
        ("A".to_string(), c.a_const),
        ("gamma".to_string(), c.gamma),
    ];
    rows.extend(
        c.c.iter()
            .enumerate()
            .map(|(i, v)| (format!("c{}", i + 1), *v)),
    );
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new("spectrum");
        let mut t = Table::new(&["n", "lambda"]);
        t.rows.push(vec![0.0, 1.0]);
        t.rows.push(vec![1.0, 4.5]);
        d.table = Some(t);
        d.results.push(CheckEntry::new(
            "lambda_n(p,q) - lambda_n(1/q,1/p)",
            0.1 + 0.2 - 0.3,
            1e-11,
        ));
        d
    }

    #[test]
    fn json_round_trip_keeps_column_order() {
        let d = sample();
        let text = d.to_json();
        assert!(text.find("\"n\"").unwrap() < text.find("\"lambda\"").unwrap());
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn csv_sections() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,lambda");
        assert_eq!(lines[1], "0,1");
        assert_eq!(lines[2], "1,4.5");
        assert_eq!(lines[3], "");
        assert_eq!(lines[4], "label,residual,tol,pass");
        assert!(lines[5].starts_with("\"lambda_n(p,q) - lambda_n(1/q,1/p)\","));
    }

    #[test]
    fn numbers_round_trip_through_csv_text() {
        for v in [
            0.0,
            1.0,
            4.5,
            14.249999999999998,
            2.3296483139675417e-16,
            1e-10,
            2.2876787671992e13,
            1e300,
            -3.5e-7,
        ] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_num(1e-10), "1e-10");
        assert_eq!(fmt_num(4.5), "4.5");
    }

    #[test]
    fn empty_results_still_have_header() {
        assert_eq!(Document::new("x").to_csv(), "label,residual,tol,pass\n");
    }

    #[test]
    fn passed_reflects_points_and_errors() {
        let mut d = Document::new("sweep");
        d.points.push(sample());
        assert!(d.passed());
        let mut bad = Document::new("point");
        bad.error = Some("DegenerateDenominator".into());
        d.points.push(bad);
        assert!(!d.passed());
    }
}
