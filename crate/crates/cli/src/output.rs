use serde_json::{json, Value};
use wk_core::automorphism::StableCounterexample;
use wk_core::kappa::KappaSpec;
use wk_core::{PrimeFactorization, Rational, TauSpec, VerificationReport};

use crate::args::Format;

pub enum Output {
    Value(TauSpec, Rational),
    Kappa(KappaSpec, Rational),
    Factorization {
        quantity: String,
        factorization: PrimeFactorization,
    },
    Report {
        report: VerificationReport,
        ties: Option<u64>,
    },
    Counterexample {
        g: u32,
        p: u64,
        result: StableCounterexample,
    },
    Table(Vec<(TauSpec, Rational)>),
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Report { report, .. } => report.pass,
            _ => true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("json values serialize"),
            Format::Csv => self.csv(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }

    fn text(&self) -> String {
        match self {
            Output::Value(_, v) | Output::Kappa(_, v) => v.to_string(),
            Output::Factorization { factorization, .. } => factorization.to_string(),
            Output::Report { report, ties } => match ties {
                Some(t) => format!("{report}\n  equalities: {t}"),
                None => report.to_string(),
            },
            Output::Counterexample { result, .. } => format!(
                "n={} ord_lower_bound={} exceeds={}",
                result.n, result.ord_lower_bound, result.exceeds
            ),
            Output::Table(rows) => rows
                .iter()
                .map(|(s, v)| format!("{s} = {v}"))
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Output::Value(spec, v) => json!({
                "g": spec.genus(),
                "exponents": spec.exponents(),
                "value": rational(v),
            }),
            Output::Kappa(spec, v) => json!({
                "g": spec.genus(),
                "indices": spec.indices(),
                "value": rational(v),
            }),
            Output::Factorization {
                quantity,
                factorization,
            } => json!({
                "quantity": quantity,
                "factorization": factorization.to_string(),
                "value": {"num": factorization.to_biguint().to_string(), "den": "1"},
            }),
            Output::Report { report, .. } => serde_json::to_value(report).expect("report serializes"),
            Output::Counterexample { g, p, result } => json!({
                "g": g,
                "p": p,
                "n": result.n,
                "ord_lower_bound": result.ord_lower_bound,
                "exceeds": result.exceeds,
            }),
            Output::Table(rows) => Value::Array(
                rows.iter()
                    .map(|(s, v)| json!({"g": s.genus(), "exponents": s.exponents(), "value": rational(v)}))
                    .collect(),
            ),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |fields: &[String]| w.write_record(fields).expect("in-memory write");
        let tau_row = |s: &TauSpec, v: &Rational| {
            vec![
                s.genus().to_string(),
                s.n().to_string(),
                join(s.exponents()),
                v.numer().to_string(),
                v.denom().to_string(),
            ]
        };
        let tau_header = ["g", "n", "exponents", "numerator", "denominator"].map(String::from);
        match self {
            Output::Value(s, v) => {
                row(&tau_header);
                row(&tau_row(s, v));
            }
            Output::Table(rows) => {
                row(&tau_header);
                for (s, v) in rows {
                    row(&tau_row(s, v));
                }
            }
            Output::Kappa(s, v) => {
                row(&["g", "indices", "numerator", "denominator"].map(String::from));
                row(&[
                    s.genus().to_string(),
                    join(s.indices()),
                    v.numer().to_string(),
                    v.denom().to_string(),
                ]);
            }
            Output::Factorization {
                quantity,
                factorization,
            } => {
                row(&["quantity", "factorization", "value"].map(String::from));
                row(&[
                    quantity.clone(),
                    factorization.to_string(),
                    factorization.to_biguint().to_string(),
                ]);
            }
            Output::Report { report, .. } => {
                row(&["claim", "instances", "pass", "instance", "expected", "actual"].map(String::from));
                if report.witnesses.is_empty() {
                    row(&[
                        report.claim.clone(),
                        report.instances.to_string(),
                        report.pass.to_string(),
                    ]
                    .into_iter()
                    .chain(std::iter::repeat_n(String::new(), 3))
                    .collect::<Vec<_>>());
                }
                for wi in &report.witnesses {
                    row(&[
                        report.claim.clone(),
                        report.instances.to_string(),
                        report.pass.to_string(),
                        wi.instance.clone(),
                        wi.expected.clone(),
                        wi.actual.clone(),
                    ]);
                }
            }
            Output::Counterexample { g, p, result } => {
                row(&["g", "p", "n", "ord_lower_bound", "exceeds"].map(String::from));
                row(&[
                    g.to_string(),
                    p.to_string(),
                    result.n.to_string(),
                    result.ord_lower_bound.to_string(),
                    result.exceeds.to_string(),
                ]);
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

fn rational(v: &Rational) -> Value {
    json!({"num": v.numer().to_string(), "den": v.denom().to_string()})
}

// space-separated, so the CSV field needs no quoting
fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}
