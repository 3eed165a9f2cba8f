//! Serializable reports. Floats go out as JSON numbers with 17 significant digits.

use std::str::FromStr;

use morse_laplace::verify::SuiteReport;
use morse_laplace::MorseParams;
use serde::{Serialize, Serializer};
use serde_json::Number;

pub const SCHEMA_VERSION: u32 = 1;

/// `{:.16e}` with an explicitly signed exponent, e.g. `-1.0125000000000000e+1`.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

fn ser_fixed<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        Number::from_str(&fixed(*x))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    } else {
        s.serialize_none()
    }
}

fn ser_fixed_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_fixed(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsOut {
    #[serde(serialize_with = "ser_fixed")]
    pub v1: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub v2: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub alpha: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub mass: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub hbar: f64,
}

impl From<&MorseParams> for ParamsOut {
    fn from(p: &MorseParams) -> Self {
        ParamsOut {
            v1: p.v1,
            v2: p.v2,
            alpha: p.alpha,
            mass: p.mass,
            hbar: p.hbar,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GridOut {
    #[serde(serialize_with = "ser_fixed")]
    pub x_min: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Serialize)]
pub struct StateRow {
    pub n: usize,
    #[serde(rename = "S", serialize_with = "ser_fixed")]
    pub s: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub energy: f64,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_fixed_opt"
    )]
    pub numerov: Option<f64>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_fixed_opt"
    )]
    pub rel_err: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct NumerovCheck {
    pub grid: GridOut,
    #[serde(serialize_with = "ser_fixed")]
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: ParamsOut,
    #[serde(rename = "K", serialize_with = "ser_fixed")]
    pub well_strength: f64,
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerov: Option<NumerovCheck>,
    pub states: Vec<StateRow>,
}

#[derive(Debug, Serialize)]
pub struct Sample {
    #[serde(serialize_with = "ser_fixed")]
    pub x: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub xi: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub psi: f64,
}

#[derive(Debug, Serialize)]
pub struct WavefunctionReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: ParamsOut,
    pub n: usize,
    #[serde(rename = "S", serialize_with = "ser_fixed")]
    pub s: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub energy: f64,
    /// `∫ψ² dx` over the whole line.
    #[serde(serialize_with = "ser_fixed")]
    pub norm_check: f64,
    pub sign_changes: usize,
    pub samples: Vec<Sample>,
}

#[derive(Debug, Serialize)]
pub struct TransformReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: usize,
    pub a: String,
    pub b: String,
    pub c0: String,
    pub pole_order: usize,
    /// `c_j`, the coefficient of `s^{j-n-1}`.
    pub coeffs: Vec<String>,
    pub residue: String,
    pub phi0: String,
    /// `Φ(ξ)` coefficients in ascending powers of ξ.
    pub phi: Vec<String>,
    pub ode_residual: &'static str,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport<'a> {
    pub schema_version: u32,
    pub command: &'static str,
    pub quick: bool,
    #[serde(serialize_with = "ser_fixed")]
    pub perturb_energy: f64,
    pub passed: bool,
    pub groups: Vec<GroupOut<'a>>,
}

#[derive(Debug, Serialize)]
pub struct GroupOut<'a> {
    pub name: &'a str,
    pub passed: bool,
    pub checks: Vec<CheckOut<'a>>,
}

#[derive(Debug, Serialize)]
pub struct CheckOut<'a> {
    pub name: &'a str,
    #[serde(serialize_with = "ser_fixed")]
    pub measured: f64,
    #[serde(serialize_with = "ser_fixed")]
    pub tolerance: f64,
    pub passed: bool,
}

impl<'a> VerifyReport<'a> {
    pub fn new(suite: &'a SuiteReport, quick: bool, perturb_energy: f64) -> Self {
        VerifyReport {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            quick,
            perturb_energy,
            passed: suite.passed,
            groups: suite
                .groups
                .iter()
                .map(|g| GroupOut {
                    name: &g.name,
                    passed: g.passed,
                    checks: g
                        .checks
                        .iter()
                        .map(|c| CheckOut {
                            name: &c.name,
                            measured: c.measured,
                            tolerance: c.tolerance,
                            passed: c.passed,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Comma-separated rows with a header, LF line endings.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv::default();
        csv.row(header.iter().map(|h| h.to_string()));
        csv
    }

    pub fn row(&mut self, fields: impl IntoIterator<Item = String>) {
        let fields: Vec<String> = fields.into_iter().collect();
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn comment(&mut self, text: &str) {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        #[derive(Serialize)]
        struct T {
            #[serde(serialize_with = "ser_fixed")]
            x: f64,
            #[serde(serialize_with = "ser_fixed")]
            y: f64,
        }
        let s = serde_json::to_string(&T { x: -10.125, y: 0.1 }).unwrap();
        assert_eq!(
            s,
            r#"{"x":-1.0125000000000000e+1,"y":1.0000000000000001e-1}"#
        );
    }

    #[test]
    fn non_finite_becomes_null() {
        #[derive(Serialize)]
        struct T {
            #[serde(serialize_with = "ser_fixed")]
            x: f64,
        }
        assert_eq!(
            serde_json::to_string(&T { x: f64::NAN }).unwrap(),
            r#"{"x":null}"#
        );
    }

    #[test]
    fn csv_rows() {
        let mut csv = Csv::new(&["a", "b"]);
        csv.row(["1".to_string(), "2".to_string()]);
        csv.comment("note");
        assert_eq!(csv.finish(), "a,b\n1,2\n# note\n");
    }
}
