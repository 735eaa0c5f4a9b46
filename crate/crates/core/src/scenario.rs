//! Scenario documents (JSON), canonical input digests, and report emission.
//! Reports carry no timestamps or environment data so that identical inputs
//! produce byte-identical outputs.

use crate::algebra::{parse_homogeneous, parse_unipoly, HomogeneousPolynomial};
use crate::connection::LinearSystemBasis;
use crate::curve::ProjectiveCurve;
use crate::error::{GeonevError, Result};
use crate::nevanlinna::{GridSpacing, QuadratureSettings, RadiusGrid};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisDocument {
    pub k: usize,
    pub d: usize,
    #[serde(rename = "S")]
    pub sections: Vec<String>,
}

impl BasisDocument {
    pub fn build(&self) -> Result<LinearSystemBasis> {
        let polys = self
            .sections
            .iter()
            .map(|s| parse_homogeneous(s, self.k + 1))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        LinearSystemBasis::new(self.k, self.d, polys)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDocument {
    pub components: Vec<String>,
}

impl CurveDocument {
    pub fn build(&self) -> Result<ProjectiveCurve> {
        let comps = self
            .components
            .iter()
            .map(|s| parse_unipoly(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ProjectiveCurve::new(comps)
    }
}

/// A hypersurface section: either a raw polynomial string or a vector of
/// span coefficients over the basis sections (length k+1).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Raw(String),
    Span(Vec<String>),
}

impl SigmaSpec {
    pub fn build(&self, basis: &LinearSystemBasis) -> Result<HomogeneousPolynomial> {
        match self {
            SigmaSpec::Raw(s) => {
                let p = parse_homogeneous(s, basis.k + 1)?;
                if p.degree != basis.d {
                    return Err(GeonevError::DegreeMismatch {
                        expected: basis.d,
                        got: p.degree,
                    });
                }
                Ok(p)
            }
            SigmaSpec::Span(coeffs) => {
                if coeffs.len() != basis.k + 1 {
                    return Err(GeonevError::InvalidInput(format!(
                        "span coefficient vector must have length {}",
                        basis.k + 1
                    )));
                }
                let mut acc = HomogeneousPolynomial::zero(basis.k + 1, basis.d);
                for (c, s) in coeffs.iter().zip(basis.sections()) {
                    let p = parse_unipoly(c)?;
                    if p.degree().unwrap_or(0) != 0 {
                        return Err(GeonevError::InvalidInput(format!(
                            "span coefficient must be a constant, got `{c}`"
                        )));
                    }
                    acc = acc.add(&s.scale(&p.coefficient(0)));
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(rename = "rMin")]
    pub r_min: f64,
    #[serde(rename = "rMax")]
    pub r_max: f64,
    pub count: usize,
    /// "log" or "linear"
    pub spacing: String,
}

impl GridSpec {
    pub fn build(&self) -> Result<RadiusGrid> {
        let spacing = match self.spacing.as_str() {
            "log" => GridSpacing::Log,
            "linear" => GridSpacing::Linear,
            other => {
                return Err(GeonevError::InvalidInput(format!(
                    "spacing must be `log` or `linear`, got `{other}`"
                )))
            }
        };
        RadiusGrid::new(self.r_min, self.r_max, self.count, spacing)
    }
}

fn default_epsilon() -> f64 {
    0.1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioDocument {
    pub basis: BasisDocument,
    /// one curve for SMT / functional evaluation, two for uniqueness runs
    pub curves: Vec<CurveDocument>,
    pub sigmas: Vec<SigmaSpec>,
    pub grid: GridSpec,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// growth index c; absent means the curve is treated as entire (c = 0)
    #[serde(rename = "growthIndex", default)]
    pub growth_index: Option<f64>,
}

impl ScenarioDocument {
    pub fn from_path(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&raw)
            .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", path.display())))
    }

    /// SHA-256 of the canonicalized (sorted-key) JSON serialization.
    pub fn digest(&self) -> String {
        content_digest(&serde_json::to_value(self).expect("scenario serializes"))
    }
}

/// Hex SHA-256 of the canonical serialization of a JSON value. serde_json
/// maps are ordered, so serialization is canonical up to float formatting.
pub fn content_digest(value: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(value).expect("value serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hex(&hasher.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// 12 significant digits, the per-radius CSV precision.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Wraps a command-specific body with version, digest and warnings, then
/// pretty-prints with sorted keys.
pub fn report_json(input_digest: &str, body: serde_json::Value, warnings: &[String]) -> String {
    let mut report = serde_json::Map::new();
    report.insert("toolVersion".into(), TOOL_VERSION.into());
    report.insert("inputDigest".into(), input_digest.into());
    report.insert(
        "warnings".into(),
        serde_json::Value::Array(warnings.iter().map(|w| w.as_str().into()).collect()),
    );
    match body {
        serde_json::Value::Object(m) => {
            for (key, value) in m {
                report.insert(key, value);
            }
        }
        other => {
            report.insert("body".into(), other);
        }
    }
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(report))
        .expect("report serializes");
    out.push('\n');
    out
}

pub fn write_report(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", path.display())))
}

/// Builds a CSV table (header + preformatted rows) as a string.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut wtr = csv::WriterBuilder::new().from_writer(Vec::new());
    wtr.write_record(header).expect("csv header");
    for row in rows {
        wtr.write_record(row).expect("csv row");
    }
    String::from_utf8(wtr.into_inner().expect("csv flush")).expect("csv utf8")
}

#[derive(Clone, Copy, Debug)]
pub struct RunSettings {
    pub epsilon: Option<f64>,
    pub quad: QuadratureSettings,
    pub seed: u64,
}
