//! File formats for matrices, probability vectors, and measure reports.
//!
//! Matrices travel as JSON documents `{"dim": N, "re": [[..]], "im": [[..]],
//! "kind": "density"|"hermitian"}` with every real written in scientific
//! notation with 17 significant digits, which round-trips doubles losslessly.
//! Probability vectors are either newline-separated reals or a JSON array,
//! autodetected by the first non-blank byte. Reports print with 12
//! significant digits in the human-facing formats and full precision in the
//! structured one. All validation happens at the boundary: nothing invalid
//! is silently coerced.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::classical::ProbVector;
use crate::error::{Error, Result};
use crate::quantum::{ComplexMatrix, DensityMatrix};
use crate::thermo::HermitianObservable;
use crate::tolerance;

/// What a matrix document claims to be, deciding which invariants are
/// enforced on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Density,
    Hermitian,
}

/// On-disk form of a complex square matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<MatrixKind>,
}

impl MatrixDocument {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), Some(MatrixKind::Density))
    }

    pub fn from_hermitian(h: &HermitianObservable) -> Self {
        Self::from_matrix(h.matrix(), Some(MatrixKind::Hermitian))
    }

    pub fn from_matrix(matrix: &ComplexMatrix, kind: Option<MatrixKind>) -> Self {
        let dim = matrix.nrows();
        let grab = |part: fn(&Complex<f64>) -> f64| -> Vec<Vec<f64>> {
            (0..dim)
                .map(|i| (0..dim).map(|j| part(&matrix[(i, j)])).collect())
                .collect()
        };
        Self {
            dim,
            re: grab(|z| z.re),
            im: grab(|z| z.im),
            kind,
        }
    }

    /// Parses and shape-checks a document. Malformed JSON and wrong array
    /// shapes are distinct errors.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix document: {e}")))?;
        doc.check_shape()?;
        Ok(doc)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn check_shape(&self) -> Result<()> {
        for (field, array) in [("re", &self.re), ("im", &self.im)] {
            let bad_row = array.iter().find(|row| row.len() != self.dim);
            if array.len() != self.dim || bad_row.is_some() {
                return Err(Error::ArrayShape {
                    field,
                    dim: self.dim,
                    rows: array.len(),
                    cols: bad_row
                        .or_else(|| array.first())
                        .map_or(0, |row| row.len()),
                });
            }
        }
        Ok(())
    }

    /// The raw complex matrix, with no state invariants enforced.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        self.check_shape()?;
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            Complex::new(self.re[i][j], self.im[i][j])
        }))
    }

    pub fn to_density(&self, tol: f64) -> Result<DensityMatrix> {
        DensityMatrix::with_tolerance(self.to_matrix()?, tol)
    }

    pub fn to_hermitian(&self, tol: f64) -> Result<HermitianObservable> {
        HermitianObservable::with_tolerance(self.to_matrix()?, tol)
    }

    /// Serializes with 17-digit scientific reals.
    pub fn to_json(&self) -> String {
        to_json_sci(self)
    }
}

/// Result of [`load_matrix`]: the document's own `kind` tag picks the type.
#[derive(Debug, Clone)]
pub enum LoadedMatrix {
    Density(DensityMatrix),
    Hermitian(HermitianObservable),
}

/// Loads a matrix document, dispatching on its `kind` tag. Untagged
/// documents are treated as density matrices, the stricter reading.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<LoadedMatrix> {
    let doc = MatrixDocument::from_path(path)?;
    match doc.kind {
        Some(MatrixKind::Hermitian) => Ok(LoadedMatrix::Hermitian(
            doc.to_hermitian(tolerance::STATE)?,
        )),
        _ => Ok(LoadedMatrix::Density(doc.to_density(tolerance::STATE)?)),
    }
}

/// Loads a document as a density matrix, whatever its tag says, validating
/// at `tol`.
pub fn load_density(path: impl AsRef<Path>, tol: f64) -> Result<DensityMatrix> {
    MatrixDocument::from_path(path)?.to_density(tol)
}

/// Loads a document as a Hermitian observable (hermiticity only).
pub fn load_hermitian(path: impl AsRef<Path>, tol: f64) -> Result<HermitianObservable> {
    MatrixDocument::from_path(path)?.to_hermitian(tol)
}

/// Writes a matrix document, newline-terminated.
pub fn write_matrix(path: impl AsRef<Path>, doc: &MatrixDocument) -> Result<()> {
    fs::write(path, format!("{}\n", doc.to_json()))?;
    Ok(())
}

/// Parses a probability vector from either accepted format: a JSON array if
/// the first non-blank byte is `[`, newline-separated reals otherwise.
pub fn parse_prob_vector(text: &str) -> Result<ProbVector> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let values: Vec<f64> = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("probability array: {e}")))?;
        ProbVector::new(values)
    } else {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let entry = line.trim();
            if entry.is_empty() {
                continue;
            }
            values.push(entry.parse::<f64>().map_err(|_| {
                Error::Parse(format!("line {}: invalid real `{entry}`", lineno + 1))
            })?);
        }
        ProbVector::new(values)
    }
}

pub fn load_prob_vector(path: impl AsRef<Path>) -> Result<ProbVector> {
    parse_prob_vector(&fs::read_to_string(path)?)
}

/// One entry per line, 17-digit scientific, lossless through
/// [`parse_prob_vector`].
pub fn prob_vector_to_text(p: &ProbVector) -> String {
    let mut out = String::new();
    for &value in p.probs() {
        out.push_str(&format!("{value:.16e}\n"));
    }
    out
}

pub fn write_prob_vector(path: impl AsRef<Path>, p: &ProbVector) -> Result<()> {
    fs::write(path, prob_vector_to_text(p))?;
    Ok(())
}

/// Named measures and verdicts computed for one input; absent fields are
/// simply omitted from every serialization.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditional: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_pt_eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ppt: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusive: Option<bool>,
}

impl MeasureReport {
    /// Every present real must be finite.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in self.real_fields() {
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue { field });
                }
            }
        }
        Ok(())
    }

    fn real_fields(&self) -> [(&'static str, Option<f64>); 5] {
        [
            ("entropy", self.entropy),
            ("mutual", self.mutual),
            ("conditional", self.conditional),
            ("min_pt_eigenvalue", self.min_pt_eigenvalue),
            ("slack", self.slack),
        ]
    }

    fn rows(&self) -> Vec<(&'static str, String)> {
        let mut rows = Vec::new();
        if let Some(v) = &self.input {
            rows.push(("input", v.clone()));
        }
        if let Some(v) = &self.shape {
            rows.push(("shape", v.clone()));
        }
        for (field, value) in self.real_fields() {
            if let Some(v) = value {
                rows.push((field, format_sig(v, 12)));
            }
        }
        if let Some(v) = self.ppt {
            rows.push(("ppt", v.to_string()));
        }
        if let Some(v) = self.conclusive {
            rows.push(("conclusive", v.to_string()));
        }
        rows
    }
}

/// Serialization targets for [`write_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Structured,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            "structured" => Ok(Self::Structured),
            other => Err(Error::Parse(format!(
                "unknown report format `{other}` (expected text, csv, or structured)"
            ))),
        }
    }
}

/// Deterministic serialization of a report. Field order is fixed; absent
/// fields leave no trace.
pub fn write_report(report: &MeasureReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            for (name, value) in report.rows() {
                out.push_str(&format!("{name}: {value}\n"));
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from("field,value\n");
            for (name, value) in report.rows() {
                out.push_str(&format!("{name},{}\n", csv_cell(&value)));
            }
            out
        }
        ReportFormat::Structured => format!("{}\n", to_json_sci(report)),
    }
}

fn csv_cell(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

/// `%.12g`-style formatting: `sig` significant digits, trailing zeros
/// trimmed, scientific notation outside a comfortable exponent range.
pub fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= sig as i32 {
        let s = format!("{:.*e}", sig - 1, x);
        let (mantissa, exponent) = s.split_once('e').expect("e-notation output");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// JSON with all doubles in 17-digit scientific notation.
pub(crate) fn to_json_sci<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
