//! JSON interchange formats.
//!
//! Matrices: `{"rows": m, "cols": n, "data": [[[re,im],...],...]}` with one
//! inner list per row. Spectra: `{"values": [...]}` where each value is a
//! JSON number (floating) or a string holding an exact rational such as
//! `"3/4"`; rational strings round-trip exactly in canonical reduced form.
//! Kraus families: `{"m": .., "n": .., "operators": [matrix, ...]}`.
//!
//! Serialization for files and stdout goes through a formatter that prints
//! every float with 17 significant digits, so identical data produces
//! byte-identical output.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausRep;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, Spectrum};
use crate::rational::{format_rational, parse_rational};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| [m[(i, j)].re, m[(i, j)].im])
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.data.len() != self.rows || self.data.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Dimension(format!(
                "data shape does not match {}x{}",
                self.rows, self.cols
            )));
        }
        let entries = self
            .data
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        ComplexMatrix::from_entries(self.rows, self.cols, entries)
    }
}

/// One spectrum entry: exact rationals as strings, floats as numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumValueJson {
    Number(f64),
    Rational(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub values: Vec<SpectrumValueJson>,
}

impl SpectrumJson {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let values = match s.exact() {
            Some(ex) => ex
                .iter()
                .map(|r| SpectrumValueJson::Rational(format_rational(r)))
                .collect(),
            None => s
                .values()
                .iter()
                .map(|&v| SpectrumValueJson::Number(v))
                .collect(),
        };
        Self { values }
    }

    /// Mixed inputs rationalize the floating entries so the result stays
    /// exact end to end.
    pub fn to_spectrum(&self, tols: &Tolerances) -> Result<Spectrum> {
        if self.values.is_empty() {
            return Err(Error::Dimension("spectrum has no values".into()));
        }
        let any_rational = self
            .values
            .iter()
            .any(|v| matches!(v, SpectrumValueJson::Rational(_)));
        if any_rational {
            let vals = self
                .values
                .iter()
                .map(|v| match v {
                    SpectrumValueJson::Rational(s) => parse_rational(s),
                    SpectrumValueJson::Number(x) => {
                        Ok(crate::rational::rationalize(*x, tols.rat_den_cap))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Spectrum::from_rationals(vals))
        } else {
            let vals = self
                .values
                .iter()
                .map(|v| match v {
                    SpectrumValueJson::Number(x) => *x,
                    SpectrumValueJson::Rational(_) => unreachable!(),
                })
                .collect();
            Ok(Spectrum::from_f64s(vals))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KrausJson {
    pub m: usize,
    pub n: usize,
    pub operators: Vec<MatrixJson>,
}

impl KrausJson {
    pub fn from_kraus(k: &KrausRep) -> Self {
        Self {
            m: k.m(),
            n: k.n(),
            operators: k.operators().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_kraus(&self, tols: &Tolerances) -> Result<KrausRep> {
        let ops = self
            .operators
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?;
        KrausRep::new(self.m, self.n, ops, tols)
    }
}

/// Parse a density matrix (with optional split attached by the caller).
pub fn density_from_json(text: &str, tols: &Tolerances) -> Result<DensityMatrix> {
    let mj: MatrixJson = serde_json::from_str(text)?;
    DensityMatrix::from_matrix(mj.to_matrix()?, tols)
}

pub fn matrix_from_json(text: &str) -> Result<ComplexMatrix> {
    let mj: MatrixJson = serde_json::from_str(text)?;
    mj.to_matrix()
}

pub fn spectrum_from_json(text: &str, tols: &Tolerances) -> Result<Spectrum> {
    let sj: SpectrumJson = serde_json::from_str(text)?;
    sj.to_spectrum(tols)
}

/// serde_json formatter printing every f64 in scientific notation with 17
/// significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: std::io::Write + ?Sized,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize with deterministic float formatting (plus trailing newline).
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}
