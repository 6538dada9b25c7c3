//! On-disk formats: witness JSON files and ratio-table CSV.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::RatioRow;
use crate::constructions::{CoveringWitness, PackingWitness, Provenance, Verification};
use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::spaces::{SpaceDescriptor, Vector};

/// Column order of ratio-table CSV files.
pub const CSV_HEADER: [&str; 10] = [
    "n",
    "k",
    "regime",
    "lower",
    "lower_method",
    "upper",
    "upper_method",
    "rate",
    "lower_over_rate",
    "upper_over_rate",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Cover,
    Packing,
}

/// Flat JSON form shared by covers and packings. For a cover `p` is the
/// target ball and `q` the covering metric; for a packing `p` is the host
/// ball and `q` the separation metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub kind: WitnessKind,
    pub n: usize,
    pub p: Exponent,
    pub q: Exponent,
    pub radius_or_separation: f64,
    pub verified: Verification,
    pub provenance: Provenance,
    pub seed: Option<u64>,
    pub points: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Cover(CoveringWitness),
    Packing(PackingWitness),
}

impl From<&CoveringWitness> for WitnessFile {
    fn from(w: &CoveringWitness) -> Self {
        WitnessFile {
            kind: WitnessKind::Cover,
            n: w.target.n(),
            p: w.target.p(),
            q: w.metric_q,
            radius_or_separation: w.radius,
            verified: w.verified,
            provenance: w.provenance.clone(),
            seed: w.seed,
            points: w.centers.iter().map(|c| c.as_slice().to_vec()).collect(),
        }
    }
}

/// Packings carry no verification state of their own; the file records
/// `proven` when [`PackingWitness::validate`] passes.
impl From<&PackingWitness> for WitnessFile {
    fn from(w: &PackingWitness) -> Self {
        WitnessFile {
            kind: WitnessKind::Packing,
            n: w.host.n(),
            p: w.host.p(),
            q: w.metric_q,
            radius_or_separation: w.separation,
            verified: if w.validate().is_ok() {
                Verification::Proven
            } else {
                Verification::Unverified
            },
            provenance: w.provenance.clone(),
            seed: w.seed,
            points: w.points.iter().map(|c| c.as_slice().to_vec()).collect(),
        }
    }
}

impl From<&Witness> for WitnessFile {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Cover(c) => c.into(),
            Witness::Packing(p) => p.into(),
        }
    }
}

impl WitnessFile {
    pub fn into_witness(self) -> Result<Witness> {
        let space = SpaceDescriptor::new(self.n, self.p)?;
        let value = self.radius_or_separation;
        if !(value.is_finite() && value >= 0.0) {
            return domain(format!("radius_or_separation must be finite and >= 0, got {value}"));
        }
        let points = self
            .points
            .into_iter()
            .map(|c| {
                if c.len() != space.n() {
                    return Err(Error::DimensionMismatch { expected: space.n(), got: c.len() });
                }
                Vector::new(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(match self.kind {
            WitnessKind::Cover => Witness::Cover(CoveringWitness {
                centers: points,
                radius: value,
                target: space,
                metric_q: self.q,
                verified: self.verified,
                provenance: self.provenance,
                seed: self.seed,
            }),
            WitnessKind::Packing => Witness::Packing(PackingWitness {
                points,
                host: space,
                metric_q: self.q,
                separation: value,
                provenance: self.provenance,
                seed: self.seed,
            }),
        })
    }
}

pub fn witness_to_json(w: &Witness) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&WitnessFile::from(w))?;
    s.push('\n');
    Ok(s)
}

pub fn witness_from_json(s: &str) -> Result<Witness> {
    serde_json::from_str::<WitnessFile>(s)?.into_witness()
}

pub fn write_witness(path: &Path, w: &Witness) -> Result<()> {
    let s = witness_to_json(w)?;
    fs::write(path, s).map_err(|source| Error::Io { path: path.into(), source })
}

pub fn read_witness(path: &Path) -> Result<Witness> {
    let s = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    witness_from_json(&s)
}

/// Shortest round-trip decimal; exponent notation outside `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Ratio table as CSV with [`CSV_HEADER`].
pub fn write_ratio_csv<W: Write>(rows: &[RatioRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io {
        path: "<csv>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.regime.as_str().to_string(),
            format_float(r.lower),
            r.lower_method.as_str().to_string(),
            format_float(r.upper),
            r.upper_method.as_str().to_string(),
            format_float(r.rate),
            format_float(r.lower_over_rate),
            format_float(r.upper_over_rate),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|source| Error::Io { path: "<csv>".into(), source })
}
