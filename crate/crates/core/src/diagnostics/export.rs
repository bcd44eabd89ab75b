//! CSV tables with full-precision decimal cells and JSON sidecars.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::distance::LogDistance;
use super::orbit::{Orbit, OrbitSample, OrbitSource, SingularEvent};
use crate::coords::SfuState;
use crate::maps::PlaneState;
use crate::numerics::{format_rational, parse_rational, BigReal, ParamsRecord, Rational, Real};
use crate::{Error, Result};

/// Decimal text that parses back to the same value at the same precision.
pub trait DecimalRepr: Sized {
    fn to_decimal(&self) -> String;
    fn from_decimal(s: &str, like: &Self) -> Result<Self>;
}

impl DecimalRepr for BigReal {
    fn to_decimal(&self) -> String {
        self.to_decimal_string()
    }
    fn from_decimal(s: &str, like: &Self) -> Result<Self> {
        BigReal::parse(s, like.precision())
    }
}

impl DecimalRepr for f64 {
    fn to_decimal(&self) -> String {
        format!("{self:e}")
    }
    fn from_decimal(s: &str, _like: &Self) -> Result<Self> {
        s.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

impl DecimalRepr for Rational {
    fn to_decimal(&self) -> String {
        format_rational(self)
    }
    fn from_decimal(s: &str, _like: &Self) -> Result<Self> {
        parse_rational(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(input);
        let header = rdr.headers()?.iter().map(str::to_string).collect();
        let rows = rdr
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(CsvTable { header, rows })
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        self.write_to(std::fs::File::create(path)?)
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        Self::read_from(std::fs::File::open(path)?)
    }
}

fn opt<T: DecimalRepr>(v: Option<&T>) -> String {
    v.map(DecimalRepr::to_decimal).unwrap_or_default()
}

/// Columns n, x, y, s, f, u; the sfu cells are empty where x = 0.
pub fn orbit_table<T: DecimalRepr>(orbit: &Orbit<T>) -> CsvTable {
    let mut t = CsvTable::new(&["n", "x", "y", "s", "f", "u"]);
    for s in &orbit.samples {
        let sfu = s.sfu.as_ref();
        t.push(vec![
            s.n.to_string(),
            s.plane.x.to_decimal(),
            s.plane.y.to_decimal(),
            opt(sfu.map(|v| &v.s)),
            opt(sfu.map(|v| &v.f)),
            opt(sfu.map(|v| &v.u)),
        ]);
    }
    t
}

/// Inverse of [`orbit_table`]; values are read at the precision of `like`.
pub fn parse_orbit_table<T: DecimalRepr>(table: &CsvTable, like: &T) -> Result<Vec<OrbitSample<T>>> {
    let col = |name: &str| table.column(name).ok_or_else(|| Error::Parse(format!("missing column {name:?}")));
    let [n, x, y, s, f, u] = [col("n")?, col("x")?, col("y")?, col("s")?, col("f")?, col("u")?];
    table
        .rows
        .iter()
        .map(|row| {
            let cell = |k: usize| row.get(k).map(String::as_str).ok_or_else(|| Error::Parse("short row".into()));
            let num = |k: usize| T::from_decimal(cell(k)?, like);
            let sfu = if cell(s)?.is_empty() {
                None
            } else {
                Some(SfuState::new(num(s)?, num(f)?, num(u)?))
            };
            Ok(OrbitSample {
                n: cell(n)?.parse().map_err(|e| Error::Parse(format!("n: {e}")))?,
                plane: PlaneState::new(num(x)?, num(y)?),
                sfu,
            })
        })
        .collect()
}

/// Columns n and `name`, one row per entry.
pub fn series_table<T: DecimalRepr>(name: &str, values: &[(i64, T)]) -> CsvTable {
    let mut t = CsvTable::new(&["n", name]);
    for (n, v) in values {
        t.push(vec![n.to_string(), v.to_decimal()]);
    }
    t
}

/// Columns n, delta, slope; the slope cell holds delta_{n+1} - delta_n and
/// `exact` marks identical points.
pub fn log_distance_table<T: DecimalRepr + Real>(delta: &[(i64, LogDistance<T>)], slope: &[(i64, T)]) -> CsvTable {
    let mut t = CsvTable::new(&["n", "delta", "slope"]);
    for (n, d) in delta {
        let dcell = match d {
            LogDistance::Exact => "exact".to_string(),
            LogDistance::Value(v) => v.to_decimal(),
        };
        let scell = slope.iter().find(|(m, _)| m == n).map(|(_, v)| v.to_decimal()).unwrap_or_default();
        t.push(vec![n.to_string(), dcell, scell]);
    }
    t
}

/// JSON sidecar written next to every CSV. Carries no timestamps so that a
/// repeated run reproduces it byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsRecord>,
    pub config: serde_json::Value,
    /// sha256 of the compact JSON encoding of `config`.
    pub config_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<OrbitSource>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub singular_events: Vec<SingularEvent>,
    /// Scalar results that do not fit the table (turnaround indices, b_1^2, ...).
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub results: serde_json::Value,
}

pub fn config_digest(config: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(config).expect("JSON values always serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunMetadata {
    pub fn new(command: &str, config: serde_json::Value, params: Option<ParamsRecord>) -> Self {
        RunMetadata {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params,
            config_sha256: config_digest(&config),
            config,
            source: None,
            singular_events: Vec::new(),
            results: serde_json::Value::Null,
        }
    }

    pub fn with_orbit<T>(mut self, orbit: &Orbit<T>) -> Self {
        self.source = Some(orbit.source.clone());
        self.singular_events = orbit.events.clone();
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata always serializes")
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}

/// `out.csv` -> `out.csv.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut s = csv_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}
