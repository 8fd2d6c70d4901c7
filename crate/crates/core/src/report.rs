//! Check records and reports, with json, csv and plain-text encodings.
//!
//! Exact values are carried as strings (`"p/q"` or `"p"`), never as floats.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnknownName { name: other.to_string(), known: "text, json, csv".into() }),
        }
    }
}

/// A parameter value: an integer or a short label such as an anchor set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(i64::from(v))
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(i64::try_from(v).expect("parameter fits in i64"))
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, ParamValue); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: Params,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub millis: u64,
}

impl CheckRecord {
    pub fn new(id: &str, params: Params, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckRecord { id: id.to_string(), params, pass: expected == actual, expected, actual, millis: 0 }
    }

    /// A record whose pass flag is decided by the caller rather than by
    /// comparing the two strings.
    pub fn with_pass(id: &str, params: Params, expected: impl ToString, actual: impl ToString, pass: bool) -> Self {
        CheckRecord {
            id: id.to_string(),
            params,
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
            millis: 0,
        }
    }

    /// A failed record for a check that could not be evaluated.
    pub fn error(id: &str, params: Params, expected: impl ToString, err: &Error) -> Self {
        Self::with_pass(id, params, expected, format!("error: {err}"), false)
    }

    fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// Sorts the records into canonical order (by id, then parameters) and
    /// fills in the summary.
    pub fn new(config: RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Report { version: VERSION.to_string(), config, checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per check: `id,params,expected,actual,pass,millis`, with
    /// parameters written as `name=value` joined by `;`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "params", "expected", "actual", "pass", "millis"])?;
        for c in &self.checks {
            w.write_record([
                c.id.as_str(),
                &c.params_string(),
                &c.expected,
                &c.actual,
                if c.pass { "true" } else { "false" },
                &c.millis.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads the check records back from [`Report::to_csv`] output.
    pub fn records_from_csv(s: &str) -> Result<Vec<CheckRecord>> {
        let mut r = csv::Reader::from_reader(s.as_bytes());
        let mut out = Vec::new();
        for row in r.records() {
            let row = row?;
            let field = |i: usize| row.get(i).ok_or_else(|| Error::Parse(format!("missing column {i}")));
            let mut params = Params::new();
            let raw = field(1)?;
            if !raw.is_empty() {
                for pair in raw.split(';') {
                    let (k, v) = pair.split_once('=').ok_or_else(|| Error::Parse(format!("bad parameter {pair:?}")))?;
                    let v = v.parse::<i64>().map(ParamValue::Int).unwrap_or_else(|_| ParamValue::Text(v.into()));
                    params.insert(k.to_string(), v);
                }
            }
            let pass = match field(4)? {
                "true" => true,
                "false" => false,
                other => return Err(Error::Parse(format!("bad pass flag {other:?}"))),
            };
            let millis = field(5)?.parse().map_err(|_| Error::Parse("bad millis".into()))?;
            out.push(CheckRecord {
                id: field(0)?.to_string(),
                params,
                expected: field(2)?.to_string(),
                actual: field(3)?.to_string(),
                pass,
                millis,
            });
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} [{}] expected {} actual {}",
                c.id,
                c.params_string(),
                c.expected,
                c.actual
            ));
            if self.config.timing {
                out.push_str(&format!(" ({} ms)", c.millis));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        out.write_all(self.render(format)?.as_bytes())?;
        Ok(())
    }
}
