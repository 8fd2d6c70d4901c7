//! The dimension table over a range of `D`, and the weight-space listing of
//! a single `L_m (x) L_n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::binom;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::hahn::natural_images;
use crate::johnson::{
    default_anchor, terwilliger_blocks, terwilliger_dim_bruteforce, terwilliger_dim_formula, DimensionCase,
};
use crate::rational::Rational;
use crate::report::VERSION;
use crate::sl2::build_tensor_rep;
use crate::weight::{iso_orbit, realize_weight_module, WeightModuleDescriptor};

/// Column order of the csv table.
pub const TABLE_COLUMNS: [&str; 7] = ["D", "k", "case", "dim_formula", "blocks", "dim_bruteforce", "agree"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "D")]
    pub d: u32,
    pub k: u32,
    pub case: DimensionCase,
    pub dim_formula: u64,
    /// Block sizes, largest first, joined by `;`.
    pub blocks: String,
    /// Absent when `C(D,k)` exceeds the cap.
    pub dim_bruteforce: Option<u64>,
    pub agree: bool,
}

/// One row per `(D, k)` with `D_min <= D <= D_max`, `1 <= k <= D-1`.
pub fn table_rows(d_min: u32, d_max: u32, cfg: &RunConfig) -> Result<Vec<TableRow>> {
    if d_min < 2 || d_min > d_max {
        return Err(Error::Config(format!("table needs 2 <= D_min <= D_max, got {d_min}..{d_max}")));
    }
    cfg.validate()?;
    let cases: Vec<(u32, u32)> = (d_min..=d_max).flat_map(|d| (1..d).map(move |k| (d, k))).collect();
    cases
        .into_par_iter()
        .map(|(d, k)| {
            let (case, dim_formula) = terwilliger_dim_formula(d, k)?;
            let structure = terwilliger_blocks(d, k)?;
            let dim_bruteforce = if binom(u64::from(d), u64::from(k)) <= cfg.cap {
                Some(terwilliger_dim_bruteforce(d, k, default_anchor(k), cfg.cap)?)
            } else {
                None
            };
            let agree = structure.wedderburn_dim() == dim_formula && dim_bruteforce.is_none_or(|b| b == dim_formula);
            let blocks = structure.sizes().iter().map(u64::to_string).collect::<Vec<_>>().join(";");
            Ok(TableRow { d, k, case, dim_formula, blocks, dim_bruteforce, agree })
        })
        .collect()
}

pub fn table_to_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.d.to_string(),
            r.k.to_string(),
            r.case.to_string(),
            r.dim_formula.to_string(),
            r.blocks.clone(),
            r.dim_bruteforce.map(|b| b.to_string()).unwrap_or_default(),
            r.agree.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn table_to_text(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:>3} {:>3} {:>4} {:>11} {:>15} {:>14} {:>5}\n",
        "D", "k", "case", "dim_formula", "blocks", "dim_bruteforce", "agree"
    );
    for r in rows {
        let brute = r.dim_bruteforce.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:>3} {:>3} {:>4} {:>11} {:>15} {:>14} {:>5}\n",
            r.d, r.k, r.case, r.dim_formula, r.blocks, brute, r.agree
        ));
    }
    out
}

#[derive(Serialize)]
struct TableJson<'a> {
    version: &'a str,
    rows: &'a [TableRow],
}

pub fn table_to_json(rows: &[TableRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TableJson { version: VERSION, rows })? + "\n")
}

/// One weight space of `L_m (x) L_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeRow {
    pub m: u32,
    pub n: u32,
    pub l: u32,
    pub weight: i64,
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
    pub dim: usize,
    pub orbit: Vec<(u32, u32, u32)>,
    /// Whether the map out of `V_d(a,b)` was built and is an isomorphism.
    pub verified: bool,
}

/// Rows for every `ℓ`, or only for `only_l`.
pub fn decompose_rows(m: u32, n: u32, only_l: Option<u32>) -> Result<Vec<DecomposeRow>> {
    if let Some(l) = only_l {
        if l > m + n {
            return Err(Error::Config(format!("--l {l} exceeds m + n = {}", m + n)));
        }
    }
    let rep = build_tensor_rep(m, n);
    let images = natural_images(&rep);
    (0..=m + n)
        .filter(|l| only_l.is_none_or(|x| x == *l))
        .map(|l| {
            let w = WeightModuleDescriptor::new(m, n, l)?;
            let verified = realize_weight_module(&rep, &images, l).is_ok_and(|r| r.is_isomorphism());
            Ok(DecomposeRow {
                m,
                n,
                l,
                weight: w.weight(),
                a: w.a.clone(),
                b: w.b.clone(),
                d: w.d,
                dim: w.dim,
                orbit: iso_orbit(m, n, l)?.into_iter().collect(),
                verified,
            })
        })
        .collect()
}

fn orbit_string(orbit: &[(u32, u32, u32)]) -> String {
    let items: Vec<String> = orbit.iter().map(|(a, b, c)| format!("({a},{b},{c})")).collect();
    items.join(" ")
}

pub fn decompose_to_text(rows: &[DecomposeRow]) -> String {
    rows.iter()
        .map(|r| {
            format!(
                "l={} weight={} (a,b,d)=({}, {}, {}) dim={} orbit={} {}\n",
                r.l,
                r.weight,
                r.a,
                r.b,
                r.d,
                r.dim,
                orbit_string(&r.orbit),
                if r.verified { "verified" } else { "NOT VERIFIED" }
            )
        })
        .collect()
}

pub fn decompose_to_csv(rows: &[DecomposeRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["m", "n", "l", "weight", "a", "b", "d", "dim", "orbit", "verified"])?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            r.l.to_string(),
            r.weight.to_string(),
            r.a.to_string(),
            r.b.to_string(),
            r.d.to_string(),
            r.dim.to_string(),
            orbit_string(&r.orbit),
            r.verified.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct DecomposeJson<'a> {
    version: &'a str,
    rows: &'a [DecomposeRow],
}

pub fn decompose_to_json(rows: &[DecomposeRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&DecomposeJson { version: VERSION, rows })? + "\n")
}
