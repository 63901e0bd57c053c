//! Report assembly and rendering (JSON and aligned text).

use amalgam_core::checks::{Status, Witness};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::run::Record;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// SHA-256 of the input file, hex encoded.
pub fn digest(input: &str) -> String {
    let hash = Sha256::digest(input.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub version: &'static str,
    pub digest: String,
    pub seed: u64,
    pub checks: Vec<CheckJson<'a>>,
}

#[derive(Serialize)]
pub struct CheckJson<'a> {
    pub name: &'a str,
    pub label: &'a str,
    pub anchor: &'a str,
    pub status: &'static str,
    pub reason: Option<&'a str>,
    pub witnesses: Witnesses<'a>,
    pub wall_ms: Option<f64>,
}

/// Witnesses in their recorded order.
pub struct Witnesses<'a>(&'a [(String, Witness)]);

fn witness_json(w: &Witness) -> serde_json::Value {
    use serde_json::Value as J;
    match w {
        Witness::Bool(b) => J::Bool(*b),
        Witness::Int(n) => J::from(*n),
        Witness::Ints(v) => J::from(v.clone()),
        Witness::Vectors(v) => J::Array(v.iter().map(|x| J::from(x.clone())).collect()),
        Witness::Text(s) => J::String(s.clone()),
    }
}

impl Serialize for Witnesses<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &witness_json(v))?;
        }
        m.end()
    }
}

pub fn assemble<'a>(input: &str, seed: u64, records: &'a [Record]) -> Report<'a> {
    Report {
        version: VERSION,
        digest: digest(input),
        seed,
        checks: records
            .iter()
            .map(|r| CheckJson {
                name: &r.result.name,
                label: &r.label,
                anchor: &r.result.anchor,
                status: r.result.status.as_str(),
                reason: r.result.reason.as_deref(),
                witnesses: Witnesses(&r.result.witnesses),
                wall_ms: r.wall_ms,
            })
            .collect(),
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Betti numbers as a header row `β₀ β₁ …` over a row of values.
pub fn betti_rows(betti: &[u64]) -> (String, String) {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let heads: Vec<String> = (0..betti.len())
        .map(|i| {
            let digits: String = i.to_string().chars().map(|c| SUB[c.to_digit(10).unwrap_or(0) as usize]).collect();
            format!("β{digits}")
        })
        .collect();
    let vals: Vec<String> = betti.iter().map(u64::to_string).collect();
    let widths: Vec<usize> = heads.iter().zip(&vals).map(|(h, v)| h.chars().count().max(v.len())).collect();
    let pad = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    (pad(&heads), pad(&vals))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Bool(b) => b.to_string(),
        Witness::Int(n) => n.to_string(),
        Witness::Ints(v) => format!("{v:?}"),
        Witness::Vectors(v) => format!("{v:?}"),
        Witness::Text(s) => s.clone(),
    }
}

pub fn to_text(report: &Report, records: &[Record]) -> String {
    let mut out = format!("amalgam {}  digest {}  seed {}\n\n", report.version, report.digest, report.seed);
    let lw = records.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
    for r in records {
        let status = match r.result.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let time = r.wall_ms.map(|t| format!("  ({t:.1} ms)")).unwrap_or_default();
        out.push_str(&format!("{status}  {:<lw$}  {}{time}\n", r.label, r.result.anchor, lw = lw));
        if let Some(reason) = &r.result.reason {
            out.push_str(&format!("      reason: {reason}\n"));
        }
        let kw = r.result.witnesses.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, w) in &r.result.witnesses {
            match w {
                Witness::Ints(b) if k.starts_with("betti") => {
                    let (h, v) = betti_rows(b);
                    out.push_str(&format!("      {k:<kw$}  {h}\n      {:<kw$}  {v}\n", ""));
                }
                _ => out.push_str(&format!("      {k:<kw$}  {}\n", witness_text(w))),
            }
        }
    }
    let count = |s: Status| records.iter().filter(|r| r.result.status == s).count();
    out.push_str(&format!(
        "\n{} passed, {} failed, {} skipped\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_table_has_one_column_per_entry() {
        let (h, v) = betti_rows(&[1, 2, 3, 4]);
        assert_eq!(h.split_whitespace().count(), 4);
        assert_eq!(v.split_whitespace().collect::<Vec<_>>(), ["1", "2", "3", "4"]);
        assert!(h.starts_with("β₀"));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("").len(), 64);
        assert_eq!(digest("abc"), digest("abc"));
    }
}
