//! Output formats for enumerations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use vvmf_core::search::{Enumeration, SearchStats, TypeEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format '{other}' (text, json, csv, markdown)")),
        }
    }
}

/// The JSON document written by `enumerate --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationDoc {
    pub dimension: u32,
    pub total: usize,
    pub stats: SearchStats,
    pub types: Vec<TypeEntry>,
}

impl From<&Enumeration> for EnumerationDoc {
    fn from(e: &Enumeration) -> Self {
        EnumerationDoc {
            dimension: e.dimension,
            total: e.types.len(),
            stats: e.stats.clone(),
            types: e.types.clone(),
        }
    }
}

pub fn total_line(n: usize) -> String {
    format!("Total number of types: {n}")
}

pub fn bracketed<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn comma_list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    parts.join(",")
}

fn k1_range(t: &TypeEntry) -> Option<(i64, i64)> {
    let lo = t.realizations.iter().map(|r| r.k1).min()?;
    let hi = t.realizations.iter().map(|r| r.k1).max()?;
    Some((lo, hi))
}

pub fn render(doc: &EnumerationDoc, format: Format) -> String {
    match format {
        Format::Text => render_text(doc),
        Format::Json => render_json(doc),
        Format::Csv => render_csv(doc),
        Format::Markdown => render_markdown(doc),
    }
}

fn render_text(doc: &EnumerationDoc) -> String {
    let mut out = String::new();
    for t in &doc.types {
        let (lo, hi) = k1_range(t).unwrap_or((0, 0));
        let _ = writeln!(
            out,
            "{:<32} type {:<40} k1 in [{lo}, {hi}], {} realizations",
            bracketed(&t.mults),
            bracketed(&t.type_tuple),
            t.realizations.len()
        );
    }
    let _ = writeln!(out, "{}", total_line(doc.total));
    out
}

pub fn render_json(doc: &EnumerationDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("enumeration serializes");
    s.push('\n');
    s
}

fn render_csv(doc: &EnumerationDoc) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dimension", "length", "mults", "type", "k1_min", "k1_max", "realizations"])
        .expect("write to memory");
    for t in &doc.types {
        let (lo, hi) = k1_range(t).unwrap_or((0, 0));
        w.write_record([
            doc.dimension.to_string(),
            t.mults.len().to_string(),
            comma_list(&t.mults),
            comma_list(&t.type_tuple),
            lo.to_string(),
            hi.to_string(),
            t.realizations.len().to_string(),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// Columns of tuples grouped by length, longest first.
fn render_markdown(doc: &EnumerationDoc) -> String {
    let mut groups: BTreeMap<usize, Vec<&Vec<u32>>> = BTreeMap::new();
    for t in &doc.types {
        groups.entry(t.mults.len()).or_default().push(&t.mults);
    }
    let columns: Vec<(usize, Vec<&Vec<u32>>)> = groups.into_iter().rev().collect();
    let mut out = String::new();
    let header: Vec<String> = columns
        .iter()
        .map(|(len, _)| match len {
            1 => "[m_1]".to_string(),
            2 => "[m_1, m_2]".to_string(),
            3 => "[m_1, m_2, m_3]".to_string(),
            n => format!("[m_1, ..., m_{n}]"),
        })
        .collect();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
    let rows = columns.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    for i in 0..rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|(_, c)| c.get(i).map(|m| bracketed(m)).unwrap_or_default())
            .collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{}", total_line(doc.total));
    out
}
