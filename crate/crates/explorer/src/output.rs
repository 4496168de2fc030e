use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use ghs_core::dag::GraphJson;
use ghs_core::verify::{ConjectureCase, VerificationReport};
use ghs_core::BigInt;
use serde_json::Value;

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn edges(g: &GraphJson) -> String {
    g.edges
        .iter()
        .map(|[i, j]| format!("{i}>{j}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|x| x.as_str().map(str::to_owned)).collect())
        .unwrap_or_default()
}

fn claim_name(r: &VerificationReport) -> String {
    serde_json::to_value(r.claim)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn verdict_name<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub const REPORT_CSV_HEADER: [&str; 6] = ["claim", "verdict", "n", "d", "edges", "snf"];

pub fn report_csv_row(r: &VerificationReport) -> Vec<String> {
    vec![
        claim_name(r),
        verdict_name(&r.verdict),
        r.instance.graph.n.to_string(),
        ghs_core::decimal::strings(&r.instance.d).join(";"),
        edges(&r.instance.graph),
        strings(&r.witness["snf"]).join(";"),
    ]
}

pub fn report_text(r: &VerificationReport) -> String {
    format!(
        "{:<20} {:<15} n={} d=[{}] edges=[{}] snf=[{}]",
        claim_name(r),
        verdict_name(&r.verdict),
        r.instance.graph.n,
        ghs_core::decimal::strings(&r.instance.d).join(" "),
        edges(&r.instance.graph),
        strings(&r.witness["snf"]).join(" ")
    )
}

pub const CASE_CSV_HEADER: [&str; 6] = ["n", "edges", "p", "r_p", "alphas", "verdict"];

pub fn case_csv_row(c: &ConjectureCase) -> Vec<String> {
    vec![
        c.graph.n.to_string(),
        edges(&c.graph),
        c.p.to_string(),
        c.r_p.to_string(),
        join(&c.alphas, ";"),
        verdict_name(&c.verdict),
    ]
}

pub fn case_text(c: &ConjectureCase) -> String {
    format!(
        "n={} edges=[{}] p={} r_p={} snf=[{}] {}",
        c.graph.n,
        edges(&c.graph),
        c.p,
        c.r_p,
        join(&c.alphas, " "),
        verdict_name(&c.verdict)
    )
}

/// `Z/a ⊕ Z/b ...` over the nonunit factors; `0` for the trivial group.
pub fn group_name(alphas: &[BigInt]) -> String {
    let parts: Vec<String> = alphas
        .iter()
        .filter(|a| *a != &BigInt::from(1))
        .map(|a| format!("Z/{a}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(w)
}
