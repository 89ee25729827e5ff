use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// Top-level JSON document emitted by every command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Value,
    pub payload: Value,
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

pub fn render(
    format: Format,
    report: &RunReport,
    headers: &[&str],
    rows: &[Vec<String>],
) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Csv => csv_text(headers, rows),
        Format::Table => table_text(report, headers, rows),
    }
}

fn csv_text(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn table_text(report: &RunReport, headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(
        widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    if let Some(pass) = report.pass {
        out += &format!("pass: {pass}\n");
    }
    if let Some(ms) = report.duration_ms {
        out += &format!("duration: {ms:.3} ms\n");
    }
    out
}
