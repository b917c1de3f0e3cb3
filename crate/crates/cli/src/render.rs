use std::fmt::Write as _;

use clap::ValueEnum;
use delpezzo_core::OutputEnvelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

pub fn render(env: &OutputEnvelope, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(env)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => csv_table(env),
        Format::Md => Ok(markdown(env)),
    }
}

fn csv_table(env: &OutputEnvelope) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&env.columns).map_err(|e| e.to_string())?;
    for row in &env.rows {
        w.write_record(row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn escape(cell: &str) -> String {
    cell.replace('|', "\\|")
}

fn markdown(env: &OutputEnvelope) -> String {
    let mut out = String::new();
    let _ = write!(out, "## {}", env.command);
    if let Some(d) = env.degree {
        let _ = write!(out, " (d = {d})");
    }
    out.push_str("\n\n");
    if !env.parameters.is_empty() {
        for (k, v) in &env.parameters {
            let _ = writeln!(out, "- {k}: {v}");
        }
        out.push('\n');
    }
    if !env.columns.is_empty() {
        let header: Vec<String> = env.columns.iter().map(|c| escape(c)).collect();
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(env.columns.len()));
        for row in &env.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out.push('\n');
    }
    for (k, v) in &env.summary {
        let _ = writeln!(out, "**{k}**: {v}  ");
    }
    if !env.provenance.is_empty() {
        out.push('\n');
        for p in &env.provenance {
            let _ = writeln!(out, "> {p}");
        }
    }
    out
}
