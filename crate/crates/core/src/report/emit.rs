use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;

use super::{format_rational, ErrorTable, OutputFormat, ReportError};
use crate::scalar::{parse_decimal, ExtendedFloat};

pub const CSV_HEADER: &str = "t,m,x,percent_relative_error";
pub const SIGNIFICANT_DIGITS: usize = 10;
const UNDEFINED: &str = "undefined";

fn cell_text(v: Option<&ExtendedFloat>) -> String {
    v.map_or_else(|| UNDEFINED.to_string(), |v| v.to_sci_string(SIGNIFICANT_DIGITS))
}

/// One line per cell, ordered by t, m, x.
pub fn render_csv(table: &ErrorTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in table.cells() {
        writeln!(out, "{},{},{},{}", format_rational(c.t), c.m, format_rational(c.x), cell_text(c.value)).unwrap();
    }
    out
}

/// A row per `(t, m)` and a column per x, with t shown on the first row of each group.
pub fn render_markdown(table: &ErrorTable) -> String {
    let mut out = String::from("| t | S_m |");
    for x in table.xs() {
        write!(out, " x = {} |", format_rational(x)).unwrap();
    }
    out.push_str("\n|---|---|");
    out.push_str(&"---|".repeat(table.xs().len()));
    out.push('\n');
    for (ti, t) in table.ts().iter().enumerate() {
        for (mi, m) in table.orders().iter().enumerate() {
            let t_text = if mi == 0 { format_rational(t) } else { String::new() };
            write!(out, "| {t_text} | S{m} |").unwrap();
            for xi in 0..table.xs().len() {
                write!(out, " {} |", cell_text(table.get(ti, mi, xi))).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// `case,m,max_percent_relative_error`: the grid maximum for each order.
pub fn render_plot_data(tables: &[(&str, &ErrorTable)]) -> String {
    let mut out = String::from("case,m,max_percent_relative_error\n");
    for (label, table) in tables {
        for (m, max) in table.max_by_order() {
            writeln!(out, "{label},{m},{}", cell_text(max.as_ref())).unwrap();
        }
    }
    out
}

pub fn render_table(table: &ErrorTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(table),
        OutputFormat::Markdown => render_markdown(table),
    }
}

/// Path of the plot-data file written next to a table file.
pub fn plot_data_path(table_path: &Path) -> std::path::PathBuf {
    let mut name = table_path.file_stem().unwrap_or_default().to_os_string();
    name.push(".plot.csv");
    table_path.with_file_name(name)
}

/// Writes the table in the requested format plus the plot-data file beside it.
pub fn emit_table(table: &ErrorTable, label: &str, format: OutputFormat, path: &Path) -> Result<(), ReportError> {
    write_file(path, &render_table(table, format))?;
    write_file(&plot_data_path(path), &render_plot_data(&[(label, table)]))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    std::fs::write(path, contents).map_err(|e| ReportError::Io { path: path.to_path_buf(), message: e.to_string() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub t: BigRational,
    pub m: usize,
    pub x: BigRational,
    /// Exact value of the printed decimal; `None` for undefined cells.
    pub value: Option<BigRational>,
}

/// Reads back what [`render_csv`] writes.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, ReportError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(ReportError::Csv { line: 1, message: format!("expected header {CSV_HEADER:?}") }),
    }
    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let bad = |message: String| ReportError::Csv { line, message };
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        let [t, m, x, v] = fields[..] else {
            return Err(bad(format!("expected 4 fields, got {}", fields.len())));
        };
        let num = |s: &str| {
            parse_decimal(s)
                .or_else(|| s.parse::<crate::scalar::QuadraticNumber>().ok().and_then(|q| q.as_rational().cloned()))
                .ok_or_else(|| bad(format!("bad number {s:?}")))
        };
        let value = if v == UNDEFINED { None } else { Some(num(v)?) };
        let m = m.parse().map_err(|_| bad(format!("bad order {m:?}")))?;
        rows.push(CsvRow { t: num(t)?, m, x: num(x)?, value });
    }
    Ok(rows)
}
