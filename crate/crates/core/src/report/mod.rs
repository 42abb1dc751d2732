//! Run configuration, error tables, reference comparison and output.

mod config;
mod emit;
mod golden;
mod table;

use std::path::PathBuf;

pub use config::{
    default_grid_t, default_grid_x, format_rational, parse_config, preset_report_orders, render_config, ConfigError,
    OutputFormat, RunConfig, DEFAULT_ORDER, DEFAULT_PRECISION, MAX_ORDER, PRECISION_RANGE,
};
pub use emit::{
    emit_table, parse_csv, plot_data_path, render_csv, render_markdown, render_plot_data, render_table, write_file, CsvRow,
    CSV_HEADER, SIGNIFICANT_DIGITS,
};
pub use golden::{golden_compare, golden_table, CellComparison, GoldenReport, GoldenTable, CELL_TOLERANCE, SMALL_CELL, SMALL_CELL_RATIO};
pub use table::{relative_error_table, relative_error_table_on, Cell, ErrorTable};

use crate::hpm::HpmError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Hpm(#[from] HpmError),
    #[error("cannot write {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
}

impl From<ScalarError> for ReportError {
    fn from(e: ScalarError) -> Self {
        ReportError::Hpm(e.into())
    }
}
