//! Reading datasets and configs, standardising columns, writing tables.

mod config;
mod ingest;
mod output;
mod standardise;

pub use config::{parse_config, render_config, ConfigMap};
pub use ingest::{ingest_csv, read_csv, CsvDataset};
pub use output::{fmt_f64, write_csv, write_text};
pub use standardise::{standardise, ColumnScale, StandardisationRecord};
