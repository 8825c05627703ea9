//! Reading and writing instances, and the JSON report.

mod report;
mod ydh;
#[cfg(test)]
mod tests;

pub use report::{
    build_report, canonical_json, render_json, InputSummary, Report, ReportOptions,
    SubalgebraSummary, Timing, SCHEMA, SCHEMA_VERSION,
};
pub use ydh::{
    parse, parse_document, read_file, render, render_document, write_file, YdhDocument,
    FORMAT_VERSION,
};
