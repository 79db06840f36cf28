//! Trial ingestion, run manifests, and report/plot emission.
//!
//! All file emissions are deterministic (stable ordering, fixed float
//! formatting) and atomic (write-to-temp, rename), so identical inputs
//! produce byte-identical outputs and failures leave no partial files.

pub mod atomic;
pub mod manifest;
pub mod report;
pub mod svg;
pub mod trial_csv;

pub use atomic::write_atomic;
pub use manifest::{RunManifest, SyntheticSpec, TrialEntry};
pub use report::{
    read_report_json, read_series_csv, write_percent_matrix_csv, write_ranking_csv,
    write_report_csv, write_report_json, write_series_csv,
};
pub use svg::{render_chart, write_plot, Curve, Panel};
pub use trial_csv::{parse_trial_csv, write_ground_truth, write_trial_csv};
