//! Muscle-fatigue analysis for surface-EMG recordings of the quadriceps.
//!
//! The crate covers the full desk pipeline for wearable sEMG trials:
//!
//! - [`signal`]: sampled-signal types, windowing, and the amplitude
//!   primitives (ARV / MAV / RMS);
//! - [`spectral`]: Hann-tapered periodograms with mean frequency, median
//!   frequency, and the Dimitrov moment-ratio index FInsm5;
//! - [`wavelet`]: periodized sym5/db5 DWT and the WIRM band-moment indices;
//! - [`frontend`]: simulation of the acquisition chain (amplifier,
//!   20–450 Hz band-pass, rectifier, ADC) and a seeded synthetic generator
//!   that doubles as the test oracle;
//! - [`series`]: per-window index series over whole recordings;
//! - [`trend`]: percent increase, trend slopes, second-wind detection, and
//!   cross-surface fatigue ranking;
//! - [`io`]: trial CSV ingestion, run manifests, report emission (JSON /
//!   CSV), and dependency-free SVG charts.

pub mod error;
pub mod frontend;
pub mod io;
pub mod metadata;
pub mod series;
pub mod signal;
pub mod spectral;
pub mod trend;
pub mod wavelet;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use frontend::{FrontEndConfig, SyntheticProfile};
pub use metadata::{Surface, TrialMetadata};
pub use series::{AnalysisConfig, IndexKind, WindowedFeatureSeries};
pub use signal::{ChannelSignal, Muscle, TrialRecording};
pub use trend::{FatigueReport, TrendConfig, TrendSummary};
