//! Crate-wide error type.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by signal construction, index computation, trend
/// analysis, and file ingestion/emission.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("window of {window_samples} samples does not fit in signal of {signal_samples} samples")]
    WindowTooLong {
        window_samples: usize,
        signal_samples: usize,
    },

    #[error("window or hop duration must be positive (got window {window_s} s, hop {hop_s} s)")]
    NonPositiveWindow { window_s: f64, hop_s: f64 },

    #[error("ADC count {count} out of range for a {bits}-bit converter{}", line_suffix(*.line))]
    CountOutOfRange {
        count: i64,
        bits: u8,
        line: Option<usize>,
    },

    #[error("ADC resolution {bits} bits outside supported range 8..=24")]
    UnsupportedAdcResolution { bits: u8 },

    #[error("ADC gain must be positive (got {gain})")]
    NonPositiveGain { gain: f64 },

    #[error("spectral and wavelet indices are undefined on full-wave-rectified input")]
    RectifiedInput,

    #[error("window of {len} samples is shorter than the {min} required for spectral estimation")]
    WindowTooShort { len: usize, min: usize },

    #[error("spectrum carries no power")]
    EmptySpectrum,

    #[error("spectral power is degenerate: {0}")]
    DegenerateSpectrum(String),

    #[error("{levels}-level decomposition needs at least {min_len} samples (window has {len})")]
    MaxLevelExceeded {
        levels: usize,
        min_len: usize,
        len: usize,
    },

    #[error("window length {len} is not divisible by 2^{levels}; the periodized transform needs dyadic-multiple lengths")]
    WindowNotDyadic { len: usize, levels: usize },

    #[error("gain resistor must be positive (got {ohms} Ω)")]
    NonPositiveResistor { ohms: f64 },

    #[error("filter cutoff {cutoff_hz} Hz outside (0, {nyquist_hz} Hz)")]
    CutoffOutOfRange { cutoff_hz: f64, nyquist_hz: f64 },

    #[error("invalid front-end configuration: {0}")]
    InvalidFrontEnd(String),

    #[error("invalid synthetic profile: {0}")]
    InvalidProfile(String),

    #[error("series spans {span_s:.3} s, shorter than the {required_s:.3} s required")]
    SeriesTooShort { span_s: f64, required_s: f64 },

    #[error("head-of-series mean is not positive; percent increase is undefined")]
    ZeroBaseline,

    #[error("reports are incomparable: {0}")]
    IncomparableReports(String),

    #[error("{path}:{line}: malformed header: {detail}")]
    MalformedHeader {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error("{path}:{line}: timestamps not monotone at the declared sample period")]
    NonMonotoneTimestamps { path: PathBuf, line: usize },

    #[error("{path}:{line}: truncated or malformed row: {detail}")]
    TruncatedRow {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("I/O failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

impl Error {
    /// CLI exit code class: 2 for I/O failures, 1 for everything else
    /// (validation and domain errors).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
