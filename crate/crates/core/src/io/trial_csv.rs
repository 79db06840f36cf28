//! Canonical trial CSV: `time_ms,vm,rf,vl` with integer ADC counts, plus
//! the ground-truth sidecar written next to synthetic trials.
//!
//! The stored counts are board-referred; parsing converts them back to
//! input-referred millivolts through the manifest's front-end
//! configuration (gain, ADC resolution and reference, mid-rail bias for
//! non-rectifying boards).

use crate::error::{Error, Result};
use crate::frontend::GroundTruth;
use crate::io::atomic::write_atomic;
use crate::metadata::TrialMetadata;
use crate::signal::{ChannelSignal, Muscle, TrialRecording};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub const TRIAL_HEADER: &str = "time_ms,vm,rf,vl";

/// Parse a trial CSV into an input-referred recording.
///
/// Validates the header, timestamp monotonicity at the declared sample
/// period, and the ADC count range; every error carries the offending
/// line number.
pub fn parse_trial_csv(
    path: &Path,
    metadata: &TrialMetadata,
    sample_rate: f64,
) -> Result<TrialRecording> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 1,
        detail: "file is empty".into(),
    })?;
    if header.trim_end() != TRIAL_HEADER {
        return Err(Error::MalformedHeader {
            path: path.to_path_buf(),
            line: 1,
            detail: format!("expected '{TRIAL_HEADER}', got '{header}'"),
        });
    }

    let front_end = &metadata.front_end;
    front_end.validate(sample_rate)?;
    let gain = front_end.gain()?;
    let full_scale = front_end.full_scale_count();
    let lsb = front_end.lsb_millivolts();
    let bias = front_end.adc_bias_counts();

    let mut channels: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut row_index = 0usize;
    for (line_idx, line) in lines {
        let line_no = line_idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::TruncatedRow {
                path: path.to_path_buf(),
                line: line_no,
                detail: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let time_ms: i64 = fields[0].parse().map_err(|_| Error::TruncatedRow {
            path: path.to_path_buf(),
            line: line_no,
            detail: format!("invalid time '{}'", fields[0]),
        })?;
        let expected_ms = (row_index as f64 * 1000.0 / sample_rate).round() as i64;
        if time_ms != expected_ms {
            return Err(Error::NonMonotoneTimestamps {
                path: path.to_path_buf(),
                line: line_no,
            });
        }
        for (slot, field) in channels.iter_mut().zip(&fields[1..]) {
            let count: i64 = field.parse().map_err(|_| Error::TruncatedRow {
                path: path.to_path_buf(),
                line: line_no,
                detail: format!("invalid count '{field}'"),
            })?;
            if count < 0 || count > full_scale {
                return Err(Error::CountOutOfRange {
                    count,
                    bits: front_end.adc_bits,
                    line: Some(line_no),
                });
            }
            slot.push((count - bias) as f64 * lsb / gain);
        }
        row_index += 1;
    }
    if row_index == 0 {
        return Err(Error::TruncatedRow {
            path: path.to_path_buf(),
            line: 2,
            detail: "no data rows".into(),
        });
    }

    let [vm, rf, vl] = channels;
    let build = |muscle: Muscle, samples: Vec<f64>| -> Result<ChannelSignal> {
        if front_end.rectifier_enabled {
            ChannelSignal::new_rectified(muscle, samples)
        } else {
            ChannelSignal::new(muscle, samples)
        }
    };
    TrialRecording::new(
        sample_rate,
        vec![
            build(Muscle::VastusMedialis, vm)?,
            build(Muscle::RectusFemoris, rf)?,
            build(Muscle::VastusLateralis, vl)?,
        ],
        metadata.clone(),
    )
}

/// Write a recording back to the canonical layout. Inverse of
/// [`parse_trial_csv`]: parse-then-write reproduces a canonical file
/// byte for byte.
pub fn write_trial_csv(path: &Path, recording: &TrialRecording) -> Result<()> {
    let front_end = &recording.metadata().front_end;
    let gain = front_end.gain()?;
    let lsb = front_end.lsb_millivolts();
    let bias = front_end.adc_bias_counts();
    let full_scale = front_end.full_scale_count();

    if recording.channels().len() != 3 {
        return Err(Error::InvalidSignal(format!(
            "trial CSV needs exactly 3 channels, recording has {}",
            recording.channels().len()
        )));
    }

    let n = recording.samples_per_channel();
    let mut out = String::with_capacity(16 * n);
    out.push_str(TRIAL_HEADER);
    out.push('\n');
    for i in 0..n {
        let time_ms = (i as f64 * 1000.0 / recording.sample_rate()).round() as i64;
        write!(out, "{time_ms}").unwrap();
        for channel in recording.channels() {
            let count = (channel.samples()[i] * gain / lsb).round() as i64 + bias;
            if count < 0 || count > full_scale {
                return Err(Error::CountOutOfRange {
                    count,
                    bits: front_end.adc_bits,
                    line: Some(i + 2),
                });
            }
            write!(out, ",{count}").unwrap();
        }
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

pub const GROUND_TRUTH_HEADER: &str = "time_s,envelope,center_hz,drift_mv";

/// Ground-truth sidecar for a synthetic trial, sampled at 1 Hz.
pub fn write_ground_truth(path: &Path, truth: &GroundTruth) -> Result<()> {
    let mut out = String::new();
    out.push_str(GROUND_TRUTH_HEADER);
    out.push('\n');
    let duration = truth.profile().duration_s;
    let mut t = 0.0;
    while t <= duration {
        writeln!(
            out,
            "{},{},{},{}",
            t,
            truth.envelope_at(t),
            truth.center_at(t),
            truth.drift_at(t)
        )
        .unwrap();
        t += 1.0;
    }
    write_atomic(path, out.as_bytes())
}
