//! Browser demo: interactive exploration of the fatigue toolkit.
//!
//! Three operations are exported to JavaScript:
//! - [`fatigue_explorer`]: synthesize a trial with adjustable fatigue ramp,
//!   second-wind dip, spectral shift, and perspiration drift, then plot the
//!   iARV / iMNF / FInsm5 series;
//! - [`front_end_response`]: magnitude response of the simulated analog
//!   chain for adjustable gain resistor and cutoffs;
//! - [`rank_explorer`]: feed a muscle × surface percent-increase table
//!   through the ranking logic.
//!
//! Each function returns a self-contained SVG document (or JSON for the
//! ranking) that the page injects into the DOM.

use emg_fatigue::frontend::{
    amplifier_gain, first_order_filter, synthesize, FilterKind, SyntheticProfile,
};
use emg_fatigue::io::svg::{render_chart, Curve, Panel};
use emg_fatigue::metadata::Surface;
use emg_fatigue::series::{compute_series, AnalysisConfig, IndexKind};
use emg_fatigue::signal::{Muscle, TrialRecording};
use emg_fatigue::trend::{
    percent_increase, rank_surfaces, second_wind_minimum, Aggregation, FatigueReport,
    TrendSummary,
};
use emg_fatigue::TrialMetadata;
use wasm_bindgen::prelude::*;

const SAMPLE_RATE: f64 = 1000.0;

#[allow(clippy::too_many_arguments)]
fn profile_from_controls(
    duration_s: f64,
    fatigue_gain: f64,
    dip_depth: f64,
    dip_time_s: f64,
    drift_mv_per_min: f64,
    center_start_hz: f64,
    center_end_hz: f64,
    seed: u32,
) -> SyntheticProfile {
    // second wind: elevated start, dip, then the fatigue ramp
    let dip_time = dip_time_s.clamp(1.0, duration_s * 0.8);
    let dip = dip_depth.clamp(0.0, 0.9);
    let envelope = if dip > 0.0 {
        vec![
            (0.0, 1.0),
            (dip_time, 1.0 - dip),
            (duration_s, fatigue_gain.max(0.05)),
        ]
    } else {
        vec![(0.0, 1.0), (duration_s, fatigue_gain.max(0.05))]
    };
    SyntheticProfile {
        duration_s,
        base_amplitude_mv: 0.5,
        amplitude_envelope: envelope,
        spectral_center_hz: vec![(0.0, center_start_hz), (duration_s, center_end_hz)],
        band_width_hz: 60.0,
        drift_mv_per_min,
        noise_seed: seed as u64,
        sinusoid_count: 120,
    }
}

/// Synthesize one channel and chart its iARV, iMNF, and FInsm5 series.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn fatigue_explorer(
    duration_s: f64,
    fatigue_gain: f64,
    dip_depth: f64,
    dip_time_s: f64,
    drift_mv_per_min: f64,
    center_start_hz: f64,
    center_end_hz: f64,
    seed: u32,
) -> Result<String, JsError> {
    let profile = profile_from_controls(
        duration_s.clamp(10.0, 300.0),
        fatigue_gain,
        dip_depth,
        dip_time_s,
        drift_mv_per_min,
        center_start_hz,
        center_end_hz,
        seed,
    );
    let (raw, _) = synthesize(&profile, Muscle::VastusMedialis, SAMPLE_RATE)
        .map_err(|e| JsError::new(&e.to_string()))?;
    let recording = TrialRecording::new(SAMPLE_RATE, vec![raw], TrialMetadata::default())
        .map_err(|e| JsError::new(&e.to_string()))?;

    let config = AnalysisConfig::default();
    let mut panels = Vec::new();
    for (index, unit) in [
        (IndexKind::Arv, "mV"),
        (IndexKind::MeanFrequency, "Hz"),
        (IndexKind::Dimitrov, "a.u."),
    ] {
        let series = compute_series(&recording, index, &config)
            .map_err(|e| JsError::new(&e.to_string()))?;
        let s = &series[0];
        panels.push(Panel {
            title: index.name().to_string(),
            x_label: "time (s)".to_string(),
            y_label: format!("{index} ({unit})"),
            curves: vec![Curve {
                label: index.name().to_string(),
                points: s
                    .times()
                    .iter()
                    .copied()
                    .zip(s.values().iter().copied())
                    .collect(),
            }],
        });
    }
    render_chart(&panels).map_err(|e| JsError::new(&e.to_string()))
}

/// Trend metrics for the same controls, as a small JSON object.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn fatigue_metrics(
    duration_s: f64,
    fatigue_gain: f64,
    dip_depth: f64,
    dip_time_s: f64,
    drift_mv_per_min: f64,
    center_start_hz: f64,
    center_end_hz: f64,
    seed: u32,
) -> Result<String, JsError> {
    let duration = duration_s.clamp(10.0, 300.0);
    let profile = profile_from_controls(
        duration,
        fatigue_gain,
        dip_depth,
        dip_time_s,
        drift_mv_per_min,
        center_start_hz,
        center_end_hz,
        seed,
    );
    let (raw, _) = synthesize(&profile, Muscle::VastusMedialis, SAMPLE_RATE)
        .map_err(|e| JsError::new(&e.to_string()))?;
    let recording = TrialRecording::new(SAMPLE_RATE, vec![raw], TrialMetadata::default())
        .map_err(|e| JsError::new(&e.to_string()))?;
    let config = AnalysisConfig::default();

    let head_tail = (duration / 6.0).clamp(1.0, 30.0);
    let arv = compute_series(&recording, IndexKind::Arv, &config)
        .map_err(|e| JsError::new(&e.to_string()))?;
    let pi = percent_increase(&arv[0], head_tail, head_tail)
        .map_err(|e| JsError::new(&e.to_string()))?;
    let second_wind = second_wind_minimum(&arv[0], (duration / 20.0).max(1.0)).unwrap_or(None);

    let mnf = compute_series(&recording, IndexKind::MeanFrequency, &config)
        .map_err(|e| JsError::new(&e.to_string()))?;
    let mnf_drop = percent_increase(&mnf[0], head_tail, head_tail)
        .map(|p| -p)
        .unwrap_or(0.0);

    Ok(format!(
        r#"{{"iarv_percent_increase":{:.2},"second_wind_minimum_s":{},"imnf_percent_drop":{:.2}}}"#,
        pi,
        second_wind
            .map(|t| format!("{t:.1}"))
            .unwrap_or_else(|| "null".to_string()),
        mnf_drop
    ))
}

/// Magnitude response of the simulated front end (amplifier + HPF + LPF),
/// measured by a sinusoid sweep, charted against frequency.
#[wasm_bindgen]
pub fn front_end_response(
    gain_resistor_ohms: f64,
    hpf_cutoff_hz: f64,
    lpf_cutoff_hz: f64,
) -> Result<String, JsError> {
    let gain = amplifier_gain(gain_resistor_ohms).map_err(|e| JsError::new(&e.to_string()))?;
    let mut points = Vec::new();
    // log-spaced sweep over the sEMG band
    let n_points = 60;
    for i in 0..n_points {
        let f = 2.0 * (250.0f64).powf(i as f64 / (n_points - 1) as f64);
        let samples: Vec<f64> = (0..4000)
            .map(|n| (2.0 * std::f64::consts::PI * f * n as f64 / SAMPLE_RATE).sin())
            .collect();
        let hp = first_order_filter(&samples, hpf_cutoff_hz, FilterKind::Highpass, SAMPLE_RATE)
            .map_err(|e| JsError::new(&e.to_string()))?;
        let lp = first_order_filter(&hp, lpf_cutoff_hz, FilterKind::Lowpass, SAMPLE_RATE)
            .map_err(|e| JsError::new(&e.to_string()))?;
        let tail = &lp[lp.len() / 2..];
        let rms = (tail.iter().map(|v| v * v).sum::<f64>() / tail.len() as f64).sqrt();
        let magnitude_db = 20.0 * (gain * rms * 2f64.sqrt()).log10();
        points.push((f, magnitude_db));
    }
    let panel = Panel {
        title: format!("front-end magnitude (G = {gain:.1})"),
        x_label: "frequency (Hz)".to_string(),
        y_label: "gain (dB)".to_string(),
        curves: vec![Curve {
            label: format!("{hpf_cutoff_hz:.0}-{lpf_cutoff_hz:.0} Hz band"),
            points,
        }],
    };
    render_chart(&[panel]).map_err(|e| JsError::new(&e.to_string()))
}

/// Rank three surfaces from a muscle × surface percent-increase table.
/// Returns JSON: overall order plus per-muscle orders.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn rank_explorer(
    vm_asphalt: f64,
    vm_sand: f64,
    vm_track: f64,
    rf_asphalt: f64,
    rf_sand: f64,
    rf_track: f64,
    vl_asphalt: f64,
    vl_sand: f64,
    vl_track: f64,
    mean_across_muscles: bool,
) -> Result<String, JsError> {
    let cell = |muscle: Muscle, surface: Surface, percent: f64| TrendSummary {
        muscle,
        index: IndexKind::Arv,
        surface,
        percent_increase: percent,
        slope_per_min: 0.0,
        second_wind_minimum_s: None,
        head_mean: 1.0,
        tail_mean: 1.0 + percent / 100.0,
        head_duration_s: 30.0,
        tail_duration_s: 30.0,
    };
    let report = |surface: Surface, vm: f64, rf: f64, vl: f64| FatigueReport {
        trials: vec![TrialMetadata {
            surface: surface.clone(),
            ..TrialMetadata::default()
        }],
        summaries: vec![
            cell(Muscle::VastusMedialis, surface.clone(), vm),
            cell(Muscle::RectusFemoris, surface.clone(), rf),
            cell(Muscle::VastusLateralis, surface, vl),
        ],
        ranking: None,
    };
    let reports = vec![
        report(Surface::Asphalt, vm_asphalt, rf_asphalt, vl_asphalt),
        report(Surface::Sand, vm_sand, rf_sand, vl_sand),
        report(Surface::AthleticsTrack, vm_track, rf_track, vl_track),
    ];
    let aggregation = if mean_across_muscles {
        Aggregation::MeanAcrossMuscles
    } else {
        Aggregation::PerMuscle
    };
    let ranking = rank_surfaces(&reports, IndexKind::Arv, aggregation)
        .map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&ranking).map_err(|e| JsError::new(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fatigue_explorer_renders_three_panels() {
        let svg = fatigue_explorer(30.0, 2.0, 0.2, 5.0, 0.0, 150.0, 120.0, 7).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("iARV"));
        assert!(svg.contains("iMNF"));
        assert!(svg.contains("FInsm5"));
    }

    #[test]
    fn fatigue_metrics_reports_positive_increase() {
        let json = fatigue_metrics(60.0, 2.0, 0.0, 5.0, 0.0, 150.0, 150.0, 3).unwrap();
        assert!(json.contains("iarv_percent_increase"));
        let value: f64 = json
            .split("\"iarv_percent_increase\":")
            .nth(1)
            .unwrap()
            .split(',')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        assert!(value > 50.0, "expected a strong increase, got {value}");
    }

    #[test]
    fn front_end_response_has_band_pass_shape() {
        let svg = front_end_response(100.0, 20.0, 450.0).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("front-end magnitude"));
    }

    #[test]
    fn rank_explorer_reproduces_published_order() {
        let json = rank_explorer(
            100.04, 127.71, 54.9, 100.02, 126.75, 121.22, 99.14, 100.07, 35.9, false,
        )
        .unwrap();
        let ranking: serde_json::Value = serde_json::from_str(&json).unwrap();
        let overall: Vec<&str> = ranking["overall"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap_or_default())
            .collect();
        assert_eq!(overall, vec!["Sand", "Asphalt", "AthleticsTrack"]);
    }
}
