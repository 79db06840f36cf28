//! Simulation of the analog acquisition chain (instrumentation amplifier,
//! 20–450 Hz band-pass, full-wave rectifier, ADC) and a seeded synthetic
//! sEMG generator with controllable fatigue, second-wind, and
//! perspiration-drift profiles. The generator is the ground-truth oracle
//! for the index pipeline.

use crate::error::{Error, Result};
use crate::signal::{ChannelSignal, Muscle};
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Fixed internal resistor of the instrumentation amplifier, Ω.
pub const AMPLIFIER_INTERNAL_OHMS: f64 = 49_400.0;

/// Instrumentation-amplifier gain `G = 1 + 49.4 kΩ / R_G`.
pub fn amplifier_gain(gain_resistor_ohms: f64) -> Result<f64> {
    if !(gain_resistor_ohms > 0.0) {
        return Err(Error::NonPositiveResistor {
            ohms: gain_resistor_ohms,
        });
    }
    Ok(1.0 + AMPLIFIER_INTERNAL_OHMS / gain_resistor_ohms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Highpass,
    Lowpass,
}

/// Single-pole recursive filter from the bilinear transform with frequency
/// pre-warping at the cutoff, so the −3 dB point lands exactly on
/// `cutoff_hz`. DC gain is 1 (lowpass) or 0 (highpass); Nyquist gain is the
/// opposite.
pub fn first_order_filter(
    signal: &[f64],
    cutoff_hz: f64,
    kind: FilterKind,
    sample_rate: f64,
) -> Result<Vec<f64>> {
    let nyquist = sample_rate / 2.0;
    if !(cutoff_hz > 0.0) || cutoff_hz >= nyquist {
        return Err(Error::CutoffOutOfRange {
            cutoff_hz,
            nyquist_hz: nyquist,
        });
    }
    let c = (PI * cutoff_hz / sample_rate).tan();
    let a1 = (c - 1.0) / (c + 1.0);
    let (b0, b1) = match kind {
        FilterKind::Lowpass => (c / (c + 1.0), c / (c + 1.0)),
        FilterKind::Highpass => (1.0 / (c + 1.0), -1.0 / (c + 1.0)),
    };

    let mut out = Vec::with_capacity(signal.len());
    let mut x_prev = 0.0;
    let mut y_prev = 0.0;
    for &x in signal {
        let y = b0 * x + b1 * x_prev - a1 * y_prev;
        out.push(y);
        x_prev = x;
        y_prev = y;
    }
    Ok(out)
}

/// Configuration of one acquisition PCB plus its ADC.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FrontEndConfig {
    /// Gain resistor R_G, Ω.
    pub gain_resistor_ohms: f64,
    pub hpf_cutoff_hz: f64,
    pub lpf_cutoff_hz: f64,
    pub rectifier_enabled: bool,
    pub adc_bits: u8,
    pub adc_reference_volts: f64,
    /// Symmetric supply rail magnitude, V. Informational.
    pub supply_volts: f64,
}

impl Default for FrontEndConfig {
    fn default() -> Self {
        Self {
            gain_resistor_ohms: 100.0,
            hpf_cutoff_hz: 20.0,
            lpf_cutoff_hz: 450.0,
            rectifier_enabled: true,
            adc_bits: 10,
            adc_reference_volts: 5.0,
            supply_volts: 3.75,
        }
    }
}

impl FrontEndConfig {
    pub fn validate(&self, sample_rate: f64) -> Result<()> {
        if !(self.gain_resistor_ohms > 0.0) {
            return Err(Error::NonPositiveResistor {
                ohms: self.gain_resistor_ohms,
            });
        }
        if !(self.hpf_cutoff_hz > 0.0)
            || self.hpf_cutoff_hz >= self.lpf_cutoff_hz
            || self.lpf_cutoff_hz >= sample_rate / 2.0
        {
            return Err(Error::InvalidFrontEnd(format!(
                "cutoffs must satisfy 0 < HPF ({}) < LPF ({}) < Nyquist ({})",
                self.hpf_cutoff_hz,
                self.lpf_cutoff_hz,
                sample_rate / 2.0
            )));
        }
        if !(8..=24).contains(&self.adc_bits) {
            return Err(Error::UnsupportedAdcResolution {
                bits: self.adc_bits,
            });
        }
        if !(self.adc_reference_volts > 0.0) {
            return Err(Error::InvalidFrontEnd(
                "ADC reference must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn gain(&self) -> Result<f64> {
        amplifier_gain(self.gain_resistor_ohms)
    }

    /// ADC step size at the board output, millivolts per count.
    pub fn lsb_millivolts(&self) -> f64 {
        self.adc_reference_volts * 1000.0 / self.full_scale_count() as f64
    }

    pub fn full_scale_count(&self) -> i64 {
        (1i64 << self.adc_bits) - 1
    }

    /// Count offset applied before storage. Zero for the rectified
    /// (unipolar) configuration; mid-rail for non-rectifying boards, whose
    /// bipolar output needs a bias to fit unsigned counts.
    pub fn adc_bias_counts(&self) -> i64 {
        if self.rectifier_enabled {
            0
        } else {
            1i64 << (self.adc_bits - 1)
        }
    }

    /// Quantize one board-output millivolt value to a stored ADC count,
    /// saturating at the rails.
    pub fn quantize(&self, millivolts: f64) -> i64 {
        let raw = (millivolts / self.lsb_millivolts()).round() as i64 + self.adc_bias_counts();
        raw.clamp(0, self.full_scale_count())
    }

    /// Board-output millivolts for a stored count.
    pub fn dequantize(&self, count: i64) -> f64 {
        (count - self.adc_bias_counts()) as f64 * self.lsb_millivolts()
    }
}

/// Run a raw electrode-referred signal through the full acquisition chain:
/// amplifier → HPF → LPF → rectifier (optional) → ADC quantize/clamp.
/// The output is the board-referred signal the microcontroller stores,
/// flagged rectified iff the rectifier is enabled.
pub fn simulate_front_end(
    raw: &ChannelSignal,
    config: &FrontEndConfig,
    sample_rate: f64,
) -> Result<ChannelSignal> {
    config.validate(sample_rate)?;
    let gain = config.gain()?;

    let amplified: Vec<f64> = raw.samples().iter().map(|v| v * gain).collect();
    let high_passed = first_order_filter(
        &amplified,
        config.hpf_cutoff_hz,
        FilterKind::Highpass,
        sample_rate,
    )?;
    let band_passed = first_order_filter(
        &high_passed,
        config.lpf_cutoff_hz,
        FilterKind::Lowpass,
        sample_rate,
    )?;
    let rectified_samples: Vec<f64> = if config.rectifier_enabled {
        band_passed.iter().map(|v| v.abs()).collect()
    } else {
        band_passed
    };
    let quantized: Vec<f64> = rectified_samples
        .iter()
        .map(|&mv| config.dequantize(config.quantize(mv)))
        .collect();

    if config.rectifier_enabled {
        ChannelSignal::new_rectified(raw.muscle().clone(), quantized)
    } else {
        ChannelSignal::new(raw.muscle().clone(), quantized)
    }
}

/// Ground-truth profile for one synthetic channel.
///
/// The amplitude envelope is piecewise linear in `(t, multiplier)` control
/// points and encodes both the fatigue ramp and the second-wind dip; the
/// spectral center trajectory `(t, Hz)` encodes the leftward spectral
/// shift; `drift_mv_per_min` adds the perspiration baseline offset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticProfile {
    pub duration_s: f64,
    pub base_amplitude_mv: f64,
    pub amplitude_envelope: Vec<(f64, f64)>,
    pub spectral_center_hz: Vec<(f64, f64)>,
    pub band_width_hz: f64,
    pub drift_mv_per_min: f64,
    pub noise_seed: u64,
    /// Number of random-phase sinusoids summed per sample.
    pub sinusoid_count: usize,
}

impl Default for SyntheticProfile {
    fn default() -> Self {
        Self {
            duration_s: 60.0,
            base_amplitude_mv: 0.5,
            amplitude_envelope: vec![(0.0, 1.0), (60.0, 1.0)],
            spectral_center_hz: vec![(0.0, 150.0), (60.0, 150.0)],
            band_width_hz: 60.0,
            drift_mv_per_min: 0.0,
            noise_seed: 0,
            sinusoid_count: 200,
        }
    }
}

impl SyntheticProfile {
    pub fn validate(&self, sample_rate: f64) -> Result<()> {
        if !(self.duration_s > 0.0) {
            return Err(Error::InvalidProfile("duration must be positive".into()));
        }
        if !(self.base_amplitude_mv > 0.0) {
            return Err(Error::InvalidProfile(
                "base amplitude must be positive".into(),
            ));
        }
        if self.amplitude_envelope.is_empty() || self.spectral_center_hz.is_empty() {
            return Err(Error::InvalidProfile(
                "envelope and center trajectory need at least one control point".into(),
            ));
        }
        if self.amplitude_envelope.iter().any(|(_, m)| !(*m > 0.0)) {
            return Err(Error::InvalidProfile(
                "envelope multipliers must be positive".into(),
            ));
        }
        for points in [&self.amplitude_envelope, &self.spectral_center_hz] {
            if points.windows(2).any(|p| p[1].0 < p[0].0) {
                return Err(Error::InvalidProfile(
                    "control point times must be non-decreasing".into(),
                ));
            }
        }
        if !(self.band_width_hz > 0.0) {
            return Err(Error::InvalidProfile("band width must be positive".into()));
        }
        if self.sinusoid_count == 0 {
            return Err(Error::InvalidProfile(
                "sinusoid count must be positive".into(),
            ));
        }
        let c0 = piecewise_linear(&self.spectral_center_hz, 0.0);
        if !(c0 > self.band_width_hz / 2.0) {
            return Err(Error::InvalidProfile(format!(
                "initial center {c0} Hz must exceed half the band width"
            )));
        }
        let nyquist = sample_rate / 2.0;
        for (t, center) in &self.spectral_center_hz {
            let scale = center / c0;
            let top = scale * (c0 + self.band_width_hz / 2.0);
            let bottom = scale * (c0 - self.band_width_hz / 2.0);
            if !(bottom > 0.0) || top >= nyquist {
                return Err(Error::InvalidProfile(format!(
                    "band [{bottom:.1}, {top:.1}] Hz at t={t} s leaves (0, {nyquist}) Hz"
                )));
            }
        }
        Ok(())
    }

    /// Amplitude multiplier at time `t`.
    pub fn envelope_at(&self, t: f64) -> f64 {
        piecewise_linear(&self.amplitude_envelope, t)
    }

    /// Spectral band center at time `t`, Hz.
    pub fn center_at(&self, t: f64) -> f64 {
        piecewise_linear(&self.spectral_center_hz, t)
    }

    /// Perspiration baseline offset at time `t`, mV.
    pub fn drift_at(&self, t: f64) -> f64 {
        self.drift_mv_per_min * t / 60.0
    }
}

fn piecewise_linear(points: &[(f64, f64)], t: f64) -> f64 {
    match points {
        [] => 0.0,
        [only] => only.1,
        _ => {
            if t <= points[0].0 {
                return points[0].1;
            }
            for pair in points.windows(2) {
                let (t0, v0) = pair[0];
                let (t1, v1) = pair[1];
                if t <= t1 {
                    if t1 == t0 {
                        return v1;
                    }
                    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                }
            }
            points.last().unwrap().1
        }
    }
}

/// Exact generator state echoed back next to a synthetic channel, for use
/// as the oracle in tests and sidecar files.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    profile: SyntheticProfile,
}

impl GroundTruth {
    pub fn profile(&self) -> &SyntheticProfile {
        &self.profile
    }

    pub fn envelope_at(&self, t: f64) -> f64 {
        self.profile.envelope_at(t)
    }

    pub fn center_at(&self, t: f64) -> f64 {
        self.profile.center_at(t)
    }

    pub fn drift_at(&self, t: f64) -> f64 {
        self.profile.drift_at(t)
    }
}

fn unit_uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Generate one synthetic raw sEMG channel.
///
/// The signal is a sum of `sinusoid_count` random-phase sinusoids with base
/// frequencies drawn uniformly over `center ± band_width/2`; over time every
/// frequency is scaled by `center(t) / center(0)`, the total amplitude
/// follows the envelope, and the perspiration drift adds a growing baseline.
/// Bit-reproducible for a fixed seed and configuration.
pub fn synthesize(
    profile: &SyntheticProfile,
    muscle: Muscle,
    sample_rate: f64,
) -> Result<(ChannelSignal, GroundTruth)> {
    profile.validate(sample_rate)?;

    let mut rng = ChaCha8Rng::seed_from_u64(profile.noise_seed);
    let k = profile.sinusoid_count;
    let c0 = profile.center_at(0.0);
    let base_freqs: Vec<f64> = (0..k)
        .map(|_| c0 + (unit_uniform(&mut rng) - 0.5) * profile.band_width_hz)
        .collect();
    let phases: Vec<f64> = (0..k).map(|_| unit_uniform(&mut rng) * 2.0 * PI).collect();

    let n = (profile.duration_s * sample_rate).round() as usize;
    let dt = 1.0 / sample_rate;
    // per-component amplitude so the envelope multiplies the signal RMS
    let component_amplitude = profile.base_amplitude_mv * (2.0 / k as f64).sqrt();

    let mut samples = Vec::with_capacity(n);
    // shared warped-time integral S(t) = ∫ center(τ)/center(0) dτ, trapezoid
    let mut warped_time = 0.0;
    let mut prev_scale = 1.0;
    for i in 0..n {
        let t = i as f64 * dt;
        if i > 0 {
            let scale = profile.center_at(t) / c0;
            warped_time += 0.5 * (prev_scale + scale) * dt;
            prev_scale = scale;
        }
        let mut sum = 0.0;
        for (f0, phase) in base_freqs.iter().zip(&phases) {
            sum += (2.0 * PI * f0 * warped_time + phase).sin();
        }
        let value =
            component_amplitude * profile.envelope_at(t) * sum + profile.drift_at(t);
        samples.push(value);
    }

    let channel = ChannelSignal::new(muscle, samples)?;
    Ok((
        channel,
        GroundTruth {
            profile: profile.clone(),
        },
    ))
}

/// Add the perspiration baseline: `out[i] = in[i] + rate · t_i / 60`.
/// The rectified flag survives only if the result stays nonnegative.
pub fn apply_perspiration_drift(
    signal: &ChannelSignal,
    drift_mv_per_min: f64,
    sample_rate: f64,
) -> ChannelSignal {
    let samples: Vec<f64> = signal
        .samples()
        .iter()
        .enumerate()
        .map(|(i, v)| v + drift_mv_per_min * (i as f64 / sample_rate) / 60.0)
        .collect();
    if signal.is_rectified() && samples.iter().all(|v| *v >= 0.0) {
        ChannelSignal::new_rectified(signal.muscle().clone(), samples)
            .expect("drifted rectified signal stays valid")
    } else {
        ChannelSignal::new(signal.muscle().clone(), samples)
            .expect("drifted signal stays finite")
    }
}
