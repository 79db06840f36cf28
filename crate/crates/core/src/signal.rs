//! Sampled-signal types, windowing, and the amplitude primitives shared by
//! every fatigue index.
//!
//! Samples are stored as `f64` millivolts after a single conversion at
//! ingestion; all downstream math is ratio- or percent-based, so the unit
//! stays stable through the pipeline.

use crate::error::{Error, Result};
use crate::metadata::TrialMetadata;
use serde::{Deserialize, Serialize};

/// Quadriceps muscles instrumented by the leggings, in recording order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Muscle {
    VastusMedialis,
    RectusFemoris,
    VastusLateralis,
    Other(String),
}

impl Muscle {
    /// Human-readable label, matching the report table rows.
    pub fn label(&self) -> &str {
        match self {
            Muscle::VastusMedialis => "Vastus Medialis",
            Muscle::RectusFemoris => "Rectus Femoris",
            Muscle::VastusLateralis => "Vastus Lateralis",
            Muscle::Other(name) => name,
        }
    }

    /// Short column code used in trial CSV headers.
    pub fn column(&self) -> &str {
        match self {
            Muscle::VastusMedialis => "vm",
            Muscle::RectusFemoris => "rf",
            Muscle::VastusLateralis => "vl",
            Muscle::Other(name) => name,
        }
    }

    /// The three paper channels, in CSV column order.
    pub fn trial_channels() -> [Muscle; 3] {
        [
            Muscle::VastusMedialis,
            Muscle::RectusFemoris,
            Muscle::VastusLateralis,
        ]
    }
}

impl std::fmt::Display for Muscle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One channel of sEMG samples in millivolts.
///
/// `rectified` records whether the samples already passed a full-wave
/// rectifier (in hardware or via [`rectify`]); spectral and wavelet
/// operations refuse rectified input.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSignal {
    muscle: Muscle,
    samples: Vec<f64>,
    rectified: bool,
}

impl ChannelSignal {
    /// A raw (non-rectified) channel. Samples must be finite and non-empty.
    pub fn new(muscle: Muscle, samples: Vec<f64>) -> Result<Self> {
        Self::with_rectified(muscle, samples, false)
    }

    /// A channel whose samples already passed a full-wave rectifier.
    /// All values must additionally be nonnegative.
    pub fn new_rectified(muscle: Muscle, samples: Vec<f64>) -> Result<Self> {
        Self::with_rectified(muscle, samples, true)
    }

    fn with_rectified(muscle: Muscle, samples: Vec<f64>, rectified: bool) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSignal("channel has no samples".into()));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!(
                "non-finite sample at index {i}"
            )));
        }
        if rectified {
            if let Some(i) = samples.iter().position(|v| *v < 0.0) {
                return Err(Error::InvalidSignal(format!(
                    "rectified channel has negative sample at index {i}"
                )));
            }
        }
        Ok(Self {
            muscle,
            samples,
            rectified,
        })
    }

    pub fn muscle(&self) -> &Muscle {
        &self.muscle
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_rectified(&self) -> bool {
        self.rectified
    }
}

/// Full-wave rectification: `out[i] = |in[i]|`. Idempotent; the output is
/// flagged rectified.
pub fn rectify(signal: &ChannelSignal) -> ChannelSignal {
    ChannelSignal {
        muscle: signal.muscle.clone(),
        samples: signal.samples.iter().map(|v| v.abs()).collect(),
        rectified: true,
    }
}

/// A view of contiguous samples from one channel.
#[derive(Debug, Clone, Copy)]
pub struct Window<'a> {
    start_index: usize,
    values: &'a [f64],
    rectified: bool,
}

impl<'a> Window<'a> {
    /// A window over `signal.samples()[start..start + len]`.
    pub fn over(signal: &'a ChannelSignal, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > signal.len() {
            return Err(Error::WindowTooLong {
                window_samples: len.max(1),
                signal_samples: signal.len().saturating_sub(start),
            });
        }
        Ok(Self {
            start_index: start,
            values: &signal.samples[start..start + len],
            rectified: signal.rectified,
        })
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    /// Whether the source channel was flagged rectified.
    pub fn is_rectified(&self) -> bool {
        self.rectified
    }

    /// Time of the window center, in seconds from the start of the signal.
    pub fn center_time(&self, sample_rate: f64) -> f64 {
        (self.start_index as f64 + self.values.len() as f64 / 2.0) / sample_rate
    }

    /// Average rectified value over the window: `(1/n) Σ |x|`.
    pub fn arv(&self) -> f64 {
        arv(self.values)
    }

    /// Mean absolute value; identical to [`Window::arv`] by definition.
    pub fn mav(&self) -> f64 {
        mav(self.values)
    }

    /// Root mean square over the window.
    pub fn rms(&self) -> f64 {
        rms(self.values)
    }
}

/// Average rectified value of a sample slice: `(1/n) Σ |x|`.
///
/// Panics on an empty slice (windows are constructed non-empty).
pub fn arv(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "arv of empty window");
    values.iter().map(|v| v.abs()).sum::<f64>() / values.len() as f64
}

/// Mean absolute value. The standard definitions of MAV and ARV coincide;
/// both names are kept because the index menu lists both.
pub fn mav(values: &[f64]) -> f64 {
    arv(values)
}

/// Root mean square of a sample slice.
pub fn rms(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "rms of empty window");
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

/// Slice a channel into windows of `window_s` seconds every `hop_s` seconds.
///
/// Windows start at samples `0, hop, 2·hop, …`; a trailing partial window is
/// discarded so every window's statistics are over the same sample count.
pub fn make_windows<'a>(
    signal: &'a ChannelSignal,
    sample_rate: f64,
    window_s: f64,
    hop_s: f64,
) -> Result<Vec<Window<'a>>> {
    if !(window_s > 0.0) || !(hop_s > 0.0) {
        return Err(Error::NonPositiveWindow {
            window_s,
            hop_s,
        });
    }
    let window_len = (window_s * sample_rate).round() as usize;
    let hop_len = ((hop_s * sample_rate).round() as usize).max(1);
    if window_len == 0 {
        return Err(Error::NonPositiveWindow { window_s, hop_s });
    }
    if window_len > signal.len() {
        return Err(Error::WindowTooLong {
            window_samples: window_len,
            signal_samples: signal.len(),
        });
    }
    let mut windows = Vec::new();
    let mut start = 0usize;
    while start + window_len <= signal.len() {
        windows.push(Window {
            start_index: start,
            values: &signal.samples[start..start + window_len],
            rectified: signal.rectified,
        });
        start += hop_len;
    }
    Ok(windows)
}

/// Convert raw ADC counts to input-referred millivolts:
/// `mV = count · (reference·1000 / (2^bits − 1)) / gain`.
pub fn adc_to_millivolts(
    counts: &[i64],
    resolution_bits: u8,
    reference_volts: f64,
    gain: f64,
) -> Result<Vec<f64>> {
    if !(8..=24).contains(&resolution_bits) {
        return Err(Error::UnsupportedAdcResolution {
            bits: resolution_bits,
        });
    }
    if !(gain > 0.0) {
        return Err(Error::NonPositiveGain { gain });
    }
    let full_scale = (1i64 << resolution_bits) - 1;
    let lsb_mv = reference_volts * 1000.0 / full_scale as f64;
    counts
        .iter()
        .map(|&c| {
            if c < 0 || c > full_scale {
                Err(Error::CountOutOfRange {
                    count: c,
                    bits: resolution_bits,
                    line: None,
                })
            } else {
                Ok(c as f64 * lsb_mv / gain)
            }
        })
        .collect()
}

/// A multi-channel sEMG trial with acquisition metadata.
#[derive(Debug, Clone)]
pub struct TrialRecording {
    sample_rate: f64,
    channels: Vec<ChannelSignal>,
    metadata: TrialMetadata,
}

impl TrialRecording {
    /// Paper default sampling frequency, Hz.
    pub const DEFAULT_SAMPLE_RATE: f64 = 1000.0;

    pub fn new(
        sample_rate: f64,
        channels: Vec<ChannelSignal>,
        metadata: TrialMetadata,
    ) -> Result<Self> {
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(Error::InvalidSignal(format!(
                "sample rate must be positive (got {sample_rate})"
            )));
        }
        if channels.is_empty() {
            return Err(Error::InvalidSignal("recording has no channels".into()));
        }
        let n = channels[0].len();
        if channels.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidSignal(
                "channels differ in sample count".into(),
            ));
        }
        Ok(Self {
            sample_rate,
            channels,
            metadata,
        })
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn channels(&self) -> &[ChannelSignal] {
        &self.channels
    }

    pub fn metadata(&self) -> &TrialMetadata {
        &self.metadata
    }

    pub fn samples_per_channel(&self) -> usize {
        self.channels[0].len()
    }

    /// True when every channel is flagged rectified.
    pub fn is_rectified(&self) -> bool {
        self.channels.iter().all(|c| c.is_rectified())
    }

    /// A copy with every channel full-wave rectified.
    pub fn rectified(&self) -> Self {
        Self {
            sample_rate: self.sample_rate,
            channels: self.channels.iter().map(rectify).collect(),
            metadata: self.metadata.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metadata::TrialMetadata;
    use proptest::prelude::*;
    use rand_chacha::rand_core::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn chan(samples: &[f64]) -> ChannelSignal {
        ChannelSignal::new(Muscle::VastusMedialis, samples.to_vec()).unwrap()
    }

    fn uniform(rng: &mut ChaCha8Rng) -> f64 {
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn rectify_takes_absolute_values() {
        let out = rectify(&chan(&[-1.0, 2.0, -3.0]));
        assert_eq!(out.samples(), &[1.0, 2.0, 3.0]);
        assert!(out.is_rectified());
    }

    #[test]
    fn rectify_zero_is_fixed_point() {
        let out = rectify(&chan(&[0.0, 0.0]));
        assert_eq!(out.samples(), &[0.0, 0.0]);
    }

    #[test]
    fn rectify_is_idempotent_and_preserves_amplitudes() {
        let once = rectify(&chan(&[-1.5, 0.25, -0.125, 3.0]));
        let twice = rectify(&once);
        assert_eq!(once.samples(), twice.samples());
        let w1 = Window::over(&once, 0, once.len()).unwrap();
        let w2 = Window::over(&twice, 0, twice.len()).unwrap();
        assert_eq!(w1.arv(), w2.arv());
        assert_eq!(w1.rms(), w2.rms());
    }

    #[test]
    fn arv_examples() {
        assert_eq!(arv(&[1.0, -1.0, 1.0, -1.0]), 1.0);
        assert_eq!(arv(&[0.0, 0.0, 0.0]), 0.0);
        // hand oracle: (|3| + |-4|) / 2 = 3.5
        assert_eq!(arv(&[3.0, -4.0]), 3.5);
    }

    #[test]
    fn mav_is_arv() {
        assert_eq!(mav(&[3.0, -4.0]), arv(&[3.0, -4.0]));
        assert_eq!(mav(&[1.0, -1.0, 1.0, -1.0]), 1.0);
        assert_eq!(mav(&[0.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn rms_examples() {
        assert_eq!(rms(&[1.0, -1.0]), 1.0);
        // hand oracle: sqrt((9 + 16) / 2) = sqrt(12.5)
        assert!((rms(&[3.0, -4.0]) - 12.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(rms(&[-2.5, -2.5, -2.5]), 2.5);
    }

    #[test]
    fn make_windows_non_overlapping() {
        let signal = chan(&vec![1.0; 1000]);
        let windows = make_windows(&signal, 1000.0, 0.2, 0.2).unwrap();
        assert_eq!(windows.len(), 5);
        assert!(windows.iter().all(|w| w.len() == 200));
        let starts: Vec<_> = windows.iter().map(|w| w.start_index()).collect();
        assert_eq!(starts, vec![0, 200, 400, 600, 800]);
    }

    #[test]
    fn make_windows_half_overlap() {
        // hand oracle: start indices 0,100,...,800 fit; 900 would need 1100 samples
        let signal = chan(&vec![0.5; 1000]);
        let windows = make_windows(&signal, 1000.0, 0.2, 0.1).unwrap();
        assert_eq!(windows.len(), 9);
        assert_eq!(windows.last().unwrap().start_index(), 800);
    }

    #[test]
    fn make_windows_rejects_oversized_window() {
        let signal = chan(&vec![0.0; 100]);
        let err = make_windows(&signal, 1000.0, 0.2, 0.2).unwrap_err();
        assert!(matches!(
            err,
            Error::WindowTooLong {
                window_samples: 200,
                signal_samples: 100
            }
        ));
    }

    #[test]
    fn window_partition_reconstructs_prefix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples: Vec<f64> = (0..1050).map(|_| uniform(&mut rng) - 0.5).collect();
        let signal = chan(&samples);
        let windows = make_windows(&signal, 1000.0, 0.2, 0.2).unwrap();
        let concatenated: Vec<f64> = windows
            .iter()
            .flat_map(|w| w.values().iter().copied())
            .collect();
        assert_eq!(&samples[..concatenated.len()], &concatenated[..]);
    }

    #[test]
    fn adc_zero_count_maps_to_zero() {
        let mv = adc_to_millivolts(&[0], 10, 5.0, 1000.0).unwrap();
        assert_eq!(mv, vec![0.0]);
    }

    #[test]
    fn adc_full_scale_example() {
        // 1023 · (5000/1023) / 1000 = 5.0 mV
        let mv = adc_to_millivolts(&[1023], 10, 5.0, 1000.0).unwrap();
        assert!((mv[0] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn adc_midscale_example() {
        // hand oracle: 512 · 5000 / 1023 = 2502.4437927663734 mV
        let mv = adc_to_millivolts(&[512], 10, 5.0, 1.0).unwrap();
        assert!((mv[0] - 2502.4437927663734).abs() < 1e-9);
        assert!((mv[0] - 2502.44).abs() < 0.01);
    }

    #[test]
    fn adc_rejects_out_of_range_counts() {
        assert!(matches!(
            adc_to_millivolts(&[-1], 10, 5.0, 1.0).unwrap_err(),
            Error::CountOutOfRange { count: -1, .. }
        ));
        assert!(matches!(
            adc_to_millivolts(&[1024], 10, 5.0, 1.0).unwrap_err(),
            Error::CountOutOfRange { count: 1024, .. }
        ));
        assert!(matches!(
            adc_to_millivolts(&[0], 7, 5.0, 1.0).unwrap_err(),
            Error::UnsupportedAdcResolution { bits: 7 }
        ));
    }

    #[test]
    fn rectified_channel_rejects_negative_samples() {
        assert!(ChannelSignal::new_rectified(Muscle::RectusFemoris, vec![0.1, -0.1]).is_err());
    }

    #[test]
    fn recording_requires_equal_channel_lengths() {
        let a = chan(&[1.0, 2.0]);
        let b = chan(&[1.0, 2.0, 3.0]);
        assert!(TrialRecording::new(1000.0, vec![a, b], TrialMetadata::default()).is_err());
    }

    proptest! {
        #[test]
        fn arv_never_exceeds_rms(values in proptest::collection::vec(-1e3f64..1e3, 1..256)) {
            prop_assert!(arv(&values) <= rms(&values) * (1.0 + 1e-12));
        }

        #[test]
        fn amplitude_homogeneity(
            values in proptest::collection::vec(-1e3f64..1e3, 1..256),
            scale in -100.0f64..100.0,
        ) {
            let scaled: Vec<f64> = values.iter().map(|v| v * scale).collect();
            let rel = |a: f64, b: f64| {
                if b == 0.0 { a.abs() } else { (a - b).abs() / b.abs() }
            };
            prop_assert!(rel(arv(&scaled), scale.abs() * arv(&values)) < 1e-12);
            prop_assert!(rel(rms(&scaled), scale.abs() * rms(&values)) < 1e-12);
        }
    }
}
