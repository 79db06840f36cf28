//! Windowed fatigue-index series: one value per analysis window, per
//! channel, for each of the nine supported indices.

use crate::error::{Error, Result};
use crate::signal::{make_windows, Muscle, TrialRecording};
use crate::spectral::{dimitrov_index, mean_frequency, median_frequency, power_spectrum};
use crate::wavelet::{wavelet_indices, WaveletFamily, WirmConfig};
use serde::{Deserialize, Serialize};

/// The fatigue indices computed by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexKind {
    #[serde(rename = "iARV")]
    Arv,
    #[serde(rename = "iMAV")]
    Mav,
    #[serde(rename = "iRMS")]
    Rms,
    #[serde(rename = "iMNF")]
    MeanFrequency,
    #[serde(rename = "iMDF")]
    MedianFrequency,
    #[serde(rename = "FInsm5")]
    Dimitrov,
    #[serde(rename = "WIRM1551")]
    Wirm1551,
    #[serde(rename = "WIRM1M51")]
    Wirm1M51,
    #[serde(rename = "WIRM1522")]
    Wirm1522,
}

/// Index families, which differ in windowing defaults and input policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexFamily {
    Amplitude,
    Spectral,
    Wavelet,
}

impl IndexKind {
    pub const ALL: [IndexKind; 9] = [
        IndexKind::Arv,
        IndexKind::Mav,
        IndexKind::Rms,
        IndexKind::MeanFrequency,
        IndexKind::MedianFrequency,
        IndexKind::Dimitrov,
        IndexKind::Wirm1551,
        IndexKind::Wirm1M51,
        IndexKind::Wirm1522,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IndexKind::Arv => "iARV",
            IndexKind::Mav => "iMAV",
            IndexKind::Rms => "iRMS",
            IndexKind::MeanFrequency => "iMNF",
            IndexKind::MedianFrequency => "iMDF",
            IndexKind::Dimitrov => "FInsm5",
            IndexKind::Wirm1551 => "WIRM1551",
            IndexKind::Wirm1M51 => "WIRM1M51",
            IndexKind::Wirm1522 => "WIRM1522",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        IndexKind::ALL
            .iter()
            .find(|k| k.name().eq_ignore_ascii_case(name))
            .copied()
            .ok_or_else(|| Error::InvalidManifest(format!("unknown index '{name}'")))
    }

    pub fn family(&self) -> IndexFamily {
        match self {
            IndexKind::Arv | IndexKind::Mav | IndexKind::Rms => IndexFamily::Amplitude,
            IndexKind::MeanFrequency | IndexKind::MedianFrequency | IndexKind::Dimitrov => {
                IndexFamily::Spectral
            }
            IndexKind::Wirm1551 | IndexKind::Wirm1M51 | IndexKind::Wirm1522 => {
                IndexFamily::Wavelet
            }
        }
    }
}

impl std::fmt::Display for IndexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Time-stamped per-window values of one index for one channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowedFeatureSeries {
    index: IndexKind,
    muscle: Muscle,
    times: Vec<f64>,
    values: Vec<f64>,
    window_duration_s: f64,
    hop_duration_s: f64,
}

impl WindowedFeatureSeries {
    pub fn new(
        index: IndexKind,
        muscle: Muscle,
        times: Vec<f64>,
        values: Vec<f64>,
        window_duration_s: f64,
        hop_duration_s: f64,
    ) -> Result<Self> {
        if times.len() != values.len() || times.is_empty() {
            return Err(Error::InvalidSignal(
                "series times and values must be non-empty and equal length".into(),
            ));
        }
        if times.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidSignal(
                "series times must be strictly increasing".into(),
            ));
        }
        if index.family() == IndexFamily::Amplitude && values.iter().any(|v| *v < 0.0) {
            return Err(Error::InvalidSignal(
                "amplitude-index values must be nonnegative".into(),
            ));
        }
        Ok(Self {
            index,
            muscle,
            times,
            values,
            window_duration_s,
            hop_duration_s,
        })
    }

    pub fn index(&self) -> IndexKind {
        self.index
    }

    pub fn muscle(&self) -> &Muscle {
        &self.muscle
    }

    /// Window-center timestamps, seconds.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn window_duration_s(&self) -> f64 {
        self.window_duration_s
    }

    pub fn hop_duration_s(&self) -> f64 {
        self.hop_duration_s
    }

    /// Time span between first and last window center, seconds.
    pub fn span_s(&self) -> f64 {
        self.times.last().unwrap() - self.times.first().unwrap()
    }

    /// Same series with every value multiplied by a positive factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.index,
            self.muscle.clone(),
            self.times.clone(),
            self.values.iter().map(|v| v * factor).collect(),
            self.window_duration_s,
            self.hop_duration_s,
        )
    }
}

/// Windowing and wavelet configuration for index computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    /// Amplitude-family analysis window, seconds.
    pub amplitude_window_s: f64,
    pub amplitude_hop_s: f64,
    /// Spectral-family analysis window, seconds. Longer than the amplitude
    /// window: 0.2 s would give only 5 Hz resolution.
    pub spectral_window_s: f64,
    pub spectral_hop_s: f64,
    pub wavelet_window_s: f64,
    pub wavelet_hop_s: f64,
    pub wavelet_family: WaveletFamily,
    pub wavelet_levels: usize,
    pub wirm: WirmConfig,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            amplitude_window_s: 0.2,
            amplitude_hop_s: 0.2,
            spectral_window_s: 1.024,
            spectral_hop_s: 0.512,
            wavelet_window_s: 1.024,
            wavelet_hop_s: 0.512,
            wavelet_family: WaveletFamily::Sym5,
            wavelet_levels: 5,
            wirm: WirmConfig::default(),
        }
    }
}

impl AnalysisConfig {
    fn window_and_hop(&self, family: IndexFamily) -> (f64, f64) {
        match family {
            IndexFamily::Amplitude => (self.amplitude_window_s, self.amplitude_hop_s),
            IndexFamily::Spectral => (self.spectral_window_s, self.spectral_hop_s),
            IndexFamily::Wavelet => (self.wavelet_window_s, self.wavelet_hop_s),
        }
    }
}

/// Amplitude index series (iARV / iMAV / iRMS) for every channel of a
/// recording. Channels not already flagged rectified are rectified first.
pub fn amplitude_series(
    recording: &TrialRecording,
    index: IndexKind,
    window_s: f64,
    hop_s: f64,
) -> Result<Vec<WindowedFeatureSeries>> {
    if index.family() != IndexFamily::Amplitude {
        return Err(Error::InvalidManifest(format!(
            "{index} is not an amplitude index"
        )));
    }
    let fs = recording.sample_rate();
    recording
        .channels()
        .iter()
        .map(|channel| {
            let rectified;
            let source = if channel.is_rectified() {
                channel
            } else {
                rectified = crate::signal::rectify(channel);
                &rectified
            };
            let windows = make_windows(source, fs, window_s, hop_s)?;
            let mut times = Vec::with_capacity(windows.len());
            let mut values = Vec::with_capacity(windows.len());
            for w in &windows {
                times.push(w.center_time(fs));
                values.push(match index {
                    IndexKind::Arv => w.arv(),
                    IndexKind::Mav => w.mav(),
                    IndexKind::Rms => w.rms(),
                    _ => unreachable!(),
                });
            }
            WindowedFeatureSeries::new(index, channel.muscle().clone(), times, values, window_s, hop_s)
        })
        .collect()
}

/// Any index series for every channel of a recording, with windowing taken
/// from the configuration. Spectral and wavelet indices error with
/// [`Error::RectifiedInput`] on rectified recordings.
pub fn compute_series(
    recording: &TrialRecording,
    index: IndexKind,
    config: &AnalysisConfig,
) -> Result<Vec<WindowedFeatureSeries>> {
    let family = index.family();
    let (window_s, hop_s) = config.window_and_hop(family);
    if family == IndexFamily::Amplitude {
        return amplitude_series(recording, index, window_s, hop_s);
    }

    let fs = recording.sample_rate();
    recording
        .channels()
        .iter()
        .map(|channel| {
            let windows = make_windows(channel, fs, window_s, hop_s)?;
            let mut times = Vec::with_capacity(windows.len());
            let mut values = Vec::with_capacity(windows.len());
            for w in &windows {
                let value = match family {
                    IndexFamily::Spectral => {
                        let spectrum = power_spectrum(w, fs)?;
                        match index {
                            IndexKind::MeanFrequency => mean_frequency(&spectrum)?,
                            IndexKind::MedianFrequency => median_frequency(&spectrum)?,
                            IndexKind::Dimitrov => dimitrov_index(&spectrum)?,
                            _ => unreachable!(),
                        }
                    }
                    IndexFamily::Wavelet => {
                        let indices = wavelet_indices(
                            w,
                            fs,
                            config.wavelet_family,
                            config.wavelet_levels,
                            &config.wirm,
                        )?;
                        match index {
                            IndexKind::Wirm1551 => indices.wirm1551,
                            IndexKind::Wirm1M51 => indices.wirm1m51,
                            IndexKind::Wirm1522 => indices.wirm1522,
                            _ => unreachable!(),
                        }
                    }
                    IndexFamily::Amplitude => unreachable!(),
                };
                times.push(w.center_time(fs));
                values.push(value);
            }
            WindowedFeatureSeries::new(index, channel.muscle().clone(), times, values, window_s, hop_s)
        })
        .collect()
}
