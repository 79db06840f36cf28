//! Windowed power-spectrum estimation and the spectral fatigue indices
//! built on it: mean frequency, median frequency, and the Dimitrov
//! spectral moment ratio FInsm5.

use crate::error::{Error, Result};
use crate::signal::Window;
use rustfft::{num_complex::Complex, FftPlanner};

/// Discrete one-sided power spectrum of one analysis window.
///
/// Frequencies run uniformly from 0 to the source Nyquist; total power is
/// taper-compensated so it matches the Hann-weighted mean square of the
/// window (exact Parseval identity, see [`power_spectrum`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEstimate {
    frequencies: Vec<f64>,
    power: Vec<f64>,
}

impl SpectralEstimate {
    pub fn new(frequencies: Vec<f64>, power: Vec<f64>) -> Result<Self> {
        if frequencies.len() != power.len() || frequencies.is_empty() {
            return Err(Error::DegenerateSpectrum(
                "frequency and power axes differ in length or are empty".into(),
            ));
        }
        if frequencies[0] != 0.0 {
            return Err(Error::DegenerateSpectrum(
                "frequency axis must start at 0".into(),
            ));
        }
        if frequencies.len() > 1 {
            let df = frequencies[1] - frequencies[0];
            if !(df > 0.0) {
                return Err(Error::DegenerateSpectrum(
                    "frequency axis must be ascending".into(),
                ));
            }
            for (i, pair) in frequencies.windows(2).enumerate() {
                if ((pair[1] - pair[0]) - df).abs() > 1e-9 * df {
                    return Err(Error::DegenerateSpectrum(format!(
                        "frequency axis not uniform at bin {i}"
                    )));
                }
            }
        }
        if power.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::DegenerateSpectrum(
                "power values must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { frequencies, power })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn bin_width(&self) -> f64 {
        if self.frequencies.len() > 1 {
            self.frequencies[1] - self.frequencies[0]
        } else {
            0.0
        }
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    /// Multiply every power value by a nonnegative factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.frequencies.clone(),
            self.power.iter().map(|p| p * factor).collect(),
        )
    }

    /// Compress (c < 1) or dilate the frequency axis, keeping powers.
    /// `P'(c·f) = P(f)`: content at `f` moves to `c·f`.
    pub fn frequency_scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.frequencies.iter().map(|f| f * c).collect(),
            self.power.clone(),
        )
    }
}

/// Periodogram of the mean-removed, Hann-tapered window.
///
/// Bin spacing is `sample_rate / len`. Power is one-sided and normalized by
/// the taper energy, so `Σ power == Σ (w·x̃)² / Σ w²` exactly (Parseval with
/// taper compensation), where `x̃` is the mean-removed window and `w` the
/// periodic Hann taper.
///
/// Errors with [`Error::RectifiedInput`]: spectral indices on a
/// full-wave-rectified signal are invalid, so the estimate is refused
/// rather than silently computed.
pub fn power_spectrum(window: &Window<'_>, sample_rate: f64) -> Result<SpectralEstimate> {
    if window.is_rectified() {
        return Err(Error::RectifiedInput);
    }
    let n = window.len();
    if n < 8 {
        return Err(Error::WindowTooShort { len: n, min: 8 });
    }

    let values = window.values();
    let mean = values.iter().sum::<f64>() / n as f64;
    let taper: Vec<f64> = (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos()))
        .collect();
    let taper_energy: f64 = taper.iter().map(|w| w * w).sum();

    let mut buf: Vec<Complex<f64>> = values
        .iter()
        .zip(&taper)
        .map(|(x, w)| Complex::new((x - mean) * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let bins = n / 2 + 1;
    let norm = 1.0 / (n as f64 * taper_energy);
    let mut power = Vec::with_capacity(bins);
    for (k, y) in buf.iter().take(bins).enumerate() {
        let one_sided = if k == 0 || (n % 2 == 0 && k == n / 2) {
            1.0
        } else {
            2.0
        };
        power.push(one_sided * y.norm_sqr() * norm);
    }
    let df = sample_rate / n as f64;
    let frequencies = (0..bins).map(|k| k as f64 * df).collect();
    SpectralEstimate::new(frequencies, power)
}

/// Mean frequency of a spectrum: `Σ f·P(f) / Σ P(f)`.
pub fn mean_frequency(spectrum: &SpectralEstimate) -> Result<f64> {
    let total = spectrum.total_power();
    if total <= 0.0 {
        return Err(Error::EmptySpectrum);
    }
    let weighted: f64 = spectrum
        .frequencies
        .iter()
        .zip(&spectrum.power)
        .map(|(f, p)| f * p)
        .sum();
    Ok(weighted / total)
}

/// Median frequency: the smallest frequency where cumulative power reaches
/// half the total, linearly interpolated within the crossing bin.
pub fn median_frequency(spectrum: &SpectralEstimate) -> Result<f64> {
    let total = spectrum.total_power();
    if total <= 0.0 {
        return Err(Error::EmptySpectrum);
    }
    let target = total / 2.0;
    let mut cumulative = 0.0;
    for (i, p) in spectrum.power.iter().enumerate() {
        let next = cumulative + p;
        if next >= target {
            if i == 0 {
                return Ok(spectrum.frequencies[0]);
            }
            let fraction = (target - cumulative) / p;
            let f_prev = spectrum.frequencies[i - 1];
            let f_here = spectrum.frequencies[i];
            return Ok(f_prev + fraction * (f_here - f_prev));
        }
        cumulative = next;
    }
    // Reachable only through floating rounding on the last bin.
    Ok(*spectrum.frequencies.last().unwrap())
}

/// Dimitrov's spectral fatigue index FInsm5: the ratio of spectral moments
/// `M(−1) / M(5)` with `M(k) = Σ f^k · P(f)`, the DC bin excluded to avoid
/// the `f^(−1)` singularity. Increases as the spectrum shifts left.
pub fn dimitrov_index(spectrum: &SpectralEstimate) -> Result<f64> {
    if spectrum.total_power() <= 0.0 {
        return Err(Error::EmptySpectrum);
    }
    let mut m_minus1 = 0.0;
    let mut m_plus5 = 0.0;
    let mut nonzero_f_power = 0.0;
    for (f, p) in spectrum.frequencies.iter().zip(&spectrum.power) {
        if *f == 0.0 {
            continue;
        }
        nonzero_f_power += p;
        m_minus1 += p / f;
        m_plus5 += p * f.powi(5);
    }
    if nonzero_f_power <= 0.0 {
        return Err(Error::DegenerateSpectrum(
            "all power sits in the excluded DC bin".into(),
        ));
    }
    Ok(m_minus1 / m_plus5)
}
