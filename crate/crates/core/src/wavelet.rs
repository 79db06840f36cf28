//! Multi-level discrete wavelet transform (sym5 / db5) and the
//! wavelet-moment ratio fatigue indices computed from its band energies.
//!
//! The transform is periodized and critically sampled: the per-level
//! analysis matrix is orthogonal, so reconstruction and energy
//! conservation are exact up to floating rounding. This requires window
//! lengths divisible by `2^levels`.

use crate::error::{Error, Result};
use crate::signal::Window;
use serde::{Deserialize, Serialize};

/// Daubechies-5 scaling filter (10 taps, 5 vanishing moments), derived by
/// spectral factorization of the Daubechies polynomial with all roots
/// inside the unit circle (minimum phase).
const DB5: [f64; 10] = [
    0.16010239797419293,
    0.6038292697971896,
    0.7243085284377729,
    0.13842814590132074,
    -0.24229488706638203,
    -0.032244869584638375,
    0.07757149384004572,
    -0.006241490212798274,
    -0.012580751999081999,
    0.0033357252854737712,
];

/// Symlet-5 scaling filter (10 taps, 5 vanishing moments): same magnitude
/// response as db5 with the root selection of minimal phase nonlinearity.
const SYM5: [f64; 10] = [
    0.027333068344998768,
    0.02951949092570626,
    -0.039134249302313844,
    0.19939753397685558,
    0.7234076904040407,
    0.633978963456792,
    0.01660210576451085,
    -0.17532808990805623,
    -0.021101834024689042,
    0.019538882735249827,
];

/// Orthonormal wavelet family used for the time-frequency indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletFamily {
    Sym5,
    Db5,
}

impl WaveletFamily {
    pub fn name(&self) -> &'static str {
        match self {
            WaveletFamily::Sym5 => "sym5",
            WaveletFamily::Db5 => "db5",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sym5" => Ok(WaveletFamily::Sym5),
            "db5" => Ok(WaveletFamily::Db5),
            other => Err(Error::InvalidManifest(format!(
                "unknown wavelet family '{other}' (expected sym5 or db5)"
            ))),
        }
    }

    /// Lowpass (scaling) analysis filter.
    pub fn scaling_filter(&self) -> &'static [f64; 10] {
        match self {
            WaveletFamily::Sym5 => &SYM5,
            WaveletFamily::Db5 => &DB5,
        }
    }

    /// Highpass (wavelet) filter via the quadrature-mirror relation
    /// `g[n] = (−1)^n · h[L−1−n]`.
    pub fn wavelet_filter(&self) -> [f64; 10] {
        let h = self.scaling_filter();
        let mut g = [0.0; 10];
        for (n, slot) in g.iter_mut().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            *slot = sign * h[h.len() - 1 - n];
        }
        g
    }
}

impl std::fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// L-level multiresolution decomposition of one analysis window.
#[derive(Debug, Clone)]
pub struct WaveletDecomposition {
    family: WaveletFamily,
    levels: usize,
    /// `details[j]` holds level `j+1` detail coefficients; level 1 is the
    /// highest-frequency band.
    details: Vec<Vec<f64>>,
    approximation: Vec<f64>,
    /// Hz range per detail level, index-aligned with `details`.
    band_edges: Vec<(f64, f64)>,
    /// Hz range of the approximation band.
    approximation_band: (f64, f64),
}

impl WaveletDecomposition {
    pub fn family(&self) -> WaveletFamily {
        self.family
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn detail_coefficients(&self, level: usize) -> &[f64] {
        &self.details[level - 1]
    }

    pub fn approximation_coefficients(&self) -> &[f64] {
        &self.approximation
    }

    pub fn band_edges(&self, level: usize) -> (f64, f64) {
        self.band_edges[level - 1]
    }

    pub fn approximation_band(&self) -> (f64, f64) {
        self.approximation_band
    }

    /// Sum of squared coefficients across every band.
    pub fn total_energy(&self) -> f64 {
        let detail: f64 = self
            .details
            .iter()
            .map(|d| d.iter().map(|c| c * c).sum::<f64>())
            .sum();
        detail + self.approximation.iter().map(|c| c * c).sum::<f64>()
    }

    /// Pseudo-spectrum: per-band `(center Hz, energy)`, ascending in
    /// frequency (approximation first, then details from deepest level up).
    pub fn band_energies(&self) -> Vec<(f64, f64)> {
        let mut bands = Vec::with_capacity(self.levels + 1);
        let (lo, hi) = self.approximation_band;
        bands.push((
            (lo + hi) / 2.0,
            self.approximation.iter().map(|c| c * c).sum::<f64>(),
        ));
        for level in (1..=self.levels).rev() {
            let (lo, hi) = self.band_edges(level);
            bands.push((
                (lo + hi) / 2.0,
                self.details[level - 1].iter().map(|c| c * c).sum::<f64>(),
            ));
        }
        bands
    }
}

/// One periodized analysis step: split `x` (even length) into approximation
/// and detail coefficients of half length.
fn analyze_level(x: &[f64], h: &[f64], g: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    debug_assert!(n % 2 == 0);
    let half = n / 2;
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    for k in 0..half {
        let mut sa = 0.0;
        let mut sd = 0.0;
        for m in 0..h.len() {
            let idx = (2 * k + m) % n;
            sa += h[m] * x[idx];
            sd += g[m] * x[idx];
        }
        approx[k] = sa;
        detail[k] = sd;
    }
    (approx, detail)
}

/// Adjoint of [`analyze_level`]; exact inverse for orthonormal filters.
fn synthesize_level(approx: &[f64], detail: &[f64], h: &[f64], g: &[f64]) -> Vec<f64> {
    let half = approx.len();
    let n = half * 2;
    let mut x = vec![0.0; n];
    for k in 0..half {
        for m in 0..h.len() {
            let idx = (2 * k + m) % n;
            x[idx] += approx[k] * h[m] + detail[k] * g[m];
        }
    }
    x
}

/// L-level DWT of a window.
///
/// Preconditions: the window is not rectified, its length is at least
/// `filter_len · 2^levels`, and divisible by `2^levels` (periodized,
/// critically sampled transform).
pub fn dwt(
    window: &Window<'_>,
    sample_rate: f64,
    family: WaveletFamily,
    levels: usize,
) -> Result<WaveletDecomposition> {
    if window.is_rectified() {
        return Err(Error::RectifiedInput);
    }
    let n = window.len();
    let filter_len = family.scaling_filter().len();
    if levels == 0 || levels >= usize::BITS as usize {
        return Err(Error::MaxLevelExceeded {
            levels,
            min_len: filter_len,
            len: n,
        });
    }
    let min_len = filter_len << levels;
    if n < min_len {
        return Err(Error::MaxLevelExceeded {
            levels,
            min_len,
            len: n,
        });
    }
    if n % (1 << levels) != 0 {
        return Err(Error::WindowNotDyadic { len: n, levels });
    }

    let h = family.scaling_filter();
    let g = family.wavelet_filter();
    let mut details = Vec::with_capacity(levels);
    let mut band_edges = Vec::with_capacity(levels);
    let mut current = window.values().to_vec();
    for level in 1..=levels {
        let (approx, detail) = analyze_level(&current, h, &g);
        details.push(detail);
        let hi = sample_rate / (1u64 << level) as f64;
        band_edges.push((hi / 2.0, hi));
        current = approx;
    }
    let approximation_band = (0.0, sample_rate / (1u64 << (levels + 1)) as f64);
    Ok(WaveletDecomposition {
        family,
        levels,
        details,
        approximation: current,
        band_edges,
        approximation_band,
    })
}

/// Invert a decomposition back to the original window samples.
pub fn inverse_dwt(decomposition: &WaveletDecomposition) -> Vec<f64> {
    let h = decomposition.family.scaling_filter();
    let g = decomposition.family.wavelet_filter();
    let mut current = decomposition.approximation.clone();
    for detail in decomposition.details.iter().rev() {
        current = synthesize_level(&current, detail, h, &g);
    }
    current
}

/// Which bands of the 5-level pseudo-spectrum a moment sums over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandSet {
    /// The detail bands only (levels 1..=L).
    Details,
    /// Detail bands plus the approximation band.
    All,
    /// Explicit detail levels (1 = highest frequency band).
    Levels(Vec<usize>),
}

impl BandSet {
    fn selects(&self, band_index: usize, levels: usize) -> bool {
        // band_index 0 is the approximation, 1..=levels are details from
        // deepest (lowest frequency) to level 1, matching band_energies().
        match self {
            BandSet::Details => band_index >= 1,
            BandSet::All => true,
            BandSet::Levels(selected) => {
                band_index >= 1 && selected.contains(&(levels + 1 - band_index))
            }
        }
    }
}

/// One wavelet index: a ratio of band-moment sums
/// `Σ f_b^num · E_b / Σ f_b^den · E_b` over the selected bands, with `f_b`
/// the band-center frequency and `E_b` the band energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRatioSpec {
    pub numerator_order: f64,
    pub numerator_bands: BandSet,
    pub denominator_order: f64,
    pub denominator_bands: BandSet,
}

/// Configuration of the three shipped wavelet-moment ratio indices.
///
/// The source publication names WIRM1551, WIRM1M51, and WIRM1522 without
/// formulas; these defaults are moment ratios `M(a)/M(b)` with `a < b`, so
/// each index strictly increases under a leftward spectral shift. Override
/// the orders and band sets in the run manifest to match a different
/// reading of the original definitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WirmConfig {
    #[serde(default = "default_wirm1551")]
    pub wirm1551: MomentRatioSpec,
    #[serde(default = "default_wirm1m51")]
    pub wirm1m51: MomentRatioSpec,
    #[serde(default = "default_wirm1522")]
    pub wirm1522: MomentRatioSpec,
}

/// M(−1)/M(5) over the detail bands: the DWT analog of FInsm5.
fn default_wirm1551() -> MomentRatioSpec {
    MomentRatioSpec {
        numerator_order: -1.0,
        numerator_bands: BandSet::Details,
        denominator_order: 5.0,
        denominator_bands: BandSet::Details,
    }
}

/// Same ratio over all bands including the approximation.
fn default_wirm1m51() -> MomentRatioSpec {
    MomentRatioSpec {
        numerator_order: -1.0,
        numerator_bands: BandSet::All,
        denominator_order: 5.0,
        denominator_bands: BandSet::All,
    }
}

/// M(−1)/M(2) over the detail bands.
fn default_wirm1522() -> MomentRatioSpec {
    MomentRatioSpec {
        numerator_order: -1.0,
        numerator_bands: BandSet::Details,
        denominator_order: 2.0,
        denominator_bands: BandSet::Details,
    }
}

impl Default for WirmConfig {
    fn default() -> Self {
        Self {
            wirm1551: default_wirm1551(),
            wirm1m51: default_wirm1m51(),
            wirm1522: default_wirm1522(),
        }
    }
}

/// Values of the three wavelet-moment ratio indices for one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletIndices {
    pub wirm1551: f64,
    pub wirm1m51: f64,
    pub wirm1522: f64,
}

fn band_moment(bands: &[(f64, f64)], set: &BandSet, order: f64, levels: usize) -> f64 {
    bands
        .iter()
        .enumerate()
        .filter(|(i, _)| set.selects(*i, levels))
        .map(|(_, (center, energy))| energy * center.powf(order))
        .sum()
}

/// Compute the three WIRM indices from a window's 5-level decomposition.
pub fn wavelet_indices(
    window: &Window<'_>,
    sample_rate: f64,
    family: WaveletFamily,
    levels: usize,
    config: &WirmConfig,
) -> Result<WaveletIndices> {
    let decomposition = dwt(window, sample_rate, family, levels)?;
    let bands = decomposition.band_energies();
    if bands.iter().all(|(_, e)| *e <= 0.0) {
        return Err(Error::DegenerateSpectrum(
            "all wavelet band energies are zero".into(),
        ));
    }
    let eval = |spec: &MomentRatioSpec| -> Result<f64> {
        let numerator = band_moment(&bands, &spec.numerator_bands, spec.numerator_order, levels);
        let denominator = band_moment(
            &bands,
            &spec.denominator_bands,
            spec.denominator_order,
            levels,
        );
        if denominator <= 0.0 || numerator <= 0.0 {
            return Err(Error::DegenerateSpectrum(
                "selected wavelet bands carry no energy".into(),
            ));
        }
        Ok(numerator / denominator)
    };
    Ok(WaveletIndices {
        wirm1551: eval(&config.wirm1551)?,
        wirm1m51: eval(&config.wirm1m51)?,
        wirm1522: eval(&config.wirm1522)?,
    })
}
