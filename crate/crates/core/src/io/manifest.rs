//! Run manifest: one human-editable TOML document that drives a whole
//! reproducible run — trial files and metadata, index selection, window
//! configuration, trend parameters, and output settings.
//!
//! ```toml
//! indices = ["iARV", "iMNF", "FInsm5"]
//! sample_rate_hz = 1000.0
//!
//! [analysis]
//! amplitude_window_s = 0.2
//! amplitude_hop_s = 0.2
//!
//! [trend]
//! head_s = 30.0
//! tail_s = 30.0
//!
//! [output]
//! dir = "out"
//! format = "both"
//!
//! [[trial]]
//! name = "sand"
//! surface = "Sand"
//! participant = "p1"
//! distance_km = 5.0
//! temperature_c = 17.0
//! csv = "out/sand.csv"
//!
//! [trial.front_end]
//! gain_resistor_ohms = 100.0
//!
//! [trial.synthetic]
//! duration_s = 300.0
//! base_amplitude_mv = 0.5
//! band_width_hz = 60.0
//! seed = 42
//! amplitude_envelope = [[15.0, 1.0], [285.0, 2.2771]]
//! spectral_center_hz = [[0.0, 150.0]]
//! ```

use crate::error::{Error, Result};
use crate::frontend::{FrontEndConfig, SyntheticProfile};
use crate::metadata::{Surface, TrialMetadata};
use crate::series::{AnalysisConfig, IndexKind};
use crate::signal::Muscle;
use crate::trend::{Aggregation, TrendConfig};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Report format: "json", "csv", or "both".
    pub format: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: "both".to_string(),
        }
    }
}

/// Synthetic-trial description inside a manifest. One profile drives all
/// three channels; seeds are offset per channel and the amplitude envelope
/// can differ per muscle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub duration_s: f64,
    #[serde(default = "default_base_amplitude")]
    pub base_amplitude_mv: f64,
    #[serde(default = "default_band_width")]
    pub band_width_hz: f64,
    #[serde(default)]
    pub drift_mv_per_min: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_sinusoid_count")]
    pub sinusoid_count: usize,
    pub amplitude_envelope: Vec<(f64, f64)>,
    pub spectral_center_hz: Vec<(f64, f64)>,
    /// Optional per-muscle envelope overrides, keyed `vm` / `rf` / `vl`.
    #[serde(default)]
    pub channel_envelopes: ChannelEnvelopes,
}

fn default_base_amplitude() -> f64 {
    0.5
}
fn default_band_width() -> f64 {
    60.0
}
fn default_sinusoid_count() -> usize {
    200
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ChannelEnvelopes {
    pub vm: Option<Vec<(f64, f64)>>,
    pub rf: Option<Vec<(f64, f64)>>,
    pub vl: Option<Vec<(f64, f64)>>,
}

impl SyntheticSpec {
    /// Profile for one channel: seed offset by channel index, envelope
    /// taken from the per-muscle override when present.
    pub fn profile_for(&self, muscle: &Muscle, channel_index: u64) -> SyntheticProfile {
        let envelope = match muscle {
            Muscle::VastusMedialis => self.channel_envelopes.vm.clone(),
            Muscle::RectusFemoris => self.channel_envelopes.rf.clone(),
            Muscle::VastusLateralis => self.channel_envelopes.vl.clone(),
            Muscle::Other(_) => None,
        }
        .unwrap_or_else(|| self.amplitude_envelope.clone());
        SyntheticProfile {
            duration_s: self.duration_s,
            base_amplitude_mv: self.base_amplitude_mv,
            amplitude_envelope: envelope,
            spectral_center_hz: self.spectral_center_hz.clone(),
            band_width_hz: self.band_width_hz,
            drift_mv_per_min: self.drift_mv_per_min,
            noise_seed: self.seed.wrapping_add(channel_index),
            sinusoid_count: self.sinusoid_count,
        }
    }
}

/// One trial in a run: where its CSV lives, its acquisition metadata, and
/// (for synthetic trials) how to generate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialEntry {
    pub name: String,
    pub surface: String,
    #[serde(default = "default_participant")]
    pub participant: String,
    #[serde(default = "default_distance")]
    pub distance_km: f64,
    #[serde(default)]
    pub temperature_c: Option<f64>,
    pub csv: PathBuf,
    #[serde(default)]
    pub front_end: FrontEndConfig,
    #[serde(default)]
    pub recorded_at: Option<String>,
    #[serde(default)]
    pub synthetic: Option<SyntheticSpec>,
}

fn default_participant() -> String {
    "anonymous".to_string()
}
fn default_distance() -> f64 {
    5.0
}

impl TrialEntry {
    pub fn metadata(&self) -> TrialMetadata {
        TrialMetadata {
            participant_id: self.participant.clone(),
            surface: Surface::parse(&self.surface),
            distance_km: self.distance_km,
            ambient_temperature_c: self.temperature_c,
            front_end: self.front_end.clone(),
            recorded_at: self.recorded_at.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(default = "default_indices")]
    pub indices: Vec<String>,
    #[serde(default = "default_sample_rate")]
    pub sample_rate_hz: f64,
    #[serde(default = "default_aggregation")]
    pub aggregation: String,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub trend: TrendConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(rename = "trial", default)]
    pub trials: Vec<TrialEntry>,
}

fn default_indices() -> Vec<String> {
    vec!["iARV".to_string()]
}
fn default_sample_rate() -> f64 {
    1000.0
}
fn default_aggregation() -> String {
    "per-muscle".to_string()
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let manifest: RunManifest = toml::from_str(&text)
            .map_err(|e| Error::InvalidManifest(format!("{}: {e}", path.display())))?;
        manifest.validate()?;
        Ok(manifest)
    }

    /// Configuration-level validation; trial file existence is checked by
    /// the consumers that actually read them.
    pub fn validate(&self) -> Result<()> {
        if self.trials.is_empty() {
            return Err(Error::InvalidManifest("no [[trial]] entries".into()));
        }
        if !(self.sample_rate_hz > 0.0) {
            return Err(Error::InvalidManifest(format!(
                "sample_rate_hz must be positive (got {})",
                self.sample_rate_hz
            )));
        }
        self.parsed_indices()?;
        self.parsed_aggregation()?;
        let mut names = std::collections::BTreeSet::new();
        for trial in &self.trials {
            if !names.insert(&trial.name) {
                return Err(Error::InvalidManifest(format!(
                    "duplicate trial name '{}'",
                    trial.name
                )));
            }
            trial.metadata().validate()?;
            trial.front_end.validate(self.sample_rate_hz)?;
            if let Some(spec) = &trial.synthetic {
                for (i, muscle) in Muscle::trial_channels().iter().enumerate() {
                    spec.profile_for(muscle, i as u64)
                        .validate(self.sample_rate_hz)?;
                }
                // synthetic content must sit inside the board's pass band
                for (t, center) in &spec.spectral_center_hz {
                    if *center <= trial.front_end.hpf_cutoff_hz
                        || *center >= trial.front_end.lpf_cutoff_hz
                    {
                        return Err(Error::InvalidProfile(format!(
                            "trial '{}': spectral center {center} Hz at t={t} s outside the {}-{} Hz pass band",
                            trial.name,
                            trial.front_end.hpf_cutoff_hz,
                            trial.front_end.lpf_cutoff_hz
                        )));
                    }
                }
            }
        }
        if !(self.trend.head_s > 0.0) || !(self.trend.tail_s > 0.0) {
            return Err(Error::InvalidManifest(
                "trend head_s and tail_s must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn parsed_indices(&self) -> Result<Vec<IndexKind>> {
        if self.indices.is_empty() {
            return Err(Error::InvalidManifest("empty index list".into()));
        }
        self.indices.iter().map(|s| IndexKind::parse(s)).collect()
    }

    pub fn parsed_aggregation(&self) -> Result<Aggregation> {
        Aggregation::parse(&self.aggregation)
    }

    pub fn trial(&self, name: &str) -> Result<&TrialEntry> {
        self.trials
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::InvalidManifest(format!("no trial named '{name}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
indices = ["iARV", "iMNF"]

[[trial]]
name = "sand"
surface = "Sand"
csv = "out/sand.csv"
temperature_c = 17.0

[trial.synthetic]
duration_s = 120.0
seed = 7
amplitude_envelope = [[0.0, 1.0], [120.0, 2.0]]
spectral_center_hz = [[0.0, 150.0], [120.0, 120.0]]

[trial.synthetic.channel_envelopes]
vl = [[0.0, 1.0], [120.0, 1.5]]
"#;

    #[test]
    fn parses_minimal_manifest_with_defaults() {
        let manifest: RunManifest = toml::from_str(MINIMAL).unwrap();
        manifest.validate().unwrap();
        assert_eq!(manifest.sample_rate_hz, 1000.0);
        assert_eq!(
            manifest.parsed_indices().unwrap(),
            vec![IndexKind::Arv, IndexKind::MeanFrequency]
        );
        assert_eq!(manifest.analysis.amplitude_window_s, 0.2);
        assert_eq!(manifest.trend.head_s, 30.0);
        let trial = manifest.trial("sand").unwrap();
        assert_eq!(trial.metadata().surface, Surface::Sand);
        assert_eq!(trial.metadata().ambient_temperature_c, Some(17.0));

        let spec = trial.synthetic.as_ref().unwrap();
        let vm = spec.profile_for(&Muscle::VastusMedialis, 0);
        let vl = spec.profile_for(&Muscle::VastusLateralis, 2);
        assert_eq!(vm.noise_seed, 7);
        assert_eq!(vl.noise_seed, 9);
        assert_eq!(vm.amplitude_envelope.last().unwrap().1, 2.0);
        assert_eq!(vl.amplitude_envelope.last().unwrap().1, 1.5);
    }

    #[test]
    fn rejects_bad_manifests() {
        let manifest: std::result::Result<RunManifest, _> = toml::from_str("indices = 3");
        assert!(manifest.is_err());

        let empty: RunManifest = toml::from_str("").unwrap();
        assert!(matches!(
            empty.validate(),
            Err(Error::InvalidManifest(_))
        ));

        let bad_index: RunManifest = toml::from_str(
            r#"
indices = ["iXYZ"]
[[trial]]
name = "a"
surface = "Sand"
csv = "a.csv"
"#,
        )
        .unwrap();
        assert!(bad_index.validate().is_err());

        let dup: RunManifest = toml::from_str(
            r#"
[[trial]]
name = "a"
surface = "Sand"
csv = "a.csv"
[[trial]]
name = "a"
surface = "Asphalt"
csv = "b.csv"
"#,
        )
        .unwrap();
        assert!(matches!(dup.validate(), Err(Error::InvalidManifest(_))));
    }

    #[test]
    fn manifest_round_trips_through_toml() {
        let manifest: RunManifest = toml::from_str(MINIMAL).unwrap();
        let text = toml::to_string_pretty(&manifest).unwrap();
        let reparsed: RunManifest = toml::from_str(&text).unwrap();
        assert_eq!(manifest, reparsed);
    }

    #[test]
    fn wirm_orders_and_bands_are_overridable() {
        use crate::wavelet::BandSet;
        let manifest: RunManifest = toml::from_str(
            r#"
indices = ["WIRM1551"]

[analysis.wirm.wirm1551]
numerator_order = -2.0
numerator_bands = { levels = [1, 2, 3] }
denominator_order = 4.0
denominator_bands = "all"

[[trial]]
name = "a"
surface = "Sand"
csv = "a.csv"
"#,
        )
        .unwrap();
        manifest.validate().unwrap();
        let spec = &manifest.analysis.wirm.wirm1551;
        assert_eq!(spec.numerator_order, -2.0);
        assert_eq!(spec.numerator_bands, BandSet::Levels(vec![1, 2, 3]));
        assert_eq!(spec.denominator_order, 4.0);
        assert_eq!(spec.denominator_bands, BandSet::All);
        // untouched indices keep their defaults
        assert_eq!(manifest.analysis.wirm.wirm1522.denominator_order, 2.0);
    }

    #[test]
    fn synthetic_centers_must_sit_in_the_pass_band() {
        let manifest: RunManifest = toml::from_str(
            r#"
[[trial]]
name = "a"
surface = "Sand"
csv = "a.csv"

[trial.synthetic]
duration_s = 30.0
amplitude_envelope = [[0.0, 1.0]]
spectral_center_hz = [[0.0, 10.0]]
"#,
        )
        .unwrap();
        assert!(matches!(
            manifest.validate(),
            Err(Error::InvalidProfile(_))
        ));
    }
}
