//! Trial metadata: participant, surface, distance, and front-end
//! configuration attached to each recording.

use crate::frontend::FrontEndConfig;
use serde::{Deserialize, Serialize};

/// Running surface of a trial. Canonical report column order is
/// Asphalt, Sand, AthleticsTrack (the published table order); `Other`
/// surfaces sort after those by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    Asphalt,
    Sand,
    AthleticsTrack,
    Other(String),
}

impl Surface {
    pub fn label(&self) -> &str {
        match self {
            Surface::Asphalt => "Asphalt",
            Surface::Sand => "Sand",
            Surface::AthleticsTrack => "Athletics Track",
            Surface::Other(name) => name,
        }
    }

    /// Canonical column rank used for deterministic report ordering.
    pub fn column_rank(&self) -> usize {
        match self {
            Surface::Asphalt => 0,
            Surface::Sand => 1,
            Surface::AthleticsTrack => 2,
            Surface::Other(_) => 3,
        }
    }

    pub fn parse(name: &str) -> Surface {
        match name.to_ascii_lowercase().replace([' ', '-', '_'], "").as_str() {
            "asphalt" => Surface::Asphalt,
            "sand" => Surface::Sand,
            "athleticstrack" | "track" => Surface::AthleticsTrack,
            _ => Surface::Other(name.to_string()),
        }
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::cmp::Ord for Surface {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.column_rank()
            .cmp(&other.column_rank())
            .then_with(|| self.label().cmp(other.label()))
    }
}

impl std::cmp::PartialOrd for Surface {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Acquisition metadata for one running trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialMetadata {
    pub participant_id: String,
    pub surface: Surface,
    pub distance_km: f64,
    pub ambient_temperature_c: Option<f64>,
    pub front_end: FrontEndConfig,
    pub recorded_at: Option<String>,
}

impl Default for TrialMetadata {
    fn default() -> Self {
        Self {
            participant_id: "anonymous".to_string(),
            surface: Surface::Other("unspecified".to_string()),
            distance_km: 5.0,
            ambient_temperature_c: None,
            front_end: FrontEndConfig::default(),
            recorded_at: None,
        }
    }
}

impl TrialMetadata {
    pub fn validate(&self) -> crate::error::Result<()> {
        if !(self.distance_km > 0.0) {
            return Err(crate::error::Error::InvalidManifest(format!(
                "trial distance must be positive (got {} km)",
                self.distance_km
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_parsing_recognizes_paper_surfaces() {
        assert_eq!(Surface::parse("sand"), Surface::Sand);
        assert_eq!(Surface::parse("Athletics Track"), Surface::AthleticsTrack);
        assert_eq!(Surface::parse("ASPHALT"), Surface::Asphalt);
        assert_eq!(
            Surface::parse("treadmill"),
            Surface::Other("treadmill".to_string())
        );
    }

    #[test]
    fn surfaces_order_by_canonical_columns() {
        let mut surfaces = vec![
            Surface::Other("grass".into()),
            Surface::AthleticsTrack,
            Surface::Sand,
            Surface::Asphalt,
        ];
        surfaces.sort();
        assert_eq!(
            surfaces,
            vec![
                Surface::Asphalt,
                Surface::Sand,
                Surface::AthleticsTrack,
                Surface::Other("grass".into()),
            ]
        );
    }
}
