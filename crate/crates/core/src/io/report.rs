//! Report and series emission: JSON (full precision), CSV (2 decimal
//! places, matching the published table's precision), the muscle × surface
//! percent-increase matrix, ranking files, and series CSVs with exact
//! (shortest round-trip) float formatting.

use crate::error::{Error, Result};
use crate::io::atomic::write_atomic;
use crate::metadata::Surface;
use crate::series::{IndexKind, WindowedFeatureSeries};
use crate::signal::Muscle;
use crate::trend::{FatigueReport, SurfaceRanking};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub fn write_report_json(path: &Path, report: &FatigueReport) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::InvalidManifest(format!("report serialization: {e}")))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_report_json(path: &Path) -> Result<FatigueReport> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidManifest(format!("{}: {e}", path.display())))
}

pub const REPORT_CSV_HEADER: &str =
    "muscle,index,surface,percent_increase,slope_per_min,second_wind_minimum_s,head_mean,tail_mean";

/// Long-form summary CSV: one row per (muscle, index) summary, floats at
/// 2 decimal places, deterministic row order.
pub fn write_report_csv(path: &Path, report: &FatigueReport) -> Result<()> {
    let mut rows = report.summaries.clone();
    rows.sort_by(|a, b| {
        a.surface
            .cmp(&b.surface)
            .then_with(|| a.muscle.cmp(&b.muscle))
            .then_with(|| a.index.cmp(&b.index))
    });
    let mut out = String::new();
    out.push_str(REPORT_CSV_HEADER);
    out.push('\n');
    for s in &rows {
        let second_wind = s
            .second_wind_minimum_s
            .map(|t| format!("{t:.2}"))
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{:.2},{:.4},{},{:.4},{:.4}",
            s.muscle.label(),
            s.index,
            s.surface.label(),
            s.percent_increase,
            s.slope_per_min,
            second_wind,
            s.head_mean,
            s.tail_mean
        )
        .unwrap();
    }
    write_atomic(path, out.as_bytes())
}

/// Muscle × surface percent-increase matrix for one index, the shape of the
/// published results table. Surfaces order by their canonical column rank.
pub fn write_percent_matrix_csv(
    path: &Path,
    report: &FatigueReport,
    index: IndexKind,
) -> Result<()> {
    let mut surfaces: Vec<Surface> = Vec::new();
    let mut muscles: Vec<Muscle> = Vec::new();
    for s in report.summaries.iter().filter(|s| s.index == index) {
        if !surfaces.contains(&s.surface) {
            surfaces.push(s.surface.clone());
        }
        if !muscles.contains(&s.muscle) {
            muscles.push(s.muscle.clone());
        }
    }
    if surfaces.is_empty() {
        return Err(Error::IncomparableReports(format!(
            "report has no {index} summaries"
        )));
    }
    surfaces.sort();

    let mut out = String::new();
    out.push_str("Muscle");
    for s in &surfaces {
        write!(out, ",{}", s.label()).unwrap();
    }
    out.push('\n');
    for muscle in &muscles {
        write!(out, "{}", muscle.label()).unwrap();
        for surface in &surfaces {
            let cell = report
                .summaries
                .iter()
                .find(|s| s.index == index && &s.muscle == muscle && &s.surface == surface);
            match cell {
                Some(s) => write!(out, ",{:.2}", s.percent_increase).unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

pub const RANKING_CSV_HEADER: &str = "scope,rank,surface";

/// Overall plus per-muscle surface orders, descending fatigue.
pub fn write_ranking_csv(path: &Path, ranking: &SurfaceRanking) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "# index={} aggregation={:?}", ranking.index, ranking.aggregation).unwrap();
    out.push_str(RANKING_CSV_HEADER);
    out.push('\n');
    for (rank, surface) in ranking.overall.iter().enumerate() {
        writeln!(out, "overall,{},{}", rank + 1, surface.label()).unwrap();
    }
    for (muscle, order) in &ranking.per_muscle {
        for (rank, surface) in order.iter().enumerate() {
            writeln!(out, "{},{},{}", muscle.label(), rank + 1, surface.label()).unwrap();
        }
    }
    write_atomic(path, out.as_bytes())
}

pub const SERIES_CSV_HEADER: &str = "time_s,value";

/// Series CSV: a metadata comment line (tab-separated `key=value` pairs,
/// since labels contain spaces), then exact `time_s,value` rows. Floats use
/// shortest round-trip formatting, so reading the file back reproduces the
/// in-memory series bit for bit.
pub fn write_series_csv(
    path: &Path,
    series: &WindowedFeatureSeries,
    label: &str,
) -> Result<()> {
    let mut out = String::new();
    writeln!(
        out,
        "# index={}\tmuscle={}\twindow_s={}\thop_s={}\tlabel={}",
        series.index(),
        series.muscle().label(),
        series.window_duration_s(),
        series.hop_duration_s(),
        label
    )
    .unwrap();
    out.push_str(SERIES_CSV_HEADER);
    out.push('\n');
    for (t, v) in series.times().iter().zip(series.values()) {
        writeln!(out, "{t},{v}").unwrap();
    }
    write_atomic(path, out.as_bytes())
}

/// A series CSV read back into memory, with its curve label.
pub fn read_series_csv(path: &Path) -> Result<(WindowedFeatureSeries, String)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();

    let (_, meta) = lines.next().ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 1,
        detail: "file is empty".into(),
    })?;
    let meta = meta.strip_prefix("# ").ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 1,
        detail: "missing metadata comment line".into(),
    })?;
    let mut index = None;
    let mut muscle = None;
    let mut window_s = None;
    let mut hop_s = None;
    let mut label = String::new();
    for pair in meta.split('\t') {
        if let Some((key, value)) = pair.split_once('=') {
            match key {
                "index" => index = Some(IndexKind::parse(value)?),
                "muscle" => muscle = Some(value.to_string()),
                "window_s" => window_s = value.parse::<f64>().ok(),
                "hop_s" => hop_s = value.parse::<f64>().ok(),
                "label" => label = value.to_string(),
                _ => {}
            }
        }
    }
    let index = index.ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 1,
        detail: "metadata missing index".into(),
    })?;
    let muscle = match muscle.as_deref() {
        Some("Vastus Medialis") => Muscle::VastusMedialis,
        Some("Rectus Femoris") => Muscle::RectusFemoris,
        Some("Vastus Lateralis") => Muscle::VastusLateralis,
        Some(other) => Muscle::Other(other.to_string()),
        None => {
            return Err(Error::MalformedHeader {
                path: path.to_path_buf(),
                line: 1,
                detail: "metadata missing muscle".into(),
            })
        }
    };

    let (header_idx, header) = lines.next().ok_or_else(|| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 2,
        detail: "missing column header".into(),
    })?;
    if header != SERIES_CSV_HEADER {
        return Err(Error::MalformedHeader {
            path: path.to_path_buf(),
            line: header_idx + 1,
            detail: format!("expected '{SERIES_CSV_HEADER}', got '{header}'"),
        });
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for (line_idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (t, v) = line.split_once(',').ok_or_else(|| Error::TruncatedRow {
            path: path.to_path_buf(),
            line: line_idx + 1,
            detail: "expected 'time_s,value'".into(),
        })?;
        let parse = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::TruncatedRow {
                path: path.to_path_buf(),
                line: line_idx + 1,
                detail: format!("invalid number '{s}'"),
            })
        };
        times.push(parse(t)?);
        values.push(parse(v)?);
    }
    let series = WindowedFeatureSeries::new(
        index,
        muscle,
        times,
        values,
        window_s.unwrap_or(0.0),
        hop_s.unwrap_or(0.0),
    )?;
    Ok((series, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metadata::TrialMetadata;
    use crate::trend::{Aggregation, TrendSummary};

    fn table_report() -> FatigueReport {
        let cell = |muscle: Muscle, surface: Surface, percent: f64| TrendSummary {
            muscle,
            index: IndexKind::Arv,
            surface,
            percent_increase: percent,
            slope_per_min: 0.01,
            second_wind_minimum_s: Some(62.5),
            head_mean: 1.0,
            tail_mean: 1.0 + percent / 100.0,
            head_duration_s: 30.0,
            tail_duration_s: 30.0,
        };
        FatigueReport {
            trials: vec![TrialMetadata::default()],
            summaries: vec![
                cell(Muscle::VastusMedialis, Surface::Asphalt, 100.04),
                cell(Muscle::VastusMedialis, Surface::Sand, 127.71),
                cell(Muscle::VastusMedialis, Surface::AthleticsTrack, 54.9),
                cell(Muscle::RectusFemoris, Surface::Asphalt, 100.02),
                cell(Muscle::RectusFemoris, Surface::Sand, 126.75),
                cell(Muscle::RectusFemoris, Surface::AthleticsTrack, 121.22),
                cell(Muscle::VastusLateralis, Surface::Asphalt, 99.14),
                cell(Muscle::VastusLateralis, Surface::Sand, 100.07),
                cell(Muscle::VastusLateralis, Surface::AthleticsTrack, 35.9),
            ],
            ranking: None,
        }
    }

    #[test]
    fn matrix_csv_reproduces_published_row_shape() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("matrix.csv");
        write_percent_matrix_csv(&path, &table_report(), IndexKind::Arv).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Muscle,Asphalt,Sand,Athletics Track");
        assert!(text.contains("Vastus Medialis,100.04,127.71,54.90"));
        assert!(text.contains("Rectus Femoris,100.02,126.75,121.22"));
        assert!(text.contains("Vastus Lateralis,99.14,100.07,35.90"));
    }

    #[test]
    fn empty_summary_list_yields_header_only_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        let report = FatigueReport {
            trials: vec![],
            summaries: vec![],
            ranking: None,
        };
        write_report_csv(&path, &report).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, format!("{REPORT_CSV_HEADER}\n"));
    }

    #[test]
    fn report_json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let report = table_report();
        write_report_json(&path, &report).unwrap();
        let back = read_report_json(&path).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn report_emission_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        let mut report = table_report();
        write_report_csv(&a, &report).unwrap();
        report.summaries.reverse();
        write_report_csv(&b, &report).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }

    #[test]
    fn series_csv_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let series = WindowedFeatureSeries::new(
            IndexKind::MeanFrequency,
            Muscle::RectusFemoris,
            vec![0.512, 1.024, 1.536],
            vec![150.123456789012, 149.0, 147.5e-1],
            1.024,
            0.512,
        )
        .unwrap();
        let path = dir.path().join("series.csv");
        write_series_csv(&path, &series, "Sand").unwrap();
        let (back, label) = read_series_csv(&path).unwrap();
        assert_eq!(label, "Sand");
        assert_eq!(back.index(), IndexKind::MeanFrequency);
        assert_eq!(back.muscle(), &Muscle::RectusFemoris);
        assert_eq!(back.times(), series.times());
        assert_eq!(back.values(), series.values());
    }

    #[test]
    fn ranking_csv_lists_overall_then_muscles() {
        let dir = tempfile::tempdir().unwrap();
        let ranking = SurfaceRanking {
            index: IndexKind::Arv,
            aggregation: Aggregation::PerMuscle,
            overall: vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack],
            per_muscle: vec![(
                Muscle::VastusMedialis,
                vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack],
            )],
        };
        let path = dir.path().join("ranking.csv");
        write_ranking_csv(&path, &ranking).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("overall,1,Sand"));
        assert!(text.contains("overall,3,Athletics Track"));
        assert!(text.contains("Vastus Medialis,1,Sand"));
    }
}
