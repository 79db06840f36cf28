//! Fatigue verdicts from windowed index series: percent increase between
//! trial start and end, least-squares trend slopes, second-wind minimum
//! detection, and cross-surface ranking.

use crate::error::{Error, Result};
use crate::metadata::{Surface, TrialMetadata};
use crate::series::{IndexKind, WindowedFeatureSeries};
use crate::signal::Muscle;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Endpoint-averaging and smoothing parameters for trend extraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrendConfig {
    /// Duration averaged at the start of the series ("beginning"), seconds.
    pub head_s: f64,
    /// Duration averaged at the end of the series ("end"), seconds.
    pub tail_s: f64,
    /// Moving-average span for second-wind detection, seconds.
    pub smoothing_s: f64,
    /// When true, the percent-increase baseline starts at the detected
    /// second-wind minimum instead of t = 0 (whose value is inflated).
    pub baseline_from_second_wind: bool,
}

impl Default for TrendConfig {
    fn default() -> Self {
        Self {
            head_s: 30.0,
            tail_s: 30.0,
            smoothing_s: 5.0,
            baseline_from_second_wind: false,
        }
    }
}

/// Per-muscle, per-index trend summary for one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSummary {
    pub muscle: Muscle,
    pub index: IndexKind,
    pub surface: Surface,
    /// `(tail_mean − head_mean) / head_mean · 100`, signed.
    pub percent_increase: f64,
    /// Ordinary least-squares slope, index units per minute.
    pub slope_per_min: f64,
    pub second_wind_minimum_s: Option<f64>,
    pub head_mean: f64,
    pub tail_mean: f64,
    pub head_duration_s: f64,
    pub tail_duration_s: f64,
}

/// Surface order plus the per-muscle orders it was derived from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRanking {
    pub index: IndexKind,
    pub aggregation: Aggregation,
    /// Surfaces in descending fatigue order under the chosen aggregation.
    pub overall: Vec<Surface>,
    /// Descending fatigue order per muscle (population order of muscles).
    pub per_muscle: Vec<(Muscle, Vec<Surface>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    /// Rank per muscle, then combine the per-muscle orders by mean rank
    /// (ties broken by surface name).
    PerMuscle,
    /// Rank by the mean percent increase across muscles.
    MeanAcrossMuscles,
}

impl Aggregation {
    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "per-muscle" | "per_muscle" | "permuscle" => Ok(Aggregation::PerMuscle),
            "mean-across-muscles" | "mean" => Ok(Aggregation::MeanAcrossMuscles),
            other => Err(Error::InvalidManifest(format!(
                "unknown aggregation '{other}'"
            ))),
        }
    }
}

/// Per-trial fatigue report: one summary per (muscle, index) pair, plus a
/// surface ranking when several trials were merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FatigueReport {
    pub trials: Vec<TrialMetadata>,
    pub summaries: Vec<TrendSummary>,
    pub ranking: Option<SurfaceRanking>,
}

fn head_tail_means(
    series: &WindowedFeatureSeries,
    head_s: f64,
    tail_s: f64,
) -> Result<(f64, f64)> {
    let times = series.times();
    let span = series.span_s();
    if span < head_s + tail_s {
        return Err(Error::SeriesTooShort {
            span_s: span,
            required_s: head_s + tail_s,
        });
    }
    let t0 = times[0];
    let t_end = *times.last().unwrap();
    let mut head_sum = 0.0;
    let mut head_n = 0usize;
    let mut tail_sum = 0.0;
    let mut tail_n = 0usize;
    for (t, v) in times.iter().zip(series.values()) {
        if *t <= t0 + head_s {
            head_sum += v;
            head_n += 1;
        }
        if *t >= t_end - tail_s {
            tail_sum += v;
            tail_n += 1;
        }
    }
    Ok((head_sum / head_n as f64, tail_sum / tail_n as f64))
}

/// Percent increase of a series between its beginning and end:
/// `((mean over last tail_s) − (mean over first head_s)) / (mean over first
/// head_s) · 100`.
pub fn percent_increase(
    series: &WindowedFeatureSeries,
    head_s: f64,
    tail_s: f64,
) -> Result<f64> {
    let (head_mean, tail_mean) = head_tail_means(series, head_s, tail_s)?;
    if !(head_mean > 0.0) {
        return Err(Error::ZeroBaseline);
    }
    Ok((tail_mean - head_mean) / head_mean * 100.0)
}

/// Ordinary least-squares slope of value against time, rescaled to
/// index units per minute.
pub fn linear_trend(series: &WindowedFeatureSeries) -> Result<f64> {
    let n = series.len();
    if n < 2 {
        return Err(Error::SeriesTooShort {
            span_s: 0.0,
            required_s: series.hop_duration_s(),
        });
    }
    let times = series.times();
    let values = series.values();
    let t_mean = times.iter().sum::<f64>() / n as f64;
    let v_mean = values.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, v) in times.iter().zip(values) {
        num += (t - t_mean) * (v - v_mean);
        den += (t - t_mean) * (t - t_mean);
    }
    Ok(num / den * 60.0)
}

/// Time of the global minimum of the moving-average-smoothed series,
/// reported only when the minimum is interior (not the first or last
/// smoothed point). A boundary minimum means no second-wind dip.
pub fn second_wind_minimum(
    series: &WindowedFeatureSeries,
    smoothing_s: f64,
) -> Result<Option<f64>> {
    let span = series.span_s();
    if span <= 2.0 * smoothing_s {
        return Err(Error::SeriesTooShort {
            span_s: span,
            required_s: 2.0 * smoothing_s,
        });
    }
    let hop = series.hop_duration_s();
    let k = ((smoothing_s / hop).round() as usize).clamp(1, series.len());
    let values = series.values();
    let times = series.times();

    let m = values.len() - k + 1;
    let mut best_idx = 0usize;
    let mut best = f64::INFINITY;
    let mut acc: f64 = values[..k].iter().sum();
    let mut current = acc / k as f64;
    if current < best {
        best = current;
        best_idx = 0;
    }
    for i in 1..m {
        acc += values[i + k - 1] - values[i - 1];
        current = acc / k as f64;
        if current < best {
            best = current;
            best_idx = i;
        }
    }
    if best_idx == 0 || best_idx == m - 1 {
        return Ok(None);
    }
    // center time of the smoothed point
    let t = (times[best_idx] + times[best_idx + k - 1]) / 2.0;
    Ok(Some(t))
}

/// Full trend summary for one series of one trial.
pub fn summarize(
    series: &WindowedFeatureSeries,
    surface: Surface,
    config: &TrendConfig,
) -> Result<TrendSummary> {
    let second_wind = match second_wind_minimum(series, config.smoothing_s) {
        Ok(v) => v,
        Err(Error::SeriesTooShort { .. }) => None,
        Err(e) => return Err(e),
    };

    let (effective, head_offset_s) = if config.baseline_from_second_wind {
        match second_wind {
            Some(t_min) => {
                let keep: Vec<usize> = series
                    .times()
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| **t >= t_min)
                    .map(|(i, _)| i)
                    .collect();
                let times: Vec<f64> = keep.iter().map(|&i| series.times()[i]).collect();
                let values: Vec<f64> = keep.iter().map(|&i| series.values()[i]).collect();
                let trimmed = WindowedFeatureSeries::new(
                    series.index(),
                    series.muscle().clone(),
                    times,
                    values,
                    series.window_duration_s(),
                    series.hop_duration_s(),
                )?;
                (trimmed, t_min)
            }
            None => (series.clone(), 0.0),
        }
    } else {
        (series.clone(), 0.0)
    };
    let _ = head_offset_s;

    let (head_mean, tail_mean) = head_tail_means(&effective, config.head_s, config.tail_s)?;
    if !(head_mean > 0.0) {
        return Err(Error::ZeroBaseline);
    }
    Ok(TrendSummary {
        muscle: series.muscle().clone(),
        index: series.index(),
        surface,
        percent_increase: (tail_mean - head_mean) / head_mean * 100.0,
        slope_per_min: linear_trend(series)?,
        second_wind_minimum_s: second_wind,
        head_mean,
        tail_mean,
        head_duration_s: config.head_s,
        tail_duration_s: config.tail_s,
    })
}

/// Order surfaces by descending fatigue for one index.
///
/// Inputs must cover at least two distinct surfaces with identical muscle
/// sets; duplicate surfaces (several participants) are averaged. Ties break
/// by surface name, so the result is deterministic under input reordering.
pub fn rank_surfaces(
    reports: &[FatigueReport],
    index: IndexKind,
    aggregation: Aggregation,
) -> Result<SurfaceRanking> {
    // (surface, muscle) -> percent increases for the requested index
    let mut cells: BTreeMap<Surface, BTreeMap<Muscle, Vec<f64>>> = BTreeMap::new();
    for report in reports {
        for summary in report.summaries.iter().filter(|s| s.index == index) {
            cells
                .entry(summary.surface.clone())
                .or_default()
                .entry(summary.muscle.clone())
                .or_default()
                .push(summary.percent_increase);
        }
    }
    if cells.len() < 2 {
        return Err(Error::IncomparableReports(format!(
            "ranking needs at least 2 distinct surfaces with {index} summaries (got {})",
            cells.len()
        )));
    }
    let reference: Vec<Muscle> = cells.values().next().unwrap().keys().cloned().collect();
    for (surface, muscles) in &cells {
        let found: Vec<Muscle> = muscles.keys().cloned().collect();
        if found != reference {
            return Err(Error::IncomparableReports(format!(
                "muscle sets differ: surface {surface} covers {found:?}, expected {reference:?}"
            )));
        }
    }

    let mean = |values: &[f64]| values.iter().sum::<f64>() / values.len() as f64;
    let surfaces: Vec<Surface> = cells.keys().cloned().collect();

    // descending percent, ties by surface name ascending
    let order_desc = |scores: &BTreeMap<Surface, f64>| -> Vec<Surface> {
        let mut order = surfaces.clone();
        order.sort_by(|a, b| {
            scores[b]
                .total_cmp(&scores[a])
                .then_with(|| a.label().cmp(b.label()))
        });
        order
    };

    let mut per_muscle = Vec::with_capacity(reference.len());
    for muscle in &reference {
        let scores: BTreeMap<Surface, f64> = cells
            .iter()
            .map(|(surface, muscles)| (surface.clone(), mean(&muscles[muscle])))
            .collect();
        per_muscle.push((muscle.clone(), order_desc(&scores)));
    }

    let overall = match aggregation {
        Aggregation::MeanAcrossMuscles => {
            let scores: BTreeMap<Surface, f64> = cells
                .iter()
                .map(|(surface, muscles)| {
                    let all: Vec<f64> = muscles.values().map(|v| mean(v)).collect();
                    (surface.clone(), mean(&all))
                })
                .collect();
            order_desc(&scores)
        }
        Aggregation::PerMuscle => {
            // mean rank across muscles (Borda), lower is more fatiguing
            let mut rank_sum: BTreeMap<Surface, f64> =
                surfaces.iter().map(|s| (s.clone(), 0.0)).collect();
            for (_, order) in &per_muscle {
                for (position, surface) in order.iter().enumerate() {
                    *rank_sum.get_mut(surface).unwrap() += position as f64;
                }
            }
            let mut order = surfaces.clone();
            order.sort_by(|a, b| {
                rank_sum[a]
                    .total_cmp(&rank_sum[b])
                    .then_with(|| a.label().cmp(b.label()))
            });
            order
        }
    };

    Ok(SurfaceRanking {
        index,
        aggregation,
        overall,
        per_muscle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series_of(times: Vec<f64>, values: Vec<f64>) -> WindowedFeatureSeries {
        WindowedFeatureSeries::new(
            IndexKind::Arv,
            Muscle::VastusMedialis,
            times,
            values,
            0.2,
            0.2,
        )
        .unwrap()
    }

    fn regular_series(values: Vec<f64>) -> WindowedFeatureSeries {
        let times: Vec<f64> = (0..values.len()).map(|i| 0.1 + i as f64 * 0.2).collect();
        series_of(times, values)
    }

    #[test]
    fn flat_series_has_zero_percent_increase() {
        let series = regular_series(vec![1.5; 600]);
        let pi = percent_increase(&series, 30.0, 30.0).unwrap();
        assert_eq!(pi, 0.0);
    }

    #[test]
    fn percent_increase_doubling_is_plus_hundred() {
        let mut values = vec![1.0; 300];
        values.extend(vec![2.0; 300]);
        let series = regular_series(values);
        let pi = percent_increase(&series, 30.0, 30.0).unwrap();
        assert!((pi - 100.0).abs() < 1e-12);
    }

    #[test]
    fn percent_increase_requires_span_and_baseline() {
        let series = regular_series(vec![1.0; 100]); // spans ~20 s
        assert!(matches!(
            percent_increase(&series, 30.0, 30.0),
            Err(Error::SeriesTooShort { .. })
        ));
        let series = regular_series(vec![0.0; 600]);
        assert!(matches!(
            percent_increase(&series, 30.0, 30.0),
            Err(Error::ZeroBaseline)
        ));
    }

    #[test]
    fn percent_increase_is_scale_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let values: Vec<f64> = (0..600)
            .map(|i| 1.0 + i as f64 / 600.0 + (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 0.1)
            .collect();
        let series = regular_series(values);
        let base = percent_increase(&series, 30.0, 30.0).unwrap();

        // power-of-two scaling is exact in floating point
        let doubled = series.scaled(2.0).unwrap();
        assert_eq!(percent_increase(&doubled, 30.0, 30.0).unwrap(), base);

        let scaled = series.scaled(3.7).unwrap();
        let pi = percent_increase(&scaled, 30.0, 30.0).unwrap();
        assert!((pi - base).abs() / base.abs() < 1e-12);
    }

    #[test]
    fn percent_increase_on_linear_series_matches_closed_form() {
        // v(t) = a + b t with head = tail = half the series
        let (a, b) = (0.8, 0.01);
        let times: Vec<f64> = (0..1000).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values: Vec<f64> = times.iter().map(|t| a + b * t).collect();
        let span = times[999] - times[0];
        let half = span / 2.0;
        let series = series_of(times.clone(), values);

        let head_times: Vec<f64> = times.iter().copied().filter(|t| *t <= times[0] + half).collect();
        let tail_times: Vec<f64> = times.iter().copied().filter(|t| *t >= times[999] - half).collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let expected = b * (mean(&tail_times) - mean(&head_times)) / (a + b * mean(&head_times)) * 100.0;

        let pi = percent_increase(&series, half, half).unwrap();
        assert!((pi - expected).abs() < 1e-9);
    }

    #[test]
    fn linear_trend_examples() {
        let series = regular_series(vec![2.0; 100]);
        assert_eq!(linear_trend(&series).unwrap(), 0.0);

        // value = t seconds -> slope 60 per minute
        let times: Vec<f64> = (0..100).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values = times.clone();
        let series = series_of(times, values);
        assert!((linear_trend(&series).unwrap() - 60.0).abs() < 1e-9);
    }

    #[test]
    fn linear_trend_recovers_slope_within_noise_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let uniform = |rng: &mut ChaCha8Rng| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let n = 500;
        let sigma = 0.2;
        let true_slope_per_s = 0.005;
        let times: Vec<f64> = (0..n).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|t| {
                let (u1, u2) = (uniform(&mut rng).max(1e-12), uniform(&mut rng));
                let gauss =
                    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
                2.0 + true_slope_per_s * t + sigma * gauss
            })
            .collect();
        let t_mean = times.iter().sum::<f64>() / n as f64;
        let sxx: f64 = times.iter().map(|t| (t - t_mean) * (t - t_mean)).sum();
        let slope_se = sigma / sxx.sqrt() * 60.0;

        let series = series_of(times, values);
        let slope = linear_trend(&series).unwrap();
        assert!((slope - true_slope_per_s * 60.0).abs() <= 2.0 * slope_se);
    }

    #[test]
    fn second_wind_minimum_finds_v_shape_vertex() {
        // vertex at t = 300 s
        let times: Vec<f64> = (0..3000).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values: Vec<f64> = times.iter().map(|t| (t - 300.0).abs() + 1.0).collect();
        let series = series_of(times, values);
        let t_min = second_wind_minimum(&series, 5.0).unwrap().unwrap();
        assert!((t_min - 300.0).abs() <= 5.0);
    }

    #[test]
    fn second_wind_minimum_absent_for_monotone_and_flat_series() {
        let times: Vec<f64> = (0..600).map(|i| 0.1 + i as f64 * 0.2).collect();
        let increasing: Vec<f64> = times.iter().map(|t| 1.0 + t).collect();
        let series = series_of(times.clone(), increasing);
        assert_eq!(second_wind_minimum(&series, 5.0).unwrap(), None);

        let series = series_of(times, vec![1.0; 600]);
        assert_eq!(second_wind_minimum(&series, 5.0).unwrap(), None);
    }

    #[test]
    fn second_wind_requires_enough_span() {
        let series = regular_series(vec![1.0; 20]);
        assert!(matches!(
            second_wind_minimum(&series, 5.0),
            Err(Error::SeriesTooShort { .. })
        ));
    }

    /// Reports carrying the published per-muscle percent increases.
    fn table2_reports() -> Vec<FatigueReport> {
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
        vec![
            report(Surface::Asphalt, 100.04, 100.02, 99.14),
            report(Surface::Sand, 127.71, 126.75, 100.07),
            report(Surface::AthleticsTrack, 54.9, 121.22, 35.9),
        ]
    }

    #[test]
    fn published_values_rank_sand_first_per_muscle() {
        let ranking = rank_surfaces(&table2_reports(), IndexKind::Arv, Aggregation::PerMuscle)
            .unwrap();
        let order_for = |muscle: &Muscle| -> &Vec<Surface> {
            &ranking
                .per_muscle
                .iter()
                .find(|(m, _)| m == muscle)
                .unwrap()
                .1
        };
        assert_eq!(
            order_for(&Muscle::VastusMedialis),
            &vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack]
        );
        assert_eq!(
            order_for(&Muscle::RectusFemoris),
            &vec![Surface::Sand, Surface::AthleticsTrack, Surface::Asphalt]
        );
        assert_eq!(
            order_for(&Muscle::VastusLateralis),
            &vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack]
        );
        assert_eq!(
            ranking.overall,
            vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack]
        );
    }

    #[test]
    fn published_values_rank_sand_first_by_mean() {
        // column means: sand 118.18, asphalt 99.73, track 70.67
        let ranking = rank_surfaces(
            &table2_reports(),
            IndexKind::Arv,
            Aggregation::MeanAcrossMuscles,
        )
        .unwrap();
        assert_eq!(
            ranking.overall,
            vec![Surface::Sand, Surface::Asphalt, Surface::AthleticsTrack]
        );
    }

    #[test]
    fn ranking_is_invariant_under_report_order_and_scaling() {
        let mut reports = table2_reports();
        let base = rank_surfaces(&reports, IndexKind::Arv, Aggregation::PerMuscle).unwrap();
        reports.reverse();
        let flipped = rank_surfaces(&reports, IndexKind::Arv, Aggregation::PerMuscle).unwrap();
        assert_eq!(base.overall, flipped.overall);
        assert_eq!(base.per_muscle, flipped.per_muscle);
    }

    #[test]
    fn ranking_rejects_mismatched_muscle_sets() {
        let mut reports = table2_reports();
        reports[2].summaries.pop();
        assert!(matches!(
            rank_surfaces(&reports, IndexKind::Arv, Aggregation::PerMuscle),
            Err(Error::IncomparableReports(_))
        ));
    }

    #[test]
    fn ranking_requires_two_surfaces() {
        let reports = vec![table2_reports().remove(0)];
        assert!(matches!(
            rank_surfaces(&reports, IndexKind::Arv, Aggregation::PerMuscle),
            Err(Error::IncomparableReports(_))
        ));
    }

    #[test]
    fn ranking_output_is_permutation_of_inputs() {
        let ranking = rank_surfaces(
            &table2_reports(),
            IndexKind::Arv,
            Aggregation::MeanAcrossMuscles,
        )
        .unwrap();
        let mut sorted = ranking.overall.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![Surface::Asphalt, Surface::Sand, Surface::AthleticsTrack]
        );
    }

    #[test]
    fn summarize_collects_all_fields() {
        // second-wind dip at 60 s then fatigue ramp
        let times: Vec<f64> = (0..3000).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|t| {
                if *t < 60.0 {
                    1.2 - t * 0.2 / 60.0
                } else {
                    1.0 + (t - 60.0) * 0.002
                }
            })
            .collect();
        let series = series_of(times, values);
        let summary = summarize(&series, Surface::Sand, &TrendConfig::default()).unwrap();
        assert_eq!(summary.surface, Surface::Sand);
        assert!(summary.percent_increase > 0.0);
        assert!(summary.slope_per_min > 0.0);
        let t_min = summary.second_wind_minimum_s.unwrap();
        assert!((t_min - 60.0).abs() <= 5.0);
        assert!(summary.head_mean > 0.0);
        assert_eq!(summary.head_duration_s, 30.0);
    }

    #[test]
    fn second_wind_baseline_raises_percent_increase() {
        let times: Vec<f64> = (0..3000).map(|i| 0.1 + i as f64 * 0.2).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|t| {
                if *t < 60.0 {
                    1.4 - t * 0.4 / 60.0
                } else {
                    1.0 + (t - 60.0) * 0.002
                }
            })
            .collect();
        let series = series_of(times, values);
        let from_start = summarize(&series, Surface::Sand, &TrendConfig::default()).unwrap();
        let from_dip = summarize(
            &series,
            Surface::Sand,
            &TrendConfig {
                baseline_from_second_wind: true,
                ..TrendConfig::default()
            },
        )
        .unwrap();
        // the t = 0 baseline is inflated by the dip, lowering the increase
        assert!(from_dip.percent_increase > from_start.percent_increase);
    }
}
