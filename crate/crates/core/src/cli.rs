//! Command-line surface: `simulate` → `analyze` → `report` / `compare`.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 I/O failure.

use crate::error::{Error, Result};
use crate::io::manifest::RunManifest;
use crate::io::svg::{Curve, Panel};
use crate::io::{
    parse_trial_csv, read_report_json, read_series_csv, write_ground_truth,
    write_percent_matrix_csv, write_plot, write_ranking_csv, write_report_csv,
    write_report_json, write_series_csv, write_trial_csv,
};
use crate::series::{compute_series, IndexKind};
use crate::signal::{ChannelSignal, Muscle, TrialRecording};
use crate::trend::{rank_surfaces, summarize, Aggregation, FatigueReport};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "emg-fatigue",
    version,
    about = "Muscle-fatigue indices from surface-EMG trials: synthetic acquisition, index series, trend reports, and surface ranking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the manifest's synthetic trials: trial CSVs plus
    /// ground-truth sidecars
    Simulate {
        /// Run manifest (TOML)
        #[arg(long)]
        manifest: PathBuf,
        /// Override the base seed of every synthetic trial
        #[arg(long)]
        seed: Option<u64>,
        /// Only generate the named trial
        #[arg(long)]
        trial: Option<String>,
    },
    /// Compute index series and per-trial fatigue reports
    Analyze {
        /// Run manifest (TOML)
        #[arg(long)]
        manifest: PathBuf,
        /// Output directory (default: the manifest's [output] dir)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Comma-separated index list overriding the manifest
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<String>>,
        /// Amplitude analysis window override, seconds
        #[arg(long)]
        window: Option<f64>,
        /// Amplitude analysis hop override, seconds
        #[arg(long)]
        hop: Option<f64>,
        /// Head averaging duration override, seconds
        #[arg(long)]
        head: Option<f64>,
        /// Tail averaging duration override, seconds
        #[arg(long)]
        tail: Option<f64>,
        /// Report format: json, csv, or both
        #[arg(long)]
        format: Option<String>,
    },
    /// Re-emit a report (json/csv) or render series files to SVG
    Report {
        /// Report JSON produced by `analyze` or `compare`
        #[arg(long)]
        report: Option<PathBuf>,
        /// Series CSVs to plot (for --format svg)
        #[arg(long, num_args = 1..)]
        series: Vec<PathBuf>,
        /// Output format: json, csv, or svg
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Merge per-trial reports and rank surfaces by fatigue
    Compare {
        /// Two or more report JSONs, one per trial
        #[arg(required = true, num_args = 2..)]
        reports: Vec<PathBuf>,
        /// Index to rank by
        #[arg(long, default_value = "iARV")]
        index: String,
        /// per-muscle or mean-across-muscles
        #[arg(long, default_value = "per-muscle")]
        aggregation: String,
        /// Output directory
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
}

/// Run the CLI against an argument vector; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; keep its stream conventions
            // (help/version to stdout) but exit 1 on usage errors
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 1 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Simulate {
            manifest,
            seed,
            trial,
        } => simulate(&manifest, seed, trial.as_deref()),
        Command::Analyze {
            manifest,
            out_dir,
            indices,
            window,
            hop,
            head,
            tail,
            format,
        } => analyze(
            &manifest,
            out_dir.as_deref(),
            indices,
            window,
            hop,
            head,
            tail,
            format.as_deref(),
        ),
        Command::Report {
            report,
            series,
            format,
            out,
        } => report_cmd(report.as_deref(), &series, &format, &out),
        Command::Compare {
            reports,
            index,
            aggregation,
            out_dir,
        } => compare(&reports, &index, &aggregation, &out_dir),
    }
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

fn manifest_base(manifest_path: &Path) -> PathBuf {
    manifest_path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn ground_truth_path(csv: &Path) -> PathBuf {
    let stem = csv
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trial".to_string());
    csv.with_file_name(format!("{stem}.gt.csv"))
}

fn simulate(manifest_path: &Path, seed: Option<u64>, only: Option<&str>) -> Result<()> {
    let manifest = RunManifest::load(manifest_path)?;
    let base = manifest_base(manifest_path);
    let fs_hz = manifest.sample_rate_hz;

    let mut generated = 0usize;
    for trial in &manifest.trials {
        if let Some(name) = only {
            if trial.name != name {
                continue;
            }
        }
        let Some(spec) = &trial.synthetic else {
            if only.is_some() {
                return Err(Error::InvalidManifest(format!(
                    "trial '{}' has no [trial.synthetic] section",
                    trial.name
                )));
            }
            continue;
        };
        let mut spec = spec.clone();
        if let Some(seed) = seed {
            spec.seed = seed;
        }
        let metadata = trial.metadata();
        let gain = metadata.front_end.gain()?;

        let mut channels = Vec::with_capacity(3);
        let mut truth = None;
        for (i, muscle) in Muscle::trial_channels().into_iter().enumerate() {
            let profile = spec.profile_for(&muscle, i as u64);
            let (raw, gt) = crate::frontend::synthesize(&profile, muscle.clone(), fs_hz)?;
            let board = crate::frontend::simulate_front_end(&raw, &metadata.front_end, fs_hz)?;
            let input_referred: Vec<f64> = board.samples().iter().map(|v| v / gain).collect();
            let channel = if board.is_rectified() {
                ChannelSignal::new_rectified(muscle, input_referred)?
            } else {
                ChannelSignal::new(muscle, input_referred)?
            };
            channels.push(channel);
            if truth.is_none() {
                truth = Some(gt);
            }
        }
        let recording = TrialRecording::new(fs_hz, channels, metadata)?;

        let csv_path = resolve(&base, &trial.csv);
        if let Some(parent) = csv_path.parent() {
            ensure_dir(parent)?;
        }
        write_trial_csv(&csv_path, &recording)?;
        write_ground_truth(&ground_truth_path(&csv_path), &truth.unwrap())?;
        println!("simulated trial '{}' -> {}", trial.name, csv_path.display());
        generated += 1;
    }
    if generated == 0 {
        return Err(Error::InvalidManifest(
            "manifest has no synthetic trials to simulate".into(),
        ));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    manifest_path: &Path,
    out_dir: Option<&Path>,
    indices: Option<Vec<String>>,
    window: Option<f64>,
    hop: Option<f64>,
    head: Option<f64>,
    tail: Option<f64>,
    format: Option<&str>,
) -> Result<()> {
    let mut manifest = RunManifest::load(manifest_path)?;
    if let Some(indices) = indices {
        manifest.indices = indices;
    }
    if let Some(w) = window {
        manifest.analysis.amplitude_window_s = w;
    }
    if let Some(h) = hop {
        manifest.analysis.amplitude_hop_s = h;
    }
    if let Some(h) = head {
        manifest.trend.head_s = h;
    }
    if let Some(t) = tail {
        manifest.trend.tail_s = t;
    }
    if let Some(f) = format {
        manifest.output.format = f.to_string();
    }
    manifest.validate()?;
    let index_kinds = manifest.parsed_indices()?;
    let emit_json = matches!(manifest.output.format.as_str(), "json" | "both");
    let emit_csv = matches!(manifest.output.format.as_str(), "csv" | "both");
    if !emit_json && !emit_csv {
        return Err(Error::InvalidManifest(format!(
            "unknown report format '{}' (expected json, csv, or both)",
            manifest.output.format
        )));
    }

    let base = manifest_base(manifest_path);
    let out = out_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| resolve(&base, &manifest.output.dir));
    ensure_dir(&out)?;

    // trials are independent pipelines writing distinct files; run them
    // concurrently and report in manifest order
    let results: Vec<Result<usize>> = std::thread::scope(|scope| {
        let handles: Vec<_> = manifest
            .trials
            .iter()
            .map(|trial| {
                let manifest = &manifest;
                let index_kinds = &index_kinds;
                let base = &base;
                let out = &out;
                scope.spawn(move || {
                    analyze_trial(trial, manifest, index_kinds, base, out, emit_json, emit_csv)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial analysis thread panicked"))
            .collect()
    });
    for (trial, result) in manifest.trials.iter().zip(results) {
        let series_count = result?;
        println!(
            "analyzed trial '{}': {} series -> {}",
            trial.name,
            series_count,
            out.display()
        );
    }
    Ok(())
}

fn analyze_trial(
    trial: &crate::io::TrialEntry,
    manifest: &RunManifest,
    index_kinds: &[IndexKind],
    base: &Path,
    out: &Path,
    emit_json: bool,
    emit_csv: bool,
) -> Result<usize> {
    let metadata = trial.metadata();
    let csv_path = resolve(base, &trial.csv);
    let recording = parse_trial_csv(&csv_path, &metadata, manifest.sample_rate_hz)?;

    let mut summaries = Vec::new();
    for &index in index_kinds {
        let series_per_channel = compute_series(&recording, index, &manifest.analysis)?;
        for series in &series_per_channel {
            let path = out.join(format!(
                "{}.{}.{}.csv",
                trial.name,
                index,
                series.muscle().column()
            ));
            write_series_csv(&path, series, metadata.surface.label())?;
            summaries.push(summarize(series, metadata.surface.clone(), &manifest.trend)?);
        }
    }
    let report = FatigueReport {
        trials: vec![metadata],
        summaries,
        ranking: None,
    };
    let count = report.summaries.len();
    if emit_json {
        write_report_json(&out.join(format!("{}.report.json", trial.name)), &report)?;
    }
    if emit_csv {
        write_report_csv(&out.join(format!("{}.report.csv", trial.name)), &report)?;
    }
    Ok(count)
}

fn report_cmd(
    report: Option<&Path>,
    series_paths: &[PathBuf],
    format: &str,
    out: &Path,
) -> Result<()> {
    match format {
        "json" | "csv" => {
            let path = report.ok_or_else(|| {
                Error::InvalidManifest("--report is required for json/csv output".into())
            })?;
            let report = read_report_json(path)?;
            if format == "json" {
                write_report_json(out, &report)?;
            } else {
                write_report_csv(out, &report)?;
            }
        }
        "svg" => {
            if series_paths.is_empty() {
                return Err(Error::InvalidManifest(
                    "--series files are required for svg output".into(),
                ));
            }
            let panels = panels_from_series(series_paths)?;
            let csv_path = out.with_extension("csv");
            write_plot(out, &csv_path, &panels)?;
        }
        other => {
            return Err(Error::InvalidManifest(format!(
                "unknown format '{other}' (expected json, csv, or svg)"
            )))
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

/// Group series files into one panel per muscle (population order), one
/// curve per file label.
fn panels_from_series(paths: &[PathBuf]) -> Result<Vec<Panel>> {
    let mut panels: Vec<Panel> = Vec::new();
    for path in paths {
        let (series, label) = read_series_csv(path)?;
        let curve = Curve {
            label: if label.is_empty() {
                path.file_stem().unwrap_or_default().to_string_lossy().into_owned()
            } else {
                label
            },
            points: series
                .times()
                .iter()
                .copied()
                .zip(series.values().iter().copied())
                .collect(),
        };
        let title = series.muscle().label().to_string();
        match panels.iter_mut().find(|p| p.title == title) {
            Some(panel) => panel.curves.push(curve),
            None => panels.push(Panel {
                title,
                x_label: "time (s)".to_string(),
                y_label: format!("{} value", series.index()),
                curves: vec![curve],
            }),
        }
    }
    Ok(panels)
}

fn compare(
    report_paths: &[PathBuf],
    index: &str,
    aggregation: &str,
    out_dir: &Path,
) -> Result<()> {
    let index = IndexKind::parse(index)?;
    let aggregation = Aggregation::parse(aggregation)?;
    let reports: Vec<FatigueReport> = report_paths
        .iter()
        .map(|p| read_report_json(p))
        .collect::<Result<_>>()?;

    let ranking = rank_surfaces(&reports, index, aggregation)?;
    let merged = FatigueReport {
        trials: reports.iter().flat_map(|r| r.trials.clone()).collect(),
        summaries: reports.iter().flat_map(|r| r.summaries.clone()).collect(),
        ranking: Some(ranking.clone()),
    };

    ensure_dir(out_dir)?;
    write_report_json(&out_dir.join("combined.report.json"), &merged)?;
    write_ranking_csv(&out_dir.join("ranking.csv"), &ranking)?;
    write_percent_matrix_csv(&out_dir.join("matrix.csv"), &merged, index)?;

    let order: Vec<&str> = ranking.overall.iter().map(|s| s.label()).collect();
    println!("ranking ({index}, descending fatigue): {}", order.join(" > "));
    Ok(())
}
