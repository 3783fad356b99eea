//! Batch CLI over the scoring library.
//!
//! Exit codes: 0 on success, 1 on any pipeline error (unreadable image,
//! bad manifest row, invalid parameters), 2 on command line misuse.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ecgi::batch::{compare_pairs, score_image, RunConfig};
use ecgi::error::Error;
use ecgi::highlight::HighlightParams;
use ecgi::imaging::RoiRect;
use ecgi::manifest::read_manifest;
use ecgi::report::{render_csv, render_json};

#[derive(Parser)]
#[command(
    name = "ecgi",
    about = "Entropy of color gradients: image scoring and corpus comparison",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a single image and print its entropy
    Score {
        /// Image file (PNG, JPEG, or BMP)
        image: PathBuf,
        /// Restrict scoring to a region: X,Y,W,H
        #[arg(long, value_parser = parse_roi)]
        roi: Option<RoiRect>,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Score every manifest pair and compare the two sides
    Compare {
        /// CSV manifest of image pairs
        #[arg(long)]
        manifest: PathBuf,
        /// Report file to write
        #[arg(long)]
        out: PathBuf,
        /// Report format
        #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
        format: String,
        /// Worker threads (default: ECGI_WORKERS, then all cores)
        #[arg(long)]
        workers: Option<usize>,
        /// Name for side A in the report config
        #[arg(long, default_value = "A")]
        label_a: String,
        /// Name for side B in the report config
        #[arg(long, default_value = "B")]
        label_b: String,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Print the 256-bin gradient PMF of one image as TSV
    Histogram {
        /// Image file (PNG, JPEG, or BMP)
        image: PathBuf,
        /// Restrict to a region: X,Y,W,H
        #[arg(long, value_parser = parse_roi)]
        roi: Option<RoiRect>,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
}

#[derive(Args)]
struct PipelineArgs {
    /// Gradient validity threshold for highlight evidence
    #[arg(long, default_value_t = 0.2)]
    grad_threshold: f64,
    /// Minimum highlight region area in pixels
    #[arg(long, default_value_t = 5)]
    area_min: usize,
    /// Maximum highlight region area in pixels
    #[arg(long, default_value_t = 200)]
    area_max: usize,
    /// Stability lookback in gray levels
    #[arg(long, default_value_t = 5)]
    mser_delta: u8,
    /// Maximum one-sided area variation for stability
    #[arg(long, default_value_t = 0.25)]
    mser_max_variation: f64,
    /// Radius of the square closing element
    #[arg(long, default_value_t = 1)]
    closing_radius: usize,
    /// Minimum mean luminance for a highlight component
    #[arg(long, default_value_t = 0.8)]
    lum_threshold: f64,
    /// Upper edge of the score histogram range
    #[arg(long, default_value_t = 1.0)]
    quant_max: f64,
    /// Score the raw gradient field without highlight suppression
    #[arg(long)]
    no_highlight_mask: bool,
    /// Directory for gradient dumps (raw + suppressed, .f32 + .png)
    #[arg(long, value_name = "DIR")]
    dump_gradient: Option<PathBuf>,
    /// Directory for mask previews and component tables
    #[arg(long, value_name = "DIR")]
    dump_mask: Option<PathBuf>,
    /// Directory for PMF tables
    #[arg(long, value_name = "DIR")]
    dump_pmf: Option<PathBuf>,
}

fn parse_roi(text: &str) -> Result<RoiRect, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected X,Y,W,H, got `{text}`"));
    }
    let mut nums = [0usize; 4];
    for (i, p) in parts.iter().enumerate() {
        nums[i] = p
            .trim()
            .parse()
            .map_err(|_| format!("`{p}` is not a non-negative integer"))?;
    }
    Ok(RoiRect {
        x: nums[0],
        y: nums[1],
        w: nums[2],
        h: nums[3],
    })
}

impl PipelineArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            params: HighlightParams {
                validity_threshold: self.grad_threshold,
                area_min: self.area_min,
                area_max: self.area_max,
                mser_delta: self.mser_delta,
                mser_max_variation: self.mser_max_variation,
                closing_radius: self.closing_radius,
                luminance_threshold: self.lum_threshold,
            },
            range_max: self.quant_max,
            suppress_highlights: !self.no_highlight_mask,
            dump_gradient: self.dump_gradient.clone(),
            dump_mask: self.dump_mask.clone(),
            dump_pmf: self.dump_pmf.clone(),
            ..RunConfig::default()
        }
    }
}

fn worker_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("ECGI_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn ensure_dirs(cfg: &RunConfig) -> ecgi::Result<()> {
    for dir in [&cfg.dump_gradient, &cfg.dump_mask, &cfg.dump_pmf]
        .into_iter()
        .flatten()
    {
        std::fs::create_dir_all(dir).map_err(|source| Error::WriteFailed {
            path: dir.clone(),
            source,
        })?;
    }
    Ok(())
}

fn stem_of(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into())
}

fn run() -> ecgi::Result<()> {
    match Cli::parse().command {
        Command::Score {
            image,
            roi,
            pipeline,
        } => {
            let cfg = pipeline.to_config();
            ensure_dirs(&cfg)?;
            let artifacts = score_image(&image, roi, &cfg, &stem_of(&image))?;
            let r = &artifacts.result;
            println!("S = {:.4}", r.score);
            println!("c = {:.4}", r.complemental);
            println!("mask_pixels = {}", r.mask_pixels);
            Ok(())
        }
        Command::Compare {
            manifest,
            out,
            format,
            workers,
            label_a,
            label_b,
            pipeline,
        } => {
            let mut cfg = pipeline.to_config();
            cfg.workers = worker_count(workers);
            cfg.label_a = label_a;
            cfg.label_b = label_b;
            let rows = read_manifest(&manifest)?;
            let outcome = compare_pairs(&rows, &cfg)?;
            let text = match format.as_str() {
                "csv" => render_csv(&outcome.pairs, &outcome.report),
                _ => render_json(
                    &cfg,
                    &manifest.to_string_lossy(),
                    &outcome.pairs,
                    &outcome.report,
                ),
            };
            std::fs::write(&out, text).map_err(|source| Error::WriteFailed {
                path: out.clone(),
                source,
            })?;
            let r = &outcome.report;
            eprintln!(
                "n = {}, mean_a = {:.4}, mean_b = {:.4}, t = {:.4}, p = {}, a > b in {:.1}%",
                r.n,
                r.mean_a,
                r.mean_b,
                r.t_statistic,
                if r.p_value >= 1e-4 {
                    format!("{:.6}", r.p_value)
                } else {
                    format!("{:.6e}", r.p_value)
                },
                r.pct_a_greater
            );
            Ok(())
        }
        Command::Histogram {
            image,
            roi,
            out,
            pipeline,
        } => {
            let cfg = pipeline.to_config();
            ensure_dirs(&cfg)?;
            let artifacts = score_image(&image, roi, &cfg, &stem_of(&image))?;
            let mut buf = Vec::new();
            artifacts
                .pmf
                .write_tsv(&mut buf)
                .expect("in-memory write");
            match out {
                Some(path) => {
                    std::fs::write(&path, buf).map_err(|source| Error::WriteFailed {
                        path: path.clone(),
                        source,
                    })?
                }
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(&buf).expect("stdout");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut cause = std::error::Error::source(&e);
            while let Some(c) = cause {
                eprintln!("  caused by: {c}");
                cause = c.source();
            }
            ExitCode::FAILURE
        }
    }
}
