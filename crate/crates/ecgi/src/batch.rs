//! Batch scoring: single images and parallel manifest comparison.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::highlight::HighlightParams;
use crate::imaging::{crop_roi, load_image, RoiRect};
use crate::manifest::ManifestRow;
use crate::scoring::{ecgi_pipeline, PipelineArtifacts};
use crate::stats::{summarize, PairScore, PairedReport};

/// Everything a scoring run needs besides the images.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: HighlightParams,
    /// Upper edge of the histogram range.
    pub range_max: f64,
    pub suppress_highlights: bool,
    /// Worker threads for manifest runs; 0 means one per available core.
    pub workers: usize,
    pub label_a: String,
    pub label_b: String,
    /// Directory for raw and suppressed gradient dumps.
    pub dump_gradient: Option<PathBuf>,
    /// Directory for mask previews and component tables.
    pub dump_mask: Option<PathBuf>,
    /// Directory for PMF tables.
    pub dump_pmf: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: HighlightParams::default(),
            range_max: 1.0,
            suppress_highlights: true,
            workers: 0,
            label_a: "A".into(),
            label_b: "B".into(),
            dump_gradient: None,
            dump_mask: None,
            dump_pmf: None,
        }
    }
}

/// Per-pair scores plus the corpus-level summary.
#[derive(Debug, Clone)]
pub struct ComparisonOutcome {
    pub pairs: Vec<PairScore>,
    pub report: PairedReport,
}

/// Loads, optionally crops, scores, and dumps one image.
///
/// `stem` names any dump files (`<stem>_f.f32`, `<stem>_mask.png`, ...).
pub fn score_image(
    path: &Path,
    roi: Option<RoiRect>,
    cfg: &RunConfig,
    stem: &str,
) -> Result<PipelineArtifacts> {
    let full = load_image(path)?;
    let img = match roi {
        Some(r) => crop_roi(&full, r)?,
        None => full,
    };
    let artifacts = ecgi_pipeline(&img, &cfg.params, cfg.suppress_highlights, cfg.range_max)?;
    write_dumps(&artifacts, cfg, stem)?;
    Ok(artifacts)
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::WriteFailed {
        path: path.to_path_buf(),
        source,
    }
}

fn write_dumps(artifacts: &PipelineArtifacts, cfg: &RunConfig, stem: &str) -> Result<()> {
    if let Some(dir) = &cfg.dump_gradient {
        for (suffix, field) in [("f", &artifacts.gradient), ("g", &artifacts.suppressed)] {
            let raw = dir.join(format!("{stem}_{suffix}.f32"));
            let mut file = std::fs::File::create(&raw).map_err(io_err(&raw))?;
            field.write_f32_le(&mut file).map_err(io_err(&raw))?;
            field.save_preview_png(&dir.join(format!("{stem}_{suffix}.png")))?;
        }
    }
    if let Some(dir) = &cfg.dump_mask {
        artifacts.mask.save_png(&dir.join(format!("{stem}_mask.png")))?;
        let table = dir.join(format!("{stem}_regions.csv"));
        let mut rows = String::from(
            "component,area,bbox_x,bbox_y,bbox_w,bbox_h,centroid_x,centroid_y,\
             mean_gradient,mean_luminance,kept\n",
        );
        for c in &artifacts.components {
            rows.push_str(&format!(
                "{},{},{},{},{},{},{:.4},{:.4},{:.6},{:.6},{}\n",
                c.label,
                c.area,
                c.bbox.0,
                c.bbox.1,
                c.bbox.2,
                c.bbox.3,
                c.centroid.0,
                c.centroid.1,
                c.mean_gradient,
                c.mean_luminance,
                c.kept
            ));
        }
        std::fs::write(&table, rows).map_err(io_err(&table))?;
    }
    if let Some(dir) = &cfg.dump_pmf {
        let path = dir.join(format!("{stem}_pmf.tsv"));
        let mut file = std::fs::File::create(&path).map_err(io_err(&path))?;
        artifacts.pmf.write_tsv(&mut file).map_err(io_err(&path))?;
    }
    Ok(())
}

fn ensure_dump_dirs(cfg: &RunConfig) -> Result<()> {
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

/// Scores every manifest pair and summarizes the comparison.
///
/// Pairs are scored in parallel on `cfg.workers` threads; results keep
/// manifest order, so reports do not depend on the worker count. The first
/// failing pair aborts the run, wrapped with its pair id.
pub fn compare_pairs(rows: &[ManifestRow], cfg: &RunConfig) -> Result<ComparisonOutcome> {
    ensure_dump_dirs(cfg)?;
    let workers = if cfg.workers == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        cfg.workers
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams {
            reason: format!("cannot build a {workers}-thread pool: {e}"),
        })?;
    let pairs: Vec<PairScore> = pool.install(|| {
        rows.par_iter()
            .map(|row| {
                let run = || -> Result<PairScore> {
                    let a = score_image(&row.path_a, row.roi_a, cfg, &format!("{}_a", row.pair_id))?;
                    let b = score_image(&row.path_b, row.roi_b, cfg, &format!("{}_b", row.pair_id))?;
                    Ok(PairScore::new(
                        row.pair_id.clone(),
                        a.result.score,
                        b.result.score,
                    ))
                };
                run().map_err(|e| Error::PairFailed {
                    pair_id: row.pair_id.clone(),
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let report = summarize(&pairs)?;
    Ok(ComparisonOutcome { pairs, report })
}
