//! Entropy of color gradients: a no-reference sharpness/texture score for
//! color images, built for paired corpus comparisons.
//!
//! The score of one image is the Shannon entropy (bits) of the distribution
//! of its color gradient magnitudes after specular highlights have been
//! masked out. Richly textured, well-focused images spread gradient mass
//! across many histogram bins and score high; flat or blurred images
//! concentrate it and score low.
//!
//! The pipeline, stage by stage:
//!
//! 1. [`imaging`]: decode to unit-normalized RGB planes, optional ROI crop.
//! 2. [`gradient`]: per-channel Sobel derivatives, color structure tensor,
//!    closed-form maximal directional response F.
//! 3. [`highlight`]: stable bright regions in F ([`mser`]), morphological
//!    closing, luminance screening, and replacement of masked pixels with a
//!    neutral band mean.
//! 4. [`scoring`]: 256-bin quantization and entropy.
//! 5. [`stats`]: paired t-test, percentage breakdown, boxplot summaries.
//! 6. [`batch`] / [`manifest`] / [`report`]: parallel corpus runs with
//!    deterministic JSON/CSV reports.
//!
//! # Scoring one image
//!
//! ```
//! use ecgi::highlight::HighlightParams;
//! use ecgi::scoring::ecgi_score;
//! use ecgi::synthetic::random_texture;
//!
//! let img = random_texture(64, 64, 7).unwrap();
//! let result = ecgi_score(&img, &HighlightParams::default()).unwrap();
//! assert!(result.score > 0.0 && result.score <= 8.0);
//! ```
//!
//! # Comparing two corpora
//!
//! ```no_run
//! use ecgi::batch::{compare_pairs, RunConfig};
//! use ecgi::manifest::read_manifest;
//!
//! let rows = read_manifest("pairs.csv".as_ref()).unwrap();
//! let outcome = compare_pairs(&rows, &RunConfig::default()).unwrap();
//! println!("t = {:.4}, p = {:.6}", outcome.report.t_statistic, outcome.report.p_value);
//! ```

pub mod batch;
pub mod error;
pub mod gradient;
pub mod highlight;
pub mod imaging;
pub mod manifest;
pub mod mser;
pub mod report;
pub mod scoring;
pub mod special;
pub mod stats;
pub mod synthetic;

pub use batch::{compare_pairs, score_image, ComparisonOutcome, RunConfig};
pub use error::{Error, Result};
pub use gradient::{color_gradient, GradientField};
pub use highlight::{HighlightMask, HighlightParams, RegionProperties};
pub use imaging::{crop_roi, load_image, NormalizedColorImage, RoiRect};
pub use manifest::{read_manifest, ManifestRow};
pub use scoring::{ecgi_pipeline, ecgi_score, entropy, quantize, EcgiResult, GradientPmf};
pub use stats::{boxplot_stats, paired_t_test, summarize, BoxplotSummary, PairScore, PairedReport};
