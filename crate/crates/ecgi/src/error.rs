use std::path::PathBuf;

/// Errors produced by the scoring pipeline and its front ends.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The file could not be opened or read.
    #[error("cannot read {path}: {source}")]
    UnreadableFile {
        path: PathBuf,
        source: std::io::Error,
    },

    /// The file decoded to something the pipeline cannot use (bad format,
    /// fewer than three color channels).
    #[error("unsupported image {path}: {reason}")]
    UnsupportedFormat { path: PathBuf, reason: String },

    /// Image or ROI smaller than the 3x3 derivative stencil.
    #[error("image too small: {width}x{height} (minimum 3x3)")]
    TooSmall { width: usize, height: usize },

    /// ROI rectangle exceeds the source image.
    #[error("ROI {roi} exceeds image bounds {width}x{height}")]
    RoiOutOfBounds {
        roi: String,
        width: usize,
        height: usize,
    },

    /// Two rasters that must share dimensions do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    /// A gradient field with zero pixels cannot be quantized.
    #[error("empty image")]
    EmptyImage,

    /// A PMF with a negative bin or a sum away from one.
    #[error("invalid PMF: {reason}")]
    InvalidPmf { reason: String },

    /// Paired vectors of different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Fewer than two samples for a paired test.
    #[error("too few samples: {n} (minimum 2)")]
    TooFewSamples { n: usize },

    /// A parameter outside its documented range.
    #[error("invalid parameter: {reason}")]
    InvalidParams { reason: String },

    /// A manifest row that cannot be used, with its 1-based line number.
    #[error("manifest {path} line {line}: {reason}")]
    ManifestRow {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    /// A pipeline failure attributed to one manifest pair.
    #[error("pair {pair_id}: {source}")]
    PairFailed {
        pair_id: String,
        #[source]
        source: Box<Error>,
    },

    /// Output or dump files could not be written.
    #[error("cannot write {path}: {source}")]
    WriteFailed {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
