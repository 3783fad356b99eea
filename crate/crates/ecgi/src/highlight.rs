//! Specular highlight detection and suppression on the gradient field.
//!
//! Saturated highlights produce ring-shaped gradient artifacts that inflate
//! entropy. The chain here finds stable bright blobs in the gradient raster,
//! grows them with a morphological closing, keeps only components that sit
//! on bright image content, and replaces the masked gradient values with a
//! neutral "complemental" value drawn from the valid gradient band.

use crate::error::{Error, Result};
use crate::gradient::GradientField;
use crate::imaging::LuminancePlane;
use crate::mser;

/// Tunables for highlight detection and suppression.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HighlightParams {
    /// Gradient values above this count as valid highlight evidence; the
    /// complemental value averages the band strictly below it.
    pub validity_threshold: f64,
    /// Minimum region area in pixels, inclusive.
    pub area_min: usize,
    /// Maximum region area in pixels, inclusive.
    pub area_max: usize,
    /// Level-set lookback for region stability.
    pub mser_delta: u8,
    /// Maximum one-sided area variation for a stable region.
    pub mser_max_variation: f64,
    /// Radius of the square closing element, `(2r+1)` on a side.
    pub closing_radius: usize,
    /// Components whose mean luminance falls below this are discarded.
    pub luminance_threshold: f64,
}

impl Default for HighlightParams {
    fn default() -> Self {
        Self {
            validity_threshold: 0.2,
            area_min: 5,
            area_max: 200,
            mser_delta: 5,
            mser_max_variation: 0.25,
            closing_radius: 1,
            luminance_threshold: 0.8,
        }
    }
}

impl HighlightParams {
    /// Rejects parameter combinations the pipeline cannot honor.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidParams { reason });
        if !(self.validity_threshold > 0.0 && self.validity_threshold <= 1.0) {
            return fail(format!(
                "validity threshold {} outside (0, 1]",
                self.validity_threshold
            ));
        }
        if self.area_min == 0 || self.area_min > self.area_max {
            return fail(format!(
                "area bounds [{}, {}] must satisfy 0 < min <= max",
                self.area_min, self.area_max
            ));
        }
        if self.mser_delta == 0 {
            return fail("stability delta must be at least 1".into());
        }
        if !(self.mser_max_variation > 0.0 && self.mser_max_variation.is_finite()) {
            return fail(format!(
                "max variation {} must be finite and positive",
                self.mser_max_variation
            ));
        }
        if !(0.0..=1.0).contains(&self.luminance_threshold) {
            return fail(format!(
                "luminance threshold {} outside [0, 1]",
                self.luminance_threshold
            ));
        }
        Ok(())
    }
}

/// A boolean pixel mask aligned with a gradient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighlightMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

/// Shape and photometric statistics of one 8-connected mask component.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RegionProperties {
    pub label: usize,
    pub area: usize,
    /// `(x, y, w, h)` of the tight bounding box.
    pub bbox: (usize, usize, usize, usize),
    pub centroid: (f64, f64),
    pub mean_gradient: f64,
    pub mean_luminance: f64,
    /// False when the luminance screen rejected the component.
    pub kept: bool,
}

impl HighlightMask {
    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), width * height, "mask length");
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_set(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Saves a black-and-white preview (white = masked).
    pub fn save_png(&self, path: &std::path::Path) -> Result<()> {
        let buf: Vec<u8> = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        image::GrayImage::from_raw(self.width as u32, self.height as u32, buf)
            .expect("buffer matches dimensions")
            .save(path)
            .map_err(|e| Error::WriteFailed {
                path: path.to_path_buf(),
                source: std::io::Error::other(e.to_string()),
            })
    }
}

/// Finds stable bright gradient regions that qualify as highlight evidence.
///
/// The gradient field is quantized to 8 bits and mined for stable regions;
/// survivors must have area within `[area_min, area_max]` and every member
/// pixel's unquantized gradient above `validity_threshold`.
pub fn detect_mser_regions(
    field: &GradientField,
    params: &HighlightParams,
) -> Vec<mser::StableRegion> {
    let levels = field.to_u8_levels();
    let values = field.values();
    mser::stable_regions(
        &levels,
        field.width(),
        field.height(),
        params.mser_delta,
        params.mser_max_variation,
    )
    .into_iter()
    .filter(|r| {
        (params.area_min..=params.area_max).contains(&r.pixels.len())
            && r.pixels.iter().all(|&p| values[p] > params.validity_threshold)
    })
    .collect()
}

/// Rasterizes detected regions into a single mask.
pub fn build_mask(
    regions: &[mser::StableRegion],
    width: usize,
    height: usize,
) -> HighlightMask {
    let mut bits = vec![false; width * height];
    for r in regions {
        for &p in &r.pixels {
            bits[p] = true;
        }
    }
    HighlightMask::from_bits(width, height, bits)
}

/// Morphological closing with a `(2r+1)` square element.
///
/// Dilation treats out-of-bounds as background, erosion treats it as
/// foreground; with that pairing the closing never removes set pixels and
/// applying it twice changes nothing.
pub fn morphological_close(mask: &HighlightMask, radius: usize) -> HighlightMask {
    if radius == 0 {
        return mask.clone();
    }
    erode(&dilate(mask, radius), radius)
}

/// OR over the square window, clipped to the image (out-of-bounds = false).
/// Separable because the window is a square.
fn dilate(mask: &HighlightMask, radius: usize) -> HighlightMask {
    let (w, h) = (mask.width, mask.height);
    let r = radius as isize;
    let mut horiz = vec![false; w * h];
    for y in 0..h {
        for x in 0..w as isize {
            let lo = (x - r).max(0) as usize;
            let hi = ((x + r) as usize).min(w - 1);
            horiz[y * w + x as usize] = (lo..=hi).any(|i| mask.bits[y * w + i]);
        }
    }
    let mut out = vec![false; w * h];
    for y in 0..h as isize {
        let lo = (y - r).max(0) as usize;
        let hi = ((y + r) as usize).min(h - 1);
        for x in 0..w {
            out[y as usize * w + x] = (lo..=hi).any(|j| horiz[j * w + x]);
        }
    }
    HighlightMask::from_bits(w, h, out)
}

/// AND over the in-bounds part of the window (out-of-bounds = true), which
/// is the adjoint of [`dilate`]; the dual-by-complement identity makes it a
/// dilation of the inverted mask.
fn erode(mask: &HighlightMask, radius: usize) -> HighlightMask {
    let inverted = HighlightMask::from_bits(
        mask.width,
        mask.height,
        mask.bits.iter().map(|b| !b).collect(),
    );
    let mut out = dilate(&inverted, radius);
    for b in &mut out.bits {
        *b = !*b;
    }
    out
}

/// Labels 8-connected components of the closed mask and keeps those whose
/// mean luminance clears the threshold. Returns the screened mask plus the
/// properties of every component, kept or not.
pub fn screen_components(
    mask: &HighlightMask,
    field: &GradientField,
    luminance: &LuminancePlane,
    params: &HighlightParams,
) -> (HighlightMask, Vec<RegionProperties>) {
    assert_eq!(mask.width, field.width(), "mask/field width");
    assert_eq!(mask.height, field.height(), "mask/field height");
    assert_eq!(mask.width, luminance.width(), "mask/luminance width");
    assert_eq!(mask.height, luminance.height(), "mask/luminance height");
    let (w, h) = (mask.width, mask.height);
    let mut labels = vec![0usize; w * h]; // 0 = unlabeled
    let mut props: Vec<RegionProperties> = Vec::new();
    let mut kept_bits = vec![false; w * h];

    for start in 0..w * h {
        if !mask.bits[start] || labels[start] != 0 {
            continue;
        }
        let label = props.len() + 1;
        let mut members = Vec::new();
        let mut stack = vec![start];
        labels[start] = label;
        while let Some(p) = stack.pop() {
            members.push(p);
            let (px, py) = (p % w, p / w);
            for dy in -1isize..=1 {
                for dx in -1isize..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (px as isize + dx, py as isize + dy);
                    if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                        continue;
                    }
                    let q = ny as usize * w + nx as usize;
                    if mask.bits[q] && labels[q] == 0 {
                        labels[q] = label;
                        stack.push(q);
                    }
                }
            }
        }

        let area = members.len();
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (usize::MAX, usize::MAX, 0, 0);
        let (mut sum_x, mut sum_y, mut sum_g, mut sum_l) = (0.0, 0.0, 0.0, 0.0);
        for &p in &members {
            let (px, py) = (p % w, p / w);
            min_x = min_x.min(px);
            min_y = min_y.min(py);
            max_x = max_x.max(px);
            max_y = max_y.max(py);
            sum_x += px as f64;
            sum_y += py as f64;
            sum_g += field.values()[p];
            sum_l += luminance.values()[p];
        }
        let mean_luminance = sum_l / area as f64;
        let kept = mean_luminance >= params.luminance_threshold;
        if kept {
            for &p in &members {
                kept_bits[p] = true;
            }
        }
        props.push(RegionProperties {
            label,
            area,
            bbox: (min_x, min_y, max_x - min_x + 1, max_y - min_y + 1),
            centroid: (sum_x / area as f64, sum_y / area as f64),
            mean_gradient: sum_g / area as f64,
            mean_luminance,
            kept,
        });
    }

    (HighlightMask::from_bits(w, h, kept_bits), props)
}

/// Mean gradient over the open band `(0, band_upper)`, or 0 if it is empty.
pub fn complemental_value(field: &GradientField, band_upper: f64) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for &v in field.values() {
        if v > 0.0 && v < band_upper {
            sum += v;
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Replaces masked gradient values with the complemental value.
pub fn apply_mask(
    field: &GradientField,
    mask: &HighlightMask,
    complemental: f64,
) -> Result<GradientField> {
    if field.width() != mask.width || field.height() != mask.height {
        return Err(Error::DimensionMismatch {
            left: format!("{}x{}", field.width(), field.height()),
            right: format!("{}x{}", mask.width, mask.height),
        });
    }
    let values = field
        .values()
        .iter()
        .zip(&mask.bits)
        .map(|(&v, &m)| if m { complemental } else { v })
        .collect();
    Ok(GradientField::from_values(field.width(), field.height(), values))
}
