//! Color gradient magnitude via per-channel Sobel derivatives and the
//! structure tensor.
//!
//! The per-pixel magnitude is the square root of the larger directional
//! response of the color structure tensor, evaluated in closed form:
//!
//! ```text
//! F = sqrt(max(0, 0.5 * ((g_xx + g_yy) + h)))
//! h = sqrt((g_xx - g_yy)^2 + (2 g_xy)^2)
//! ```
//!
//! `h` is the spread between the two directional extrema, so this equals the
//! maximum of the directional response over all angles without evaluating
//! any trigonometry.
//!
//! Floating-point layout is chosen so two symmetries hold bit-exactly:
//! permuting the input channels never changes F (channel terms are summed in
//! a canonical order derived from their values), and rotating the input by
//! 90 degrees rotates F (the 3x3 stencil sums are arranged so the rotated
//! evaluation performs sign-flipped copies of the same IEEE operations).

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imaging::NormalizedColorImage;

/// Per-channel Sobel derivative planes (kernel weights sum to 8, divided out).
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDerivatives {
    width: usize,
    height: usize,
    dx: [Vec<f64>; 3],
    dy: [Vec<f64>; 3],
}

/// The 2x2 color structure tensor per pixel, stored as three planes.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensorField {
    width: usize,
    height: usize,
    g_xx: Vec<f64>,
    g_yy: Vec<f64>,
    g_xy: Vec<f64>,
}

/// A scalar gradient-magnitude raster.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

/// Smoothed column or row sum, outer samples first.
///
/// The outer-first grouping makes the sum invariant to reversing the three
/// samples (IEEE addition is commutative), which is what a 90-degree
/// rotation or a transpose does to half of the stencil lines.
#[inline]
fn stencil_sum(a: f64, b: f64, c: f64) -> f64 {
    (a + c) + 2.0 * b
}

/// Sums three values in an order determined only by the value multiset.
///
/// Values are sorted by (magnitude, value) and any run of equal magnitudes
/// is collapsed first. This makes the result independent of argument order,
/// and negating all inputs negates the result exactly: with distinct
/// magnitudes the sorted sequences are element-wise negations of each other,
/// and equal-magnitude runs reduce to sums whose partial terms negate
/// exactly (Sterbenz lemma for the mixed-sign cases).
#[inline]
fn canonical_sum3(a: f64, b: f64, c: f64) -> f64 {
    let mut v = [a, b, c];
    v.sort_unstable_by(|p, q| p.abs().total_cmp(&q.abs()).then(p.total_cmp(q)));
    let eq01 = v[0].abs() == v[1].abs();
    let eq12 = v[1].abs() == v[2].abs();
    if eq01 && !eq12 {
        (v[0] + v[1]) + v[2]
    } else if eq12 && !eq01 {
        v[0] + (v[1] + v[2])
    } else {
        // all-distinct or all-equal magnitudes: plain left fold
        (v[0] + v[1]) + v[2]
    }
}

/// Computes per-channel Sobel derivatives with replicate padding.
pub fn channel_derivatives(img: &NormalizedColorImage) -> ChannelDerivatives {
    let (w, h) = (img.width(), img.height());
    let mut dx: [Vec<f64>; 3] = [vec![0.0; w * h], vec![0.0; w * h], vec![0.0; w * h]];
    let mut dy: [Vec<f64>; 3] = [vec![0.0; w * h], vec![0.0; w * h], vec![0.0; w * h]];
    for c in 0..3 {
        let src = img.plane(c);
        for y in 0..h {
            let ym = y.saturating_sub(1);
            let yp = (y + 1).min(h - 1);
            for x in 0..w {
                let xm = x.saturating_sub(1);
                let xp = (x + 1).min(w - 1);
                let tl = src[ym * w + xm];
                let tm = src[ym * w + x];
                let tr = src[ym * w + xp];
                let ml = src[y * w + xm];
                let mr = src[y * w + xp];
                let bl = src[yp * w + xm];
                let bm = src[yp * w + x];
                let br = src[yp * w + xp];
                let i = y * w + x;
                dx[c][i] = (stencil_sum(tr, mr, br) - stencil_sum(tl, ml, bl)) / 8.0;
                dy[c][i] = (stencil_sum(bl, bm, br) - stencil_sum(tl, tm, tr)) / 8.0;
            }
        }
    }
    ChannelDerivatives {
        width: w,
        height: h,
        dx,
        dy,
    }
}

impl ChannelDerivatives {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Horizontal derivative plane for one channel.
    pub fn dx(&self, channel: usize) -> &[f64] {
        &self.dx[channel]
    }

    /// Vertical derivative plane for one channel.
    pub fn dy(&self, channel: usize) -> &[f64] {
        &self.dy[channel]
    }
}

/// Accumulates the color structure tensor from channel derivatives.
pub fn structure_tensor(d: &ChannelDerivatives) -> StructureTensorField {
    let n = d.width * d.height;
    let mut g_xx = vec![0.0; n];
    let mut g_yy = vec![0.0; n];
    let mut g_xy = vec![0.0; n];
    for i in 0..n {
        g_xx[i] = canonical_sum3(
            d.dx[0][i] * d.dx[0][i],
            d.dx[1][i] * d.dx[1][i],
            d.dx[2][i] * d.dx[2][i],
        );
        g_yy[i] = canonical_sum3(
            d.dy[0][i] * d.dy[0][i],
            d.dy[1][i] * d.dy[1][i],
            d.dy[2][i] * d.dy[2][i],
        );
        g_xy[i] = canonical_sum3(
            d.dx[0][i] * d.dy[0][i],
            d.dx[1][i] * d.dy[1][i],
            d.dx[2][i] * d.dy[2][i],
        );
    }
    StructureTensorField {
        width: d.width,
        height: d.height,
        g_xx,
        g_yy,
        g_xy,
    }
}

impl StructureTensorField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Tensor components `(g_xx, g_yy, g_xy)` at a pixel.
    pub fn at(&self, x: usize, y: usize) -> (f64, f64, f64) {
        let i = y * self.width + x;
        (self.g_xx[i], self.g_yy[i], self.g_xy[i])
    }

    /// Angle of the strongest directional response, in `(-pi/2, pi/2]`.
    pub fn principal_angle(&self, x: usize, y: usize) -> f64 {
        let (xx, yy, xy) = self.at(x, y);
        0.5 * (2.0 * xy).atan2(xx - yy)
    }
}

/// Takes the per-pixel maximum directional response in closed form.
pub fn gradient_magnitude(tensor: &StructureTensorField) -> GradientField {
    let n = tensor.width * tensor.height;
    let mut values = vec![0.0; n];
    for i in 0..n {
        let xx = tensor.g_xx[i];
        let yy = tensor.g_yy[i];
        let a = xx - yy;
        let b = 2.0 * tensor.g_xy[i];
        let spread = (a * a + b * b).sqrt();
        let radicand = 0.5 * ((xx + yy) + spread);
        values[i] = radicand.max(0.0).sqrt();
    }
    GradientField {
        width: tensor.width,
        height: tensor.height,
        values,
    }
}

/// Full chain: derivatives, structure tensor, closed-form magnitude.
pub fn color_gradient(img: &NormalizedColorImage) -> GradientField {
    gradient_magnitude(&structure_tensor(&channel_derivatives(img)))
}

impl GradientField {
    /// Wraps a raw raster of magnitudes. No minimum size is imposed.
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), width * height, "raster length");
        Self {
            width,
            height,
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Same rotation convention as [`NormalizedColorImage::rotate90`].
    pub fn rotate90(&self) -> Self {
        let (w, h) = (self.width, self.height);
        let mut out = vec![0.0; w * h];
        for y in 0..h {
            for x in 0..w {
                out[(w - 1 - x) * h + y] = self.values[y * w + x];
            }
        }
        Self {
            width: h,
            height: w,
            values: out,
        }
    }

    /// Quantizes to 8-bit levels: clamp to `[0, 1]`, scale by 255, round
    /// half away from zero.
    pub fn to_u8_levels(&self) -> Vec<u8> {
        self.values
            .iter()
            .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect()
    }

    /// Writes the raster as row-major little-endian `f32`.
    pub fn write_f32_le(&self, mut out: impl Write) -> std::io::Result<()> {
        for v in &self.values {
            out.write_all(&(*v as f32).to_le_bytes())?;
        }
        Ok(())
    }

    /// Saves an 8-bit grayscale preview (same mapping as [`to_u8_levels`]).
    ///
    /// [`to_u8_levels`]: GradientField::to_u8_levels
    pub fn save_preview_png(&self, path: &Path) -> Result<()> {
        let levels = self.to_u8_levels();
        let img =
            image::GrayImage::from_raw(self.width as u32, self.height as u32, levels)
                .expect("level buffer matches dimensions");
        img.save(path).map_err(|e| Error::WriteFailed {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })
    }
}
