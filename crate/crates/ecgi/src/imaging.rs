//! Image decoding, channel normalization, ROI cropping, and luminance.
//!
//! Every raster downstream of this module works on [`NormalizedColorImage`]:
//! three `f64` planes with values in `[0, 1]`, row-major, at least 3x3 so the
//! derivative stencil is defined everywhere.

use std::path::Path;

use crate::error::{Error, Result};

/// An RGB image with unit-normalized `f64` channel planes.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedColorImage {
    width: usize,
    height: usize,
    /// Planes in R, G, B order, each `width * height`, row-major.
    planes: [Vec<f64>; 3],
}

/// A rectangular region of interest, in pixels from the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RoiRect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl std::fmt::Display for RoiRect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{},{}", self.x, self.y, self.w, self.h)
    }
}

/// A single-channel luminance raster in `[0, 1]` matching its source image.
#[derive(Debug, Clone, PartialEq)]
pub struct LuminancePlane {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl NormalizedColorImage {
    /// Builds an image from three planes. Values are expected in `[0, 1]`.
    pub fn from_planes(
        width: usize,
        height: usize,
        red: Vec<f64>,
        green: Vec<f64>,
        blue: Vec<f64>,
    ) -> Result<Self> {
        if width < 3 || height < 3 {
            return Err(Error::TooSmall { width, height });
        }
        let n = width * height;
        assert_eq!(red.len(), n, "red plane length");
        assert_eq!(green.len(), n, "green plane length");
        assert_eq!(blue.len(), n, "blue plane length");
        Ok(Self {
            width,
            height,
            planes: [red, green, blue],
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// Channel plane by index (0 = R, 1 = G, 2 = B), row-major.
    pub fn plane(&self, channel: usize) -> &[f64] {
        &self.planes[channel]
    }

    /// (R, G, B) at a pixel.
    pub fn pixel(&self, x: usize, y: usize) -> (f64, f64, f64) {
        let i = y * self.width + x;
        (self.planes[0][i], self.planes[1][i], self.planes[2][i])
    }

    /// Returns a copy with its channel planes rearranged.
    /// `order[k]` names the source channel that becomes channel `k`.
    pub fn permute_channels(&self, order: [usize; 3]) -> Self {
        Self {
            width: self.width,
            height: self.height,
            planes: [
                self.planes[order[0]].clone(),
                self.planes[order[1]].clone(),
                self.planes[order[2]].clone(),
            ],
        }
    }

    /// Overwrites one pixel. Values are clamped to `[0, 1]`.
    pub fn set_pixel(&mut self, x: usize, y: usize, rgb: (f64, f64, f64)) {
        let i = y * self.width + x;
        self.planes[0][i] = rgb.0.clamp(0.0, 1.0);
        self.planes[1][i] = rgb.1.clamp(0.0, 1.0);
        self.planes[2][i] = rgb.2.clamp(0.0, 1.0);
    }

    /// Encodes the image as an 8-bit PNG (`round(v * 255)` per sample).
    pub fn save_png(&self, path: &Path) -> Result<()> {
        let mut out = image::RgbImage::new(self.width as u32, self.height as u32);
        for (i, p) in out.pixels_mut().enumerate() {
            p.0 = [
                (self.planes[0][i].clamp(0.0, 1.0) * 255.0).round() as u8,
                (self.planes[1][i].clamp(0.0, 1.0) * 255.0).round() as u8,
                (self.planes[2][i].clamp(0.0, 1.0) * 255.0).round() as u8,
            ];
        }
        out.save(path).map_err(|e| Error::WriteFailed {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })
    }

    /// Returns the image rotated 90 degrees counter-clockwise.
    pub fn rotate90(&self) -> Self {
        let (w, h) = (self.width, self.height);
        let rot = |src: &[f64]| {
            let mut out = vec![0.0; w * h];
            for y in 0..h {
                for x in 0..w {
                    // (x, y) -> (y, w-1-x) in the h x w output
                    out[(w - 1 - x) * h + y] = src[y * w + x];
                }
            }
            out
        };
        Self {
            width: h,
            height: w,
            planes: [
                rot(&self.planes[0]),
                rot(&self.planes[1]),
                rot(&self.planes[2]),
            ],
        }
    }
}

/// Decodes a PNG, JPEG, or BMP file into unit-normalized RGB planes.
///
/// 8-bit samples map to `v/255`, 16-bit to `v/65535`. Alpha is dropped,
/// grayscale inputs are rejected.
pub fn load_image(path: &Path) -> Result<NormalizedColorImage> {
    let reader = image::ImageReader::open(path).map_err(|source| Error::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    let decoded = reader
        .decode()
        .map_err(|e| Error::UnsupportedFormat {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;

    use image::DynamicImage::*;
    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    let (mut r, mut g, mut b) = (
        Vec::with_capacity(width * height),
        Vec::with_capacity(width * height),
        Vec::with_capacity(width * height),
    );
    match &decoded {
        ImageLuma8(_) | ImageLumaA8(_) | ImageLuma16(_) | ImageLumaA16(_) => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                reason: "grayscale input (3 color channels required)".into(),
            });
        }
        ImageRgb8(img) => {
            for p in img.pixels() {
                r.push(p.0[0] as f64 / 255.0);
                g.push(p.0[1] as f64 / 255.0);
                b.push(p.0[2] as f64 / 255.0);
            }
        }
        ImageRgba8(img) => {
            for p in img.pixels() {
                r.push(p.0[0] as f64 / 255.0);
                g.push(p.0[1] as f64 / 255.0);
                b.push(p.0[2] as f64 / 255.0);
            }
        }
        ImageRgb16(img) => {
            for p in img.pixels() {
                r.push(p.0[0] as f64 / 65535.0);
                g.push(p.0[1] as f64 / 65535.0);
                b.push(p.0[2] as f64 / 65535.0);
            }
        }
        ImageRgba16(img) => {
            for p in img.pixels() {
                r.push(p.0[0] as f64 / 65535.0);
                g.push(p.0[1] as f64 / 65535.0);
                b.push(p.0[2] as f64 / 65535.0);
            }
        }
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                reason: format!("unhandled pixel layout {:?}", decoded.color()),
            });
        }
    }
    NormalizedColorImage::from_planes(width, height, r, g, b)
}

/// Crops a rectangle out of `img` without resampling.
pub fn crop_roi(img: &NormalizedColorImage, roi: RoiRect) -> Result<NormalizedColorImage> {
    if roi.w < 3 || roi.h < 3 {
        return Err(Error::TooSmall {
            width: roi.w,
            height: roi.h,
        });
    }
    if roi.x + roi.w > img.width || roi.y + roi.h > img.height {
        return Err(Error::RoiOutOfBounds {
            roi: roi.to_string(),
            width: img.width,
            height: img.height,
        });
    }
    let mut planes: [Vec<f64>; 3] = [
        Vec::with_capacity(roi.w * roi.h),
        Vec::with_capacity(roi.w * roi.h),
        Vec::with_capacity(roi.w * roi.h),
    ];
    for (c, plane) in planes.iter_mut().enumerate() {
        let src = &img.planes[c];
        for j in 0..roi.h {
            let row = (roi.y + j) * img.width + roi.x;
            plane.extend_from_slice(&src[row..row + roi.w]);
        }
    }
    let [r, g, b] = planes;
    NormalizedColorImage::from_planes(roi.w, roi.h, r, g, b)
}

/// Rec. 601 luminance: `0.299 R + 0.587 G + 0.114 B`.
pub fn to_luminance(img: &NormalizedColorImage) -> LuminancePlane {
    let values = (0..img.pixel_count())
        .map(|i| 0.299 * img.planes[0][i] + 0.587 * img.planes[1][i] + 0.114 * img.planes[2][i])
        .collect();
    LuminancePlane {
        width: img.width,
        height: img.height,
        values,
    }
}

impl LuminancePlane {
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    fn constant_image(w: usize, h: usize, rgb: (f64, f64, f64)) -> NormalizedColorImage {
        NormalizedColorImage::from_planes(
            w,
            h,
            vec![rgb.0; w * h],
            vec![rgb.1; w * h],
            vec![rgb.2; w * h],
        )
        .unwrap()
    }

    #[test]
    fn load_rejects_below_stencil_minimum() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.png");
        let img = image::RgbImage::from_pixel(2, 2, image::Rgb([255, 255, 255]));
        img.save(&path).unwrap();
        match load_image(&path) {
            Err(Error::TooSmall { width: 2, height: 2 }) => {}
            other => panic!("expected TooSmall, got {other:?}"),
        }
    }

    #[test]
    fn load_normalizes_eight_bit_values() {
        let dir = tempfile::tempdir().unwrap();

        let white = dir.path().join("white.png");
        image::RgbImage::from_pixel(4, 4, image::Rgb([255, 255, 255]))
            .save(&white)
            .unwrap();
        let img = load_image(&white).unwrap();
        assert!(img.plane(0).iter().all(|&v| v == 1.0));
        assert!(img.plane(2).iter().all(|&v| v == 1.0));

        let mid = dir.path().join("mid.png");
        image::RgbImage::from_pixel(4, 4, image::Rgb([128, 128, 128]))
            .save(&mid)
            .unwrap();
        let img = load_image(&mid).unwrap();
        let expect = 128.0 / 255.0;
        assert!(img.plane(1).iter().all(|&v| v == expect));
        assert!((expect - 0.50196).abs() < 1e-4);
    }

    #[test]
    fn load_normalizes_sixteen_bit_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("deep.png");
        let img = image::ImageBuffer::<image::Rgb<u16>, _>::from_pixel(
            4,
            4,
            image::Rgb([65535u16, 32768, 0]),
        );
        img.save(&path).unwrap();
        let loaded = load_image(&path).unwrap();
        assert_eq!(loaded.pixel(0, 0).0, 1.0);
        assert_eq!(loaded.pixel(0, 0).1, 32768.0 / 65535.0);
        assert_eq!(loaded.pixel(0, 0).2, 0.0);
    }

    #[test]
    fn load_rejects_grayscale() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gray.png");
        image::GrayImage::from_pixel(4, 4, image::Luma([100]))
            .save(&path)
            .unwrap();
        assert!(matches!(
            load_image(&path),
            Err(Error::UnsupportedFormat { .. })
        ));
    }

    #[test]
    fn load_rejects_missing_file() {
        assert!(matches!(
            load_image(Path::new("/nonexistent/nothing.png")),
            Err(Error::UnreadableFile { .. })
        ));
    }

    #[test]
    fn load_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tex.png");
        synthetic::random_texture(16, 16, 42)
            .unwrap()
            .save_png(&path)
            .unwrap();
        let a = load_image(&path).unwrap();
        let b = load_image(&path).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crop_full_extent_is_identity() {
        let img = synthetic::random_texture(10, 8, 3).unwrap();
        let full = RoiRect {
            x: 0,
            y: 0,
            w: 10,
            h: 8,
        };
        assert_eq!(crop_roi(&img, full).unwrap(), img);
    }

    #[test]
    fn crop_offsets_pixels() {
        let img = synthetic::random_texture(10, 10, 5).unwrap();
        let out = crop_roi(
            &img,
            RoiRect {
                x: 2,
                y: 3,
                w: 4,
                h: 4,
            },
        )
        .unwrap();
        assert_eq!(out.width(), 4);
        assert_eq!(out.height(), 4);
        assert_eq!(out.pixel(0, 0), img.pixel(2, 3));
        assert_eq!(out.pixel(3, 3), img.pixel(5, 6));
    }

    #[test]
    fn crop_out_of_bounds_is_rejected() {
        let img = synthetic::random_texture(10, 10, 5).unwrap();
        let result = crop_roi(
            &img,
            RoiRect {
                x: 8,
                y: 8,
                w: 4,
                h: 4,
            },
        );
        assert!(matches!(result, Err(Error::RoiOutOfBounds { .. })));
    }

    #[test]
    fn luminance_weights() {
        // the three weights sum to 1 only up to rounding
        let white = constant_image(4, 4, (1.0, 1.0, 1.0));
        assert!((to_luminance(&white).at(0, 0) - 1.0).abs() < 1e-15);
        let black = constant_image(4, 4, (0.0, 0.0, 0.0));
        assert_eq!(to_luminance(&black).at(0, 0), 0.0);
        let red = constant_image(4, 4, (1.0, 0.0, 0.0));
        assert_eq!(to_luminance(&red).at(0, 0), 0.299);
    }

    #[test]
    fn luminance_bounded_and_monotone() {
        let img = synthetic::random_texture(12, 12, 9).unwrap();
        let lum = to_luminance(&img);
        assert!(lum.values().iter().all(|&v| (0.0..=1.0).contains(&v)));

        // raising one channel raises luminance
        let brighter = NormalizedColorImage::from_planes(
            12,
            12,
            img.plane(0).iter().map(|v| (v + 0.1).min(1.0)).collect(),
            img.plane(1).to_vec(),
            img.plane(2).to_vec(),
        )
        .unwrap();
        let lum2 = to_luminance(&brighter);
        for (a, b) in lum.values().iter().zip(lum2.values()) {
            assert!(b >= a);
        }
    }
}
