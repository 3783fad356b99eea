//! Gradient-distribution entropy: the image score.
//!
//! The (suppressed) gradient field is binned into a 256-bin probability
//! mass function over `[0, range_max]` and scored with Shannon entropy in
//! bits. Flat fields concentrate in one bin (score 0), rich textured
//! fields spread across bins (score approaching 8).

use crate::error::{Error, Result};
use crate::gradient::{color_gradient, GradientField};
use crate::highlight::{
    apply_mask, build_mask, complemental_value, detect_mser_regions, morphological_close,
    screen_components, HighlightMask, HighlightParams, RegionProperties,
};
use crate::imaging::{to_luminance, NormalizedColorImage};

/// Number of histogram bins; one per 8-bit gradient level.
pub const PMF_BINS: usize = 256;

/// A 256-bin probability mass function over gradient magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientPmf {
    bins: Vec<f64>,
    range_max: f64,
}

impl GradientPmf {
    /// Wraps precomputed bin masses. Validity is checked by [`entropy`].
    pub fn from_bins(bins: Vec<f64>, range_max: f64) -> Self {
        assert_eq!(bins.len(), PMF_BINS, "bin count");
        Self { bins, range_max }
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn range_max(&self) -> f64 {
        self.range_max
    }

    /// Index of the bin a gradient value falls into.
    pub fn bin_of(&self, value: f64) -> usize {
        bin_index(value, self.range_max)
    }
}

fn bin_index(value: f64, range_max: f64) -> usize {
    let unit = (value / range_max).clamp(0.0, 1.0);
    ((unit * PMF_BINS as f64) as usize).min(PMF_BINS - 1)
}

/// Histograms a gradient field into a PMF over `[0, range_max]`.
///
/// Values outside the range are clamped into the end bins, so mass always
/// sums to 1 over a nonempty field.
pub fn quantize(field: &GradientField, range_max: f64) -> Result<GradientPmf> {
    if field.values().is_empty() {
        return Err(Error::EmptyImage);
    }
    if !(range_max > 0.0 && range_max.is_finite()) {
        return Err(Error::InvalidParams {
            reason: format!("histogram range max {range_max} must be finite and positive"),
        });
    }
    let mut counts = [0u64; PMF_BINS];
    for &v in field.values() {
        counts[bin_index(v, range_max)] += 1;
    }
    let n = field.values().len() as f64;
    Ok(GradientPmf {
        bins: counts.iter().map(|&c| c as f64 / n).collect(),
        range_max,
    })
}

/// Shannon entropy in bits of a PMF; zero-mass bins contribute nothing.
pub fn entropy(pmf: &GradientPmf) -> Result<f64> {
    let mut sum = 0.0;
    for (i, &p) in pmf.bins.iter().enumerate() {
        if p < 0.0 || !p.is_finite() {
            return Err(Error::InvalidPmf {
                reason: format!("bin {i} has mass {p}"),
            });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidPmf {
            reason: format!("total mass {sum} is not 1"),
        });
    }
    let h: f64 = pmf
        .bins
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // a point mass contributes -0.0; keep the zero positive so formatted
    // scores never read "-0.0000"
    Ok(h + 0.0)
}

/// Score and provenance for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct EcgiResult {
    /// Entropy of the suppressed gradient distribution, in bits.
    pub score: f64,
    /// Mean gradient in the open valid band, used as mask fill.
    pub complemental: f64,
    /// Pixels replaced by the highlight mask.
    pub mask_pixels: usize,
    /// Parameters the score was computed under.
    pub params: HighlightParams,
}

/// Everything the pipeline produced along the way, for dumps and debugging.
#[derive(Debug, Clone)]
pub struct PipelineArtifacts {
    /// Raw gradient magnitude field.
    pub gradient: GradientField,
    /// Screened highlight mask (empty when suppression is disabled).
    pub mask: HighlightMask,
    /// Properties of each closed mask component, kept or not.
    pub components: Vec<RegionProperties>,
    /// Gradient field after mask replacement.
    pub suppressed: GradientField,
    pub pmf: GradientPmf,
    pub result: EcgiResult,
}

/// Runs the full scoring chain on a normalized image.
///
/// With `suppress_highlights` off the mask stays empty and the suppressed
/// field is the raw gradient bit for bit.
pub fn ecgi_pipeline(
    img: &NormalizedColorImage,
    params: &HighlightParams,
    suppress_highlights: bool,
    range_max: f64,
) -> Result<PipelineArtifacts> {
    params.validate()?;
    let gradient = color_gradient(img);
    let (mask, components) = if suppress_highlights {
        let regions = detect_mser_regions(&gradient, params);
        let raw = build_mask(&regions, gradient.width(), gradient.height());
        let closed = morphological_close(&raw, params.closing_radius);
        let luminance = to_luminance(img);
        screen_components(&closed, &gradient, &luminance, params)
    } else {
        (
            HighlightMask::empty(gradient.width(), gradient.height()),
            Vec::new(),
        )
    };
    let complemental = complemental_value(&gradient, params.validity_threshold);
    let suppressed = apply_mask(&gradient, &mask, complemental)?;
    let pmf = quantize(&suppressed, range_max)?;
    let score = entropy(&pmf)?;
    let mask_pixels = mask.count();
    Ok(PipelineArtifacts {
        gradient,
        mask,
        components,
        suppressed,
        pmf,
        result: EcgiResult {
            score,
            complemental,
            mask_pixels,
            params: *params,
        },
    })
}

/// Scores an image with highlight suppression over the unit range.
pub fn ecgi_score(img: &NormalizedColorImage, params: &HighlightParams) -> Result<EcgiResult> {
    Ok(ecgi_pipeline(img, params, true, 1.0)?.result)
}

impl GradientPmf {
    /// Writes the PMF as `level<TAB>mass` rows.
    pub fn write_tsv(&self, mut out: impl std::io::Write) -> std::io::Result<()> {
        for (i, p) in self.bins.iter().enumerate() {
            writeln!(out, "{i}\t{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn flat_image(w: usize, h: usize, v: f64) -> NormalizedColorImage {
        NormalizedColorImage::from_planes(w, h, vec![v; w * h], vec![v; w * h], vec![v; w * h])
            .unwrap()
    }

    #[test]
    fn quantize_clamps_and_bins() {
        let f = GradientField::from_values(5, 1, vec![0.0, 0.5, 0.9, 1.0, 1.7]);
        let pmf = quantize(&f, 1.0).unwrap();
        assert_eq!(pmf.bin_of(0.0), 0);
        assert_eq!(pmf.bin_of(0.5), 128);
        assert_eq!(pmf.bin_of(0.9), 230);
        assert_eq!(pmf.bin_of(1.0), 255);
        assert_eq!(pmf.bin_of(1.7), 255);
        assert_relative_eq!(pmf.bins().iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_eq!(pmf.bins()[255], 2.0 / 5.0); // 1.0 and the clamped 1.7
    }

    #[test]
    fn quantize_respects_custom_range() {
        let f = GradientField::from_values(2, 1, vec![0.25, 0.5]);
        let pmf = quantize(&f, 0.5).unwrap();
        assert_eq!(pmf.bin_of(0.25), 128);
        assert_eq!(pmf.bin_of(0.5), 255);
    }

    #[test]
    fn quantize_rejects_empty_and_bad_range() {
        let empty = GradientField::from_values(0, 0, vec![]);
        assert!(matches!(quantize(&empty, 1.0), Err(Error::EmptyImage)));
        let f = GradientField::from_values(1, 1, vec![0.5]);
        assert!(quantize(&f, 0.0).is_err());
        assert!(quantize(&f, f64::INFINITY).is_err());
    }

    #[test]
    fn entropy_of_point_mass_is_zero() {
        let mut bins = vec![0.0; PMF_BINS];
        bins[7] = 1.0;
        assert_eq!(entropy(&GradientPmf::from_bins(bins, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn entropy_of_uniform_pmf_is_eight_bits() {
        let bins = vec![1.0 / PMF_BINS as f64; PMF_BINS];
        assert_relative_eq!(
            entropy(&GradientPmf::from_bins(bins, 1.0)).unwrap(),
            8.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_of_two_equal_bins_is_one_bit() {
        let mut bins = vec![0.0; PMF_BINS];
        bins[3] = 0.5;
        bins[200] = 0.5;
        assert_relative_eq!(
            entropy(&GradientPmf::from_bins(bins, 1.0)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn entropy_rejects_invalid_pmf() {
        let mut bins = vec![0.0; PMF_BINS];
        bins[0] = 0.9; // mass 0.9 != 1
        assert!(matches!(
            entropy(&GradientPmf::from_bins(bins, 1.0)),
            Err(Error::InvalidPmf { .. })
        ));
        let mut bins = vec![0.0; PMF_BINS];
        bins[0] = 1.5;
        bins[1] = -0.5;
        assert!(entropy(&GradientPmf::from_bins(bins, 1.0)).is_err());
    }

    #[test]
    fn constant_image_scores_zero() {
        let img = flat_image(16, 16, 0.42);
        let r = ecgi_score(&img, &HighlightParams::default()).unwrap();
        assert_eq!(r.score, 0.0);
        assert_eq!(r.mask_pixels, 0);
        assert_eq!(r.complemental, 0.0);
    }

    #[test]
    fn texture_scores_higher_than_blur() {
        let (sharp, blurred) = synthetic::sharp_blur_pair(64, 64, 21);
        let p = HighlightParams::default();
        let s_sharp = ecgi_score(&sharp, &p).unwrap().score;
        let s_blur = ecgi_score(&blurred, &p).unwrap().score;
        assert!(
            s_sharp > s_blur + 0.5,
            "sharp {s_sharp} vs blurred {s_blur}"
        );
    }

    #[test]
    fn score_is_within_entropy_bounds() {
        let img = synthetic::random_texture(32, 32, 5).unwrap();
        let r = ecgi_score(&img, &HighlightParams::default()).unwrap();
        assert!((0.0..=8.0).contains(&r.score));
    }

    #[test]
    fn validity_threshold_one_gives_identity_pipeline() {
        let mut img = synthetic::random_texture(48, 48, 33).unwrap();
        synthetic::inject_saturated_disc(&mut img, 24, 24, 5);
        let mut p = HighlightParams::default();
        p.validity_threshold = 1.0;
        let artifacts = ecgi_pipeline(&img, &p, true, 1.0).unwrap();
        assert_eq!(artifacts.mask.count(), 0);
        assert_eq!(artifacts.suppressed, artifacts.gradient);
    }

    #[test]
    fn disabling_suppression_keeps_raw_field() {
        let mut img = synthetic::random_texture(48, 48, 34).unwrap();
        synthetic::inject_saturated_disc(&mut img, 20, 20, 5);
        let p = HighlightParams::default();
        let artifacts = ecgi_pipeline(&img, &p, false, 1.0).unwrap();
        assert_eq!(artifacts.mask.count(), 0);
        assert_eq!(artifacts.suppressed, artifacts.gradient);
        assert!(artifacts.components.is_empty());
    }

    #[test]
    fn pipeline_rejects_invalid_params() {
        let img = flat_image(8, 8, 0.5);
        let mut p = HighlightParams::default();
        p.mser_delta = 0;
        assert!(matches!(
            ecgi_pipeline(&img, &p, true, 1.0),
            Err(Error::InvalidParams { .. })
        ));
    }

    #[test]
    fn pmf_tsv_has_one_row_per_level() {
        let f = GradientField::from_values(2, 1, vec![0.0, 1.0]);
        let pmf = quantize(&f, 1.0).unwrap();
        let mut buf = Vec::new();
        pmf.write_tsv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 256);
        assert_eq!(lines[0], "0\t0.5");
        assert_eq!(lines[255], "255\t0.5");
    }

    proptest! {
        #[test]
        fn random_field_entropy_in_range(
            values in proptest::collection::vec(0.0f64..=1.2, 16..64)
        ) {
            let n = values.len();
            let f = GradientField::from_values(n, 1, values);
            let pmf = quantize(&f, 1.0).unwrap();
            let s = entropy(&pmf).unwrap();
            prop_assert!((0.0..=8.0 + 1e-12).contains(&s));
        }

        #[test]
        fn pmf_mass_sums_to_one(
            values in proptest::collection::vec(0.0f64..=2.0, 1..128)
        ) {
            let n = values.len();
            let f = GradientField::from_values(n, 1, values);
            let pmf = quantize(&f, 1.0).unwrap();
            prop_assert!((pmf.bins().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}
