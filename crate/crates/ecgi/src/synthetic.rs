//! Seeded synthetic images for tests, examples, and demo corpora.
//!
//! Everything here is deterministic: the same seed always produces the same
//! pixels, so scores computed from these images can be frozen in tests.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::NormalizedColorImage;

/// Random texture with iid uniform `[0, 1]` channel values.
pub fn random_texture(width: usize, height: usize, seed: u64) -> Result<NormalizedColorImage> {
    random_texture_in(width, height, seed, 0.0, 1.0)
}

/// Random texture with iid uniform channel values in `[lo, hi]`.
pub fn random_texture_in(
    width: usize,
    height: usize,
    seed: u64,
    lo: f64,
    hi: f64,
) -> Result<NormalizedColorImage> {
    assert!(lo <= hi && (0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = width * height;
    let mut plane = || (0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<f64>>();
    let (r, g, b) = (plane(), plane(), plane());
    NormalizedColorImage::from_planes(width, height, r, g, b)
}

/// Box blur with a `(2r+1)` square window, averaging over in-bounds samples.
pub fn box_blur(img: &NormalizedColorImage, radius: usize) -> NormalizedColorImage {
    let (w, h) = (img.width(), img.height());
    let r = radius as isize;
    let blur_plane = |src: &[f64]| {
        let mut out = vec![0.0; w * h];
        for y in 0..h as isize {
            for x in 0..w as isize {
                let mut sum = 0.0;
                let mut count = 0usize;
                for dy in -r..=r {
                    for dx in -r..=r {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx >= 0 && ny >= 0 && nx < w as isize && ny < h as isize {
                            sum += src[ny as usize * w + nx as usize];
                            count += 1;
                        }
                    }
                }
                out[y as usize * w + x as usize] = sum / count as f64;
            }
        }
        out
    };
    NormalizedColorImage::from_planes(
        w,
        h,
        blur_plane(img.plane(0)),
        blur_plane(img.plane(1)),
        blur_plane(img.plane(2)),
    )
    .expect("blur preserves dimensions")
}

/// Overwrites a disc with saturated white (all channels 1.0).
pub fn inject_saturated_disc(
    img: &mut NormalizedColorImage,
    cx: usize,
    cy: usize,
    radius: usize,
) {
    let (w, h) = (img.width(), img.height());
    let r2 = (radius * radius) as isize;
    for y in 0..h {
        for x in 0..w {
            let dx = x as isize - cx as isize;
            let dy = y as isize - cy as isize;
            if dx * dx + dy * dy <= r2 {
                img.set_pixel(x, y, (1.0, 1.0, 1.0));
            }
        }
    }
}

/// A random texture and its 7x7 box-blurred copy.
pub fn sharp_blur_pair(
    width: usize,
    height: usize,
    seed: u64,
) -> (NormalizedColorImage, NormalizedColorImage) {
    let sharp = random_texture(width, height, seed).expect("valid synthetic dimensions");
    let blurred = box_blur(&sharp, 3);
    (sharp, blurred)
}

/// Writes `n_pairs` sharp/blurred PNG pairs plus a manifest into `dir`,
/// returning the manifest path. Side A is the sharp image.
pub fn write_sharp_blur_corpus(
    dir: &Path,
    n_pairs: usize,
    width: usize,
    height: usize,
    seed: u64,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|source| Error::WriteFailed {
        path: dir.to_path_buf(),
        source,
    })?;
    let manifest_path = dir.join("manifest.csv");
    let mut rows = String::from(
        "pair_id,path_a,path_b,roi_a_x,roi_a_y,roi_a_w,roi_a_h,roi_b_x,roi_b_y,roi_b_w,roi_b_h\n",
    );
    for i in 0..n_pairs {
        let (sharp, blurred) = sharp_blur_pair(width, height, seed.wrapping_add(i as u64));
        let name_a = format!("pair{i:03}_a.png");
        let name_b = format!("pair{i:03}_b.png");
        sharp.save_png(&dir.join(&name_a))?;
        blurred.save_png(&dir.join(&name_b))?;
        rows.push_str(&format!("pair{i:03},{name_a},{name_b},,,,,,,,\n"));
    }
    std::fs::write(&manifest_path, rows).map_err(|source| Error::WriteFailed {
        path: manifest_path.clone(),
        source,
    })?;
    Ok(manifest_path)
}
