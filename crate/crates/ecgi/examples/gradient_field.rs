// Usage: cargo run --example gradient_field
//
// Shows why the multichannel gradient matters: two regions with exactly
// equal luminance but different hue. A grayscale gradient is blind to the
// seam; the structure tensor magnitude is not. Writes preview images
// under target/demo.

use ecgi::gradient::color_gradient;
use ecgi::imaging::{to_luminance, NormalizedColorImage};

fn main() -> ecgi::Result<()> {
    // 0.299 * 0.587 == 0.587 * 0.299: both halves render to the same gray
    let (w, h) = (64, 64);
    let mut r = vec![0.0; w * h];
    let mut g = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            if x < w / 2 {
                r[y * w + x] = 0.587;
            } else {
                g[y * w + x] = 0.299;
            }
        }
    }
    let img = NormalizedColorImage::from_planes(w, h, r, g, vec![0.0; w * h])?;

    let lum = to_luminance(&img);
    let gray = NormalizedColorImage::from_planes(
        w,
        h,
        lum.values().to_vec(),
        lum.values().to_vec(),
        lum.values().to_vec(),
    )?;

    let color_field = color_gradient(&img);
    let gray_field = color_gradient(&gray);
    let seam = |f: &ecgi::GradientField| (0..h).map(|y| f.at(w / 2, y)).fold(0.0f64, f64::max);

    println!("peak gradient on the seam");
    println!("  color structure tensor: {:.4}", seam(&color_field));
    println!("  grayscale rendering:    {:.4}", seam(&gray_field));

    let dir = std::path::Path::new("target/demo/gradient_field");
    std::fs::create_dir_all(dir).expect("demo dir");
    img.save_png(&dir.join("input.png"))?;
    color_field.save_preview_png(&dir.join("color_gradient.png"))?;
    gray_field.save_preview_png(&dir.join("gray_gradient.png"))?;
    println!("previews in {}", dir.display());
    Ok(())
}
