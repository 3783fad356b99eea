// Usage: cargo run --example score_image [IMAGE]
//
// Scores one image: entropy of its color gradient PMF after specular
// highlight suppression. Without an argument a synthetic texture is
// generated under target/demo and scored instead.

use ecgi::highlight::HighlightParams;
use ecgi::scoring::ecgi_pipeline;
use ecgi::{load_image, synthetic};

fn main() -> ecgi::Result<()> {
    let img = match std::env::args().nth(1) {
        Some(path) => load_image(path.as_ref())?,
        None => {
            let dir = std::path::Path::new("target/demo/score_image");
            std::fs::create_dir_all(dir).expect("demo dir");
            let img = synthetic::random_texture(96, 96, 7)?;
            img.save_png(&dir.join("demo.png"))?;
            println!("no image given, scoring {}", dir.join("demo.png").display());
            img
        }
    };

    let artifacts = ecgi_pipeline(&img, &HighlightParams::default(), true, 1.0)?;
    let r = &artifacts.result;
    println!("score          S = {:.4} bits (range 0..8)", r.score);
    println!("complemental   c = {:.4}", r.complemental);
    println!("masked pixels      {}", r.mask_pixels);
    println!("occupied bins      {}", artifacts.pmf.bins().iter().filter(|&&p| p > 0.0).count());
    Ok(())
}
