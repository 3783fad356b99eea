// Usage: cargo run --example compare_corpora
//
// Full batch pipeline: synthesize a paired corpus on disk (side A sharp,
// side B blurred), score every pair in parallel, run the paired t-test,
// and render the JSON report. Everything lands in target/demo.

use ecgi::batch::{compare_pairs, RunConfig};
use ecgi::manifest::read_manifest;
use ecgi::report::render_json;
use ecgi::synthetic;

fn main() -> ecgi::Result<()> {
    let dir = std::path::Path::new("target/demo/compare_corpora");
    let manifest_path = synthetic::write_sharp_blur_corpus(dir, 12, 64, 64, 314)?;

    let cfg = RunConfig {
        label_a: "sharp".into(),
        label_b: "blurred".into(),
        ..RunConfig::default()
    };
    let rows = read_manifest(&manifest_path)?;
    let outcome = compare_pairs(&rows, &cfg)?;

    let report_path = dir.join("report.json");
    let json = render_json(
        &cfg,
        &manifest_path.to_string_lossy(),
        &outcome.pairs,
        &outcome.report,
    );
    std::fs::write(&report_path, json).expect("report write");

    let r = &outcome.report;
    println!("pairs scored       {}", r.n);
    println!("mean S, sharp      {:.4}", r.mean_a);
    println!("mean S, blurred    {:.4}", r.mean_b);
    println!("paired t           {:.4}", r.t_statistic);
    println!("two-tailed p       {:.3e}", r.p_value);
    println!("sharp wins         {:.1}%", r.pct_a_greater);
    println!("report at {}", report_path.display());
    Ok(())
}
