// Usage: cargo run --example paired_stats
//
// The statistics layer on its own: paired two-tailed t-test and boxplot
// summaries (quartiles, Tukey whiskers, outliers) on a small worked
// dataset of before/after scores.

use ecgi::stats::{boxplot_stats, paired_t_test};

fn main() -> ecgi::Result<()> {
    let before = [5.61, 5.92, 5.48, 6.07, 5.73, 5.88, 5.59, 6.21, 5.80, 5.67];
    let after = [5.34, 5.70, 5.41, 5.62, 5.52, 5.69, 5.38, 5.85, 5.56, 5.49];

    let (t, p) = paired_t_test(&before, &after)?;
    println!("n = {}, t = {:.4}, two-tailed p = {:.6}", before.len(), t, p);

    for (name, sample) in [("before", &before), ("after", &after)] {
        let b = boxplot_stats(sample);
        println!(
            "{name:>6}: median {:.3}, IQR [{:.3}, {:.3}], whiskers [{:.3}, {:.3}], outliers {:?}",
            b.median, b.q25, b.q75, b.whisker_low, b.whisker_high, b.outliers
        );
    }

    // identical samples are a no-op comparison by construction
    let (t0, p0) = paired_t_test(&before, &before)?;
    println!("self-comparison: t = {t0}, p = {p0}");
    Ok(())
}
