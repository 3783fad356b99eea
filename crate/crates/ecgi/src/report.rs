//! Report rendering with deterministic number formatting.
//!
//! Scores, means, deltas, and boxplot values are rounded to 4 decimal
//! places; p-values get 6 decimal places, switching to 6 significant
//! digits below 1e-4. An infinite t statistic is rendered as a string in
//! JSON ("inf" / "-inf") because JSON numbers cannot carry it.

use serde_json::{json, Value};

use crate::batch::RunConfig;
use crate::stats::{BoxplotSummary, PairScore, PairedReport};

fn round4(v: f64) -> f64 {
    // the trailing add keeps a rounded -0.0 from serializing as "-0.0"
    (v * 1e4).round() / 1e4 + 0.0
}

fn p_to_json(p: f64) -> Value {
    if p >= 1e-4 {
        json!((p * 1e6).round() / 1e6)
    } else {
        // 6 significant digits, kept as a number
        let rendered: f64 = format!("{p:.6e}").parse().expect("roundtrip");
        json!(rendered)
    }
}

fn p_to_text(p: f64) -> String {
    if p >= 1e-4 {
        format!("{p:.6}")
    } else {
        format!("{p:.6e}")
    }
}

fn t_to_json(t: f64) -> Value {
    if t.is_finite() {
        json!(round4(t))
    } else {
        json!(t.to_string())
    }
}

fn boxplot_to_json(b: &BoxplotSummary) -> Value {
    json!({
        "median": round4(b.median),
        "q25": round4(b.q25),
        "q75": round4(b.q75),
        "whisker_low": round4(b.whisker_low),
        "whisker_high": round4(b.whisker_high),
        "outliers": b.outliers.iter().map(|&v| round4(v)).collect::<Vec<f64>>(),
    })
}

fn config_to_json(cfg: &RunConfig, manifest: &str) -> Value {
    json!({
        "manifest": manifest,
        "label_a": cfg.label_a,
        "label_b": cfg.label_b,
        "test": "two-tailed paired t",
        "suppress_highlights": cfg.suppress_highlights,
        "range_max": cfg.range_max,
        "params": {
            "validity_threshold": cfg.params.validity_threshold,
            "area_min": cfg.params.area_min,
            "area_max": cfg.params.area_max,
            "mser_delta": cfg.params.mser_delta,
            "mser_max_variation": cfg.params.mser_max_variation,
            "closing_radius": cfg.params.closing_radius,
            "luminance_threshold": cfg.params.luminance_threshold,
        },
    })
}

/// Renders the comparison report as pretty-printed JSON.
pub fn render_json(
    cfg: &RunConfig,
    manifest: &str,
    pairs: &[PairScore],
    report: &PairedReport,
) -> String {
    let pairs_json: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({
                "pair_id": p.pair_id,
                "s_a": round4(p.s_a),
                "s_b": round4(p.s_b),
                "delta": round4(p.delta),
            })
        })
        .collect();
    let doc = json!({
        "config": config_to_json(cfg, manifest),
        "pairs": pairs_json,
        "summary": {
            "n": report.n,
            "mean_a": round4(report.mean_a),
            "mean_b": round4(report.mean_b),
            "t": t_to_json(report.t_statistic),
            "p": p_to_json(report.p_value),
            "pct_a_greater": round4(report.pct_a_greater),
            "boxplot_a": boxplot_to_json(&report.boxplot_a),
            "boxplot_b": boxplot_to_json(&report.boxplot_b),
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Renders per-pair rows plus an appended summary block as CSV.
pub fn render_csv(pairs: &[PairScore], report: &PairedReport) -> String {
    let mut out = String::from("pair_id,s_a,s_b,delta\n");
    for p in pairs {
        out.push_str(&format!(
            "{},{:.4},{:.4},{:.4}\n",
            p.pair_id, p.s_a, p.s_b, p.delta
        ));
    }
    out.push('\n');
    out.push_str("statistic,value\n");
    out.push_str(&format!("n,{}\n", report.n));
    out.push_str(&format!("mean_a,{:.4}\n", report.mean_a));
    out.push_str(&format!("mean_b,{:.4}\n", report.mean_b));
    out.push_str(&format!("t,{:.4}\n", report.t_statistic));
    out.push_str(&format!("p,{}\n", p_to_text(report.p_value)));
    out.push_str(&format!("pct_a_greater,{:.4}\n", report.pct_a_greater));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::summarize;

    fn fixture() -> (Vec<PairScore>, PairedReport) {
        let pairs = vec![
            PairScore::new("p1", 5.70711, 4.60931),
            PairScore::new("p2", 5.10009, 4.89991),
            PairScore::new("p3", 6.00004, 4.99996),
            PairScore::new("p4", 5.50001, 5.49999),
        ];
        let report = summarize(&pairs).unwrap();
        (pairs, report)
    }

    #[test]
    fn json_rounds_to_four_decimals() {
        let (pairs, report) = fixture();
        let text = render_json(&RunConfig::default(), "m.csv", &pairs, &report);
        assert!(text.contains("\"s_a\": 5.7071"), "{text}");
        assert!(text.contains("\"s_b\": 4.6093"), "{text}");
        assert!(text.contains("\"delta\": 1.0978"), "{text}");
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["summary"]["n"], 4);
        assert_eq!(parsed["config"]["label_a"], "A");
        assert_eq!(parsed["config"]["params"]["area_max"], 200);
    }

    #[test]
    fn json_schema_has_required_keys() {
        let (pairs, report) = fixture();
        let text = render_json(&RunConfig::default(), "m.csv", &pairs, &report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["config", "pairs", "summary"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        for key in [
            "n",
            "mean_a",
            "mean_b",
            "t",
            "p",
            "pct_a_greater",
            "boxplot_a",
            "boxplot_b",
        ] {
            assert!(v["summary"].get(key).is_some(), "missing summary.{key}");
        }
        for key in ["median", "q25", "q75", "whisker_low", "whisker_high", "outliers"] {
            assert!(v["summary"]["boxplot_a"].get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn tiny_p_uses_significant_digits() {
        assert_eq!(p_to_json(0.099300683), json!(0.099301));
        assert_eq!(p_to_json(0.0001), json!(0.0001));
        let v = p_to_json(2.3296685467e-5);
        assert_eq!(v, json!(2.329669e-5));
        assert_eq!(p_to_text(1.664576204e-6), "1.664576e-6");
        assert_eq!(p_to_text(0.5), "0.500000");
    }

    #[test]
    fn infinite_t_serializes_as_string() {
        let (pairs, mut report) = fixture();
        report.t_statistic = f64::INFINITY;
        report.p_value = 0.0;
        let text = render_json(&RunConfig::default(), "m.csv", &pairs, &report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["summary"]["t"], "inf");
        assert_eq!(v["summary"]["p"], 0.0);
    }

    #[test]
    fn csv_has_pairs_then_summary_block() {
        let (pairs, report) = fixture();
        let text = render_csv(&pairs, &report);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "pair_id,s_a,s_b,delta");
        assert_eq!(lines[1], "p1,5.7071,4.6093,1.0978");
        assert_eq!(lines[5], "");
        assert_eq!(lines[6], "statistic,value");
        assert!(lines.iter().any(|l| l.starts_with("pct_a_greater,")));
    }

    #[test]
    fn rendering_is_deterministic() {
        let (pairs, report) = fixture();
        let a = render_json(&RunConfig::default(), "m.csv", &pairs, &report);
        let b = render_json(&RunConfig::default(), "m.csv", &pairs, &report);
        assert_eq!(a, b);
        assert_eq!(render_csv(&pairs, &report), render_csv(&pairs, &report));
    }
}
