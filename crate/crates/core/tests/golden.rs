use std::path::PathBuf;

use dcross::arrangements::DCParams;
use dcross::bounds::check_lemma1;
use dcross::TOOL_VERSION;
use serde_json::{json, Value};

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/lemma_grid.json")
}

fn grid() -> Value {
    let mut points = Vec::new();
    for m in [6, 8, 10, 12] {
        for n in [6, 8, 10, 12] {
            if m < n {
                continue;
            }
            for ratio in [0.5, 0.8, 0.95] {
                let rep = check_lemma1(&DCParams::new(m, n, ratio, 1.0).unwrap()).unwrap();
                assert!(rep.measured_delta >= 0);
                points.push(json!({
                    "params": rep.params,
                    "measured_delta": rep.measured_delta,
                    "lower": rep.lower,
                    "upper": rep.upper,
                }));
            }
        }
    }
    let named = check_lemma1(&DCParams::new(10, 10, 1.0, 1.05).unwrap()).unwrap();
    points.push(json!({
        "params": named.params,
        "measured_delta": named.measured_delta,
        "lower": named.lower,
        "upper": named.upper,
    }));
    json!({ "tool_version": TOOL_VERSION, "points": points })
}

#[test]
fn lemma_grid_matches_golden() {
    let current = grid();
    if std::env::var_os("DCROSS_BLESS").is_some() {
        let text = serde_json::to_string_pretty(&current).unwrap() + "\n";
        std::fs::write(golden_path(), text).unwrap();
        return;
    }
    let text = std::fs::read_to_string(golden_path()).expect("golden file present");
    let frozen: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(frozen["points"], current["points"]);
}
