//! The ten acceptance criteria, one line each.
//!
//! Criteria 1–9 run the experiment suites at full size; criterion 10 runs
//! the binary twice and compares reports outside the timing section.

use std::process::Command;

use helly_core::experiment::{run_suite, Suite, SuiteConfig, SuiteOutcome};
use helly_core::report::Row;
use helly_core::Guards;

const SEED: u64 = 20_240_601;

fn suite(s: Suite) -> SuiteOutcome {
    run_suite(s, &SuiteConfig::defaults(s, SEED), &Guards::default())
}

fn summary(row: &Row) -> String {
    serde_json::to_string(row).expect("row serializes")
}

fn untimed(report: &str) -> &str {
    let cut = report.rfind("\"timing\"").expect("timing section present");
    &report[..cut]
}

fn reproducible() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_helly-bench");
    let runs: Vec<String> = (0..2)
        .map(|_| {
            let out = Command::new(bin)
                .args([
                    "experiment",
                    "--suite",
                    "colorful",
                    "--trials",
                    "40",
                    "--seed",
                    "7",
                ])
                .output()
                .expect("binary runs");
            String::from_utf8(out.stdout).expect("utf-8 report")
        })
        .collect();
    let same = !runs[0].is_empty() && untimed(&runs[0]) == untimed(&runs[1]);
    (same, format!("{{\"bytes\":{}}}", untimed(&runs[0]).len()))
}

#[test]
fn acceptance() {
    let criteria: [(u8, &str, Suite); 9] = [
        (
            1,
            "sweep collapse, nerve is (2d-1)-collapsible",
            Suite::Collapse,
        ),
        (2, "Radon number 2d+1", Suite::Radon),
        (3, "Helly number 2d, tight at 2d-1", Suite::Helly),
        (4, "colorful k-Helly points", Suite::Colorful),
        (
            5,
            "fractional and colorful fractional bounds",
            Suite::Fractional,
        ),
        (6, "small witness subfamilies", Suite::Lemma2),
        (7, "LP duality and sandwich", Suite::Lp),
        (8, "Tardos-Kaiser bound", Suite::TardosKaiser),
        (9, "collapsibility oracle sanity", Suite::Oracle),
    ];
    let mut failed = Vec::new();
    for (n, name, s) in criteria {
        let out = suite(s);
        println!(
            "criterion {n:>2} [{}] {name}: {}",
            if out.pass { "PASS" } else { "FAIL" },
            summary(&out.summary)
        );
        if !out.pass {
            failed.push(n);
        }
    }
    let (same, detail) = reproducible();
    println!(
        "criterion 10 [{}] reproducible experiment reports: {detail}",
        if same { "PASS" } else { "FAIL" }
    );
    if !same {
        failed.push(10);
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
