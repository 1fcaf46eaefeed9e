//! Acceptance criteria 1 to 12, one line each.
//!
//! Criteria 1 to 11 run the library batteries in process with the pinned
//! bounds below; 12 runs the binary twice. Built without the test harness so
//! the table is always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use frcalc_core::battery::{CriterionReport, SuiteConfig, BATTERIES};
use serde_json::Value;

struct Criterion {
    id: u32,
    limit: Duration,
    min_instances: usize,
    /// Check name and the bound it must be held to.
    bounds: &'static [(&'static str, f64)],
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        limit: secs(5),
        min_instances: 600,
        bounds: &[("axiom_i", 1e-9), ("axiom_ii", 1e-9), ("axiom_iii", 1e-9)],
    },
    Criterion { id: 2, limit: secs(5), min_instances: 200, bounds: &[("reconstruction", 1e-9)] },
    Criterion {
        id: 3,
        limit: secs(10),
        min_instances: 300,
        bounds: &[("intertwiner", 1e-8), ("coset", 1e-7)],
    },
    Criterion {
        id: 4,
        limit: secs(10),
        min_instances: 100,
        bounds: &[("dimension_gap", 0.0), ("double_centralizer", 1e-8)],
    },
    Criterion { id: 5, limit: secs(20), min_instances: 100, bounds: &[("naturality", 1e-8), ("xi", 1e-8)] },
    Criterion {
        id: 6,
        limit: secs(10),
        min_instances: 50,
        bounds: &[
            ("associativity", 0.0),
            ("left_identity", 1e-9),
            ("right_identity", 1e-9),
            ("tau", 1e-9),
        ],
    },
    Criterion { id: 7, limit: secs(30), min_instances: 25, bounds: &[("distance", 1e-8)] },
    Criterion { id: 8, limit: secs(5), min_instances: 100, bounds: &[("ev_composition", 1e-9)] },
    Criterion {
        id: 9,
        limit: secs(10),
        min_instances: 100,
        bounds: &[
            ("closed_form_mismatch", 0.0),
            ("conjugation_mismatch", 0.0),
            ("amplification_mismatch", 0.0),
        ],
    },
    Criterion {
        id: 10,
        limit: secs(10),
        min_instances: 50,
        bounds: &[
            ("simplicial_identity", 1e-9),
            ("bundle_face_hom_level", 0.0),
            ("bundle_face_matrix_level", 1e-9),
        ],
    },
    Criterion {
        id: 11,
        limit: secs(5),
        min_instances: 300,
        bounds: &[
            ("snf_vs_minors", 0.0),
            ("kernel_vs_enumeration", 0.0),
            ("cokernel_vs_enumeration", 0.0),
            ("torsion_colimit", 0.0),
            ("free_colimit", 0.0),
        ],
    },
];

const SUITE_LIMIT: Duration = secs(120);

/// Problems with one criterion; empty means pass.
fn judge(c: &Criterion, r: &CriterionReport, took: Duration) -> Vec<String> {
    let mut problems = Vec::new();
    if r.id != c.id {
        problems.push(format!("battery reports id {}", r.id));
    }
    if !r.pass {
        problems.push(format!("battery failed: {:?}", r.failures));
    }
    if r.instances < c.min_instances {
        problems.push(format!("{} instances, want {}", r.instances, c.min_instances));
    }
    for &(key, bound) in c.bounds {
        match r.residuals.get(key) {
            Some(&v) if v <= bound => {}
            Some(&v) => problems.push(format!("{key} = {v:.3e} above {bound:.0e}")),
            None => problems.push(format!("{key} not measured")),
        }
    }
    if took > c.limit {
        problems.push(format!("took {:.2?}, limit {:?}", took, c.limit));
    }
    problems
}

fn worst(r: &CriterionReport) -> f64 {
    r.residuals
        .iter()
        .filter(|(k, _)| r.thresholds.contains_key(*k))
        .map(|(_, &v)| v)
        .fold(0.0, f64::max)
}

fn run_suite() -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_frcalc"))
        .args(["suite", "--seed", "7"])
        .env_remove("FRCALC_CONFIG")
        .output()
        .expect("frcalc runs");
    (String::from_utf8(out.stdout).expect("utf-8 report"), out.status.code().unwrap_or(-1))
}

fn strip_timing(report: &str) -> String {
    let mut v: Value = serde_json::from_str(report).expect("report is JSON");
    v.as_object_mut().expect("report object").remove("elapsed_ms");
    serde_json::to_string(&v).expect("re-serialize")
}

fn main() {
    let cfg = SuiteConfig::default();
    assert_eq!(cfg.seed, 7);
    let mut failed = Vec::new();

    for (c, battery) in CRITERIA.iter().zip(BATTERIES.iter()) {
        let start = Instant::now();
        let report = battery(&cfg);
        let took = start.elapsed();
        let problems = judge(c, &report, took);
        println!(
            "criterion {:>2} {} {:<46} {:>4} instances, worst {:.2e}, {:>6.2?} (limit {:?}){}",
            c.id,
            if problems.is_empty() { "PASS" } else { "FAIL" },
            report.name,
            report.instances,
            worst(&report),
            took,
            c.limit,
            if problems.is_empty() { String::new() } else { format!(": {}", problems.join("; ")) }
        );
        if !problems.is_empty() {
            failed.push(c.id);
        }
    }

    let start = Instant::now();
    let (first, code1) = run_suite();
    let (second, code2) = run_suite();
    let took = start.elapsed();
    let mut problems = Vec::new();
    if code1 != 0 || code2 != 0 {
        problems.push(format!("exit codes {code1}, {code2}"));
    }
    if strip_timing(&first) != strip_timing(&second) {
        problems.push("reports differ".to_string());
    }
    if took > SUITE_LIMIT {
        problems.push(format!("took {took:.2?}, limit {SUITE_LIMIT:?}"));
    }
    println!(
        "criterion 12 {} {:<46} {:>4} runs, {:>6.2?} (limit {:?}){}",
        if problems.is_empty() { "PASS" } else { "FAIL" },
        "suite determinism",
        2,
        took,
        SUITE_LIMIT,
        if problems.is_empty() { String::new() } else { format!(": {}", problems.join("; ")) }
    );
    if !problems.is_empty() {
        failed.push(12);
    }

    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
