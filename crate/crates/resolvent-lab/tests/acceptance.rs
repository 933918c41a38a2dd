//! End-to-end acceptance gate. Runs every numbered criterion through the
//! recipe harness with its published default grids and prints exactly one
//! PASS/FAIL line per criterion, with the wall-clock budget enforced as
//! part of the verdict. The binary exits nonzero if any criterion fails,
//! so `cargo test` treats the gate as a single red target.
//!
//! Built with `harness = false` so the per-criterion lines stream to
//! stdout unconditionally instead of being captured by libtest.

use std::time::Instant;

use resolvent_lab::harness::{run_recipe, ExperimentConfig};

struct Criterion {
    /// Two-digit index used in the printed line.
    index: u32,
    /// Human-readable label for the printed line.
    label: &'static str,
    /// Recipe whose default grids match the criterion.
    recipe: &'static str,
    /// Wall-clock budget in seconds; exceeding it fails the criterion.
    budget_secs: f64,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        index: 1,
        label: "multiplier transform identities",
        recipe: "fourier-identities",
        budget_secs: 30.0,
    },
    Criterion {
        index: 2,
        label: "lattice and harmonic counting oracles",
        recipe: "counting-oracles",
        budget_secs: 60.0,
    },
    Criterion {
        index: 3,
        label: "sphere resolvent distance law",
        recipe: "sphere-dist-law",
        budget_secs: 1800.0,
    },
    Criterion {
        index: 4,
        label: "spectral projector norm growth",
        recipe: "projector-exponent",
        budget_secs: 1800.0,
    },
    Criterion {
        index: 5,
        label: "cluster blow-up and torus band",
        recipe: "zoll-blowup",
        budget_secs: 300.0,
    },
    Criterion {
        index: 6,
        label: "remainder kernel decay constants",
        recipe: "remainder-decay",
        budget_secs: 600.0,
    },
    Criterion {
        index: 7,
        label: "shell quadruple counts and moments",
        recipe: "torus-quadruples",
        budget_secs: 600.0,
    },
    Criterion {
        index: 8,
        label: "band kernel off-diagonal sup",
        recipe: "band-kernel",
        budget_secs: 1200.0,
    },
    Criterion {
        index: 9,
        label: "mollified counting gap",
        recipe: "mollified-gap",
        budget_secs: 1800.0,
    },
    Criterion {
        index: 10,
        label: "algebraic resolvent identities",
        recipe: "algebraic-identities",
        budget_secs: 5.0,
    },
    Criterion {
        index: 11,
        label: "oscillatory sum cancellation gain",
        recipe: "hlawka-gain",
        budget_secs: 600.0,
    },
];

fn main() {
    let mut failures: Vec<String> = Vec::new();

    for c in CRITERIA {
        let config = ExperimentConfig::for_recipe(c.recipe);
        let start = Instant::now();
        let outcome = run_recipe(&config);
        let elapsed = start.elapsed().as_secs_f64();

        match outcome {
            Ok(bundle) => {
                let in_budget = elapsed <= c.budget_secs;
                let ok = bundle.passed() && in_budget;
                println!(
                    "criterion {:02} {}: {} ({:.1}s, budget {:.0}s)",
                    c.index,
                    c.label,
                    if ok { "PASS" } else { "FAIL" },
                    elapsed,
                    c.budget_secs,
                );
                if !ok {
                    if !in_budget {
                        println!("    - over budget: {elapsed:.1}s > {:.0}s", c.budget_secs);
                    }
                    for v in bundle.verdicts.iter().filter(|v| !v.passed) {
                        println!("    - {}: {}", v.name, v.detail);
                    }
                    failures.push(format!("criterion {:02} {}", c.index, c.label));
                }
            }
            Err(err) => {
                println!(
                    "criterion {:02} {}: FAIL ({:.1}s, budget {:.0}s)",
                    c.index, c.label, elapsed, c.budget_secs,
                );
                println!("    - recipe error: {err}");
                failures.push(format!("criterion {:02} {}", c.index, c.label));
            }
        }
    }

    if failures.is_empty() {
        println!("acceptance: {}/{} criteria passed", CRITERIA.len(), CRITERIA.len());
    } else {
        println!(
            "acceptance: {}/{} criteria passed; failed: {}",
            CRITERIA.len() - failures.len(),
            CRITERIA.len(),
            failures.join(", "),
        );
        std::process::exit(1);
    }
}
