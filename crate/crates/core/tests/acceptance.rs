//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use haarcalc::verify::{
    dual_derivation, largen_agreement, mc_agreement, sampler_quality, shift_identity, sign_degree_laws,
    table_regression, ww_regression, Check,
};

const MC_SEED: u64 = 42;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "table regression n=1..4", budget: Duration::from_secs(1), run: table_regression },
        Criterion { id: 2, title: "recursion = characters / shift, n<=5", budget: Duration::from_secs(30), run: || dual_derivation(5) },
        Criterion { id: 3, title: "shift identity n=1..5", budget: Duration::from_secs(5), run: || shift_identity(5) },
        Criterion { id: 4, title: "sign and degree laws n<=5", budget: Duration::from_secs(5), run: || sign_degree_laws(5) },
        Criterion { id: 5, title: "large-N triple agreement", budget: Duration::from_secs(60), run: largen_agreement },
        Criterion { id: 6, title: "W_W regression order 4", budget: Duration::from_secs(1), run: ww_regression },
        Criterion { id: 7, title: "Monte Carlo agreement, 10^6 samples", budget: Duration::from_secs(600), run: || mc_agreement(1_000_000, MC_SEED) },
        Criterion { id: 8, title: "sampler quality, 10^5 samples", budget: Duration::from_secs(600), run: || sampler_quality(100_000, MC_SEED) },
    ]
}

fn main() -> ExitCode {
    let mut all = true;
    for c in criteria() {
        let start = Instant::now();
        let checks = (c.run)();
        let elapsed = start.elapsed();
        let pass = !checks.is_empty() && checks.iter().all(|k| k.pass);
        all &= pass;
        println!(
            "criterion {}: {} - {} ({} checks, {:.2?}, budget {:?})",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            checks.len(),
            elapsed,
            c.budget
        );
        for k in &checks {
            if !k.pass || std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
                println!("    {} {}: {}", if k.pass { "ok  " } else { "FAIL" }, k.name, k.detail);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
