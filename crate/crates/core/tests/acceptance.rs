//! Runs every named check at its stated tolerance and prints one line per check.

use volterra_core::verify::{run_check, CHECKS};

#[test]
fn acceptance_suite() {
    let mut failed = Vec::new();
    for (i, name) in CHECKS.iter().enumerate() {
        let out = run_check(name).expect("known check");
        println!(
            "[{:>2}] {:<22} {}  measured={:.6e} tol={:.1e} ({:.2}s) {}",
            i + 1,
            name,
            if out.passed { "PASS" } else { "FAIL" },
            out.measured,
            out.tolerance,
            out.seconds,
            out.detail
        );
        if !out.passed {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
