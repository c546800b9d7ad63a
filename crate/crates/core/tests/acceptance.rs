//! One line per acceptance criterion, with its checks underneath.
//!
//! A check whose threshold is documented as unattainable prints FAIL with its
//! reason and does not fail the run; every other check must pass.

use epwforge::verify::{run_criterion, SuiteConfig, CRITERIA};

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failures = Vec::new();
    for &(id, _, _) in CRITERIA.iter() {
        let r = run_criterion(id, &cfg).expect("criterion runs");
        println!("{}", r.render());
        if !r.passed_except_unattainable() {
            failures.push(r.summary_line());
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
