//! The six acceptance criteria, run exactly; one PASS/FAIL line each.

use rzint::selftest::{self, CriterionResult};

const SEED: u64 = 20240601;

fn report(results: &[CriterionResult]) {
    for r in results {
        println!("{}", r.line());
        for f in r.failures.iter().take(20) {
            println!("    {f}");
        }
    }
}

#[test]
fn acceptance_criteria() {
    let results = selftest::run_all(SEED);
    report(&results);
    assert_eq!(results.len(), 6);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
