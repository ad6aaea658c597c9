//! End-to-end runs of the verification suites at their default bounds.
//!
//! Each test runs one suite through the public driver and requires every line
//! to pass (unresolved lines are reported in full before failing the test, so
//! a bound regression is visible immediately).

use surreals::verify::{available_suites, run_suite, SuiteReport, VerifyOptions};

fn assert_all_pass(report: &SuiteReport) {
    for line in &report.lines {
        assert_eq!(
            line.verdict,
            surreals::cuts::Verdict::Pass,
            "suite line did not pass: {line}"
        );
    }
}

fn run(name: &str) -> SuiteReport {
    run_suite(name, &VerifyOptions::default()).expect("suite name is valid")
}

#[test]
fn anchors_all_pass() {
    let report = run("anchors");
    assert!(
        report.lines.len() >= 25,
        "anchor inventory shrank: {}",
        report.lines.len()
    );
    assert_all_pass(&report);
}

#[test]
fn omega_cut_all_pass() {
    let report = run("omega-cut");
    assert_eq!(
        report.lines.len(),
        15,
        "one line per exponent of length <= 3"
    );
    assert_all_pass(&report);
}

#[test]
fn kappa_cut_all_pass() {
    let report = run("kappa-cut");
    assert_eq!(report.lines.len(), 15, "one line per index of length <= 3");
    assert_all_pass(&report);
}

#[test]
fn kappa_minimal_all_pass() {
    let report = run("kappa-minimal");
    assert_eq!(report.lines.len(), 15);
    assert_all_pass(&report);
}

#[test]
fn h_tails_all_pass() {
    let report = run("h-tails");
    assert_eq!(
        report.lines.len(),
        15 * 6,
        "index grid times tail-length grid"
    );
    assert_all_pass(&report);
}

#[test]
fn log_chains_all_pass() {
    let report = run("log-chains");
    assert_eq!(report.lines.len(), 5 * 4 + 5 + 3);
    assert_all_pass(&report);
}

#[test]
fn inverses_all_pass() {
    let report = run("inverses");
    assert_eq!(report.lines.len(), 3);
    assert_all_pass(&report);
    for line in &report.lines {
        let detail = line
            .detail
            .as_deref()
            .expect("pass lines carry instance counts");
        let count: usize = detail
            .split_whitespace()
            .next()
            .and_then(|w| w.parse().ok())
            .expect("detail starts with the instance count");
        assert!(count >= 100, "inverse line below 100 instances: {line}");
    }
}

#[test]
fn two_route_all_pass() {
    let report = run("two-route");
    assert_eq!(report.lines.len(), 15);
    assert_all_pass(&report);
}

#[test]
fn genetic_add_all_pass() {
    let report = run("genetic-add");
    assert_eq!(
        report.lines.len(),
        127,
        "one line per left operand born by day 6"
    );
    assert_all_pass(&report);
}

#[test]
fn genetic_mul_all_pass() {
    let report = run("genetic-mul");
    assert_eq!(report.lines.len(), 127);
    assert_all_pass(&report);
}

#[test]
fn suite_inventory_is_stable() {
    assert_eq!(
        available_suites(),
        [
            "anchors",
            "omega-cut",
            "kappa-cut",
            "kappa-minimal",
            "h-tails",
            "log-chains",
            "inverses",
            "two-route",
            "genetic-add",
            "genetic-mul",
        ]
    );
}
