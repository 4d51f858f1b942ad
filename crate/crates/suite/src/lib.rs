//! Acceptance criteria 1 to 9 as one report.

use std::fmt::Write as _;

use polyalg::checks::{
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    criterion_8, CheckOutcome, CriterionReport,
};
use polyalg::sweep::Execution;
use polyalg_cli::selftest::selftest;

const CLI_TITLE: &str = "selftest subcommand and corpus round-trip";

/// Criterion 9: the selftest report must pass and every corpus file must round-trip.
pub fn criterion_9(exec: Execution) -> CriterionReport {
    let report = selftest(exec);
    let mut checks: Vec<CheckOutcome> = report
        .round_trips
        .iter()
        .map(|r| CheckOutcome {
            name: format!("round-trip {}", r.file),
            passed: r.result.is_ok(),
            detail: r.result.clone().err().unwrap_or_default(),
        })
        .collect();
    checks.push(CheckOutcome {
        name: "corpus has at least 10 files".into(),
        passed: report.round_trips.len() >= 10,
        detail: format!("{} files", report.round_trips.len()),
    });
    let failing: Vec<String> = report
        .criteria
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.id.to_string())
        .collect();
    checks.push(CheckOutcome {
        name: "selftest exits 0".into(),
        passed: report.passed(),
        detail: if failing.is_empty() {
            String::new()
        } else {
            format!("criteria {} fail", failing.join(", "))
        },
    });
    CriterionReport {
        id: 9,
        title: CLI_TITLE,
        checks,
    }
}

pub fn all(exec: Execution) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(exec),
        criterion_6(exec),
        criterion_7(exec),
        criterion_8(exec),
        criterion_9(exec),
    ]
}

/// One `PASS`/`FAIL` line per criterion, with failing checks indented below.
pub fn summary(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} criterion {}: {}", r.id, r.title);
        for c in r.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "    failed: {}", c.name);
            for line in c.detail.lines() {
                let _ = writeln!(out, "        {line}");
            }
        }
    }
    out
}
