//! The `selftest` subcommand: criteria checks plus the corpus round-trip.

use std::fmt::Write as _;

use polyalg::checks::{run_all, CriterionReport};
use polyalg::sweep::Execution;

use crate::corpus::CORPUS;
use crate::parser::parse;

#[derive(Debug)]
pub struct RoundTrip {
    pub file: &'static str,
    pub result: Result<(), String>,
}

/// parse, print, parse again: the trees must agree and printing must be stable.
pub fn round_trip(src: &str) -> Result<(), String> {
    let first = parse(src).map_err(|e| format!("parse: {e}"))?;
    let printed = first.to_string();
    let second = parse(&printed).map_err(|e| format!("reparse: {e}\n{printed}"))?;
    if first.kinds() != second.kinds() {
        return Err("reparsed tree differs".into());
    }
    if second.to_string() != printed {
        return Err("printing is not stable".into());
    }
    Ok(())
}

pub fn corpus_round_trips() -> Vec<RoundTrip> {
    CORPUS
        .iter()
        .map(|(file, src)| RoundTrip {
            file,
            result: round_trip(src),
        })
        .collect()
}

pub struct SelftestReport {
    pub criteria: Vec<CriterionReport>,
    pub round_trips: Vec<RoundTrip>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
            && self.round_trips.len() >= 10
            && self.round_trips.iter().all(|r| r.result.is_ok())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let _ = write!(out, "{c}");
        }
        for r in &self.round_trips {
            match &r.result {
                Ok(()) => {
                    let _ = writeln!(out, "round-trip {}: ok", r.file);
                }
                Err(e) => {
                    let _ = writeln!(out, "round-trip {}: FAIL {e}", r.file);
                }
            }
        }
        let _ = writeln!(
            out,
            "selftest: {}",
            if self.passed() { "ok" } else { "FAILED" }
        );
        out
    }
}

pub fn selftest(exec: Execution) -> SelftestReport {
    SelftestReport {
        criteria: run_all(exec),
        round_trips: corpus_round_trips(),
    }
}
