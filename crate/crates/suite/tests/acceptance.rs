use std::process::ExitCode;

use polyalg::sweep::Execution;
use polyalg_suite::{all, summary};

fn main() -> ExitCode {
    let reports = all(Execution::default());
    print!("{}", summary(&reports));
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("acceptance: {passed}/{} criteria pass", reports.len());
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
