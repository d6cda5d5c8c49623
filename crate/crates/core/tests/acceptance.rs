//! Runs every acceptance criterion in sequence, one line each, and fails if
//! any of them does. Sequential on purpose: the time limits are wall-clock.

use std::process::ExitCode;

use shadowfit::selftest;

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let ids: Vec<usize> = match only {
        Some(id) => vec![id],
        None => (1..=selftest::CHECK_NAMES.len()).collect(),
    };
    let mut reports = Vec::new();
    for id in ids {
        let r = selftest::run_one(id).expect("known criterion");
        println!("{}", r.line());
        reports.push(r);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {} failed", reports.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
