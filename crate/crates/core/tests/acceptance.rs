//! Acceptance corpus: prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails. Runs single-threaded.

use std::process::ExitCode;

use recourse_core::verify::{run_corpus, CorpusOptions};

fn main() -> ExitCode {
    let reports = run_corpus(&CorpusOptions::default());
    for r in &reports {
        println!("{}", r.summary());
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", reports.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
