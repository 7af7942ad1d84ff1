//! Acceptance criteria 1-9, one line per criterion.

use std::process::ExitCode;

use taut::criteria::{run, Profile, CRITERIA};
use taut::Config;

fn main() -> ExitCode {
    let cfg = Config {
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..Config::default()
    };
    let mut failed = 0;
    for (id, _, _) in CRITERIA {
        let o = run(id, Profile::Full, &cfg);
        println!("{}", o.line());
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
