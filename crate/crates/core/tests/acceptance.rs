//! Runs the thirteen acceptance criteria and prints one line per criterion.
//! Set `ACCEPTANCE_VERBOSE=1` for the details under each line.

use std::process::ExitCode;
use std::time::Duration;

use monadpreserve::reproduce::{run_criterion, ReproduceOptions, TITLES};

/// Wall-clock limits for the criteria that state one.
fn limit(id: usize) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(120)),
        4 => Some(Duration::from_secs(300)),
        9 => Some(Duration::from_secs(600)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let opts = ReproduceOptions::default();
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        let mut r = run_criterion(id, &opts);
        if let Some(max) = limit(id) {
            if r.elapsed > max {
                r.passed = false;
                r.details
                    .push(format!("FAIL took {:?}, limit {max:?}", r.elapsed));
            }
        }
        println!("{}", r.line());
        if verbose || !r.passed {
            for d in &r.details {
                println!("      {d}");
            }
        }
        failed += usize::from(!r.passed);
    }

    // Negative control: a broken ψ must fail the law criterion.
    let sabotaged = ReproduceOptions {
        sabotage_psi: true,
        law_samples: 50,
        ..ReproduceOptions::default()
    };
    let control = run_criterion(1, &sabotaged);
    let caught = !control.passed;
    println!(
        "control {} sabotaged ψ is {} by AC1",
        if caught { "PASS" } else { "FAIL" },
        if caught { "rejected" } else { "accepted" }
    );
    failed += usize::from(!caught);

    println!(
        "{} of {} criteria passed",
        TITLES.len() + 1 - failed,
        TITLES.len() + 1
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
