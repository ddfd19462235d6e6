//! Runs the core reproduction suite and prints the report.

use dgalab::verify::{core_suite, DEFAULT_SEED};

fn main() {
    let report = core_suite(DEFAULT_SEED);
    print!("{}", report.text());
    if !report.passed {
        std::process::exit(1);
    }
}
