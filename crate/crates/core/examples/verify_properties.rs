//! Runs the seeded property suite. Usage: verify_properties [seed]

use dgalab::verify::{property_suite, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let report = property_suite(seed);
    print!("{}", report.text());
    if !report.passed {
        std::process::exit(1);
    }
}
