//! Seeded random DGAs, checked against the DGA axioms and written as JSON.

use dgalab::dga::random::random_dgas;
use dgalab::dga::{validate, Dga};

fn main() -> dgalab::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let xs = random_dgas(seed, 10);
    for x in &xs {
        let v = validate(x);
        println!("{:<50} total dim {:>3}  violations {}", x.name(), x.total_dim(), v.len());
    }
    let text = xs[0].to_json();
    let back = Dga::from_json(&text)?;
    println!("round trip of {} preserves JSON: {}", back.name(), back.to_json() == text);
    Ok(())
}
