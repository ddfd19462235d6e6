//! The Y-page at p = 3 with its d^2 pattern, and E-infinity.

use dgalab::linalg::Prime;
use dgalab::specseq::{run_bokstedt, BokstedtVariant};

fn main() -> dgalab::Result<()> {
    let run = run_bokstedt(Prime::new(3)?, BokstedtVariant::Y, 8)?;
    for page in &run.pages {
        println!("{}", page.chart(true));
    }
    let e: Vec<String> = run.e_infinity.to_vec(0, 8).iter().map(|d| d.to_string()).collect();
    println!("E-infinity dims 0..8: {}", e.join(","));
    Ok(())
}
