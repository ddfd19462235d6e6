//! Homology over Z, F_p and F_p[u], and the homology ring of Y2 ⊗ F_2.

use dgalab::dga::{builtin_endomorphism, builtin_y2, homology, homology_ring, mod_p_reduction};
use dgalab::linalg::Prime;

fn main() -> dgalab::Result<()> {
    let y2 = builtin_y2();
    for (n, g) in homology(&y2, 0..=3)? {
        println!("H_{n}(Y2) = {g}");
    }

    let e = builtin_endomorphism(Prime::new(5)?);
    for (n, g) in homology(&e, -1..=1)? {
        println!("H_{n}(End) = {g}");
    }

    let y = mod_p_reduction(&y2, Prime::TWO)?;
    let ring = homology_ring(&y, 0..=4)?;
    print!("{ring}");
    let cube = ring.power(&y, (1, 0), 3)?.expect("degree 3 is in range");
    println!("xi1^3 is {}", if ring.is_zero_class(&cube) { "zero" } else { "nonzero" });
    Ok(())
}
