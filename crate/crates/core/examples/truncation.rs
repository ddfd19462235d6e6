//! Good truncations of Y2 ⊗ F_2 and the checks on the quotient map.

use dgalab::dga::{base_change_mod_p, builtin_y2, homology, mod_p_reduction, truncate};
use dgalab::linalg::Prime;

fn main() -> dgalab::Result<()> {
    let x = base_change_mod_p(&mod_p_reduction(&builtin_y2(), Prime::TWO)?, Prime::TWO)?;
    for m in 0..=4 {
        let t = truncate(&x, m)?;
        let dims: Vec<String> = homology(&t.dga, 0..=5)?.values().map(|g| g.to_string()).collect();
        let contract = match t.check_contract(&x) {
            Ok(()) => "ok".to_string(),
            Err(e) => e,
        };
        println!("X[{m}]: H = {}  contract {contract}", dims.join(", "));
    }
    // over Z the quotient in degree 0 is Z/2, so truncating there is refused
    match truncate(&builtin_y2(), 0) {
        Ok(_) => println!("Y2[0] exists"),
        Err(e) => println!("Y2[0]: {e}"),
    }
    Ok(())
}
