//! HH of Y2 from the cyclic bar complex, and a closed form next to the bar
//! complex for a truncated polynomial algebra.

use dgalab::algebra::GradedAlgebraPresentation;
use dgalab::dga::{builtin_y2, from_presentation};
use dgalab::hochschild::{cyclic_bar, hh_dims, hh_graded_closed_form};
use dgalab::linalg::Prime;

fn main() -> dgalab::Result<()> {
    let two = Prime::TWO;
    let bar = cyclic_bar(&builtin_y2(), two, 4)?;
    for n in 0..=4 {
        let words: Vec<String> = (0..bar.dim(n)).map(|i| bar.word_label(n, i)).collect();
        println!("degree {n}: {}", words.join(" "));
    }
    print!("{}", hh_dims(&builtin_y2(), two, 7)?.table());

    let p = Prime::new(3)?;
    let pres = GradedAlgebraPresentation::parse(p, "truncated x 2 3")?;
    let x = from_presentation(&pres, 12)?;
    let bar = hh_dims(&x, p, 13)?;
    let closed = hh_graded_closed_form(&pres, 12)?;
    println!("{pres} at p = 3");
    for n in 0..=12 {
        println!("{n:>3}  bar {}  closed form {}", bar.get(n), closed.get(n));
    }
    Ok(())
}
