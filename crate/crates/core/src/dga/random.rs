//! Seeded random small DGAs for property tests.
//!
//! Each is built from blocks `R[x]/(x^m) ⊗ Λ(e)` with `|e| = k|x| + 1` and
//! `d(e) = c x^k` (a cone when `k = 0`), combined by tensor products and
//! mod-p reductions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dga::{mod_p_reduction, tensor_dga, Dga, MonomialDgaSpec, MonomialGen, MonomialKind};
use crate::linalg::{Prime, Ring};

const PRIMES: [u32; 3] = [2, 3, 5];

fn block<R: Rng>(rng: &mut R, ring: Ring, tag: usize) -> Dga {
    let odd_allowed = ring == Ring::fp(Prime::TWO);
    let dx: i64 = if odd_allowed { rng.gen_range(1..=3) } else { 2 * rng.gen_range(1..=2) };
    let m: u32 = rng.gen_range(2..=4);
    let k: u32 = rng.gen_range(0..m);
    let de = k as i64 * dx + 1;
    let c = match ring {
        Ring::Integers => rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 },
        Ring::PrimeField { p } => rng.gen_range(1..p.get()) as i64,
        Ring::FpPoly { .. } => unreachable!(),
    };
    MonomialDgaSpec::new(
        format!("B{tag}"),
        ring,
        vec![
            MonomialGen::new(format!("x{tag}"), dx, MonomialKind::Truncated(m)),
            MonomialGen::new(format!("e{tag}"), de, MonomialKind::Exterior),
        ],
        (m as i64 - 1) * dx + de,
    )
    .with_d(1, ring.from_i64(c), vec![k, 0])
    .build()
    .expect("random block is well formed")
}

/// One random DGA from the given generator.
pub fn random_dga<R: Rng>(rng: &mut R) -> Dga {
    let p = Prime::new(PRIMES[rng.gen_range(0..PRIMES.len())]).expect("prime");
    let ring = if rng.gen_bool(0.35) { Ring::Integers } else { Ring::fp(p) };
    let mut x = block(rng, ring, 1);
    match rng.gen_range(0..3) {
        0 => {}
        1 => {
            let y = block(rng, ring, 2);
            if x.total_dim() * y.total_dim() <= 24 {
                x = tensor_dga(&x, &y).expect("same ring");
            }
        }
        _ => {
            if ring == Ring::Integers {
                x = mod_p_reduction(&x, p).expect("integral input");
            }
        }
    }
    x
}

/// `count` random DGAs, deterministic in `seed`.
pub fn random_dgas(seed: u64, count: usize) -> Vec<Dga> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let x = random_dga(&mut rng);
            let name = format!("random#{i}({})", x.name());
            x.with_name(name)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::validate;

    #[test]
    fn deterministic_in_seed() {
        let a = random_dgas(7, 5);
        let b = random_dgas(7, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_json(), y.to_json());
        }
    }

    #[test]
    fn hundred_random_dgas_validate() {
        for x in random_dgas(42, 100) {
            let v = validate(&x);
            assert!(v.is_empty(), "{}: {}", x.name(), v[0]);
        }
    }
}
