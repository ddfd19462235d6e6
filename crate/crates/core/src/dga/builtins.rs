use crate::algebra::{GeneratorKind, GradedAlgebraPresentation};
use crate::dga::{BasisId, Dga, DgaBuilder, MonomialDgaSpec, MonomialGen, MonomialKind};
use crate::error::{Error, Result};
use crate::linalg::{Prime, Ring};

/// Registry of builtin DGAs: name and description.
pub const BUILTINS: &[(&str, &str)] = &[
    ("Y2", "Z[e1]/(e1^4), |e1| = 1, d(e1) = 2; homology Z/2 in degrees 0 and 2"),
    ("formal-poly", "Z[x]/(x^J) ⊗ Λ(e), |x| = 2p-2, |e| = 1, d(e) = p; formal model of F_p[x] below degree J|x|"),
    ("endomorphism", "2x2 matrices over F_p[u] with d(L) = uD1 + uD2, d(D1) = -uU, d(D2) = uU"),
    ("cone-p", "Λ_Z(e), |e| = 1, d(e) = p; homology F_p in degree 0"),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// Looks up a builtin. `p` is used by `formal-poly`, `endomorphism` and
/// `cone-p`; `bound` by `formal-poly`.
pub fn builtin(name: &str, p: Prime, bound: i64) -> Result<Dga> {
    match name {
        "Y2" => Ok(builtin_y2()),
        "formal-poly" => builtin_formal_polynomial(p, bound),
        "endomorphism" => Ok(builtin_endomorphism(p)),
        "cone-p" => Ok(builtin_cone_p(p)),
        _ => Err(Error::Input(format!("unknown builtin {name:?}; known: {}", builtin_names().join(", ")))),
    }
}

/// `Z[e1]/(e1^4)` with `|e1| = 1` and `d(e1) = 2`.
pub fn builtin_y2() -> Dga {
    let z = Ring::Integers;
    MonomialDgaSpec::new("Y2", z, vec![MonomialGen::new("e1", 1, MonomialKind::Truncated(4))], 3)
        .with_d(0, z.from_i64(2), vec![0])
        .build()
        .expect("Y2 is well formed")
}

/// Least `J` with `J|x| + 1 > bound`, where `|x| = 2p - 2`.
pub fn formal_polynomial_exponent(p: Prime, bound: i64) -> u32 {
    let x = 2 * p.get() as i64 - 2;
    let mut j = 1;
    while j * x < bound {
        j += 1;
    }
    j as u32
}

/// `Z[x]/(x^J) ⊗ Λ(e)` with `d(e) = p`, `|x| = 2p-2`, `|e| = 1`, and `J`
/// from [`formal_polynomial_exponent`]. Homology is `F_p[x]` through degree
/// `bound - 1`, and the model is exact below degree `J|x|`.
pub fn builtin_formal_polynomial(p: Prime, bound: i64) -> Result<Dga> {
    if bound < 0 {
        return Err(Error::Input("degree bound must be >= 0".into()));
    }
    let z = Ring::Integers;
    let x = 2 * p.get() as i64 - 2;
    let j = formal_polynomial_exponent(p, bound);
    let mut spec = MonomialDgaSpec::new(
        "formal-poly",
        z,
        vec![MonomialGen::new("x", x, MonomialKind::Truncated(j)), MonomialGen::new("e", 1, MonomialKind::Exterior)],
        (j as i64 - 1) * x + 1,
    )
    .with_d(1, z.from_i64(p.get() as i64), vec![0, 0]);
    spec.exact_below = Some(j as i64 * x);
    spec.build()
}

/// `Λ_Z(e)` with `|e| = 1` and `d(e) = p`.
pub fn builtin_cone_p(p: Prime) -> Dga {
    crate::dga::exterior_cone(Ring::Integers, Ring::Integers.from_i64(p.get() as i64)).with_name("cone-p")
}

/// Endomorphisms of the two-term complex `F_p[u] --u--> F_p[u]`, written in
/// matrix units: `U = E12` (degree -1), `D1 = E11`, `D2 = E22` (degree 0),
/// `L = E21` (degree 1). Products are matrix products; the unit is `D1 + D2`.
pub fn builtin_endomorphism(p: Prime) -> Dga {
    let r = Ring::fp_poly(p);
    let u = r.u().expect("polynomial ring");
    // (degree, index) of each matrix unit E_ij
    let unit_of = |i: usize, j: usize| -> BasisId {
        match (i, j) {
            (1, 2) => BasisId::new(-1, 0),
            (1, 1) => BasisId::new(0, 0),
            (2, 2) => BasisId::new(0, 1),
            (2, 1) => BasisId::new(1, 0),
            _ => unreachable!(),
        }
    };
    let mut b = DgaBuilder::new("endomorphism", r, -1, 1)
        .basis(-1, ["U"])
        .basis(0, ["D1", "D2"])
        .basis(1, ["L"])
        .d(BasisId::new(1, 0), 0, u.clone())
        .d(BasisId::new(1, 0), 1, u.clone())
        .d(BasisId::new(0, 0), 0, r.neg(&u))
        .d(BasisId::new(0, 1), 0, u)
        .unit_vector(vec![r.one(), r.one()]);
    for i in 1..=2 {
        for j in 1..=2 {
            for l in 1..=2 {
                // E_ij E_jl = E_il
                let target = unit_of(i, l);
                b = b.product(unit_of(i, j), unit_of(j, l), target.index, r.one());
            }
        }
    }
    b.build().expect("endomorphism DGA is well formed")
}

/// The graded algebra of a presentation, as an F_p-DGA with zero
/// differential, kept through degree `hi`. Generators are graded by total
/// degree. Divided-power generators are not supported.
pub fn from_presentation(p: &GradedAlgebraPresentation, hi: i64) -> Result<Dga> {
    let ring = Ring::fp(p.prime());
    let mut gens = Vec::new();
    for g in p.generators() {
        let kind = match g.kind {
            GeneratorKind::Polynomial => MonomialKind::Polynomial,
            GeneratorKind::Exterior => MonomialKind::Exterior,
            GeneratorKind::Truncated(m) => MonomialKind::Truncated(m),
            GeneratorKind::DividedPower => {
                return Err(Error::InvalidPresentation(format!(
                    "divided-power generator {} cannot be used as a DGA input",
                    g.name
                )))
            }
        };
        gens.push(MonomialGen::new(g.name.clone(), g.total(), kind));
    }
    let top: Option<i64> = p.generators().iter().map(|g| g.kind.max_exponent().map(|e| e as i64 * g.total())).sum();
    let mut spec = MonomialDgaSpec::new(p.to_string(), ring, gens, hi);
    if top.is_none_or(|t| t > hi) {
        spec.exact_below = Some(hi + 1);
    }
    spec.build()
}
