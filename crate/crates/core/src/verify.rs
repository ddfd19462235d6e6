//! Reproduction checks: the core suite and the seeded property suite.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{tensor, GeneratorKind, GradedAlgebraPresentation};
use crate::dga::random::random_dgas;
use crate::dga::{
    base_change_mod_p, builtin_cone_p, builtin_endomorphism, builtin_formal_polynomial, builtin_y2, from_presentation,
    homology, homology_ring, mod_p_reduction, tensor_dga, truncate, validate, Dga,
};
use crate::error::{Error, Result};
use crate::hochschild::{hh_dims, hh_graded_closed_form, CyclicBarComplex};
use crate::linalg::{Prime, Ring};
use crate::specseq::{run_bokstedt, BokstedtVariant};

pub const DEFAULT_SEED: u64 = 42;
pub const SCHEMA: u32 = 1;

/// Outcome of one check. `runtime` is left out of JSON so reports are
/// reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    Core,
    Properties,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "core" => Ok(Suite::Core),
            "properties" => Ok(Suite::Properties),
            _ => Err(Error::Input(format!("unknown suite {text:?}; expected core or properties"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, seed: u64, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { schema: SCHEMA, suite, seed, passed, checks }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {}. {} ({:.2}s)", c.id, c.name, c.runtime.as_secs_f64());
            let _ = writeln!(s, "       anchor:   {}", c.anchor);
            let _ = writeln!(s, "       expected: {}", c.expected);
            let _ = writeln!(s, "       actual:   {}", c.actual);
        }
        let _ = writeln!(
            s,
            "{} suite, seed {}: {} of {} checks passed",
            match self.suite {
                Suite::Core => "core",
                Suite::Properties => "properties",
            },
            self.seed,
            self.checks.len() - self.failures(),
            self.checks.len()
        );
        s
    }
}

pub fn run(suite: Suite, seed: u64) -> Report {
    match suite {
        Suite::Core => core_suite(seed),
        Suite::Properties => property_suite(seed),
    }
}

struct Spec {
    id: u32,
    name: &'static str,
    anchor: &'static str,
    body: Box<dyn Fn() -> (String, String, bool) + Send + Sync>,
}

fn spec(
    id: u32,
    name: &'static str,
    anchor: &'static str,
    body: impl Fn() -> (String, String, bool) + Send + Sync + 'static,
) -> Spec {
    Spec { id, name, anchor, body: Box::new(body) }
}

fn execute(specs: Vec<Spec>) -> Vec<Check> {
    specs
        .into_par_iter()
        .map(|s| {
            let start = Instant::now();
            let (expected, actual, passed) = (s.body)();
            Check {
                id: s.id,
                name: s.name.to_string(),
                anchor: s.anchor.to_string(),
                expected,
                actual,
                passed,
                runtime: start.elapsed(),
            }
        })
        .collect()
}

fn pr(p: u32) -> Prime {
    Prime::new(p).expect("prime")
}

fn join(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn compare(expected: Vec<usize>, actual: Result<Vec<usize>>) -> (String, String, bool) {
    match actual {
        Ok(a) => {
            let ok = a == expected;
            (join(&expected), join(&a), ok)
        }
        Err(e) => (join(&expected), format!("error: {e}"), false),
    }
}

/// Tally of sub-cases; the first failure is kept for the report.
#[derive(Default)]
struct Tally {
    total: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn finish(self, noun: &str) -> (String, String, bool) {
        let expected = format!("{} of {} {noun} hold", self.total, self.total);
        let mut actual = format!("{} of {} {noun} hold", self.total - self.failed, self.total);
        if let Some(f) = &self.first {
            let _ = write!(actual, "; first failure: {f}");
        }
        (expected, actual, self.failed == 0 && self.total > 0)
    }
}

/// `F_p[μ]/(μ^p)` with `|μ| = 2` through degree `top`, plus extra classes.
fn truncated_mu(p: u32, top: i64, extra: &[i64]) -> Vec<usize> {
    (0..=top).map(|n| usize::from(n % 2 == 0 && n <= 2 * (p as i64 - 1)) + usize::from(extra.contains(&n))).collect()
}

// ---- core suite -------------------------------------------------------------

pub fn core_suite(seed: u64) -> Report {
    let specs = vec![
        spec(
            1,
            "HH of Y2 at p = 2 from the cyclic bar complex",
            "HH(Y2; F_2) is F_2[μ]/(μ^2) below degree 6 and F_2 in degree md+2 = 6",
            || compare(vec![1, 0, 1, 0, 0, 0, 1], hh_dims(&builtin_y2(), Prime::TWO, 7).map(|h| h.to_vec())),
        ),
        spec(
            2,
            "HH of the formal polynomial model at p = 2",
            "HH of the formal model is Γ(y) ⊗ Λ(z) with |y| = 2, |z| = 3",
            || {
                let h = builtin_formal_polynomial(Prime::TWO, 9).and_then(|x| hh_dims(&x, Prime::TWO, 8));
                compare(vec![1, 0, 1, 1, 1, 1, 1, 1], h.map(|h| h.to_vec()))
            },
        ),
        spec(
            3,
            "homology ring of Y2 ⊗ F_2",
            "H_*(Y2 ⊗ F_2) = F_2[ξ1]/(ξ1^4) with ξ1^2 the degree-2 class and ξ1^3 nonzero",
            check_y2_mod_2_ring,
        ),
        spec(
            4,
            "endomorphism DGA over F_p[u]",
            "d(L) = uD1 + uD2 satisfies Leibniz and H_* is F_p in degrees -1 and 0",
            check_endomorphism,
        ),
        spec(
            5,
            "bar complex against closed forms",
            "HH of Λ(x), F_p[x]/(x^m) and F_p[x] and their tensor products has the closed form",
            check_oracle_matrix,
        ),
        spec(
            6,
            "spectral-sequence pages with the pattern differential",
            "E∞ is F_p[μ]/(μ^p) through 2p for Y, plus φ^m x in degree md+2 for X_m",
            check_spectral_sequences,
        ),
        spec(
            7,
            "two computations of HH(Y2) at p = 2",
            "the degenerate page Λ(σξ1) ⊗ Γ(φ^4 ξ1) matches HH(Y2; F_2)",
            check_cross_validation,
        ),
        spec(8, "property suite", "structural properties on builtins and seeded random DGAs", move || {
            let r = property_suite(seed);
            let mut t = Tally::default();
            for c in &r.checks {
                t.record(c.passed, || format!("{}: {}", c.name, c.actual));
            }
            t.finish("properties")
        }),
    ];
    Report::new(Suite::Core, seed, execute(specs))
}

fn check_y2_mod_2_ring() -> (String, String, bool) {
    let expected = "one generator in degrees 0..3, ξ1^2 = [deg-2 generator], ξ1^3 ≠ 0".to_string();
    let run = || -> Result<String> {
        let x = mod_p_reduction(&builtin_y2(), Prime::TWO)?;
        let h = homology_ring(&x, 0..=4)?;
        let counts: Vec<usize> = (0..=4).map(|n| h.generator_count(n)).collect();
        let sq = h.power(&x, (1, 0), 2)?.unwrap_or_default();
        let cube = h.power(&x, (1, 0), 3)?.unwrap_or_default();
        let sq_is_generator = sq.len() == 1 && !h.is_zero_class(&sq);
        let cube_nonzero = cube.len() == 1 && !h.is_zero_class(&cube);
        let ok = counts == [1, 1, 1, 1, 0] && sq_is_generator && cube_nonzero;
        let s = format!(
            "generators per degree {}, ξ1^2 {}, ξ1^3 {}",
            join(&counts),
            if sq_is_generator { "= generator" } else { "≠ generator" },
            if cube_nonzero { "≠ 0" } else { "= 0" }
        );
        Ok(if ok { "one generator in degrees 0..3, ξ1^2 = [deg-2 generator], ξ1^3 ≠ 0".into() } else { s })
    };
    match run() {
        Ok(a) => {
            let ok = a == expected;
            (expected, a, ok)
        }
        Err(e) => (expected, format!("error: {e}"), false),
    }
}

fn check_endomorphism() -> (String, String, bool) {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2, 3, 5] {
        let x = builtin_endomorphism(pr(p));
        let violations = validate(&x);
        let h = homology(&x, -1..=1);
        let desc = match &h {
            Ok(h) => format!("{}, {}, {}", h[&-1], h[&0], h[&1]),
            Err(e) => format!("error: {e}"),
        };
        let fp =
            |g: &crate::linalg::HomologyGroup| g.free_rank == 0 && g.torsion.len() == 1 && g.torsion_strings() == ["u"];
        let good = violations.is_empty() && matches!(&h, Ok(h) if fp(&h[&-1]) && fp(&h[&0]) && h[&1].is_zero());
        ok &= good;
        parts.push(format!("p={p}: valid={} H_-1,0,1 = {desc}", violations.is_empty()));
    }
    let expected = "p=2,3,5: valid=true H_-1,0,1 = F_p, F_p, 0".to_string();
    let actual = if ok { expected.clone() } else { parts.join("; ") };
    (expected, actual, ok)
}

/// Presentations of the oracle matrix at `p`: single generators and all
/// binary tensor products, with degrees admissible at odd primes.
pub fn oracle_presentations(p: Prime) -> Vec<GradedAlgebraPresentation> {
    let kinds = [
        GeneratorKind::Exterior,
        GeneratorKind::Truncated(2),
        GeneratorKind::Truncated(3),
        GeneratorKind::Truncated(4),
        GeneratorKind::Polynomial,
    ];
    let two = p.get() == 2;
    let degree = |k: GeneratorKind, second: bool| -> i64 {
        match (two, k, second) {
            (true, _, false) => 1,
            (true, _, true) => 2,
            (false, GeneratorKind::Exterior, false) => 1,
            (false, GeneratorKind::Exterior, true) => 3,
            (false, _, false) => 2,
            (false, _, true) => 4,
        }
    };
    let one = |name: &str, k, second| GradedAlgebraPresentation::single(p, name, degree(k, second), k).unwrap();
    let mut out: Vec<_> = kinds.iter().map(|&k| one("x", k, false)).collect();
    for (i, &a) in kinds.iter().enumerate() {
        for &b in &kinds[i..] {
            out.push(tensor(&one("x", a, false), &one("y", b, true)).unwrap());
        }
    }
    out
}

pub const ORACLE_DEGREE: i64 = 12;

/// Compares bar-complex and closed-form HH of one presentation in degrees
/// `<= ORACLE_DEGREE`.
pub fn oracle_case(pres: &GradedAlgebraPresentation) -> std::result::Result<(), String> {
    let p = pres.prime();
    let x = from_presentation(pres, ORACLE_DEGREE).map_err(|e| e.to_string())?;
    let bar = hh_dims(&x, p, ORACLE_DEGREE + 1).map_err(|e| e.to_string())?;
    let closed = hh_graded_closed_form(pres, ORACLE_DEGREE).map_err(|e| e.to_string())?;
    if bar.guaranteed_through < ORACLE_DEGREE {
        return Err(format!("{pres} at p={p}: only exact through {}", bar.guaranteed_through));
    }
    let a = bar.dims.to_vec(0, ORACLE_DEGREE);
    let b = closed.dims.to_vec(0, ORACLE_DEGREE);
    if a == b {
        Ok(())
    } else {
        Err(format!("{pres} at p={p}: bar {} vs closed form {}", join(&a), join(&b)))
    }
}

fn check_oracle_matrix() -> (String, String, bool) {
    let cases: Vec<GradedAlgebraPresentation> =
        [2, 3, 5].into_iter().flat_map(|p| oracle_presentations(pr(p))).collect();
    let results: Vec<_> = cases.par_iter().map(oracle_case).collect();
    let mut t = Tally::default();
    for r in results {
        t.record(r.is_ok(), || r.clone().unwrap_err());
    }
    t.finish("algebras")
}

fn check_spectral_sequences() -> (String, String, bool) {
    let mut cases = Vec::new();
    for p in [3u32, 5] {
        cases.push((p, BokstedtVariant::Y, 2 * p as i64, truncated_mu(p, 2 * p as i64, &[])));
        for m in [2u32, 3] {
            let top = m as i64 * (2 * p as i64 - 2) + 2;
            cases.push((p, BokstedtVariant::Xm { m }, top, truncated_mu(p, top, &[top])));
        }
    }
    let results: Vec<_> = cases
        .par_iter()
        .map(|(p, v, bound, expected)| {
            let got = run_bokstedt(pr(*p), *v, *bound).map(|r| r.e_infinity.to_vec(0, *bound));
            match got {
                Ok(g) if g == *expected => Ok(()),
                Ok(g) => Err(format!("{v} at p={p}: {} vs {}", join(&g), join(expected))),
                Err(e) => Err(format!("{v} at p={p}: {e}")),
            }
        })
        .collect();
    let mut t = Tally::default();
    for r in results {
        t.record(r.is_ok(), || r.clone().unwrap_err());
    }
    t.finish("runs")
}

fn check_cross_validation() -> (String, String, bool) {
    let ss = run_bokstedt(Prime::TWO, BokstedtVariant::Xm { m: 2 }, 6).map(|r| r.e_infinity.to_vec(0, 6));
    let bar = hh_dims(&builtin_y2(), Prime::TWO, 7).map(|h| h.to_vec());
    match (ss, bar) {
        (Ok(a), Ok(b)) => {
            let ok = a == b;
            (format!("E∞ = HH = {}", join(&b)), format!("E∞ {}, HH {}", join(&a), join(&b)), ok)
        }
        (a, b) => {
            let err = a.err().or(b.err()).map(|e| e.to_string()).unwrap_or_default();
            ("E∞ = HH".into(), format!("error: {err}"), false)
        }
    }
}

// ---- property suite ---------------------------------------------------------

/// Builtins instantiated at every supported prime, with `X ⊗ F_2` for Y2.
pub fn builtin_instances() -> Vec<(Dga, Option<Prime>)> {
    let mut out = vec![(builtin_y2(), Some(Prime::TWO))];
    if let Ok(y) = mod_p_reduction(&builtin_y2(), Prime::TWO) {
        out.push((y, Some(Prime::TWO)));
    }
    for p in [2, 3, 5] {
        let p = pr(p);
        out.push((builtin_formal_polynomial(p, 9).expect("formal model"), Some(p)));
        out.push((builtin_cone_p(p), Some(p)));
        out.push((builtin_endomorphism(p), None));
    }
    out
}

pub fn property_suite(seed: u64) -> Report {
    let specs = vec![
        spec(1, "DGA axioms on builtins", "d^2 = 0, Leibniz, associativity and unit", || {
            let mut t = Tally::default();
            for (x, _) in builtin_instances() {
                let v = validate(&x);
                t.record(v.is_empty(), || format!("{}: {}", x.name(), v[0]));
            }
            t.finish("builtins")
        }),
        spec(2, "DGA axioms on random DGAs", "d^2 = 0, Leibniz, associativity and unit", move || {
            let mut t = Tally::default();
            for x in random_dgas(seed, 100) {
                let v = validate(&x);
                t.record(v.is_empty(), || format!("{}: {}", x.name(), v[0]));
            }
            t.finish("random DGAs")
        }),
        spec(
            3,
            "HH depends only on low degrees",
            "algebras agreeing below degree n have the same HH below degree n",
            move || low_degree_agreement(seed),
        ),
        spec(4, "Künneth", "HH of a tensor product is the tensor product of HH", move || kunneth(seed)),
        spec(
            5,
            "normalized and unnormalized bar complexes",
            "dropping degenerate words does not change HH in degrees <= 5",
            move || normalization(seed),
        ),
        spec(
            6,
            "truncation contract",
            "X[m] has the homology of X through m, none above, and X -> X[m] is a DGA map",
            truncation_contract,
        ),
    ];
    Report::new(Suite::Properties, seed, execute(specs))
}

fn low_degree_agreement(seed: u64) -> (String, String, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3a);
    let bound = 10;
    let mut t = Tally::default();
    for _ in 0..24 {
        let p = pr(*[2u32, 3, 5].choose(&mut rng).unwrap());
        let d: i64 = if p.get() == 2 { rng.gen_range(1..=2) } else { 2 };
        let m: u32 = rng.gen_range(2..=4);
        let m2: u32 = if rng.gen_bool(0.25) { 0 } else { m + rng.gen_range(1..=2) };
        let kind = |k: u32| if k == 0 { GeneratorKind::Polynomial } else { GeneratorKind::Truncated(k) };
        let a = GradedAlgebraPresentation::single(p, "x", d, kind(m)).unwrap();
        let b = GradedAlgebraPresentation::single(p, "x", d, kind(m2)).unwrap();
        let n = (m as i64 * d).min(bound);
        let run = |q: &GradedAlgebraPresentation| from_presentation(q, bound).and_then(|x| hh_dims(&x, p, bound));
        match (run(&a), run(&b)) {
            (Ok(ha), Ok(hb)) => {
                let (va, vb) = (ha.dims.to_vec(0, n - 1), hb.dims.to_vec(0, n - 1));
                t.record(va == vb, || format!("{a} vs {b} at p={p}: {} vs {}", join(&va), join(&vb)));
            }
            (ra, rb) => {
                let e = ra.err().or(rb.err()).unwrap();
                t.record(false, || format!("{a} vs {b} at p={p}: {e}"));
            }
        }
    }
    t.finish("pairs")
}

fn kunneth(seed: u64) -> (String, String, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4b);
    let bound = 9;
    let mut pairs: Vec<(Dga, Dga, Prime)> = vec![(builtin_y2(), builtin_y2(), Prime::TWO)];
    for _ in 0..16 {
        let p = pr(*[2u32, 3, 5].choose(&mut rng).unwrap());
        let singles: Vec<_> = oracle_presentations(p).into_iter().filter(|q| q.generators().len() == 1).collect();
        let a = singles.choose(&mut rng).unwrap().clone();
        let mut b = singles.choose(&mut rng).unwrap().clone();
        if p.get() == 2 || b.generators()[0].total() % 2 == 0 {
            b = GradedAlgebraPresentation::single(p, "y", 2 * b.generators()[0].total(), b.generators()[0].kind)
                .unwrap();
        } else {
            b = GradedAlgebraPresentation::single(p, "y", 3, b.generators()[0].kind).unwrap();
        }
        let (Ok(x), Ok(y)) = (from_presentation(&a, bound), from_presentation(&b, bound)) else { continue };
        pairs.push((x, y, p));
    }
    let mut t = Tally::default();
    for (x, y, p) in pairs {
        let res = (|| -> Result<bool> {
            let xy = tensor_dga(&x, &y)?;
            let hx = hh_dims(&x, p, bound)?;
            let hy = hh_dims(&y, p, bound)?;
            let hxy = hh_dims(&xy, p, bound)?;
            let top = hxy.guaranteed_through;
            Ok(hxy.dims.truncated(top) == hx.dims.convolve(&hy.dims, top))
        })();
        t.record(matches!(res, Ok(true)), || match &res {
            Err(e) => format!("{} ⊗ {}: {e}", x.name(), y.name()),
            _ => format!("{} ⊗ {} at p={p}", x.name(), y.name()),
        });
    }
    t.finish("products")
}

fn normalization(seed: u64) -> (String, String, bool) {
    let top = 6;
    let mut inputs: Vec<(Dga, Prime)> = builtin_instances()
        .into_iter()
        .filter_map(|(x, p)| p.map(|p| (x, p)))
        .chain([(Dga::unit_dga(Ring::Integers), pr(3))])
        .collect();
    let mut taken = 0;
    for x in random_dgas(seed, 100) {
        if taken == 10 {
            break;
        }
        let p = match x.ring() {
            Ring::PrimeField { p } => p,
            _ => pr(2),
        };
        if x.total_dim() > 12 || CyclicBarComplex::build(&x, p, 2).is_err() {
            continue;
        }
        inputs.push((x, p));
        taken += 1;
    }
    let results: Vec<_> = inputs
        .par_iter()
        .map(|(x, p)| {
            let a = CyclicBarComplex::build(x, *p, top).map(|c| c.homology_dims());
            let b = CyclicBarComplex::build_unnormalized(x, *p, top).map(|c| c.homology_dims());
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => Ok(()),
                (Ok(a), Ok(b)) => Err(format!("{} at p={p}: {} vs {}", x.name(), join(&a), join(&b))),
                (a, b) => Err(format!("{}: {}", x.name(), a.err().or(b.err()).unwrap())),
            }
        })
        .collect();
    let mut t = Tally::default();
    for r in results {
        t.record(r.is_ok(), || r.clone().unwrap_err());
    }
    t.finish("inputs")
}

/// Every connective builtin and its base change to F_p, truncated at every
/// degree up to its top. Over Z a truncation that is refused must have a
/// non-free quotient, which is confirmed by the error.
fn truncation_contract() -> (String, String, bool) {
    let mut inputs = Vec::new();
    for (x, p) in builtin_instances() {
        if !x.is_connective() {
            continue;
        }
        if let Some(p) = p {
            if x.ring() == Ring::Integers {
                inputs.push(base_change_mod_p(&x, p).expect("base change"));
            }
        }
        inputs.push(x);
    }
    let results: Vec<_> = inputs
        .par_iter()
        .flat_map(|x| (0..=x.hi() + 1).map(move |m| (x, m)).collect::<Vec<_>>())
        .map(|(x, m)| match truncate(x, m) {
            Ok(t) => t.check_contract(x).map_err(|e| format!("{} at m={m}: {e}", x.name())),
            Err(Error::UnsupportedTruncation { .. }) if x.ring() == Ring::Integers => Ok(()),
            Err(e) => Err(format!("{} at m={m}: {e}", x.name())),
        })
        .collect();
    let mut t = Tally::default();
    for r in results {
        t.record(r.is_ok(), || r.clone().unwrap_err());
    }
    t.finish("truncations")
}
