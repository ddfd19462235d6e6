//! Pages `E^r = Z_r / B_r` stored inside the `E^2` basis of each bidegree.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{enumerate_basis, GradedAlgebraPresentation, GradedDims, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{Prime, SparseFpMatrix};

type Bidegree = (i64, i64);

fn rref(p: u32, n: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    let mut m = SparseFpMatrix::new(p, n);
    for r in rows {
        m.push_row(r.into_iter().enumerate().filter(|e| e.1 != 0).collect());
    }
    m.rref()
        .into_iter()
        .map(|row| {
            let mut v = vec![0; n];
            for (c, x) in row {
                v[c] = x;
            }
            v
        })
        .collect()
}

/// `v` minus its projection on the pivots of a reduced echelon basis.
fn reduce(p: u32, v: &[u32], basis: &[Vec<u32>]) -> Vec<u32> {
    let mut v = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).expect("nonzero row");
        let c = v[lead];
        if c != 0 {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = ((*vi as u64 + (p - c) as u64 * *bi as u64) % p as u64) as u32;
            }
        }
    }
    v
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// One bidegree of a page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spot {
    pub monomials: Vec<Monomial>,
    /// Reduced echelon basis of `Z_r` in monomial coordinates.
    pub cycles: Vec<Vec<u32>>,
    /// Reduced echelon basis of `B_r`.
    pub boundaries: Vec<Vec<u32>>,
}

impl Spot {
    pub fn dim(&self) -> usize {
        self.cycles.len() - self.boundaries.len()
    }

    /// Whether the `i`-th monomial is a cycle that is not a boundary.
    pub fn survives(&self, i: usize, p: u32) -> bool {
        let mut e = vec![0; self.monomials.len()];
        e[i] = 1;
        is_zero(&reduce(p, &e, &self.cycles)) && !is_zero(&reduce(p, &e, &self.boundaries))
    }

    /// Representatives of a basis of `Z_r / B_r`: cycles reduced modulo
    /// boundaries, in reduced echelon form (smallest monomial pivots).
    pub fn representatives(&self, p: u32) -> Vec<Vec<u32>> {
        let n = self.monomials.len();
        let reduced = self.cycles.iter().map(|z| reduce(p, z, &self.boundaries)).filter(|v| !is_zero(v));
        rref(p, n, reduced)
    }
}

/// Image of each source class as sparse coordinates in the target spot.
type Images = HashMap<(Bidegree, usize), Vec<(usize, u32)>>;

/// A bigraded page truncated at a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedPage {
    pub r: u32,
    pub prime: Prime,
    /// Largest total degree present.
    pub bound: i64,
    pub provenance: String,
    pub presentation: GradedAlgebraPresentation,
    spots: BTreeMap<Bidegree, Spot>,
}

/// `d^r(source) ∋ coeff * target`; the target sits at `(s - r, t + r - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecEntry {
    pub source: Monomial,
    pub target: Monomial,
    pub coeff: u32,
}

/// Differential `d^r` given on `E^2` basis monomials; monomials not listed
/// map to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialSpec {
    pub r: u32,
    pub entries: Vec<SpecEntry>,
}

impl DifferentialSpec {
    pub fn zero(r: u32) -> Self {
        DifferentialSpec { r, entries: Vec::new() }
    }

    pub fn shift(&self) -> Bidegree {
        (-(self.r as i64), self.r as i64 - 1)
    }
}

/// Every monomial of total degree `<= bound`, with `Z = E^2` and `B = 0`.
pub fn page_from_presentation(pres: &GradedAlgebraPresentation, bound: i64) -> BigradedPage {
    let mut spots: BTreeMap<Bidegree, Spot> = BTreeMap::new();
    for (m, st) in enumerate_basis(pres, bound) {
        spots
            .entry(st)
            .or_insert_with(|| Spot { monomials: Vec::new(), cycles: Vec::new(), boundaries: Vec::new() })
            .monomials
            .push(m);
    }
    for spot in spots.values_mut() {
        spot.monomials.sort();
        let n = spot.monomials.len();
        spot.cycles = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
    }
    BigradedPage { r: 2, prime: pres.prime(), bound, provenance: pres.to_string(), presentation: pres.clone(), spots }
}

#[derive(Serialize)]
struct SpotJson {
    s: i64,
    t: i64,
    dim: usize,
    classes: Vec<String>,
}

#[derive(Serialize)]
struct PageJson<'a> {
    r: u32,
    prime: u32,
    bound: i64,
    provenance: &'a str,
    spots: Vec<SpotJson>,
}

impl Serialize for BigradedPage {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let spots = self
            .spots()
            .filter(|(_, sp)| sp.dim() > 0)
            .map(|(&(s, t), _)| SpotJson { s, t, dim: self.dim(s, t), classes: self.class_labels(s, t) })
            .collect();
        PageJson { r: self.r, prime: self.prime.get(), bound: self.bound, provenance: &self.provenance, spots }
            .serialize(ser)
    }
}

impl BigradedPage {
    pub fn spots(&self) -> impl Iterator<Item = (&Bidegree, &Spot)> {
        self.spots.iter()
    }

    pub fn spot(&self, s: i64, t: i64) -> Option<&Spot> {
        self.spots.get(&(s, t))
    }

    pub fn dim(&self, s: i64, t: i64) -> usize {
        self.spot(s, t).map_or(0, Spot::dim)
    }

    pub fn total_dims(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for (&(s, t), spot) in &self.spots {
            g.add(s + t, spot.dim());
        }
        g
    }

    /// Location of a monomial: its bidegree and index.
    pub fn locate(&self, m: &Monomial) -> Option<(Bidegree, usize)> {
        if m.exponents.len() != self.presentation.generators().len() {
            return None;
        }
        let st = self.presentation.bidegree(m);
        let spot = self.spots.get(&st)?;
        spot.monomials.binary_search(m).ok().map(|i| (st, i))
    }

    pub fn label(&self, m: &Monomial) -> String {
        self.presentation.label(m)
    }

    fn render(&self, spot: &Spot, v: &[u32]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let l = self.label(&spot.monomials[i]);
                if c == 1 {
                    l
                } else {
                    format!("{c}{l}")
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Labels of the chosen class representatives at `(s, t)`.
    pub fn class_labels(&self, s: i64, t: i64) -> Vec<String> {
        match self.spot(s, t) {
            Some(spot) => spot.representatives(self.prime.get()).iter().map(|v| self.render(spot, v)).collect(),
            None => Vec::new(),
        }
    }

    /// `(s, t)` grid with `s` to the right and `t` upwards. Cells show the
    /// dimension, or the class labels when `labels` is set.
    pub fn chart(&self, labels: bool) -> String {
        let live: Vec<(Bidegree, String)> = self
            .spots
            .iter()
            .filter(|(_, sp)| sp.dim() > 0)
            .map(|(&(s, t), sp)| {
                let cell = if labels { self.class_labels(s, t).join(", ") } else { sp.dim().to_string() };
                ((s, t), cell)
            })
            .collect();
        let mut out = format!("E^{} page ({}), total degree <= {}\n", self.r, self.provenance, self.bound);
        if live.is_empty() {
            return out;
        }
        let smax = live.iter().map(|((s, _), _)| *s).max().unwrap_or(0);
        let tmax = live.iter().map(|((_, t), _)| *t).max().unwrap_or(0);
        let cells: HashMap<Bidegree, &str> = live.iter().map(|(k, c)| (*k, c.as_str())).collect();
        let width = live.iter().map(|(_, c)| c.chars().count()).max().unwrap_or(1).max(2);
        for t in (0..=tmax).rev() {
            let _ = write!(out, "{t:>4} |");
            for s in 0..=smax {
                let c = cells.get(&(s, t)).copied().unwrap_or(".");
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        let _ = write!(out, "     +");
        for _ in 0..=smax {
            let _ = write!(out, "{}", "-".repeat(width + 1));
        }
        out.push_str("\n      ");
        for s in 0..=smax {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        out
    }

    fn images(&self, spec: &DifferentialSpec) -> Result<Images> {
        let p = self.prime.get();
        let (ds, dt) = spec.shift();
        let mut map: Images = HashMap::new();
        for e in &spec.entries {
            let (src, i) = self.locate(&e.source).ok_or_else(|| {
                Error::InvalidSpec(format!("source {} is not on the page", self.presentation.label(&e.source)))
            })?;
            let (dst, j) = self.locate(&e.target).ok_or_else(|| {
                Error::InvalidSpec(format!("target {} is not on the page", self.presentation.label(&e.target)))
            })?;
            if dst != (src.0 + ds, src.1 + dt) {
                return Err(Error::InvalidSpec(format!(
                    "d^{} from {} at {:?} cannot land at {:?}",
                    spec.r,
                    self.label(&e.source),
                    src,
                    dst
                )));
            }
            if e.coeff % p != 0 {
                map.entry((src, i)).or_default().push((j, e.coeff % p));
            }
        }
        Ok(map)
    }

    fn apply(
        &self,
        images: &HashMap<(Bidegree, usize), Vec<(usize, u32)>>,
        src: Bidegree,
        dst: Bidegree,
        v: &[u32],
    ) -> Vec<u32> {
        let p = self.prime.get() as u64;
        let mut out = vec![0u32; self.spots.get(&dst).map_or(0, |s| s.monomials.len())];
        for (i, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            for &(j, e) in images.get(&(src, i)).map_or(&[][..], Vec::as_slice) {
                out[j] = ((out[j] as u64 + c as u64 * e as u64) % p) as u32;
            }
        }
        out
    }
}

/// Homology of `page` with respect to `spec`, giving the next page.
pub fn turn_page(page: &BigradedPage, spec: &DifferentialSpec) -> Result<BigradedPage> {
    if spec.r != page.r {
        return Err(Error::InvalidSpec(format!("d^{} applied to the E^{} page", spec.r, page.r)));
    }
    let p = page.prime.get();
    let images = page.images(spec)?;
    let (ds, dt) = spec.shift();
    let empty = Vec::new();
    let mut next = page.clone();
    next.r = page.r + 1;
    next.provenance = format!("E^{} after d^{}", page.r + 1, spec.r);
    let mut new_boundaries: BTreeMap<Bidegree, Vec<Vec<u32>>> = BTreeMap::new();
    for (&src, spot) in &page.spots {
        let dst = (src.0 + ds, src.1 + dt);
        let dst2 = (dst.0 + ds, dst.1 + dt);
        let (zt, bt) = page.spots.get(&dst).map_or((&empty, &empty), |s| (&s.cycles, &s.boundaries));
        let bt2 = page.spots.get(&dst2).map_or(&empty, |s| &s.boundaries);
        for b in &spot.boundaries {
            if !is_zero(&reduce(p, &page.apply(&images, src, dst, b), bt)) {
                return Err(Error::InvalidSpec(format!("d^{} is nonzero on a boundary at {src:?}", spec.r)));
            }
        }
        let mut aug = Vec::with_capacity(spot.cycles.len());
        for z in &spot.cycles {
            let dz = page.apply(&images, src, dst, z);
            if !is_zero(&reduce(p, &dz, zt)) {
                return Err(Error::InvalidSpec(format!("d^{} of a cycle at {src:?} is not a cycle", spec.r)));
            }
            let ddz = page.apply(&images, dst, dst2, &dz);
            if !is_zero(&reduce(p, &ddz, bt2)) {
                return Err(Error::InvalidSpec(format!("d^{0} ∘ d^{0} is nonzero at {src:?}", spec.r)));
            }
            let w = reduce(p, &dz, bt);
            if !is_zero(&w) {
                new_boundaries.entry(dst).or_default().push(w.clone());
            }
            aug.push(w.into_iter().chain(z.iter().copied()).collect::<Vec<u32>>());
        }
        let nt = zt.len().max(page.spots.get(&dst).map_or(0, |s| s.monomials.len()));
        let width = nt + spot.monomials.len();
        let kernel: Vec<Vec<u32>> = rref(
            p,
            width,
            aug.into_iter().map(|mut v| {
                v.resize(width, 0);
                v
            }),
        )
        .into_iter()
        .filter(|row| is_zero(&row[..nt]))
        .map(|row| row[nt..].to_vec())
        .collect();
        let n = spot.monomials.len();
        next.spots.get_mut(&src).expect("same spots").cycles = rref(p, n, kernel);
    }
    for (dst, extra) in new_boundaries {
        let spot = next.spots.get_mut(&dst).expect("target spot exists");
        let n = spot.monomials.len();
        spot.boundaries = rref(p, n, spot.boundaries.iter().cloned().chain(extra));
    }
    Ok(next)
}

/// Possible differentials `d^r`, `r >= page.r`, between nonzero spots of
/// the final page whose target has total degree `<= bound`.
pub fn possible_differentials(page: &BigradedPage, bound: i64) -> Vec<(Bidegree, Bidegree)> {
    let live: Vec<Bidegree> = page.spots().filter(|(_, sp)| sp.dim() > 0).map(|(k, _)| *k).collect();
    let mut out = Vec::new();
    for &(s, t) in &live {
        if s + t - 1 > bound {
            continue;
        }
        for r in page.r as i64..=s {
            let dst = (s - r, t + r - 1);
            if page.dim(dst.0, dst.1) > 0 {
                out.push(((s, t), dst));
            }
        }
    }
    out
}

/// Total-degree dimensions of the last page through `bound`, provided no
/// later differential can be nonzero for degree reasons.
pub fn e_infinity_dims(pages: &[BigradedPage], bound: i64) -> Result<GradedDims> {
    let last = pages.last().ok_or_else(|| Error::Input("no pages".into()))?;
    if last.bound < bound + 1 {
        return Err(Error::Input(format!(
            "page is truncated at total degree {}; E-infinity through {bound} needs {}",
            last.bound,
            bound + 1
        )));
    }
    let open = possible_differentials(last, bound);
    if !open.is_empty() {
        return Err(Error::Inconclusive(open));
    }
    Ok(last.total_dims().truncated(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebraPresentation;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial { exponents: e.to_vec() }
    }

    #[test]
    fn divided_power_page() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "divided st0 1:1").unwrap();
        let page = page_from_presentation(&pres, 6);
        let spots: Vec<(Bidegree, usize)> = page.spots().map(|(k, s)| (*k, s.dim())).collect();
        assert_eq!(spots, vec![((0, 0), 1), ((1, 1), 1), ((2, 2), 1), ((3, 3), 1)]);
        assert_eq!(page.class_labels(3, 3), vec!["γ3(st0)"]);
    }

    #[test]
    fn empty_presentation_is_the_unit() {
        let page = page_from_presentation(&GradedAlgebraPresentation::empty(pr(5)), 4);
        assert_eq!(page.total_dims().to_vec(0, 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn three_spot_enumeration() {
        let pres = GradedAlgebraPresentation::parse(pr(2), "ext sx 1:1, divided f 2:4").unwrap();
        let page = page_from_presentation(&pres, 6);
        let spots: Vec<Bidegree> = page.spots().map(|(k, _)| *k).collect();
        assert_eq!(spots, vec![(0, 0), (1, 1), (2, 4)]);
    }

    #[test]
    fn zero_spec_is_identity() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "divided a 1:1, ext b 1:4").unwrap();
        let page = page_from_presentation(&pres, 10);
        let next = turn_page(&page, &DifferentialSpec::zero(2)).unwrap();
        assert_eq!(next.r, 3);
        for ((k, a), (_, b)) in page.spots().zip(next.spots()) {
            assert_eq!(a, b, "{k:?}");
        }
    }

    #[test]
    fn cancelling_pair() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "divided a 1:1, ext b 1:4").unwrap();
        let page = page_from_presentation(&pres, 8);
        let spec = DifferentialSpec {
            r: 2,
            entries: vec![SpecEntry { source: mono(&[3, 0]), target: mono(&[0, 1]), coeff: 1 }],
        };
        let next = turn_page(&page, &spec).unwrap();
        assert_eq!(next.dim(3, 3), 0);
        assert_eq!(next.dim(1, 4), 0);
        assert_eq!(next.dim(2, 2), 1);
    }

    #[test]
    fn spec_errors() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "divided a 1:1, ext b 1:4").unwrap();
        let page = page_from_presentation(&pres, 8);
        let wrong_shift = DifferentialSpec {
            r: 2,
            entries: vec![SpecEntry { source: mono(&[2, 0]), target: mono(&[0, 1]), coeff: 1 }],
        };
        assert!(matches!(turn_page(&page, &wrong_shift), Err(Error::InvalidSpec(_))));
        let wrong_page = DifferentialSpec::zero(3);
        assert!(matches!(turn_page(&page, &wrong_page), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn composite_must_vanish() {
        // x at (4,0), y at (2,1), z at (0,2); d^2 x = y, d^2 y = z
        let pres = GradedAlgebraPresentation::parse(pr(5), "ext z 0:2, ext y 2:1, ext x 4:0").unwrap();
        let page = page_from_presentation(&pres, 4);
        let spec = DifferentialSpec {
            r: 2,
            entries: vec![
                SpecEntry { source: mono(&[0, 0, 1]), target: mono(&[0, 1, 0]), coeff: 1 },
                SpecEntry { source: mono(&[0, 1, 0]), target: mono(&[1, 0, 0]), coeff: 1 },
            ],
        };
        let err = turn_page(&page, &spec).unwrap_err();
        assert!(err.to_string().contains("∘"), "{err}");
    }

    #[test]
    fn inconclusive_when_a_differential_fits() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "divided a 1:1, ext b 0:5").unwrap();
        let page = page_from_presentation(&pres, 8);
        let next = turn_page(&page, &DifferentialSpec::zero(2)).unwrap();
        match e_infinity_dims(&[page.clone(), next], 6) {
            Err(Error::Inconclusive(v)) => assert_eq!(v, vec![((3, 3), (0, 5))]),
            other => panic!("{other:?}"),
        }
        assert!(e_infinity_dims(&[page], 8).is_err());
    }
}
