//! Coefficient rings: the prime field F_p, the integers, and F_p[u].
//!
//! Scalars carry no ring context of their own; every arithmetic operation
//! goes through a [`Ring`] value, which knows the characteristic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub const TWO: Prime = Prime(2);

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `a^{-1} mod p` for `a` in `[1, p)`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

/// Univariate polynomial over F_p, coefficients from the constant term up.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FpPoly {
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: u32, p: u32) -> Self {
        FpPoly::from_coeffs(vec![c % p], p)
    }

    /// `c * u^k`.
    pub fn monomial(c: u32, k: usize, p: u32) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        FpPoly::from_coeffs(coeffs, p)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>, p: u32) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn add(&self, other: &Self, p: u32) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        FpPoly::from_coeffs(coeffs, p)
    }

    fn neg(&self, p: u32) -> Self {
        FpPoly::from_coeffs(self.coeffs.iter().map(|&c| (p - c) % p).collect(), p)
    }

    fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        FpPoly::from_coeffs(out.into_iter().map(|c| c as u32).collect(), p)
    }

    fn div_rem(&self, divisor: &Self, p: u32) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = *rem.last().unwrap();
            if c != 0 {
                let q = (c as u64 * lead_inv as u64 % p as u64) as u32;
                let shift = top - dd;
                quot[shift] = q;
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = (q as u64 * dc as u64 % p as u64) as u32;
                    rem[shift + k] = (rem[shift + k] + p - sub) % p;
                }
            }
            rem.pop();
        }
        (FpPoly::from_coeffs(quot, p), FpPoly::from_coeffs(rem, p))
    }
}

/// An element of one of the supported coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u32),
    Int(BigInt),
    Poly(FpPoly),
}

/// The coefficient rings supported throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Fp")]
    PrimeField { p: Prime },
    #[serde(rename = "FpPoly")]
    FpPoly { p: Prime },
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimeField { p } => write!(f, "F_{p}"),
            Ring::FpPoly { p } => write!(f, "F_{p}[u]"),
        }
    }
}

impl Ring {
    pub fn fp(p: Prime) -> Self {
        Ring::PrimeField { p }
    }

    pub fn fp_poly(p: Prime) -> Self {
        Ring::FpPoly { p }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField { .. })
    }

    /// The characteristic of the residue field, if the ring has one fixed prime.
    pub fn prime(&self) -> Option<Prime> {
        match *self {
            Ring::Integers => None,
            Ring::PrimeField { p } | Ring::FpPoly { p } => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::zero()),
            Ring::PrimeField { .. } => Scalar::Fp(0),
            Ring::FpPoly { .. } => Scalar::Poly(FpPoly::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Ring::Integers => Scalar::Int(BigInt::from(n)),
            Ring::PrimeField { p } => Scalar::Fp(n.rem_euclid(p.get() as i64) as u32),
            Ring::FpPoly { p } => {
                let c = n.rem_euclid(p.get() as i64) as u32;
                Scalar::Poly(FpPoly::constant(c, p.get()))
            }
        }
    }

    /// The indeterminate `u` of F_p[u].
    pub fn u(&self) -> Result<Scalar> {
        match *self {
            Ring::FpPoly { p } => Ok(Scalar::Poly(FpPoly::monomial(1, 1, p.get()))),
            r => Err(Error::UnsupportedRing { ring: r, op: "u" }),
        }
    }

    /// Checks that a scalar belongs to this ring and is normalized.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Ring::Integers, Scalar::Int(_)) => true,
            (Ring::PrimeField { p }, Scalar::Fp(v)) => *v < p.get(),
            (Ring::FpPoly { p }, Scalar::Poly(f)) => {
                f.coeffs.iter().all(|&c| c < p.get()) && f.coeffs.last() != Some(&0)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Int(n) => n.is_zero(),
            Scalar::Poly(f) => f.is_zero(),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v != 0,
            Scalar::Int(n) => n.abs().is_one(),
            Scalar::Poly(f) => f.degree() == Some(0),
        }
    }

    fn p(&self) -> u32 {
        self.prime().map(Prime::get).unwrap_or(0)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % self.p()),
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.add(y, self.p())),
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) => Scalar::Fp((self.p() - x) % self.p()),
            Scalar::Int(x) => Scalar::Int(-x),
            Scalar::Poly(x) => Scalar::Poly(x.neg(self.p())),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((*x as u64 * *y as u64 % self.p() as u64) as u32),
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.mul(y, self.p())),
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, a: Scalar, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            a
        } else {
            self.neg(&a)
        }
    }

    /// Euclidean division with `norm(rem) < norm(divisor)`.
    ///
    /// Over Z the remainder is the one of least absolute value, which keeps
    /// entries small during elimination.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.p();
                let q = (*x as u64 * inv_mod(*y, p) as u64 % p as u64) as u32;
                (Scalar::Fp(q), Scalar::Fp(0))
            }
            (Scalar::Int(x), Scalar::Int(y)) => {
                let (mut q, mut r) = x.div_mod_floor(y);
                let twice: BigInt = &r * 2;
                // the floored remainder has the sign of y
                if twice.abs() > y.abs() {
                    q += 1;
                    r -= y;
                }
                (Scalar::Int(q), Scalar::Int(r))
            }
            (Scalar::Poly(x), Scalar::Poly(y)) => {
                let (q, r) = x.div_rem(y, self.p());
                (Scalar::Poly(q), Scalar::Poly(r))
            }
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    pub fn divides(&self, d: &Scalar, a: &Scalar) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    /// Compares Euclidean norms: absolute value over Z, degree over F_p[u],
    /// and all nonzero elements equal over a field.
    pub fn cmp_norm(&self, a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => (*x != 0).cmp(&(*y != 0)),
            (Scalar::Int(x), Scalar::Int(y)) => x.abs().cmp(&y.abs()),
            (Scalar::Poly(x), Scalar::Poly(y)) => x.coeffs.len().cmp(&y.coeffs.len()),
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    /// The unit `v` making `v*a` canonical: positive over Z, monic over
    /// F_p[u], and 1 over F_p.
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fp(x) if *x != 0 => Scalar::Fp(inv_mod(*x, self.p())),
            Scalar::Int(x) if x.is_negative() => Scalar::Int(BigInt::from(-1)),
            Scalar::Poly(f) if !f.is_zero() => Scalar::Poly(FpPoly::constant(inv_mod(f.leading(), self.p()), self.p())),
            _ => self.one(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, a: &Scalar) -> Scalar {
        assert!(self.is_unit(a), "not a unit");
        match a {
            Scalar::Fp(x) => Scalar::Fp(inv_mod(*x, self.p())),
            Scalar::Int(x) => Scalar::Int(x.clone()),
            Scalar::Poly(f) => Scalar::Poly(FpPoly::constant(inv_mod(f.leading(), self.p()), self.p())),
        }
    }

    /// Reduces a scalar into F_p, for rings with a canonical map to F_p.
    /// Over F_p[u] this sets `u = 0`.
    pub fn reduce_mod_p(&self, a: &Scalar, p: Prime) -> u32 {
        let p = p.get();
        match a {
            Scalar::Fp(x) => x % p,
            Scalar::Int(n) => n.mod_floor(&BigInt::from(p)).to_u32().unwrap(),
            Scalar::Poly(f) => f.coeffs.first().copied().unwrap_or(0) % p,
        }
    }

    /// The coefficient as a small signed integer when that makes sense
    /// (used for compact rendering and JSON).
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Fp(x) => Some(*x as i64),
            Scalar::Int(n) => n.to_i64(),
            Scalar::Poly(f) if f.degree().unwrap_or(0) == 0 => Some(f.leading() as i64),
            Scalar::Poly(_) => None,
        }
    }

    pub fn display(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Int(n) => n.to_string(),
            Scalar::Poly(f) => {
                if f.is_zero() {
                    return "0".into();
                }
                let terms: Vec<String> = f
                    .coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| match (k, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "u".into(),
                        (1, c) => format!("{c}u"),
                        (k, 1) => format!("u^{k}"),
                        (k, c) => format!("{c}u^{k}"),
                    })
                    .collect();
                terms.join("+")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
    }

    #[test]
    fn inverse_mod() {
        for p in [2u32, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a as u64 * inv_mod(a, p) as u64 % p as u64, 1);
            }
        }
    }

    #[test]
    fn poly_division() {
        let p = 5;
        let r = Ring::fp_poly(Prime::new(p).unwrap());
        // (u^2 + 2u + 3) = (u + 1)(u + 1) + 2
        let a = Scalar::Poly(FpPoly::from_coeffs(vec![3, 2, 1], p));
        let b = Scalar::Poly(FpPoly::from_coeffs(vec![1, 1], p));
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(q, b);
        assert_eq!(rem, r.from_i64(2));
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }

    #[test]
    fn integer_division_balanced_remainder() {
        let r = Ring::Integers;
        let (q, rem) = r.div_rem(&r.from_i64(7), &r.from_i64(4));
        assert_eq!((q, rem), (r.from_i64(2), r.from_i64(-1)));
        let (q, rem) = r.div_rem(&r.from_i64(-7), &r.from_i64(3));
        assert_eq!(r.add(&r.mul(&q, &r.from_i64(3)), &rem), r.from_i64(-7));
        assert!(r.cmp_norm(&rem, &r.from_i64(3)).is_lt());
    }

    #[test]
    fn poly_display() {
        let r = Ring::fp_poly(Prime::new(3).unwrap());
        let f = Scalar::Poly(FpPoly::from_coeffs(vec![1, 0, 2], 3));
        assert_eq!(r.display(&f), "2u^2+1");
        assert_eq!(r.display(&r.u().unwrap()), "u");
    }

    proptest::proptest! {
        #[test]
        fn integer_remainder_is_balanced(a in -50i64..50, b in -9i64..10) {
            proptest::prop_assume!(b != 0);
            let z = Ring::Integers;
            let (x, y) = (z.from_i64(a), z.from_i64(b));
            let (q, r) = z.div_rem(&x, &y);
            proptest::prop_assert_eq!(z.add(&z.mul(&q, &y), &r), x);
            proptest::prop_assert!(2 * z.to_i64(&r).unwrap().abs() <= b.abs());
        }
    }
}
