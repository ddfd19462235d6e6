use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dimensions by total degree. Degrees not present have dimension zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    dims: BTreeMap<i64, usize>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dimensions for degrees `0, 1, 2, ...`.
    pub fn from_slice(dims: &[usize]) -> Self {
        let mut g = Self::new();
        for (n, &d) in dims.iter().enumerate() {
            g.set(n as i64, d);
        }
        g
    }

    pub fn get(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn set(&mut self, n: i64, d: usize) {
        if d == 0 {
            self.dims.remove(&n);
        } else {
            self.dims.insert(n, d);
        }
    }

    pub fn add(&mut self, n: i64, d: usize) {
        let v = self.get(n) + d;
        self.set(n, v);
    }

    /// Dense list for degrees `lo..=hi`.
    pub fn to_vec(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|n| self.get(n)).collect()
    }

    /// Nonzero entries in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&n, &d)| (n, d))
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Keeps degrees `<= bound`.
    pub fn truncated(&self, bound: i64) -> Self {
        GradedDims { dims: self.dims.range(..=bound).map(|(&n, &d)| (n, d)).collect() }
    }

    /// Dimensions of a tensor product, up to `bound`.
    pub fn convolve(&self, other: &Self, bound: i64) -> Self {
        let mut out = Self::new();
        for (a, da) in self.iter() {
            for (b, db) in other.iter() {
                if a + b <= bound {
                    out.add(a + b, da * db);
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Dimensions by bidegree `(s, t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDims {
    dims: BTreeMap<(i64, i64), usize>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, s: i64, t: i64) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, s: i64, t: i64, d: usize) {
        if d > 0 {
            *self.dims.entry((s, t)).or_default() += d;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.dims.iter().map(|(&k, &d)| (k, d))
    }

    /// Collapse to total degree `s + t`.
    pub fn total(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for ((s, t), d) in self.iter() {
            g.add(s + t, d);
        }
        g
    }
}

impl Serialize for BigradedDims {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Spot {
            s: i64,
            t: i64,
            dim: usize,
        }
        let spots: Vec<Spot> = self.iter().map(|((s, t), dim)| Spot { s, t, dim }).collect();
        spots.serialize(ser)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution() {
        let a = GradedDims::from_slice(&[1, 1]);
        let b = GradedDims::from_slice(&[1, 0, 1]);
        assert_eq!(a.convolve(&b, 10).to_vec(0, 4), vec![1, 1, 1, 1, 0]);
        assert_eq!(a.convolve(&b, 2).to_vec(0, 4), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn collapse() {
        let mut b = BigradedDims::new();
        b.add(1, 1, 1);
        b.add(0, 2, 2);
        assert_eq!(b.total().get(2), 3);
    }
}
