use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of the integer lattice. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut c = vec![0; dim];
        c[axis] = 1;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn add(&self, o: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: i64) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, v: &[i64]) -> i128 {
        self.0
            .iter()
            .zip(v)
            .map(|(a, b)| *a as i128 * *b as i128)
            .sum()
    }

    /// Copy with coordinate `axis` replaced by `value`.
    pub fn with(&self, axis: usize, value: i64) -> LatticePoint {
        let mut c = self.0.clone();
        c[axis] = value;
        LatticePoint(c)
    }

    /// Copy with coordinate `axis` removed.
    pub fn drop_axis(&self, axis: usize) -> LatticePoint {
        let mut c = self.0.clone();
        c.remove(axis);
        LatticePoint(c)
    }

    /// Copy with `value` inserted at position `axis`.
    pub fn insert_axis(&self, axis: usize, value: i64) -> LatticePoint {
        let mut c = self.0.clone();
        c.insert(axis, value);
        LatticePoint(c)
    }

    /// Concatenation `self × o`.
    pub fn concat(&self, o: &LatticePoint) -> LatticePoint {
        let mut c = self.0.clone();
        c.extend_from_slice(&o.0);
        LatticePoint(c)
    }

    pub fn in_box(&self, k: i64) -> bool {
        self.0.iter().all(|c| (0..=k).contains(c))
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All lattice points of `[0,k]^d` in lexicographic order.
pub fn box_points(dim: usize, k: i64) -> impl Iterator<Item = LatticePoint> {
    let side = (k + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![0i64; dim];
        for slot in c.iter_mut().rev() {
            *slot = (idx % side) as i64;
            idx /= side;
        }
        LatticePoint(c)
    })
}

/// Lattice points of the box `∏[lo_i, hi_i]` in lexicographic order.
pub fn range_points(lo: &[i64], hi: &[i64]) -> Vec<LatticePoint> {
    let mut out = vec![Vec::with_capacity(lo.len())];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::with_capacity(out.len() * (h - l + 1).max(0) as usize);
        for prefix in &out {
            for v in *l..=*h {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(LatticePoint).collect()
}
