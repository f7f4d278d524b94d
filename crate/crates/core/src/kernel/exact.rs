//! Exact integer arithmetic.
//!
//! Hot paths run on `i128` with checked operations; any overflow aborts the
//! computation with `None` and the caller reruns it on `BigInt`. Results are
//! therefore always exact, whatever the magnitudes involved.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Ring operations needed by the kernel. Every operation may fail with `None`
/// on overflow; the arbitrary-precision implementation never fails.
pub(crate) trait Exact: Clone + Debug + Ord + Sized {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn sign(&self) -> Ordering;
    /// Non-negative gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, o: &Self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
    fn to_i64(&self) -> Option<i64>;

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        // gcd of two values of magnitude <= 2^127 fits unless both are i128::MIN
        i128::try_from(a).unwrap_or(i128::MAX)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sign(&self) -> Ordering {
        if self.is_negative() {
            Ordering::Less
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

/// Runs `f` on `i128` and falls back to `BigInt` when it overflows.
pub(crate) fn with_fallback<T>(
    fast: impl FnOnce() -> Option<T>,
    slow: impl FnOnce() -> Option<T>,
) -> T {
    fast().or_else(slow).expect("arbitrary-precision path cannot overflow")
}

pub(crate) fn dot<S: Exact>(a: &[S], b: &[S]) -> Option<S> {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Some(acc)
}

/// Sign of `a·x - b` for 64-bit data, exact.
pub fn affine_sign(a: &[i64], x: &[i64], b: i64) -> Ordering {
    let fast = || -> Option<Ordering> {
        let mut acc: i128 = 0;
        for (u, v) in a.iter().zip(x) {
            acc = acc.checked_add((*u as i128) * (*v as i128))?;
        }
        Some(acc.checked_sub(b as i128)?.cmp(&0))
    };
    fast().unwrap_or_else(|| {
        let acc: BigInt = a
            .iter()
            .zip(x)
            .map(|(u, v)| BigInt::from(*u) * BigInt::from(*v))
            .sum();
        (acc - BigInt::from(b)).sign_ordering()
    })
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        Exact::sign(self)
    }
}

/// Fraction-free determinant (Bareiss). `m` is consumed as scratch space.
pub(crate) fn determinant<S: Exact>(mut m: Vec<Vec<S>>) -> Option<S> {
    let n = m.len();
    if n == 0 {
        return Some(S::from_i64(1));
    }
    let mut negate = false;
    let mut prev = S::from_i64(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Some(S::zero());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        Some(det)
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub(crate) fn rank<S: Exact>(mut m: Vec<Vec<S>>) -> Option<usize> {
    let rows = m.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev = S::from_i64(1);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = m[i][j].mul(&m[r][c])?.sub(&m[i][c].mul(&m[r][j])?)?;
                m[i][j] = t.div_exact(&prev);
            }
            m[i][c] = S::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Some(r)
}

/// Divides a vector by the gcd of its entries (no-op on the zero vector).
pub(crate) fn make_primitive<S: Exact>(v: &mut [S]) {
    let g = v.iter().fold(S::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == S::from_i64(1) {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}

/// Divides a 64-bit vector by the gcd of its entries.
pub fn primitive_i64(v: &mut [i64]) {
    let g = v
        .iter()
        .fold(0u64, |g, x| num_integer::Integer::gcd(&g, &x.unsigned_abs()));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g as i64;
        }
    }
}

/// Integer vector orthogonal to `d - 1` independent vectors in dimension `d`
/// (generalized cross product via signed maximal minors).
pub(crate) fn orthogonal_complement<S: Exact>(rows: &[Vec<S>], d: usize) -> Option<Vec<S>> {
    debug_assert_eq!(rows.len() + 1, d);
    let mut out = Vec::with_capacity(d);
    for skip in 0..d {
        let minor: Vec<Vec<S>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = determinant(minor)?;
        out.push(if skip % 2 == 0 { det } else { det.neg()? });
    }
    Some(out)
}

/// Primitive integer normal of the hyperplane spanned by `d - 1` independent
/// directions; `None` if they are dependent or the result overflows `i64`.
pub(crate) fn normal_vector(rows: &[Vec<i64>], d: usize) -> Option<Vec<i64>> {
    let n = with_fallback(
        || {
            let rows: Vec<Vec<i128>> = rows.iter().map(|r| lift(r)).collect();
            let mut n = orthogonal_complement(&rows, d)?;
            make_primitive(&mut n);
            Some(n.iter().map(Exact::to_i64).collect::<Option<Vec<_>>>())
        },
        || {
            let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| lift(r)).collect();
            let mut n = orthogonal_complement(&rows, d)?;
            make_primitive(&mut n);
            Some(n.iter().map(Exact::to_i64).collect::<Option<Vec<_>>>())
        },
    )?;
    (!n.iter().all(|x| *x == 0)).then_some(n)
}

pub(crate) fn lift<S: Exact>(v: &[i64]) -> Vec<S> {
    v.iter().map(|x| S::from_i64(*x)).collect()
}

/// Small growable bitset over point or facet indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn with_capacity(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn intersection(&self, o: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(o.words.iter().chain(std::iter::repeat(&0)))
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersects(&self, o: &Bits) -> bool {
        self.words.iter().zip(&o.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !o.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}
