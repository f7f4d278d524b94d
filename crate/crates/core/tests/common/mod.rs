//! Brute-force geometry used as a reference for the library.
//!
//! Nothing here touches the library's hull, facets or cones. Hull membership
//! is decided by triangulation: a point lies in conv(T) iff it lies in some
//! simplex spanned by affinely independent points of T, tested with exact
//! `i128` determinant signs after projecting onto coordinates on which aff(T)
//! is injective.

#![allow(dead_code)]

use std::cmp::Ordering;

pub type Pt = Vec<i64>;

/// Sign of an integer determinant by fraction-free elimination.
pub fn det_sign(mut m: Vec<Vec<i128>>) -> Ordering {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return Ordering::Equal;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]).cmp(&0)
}

/// Rank of a list of integer vectors.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = *x * a - y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn diffs(points: &[&Pt]) -> Vec<Vec<i128>> {
    points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| (*a - *b) as i128).collect())
        .collect()
}

/// Dimension of the affine hull; -1 for the empty set.
pub fn affine_rank(points: &[&Pt]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    rank(&diffs(points)) as i64
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..=n - (r - cur.len()) {
            cur.push(i);
            if go(i + 1, n, r, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    r <= n && go(0, n, r, &mut Vec::with_capacity(r), &mut f)
}

/// Is `x` in the convex hull of `t`?
pub fn in_hull(x: &Pt, t: &[&Pt]) -> bool {
    if t.is_empty() {
        return false;
    }
    let r = affine_rank(t) as usize;
    let mut with_x: Vec<&Pt> = t.to_vec();
    with_x.push(x);
    if affine_rank(&with_x) as usize != r {
        return false;
    }
    if r == 0 {
        return x == t[0];
    }
    let d = x.len();
    let dir = diffs(t);
    // Coordinates on which the direction space projects injectively.
    let mut axes = Vec::new();
    combinations(d, r, |c| {
        let proj: Vec<Vec<i128>> = dir.iter().map(|v| c.iter().map(|&i| v[i]).collect()).collect();
        if rank(&proj) == r {
            axes = c.to_vec();
            true
        } else {
            false
        }
    });
    let project = |p: &Pt| -> Vec<i128> { axes.iter().map(|&i| p[i] as i128).collect() };
    let pts: Vec<Vec<i128>> = t.iter().map(|p| project(p)).collect();
    let px = project(x);
    let row = |p: &[i128]| -> Vec<i128> {
        let mut v = vec![1i128];
        v.extend_from_slice(p);
        v
    };
    combinations(pts.len(), r + 1, |c| {
        let base: Vec<Vec<i128>> = c.iter().map(|&i| row(&pts[i])).collect();
        let s = det_sign(base.clone());
        if s == Ordering::Equal {
            return false;
        }
        (0..=r).all(|i| {
            let mut m = base.clone();
            m[i] = row(&px);
            let si = det_sign(m);
            si == s || si == Ordering::Equal
        })
    })
}

fn others(points: &[Pt], skip: usize) -> Vec<&Pt> {
    points.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| p).collect()
}

/// Vertices of conv(points), sorted; duplicates are collapsed first.
pub fn vertices(points: &[Pt]) -> Vec<Pt> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    (0..pts.len())
        .filter(|&i| !in_hull(&pts[i], &others(&pts, i)))
        .map(|i| pts[i].clone())
        .collect()
}

pub fn full_dimensional(points: &[Pt], d: usize) -> bool {
    affine_rank(&points.iter().collect::<Vec<_>>()) == d as i64
}

/// Is the (deduplicated) set the vertex set of a full-dimensional polytope?
pub fn is_vertex_set(points: &[Pt], d: usize) -> bool {
    full_dimensional(points, d) && (0..points.len()).all(|i| !in_hull(&points[i], &others(points, i)))
}

/// Insertion by definition: the hull of V ∪ {x} has vertex set V ∪ {x}.
pub fn insertable(vs: &[Pt], x: &Pt) -> bool {
    let refs: Vec<&Pt> = vs.iter().collect();
    if in_hull(x, &refs) {
        return false;
    }
    (0..vs.len()).all(|i| {
        let mut t = others(vs, i);
        t.push(x);
        !in_hull(&vs[i], &t)
    })
}

/// Deletion by definition: v is a vertex and the rest spans the space.
pub fn deletable(vs: &[Pt], v: &Pt, d: usize) -> bool {
    vs.iter().position(|w| w == v).is_some_and(|i| affine_rank(&others(vs, i)) == d as i64)
}

/// x lies in the vertex cone at v iff inserting x would destroy v.
pub fn in_cone(vs: &[Pt], v: &Pt, x: &Pt) -> bool {
    if x == v {
        return true;
    }
    let i = vs.iter().position(|w| w == v).expect("v is a vertex");
    let mut t = others(vs, i);
    t.push(x);
    in_hull(v, &t)
}

/// All lattice points of `[0,k]^d`, lexicographic.
pub fn box_pts(d: usize, k: i64) -> Vec<Pt> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Pt| {
                (0..=k).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// All lattice points of the box `[lo, hi]`.
pub fn range_pts(lo: &[i64], hi: &[i64]) -> Vec<Pt> {
    let mut out = vec![vec![]];
    for (l, h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p: Pt| {
                (*l..=*h).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Same key format as graph exports: `d|x,y;x,y;...` over sorted vertices.
pub fn key(d: usize, vs: &[Pt]) -> String {
    let mut vs = vs.to_vec();
    vs.sort();
    let body: Vec<String> = vs
        .iter()
        .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("{d}|{}", body.join(";"))
}

/// Vertex sets of all full-dimensional lattice polytopes in `[0,k]^d`.
pub fn census(d: usize, k: i64) -> Vec<Vec<Pt>> {
    use rayon::prelude::*;
    let pts = box_pts(d, k);
    let n = pts.len();
    assert!(n <= 20, "subset scan too large");
    (0u32..(1u32 << n))
        .into_par_iter()
        .filter(|m| m.count_ones() as usize > d)
        .filter_map(|m| {
            let s: Vec<Pt> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| pts[i].clone()).collect();
            // Every 0/1 point is a cube vertex, so any subset is in convex position.
            let ok = if k == 1 { full_dimensional(&s, d) } else { is_vertex_set(&s, d) };
            ok.then_some(s)
        })
        .collect()
}

pub fn coords(p: &lattice_moves::LatticePoint) -> Pt {
    p.coords().to_vec()
}

pub fn vertex_coords(p: &lattice_moves::Polytope) -> Vec<Pt> {
    p.vertices().iter().map(coords).collect()
}
