//! Normal forms for lattice polygons: flat, strongly flat and oblique.
//!
//! A polygon is flat along `c` at the edge `[a,b]` when
//! `a·c <= v·c <= b·c` for every other vertex `v`, strongly flat when these
//! inequalities are strict, and oblique at `[a,b]` when `a < v < b` holds
//! coordinatewise.

use num_integer::Integer;
use num_rational::Ratio;

use super::path::{connect_convex_position, in_convex_position};
use crate::error::{Error, Result};
use crate::kernel::{convex_hull, primitive_i64, LatticePoint, Polytope};
use crate::moves::{apply_delete, apply_insert, can_insert, cyclic_vertices, Move, MoveTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatWitness {
    pub c: [i64; 2],
    pub a: LatticePoint,
    pub b: LatticePoint,
}

impl FlatWitness {
    /// Checks the defining inequalities against the vertices of `p`.
    pub fn holds(&self, p: &Polytope, strict: bool) -> bool {
        let (lo, hi) = (self.a.dot(&self.c), self.b.dot(&self.c));
        p.vertices()
            .iter()
            .filter(|v| **v != self.a && **v != self.b)
            .all(|v| {
                let t = v.dot(&self.c);
                if strict {
                    lo < t && t < hi
                } else {
                    lo <= t && t <= hi
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearParams {
    pub c: [i64; 2],
    /// Orthogonal to `c`, both coordinates nonzero, pointing away from the polygon across `E`.
    pub u: [i64; 2],
    pub k: i64,
    /// `(q, φ(q))` for the reflected vertices in chain order.
    pub phi: Vec<(LatticePoint, Ratio<i128>)>,
}

fn require_polygon(p: &Polytope) -> Result<Vec<LatticePoint>> {
    cyclic_vertices(p)
}

fn edges(cyc: &[LatticePoint]) -> impl Iterator<Item = (&LatticePoint, &LatticePoint)> {
    (0..cyc.len()).map(move |i| (&cyc[i], &cyc[(i + 1) % cyc.len()]))
}

/// A consecutive vertex pair `(a,b)` with every other vertex strictly between
/// them in both coordinates.
pub fn is_oblique(p: &Polytope) -> Result<Option<(LatticePoint, LatticePoint)>> {
    monotone_pair(p, [1, 1])
}

/// A consecutive pair `(a,b)` with `s_i a_i < s_i v_i < s_i b_i` for every
/// other vertex `v` and both coordinates `i`.
fn monotone_pair(p: &Polytope, s: [i64; 2]) -> Result<Option<(LatticePoint, LatticePoint)>> {
    let cyc = require_polygon(p)?;
    for (x, y) in edges(&cyc) {
        for (a, b) in [(x, y), (y, x)] {
            let ok = cyc.iter().filter(|v| *v != a && *v != b).all(|v| {
                (0..2).all(|i| {
                    let (a, v, b) = (s[i] * a.coords()[i], s[i] * v.coords()[i], s[i] * b.coords()[i]);
                    a < v && v < b
                })
            });
            if ok {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

fn rot(n: [i64; 2]) -> [i64; 2] {
    [-n[1], n[0]]
}

fn dot2(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

fn diff(a: &LatticePoint, b: &LatticePoint) -> [i64; 2] {
    [a.coords()[0] - b.coords()[0], a.coords()[1] - b.coords()[1]]
}

fn primitive(mut v: [i64; 2]) -> [i64; 2] {
    primitive_i64(&mut v);
    v
}

/// Flatness witness for the edge `[a,b]`, decided on the cone
/// `{c : (v-a)·c >= 0, (b-v)·c >= 0}` through its candidate extreme rays.
fn flat_at(cyc: &[LatticePoint], a: &LatticePoint, b: &LatticePoint, strict: bool) -> Option<[i64; 2]> {
    let normals: Vec<[i64; 2]> = cyc
        .iter()
        .filter(|v| *v != a && *v != b)
        .flat_map(|v| [diff(v, a), diff(b, v)])
        .collect();
    let sat = |c: [i64; 2]| {
        normals.iter().all(|n| {
            let s = dot2(*n, c);
            if strict {
                s > 0
            } else {
                s >= 0
            }
        })
    };
    let mut rays: Vec<[i64; 2]> = Vec::new();
    for n in &normals {
        for r in [rot(*n), rot(rot(rot(*n)))] {
            let r = primitive(r);
            if !rays.contains(&r) && normals.iter().all(|n| dot2(*n, r) >= 0) {
                rays.push(r);
            }
        }
    }
    rays.sort();
    if !strict {
        return rays.first().copied();
    }
    let mut cands: Vec<[i64; 2]> = rays.clone();
    for (i, r) in rays.iter().enumerate() {
        for s in &rays[i + 1..] {
            let sum = [r[0] + s[0], r[1] + s[1]];
            if sum != [0, 0] {
                cands.push(primitive(sum));
            }
        }
    }
    cands.into_iter().find(|c| sat(*c))
}

/// Flatness (or strong flatness) witness, normalized so that `a < b`
/// lexicographically.
pub fn is_flat(p: &Polytope, strict: bool) -> Result<Option<FlatWitness>> {
    let cyc = require_polygon(p)?;
    for (a, b) in edges(&cyc) {
        if let Some(c) = flat_at(&cyc, a, b, strict) {
            let w = if a < b {
                FlatWitness { c, a: a.clone(), b: b.clone() }
            } else {
                FlatWitness { c: [-c[0], -c[1]], a: b.clone(), b: a.clone() }
            };
            debug_assert!(w.holds(p, strict));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Vertices from `a` to `b` along the boundary path avoiding the edge `[a,b]`.
fn chain(cyc: &[LatticePoint], a: &LatticePoint, b: &LatticePoint) -> Vec<LatticePoint> {
    let n = cyc.len();
    let ia = cyc.iter().position(|v| v == a).expect("a is a vertex");
    let forward = cyc[(ia + 1) % n] != *b;
    (0..n)
        .map(|s| {
            let i = if forward { (ia + s) % n } else { (ia + n - s) % n };
            cyc[i].clone()
        })
        .collect()
}

fn is_edge(p: &Polytope, a: &LatticePoint, b: &LatticePoint) -> bool {
    match (p.vertex_index(a), p.vertex_index(b)) {
        (Some(ia), Some(ib)) => !p.facets_at(ia).intersection(p.facets_at(ib)).is_empty(),
        _ => false,
    }
}

/// Outer normal of the edge `[a,b]` of `p`.
fn edge_normal(p: &Polytope, a: &LatticePoint, b: &LatticePoint) -> [i64; 2] {
    let (ia, ib) = (p.vertex_index(a).unwrap(), p.vertex_index(b).unwrap());
    let f = p.facets_at(ia).intersection(p.facets_at(ib)).iter().next().expect("edge");
    let n = p.facets()[f].normal();
    [n[0], n[1]]
}

fn pentagon_cycle(p: &Polytope) -> Result<Vec<LatticePoint>> {
    if p.ambient_dim() != 2 || p.num_vertices() != 5 {
        return Err(Error::NotAPentagon);
    }
    cyclic_vertices(p)
}

/// At most one insertion and one deletion turning a pentagon into a flat one.
pub fn flatten_pentagon(p: &Polytope) -> Result<MoveTrace> {
    let cyc = pentagon_cycle(p)?;
    if is_flat(p, false)?.is_some() {
        return Ok(MoveTrace::new(p.clone()));
    }
    let rev: Vec<LatticePoint> = cyc.iter().rev().cloned().collect();
    for seq in [&cyc, &rev] {
        for r in 0..5 {
            // q[i] plays the role of the (i+1)-th labelled vertex
            let q: Vec<&LatticePoint> = (0..5).map(|i| &seq[(r + i) % 5]).collect();
            let e1 = diff(q[3], q[2]);
            let f = diff(q[4], q[1]);
            let parallel = e1[0] as i128 * f[1] as i128 == e1[1] as i128 * f[0] as i128;
            let cands: Vec<(LatticePoint, &LatticePoint)> = if !parallel {
                vec![(q[2].add(q[4]).sub(q[1]), q[1])]
            } else {
                let x = q[0].add(q[2]).sub(q[3]);
                let y = x.add(q[4]).sub(q[1]);
                vec![(x, q[3]), (y, q[2])]
            };
            for (x, del) in cands {
                if !can_insert(p, &x)? {
                    continue;
                }
                let mid = apply_insert(p, &x)?;
                let Ok(out) = apply_delete(&mid, del) else {
                    continue;
                };
                if is_flat(&out, false)?.is_some() {
                    return Ok(MoveTrace::from_moves(
                        p.clone(),
                        vec![Move::insert(x), Move::delete(del.clone())],
                    ));
                }
            }
        }
    }
    Err(Error::Construction("no flattening move found".into()))
}

/// Removes the edge orthogonal to `c` at the `a` end, if any; returns the
/// new polygon and the new low vertex.
fn fix_end(
    p: &Polytope,
    c: [i64; 2],
    a: &LatticePoint,
    b: &LatticePoint,
    moves: &mut Vec<Move>,
) -> Result<(Polytope, LatticePoint)> {
    let cyc = cyclic_vertices(p)?;
    let ch = chain(&cyc, a, b);
    let (p1, p2, p3) = (&ch[0], &ch[1], &ch[2]);
    if p2.dot(&c) > p1.dot(&c) {
        return Ok((p.clone(), a.clone()));
    }
    let n_e = edge_normal(p, a, b);
    let mut u = primitive(rot(c));
    if dot2(n_e, u) < 0 {
        u = [-u[0], -u[1]];
    }
    let cc = dot2(c, c);
    let steps = Integer::div_floor(&(p3.dot(&c) - p1.dot(&c)), &cc) + 1;
    let attempt = |m: i64| -> Option<(LatticePoint, LatticePoint, Polytope)> {
        let x = p3.add(&LatticePoint::from([m * u[0], m * u[1]]));
        if !can_insert(p, &x).ok()? {
            return None;
        }
        let q = apply_delete(&apply_insert(p, &x).ok()?, p2).ok()?;
        let kk = i64::try_from(steps).ok()?;
        let y = x.sub(&LatticePoint::from([kk * c[0], kk * c[1]]));
        if !can_insert(&q, &y).ok()? {
            return None;
        }
        let r = apply_delete(&apply_insert(&q, &y).ok()?, &x).ok()?;
        // y must replace a as the strict minimum and stay adjacent to b
        let low = y.dot(&c);
        let unique = r.vertices().iter().all(|v| *v == y || v.dot(&c) > low);
        (unique && is_edge(&r, &y, b)).then_some((x, y, r))
    };
    // doubling finds a working distance; the scan below makes it minimal
    let mut bound = 1i64;
    while attempt(bound).is_none() {
        bound = bound
            .checked_mul(2)
            .filter(|b| *b <= 1 << 20)
            .ok_or_else(|| Error::Construction("no far point found".into()))?;
    }
    let (x, y, r) = (1..=bound).find_map(attempt).expect("bound works");
    moves.extend([
        Move::insert(x.clone()),
        Move::delete(p2.clone()),
        Move::insert(y.clone()),
        Move::delete(x),
    ]);
    Ok((r, y))
}

/// Trace from a flat polygon with at least five vertices to a strongly flat one.
pub fn make_strongly_flat(p: &Polytope) -> Result<MoveTrace> {
    if p.ambient_dim() != 2 || p.num_vertices() < 5 {
        return Err(Error::InvalidInput("expected a polygon with at least 5 vertices".into()));
    }
    if is_flat(p, true)?.is_some() {
        return Ok(MoveTrace::new(p.clone()));
    }
    let w = is_flat(p, false)?.ok_or(Error::NotFlat)?;
    let mut moves = Vec::new();
    let (r, low) = fix_end(p, w.c, &w.a, &w.b, &mut moves)?;
    let neg = [-w.c[0], -w.c[1]];
    let (r, high) = fix_end(&r, neg, &w.b, &low, &mut moves)?;
    let done = FlatWitness { c: w.c, a: low, b: high };
    if !done.holds(&r, true) {
        return Err(Error::Construction("result is not strongly flat".into()));
    }
    Ok(MoveTrace::from_moves(p.clone(), moves))
}

/// Least multiple of the common denominator of `phi` for which the
/// consecutive shear displacements dominate the coordinate gaps of `q`.
pub fn shear_multiplier(q: &[LatticePoint], phi: &[Ratio<i128>], u: [i64; 2]) -> i64 {
    let den = phi.iter().fold(1i128, |l, r| l.lcm(r.denom()));
    let ok = |k: i128| {
        (1..q.len()).all(|i| {
            let dphi = (phi[i] - phi[i - 1]) * k;
            (0..2).all(|j| {
                let shift = num_traits::Signed::abs(&(dphi * u[j] as i128));
                let gap = Ratio::from_integer((q[i].coords()[j] - q[i - 1].coords()[j]).abs() as i128);
                shift > gap
            })
        })
    };
    let mut k = den;
    while !ok(k) {
        k += den;
    }
    i64::try_from(k).expect("shear multiplier fits")
}

/// Shear parameters and the sheared reflection `ψ(Q)` for a strongly flat `p`.
///
/// `ψ(Q)` is monotone along `u` and is oblique exactly when `u1 u2 > 0`.
pub fn shear_params(p: &Polytope) -> Result<(ShearParams, Polytope)> {
    let w = is_flat(p, true)?.ok_or(Error::NotStronglyFlat)?;
    shear_with(p, w)
}

fn shear_with(p: &Polytope, w: FlatWitness) -> Result<(ShearParams, Polytope)> {
    let (mut a, mut b, mut c) = (w.a, w.b, w.c);
    if c[0] == 0 || c[1] == 0 {
        // perturb off the axis, preferring the sign that makes u1 u2 > 0
        let axis = if c[0] == 0 { 0 } else { 1 };
        let pref = -(c[0] + c[1]).signum();
        let fixed = (1i64..)
            .flat_map(|t| [pref, -pref].map(move |s| (t, s)))
            .map(|(t, s)| {
                let mut e = [t * c[0], t * c[1]];
                e[axis] += s;
                e
            })
            .find(|e| FlatWitness { c: *e, a: a.clone(), b: b.clone() }.holds(p, true))
            .expect("strict inequalities survive a long enough perturbation");
        c = fixed;
    }
    if c[1] < 0 {
        c = [-c[0], -c[1]];
        std::mem::swap(&mut a, &mut b);
    }
    let cyc = cyclic_vertices(p)?;
    let ch = chain(&cyc, &a, &b);
    let n_e = edge_normal(p, &a, &b);
    let mut u = primitive(rot(c));
    if dot2(n_e, u) < 0 {
        u = [-u[0], -u[1]];
    }
    let mid = a.add(&b);
    let q: Vec<LatticePoint> = ch.iter().map(|v| mid.sub(v)).collect();
    let phi: Vec<Ratio<i128>> = q
        .iter()
        .map(|x| {
            let r = diff(x, &a);
            Ratio::new(r[1] as i128 * u[0] as i128 - r[0] as i128 * u[1] as i128, u[0] as i128)
        })
        .collect();
    let k = shear_multiplier(&q, &phi, u);
    let image: Vec<LatticePoint> = q
        .iter()
        .zip(&phi)
        .map(|(x, f)| {
            let s = *f * k as i128;
            if !s.is_integer() {
                return Err(Error::Construction("shear image is not a lattice point".into()));
            }
            let s = i64::try_from(s.to_integer()).map_err(|_| Error::Overflow)?;
            Ok(x.add(&LatticePoint::from([s * u[0], s * u[1]])))
        })
        .collect::<Result<_>>()?;
    let target = convex_hull(&image, 2)?;
    let s = [u[0].signum(), u[1].signum()];
    if target.num_vertices() != p.num_vertices() || monotone_pair(&target, s)?.is_none() {
        return Err(Error::Construction("sheared polygon is not monotone along the shear".into()));
    }
    let params = ShearParams {
        c,
        u,
        k,
        phi: q.into_iter().zip(phi).collect(),
    };
    Ok((params, target))
}

fn shear_step(p: &Polytope, w: FlatWitness) -> Result<(MoveTrace, Polytope)> {
    let (_, target) = shear_with(p, w)?;
    let mut union = p.vertices().to_vec();
    union.extend_from_slice(target.vertices());
    if !in_convex_position(&union, 2)? {
        return Err(Error::Construction(
            "polygon and its sheared reflection are not in convex position".into(),
        ));
    }
    Ok((connect_convex_position(p, &target)?, target))
}

/// Trace from a strongly flat polygon to an oblique one with as many vertices.
///
/// A witness with `c1 c2 > 0` shears into a polygon that decreases in one
/// coordinate while increasing in the other; that polygon is strongly flat
/// along `(1,-1)`, and a second shear makes it oblique.
pub fn shear_to_oblique(p: &Polytope) -> Result<MoveTrace> {
    let w = is_flat(p, true)?.ok_or(Error::NotStronglyFlat)?;
    let (first, mid) = shear_step(p, w)?;
    if is_oblique(&mid)?.is_some() {
        return Ok(first);
    }
    let (a, b) = monotone_pair(&mid, [1, -1])?
        .ok_or_else(|| Error::Construction("sheared polygon is not monotone".into()))?;
    let (second, end) = shear_step(&mid, FlatWitness { c: [1, -1], a, b })?;
    if is_oblique(&end)?.is_none() {
        return Err(Error::Construction("sheared polygon is not oblique".into()));
    }
    let mut moves = first.moves().to_vec();
    moves.extend_from_slice(second.moves());
    Ok(MoveTrace::from_moves(p.clone(), moves))
}
