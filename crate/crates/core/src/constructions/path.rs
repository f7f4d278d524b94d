//! Move sequences between simplices and between polytopes whose vertices
//! are jointly in convex position.

use std::collections::BTreeSet;

use super::families::{corner_of_dim, corner_vertices};
use super::simplex::{facet_frames, find_insertion_with_frame};
use crate::error::{Error, Result};
use crate::kernel::{convex_hull, LatticePoint, Polytope};
use crate::moves::{apply_move, can_delete, can_insert, Move, MoveTrace};

/// Current polytope plus the moves applied so far.
struct Walk {
    cur: Polytope,
    moves: Vec<Move>,
}

impl Walk {
    fn new(p: &Polytope) -> Self {
        Walk {
            cur: p.clone(),
            moves: Vec::new(),
        }
    }

    fn step(&mut self, m: Move) -> Result<()> {
        self.cur = apply_move(&self.cur, &m)?;
        self.moves.push(m);
        Ok(())
    }

    fn insert(&mut self, x: LatticePoint) -> Result<()> {
        self.step(Move::insert(x))
    }

    fn delete(&mut self, v: LatticePoint) -> Result<()> {
        self.step(Move::delete(v))
    }
}

fn check(s: &Polytope, k: i64) -> Result<()> {
    if !s.is_simplex() {
        return Err(Error::NotASimplex);
    }
    if s.ambient_dim() < 2 {
        return Err(Error::UnsupportedDimension(s.ambient_dim()));
    }
    if k < 1 || !s.in_box(k) {
        return Err(Error::OutOfBox(k));
    }
    Ok(())
}

/// Alternating insert/delete trace from the simplex `s` to the corner
/// simplex, staying in `[0,k]^d` with `d+1` or `d+2` vertices throughout.
pub fn simplex_to_corner_path(s: &Polytope, k: i64) -> Result<MoveTrace> {
    check(s, k)?;
    let mut w = Walk::new(s);
    to_corner(&mut w, k)?;
    Ok(MoveTrace::from_moves(s.clone(), w.moves))
}

fn to_corner(w: &mut Walk, k: i64) -> Result<()> {
    let d = w.cur.ambient_dim();
    if w.cur == corner_of_dim(d) {
        return Ok(());
    }
    let (axis, value) = raise_to_facet(w, k)?;
    if d == 2 {
        return planar_script(w, axis, value);
    }

    let apex = w
        .cur
        .vertices()
        .iter()
        .find(|v| v.coords()[axis] != value)
        .expect("simplex has a vertex off the facet")
        .clone();
    // bring the base into the corner of its cube face
    on_face(w, k, axis, value)?;

    let p = LatticePoint::origin(d).with(axis, apex.coords()[axis]);
    if p != apex {
        w.insert(p)?;
        w.delete(apex)?;
    }

    let base = LatticePoint::origin(d).with(axis, value);
    let apex2 = (0..d)
        .filter(|&j| j != axis)
        .map(|j| base.add(&LatticePoint::unit(d, j)))
        .min()
        .expect("d >= 3");
    let j = (0..d).find(|&j| j != axis && apex2.coords()[j] == 1).expect("unit offset");
    on_face(w, k, j, 0)?;
    let e = LatticePoint::unit(d, j);
    if apex2 != e {
        w.insert(e)?;
        w.delete(apex2)?;
    }
    debug_assert_eq!(w.cur, corner_of_dim(d));
    Ok(())
}

/// Runs the lower-dimensional path on the facet `x[axis] = value` of the
/// current pyramid, lifting every move back.
fn on_face(w: &mut Walk, k: i64, axis: usize, value: i64) -> Result<()> {
    let d = w.cur.ambient_dim();
    let face: Vec<LatticePoint> = w
        .cur
        .vertices()
        .iter()
        .filter(|v| v.coords()[axis] == value)
        .map(|v| v.drop_axis(axis))
        .collect();
    let face = convex_hull(&face, d - 1)?;
    let mut inner = Walk::new(&face);
    to_corner(&mut inner, k)?;
    for m in inner.moves {
        w.step(Move {
            kind: m.kind,
            point: m.point.insert_axis(axis, value),
        })?;
    }
    Ok(())
}

/// Inserts and deletes until some facet of the bounding box carries a
/// facet of the simplex; returns that box facet as `(axis, value)`.
fn raise_to_facet(w: &mut Walk, k: i64) -> Result<(usize, i64)> {
    let d = w.cur.ambient_dim();
    loop {
        let frames = facet_frames(&w.cur, k)?;
        if let Some(fr) = frames.iter().find(|f| f.dim_f() == d - 1) {
            return Ok((fr.facet.axis, fr.value));
        }
        let (x, fr) = find_insertion_with_frame(&w.cur, k)?;
        w.insert(x)?;
        let (axis, value) = (fr.facet.axis, fr.value);
        let v = w
            .cur
            .vertices()
            .iter()
            .filter(|v| v.coords()[axis] != value)
            .find(|v| can_delete(&w.cur, v).unwrap_or(false))
            .cloned()
            .ok_or_else(|| Error::Construction("no deletable vertex off the enlarged face".into()))?;
        w.delete(v)?;
    }
}

/// Triangle with an edge on the line `x[axis] = value` to the corner triangle.
fn planar_script(w: &mut Walk, axis: usize, value: i64) -> Result<()> {
    let other = 1 - axis;
    let on: Vec<LatticePoint> = w
        .cur
        .vertices()
        .iter()
        .filter(|v| v.coords()[axis] == value)
        .cloned()
        .collect();
    let apex = w
        .cur
        .vertices()
        .iter()
        .find(|v| v.coords()[axis] != value)
        .expect("triangle apex")
        .clone();

    // quadrilateral with three axis-parallel edges, then a right triangle
    let feet: Vec<i64> = on.iter().map(|v| v.coords()[other]).collect();
    if !feet.contains(&apex.coords()[other]) {
        let mut cands: Vec<LatticePoint> = feet.iter().map(|&f| apex.with(other, f)).collect();
        cands.sort();
        let p = cands
            .into_iter()
            .find(|p| can_insert(&w.cur, p).unwrap_or(false))
            .ok_or_else(|| Error::Construction("no axis-aligned insertion beside the apex".into()))?;
        w.insert(p)?;
        w.delete(apex)?;
    }

    // right angle at the top-right corner of the bounding rectangle
    let (lo, hi) = w.cur.bounding_box();
    let corners = [[lo[0], lo[1]], [lo[0], hi[1]], [hi[0], lo[1]], [hi[0], hi[1]]].map(LatticePoint::from);
    let missing = corners
        .iter()
        .find(|c| !w.cur.is_vertex(c))
        .expect("right triangle misses one rectangle corner")
        .clone();
    if missing != corners[0] {
        w.insert(missing)?;
        w.delete(corners[0].clone())?;
    }

    let top_right = corners[3].clone();
    let mut moves = Vec::new();
    if !replace_vertices(&w.cur, &top_right, &mut moves, 6) {
        return Err(Error::Construction("corner replacement failed".into()));
    }
    for m in moves {
        w.step(m)?;
    }
    Ok(())
}

/// Depth-first search for alternating moves inserting the corner vertices
/// (origin first) and deleting the others (`last` as late as possible).
fn replace_vertices(cur: &Polytope, last: &LatticePoint, out: &mut Vec<Move>, budget: usize) -> bool {
    let target = corner_vertices(2);
    if cur.vertices() == target.as_slice() {
        return true;
    }
    if budget < 2 {
        return false;
    }
    let mut ins: Vec<&LatticePoint> = target.iter().filter(|t| !cur.is_vertex(t)).collect();
    ins.sort_by_key(|t| (t.coords().iter().sum::<i64>(), (*t).clone()));
    for x in ins {
        let Ok(mid) = crate::moves::apply_insert(cur, x) else {
            continue;
        };
        let mut dels: Vec<&LatticePoint> = mid.vertices().iter().filter(|v| !target.contains(v)).collect();
        dels.sort_by_key(|v| *v == last);
        for v in dels {
            let Ok(next) = crate::moves::apply_delete(&mid, v) else {
                continue;
            };
            out.push(Move::insert(x.clone()));
            out.push(Move::delete(v.clone()));
            if replace_vertices(&next, last, out, budget - 2) {
                return true;
            }
            out.truncate(out.len() - 2);
        }
    }
    false
}

/// Whether every point of the set is a vertex of its convex hull.
pub fn in_convex_position(points: &[LatticePoint], d: usize) -> Result<bool> {
    let set: BTreeSet<&LatticePoint> = points.iter().collect();
    let hull = convex_hull(points, d)?;
    Ok(hull.num_vertices() == set.len())
}

/// Trace from `p` to `q` when their vertex sets are jointly in convex
/// position and their vertex counts differ by at most one.
pub fn connect_convex_position(p: &Polytope, q: &Polytope) -> Result<MoveTrace> {
    let d = p.ambient_dim();
    if q.ambient_dim() != d {
        return Err(Error::InvalidInput("polytopes of different dimensions".into()));
    }
    let mut union = p.vertices().to_vec();
    union.extend_from_slice(q.vertices());
    if !in_convex_position(&union, d)? {
        return Err(Error::NotInConvexPosition);
    }
    let (np, nq) = (p.num_vertices(), q.num_vertices());
    if np.abs_diff(nq) > 1 {
        return Err(Error::InvalidInput(format!(
            "vertex counts {np} and {nq} differ by more than one"
        )));
    }
    let lo = np.min(nq);
    let target: BTreeSet<&LatticePoint> = q.vertices().iter().collect();
    let mut w = Walk::new(p);
    while &w.cur != q {
        if w.cur.num_vertices() > lo {
            let v = first_deletable_outside(&w.cur, &target)
                .ok_or_else(|| Error::Construction("no deletable vertex outside the target".into()))?;
            w.delete(v)?;
            continue;
        }
        let missing: Vec<LatticePoint> = q.vertices().iter().filter(|v| !w.cur.is_vertex(v)).cloned().collect();
        let mut progressed = false;
        for x in missing {
            let mid = crate::moves::apply_insert(&w.cur, &x)?;
            if &mid == q || first_deletable_outside(&mid, &target).is_some() {
                w.insert(x)?;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::Construction("stuck while exchanging vertices".into()));
        }
    }
    Ok(MoveTrace::from_moves(p.clone(), w.moves))
}

fn first_deletable_outside(p: &Polytope, target: &BTreeSet<&LatticePoint>) -> Option<LatticePoint> {
    p.vertices()
        .iter()
        .filter(|v| !target.contains(v))
        .find(|v| can_delete(p, v).unwrap_or(false))
        .cloned()
}
