//! Insertion and deletion moves.
//!
//! For a vertex `v` of `P`, the cone `C_v(P)` is the intersection of the
//! closed outer half-spaces of the facets incident to `v`; inserting `x`
//! destroys `v` exactly when `x ∈ C_v(P)`. Hence `x` can be inserted iff it
//! lies outside `P` and outside every vertex cone.

mod cells;
mod trace;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use cells::{cyclic_vertices, insertable_cells_2d, Cell2d, CellLattice};
pub use trace::MoveTrace;

use crate::error::{Error, Result};
use crate::kernel::{box_points, convex_hull, key_of, Bits, HalfSpace, LatticePoint, Polytope};

/// Vertex cone `C_v(P)`: the outer closed half-spaces of the facets at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: LatticePoint,
    pub halfspaces: Vec<HalfSpace>,
}

impl Cone {
    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Insert,
    Delete,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub point: LatticePoint,
}

impl Move {
    pub fn insert(point: LatticePoint) -> Self {
        Move {
            kind: MoveKind::Insert,
            point,
        }
    }

    pub fn delete(point: LatticePoint) -> Self {
        Move {
            kind: MoveKind::Delete,
            point,
        }
    }

    /// Vertex list after the move, without any validity check.
    pub fn resulting_vertices(&self, p: &Polytope) -> Vec<LatticePoint> {
        let mut v = p.vertices().to_vec();
        match self.kind {
            MoveKind::Insert => {
                let at = v.binary_search(&self.point).unwrap_or_else(|i| i);
                v.insert(at, self.point.clone());
            }
            MoveKind::Delete => v.retain(|u| u != &self.point),
        }
        v
    }

    pub fn inverse(&self) -> Move {
        match self.kind {
            MoveKind::Insert => Move::delete(self.point.clone()),
            MoveKind::Delete => Move::insert(self.point.clone()),
        }
    }
}

fn vertex_index(p: &Polytope, v: &LatticePoint) -> Result<usize> {
    p.vertex_index(v)
        .ok_or_else(|| Error::NotAVertex(v.to_string()))
}

pub fn vertex_cone(p: &Polytope, v: &LatticePoint) -> Result<Cone> {
    let i = vertex_index(p, v)?;
    Ok(Cone {
        apex: v.clone(),
        halfspaces: p
            .facets_at(i)
            .iter()
            .map(|f| p.facets()[f].flipped())
            .collect(),
    })
}

/// Facets having `x` strictly on their inner side, plus whether `x` is
/// strictly outside some facet.
fn facet_signs(p: &Polytope, x: &LatticePoint) -> (Bits, bool) {
    let mut inner = Bits::with_capacity(p.facets().len());
    let mut outside = false;
    for (i, f) in p.facets().iter().enumerate() {
        match f.side(x) {
            Ordering::Less => inner.insert(i),
            Ordering::Greater => outside = true,
            Ordering::Equal => {}
        }
    }
    (inner, outside)
}

pub(crate) fn insertable_unchecked(p: &Polytope, x: &LatticePoint) -> bool {
    let (inner, outside) = facet_signs(p, x);
    // x lies in C_v iff none of the facets at v has x strictly inside
    outside && (0..p.num_vertices()).all(|v| p.facets_at(v).intersects(&inner))
}

pub fn can_insert(p: &Polytope, x: &LatticePoint) -> Result<bool> {
    p.check_point(x)?;
    Ok(insertable_unchecked(p, x))
}

pub(crate) fn deletable_index(p: &Polytope, i: usize) -> bool {
    // not deletable iff some facet carries every other vertex (a pyramid with apex i)
    let n = p.num_vertices();
    !(0..p.facets().len()).any(|f| {
        let on = p.vertices_on(f);
        !on.contains(i) && on.len() == n - 1
    })
}

pub fn can_delete(p: &Polytope, v: &LatticePoint) -> Result<bool> {
    let i = vertex_index(p, v)?;
    Ok(deletable_index(p, i))
}

pub fn apply_insert(p: &Polytope, x: &LatticePoint) -> Result<Polytope> {
    if !can_insert(p, x)? {
        return Err(Error::IllegalMove(format!("{x} cannot be inserted")));
    }
    let mut pts = p.vertices().to_vec();
    pts.push(x.clone());
    let q = convex_hull(&pts, p.ambient_dim())?;
    debug_assert_eq!(q.num_vertices(), p.num_vertices() + 1);
    Ok(q)
}

pub fn apply_delete(p: &Polytope, v: &LatticePoint) -> Result<Polytope> {
    let i = p
        .vertex_index(v)
        .ok_or_else(|| Error::IllegalMove(format!("{v} is not a vertex")))?;
    if !deletable_index(p, i) {
        return Err(Error::IllegalMove(format!("{v} cannot be deleted")));
    }
    let pts: Vec<_> = p.vertices().iter().filter(|u| *u != v).cloned().collect();
    convex_hull(&pts, p.ambient_dim())
}

pub fn apply_move(p: &Polytope, m: &Move) -> Result<Polytope> {
    match m.kind {
        MoveKind::Insert => apply_insert(p, &m.point),
        MoveKind::Delete => apply_delete(p, &m.point),
    }
}

pub fn deletable_vertices(p: &Polytope) -> Vec<LatticePoint> {
    (0..p.num_vertices())
        .filter(|&i| deletable_index(p, i))
        .map(|i| p.vertices()[i].clone())
        .collect()
}

fn check_box(p: &Polytope, k: i64) -> Result<()> {
    if k < 1 || !p.in_box(k) {
        return Err(Error::OutOfBox(k));
    }
    Ok(())
}

pub fn insertable_points(p: &Polytope, k: i64) -> Result<Vec<LatticePoint>> {
    check_box(p, k)?;
    Ok(box_points(p.ambient_dim(), k)
        .filter(|x| insertable_unchecked(p, x))
        .collect())
}

fn filter_allows(filter: Option<&BTreeSet<usize>>, n: usize) -> bool {
    filter.is_none_or(|f| f.contains(&n))
}

/// All single moves that stay inside `[0,k]^d` (and inside `filter`, which
/// applies to the vertex counts of both endpoints). Deletions come first in
/// vertex order, then insertions in lexicographic point order.
pub fn neighbor_moves(
    p: &Polytope,
    k: i64,
    filter: Option<&BTreeSet<usize>>,
) -> Result<Vec<Move>> {
    check_box(p, k)?;
    let n = p.num_vertices();
    let mut out = Vec::new();
    if !filter_allows(filter, n) {
        return Ok(out);
    }
    if filter_allows(filter, n - 1) {
        out.extend(deletable_vertices(p).into_iter().map(Move::delete));
    }
    if filter_allows(filter, n + 1) {
        out.extend(
            box_points(p.ambient_dim(), k)
                .filter(|x| insertable_unchecked(p, x))
                .map(Move::insert),
        );
    }
    Ok(out)
}

/// Neighbors of `p` in the move graph on `[0,k]^d`, as `(move, result)`.
pub fn neighbors_in_box(
    p: &Polytope,
    k: i64,
    filter: Option<&BTreeSet<usize>>,
) -> Result<Vec<(Move, Polytope)>> {
    neighbor_moves(p, k, filter)?
        .into_iter()
        .map(|m| {
            let q = apply_move(p, &m)?;
            Ok((m, q))
        })
        .collect()
}

/// Canonical key of the polytope reached by a valid move, without a hull.
pub fn neighbor_key(p: &Polytope, m: &Move) -> String {
    key_of(p.ambient_dim(), &m.resulting_vertices(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::affine_dimension;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    fn poly(v: &[&[i64]]) -> Polytope {
        let p = pts(v);
        let d = p[0].dim();
        convex_hull(&p, d).unwrap()
    }

    fn square() -> Polytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    fn corner() -> Polytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1]])
    }

    fn square_pyramid() -> Polytope {
        poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn cone_of_square_corner() {
        let c = vertex_cone(&square(), &LatticePoint::from([0, 0])).unwrap();
        let mut hs: Vec<_> = c.halfspaces.iter().map(|h| (h.normal().to_vec(), h.offset())).collect();
        hs.sort();
        assert_eq!(hs, vec![(vec![0, 1], 0), (vec![1, 0], 0)]);
        assert!(c.contains(&LatticePoint::from([-1, -2])));
        assert!(!c.contains(&LatticePoint::from([-1, 1])));
        assert!(matches!(
            vertex_cone(&square(), &LatticePoint::from([2, 2])),
            Err(Error::NotAVertex(_))
        ));
    }

    #[test]
    fn nothing_inserts_in_the_unit_square() {
        let sq = square();
        for x in crate::kernel::range_points(&[-4, -4], &[5, 5]) {
            assert!(!can_insert(&sq, &x).unwrap(), "{x}");
        }
    }

    #[test]
    fn corner_triangle_accepts_the_fourth_corner() {
        assert!(can_insert(&corner(), &LatticePoint::from([1, 1])).unwrap());
        assert!(can_insert(&corner(), &LatticePoint::from([2, 2])).unwrap());
        assert!(!can_insert(&corner(), &LatticePoint::from([2, -1])).unwrap());
        assert!(can_insert(&corner(), &LatticePoint::from([0, 0, 0])).is_err());
    }

    #[test]
    fn deletion_examples() {
        let tri = corner();
        for v in tri.vertices() {
            assert!(!can_delete(&tri, v).unwrap());
        }
        let sq = square();
        for v in sq.vertices() {
            assert!(can_delete(&sq, v).unwrap());
        }
        let pyr = square_pyramid();
        assert!(!can_delete(&pyr, &LatticePoint::from([0, 0, 1])).unwrap());
        assert_eq!(
            deletable_vertices(&pyr),
            pts(&[&[0, 0, 0], &[0, 1, 0], &[1, 0, 0], &[1, 1, 0]])
        );
        assert!(matches!(
            can_delete(&pyr, &LatticePoint::from([5, 5, 5])),
            Err(Error::NotAVertex(_))
        ));
    }

    #[test]
    fn deletability_matches_affine_dimension() {
        for p in [square(), corner(), square_pyramid()] {
            for v in p.vertices() {
                let rest: Vec<_> = p.vertices().iter().filter(|u| *u != v).cloned().collect();
                let full = affine_dimension(&rest).unwrap() == p.dim() as i64;
                assert_eq!(can_delete(&p, v).unwrap(), full);
            }
        }
    }

    #[test]
    fn apply_round_trip() {
        let sq = apply_insert(&corner(), &LatticePoint::from([1, 1])).unwrap();
        assert_eq!(sq, square());
        let back = apply_delete(&sq, &LatticePoint::from([1, 1])).unwrap();
        assert_eq!(back, corner());
        assert!(matches!(
            apply_insert(&square(), &LatticePoint::from([2, 2])),
            Err(Error::IllegalMove(_))
        ));
        assert!(matches!(
            apply_delete(&corner(), &LatticePoint::from([0, 0])),
            Err(Error::IllegalMove(_))
        ));
    }

    #[test]
    fn insertable_points_in_small_boxes() {
        assert_eq!(insertable_points(&corner(), 1).unwrap(), pts(&[&[1, 1]]));
        assert!(insertable_points(&square(), 1).unwrap().is_empty());
        assert!(matches!(
            insertable_points(&poly(&[&[0, 0], &[3, 0], &[0, 3]]), 2),
            Err(Error::OutOfBox(2))
        ));
    }

    #[test]
    fn neighbors_examples() {
        let n = neighbors_in_box(&corner(), 1, None).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].1, square());
        assert_eq!(neighbors_in_box(&square(), 1, None).unwrap().len(), 4);
        let only_triangles: BTreeSet<usize> = [3].into();
        assert!(neighbors_in_box(&corner(), 1, Some(&only_triangles)).unwrap().is_empty());
        for (m, q) in neighbors_in_box(&square(), 1, None).unwrap() {
            assert_eq!(neighbor_key(&square(), &m), q.canonical_key());
        }
    }
}
