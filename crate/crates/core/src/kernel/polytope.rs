use std::cmp::Ordering;
use std::fmt::Write as _;

use super::exact::{affine_sign, Bits};
use super::hull::hull;
use super::linalg::affine_dimension;
use super::point::LatticePoint;
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Closed half-space `{x : normal·x <= offset}` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: Vec<i64>,
    offset: i64,
}

impl HalfSpace {
    /// Builds a half-space, dividing by the gcd of the normal. The offset
    /// is rounded down, which leaves the set of lattice points unchanged.
    pub fn new(mut normal: Vec<i64>, offset: i64) -> Result<Self> {
        let g = normal
            .iter()
            .fold(0u64, |g, x| num_integer::Integer::gcd(&g, &x.unsigned_abs()));
        if g == 0 {
            return Err(Error::InvalidInput("half-space with zero normal".into()));
        }
        let g = g as i64;
        normal.iter_mut().for_each(|x| *x /= g);
        Ok(HalfSpace {
            normal,
            offset: offset.div_euclid(g),
        })
    }

    pub(crate) fn from_raw(normal: Vec<i64>, offset: i64) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Sign of `normal·x - offset`.
    pub fn side(&self, x: &LatticePoint) -> Ordering {
        affine_sign(&self.normal, x.coords(), self.offset)
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.side(x) != Ordering::Greater
    }

    pub fn is_tight(&self, x: &LatticePoint) -> bool {
        self.side(x) == Ordering::Equal
    }

    /// The opposite closed half-space, sharing the boundary hyperplane.
    pub fn flipped(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset,
        }
    }
}

/// A full-dimensional lattice polytope in canonical form: sorted vertex list,
/// sorted irredundant facets with primitive normals, and vertex/facet
/// incidences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<HalfSpace>,
    vertex_facets: Vec<Bits>,
    facet_vertices: Vec<Bits>,
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// Canonical convex hull of a full-dimensional lattice point set.
pub fn convex_hull(points: &[LatticePoint], d: usize) -> Result<Polytope> {
    check_dim(d)?;
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::InvalidInput(format!(
            "point {p} has dimension {}, expected {d}",
            p.dim()
        )));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let found = affine_dimension(&pts)?;
    if found != d as i64 {
        return Err(Error::NotFullDimensional { found, expected: d });
    }
    let raw = hull(&pts, d)?;
    let vertices: Vec<LatticePoint> = raw.vertices.iter().map(|&i| pts[i].clone()).collect();
    let facets = raw
        .facets
        .into_iter()
        .map(|f| HalfSpace::from_raw(f.normal, f.offset))
        .collect();
    Ok(Polytope::from_parts(d, vertices, facets))
}

impl Polytope {
    /// Assembles a polytope from a known vertex set and its exact facet list.
    pub(crate) fn from_parts(
        dim: usize,
        mut vertices: Vec<LatticePoint>,
        mut facets: Vec<HalfSpace>,
    ) -> Self {
        vertices.sort();
        facets.sort();
        let mut vertex_facets = vec![Bits::with_capacity(facets.len()); vertices.len()];
        let mut facet_vertices = vec![Bits::with_capacity(vertices.len()); facets.len()];
        for (fi, f) in facets.iter().enumerate() {
            for (vi, v) in vertices.iter().enumerate() {
                if f.is_tight(v) {
                    vertex_facets[vi].insert(fi);
                    facet_vertices[fi].insert(vi);
                }
            }
        }
        Polytope {
            dim,
            vertices,
            facets,
            vertex_facets,
            facet_vertices,
        }
    }

    /// Hull of `vertices`, failing unless every listed point is a vertex.
    pub fn from_vertices(vertices: &[LatticePoint], d: usize) -> Result<Self> {
        let p = convex_hull(vertices, d)?;
        let mut listed = vertices.to_vec();
        listed.sort();
        listed.dedup();
        if listed != p.vertices {
            return Err(Error::InvalidInput(
                "listed points are not the vertex set of their hull".into(),
            ));
        }
        Ok(p)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Intrinsic dimension; polytopes are always full-dimensional.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn vertex_index(&self, v: &LatticePoint) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn is_vertex(&self, v: &LatticePoint) -> bool {
        self.vertex_index(v).is_some()
    }

    /// Facet indices incident to vertex `i`.
    pub fn facets_at(&self, i: usize) -> &Bits {
        &self.vertex_facets[i]
    }

    /// Vertex indices on facet `f`.
    pub fn vertices_on(&self, f: usize) -> &Bits {
        &self.facet_vertices[f]
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn contains_point(&self, x: &LatticePoint) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.facets.iter().all(|f| f.contains(x)))
    }

    pub(crate) fn check_point(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::InvalidInput(format!(
                "point {x} has dimension {}, polytope has dimension {}",
                x.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn in_box(&self, k: i64) -> bool {
        self.vertices.iter().all(|v| v.in_box(k))
    }

    /// Deterministic serialization of `(d, sorted vertices)`.
    pub fn canonical_key(&self) -> String {
        key_of(self.dim, &self.vertices)
    }

    /// Per-coordinate minima and maxima over the vertices.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.coords().iter().enumerate() {
                lo[i] = lo[i].min(*c);
                hi[i] = hi[i].max(*c);
            }
        }
        (lo, hi)
    }
}

/// Key of a sorted vertex list; see [`Polytope::canonical_key`].
pub fn key_of(dim: usize, sorted_vertices: &[LatticePoint]) -> String {
    let mut s = String::with_capacity(4 + sorted_vertices.len() * (2 * dim + 1));
    let _ = write!(s, "{dim}|");
    for (i, v) in sorted_vertices.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        for (j, c) in v.coords().iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
    }
    s
}

/// Inverse of [`key_of`].
pub fn parse_key(key: &str) -> Result<(usize, Vec<LatticePoint>)> {
    let bad = || Error::Parse(format!("malformed canonical key `{key}`"));
    let (d, rest) = key.split_once('|').ok_or_else(bad)?;
    let d: usize = d.parse().map_err(|_| bad())?;
    let mut vertices = Vec::new();
    for part in rest.split(';') {
        let coords = part
            .split(',')
            .map(|c| c.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        if coords.len() != d {
            return Err(bad());
        }
        vertices.push(LatticePoint::new(coords));
    }
    Ok((d, vertices))
}
