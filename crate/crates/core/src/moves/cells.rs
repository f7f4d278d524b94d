//! Exact description of the insertable region of a lattice polygon.
//!
//! For the counter-clockwise edge cycle `e_0, ..., e_{n-1}` with outer
//! normals `a_i·x <= b_i`, cell `i` is the open region
//! `{a_i·x > b_i, a_{i-1}·x < b_{i-1}, a_{i+1}·x < b_{i+1}}`. A point is
//! insertable iff it lies in exactly one (equivalently some) cell.

use num_integer::Integer;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{HalfSpace, LatticePoint, Polytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellLattice {
    /// All lattice points of a cell with finitely many of them.
    Finite(Vec<LatticePoint>),
    /// The cell contains infinitely many lattice points; one of them.
    Infinite { witness: LatticePoint },
}

impl CellLattice {
    pub fn is_empty(&self) -> bool {
        matches!(self, CellLattice::Finite(v) if v.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell2d {
    /// Edge endpoints in counter-clockwise order.
    pub edge: [LatticePoint; 2],
    /// The edge's facet; the cell lies strictly outside it.
    pub beyond: HalfSpace,
    /// Facet of the previous edge (through `edge[0]`); the cell lies strictly inside it.
    pub left: HalfSpace,
    /// Facet of the next edge (through `edge[1]`); the cell lies strictly inside it.
    pub right: HalfSpace,
    pub bounded: bool,
    /// Intersection of the two neighboring edge lines, when the cell is a triangle.
    pub apex: Option<[Ratio<i128>; 2]>,
    /// Extreme rays of the recession cone; empty iff bounded.
    pub rays: Vec<[i64; 2]>,
    pub lattice: CellLattice,
}

impl Cell2d {
    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.beyond.side(x).is_gt() && self.left.side(x).is_lt() && self.right.side(x).is_lt()
    }

    pub fn to_json(&self) -> Value {
        let rat = |r: &Ratio<i128>| {
            if r.is_integer() {
                json!(r.to_integer())
            } else {
                json!(r.to_string())
            }
        };
        let boundary = match &self.apex {
            Some([x, y]) => json!({
                "kind": "triangle",
                "corners": [self.edge[0], self.edge[1], [rat(x), rat(y)]],
            }),
            None => json!({
                "kind": "wedge",
                "corners": [self.edge[0], self.edge[1]],
                "rays": self.rays,
            }),
        };
        let lattice = match &self.lattice {
            CellLattice::Finite(pts) => json!({ "finite": true, "points": pts }),
            CellLattice::Infinite { witness } => json!({ "finite": false, "witness": witness }),
        };
        json!({
            "edge": self.edge,
            "bounded": self.bounded,
            "boundary": boundary,
            "interior_lattice_points": lattice,
        })
    }
}

fn cross(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Vertices of a polygon in counter-clockwise order, starting with the
/// lexicographically smallest.
pub fn cyclic_vertices(p: &Polytope) -> Result<Vec<LatticePoint>> {
    if p.ambient_dim() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected a polygon, got dimension {}",
            p.ambient_dim()
        )));
    }
    let n = p.num_vertices();
    let mut adj = vec![Vec::with_capacity(2); n];
    for f in 0..p.facets().len() {
        let ends: Vec<usize> = p.vertices_on(f).iter().collect();
        adj[ends[0]].push(ends[1]);
        adj[ends[1]].push(ends[0]);
    }
    let v = p.vertices();
    let (a, b) = (adj[0][0], adj[0][1]);
    let first = if cross(v[a].sub(&v[0]).coords(), v[b].sub(&v[0]).coords()) > 0 {
        a
    } else {
        b
    };
    let mut order = vec![0, first];
    while order.len() < n {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        order.push(next);
    }
    Ok(order.into_iter().map(|i| v[i].clone()).collect())
}

/// Open constraint `sign * (normal·x - offset) > 0`.
struct Strict<'a> {
    h: &'a HalfSpace,
    sign: i128,
}

impl Strict<'_> {
    fn value(&self, x: &LatticePoint) -> i128 {
        self.sign * (x.dot(self.h.normal()) - self.h.offset() as i128)
    }

    fn slope(&self, w: &[i64]) -> i128 {
        self.sign * LatticePoint::new(w.to_vec()).dot(self.h.normal())
    }
}

/// Smallest `t >= 0` with `x0 + t·w` strictly satisfying every constraint,
/// where each constraint either improves along `w` or already holds at `x0`.
fn walk_into(cons: &[Strict], x0: &LatticePoint, w: &[i64]) -> LatticePoint {
    let mut t: i128 = 0;
    for c in cons {
        let (g0, s) = (c.value(x0), c.slope(w));
        if g0 <= 0 {
            debug_assert!(s > 0);
            t = t.max(Integer::div_floor(&(-g0), &s) + 1);
        }
    }
    let t = i64::try_from(t).expect("walk length fits");
    x0.add(&LatticePoint::new(vec![w[0] * t, w[1] * t]))
}

fn edge_facet(p: &Polytope, a: &LatticePoint, b: &LatticePoint) -> HalfSpace {
    let (ia, ib) = (p.vertex_index(a).unwrap(), p.vertex_index(b).unwrap());
    let f = p
        .facets_at(ia)
        .intersection(p.facets_at(ib))
        .iter()
        .next()
        .expect("consecutive vertices share an edge");
    p.facets()[f].clone()
}

fn build_cell(edge: [LatticePoint; 2], beyond: HalfSpace, left: HalfSpace, right: HalfSpace) -> Cell2d {
    let cons = [
        Strict { h: &beyond, sign: 1 },
        Strict { h: &left, sign: -1 },
        Strict { h: &right, sign: -1 },
    ];
    let mut rays: Vec<[i64; 2]> = Vec::new();
    for c in &cons {
        let n = c.h.normal();
        for r in [[-n[1], n[0]], [n[1], -n[0]]] {
            if cons.iter().all(|c| c.slope(&r) >= 0) && !rays.contains(&r) {
                rays.push(r);
            }
        }
    }
    let bounded = rays.is_empty();

    let (apex, lattice) = if bounded {
        let (a, c) = (left.normal(), right.normal());
        let det = cross(a, c);
        let (b, e) = (left.offset() as i128, right.offset() as i128);
        let x = Ratio::new(b * c[1] as i128 - e * a[1] as i128, det);
        let y = Ratio::new(a[0] as i128 * e - c[0] as i128 * b, det);
        let xs = [edge[0].coords()[0] as i128, edge[1].coords()[0] as i128];
        let ys = [edge[0].coords()[1] as i128, edge[1].coords()[1] as i128];
        let lo = [
            xs[0].min(xs[1]).min(x.floor().to_integer()),
            ys[0].min(ys[1]).min(y.floor().to_integer()),
        ];
        let hi = [
            xs[0].max(xs[1]).max(x.ceil().to_integer()),
            ys[0].max(ys[1]).max(y.ceil().to_integer()),
        ];
        let mut pts = Vec::new();
        for px in lo[0]..=hi[0] {
            for py in lo[1]..=hi[1] {
                let q = LatticePoint::new(vec![px as i64, py as i64]);
                if cons.iter().all(|c| c.value(&q) > 0) {
                    pts.push(q);
                }
            }
        }
        (Some([x, y]), CellLattice::Finite(pts))
    } else if rays.len() >= 2 {
        // two-dimensional recession cone: walk from an endpoint along an interior direction
        let w = [rays[0][0] + rays[1][0], rays[0][1] + rays[1][1]];
        (None, CellLattice::Infinite { witness: walk_into(&cons, &edge[0], &w) })
    } else {
        // half-strip between two parallel lines orthogonal to `n`
        let r = rays[0];
        let n = [r[1], -r[0]];
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for c in cons.iter().filter(|c| c.slope(&r) == 0) {
            // sign*(s*t - off) > 0 with t = n·x and s = ±1
            let s = if c.h.normal() == n { 1 } else { -1 };
            let off = c.h.offset() as i128;
            if c.sign * s > 0 {
                lo = lo.max(s * off);
            } else {
                hi = hi.min(s * off);
            }
        }
        if hi - lo < 2 {
            (None, CellLattice::Finite(Vec::new()))
        } else {
            let m = lo + 1;
            let g = (n[0] as i128).extended_gcd(&(n[1] as i128));
            let x0 = LatticePoint::new(vec![(m * g.x) as i64, (m * g.y) as i64]);
            (None, CellLattice::Infinite { witness: walk_into(&cons, &x0, &r) })
        }
    };
    Cell2d {
        edge,
        beyond,
        left,
        right,
        bounded,
        apex,
        rays,
        lattice,
    }
}

/// One open cell per edge; their union is exactly the insertable set.
pub fn insertable_cells_2d(p: &Polytope) -> Result<Vec<Cell2d>> {
    let cyc = cyclic_vertices(p)?;
    let n = cyc.len();
    let facets: Vec<HalfSpace> = (0..n)
        .map(|i| edge_facet(p, &cyc[i], &cyc[(i + 1) % n]))
        .collect();
    Ok((0..n)
        .map(|i| {
            build_cell(
                [cyc[i].clone(), cyc[(i + 1) % n].clone()],
                facets[i].clone(),
                facets[(i + n - 1) % n].clone(),
                facets[(i + 1) % n].clone(),
            )
        })
        .collect())
}
