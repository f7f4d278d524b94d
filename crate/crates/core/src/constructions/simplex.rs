//! Insertion points for lattice simplices in a box.
//!
//! Let `Q` be the bounding box of the simplex `S`. A facet `R` of `Q` meets
//! `S` in a face `F`; the remaining vertices span the complementary face
//! `F*`. With `c` orthogonal to both and oriented so that `c·F = ε < ε* = c·F*`,
//! every box lattice point outside `S`, `aff(F)` and `{c·x >= ε*}` can be
//! inserted. `G` is the face of `aff(R) ∩ [0,k]^d` minimizing `c`, at value `δ`.

use crate::error::{Error, Result};
use crate::kernel::{box_points, normal_vector, AffineFlat, LatticePoint, Polytope};
use crate::moves::insertable_unchecked;

/// A facet of the bounding box: `x[axis] = lower[axis]` or `upper[axis]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxFacet {
    pub axis: usize,
    pub upper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFacetFrame {
    pub facet: BoxFacet,
    /// Coordinate `x[axis]` on the facet.
    pub value: i64,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub f: Vec<LatticePoint>,
    pub fstar: Vec<LatticePoint>,
    /// Primitive, orthogonal to `F` and `F*`, with `epsilon < epsilon_star`.
    pub c: Vec<i64>,
    pub delta: i128,
    pub epsilon: i128,
    pub epsilon_star: i128,
    /// Coordinates fixed on `G`; `None` marks a coordinate free in `[0,k]`.
    pub g: Vec<Option<i64>>,
}

impl SimplexFacetFrame {
    pub fn dim_f(&self) -> usize {
        self.f.len() - 1
    }

    pub fn dim_g(&self) -> usize {
        self.g.iter().filter(|x| x.is_none()).count()
    }

    pub fn f_subset_of_g(&self) -> bool {
        self.delta == self.epsilon
    }

    /// Lattice points of `G` in lexicographic order.
    pub fn g_points(&self, k: i64) -> impl Iterator<Item = LatticePoint> + '_ {
        let free: Vec<usize> = (0..self.g.len()).filter(|&i| self.g[i].is_none()).collect();
        box_points(free.len(), k).map(move |p| {
            let mut x: Vec<i64> = self.g.iter().map(|v| v.unwrap_or(0)).collect();
            for (slot, &i) in free.iter().enumerate() {
                x[i] = p.coords()[slot];
            }
            LatticePoint::new(x)
        })
    }
}

fn check_simplex(s: &Polytope, k: i64) -> Result<()> {
    if !s.is_simplex() {
        return Err(Error::NotASimplex);
    }
    if k < 1 || !s.in_box(k) {
        return Err(Error::OutOfBox(k));
    }
    Ok(())
}

fn frame(s: &Polytope, k: i64, facet: BoxFacet, lower: &[i64], upper: &[i64]) -> SimplexFacetFrame {
    let d = s.ambient_dim();
    let value = if facet.upper { upper[facet.axis] } else { lower[facet.axis] };
    let (f, fstar): (Vec<LatticePoint>, Vec<LatticePoint>) = s
        .vertices()
        .iter()
        .cloned()
        .partition(|v| v.coords()[facet.axis] == value);
    let mut rows: Vec<Vec<i64>> = f[1..].iter().map(|v| v.sub(&f[0]).into_coords()).collect();
    rows.extend(fstar[1..].iter().map(|v| v.sub(&fstar[0]).into_coords()));
    let mut c = normal_vector(&rows, d).expect("faces of a simplex span a hyperplane direction");
    if f[0].dot(&c) > fstar[0].dot(&c) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    let g: Vec<Option<i64>> = (0..d)
        .map(|j| match (j == facet.axis, c[j].signum()) {
            (true, _) => Some(value),
            (false, 1) => Some(0),
            (false, -1) => Some(k),
            _ => None,
        })
        .collect();
    let delta = g
        .iter()
        .zip(&c)
        .map(|(x, cj)| x.unwrap_or(0) as i128 * *cj as i128)
        .sum();
    SimplexFacetFrame {
        facet,
        value,
        lower: lower.to_vec(),
        upper: upper.to_vec(),
        epsilon: f[0].dot(&c),
        epsilon_star: fstar[0].dot(&c),
        f,
        fstar,
        c,
        delta,
        g,
    }
}

/// Frames for all `2d` facets of the bounding box, ordered by axis with the
/// lower facet first.
pub fn facet_frames(s: &Polytope, k: i64) -> Result<Vec<SimplexFacetFrame>> {
    check_simplex(s, k)?;
    let (lower, upper) = s.bounding_box();
    Ok((0..s.ambient_dim())
        .flat_map(|axis| [false, true].map(|upper| BoxFacet { axis, upper }))
        .map(|f| frame(s, k, f, &lower, &upper))
        .collect())
}

/// Insertion point together with the frame whose facet hyperplane contains it.
pub(crate) fn find_insertion_with_frame(s: &Polytope, k: i64) -> Result<(LatticePoint, SimplexFacetFrame)> {
    let frames = facet_frames(s, k)?;
    let d = s.ambient_dim();
    let g = frames.iter().map(|f| f.dim_f()).max().expect("at least one facet");
    let best: Vec<&SimplexFacetFrame> = frames.iter().filter(|f| f.dim_f() == g).collect();
    let ok = |x: &LatticePoint| insertable_unchecked(s, x);

    if g == d - 1 {
        // the apex's parallel hyperplane: every other lattice point on it works
        let fr = best[0];
        let v = &fr.fstar[0];
        let axis = fr.facet.axis;
        let x = box_points(d, k)
            .filter(|x| x.coords()[axis] == v.coords()[axis] && x != v)
            .find(ok)
            .ok_or_else(|| Error::Construction("no insertion point on the apex hyperplane".into()))?;
        return Ok((x, fr.clone()));
    }

    for fr in best.iter().filter(|f| !f.f_subset_of_g()) {
        if let Some(x) = fr.g_points(k).next().filter(ok) {
            return Ok((x, (*fr).clone()));
        }
    }

    for fr in best.iter().filter(|f| f.f_subset_of_g() && f.dim_g() > f.dim_f()) {
        let aff = AffineFlat::from_points(&fr.f)?;
        if let Some(x) = fr.g_points(k).find(|x| !aff.contains(x) && ok(x)) {
            return Ok((x, (*fr).clone()));
        }
    }

    let mut found: Option<(LatticePoint, &SimplexFacetFrame)> = None;
    for fr in &best {
        let aff = AffineFlat::from_points(&fr.f)?;
        for v in &fr.fstar {
            let w = v.with(fr.facet.axis, fr.value);
            if w.dot(&fr.c) < fr.epsilon_star
                && !aff.contains(&w)
                && ok(&w)
                && found.as_ref().is_none_or(|(b, _)| w < *b)
            {
                found = Some((w, fr));
            }
        }
    }
    found
        .map(|(x, fr)| (x, fr.clone()))
        .ok_or_else(|| Error::Construction("simplex insertion search exhausted".into()))
}

/// A lattice point of `[0,k]^d` that can be inserted in the simplex `s`.
pub fn find_simplex_insertion(s: &Polytope, k: i64) -> Result<LatticePoint> {
    find_insertion_with_frame(s, k).map(|(x, _)| x)
}
