//! Exact facet enumeration by the double description method.
//!
//! The valid inequalities `a·x <= b` of `conv(points)` form the cone
//! `{(b, a) : b - a·p >= 0 for every input p}`. For a full-dimensional input
//! this cone is pointed and its extreme rays are exactly the facets. The cone
//! is built by starting from a simplex and adding one constraint (one point)
//! at a time; adjacency of rays is decided combinatorially from zero sets.

use num_bigint::BigInt;

use super::exact::{dot, lift, make_primitive, orthogonal_complement, with_fallback, Bits, Exact};
use super::linalg::rank_i64;
use super::point::LatticePoint;
use crate::error::{Error, Result};

/// Facet found by the hull: `normal·x <= offset`, with the indices of the
/// input points lying on it.
#[derive(Clone, Debug)]
pub(crate) struct RawFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub incident: Bits,
}

#[derive(Clone, Debug)]
pub(crate) struct RawHull {
    pub facets: Vec<RawFacet>,
    /// Input indices that are vertices of the hull.
    pub vertices: Vec<usize>,
}

struct Ray<S> {
    /// `[b, a_1, ..., a_d]`
    coef: Vec<S>,
    zeros: Bits,
}

fn homogenize<S: Exact>(p: &LatticePoint) -> Vec<S> {
    // evaluation of (b, a) at p is b - a·p, i.e. dot with (1, -p)
    let mut v = Vec::with_capacity(p.dim() + 1);
    v.push(S::from_i64(1));
    v.extend(p.coords().iter().map(|c| S::from_i64(-c)));
    v
}

/// Greedy choice of `d + 1` affinely independent points, in input order.
fn initial_simplex(points: &[LatticePoint], d: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == d + 1 {
            break;
        }
        let diff = p.sub(&points[chosen[0]]).into_coords();
        rows.push(diff);
        if rank_i64(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    (chosen.len() == d + 1).then_some(chosen)
}

fn double_description<S: Exact>(
    points: &[LatticePoint],
    d: usize,
    simplex: &[usize],
) -> Option<Vec<Ray<S>>> {
    let n = points.len();
    let constraints: Vec<Vec<S>> = points.iter().map(homogenize).collect();

    let mut rays: Vec<Ray<S>> = Vec::with_capacity(2 * (d + 1));
    for (j, &opposite) in simplex.iter().enumerate() {
        let others: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != j)
            .map(|(_, &i)| i)
            .collect();
        let base = &points[others[0]];
        let rows: Vec<Vec<S>> = others[1..]
            .iter()
            .map(|&i| lift(points[i].sub(base).coords()))
            .collect();
        let normal = orthogonal_complement(&rows, d)?;
        let offset = dot(&normal, &lift(base.coords()))?;
        let mut coef = Vec::with_capacity(d + 1);
        coef.push(offset);
        coef.extend(normal);
        if dot(&coef, &constraints[opposite])?.sign().is_lt() {
            coef = coef.iter().map(|c| c.neg()).collect::<Option<_>>()?;
        }
        make_primitive(&mut coef);
        let mut zeros = Bits::with_capacity(n);
        for &i in &others {
            zeros.insert(i);
        }
        rays.push(Ray { coef, zeros });
    }

    let mut in_simplex = Bits::with_capacity(n);
    for &i in simplex {
        in_simplex.insert(i);
    }

    for (idx, row) in constraints.iter().enumerate() {
        if in_simplex.contains(idx) {
            continue;
        }
        let mut values = Vec::with_capacity(rays.len());
        for r in &rays {
            values.push(dot(&r.coef, row)?);
        }
        if values.iter().all(|v| !v.sign().is_lt()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign().is_gt()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign().is_lt()).collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 1 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = values[q].neg()?;
                let mut coef = Vec::with_capacity(d + 1);
                for (a, b) in rays[q].coef.iter().zip(&rays[p].coef) {
                    coef.push(vp.mul(a)?.add(&vq.mul(b)?)?);
                }
                make_primitive(&mut coef);
                let mut zeros = common;
                zeros.insert(idx);
                created.push(Ray { coef, zeros });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (r, v) in rays.into_iter().zip(values) {
            match v.sign() {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    let mut r = r;
                    r.zeros.insert(idx);
                    next.push(r);
                }
                std::cmp::Ordering::Greater => next.push(r),
            }
        }
        next.extend(created);
        rays = next;
    }
    Some(rays)
}

fn finish<S: Exact>(rays: Vec<Ray<S>>) -> Result<Vec<RawFacet>> {
    rays.into_iter()
        .map(|r| {
            let mut normal: Vec<S> = r.coef[1..].to_vec();
            let g = normal.iter().fold(S::zero(), |g, x| g.gcd(x));
            let mut offset = r.coef[0].clone();
            if !g.is_zero() {
                normal = normal.iter().map(|x| x.div_exact(&g)).collect();
                offset = offset.div_exact(&g);
            }
            let normal = normal
                .iter()
                .map(|x| x.to_i64())
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::Overflow)?;
            let offset = offset.to_i64().ok_or(Error::Overflow)?;
            Ok(RawFacet {
                normal,
                offset,
                incident: r.zeros,
            })
        })
        .collect()
}

/// Facets and vertices of the hull of distinct, full-dimensional `points`.
pub(crate) fn hull(points: &[LatticePoint], d: usize) -> Result<RawHull> {
    let simplex = initial_simplex(points, d).ok_or(Error::NotFullDimensional {
        found: super::linalg::affine_dimension(points)?,
        expected: d,
    })?;
    let facets = with_fallback(
        || double_description::<i128>(points, d, &simplex).map(finish),
        || double_description::<BigInt>(points, d, &simplex).map(finish),
    )?;

    let vertices = (0..points.len())
        .filter(|&i| {
            let mut common: Option<Bits> = None;
            for f in facets.iter().filter(|f| f.incident.contains(i)) {
                common = Some(match common {
                    None => f.incident.clone(),
                    Some(c) => c.intersection(&f.incident),
                });
            }
            common.is_some_and(|c| c.len() == 1)
        })
        .collect();
    Ok(RawHull { facets, vertices })
}
