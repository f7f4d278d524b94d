use crate::error::{Error, Result};
use crate::kernel::{convex_hull, HalfSpace, LatticePoint, Polytope, MAX_DIM};

fn check_dim(d: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// The origin and the `d` unit vectors.
pub fn corner_simplex(d: usize, k: i64) -> Result<Polytope> {
    check_dim(d)?;
    if k < 1 {
        return Err(Error::InvalidInput(format!("box size {k} must be positive")));
    }
    Ok(corner_of_dim(d))
}

pub(crate) fn corner_vertices(d: usize) -> Vec<LatticePoint> {
    let mut v: Vec<LatticePoint> = (0..d).map(|i| LatticePoint::unit(d, i)).collect();
    v.push(LatticePoint::origin(d));
    v.sort();
    v
}

pub(crate) fn corner_of_dim(d: usize) -> Polytope {
    convex_hull(&corner_vertices(d), d).expect("corner simplex is full-dimensional")
}

fn parabola(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Lattice polygon with `n` vertices in which no lattice point can be inserted.
pub fn pn_polygon(n: usize) -> Result<Polytope> {
    if n < 4 || n == 5 {
        return Err(Error::Unsupported(format!("no P_n polygon for n = {n}")));
    }
    if n == 4 {
        let sq = [[0, 0], [0, 1], [1, 0], [1, 1]].map(LatticePoint::from);
        return convex_hull(&sq, 2);
    }
    let even = if n.is_multiple_of(2) { n } else { n + 1 } as i64;
    let a1 = even / 2 - 1;
    let a = LatticePoint::from([a1, parabola(a1) + 1]);
    let mut pts = Vec::with_capacity(even as usize + 1);
    for x in 0..even / 2 {
        let p = LatticePoint::from([x, parabola(x)]);
        pts.push(a.sub(&p));
        pts.push(p);
    }
    if n % 2 == 1 {
        pts.push(LatticePoint::from([a1, parabola(a1) + 2]));
    }
    let p = convex_hull(&pts, 2)?;
    debug_assert_eq!(p.num_vertices(), n);
    Ok(p)
}

/// Empty `(k+1)`-simplex in `[0,k]^{k+1}`: the columns of the matrix with
/// `k` on the diagonal and `1` on the superdiagonal.
pub fn empty_simplex(k: i64) -> Result<Polytope> {
    if k < 2 || k as usize + 1 > MAX_DIM {
        return Err(Error::Unsupported(format!("no empty simplex for k = {k}")));
    }
    let d = k as usize + 1;
    let cols: Vec<LatticePoint> = (0..=d)
        .map(|j| {
            let mut c = vec![0; d];
            if j < d {
                c[j] = k;
            }
            if j > 0 {
                c[j - 1] = 1;
            }
            LatticePoint::new(c)
        })
        .collect();
    convex_hull(&cols, d)
}

/// `P × Q`, built directly from the factors' vertices and facets.
pub fn cartesian_product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let (dp, dq) = (p.ambient_dim(), q.ambient_dim());
    if dp + dq > MAX_DIM {
        return Err(Error::UnsupportedDimension(dp + dq));
    }
    let vertices = p
        .vertices()
        .iter()
        .flat_map(|u| q.vertices().iter().map(move |v| u.concat(v)))
        .collect();
    let lift = |h: &HalfSpace, before: usize, after: usize| {
        let mut n = vec![0; before];
        n.extend_from_slice(h.normal());
        n.resize(before + h.normal().len() + after, 0);
        HalfSpace::from_raw(n, h.offset())
    };
    let facets = p
        .facets()
        .iter()
        .map(|h| lift(h, 0, dq))
        .chain(q.facets().iter().map(|h| lift(h, dp, 0)))
        .collect();
    Ok(Polytope::from_parts(dp + dq, vertices, facets))
}

/// The `d/(k+1)`-fold product of `empty_simplex(k)`.
pub fn saturating_polytope(d: usize, k: i64) -> Result<Polytope> {
    let block = k + 1;
    if k < 2 || d as i64 % block != 0 || d as i64 == block {
        return Err(Error::Unsupported(format!(
            "saturating polytope needs k >= 2 and k+1 a proper divisor of d (d = {d}, k = {k})"
        )));
    }
    check_dim(d)?;
    let s = empty_simplex(k)?;
    let mut p = s.clone();
    for _ in 1..d / block as usize {
        p = cartesian_product(&p, &s)?;
    }
    Ok(p)
}
