//! Acceptance suite: twelve criteria, each checked against the brute-force
//! reference in `common` and timed against its budget. Prints one line per
//! criterion and exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{
    box_pts, census, coords, deletable, full_dimensional, in_cone, insertable, key, range_pts, vertex_coords,
    vertices, Pt,
};
use lattice_moves::constructions::{
    cartesian_product, corner_simplex, find_simplex_insertion, flatten_pentagon, make_strongly_flat, pn_polygon,
    saturating_polytope, shear_to_oblique, simplex_to_corner_path,
};
use lattice_moves::graph::{bfs_closure, build_graph, connected_components, enumerate_polytopes, enumerate_simplices};
use lattice_moves::moves::{
    apply_delete, apply_insert, can_insert, deletable_vertices, insertable_cells_2d, insertable_points, vertex_cone,
    CellLattice,
};
use lattice_moves::sampler::{run_chain, stationary_distribution, transition_matrix};
use lattice_moves::{convex_hull, LatticePoint, MoveKind, MoveTrace, Polytope};

type Verdict = Result<String, String>;

/// Title, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: lattice_moves::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn lp(p: &Pt) -> LatticePoint {
    LatticePoint::new(p.clone())
}

fn polytope(vs: &[Pt], d: usize) -> Result<Polytope, String> {
    lib(Polytope::from_vertices(&vs.iter().map(lp).collect::<Vec<_>>(), d))
}

fn corner_key(d: usize) -> String {
    let mut vs = vec![vec![0; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        vs.push(e);
    }
    key(d, &vs)
}

/// Edges between vertex sets: two nodes are adjacent iff they differ in one point.
fn reference_edges(nodes: &BTreeMap<String, Vec<Pt>>, d: usize, k: i64) -> BTreeSet<(String, String)> {
    let pts = box_pts(d, k);
    nodes
        .par_iter()
        .flat_map_iter(|(a, vs)| {
            let set: BTreeSet<&Pt> = vs.iter().collect();
            pts.iter()
                .filter_map(|x| {
                    let toggled: Vec<Pt> = if set.contains(x) {
                        vs.iter().filter(|v| *v != x).cloned().collect()
                    } else {
                        vs.iter().chain(std::iter::once(x)).cloned().collect()
                    };
                    let b = key(d, &toggled);
                    (nodes.contains_key(&b) && *a < b).then(|| (a.clone(), b))
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn reachable(start: &str, nodes: &BTreeSet<String>, edges: &BTreeSet<(String, String)>) -> BTreeSet<String> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        if nodes.contains(a) && nodes.contains(b) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let mut seen = BTreeSet::from([start.to_string()]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in adj.get(u).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w.to_string()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Census, closure and edge set of the move graph in `[0,k]^d`, plus the
/// induced subgraph on vertex counts `filter`.
fn connectivity(d: usize, k: i64, filter: [usize; 2]) -> Verdict {
    let nodes: BTreeMap<String, Vec<Pt>> = census(d, k).into_iter().map(|vs| (key(d, &vs), vs)).collect();
    let keys: BTreeSet<String> = nodes.keys().cloned().collect();
    let enumerated = lib(enumerate_polytopes(d, k, None))?;
    let lib_keys: BTreeSet<String> = enumerated.iter().map(Polytope::canonical_key).collect();
    ensure(lib_keys == keys, || {
        format!("d={d} k={k}: enumeration has {} nodes, reference {}", lib_keys.len(), keys.len())
    })?;
    let closure = lib(bfs_closure(&lib(corner_simplex(d, k))?, k, None))?;
    let closure_keys: BTreeSet<String> = closure.nodes().keys().cloned().collect();
    ensure(closure_keys == keys, || {
        format!("d={d} k={k}: closure reaches {} of {} nodes", closure_keys.len(), keys.len())
    })?;
    let edges = reference_edges(&nodes, d, k);
    let graph = lib(build_graph(&enumerated, k, None))?;
    let lib_edges: BTreeSet<(String, String)> =
        graph.edges().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure(lib_edges == edges, || {
        format!("d={d} k={k}: {} edges, reference {}", lib_edges.len(), edges.len())
    })?;
    let closure_edges: BTreeSet<(String, String)> =
        closure.edges().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure(closure_edges == edges, || format!("d={d} k={k}: closure edges differ"))?;
    ensure(reachable(&corner_key(d), &keys, &edges) == keys, || {
        format!("d={d} k={k}: reference graph is disconnected")
    })?;
    let sub: BTreeSet<String> = nodes
        .iter()
        .filter(|(_, vs)| filter.contains(&vs.len()))
        .map(|(key, _)| key.clone())
        .collect();
    ensure(reachable(&corner_key(d), &sub, &edges) == sub, || {
        format!("d={d} k={k}: subgraph on {filter:?} vertices is disconnected")
    })?;
    let fset = filter.into_iter().collect();
    let filtered = lib(bfs_closure(&lib(corner_simplex(d, k))?, k, Some(&fset)))?;
    ensure(filtered.nodes().keys().cloned().collect::<BTreeSet<_>>() == sub, || {
        format!("d={d} k={k}: filtered closure differs from the {} filtered nodes", sub.len())
    })?;
    Ok(format!("d={d} k={k}: {} nodes, {} edges, {} in subgraph {filter:?}", keys.len(), edges.len(), sub.len()))
}

fn census_2_1() -> Verdict {
    let detail = connectivity(2, 1, [3, 4])?;
    let g = lib(build_graph(&lib(enumerate_polytopes(2, 1, None))?, 1, None))?;
    let mut degrees: Vec<usize> = g.nodes().keys().map(|k| g.degree(k)).collect();
    degrees.sort_unstable();
    ensure(g.num_nodes() == 5 && degrees == [1, 1, 1, 1, 4], || format!("degrees {degrees:?}"))?;
    ensure(connected_components(&g).len() == 1, || "disconnected".into())?;
    Ok(format!("{detail}; star with degrees {degrees:?}"))
}

fn connectivity_2d() -> Verdict {
    let a = connectivity(2, 2, [3, 4])?;
    let b = connectivity(2, 3, [3, 4])?;
    Ok(format!("{a}; {b}"))
}

fn connectivity_cubes() -> Verdict {
    let a = connectivity(3, 1, [4, 5])?;
    let b = connectivity(4, 1, [5, 6])?;
    Ok(format!("{a}; {b}"))
}

fn simplex_insertion() -> Verdict {
    let mut parts = Vec::new();
    for (d, k) in [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let simplices = lib(enumerate_simplices(d, k))?;
        let expected = count_simplices(d, k);
        ensure(simplices.len() == expected, || {
            format!("d={d} k={k}: {} simplices, reference {expected}", simplices.len())
        })?;
        simplices.par_iter().try_for_each(|s| -> Result<(), String> {
            let ins = lib(insertable_points(s, k))?;
            let x = lib(find_simplex_insertion(s, k))?;
            ensure(!ins.is_empty() && ins.contains(&x), || {
                format!("{}: found {x} outside the insertable set", s.canonical_key())
            })?;
            ensure(insertable(&vertex_coords(s), &coords(&x)) && x.in_box(k), || {
                format!("{}: {x} is not insertable", s.canonical_key())
            })
        })?;
        parts.push(format!("d={d} k={k}: {}", simplices.len()));
    }
    Ok(format!("every simplex admits the found insertion ({})", parts.join(", ")))
}

fn count_simplices(d: usize, k: i64) -> usize {
    let pts = box_pts(d, k);
    let mut count = 0;
    let mut cur: Vec<usize> = Vec::new();
    fn go(pts: &[Pt], d: usize, start: usize, cur: &mut Vec<usize>, count: &mut usize) {
        if cur.len() == d + 1 {
            let s: Vec<Pt> = cur.iter().map(|&i| pts[i].clone()).collect();
            if full_dimensional(&s, d) {
                *count += 1;
            }
            return;
        }
        for i in start..pts.len() {
            cur.push(i);
            go(pts, d, i + 1, cur, count);
            cur.pop();
        }
    }
    go(&pts, d, 0, &mut cur, &mut count);
    count
}

/// Reference insertable set of a polygon inside `[lo - m w, hi + m w]`.
fn scan_insertable(vs: &[Pt], m: i64) -> Vec<Pt> {
    let lo: Vec<i64> = (0..2).map(|i| vs.iter().map(|v| v[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..2).map(|i| vs.iter().map(|v| v[i]).max().unwrap()).collect();
    let a: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| l - m * (h - l)).collect();
    let b: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| h + m * (h - l)).collect();
    range_pts(&a, &b).into_par_iter().filter(|x| insertable(vs, x)).collect()
}

/// Whole-plane insertable lattice points from the cell decomposition;
/// `Err` if some cell has infinitely many.
fn plane_insertable(p: &Polytope) -> Result<Result<BTreeSet<Pt>, Pt>, String> {
    let mut out = BTreeSet::new();
    for cell in lib(insertable_cells_2d(p))? {
        match cell.lattice {
            CellLattice::Finite(points) => out.extend(points.iter().map(coords)),
            CellLattice::Infinite { witness } => return Ok(Err(coords(&witness))),
        }
    }
    Ok(Ok(out))
}

fn pn_family() -> Verdict {
    for n in [4, 6, 7, 8, 9, 10] {
        let p = lib(pn_polygon(n))?;
        let vs = vertex_coords(&p);
        ensure(vs.len() == n && vertices(&vs) == vs, || format!("P_{n} has {} vertices", vs.len()))?;
        let cells = plane_insertable(&p)?;
        ensure(matches!(&cells, Ok(s) if s.is_empty()), || format!("P_{n}: cells report {cells:?}"))?;
        let scan = scan_insertable(&vs, 2);
        ensure(scan.is_empty(), || format!("P_{n}: reference finds insertable {:?}", scan[0]))?;
    }
    let p10 = lib(pn_polygon(10))?;
    let vs = vertex_coords(&p10);
    for v in &vs {
        ensure(deletable(&vs, v, 2), || format!("{v:?} is not deletable from P_10"))?;
        let q = lib(apply_delete(&p10, &lp(v)))?;
        let cells = plane_insertable(&q)?;
        let expected = BTreeSet::from([v.clone()]);
        ensure(cells.as_ref() == Ok(&expected), || format!("P_10 minus {v:?}: cells report {cells:?}"))?;
        let scan = scan_insertable(&vertex_coords(&q), 2);
        ensure(scan == [v.clone()], || format!("P_10 minus {v:?}: reference finds {scan:?}"))?;
    }
    Ok("P_4, P_6..P_10 admit no insertion; the P_10 component has 1 decagon and 10 enneagons".into())
}

fn products() -> Verdict {
    let p6 = lib(pn_polygon(6))?;
    let sq = lib(convex_hull(&box_pts(2, 1).iter().map(lp).collect::<Vec<_>>(), 2))?;
    let prod = lib(cartesian_product(&p6, &sq))?;
    ensure(prod.num_vertices() == 24 && prod.ambient_dim() == 4, || {
        format!("product has {} vertices", prod.num_vertices())
    })?;
    let (lo, hi) = prod.bounding_box();
    let a: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| l - (h - l)).collect();
    let b: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| h + (h - l)).collect();
    let region = range_pts(&a, &b);
    let pv = vertex_coords(&p6);
    let qv = vertex_coords(&sq);

    // Cone decomposition on a seeded sample of the region.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..400 {
        let x = &region[rng.random_range(0..region.len())];
        let (y, z) = (x[..2].to_vec(), x[2..].to_vec());
        for u in &pv {
            for v in &qv {
                let uv: Pt = u.iter().chain(v).copied().collect();
                let cone = lib(vertex_cone(&prod, &lp(&uv)))?;
                let expected = in_cone(&pv, u, &y) && in_cone(&qv, v, &z);
                ensure(cone.contains(&lp(x)) == expected, || {
                    format!("cone at {uv:?} disagrees with the factor cones at {x:?}")
                })?;
            }
        }
    }

    // Library test against the hull definition over the whole region.
    let verts: BTreeSet<Pt> = vertex_coords(&prod).into_iter().collect();
    let insertable_pts: Vec<Pt> = region
        .par_iter()
        .map(|x| -> Result<Option<Pt>, String> {
            let fast = lib(can_insert(&prod, &lp(x)))?;
            let mut pts: Vec<LatticePoint> = prod.vertices().to_vec();
            pts.push(lp(x));
            let hull = lib(convex_hull(&pts, 4))?;
            let by_hull = !verts.contains(x) && hull.num_vertices() == 25;
            ensure(fast == by_hull, || format!("can_insert disagrees with the hull at {x:?}"))?;
            Ok(fast.then(|| x.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    match insertable_pts.first() {
        None => Ok(format!("24 vertices, none of {} region points insertable", region.len())),
        Some(w) => {
            let confirmed = insertable(&vertex_coords(&prod), w);
            Err(format!(
                "{} of {} region points are insertable, e.g. {w:?} (reference agrees: {confirmed}); \
                 cone decomposition holds on 400 samples",
                insertable_pts.len(),
                region.len()
            ))
        }
    }
}

fn saturating() -> Verdict {
    let p = lib(saturating_polytope(6, 2))?;
    let vs = vertex_coords(&p);
    ensure(vs.len() == 16, || format!("{} vertices", vs.len()))?;
    ensure(vs.iter().all(|v| deletable(&vs, v, 6)), || "a vertex is not deletable".into())?;
    ensure(deletable_vertices(&p).len() == 16, || "library lists fewer deletable vertices".into())?;
    let verts: BTreeSet<&Pt> = vs.iter().collect();
    let rest: Vec<Pt> = box_pts(6, 2).into_iter().filter(|x| !verts.contains(x)).collect();
    ensure(rest.len() == 713, || format!("{} remaining points", rest.len()))?;
    rest.par_iter().try_for_each(|x| -> Result<(), String> {
        let mut pts: Vec<LatticePoint> = p.vertices().to_vec();
        pts.push(lp(x));
        let by_hull = lib(convex_hull(&pts, 6))?.num_vertices() == 17;
        ensure(by_hull, || format!("{x:?} is not insertable by the hull definition"))?;
        ensure(lib(can_insert(&p, &lp(x)))?, || format!("can_insert rejects {x:?}"))
    })?;
    Ok("16 vertices all deletable; all 713 other points of [0,2]^6 insertable".into())
}

fn impossibility_2d() -> Verdict {
    let polys = census(2, 2);
    let pts = box_pts(2, 2);
    let lib_polys = lib(enumerate_polytopes(2, 2, None))?;
    ensure(lib_polys.len() == polys.len(), || "census mismatch".into())?;
    for vs in &polys {
        let stuck = pts
            .iter()
            .find(|x| if vs.contains(x) { !deletable(vs, x, 2) } else { !insertable(vs, x) });
        ensure(stuck.is_some(), || format!("every box point moves for {}", key(2, vs)))?;
        let p = polytope(vs, 2)?;
        let x = stuck.unwrap();
        let lib_moves = if vs.contains(x) {
            deletable_vertices(&p).contains(&lp(x))
        } else {
            lib(can_insert(&p, &lp(x)))?
        };
        ensure(!lib_moves, || format!("library moves {x:?} in {}", key(2, vs)))?;
    }
    Ok(format!("all {} polygons of [0,2]^2 have a stuck box point", polys.len()))
}

/// Consecutive vertices of a convex polygon: all others strictly on one side.
fn consecutive(vs: &[Pt], a: &Pt, b: &Pt) -> bool {
    let side = |v: &Pt| ((b[0] - a[0]) * (v[1] - a[1]) - (b[1] - a[1]) * (v[0] - a[0])).signum();
    let signs: BTreeSet<i64> = vs.iter().filter(|v| *v != a && *v != b).map(side).collect();
    signs.len() == 1 && !signs.contains(&0)
}

fn flat(vs: &[Pt], strict: bool) -> bool {
    let span = (0..2)
        .map(|i| vs.iter().map(|v| v[i]).max().unwrap() - vs.iter().map(|v| v[i]).min().unwrap())
        .max()
        .unwrap();
    let r = if strict { 2 * span } else { span };
    let dot = |c: &[i64; 2], v: &Pt| c[0] * v[0] + c[1] * v[1];
    vs.iter().any(|a| {
        vs.iter().any(|b| {
            a != b
                && consecutive(vs, a, b)
                && (-r..=r).any(|c0| {
                    (-r..=r).any(|c1| {
                        let c = [c0, c1];
                        c != [0, 0]
                            && vs.iter().filter(|v| *v != a && *v != b).all(|v| {
                                let (lo, mid, hi) = (dot(&c, a), dot(&c, v), dot(&c, b));
                                if strict {
                                    lo < mid && mid < hi
                                } else {
                                    lo <= mid && mid <= hi
                                }
                            })
                    })
                })
        })
    })
}

fn oblique(vs: &[Pt]) -> bool {
    vs.iter().any(|a| {
        vs.iter().any(|b| {
            a != b
                && consecutive(vs, a, b)
                && vs
                    .iter()
                    .filter(|v| *v != a && *v != b)
                    .all(|v| (0..2).all(|i| a[i] < v[i] && v[i] < b[i]))
        })
    })
}

/// Replays a trace with reference legality checks and returns every polytope on it.
fn replay(t: &MoveTrace, d: usize) -> Result<Vec<Vec<Pt>>, String> {
    let mut cur = vertex_coords(t.start());
    let mut out = vec![cur.clone()];
    for m in t.moves() {
        let x = coords(&m.point);
        match m.kind {
            MoveKind::Insert => {
                ensure(insertable(&cur, &x), || format!("illegal insertion of {x:?} into {}", key(d, &cur)))?;
                cur.push(x);
                cur.sort();
            }
            MoveKind::Delete => {
                ensure(deletable(&cur, &x, d), || format!("illegal deletion of {x:?} from {}", key(d, &cur)))?;
                cur.retain(|v| *v != x);
            }
        }
        out.push(cur.clone());
    }
    let end = vertex_coords(&lib(t.end())?);
    ensure(end == cur, || "library replay ends elsewhere".into())?;
    Ok(out)
}

fn pentagon_pipeline() -> Verdict {
    let pentagons: Vec<Vec<Pt>> = census(2, 3).into_iter().filter(|vs| vs.len() == 5).collect();
    ensure(!pentagons.is_empty(), || "no pentagons".into())?;
    pentagons.par_iter().try_for_each(|vs| -> Result<(), String> {
        let name = key(2, vs);
        let p = polytope(vs, 2)?;
        let f = lib(flatten_pentagon(&p)).map_err(|e| format!("{name}: {e}"))?;
        let fsteps = replay(&f, 2).map_err(|e| format!("{name}: {e}"))?;
        let flat_end = fsteps.last().unwrap();
        ensure(f.len() <= 2 && flat_end.len() == 5 && flat(flat_end, false), || {
            format!("{name}: flattening took {} moves to {}", f.len(), key(2, flat_end))
        })?;
        let s = lib(make_strongly_flat(&lib(f.end())?)).map_err(|e| format!("{name}: {e}"))?;
        let ssteps = replay(&s, 2).map_err(|e| format!("{name}: {e}"))?;
        ensure(flat(ssteps.last().unwrap(), true), || format!("{name}: not strongly flat"))?;
        let o = lib(shear_to_oblique(&lib(s.end())?)).map_err(|e| format!("{name}: {e}"))?;
        let osteps = replay(&o, 2).map_err(|e| format!("{name}: {e}"))?;
        ensure(oblique(osteps.last().unwrap()), || format!("{name}: not oblique"))?;
        let sizes: BTreeSet<usize> = fsteps.iter().chain(&ssteps).chain(&osteps).map(Vec::len).collect();
        ensure(sizes.iter().all(|n| *n == 5 || *n == 6), || format!("{name}: vertex counts {sizes:?}"))
    })?;
    Ok(format!("{} pentagons of [0,3]^2 flattened, made strongly flat and sheared oblique", pentagons.len()))
}

fn random_polytope(rng: &mut ChaCha8Rng, d: usize) -> Vec<Pt> {
    loop {
        let m = rng.random_range(d + 1..=d + 4);
        let pts: Vec<Pt> = (0..m).map(|_| (0..d).map(|_| rng.random_range(0..=5)).collect()).collect();
        if full_dimensional(&pts, d) {
            return vertices(&pts);
        }
    }
}

fn move_engine() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cases: Vec<(usize, Vec<Pt>, Pt)> = (0..10_000)
        .map(|_| {
            let d = rng.random_range(2..=4);
            let vs = random_polytope(&mut rng, d);
            let x: Pt = (0..d).map(|_| rng.random_range(-2..=7)).collect();
            (d, vs, x)
        })
        .collect();
    let inserted: usize = cases
        .par_iter()
        .map(|(d, vs, x)| -> Result<usize, String> {
            let p = polytope(vs, *d)?;
            ensure(vertex_coords(&p) == *vs, || format!("vertex set of {} differs", key(*d, vs)))?;
            let fast = lib(can_insert(&p, &lp(x)))?;
            let slow = insertable(vs, x);
            ensure(fast == slow, || format!("can_insert({}, {x:?}) = {fast}, reference {slow}", key(*d, vs)))?;
            if fast {
                let q = lib(apply_insert(&p, &lp(x)))?;
                ensure(lib(apply_delete(&q, &lp(x)))? == p, || format!("insert/delete of {x:?} not inverse"))?;
            }
            let lib_del: BTreeSet<Pt> = deletable_vertices(&p).iter().map(coords).collect();
            let ref_del: BTreeSet<Pt> = vs.iter().filter(|v| deletable(vs, v, *d)).cloned().collect();
            ensure(lib_del == ref_del, || format!("deletable vertices of {} differ", key(*d, vs)))?;
            ensure(vs.len() - ref_del.len() <= d + 1, || format!("too many stuck vertices in {}", key(*d, vs)))?;
            for v in &ref_del {
                let q = lib(apply_delete(&p, &lp(v)))?;
                ensure(lib(can_insert(&q, &lp(v)))? && lib(apply_insert(&q, &lp(v)))? == p, || {
                    format!("delete/insert of {v:?} not inverse in {}", key(*d, vs))
                })?;
            }
            Ok(usize::from(fast))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("10000 pairs agree ({inserted} insertable); round trips and stuck-vertex bound hold"))
}

fn sampler() -> Verdict {
    let states: Vec<Vec<Pt>> = census(2, 1);
    let polys: Vec<Polytope> = states.iter().map(|vs| polytope(vs, 2)).collect::<Result<_, _>>()?;
    let index: BTreeMap<String, usize> = states.iter().enumerate().map(|(i, vs)| (key(2, vs), i)).collect();
    let pts = box_pts(2, 1);
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(pts.len()));
    let mut reference = vec![vec![BigRational::zero(); states.len()]; states.len()];
    for (i, vs) in states.iter().enumerate() {
        for x in &pts {
            let next: Vec<Pt> = if vs.contains(x) {
                if deletable(vs, x, 2) {
                    vs.iter().filter(|v| *v != x).cloned().collect()
                } else {
                    vs.clone()
                }
            } else if insertable(vs, x) {
                vs.iter().chain([x]).cloned().collect()
            } else {
                vs.clone()
            };
            reference[i][index[&key(2, &next)]] += &quarter;
        }
    }
    let m = lib(transition_matrix(&polys, 1))?;
    ensure(m == reference, || "transition matrix differs from the reference".into())?;
    let pi = lib(stationary_distribution(&m))?;
    let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
    ensure(pi.iter().all(|p| *p == fifth), || format!("stationary vector {pi:?}"))?;
    for j in 0..5 {
        let s: BigRational = reference.iter().map(|row| &fifth * &row[j]).sum();
        ensure(s == fifth, || "uniform vector is not stationary for the reference".into())?;
    }
    let steps = 1_000_000u64;
    let h = lib(run_chain(2, 1, steps, 0, 2024))?;
    let total = h.total();
    ensure(total == steps, || format!("histogram total {total}"))?;
    let tv: BigRational = states
        .iter()
        .map(|vs| {
            let c = h.counts().get(&key(2, vs)).copied().unwrap_or(0);
            (BigRational::new(BigInt::from(c), BigInt::from(total)) - &fifth).abs()
        })
        .sum::<BigRational>()
        / BigInt::from(2);
    let limit = BigRational::new(BigInt::from(2), BigInt::from(100));
    ensure(tv < limit, || format!("total variation {tv}"))?;
    Ok(format!("exact stationary vector uniform; total variation {tv} after 10^6 steps"))
}

fn corner_paths() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (d, k) in [(2usize, 3i64), (3, 2)] {
        let corner = vertex_coords(&lib(corner_simplex(d, k))?);
        for _ in 0..200 {
            let s = loop {
                let pts: Vec<Pt> = (0..=d).map(|_| (0..d).map(|_| rng.random_range(0..=k)).collect()).collect();
                if full_dimensional(&pts, d) {
                    let mut pts = pts;
                    pts.sort();
                    break pts;
                }
            };
            let name = key(d, &s);
            let t = lib(simplex_to_corner_path(&polytope(&s, d)?, k)).map_err(|e| format!("{name}: {e}"))?;
            let steps = replay(&t, d).map_err(|e| format!("{name}: {e}"))?;
            ensure(steps.last() == Some(&corner), || format!("{name}: path ends elsewhere"))?;
            for vs in &steps {
                ensure(vs.len() == d + 1 || vs.len() == d + 2, || format!("{name}: {} vertices", vs.len()))?;
                ensure(vs.iter().flatten().all(|c| (0..=k).contains(c)), || format!("{name}: leaves the box"))?;
            }
        }
    }
    Ok("400 random simplices reach the corner simplex inside the box".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("move graph census in [0,1]^2", 1, census_2_1),
        ("connectivity in [0,2]^2 and [0,3]^2", 120, connectivity_2d),
        ("connectivity in [0,1]^3 and [0,1]^4", 120, connectivity_cubes),
        ("insertion into every simplex", 300, simplex_insertion),
        ("P_n polygons admit no insertion", 10, pn_family),
        ("P_6 x [0,1]^2 admits no insertion in the inflated box", 60, products),
        ("saturating polytope in [0,2]^6", 120, saturating),
        ("stuck point in every polygon of [0,2]^2", 60, impossibility_2d),
        ("pentagon pipeline on [0,3]^2", 300, pentagon_pipeline),
        ("move engine against the reference", 120, move_engine),
        ("sampler stationarity and mixing", 30, sampler),
        ("simplex-to-corner paths", 120, corner_paths),
    ];
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (ok, detail) = match verdict {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("over time budget: {d}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {title} [{:.2}s of {limit}s] {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
