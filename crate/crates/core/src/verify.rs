//! Desk-scale verification suites. Every suite is deterministic: fixed
//! seeds, key-ordered scans, and the first failing item is kept as witness.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    cartesian_product, corner_simplex, find_simplex_insertion, flatten_pentagon, is_flat, is_oblique,
    make_strongly_flat, pn_polygon, saturating_polytope, shear_to_oblique,
};
use crate::error::{Error, Result};
use crate::graph::{
    audit_edges, bfs_closure, build_graph, connected_components, enumerate_polytopes, enumerate_simplices,
    VertexFilter,
};
use crate::kernel::{box_points, convex_hull, polytope_to_json, range_points, LatticePoint, Polytope};
use crate::moves::{
    apply_delete, can_delete, deletable_vertices, insertable_cells_2d, insertable_points, insertable_unchecked,
    vertex_cone, CellLattice, MoveTrace,
};
use crate::sampler::{run_chain, stationary_distribution, transition_matrix, tv_distance_to_uniform};

pub const SUITES: [&str; 9] = [
    "connectivity-2d",
    "connectivity-3d",
    "simplex-insertion",
    "pn-family",
    "products",
    "saturating",
    "impossibility-2d",
    "pentagon-pipeline",
    "sampler-uniformity",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub passed: bool,
    /// Reproducer for a failure, or a summary value for a pass.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}: {} ({} checks, {} ms)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.elapsed_ms
        );
        for c in &self.checks {
            let _ = write!(out, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.description);
            if let Some(w) = &c.witness {
                let _ = write!(out, " :: {w}");
            }
            out.push('\n');
        }
        out
    }
}

struct Suite<'a> {
    checks: Vec<Check>,
    progress: &'a (dyn Fn(&str) + Sync),
}

impl Suite<'_> {
    fn check(&mut self, description: impl Into<String>, passed: bool, witness: Option<String>) {
        let description = description.into();
        (self.progress)(&format!("{} {description}", if passed { "pass" } else { "FAIL" }));
        self.checks.push(Check {
            description,
            passed,
            witness,
        });
    }

    /// Passes when `first_failure` is `None`; otherwise the failure is the witness.
    fn expect_none(&mut self, description: impl Into<String>, first_failure: Option<String>, summary: String) {
        match first_failure {
            None => self.check(description, true, Some(summary)),
            Some(w) => self.check(description, false, Some(w)),
        }
    }
}

/// Runs the named suite; `progress` receives one line per finished check.
pub fn run_suite(name: &str, progress: &(dyn Fn(&str) + Sync)) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut s = Suite {
        checks: Vec::new(),
        progress,
    };
    match name {
        "connectivity-2d" => connectivity_2d(&mut s)?,
        "connectivity-3d" => connectivity_3d(&mut s)?,
        "simplex-insertion" => simplex_insertion(&mut s)?,
        "pn-family" => pn_family(&mut s)?,
        "products" => products(&mut s)?,
        "saturating" => saturating(&mut s)?,
        "impossibility-2d" => impossibility_2d(&mut s)?,
        "pentagon-pipeline" => pentagon_pipeline(&mut s)?,
        "sampler-uniformity" => sampler_uniformity(&mut s)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite `{other}` (expected one of {})",
                SUITES.join(", ")
            )))
        }
    }
    Ok(VerifyReport {
        suite: name.to_string(),
        checks: s.checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn filter(v: &[usize]) -> VertexFilter {
    v.iter().copied().collect()
}

/// Enumeration equals the BFS closure from the corner simplex, and the
/// `filter` subgraph of the enumeration is connected and reached from the corner.
fn closure_checks(s: &mut Suite, d: usize, k: i64, sub: &[usize]) -> Result<()> {
    let all = enumerate_polytopes(d, k, None)?;
    let corner = corner_simplex(d, k)?;
    let g = bfs_closure(&corner, k, None)?;
    let keys: BTreeSet<String> = all.iter().map(Polytope::canonical_key).collect();
    let missing = keys.iter().find(|k| !g.contains(k)).cloned();
    s.expect_none(
        format!("Λ({d},{k}): BFS closure from the corner equals the enumeration"),
        missing.or_else(|| (g.num_nodes() != keys.len()).then(|| "closure has extra nodes".into())),
        format!("{} polytopes, {} edges", g.num_nodes(), g.num_edges()),
    );
    let comps = connected_components(&g);
    s.check(format!("Λ({d},{k}) is connected"), comps.len() == 1, Some(format!("{} component(s)", comps.len())));
    let bound = (k as usize + 1).pow(d as u32);
    s.check(
        format!("Λ({d},{k}): degrees at most {bound}"),
        g.max_degree() <= bound,
        Some(format!("max degree {}", g.max_degree())),
    );
    let audited = audit_edges(&g, 1000, 0x5eed);
    s.check(
        format!("Λ({d},{k}): sampled edges replay as single moves"),
        audited.is_ok(),
        Some(match audited {
            Ok(n) => format!("{n} edges audited"),
            Err(e) => e.to_string(),
        }),
    );

    let f = filter(sub);
    let induced = build_graph(&all, k, Some(&f))?;
    let comps = connected_components(&induced);
    s.check(
        format!("Λ({d},{k}) induced on vertex counts {sub:?} is connected"),
        comps.len() == 1,
        Some(format!("{} nodes, {} component(s)", induced.num_nodes(), comps.len())),
    );
    let reached = bfs_closure(&corner, k, Some(&f))?;
    let unreached = induced.nodes().keys().find(|k| !reached.contains(k)).cloned();
    s.expect_none(
        format!("Λ({d},{k}): filtered BFS from the corner reaches every polytope with {sub:?} vertices"),
        unreached,
        format!("{} reached", reached.num_nodes()),
    );
    Ok(())
}

fn connectivity_2d(s: &mut Suite) -> Result<()> {
    let g = build_graph(&enumerate_polytopes(2, 1, None)?, 1, None)?;
    let sq = pn_polygon(4)?.canonical_key();
    s.check(
        "Λ(2,1) has 5 polytopes and is a star centred at the square",
        g.num_nodes() == 5 && g.num_edges() == 4 && g.degree(&sq) == 4,
        Some(format!("{} nodes, {} edges", g.num_nodes(), g.num_edges())),
    );
    for k in 1..=3 {
        closure_checks(s, 2, k, &[3, 4])?;
    }
    Ok(())
}

fn connectivity_3d(s: &mut Suite) -> Result<()> {
    for d in [3, 4] {
        closure_checks(s, d, 1, &[d + 1, d + 2])?;
    }
    Ok(())
}

fn simplex_insertion(s: &mut Suite) -> Result<()> {
    for (d, k) in [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
        let simplices = enumerate_simplices(d, k)?;
        let bad = simplices.par_iter().find_map_first(|p| {
            let pts = insertable_points(p, k).ok()?;
            match find_simplex_insertion(p, k) {
                Ok(x) if pts.contains(&x) => None,
                Ok(x) => Some(format!("{} -> {x} not insertable", polytope_to_json(p))),
                Err(e) => Some(format!("{}: {e}", polytope_to_json(p))),
            }
        });
        s.expect_none(
            format!("every simplex in [0,{k}]^{d} admits the constructed insertion"),
            bad,
            format!("{} simplices", simplices.len()),
        );
    }
    Ok(())
}

/// Whole-plane insertable lattice points when finite, or a witness of an
/// unbounded set.
fn plane_insertable(p: &Polytope) -> Result<std::result::Result<BTreeSet<LatticePoint>, LatticePoint>> {
    let mut out = BTreeSet::new();
    for c in insertable_cells_2d(p)? {
        match c.lattice {
            CellLattice::Finite(v) => out.extend(v),
            CellLattice::Infinite { witness } => return Ok(Err(witness)),
        }
    }
    Ok(Ok(out))
}

fn pn_family(s: &mut Suite) -> Result<()> {
    for n in [4, 6, 7, 8, 9, 10] {
        let p = pn_polygon(n)?;
        let ins = plane_insertable(&p)?;
        let witness = match (&ins, p.num_vertices() == n) {
            (_, false) => Some(format!("{} has {} vertices", polytope_to_json(&p), p.num_vertices())),
            (Ok(set), true) if set.is_empty() => None,
            (Ok(set), true) => Some(format!("{} accepts {}", polytope_to_json(&p), set.iter().next().unwrap())),
            (Err(x), true) => Some(format!("{} accepts {x}", polytope_to_json(&p))),
        };
        s.expect_none(
            format!("P_{n} has {n} vertices and no insertable lattice point in the plane"),
            witness,
            polytope_to_json(&p),
        );
    }
    let p10 = pn_polygon(10)?;
    let mut bad = None;
    for v in p10.vertices() {
        if !can_delete(&p10, v)? {
            bad = Some(format!("{v} is not deletable"));
            break;
        }
        let q = apply_delete(&p10, v)?;
        match plane_insertable(&q)? {
            Ok(set) if set.len() == 1 && set.contains(v) => {}
            Ok(set) => {
                bad = Some(format!("deleting {v} leaves insertable set {set:?}"));
                break;
            }
            Err(x) => {
                bad = Some(format!("deleting {v} leaves infinitely many, e.g. {x}"));
                break;
            }
        }
    }
    s.expect_none(
        "each vertex of P_10 is deletable and is the only point insertable afterwards",
        bad,
        "component of one decagon and ten enneagons".into(),
    );
    Ok(())
}

/// `[lo - w, hi + w]` per axis, where `w = hi - lo`.
fn inflated_box(p: &Polytope) -> Vec<LatticePoint> {
    let (lo, hi) = p.bounding_box();
    let a: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| l - (h - l)).collect();
    let b: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| h + (h - l)).collect();
    range_points(&a, &b)
}

fn unit_cube(d: usize) -> Result<Polytope> {
    convex_hull(&box_points(d, 1).collect::<Vec<_>>(), d)
}

fn products(s: &mut Suite) -> Result<()> {
    let sq = unit_cube(2)?;
    for n in [4, 6] {
        let pn = pn_polygon(n)?;
        let prod = cartesian_product(&pn, &sq)?;
        let region = inflated_box(&prod);
        let first = region
            .par_iter()
            .find_first(|x| insertable_unchecked(&prod, x))
            .map(|x| format!("{x} is insertable in P_{n} x [0,1]^2"));
        s.expect_none(
            format!("P_{n} x [0,1]^2 has {} vertices and no insertable point in the inflated box", n * 4),
            first.or_else(|| (prod.num_vertices() != 4 * n).then(|| format!("{} vertices", prod.num_vertices()))),
            format!("{} points scanned", region.len()),
        );

        // insertable exactly when outside and one factor lies at a non-vertex lattice point
        let mismatch = region.par_iter().find_map_first(|x| {
            let (y, z) = (
                LatticePoint::new(x.coords()[..2].to_vec()),
                LatticePoint::new(x.coords()[2..].to_vec()),
            );
            let inside = pn.contains_point(&y).ok()? && sq.contains_point(&z).ok()?;
            let loose = (pn.contains_point(&y).ok()? && !pn.is_vertex(&y))
                || (sq.contains_point(&z).ok()? && !sq.is_vertex(&z));
            let expected = !inside && loose;
            (insertable_unchecked(&prod, x) != expected).then(|| x.to_string())
        });
        s.expect_none(
            format!("P_{n} x [0,1]^2: insertable points are the outside points over a non-vertex factor point"),
            mismatch,
            format!("{} points compared", region.len()),
        );

        let mut rng = ChaCha8Rng::seed_from_u64(0xc0e5 + n as u64);
        let mut bad = None;
        'outer: for u in pn.vertices() {
            for v in sq.vertices() {
                let (cu, cv, cw) = (vertex_cone(&pn, u)?, vertex_cone(&sq, v)?, vertex_cone(&prod, &u.concat(v))?);
                for _ in 0..64 {
                    let x = &region[rng.random_range(0..region.len())];
                    let (y, z) = (
                        LatticePoint::new(x.coords()[..2].to_vec()),
                        LatticePoint::new(x.coords()[2..].to_vec()),
                    );
                    if cw.contains(x) != (cu.contains(&y) && cv.contains(&z)) {
                        bad = Some(format!("vertex {}: {x}", u.concat(v)));
                        break 'outer;
                    }
                }
            }
        }
        s.expect_none(
            format!("P_{n} x [0,1]^2: vertex cones are products of the factor cones"),
            bad,
            format!("{} sampled points", 64 * pn.num_vertices() * 4),
        );
    }
    Ok(())
}

fn saturating(s: &mut Suite) -> Result<()> {
    let (d, k) = (6, 2);
    let p = saturating_polytope(d, k)?;
    s.check(
        "saturating polytope in [0,2]^6 has 16 vertices",
        p.num_vertices() == 16,
        Some(format!("{} vertices", p.num_vertices())),
    );
    let dels = deletable_vertices(&p);
    s.check(
        "all of its vertices are deletable",
        dels.len() == p.num_vertices(),
        Some(format!("{} deletable", dels.len())),
    );
    let pts: Vec<LatticePoint> = box_points(d, k).collect();
    let bad = pts
        .par_iter()
        .find_first(|x| !p.is_vertex(x) && !insertable_unchecked(&p, x))
        .map(|x| x.to_string());
    let others = pts.len() - p.num_vertices();
    s.expect_none(
        format!("all {others} other lattice points of [0,2]^6 are insertable"),
        bad,
        format!("{} points classified", pts.len()),
    );
    Ok(())
}

fn impossibility_2d(s: &mut Suite) -> Result<()> {
    let k = 2;
    let all = enumerate_polytopes(2, k, None)?;
    let pts: Vec<LatticePoint> = box_points(2, k).collect();
    let bad = all.par_iter().find_map_first(|p| {
        let stuck = pts.iter().any(|x| {
            if p.is_vertex(x) {
                !can_delete(p, x).unwrap_or(true)
            } else {
                !insertable_unchecked(p, x)
            }
        });
        (!stuck).then(|| polytope_to_json(p))
    });
    s.expect_none(
        "every polygon in [0,2]^2 has a box point that is neither insertable nor a deletable vertex",
        bad,
        format!("{} polygons", all.len()),
    );
    Ok(())
}

fn pipeline_failure(p: &Polytope) -> Option<String> {
    let fail = |stage: &str, e: String| Some(format!("{} {stage}: {e}", polytope_to_json(p)));
    let counts_ok = |t: &MoveTrace| {
        t.replay()
            .map(|st| st.iter().all(|q| matches!(q.num_vertices(), 5 | 6)))
            .unwrap_or(false)
    };
    let t = match flatten_pentagon(p) {
        Ok(t) => t,
        Err(e) => return fail("flatten", e.to_string()),
    };
    let Ok(flat) = t.end() else {
        return fail("flatten", "trace does not replay".into());
    };
    if t.len() > 2 || flat.num_vertices() != 5 || !matches!(is_flat(&flat, false), Ok(Some(_))) {
        return fail("flatten", format!("{} moves, result not a flat pentagon", t.len()));
    }
    let t = match make_strongly_flat(&flat) {
        Ok(t) => t,
        Err(e) => return fail("strongly flat", e.to_string()),
    };
    let Ok(strong) = t.end() else {
        return fail("strongly flat", "trace does not replay".into());
    };
    if !counts_ok(&t) || !matches!(is_flat(&strong, true), Ok(Some(_))) {
        return fail("strongly flat", "invalid trace".into());
    }
    let t = match shear_to_oblique(&strong) {
        Ok(t) => t,
        Err(e) => return fail("shear", e.to_string()),
    };
    match t.end() {
        Ok(o) if counts_ok(&t) && matches!(is_oblique(&o), Ok(Some(_))) => None,
        _ => fail("shear", "invalid trace".into()),
    }
}

fn pentagon_pipeline(s: &mut Suite) -> Result<()> {
    let pentagons = enumerate_polytopes(2, 3, Some(&filter(&[5])))?;
    let bad = pentagons.par_iter().find_map_first(pipeline_failure);
    s.expect_none(
        "every pentagon in [0,3]^2 is flattened, made strongly flat and sheared to an oblique pentagon",
        bad,
        format!("{} pentagons", pentagons.len()),
    );
    Ok(())
}

fn sampler_uniformity(s: &mut Suite) -> Result<()> {
    for (d, k) in [(2, 1), (3, 1)] {
        let states = enumerate_polytopes(d, k, None)?;
        let m = transition_matrix(&states, k)?;
        let asym = (0..m.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] != m[j][i])
            .map(|(i, j)| format!("{} vs {}", states[i].canonical_key(), states[j].canonical_key()));
        s.expect_none(
            format!("Λ({d},{k}) transition kernel is symmetric"),
            asym,
            format!("{} states", states.len()),
        );
    }
    let states = enumerate_polytopes(2, 1, None)?;
    let pi = stationary_distribution(&transition_matrix(&states, 1)?)?;
    let uniform = BigRational::one() / BigRational::from_integer(states.len().into());
    s.check(
        "exact stationary vector on Λ(2,1) is uniform",
        pi.iter().all(|p| *p == uniform),
        Some(pi.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
    );
    let h = run_chain(2, 1, 1_000_000, 0, 2024)?;
    let tv = tv_distance_to_uniform(&h, states.len())?;
    let bound = BigRational::new(2.into(), 100.into());
    s.check(
        "empirical total variation to uniform after 10^6 steps is below 0.02",
        tv < bound && tv >= BigRational::zero(),
        Some(format!("tv = {:.6}", tv.to_f64().unwrap_or(f64::NAN))),
    );
    Ok(())
}
