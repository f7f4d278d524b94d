//! The move graph on the lattice polytopes of `[0,k]^d` and its induced
//! subgraphs.
//!
//! Nodes are concrete vertex sets identified by canonical key; no quotient by
//! translations or symmetries is taken. All iteration orders are key orders,
//! so distances, components and exports are reproducible.

mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{affine_dimension, box_points, convex_hull, parse_key, LatticePoint, Polytope, MAX_DIM};
use crate::moves::{apply_move, neighbor_key, neighbor_moves, Move};

pub use io::{load_graph, GraphCache, NodeRecord};

/// Largest number of box lattice points for which subsets are scanned.
pub const ENUMERATION_BUDGET: usize = 16;

pub type VertexFilter = BTreeSet<usize>;

/// Node set plus symmetric adjacency. Equality is structural: `k` and the
/// filter describe how the graph was built and are not compared.
#[derive(Clone, Debug)]
pub struct MoveGraph {
    dim: usize,
    k: i64,
    filter: Option<VertexFilter>,
    nodes: BTreeMap<String, Polytope>,
    adjacency: BTreeMap<String, Vec<String>>,
}

impl PartialEq for MoveGraph {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.nodes == o.nodes && self.adjacency == o.adjacency
    }
}

impl Eq for MoveGraph {}

impl MoveGraph {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn box_size(&self) -> i64 {
        self.k
    }

    pub fn filter(&self) -> Option<&VertexFilter> {
        self.filter.as_ref()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn nodes(&self) -> &BTreeMap<String, Polytope> {
        &self.nodes
    }

    pub fn node(&self, key: &str) -> Option<&Polytope> {
        self.nodes.get(key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.nodes.contains_key(key)
    }

    /// Sorted neighbor keys.
    pub fn neighbors(&self, key: &str) -> Option<&[String]> {
        self.adjacency.get(key).map(Vec::as_slice)
    }

    pub fn degree(&self, key: &str) -> usize {
        self.neighbors(key).map_or(0, <[String]>::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Unordered edges `(a, b)` with `a < b`, in key order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.adjacency.iter().flat_map(|(a, ns)| {
            ns.iter()
                .filter(move |b| a < *b)
                .map(move |b| (a.as_str(), b.as_str()))
        })
    }

    /// Number of nodes per vertex count.
    pub fn vertex_count_census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in self.nodes.values() {
            *out.entry(p.num_vertices()).or_default() += 1;
        }
        out
    }

    /// Whether every adjacency list is sorted, mirrored and inside the node set.
    pub fn is_symmetric(&self) -> bool {
        self.adjacency.iter().all(|(a, ns)| {
            ns.windows(2).all(|w| w[0] < w[1])
                && ns.iter().all(|b| {
                    self.adjacency
                        .get(b)
                        .is_some_and(|back| back.binary_search(a).is_ok())
                })
        })
    }

    fn from_parts(
        dim: usize,
        k: i64,
        filter: Option<VertexFilter>,
        nodes: BTreeMap<String, Polytope>,
        adjacency: BTreeMap<String, Vec<String>>,
    ) -> Self {
        MoveGraph {
            dim,
            k,
            filter,
            nodes,
            adjacency,
        }
    }
}

fn check_params(d: usize, k: i64) -> Result<()> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if k < 1 {
        return Err(Error::InvalidInput(format!("box size {k} must be positive")));
    }
    Ok(())
}

fn allowed(filter: Option<&VertexFilter>, n: usize) -> bool {
    filter.is_none_or(|f| f.contains(&n))
}

/// Every full-dimensional lattice polytope in `[0,k]^d`, found by scanning
/// all subsets of the box lattice points and keeping those that equal the
/// vertex set of their hull. Sorted by canonical key.
pub fn enumerate_polytopes(d: usize, k: i64, filter: Option<&VertexFilter>) -> Result<Vec<Polytope>> {
    check_params(d, k)?;
    let n = (k + 1)
        .checked_pow(d as u32)
        .filter(|n| *n as usize <= ENUMERATION_BUDGET)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "[0,{k}]^{d} has more than {ENUMERATION_BUDGET} lattice points"
            ))
        })? as usize;
    let pts: Vec<LatticePoint> = box_points(d, k).collect();
    let mut found: Vec<Polytope> = (1u32..1 << n)
        .into_par_iter()
        .filter(|mask| mask.count_ones() as usize > d)
        .filter_map(|mask| {
            let subset: Vec<LatticePoint> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pts[i].clone())
                .collect();
            if affine_dimension(&subset).ok()? != d as i64 {
                return None;
            }
            let p = convex_hull(&subset, d).ok()?;
            (p.num_vertices() == subset.len()).then_some(p)
        })
        .filter(|p| allowed(filter, p.num_vertices()))
        .collect();
    found.sort_by_cached_key(Polytope::canonical_key);
    Ok(found)
}

/// Every lattice `d`-simplex in `[0,k]^d`, sorted by canonical key.
pub fn enumerate_simplices(d: usize, k: i64) -> Result<Vec<Polytope>> {
    check_params(d, k)?;
    let pts: Vec<LatticePoint> = box_points(d, k).collect();
    let n = pts.len();
    // first index fixed per task; the rest by lexicographic combination order
    let mut out: Vec<Polytope> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut idx: Vec<usize> = (first..first + d + 1).collect();
            if idx[d] >= n {
                return found.into_iter();
            }
            loop {
                let sub: Vec<LatticePoint> = idx.iter().map(|&i| pts[i].clone()).collect();
                if affine_dimension(&sub).ok() == Some(d as i64) {
                    found.push(convex_hull(&sub, d).expect("affinely independent points"));
                }
                let Some(i) = (1..=d).rev().find(|&i| idx[i] < n - 1 - (d - i)) else {
                    break;
                };
                idx[i] += 1;
                for j in i + 1..=d {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            found.into_iter()
        })
        .collect();
    out.sort_by_cached_key(Polytope::canonical_key);
    Ok(out)
}

/// Neighbor keys of `p` among single moves inside the box and filter.
fn neighbor_keys(p: &Polytope, k: i64, filter: Option<&VertexFilter>) -> Result<Vec<(String, Move)>> {
    Ok(neighbor_moves(p, k, filter)?
        .into_iter()
        .map(|m| (neighbor_key(p, &m), m))
        .collect())
}

/// The subgraph induced by `nodes` (restricted to the filter) in the move
/// graph of `[0,k]^d`.
pub fn build_graph(nodes: &[Polytope], k: i64, filter: Option<&VertexFilter>) -> Result<MoveGraph> {
    let dim = nodes.first().map_or(2, Polytope::ambient_dim);
    if nodes.iter().any(|p| p.ambient_dim() != dim) {
        return Err(Error::InvalidInput("nodes of different dimensions".into()));
    }
    if k < 1 || nodes.iter().any(|p| !p.in_box(k)) {
        return Err(Error::OutOfBox(k));
    }
    let node_map: BTreeMap<String, Polytope> = nodes
        .iter()
        .filter(|p| allowed(filter, p.num_vertices()))
        .map(|p| (p.canonical_key(), p.clone()))
        .collect();
    let lists: Vec<(String, Vec<String>)> = node_map
        .par_iter()
        .map(|(key, p)| {
            let mut ns: Vec<String> = neighbor_keys(p, k, filter)?
                .into_iter()
                .map(|(n, _)| n)
                .filter(|n| node_map.contains_key(n))
                .collect();
            ns.sort();
            Ok((key.clone(), ns))
        })
        .collect::<Result<_>>()?;
    let adjacency = lists.into_iter().collect();
    Ok(MoveGraph::from_parts(dim, k, filter.cloned(), node_map, adjacency))
}

/// Connected component of `start` in the move graph of `[0,k]^d` under the
/// filter, explored breadth-first with each frontier in key order.
pub fn bfs_closure(start: &Polytope, k: i64, filter: Option<&VertexFilter>) -> Result<MoveGraph> {
    let d = start.ambient_dim();
    check_params(d, k)?;
    if !start.in_box(k) {
        return Err(Error::OutOfBox(k));
    }
    let mut nodes = BTreeMap::new();
    let mut adjacency = BTreeMap::new();
    if !allowed(filter, start.num_vertices()) {
        return Ok(MoveGraph::from_parts(d, k, filter.cloned(), nodes, adjacency));
    }
    nodes.insert(start.canonical_key(), start.clone());
    let mut frontier = vec![start.canonical_key()];
    while !frontier.is_empty() {
        let expanded: Vec<(String, Vec<(String, Move)>)> = frontier
            .par_iter()
            .map(|key| {
                let p = &nodes[key];
                Ok((key.clone(), neighbor_keys(p, k, filter)?))
            })
            .collect::<Result<_>>()?;
        let mut fresh: BTreeMap<String, (String, Move)> = BTreeMap::new();
        for (key, ns) in &expanded {
            for (n, m) in ns {
                if !nodes.contains_key(n) {
                    fresh.entry(n.clone()).or_insert_with(|| (key.clone(), m.clone()));
                }
            }
        }
        let built: Vec<(String, Polytope)> = fresh
            .into_par_iter()
            .map(|(n, (from, m))| Ok((n, apply_move(&nodes[&from], &m)?)))
            .collect::<Result<_>>()?;
        frontier = built.iter().map(|(n, _)| n.clone()).collect();
        nodes.extend(built);
        for (key, ns) in expanded {
            let mut ns: Vec<String> = ns.into_iter().map(|(n, _)| n).collect();
            ns.sort();
            adjacency.insert(key, ns);
        }
    }
    Ok(MoveGraph::from_parts(d, k, filter.cloned(), nodes, adjacency))
}

/// Components as sorted key lists, ordered by their smallest key.
pub fn connected_components(g: &MoveGraph) -> Vec<Vec<String>> {
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut out = Vec::new();
    for key in g.nodes.keys() {
        if !seen.insert(key) {
            continue;
        }
        let mut comp = vec![key.clone()];
        let mut queue = VecDeque::from([key.as_str()]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).unwrap_or(&[]) {
                if seen.insert(v) {
                    comp.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// BFS distances from `key` to every node of its component.
pub fn distances_from(g: &MoveGraph, key: &str) -> Result<BTreeMap<String, usize>> {
    if !g.contains(key) {
        return Err(Error::UnknownNode(key.to_string()));
    }
    let mut dist = BTreeMap::from([(key.to_string(), 0usize)]);
    let mut queue = VecDeque::from([key.to_string()]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for v in g.neighbors(&u).unwrap_or(&[]) {
            if !dist.contains_key(v) {
                dist.insert(v.clone(), du + 1);
                queue.push_back(v.clone());
            }
        }
    }
    Ok(dist)
}

/// Length of a shortest move sequence from `p` to `q`, or `None` when they
/// lie in different components.
pub fn bfs_distance(g: &MoveGraph, p: &Polytope, q: &Polytope) -> Result<Option<usize>> {
    let (a, b) = (p.canonical_key(), q.canonical_key());
    if !g.contains(&b) {
        return Err(Error::UnknownNode(b));
    }
    Ok(distances_from(g, &a)?.get(&b).copied())
}

/// The single move turning node `a` into node `b`, read off the vertex sets.
pub fn edge_move(a: &str, b: &str) -> Result<Move> {
    let (_, va) = parse_key(a)?;
    let (_, vb) = parse_key(b)?;
    let (sa, sb): (BTreeSet<_>, BTreeSet<_>) = (va.into_iter().collect(), vb.into_iter().collect());
    let added: Vec<_> = sb.difference(&sa).cloned().collect();
    let removed: Vec<_> = sa.difference(&sb).cloned().collect();
    match (added.as_slice(), removed.as_slice()) {
        ([x], []) => Ok(Move::insert(x.clone())),
        ([], [v]) => Ok(Move::delete(v.clone())),
        _ => Err(Error::IllegalMove(format!("{a} and {b} differ by more than one point"))),
    }
}

/// Replays up to `samples` edges (chosen with a seeded generator) through the
/// move engine; returns the number audited or the first invalid edge.
pub fn audit_edges(g: &MoveGraph, samples: usize, seed: u64) -> Result<usize> {
    let edges: Vec<(&str, &str)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked: Vec<&(&str, &str)> = if edges.len() <= samples {
        edges.iter().collect()
    } else {
        edges.choose_multiple(&mut rng, samples).collect()
    };
    for (a, b) in &picked {
        let m = edge_move(a, b)?;
        let q = apply_move(&g.nodes[*a], &m)?;
        if q.canonical_key() != *b || !q.in_box(g.k) {
            return Err(Error::IllegalMove(format!("edge {a} -- {b} does not replay")));
        }
    }
    Ok(picked.len())
}
