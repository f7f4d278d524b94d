//! Graph persistence. JSONL holds one `{"key","vertices","neighbors"}`
//! record per node in key order; DOT uses canonical keys as node ids and
//! lists each unordered edge once.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{MoveGraph, VertexFilter};
use crate::error::{Error, Result};
use crate::kernel::{key_of, LatticePoint, Polytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub key: String,
    pub vertices: Vec<LatticePoint>,
    pub neighbors: Vec<String>,
}

impl MoveGraph {
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (key, p) in &self.nodes {
            let rec = NodeRecord {
                key: key.clone(),
                vertices: p.vertices().to_vec(),
                neighbors: self.adjacency.get(key).cloned().unwrap_or_default(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph lattice_moves {\n");
        for key in self.nodes.keys() {
            let _ = writeln!(out, "  \"{key}\";");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }

    pub fn write_jsonl(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_jsonl())?;
        Ok(())
    }

    pub fn write_dot(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_dot())?;
        Ok(())
    }

    /// Parses JSONL. The box size is taken as the largest coordinate and the
    /// filter is left unset; callers that know them use [`GraphCache`].
    pub fn from_jsonl(text: &str) -> Result<MoveGraph> {
        let mut nodes = BTreeMap::new();
        let mut adjacency = BTreeMap::new();
        let mut dim = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", i + 1));
            let rec: NodeRecord = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
            let d = rec
                .vertices
                .first()
                .map(LatticePoint::dim)
                .ok_or_else(|| at("field `vertices`: empty".into()))?;
            if *dim.get_or_insert(d) != d {
                return Err(at(format!("field `vertices`: dimension {d} differs from earlier nodes")));
            }
            let p = Polytope::from_vertices(&rec.vertices, d).map_err(|e| at(format!("field `vertices`: {e}")))?;
            if key_of(d, p.vertices()) != rec.key {
                return Err(at(format!("field `key`: `{}` does not match the vertices", rec.key)));
            }
            let mut ns = rec.neighbors;
            ns.sort();
            ns.dedup();
            if nodes.insert(rec.key.clone(), p).is_some() {
                return Err(at(format!("field `key`: duplicate node `{}`", rec.key)));
            }
            adjacency.insert(rec.key, ns);
        }
        let dim = dim.ok_or_else(|| Error::Parse("graph file has no nodes".into()))?;
        let k = nodes
            .values()
            .flat_map(|p| p.vertices().iter().flat_map(|v| v.coords().iter().copied()))
            .max()
            .unwrap_or(1)
            .max(1);
        let g = MoveGraph::from_parts(dim, k, None, nodes, adjacency);
        if !g.is_symmetric() {
            return Err(Error::Parse("field `neighbors`: adjacency is not symmetric or names unknown nodes".into()));
        }
        Ok(g)
    }
}

pub fn load_graph(path: &Path) -> Result<MoveGraph> {
    MoveGraph::from_jsonl(&fs::read_to_string(path)?)
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Directory of JSONL graphs keyed by `(d, k, filter)`, each stored next to
/// the SHA-256 of its contents. A file whose hash does not match is a miss.
#[derive(Clone, Debug)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GraphCache { dir: dir.into() }
    }

    pub fn path_for(&self, d: usize, k: i64, filter: Option<&VertexFilter>) -> PathBuf {
        let f = match filter {
            None => "all".to_string(),
            Some(f) => f.iter().map(usize::to_string).collect::<Vec<_>>().join("-"),
        };
        self.dir.join(format!("lambda-d{d}-k{k}-v{f}.jsonl"))
    }

    pub fn load(&self, d: usize, k: i64, filter: Option<&VertexFilter>) -> Result<Option<MoveGraph>> {
        let path = self.path_for(d, k, filter);
        let (Ok(text), Ok(hash)) = (fs::read_to_string(&path), fs::read_to_string(path.with_extension("sha256")))
        else {
            return Ok(None);
        };
        if sha256_hex(&text) != hash.trim() {
            return Ok(None);
        }
        let mut g = MoveGraph::from_jsonl(&text)?;
        g.k = k;
        g.filter = filter.cloned();
        Ok(Some(g))
    }

    pub fn store(&self, g: &MoveGraph) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(g.dim, g.k, g.filter.as_ref());
        let text = g.to_jsonl();
        fs::write(&path, &text)?;
        fs::write(path.with_extension("sha256"), sha256_hex(&text) + "\n")?;
        Ok(path)
    }

    /// Cached graph, or the result of `build` after storing it.
    pub fn load_or_build(
        &self,
        d: usize,
        k: i64,
        filter: Option<&VertexFilter>,
        build: impl FnOnce() -> Result<MoveGraph>,
    ) -> Result<MoveGraph> {
        if let Some(g) = self.load(d, k, filter)? {
            return Ok(g);
        }
        let g = build()?;
        self.store(&g)?;
        Ok(g)
    }
}
