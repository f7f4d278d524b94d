//! Polytope JSON: `{"dim": d, "vertices": [[int, ...], ...]}` with vertices
//! sorted lexicographically.

use serde::{Deserialize, Serialize};

use super::point::LatticePoint;
use super::polytope::{convex_hull, Polytope};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<LatticePoint>,
}

impl From<&Polytope> for PolytopeJson {
    fn from(p: &Polytope) -> Self {
        PolytopeJson {
            dim: p.ambient_dim(),
            vertices: p.vertices().to_vec(),
        }
    }
}

impl PolytopeJson {
    /// Validates the record. Unless `canonicalize` is set, the vertex list
    /// must already be sorted and consist of extreme points only.
    pub fn into_polytope(self, canonicalize: bool) -> Result<Polytope> {
        if !(2..=super::polytope::MAX_DIM).contains(&self.dim) {
            return Err(Error::Parse(format!(
                "field `dim`: {} outside the supported range 2..=8",
                self.dim
            )));
        }
        if let Some((i, v)) = self
            .vertices
            .iter()
            .enumerate()
            .find(|(_, v)| v.dim() != self.dim)
        {
            return Err(Error::Parse(format!(
                "field `vertices[{i}]`: {v} has {} coordinates, expected {}",
                v.dim(),
                self.dim
            )));
        }
        let p = convex_hull(&self.vertices, self.dim)
            .map_err(|e| Error::Parse(format!("field `vertices`: {e}")))?;
        if !canonicalize {
            if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(
                    "field `vertices`: not strictly sorted lexicographically".into(),
                ));
            }
            if self.vertices != p.vertices() {
                return Err(Error::Parse(
                    "field `vertices`: contains points that are not vertices of the hull".into(),
                ));
            }
        }
        Ok(p)
    }
}

pub fn polytope_to_json(p: &Polytope) -> String {
    serde_json::to_string(&PolytopeJson::from(p)).expect("polytope serializes")
}

pub fn polytope_from_json(text: &str, canonicalize: bool) -> Result<Polytope> {
    let rec: PolytopeJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    rec.into_polytope(canonicalize)
}

/// Point-list input: either a bare array of points or an object with a
/// `points` or `vertices` array (and optional `dim`).
pub fn points_from_json(text: &str) -> Result<(Vec<LatticePoint>, usize)> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Bare(Vec<LatticePoint>),
        Object {
            dim: Option<usize>,
            #[serde(alias = "vertices")]
            points: Vec<LatticePoint>,
        },
    }
    let input: Input = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (points, dim) = match input {
        Input::Bare(p) => (p, None),
        Input::Object { dim, points } => (points, dim),
    };
    let dim = match (dim, points.first()) {
        (Some(d), _) => d,
        (None, Some(p)) => p.dim(),
        (None, None) => return Err(Error::Parse("field `points`: empty point list".into())),
    };
    if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != dim) {
        return Err(Error::Parse(format!(
            "field `points[{i}]`: {p} has {} coordinates, expected {dim}",
            p.dim()
        )));
    }
    Ok((points, dim))
}
