use num_bigint::BigInt;

use super::exact::{lift, primitive_i64, rank, with_fallback, Exact};
use super::point::LatticePoint;
use crate::error::{Error, Result};

fn check_same_dim(points: &[LatticePoint]) -> Result<usize> {
    let d = points.first().map_or(0, |p| p.dim());
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::InvalidInput(format!(
            "mixed dimensions: expected {d}, found {} in {p}",
            p.dim()
        )));
    }
    Ok(d)
}

fn differences<S: Exact>(points: &[LatticePoint]) -> Vec<Vec<S>> {
    let base = &points[0];
    points[1..]
        .iter()
        .map(|p| lift(p.sub(base).coords()))
        .collect()
}

pub(crate) fn rank_i64(rows: &[Vec<i64>]) -> usize {
    with_fallback(
        || rank::<i128>(rows.iter().map(|r| lift(r)).collect()),
        || rank::<BigInt>(rows.iter().map(|r| lift(r)).collect()),
    )
}

/// Dimension of the affine hull; `-1` for the empty set.
pub fn affine_dimension(points: &[LatticePoint]) -> Result<i64> {
    if points.is_empty() {
        return Ok(-1);
    }
    check_same_dim(points)?;
    if points.len() == 1 {
        return Ok(0);
    }
    let r = with_fallback(
        || rank::<i128>(differences(points)),
        || rank::<BigInt>(differences(points)),
    );
    Ok(r as i64)
}

/// Affine hull of a finite lattice point set: a base point plus independent
/// primitive integer directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFlat {
    basepoint: LatticePoint,
    directions: Vec<Vec<i64>>,
}

impl AffineFlat {
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let Some(base) = points.first() else {
            return Err(Error::InvalidInput("affine hull of an empty set".into()));
        };
        check_same_dim(points)?;
        let mut directions: Vec<Vec<i64>> = Vec::new();
        for p in &points[1..] {
            let mut v = p.sub(base).into_coords();
            let mut candidate = directions.clone();
            candidate.push(v.clone());
            if rank_i64(&candidate) > directions.len() {
                primitive_i64(&mut v);
                directions.push(v);
            }
        }
        Ok(AffineFlat {
            basepoint: base.clone(),
            directions,
        })
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn basepoint(&self) -> &LatticePoint {
        &self.basepoint
    }

    pub fn directions(&self) -> &[Vec<i64>] {
        &self.directions
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        let mut rows = self.directions.clone();
        rows.push(x.sub(&self.basepoint).into_coords());
        rank_i64(&rows) == self.directions.len()
    }
}
