use serde::{Deserialize, Serialize};

use super::{apply_move, Move, MoveKind};
use crate::error::{Error, Result};
use crate::kernel::{PolytopeJson, Polytope};

/// A start polytope and a sequence of moves applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TraceJson", into = "TraceJson")]
pub struct MoveTrace {
    start: Polytope,
    moves: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceJson {
    start: PolytopeJson,
    moves: Vec<Move>,
}

impl TryFrom<TraceJson> for MoveTrace {
    type Error = Error;

    fn try_from(t: TraceJson) -> Result<Self> {
        Ok(MoveTrace {
            start: t.start.into_polytope(false)?,
            moves: t.moves,
        })
    }
}

impl From<MoveTrace> for TraceJson {
    fn from(t: MoveTrace) -> Self {
        TraceJson {
            start: PolytopeJson::from(&t.start),
            moves: t.moves,
        }
    }
}

impl MoveTrace {
    pub fn new(start: Polytope) -> Self {
        MoveTrace {
            start,
            moves: Vec::new(),
        }
    }

    pub fn from_moves(start: Polytope, moves: Vec<Move>) -> Self {
        MoveTrace { start, moves }
    }

    pub fn start(&self) -> &Polytope {
        &self.start
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn extend(&mut self, other: &MoveTrace) {
        self.moves.extend(other.moves.iter().cloned());
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.moves.iter().filter(|m| m.kind == kind).count()
    }

    /// Applies every move with full validation; returns all intermediate
    /// polytopes, starting with `start`.
    pub fn replay(&self) -> Result<Vec<Polytope>> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.start.clone());
        for (i, m) in self.moves.iter().enumerate() {
            let next = apply_move(out.last().expect("nonempty"), m).map_err(|e| {
                Error::IllegalMove(format!("step {i}: {e}"))
            })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<Polytope> {
        Ok(self.replay()?.pop().expect("nonempty"))
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> Result<MoveTrace> {
        let end = self.end()?;
        Ok(MoveTrace {
            start: end,
            moves: self.moves.iter().rev().map(Move::inverse).collect(),
        })
    }
}
