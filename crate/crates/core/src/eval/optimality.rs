use crate::error::{Result, SsgError};
use crate::game::{Game, Player, VertexId, VertexKind};
use crate::rational::{half, Rational};
use crate::strategy::{Strategy, StrategyPair};

use super::ValueVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityReport {
    pub satisfied: bool,
    /// `(vertex, value its equation demands, value found in the vector)`.
    pub violations: Vec<(VertexId, Rational, Rational)>,
}

fn expected(game: &Game, w: &ValueVector, v: VertexId) -> Rational {
    let succ = game.successors(v);
    match game.kind(v) {
        VertexKind::Sink(val) => val.clone(),
        VertexKind::Ave => (&w[succ[0]] + &w[succ[1]]) * half(),
        VertexKind::Max => succ.iter().map(|s| &w[*s]).max().expect("outdegree >= 1").clone(),
        VertexKind::Min => succ.iter().map(|s| &w[*s]).min().expect("outdegree >= 1").clone(),
    }
}

/// Checks the per-vertex max / min / average / sink equations against `w`.
pub fn check_local_optimality(game: &Game, w: &ValueVector) -> Result<OptimalityReport> {
    if w.len() != game.len() {
        return Err(SsgError::LengthMismatch { expected: game.len(), found: w.len() });
    }
    let violations: Vec<_> = game
        .vertices()
        .filter_map(|v| {
            let e = expected(game, w, v);
            (e != w[v]).then(|| (v, e, w[v].clone()))
        })
        .collect();
    Ok(OptimalityReport { satisfied: violations.is_empty(), violations })
}

pub(crate) fn is_locally_optimal(game: &Game, w: &ValueVector) -> bool {
    w.len() == game.len() && game.vertices().all(|v| expected(game, w, v) == w[v])
}

/// Successor of `v` best for `player` under `w`, ties to the smallest id.
pub(crate) fn best_successor(game: &Game, w: &ValueVector, v: VertexId, player: Player) -> VertexId {
    let mut best = game.successors(v)[0];
    for &s in game.successors(v) {
        if player.prefers(&w[s], &w[best]) || (w[s] == w[best] && s < best) {
            best = s;
        }
    }
    best
}

/// Greedy strategies read off a locally optimal vector: argmax for MAX, argmin for
/// MIN, ties broken toward the smallest vertex id.
pub fn greedy_strategies(game: &Game, w: &ValueVector) -> Result<StrategyPair> {
    let report = check_local_optimality(game, w)?;
    if !report.satisfied {
        return Err(SsgError::NotLocallyOptimal(report.violations.len()));
    }
    Ok(greedy_unchecked(game, w))
}

pub(crate) fn greedy_unchecked(game: &Game, w: &ValueVector) -> StrategyPair {
    let mut max = Strategy::empty(game, Player::Max);
    let mut min = Strategy::empty(game, Player::Min);
    for v in game.vertices() {
        match game.kind(v) {
            VertexKind::Max => max.set_unchecked(v, best_successor(game, w, v, Player::Max)),
            VertexKind::Min => min.set_unchecked(v, best_successor(game, w, v, Player::Min)),
            _ => {}
        }
    }
    StrategyPair { max, min }
}
