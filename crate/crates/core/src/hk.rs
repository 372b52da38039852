//! Hoffman-Karp strategy iteration for MAX against best-responding MIN.

use crate::error::{Result, SsgError};
use crate::eval::{best_response_min, check_stopping, ValueVector};
use crate::eval::best_successor;
use crate::game::{Game, Player, VertexId};
use crate::strategy::Strategy;

/// Which switchable vertices get switched in one improvement step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SwitchPolicy {
    /// Every switchable vertex.
    #[default]
    All,
    /// Only the smallest-id switchable vertex.
    Single,
}

#[derive(Debug, Clone)]
pub struct HkTrace {
    /// Number of improvement steps performed.
    pub iterations: usize,
    /// `(σ_t, Val_{σ_t})` for every step including the last, when recording was asked for.
    pub history: Option<Vec<(Strategy, ValueVector)>>,
    pub sigma: Strategy,
    pub tau: Strategy,
    pub values: ValueVector,
}

/// Every MAX vertex with a successor strictly better than its current choice under
/// `values`, paired with its best successor (ties to the smallest id).
pub fn switchable(game: &Game, sigma: &Strategy, values: &ValueVector) -> Vec<(VertexId, VertexId)> {
    game.owned(Player::Max)
        .filter_map(|x| {
            let cur = sigma.get(x)?;
            let best = best_successor(game, values, x, Player::Max);
            (values[best] > values[cur]).then_some((x, best))
        })
        .collect()
}

/// Applies `moves` to `sigma`. Each move must be an improving switch under `values`.
pub fn switch(
    game: &Game,
    sigma: &Strategy,
    values: &ValueVector,
    moves: &[(VertexId, VertexId)],
) -> Result<Strategy> {
    let mut next = sigma.clone();
    for &(x, y) in moves {
        let improving = game.kind(x).owner() == Some(Player::Max)
            && game.successors(x).contains(&y)
            && sigma.get(x).is_some_and(|cur| values[y] > values[cur]);
        if !improving {
            return Err(SsgError::NotSwitchable { vertex: x, successor: y });
        }
        next.set_unchecked(x, y);
    }
    Ok(next)
}

/// The start where every MAX vertex with a sink neighbour takes its best one and
/// the others take their smallest-id successor.
pub fn open_strategy(game: &Game) -> Strategy {
    let mut s = Strategy::first_successor(game, Player::Max);
    for x in game.owned(Player::Max) {
        if let Some(sink) = game.best_sink_successor(x, Player::Max) {
            s.set_unchecked(x, sink);
        }
    }
    s
}

fn max_strategy_count(game: &Game) -> u128 {
    game.owned(Player::Max)
        .map(|x| game.successors(x).len() as u128)
        .fold(1u128, |a, d| a.saturating_mul(d))
}

/// Runs strategy iteration from `sigma0` until no MAX vertex is switchable.
/// Requires a stopping game.
pub fn hoffman_karp(
    game: &Game,
    sigma0: &Strategy,
    policy: SwitchPolicy,
    record: bool,
) -> Result<HkTrace> {
    let (stopping, witness) = check_stopping(game);
    if !stopping {
        return Err(SsgError::NotStopping { witness: witness.into_iter().collect() });
    }
    sigma0.check_total(game)?;
    let cap = max_strategy_count(game);
    let mut sigma = sigma0.clone();
    let mut history = record.then(Vec::new);
    let mut iterations = 0usize;
    loop {
        let (tau, values) = best_response_min(game, &sigma)?;
        if let Some(h) = history.as_mut() {
            h.push((sigma.clone(), values.clone()));
        }
        let mut moves = switchable(game, &sigma, &values);
        if moves.is_empty() {
            return Ok(HkTrace { iterations, history, sigma, tau, values });
        }
        if policy == SwitchPolicy::Single {
            moves.truncate(1);
        }
        sigma = switch(game, &sigma, &values, &moves)?;
        iterations += 1;
        if iterations as u128 > cap {
            return Err(SsgError::invariant("strategy iteration exceeded the number of MAX strategies"));
        }
    }
}

/// Strategy iteration from [`open_strategy`] with the [`SwitchPolicy::All`] rule.
pub fn solve_hk(game: &Game) -> Result<HkTrace> {
    hoffman_karp(game, &open_strategy(game), SwitchPolicy::All, false)
}
