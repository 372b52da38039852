//! Best responses by exact one-player policy iteration.

use crate::error::{Result, SsgError};
use crate::game::{Game, Player, VertexId, VertexKind};
use crate::strategy::Strategy;

use super::optimality::best_successor;
use super::{evaluate_unchecked, ValueVector};

/// Vertices where MIN, against the fixed MAX strategy, can keep play away from
/// positive sinks forever. Their optimal response value is 0; outside this set every
/// MIN strategy reaches a positive sink with positive probability, so the Bellman
/// equations there have a unique solution and policy iteration cannot stall.
fn min_can_avoid(game: &Game, sigma: &Strategy) -> Vec<bool> {
    let n = game.len();
    let mut in_z = vec![true; n];
    let mut remaining = vec![0usize; n];
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for v in game.vertices() {
        if game.is_sink(v) {
            continue;
        }
        for &w in game.successors(v) {
            pred[w.0].push(v);
        }
        if let VertexKind::Min = game.kind(v) {
            remaining[v.0] = game.successors(v).len();
        }
    }
    let mut queue = Vec::new();
    for v in game.vertices() {
        if game.sink_value(v).is_some_and(|x| *x > num_traits::Zero::zero()) {
            in_z[v.0] = false;
            queue.push(v);
        }
    }
    while let Some(w) = queue.pop() {
        for &p in &pred[w.0] {
            if !in_z[p.0] {
                continue;
            }
            let leaves = match game.kind(p) {
                VertexKind::Ave => true,
                VertexKind::Max => sigma.get(p) == Some(w),
                VertexKind::Min => {
                    remaining[p.0] -= 1;
                    remaining[p.0] == 0
                }
                VertexKind::Sink(_) => false,
            };
            if leaves {
                in_z[p.0] = false;
                queue.push(p);
            }
        }
    }
    in_z
}

/// A MIN strategy minimizing every vertex's value against `sigma`, with the values.
///
/// Starts inside the avoidable set where possible, then switches every MIN vertex
/// that has a strictly smaller successor (to its argmin, smallest id on ties) until
/// no such vertex remains.
pub fn best_response_min(game: &Game, sigma: &Strategy) -> Result<(Strategy, ValueVector)> {
    if sigma.owner() != Player::Max {
        return Err(SsgError::NotOwned { vertex: VertexId(0), owner: Player::Max });
    }
    sigma.check_total(game)?;
    let avoid = min_can_avoid(game, sigma);
    let mut tau = Strategy::empty(game, Player::Min);
    for v in game.owned(Player::Min) {
        let succ = game.successors(v);
        let pick = if avoid[v.0] {
            succ.iter().filter(|w| avoid[w.0]).min()
        } else {
            succ.iter().min()
        };
        tau.set_unchecked(v, *pick.expect("MIN vertex in avoid set keeps a successor in it"));
    }
    let (_, tau, values) = improve(game, sigma.clone(), tau, Player::Min, |v| !avoid[v.0])?;
    Ok((tau, values))
}

/// A MAX strategy maximizing every vertex's value against `tau`, with the values.
pub fn best_response_max(game: &Game, tau: &Strategy) -> Result<(Strategy, ValueVector)> {
    if tau.owner() != Player::Min {
        return Err(SsgError::NotOwned { vertex: VertexId(0), owner: Player::Min });
    }
    tau.check_total(game)?;
    let sigma = Strategy::first_successor(game, Player::Max);
    let (sigma, _, values) = improve(game, sigma, tau.clone(), Player::Max, |_| true)?;
    Ok((sigma, values))
}

/// Policy iteration for `player` with the opponent fixed. Returns
/// `(max strategy, min strategy, values)`, the improved one being `player`'s.
fn improve(
    game: &Game,
    mut sigma: Strategy,
    mut tau: Strategy,
    player: Player,
    switchable: impl Fn(VertexId) -> bool,
) -> Result<(Strategy, Strategy, ValueVector)> {
    let owned: Vec<VertexId> = game.owned(player).filter(|&v| switchable(v)).collect();
    let cap: u128 = owned
        .iter()
        .map(|&v| game.successors(v).len() as u128)
        .fold(1u128, |a, d| a.saturating_mul(d));
    let mut rounds: u128 = 0;
    loop {
        let values = evaluate_unchecked(game, &sigma, &tau)?;
        let current = match player {
            Player::Max => &mut sigma,
            Player::Min => &mut tau,
        };
        let mut changed = false;
        for &v in &owned {
            let cur = current.get(v).expect("total");
            let best = best_successor(game, &values, v, player);
            if player.prefers(&values[best], &values[cur]) {
                current.set_unchecked(v, best);
                changed = true;
            }
        }
        if !changed {
            return Ok((sigma, tau, values));
        }
        rounds += 1;
        if rounds > cap {
            return Err(SsgError::invariant("best-response iteration exceeded strategy count"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::game::GameBuilder;
    use crate::rational::{int, ratio};

    #[test]
    fn one_step_min() {
        let mut b = GameBuilder::new();
        let y = b.min();
        let lo = b.sink(ratio(1, 4));
        let hi = b.sink(ratio(3, 4));
        b.arcs(y, &[hi, lo]);
        let g = b.build().unwrap();
        let (tau, v) = best_response_min(&g, &Strategy::empty(&g, Player::Max)).unwrap();
        assert_eq!(tau.get(y), Some(lo));
        assert_eq!(v[y], ratio(1, 4));
    }

    #[test]
    fn one_step_max() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let lo = b.sink(ratio(1, 4));
        let hi = b.sink(ratio(3, 4));
        b.arcs(x, &[lo, hi]);
        let g = b.build().unwrap();
        let (sigma, v) = best_response_max(&g, &Strategy::empty(&g, Player::Min)).unwrap();
        assert_eq!(sigma.get(x), Some(hi));
        assert_eq!(v[x], ratio(3, 4));
    }

    #[test]
    fn no_min_vertices() {
        let mut b = GameBuilder::new();
        let a = b.ave();
        let s = b.sink(int(1));
        let z = b.sink(int(0));
        b.arcs(a, &[s, z]);
        let g = b.build().unwrap();
        let sigma = Strategy::empty(&g, Player::Max);
        let (tau, v) = best_response_min(&g, &sigma).unwrap();
        assert_eq!(tau.support_len(), 0);
        assert_eq!(v, evaluate(&g, &sigma, &tau).unwrap());
    }

    #[test]
    fn min_prefers_looping_forever() {
        // y can stay on its self-loop (value 0) instead of taking the 1-sink.
        let mut b = GameBuilder::new();
        let y = b.min();
        let s = b.sink(int(1));
        b.arcs(y, &[s, y]);
        let g = b.build().unwrap();
        let (tau, v) = best_response_min(&g, &Strategy::empty(&g, Player::Max)).unwrap();
        assert_eq!(tau.get(y), Some(y));
        assert_eq!(v[y], int(0));
    }

    #[test]
    fn min_loop_through_average() {
        // y -> a -> {y, 1}; y -> 1/2. Looping reaches 1 almost surely, so take 1/2.
        let mut b = GameBuilder::new();
        let y = b.min();
        let a = b.ave();
        let one = b.sink(int(1));
        let mid = b.sink(ratio(1, 2));
        b.arcs(y, &[a, mid]).arcs(a, &[y, one]);
        let g = b.build().unwrap();
        let (tau, v) = best_response_min(&g, &Strategy::empty(&g, Player::Max)).unwrap();
        assert_eq!(tau.get(y), Some(mid));
        assert_eq!(v[a], ratio(3, 4));
    }
}
