//! Recursion on fork vertices: enumerate the cycle arcs kept at positional forks,
//! then peel average forks by opening well-chosen positional vertices.

use std::collections::VecDeque;

use crate::error::{Result, SsgError};
use crate::eval::{check_stopping, is_locally_optimal, ValueVector};
use crate::game::{Game, Player, VertexId};
use crate::structure::{analyze, StructureReport};
use crate::subgame::{keep_arcs, open_at, restrict};

use super::cycle::{closed_values, cycle_successors, is_open_in, solve_almost_acyclic_scc};
use super::solve_by_scc;

/// The fork parameters of the input and how deep the recursion went.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ForkBudget {
    pub k_p: usize,
    pub k_a: usize,
    pub depth: usize,
}

impl ForkBudget {
    /// Whether the recursion stayed within `k_a + 1` nested openings.
    pub fn within_bound(&self) -> bool {
        self.depth <= self.k_a + 1
    }
}

#[derive(Debug, Clone, Default)]
pub struct ForkStats {
    pub budget: ForkBudget,
    /// Component games handed to the recursion, across all branches.
    pub subgames: usize,
}

/// Solves a stopping game by enumerating positional fork choices and recursing on
/// average forks. Every candidate is accepted only if its values satisfy all local
/// optimality equations of the game it was derived from.
pub fn solve_fork_fpt(game: &Game) -> Result<(ValueVector, ForkStats)> {
    let (stopping, witness) = check_stopping(game);
    if !stopping {
        return Err(SsgError::NotStopping { witness: witness.into_iter().collect() });
    }
    let report = analyze(game);
    let mut stats = ForkStats {
        budget: ForkBudget { k_p: report.k_p, k_a: report.k_a, depth: 0 },
        subgames: 0,
    };
    let values = solve_general(game, 0, &mut stats)?;
    Ok((values, stats))
}

fn solve_general(game: &Game, depth: usize, stats: &mut ForkStats) -> Result<ValueVector> {
    solve_by_scc(game, |c| solve_component(c, depth, stats))
}

fn solve_component(game: &Game, depth: usize, stats: &mut ForkStats) -> Result<ValueVector> {
    stats.subgames += 1;
    stats.budget.depth = stats.budget.depth.max(depth);
    let report = analyze(game);
    if !report.fork_positional.is_empty() {
        return positional_branches(game, &report, depth, stats);
    }
    if report.k_a == 0 {
        return solve_almost_acyclic_scc(game);
    }
    average_forks(game, &report, depth, stats)
}

/// Tries every way of keeping one cycle arc at each positional fork (sink arcs stay).
fn positional_branches(
    game: &Game,
    report: &StructureReport,
    depth: usize,
    stats: &mut ForkStats,
) -> Result<ValueVector> {
    let cyc = cycle_successors(game, report);
    let forks: Vec<VertexId> = report.fork_positional.keys().copied().collect();
    let mut choice = vec![0usize; forks.len()];
    loop {
        let mut g = game.clone();
        for (&v, &c) in forks.iter().zip(&choice) {
            let keep = game
                .successors(v)
                .iter()
                .copied()
                .filter(|w| !cyc[v.0].contains(w) || *w == cyc[v.0][c])
                .collect();
            g = keep_arcs(&g, v, keep);
        }
        let w = solve_general(&g, depth, stats)?;
        if is_locally_optimal(game, &w) {
            return Ok(w);
        }
        // Odometer over the per-fork choices.
        let mut i = 0;
        loop {
            if i == forks.len() {
                return Err(SsgError::invariant("no positional fork choice is locally optimal"));
            }
            choice[i] += 1;
            if choice[i] < cyc[forks[i].0].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn openable(game: &Game, v: VertexId, player: Player) -> bool {
    game.kind(v).owner() == Some(player) && game.best_sink_successor(v, player).is_some()
}

/// The nearest openable `player` vertex reached backwards from `fork` along cycle
/// arcs without crossing another fork.
fn last_before(
    game: &Game,
    report: &StructureReport,
    pred: &[Vec<VertexId>],
    fork: VertexId,
    player: Player,
) -> Option<VertexId> {
    let mut seen = vec![false; game.len()];
    let mut queue = VecDeque::from([fork]);
    seen[fork.0] = true;
    while let Some(v) = queue.pop_front() {
        for &p in &pred[v.0] {
            if seen[p.0] || report.fork_average.contains(&p) {
                continue;
            }
            seen[p.0] = true;
            if openable(game, p, player) {
                return Some(p);
            }
            queue.push_back(p);
        }
    }
    None
}

fn average_forks(
    game: &Game,
    report: &StructureReport,
    depth: usize,
    stats: &mut ForkStats,
) -> Result<ValueVector> {
    let closed = closed_values(game)?;
    if is_locally_optimal(game, &closed) {
        return Ok(closed);
    }
    let cyc = cycle_successors(game, report);
    let mut pred = vec![Vec::new(); game.len()];
    for &(v, w) in &report.cycle_arcs {
        pred[w.0].push(v);
    }
    let forks: Vec<VertexId> = report.fork_average.iter().copied().collect();

    for player in [Player::Max, Player::Min] {
        let Some(first) = forks.iter().find_map(|&f| last_before(game, report, &pred, f, player)) else {
            continue;
        };
        let solve_open = |v: VertexId, stats: &mut ForkStats| -> Result<ValueVector> {
            let partial = open_at(game, player, v).expect("openable");
            solve_general(&restrict(game, &partial)?, depth + 1, stats)
        };
        let w1 = solve_open(first, stats)?;
        if is_locally_optimal(game, &w1) {
            return Ok(w1);
        }
        let mut candidates: Vec<VertexId> = Vec::new();
        for &f in &forks {
            for &s in &cyc[f.0] {
                let mut v = s;
                for _ in 0..game.len() {
                    if is_open_in(game, &w1, v, player) {
                        if v != first && !candidates.contains(&v) {
                            candidates.push(v);
                        }
                        break;
                    }
                    if report.fork_average.contains(&v) {
                        break;
                    }
                    v = cyc[v.0][0];
                }
            }
        }
        for c in candidates {
            let w = solve_open(c, stats)?;
            if is_locally_optimal(game, &w) {
                return Ok(w);
            }
        }
    }
    Err(SsgError::invariant("no fork opening is locally optimal"))
}
