//! Closed-strategy values and the three-step solver for games whose non-trivial
//! components are single cycles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, SsgError};
use crate::eval::{is_locally_optimal, zero_set, LinearSystem, ValueVector};
use crate::game::{Game, Player, VertexId, VertexKind};
use crate::rational::{half, lcm_denominators, Rational};
use crate::strategy::Strategy;
use crate::structure::{analyze, StructureReport};

use super::{local_value, solve_by_scc};

/// Cycle successors of every vertex, in id order.
pub(crate) fn cycle_successors(game: &Game, report: &StructureReport) -> Vec<Vec<VertexId>> {
    let mut cyc = vec![Vec::new(); game.len()];
    for &(v, w) in &report.cycle_arcs {
        cyc[v.0].push(w);
    }
    cyc
}

/// The sink an average vertex leaks to, if its two arcs differ and one leaves the cycle.
fn leak(game: &Game, cyc: &[Vec<VertexId>], v: VertexId) -> Option<VertexId> {
    if !matches!(game.kind(v), VertexKind::Ave) {
        return None;
    }
    let succ = game.successors(v);
    if succ[0] == succ[1] {
        return None;
    }
    succ.iter().copied().find(|w| !cyc[v.0].contains(w))
}

fn require_closable(game: &Game) -> Result<StructureReport> {
    let report = analyze(game);
    if !report.is_strongly_connected() || report.is_acyclic {
        return Err(SsgError::WrongClass("a strongly connected cyclic game"));
    }
    if report.k_p != 0 {
        return Err(SsgError::WrongClass("free of positional fork vertices"));
    }
    Ok(report)
}

/// Values when every positional vertex follows its unique cycle arc.
///
/// On a single cycle the value at an average vertex comes in closed form from the
/// leak values met along one lap; every other value follows by walking the cycle
/// backwards. With average forks each vertex is an affine function of the fork it
/// runs into, which leaves one small linear system over the forks.
pub fn closed_values(game: &Game) -> Result<ValueVector> {
    let report = require_closable(game)?;
    let cyc = cycle_successors(game, &report);
    if report.k_a == 0 {
        let order = cycle_order(game).ok_or_else(|| SsgError::invariant("fork-free component is not one cycle"))?;
        Ok(single_cycle_closed(game, &order))
    } else {
        fork_closed(game, &report, &cyc)
    }
}

fn sink_values(game: &Game) -> Vec<Rational> {
    game.kinds()
        .iter()
        .map(|k| k.sink_value().cloned().unwrap_or_else(Rational::zero))
        .collect()
}

/// The non-sink vertices in cycle order, starting from the smallest id, when the
/// sink-removed graph is a single cycle through all of them.
fn cycle_order(game: &Game) -> Option<Vec<VertexId>> {
    let n = game.len();
    let mut next = vec![None; n];
    let mut inner = 0usize;
    for v in game.vertices().filter(|&v| !game.is_sink(v)) {
        inner += 1;
        let mut out = game.successors(v).iter().copied().filter(|&w| !game.is_sink(w));
        let w = out.next()?;
        if out.any(|u| u != w) {
            return None;
        }
        next[v.0] = Some(w);
    }
    let start = game.vertices().find(|&v| !game.is_sink(v))?;
    let mut order = Vec::with_capacity(inner);
    let mut v = start;
    loop {
        order.push(v);
        v = next[v.0]?;
        if v == start || order.len() > inner {
            break;
        }
    }
    (v == start && order.len() == inner).then_some(order)
}

/// The sink `v` leaks to when its cycle successor is `next`: only an average vertex
/// with two distinct arcs leaks.
fn leak_to(game: &Game, v: VertexId, next: VertexId) -> Option<VertexId> {
    if !matches!(game.kind(v), VertexKind::Ave) {
        return None;
    }
    let succ = game.successors(v);
    (succ[0] != succ[1]).then(|| if succ[0] == next { succ[1] } else { succ[0] })
}

fn single_cycle_closed(game: &Game, order: &[VertexId]) -> ValueVector {
    let mut values = sink_values(game);
    let len = order.len();
    let leak_at = |i: usize| leak_to(game, order[i], order[(i + 1) % len]);
    let Some(first) = (0..len).find(|&i| leak_at(i).is_some()) else {
        // Play circles forever under the closed pair.
        return ValueVector::new(values);
    };
    let leaks: Vec<&Rational> = (0..len)
        .map(|k| (first + k) % len)
        .filter_map(leak_at)
        .map(|s| game.sink_value(s).expect("leak is a sink"))
        .collect();
    let q = lcm_denominators(leaks.iter().copied());
    // sum_i 2^(l-i) p_i with s_i = p_i / q, by Horner's rule.
    let mut acc = BigInt::zero();
    for s in &leaks {
        acc = (acc << 1usize) + s.numer() * (&q / s.denom());
    }
    let l = leaks.len();
    let den = q * ((BigInt::one() << l) - BigInt::one());
    let mut next = Rational::new(acc, den);
    values[order[first].0] = next.clone();
    for k in (1..len).rev() {
        let i = (first + k) % len;
        if let Some(s) = leak_at(i) {
            next = (next + &values[s.0]) * half();
        }
        values[order[i].0] = next.clone();
    }
    ValueVector::new(values)
}

/// `alpha + beta * Val(fork)`; `fork = None` means the constant `alpha`.
#[derive(Clone)]
struct Affine {
    alpha: Rational,
    beta: Rational,
    fork: Option<VertexId>,
}

fn closed_pair(game: &Game, cyc: &[Vec<VertexId>]) -> (Strategy, Strategy) {
    let mut sigma = Strategy::empty(game, Player::Max);
    let mut tau = Strategy::empty(game, Player::Min);
    for v in game.vertices() {
        match game.kind(v) {
            VertexKind::Max => sigma.set_unchecked(v, cyc[v.0][0]),
            VertexKind::Min => tau.set_unchecked(v, cyc[v.0][0]),
            _ => {}
        }
    }
    (sigma, tau)
}

fn fork_closed(game: &Game, report: &StructureReport, cyc: &[Vec<VertexId>]) -> Result<ValueVector> {
    let n = game.len();
    let (sigma, tau) = closed_pair(game, cyc);
    let zero = zero_set(game, &sigma, &tau)?;
    let mut form: Vec<Option<Affine>> = vec![None; n];
    for v in game.vertices() {
        if game.is_sink(v) || zero.contains(&v) {
            let alpha = game.sink_value(v).cloned().unwrap_or_else(Rational::zero);
            form[v.0] = Some(Affine { alpha, beta: Rational::zero(), fork: None });
        } else if report.fork_average.contains(&v) {
            form[v.0] = Some(Affine { alpha: Rational::zero(), beta: Rational::one(), fork: Some(v) });
        }
    }
    for v in game.vertices() {
        let mut path = Vec::new();
        let mut u = v;
        while form[u.0].is_none() {
            if path.len() > n {
                return Err(SsgError::invariant("closed chain never reaches a fork"));
            }
            path.push(u);
            u = cyc[u.0][0];
        }
        for &p in path.iter().rev() {
            let next = form[cyc[p.0][0].0].clone().expect("resolved");
            let f = match leak(game, cyc, p) {
                Some(s) => Affine {
                    alpha: (next.alpha + game.sink_value(s).expect("sink")) * half(),
                    beta: next.beta * half(),
                    fork: next.fork,
                },
                None => next,
            };
            form[p.0] = Some(f);
        }
    }

    let forks: Vec<VertexId> = report.fork_average.iter().copied().filter(|f| !zero.contains(f)).collect();
    let index: BTreeMap<VertexId, usize> = forks.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut coefficients = Vec::with_capacity(forks.len());
    let mut offset = Vec::with_capacity(forks.len());
    for &f in &forks {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut b = Rational::zero();
        for &w in game.successors(f) {
            let a = form[w.0].as_ref().expect("resolved");
            b += &a.alpha * half();
            if let Some(g) = a.fork {
                *row.entry(index[&g]).or_insert_with(Rational::zero) += &a.beta * half();
            }
        }
        coefficients.push(row.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        offset.push(b);
    }
    let z = LinearSystem { variables: forks, coefficients, offset }.solve()?;
    let values = form
        .into_iter()
        .map(|f| {
            let f = f.expect("resolved");
            match f.fork {
                Some(g) => f.alpha + f.beta * &z[index[&g]],
                None => f.alpha,
            }
        })
        .collect();
    Ok(ValueVector::new(values))
}

/// Whether `v` is owned by `player` and its value equals that of its best sink
/// neighbour (ties count as open).
pub(crate) fn is_open_in(game: &Game, w: &ValueVector, v: VertexId, player: Player) -> bool {
    game.kind(v).owner() == Some(player)
        && game.best_sink_successor(v, player).is_some_and(|s| w[s] == w[v])
}

/// Values on the cycle opened at `x`, which takes its best sink: one backward lap
/// starting at `x`'s predecessor.
fn opened_values(game: &Game, order: &[VertexId], pos: usize, player: Player) -> ValueVector {
    let mut values = sink_values(game);
    let x = order[pos];
    let s = game.best_sink_successor(x, player).expect("openable");
    values[x.0] = values[s.0].clone();
    let len = order.len();
    for k in (1..len).rev() {
        let v = order[(pos + k) % len];
        values[v.0] = local_value(game, v, &values);
    }
    ValueVector::new(values)
}

/// Opens one `player` vertex, reads off which vertex the cycle should really be
/// opened at, and checks the resulting solution.
fn open_pass(game: &Game, order: &[VertexId], player: Player) -> Option<ValueVector> {
    let len = order.len();
    let owned_open = |i: usize| {
        let v = order[i];
        game.kind(v).owner() == Some(player) && game.best_sink_successor(v, player).is_some()
    };
    let x = (0..len).filter(|&i| owned_open(i)).min_by_key(|&i| order[i])?;
    let w1 = opened_values(game, order, x, player);
    let y = (1..len)
        .map(|k| (x + k) % len)
        .find(|&i| is_open_in(game, &w1, order[i], player))
        .unwrap_or(x);
    let w2 = if y == x { w1 } else { opened_values(game, order, y, player) };
    is_locally_optimal(game, &w2).then_some(w2)
}

/// Solves a strongly connected game that is a single cycle (plus sinks).
///
/// Tries the all-closed pair, then a MAX opening, then a MIN opening, accepting the
/// first vector that satisfies every local optimality equation. Linear in the size
/// of the game.
pub fn solve_almost_acyclic_scc(game: &Game) -> Result<ValueVector> {
    let order = cycle_order(game).ok_or(SsgError::WrongClass("a single cycle"))?;
    let closed = single_cycle_closed(game, &order);
    if is_locally_optimal(game, &closed) {
        return Ok(closed);
    }
    [Player::Max, Player::Min]
        .into_iter()
        .find_map(|player| open_pass(game, &order, player))
        .ok_or_else(|| SsgError::invariant("no opening of the cycle is locally optimal"))
}

/// Games whose non-trivial components are all single cycles.
pub fn solve_almost_acyclic(game: &Game) -> Result<ValueVector> {
    if !analyze(game).is_almost_acyclic {
        return Err(SsgError::WrongClass("almost acyclic"));
    }
    solve_by_scc(game, solve_almost_acyclic_scc)
}
