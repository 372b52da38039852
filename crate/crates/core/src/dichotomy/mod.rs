//! Solving by binary search on the value of one vertex, exact reconstruction of that
//! value, and the recursion over a feedback vertex set.

mod stern_brocot;
mod stopping;

pub use stern_brocot::stern_brocot;
pub use stopping::{default_stopping_depth, make_stopping};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::acyclic::{solve_acyclic, topological_order};
use crate::error::{Result, SsgError};
use crate::eval::{check_stopping, is_locally_optimal, ValueVector};
use crate::game::{Game, VertexId, VertexKind};
use crate::hk::solve_hk;
use crate::rational::{denominator_bound, half, Rational};
use crate::structure::{feedback_vertex_set, is_feedback_set};
use crate::subgame::vertex_to_sink;

/// The search interval for the value of the vertex being eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyState {
    pub lo: Rational,
    pub hi: Rational,
    /// The search stops once `hi - lo` is at most this.
    pub target_width: Rational,
    /// Every candidate value has a denominator at most this.
    pub denominator_bound: BigInt,
    pub iterations: usize,
}

impl DichotomyState {
    /// Width `1 / D^2` for the denominator bound `D = max(2, 6^ceil(n_a/2) q)` of
    /// `game`: two distinct rationals with denominators at most `D` are more than
    /// `1 / D^2` apart, so the final interval holds at most one of them.
    pub fn for_game(game: &Game) -> Self {
        let d = denominator_bound(game.count_ave(), &game.sink_denominator_lcm()).max(BigInt::from(2));
        DichotomyState {
            lo: Rational::zero(),
            hi: Rational::one(),
            target_width: Rational::new(BigInt::one(), &d * &d),
            denominator_bound: d,
            iterations: 0,
        }
    }

    /// `ceil(log2(1 / target_width)) + 1`.
    pub fn call_bound(&self) -> usize {
        let inv = self.target_width.recip().ceil().to_integer();
        let bits = (&inv - 1u32).bits() as usize;
        bits + 1
    }
}

/// The denominator bounds `p_i = 6^((2^(i+1) - 1) n_a) q0` of the nested searches,
/// as a function of the recursion level.
///
/// The searches themselves use the tighter bound read off the game at hand (see
/// [`DichotomyState::for_game`]); this schedule is the a-priori envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionSchedule {
    pub n_ave: usize,
    pub q0: BigInt,
}

impl PrecisionSchedule {
    pub fn for_game(game: &Game) -> Self {
        PrecisionSchedule { n_ave: game.count_ave(), q0: game.sink_denominator_lcm() }
    }

    pub fn bound(&self, level: u32) -> BigInt {
        let exp = ((1usize << (level + 1)) - 1) * self.n_ave;
        num_traits::pow(BigInt::from(6), exp) * &self.q0
    }
}

#[derive(Debug, Clone)]
pub struct DichotomyOutcome {
    pub values: ValueVector,
    /// The eliminated vertex and its exact value.
    pub vertex: VertexId,
    pub value: Rational,
    /// Subsolver calls made, the final verification call included.
    pub calls: usize,
    pub state: DichotomyState,
}

/// `f(v)`: solve `G[v]` (where `x` is a sink of value `v`) and combine the values of
/// `x`'s successors as `x`'s kind dictates. Returns `f(v)` and the solved vector.
pub fn fixed_point_f<S>(game: &Game, x: VertexId, v: &Rational, subsolver: &mut S) -> Result<(Rational, ValueVector)>
where
    S: FnMut(&Game) -> Result<ValueVector>,
{
    let g = vertex_to_sink(game, x, v.clone())?;
    let w = subsolver(&g)?;
    let succ = game.successors(x);
    let f = match game.kind(x) {
        VertexKind::Max => succ.iter().map(|s| &w[*s]).max().expect("outdegree >= 1").clone(),
        VertexKind::Min => succ.iter().map(|s| &w[*s]).min().expect("outdegree >= 1").clone(),
        VertexKind::Ave => (&w[succ[0]] + &w[succ[1]]) * half(),
        VertexKind::Sink(_) => unreachable!("vertex_to_sink rejects sinks"),
    };
    Ok((f, w))
}

/// Binary search for the fixed point of `f` at `x`, then exact reconstruction and
/// one verifying call on `G[v0]`, whose solution is the answer.
pub fn dichotomy_solve<S>(game: &Game, x: VertexId, mut subsolver: S) -> Result<DichotomyOutcome>
where
    S: FnMut(&Game) -> Result<ValueVector>,
{
    let (stopping, witness) = check_stopping(game);
    if !stopping {
        return Err(SsgError::NotStopping { witness: witness.into_iter().collect() });
    }
    if !game.contains(x) {
        return Err(SsgError::UnknownVertex(x));
    }
    if game.is_sink(x) {
        return Err(SsgError::AlreadySink(x));
    }
    let mut state = DichotomyState::for_game(game);
    let mut calls = 0usize;
    let mut hit: Option<(Rational, ValueVector)> = None;
    while &state.hi - &state.lo > state.target_width {
        let v = (&state.lo + &state.hi) * half();
        let (f, w) = fixed_point_f(game, x, &v, &mut subsolver)?;
        calls += 1;
        state.iterations += 1;
        if f > v {
            state.lo = v;
        } else if f < v {
            state.hi = v;
        } else {
            hit = Some((v, w));
            break;
        }
    }
    let (value, values) = match hit {
        Some(found) => found,
        None => {
            let v0 = stern_brocot(&state.lo, &state.hi, &state.denominator_bound)?;
            let (f, w) = fixed_point_f(game, x, &v0, &mut subsolver)?;
            calls += 1;
            if f != v0 {
                return Err(SsgError::invariant(format!("reconstructed value {v0} is not a fixed point (f = {f})")));
            }
            (v0, w)
        }
    };
    if !is_locally_optimal(game, &values) {
        return Err(SsgError::invariant("dichotomy result is not locally optimal"));
    }
    Ok(DichotomyOutcome { values, vertex: x, value, calls, state })
}

#[derive(Debug, Clone)]
pub struct FeedbackOutcome {
    pub values: ValueVector,
    /// Vertices eliminated, outermost first.
    pub order: Vec<VertexId>,
    /// Subsolver calls made by the outermost search.
    pub calls: usize,
    /// `solve_acyclic` calls at the innermost level, over the whole recursion.
    pub leaf_solves: usize,
}

/// Eliminates the vertices of `set` one at a time in increasing id order by nested
/// dichotomies, with [`solve_acyclic`] at the bottom.
pub fn solve_feedback(game: &Game, set: &[VertexId]) -> Result<FeedbackOutcome> {
    let (stopping, witness) = check_stopping(game);
    if !stopping {
        return Err(SsgError::NotStopping { witness: witness.into_iter().collect() });
    }
    let mut order: Vec<VertexId> = set.to_vec();
    order.sort();
    order.dedup();
    for &v in &order {
        if !game.contains(v) {
            return Err(SsgError::UnknownVertex(v));
        }
        if game.is_sink(v) {
            return Err(SsgError::AlreadySink(v));
        }
    }
    if !is_feedback_set(game, &order) {
        return Err(SsgError::NotFeedbackSet(order));
    }
    let mut leaf_solves = 0usize;
    if order.is_empty() {
        let values = solve_acyclic(game)?;
        return Ok(FeedbackOutcome { values, order, calls: 0, leaf_solves: 1 });
    }
    let outcome = nested(game, &order, &mut leaf_solves)?;
    Ok(FeedbackOutcome { values: outcome.values, order, calls: outcome.calls, leaf_solves })
}

fn nested(game: &Game, rest: &[VertexId], leaf_solves: &mut usize) -> Result<DichotomyOutcome> {
    let (&x, inner) = rest.split_first().expect("nonempty");
    dichotomy_solve(game, x, |g: &Game| {
        if inner.is_empty() {
            *leaf_solves += 1;
            solve_acyclic(g)
        } else {
            nested(g, inner, leaf_solves).map(|o| o.values)
        }
    })
}

/// The dichotomy applied to one vertex: the single vertex of a feedback set of size
/// at most one when there is one, otherwise the smallest non-sink vertex. `G[v]` is
/// solved with [`solve_acyclic`] when acyclic and by strategy iteration otherwise.
pub fn solve_dichotomy(game: &Game) -> Result<DichotomyOutcome> {
    let x = match feedback_vertex_set(game, 1) {
        Some(set) if !set.is_empty() => Some(set[0]),
        _ => game.vertices().find(|&v| !game.is_sink(v)),
    };
    let Some(x) = x else {
        let values = solve_acyclic(game)?;
        return Ok(DichotomyOutcome {
            values,
            vertex: VertexId(0),
            value: Rational::zero(),
            calls: 0,
            state: DichotomyState::for_game(game),
        });
    };
    dichotomy_solve(game, x, |g: &Game| {
        if topological_order(g).is_some() {
            solve_acyclic(g)
        } else {
            solve_hk(g).map(|t| t.values)
        }
    })
}
