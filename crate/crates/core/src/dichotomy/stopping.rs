use num_traits::Zero;

use crate::error::{Result, SsgError};
use crate::game::{Game, VertexId, VertexKind};
use crate::rational::Rational;

/// `2n + ceil(log2 q0)`, with `q0` the lcm of the sink denominators.
pub fn default_stopping_depth(game: &Game) -> usize {
    let q = game.sink_denominator_lcm();
    let log = if q <= 1u32.into() { 0 } else { (q - 1u32).bits() as usize };
    2 * game.len() + log
}

/// Routes every arc `(x, y)` leaving a non-sink through a fresh chain of `m` average
/// vertices `a_1 .. a_m` with `a_j -> {a_(j+1), y}` and `a_m -> {0, y}`, all sharing
/// one new 0-sink. A move then reaches `y` with probability `1 - 2^-m`, so every
/// play stops; values move by at most about `n 2^-m`. Original ids are kept.
pub fn make_stopping(game: &Game, m: usize) -> Result<Game> {
    if m == 0 {
        return Err(SsgError::BadSpec("make_stopping needs a chain length of at least 1".into()));
    }
    let mut g = game.clone();
    let zero = g.push_vertex(VertexKind::Sink(Rational::zero()), vec![]);
    g.set_successors(zero, vec![zero]);
    for x in game.vertices() {
        if game.is_sink(x) {
            continue;
        }
        let mut rerouted = Vec::with_capacity(game.successors(x).len());
        for &y in game.successors(x) {
            let first = VertexId(g.len());
            for j in 0..m {
                let next = if j + 1 < m { VertexId(first.0 + j + 1) } else { zero };
                g.push_vertex(VertexKind::Ave, vec![next, y]);
            }
            rerouted.push(first);
        }
        g.set_successors(x, rerouted);
    }
    Ok(g)
}
