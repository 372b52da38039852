//! Game rewrites that keep vertex ids: restriction by a partial strategy, turning
//! a vertex into a sink, and merging the sink neighbours of positional vertices.

use crate::error::{Result, SsgError};
use crate::game::{Game, Player, VertexId, VertexKind};
use crate::rational::{in_unit_interval, Rational};
use crate::strategy::Strategy;

/// `G[σ]`: every vertex in the support of `partial` keeps only its chosen arc.
pub fn restrict(game: &Game, partial: &Strategy) -> Result<Game> {
    partial.check_partial(game)?;
    let mut g = game.clone();
    for (v, w) in partial.support() {
        g.set_successors(v, vec![w]);
    }
    Ok(g)
}

/// `G[v]`: vertex `x` becomes a sink of value `value`. Incoming arcs are untouched.
pub fn vertex_to_sink(game: &Game, x: VertexId, value: Rational) -> Result<Game> {
    if !game.contains(x) {
        return Err(SsgError::UnknownVertex(x));
    }
    if game.is_sink(x) {
        return Err(SsgError::AlreadySink(x));
    }
    if !in_unit_interval(&value) {
        return Err(SsgError::ValueOutOfRange(crate::rational::fmt_ratio(&value)));
    }
    let mut g = game.clone();
    g.set_vertex(x, VertexKind::Sink(value), vec![x]);
    Ok(g)
}

/// Replaces, at every positional vertex with two or more sink neighbours, those arcs
/// by a single arc to the neighbour best for the owner (max for MAX, min for MIN).
/// The kept sink is an existing one, so no vertex is added.
pub fn merge_sink_neighbors(game: &Game) -> Game {
    let mut g = game.clone();
    for v in game.vertices() {
        let Some(owner) = game.kind(v).owner() else { continue };
        let sinks = game.sink_successors(v);
        if sinks.len() < 2 {
            continue;
        }
        let keep = game.best_sink_successor(v, owner).expect("has sinks");
        let mut succ: Vec<VertexId> = Vec::with_capacity(game.successors(v).len());
        for &w in game.successors(v) {
            let drop = game.is_sink(w) && w != keep;
            if !drop && !succ.contains(&w) {
                succ.push(w);
            }
        }
        g.set_successors(v, succ);
    }
    g
}

/// Restricts `v` to the arcs in `keep` (which must be a subset of its arcs).
pub(crate) fn keep_arcs(game: &Game, v: VertexId, keep: Vec<VertexId>) -> Game {
    debug_assert!(keep.iter().all(|w| game.successors(v).contains(w)));
    let mut g = game.clone();
    g.set_successors(v, keep);
    g
}

/// Partial strategy pointing `v` at its best sink neighbour for `player`.
pub(crate) fn open_at(game: &Game, player: Player, v: VertexId) -> Option<Strategy> {
    let s = game.best_sink_successor(v, player)?;
    let mut st = Strategy::empty(game, player);
    st.set_unchecked(v, s);
    Some(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;
    use crate::rational::{int, ratio};

    #[test]
    fn restrict_keeps_only_chosen_arc() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s1 = b.sink(int(1));
        let s2 = b.sink(int(0));
        b.arcs(x, &[s1, s2]);
        let g = b.build().unwrap();
        let sigma = Strategy::from_pairs(&g, Player::Max, [(x, s1)]).unwrap();
        let h = restrict(&g, &sigma).unwrap();
        assert_eq!(h.successors(x), &[s1]);
        assert_eq!(restrict(&g, &Strategy::empty(&g, Player::Max)).unwrap(), g);
    }

    #[test]
    fn restrict_on_min_vertex_touches_nothing_else() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let y = b.min();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(x, &[y, s1]).arcs(y, &[x, s0, s1]);
        let g = b.build().unwrap();
        let tau = Strategy::from_pairs(&g, Player::Min, [(y, s0)]).unwrap();
        let h = restrict(&g, &tau).unwrap();
        for v in g.vertices() {
            if v == y {
                assert_eq!(h.successors(v), &[s0]);
            } else {
                assert_eq!(h.successors(v), g.successors(v));
                assert_eq!(h.kind(v), g.kind(v));
            }
        }
    }

    #[test]
    fn restrict_rejects_non_arc() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(int(1));
        let t = b.sink(int(0));
        b.arcs(x, &[s]);
        let g = b.build().unwrap();
        let mut bad = Strategy::empty(&g, Player::Max);
        bad.set_unchecked(x, t);
        assert!(matches!(restrict(&g, &bad), Err(SsgError::NotASuccessor { .. })));
    }

    #[test]
    fn vertex_to_sink_rules() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let y = b.ave();
        let s = b.sink(int(1));
        b.arcs(x, &[s, y]).arcs(y, &[x, s]);
        let g = b.build().unwrap();
        let h = vertex_to_sink(&g, x, int(0)).unwrap();
        assert_eq!(h.kind(x), &VertexKind::Sink(int(0)));
        assert_eq!(h.successors(x), &[x]);
        assert_eq!(h.successors(y), g.successors(y));
        assert!(matches!(vertex_to_sink(&g, s, int(0)), Err(SsgError::AlreadySink(_))));
        assert!(matches!(vertex_to_sink(&g, x, ratio(3, 2)), Err(SsgError::ValueOutOfRange(_))));
        let a = vertex_to_sink(&vertex_to_sink(&g, x, int(0)).unwrap(), y, ratio(1, 3)).unwrap();
        let b = vertex_to_sink(&vertex_to_sink(&g, y, ratio(1, 3)).unwrap(), x, int(0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn merge_keeps_best_sink() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let y = b.min();
        let q = b.sink(ratio(1, 4));
        let t = b.sink(ratio(3, 4));
        b.arcs(x, &[q, t, y]).arcs(y, &[q, t]);
        let g = b.build().unwrap();
        let h = merge_sink_neighbors(&g);
        assert_eq!(h.successors(x), &[t, y]);
        assert_eq!(h.successors(y), &[q]);
        assert_eq!(merge_sink_neighbors(&h), h);
    }
}
