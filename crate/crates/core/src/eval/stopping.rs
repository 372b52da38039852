use std::collections::BTreeSet;

use crate::game::{Game, VertexId, VertexKind};

/// Decides whether every strategy pair reaches a sink with probability 1.
///
/// The witness is the largest sink-free set in which every average vertex has both
/// successors and every positional vertex at least one successor. It is empty
/// exactly when the game is stopping; otherwise the players can jointly confine
/// play to it.
pub fn check_stopping(game: &Game) -> (bool, BTreeSet<VertexId>) {
    let n = game.len();
    let mut in_z = vec![true; n];
    let mut remaining = vec![0usize; n];
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for v in game.vertices() {
        if game.is_sink(v) {
            in_z[v.0] = false;
            queue.push(v);
            continue;
        }
        remaining[v.0] = game.successors(v).len();
        for &w in game.successors(v) {
            pred[w.0].push(v);
        }
    }
    while let Some(w) = queue.pop() {
        for &p in &pred[w.0] {
            if !in_z[p.0] {
                continue;
            }
            remaining[p.0] -= 1;
            let leaves = match game.kind(p) {
                VertexKind::Ave => true,
                _ => remaining[p.0] == 0,
            };
            if leaves {
                in_z[p.0] = false;
                queue.push(p);
            }
        }
    }
    let witness: BTreeSet<VertexId> = game.vertices().filter(|v| in_z[v.0]).collect();
    (witness.is_empty(), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;
    use crate::rational::int;

    #[test]
    fn self_loop_is_not_stopping() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(int(0));
        b.arcs(x, &[x, s]);
        let g = b.build().unwrap();
        assert_eq!(check_stopping(&g), (false, BTreeSet::from([x])));
    }

    #[test]
    fn leaking_average_cycle_stops() {
        let mut b = GameBuilder::new();
        let a1 = b.ave();
        let a2 = b.ave();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(a1, &[s0, a2]).arcs(a2, &[s1, a1]);
        let g = b.build().unwrap();
        assert_eq!(check_stopping(&g), (true, BTreeSet::new()));
    }

    #[test]
    fn positional_cycle_through_average_pair() {
        // a -> {x, x}: both arcs stay in the set, so x <-> a can loop.
        let mut b = GameBuilder::new();
        let x = b.min();
        let a = b.ave();
        let s = b.sink(int(1));
        b.arcs(x, &[a, s]).arcs(a, &[x, x]);
        let g = b.build().unwrap();
        assert_eq!(check_stopping(&g), (false, BTreeSet::from([x, a])));
    }
}
