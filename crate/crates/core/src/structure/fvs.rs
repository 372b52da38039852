use crate::game::{Game, VertexId};

use super::{analyze, inner_successors};

/// Whether removing `set` (and the sinks) leaves an acyclic graph. Self-loops count
/// as cycles.
pub fn is_feedback_set(game: &Game, set: &[VertexId]) -> bool {
    let n = game.len();
    let mut removed = vec![false; n];
    for v in game.vertices().filter(|&v| game.is_sink(v)) {
        removed[v.0] = true;
    }
    for v in set {
        removed[v.0] = true;
    }
    acyclic_without(game, &removed, &game.vertices().collect::<Vec<_>>())
}

/// Kahn's algorithm restricted to `scope` minus `removed`.
fn acyclic_without(game: &Game, removed: &[bool], scope: &[VertexId]) -> bool {
    let mut indeg = vec![0usize; game.len()];
    let mut alive = 0usize;
    for &v in scope {
        if removed[v.0] {
            continue;
        }
        alive += 1;
        for w in inner_successors(game, v) {
            if !removed[w] {
                indeg[w] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = scope.iter().map(|v| v.0).filter(|&v| !removed[v] && indeg[v] == 0).collect();
    let mut seen = 0usize;
    while let Some(v) = stack.pop() {
        seen += 1;
        for w in inner_successors(game, VertexId(v)) {
            if removed[w] {
                continue;
            }
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == alive
}

/// A minimum feedback vertex set of the sink-removed graph, if one of size at most
/// `k_max` exists. Sets are tried by increasing size, each size in lexicographic
/// order of the sorted ids, over the vertices of cyclic components only.
pub fn feedback_vertex_set(game: &Game, k_max: usize) -> Option<Vec<VertexId>> {
    let report = analyze(game);
    let candidates: Vec<VertexId> = report.cyclic_components().flatten().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    if candidates.is_empty() {
        return Some(Vec::new());
    }
    let mut removed = vec![true; game.len()];
    for &v in &candidates {
        removed[v.0] = false;
    }
    for k in 1..=k_max.min(candidates.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            for &i in &idx {
                removed[candidates[i].0] = true;
            }
            let ok = acyclic_without(game, &removed, &candidates);
            for &i in &idx {
                removed[candidates[i].0] = false;
            }
            if ok {
                return Some(idx.iter().map(|&i| candidates[i]).collect());
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    None
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}
