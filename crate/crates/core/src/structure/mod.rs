//! Graph structure of a game once sinks are removed: strongly connected components,
//! arcs lying on cycles, fork counts and the acyclicity classes they define.

mod components;
mod fvs;
pub(crate) mod scc;

use std::collections::{BTreeMap, BTreeSet};

pub use components::{scc_subgames, ComponentGame};
pub use fvs::{feedback_vertex_set, is_feedback_set};

use crate::game::{Game, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// Component of every non-sink vertex; `None` for sinks.
    pub scc_of: Vec<Option<usize>>,
    /// Components in topological order: arcs only go from a component to a later one.
    pub components: Vec<Vec<VertexId>>,
    /// Arcs between distinct components, by component index.
    pub condensation: BTreeSet<(usize, usize)>,
    /// Whether each component contains a cycle.
    pub cyclic: Vec<bool>,
    pub cycle_arcs: BTreeSet<(VertexId, VertexId)>,
    /// Positional vertices with at least two outgoing cycle arcs, with their count.
    pub fork_positional: BTreeMap<VertexId, usize>,
    /// Average vertices whose two arcs both lie on cycles.
    pub fork_average: BTreeSet<VertexId>,
    pub k_p: usize,
    pub k_a: usize,
    pub is_acyclic: bool,
    pub is_max_acyclic: bool,
    pub is_min_acyclic: bool,
    pub is_pos_acyclic: bool,
    pub is_almost_acyclic: bool,
}

impl StructureReport {
    /// True when the non-sink vertices form exactly one strongly connected component.
    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn cycle_out_degree(&self, v: VertexId) -> usize {
        self.cycle_arcs.range((v, VertexId(0))..=(v, VertexId(usize::MAX))).count()
    }

    /// Non-trivial components (those containing a cycle).
    pub fn cyclic_components(&self) -> impl Iterator<Item = &[VertexId]> {
        self.components
            .iter()
            .zip(&self.cyclic)
            .filter(|(_, c)| **c)
            .map(|(comp, _)| comp.as_slice())
    }
}

/// Distinct non-sink successors of `v`, excluding nothing else (self-loops kept).
pub(crate) fn inner_successors(game: &Game, v: VertexId) -> impl Iterator<Item = usize> + '_ {
    let succ = game.successors(v);
    succ.iter()
        .enumerate()
        .filter(move |(i, w)| !game.is_sink(**w) && !succ[..*i].contains(w))
        .map(|(_, w)| w.0)
}

pub fn analyze(game: &Game) -> StructureReport {
    let n = game.len();
    let empty: &[VertexId] = &[];
    let mut comps = scc::tarjan(n, |v| {
        let v = VertexId(v);
        let succ = if game.is_sink(v) { empty } else { game.successors(v) };
        succ.iter().filter(|w| !game.is_sink(**w)).map(|w| w.0)
    });
    comps.retain(|c| !game.is_sink(VertexId(c[0])));
    comps.reverse();

    let mut scc_of = vec![None; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            scc_of[v] = Some(i);
        }
    }
    let cyclic: Vec<bool> = comps
        .iter()
        .map(|c| c.len() > 1 || game.successors(VertexId(c[0])).contains(&VertexId(c[0])))
        .collect();

    let mut cycle_arcs = BTreeSet::new();
    let mut condensation = BTreeSet::new();
    let mut fork_positional = BTreeMap::new();
    let mut fork_average = BTreeSet::new();
    let (mut k_p, mut k_a) = (0usize, 0usize);
    let (mut max_ok, mut min_ok) = (true, true);

    for v in game.vertices() {
        let Some(cv) = scc_of[v.0] else { continue };
        let mut count = 0usize;
        for w in inner_successors(game, v) {
            let cw = scc_of[w].expect("non-sink");
            if cw == cv && cyclic[cv] {
                cycle_arcs.insert((v, VertexId(w)));
                count += 1;
            } else if cw != cv {
                condensation.insert((cv, cw));
            }
        }
        let excess = count.saturating_sub(1);
        match game.kind(v) {
            VertexKind::Max | VertexKind::Min => {
                k_p += excess;
                if count >= 2 {
                    fork_positional.insert(v, count);
                    if matches!(game.kind(v), VertexKind::Max) {
                        max_ok = false;
                    } else {
                        min_ok = false;
                    }
                }
            }
            VertexKind::Ave => {
                k_a += excess;
                if count >= 2 {
                    fork_average.insert(v);
                }
            }
            VertexKind::Sink(_) => {}
        }
    }

    StructureReport {
        scc_of,
        components: comps
            .into_iter()
            .map(|c| c.into_iter().map(VertexId).collect())
            .collect(),
        condensation,
        is_acyclic: cycle_arcs.is_empty(),
        cyclic,
        cycle_arcs,
        fork_positional,
        fork_average,
        k_p,
        k_a,
        is_max_acyclic: max_ok,
        is_min_acyclic: min_ok,
        is_pos_acyclic: k_p == 0,
        is_almost_acyclic: k_p == 0 && k_a == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;
    use crate::rational::int;

    #[test]
    fn dag_has_no_cycle_arcs() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let a = b.ave();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(x, &[a, s1]).arcs(a, &[s0, s1]);
        let r = analyze(&b.build().unwrap());
        assert!(r.cycle_arcs.is_empty());
        assert_eq!((r.k_p, r.k_a), (0, 0));
        assert!(r.is_acyclic && r.is_max_acyclic && r.is_min_acyclic);
        assert!(r.is_pos_acyclic && r.is_almost_acyclic);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[0], vec![x]);
    }

    #[test]
    fn leaking_cycle_is_almost_acyclic() {
        let mut b = GameBuilder::new();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        let a: Vec<_> = (0..4).map(|_| b.ave()).collect();
        for i in 0..4 {
            b.arcs(a[i], &[a[(i + 1) % 4], if i % 2 == 0 { s0 } else { s1 }]);
        }
        let r = analyze(&b.build().unwrap());
        assert_eq!(r.cycle_arcs.len(), 4);
        assert!(r.is_almost_acyclic && r.is_strongly_connected());
    }

    #[test]
    fn figure_one_shape() {
        // a1 -> {m1, b1}, b1 -> {a1, s}; a2 -> {a1, b2}, b2 -> {a2, s};
        // m1 -> {s, m2} -> {s, m3} -> {s, a2}
        let mut b = GameBuilder::new();
        let s = b.sink(int(0));
        let a1 = b.ave();
        let a2 = b.ave();
        let b1 = b.min();
        let b2 = b.min();
        let m: Vec<_> = (0..3).map(|_| b.max()).collect();
        b.arcs(a1, &[m[0], b1]).arcs(b1, &[a1, s]);
        b.arcs(a2, &[a1, b2]).arcs(b2, &[a2, s]);
        b.arcs(m[0], &[s, m[1]]).arcs(m[1], &[s, m[2]]).arcs(m[2], &[s, a2]);
        let r = analyze(&b.build().unwrap());
        assert_eq!(r.fork_average, BTreeSet::from([a1, a2]));
        assert_eq!((r.k_p, r.k_a), (0, 2));
        assert!(r.is_max_acyclic && !r.is_almost_acyclic);
    }

    #[test]
    fn positional_fork_weight() {
        let mut b = GameBuilder::new();
        let x = b.min();
        let y = b.ave();
        let z = b.ave();
        let w = b.ave();
        let s = b.sink(int(1));
        b.arcs(x, &[y, z, w, s]).arcs(y, &[x, s]).arcs(z, &[x, s]).arcs(w, &[x, s]);
        let r = analyze(&b.build().unwrap());
        assert_eq!(r.fork_positional.get(&x), Some(&3));
        assert_eq!(r.k_p, 2);
        assert!(r.is_max_acyclic && !r.is_min_acyclic);
        assert_eq!(r.cycle_out_degree(x), 3);
    }

    #[test]
    fn self_loop_counts_as_cycle() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(int(1));
        b.arcs(x, &[x, s]);
        let r = analyze(&b.build().unwrap());
        assert_eq!(r.cycle_arcs, BTreeSet::from([(x, x)]));
        assert!(!r.is_acyclic);
    }
}
