use num_traits::Zero;

use super::analyze;
use crate::eval::ValueVector;
use crate::game::{Game, VertexId, VertexKind};
use crate::rational::Rational;

/// One strongly connected component as a standalone game.
///
/// Local vertex `i < vertices.len()` is `vertices[i]`; local vertex
/// `vertices.len() + j` is a frontier sink standing for the outside vertex
/// `frontier[j]` (an original sink or a vertex of a later component). Frontier
/// values are placeholders (0) until [`ComponentGame::instantiate`] fills them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGame {
    pub vertices: Vec<VertexId>,
    pub frontier: Vec<VertexId>,
    pub game: Game,
    /// Whether the component contains a cycle.
    pub cyclic: bool,
}

impl ComponentGame {
    pub fn local_of(&self, global: VertexId) -> Option<VertexId> {
        self.vertices
            .binary_search(&global)
            .ok()
            .or_else(|| self.frontier.iter().position(|&f| f == global).map(|j| self.vertices.len() + j))
            .map(VertexId)
    }

    /// The component game with frontier sinks set to `solved` values of the parent.
    pub fn instantiate(&self, solved: &[Rational]) -> Game {
        let mut g = self.game.clone();
        let base = self.vertices.len();
        for (j, &f) in self.frontier.iter().enumerate() {
            let v = VertexId(base + j);
            g.set_vertex(v, VertexKind::Sink(solved[f.0].clone()), vec![v]);
        }
        g
    }

    /// Copies the component part of `local` values into `global`.
    pub fn write_back(&self, local: &ValueVector, global: &mut [Rational]) {
        for (i, &v) in self.vertices.iter().enumerate() {
            global[v.0] = local[VertexId(i)].clone();
        }
    }
}

/// Components of the sink-removed graph, in reverse topological order (a component
/// comes after every component it can reach), each as a game with frontier sinks.
pub fn scc_subgames(game: &Game) -> Vec<ComponentGame> {
    let report = analyze(game);
    let mut local = vec![usize::MAX; game.len()];
    let mut frontier_slot = vec![usize::MAX; game.len()];
    let mut out = Vec::with_capacity(report.components.len());
    for (c, comp) in report.components.iter().enumerate().rev() {
        for (i, v) in comp.iter().enumerate() {
            local[v.0] = i;
        }
        let mut frontier: Vec<VertexId> = Vec::new();
        let mut kinds = Vec::with_capacity(comp.len());
        let mut succ = Vec::with_capacity(comp.len());
        for &v in comp {
            kinds.push(game.kind(v).clone());
            let mapped = game
                .successors(v)
                .iter()
                .map(|&w| {
                    if report.scc_of[w.0] == Some(c) {
                        VertexId(local[w.0])
                    } else {
                        if frontier_slot[w.0] == usize::MAX {
                            frontier_slot[w.0] = frontier.len();
                            frontier.push(w);
                        }
                        VertexId(comp.len() + frontier_slot[w.0])
                    }
                })
                .collect();
            succ.push(mapped);
        }
        for (j, &f) in frontier.iter().enumerate() {
            kinds.push(VertexKind::Sink(Rational::zero()));
            succ.push(vec![VertexId(comp.len() + j)]);
            frontier_slot[f.0] = usize::MAX;
        }
        out.push(ComponentGame {
            vertices: comp.clone(),
            frontier,
            game: Game::from_parts_unchecked(kinds, succ),
            cyclic: report.cyclic[c],
        });
    }
    out
}
