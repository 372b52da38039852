//! Solvers for games whose cycles are few or simply shaped.

mod cycle;
mod fork;
mod max_acyclic;

pub use cycle::{closed_values, solve_almost_acyclic, solve_almost_acyclic_scc};
pub use fork::{solve_fork_fpt, ForkBudget, ForkStats};
pub use max_acyclic::{solve_max_acyclic, solve_max_acyclic_scc};

use num_traits::Zero;

use crate::error::{Result, SsgError};
use crate::eval::ValueVector;
use crate::game::{Game, VertexId, VertexKind};
use crate::rational::{half, Rational};
use crate::structure::scc_subgames;

/// The value `v` gets from its successors' values, per its kind.
pub(crate) fn local_value(game: &Game, v: VertexId, values: &[Rational]) -> Rational {
    let succ = game.successors(v);
    match game.kind(v) {
        VertexKind::Sink(s) => s.clone(),
        VertexKind::Ave => (&values[succ[0].0] + &values[succ[1].0]) * half(),
        VertexKind::Max => succ.iter().map(|w| &values[w.0]).max().expect("outdegree >= 1").clone(),
        VertexKind::Min => succ.iter().map(|w| &values[w.0]).min().expect("outdegree >= 1").clone(),
    }
}

/// Non-sink vertices in topological order of the sink-removed graph, or `None` if
/// that graph has a cycle.
pub(crate) fn topological_order(game: &Game) -> Option<Vec<VertexId>> {
    let n = game.len();
    let mut indeg = vec![0usize; n];
    let inner = |v: VertexId| {
        let succ = game.successors(v);
        succ.iter()
            .enumerate()
            .filter(move |(i, w)| !game.is_sink(**w) && !succ[..*i].contains(w))
            .map(|(_, w)| *w)
    };
    let nonsinks: Vec<VertexId> = game.vertices().filter(|&v| !game.is_sink(v)).collect();
    for &v in &nonsinks {
        for w in inner(v) {
            indeg[w.0] += 1;
        }
    }
    let mut stack: Vec<VertexId> = nonsinks.iter().rev().copied().filter(|v| indeg[v.0] == 0).collect();
    let mut order = Vec::with_capacity(nonsinks.len());
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in inner(v) {
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                stack.push(w);
            }
        }
    }
    (order.len() == nonsinks.len()).then_some(order)
}

/// Values of a game whose sink-removed graph is acyclic, by one backward pass.
pub fn solve_acyclic(game: &Game) -> Result<ValueVector> {
    let order = topological_order(game).ok_or(SsgError::WrongClass("acyclic"))?;
    let mut values: Vec<Rational> = game
        .kinds()
        .iter()
        .map(|k| k.sink_value().cloned().unwrap_or_else(Rational::zero))
        .collect();
    for &v in order.iter().rev() {
        values[v.0] = local_value(game, v, &values);
    }
    Ok(ValueVector::new(values))
}

/// Solves the strongly connected components bottom-up. `component_solver` gets each
/// cyclic component as a standalone game whose frontier sinks already carry the
/// solved values; acyclic singletons are evaluated directly.
pub fn solve_by_scc<F>(game: &Game, mut component_solver: F) -> Result<ValueVector>
where
    F: FnMut(&Game) -> Result<ValueVector>,
{
    let mut values: Vec<Rational> = game
        .kinds()
        .iter()
        .map(|k| k.sink_value().cloned().unwrap_or_else(Rational::zero))
        .collect();
    for comp in scc_subgames(game) {
        if !comp.cyclic {
            let v = comp.vertices[0];
            values[v.0] = local_value(game, v, &values);
            continue;
        }
        let local = component_solver(&comp.instantiate(&values))?;
        comp.write_back(&local, &mut values);
    }
    Ok(ValueVector::new(values))
}
