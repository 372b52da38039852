use crate::error::{Result, SsgError};
use crate::eval::ValueVector;
use crate::game::Game;
use crate::hk::{hoffman_karp, open_strategy, HkTrace, SwitchPolicy};
use crate::structure::analyze;
use crate::subgame::merge_sink_neighbors;

use super::solve_by_scc;

/// Strategy iteration from the all-open start on a strongly connected MAX-acyclic
/// game, after merging sink neighbours. The number of improvement steps is checked
/// against the number of MAX vertices.
///
/// The returned strategies live in the merged game, which keeps every vertex and
/// only drops dominated sink arcs, so they are valid in the input as well.
pub fn solve_max_acyclic_scc(game: &Game) -> Result<HkTrace> {
    let report = analyze(game);
    if !report.is_strongly_connected() {
        return Err(SsgError::WrongClass("strongly connected"));
    }
    if !report.is_max_acyclic {
        return Err(SsgError::WrongClass("MAX-acyclic"));
    }
    let merged = merge_sink_neighbors(game);
    let trace = hoffman_karp(&merged, &open_strategy(&merged), SwitchPolicy::All, false)?;
    let n_max = game.count_max();
    if trace.iterations > n_max {
        return Err(SsgError::invariant(format!(
            "{} improvement steps on a MAX-acyclic component with {n_max} MAX vertices",
            trace.iterations
        )));
    }
    Ok(trace)
}

/// MAX-acyclic games of any shape: components bottom-up, each by
/// [`solve_max_acyclic_scc`]. Also returns the total number of improvement steps.
pub fn solve_max_acyclic(game: &Game) -> Result<(ValueVector, usize)> {
    if !analyze(game).is_max_acyclic {
        return Err(SsgError::WrongClass("MAX-acyclic"));
    }
    let mut steps = 0;
    let values = solve_by_scc(game, |c| {
        let t = solve_max_acyclic_scc(c)?;
        steps += t.iterations;
        Ok(t.values)
    })?;
    Ok((values, steps))
}
