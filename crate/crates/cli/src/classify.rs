use std::fmt::Write as _;

use ssg_core::eval::check_stopping;
use ssg_core::structure::{analyze, feedback_vertex_set};
use ssg_core::{Game, VertexId};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn id_list(ids: impl IntoIterator<Item = VertexId>) -> String {
    let ids: Vec<String> = ids.into_iter().map(|v| v.0.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}

/// Structure of `game` plus a minimum feedback vertex set, searched up to `fvs_max`.
pub fn report(game: &Game, fvs_max: usize) -> String {
    let r = analyze(game);
    let (stopping, trap) = check_stopping(game);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "vertices: {} (max {}, min {}, ave {}, sink {})",
        game.len(),
        game.count_max(),
        game.count_min(),
        game.count_ave(),
        game.count_sinks()
    );
    let largest = r.components.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(
        out,
        "components: {} ({} cyclic, largest {largest})",
        r.components.len(),
        r.cyclic_components().count()
    );
    let _ = writeln!(out, "cycle arcs: {}", r.cycle_arcs.len());
    let _ = writeln!(out, "k_p: {}", r.k_p);
    let _ = writeln!(out, "k_a: {}", r.k_a);
    if !r.fork_positional.is_empty() {
        let _ = writeln!(out, "positional forks: {}", id_list(r.fork_positional.keys().copied()));
    }
    if !r.fork_average.is_empty() {
        let _ = writeln!(out, "average forks: {}", id_list(r.fork_average.iter().copied()));
    }
    let _ = writeln!(out, "acyclic: {}", yes_no(r.is_acyclic));
    let _ = writeln!(out, "almost acyclic: {}", yes_no(r.is_almost_acyclic));
    let _ = writeln!(out, "max-acyclic: {}", yes_no(r.is_max_acyclic));
    let _ = writeln!(out, "min-acyclic: {}", yes_no(r.is_min_acyclic));
    let _ = writeln!(out, "strongly connected: {}", yes_no(r.is_strongly_connected()));
    if stopping {
        let _ = writeln!(out, "stopping: yes");
    } else {
        let _ = writeln!(out, "stopping: no (play can be trapped in {})", id_list(trap));
    }
    match feedback_vertex_set(game, fvs_max) {
        Some(set) => {
            let _ = writeln!(out, "feedback vertex set: {} (size {})", id_list(set.iter().copied()), set.len());
        }
        None => {
            let _ = writeln!(out, "feedback vertex set: none of size <= {fvs_max}");
        }
    }
    out
}
