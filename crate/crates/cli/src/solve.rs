use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use ssg_core::acyclic::{solve_acyclic, solve_almost_acyclic, solve_fork_fpt, solve_max_acyclic};
use ssg_core::dichotomy::{default_stopping_depth, make_stopping, solve_dichotomy, solve_feedback, DichotomyState};
use ssg_core::eval::{check_stopping, greedy_strategies};
use ssg_core::hk::solve_hk;
use ssg_core::oracle::oracle_solve;
use ssg_core::rational::fmt_ratio;
use ssg_core::structure::{analyze, feedback_vertex_set};
use ssg_core::{Game, Player, Result, SsgError, ValueVector, VertexKind};

/// AUTO runs the fork solver up to this many excess cycle arcs.
pub const AUTO_FORK_LIMIT: usize = 10;
/// AUTO runs nested dichotomies for feedback sets up to this size.
pub const AUTO_FVS_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    Oracle,
    Hk,
    Acyclic,
    MaxAcyclic,
    AlmostAcyclic,
    ForkFpt,
    Dichotomy,
    Feedback,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::Hk => "hk",
            Algorithm::Acyclic => "acyclic",
            Algorithm::MaxAcyclic => "max-acyclic",
            Algorithm::AlmostAcyclic => "almost-acyclic",
            Algorithm::ForkFpt => "fork-fpt",
            Algorithm::Dichotomy => "dichotomy",
            Algorithm::Feedback => "feedback",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// The solver that actually ran (never `Auto`).
    pub algorithm: Algorithm,
    pub values: ValueVector,
    /// Solver-specific work counters, e.g. `("iterations", 3)`.
    pub counters: Vec<(&'static str, usize)>,
    /// Whether the counters stayed within the solver's proven bound, where it has one.
    pub within_bound: Option<bool>,
    pub elapsed: Duration,
}

/// What AUTO runs on `game`.
pub fn choose(game: &Game) -> Algorithm {
    let r = analyze(game);
    if r.is_acyclic {
        Algorithm::Acyclic
    } else if r.is_almost_acyclic {
        Algorithm::AlmostAcyclic
    } else if r.is_max_acyclic {
        Algorithm::MaxAcyclic
    } else if r.k_p + r.k_a <= AUTO_FORK_LIMIT {
        Algorithm::ForkFpt
    } else if feedback_vertex_set(game, AUTO_FVS_LIMIT).is_some() {
        Algorithm::Feedback
    } else {
        Algorithm::Hk
    }
}

/// Runs `algorithm` on `game`. FEEDBACK searches for a feedback set of size at most
/// `fvs_max`.
pub fn solve(game: &Game, algorithm: Algorithm, fvs_max: usize) -> Result<Solution> {
    let algorithm = match algorithm {
        Algorithm::Auto => choose(game),
        a => a,
    };
    let start = Instant::now();
    let mut counters = Vec::new();
    let mut within_bound = None;
    let values = match algorithm {
        Algorithm::Auto => unreachable!("resolved above"),
        Algorithm::Oracle => {
            let r = oracle_solve(game)?;
            counters.push(("pairs evaluated", r.evaluations as usize));
            r.values
        }
        Algorithm::Hk => {
            let t = solve_hk(game)?;
            counters.push(("iterations", t.iterations));
            t.values
        }
        Algorithm::Acyclic => solve_acyclic(game)?,
        Algorithm::MaxAcyclic => {
            let (values, steps) = solve_max_acyclic(game)?;
            counters.push(("iterations", steps));
            within_bound = Some(steps <= game.count_max());
            values
        }
        Algorithm::AlmostAcyclic => solve_almost_acyclic(game)?,
        Algorithm::ForkFpt => {
            let (values, stats) = solve_fork_fpt(game)?;
            counters.push(("k_p", stats.budget.k_p));
            counters.push(("k_a", stats.budget.k_a));
            counters.push(("depth", stats.budget.depth));
            counters.push(("subgames", stats.subgames));
            within_bound = Some(stats.budget.within_bound());
            values
        }
        Algorithm::Dichotomy => {
            let out = solve_dichotomy(game)?;
            counters.push(("calls", out.calls));
            within_bound = Some(out.calls <= out.state.call_bound());
            out.values
        }
        Algorithm::Feedback => {
            let set = feedback_vertex_set(game, fvs_max)
                .ok_or(SsgError::WrongClass("of small feedback vertex number"))?;
            let out = solve_feedback(game, &set)?;
            counters.push(("feedback set size", set.len()));
            counters.push(("calls", out.calls));
            counters.push(("leaf solves", out.leaf_solves));
            within_bound = Some(out.calls <= DichotomyState::for_game(game).call_bound());
            out.values
        }
    };
    Ok(Solution { algorithm, values, counters, within_bound, elapsed: start.elapsed() })
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub strategies: bool,
    /// `Some(None)` picks the default chain length.
    pub make_stopping: Option<Option<usize>>,
    pub fvs_max: usize,
}

/// Solves `game` and renders the report. A non-stopping game is replaced by its
/// stopping transform only when `make_stopping` asks for it.
pub fn report(game: &Game, opts: &SolveOptions) -> Result<String> {
    let stopping = check_stopping(game).0;
    let transformed = match opts.make_stopping {
        Some(m) if !stopping => {
            let m = m.unwrap_or_else(|| default_stopping_depth(game));
            Some((m, make_stopping(game, m)?))
        }
        _ => None,
    };
    let target = transformed.as_ref().map_or(game, |(_, g)| g);
    let sol = solve(target, opts.algorithm, opts.fvs_max)?;

    let mut out = String::new();
    let auto = if opts.algorithm == Algorithm::Auto { " (auto)" } else { "" };
    let _ = writeln!(out, "algorithm: {}{auto}", sol.algorithm.name());
    let _ = writeln!(
        out,
        "vertices: {} (max {}, min {}, ave {}, sink {})",
        game.len(),
        game.count_max(),
        game.count_min(),
        game.count_ave(),
        game.count_sinks()
    );
    if let Some((m, g)) = &transformed {
        let _ = writeln!(
            out,
            "note: game is not stopping; solved its stopping transform (chain length {m}, {} vertices), values are approximate",
            g.len()
        );
    }
    for (name, count) in &sol.counters {
        let _ = writeln!(out, "{name}: {count}");
    }
    if let Some(ok) = sol.within_bound {
        let _ = writeln!(out, "within bound: {}", if ok { "yes" } else { "no" });
    }
    let _ = writeln!(out, "time: {:.3?}", sol.elapsed);
    let _ = writeln!(out, "values:");
    let width = game.len().saturating_sub(1).to_string().len();
    for v in game.vertices() {
        let _ = writeln!(out, "  {:>width$} {:<4} {}", v.0, kind_tag(game.kind(v)), fmt_ratio(&sol.values[v]));
    }
    if opts.strategies {
        let pair = greedy_strategies(target, &sol.values)?;
        let _ = writeln!(out, "strategies:");
        for v in game.vertices() {
            let Some(owner) = game.kind(v).owner() else { continue };
            let chosen = pair.for_player(owner).get(v).expect("total");
            // In the transform every arc starts a fresh chain; map it back by position.
            let pos = target.successors(v).iter().position(|&w| w == chosen).expect("successor");
            let w = game.successors(v)[pos];
            let who = if owner == Player::Max { "max" } else { "min" };
            let _ = writeln!(out, "  {:>width$} {who} -> {}", v.0, w.0);
        }
    }
    Ok(out)
}

fn kind_tag(k: &VertexKind) -> &'static str {
    match k {
        VertexKind::Max => "max",
        VertexKind::Min => "min",
        VertexKind::Ave => "ave",
        VertexKind::Sink(_) => "sink",
    }
}
