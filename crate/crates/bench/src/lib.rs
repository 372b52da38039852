//! Seeded instances shared by the criterion benches.

use ssg_core::eval::check_stopping;
use ssg_core::generate::{cycle_with_averages, generate, Family, GeneratorSpec, KindWeights};
use ssg_core::structure::analyze;
use ssg_core::Game;

/// Cycle lengths for the linear-time single-cycle solver.
pub const CYCLE_SIZES: [usize; 3] = [1_000, 10_000, 100_000];
/// Average vertices on those cycles; fixed so the numbers stay short.
pub const CYCLE_AVERAGES: usize = 8;

pub fn long_cycle(n: usize) -> Game {
    cycle_with_averages(n, CYCLE_AVERAGES, n as u64).expect("valid cycle")
}

pub fn max_acyclic(n: usize, seed: u64) -> Game {
    generate(&GeneratorSpec::new(Family::MaxAcyclic, n, seed)).expect("valid spec")
}

pub fn dag_plus_one(n: usize, seed: u64) -> Game {
    generate(&GeneratorSpec::new(Family::DagPlusK(1), n, seed)).expect("valid spec")
}

/// A stopping random game with at least one fork, found by scanning seeds upward.
pub fn fork_game(n: usize, seed: u64) -> Game {
    let weights = KindWeights { max: 2, min: 2, ave: 3, sink: 1 };
    (seed..)
        .map(|s| generate(&GeneratorSpec { family: Family::Random, n, weights, seed: s }).expect("valid spec"))
        .find(|g| {
            let r = analyze(g);
            r.k_p + r.k_a > 0 && r.k_p + r.k_a <= 6 && check_stopping(g).0
        })
        .expect("some seed has forks")
}
