#![allow(dead_code)]

use ssg_core::eval::check_stopping;
use ssg_core::generate::{generate, Family, GeneratorSpec, KindWeights};
use ssg_core::Game;

/// Seeded small games from every family, cycling through kind weights.
pub fn small_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Game> {
    let weights = [
        KindWeights::default(),
        KindWeights { max: 2, min: 1, ave: 1, sink: 1 },
        KindWeights { max: 1, min: 2, ave: 1, sink: 1 },
        KindWeights { max: 1, min: 1, ave: 2, sink: 1 },
        KindWeights { max: 1, min: 1, ave: 1, sink: 2 },
    ];
    let families = [
        Family::Random,
        Family::Random,
        Family::Acyclic,
        Family::SingleCycle,
        Family::MaxAcyclic,
        Family::DagPlusK(1),
        Family::DagPlusK(2),
    ];
    (0..count)
        .map(|i| {
            let family = families[i % families.len()];
            let lo = match family {
                Family::DagPlusK(k) => 2 * k + 1,
                _ => 2,
            };
            let n = lo + (i / families.len()) % (max_n - lo + 1);
            let spec = GeneratorSpec {
                family,
                n,
                weights: weights[(i / 3) % weights.len()],
                seed: seed.wrapping_add(i as u64),
            };
            generate(&spec).expect("consistent spec")
        })
        .collect()
}

pub fn stopping_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Game> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        for g in small_corpus(count, max_n, s) {
            if out.len() < count && check_stopping(&g).0 {
                out.push(g);
            }
        }
        s = s.wrapping_add(1_000_003);
    }
    out
}
