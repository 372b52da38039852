use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ssg_core::acyclic::{solve_acyclic, solve_max_acyclic_scc};
use ssg_core::dichotomy::{dichotomy_solve, fixed_point_f, make_stopping};
use ssg_core::eval::{best_response_max, best_response_min, check_local_optimality, check_stopping};
use ssg_core::format::{parse, serialize};
use ssg_core::generate::{caterpillar, generate, Family, GeneratorSpec, KindWeights};
use ssg_core::hk::{hoffman_karp, open_strategy, solve_hk, SwitchPolicy};
use ssg_core::oracle::{enumerate_strategies, oracle_solve, DEFAULT_CAP};
use ssg_core::rational::{denominator_bound, ratio};
use ssg_core::structure::{analyze, feedback_vertex_set, is_feedback_set};
use ssg_core::subgame::{merge_sink_neighbors, restrict, vertex_to_sink};
use ssg_core::{evaluate, Game, Player, Rational, VertexId};

const FAMILIES: [Family; 6] = [
    Family::Random,
    Family::Acyclic,
    Family::SingleCycle,
    Family::MaxAcyclic,
    Family::DagPlusK(1),
    Family::DagPlusK(2),
];

fn game_from(family: usize, n: usize, ave: u32, seed: u64) -> Game {
    let family = FAMILIES[family];
    let n = match family {
        Family::DagPlusK(k) => n.max(2 * k + 1),
        _ => n,
    };
    let weights = KindWeights { max: 1, min: 1, ave, sink: 1 };
    generate(&GeneratorSpec { family, n, weights, seed }).unwrap()
}

fn small_game() -> impl Strategy<Value = Game> {
    (0..FAMILIES.len(), 2usize..=7, 1u32..=3, any::<u64>()).prop_map(|(f, n, a, s)| game_from(f, n, a, s))
}

fn small_stopping_game() -> impl Strategy<Value = Game> {
    small_game().prop_filter("stopping", |g| check_stopping(g).0)
}

fn all_strategies(g: &Game, owner: Player) -> Vec<ssg_core::Strategy> {
    enumerate_strategies(g, owner, DEFAULT_CAP).unwrap().collect()
}

/// `w` reaches `v` in the sink-removed graph.
fn reaches(g: &Game, from: VertexId, to: VertexId) -> bool {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if std::mem::replace(&mut seen[u.0], true) || g.is_sink(u) {
            continue;
        }
        stack.extend(g.successors(u).iter().copied().filter(|w| !g.is_sink(*w)));
    }
    false
}

fn acyclic_without(g: &Game, removed: &[VertexId]) -> bool {
    let live = |v: VertexId| !g.is_sink(v) && !removed.contains(&v);
    // A vertex is on a cycle iff it reaches itself through live vertices.
    g.vertices().filter(|&v| live(v)).all(|v| {
        let mut seen = vec![false; g.len()];
        let mut stack: Vec<VertexId> = g.successors(v).iter().copied().filter(|&w| live(w)).collect();
        while let Some(u) = stack.pop() {
            if u == v {
                return false;
            }
            if !std::mem::replace(&mut seen[u.0], true) {
                stack.extend(g.successors(u).iter().copied().filter(|&w| live(w)));
            }
        }
        true
    })
}

fn subsets(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in out.iter_mut() {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialize_then_parse_is_identity(g in small_game()) {
        prop_assert_eq!(parse(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn restricting_by_nothing_changes_nothing(g in small_game()) {
        for p in [Player::Max, Player::Min] {
            prop_assert_eq!(&restrict(&g, &ssg_core::Strategy::empty(&g, p)).unwrap(), &g);
        }
    }

    #[test]
    fn pair_values_respect_the_denominator_bound(g in small_game(), pick in any::<u64>()) {
        let sigmas = all_strategies(&g, Player::Max);
        let taus = all_strategies(&g, Player::Min);
        let s = &sigmas[pick as usize % sigmas.len()];
        let t = &taus[(pick >> 32) as usize % taus.len()];
        let w = evaluate(&g, s, t).unwrap();
        let bound = denominator_bound(g.count_ave(), &g.sink_denominator_lcm());
        for (_, x) in w.iter() {
            prop_assert!(*x.denom() <= bound);
            prop_assert!(*x >= Rational::zero() && *x <= Rational::one());
        }
    }

    #[test]
    fn stopping_check_matches_all_pairs(g in small_game()) {
        let sigmas = all_strategies(&g, Player::Max);
        let taus = all_strategies(&g, Player::Min);
        // A pair traps play iff some vertex gets value 0 with every sink at 1.
        let (kinds, succ) = g.clone().into_parts();
        let ones: Vec<_> = kinds
            .into_iter()
            .map(|k| if k.is_sink() { ssg_core::VertexKind::Sink(Rational::one()) } else { k })
            .collect();
        let h = Game::new(ones, succ).unwrap();
        let exhaustive = sigmas.iter().all(|s| {
            taus.iter().all(|t| evaluate(&h, s, t).unwrap().iter().all(|(_, x)| x.is_one()))
        });
        prop_assert_eq!(check_stopping(&g).0, exhaustive);
    }

    #[test]
    fn best_min_response_is_below_every_reply(g in small_game(), pick in any::<u64>()) {
        let sigmas = all_strategies(&g, Player::Max);
        let sigma = &sigmas[pick as usize % sigmas.len()];
        let (tau, w) = best_response_min(&g, sigma).unwrap();
        prop_assert_eq!(&evaluate(&g, sigma, &tau).unwrap(), &w);
        for t in all_strategies(&g, Player::Min) {
            prop_assert!(evaluate(&g, sigma, &t).unwrap().dominates(&w));
        }
    }

    #[test]
    fn best_max_response_is_above_every_reply(g in small_game(), pick in any::<u64>()) {
        let taus = all_strategies(&g, Player::Min);
        let tau = &taus[pick as usize % taus.len()];
        let (sigma, w) = best_response_max(&g, tau).unwrap();
        prop_assert_eq!(&evaluate(&g, &sigma, tau).unwrap(), &w);
        for s in all_strategies(&g, Player::Max) {
            prop_assert!(w.dominates(&evaluate(&g, &s, tau).unwrap()));
        }
    }

    #[test]
    fn locally_optimal_pair_values_are_the_values(g in small_stopping_game()) {
        let truth = oracle_solve(&g).unwrap().values;
        prop_assert!(check_local_optimality(&g, &truth).unwrap().satisfied);
        for s in all_strategies(&g, Player::Max) {
            for t in all_strategies(&g, Player::Min) {
                let w = evaluate(&g, &s, &t).unwrap();
                if check_local_optimality(&g, &w).unwrap().satisfied {
                    prop_assert_eq!(&w, &truth);
                }
            }
        }
    }

    #[test]
    fn merging_sink_neighbours_keeps_values(g in small_game()) {
        let merged = merge_sink_neighbors(&g);
        prop_assert_eq!(oracle_solve(&merged).unwrap().values, oracle_solve(&g).unwrap().values);
    }

    #[test]
    fn a_vertex_frozen_at_its_value_changes_nothing(g in small_stopping_game()) {
        let truth = oracle_solve(&g).unwrap().values;
        for x in g.vertices().filter(|&x| !g.is_sink(x)) {
            let h = vertex_to_sink(&g, x, truth[x].clone()).unwrap();
            prop_assert_eq!(&oracle_solve(&h).unwrap().values, &truth);
        }
    }

    #[test]
    fn raising_a_sink_never_lowers_a_value(g in small_game(), step in 1i64..=8) {
        let Some(s) = g.vertices().find(|&v| g.sink_value(v).is_some_and(|x| !x.is_one())) else {
            return Ok(());
        };
        let old = g.sink_value(s).unwrap().clone();
        let (mut kinds, succ) = g.clone().into_parts();
        kinds[s.0] = ssg_core::VertexKind::Sink(&old + (Rational::one() - &old) * ratio(step, 8));
        let h = Game::new(kinds, succ).unwrap();
        prop_assert!(oracle_solve(&h).unwrap().values.dominates(&oracle_solve(&g).unwrap().values));
    }

    #[test]
    fn cycle_arcs_are_exactly_the_arcs_on_cycles(g in small_game()) {
        let r = analyze(&g);
        let mut brute = BTreeSet::new();
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            for &w in g.successors(v) {
                if !g.is_sink(w) && reaches(&g, w, v) {
                    brute.insert((v, w));
                }
            }
        }
        prop_assert_eq!(&r.cycle_arcs, &brute);
        if r.k_p == 0 && r.k_a == 0 {
            prop_assert!(r.is_almost_acyclic);
        }
    }

    #[test]
    fn feedback_sets_are_minimum(g in small_game()) {
        let set = feedback_vertex_set(&g, g.len()).unwrap();
        prop_assert!(acyclic_without(&g, &set));
        prop_assert!(is_feedback_set(&g, &set));
        if !set.is_empty() {
            let inner: Vec<VertexId> = g.vertices().filter(|&v| !g.is_sink(v)).collect();
            for smaller in subsets(&inner, set.len() - 1) {
                prop_assert!(!acyclic_without(&g, &smaller), "{:?} is smaller", smaller);
            }
        }
    }

    #[test]
    fn strategy_iteration_improves_strictly(g in small_stopping_game()) {
        let t = hoffman_karp(&g, &open_strategy(&g), SwitchPolicy::All, true).unwrap();
        let h = t.history.unwrap();
        for pair in h.windows(2) {
            prop_assert!(pair[1].1.dominates(&pair[0].1) && pair[1].1 != pair[0].1);
        }
        prop_assert_eq!(t.values, oracle_solve(&g).unwrap().values);
    }

    #[test]
    fn acyclic_solver_agrees_with_the_oracle(seed in any::<u64>(), n in 2usize..=8) {
        let g = game_from(1, n, 1, seed);
        prop_assert_eq!(solve_acyclic(&g).unwrap(), oracle_solve(&g).unwrap().values);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closed_max_vertices_stay_closed(seed in any::<u64>(), n in 3usize..=30) {
        let g = merge_sink_neighbors(&game_from(3, n, 1, seed));
        let t = hoffman_karp(&g, &open_strategy(&g), SwitchPolicy::All, true).unwrap();
        prop_assert!(t.iterations <= g.count_max());
        let h = t.history.unwrap();
        for x in g.owned(Player::Max) {
            let choices: Vec<VertexId> = h.iter().map(|(s, _)| s.get(x).unwrap()).collect();
            if let Some(first) = choices.iter().position(|w| !g.is_sink(*w)) {
                prop_assert!(choices[first..].iter().all(|w| *w == choices[first]));
            }
        }
        prop_assert_eq!(solve_max_acyclic_scc(&g).unwrap().values, t.values);
    }

    #[test]
    fn fixed_point_map_crosses_the_diagonal_once(g in small_stopping_game(), pick in any::<usize>()) {
        let inner: Vec<VertexId> = g.vertices().filter(|&v| !g.is_sink(v)).collect();
        let x = inner[pick % inner.len()];
        let truth = oracle_solve(&g).unwrap().values;
        let v0 = truth[x].clone();
        let mut solve = |h: &Game| solve_hk(h).map(|t| t.values);
        let mut previous: Option<Rational> = None;
        for k in 0..=16 {
            let v = ratio(k, 16);
            let (f, _) = fixed_point_f(&g, x, &v, &mut solve).unwrap();
            if v < v0 {
                prop_assert!(f > v, "f({}) = {} but v0 = {}", v, f, v0);
            } else if v > v0 {
                prop_assert!(f < v, "f({}) = {} but v0 = {}", v, f, v0);
            } else {
                prop_assert_eq!(&f, &v);
            }
            if let Some(p) = previous {
                prop_assert!(f >= p);
            }
            previous = Some(f);
        }
        let out = dichotomy_solve(&g, x, solve).unwrap();
        prop_assert!(out.state.lo <= v0 && v0 <= out.state.hi);
        prop_assert_eq!(&out.value, &v0);
        prop_assert_eq!(&out.values, &truth);
    }
}

#[test]
fn caterpillar_made_stopping_stays_close() {
    let g = caterpillar(3).unwrap();
    let h = make_stopping(&g, 20).unwrap();
    assert!(check_stopping(&h).0);
    let root = solve_acyclic(&h).unwrap()[VertexId(0)].clone();
    let err = (root - ratio(1, 8)).abs();
    assert!(err <= Rational::new(1.into(), (1u64 << 16).into()), "error {err}");
}

#[test]
fn made_stopping_games_solve() {
    let mut b = ssg_core::GameBuilder::new();
    let x = b.max();
    let y = b.min();
    let s = b.sink(ratio(1, 2));
    b.arcs(x, &[y, s]).arcs(y, &[x]);
    let g = b.build().unwrap();
    assert!(!check_stopping(&g).0);
    let h = make_stopping(&g, 6).unwrap();
    let w = solve_hk(&h).unwrap().values;
    assert!(w[x] <= ratio(1, 2) && w[x] > ratio(1, 2) - ratio(1, 16));
}
