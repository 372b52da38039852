//! Exhaustive minimax over all pure stationary strategy pairs. Slow on purpose.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Result, SsgError};
use crate::eval::{evaluate_unchecked, ValueVector};
use crate::game::{Game, Player, VertexId};
use crate::rational::Rational;
use crate::strategy::{Strategy, StrategyPair};

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Distinct successors of every `owner` vertex, sorted by id.
fn choices(game: &Game, owner: Player) -> Vec<(VertexId, Vec<VertexId>)> {
    game.owned(owner)
        .map(|v| {
            let mut s = game.successors(v).to_vec();
            s.sort();
            s.dedup();
            (v, s)
        })
        .collect()
}

/// All total strategies of one player, lexicographic in (vertex id, successor id)
/// with the largest vertex id varying fastest.
#[derive(Debug, Clone)]
pub struct StrategyEnumerator {
    owner: Player,
    template: Strategy,
    choices: Vec<(VertexId, Vec<VertexId>)>,
    cursor: Option<Vec<usize>>,
    count: u64,
}

impl StrategyEnumerator {
    /// Number of strategies the enumerator yields in total.
    pub fn count_total(&self) -> u64 {
        self.count
    }
}

impl Iterator for StrategyEnumerator {
    type Item = Strategy;

    fn next(&mut self) -> Option<Strategy> {
        let cursor = self.cursor.as_mut()?;
        let mut s = self.template.clone();
        for ((v, succ), &i) in self.choices.iter().zip(cursor.iter()) {
            s.set_unchecked(*v, succ[i]);
        }
        let mut k = cursor.len();
        loop {
            if k == 0 {
                self.cursor = None;
                break;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < self.choices[k].1.len() {
                break;
            }
            cursor[k] = 0;
        }
        debug_assert_eq!(s.owner(), self.owner);
        Some(s)
    }
}

/// Enumerates the total strategies of `owner`, refusing when there are more than `cap`.
pub fn enumerate_strategies(game: &Game, owner: Player, cap: u64) -> Result<StrategyEnumerator> {
    let choices = choices(game, owner);
    let count: BigUint = choices.iter().map(|(_, s)| BigUint::from(s.len())).product();
    match count.to_u64() {
        Some(c) if c <= cap => Ok(StrategyEnumerator {
            owner,
            template: Strategy::empty(game, owner),
            cursor: Some(vec![0; choices.len()]),
            choices,
            count: c,
        }),
        _ => Err(SsgError::EnumerationCap { owner, count: count.to_string(), cap }),
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub values: ValueVector,
    /// A pair attaining `values` at every vertex at once.
    pub witness: StrategyPair,
    pub minimax_equals_maximin: bool,
    /// Number of strategy pairs evaluated.
    pub evaluations: u64,
}

pub fn oracle_solve(game: &Game) -> Result<OracleResult> {
    oracle_solve_capped(game, DEFAULT_CAP)
}

/// Vertexwise `max_σ min_τ` and `min_τ max_σ` of the exact pair values.
pub fn oracle_solve_capped(game: &Game, cap: u64) -> Result<OracleResult> {
    let sigmas: Vec<Strategy> = enumerate_strategies(game, Player::Max, cap)?.collect();
    let taus: Vec<Strategy> = enumerate_strategies(game, Player::Min, cap)?.collect();
    let n = game.len();
    let mut row_min: Vec<Option<Vec<Rational>>> = vec![None; sigmas.len()];
    let mut col_max: Vec<Option<Vec<Rational>>> = vec![None; taus.len()];
    for (i, sigma) in sigmas.iter().enumerate() {
        for (j, tau) in taus.iter().enumerate() {
            let w = evaluate_unchecked(game, sigma, tau)?.into_vec();
            fold(&mut row_min[i], &w, |new, old| new < old);
            fold(&mut col_max[j], &w, |new, old| new > old);
        }
    }
    let maximin: Vec<Rational> = (0..n)
        .map(|v| row_min.iter().map(|r| &r.as_ref().expect("evaluated")[v]).max().expect("nonempty").clone())
        .collect();
    let minimax: Vec<Rational> = (0..n)
        .map(|v| col_max.iter().map(|c| &c.as_ref().expect("evaluated")[v]).min().expect("nonempty").clone())
        .collect();
    if maximin != minimax {
        return Err(SsgError::invariant("maximin and minimax values differ"));
    }
    let i = row_min.iter().position(|r| r.as_deref() == Some(&maximin[..]));
    let j = col_max.iter().position(|c| c.as_deref() == Some(&minimax[..]));
    let (Some(i), Some(j)) = (i, j) else {
        return Err(SsgError::invariant("no single strategy is optimal at every vertex"));
    };
    Ok(OracleResult {
        values: ValueVector::new(maximin),
        witness: StrategyPair { max: sigmas[i].clone(), min: taus[j].clone() },
        minimax_equals_maximin: true,
        evaluations: (sigmas.len() * taus.len()) as u64,
    })
}

fn fold(acc: &mut Option<Vec<Rational>>, w: &[Rational], better: impl Fn(&Rational, &Rational) -> bool) {
    match acc {
        None => *acc = Some(w.to_vec()),
        Some(a) => {
            for (x, y) in a.iter_mut().zip(w) {
                if better(y, x) {
                    *x = y.clone();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::game::GameBuilder;
    use crate::rational::{int, ratio};

    #[test]
    fn no_owned_vertices_gives_one_strategy() {
        let mut b = GameBuilder::new();
        b.sink(int(1));
        let g = b.build().unwrap();
        let all: Vec<_> = enumerate_strategies(&g, Player::Max, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].support_len(), 0);
    }

    #[test]
    fn lexicographic_order() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let y = b.max();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(x, &[s1, s0]).arcs(y, &[s0, s1]);
        let g = b.build().unwrap();
        let seq: Vec<_> = enumerate_strategies(&g, Player::Max, DEFAULT_CAP)
            .unwrap()
            .map(|s| (s.get(x).unwrap(), s.get(y).unwrap()))
            .collect();
        assert_eq!(seq, vec![(s0, s0), (s0, s1), (s1, s0), (s1, s1)]);
    }

    #[test]
    fn three_successors() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s: Vec<_> = (0..3).map(|k| b.sink(ratio(k, 2))).collect();
        b.arcs(x, &[s[2], s[0], s[1]]);
        let g = b.build().unwrap();
        let seq: Vec<_> = enumerate_strategies(&g, Player::Max, DEFAULT_CAP)
            .unwrap()
            .map(|st| st.get(x).unwrap())
            .collect();
        assert_eq!(seq, s);
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = GameBuilder::new();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        for _ in 0..21 {
            let x = b.max();
            b.arcs(x, &[s0, s1]);
        }
        let g = b.build().unwrap();
        let err = enumerate_strategies(&g, Player::Max, DEFAULT_CAP).unwrap_err();
        assert!(matches!(err, SsgError::EnumerationCap { ref count, .. } if count == "2097152"));
    }

    #[test]
    fn one_step_max() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let lo = b.sink(ratio(1, 4));
        let hi = b.sink(ratio(3, 4));
        b.arcs(x, &[lo, hi]);
        let r = oracle_solve(&b.build().unwrap()).unwrap();
        assert_eq!(r.values[x], ratio(3, 4));
    }

    #[test]
    fn witness_attains_values() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let a = b.ave();
        let y = b.min();
        let half = b.sink(ratio(1, 2));
        let one = b.sink(int(1));
        let zero = b.sink(int(0));
        b.arcs(x, &[a, half]).arcs(a, &[y, one]).arcs(y, &[x, zero]);
        let g = b.build().unwrap();
        let r = oracle_solve(&g).unwrap();
        assert!(r.minimax_equals_maximin);
        assert_eq!(evaluate(&g, &r.witness.max, &r.witness.min).unwrap(), r.values);
        assert_eq!(r.evaluations, 4);
    }

    #[test]
    fn two_average_cycle() {
        let mut b = GameBuilder::new();
        let a1 = b.ave();
        let a2 = b.ave();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(a1, &[s0, a2]).arcs(a2, &[s1, a1]);
        let r = oracle_solve(&b.build().unwrap()).unwrap();
        assert_eq!((r.values[a1].clone(), r.values[a2].clone()), (ratio(1, 3), ratio(2, 3)));
    }
}
