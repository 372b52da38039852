//! Exact values under fixed strategies, plus the certificates built on them.

mod linear;
mod optimality;
mod response;
mod stopping;

use std::collections::BTreeSet;
use std::ops::Index;

use num_traits::Zero;

pub use linear::LinearSystem;
pub use optimality::{check_local_optimality, greedy_strategies, OptimalityReport};
pub use response::{best_response_max, best_response_min};
pub use stopping::check_stopping;
pub(crate) use optimality::{best_successor, is_locally_optimal};

use crate::error::{Result, SsgError};
use crate::game::{Game, Player, VertexId, VertexKind};
use crate::rational::{denominator_bound, half, Rational};
use crate::strategy::Strategy;

/// One exact value per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueVector(Vec<Rational>);

impl ValueVector {
    pub fn new(values: Vec<Rational>) -> Self {
        ValueVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        ValueVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<&Rational> {
        self.0.get(v.0)
    }

    pub fn set(&mut self, v: VertexId, value: Rational) {
        self.0[v.0] = value;
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Rational)> {
        self.0.iter().enumerate().map(|(i, r)| (VertexId(i), r))
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    /// The first `n` entries; used to drop vertices appended by a transformation.
    pub fn truncated(&self, n: usize) -> ValueVector {
        ValueVector(self.0[..n].to_vec())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ValueVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Index<VertexId> for ValueVector {
    type Output = Rational;

    fn index(&self, v: VertexId) -> &Rational {
        &self.0[v.0]
    }
}

fn check_pair(game: &Game, sigma: &Strategy, tau: &Strategy) -> Result<()> {
    if sigma.owner() != Player::Max {
        return Err(SsgError::NotOwned { vertex: VertexId(0), owner: Player::Max });
    }
    if tau.owner() != Player::Min {
        return Err(SsgError::NotOwned { vertex: VertexId(0), owner: Player::Min });
    }
    sigma.check_total(game)?;
    tau.check_total(game)
}

#[inline]
fn chosen(game: &Game, sigma: &Strategy, tau: &Strategy, v: VertexId) -> Option<VertexId> {
    match game.kind(v) {
        VertexKind::Max => sigma.get(v),
        VertexKind::Min => tau.get(v),
        _ => None,
    }
}

/// Membership mask of the vertices whose value is 0 under `(sigma, tau)`.
fn zero_mask(game: &Game, sigma: &Strategy, tau: &Strategy) -> Vec<bool> {
    let n = game.len();
    let pred = game.predecessors();
    let mut in_z = vec![true; n];
    let mut queue: Vec<VertexId> = Vec::new();
    for v in game.vertices() {
        if let Some(val) = game.sink_value(v) {
            if !val.is_zero() {
                in_z[v.0] = false;
                queue.push(v);
            }
        }
    }
    while let Some(w) = queue.pop() {
        for &p in &pred[w.0] {
            if !in_z[p.0] {
                continue;
            }
            let leaves = match game.kind(p) {
                VertexKind::Ave => true,
                VertexKind::Max | VertexKind::Min => chosen(game, sigma, tau, p) == Some(w),
                VertexKind::Sink(_) => false,
            };
            if leaves {
                in_z[p.0] = false;
                queue.push(p);
            }
        }
    }
    in_z
}

/// The set of vertices of value 0 under the pair: starting from everything but the
/// positive sinks, remove average vertices with a successor outside the set and
/// positional vertices whose chosen successor is outside, until stable.
pub fn zero_set(game: &Game, sigma: &Strategy, tau: &Strategy) -> Result<BTreeSet<VertexId>> {
    check_pair(game, sigma, tau)?;
    Ok(zero_mask(game, sigma, tau)
        .into_iter()
        .enumerate()
        .filter_map(|(i, z)| z.then_some(VertexId(i)))
        .collect())
}

#[derive(Clone)]
enum Term {
    Const(Rational),
    Var(usize),
}

/// Assembles the linear system for the pair, together with the map from every
/// vertex to the term (constant or average-vertex variable) that carries its value.
fn assemble(game: &Game, sigma: &Strategy, tau: &Strategy) -> (LinearSystem, Vec<Term>) {
    let n = game.len();
    let in_z = zero_mask(game, sigma, tau);
    let mut term: Vec<Option<Term>> = vec![None; n];
    let mut variables = Vec::new();

    for v in game.vertices() {
        if in_z[v.0] {
            term[v.0] = Some(Term::Const(Rational::zero()));
            continue;
        }
        match game.kind(v) {
            VertexKind::Sink(val) => term[v.0] = Some(Term::Const(val.clone())),
            VertexKind::Ave => {
                let s = game.successors(v);
                if s[0] != s[1] {
                    term[v.0] = Some(Term::Var(variables.len()));
                    variables.push(v);
                }
            }
            _ => {}
        }
    }

    // Positional vertices and single-target average vertices copy the term of the
    // vertex they move to; outside the zero set such chains end at a proper
    // average vertex or a positive sink.
    let next = |v: VertexId| -> VertexId {
        match game.kind(v) {
            VertexKind::Ave => game.successors(v)[0],
            _ => chosen(game, sigma, tau, v).expect("total pair"),
        }
    };
    let mut path = Vec::new();
    for v in game.vertices() {
        if term[v.0].is_some() {
            continue;
        }
        let mut u = v;
        while term[u.0].is_none() {
            path.push(u);
            u = next(u);
        }
        let t = term[u.0].clone();
        for p in path.drain(..) {
            term[p.0] = t.clone();
        }
    }
    let term: Vec<Term> = term.into_iter().map(|t| t.expect("resolved")).collect();

    let h = half();
    let mut coefficients = Vec::with_capacity(variables.len());
    let mut offset = Vec::with_capacity(variables.len());
    for &a in &variables {
        let mut row: Vec<(usize, Rational)> = Vec::with_capacity(2);
        let mut b = Rational::zero();
        for &s in game.successors(a) {
            match &term[s.0] {
                Term::Const(c) => b += c * &h,
                Term::Var(j) => match row.iter_mut().find(|(k, _)| k == j) {
                    Some((_, c)) => *c += &h,
                    None => row.push((*j, h.clone())),
                },
            }
        }
        coefficients.push(row);
        offset.push(b);
    }
    (LinearSystem { variables, coefficients, offset }, term)
}

/// The linear system behind [`evaluate`], exposed for inspection and testing.
pub fn linear_system(game: &Game, sigma: &Strategy, tau: &Strategy) -> Result<LinearSystem> {
    check_pair(game, sigma, tau)?;
    Ok(assemble(game, sigma, tau).0)
}

/// `Val_{σ,τ}` for every vertex, exactly.
pub fn evaluate(game: &Game, sigma: &Strategy, tau: &Strategy) -> Result<ValueVector> {
    check_pair(game, sigma, tau)?;
    evaluate_unchecked(game, sigma, tau)
}

pub(crate) fn evaluate_unchecked(game: &Game, sigma: &Strategy, tau: &Strategy) -> Result<ValueVector> {
    let (system, term) = assemble(game, sigma, tau);
    let z = system.solve()?;
    let values: Vec<Rational> = term
        .into_iter()
        .map(|t| match t {
            Term::Const(c) => c,
            Term::Var(j) => z[j].clone(),
        })
        .collect();
    debug_assert!({
        let bound = denominator_bound(game.count_ave(), &game.sink_denominator_lcm());
        values.iter().all(|v| *v.denom() <= bound)
    });
    Ok(ValueVector(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;
    use crate::rational::{int, ratio};

    pub(crate) fn caterpillar(n: usize) -> (Game, VertexId) {
        let mut b = GameBuilder::new();
        let zero = b.sink(int(0));
        let one = b.sink(int(1));
        let ids: Vec<VertexId> = (0..n).map(|_| b.ave()).collect();
        for i in 0..n {
            let next = if i + 1 < n { ids[i + 1] } else { one };
            b.arcs(ids[i], &[zero, next]);
        }
        (b.build().unwrap(), ids[0])
    }

    fn no_choice(g: &Game) -> (Strategy, Strategy) {
        (Strategy::first_successor(g, Player::Max), Strategy::first_successor(g, Player::Min))
    }

    #[test]
    fn caterpillar_root() {
        let (g, root) = caterpillar(3);
        let (s, t) = no_choice(&g);
        assert_eq!(evaluate(&g, &s, &t).unwrap()[root], ratio(1, 8));
        let z = zero_set(&g, &s, &t).unwrap();
        assert_eq!(z, BTreeSet::from([VertexId(0)]));
    }

    #[test]
    fn max_to_sink() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(ratio(3, 4));
        let t = b.sink(ratio(1, 4));
        b.arcs(x, &[t, s]);
        let g = b.build().unwrap();
        let sigma = Strategy::from_pairs(&g, Player::Max, [(x, s)]).unwrap();
        let tau = Strategy::empty(&g, Player::Min);
        assert_eq!(evaluate(&g, &sigma, &tau).unwrap()[x], ratio(3, 4));
    }

    #[test]
    fn two_cycle_of_averages() {
        let mut b = GameBuilder::new();
        let a1 = b.ave();
        let a2 = b.ave();
        let s0 = b.sink(int(0));
        let s1 = b.sink(int(1));
        b.arcs(a1, &[s0, a2]).arcs(a2, &[s1, a1]);
        let g = b.build().unwrap();
        let (s, t) = no_choice(&g);
        let v = evaluate(&g, &s, &t).unwrap();
        assert_eq!((v[a1].clone(), v[a2].clone()), (ratio(1, 3), ratio(2, 3)));
    }

    #[test]
    fn self_loop_is_zero() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(int(1));
        b.arcs(x, &[x, s]);
        let g = b.build().unwrap();
        let sigma = Strategy::from_pairs(&g, Player::Max, [(x, x)]).unwrap();
        let tau = Strategy::empty(&g, Player::Min);
        assert_eq!(zero_set(&g, &sigma, &tau).unwrap(), BTreeSet::from([x]));
        assert_eq!(evaluate(&g, &sigma, &tau).unwrap()[x], int(0));
    }

    #[test]
    fn chain_to_one_has_empty_zero_set() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let y = b.min();
        let s = b.sink(int(1));
        b.arcs(x, &[y]).arcs(y, &[s]);
        let g = b.build().unwrap();
        let (sigma, tau) = no_choice(&g);
        assert!(zero_set(&g, &sigma, &tau).unwrap().is_empty());
        assert_eq!(evaluate(&g, &sigma, &tau).unwrap()[x], int(1));
    }

    #[test]
    fn deterministic_average_is_substituted() {
        let mut b = GameBuilder::new();
        let a = b.ave();
        let c = b.ave();
        let s = b.sink(ratio(1, 3));
        let z = b.sink(int(0));
        b.arcs(a, &[c, c]).arcs(c, &[s, z]);
        let g = b.build().unwrap();
        let (sigma, tau) = no_choice(&g);
        let sys = linear_system(&g, &sigma, &tau).unwrap();
        assert_eq!(sys.variables, vec![c]);
        assert_eq!(evaluate(&g, &sigma, &tau).unwrap()[a], ratio(1, 6));
    }

    #[test]
    fn partial_pair_is_rejected() {
        let mut b = GameBuilder::new();
        let x = b.max();
        let s = b.sink(int(1));
        b.arcs(x, &[s]);
        let g = b.build().unwrap();
        let err = evaluate(&g, &Strategy::empty(&g, Player::Max), &Strategy::empty(&g, Player::Min));
        assert!(matches!(err, Err(SsgError::PartialStrategy { .. })));
    }
}
