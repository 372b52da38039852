//! The game graph: vertices partitioned into MAX, MIN, AVE and SINK, plus arcs.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Result, SsgError};
use crate::rational::{fmt_ratio, in_unit_interval, lcm_denominators, Rational};

/// Dense vertex index. Subgame constructions never renumber vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }

    /// True when `a` is strictly better than `b` for this player.
    pub fn prefers(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Player::Max => a > b,
            Player::Min => a < b,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Max => "MAX",
            Player::Min => "MIN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    Max,
    Min,
    Ave,
    Sink(Rational),
}

impl VertexKind {
    pub fn owner(&self) -> Option<Player> {
        match self {
            VertexKind::Max => Some(Player::Max),
            VertexKind::Min => Some(Player::Min),
            _ => None,
        }
    }

    pub fn is_sink(&self) -> bool {
        matches!(self, VertexKind::Sink(_))
    }

    pub fn is_positional(&self) -> bool {
        self.owner().is_some()
    }

    pub fn sink_value(&self) -> Option<&Rational> {
        match self {
            VertexKind::Sink(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Player> for VertexKind {
    fn from(p: Player) -> Self {
        match p {
            Player::Max => VertexKind::Max,
            Player::Min => VertexKind::Min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    AveOutdegree(usize),
    NoSuccessor,
    SinkNotSelfLoop,
    SinkValueOutOfRange(Rational),
    DanglingArc(usize),
}

/// One broken structural rule, located at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexId,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.vertex;
        match &self.kind {
            ViolationKind::AveOutdegree(d) => write!(f, "vertex {v}: AVE outdegree {d} != 2"),
            ViolationKind::NoSuccessor => write!(f, "vertex {v}: positional vertex without successor"),
            ViolationKind::SinkNotSelfLoop => write!(f, "vertex {v}: sink must have exactly a self-loop"),
            ViolationKind::SinkValueOutOfRange(r) => {
                write!(f, "vertex {v}: sink value {} outside [0,1]", fmt_ratio(r))
            }
            ViolationKind::DanglingArc(t) => write!(f, "vertex {v}: arc to missing vertex {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    kinds: Vec<VertexKind>,
    succ: Vec<Vec<VertexId>>,
}

impl Game {
    /// Builds a game and rejects it unless [`validate`] finds nothing.
    pub fn new(kinds: Vec<VertexKind>, succ: Vec<Vec<VertexId>>) -> Result<Game> {
        let g = Game::from_parts_unchecked(kinds, succ);
        let violations = validate(&g);
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(SsgError::InvalidGame(violations))
        }
    }

    /// Builds a game without checking it. Solvers assume valid input, so anything
    /// built this way should go through [`validate`] before being solved.
    ///
    /// # Panics
    /// If the two vectors differ in length.
    pub fn from_parts_unchecked(kinds: Vec<VertexKind>, succ: Vec<Vec<VertexId>>) -> Game {
        assert_eq!(kinds.len(), succ.len(), "one successor list per vertex");
        Game { kinds, succ }
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.kinds.len()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.kinds.len()
    }

    #[inline]
    pub fn kind(&self, v: VertexId) -> &VertexKind {
        &self.kinds[v.0]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.kinds[v.0].is_sink()
    }

    pub fn sink_value(&self, v: VertexId) -> Option<&Rational> {
        self.kinds[v.0].sink_value()
    }

    /// Vertices owned by `player`, in increasing id order.
    pub fn owned(&self, player: Player) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices()
            .filter(move |&v| self.kinds[v.0].owner() == Some(player))
    }

    pub fn count_max(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Max)).count()
    }

    pub fn count_min(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Min)).count()
    }

    pub fn count_ave(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Ave)).count()
    }

    pub fn count_sinks(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_sink()).count()
    }

    /// Lcm of all sink denominators.
    pub fn sink_denominator_lcm(&self) -> BigInt {
        lcm_denominators(self.kinds.iter().filter_map(|k| k.sink_value()))
    }

    /// Sink successors of `v` (deduplicated, in arc order).
    pub fn sink_successors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = Vec::new();
        for &s in self.successors(v) {
            if self.is_sink(s) && s != v && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// The sink successor of `v` best for `player` (ties to the smallest id), if any.
    pub fn best_sink_successor(&self, v: VertexId, player: Player) -> Option<VertexId> {
        let mut best: Option<VertexId> = None;
        for s in self.sink_successors(v) {
            let better = match best {
                None => true,
                Some(b) => {
                    let (sv, bv) = (self.sink_value(s).unwrap(), self.sink_value(b).unwrap());
                    player.prefers(sv, bv) || (sv == bv && s < b)
                }
            };
            if better {
                best = Some(s);
            }
        }
        best
    }

    /// Predecessor lists, each in increasing id order. Sink self-loops are omitted.
    pub fn predecessors(&self) -> Vec<Vec<VertexId>> {
        let mut pred = vec![Vec::new(); self.len()];
        for v in self.vertices() {
            if self.is_sink(v) {
                continue;
            }
            for &w in self.successors(v) {
                if pred[w.0].last() != Some(&v) {
                    pred[w.0].push(v);
                }
            }
        }
        pred
    }

    pub(crate) fn set_vertex(&mut self, v: VertexId, kind: VertexKind, succ: Vec<VertexId>) {
        self.kinds[v.0] = kind;
        self.succ[v.0] = succ;
    }

    pub(crate) fn set_successors(&mut self, v: VertexId, succ: Vec<VertexId>) {
        self.succ[v.0] = succ;
    }

    pub(crate) fn push_vertex(&mut self, kind: VertexKind, succ: Vec<VertexId>) -> VertexId {
        self.kinds.push(kind);
        self.succ.push(succ);
        VertexId(self.kinds.len() - 1)
    }

    pub fn into_parts(self) -> (Vec<VertexKind>, Vec<Vec<VertexId>>) {
        (self.kinds, self.succ)
    }
}

/// Every structural rule the game breaks. An empty list means the game is valid.
pub fn validate(game: &Game) -> Vec<Violation> {
    let n = game.len();
    let mut out = Vec::new();
    for v in game.vertices() {
        let succ = game.successors(v);
        for &w in succ {
            if w.0 >= n {
                out.push(Violation { vertex: v, kind: ViolationKind::DanglingArc(w.0) });
            }
        }
        match game.kind(v) {
            VertexKind::Ave if succ.len() != 2 => {
                out.push(Violation { vertex: v, kind: ViolationKind::AveOutdegree(succ.len()) })
            }
            VertexKind::Max | VertexKind::Min if succ.is_empty() => {
                out.push(Violation { vertex: v, kind: ViolationKind::NoSuccessor })
            }
            VertexKind::Sink(value) => {
                if succ != [v] {
                    out.push(Violation { vertex: v, kind: ViolationKind::SinkNotSelfLoop });
                }
                if !in_unit_interval(value) {
                    out.push(Violation {
                        vertex: v,
                        kind: ViolationKind::SinkValueOutOfRange(value.clone()),
                    });
                }
            }
            _ => {}
        }
    }
    out
}

/// Incremental construction of a [`Game`]. Sinks get their self-loop automatically.
#[derive(Debug, Default, Clone)]
pub struct GameBuilder {
    kinds: Vec<VertexKind>,
    succ: Vec<Vec<VertexId>>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, kind: VertexKind) -> VertexId {
        let id = VertexId(self.kinds.len());
        let succ = if kind.is_sink() { vec![id] } else { Vec::new() };
        self.kinds.push(kind);
        self.succ.push(succ);
        id
    }

    pub fn max(&mut self) -> VertexId {
        self.vertex(VertexKind::Max)
    }

    pub fn min(&mut self) -> VertexId {
        self.vertex(VertexKind::Min)
    }

    pub fn ave(&mut self) -> VertexId {
        self.vertex(VertexKind::Ave)
    }

    pub fn sink(&mut self, value: Rational) -> VertexId {
        self.vertex(VertexKind::Sink(value))
    }

    pub fn arc(&mut self, from: VertexId, to: VertexId) -> &mut Self {
        self.succ[from.0].push(to);
        self
    }

    pub fn arcs(&mut self, from: VertexId, to: &[VertexId]) -> &mut Self {
        self.succ[from.0].extend_from_slice(to);
        self
    }

    pub fn build(self) -> Result<Game> {
        Game::new(self.kinds, self.succ)
    }
}
