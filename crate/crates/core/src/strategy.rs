use crate::error::{Result, SsgError};
use crate::game::{Game, Player, VertexId};

/// A pure stationary strategy, possibly partial: a successor choice for some or
/// all vertices of one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    owner: Player,
    choice: Vec<Option<VertexId>>,
}

impl Strategy {
    /// The strategy defined nowhere.
    pub fn empty(game: &Game, owner: Player) -> Self {
        Strategy { owner, choice: vec![None; game.len()] }
    }

    pub fn from_pairs(
        game: &Game,
        owner: Player,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut s = Strategy::empty(game, owner);
        for (v, w) in pairs {
            s.set(game, v, w)?;
        }
        Ok(s)
    }

    /// Every owned vertex picks its smallest-id successor.
    pub fn first_successor(game: &Game, owner: Player) -> Self {
        let mut s = Strategy::empty(game, owner);
        for v in game.owned(owner) {
            s.choice[v.0] = game.successors(v).iter().min().copied();
        }
        s
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn set(&mut self, game: &Game, v: VertexId, w: VertexId) -> Result<()> {
        if !game.contains(v) {
            return Err(SsgError::UnknownVertex(v));
        }
        if game.kind(v).owner() != Some(self.owner) {
            return Err(SsgError::NotOwned { vertex: v, owner: self.owner });
        }
        if !game.successors(v).contains(&w) {
            return Err(SsgError::NotASuccessor { vertex: v, successor: w });
        }
        self.choice[v.0] = Some(w);
        Ok(())
    }

    pub fn unset(&mut self, v: VertexId) {
        self.choice[v.0] = None;
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.choice.get(v.0).copied().flatten()
    }

    /// Defined choices in increasing vertex order.
    pub fn support(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|w| (VertexId(i), w)))
    }

    pub fn support_len(&self) -> usize {
        self.choice.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self, game: &Game) -> bool {
        self.check_total(game).is_ok()
    }

    /// Errors unless the strategy is defined, and legal, on every owned vertex.
    pub fn check_total(&self, game: &Game) -> Result<()> {
        if self.choice.len() != game.len() {
            return Err(SsgError::LengthMismatch { expected: game.len(), found: self.choice.len() });
        }
        for v in game.owned(self.owner) {
            match self.get(v) {
                None => return Err(SsgError::PartialStrategy { owner: self.owner, vertex: v }),
                Some(w) if !game.successors(v).contains(&w) => {
                    return Err(SsgError::NotASuccessor { vertex: v, successor: w })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Errors unless every defined choice is owned by this player and an actual arc.
    pub fn check_partial(&self, game: &Game) -> Result<()> {
        if self.choice.len() != game.len() {
            return Err(SsgError::LengthMismatch { expected: game.len(), found: self.choice.len() });
        }
        for (v, w) in self.support() {
            if game.kind(v).owner() != Some(self.owner) {
                return Err(SsgError::NotOwned { vertex: v, owner: self.owner });
            }
            if !game.successors(v).contains(&w) {
                return Err(SsgError::NotASuccessor { vertex: v, successor: w });
            }
        }
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, v: VertexId, w: VertexId) {
        self.choice[v.0] = Some(w);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyPair {
    pub max: Strategy,
    pub min: Strategy,
}

impl StrategyPair {
    pub fn for_player(&self, p: Player) -> &Strategy {
        match p {
            Player::Max => &self.max,
            Player::Min => &self.min,
        }
    }

    /// Successor chosen at a positional vertex, whichever player owns it.
    pub fn choice(&self, game: &Game, v: VertexId) -> Option<VertexId> {
        match game.kind(v).owner()? {
            Player::Max => self.max.get(v),
            Player::Min => self.min.get(v),
        }
    }
}
