//! Exact solvers for simple stochastic games.

pub mod acyclic;
pub mod dichotomy;
pub mod error;
pub mod eval;
pub mod format;
pub mod game;
pub mod generate;
pub mod hk;
pub mod oracle;
pub mod rational;
pub mod strategy;
pub mod structure;
pub mod subgame;

pub use error::{ErrorClass, Result, SsgError};
pub use eval::{evaluate, ValueVector};
pub use game::{Game, GameBuilder, Player, VertexId, VertexKind};
pub use rational::Rational;
pub use strategy::{Strategy, StrategyPair};
