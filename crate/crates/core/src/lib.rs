//! Lexicographic mean-payoff and mean-payoff parity games, with quantitative
//! verification and synthesis of Mealy machines.
//!
//! All arithmetic is exact: values are arbitrary-precision rationals and
//! every reported value is witnessed by an ultimately periodic play.

pub mod automata;
pub mod error;
pub mod format;
pub mod game;
pub mod lasso;
pub mod letter;
pub mod lexmp;
pub mod lmpp;
pub mod mealy;
pub mod oracle;
pub mod parity;
pub mod strategy;
pub mod synth;
pub mod value;

mod graph;

pub use automata::{QuantAutomaton, Word};
pub use error::{Error, Result};
pub use game::{Edge, EdgeId, GameBuilder, GameGraph, Player, StateId};
pub use lasso::Lasso;
pub use letter::{Alphabet, Letter};
pub use mealy::MealyMachine;
pub use strategy::{FiniteMemoryStrategy, MemorylessStrategy};
pub use value::{lex_compare, LexValue, Rational};
