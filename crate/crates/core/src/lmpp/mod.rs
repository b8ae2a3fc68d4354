//! Lexicographic mean-payoff parity games.

mod engine;
mod evaluate;
mod single;
mod three_phase;

pub use engine::{
    epsilon_optimal_strategy, has_memoryless_optimal, memoryless_optimal_from, p1_strategy_reaching, solve_lmpp,
    CertifiedSolution, EpsilonStrategy, LmppOptions,
};
pub use evaluate::{evaluate_memoryless, evaluate_strategy};
pub use single::{min_mpp_witness, single_player_max_mpp, single_player_min_mpp};
pub use three_phase::three_phase_strategy;

pub(crate) use single::{max_mpp_keep, min_mpp_keep};
pub(crate) use three_phase::three_phase_unchecked;
