use crate::error::{Error, Result};
use crate::game::{GameGraph, Player};
use crate::strategy::{strategy_product, FiniteMemoryStrategy, MemorylessStrategy};
use crate::value::LexValue;

use super::{max_mpp_keep, min_mpp_keep};

/// Exact value of every start state (at its initial memory) when `owner`
/// plays `s` and the opponent responds optimally.
pub fn evaluate_strategy(g: &GameGraph, s: &FiniteMemoryStrategy, owner: Player) -> Result<Vec<LexValue>> {
    if s.owner != owner {
        return Err(Error::InvalidStrategy("strategy belongs to the other player".into()));
    }
    s.validate(g)?;
    Ok(evaluate_trusted(g, s))
}

pub(crate) fn evaluate_trusted(g: &GameGraph, s: &FiniteMemoryStrategy) -> Vec<LexValue> {
    let p = strategy_product(g, s);
    let vals = match s.owner {
        Player::P1 => min_mpp_keep(&p.graph, |_| true),
        Player::P2 => max_mpp_keep(&p.graph, |_| true),
    };
    p.entry.iter().map(|&e| vals[e].clone()).collect()
}

pub fn evaluate_memoryless(g: &GameGraph, s: &MemorylessStrategy) -> Result<Vec<LexValue>> {
    s.validate(g)?;
    Ok(match s.owner {
        Player::P1 => min_mpp_keep(g, |e| s.allows(g, e)),
        Player::P2 => max_mpp_keep(g, |e| s.allows(g, e)),
    })
}
