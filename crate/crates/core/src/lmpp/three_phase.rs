use crate::error::{Error, Result};
use crate::game::{GameGraph, Player};
use crate::graph::sccs;
use crate::strategy::{FiniteMemoryStrategy, MemorylessStrategy};

/// Player 1 strategy alternating two memoryless strategies: `mp` for `k`
/// steps spent outside `target`, then `attr` until `target` is visited,
/// then again `mp`. Memory `c < k` counts the steps of the current round;
/// memory `k` means attracting.
pub fn three_phase_strategy(
    g: &GameGraph,
    mp: &MemorylessStrategy,
    attr: &MemorylessStrategy,
    k: usize,
    target: &[bool],
) -> Result<FiniteMemoryStrategy> {
    if k == 0 {
        return Err(Error::InvalidArgument("phase length must be positive".into()));
    }
    for s in [mp, attr] {
        if s.owner != Player::P1 {
            return Err(Error::InvalidStrategy("three-phase strategies are built for Player 1".into()));
        }
        s.validate(g)?;
    }
    // Under `attr`, every play must hit the target: no cycle may avoid it.
    let adj = g.adjacency(|e| {
        let edge = g.edge(e);
        attr.allows(g, e) && !target[edge.source] && !target[edge.target]
    });
    for comp in sccs(&adj) {
        if comp.len() > 1 || adj[comp[0]].contains(&comp[0]) {
            return Err(Error::AttractorEscape(g.name(comp[0]).to_string()));
        }
    }
    Ok(three_phase_unchecked(g, mp, attr, k, target))
}

pub(crate) fn three_phase_unchecked(
    g: &GameGraph,
    mp: &MemorylessStrategy,
    attr: &MemorylessStrategy,
    k: usize,
    target: &[bool],
) -> FiniteMemoryStrategy {
    let (n, ne) = (g.num_states(), g.num_edges());
    let mut update = Vec::with_capacity((k + 1) * ne);
    let mut moves = Vec::with_capacity((k + 1) * n);
    for c in 0..=k {
        for e in g.edges() {
            let reset = if target[e.target] { 0 } else { k };
            let next = if c < k {
                let c1 = if target[e.source] { c } else { c + 1 };
                if c1 >= k {
                    reset
                } else {
                    c1
                }
            } else {
                reset
            };
            update.push(next);
        }
        let src = if c < k { mp } else { attr };
        moves.extend_from_slice(&src.moves);
    }
    FiniteMemoryStrategy { owner: Player::P1, memory_size: k + 1, initial: vec![0; n], update, moves }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmpp::evaluate_strategy;
    use crate::value::{rat, LexValue};

    fn detour() -> GameGraph {
        let mut b = GameGraph::builder(1);
        let s0 = b.add_state("s0", Player::P1);
        let s1 = b.add_state("s1", Player::P1);
        b.set_priority(s0, 1).set_priority(s1, 0);
        b.add_edge(s0, s0, None, vec![10]);
        b.add_edge(s0, s1, None, vec![10]);
        b.add_edge(s1, s0, None, vec![0]);
        b.build().unwrap()
    }

    #[test]
    fn detour_rounds() {
        let g = detour();
        let mp = MemorylessStrategy::new(&g, Player::P1, vec![Some(0), Some(2)]).unwrap();
        let attr = MemorylessStrategy::new(&g, Player::P1, vec![Some(1), Some(2)]).unwrap();
        let target = [false, true];
        for k in 1..=50i64 {
            let s = three_phase_strategy(&g, &mp, &attr, k as usize, &target).unwrap();
            let v = evaluate_strategy(&g, &s, Player::P1).unwrap();
            assert_eq!(v[0], LexValue::Vector(vec![rat(10 * k + 10, k + 2)]));
        }
        assert!(matches!(three_phase_strategy(&g, &mp, &mp, 3, &target), Err(Error::AttractorEscape(_))));
    }
}
