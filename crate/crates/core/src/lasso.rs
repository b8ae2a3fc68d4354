use std::collections::VecDeque;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::game::{EdgeId, GameGraph, StateId};
use crate::value::{LexValue, Rational};

/// An ultimately periodic play: a finite prefix of edges from `start`
/// followed by a nonempty cycle of edges repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub start: StateId,
    pub prefix: Vec<EdgeId>,
    pub cycle: Vec<EdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Lasso {
    pub fn new(g: &GameGraph, start: StateId, prefix: Vec<EdgeId>, cycle: Vec<EdgeId>) -> Result<Self> {
        let l = Lasso { start, prefix, cycle };
        l.validate(g)?;
        Ok(l)
    }

    pub fn validate(&self, g: &GameGraph) -> Result<()> {
        if self.cycle.is_empty() {
            return Err(Error::InvalidLasso("empty cycle".into()));
        }
        let mut at = self.start;
        for &e in self.prefix.iter().chain(&self.cycle) {
            if e >= g.num_edges() || g.edge(e).source != at {
                return Err(Error::InvalidLasso(format!("edge {e} does not continue the play")));
            }
            at = g.edge(e).target;
        }
        if at != self.cycle_start(g) {
            return Err(Error::InvalidLasso("cycle does not return to its start".into()));
        }
        Ok(())
    }

    pub fn cycle_start(&self, g: &GameGraph) -> StateId {
        g.edge(self.cycle[0]).source
    }

    /// States at which the cycle's edges depart.
    pub fn cycle_states<'a>(&'a self, g: &'a GameGraph) -> impl Iterator<Item = StateId> + 'a {
        self.cycle.iter().map(move |&e| g.edge(e).source)
    }
}

/// Exact component-wise average of the rewards on a closed walk.
pub fn cycle_mean(g: &GameGraph, cycle: &[EdgeId]) -> Vec<Rational> {
    let mut sums = vec![BigInt::zero(); g.dim()];
    for &e in cycle {
        for (s, &r) in sums.iter_mut().zip(&g.edge(e).reward) {
            *s += r;
        }
    }
    let len = BigInt::from(cycle.len());
    sums.into_iter().map(|s| Rational::new(s, len.clone())).collect()
}

/// Mean payoff of the play; the prefix does not matter.
pub fn lasso_mean(g: &GameGraph, l: &Lasso) -> Vec<Rational> {
    cycle_mean(g, &l.cycle)
}

pub fn lasso_parity(g: &GameGraph, l: &Lasso) -> Result<Parity> {
    let prio = g.priorities().ok_or(Error::MissingPriorities)?;
    let min = l.cycle_states(g).map(|s| prio[s]).min().expect("nonempty cycle");
    Ok(if min % 2 == 0 { Parity::Even } else { Parity::Odd })
}

/// Mean-payoff parity payoff: bottom when the parity condition fails.
pub fn lasso_mpp_payoff(g: &GameGraph, l: &Lasso) -> Result<LexValue> {
    Ok(match lasso_parity(g, l)? {
        Parity::Odd => LexValue::Bottom,
        Parity::Even => LexValue::Vector(lasso_mean(g, l)),
    })
}

/// Payoff of the play under the graph's own objective: mean-payoff parity
/// when priorities are present, plain mean payoff otherwise.
pub fn lasso_value(g: &GameGraph, l: &Lasso) -> LexValue {
    if g.has_priorities() {
        lasso_mpp_payoff(g, l).expect("priorities present")
    } else {
        LexValue::Vector(lasso_mean(g, l))
    }
}

/// Shortest edge path from `from` to `to` using edges accepted by `keep`.
pub(crate) fn path_between(g: &GameGraph, from: StateId, to: StateId, keep: impl Fn(EdgeId) -> bool) -> Option<Vec<EdgeId>> {
    let mut pred: Vec<Option<EdgeId>> = vec![None; g.num_states()];
    let mut seen = vec![false; g.num_states()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut at = to;
            while at != from {
                let e = pred[at].unwrap();
                path.push(e);
                at = g.edge(e).source;
            }
            path.reverse();
            return Some(path);
        }
        for &e in g.out_edges(v) {
            let w = g.edge(e).target;
            if keep(e) && !seen[w] {
                seen[w] = true;
                pred[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Lasso from `start` that walks to the given closed walk and repeats it.
pub(crate) fn lasso_to_cycle(g: &GameGraph, start: StateId, cycle: Vec<EdgeId>, keep: impl Fn(EdgeId) -> bool) -> Lasso {
    let head = g.edge(cycle[0]).source;
    let prefix = path_between(g, start, head, keep).expect("cycle reachable from start");
    Lasso { start, prefix, cycle }
}

/// Shortest cycle through `v` using edges accepted by `keep`.
pub(crate) fn cycle_through(g: &GameGraph, v: StateId, keep: impl Fn(EdgeId) -> bool) -> Option<Vec<EdgeId>> {
    let mut best: Option<Vec<EdgeId>> = None;
    for &e in g.out_edges(v) {
        if !keep(e) {
            continue;
        }
        if let Some(mut rest) = path_between(g, g.edge(e).target, v, &keep) {
            rest.insert(0, e);
            if best.as_ref().is_none_or(|b| rest.len() < b.len()) {
                best = Some(rest);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::value::{int, rat};

    /// s0 (prio 1) with a 10-loop, s0 -> s1 (10), s1 (prio 0) -> s0 (0).
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
    fn means_and_parity() {
        let g = detour();
        let pump = Lasso::new(&g, 0, vec![], vec![0]).unwrap();
        let round = Lasso::new(&g, 0, vec![0, 0], vec![1, 2]).unwrap();
        assert_eq!(lasso_mean(&g, &pump), vec![int(10)]);
        assert_eq!(lasso_mean(&g, &round), vec![int(5)]);
        assert_eq!(lasso_parity(&g, &pump).unwrap(), Parity::Odd);
        assert_eq!(lasso_mpp_payoff(&g, &pump).unwrap(), LexValue::Bottom);
        assert_eq!(lasso_mpp_payoff(&g, &round).unwrap(), LexValue::Vector(vec![int(5)]));
        assert!(Lasso::new(&g, 0, vec![], vec![1]).is_err());
        assert!(Lasso::new(&g, 1, vec![], vec![0]).is_err());
    }

    fn chain(rewards: &[Vec<u64>], prios: &[u32]) -> (GameGraph, Lasso) {
        let n = rewards.len();
        let mut b = GameGraph::builder(rewards[0].len());
        for i in 0..n {
            let s = b.add_state(format!("c{i}"), Player::P1);
            b.set_priority(s, prios[i]);
        }
        for (i, r) in rewards.iter().enumerate() {
            b.add_edge(i, (i + 1) % n, None, r.clone());
        }
        let g = b.build().unwrap();
        let l = Lasso::new(&g, 0, vec![], (0..n).collect()).unwrap();
        (g, l)
    }

    #[test]
    fn cycle_examples() {
        let (g, l) = chain(&[vec![1], vec![0]], &[0, 1]);
        assert_eq!(lasso_mean(&g, &l), vec![rat(1, 2)]);
        assert_eq!(lasso_parity(&g, &l).unwrap(), Parity::Even);
        let (g, l) = chain(&[vec![1, 0], vec![1, 1]], &[1, 1]);
        assert_eq!(lasso_mean(&g, &l), vec![int(1), rat(1, 2)]);
        assert_eq!(lasso_parity(&g, &l).unwrap(), Parity::Odd);
        let (g, l) = chain(&[vec![5]], &[2]);
        assert_eq!(lasso_mean(&g, &l), vec![int(5)]);
        let (g, l) = chain(&[vec![3], vec![3], vec![3]], &[2, 3, 4]);
        assert_eq!(lasso_parity(&g, &l).unwrap(), Parity::Even);
        assert_eq!(lasso_mpp_payoff(&g, &l).unwrap(), LexValue::from_ints(&[3]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rotation_and_unrolling(rs in proptest::collection::vec(proptest::collection::vec(0u64..6, 2), 1..6),
                                      ps in proptest::collection::vec(0u32..4, 6),
                                      rot in 0usize..6, k in 1usize..4) {
                let n = rs.len();
                let (g, l) = chain(&rs, &ps[..n]);
                let rot = rot % n;
                let rotated = Lasso::new(&g, 0, (0..rot).collect(), (rot..n).chain(0..rot).collect()).unwrap();
                prop_assert_eq!(lasso_mean(&g, &l), lasso_mean(&g, &rotated));
                let unrolled = Lasso::new(&g, 0, vec![], l.cycle.repeat(k)).unwrap();
                prop_assert_eq!(lasso_mean(&g, &l), lasso_mean(&g, &unrolled));
                let payoff = lasso_mpp_payoff(&g, &l).unwrap();
                prop_assert!(payoff <= LexValue::Vector(lasso_mean(&g, &l)));
            }
        }
    }
}
