use num::{BigInt, One, Zero};

use crate::game::GameGraph;

/// Game graph with every reward vector collapsed to one integer weight.
#[derive(Clone, Debug)]
pub struct ScalarizedGame<'a> {
    pub base: &'a GameGraph,
    pub weights: Vec<BigInt>,
    pub multipliers: Vec<BigInt>,
}

impl ScalarizedGame<'_> {
    pub fn max_weight(&self) -> BigInt {
        self.weights.iter().max().cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Multipliers chosen so that comparing the weighted means of two cycles of
/// length at most `|S|` agrees with comparing their mean vectors
/// lexicographically.
pub fn scalarize(g: &GameGraph) -> ScalarizedGame<'_> {
    scalarize_with_bound(g, g.num_states())
}

/// As [`scalarize`], with an explicit bound on the cycle lengths compared.
pub fn scalarize_with_bound(g: &GameGraph, cycle_bound: usize) -> ScalarizedGame<'_> {
    let d = g.dim();
    let n2 = BigInt::from(cycle_bound.max(1)).pow(2);
    let mut multipliers = vec![BigInt::one(); d];
    let mut tail = vec![BigInt::zero(); g.num_edges()];
    for i in (0..d).rev() {
        if i + 1 < d {
            let max_tail = tail.iter().max().cloned().unwrap_or_default();
            multipliers[i] = &n2 * max_tail + 1;
        }
        for (t, e) in tail.iter_mut().zip(g.edges()) {
            *t += &multipliers[i] * BigInt::from(e.reward[i]);
        }
    }
    ScalarizedGame { base: g, weights: tail, multipliers }
}
