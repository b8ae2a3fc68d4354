use super::cycle::{per_state_extreme, Mode};
use super::{mp_value, scalarize, ScalarizedGame};
use crate::error::Result;
use crate::game::{EdgeId, GameGraph, Player};
use crate::lasso::cycle_mean;
use crate::strategy::MemorylessStrategy;
use crate::value::{LexValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexMpSolution {
    pub values: Vec<LexValue>,
    pub p1: MemorylessStrategy,
    pub p2: MemorylessStrategy,
}

/// Solve a lexicographic mean-payoff game: per-state values and memoryless
/// optimal strategies for both players. Priorities, if any, are ignored.
pub fn lex_mp_solve(g: &GameGraph) -> Result<LexMpSolution> {
    let sg = scalarize(g);
    let nu = mp_value(&sg)?;
    let p1 = extract(&sg, Player::P1, &nu)?;
    let p2 = extract(&sg, Player::P2, &nu)?;
    let values = g
        .states()
        .map(|s| {
            let cyc = forced_cycle(g, s, |t| p1.moves[t].or(p2.moves[t]).unwrap());
            LexValue::Vector(cycle_mean(g, &cyc))
        })
        .collect();
    Ok(LexMpSolution { values, p1, p2 })
}

/// The cycle eventually repeated when every state has one forced move.
fn forced_cycle(g: &GameGraph, start: usize, mv: impl Fn(usize) -> EdgeId) -> Vec<EdgeId> {
    let mut pos = vec![usize::MAX; g.num_states()];
    let mut path = Vec::new();
    let mut at = start;
    while pos[at] == usize::MAX {
        pos[at] = path.len();
        let e = mv(at);
        path.push(e);
        at = g.edge(e).target;
    }
    path.split_off(pos[at])
}

/// Edge fixing: at each owned state commit, in edge order, the first
/// value-consistent edge whose commitment leaves every value unchanged.
fn extract(sg: &ScalarizedGame<'_>, player: Player, nu: &[Rational]) -> Result<MemorylessStrategy> {
    let g = sg.base;
    let mut alive = vec![true; g.num_edges()];
    let mut moves = vec![None; g.num_states()];
    for s in g.states().filter(|&s| g.owner(s) == player) {
        let cands: Vec<EdgeId> =
            g.out_edges(s).iter().copied().filter(|&e| alive[e] && nu[g.edge(e).target] == nu[s]).collect();
        let mut chosen = *cands.last().expect("some successor attains the value");
        for &e in &cands[..cands.len() - 1] {
            let mut trial = alive.clone();
            for &f in g.out_edges(s) {
                trial[f] = f == e;
            }
            if values_of(sg, &trial)? == nu {
                chosen = e;
                break;
            }
        }
        for &f in g.out_edges(s) {
            alive[f] = f == chosen;
        }
        moves[s] = Some(chosen);
    }
    Ok(MemorylessStrategy { owner: player, moves })
}

fn values_of(sg: &ScalarizedGame<'_>, alive: &[bool]) -> Result<Vec<Rational>> {
    let (sub, map) = sg.base.edge_subgraph(|e| alive[e])?;
    let weights = map.iter().map(|&e| sg.weights[e].clone()).collect();
    mp_value(&ScalarizedGame { base: &sub, weights, multipliers: sg.multipliers.clone() })
}

/// Exact value of every state when `fixed` is played by `owner` and the
/// opponent responds optimally.
pub fn best_response_value(g: &GameGraph, fixed: &MemorylessStrategy, owner: Player) -> Result<Vec<LexValue>> {
    let fixed = MemorylessStrategy { owner, moves: fixed.moves.clone() };
    fixed.validate(g)?;
    let sg = scalarize(g);
    let mode = if owner == Player::P1 { Mode::Min } else { Mode::Max };
    Ok(per_state_extreme(g, &sg.weights, |e| fixed.allows(g, e), mode)
        .into_iter()
        .map(|x| LexValue::Vector(cycle_mean(g, &x.expect("every state reaches a cycle").1)))
        .collect())
}
