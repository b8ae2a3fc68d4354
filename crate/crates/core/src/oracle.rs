//! Brute-force reference engines for testing: exhaustive cycle and
//! strategy enumeration with plain play simulation. Nothing here calls
//! into the solvers.

use std::collections::HashMap;

use num::BigInt;

use crate::error::{Error, Result};
use crate::game::{EdgeId, GameBuilder, GameGraph, Player, StateId};
use crate::value::{LexValue, Rational};

pub const MAX_CYCLE_STATES: usize = 12;
pub const MAX_CYCLES: usize = 1_000_000;
/// Cap on the number of strategy pairs simulated per start state.
pub const MAX_PAIRS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCycle {
    pub states: Vec<StateId>,
    pub edges: Vec<EdgeId>,
    pub mean: Vec<Rational>,
    pub min_priority: Option<u32>,
}

fn mean_of(g: &GameGraph, edges: &[EdgeId]) -> Vec<Rational> {
    let len = BigInt::from(edges.len());
    (0..g.dim())
        .map(|i| {
            let sum: BigInt = edges.iter().map(|&e| BigInt::from(g.edge(e).reward[i])).sum();
            Rational::new(sum, len.clone())
        })
        .collect()
}

fn min_priority(g: &GameGraph, states: &[StateId]) -> Option<u32> {
    states.iter().filter_map(|&s| g.priority(s)).min()
}

/// States reachable from `start` using only states inside `keep`.
fn reach(g: &GameGraph, start: StateId, keep: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.num_states()];
    if !keep[start] {
        return seen;
    }
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(s) = stack.pop() {
        for &e in g.out_edges(s) {
            let t = g.edge(e).target;
            if keep[t] && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

fn reachable_from_initial(g: &GameGraph) -> Vec<bool> {
    reach(g, g.initial(), &vec![true; g.num_states()])
}

/// Every simple cycle reachable from the initial state. Parallel edges
/// give distinct cycles. Each cycle starts at its smallest state.
pub fn enumerate_cycles(g: &GameGraph) -> Result<Vec<OracleCycle>> {
    cycles_within(g, &reachable_from_initial(g))
}

fn cycles_within(g: &GameGraph, live: &[bool]) -> Result<Vec<OracleCycle>> {
    if g.num_states() > MAX_CYCLE_STATES {
        return Err(Error::ResourceCap(format!("cycle enumeration is limited to {MAX_CYCLE_STATES} states")));
    }
    let mut out = Vec::new();
    for root in g.states().filter(|&s| live[s]) {
        let mut on_path = vec![false; g.num_states()];
        let mut path: Vec<EdgeId> = Vec::new();
        // Stack of (state, next out-edge position).
        let mut stack = vec![(root, 0usize)];
        on_path[root] = true;
        while let Some(&mut (s, ref mut k)) = stack.last_mut() {
            let Some(&e) = g.out_edges(s).get(*k) else {
                on_path[s] = false;
                stack.pop();
                path.pop();
                continue;
            };
            *k += 1;
            let t = g.edge(e).target;
            if t == root {
                let mut edges = path.clone();
                edges.push(e);
                let states: Vec<StateId> = edges.iter().map(|&e| g.edge(e).source).collect();
                out.push(OracleCycle {
                    mean: mean_of(g, &edges),
                    min_priority: min_priority(g, &states),
                    states,
                    edges,
                });
                if out.len() > MAX_CYCLES {
                    return Err(Error::ResourceCap(format!("more than {MAX_CYCLES} simple cycles")));
                }
            } else if t > root && live[t] && !on_path[t] {
                on_path[t] = true;
                path.push(e);
                stack.push((t, 0));
            }
        }
    }
    Ok(out)
}

/// A strategy with `memory` states: on entering state `t` with memory `c`
/// the memory becomes `update[c * n + t]`; at an owned state `s` with
/// memory `c` the move is `moves[c * n + s]`. Memory starts at 0.
#[derive(Clone, Debug)]
struct Machine {
    update: Vec<usize>,
    moves: Vec<EdgeId>,
}

/// All strategies of `owner` with exactly `memory` memory states (smaller
/// memories embed by leaving states unused).
fn machines(g: &GameGraph, owner: Player, memory: usize) -> Vec<Machine> {
    let n = g.num_states();
    let owned: Vec<StateId> = g.states().filter(|&s| g.owner(s) == owner).collect();
    if owned.is_empty() {
        return vec![Machine { update: vec![0; memory * n], moves: vec![usize::MAX; memory * n] }];
    }
    let slots: Vec<(usize, StateId)> = (0..memory).flat_map(|c| owned.iter().map(move |&s| (c, s))).collect();
    let mut move_tables = vec![vec![usize::MAX; memory * n]];
    for &(c, s) in &slots {
        move_tables = move_tables
            .into_iter()
            .flat_map(|t| {
                g.out_edges(s).iter().map(move |&e| {
                    let mut t = t.clone();
                    t[c * n + s] = e;
                    t
                })
            })
            .collect();
    }
    let cells = memory * n;
    let mut update_tables = vec![vec![0usize; cells]];
    if memory > 1 {
        for cell in 0..cells {
            update_tables = update_tables
                .into_iter()
                .flat_map(|t| {
                    (0..memory).map(move |c| {
                        let mut t = t.clone();
                        t[cell] = c;
                        t
                    })
                })
                .collect();
        }
    }
    let mut out = Vec::with_capacity(move_tables.len() * update_tables.len());
    for u in &update_tables {
        for m in &move_tables {
            out.push(Machine { update: u.clone(), moves: m.clone() });
        }
    }
    out
}

fn machine_count(g: &GameGraph, owner: Player, memory: usize) -> u64 {
    let owned: Vec<StateId> = g.states().filter(|&s| g.owner(s) == owner).collect();
    if owned.is_empty() {
        return 1;
    }
    let moves = owned.iter().map(|&s| g.out_edges(s).len() as u64).fold(1u64, u64::saturating_mul);
    let mut total = moves.saturating_pow(memory as u32);
    if memory > 1 {
        total = total.saturating_mul((memory as u64).saturating_pow((memory * g.num_states()) as u32));
    }
    total
}

/// Payoff of the unique play from `start`: the cycle mean if the least
/// priority on the cycle is even (or there are no priorities), else bottom.
fn simulate(g: &GameGraph, start: StateId, p1: &Machine, p2: &Machine) -> LexValue {
    let n = g.num_states();
    let (mut s, mut c1, mut c2) = (start, 0, 0);
    let mut seen: HashMap<(StateId, usize, usize), usize> = HashMap::new();
    let mut edges: Vec<EdgeId> = Vec::new();
    loop {
        if let Some(&k) = seen.get(&(s, c1, c2)) {
            let cycle = &edges[k..];
            let states: Vec<StateId> = cycle.iter().map(|&e| g.edge(e).source).collect();
            return match min_priority(g, &states) {
                Some(p) if p % 2 == 1 => LexValue::Bottom,
                _ => LexValue::Vector(mean_of(g, cycle)),
            };
        }
        seen.insert((s, c1, c2), edges.len());
        let e = match g.owner(s) {
            Player::P1 => p1.moves[c1 * n + s],
            Player::P2 => p2.moves[c2 * n + s],
        };
        edges.push(e);
        s = g.edge(e).target;
        c1 = p1.update[c1 * n + s];
        c2 = p2.update[c2 * n + s];
    }
}

fn check_pairs(g: &GameGraph, memory: usize) -> Result<()> {
    let pairs = machine_count(g, Player::P1, memory).saturating_mul(machine_count(g, Player::P2, memory));
    if pairs > MAX_PAIRS {
        return Err(Error::ResourceCap(format!("{pairs} strategy pairs exceed the oracle cap of {MAX_PAIRS}")));
    }
    Ok(())
}

fn best(values: impl Iterator<Item = LexValue>, max: bool) -> LexValue {
    let pick = |a: LexValue, b: LexValue| if (a < b) == max { b } else { a };
    values.reduce(pick).expect("at least one strategy")
}

/// Max over `memory`-state Player 1 strategies of the min over
/// `memory`-state Player 2 strategies of the simulated payoff.
fn max_min(g: &GameGraph, memory: usize) -> Result<Vec<LexValue>> {
    check_pairs(g, memory)?;
    let m1 = machines(g, Player::P1, memory);
    let m2 = machines(g, Player::P2, memory);
    Ok(g.states()
        .map(|s| best(m1.iter().map(|a| best(m2.iter().map(|b| simulate(g, s, a, b)), false)), true))
        .collect())
}

/// Game left for Player 1 once Player 2 plays `m`: states are (state,
/// Player 2 memory) pairs, numbered `c * n + s`.
fn fix_player2(g: &GameGraph, m: &Machine, memory: usize) -> Result<GameGraph> {
    let n = g.num_states();
    let mut b = GameBuilder::new(g.dim());
    for c in 0..memory {
        for s in g.states() {
            let id = b.add_state(format!("{}#{c}", g.name(s)), Player::P1);
            if let Some(p) = g.priority(s) {
                b.set_priority(id, p);
            }
        }
    }
    for c in 0..memory {
        for s in g.states() {
            let choices: Vec<EdgeId> = match g.owner(s) {
                Player::P1 => g.out_edges(s).to_vec(),
                Player::P2 => vec![m.moves[c * n + s]],
            };
            for e in choices {
                let edge = g.edge(e);
                let c2 = m.update[c * n + edge.target];
                b.add_edge(c * n + s, c2 * n + edge.target, None, edge.reward.clone());
            }
        }
    }
    b.build()
}

/// Supremum of the mean-payoff parity payoff over all plays of a
/// one-player graph from every state. A simple cycle counts when, for some
/// even priority p at most its own least priority, it shares a strongly
/// connected component with a p-state among the states of priority >= p:
/// plays can then repeat the cycle for ever longer stretches between rare
/// visits to p.
fn one_player_sup(g: &GameGraph) -> Result<Vec<LexValue>> {
    let n = g.num_states();
    let prio = |s: StateId| g.priority(s).unwrap_or(0);
    let mut evens: Vec<u32> = g.states().map(prio).filter(|p| p % 2 == 0).collect();
    evens.sort_unstable();
    evens.dedup();
    // anchored[k][v]: v shares a component with a p-state above p = evens[k].
    let anchored: Vec<Vec<bool>> = evens
        .iter()
        .map(|&p| {
            let keep: Vec<bool> = g.states().map(|s| prio(s) >= p).collect();
            let mut mark = vec![false; n];
            for u in g.states().filter(|&u| prio(u) == p) {
                let fwd = reach(g, u, &keep);
                for v in g.states().filter(|&v| fwd[v]) {
                    if !mark[v] {
                        mark[v] = reach(g, v, &keep)[u];
                    }
                }
            }
            mark
        })
        .collect();
    let cycles = cycles_within(g, &vec![true; n])?;
    let good: Vec<&OracleCycle> = cycles
        .iter()
        .filter(|c| {
            let low = c.states.iter().map(|&s| prio(s)).min().unwrap();
            let v = c.states[0];
            evens.iter().zip(&anchored).any(|(&p, mark)| p <= low && mark[v])
        })
        .collect();
    let all = vec![true; n];
    Ok(g.states()
        .map(|s| {
            let r = reach(g, s, &all);
            good.iter()
                .filter(|c| r[c.states[0]])
                .map(|c| LexValue::Vector(c.mean.clone()))
                .fold(LexValue::Bottom, |a, b| if b > a { b } else { a })
        })
        .collect())
}

/// Min over `memory`-state Player 2 strategies of Player 1's best response
/// value, with Player 1 unrestricted.
fn min_sup(g: &GameGraph, memory: usize) -> Result<Vec<LexValue>> {
    if g.num_states() * memory > MAX_CYCLE_STATES {
        return Err(Error::ResourceCap(format!(
            "{} product states exceed the oracle cap of {MAX_CYCLE_STATES}",
            g.num_states() * memory
        )));
    }
    let mut out: Option<Vec<LexValue>> = None;
    for m in machines(g, Player::P2, memory) {
        let sup = one_player_sup(&fix_player2(g, &m, memory)?)?;
        let here: Vec<LexValue> = g.states().map(|s| sup[s].clone()).collect();
        out = Some(match out {
            None => here,
            Some(prev) => prev.into_iter().zip(here).map(|(a, b)| if b < a { b } else { a }).collect(),
        });
    }
    Ok(out.expect("at least one strategy"))
}

/// Max over memoryless Player 1 strategies of the min over memoryless
/// Player 2 strategies of the lexicographic cycle mean, per start state.
pub fn enumerate_memoryless_game_value(g: &GameGraph) -> Result<Vec<LexValue>> {
    if g.has_priorities() {
        return Err(Error::InvalidArgument("memoryless enumeration is for games without priorities".into()));
    }
    max_min(g, 1)
}

/// Bounds on the mean-payoff parity value. The lower bound is what the
/// best `memory`-state Player 1 strategy secures against `memory`-state
/// Player 2 strategies; since Player 1 memory updates are visible to such
/// opponents, they can always mirror it and respond optimally, so the bound
/// is sound. The upper bound is the least supremum Player 2 concedes with a
/// `memory`-state strategy, Player 1 being unrestricted.
pub fn bounded_memory_bounds(g: &GameGraph, memory: usize) -> Result<(Vec<LexValue>, Vec<LexValue>)> {
    if memory == 0 {
        return Err(Error::InvalidArgument("memory bound must be positive".into()));
    }
    Ok((max_min(g, memory)?, min_sup(g, memory)?))
}
