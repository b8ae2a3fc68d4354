//! Parity machinery: attractors, winning regions, odd cycles.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{EdgeId, GameGraph, Player, StateId};
use crate::graph::{can_reach, reachable, sccs};
use crate::lasso::{cycle_through, path_between, Lasso};
use crate::strategy::MemorylessStrategy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attractor {
    pub set: Vec<bool>,
    /// Moves toward the target on owned attractor states outside the
    /// target; the first edge everywhere else.
    pub strategy: MemorylessStrategy,
}

/// States from which `player` can force a visit to `target`.
pub fn attractor(g: &GameGraph, player: Player, target: &[bool]) -> Attractor {
    let all = vec![true; g.num_states()];
    let (set, moves) = attractor_within(g, player, target, &all);
    let moves = g
        .states()
        .map(|s| (g.owner(s) == player).then(|| moves[s].unwrap_or(g.out_edges(s)[0])))
        .collect();
    Attractor { set, strategy: MemorylessStrategy { owner: player, moves } }
}

/// Attractor inside the subgame `domain`: only edges between domain states
/// count. Returns the set and the attracting move of each newly added owned
/// state.
pub(crate) fn attractor_within(
    g: &GameGraph,
    player: Player,
    target: &[bool],
    domain: &[bool],
) -> (Vec<bool>, Vec<Option<EdgeId>>) {
    let n = g.num_states();
    let mut set = vec![false; n];
    let mut moves = vec![None; n];
    let mut remaining: Vec<usize> =
        g.states().map(|s| g.out_edges(s).iter().filter(|&&e| domain[g.edge(e).target]).count()).collect();
    let mut preds: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        if domain[e.source] && domain[e.target] {
            preds[e.target].push(id);
        }
    }
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for s in g.states() {
        if domain[s] && target[s] {
            set[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(t) = queue.pop_front() {
        for &e in &preds[t] {
            let s = g.edge(e).source;
            if set[s] {
                continue;
            }
            if g.owner(s) == player {
                set[s] = true;
                moves[s] = Some(e);
                queue.push_back(s);
            } else {
                remaining[s] -= 1;
                if remaining[s] == 0 {
                    set[s] = true;
                    queue.push_back(s);
                }
            }
        }
    }
    (set, moves)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningRegions {
    pub w1: Vec<bool>,
    pub w2: Vec<bool>,
    pub strat1: MemorylessStrategy,
    pub strat2: MemorylessStrategy,
}

impl WinningRegions {
    pub fn region(&self, p: Player) -> &[bool] {
        match p {
            Player::P1 => &self.w1,
            Player::P2 => &self.w2,
        }
    }
}

/// Winning regions of the parity game (minimal recurring priority even
/// wins for Player 1) with memoryless winning strategies.
pub fn solve_parity(g: &GameGraph) -> Result<WinningRegions> {
    let prio = g.priorities().ok_or(Error::MissingPriorities)?;
    let n = g.num_states();
    let mut moves = vec![None; n];
    let (w1, _) = zielonka(g, prio, vec![true; n], &mut moves);
    let w2: Vec<bool> = w1.iter().map(|&x| !x).collect();
    let strat = |p: Player| MemorylessStrategy {
        owner: p,
        moves: g.states().map(|s| (g.owner(s) == p).then(|| moves[s].unwrap_or(g.out_edges(s)[0]))).collect(),
    };
    Ok(WinningRegions { strat1: strat(Player::P1), strat2: strat(Player::P2), w1, w2 })
}

fn winner_of(p: u32) -> Player {
    if p.is_multiple_of(2) {
        Player::P1
    } else {
        Player::P2
    }
}

/// Recursive solver on a subgame. Returns the Player 1 and Player 2
/// regions and records winning moves (for the winner of each state) in
/// `moves`.
fn zielonka(g: &GameGraph, prio: &[u32], domain: Vec<bool>, moves: &mut [Option<EdgeId>]) -> (Vec<bool>, Vec<bool>) {
    let n = g.num_states();
    let Some(p) = g.states().filter(|&s| domain[s]).map(|s| prio[s]).min() else {
        return (vec![false; n], vec![false; n]);
    };
    let alpha = winner_of(p);
    let top: Vec<bool> = g.states().map(|s| domain[s] && prio[s] == p).collect();
    let (a, amoves) = attractor_within(g, alpha, &top, &domain);
    let rest: Vec<bool> = g.states().map(|s| domain[s] && !a[s]).collect();
    let (r1, r2) = zielonka(g, prio, rest, moves);
    let r_opp = if alpha == Player::P1 { r2 } else { r1 };
    let win_alpha: Vec<bool>;
    let win_opp: Vec<bool>;
    if !r_opp.iter().any(|&x| x) {
        for s in g.states().filter(|&s| a[s] && g.owner(s) == alpha) {
            moves[s] = amoves[s].or_else(|| g.out_edges(s).iter().copied().find(|&e| domain[g.edge(e).target]));
        }
        win_alpha = domain;
        win_opp = vec![false; n];
    } else {
        let (b, bmoves) = attractor_within(g, alpha.opponent(), &r_opp, &domain);
        for s in g.states().filter(|&s| b[s] && !r_opp[s] && g.owner(s) != alpha) {
            moves[s] = bmoves[s];
        }
        let rest: Vec<bool> = g.states().map(|s| domain[s] && !b[s]).collect();
        let (s1, s2) = zielonka(g, prio, rest, moves);
        let (s_alpha, s_opp) = if alpha == Player::P1 { (s1, s2) } else { (s2, s1) };
        win_opp = g.states().map(|s| b[s] || s_opp[s]).collect();
        win_alpha = s_alpha;
    }
    if alpha == Player::P1 {
        (win_alpha, win_opp)
    } else {
        (win_opp, win_alpha)
    }
}

/// Strongly connected components of the states with priority `>= q`
/// (over edges accepted by `keep`) that contain a priority-`q` state and a
/// cycle.
pub(crate) fn anchored_sccs(g: &GameGraph, keep: impl Fn(EdgeId) -> bool, q: u32) -> Vec<Vec<StateId>> {
    let high = |s: StateId| g.prio_or_zero(s) >= q;
    let adj = g.adjacency(|e| keep(e) && high(g.edge(e).source) && high(g.edge(e).target));
    sccs(&adj)
        .into_iter()
        .filter(|c| {
            high(c[0])
                && c.iter().any(|&s| g.prio_or_zero(s) == q)
                && (c.len() > 1 || adj[c[0]].contains(&c[0]))
        })
        .collect()
}

fn priorities_of(g: &GameGraph, odd: bool) -> Vec<u32> {
    let mut ps: Vec<u32> = g.states().map(|s| g.prio_or_zero(s)).filter(|p| (p % 2 == 1) == odd).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// A reachable cycle whose minimal priority is odd, over edges accepted by
/// `keep`, as a lasso from the initial state.
pub fn odd_lasso_exists(g: &GameGraph, keep: impl Fn(EdgeId) -> bool) -> Result<Option<Lasso>> {
    if !g.has_priorities() {
        return Err(Error::MissingPriorities);
    }
    Ok(odd_lasso_from(g, keep, g.initial()))
}

pub(crate) fn odd_lasso_from(g: &GameGraph, keep: impl Fn(EdgeId) -> bool, start: StateId) -> Option<Lasso> {
    let reach = reachable(&g.adjacency(&keep), [start]);
    let keep = |e: EdgeId| keep(e) && reach[g.edge(e).source];
    for q in priorities_of(g, true) {
        for comp in anchored_sccs(g, keep, q) {
            if !reach[comp[0]] {
                continue;
            }
            let anchor = *comp.iter().find(|&&s| g.prio_or_zero(s) == q).unwrap();
            let inside = |e: EdgeId| keep(e) && g.prio_or_zero(g.edge(e).source) >= q && g.prio_or_zero(g.edge(e).target) >= q;
            let cyc = cycle_through(g, anchor, inside).expect("anchored component has a cycle through its anchor");
            let prefix = path_between(g, start, anchor, keep).expect("anchor is reachable");
            return Some(Lasso { start, prefix, cycle: cyc });
        }
    }
    None
}

/// States from which some cycle with odd minimal priority is reachable.
pub(crate) fn odd_cycle_reachers(g: &GameGraph, keep: impl Fn(EdgeId) -> bool) -> Vec<bool> {
    let mut marks = Vec::new();
    for q in priorities_of(g, true) {
        for comp in anchored_sccs(g, &keep, q) {
            marks.extend(comp);
        }
    }
    can_reach(&g.adjacency(&keep), marks)
}
