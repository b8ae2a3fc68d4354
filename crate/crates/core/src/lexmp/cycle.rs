use num::BigInt;

use super::{bits, Int};
use crate::error::{Error, Result};
use crate::game::{EdgeId, GameGraph, StateId};
use crate::graph::sccs;
use crate::lasso::{lasso_to_cycle, Lasso};
use crate::value::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

impl Mode {
    /// Whether `a` is strictly better than `b` in this mode.
    pub(crate) fn better(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Mode::Min => a < b,
            Mode::Max => a > b,
        }
    }
}

/// Extreme weighted mean over all cycles inside one strongly connected
/// state set, using the edges accepted by `keep`. Returns the mean and a
/// simple cycle achieving it, or `None` if the set carries no cycle.
pub fn scc_extreme(
    g: &GameGraph,
    weights: &[BigInt],
    keep: impl Fn(EdgeId) -> bool,
    members: &[StateId],
    mode: Mode,
) -> Option<(Rational, Vec<EdgeId>)> {
    let mut local = vec![usize::MAX; g.num_states()];
    for (i, &s) in members.iter().enumerate() {
        local[s] = i;
    }
    let edges: Vec<EdgeId> = members
        .iter()
        .flat_map(|&s| g.out_edges(s).iter().copied())
        .filter(|&e| keep(e) && local[g.edge(e).target] != usize::MAX)
        .collect();
    if edges.is_empty() {
        return None;
    }
    let n = members.len();
    let max_bits = edges.iter().map(|&e| bits(&weights[e])).max().unwrap_or(0);
    let n_bits = 64 - (n as u64 + 1).leading_zeros() as u64;
    let (p, q, cyc) = if max_bits + 3 * n_bits + 8 < 120 {
        kernel::<i128>(g, weights, &edges, &local, n, mode)
    } else {
        kernel::<BigInt>(g, weights, &edges, &local, n, mode)
    };
    Some((Rational::new(p, BigInt::from(q)), cyc))
}

struct LocalEdge<T> {
    from: usize,
    to: usize,
    w: T,
    id: EdgeId,
}

fn kernel<T: Int>(
    g: &GameGraph,
    weights: &[BigInt],
    edges: &[EdgeId],
    local: &[usize],
    n: usize,
    mode: Mode,
) -> (BigInt, u64, Vec<EdgeId>) {
    let sign = |w: T| if mode == Mode::Max { -w } else { w };
    let es: Vec<LocalEdge<T>> = edges
        .iter()
        .map(|&e| LocalEdge {
            from: local[g.edge(e).source],
            to: local[g.edge(e).target],
            w: sign(T::from_big(&weights[e])),
            id: e,
        })
        .collect();
    let (p, q) = karp(&es, n);
    let cyc = tight_cycle(&es, n, &p, q);
    let p = if mode == Mode::Max { -p } else { p };
    (p.to_big(), q, cyc)
}

/// Minimum cycle mean of a strongly connected graph, as `p / q`.
fn karp<T: Int>(es: &[LocalEdge<T>], n: usize) -> (T, u64) {
    // d[k][v]: least weight of a walk of exactly k edges from vertex 0 to v.
    let mut d: Vec<Vec<Option<T>>> = vec![vec![None; n]; n + 1];
    d[0][0] = Some(T::zero());
    for k in 1..=n {
        let (prev, cur) = d.split_at_mut(k);
        let (prev, cur) = (&prev[k - 1], &mut cur[0]);
        for e in es {
            if let Some(x) = &prev[e.from] {
                let cand = x.clone() + e.w.clone();
                match &cur[e.to] {
                    Some(y) if *y <= cand => {}
                    _ => cur[e.to] = Some(cand),
                }
            }
        }
    }
    let mut best: Option<(T, u64)> = None;
    for v in 0..n {
        let Some(dn) = &d[n][v] else { continue };
        let mut worst: Option<(T, u64)> = None;
        for k in 0..n {
            if let Some(dk) = &d[k][v] {
                let cand = (dn.clone() - dk.clone(), (n - k) as u64);
                if worst.as_ref().is_none_or(|w| frac_lt(w, &cand)) {
                    worst = Some(cand);
                }
            }
        }
        let worst = worst.expect("d[n][v] finite implies some shorter walk");
        if best.as_ref().is_none_or(|b| frac_lt(&worst, b)) {
            best = Some(worst);
        }
    }
    best.expect("strongly connected graph with an edge has a cycle")
}

fn frac_lt<T: Int>(a: &(T, u64), b: &(T, u64)) -> bool {
    a.0.clone() * T::from_i64(b.1 as i64) < b.0.clone() * T::from_i64(a.1 as i64)
}

/// A simple cycle of mean exactly `p / q`, where `p / q` is the minimum
/// cycle mean. With reduced weights `q*w - p` every cycle is nonnegative;
/// after Bellman-Ford every edge of a minimum cycle is tight, so any cycle
/// of tight edges has reduced weight zero.
fn tight_cycle<T: Int>(es: &[LocalEdge<T>], n: usize, p: &T, q: u64) -> Vec<EdgeId> {
    let qq = T::from_i64(q as i64);
    let red: Vec<T> = es.iter().map(|e| e.w.clone() * qq.clone() - p.clone()).collect();
    let mut dist = vec![T::zero(); n];
    for _ in 0..n {
        let mut changed = false;
        for (e, r) in es.iter().zip(&red) {
            let cand = dist[e.from].clone() + r.clone();
            if cand < dist[e.to] {
                dist[e.to] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut tight: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (e, r)) in es.iter().zip(&red).enumerate() {
        if dist[e.from].clone() + r.clone() == dist[e.to] {
            tight[e.from].push(i);
        }
    }
    // Iterative DFS for a back edge in the tight subgraph.
    let mut color = vec![0u8; n];
    let mut via: Vec<usize> = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = 1;
        while let Some((v, i)) = stack.last_mut() {
            let v = *v;
            if *i < tight[v].len() {
                let ei = tight[v][*i];
                *i += 1;
                let w = es[ei].to;
                if color[w] == 0 {
                    color[w] = 1;
                    via[w] = ei;
                    stack.push((w, 0));
                } else if color[w] == 1 {
                    let mut cyc = vec![es[ei].id];
                    let mut at = v;
                    while at != w {
                        cyc.push(es[via[at]].id);
                        at = es[via[at]].from;
                    }
                    cyc.reverse();
                    return cyc;
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    unreachable!("a minimum mean cycle consists of tight edges")
}

/// For every state, the extreme cycle mean among cycles reachable from it
/// over edges accepted by `keep`, with a witness cycle.
pub fn per_state_extreme(
    g: &GameGraph,
    weights: &[BigInt],
    keep: impl Fn(EdgeId) -> bool,
    mode: Mode,
) -> Vec<Option<(Rational, Vec<EdgeId>)>> {
    let adj = g.adjacency(&keep);
    let comps = sccs(&adj);
    let mut comp_of = vec![0; g.num_states()];
    for (c, members) in comps.iter().enumerate() {
        for &s in members {
            comp_of[s] = c;
        }
    }
    let mut best: Vec<Option<(Rational, Vec<EdgeId>)>> = Vec::with_capacity(comps.len());
    for (c, members) in comps.iter().enumerate() {
        let mut cur = scc_extreme(g, weights, &keep, members, mode);
        for &s in members {
            for &t in &adj[s] {
                let d = comp_of[t];
                if d == c {
                    continue;
                }
                if let Some((m, cyc)) = &best[d] {
                    if cur.as_ref().is_none_or(|(x, _)| mode.better(m, x)) {
                        cur = Some((m.clone(), cyc.clone()));
                    }
                }
            }
        }
        best.push(cur);
    }
    g.states().map(|s| best[comp_of[s]].clone()).collect()
}

/// Extreme cycle mean over the cycles reachable from the initial state,
/// with a witness lasso.
pub fn extreme_mean_cycle(
    g: &GameGraph,
    weights: &[BigInt],
    keep: impl Fn(EdgeId) -> bool,
    mode: Mode,
) -> Result<(Rational, Lasso)> {
    let init = g.initial();
    let (m, cyc) = per_state_extreme(g, weights, &keep, mode).swap_remove(init).ok_or(Error::Acyclic)?;
    Ok((m, lasso_to_cycle(g, init, cyc, &keep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::lasso::cycle_mean;
    use crate::value::int;

    fn weights(g: &GameGraph) -> Vec<BigInt> {
        g.edges().iter().map(|e| BigInt::from(e.reward[0])).collect()
    }

    #[test]
    fn self_loop_and_two_loops() {
        let mut b = GameGraph::builder(1);
        let s = b.add_state("s", Player::P1);
        b.add_edge(s, s, None, vec![5]);
        let g = b.build().unwrap();
        let (m, l) = extreme_mean_cycle(&g, &weights(&g), |_| true, Mode::Min).unwrap();
        assert_eq!(m, int(5));
        assert_eq!(l.cycle, vec![0]);

        let mut b = GameGraph::builder(1);
        let a = b.add_state("a", Player::P1);
        let c = b.add_state("c", Player::P1);
        let d = b.add_state("d", Player::P1);
        b.add_edge(a, c, None, vec![0]);
        b.add_edge(a, d, None, vec![0]);
        b.add_edge(c, c, None, vec![2]);
        b.add_edge(d, d, None, vec![7]);
        let g = b.build().unwrap();
        let w = weights(&g);
        assert_eq!(extreme_mean_cycle(&g, &w, |_| true, Mode::Min).unwrap().0, int(2));
        let (m, l) = extreme_mean_cycle(&g, &w, |_| true, Mode::Max).unwrap();
        assert_eq!(m, int(7));
        assert_eq!(cycle_mean(&g, &l.cycle), vec![int(7)]);
        l.validate(&g).unwrap();
    }

    #[test]
    fn acyclic_is_an_error() {
        let mut b = GameGraph::builder(1);
        let a = b.add_state("a", Player::P1);
        let c = b.add_state("c", Player::P1);
        b.add_edge(a, c, None, vec![1]);
        b.add_edge(c, c, None, vec![1]);
        let g = b.build().unwrap();
        assert!(matches!(extreme_mean_cycle(&g, &weights(&g), |e| e == 0, Mode::Min), Err(Error::Acyclic)));
    }

    #[test]
    fn witness_mean_matches_on_big_weights() {
        let mut b = GameGraph::builder(1);
        let a = b.add_state("a", Player::P1);
        let c = b.add_state("c", Player::P1);
        b.add_edge(a, c, None, vec![3]);
        b.add_edge(c, a, None, vec![4]);
        b.add_edge(c, c, None, vec![4]);
        let g = b.build().unwrap();
        let big = BigInt::from(1u8) << 200;
        let w: Vec<BigInt> = g.edges().iter().map(|e| &big * e.reward[0]).collect();
        let (m, l) = extreme_mean_cycle(&g, &w, |_| true, Mode::Min).unwrap();
        assert_eq!(m, Rational::new(&big * 7, BigInt::from(2)));
        assert_eq!(l.cycle.len(), 2);
    }
}
