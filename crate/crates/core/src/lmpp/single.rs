use crate::game::{EdgeId, GameGraph, StateId};
use crate::graph::sccs;
use crate::lasso::{cycle_mean, Lasso};
use crate::lexmp::{per_state_extreme, scalarize, scc_extreme, Mode};
use crate::parity::{anchored_sccs, odd_cycle_reachers, odd_lasso_from};
use crate::value::{LexValue, Rational};

fn even_priorities(g: &GameGraph) -> Vec<u32> {
    let mut ps: Vec<u32> = g.states().map(|s| g.prio_or_zero(s)).filter(|p| p % 2 == 0).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Value of every state when one maximizing player controls all edges
/// accepted by `keep`. A cycle set anchored at an even priority `q` can be
/// pumped around its best cycle while revisiting the anchor, so the value
/// is the best such cycle reachable; bottom if none is.
pub(crate) fn max_mpp_keep(g: &GameGraph, keep: impl Fn(EdgeId) -> bool) -> Vec<LexValue> {
    let sg = scalarize(g);
    let n = g.num_states();
    let mut own: Vec<Option<(Rational, Vec<EdgeId>)>> = vec![None; n];
    for q in even_priorities(g) {
        for comp in anchored_sccs(g, &keep, q) {
            let inside = |e: EdgeId| keep(e) && g.prio_or_zero(g.edge(e).source) >= q && g.prio_or_zero(g.edge(e).target) >= q;
            if let Some((m, cyc)) = scc_extreme(g, &sg.weights, inside, &comp, Mode::Max) {
                let s = comp[0];
                if own[s].as_ref().is_none_or(|(x, _)| m > *x) {
                    own[s] = Some((m, cyc));
                }
            }
        }
    }
    let adj = g.adjacency(&keep);
    let comps = sccs(&adj);
    let mut comp_of = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for &s in members {
            comp_of[s] = c;
        }
    }
    let mut best: Vec<Option<(Rational, Vec<EdgeId>)>> = Vec::with_capacity(comps.len());
    for (c, members) in comps.iter().enumerate() {
        let mut cur: Option<(Rational, Vec<EdgeId>)> = None;
        let mut offer = |x: &Option<(Rational, Vec<EdgeId>)>| {
            if let Some((m, cyc)) = x {
                if cur.as_ref().is_none_or(|(y, _)| m > y) {
                    cur = Some((m.clone(), cyc.clone()));
                }
            }
        };
        for &s in members {
            offer(&own[s]);
            for &t in &adj[s] {
                if comp_of[t] != c {
                    offer(&best[comp_of[t]]);
                }
            }
        }
        best.push(cur);
    }
    g.states()
        .map(|s| match &best[comp_of[s]] {
            None => LexValue::Bottom,
            Some((_, cyc)) => LexValue::Vector(cycle_mean(g, cyc)),
        })
        .collect()
}

/// Value of every state when one minimizing player controls all edges
/// accepted by `keep`: bottom if a cycle with odd minimal priority is
/// reachable, otherwise the least mean cycle reachable.
pub(crate) fn min_mpp_keep(g: &GameGraph, keep: impl Fn(EdgeId) -> bool) -> Vec<LexValue> {
    let odd = odd_cycle_reachers(g, &keep);
    let sg = scalarize(g);
    let means = per_state_extreme(g, &sg.weights, &keep, Mode::Min);
    g.states()
        .map(|s| {
            if odd[s] {
                LexValue::Bottom
            } else {
                LexValue::Vector(cycle_mean(g, &means[s].as_ref().expect("every state reaches a cycle").1))
            }
        })
        .collect()
}

/// Optimal value over all plays when Player 1 resolves every choice.
pub fn single_player_max_mpp(g: &GameGraph) -> Vec<LexValue> {
    max_mpp_keep(g, |_| true)
}

/// Optimal value over all plays when Player 2 resolves every choice.
pub fn single_player_min_mpp(g: &GameGraph) -> Vec<LexValue> {
    min_mpp_keep(g, |_| true)
}

/// The minimizing value from `start` together with a play attaining it.
pub fn min_mpp_witness(g: &GameGraph, keep: impl Fn(EdgeId) -> bool, start: StateId) -> (LexValue, Lasso) {
    if let Some(l) = odd_lasso_from(g, &keep, start) {
        return (LexValue::Bottom, l);
    }
    let sg = scalarize(g);
    let means = per_state_extreme(g, &sg.weights, &keep, Mode::Min);
    let cyc = means[start].as_ref().expect("every state reaches a cycle").1.clone();
    let l = crate::lasso::lasso_to_cycle(g, start, cyc, &keep);
    (LexValue::Vector(cycle_mean(g, &l.cycle)), l)
}
