use num::{BigInt, One, Signed, ToPrimitive};

use super::cycle::{per_state_extreme, Mode};
use super::{bits, Int, ScalarizedGame};
use crate::error::{Error, Result};
use crate::game::{EdgeId, GameGraph, Player};
use crate::value::{snap_to_grid, Rational};

/// Relaxation budget (edge updates) before giving up.
const WORK_CAP: u128 = 3_000_000_000;

/// Exact mean-payoff value of every state of a scalarized game.
///
/// Runs value iteration `v_k(s) = opt_e (w(e) + v_{k-1}(t))`. The true value
/// is a rational with denominator at most `|S|`, and after
/// `k* = 8 |S|^3 max(W, 1)` steps `v_k / k` lies within `1 / (4 |S|^2)` of
/// it, so snapping recovers it exactly. Before reaching `k*` the iteration
/// stops early at checkpoints where the greedy strategies of both players
/// certify each other: their exact best-response values coincide.
pub fn mp_value(sg: &ScalarizedGame<'_>) -> Result<Vec<Rational>> {
    let g = sg.base;
    let n = g.num_states() as u64;
    let w = sg.max_weight().max(BigInt::one());
    let kstar: BigInt = BigInt::from(8u64) * n * n * n * &w;
    if bits(&kstar) + bits(&w) + 4 < 120 {
        iterate::<i128>(sg, &kstar)
    } else {
        iterate::<BigInt>(sg, &kstar)
    }
}

fn iterate<T: Int>(sg: &ScalarizedGame<'_>, kstar: &BigInt) -> Result<Vec<Rational>> {
    let g = sg.base;
    let n = g.num_states();
    let ne = g.num_edges() as u128;
    let weights: Vec<T> = sg.weights.iter().map(T::from_big).collect();
    let kstar_u = kstar.to_u128().unwrap_or(u128::MAX);
    let mut v: Vec<T> = vec![T::zero(); n];
    let mut prev = v.clone();
    let mut k: u128 = 0;
    let mut checkpoint: u128 = 4 * n as u128;
    loop {
        let stop = checkpoint.min(kstar_u);
        if stop.saturating_mul(ne) > WORK_CAP {
            return Err(Error::ResourceCap(format!("value iteration would exceed {WORK_CAP} edge updates")));
        }
        while k < stop {
            std::mem::swap(&mut v, &mut prev);
            for s in 0..n {
                let mut best: Option<T> = None;
                let max = g.owner(s) == Player::P1;
                for &e in g.out_edges(s) {
                    let cand = weights[e].clone() + prev[g.edge(e).target].clone();
                    let better = match &best {
                        None => true,
                        Some(b) => (max && cand > *b) || (!max && cand < *b),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
                v[s] = best.expect("every state has an edge");
            }
            k += 1;
        }
        if k == kstar_u {
            let radius = Rational::new(BigInt::one(), BigInt::from(2 * n * n));
            let kk = BigInt::from(k);
            return v
                .iter()
                .map(|x| {
                    let approx = Rational::new(x.to_big(), kk.clone());
                    snap_to_grid(&approx, n as u64, &radius)
                        .ok_or_else(|| Error::ResourceCap("value iteration failed to converge".into()))
                })
                .collect();
        }
        if let Some(vals) = certify(g, &sg.weights, &greedy(g, &weights, &prev, None)) {
            return Ok(vals);
        }
        // Plain greedy moves may chase a large bias over a small gain
        // difference. Retry among the edges that keep the estimated gain.
        let kk = BigInt::from(k);
        let gains: Vec<Rational> = v.iter().map(|x| nearest_fraction(&Rational::new(x.to_big(), kk.clone()), n)).collect();
        if let Some(vals) = certify(g, &sg.weights, &greedy(g, &weights, &prev, Some(&gains))) {
            return Ok(vals);
        }
        // Odd and even horizons alternate so periodic ties do not persist.
        checkpoint = checkpoint.saturating_mul(2) + (1 - checkpoint % 2);
    }
}

/// Closest rational with denominator at most `max_den`.
fn nearest_fraction(x: &Rational, max_den: usize) -> Rational {
    let mut best: Option<(Rational, Rational)> = None;
    for q in 1..=max_den.max(1) {
        let q = BigInt::from(q);
        let p = (x * Rational::from_integer(q.clone()) + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        let cand = Rational::new(p, q);
        let dist = (&cand - x).abs();
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, cand));
        }
    }
    best.expect("max_den >= 1").1
}

/// Greedy moves with respect to `prev`, lowest edge index on ties. With
/// `gains`, only edges whose target has the source's gain are considered
/// when there are any.
fn greedy<T: Int>(g: &GameGraph, weights: &[T], prev: &[T], gains: Option<&[Rational]>) -> Vec<EdgeId> {
    g.states()
        .map(|s| {
            let max = g.owner(s) == Player::P1;
            let keeps = |e: &&EdgeId| gains.is_none_or(|gn| gn[g.edge(**e).target] == gn[s]);
            let pool: Vec<EdgeId> = match g.out_edges(s).iter().filter(keeps).count() {
                0 => g.out_edges(s).to_vec(),
                _ => g.out_edges(s).iter().filter(keeps).copied().collect(),
            };
            let mut best: Option<(T, EdgeId)> = None;
            for e in pool {
                let cand = weights[e].clone() + prev[g.edge(e).target].clone();
                let better = match &best {
                    None => true,
                    Some((b, _)) => (max && cand > *b) || (!max && cand < *b),
                };
                if better {
                    best = Some((cand, e));
                }
            }
            best.unwrap().1
        })
        .collect()
}

/// Exact values if the two players' parts of `choice` are optimal against
/// each other: fixing either side leaves the opponent no improvement.
fn certify(g: &GameGraph, big: &[BigInt], choice: &[EdgeId]) -> Option<Vec<Rational>> {
    let fixed = |p: Player| {
        move |e: EdgeId| {
            let s = g.edge(e).source;
            g.owner(s) != p || choice[s] == e
        }
    };
    let lower = per_state_extreme(g, big, fixed(Player::P1), Mode::Min);
    let upper = per_state_extreme(g, big, fixed(Player::P2), Mode::Max);
    lower
        .into_iter()
        .zip(upper)
        .map(|(l, u)| {
            let (l, u) = (l?.0, u?.0);
            (l == u).then_some(l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexmp::scalarize;
    use crate::value::{int, rat};

    #[test]
    fn one_player_loop() {
        let mut b = GameGraph::builder(1);
        let a = b.add_state("a", Player::P1);
        let c = b.add_state("c", Player::P2);
        b.add_edge(a, c, None, vec![7]);
        b.add_edge(c, a, None, vec![7]);
        let g = b.build().unwrap();
        assert_eq!(mp_value(&scalarize(&g)).unwrap(), vec![int(7), int(7)]);
    }

    #[test]
    fn alternating_choice() {
        // P1 at a: loop 1 or go to P2 state c; c: back with 4 or loop 0.
        let mut b = GameGraph::builder(1);
        let a = b.add_state("a", Player::P1);
        let c = b.add_state("c", Player::P2);
        b.add_edge(a, a, None, vec![1]);
        b.add_edge(a, c, None, vec![0]);
        b.add_edge(c, a, None, vec![4]);
        b.add_edge(c, c, None, vec![3]);
        let g = b.build().unwrap();
        assert_eq!(mp_value(&scalarize(&g)).unwrap(), vec![int(2), rat(2, 1)]);
    }
}
