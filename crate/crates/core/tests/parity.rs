mod common;

use common::{rooted, seeded_game, shape};
use lexsynt::oracle::enumerate_cycles;
use lexsynt::parity::{attractor, odd_lasso_exists, solve_parity};
use lexsynt::{GameGraph, MemorylessStrategy, Player};
use proptest::prelude::*;

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Edges left once `owner` commits to `s` inside `region`.
fn restricted<'a>(g: &'a GameGraph, region: &'a [bool], owner: Player, s: &'a MemorylessStrategy) -> impl Fn(usize) -> bool + 'a {
    move |e| {
        let src = g.edge(e).source;
        !region[src] || g.owner(src) != owner || s.allows(g, e)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn attractor_is_monotone_and_idempotent(seed: u64, bits in proptest::collection::vec(any::<bool>(), 12), extra in 0usize..6) {
        let g = seeded_game(seed, shape(6, 1, 1, Some(3)));
        let n = g.num_states();
        let small: Vec<bool> = bits[..n].to_vec();
        let mut large = small.clone();
        large[extra % n] = true;
        for p in [Player::P1, Player::P2] {
            let a = attractor(&g, p, &small).set;
            let b = attractor(&g, p, &large).set;
            prop_assert!(subset(&small, &a));
            prop_assert!(subset(&a, &b));
            prop_assert_eq!(&attractor(&g, p, &a).set, &a);
        }
    }

    #[test]
    fn regions_partition_and_strategies_win(seed: u64) {
        let g = seeded_game(seed, shape(6, 1, 1, Some(4)));
        let w = solve_parity(&g).unwrap();
        for s in g.states() {
            prop_assert!(w.w1[s] != w.w2[s]);
        }
        let keep1 = restricted(&g, &w.w1, Player::P1, &w.strat1);
        let keep2 = restricted(&g, &w.w2, Player::P2, &w.strat2);
        for s in g.states() {
            let h = rooted(&g, s);
            if w.w1[s] {
                prop_assert!(odd_lasso_exists(&h, &keep1).unwrap().is_none());
            } else {
                let (sub, _) = h.edge_subgraph(&keep2).unwrap();
                for c in enumerate_cycles(&sub).unwrap() {
                    prop_assert_eq!(c.min_priority.unwrap() % 2, 1);
                }
            }
        }
    }

    #[test]
    fn role_swap_swaps_regions(seed: u64) {
        let g = seeded_game(seed, shape(6, 1, 1, Some(4)));
        let w = solve_parity(&g).unwrap();
        let (h, _) = g.role_swapped();
        // Shifting every priority by one exchanges the winning condition.
        let h = h.with_priorities(|s| g.priority(s).unwrap() + 1);
        let v = solve_parity(&h).unwrap();
        prop_assert_eq!(w.w1, v.w2);
        prop_assert_eq!(w.w2, v.w1);
    }
}
