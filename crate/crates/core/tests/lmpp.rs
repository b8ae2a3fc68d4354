mod common;

use common::{one_player, seeded_game, shape};
use lexsynt::lexmp::lex_mp_solve;
use lexsynt::lmpp::{evaluate_strategy, single_player_max_mpp, single_player_min_mpp, solve_lmpp, LmppOptions};
use lexsynt::oracle::bounded_memory_bounds;
use lexsynt::parity::solve_parity;
use lexsynt::{LexValue, Player};
use proptest::prelude::*;

fn opts() -> LmppOptions {
    LmppOptions { memory_cap: 3, ..LmppOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn erasing_priorities_never_lowers_values(seed: u64) {
        let g = seeded_game(seed, shape(4, 2, 3, Some(3)));
        let sol = solve_lmpp(&g, &opts()).unwrap();
        let free = lex_mp_solve(&g.without_priorities()).unwrap().values;
        for s in g.states() {
            prop_assert!(sol.upper[s] <= free[s]);
        }
    }

    #[test]
    fn bottom_exactly_on_player2_parity_region(seed: u64) {
        let g = seeded_game(seed, shape(4, 2, 3, Some(3)));
        let sol = solve_lmpp(&g, &opts()).unwrap();
        let w = solve_parity(&g).unwrap();
        for s in g.states() {
            prop_assert_eq!(sol.values[s].is_bottom(), w.w2[s]);
            prop_assert_eq!(sol.lower[s].is_bottom(), w.w2[s]);
        }
    }

    #[test]
    fn witnesses_sandwich_the_values(seed: u64) {
        let g = seeded_game(seed, shape(4, 2, 3, Some(3)));
        let sol = solve_lmpp(&g, &opts()).unwrap();
        let lo = evaluate_strategy(&g, &sol.p1_witness, Player::P1).unwrap();
        let hi = evaluate_strategy(&g, &sol.p2_witness, Player::P2).unwrap();
        for s in g.states() {
            prop_assert_eq!(&lo[s], &sol.lower[s]);
            prop_assert_eq!(&hi[s], &sol.upper[s]);
            prop_assert!(lo[s] <= sol.values[s] && sol.values[s] <= hi[s]);
        }
    }

    #[test]
    fn single_player_solvers_match_enumeration(seed: u64) {
        let g = seeded_game(seed, shape(5, 2, 3, Some(3)));
        let max = one_player(&g, Player::P1);
        let (lo, hi) = bounded_memory_bounds(&max, 1).unwrap();
        prop_assert_eq!(&single_player_max_mpp(&max), &hi);
        // Player 1 gets the supremum only in the limit, so lo may fall short.
        for s in g.states() {
            prop_assert!(lo[s] <= hi[s]);
        }
        // A minimizing play never needs memory: either an odd cycle or the
        // cheapest reachable cycle.
        let min = one_player(&g, Player::P2);
        let (lo, hi) = bounded_memory_bounds(&min, 1).unwrap();
        prop_assert_eq!(&lo, &hi);
        prop_assert_eq!(&single_player_min_mpp(&min), &lo);
    }
}

#[test]
fn single_player_solvers_without_parity() {
    for seed in 0..100 {
        let g = seeded_game(seed, shape(5, 2, 3, None));
        let all_zero = g.with_priorities(|_| 0);
        let max = one_player(&all_zero, Player::P1);
        let min = one_player(&all_zero, Player::P2);
        let free = |h: &lexsynt::GameGraph| lex_mp_solve(&h.without_priorities()).unwrap().values;
        assert_eq!(single_player_max_mpp(&max), free(&max));
        assert_eq!(single_player_min_mpp(&min), free(&min));
        assert!(single_player_max_mpp(&max).iter().all(|v| *v != LexValue::Bottom));
    }
}
