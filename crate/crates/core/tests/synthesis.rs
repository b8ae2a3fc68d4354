mod common;

use common::{game, mealy, qa, SPECS};
use lexsynt::lmpp::LmppOptions;
use lexsynt::mealy::verify_value;
use lexsynt::synth::{classify_realizability, split_to_game, synthesize, Verdict};
use lexsynt::value::rat;
use lexsynt::{Error, LexValue, Player};

fn v(xs: &[(i64, i64)]) -> LexValue {
    LexValue::Vector(xs.iter().map(|&(n, d)| rat(n, d)).collect())
}

#[test]
fn split_of_c_matches_fixture_game() {
    let c = qa("C");
    let sg = split_to_game(&c, c.alphabet().inputs(), c.alphabet().outputs()).unwrap();
    let g = &sg.game;
    let squares = g.states().filter(|&s| g.owner(s) == Player::P2).count();
    assert_eq!((squares, g.num_states() - squares), (3, 4));
    assert!(g.is_isomorphic(&game("fig6").game));
}

#[test]
fn split_keeps_distinct_menus_apart() {
    // Output rewards depend on the input, so the two circles differ.
    let a = lexsynt::format::parse_qa(
        "qa v1\ninputs i\noutputs o\ndim 1\nparity off\nstate q init\n\
         edge q q {i,*o} (1)\nedge q q {-i,*o} (0)\n",
    )
    .unwrap();
    let sg = split_to_game(&a, a.alphabet().inputs(), a.alphabet().outputs()).unwrap();
    assert_eq!(sg.game.num_states(), 3);
}

#[test]
fn split_rejects_bad_partition() {
    let a = qa("A1");
    let err = split_to_game(&a, &["r".into(), "g".into()], &[]).unwrap();
    assert_eq!(err.game.num_states(), 3);
    assert!(matches!(split_to_game(&a, &["r".into()], &["x".into()]), Err(Error::AlphabetMismatch(_))));
}

#[test]
fn synthesize_c_reaches_two() {
    let s = synthesize(&qa("C"), None, &LmppOptions::default()).unwrap();
    assert_eq!(s.value, v(&[(2, 1)]));
    assert_eq!(s.guaranteed, s.value);
    assert!(s.optimal);
    assert_eq!(verify_value(&qa("C"), &s.machine).unwrap().value, v(&[(2, 1)]));
}

#[test]
fn c_realizable_at_two() {
    let opts = LmppOptions::default();
    let c = qa("C");
    match classify_realizability(&c, &v(&[(2, 1)]), None, &opts).unwrap() {
        Verdict::Realizable { machine, .. } => {
            assert!(verify_value(&c, &machine).unwrap().value >= v(&[(2, 1)]))
        }
        other => panic!("unexpected {other}"),
    }
    let above = classify_realizability(&c, &v(&[(5, 2)]), None, &opts).unwrap();
    assert_eq!(above.to_string(), "unrealizable");
}

#[test]
fn phi_a1_is_limit_only() {
    let opts = LmppOptions::default();
    let a = qa("phiA1");
    let verdict = classify_realizability(&a, &v(&[(1, 1)]), None, &opts).unwrap();
    assert_eq!(verdict.to_string(), "limit-only");
    assert_eq!(*verdict.value(), v(&[(1, 1)]));
    assert!(matches!(synthesize(&a, None, &opts), Err(Error::EpsilonRequired)));
    let eps = [rat(1, 4)];
    let s = synthesize(&a, Some(&eps), &opts).unwrap();
    assert!(s.guaranteed >= v(&[(3, 4)]), "{}", s.guaranteed);
    assert!(!s.optimal);
    match classify_realizability(&a, &v(&[(4, 5)]), None, &opts).unwrap() {
        Verdict::Realizable { machine, .. } => {
            assert!(verify_value(&a, &machine).unwrap().value >= v(&[(4, 5)]))
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn closed_loop_on_every_fixture() {
    let opts = LmppOptions::default();
    let eps = |d: usize| vec![rat(1, 4); d];
    for name in SPECS {
        let a = qa(name);
        let s = synthesize(&a, Some(&eps(a.dim())), &opts).unwrap();
        let got = verify_value(&a, &s.machine).unwrap().value;
        assert_eq!(got, s.guaranteed, "{name}");
        if s.optimal {
            assert_eq!(got, s.value, "{name}");
        } else {
            assert!(got >= s.value.minus(&eps(a.dim())), "{name}: {got} vs {}", s.value);
        }
    }
}

#[test]
fn realizability_cutoff_checks() {
    let opts = LmppOptions::default();
    assert!(matches!(
        classify_realizability(&qa("A1"), &v(&[(1, 1), (1, 1)]), None, &opts),
        Err(Error::DimensionMismatch(2, 1))
    ));
    assert!(classify_realizability(&qa("A1"), &LexValue::Bottom, None, &opts).is_err());
}

#[test]
fn machines_from_the_examples_are_optimal_for_a2() {
    let a = qa("A2");
    let s = synthesize(&a, None, &LmppOptions::default()).unwrap();
    assert_eq!(s.value, v(&[(1, 1)]));
    assert_eq!(verify_value(&a, &mealy("M2")).unwrap().value, s.value);
}

fn rank(v: &Verdict) -> u8 {
    match v {
        Verdict::Unrealizable { .. } => 0,
        Verdict::LimitOnly { .. } => 1,
        Verdict::Realizable { .. } => 2,
    }
}

/// Cutoffs on a grid of quarters, in increasing lexicographic order.
fn cutoffs(dim: usize) -> Vec<LexValue> {
    let steps: Vec<(i64, i64)> = (0..=12).map(|k| (k, 4)).collect();
    let mut out: Vec<Vec<(i64, i64)>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p| steps.iter().map(move |&s| [p.clone(), vec![s]].concat())).collect();
    }
    out.iter().map(|p| v(p)).collect()
}

#[test]
fn verdicts_are_monotone_in_the_cutoff() {
    let opts = LmppOptions::default();
    for name in SPECS {
        let a = qa(name);
        if a.dim() == 0 {
            continue;
        }
        let mut last = u8::MAX;
        for c in cutoffs(a.dim()) {
            let verdict = classify_realizability(&a, &c, None, &opts).unwrap();
            let r = rank(&verdict);
            assert!(r <= last, "{name} at {c}");
            last = r;
            if let Verdict::Realizable { machine, .. } = &verdict {
                assert!(verify_value(&a, machine).unwrap().value >= c, "{name} at {c}");
            }
            if !a.has_priorities() {
                assert!(!matches!(verdict, Verdict::LimitOnly { .. }), "{name} at {c}");
            }
        }
    }
}

#[test]
fn game_value_bounds_every_machine() {
    let opts = LmppOptions::default();
    let eps = |d: usize| vec![rat(1, 4); d];
    for name in SPECS {
        let a = qa(name);
        let s = synthesize(&a, Some(&eps(a.dim())), &opts).unwrap();
        for m in ["M1", "M2", "M3", "Mfig6"] {
            let m = mealy(m);
            if m.alphabet() == a.alphabet() {
                assert!(verify_value(&a, &m).unwrap().value <= s.value, "{name}");
            }
        }
        if !a.has_priorities() {
            assert_eq!(s.guaranteed, s.value, "{name}");
        }
    }
}
