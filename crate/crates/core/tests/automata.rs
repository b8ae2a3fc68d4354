mod common;

use common::{mealy, qa, SPECS};
use lexsynt::automata::{compose_safety_pair, eval_word, product_parity_lexmp};
use lexsynt::lasso::lasso_parity;
use lexsynt::mealy::verify_value;
use lexsynt::{Letter, LexValue, MealyMachine, QuantAutomaton, Rational, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_word(rng: &mut StdRng, a: &QuantAutomaton) -> Word {
    let letters: Vec<Letter> = a.alphabet().letters().collect();
    let prefix = draws(rng, letters.len(), 0..4).into_iter().map(|i| letters[i]).collect();
    let cycle = draws(rng, letters.len(), 1..5).into_iter().map(|i| letters[i]).collect();
    Word::new(prefix, cycle).unwrap()
}

/// A random number of draws from `0..bound`, the count taken from `len`.
fn draws(rng: &mut StdRng, bound: usize, len: std::ops::Range<usize>) -> Vec<usize> {
    let n = rng.gen_range(len);
    (0..n).map(|_| rng.gen_range(0..bound)).collect()
}

/// The input/output word the machine produces on the input lasso.
fn io_word(m: &MealyMachine, prefix: &[usize], cycle: &[usize]) -> Word {
    let ab = m.alphabet();
    let mut q = m.initial();
    let mut letters = Vec::new();
    let feed = |q: &mut usize, inputs: &[usize], out: &mut Vec<Letter>| {
        for &i in inputs {
            let (o, next) = m.step(*q, i);
            out.push(ab.join(i, o));
            *q = next;
        }
    };
    feed(&mut q, prefix, &mut letters);
    let mut seen = vec![q];
    let mut marks = vec![letters.len()];
    loop {
        feed(&mut q, cycle, &mut letters);
        if let Some(k) = seen.iter().position(|&p| p == q) {
            let start = marks[k];
            return Word::new(letters[..start].to_vec(), letters[start..].to_vec()).unwrap();
        }
        seen.push(q);
        marks.push(letters.len());
    }
}

#[test]
fn values_survive_unrolling_and_rotation() {
    let mut rng = StdRng::seed_from_u64(1);
    for name in SPECS {
        let a = qa(name);
        for _ in 0..50 {
            let w = random_word(&mut rng, &a);
            let v = eval_word(&a, &w).unwrap();
            for k in 1..4 {
                let unrolled = Word::new(w.prefix.clone(), w.cycle.repeat(k)).unwrap();
                assert_eq!(eval_word(&a, &unrolled).unwrap(), v, "{name}");
            }
            let mut prefix = w.prefix.clone();
            prefix.push(w.cycle[0]);
            let mut cycle = w.cycle[1..].to_vec();
            cycle.push(w.cycle[0]);
            assert_eq!(eval_word(&a, &Word::new(prefix, cycle).unwrap()).unwrap(), v, "{name}");
        }
    }
}

#[test]
fn parity_product_law() {
    let (p, b) = (qa("gfr"), qa("A1"));
    let prod = product_parity_lexmp(&p, &b).unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..300 {
        let w = random_word(&mut rng, &b);
        let run = p.run(&w).unwrap();
        let want = match lasso_parity(p.graph(), &run).unwrap() {
            lexsynt::lasso::Parity::Odd => LexValue::Bottom,
            lexsynt::lasso::Parity::Even => eval_word(&b, &w).unwrap(),
        };
        assert_eq!(eval_word(&prod, &w).unwrap(), want);
    }
}

/// Value of the pair directly: 0 when unsafe, else shifted so the least
/// reward maps to 1.
fn pair_value(safe: &QuantAutomaton, quant: &QuantAutomaton, w: &Word) -> LexValue {
    if eval_word(safe, w).unwrap() == LexValue::from_ints(&[0]) {
        return LexValue::zero(quant.dim());
    }
    let floor: Vec<u64> = (0..quant.dim())
        .map(|i| quant.graph().edges().iter().map(|e| e.reward[i]).min().unwrap())
        .collect();
    let v = eval_word(quant, w).unwrap();
    let xs = v.as_vector().unwrap();
    LexValue::Vector(
        xs.iter()
            .zip(&floor)
            .map(|(x, &f)| x - Rational::from_integer(f.into()) + Rational::from_integer(1.into()))
            .collect(),
    )
}

#[test]
fn safety_pair_order() {
    let (b, a2) = (qa("B"), qa("A2"));
    let c = compose_safety_pair(&b, &a2).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    let words: Vec<Word> = (0..60).map(|_| random_word(&mut rng, &a2)).collect();
    let direct: Vec<LexValue> = words.iter().map(|w| pair_value(&b, &a2, w)).collect();
    let composed: Vec<LexValue> = words.iter().map(|w| eval_word(&c, w).unwrap()).collect();
    assert_eq!(direct, composed);
    for i in 0..words.len() {
        for j in 0..words.len() {
            assert_eq!(direct[i].partial_cmp(&direct[j]), composed[i].partial_cmp(&composed[j]));
        }
    }
}

#[test]
fn parsed_automata_are_complete() {
    for name in SPECS {
        let a = qa(name);
        let g = a.graph();
        for s in g.states() {
            for l in a.alphabet().letters() {
                let n = g.out_edges(s).iter().filter(|&&e| g.edge(e).label == Some(l)).count();
                assert_eq!(n, 1, "{name} at {}", g.name(s));
            }
        }
    }
}

const PAIRS: [(&str, &str); 7] =
    [("A1", "M1"), ("A1", "M2"), ("A1", "M3"), ("A2", "M1"), ("A2", "M2"), ("A2", "M3"), ("C", "Mfig6")];

#[test]
fn machine_value_is_a_sound_lower_bound() {
    let mut rng = StdRng::seed_from_u64(4);
    for (spec, machine) in PAIRS {
        let (a, m) = (qa(spec), mealy(machine));
        let v = verify_value(&a, &m).unwrap();
        let inputs = a.alphabet().num_inputs();
        for _ in 0..100 {
            let (p, c) = (draws(&mut rng, inputs, 0..4), draws(&mut rng, inputs, 1..4));
            assert!(eval_word(&a, &io_word(&m, &p, &c)).unwrap() >= v.value, "{spec} {machine}");
        }
    }
}

#[test]
fn witness_word_attains_the_value() {
    for (spec, machine) in PAIRS {
        let (a, m) = (qa(spec), mealy(machine));
        let v = verify_value(&a, &m).unwrap();
        assert_eq!(eval_word(&a, &v.word).unwrap(), v.value, "{spec} {machine}");
        let inputs: Vec<usize> = v.word.prefix.iter().chain(&v.word.cycle).map(|&l| a.alphabet().input_part(l)).collect();
        assert_eq!(m.respond(&inputs), v.word.prefix.iter().chain(&v.word.cycle).copied().collect::<Vec<_>>());
    }
}
