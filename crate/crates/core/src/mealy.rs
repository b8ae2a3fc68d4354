//! Mealy machines and their worst-case value against a specification.

use std::collections::HashMap;

use crate::automata::{QuantAutomaton, Word};
use crate::error::{Error, Result};
use crate::game::{GameBuilder, GameGraph, Player, StateId};
use crate::lasso::Lasso;
use crate::letter::{Alphabet, Letter};
use crate::lmpp::min_mpp_witness;
use crate::value::LexValue;

/// Input-enabled deterministic transducer: on each input letter a state
/// emits one output letter and moves to one successor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    /// `table[q * |inputs| + i]` is the (output index, successor) pair.
    table: Vec<(usize, StateId)>,
}

impl MealyMachine {
    /// Build from `(source, input index, output index, target)` tuples;
    /// exactly one tuple per state and input is required.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        transitions: &[(StateId, usize, usize, StateId)],
    ) -> Result<Self> {
        let n = names.len();
        let ni = alphabet.num_inputs();
        if n == 0 || initial >= n {
            return Err(Error::InvalidGraph("a machine needs states and a valid initial state".into()));
        }
        let mut table: Vec<Option<(usize, StateId)>> = vec![None; n * ni];
        for &(q, i, o, t) in transitions {
            if q >= n || t >= n {
                return Err(Error::InvalidGraph("transition references a missing state".into()));
            }
            if i >= ni || o >= alphabet.num_outputs() {
                return Err(Error::AlphabetMismatch("transition letter outside the alphabet".into()));
            }
            if table[q * ni + i].replace((o, t)).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate transition at state {} on {}",
                    names[q],
                    alphabet.display_input(alphabet.join(i, 0))
                )));
            }
        }
        let mut full = Vec::with_capacity(n * ni);
        for (slot, entry) in table.into_iter().enumerate() {
            match entry {
                Some(x) => full.push(x),
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "missing transition at state {} on {}",
                        names[slot / ni],
                        alphabet.display_input(alphabet.join(slot % ni, 0))
                    )))
                }
            }
        }
        Ok(MealyMachine { alphabet, names, initial, table: full })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// Output index and successor on input index `i`.
    pub fn step(&self, q: StateId, i: usize) -> (usize, StateId) {
        self.table[q * self.alphabet.num_inputs() + i]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, usize, usize, StateId)> + '_ {
        let ni = self.alphabet.num_inputs();
        self.table.iter().enumerate().map(move |(slot, &(o, t))| (slot / ni, slot % ni, o, t))
    }

    /// The joint input/output word produced on an input word given as
    /// input indices.
    pub fn respond(&self, inputs: &[usize]) -> Vec<Letter> {
        let mut q = self.initial;
        inputs
            .iter()
            .map(|&i| {
                let (o, t) = self.step(q, i);
                q = t;
                self.alphabet.join(i, o)
            })
            .collect()
    }

    /// Structural isomorphism preserving the initial state.
    pub fn is_isomorphic(&self, other: &MealyMachine) -> bool {
        if self.alphabet != other.alphabet || self.num_states() != other.num_states() {
            return false;
        }
        let mut map: HashMap<StateId, StateId> = HashMap::from([(self.initial, other.initial)]);
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            let p = map[&q];
            for i in 0..self.alphabet.num_inputs() {
                let ((o1, t1), (o2, t2)) = (self.step(q, i), other.step(p, i));
                if o1 != o2 {
                    return false;
                }
                match map.get(&t1) {
                    Some(&x) if x != t2 => return false,
                    Some(_) => {}
                    None => {
                        if map.values().any(|&x| x == t2) {
                            return false;
                        }
                        map.insert(t1, t2);
                        stack.push(t1);
                    }
                }
            }
        }
        map.len() == self.num_states()
    }
}

/// Product of the specification with the machine: the environment picks
/// inputs, the machine's answer and the automaton's transition follow.
/// States are reachable (automaton state, machine state) pairs, all owned
/// by the minimizing environment.
pub fn spec_product(a: &QuantAutomaton, m: &MealyMachine) -> Result<GameGraph> {
    if a.alphabet() != m.alphabet() {
        return Err(Error::AlphabetMismatch("machine and specification signals differ".into()));
    }
    let g = a.graph();
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut b = GameBuilder::new(a.dim());
    let mut add = |p: (StateId, StateId), b: &mut GameBuilder, pairs: &mut Vec<(StateId, StateId)>| {
        *ids.entry(p).or_insert_with(|| {
            let id = b.add_state(format!("{}.{}", g.name(p.0), m.name(p.1)), Player::P2);
            if let Some(q) = g.priority(p.0) {
                b.set_priority(id, q);
            }
            pairs.push(p);
            id
        })
    };
    add((a.initial(), m.initial()), &mut b, &mut pairs);
    let mut k = 0;
    while k < pairs.len() {
        let (s, q) = pairs[k];
        for i in 0..m.alphabet().num_inputs() {
            let (o, q2) = m.step(q, i);
            let l = m.alphabet().join(i, o);
            let e = g.edge(a.step(s, l));
            let t = add((e.target, q2), &mut b, &mut pairs);
            b.add_edge(k, t, Some(l), e.reward.clone());
        }
        k += 1;
    }
    b.build()
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub value: LexValue,
    /// Worst-case input/output word: its value is exactly `value`.
    pub word: Word,
    pub lasso: Lasso,
    pub product: GameGraph,
}

/// Worst-case value of the machine: the least value of any word it can
/// produce, with a word attaining it.
pub fn verify_value(a: &QuantAutomaton, m: &MealyMachine) -> Result<Verification> {
    let product = spec_product(a, m)?;
    let (value, lasso) = min_mpp_witness(&product, |_| true, product.initial());
    let label = |e: &usize| product.edge(*e).label.expect("product edges are labeled");
    let word = Word { prefix: lasso.prefix.iter().map(label).collect(), cycle: lasso.cycle.iter().map(label).collect() };
    Ok(Verification { value, word, lasso, product })
}
