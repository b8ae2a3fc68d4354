//! Quantitative automata over letters of an [`Alphabet`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::game::{EdgeId, GameBuilder, GameGraph, Player, StateId};
use crate::graph::reachable;
use crate::lasso::{lasso_value, Lasso};
use crate::letter::{Alphabet, Letter};
use crate::value::LexValue;

/// An ultimately periodic word: `prefix` followed by `cycle` forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub prefix: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl Word {
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidArgument("a word needs a nonempty cycle".into()));
        }
        Ok(Word { prefix, cycle })
    }
}

/// Complete deterministic automaton with reward vectors on edges and
/// optional state priorities. Every state has exactly one edge per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantAutomaton {
    alphabet: Alphabet,
    graph: GameGraph,
    delta: Vec<EdgeId>,
}

impl QuantAutomaton {
    pub fn new(alphabet: Alphabet, graph: GameGraph) -> Result<Self> {
        let nl = alphabet.num_letters();
        let mut delta = vec![usize::MAX; graph.num_states() * nl];
        for s in graph.states() {
            if graph.owner(s) != Player::P1 {
                return Err(Error::InvalidGraph("automaton states belong to Player 1".into()));
            }
            for &e in graph.out_edges(s) {
                let l = graph.edge(e).label.ok_or_else(|| Error::InvalidGraph("unlabeled automaton edge".into()))?;
                if !alphabet.contains(l) {
                    return Err(Error::AlphabetMismatch(format!("letter {:#x} outside the alphabet", l.0)));
                }
                if delta[s * nl + l.0 as usize] != usize::MAX {
                    return Err(Error::InvalidGraph(format!(
                        "duplicate letter at state {}: {}",
                        graph.name(s),
                        alphabet.display(l)
                    )));
                }
                delta[s * nl + l.0 as usize] = e;
            }
            if let Some(l) = (0..nl).find(|&l| delta[s * nl + l] == usize::MAX) {
                return Err(Error::InvalidGraph(format!(
                    "incomplete at state {}: {}",
                    graph.name(s),
                    alphabet.display(Letter(l as u64))
                )));
            }
        }
        Ok(QuantAutomaton { alphabet, graph, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn num_states(&self) -> usize {
        self.graph.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.graph.initial()
    }

    pub fn has_priorities(&self) -> bool {
        self.graph.has_priorities()
    }

    /// The edge taken from `s` on letter `l`.
    pub fn step(&self, s: StateId, l: Letter) -> EdgeId {
        self.delta[s * self.alphabet.num_letters() + l.0 as usize]
    }

    /// The same automaton with the signals split differently into inputs
    /// and outputs. Both sides must name exactly the current signals.
    pub fn repartition(&self, inputs: &[String], outputs: &[String]) -> Result<QuantAutomaton> {
        let alphabet = Alphabet::new(inputs.iter().cloned(), outputs.iter().cloned())?;
        if alphabet == self.alphabet {
            return Ok(self.clone());
        }
        let mut old: Vec<&String> = self.alphabet.inputs().iter().chain(self.alphabet.outputs()).collect();
        let mut new: Vec<&String> = inputs.iter().chain(outputs).collect();
        old.sort();
        new.sort();
        if old != new {
            return Err(Error::AlphabetMismatch("inputs and outputs must partition the automaton's signals".into()));
        }
        let target: Vec<usize> = (0..self.alphabet.num_signals())
            .map(|i| alphabet.signal_index(self.alphabet.signal_name(i)).expect("same signal set"))
            .collect();
        let remap = |l: Letter| Letter(target.iter().enumerate().filter(|&(i, _)| l.get(i)).map(|(_, &j)| 1u64 << j).sum());
        let mut b = self.graph.to_builder();
        b.map_labels(|l| l.map(remap));
        QuantAutomaton::new(alphabet, b.build()?)
    }

    pub fn is_isomorphic(&self, other: &QuantAutomaton) -> bool {
        self.alphabet == other.alphabet && self.graph.is_isomorphic(&other.graph)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.cycle.is_empty() {
            return Err(Error::InvalidArgument("a word needs a nonempty cycle".into()));
        }
        match w.prefix.iter().chain(&w.cycle).find(|&&l| !self.alphabet.contains(l)) {
            Some(l) => Err(Error::AlphabetMismatch(format!("letter {:#x} outside the alphabet", l.0))),
            None => Ok(()),
        }
    }

    /// The run on `w` as a lasso over the automaton graph.
    pub fn run(&self, w: &Word) -> Result<Lasso> {
        self.check_word(w)?;
        let mut at = self.initial();
        let mut prefix = Vec::new();
        for &l in &w.prefix {
            let e = self.step(at, l);
            prefix.push(e);
            at = self.graph.edge(e).target;
        }
        // Unroll the word cycle until the state at its start repeats.
        let mut seen: HashMap<StateId, usize> = HashMap::new();
        let mut body = Vec::new();
        while !seen.contains_key(&at) {
            seen.insert(at, body.len());
            for &l in &w.cycle {
                let e = self.step(at, l);
                body.push(e);
                at = self.graph.edge(e).target;
            }
        }
        let cycle = body.split_off(seen[&at]);
        prefix.extend(body);
        Ok(Lasso { start: self.initial(), prefix, cycle })
    }
}

/// Value of the word: the payoff of the unique run.
pub fn eval_word(a: &QuantAutomaton, w: &Word) -> Result<LexValue> {
    Ok(lasso_value(a.graph(), &a.run(w)?))
}

/// One-dimensional 0/1 rewards where no reward-1 edge follows a reward-0
/// edge.
pub fn is_safety(a: &QuantAutomaton) -> bool {
    let g = a.graph();
    if g.dim() != 1 || g.edges().iter().any(|e| e.reward[0] > 1) {
        return false;
    }
    let heads = g.edges().iter().filter(|e| e.reward[0] == 0).map(|e| e.target);
    let reach = reachable(&g.adjacency(|_| true), heads);
    !g.edges().iter().any(|e| e.reward[0] == 1 && reach[e.source])
}

/// Synchronized product over reachable state pairs. `edge` gives the reward
/// of a joint step; `prio` the priority of a pair, if any.
fn product(
    a: &QuantAutomaton,
    b: &QuantAutomaton,
    dim: usize,
    edge: impl Fn(EdgeId, EdgeId) -> Vec<u64>,
    prio: impl Fn(StateId, StateId) -> Option<u32>,
) -> Result<(QuantAutomaton, Vec<(StateId, StateId)>)> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch("product of automata over different alphabets".into()));
    }
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = Vec::new();
    let mut builder = GameBuilder::new(dim);
    let mut add = |p: (StateId, StateId), builder: &mut GameBuilder, pairs: &mut Vec<(StateId, StateId)>| {
        *ids.entry(p).or_insert_with(|| {
            let id = builder.add_state(format!("{}.{}", a.graph.name(p.0), b.graph.name(p.1)), Player::P1);
            if let Some(q) = prio(p.0, p.1) {
                builder.set_priority(id, q);
            }
            pairs.push(p);
            id
        })
    };
    add((a.initial(), b.initial()), &mut builder, &mut pairs);
    let mut i = 0;
    while i < pairs.len() {
        let (s, t) = pairs[i];
        for l in a.alphabet.letters() {
            let (ea, eb) = (a.step(s, l), b.step(t, l));
            let next = (a.graph.edge(ea).target, b.graph.edge(eb).target);
            let j = add(next, &mut builder, &mut pairs);
            builder.add_edge(i, j, Some(l), edge(ea, eb));
        }
        i += 1;
    }
    Ok((QuantAutomaton::new(a.alphabet.clone(), builder.build()?)?, pairs))
}

/// Product of a parity automaton (priorities, no rewards needed) with a
/// lexicographic mean-payoff automaton: rewards from `b`, priorities from
/// `a`. A word is worth bottom when `a` rejects it and its `b` value
/// otherwise.
pub fn product_parity_lexmp(a: &QuantAutomaton, b: &QuantAutomaton) -> Result<QuantAutomaton> {
    if !a.has_priorities() {
        return Err(Error::MissingPriorities);
    }
    if b.has_priorities() {
        return Err(Error::InvalidArgument("the mean-payoff automaton must not carry priorities".into()));
    }
    Ok(product(a, b, b.dim(), |_, eb| b.graph.edge(eb).reward.clone(), |s, _| a.graph.priority(s))?.0)
}

/// Automaton for the pair of a safety language and a quantitative language:
/// a word violating `safe` is worth 0; otherwise it is worth its `quant`
/// value shifted so that the least `quant` value maps to 1. Product states
/// whose safety component can no longer earn reward collapse into one sink.
pub fn compose_safety_pair(safe: &QuantAutomaton, quant: &QuantAutomaton) -> Result<QuantAutomaton> {
    if !is_safety(safe) {
        return Err(Error::NotSafety);
    }
    if quant.has_priorities() {
        return Err(Error::InvalidArgument("the quantitative automaton must not carry priorities".into()));
    }
    let d = quant.dim();
    let mut floor = vec![u64::MAX; d];
    for e in quant.graph.edges() {
        for (f, &r) in floor.iter_mut().zip(&e.reward) {
            *f = (*f).min(r);
        }
    }
    let sg = safe.graph();
    let live = crate::graph::can_reach(
        &sg.adjacency(|_| true),
        sg.edges().iter().filter(|e| e.reward[0] == 1).map(|e| e.source),
    );
    let (full, pairs) = product(
        safe,
        quant,
        d,
        |es, eq| {
            if sg.edge(es).reward[0] == 1 {
                quant.graph.edge(eq).reward.iter().zip(&floor).map(|(r, f)| r - f + 1).collect()
            } else {
                vec![0; d]
            }
        },
        |_, _| None,
    )?;
    // Collapse the dead pairs.
    let g = full.graph();
    let dead: Vec<bool> = pairs.iter().map(|&(s, _)| !live[s]).collect();
    if !dead.iter().any(|&x| x) {
        return Ok(full);
    }
    let mut b = GameBuilder::new(d);
    let mut index = vec![0; g.num_states()];
    for p in g.states().filter(|&p| !dead[p]) {
        index[p] = b.add_state(g.name(p), Player::P1);
    }
    let sink = b.add_state("sink", Player::P1);
    for p in g.states().filter(|&p| dead[p]) {
        index[p] = sink;
    }
    b.set_initial(index[g.initial()]);
    for e in g.edges().iter().filter(|e| !dead[e.source]) {
        b.add_edge(index[e.source], index[e.target], e.label, e.reward.clone());
    }
    for l in full.alphabet.letters() {
        b.add_edge(sink, sink, Some(l), vec![0; d]);
    }
    QuantAutomaton::new(full.alphabet.clone(), b.build()?)
}
