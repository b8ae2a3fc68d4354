//! Synthesis of Mealy machines from specification automata.

use std::collections::HashMap;
use std::fmt;

use crate::automata::QuantAutomaton;
use crate::error::{Error, Result};
use crate::game::{GameBuilder, GameGraph, Player, StateId};
use crate::letter::{Alphabet, Letter};
use crate::lexmp::lex_mp_solve;
use crate::lmpp::{
    epsilon_optimal_strategy, memoryless_optimal_from, p1_strategy_reaching, solve_lmpp, LmppOptions,
};
use crate::mealy::{verify_value, MealyMachine};
use crate::strategy::{FiniteMemoryStrategy, MemorylessStrategy};
use crate::value::{LexValue, Rational};

/// Game in which the environment (Player 2) picks an input letter and the
/// system (Player 1) answers with an output letter.
#[derive(Clone, Debug)]
pub struct SplitGame {
    pub game: GameGraph,
    pub alphabet: Alphabet,
    /// Game state of the environment copy of every automaton state.
    pub env: Vec<StateId>,
}

/// Split every automaton step into an input move and an output move. The
/// input move carries reward 0 and the output move twice the automaton
/// reward, so mean payoffs are preserved. System states of one automaton
/// state that offer identical output menus are shared. With priorities,
/// environment states keep theirs and system states get the largest
/// priority, which never decides the parity of a play.
pub fn split_to_game(a: &QuantAutomaton, inputs: &[String], outputs: &[String]) -> Result<SplitGame> {
    let a = a.repartition(inputs, outputs)?;
    let ab = a.alphabet().clone();
    let g = a.graph();
    let d = a.dim();
    let top = g.has_priorities().then(|| g.max_priority());
    let mut b = GameBuilder::new(d);
    let env: Vec<StateId> = g
        .states()
        .map(|s| {
            let id = b.add_state(g.name(s), Player::P2);
            if let Some(p) = g.priority(s) {
                b.set_priority(id, p);
            }
            id
        })
        .collect();
    b.set_initial(env[a.initial()]);
    for s in g.states() {
        let mut groups: Vec<(Vec<(StateId, Vec<u64>)>, Vec<usize>)> = Vec::new();
        for i in 0..ab.num_inputs() {
            let menu: Vec<(StateId, Vec<u64>)> = (0..ab.num_outputs())
                .map(|o| {
                    let e = g.edge(a.step(s, ab.join(i, o)));
                    (e.target, e.reward.iter().map(|r| 2 * r).collect())
                })
                .collect();
            match groups.iter_mut().find(|(m, _)| *m == menu) {
                Some((_, ins)) => ins.push(i),
                None => groups.push((menu, vec![i])),
            }
        }
        let mut circle_of = vec![0; ab.num_inputs()];
        let mut circles = Vec::new();
        for (menu, ins) in &groups {
            let label = if ins.len() == ab.num_inputs() {
                "*".to_string()
            } else {
                ins.iter()
                    .map(|&i| ab.display_input(ab.join(i, 0)).to_string().trim_matches(['{', '}']).to_string())
                    .collect::<Vec<_>>()
                    .join("|")
            };
            let c = b.add_state(format!("{}/{}", g.name(s), label), Player::P1);
            if let Some(p) = top {
                b.set_priority(c, p);
            }
            for &i in ins {
                circle_of[i] = c;
            }
            circles.push((c, menu));
        }
        for i in 0..ab.num_inputs() {
            b.add_edge(env[s], circle_of[i], Some(ab.join(i, 0)), vec![0; d]);
        }
        for (c, menu) in circles {
            for (o, (t, r)) in menu.iter().enumerate() {
                b.add_edge(c, env[*t], Some(ab.join(0, o)), r.clone());
            }
        }
    }
    Ok(SplitGame { game: b.build()?, alphabet: ab, env })
}

/// Read a Mealy machine off a Player 1 strategy of a split game: machine
/// states are the reachable (environment state, memory) pairs.
pub fn strategy_to_mealy(sg: &SplitGame, s: &FiniteMemoryStrategy) -> Result<MealyMachine> {
    let g = &sg.game;
    if s.owner != Player::P1 {
        return Err(Error::InvalidStrategy("machines come from Player 1 strategies".into()));
    }
    s.validate(g)?;
    let ab = &sg.alphabet;
    let start = (g.initial(), s.initial[g.initial()]);
    let mut ids: HashMap<(StateId, usize), StateId> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut trans = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let (v, m) = order[k];
        for &e1 in g.out_edges(v) {
            let i = ab.input_part(g.edge(e1).label.expect("split edges are labeled"));
            let c = g.edge(e1).target;
            let m1 = s.next_memory(g, m, e1);
            let e2 = s
                .choice(g, m1, c)
                .ok_or_else(|| Error::InvalidStrategy(format!("no move at reachable state {}", g.name(c))))?;
            let o = ab.output_part(g.edge(e2).label.expect("split edges are labeled"));
            let next = (g.edge(e2).target, s.next_memory(g, m1, e2));
            let len = ids.len();
            let t = *ids.entry(next).or_insert_with(|| {
                order.push(next);
                len
            });
            trans.push((k, i, o, t));
        }
        k += 1;
    }
    let names = order
        .iter()
        .map(|&(v, m)| if s.memory_size == 1 { g.name(v).to_string() } else { format!("{}@{}", g.name(v), m) })
        .collect();
    MealyMachine::new(ab.clone(), names, 0, &trans)
}

pub fn memoryless_to_mealy(sg: &SplitGame, s: &MemorylessStrategy) -> Result<MealyMachine> {
    strategy_to_mealy(sg, &FiniteMemoryStrategy::from_memoryless(&sg.game, s))
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    pub machine: MealyMachine,
    /// Value of the specification's synthesis game.
    pub value: LexValue,
    /// Exact worst-case value of `machine`.
    pub guaranteed: LexValue,
    /// Whether `machine` attains `value`.
    pub optimal: bool,
}

fn split_own(a: &QuantAutomaton) -> Result<SplitGame> {
    split_to_game(a, a.alphabet().inputs(), a.alphabet().outputs())
}

/// Synthesize a machine of optimal value, or within `eps` of it when the
/// specification has no finite-memory optimal implementation.
pub fn synthesize(a: &QuantAutomaton, eps: Option<&[Rational]>, opts: &LmppOptions) -> Result<Synthesis> {
    let sg = split_own(a)?;
    let g = &sg.game;
    let init = g.initial();
    let (machine, value) = if !g.has_priorities() {
        let sol = lex_mp_solve(g)?;
        (memoryless_to_mealy(&sg, &sol.p1)?, sol.values[init].clone())
    } else {
        let sol = solve_lmpp(g, opts)?;
        let value = sol.values[init].clone();
        let opt = if sol.certified[init] { memoryless_optimal_from(g, &sol, init, opts)? } else { None };
        match opt {
            Some(s) => (memoryless_to_mealy(&sg, &s)?, value),
            None => {
                let eps = eps.ok_or(Error::EpsilonRequired)?;
                let e = epsilon_optimal_strategy(g, eps, opts)?;
                (strategy_to_mealy(&sg, &e.strategy)?, value)
            }
        }
    };
    let guaranteed = verify_value(a, &machine)?.value;
    let optimal = guaranteed == value;
    Ok(Synthesis { machine, value, guaranteed, optimal })
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// Some machine reaches the cutoff.
    Realizable { value: LexValue, machine: MealyMachine },
    /// Machines get arbitrarily close to the cutoff, none reaches it.
    LimitOnly { value: LexValue, machine: Option<MealyMachine> },
    Unrealizable { value: LexValue },
}

impl Verdict {
    pub fn value(&self) -> &LexValue {
        match self {
            Verdict::Realizable { value, .. } | Verdict::LimitOnly { value, .. } | Verdict::Unrealizable { value } => value,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Realizable { .. } => "realizable",
            Verdict::LimitOnly { .. } => "limit-only",
            Verdict::Unrealizable { .. } => "unrealizable",
        })
    }
}

/// Decide whether some machine reaches `cutoff`. When only the limit is
/// reachable and `eps` is given, a machine within `eps` is attached.
pub fn classify_realizability(
    a: &QuantAutomaton,
    cutoff: &LexValue,
    eps: Option<&[Rational]>,
    opts: &LmppOptions,
) -> Result<Verdict> {
    match cutoff.dim() {
        None => return Err(Error::InvalidArgument("the cutoff must be a vector".into())),
        Some(d) if d != a.dim() => return Err(Error::DimensionMismatch(d, a.dim())),
        _ => {}
    }
    let sg = split_own(a)?;
    let g = &sg.game;
    let init = g.initial();
    if !g.has_priorities() {
        let sol = lex_mp_solve(g)?;
        let value = sol.values[init].clone();
        return Ok(if *cutoff <= value {
            Verdict::Realizable { machine: memoryless_to_mealy(&sg, &sol.p1)?, value }
        } else {
            Verdict::Unrealizable { value }
        });
    }
    let sol = solve_lmpp(g, opts)?;
    let value = sol.values[init].clone();
    if *cutoff > value {
        return Ok(Verdict::Unrealizable { value });
    }
    if *cutoff < value {
        let s = p1_strategy_reaching(g, init, cutoff, opts)?
            .ok_or_else(|| Error::ResourceCap("no machine reaching the cutoff within the search limits".into()))?;
        return Ok(Verdict::Realizable { machine: strategy_to_mealy(&sg, &s)?, value });
    }
    if !sol.certified[init] {
        return Err(Error::Uncertified);
    }
    if let Some(s) = memoryless_optimal_from(g, &sol, init, opts)? {
        return Ok(Verdict::Realizable { machine: memoryless_to_mealy(&sg, &s)?, value });
    }
    let machine = match eps {
        Some(eps) => Some(strategy_to_mealy(&sg, &epsilon_optimal_strategy(g, eps, opts)?.strategy)?),
        None => None,
    };
    Ok(Verdict::LimitOnly { value, machine })
}

/// Letters of the split alphabet carrying only input bits.
pub fn input_letter(ab: &Alphabet, i: usize) -> Letter {
    ab.join(i, 0)
}
