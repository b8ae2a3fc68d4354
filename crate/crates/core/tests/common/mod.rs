#![allow(dead_code)]

use std::path::PathBuf;

use lexsynt::format::{parse_game, parse_mealy, parse_qa, LabeledGame};
use lexsynt::{GameBuilder, GameGraph, MealyMachine, Player, QuantAutomaton};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn qa(name: &str) -> QuantAutomaton {
    parse_qa(&read(&format!("{name}.qa"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn mealy(name: &str) -> MealyMachine {
    parse_mealy(&read(&format!("{name}.mealy"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn game(name: &str) -> LabeledGame {
    parse_game(&read(&format!("{name}.game"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const SPECS: [&str; 8] = ["A1", "A2", "A3", "A4", "B", "C", "gfr", "phiA1"];

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub states: usize,
    pub dim: usize,
    pub max_reward: u64,
    pub max_out: usize,
    /// Largest priority, or `None` for no priorities.
    pub max_priority: Option<u32>,
}

/// Random game with every state owning 1..=max_out successors.
pub fn random_game(rng: &mut StdRng, shape: Shape) -> GameGraph {
    let mut b = GameBuilder::new(shape.dim);
    for i in 0..shape.states {
        let owner = if rng.gen_bool(0.5) { Player::P1 } else { Player::P2 };
        let s = b.add_state(format!("s{i}"), owner);
        if let Some(p) = shape.max_priority {
            b.set_priority(s, rng.gen_range(0..=p));
        }
    }
    for s in 0..shape.states {
        for _ in 0..rng.gen_range(1..=shape.max_out) {
            let t = rng.gen_range(0..shape.states);
            let r = (0..shape.dim).map(|_| rng.gen_range(0..=shape.max_reward)).collect();
            b.add_edge(s, t, None, r);
        }
    }
    b.build().expect("random game is well formed")
}

pub fn random_games(seed: u64, count: usize, shape: impl Fn(&mut StdRng) -> Shape) -> Vec<GameGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let sh = shape(&mut rng);
            random_game(&mut rng, sh)
        })
        .collect()
}

/// Same game with every state given to `owner`.
pub fn one_player(g: &GameGraph, owner: Player) -> GameGraph {
    let mut b = GameBuilder::new(g.dim());
    for s in g.states() {
        let id = b.add_state(g.name(s), owner);
        if let Some(p) = g.priority(s) {
            b.set_priority(id, p);
        }
    }
    b.set_initial(g.initial());
    for e in g.edges() {
        b.add_edge(e.source, e.target, e.label, e.reward.clone());
    }
    b.build().unwrap()
}

/// One random game per seed, for proptest-driven properties.
pub fn seeded_game(seed: u64, shape: impl Fn(&mut StdRng) -> Shape) -> GameGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let sh = shape(&mut rng);
    random_game(&mut rng, sh)
}

pub fn shape(states: usize, dim: usize, max_reward: u64, max_priority: Option<u32>) -> impl Fn(&mut StdRng) -> Shape {
    move |rng| Shape {
        states: rng.gen_range(1..=states),
        dim: rng.gen_range(1..=dim),
        max_reward,
        max_out: 3,
        max_priority,
    }
}

/// Same game started at `s`.
pub fn rooted(g: &GameGraph, s: usize) -> GameGraph {
    let mut b = g.to_builder();
    b.set_initial(s);
    b.build().unwrap()
}
