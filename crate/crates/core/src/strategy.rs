use crate::error::{Error, Result};
use crate::game::{EdgeId, GameBuilder, GameGraph, Player, StateId};

/// A choice of outgoing edge at every state of `owner`; `None` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MemorylessStrategy {
    pub owner: Player,
    pub moves: Vec<Option<EdgeId>>,
}

impl MemorylessStrategy {
    pub fn new(g: &GameGraph, owner: Player, moves: Vec<Option<EdgeId>>) -> Result<Self> {
        let s = MemorylessStrategy { owner, moves };
        s.validate(g)?;
        Ok(s)
    }

    /// Lowest-index edge everywhere.
    pub fn first_edges(g: &GameGraph, owner: Player) -> Self {
        let moves = g.states().map(|s| (g.owner(s) == owner).then(|| g.out_edges(s)[0])).collect();
        MemorylessStrategy { owner, moves }
    }

    pub fn validate(&self, g: &GameGraph) -> Result<()> {
        if self.moves.len() != g.num_states() {
            return Err(Error::InvalidStrategy("move table size differs from the state count".into()));
        }
        for s in g.states() {
            match (g.owner(s) == self.owner, self.moves[s]) {
                (true, Some(e)) if e < g.num_edges() && g.edge(e).source == s => {}
                (true, _) => return Err(Error::InvalidStrategy(format!("no valid move at state {}", g.name(s)))),
                (false, None) => {}
                (false, Some(_)) => {
                    return Err(Error::InvalidStrategy(format!("move given at foreign state {}", g.name(s))))
                }
            }
        }
        Ok(())
    }

    /// Whether edge `e` survives once this strategy is fixed.
    pub fn allows(&self, g: &GameGraph, e: EdgeId) -> bool {
        let s = g.edge(e).source;
        g.owner(s) != self.owner || self.moves[s] == Some(e)
    }
}

/// A strategy with finite memory. The memory is updated on every edge
/// taken (by either player); the move at an owned state depends on the
/// current memory. Each start state has its own initial memory, which lets
/// strategies for different start states share one machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMemoryStrategy {
    pub owner: Player,
    pub memory_size: usize,
    pub initial: Vec<usize>,
    /// `update[m * |E| + e]` is the memory after taking edge `e` in memory `m`.
    pub update: Vec<usize>,
    /// `moves[m * |S| + s]` is the edge chosen at owned state `s` in memory `m`.
    pub moves: Vec<Option<EdgeId>>,
}

impl FiniteMemoryStrategy {
    pub fn from_memoryless(g: &GameGraph, s: &MemorylessStrategy) -> Self {
        FiniteMemoryStrategy {
            owner: s.owner,
            memory_size: 1,
            initial: vec![0; g.num_states()],
            update: vec![0; g.num_edges()],
            moves: s.moves.clone(),
        }
    }

    pub fn validate(&self, g: &GameGraph) -> Result<()> {
        let (n, e) = (g.num_states(), g.num_edges());
        let k = self.memory_size;
        if k == 0 || self.initial.len() != n || self.update.len() != k * e || self.moves.len() != k * n {
            return Err(Error::InvalidStrategy("table sizes do not match the game".into()));
        }
        if self.initial.iter().chain(&self.update).any(|&m| m >= k) {
            return Err(Error::InvalidStrategy("memory value out of range".into()));
        }
        for m in 0..k {
            let slice = MemorylessStrategy { owner: self.owner, moves: self.moves[m * n..(m + 1) * n].to_vec() };
            slice.validate(g)?;
        }
        Ok(())
    }

    pub fn next_memory(&self, g: &GameGraph, m: usize, e: EdgeId) -> usize {
        self.update[m * g.num_edges() + e]
    }

    pub fn choice(&self, g: &GameGraph, m: usize, s: StateId) -> Option<EdgeId> {
        self.moves[m * g.num_states() + s]
    }

    /// Combine strategies: a play from start state `s` follows
    /// `parts[pick[s]]`. Memories are laid out side by side.
    pub fn union(g: &GameGraph, parts: &[&FiniteMemoryStrategy], pick: &[usize]) -> Self {
        let (n, ne) = (g.num_states(), g.num_edges());
        let owner = parts[0].owner;
        let mut offset = Vec::with_capacity(parts.len());
        let mut total = 0;
        for p in parts {
            offset.push(total);
            total += p.memory_size;
        }
        let mut update = Vec::with_capacity(total * ne);
        let mut moves = Vec::with_capacity(total * n);
        for (p, &off) in parts.iter().zip(&offset) {
            update.extend(p.update.iter().map(|&m| m + off));
            moves.extend_from_slice(&p.moves);
        }
        let initial = (0..n).map(|s| offset[pick[s]] + parts[pick[s]].initial[s]).collect();
        FiniteMemoryStrategy { owner, memory_size: total, initial, update, moves }
    }

    /// Drop memory states unreachable from any initial memory and renumber.
    pub fn trimmed(&self, g: &GameGraph) -> Self {
        let (n, ne) = (g.num_states(), g.num_edges());
        let mut seen = vec![false; self.memory_size];
        let mut stack: Vec<usize> = self.initial.clone();
        while let Some(m) = stack.pop() {
            if std::mem::replace(&mut seen[m], true) {
                continue;
            }
            stack.extend(&self.update[m * ne..(m + 1) * ne]);
        }
        let mut index = vec![usize::MAX; self.memory_size];
        let kept: Vec<usize> = (0..self.memory_size).filter(|&m| seen[m]).collect();
        for (i, &m) in kept.iter().enumerate() {
            index[m] = i;
        }
        FiniteMemoryStrategy {
            owner: self.owner,
            memory_size: kept.len(),
            initial: self.initial.iter().map(|&m| index[m]).collect(),
            update: kept.iter().flat_map(|&m| self.update[m * ne..(m + 1) * ne].iter().map(|&x| index[x])).collect(),
            moves: kept.iter().flat_map(|&m| self.moves[m * n..(m + 1) * n].iter().copied()).collect(),
        }
    }
}

/// Product of a game with a strategy's memory where the strategy owner's
/// moves are fixed. Only pairs reachable from some `(s, initial[s])` exist.
#[derive(Clone, Debug)]
pub struct StrategyProduct {
    pub graph: GameGraph,
    /// Game state and memory of each product state.
    pub origin: Vec<(StateId, usize)>,
    /// Game edge of each product edge.
    pub edge_origin: Vec<EdgeId>,
    /// Product state of `(s, initial[s])` for every game state `s`.
    pub entry: Vec<StateId>,
}

pub fn strategy_product(g: &GameGraph, strat: &FiniteMemoryStrategy) -> StrategyProduct {
    let k = strat.memory_size;
    let mut id = vec![usize::MAX; g.num_states() * k];
    let mut origin = Vec::new();
    let mut b = GameBuilder::new(g.dim());
    let mut visit = |s: StateId, m: usize, b: &mut GameBuilder, origin: &mut Vec<(StateId, usize)>, stack: &mut Vec<usize>| {
        let slot = m * g.num_states() + s;
        if id[slot] == usize::MAX {
            id[slot] = b.add_state(format!("{}#{}", g.name(s), m), g.owner(s));
            if let Some(p) = g.priority(s) {
                b.set_priority(id[slot], p);
            }
            origin.push((s, m));
            stack.push(id[slot]);
        }
        id[slot]
    };
    let mut stack = Vec::new();
    let entry: Vec<StateId> = g.states().map(|s| visit(s, strat.initial[s], &mut b, &mut origin, &mut stack)).collect();
    let mut edge_origin = Vec::new();
    let mut pending = Vec::new();
    while let Some(p) = stack.pop() {
        let (s, m) = origin[p];
        let fixed = if g.owner(s) == strat.owner { strat.choice(g, m, s) } else { None };
        for &e in g.out_edges(s) {
            if fixed.is_some_and(|f| f != e) {
                continue;
            }
            let t = g.edge(e).target;
            let q = visit(t, strat.next_memory(g, m, e), &mut b, &mut origin, &mut stack);
            pending.push((p, q, e));
        }
    }
    pending.sort_unstable();
    for (p, q, e) in pending {
        let edge = g.edge(e);
        b.add_edge(p, q, edge.label, edge.reward.clone());
        edge_origin.push(e);
    }
    b.set_initial(entry[g.initial()]);
    let graph = b.build().expect("product of a valid strategy is a valid game");
    StrategyProduct { graph, origin, edge_origin, entry }
}
