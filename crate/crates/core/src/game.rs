use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::letter::Letter;

pub type StateId = usize;
pub type EdgeId = usize;

/// Player 1 maximizes the payoff, Player 2 minimizes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: StateId,
    pub target: StateId,
    pub label: Option<Letter>,
    pub reward: Vec<u64>,
}

/// Two-player game graph with natural reward vectors on edges and optional
/// state priorities. Every state has at least one successor and labels
/// are deterministic per source state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    names: Vec<String>,
    owners: Vec<Player>,
    initial: StateId,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    priorities: Option<Vec<u32>>,
    dim: usize,
}

#[derive(Clone, Debug)]
pub struct GameBuilder {
    names: Vec<String>,
    owners: Vec<Player>,
    initial: StateId,
    edges: Vec<Edge>,
    priorities: Vec<Option<u32>>,
    dim: usize,
}

impl GameBuilder {
    pub fn new(dim: usize) -> Self {
        GameBuilder { names: vec![], owners: vec![], initial: 0, edges: vec![], priorities: vec![], dim }
    }

    pub fn add_state(&mut self, name: impl Into<String>, owner: Player) -> StateId {
        self.names.push(name.into());
        self.owners.push(owner);
        self.priorities.push(None);
        self.names.len() - 1
    }

    pub fn set_priority(&mut self, s: StateId, p: u32) -> &mut Self {
        self.priorities[s] = Some(p);
        self
    }

    pub fn set_initial(&mut self, s: StateId) -> &mut Self {
        self.initial = s;
        self
    }

    pub fn add_edge(&mut self, source: StateId, target: StateId, label: Option<Letter>, reward: Vec<u64>) -> EdgeId {
        self.edges.push(Edge { source, target, label, reward });
        self.edges.len() - 1
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn map_labels(&mut self, f: impl Fn(Option<Letter>) -> Option<Letter>) {
        for e in &mut self.edges {
            e.label = f(e.label);
        }
    }

    pub fn build(self) -> Result<GameGraph> {
        let n = self.names.len();
        if n == 0 {
            return Err(Error::InvalidGraph("no states".into()));
        }
        if self.initial >= n {
            return Err(Error::InvalidGraph("initial state out of range".into()));
        }
        let mut out = vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return Err(Error::InvalidGraph(format!("edge {id} references a missing state")));
            }
            if e.reward.len() != self.dim {
                return Err(Error::DimensionMismatch(e.reward.len(), self.dim));
            }
            out[e.source].push(id);
        }
        for (s, es) in out.iter().enumerate() {
            if es.is_empty() {
                return Err(Error::InvalidGraph(format!("state {} has no outgoing edge", self.names[s])));
            }
            let mut seen = HashSet::new();
            for &e in es {
                if let Some(l) = self.edges[e].label {
                    if !seen.insert(l) {
                        return Err(Error::InvalidGraph(format!(
                            "nondeterministic labeling at state {}",
                            self.names[s]
                        )));
                    }
                }
            }
        }
        let priorities = if self.priorities.iter().all(Option::is_none) {
            None
        } else if self.priorities.iter().all(Option::is_some) {
            Some(self.priorities.into_iter().map(Option::unwrap).collect())
        } else {
            return Err(Error::InvalidGraph("priorities must be given for all states or none".into()));
        };
        Ok(GameGraph {
            names: self.names,
            owners: self.owners,
            initial: self.initial,
            edges: self.edges,
            out,
            priorities,
            dim: self.dim,
        })
    }
}

impl GameGraph {
    pub fn builder(dim: usize) -> GameBuilder {
        GameBuilder::new(dim)
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn owner(&self, s: StateId) -> Player {
        self.owners[s]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn out_edges(&self, s: StateId) -> &[EdgeId] {
        &self.out[s]
    }

    pub fn successors(&self, s: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.out[s].iter().map(move |&e| self.edges[e].target)
    }

    pub fn priorities(&self) -> Option<&[u32]> {
        self.priorities.as_deref()
    }

    pub fn priority(&self, s: StateId) -> Option<u32> {
        self.priorities.as_ref().map(|p| p[s])
    }

    pub fn has_priorities(&self) -> bool {
        self.priorities.is_some()
    }

    /// Priority with the convention that a graph without priorities is
    /// uniformly even.
    pub(crate) fn prio_or_zero(&self, s: StateId) -> u32 {
        self.priority(s).unwrap_or(0)
    }

    pub fn max_priority(&self) -> u32 {
        self.priorities.as_ref().and_then(|p| p.iter().copied().max()).unwrap_or(0)
    }

    /// Largest reward per component over all edges.
    pub fn max_rewards(&self) -> Vec<u64> {
        let mut m = vec![0; self.dim];
        for e in &self.edges {
            for (x, &r) in m.iter_mut().zip(&e.reward) {
                *x = (*x).max(r);
            }
        }
        m
    }

    /// Adjacency as successor lists, following only edges accepted by `keep`.
    pub(crate) fn adjacency(&self, keep: impl Fn(EdgeId) -> bool) -> Vec<Vec<StateId>> {
        let mut adj = vec![Vec::new(); self.num_states()];
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id) {
                adj[e.source].push(e.target);
            }
        }
        adj
    }

    pub fn to_builder(&self) -> GameBuilder {
        GameBuilder {
            names: self.names.clone(),
            owners: self.owners.clone(),
            initial: self.initial,
            edges: self.edges.clone(),
            priorities: match &self.priorities {
                Some(p) => p.iter().map(|&x| Some(x)).collect(),
                None => vec![None; self.num_states()],
            },
            dim: self.dim,
        }
    }

    /// Same states, only the edges accepted by `keep`. Returns the new graph
    /// and, for every new edge id, the original edge id.
    pub fn edge_subgraph(&self, keep: impl Fn(EdgeId) -> bool) -> Result<(GameGraph, Vec<EdgeId>)> {
        let mut b = self.to_builder();
        b.edges.clear();
        let mut map = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id) {
                b.edges.push(e.clone());
                map.push(id);
            }
        }
        Ok((b.build()?, map))
    }

    /// Subgame induced by a state set. Edges leaving the set are dropped;
    /// every kept state must retain a successor. Returns the graph, the
    /// original id of each new state and the original id of each new edge.
    pub fn induced(&self, keep: &[bool]) -> Result<(GameGraph, Vec<StateId>, Vec<EdgeId>)> {
        let states: Vec<StateId> = self.states().filter(|&s| keep[s]).collect();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &s) in states.iter().enumerate() {
            index[s] = i;
        }
        let mut b = GameBuilder::new(self.dim);
        for &s in &states {
            let id = b.add_state(self.names[s].clone(), self.owners[s]);
            if let Some(p) = self.priority(s) {
                b.set_priority(id, p);
            }
        }
        if keep[self.initial] {
            b.set_initial(index[self.initial]);
        }
        let mut emap = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep[e.source] && keep[e.target] {
                b.add_edge(index[e.source], index[e.target], e.label, e.reward.clone());
                emap.push(id);
            }
        }
        Ok((b.build()?, states, emap))
    }

    /// Copy with the priorities removed.
    pub fn without_priorities(&self) -> GameGraph {
        let mut g = self.clone();
        g.priorities = None;
        g
    }

    /// Copy with the priority of every state `s` set to `f(s)`.
    pub fn with_priorities(&self, f: impl Fn(StateId) -> u32) -> GameGraph {
        let mut g = self.clone();
        g.priorities = Some(self.states().map(f).collect());
        g
    }

    /// The dual game: owners exchanged and every reward component replaced by
    /// `max - r`, so that maximizing the new rewards is minimizing the old
    /// ones. Returns the graph and the per-component offsets `max`.
    pub fn role_swapped(&self) -> (GameGraph, Vec<u64>) {
        let max = self.max_rewards();
        let mut g = self.clone();
        for o in &mut g.owners {
            *o = o.opponent();
        }
        for e in &mut g.edges {
            for (r, &m) in e.reward.iter_mut().zip(&max) {
                *r = m - *r;
            }
        }
        (g, max)
    }

    /// Structural isomorphism check: a bijection of states preserving the
    /// initial state, owners, priorities and the multiset of
    /// (label, reward, target) per state. Backtracking; intended for small
    /// graphs.
    pub fn is_isomorphic(&self, other: &GameGraph) -> bool {
        if self.num_states() != other.num_states()
            || self.num_edges() != other.num_edges()
            || self.dim != other.dim
            || self.has_priorities() != other.has_priorities()
        {
            return false;
        }
        let n = self.num_states();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.initial] = other.initial;
        used[other.initial] = true;
        if !self.compatible(other, self.initial, other.initial) {
            return false;
        }
        let order: Vec<StateId> = std::iter::once(self.initial).chain(self.states().filter(|&s| s != self.initial)).collect();
        self.iso_search(other, &order, 1, &mut map, &mut used) && self.iso_edges_ok(other, &map)
    }

    fn compatible(&self, other: &GameGraph, a: StateId, b: StateId) -> bool {
        let sig = |g: &GameGraph, s: StateId| {
            let mut r: Vec<(Option<Letter>, Vec<u64>)> =
                g.out[s].iter().map(|&e| (g.edges[e].label, g.edges[e].reward.clone())).collect();
            r.sort();
            r
        };
        self.owners[a] == other.owners[b] && self.priority(a) == other.priority(b) && sig(self, a) == sig(other, b)
    }

    fn iso_search(&self, other: &GameGraph, order: &[StateId], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if i == order.len() {
            return self.iso_edges_ok(other, map);
        }
        let a = order[i];
        for b in other.states() {
            if used[b] || !self.compatible(other, a, b) {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if self.iso_search(other, order, i + 1, map, used) {
                return true;
            }
            map[a] = usize::MAX;
            used[b] = false;
        }
        false
    }

    fn iso_edges_ok(&self, other: &GameGraph, map: &[usize]) -> bool {
        self.states().all(|s| {
            let mut mine: Vec<_> = self.out[s]
                .iter()
                .map(|&e| (self.edges[e].label, self.edges[e].reward.clone(), map[self.edges[e].target]))
                .collect();
            let mut theirs: Vec<_> = other.out[map[s]]
                .iter()
                .map(|&e| (other.edges[e].label, other.edges[e].reward.clone(), other.edges[e].target))
                .collect();
            mine.sort();
            theirs.sort();
            mine == theirs
        })
    }
}
