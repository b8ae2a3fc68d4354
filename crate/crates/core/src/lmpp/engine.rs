use std::time::Instant;

use num::{BigInt, One, Zero};
use rayon::prelude::*;

use super::evaluate::evaluate_trusted;
use super::three_phase_unchecked;
use crate::error::{Error, Result};
use crate::game::{GameGraph, Player, StateId};
use crate::lexmp::lex_mp_solve;
use crate::parity::{attractor, solve_parity};
use crate::strategy::{FiniteMemoryStrategy, MemorylessStrategy};
use crate::value::{LexValue, Rational};

#[derive(Clone, Debug)]
pub struct LmppOptions {
    /// Largest memory size enumerated exhaustively.
    pub memory_cap: usize,
    /// Enumeration levels with more candidates than this are skipped.
    pub candidate_budget: u64,
    /// Largest phase length tried for three-phase candidates.
    pub k_cap: usize,
    pub deadline: Option<Instant>,
    /// Worker threads for candidate evaluation; results do not depend on it.
    pub jobs: usize,
}

impl Default for LmppOptions {
    fn default() -> Self {
        LmppOptions { memory_cap: 8, candidate_budget: 20_000, k_cap: 256, deadline: None, jobs: 1 }
    }
}

/// Values bracketed by exact evaluations of explicit strategies. `lower`
/// is attained by `p1_witness` and `upper` by `p2_witness`; `values` is
/// `upper`. A state is certified when the bracket pins the value down
/// exactly, either because the bounds meet or because `upper` is the only
/// candidate on the grid of rationals with denominator at most `|S|`.
#[derive(Clone, Debug)]
pub struct CertifiedSolution {
    pub values: Vec<LexValue>,
    pub lower: Vec<LexValue>,
    pub upper: Vec<LexValue>,
    pub certified: Vec<bool>,
    pub p1_witness: FiniteMemoryStrategy,
    pub p2_witness: FiniteMemoryStrategy,
    /// Set when an enumeration level was skipped or the deadline hit.
    pub truncated: bool,
    dim: usize,
}

impl CertifiedSolution {
    pub fn all_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    /// Distance bound between the value and the Player 1 guarantee: zero
    /// when certified, `None` when the lower bound is still bottom.
    pub fn gap(&self, s: StateId) -> Option<Vec<Rational>> {
        if self.certified[s] {
            return Some(vec![Rational::zero(); self.dim]);
        }
        self.upper[s].sub(&self.lower[s])
    }
}

struct Runner {
    pool: Option<rayon::ThreadPool>,
}

impl Runner {
    fn new(jobs: usize) -> Self {
        let pool = (jobs > 1).then(|| rayon::ThreadPoolBuilder::new().num_threads(jobs).build().ok()).flatten();
        Runner { pool }
    }

    fn eval(&self, g: &GameGraph, cands: &[FiniteMemoryStrategy]) -> Vec<Vec<LexValue>> {
        match &self.pool {
            Some(p) => p.install(|| cands.par_iter().map(|c| evaluate_trusted(g, c)).collect()),
            None => cands.iter().map(|c| evaluate_trusted(g, c)).collect(),
        }
    }
}

/// Whether `lower <= value <= upper` forces `value == upper`.
fn pinned(lower: &LexValue, upper: &LexValue, n: usize) -> bool {
    match (lower, upper) {
        (_, LexValue::Bottom) => true,
        (LexValue::Bottom, _) => false,
        (LexValue::Vector(l), LexValue::Vector(u)) => {
            let Some(i) = (0..l.len()).find(|&i| l[i] != u[i]) else { return true };
            let n = BigInt::from(n);
            let width = Rational::new(BigInt::one(), &n * &n);
            &u[i] - &l[i] < width && u[i].denom() <= &n && u[i + 1..].iter().all(Zero::is_zero)
        }
    }
}

struct Bounds<'a> {
    g: &'a GameGraph,
    lower: Vec<LexValue>,
    upper: Vec<LexValue>,
    best1: Vec<usize>,
    best2: Vec<usize>,
    p1: Vec<FiniteMemoryStrategy>,
    p2: Vec<FiniteMemoryStrategy>,
}

impl<'a> Bounds<'a> {
    fn new(g: &'a GameGraph, s1: FiniteMemoryStrategy, v1: Vec<LexValue>, s2: FiniteMemoryStrategy, v2: Vec<LexValue>) -> Self {
        let n = g.num_states();
        Bounds { g, lower: v1, upper: v2, best1: vec![0; n], best2: vec![0; n], p1: vec![s1], p2: vec![s2] }
    }

    /// Record a candidate; returns whether any bound improved.
    fn offer(&mut self, s: FiniteMemoryStrategy, vals: Vec<LexValue>) -> bool {
        let mut improved = false;
        let idx = match s.owner {
            Player::P1 => self.p1.len(),
            Player::P2 => self.p2.len(),
        };
        for (st, v) in vals.into_iter().enumerate() {
            match s.owner {
                Player::P1 if v > self.lower[st] => {
                    self.lower[st] = v;
                    self.best1[st] = idx;
                    improved = true;
                }
                Player::P2 if v < self.upper[st] => {
                    self.upper[st] = v;
                    self.best2[st] = idx;
                    improved = true;
                }
                _ => {}
            }
        }
        if improved {
            match s.owner {
                Player::P1 => self.p1.push(s),
                Player::P2 => self.p2.push(s),
            }
        }
        improved
    }

    fn certified(&self) -> Vec<bool> {
        let n = self.g.num_states();
        self.g.states().map(|s| pinned(&self.lower[s], &self.upper[s], n)).collect()
    }

    fn done(&self) -> bool {
        self.certified().iter().all(|&c| c)
    }

    fn finish(self, truncated: bool) -> CertifiedSolution {
        let certified = self.certified();
        let w1: Vec<&FiniteMemoryStrategy> = self.p1.iter().collect();
        let w2: Vec<&FiniteMemoryStrategy> = self.p2.iter().collect();
        CertifiedSolution {
            p1_witness: FiniteMemoryStrategy::union(self.g, &w1, &self.best1).trimmed(self.g),
            p2_witness: FiniteMemoryStrategy::union(self.g, &w2, &self.best2).trimmed(self.g),
            values: self.upper.clone(),
            lower: self.lower,
            upper: self.upper,
            certified,
            truncated,
            dim: self.g.dim(),
        }
    }
}

fn all_even(g: &GameGraph) -> bool {
    g.states().all(|s| g.prio_or_zero(s).is_multiple_of(2))
}

fn past(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Strategies with `m` memory states whose memory update observes only the
/// state reached, in a fixed enumeration order.
struct MemoryLevel<'a> {
    g: &'a GameGraph,
    player: Player,
    m: usize,
    owned: Vec<StateId>,
    count: Option<u64>,
}

impl<'a> MemoryLevel<'a> {
    fn new(g: &'a GameGraph, player: Player, m: usize) -> Self {
        let owned: Vec<StateId> = g.states().filter(|&s| g.owner(s) == player).collect();
        let mut count: Option<u64> = Some(1);
        for _ in 0..m {
            for &s in &owned {
                count = count.and_then(|c| c.checked_mul(g.out_edges(s).len() as u64));
            }
            if m > 1 {
                for _ in g.states() {
                    count = count.and_then(|c| c.checked_mul(m as u64));
                }
            }
        }
        MemoryLevel { g, player, m, owned, count }
    }

    fn get(&self, mut idx: u64) -> FiniteMemoryStrategy {
        let g = self.g;
        let (n, m) = (g.num_states(), self.m);
        let mut moves = vec![None; m * n];
        for j in (0..m).rev() {
            for &s in self.owned.iter().rev() {
                let d = g.out_edges(s).len() as u64;
                moves[j * n + s] = Some(g.out_edges(s)[(idx % d) as usize]);
                idx /= d;
            }
        }
        let mut next = vec![0; m * n];
        if m > 1 {
            for slot in next.iter_mut().rev() {
                *slot = (idx % m as u64) as usize;
                idx /= m as u64;
            }
        }
        let update = (0..m).flat_map(|j| g.edges().iter().map(move |e| (j, e.target))).map(|(j, t)| next[j * n + t]).collect();
        FiniteMemoryStrategy { owner: self.player, memory_size: m, initial: vec![0; n], update, moves }
    }
}

/// Template parameters: a memoryless strategy to dwell with, a target set
/// and a strategy attracting to it.
struct Family {
    mp: MemorylessStrategy,
    attr: MemorylessStrategy,
    target: Vec<bool>,
}

fn families(g: &GameGraph, dwell: &[MemorylessStrategy], fallback: &MemorylessStrategy) -> Vec<Family> {
    let mut qs: Vec<u32> = g.states().map(|s| g.prio_or_zero(s)).filter(|p| p % 2 == 0).collect();
    qs.sort_unstable();
    qs.dedup();
    let mut out: Vec<Family> = Vec::new();
    for q in qs {
        let target: Vec<bool> = g.states().map(|s| {
            let p = g.prio_or_zero(s);
            p.is_multiple_of(2) && p <= q
        }).collect();
        let a = attractor(g, Player::P1, &target);
        let moves = g
            .states()
            .map(|s| {
                if g.owner(s) != Player::P1 {
                    None
                } else if a.set[s] && !target[s] {
                    a.strategy.moves[s]
                } else {
                    fallback.moves[s]
                }
            })
            .collect();
        let attr = MemorylessStrategy { owner: Player::P1, moves };
        for mp in dwell {
            if !out.iter().any(|f| f.mp == *mp && f.target == target) {
                out.push(Family { mp: mp.clone(), attr: attr.clone(), target: target.clone() });
            }
        }
    }
    out
}

/// Memoryless seeds shared by the engine and the strategy searches.
struct Seeds {
    regions_p1: MemorylessStrategy,
    regions_p2: MemorylessStrategy,
    mp_p1: Option<MemorylessStrategy>,
    mp_p2: Option<MemorylessStrategy>,
}

fn seeds(g: &GameGraph) -> Result<Seeds> {
    let regions = solve_parity(g)?;
    let (mp_p1, mp_p2) = match lex_mp_solve(&g.without_priorities()) {
        Ok(sol) => (Some(sol.p1), Some(sol.p2)),
        Err(Error::ResourceCap(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(Seeds { regions_p1: regions.strat1, regions_p2: regions.strat2, mp_p1, mp_p2 })
}

impl Seeds {
    fn dwell(&self) -> Vec<MemorylessStrategy> {
        self.mp_p1.iter().cloned().chain(std::iter::once(self.regions_p1.clone())).collect()
    }
}

/// Solve a lexicographic mean-payoff parity game by bracketing every value
/// between exactly evaluated strategies of both players.
pub fn solve_lmpp(g: &GameGraph, opts: &LmppOptions) -> Result<CertifiedSolution> {
    if !g.has_priorities() || all_even(g) {
        let sol = lex_mp_solve(g)?;
        let w1 = FiniteMemoryStrategy::from_memoryless(g, &sol.p1);
        let w2 = FiniteMemoryStrategy::from_memoryless(g, &sol.p2);
        return Ok(Bounds::new(g, w1, sol.values.clone(), w2, sol.values).finish(false));
    }
    let runner = Runner::new(opts.jobs);
    let seeds = seeds(g)?;
    let s1 = FiniteMemoryStrategy::from_memoryless(g, &seeds.regions_p1);
    let s2 = FiniteMemoryStrategy::from_memoryless(g, &seeds.regions_p2);
    let (v1, v2) = (evaluate_trusted(g, &s1), evaluate_trusted(g, &s2));
    let mut b = Bounds::new(g, s1, v1, s2, v2);
    let mut truncated = false;

    let offer_all = |b: &mut Bounds<'_>, cands: Vec<FiniteMemoryStrategy>| {
        let vals = runner.eval(g, &cands);
        let mut any = false;
        for (c, v) in cands.into_iter().zip(vals) {
            any |= b.offer(c, v);
        }
        any
    };

    let mp: Vec<FiniteMemoryStrategy> =
        [&seeds.mp_p1, &seeds.mp_p2].into_iter().flatten().map(|s| FiniteMemoryStrategy::from_memoryless(g, s)).collect();
    offer_all(&mut b, mp);
    if b.done() {
        return Ok(b.finish(false));
    }

    for player in [Player::P2, Player::P1] {
        truncated |= !enumerate_level(g, opts, &MemoryLevel::new(g, player, 1), &mut |c| offer_all(&mut b, c));
    }

    let fams = families(g, &seeds.dwell(), &seeds.regions_p1);
    // A family is dropped once two doublings of K in a row leave its own
    // value unchanged; short dwell phases can tie with memoryless play.
    let mut live = vec![true; fams.len()];
    let mut stalls = vec![0; fams.len()];
    let mut last: Vec<Option<Vec<LexValue>>> = vec![None; fams.len()];
    let mut k = 1;
    while k <= opts.k_cap && !b.done() && live.iter().any(|&x| x) {
        if past(opts.deadline) {
            return Ok(b.finish(true));
        }
        let idx: Vec<usize> = (0..fams.len()).filter(|&i| live[i]).collect();
        let cands: Vec<FiniteMemoryStrategy> =
            idx.iter().map(|&i| three_phase_unchecked(g, &fams[i].mp, &fams[i].attr, k, &fams[i].target)).collect();
        let vals = runner.eval(g, &cands);
        for ((i, c), v) in idx.into_iter().zip(cands).zip(vals) {
            let better = last[i].as_ref().is_none_or(|prev| v.iter().zip(prev).any(|(x, y)| x > y));
            stalls[i] = if better { 0 } else { stalls[i] + 1 };
            live[i] = stalls[i] < 2;
            last[i] = Some(v.clone());
            b.offer(c, v);
        }
        k *= 2;
    }

    let mut m = 2;
    while m <= opts.memory_cap && !b.done() {
        for player in [Player::P2, Player::P1] {
            if b.done() {
                break;
            }
            if past(opts.deadline) {
                return Ok(b.finish(true));
            }
            truncated |= !enumerate_level(g, opts, &MemoryLevel::new(g, player, m), &mut |c| offer_all(&mut b, c));
        }
        m += 1;
    }
    Ok(b.finish(truncated))
}

/// Feed every candidate of a level to `sink` in chunks. Returns false when
/// the level was skipped or cut short.
fn enumerate_level(
    g: &GameGraph,
    opts: &LmppOptions,
    level: &MemoryLevel<'_>,
    sink: &mut dyn FnMut(Vec<FiniteMemoryStrategy>) -> bool,
) -> bool {
    let _ = g;
    let Some(count) = level.count.filter(|&c| c <= opts.candidate_budget) else { return false };
    let chunk = 256u64;
    let mut start = 0;
    while start < count {
        if past(opts.deadline) {
            return false;
        }
        let end = (start + chunk).min(count);
        sink((start..end).map(|i| level.get(i)).collect());
        start = end;
    }
    true
}

/// A Player 1 strategy together with its exact guaranteed values.
#[derive(Clone, Debug)]
pub struct EpsilonStrategy {
    pub strategy: FiniteMemoryStrategy,
    pub guaranteed: Vec<LexValue>,
    pub values: Vec<LexValue>,
}

/// Search Player 1 candidates in order of increasing complexity until, for
/// every state, some candidate's value is accepted. Memoryless strategies
/// come first, then three-phase strategies with growing phase length, then
/// larger memories.
fn search_p1(
    g: &GameGraph,
    opts: &LmppOptions,
    accept: &dyn Fn(StateId, &LexValue) -> bool,
) -> Result<Option<FiniteMemoryStrategy>> {
    let runner = Runner::new(opts.jobs);
    let n = g.num_states();
    let mut found: Vec<Option<usize>> = vec![None; n];
    let mut kept: Vec<FiniteMemoryStrategy> = Vec::new();
    let consider = |found: &mut Vec<Option<usize>>, kept: &mut Vec<FiniteMemoryStrategy>, cands: Vec<FiniteMemoryStrategy>| {
        let vals = runner.eval(g, &cands);
        for (c, v) in cands.into_iter().zip(vals) {
            let mut used = false;
            for s in 0..n {
                if found[s].is_none() && accept(s, &v[s]) {
                    found[s] = Some(kept.len());
                    used = true;
                }
            }
            if used {
                kept.push(c);
            }
        }
        found.iter().all(Option::is_some)
    };
    let finish = |found: &[Option<usize>], kept: &[FiniteMemoryStrategy]| {
        let parts: Vec<&FiniteMemoryStrategy> = kept.iter().collect();
        let pick: Vec<usize> = found.iter().map(|x| x.unwrap()).collect();
        FiniteMemoryStrategy::union(g, &parts, &pick).trimmed(g)
    };

    let seeds = if g.has_priorities() {
        seeds(g)?
    } else {
        let sol = lex_mp_solve(g)?;
        Seeds { regions_p1: sol.p1.clone(), regions_p2: sol.p2.clone(), mp_p1: Some(sol.p1), mp_p2: Some(sol.p2) }
    };
    let first: Vec<FiniteMemoryStrategy> =
        seeds.dwell().iter().map(|s| FiniteMemoryStrategy::from_memoryless(g, s)).collect();
    if consider(&mut found, &mut kept, first) {
        return Ok(Some(finish(&found, &kept)));
    }
    let level = MemoryLevel::new(g, Player::P1, 1);
    let mut complete = false;
    enumerate_level(g, opts, &level, &mut |c| {
        complete = complete || consider(&mut found, &mut kept, c);
        complete
    });
    if complete {
        return Ok(Some(finish(&found, &kept)));
    }
    let fams = families(g, &seeds.dwell(), &seeds.regions_p1);
    for k in 1..=opts.k_cap {
        if past(opts.deadline) {
            break;
        }
        let cands = fams.iter().map(|f| three_phase_unchecked(g, &f.mp, &f.attr, k, &f.target)).collect();
        if consider(&mut found, &mut kept, cands) {
            return Ok(Some(finish(&found, &kept)));
        }
    }
    for m in 2..=opts.memory_cap {
        let level = MemoryLevel::new(g, Player::P1, m);
        enumerate_level(g, opts, &level, &mut |c| {
            complete = complete || consider(&mut found, &mut kept, c);
            complete
        });
        if complete {
            return Ok(Some(finish(&found, &kept)));
        }
    }
    Ok(None)
}

/// A Player 1 strategy whose exact value is within `eps` of the game value
/// at every state (strictly above `value - eps` where the value is a vector).
pub fn epsilon_optimal_strategy(g: &GameGraph, eps: &[Rational], opts: &LmppOptions) -> Result<EpsilonStrategy> {
    if eps.len() != g.dim() {
        return Err(Error::DimensionMismatch(eps.len(), g.dim()));
    }
    if eps.iter().any(|e| *e <= Rational::zero()) {
        return Err(Error::InvalidArgument("epsilon must be positive in every component".into()));
    }
    let sol = solve_lmpp(g, opts)?;
    let goal: Vec<LexValue> = sol.values.iter().map(|v| v.minus(eps)).collect();
    let accept = |s: StateId, v: &LexValue| goal[s].is_bottom() || *v > goal[s];
    let strategy = search_p1(g, opts, &accept)?
        .ok_or_else(|| Error::ResourceCap("memory cap exhausted before reaching the requested precision".into()))?;
    let guaranteed = evaluate_trusted(g, &strategy);
    Ok(EpsilonStrategy { strategy, guaranteed, values: sol.values })
}

/// A Player 1 strategy guaranteeing at least `threshold` from `state`, if
/// one is found within the search limits.
pub fn p1_strategy_reaching(
    g: &GameGraph,
    state: StateId,
    threshold: &LexValue,
    opts: &LmppOptions,
) -> Result<Option<FiniteMemoryStrategy>> {
    let accept = |s: StateId, v: &LexValue| s != state || v >= threshold;
    search_p1(g, opts, &accept)
}

fn memoryless_matching(
    g: &GameGraph,
    opts: &LmppOptions,
    ok: &dyn Fn(&[LexValue]) -> bool,
) -> Result<Option<MemorylessStrategy>> {
    let level = MemoryLevel::new(g, Player::P1, 1);
    let count = level.count.filter(|&c| c <= opts.candidate_budget).ok_or_else(|| {
        Error::ResourceCap("too many memoryless strategies to enumerate".into())
    })?;
    for i in 0..count {
        if past(opts.deadline) {
            return Err(Error::ResourceCap("deadline reached".into()));
        }
        let c = level.get(i);
        if ok(&evaluate_trusted(g, &c)) {
            return Ok(Some(MemorylessStrategy { owner: Player::P1, moves: c.moves }));
        }
    }
    Ok(None)
}

/// A memoryless Player 1 strategy attaining the value at every state, if
/// one exists. When none exists no finite-memory optimal strategy exists
/// either.
pub fn has_memoryless_optimal(
    g: &GameGraph,
    sol: &CertifiedSolution,
    opts: &LmppOptions,
) -> Result<Option<MemorylessStrategy>> {
    if !sol.all_certified() {
        return Err(Error::Uncertified);
    }
    if !g.has_priorities() || all_even(g) {
        return Ok(Some(lex_mp_solve(g)?.p1));
    }
    memoryless_matching(g, opts, &|v| v == sol.values.as_slice())
}

/// As [`has_memoryless_optimal`], but only the value at `state` must be
/// attained.
pub fn memoryless_optimal_from(
    g: &GameGraph,
    sol: &CertifiedSolution,
    state: StateId,
    opts: &LmppOptions,
) -> Result<Option<MemorylessStrategy>> {
    if !sol.certified[state] {
        return Err(Error::Uncertified);
    }
    if !g.has_priorities() || all_even(g) {
        return Ok(Some(lex_mp_solve(g)?.p1));
    }
    memoryless_matching(g, opts, &|v| v[state] == sol.values[state])
}
