//! Line-oriented text formats for automata (`.qa`), games (`.game`) and
//! Mealy machines (`.mealy`), plus words and vectors on the command line.
//!
//! ```text
//! qa v1
//! inputs r
//! outputs g
//! dim 1
//! parity off
//! state q0 init
//! edge q0 q0 {r,-g} (0)
//! edge q0 q0 {*r,g} (1)
//! edge q0 q0 {-r,-g} (1)
//! ```
//!
//! In a letter, `s` sets a signal, `-s` clears it, `*s` takes both values
//! and a bare `*` lets every signal not mentioned take both values. Signals
//! not mentioned are false. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use num::{BigInt, Zero};

use crate::automata::{QuantAutomaton, Word};
use crate::error::{Error, FormatError, FormatErrorKind};
use crate::game::{GameBuilder, GameGraph, Player};
use crate::lasso::Lasso;
use crate::strategy::FiniteMemoryStrategy;
use crate::letter::{Alphabet, Letter};
use crate::mealy::MealyMachine;
use crate::value::{LexValue, Rational};

type Res<T> = std::result::Result<T, FormatError>;

/// A game together with the signals its edge letters range over.
#[derive(Clone, Debug)]
pub struct LabeledGame {
    pub alphabet: Alphabet,
    pub game: GameGraph,
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    column: usize,
}

#[derive(Debug)]
struct Line {
    number: usize,
    tokens: Vec<Token>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError { kind: FormatErrorKind::Syntax, line, column, message: message.into() }
}

fn validation(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError { kind: FormatErrorKind::Validation, line, column, message: message.into() }
}

fn from_error(e: Error) -> FormatError {
    match e {
        Error::Format(f) => f,
        other => validation(0, 0, other.to_string()),
    }
}

/// Split a line into words; `{...}` and `(...)` groups form one token each.
fn tokenize(number: usize, raw: &str) -> Res<Line> {
    let text = raw.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let close = match chars[i] {
            '{' => Some('}'),
            '(' => Some(')'),
            _ => None,
        };
        match close {
            Some(c) => {
                while i < chars.len() && chars[i] != c {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(syntax(number, start + 1, format!("unclosed '{}'", chars[start])));
                }
                i += 1;
            }
            None => {
                while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '{' && chars[i] != '(' {
                    i += 1;
                }
            }
        }
        tokens.push(Token { text: chars[start..i].iter().collect(), column: start + 1 });
    }
    Ok(Line { number, tokens })
}

fn lines(text: &str) -> Res<Vec<Line>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = tokenize(k + 1, raw)?;
        if !line.tokens.is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

/// Expand a letter pattern. Only signals whose bit is set in `allowed` may
/// be mentioned.
fn expand_letter(ab: &Alphabet, allowed: u64, tok: &str, line: usize, column: usize) -> Res<Vec<Letter>> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(line, column, format!("expected a letter, found '{tok}'")))?;
    let mut fixed = 0u64;
    let mut free = 0u64;
    let mut seen = 0u64;
    let mut rest_free = false;
    for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "*" {
            rest_free = true;
            continue;
        }
        let (name, wild, value) = match item.as_bytes()[0] {
            b'-' => (&item[1..], false, false),
            b'*' => (&item[1..], true, false),
            _ => (item, false, true),
        };
        let idx = ab
            .signal_index(name)
            .filter(|&i| allowed >> i & 1 == 1)
            .ok_or_else(|| syntax(line, column, format!("unknown signal '{name}' in {tok}")))?;
        if seen >> idx & 1 == 1 {
            return Err(syntax(line, column, format!("signal '{name}' mentioned twice in {tok}")));
        }
        seen |= 1 << idx;
        if wild {
            free |= 1 << idx;
        } else if value {
            fixed |= 1 << idx;
        }
    }
    if rest_free {
        free |= allowed & !seen;
    }
    let bits: Vec<u64> = (0..64).filter(|i| free >> i & 1 == 1).map(|i| 1u64 << i).collect();
    let mut out: Vec<Letter> = (0..1u64 << bits.len())
        .map(|mask| {
            let extra: u64 = bits.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, b)| b).sum();
            Letter(fixed | extra)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn parse_rewards(tok: &Token, dim: usize, line: usize) -> Res<Vec<u64>> {
    let inner = tok
        .text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| syntax(line, tok.column, format!("expected a reward vector, found '{}'", tok.text)))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if parts.len() != dim {
        return Err(validation(line, tok.column, format!("expected {dim} rewards, found {}", parts.len())));
    }
    parts
        .iter()
        .map(|p| p.parse::<u64>().map_err(|_| syntax(line, tok.column, format!("bad reward '{p}'"))))
        .collect()
}

#[derive(Default)]
struct Header {
    inputs: Vec<String>,
    outputs: Vec<String>,
    dim: Option<usize>,
    parity: bool,
}

struct StateDecl {
    name: String,
    owner: Option<Player>,
    init: bool,
    prio: Option<u32>,
    line: usize,
}

/// Common front end of the three formats: magic line, headers and states.
/// Remaining lines are returned for the format-specific pass.
fn front<'a>(ls: &'a [Line], magic: &str, owners: bool) -> Res<(Header, Vec<StateDecl>, Vec<&'a Line>)> {
    let first = ls.first().ok_or_else(|| syntax(1, 1, format!("empty document, expected '{magic} v1'")))?;
    let t: Vec<&str> = first.tokens.iter().map(|t| t.text.as_str()).collect();
    if t != [magic, "v1"] {
        return Err(syntax(first.number, 1, format!("expected '{magic} v1'")));
    }
    let mut h = Header::default();
    let mut states: Vec<StateDecl> = Vec::new();
    let mut rest = Vec::new();
    for l in &ls[1..] {
        let kw = &l.tokens[0];
        let args = &l.tokens[1..];
        match kw.text.as_str() {
            "inputs" => h.inputs = args.iter().map(|t| t.text.clone()).collect(),
            "outputs" => h.outputs = args.iter().map(|t| t.text.clone()).collect(),
            "dim" if magic != "mealy" => {
                let d = args
                    .first()
                    .filter(|_| args.len() == 1)
                    .and_then(|t| t.text.parse().ok())
                    .ok_or_else(|| syntax(l.number, kw.column, "expected 'dim <d>'"))?;
                h.dim = Some(d);
            }
            "parity" if magic != "mealy" => {
                h.parity = match args.iter().map(|t| t.text.as_str()).collect::<Vec<_>>()[..] {
                    ["on"] => true,
                    ["off"] => false,
                    _ => return Err(syntax(l.number, kw.column, "expected 'parity on|off'")),
                }
            }
            "state" => {
                let name = args.first().ok_or_else(|| syntax(l.number, kw.column, "state needs a name"))?;
                if states.iter().any(|s| s.name == name.text) {
                    return Err(validation(l.number, name.column, format!("state {} declared twice", name.text)));
                }
                let mut d = StateDecl { name: name.text.clone(), owner: None, init: false, prio: None, line: l.number };
                let mut k = 1;
                while k < args.len() {
                    let a = &args[k];
                    match a.text.as_str() {
                        "p1" if owners && d.owner.is_none() => d.owner = Some(Player::P1),
                        "p2" if owners && d.owner.is_none() => d.owner = Some(Player::P2),
                        "init" if !d.init => d.init = true,
                        "prio" if magic != "mealy" && d.prio.is_none() => {
                            k += 1;
                            let p = args
                                .get(k)
                                .and_then(|t| t.text.parse().ok())
                                .ok_or_else(|| syntax(l.number, a.column, "expected 'prio <n>'"))?;
                            d.prio = Some(p);
                        }
                        other => return Err(syntax(l.number, a.column, format!("unexpected '{other}'"))),
                    }
                    k += 1;
                }
                if owners && d.owner.is_none() {
                    return Err(syntax(l.number, name.column, "state needs an owner, p1 or p2"));
                }
                states.push(d);
            }
            _ => rest.push(l),
        }
    }
    if states.is_empty() {
        return Err(validation(0, 0, "no states declared"));
    }
    let inits: Vec<&StateDecl> = states.iter().filter(|s| s.init).collect();
    if inits.len() > 1 {
        return Err(validation(inits[1].line, 1, "more than one initial state"));
    }
    if magic != "mealy" {
        if h.dim.is_none() {
            return Err(syntax(first.number, 1, "missing 'dim' header"));
        }
        for s in &states {
            match (h.parity, s.prio) {
                (true, None) => return Err(validation(s.line, 1, format!("state {} needs a priority", s.name))),
                (false, Some(_)) => {
                    return Err(validation(s.line, 1, format!("priority on state {} with parity off", s.name)))
                }
                _ => {}
            }
        }
    }
    Ok((h, states, rest))
}

fn alphabet_of(h: &Header) -> Res<Alphabet> {
    Alphabet::new(h.inputs.iter().cloned(), h.outputs.iter().cloned()).map_err(from_error)
}

fn state_index(states: &[StateDecl], tok: Option<&Token>, line: usize) -> Res<usize> {
    let tok = tok.ok_or_else(|| syntax(line, 1, "missing state name"))?;
    states
        .iter()
        .position(|s| s.name == tok.text)
        .ok_or_else(|| validation(line, tok.column, format!("unknown state {}", tok.text)))
}

fn graph_body(
    h: &Header,
    ab: &Alphabet,
    states: &[StateDecl],
    rest: &[&Line],
    labels_required: bool,
) -> Res<GameGraph> {
    let dim = h.dim.unwrap_or(0);
    let mut b = GameBuilder::new(dim);
    for s in states {
        let id = b.add_state(s.name.clone(), s.owner.unwrap_or(Player::P1));
        if let Some(p) = s.prio {
            b.set_priority(id, p);
        }
    }
    b.set_initial(states.iter().position(|s| s.init).unwrap_or(0));
    let mut used = std::collections::HashSet::new();
    for l in rest {
        let kw = &l.tokens[0];
        if kw.text != "edge" {
            return Err(syntax(l.number, kw.column, format!("unexpected '{}'", kw.text)));
        }
        let src = state_index(states, l.tokens.get(1), l.number)?;
        let dst = state_index(states, l.tokens.get(2), l.number)?;
        let (letters, rtok) = match l.tokens.get(3) {
            Some(t) if t.text.starts_with('{') => {
                let ls = expand_letter(ab, full_mask(ab.num_signals()), &t.text, l.number, t.column)?;
                (ls.into_iter().map(Some).collect::<Vec<_>>(), l.tokens.get(4))
            }
            other if !labels_required => (vec![None], other),
            _ => return Err(syntax(l.number, kw.column, "edge needs a letter")),
        };
        let rtok = rtok.ok_or_else(|| syntax(l.number, kw.column, "edge needs a reward vector"))?;
        if l.tokens.len() > l.tokens.iter().position(|t| std::ptr::eq(t, rtok)).unwrap() + 1 {
            let extra = l.tokens.last().unwrap();
            return Err(syntax(l.number, extra.column, format!("unexpected '{}'", extra.text)));
        }
        let r = parse_rewards(rtok, dim, l.number)?;
        for &letter in letters.iter().flatten() {
            if !used.insert((src, letter)) {
                return Err(validation(
                    l.number,
                    kw.column,
                    format!("duplicate letter at state {}: {}", states[src].name, ab.display(letter)),
                ));
            }
        }
        for letter in letters {
            b.add_edge(src, dst, letter, r.clone());
        }
    }
    b.build().map_err(from_error)
}

pub fn parse_qa(text: &str) -> Result<QuantAutomaton, FormatError> {
    let ls = lines(text)?;
    let (h, states, rest) = front(&ls, "qa", false)?;
    let ab = alphabet_of(&h)?;
    let g = graph_body(&h, &ab, &states, &rest, true)?;
    let nl = ab.num_letters();
    let mut seen = vec![false; g.num_states() * nl];
    for edge in g.edges() {
        seen[edge.source * nl + edge.label.expect("labels required").0 as usize] = true;
    }
    for s in g.states() {
        if let Some(l) = (0..nl).find(|&l| !seen[s * nl + l]) {
            return Err(validation(
                states[s].line,
                1,
                format!("incomplete at state {}: {}", g.name(s), ab.display(Letter(l as u64))),
            ));
        }
    }
    QuantAutomaton::new(ab, g).map_err(from_error)
}

pub fn parse_game(text: &str) -> Result<LabeledGame, FormatError> {
    let ls = lines(text)?;
    let (h, states, rest) = front(&ls, "game", true)?;
    let alphabet = alphabet_of(&h)?;
    let game = graph_body(&h, &alphabet, &states, &rest, false)?;
    Ok(LabeledGame { alphabet, game })
}

pub fn parse_mealy(text: &str) -> Result<MealyMachine, FormatError> {
    let ls = lines(text)?;
    let (h, states, rest) = front(&ls, "mealy", false)?;
    let ab = alphabet_of(&h)?;
    let ni = ab.inputs().len();
    let in_mask = full_mask(ni);
    let out_mask = full_mask(ab.num_signals()) & !in_mask;
    let mut trans = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for l in rest {
        let t = &l.tokens;
        if t[0].text != "trans" {
            return Err(syntax(l.number, t[0].column, format!("unexpected '{}'", t[0].text)));
        }
        if t.len() != 6 || t[3].text != "->" {
            return Err(syntax(l.number, t[0].column, "expected 'trans <src> {<in>} -> {<out>} <dst>'"));
        }
        let src = state_index(&states, t.get(1), l.number)?;
        let dst = state_index(&states, t.get(5), l.number)?;
        let ins = expand_letter(&ab, in_mask, &t[2].text, l.number, t[2].column)?;
        let outs = expand_letter(&ab, out_mask, &t[4].text, l.number, t[4].column)?;
        if outs.len() != 1 {
            return Err(syntax(l.number, t[4].column, "an output letter cannot contain wildcards"));
        }
        let o = ab.output_part(outs[0]);
        for i in ins.into_iter().map(|l| ab.input_part(l)) {
            if seen.insert((src, i), l.number).is_some() {
                return Err(validation(
                    l.number,
                    t[2].column,
                    format!("duplicate transition at state {} on {}", states[src].name, ab.display_input(ab.join(i, 0))),
                ));
            }
            trans.push((src, i, o, dst));
        }
    }
    let names = states.iter().map(|s| s.name.clone()).collect();
    let init = states.iter().position(|s| s.init).unwrap_or(0);
    MealyMachine::new(ab, names, init, &trans).map_err(from_error)
}

fn header(out: &mut String, magic: &str, ab: &Alphabet) {
    let _ = writeln!(out, "{magic} v1");
    let _ = writeln!(out, "{}", std::iter::once("inputs").chain(ab.inputs().iter().map(String::as_str)).collect::<Vec<_>>().join(" "));
    let _ = writeln!(out, "{}", std::iter::once("outputs").chain(ab.outputs().iter().map(String::as_str)).collect::<Vec<_>>().join(" "));
}

fn rewards(r: &[u64]) -> String {
    format!("({})", r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

fn graph_text(out: &mut String, g: &GameGraph, ab: &Alphabet, owners: bool) {
    let _ = writeln!(out, "dim {}", g.dim());
    let _ = writeln!(out, "parity {}", if g.has_priorities() { "on" } else { "off" });
    for s in g.states() {
        let _ = write!(out, "state {}", g.name(s));
        if owners {
            out.push_str(if g.owner(s) == Player::P1 { " p1" } else { " p2" });
        }
        if s == g.initial() {
            out.push_str(" init");
        }
        if let Some(p) = g.priority(s) {
            let _ = write!(out, " prio {p}");
        }
        out.push('\n');
    }
    for e in g.edges() {
        let _ = write!(out, "edge {} {}", g.name(e.source), g.name(e.target));
        if let Some(l) = e.label {
            let _ = write!(out, " {}", ab.display(l));
        }
        let _ = writeln!(out, " {}", rewards(&e.reward));
    }
}

pub fn serialize_qa(a: &QuantAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, "qa", a.alphabet());
    graph_text(&mut out, a.graph(), a.alphabet(), false);
    out
}

pub fn serialize_game(g: &LabeledGame) -> String {
    let mut out = String::new();
    header(&mut out, "game", &g.alphabet);
    graph_text(&mut out, &g.game, &g.alphabet, true);
    out
}

pub fn serialize_mealy(m: &MealyMachine) -> String {
    let ab = m.alphabet();
    let mut out = String::new();
    header(&mut out, "mealy", ab);
    for q in 0..m.num_states() {
        let _ = writeln!(out, "state {}{}", m.name(q), if q == m.initial() { " init" } else { "" });
    }
    for (q, i, o, t) in m.transitions() {
        let _ = writeln!(
            out,
            "trans {} {} -> {} {}",
            m.name(q),
            ab.display_input(ab.join(i, 0)),
            ab.display_output(ab.join(0, o)),
            m.name(t)
        );
    }
    out
}

/// Parse `"p1 p2 | c1 c2"`: prefix letters, a bar, then cycle letters.
pub fn parse_word(ab: &Alphabet, text: &str) -> Result<Word, FormatError> {
    let line = tokenize(1, text)?;
    let bar = line
        .tokens
        .iter()
        .position(|t| t.text == "|")
        .ok_or_else(|| syntax(1, 1, "a word needs '|' between prefix and cycle"))?;
    let mut parts = [Vec::new(), Vec::new()];
    for (k, t) in line.tokens.iter().enumerate() {
        if k == bar {
            continue;
        }
        let ls = expand_letter(ab, full_mask(ab.num_signals()), &t.text, 1, t.column)?;
        if ls.len() != 1 {
            return Err(syntax(1, t.column, "word letters cannot contain wildcards"));
        }
        parts[usize::from(k > bar)].push(ls[0]);
    }
    let [prefix, cycle] = parts;
    if cycle.is_empty() {
        return Err(syntax(1, text.len().max(1), "the cycle of a word cannot be empty"));
    }
    Word::new(prefix, cycle).map_err(from_error)
}

/// Inverse of [`parse_word`].
pub fn format_word(ab: &Alphabet, w: &Word) -> String {
    let show = |ls: &[Letter]| ls.iter().map(|&l| ab.display(l).to_string()).collect::<Vec<_>>().join(" ");
    if w.prefix.is_empty() {
        format!("| {}", show(&w.cycle))
    } else {
        format!("{} | {}", show(&w.prefix), show(&w.cycle))
    }
}

/// States visited by a lasso: the prefix, a bar, then one turn of the cycle.
pub fn format_lasso(g: &GameGraph, l: &Lasso) -> String {
    let mut parts = vec![g.name(l.start).to_string()];
    parts.extend(l.prefix.iter().map(|&e| g.name(g.edge(e).target).to_string()));
    parts.pop();
    parts.push("|".into());
    parts.extend(l.cycle.iter().map(|&e| g.name(g.edge(e).source).to_string()));
    parts.join(" ")
}

/// Human-readable listing of a finite-memory strategy; edges are given by
/// their index in the game file.
pub fn serialize_strategy(g: &GameGraph, s: &FiniteMemoryStrategy) -> String {
    let mut out = String::from("strategy v1\n");
    let _ = writeln!(out, "owner {}", if s.owner == Player::P1 { "p1" } else { "p2" });
    let _ = writeln!(out, "memory {}", s.memory_size);
    for st in g.states() {
        let _ = writeln!(out, "initial {} {}", g.name(st), s.initial[st]);
    }
    for m in 0..s.memory_size {
        for st in g.states().filter(|&st| g.owner(st) == s.owner) {
            if let Some(e) = s.choice(g, m, st) {
                let _ = writeln!(out, "move {m} {} e{e} -> {}", g.name(st), g.name(g.edge(e).target));
            }
        }
    }
    if s.memory_size > 1 {
        for m in 0..s.memory_size {
            for e in 0..g.num_edges() {
                let _ = writeln!(out, "update {m} e{e} {}", s.next_memory(g, m, e));
            }
        }
    }
    out
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (!d.is_zero()).then(|| Rational::new(n, d))
}

/// Parse `"(x1,...,xd)"` with integer or fractional entries.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, FormatError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| syntax(1, 1, format!("expected '(x1,...,xd)', found '{t}'")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).ok_or_else(|| syntax(1, 1, format!("bad rational '{s}'"))))
        .collect()
}

/// A vector, or `bot` for the bottom value.
pub fn parse_value(text: &str) -> Result<LexValue, FormatError> {
    if text.trim() == "bot" {
        return Ok(LexValue::Bottom);
    }
    parse_vector(text).map(LexValue::Vector)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = "qa v1\ninputs r\noutputs g\ndim 1\nparity off\nstate q0 init\n\
        edge q0 q0 {r,-g} (0)\nedge q0 q0 {*r,g} (1)\nedge q0 q0 {-r,-g} (1)\n";

    #[test]
    fn wildcards_expand() {
        let a = parse_qa(A1).unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.graph().num_edges(), 4);
    }

    #[test]
    fn incomplete_reports_letter() {
        let text = A1.replace("edge q0 q0 {r,-g} (0)\n", "");
        let e = parse_qa(&text).unwrap_err();
        assert_eq!(e.message, "incomplete at state q0: {r,-g}");
        assert_eq!(e.line, 6);
    }

    #[test]
    fn duplicate_letter_rejected() {
        let text = format!("{A1}edge q0 q0 {{r,g}} (0)\n");
        let e = parse_qa(&text).unwrap_err();
        assert!(e.message.starts_with("duplicate letter"), "{e}");
        assert_eq!(e.line, 10);
    }

    #[test]
    fn dangling_state() {
        let text = A1.replace("edge q0 q0 {r,-g}", "edge q0 q9 {r,-g}");
        let e = parse_qa(&text).unwrap_err();
        assert_eq!((e.line, e.column), (7, 9));
        assert!(e.message.contains("q9"));
    }

    #[test]
    fn qa_round_trip() {
        let a = parse_qa(A1).unwrap();
        let b = parse_qa(&serialize_qa(&a)).unwrap();
        assert_eq!(serialize_qa(&a), serialize_qa(&b));
        assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn words_and_vectors() {
        let ab = Alphabet::new(["r"], ["g"]).unwrap();
        let w = parse_word(&ab, "| {r} {g} {}").unwrap();
        assert!(w.prefix.is_empty());
        assert_eq!(w.cycle, vec![Letter(1), Letter(2), Letter(0)]);
        assert!(parse_word(&ab, "{r}").is_err());
        assert!(parse_word(&ab, "| {*r}").is_err());
        let v = parse_vector("(1/2, 3)").unwrap();
        assert_eq!(v, vec![Rational::new(1.into(), 2.into()), Rational::from_integer(3.into())]);
        assert_eq!(parse_value("bot").unwrap(), LexValue::Bottom);
        assert!(parse_vector("(1/0)").is_err());
        let w = parse_word(&ab, "{r} | {g} {}").unwrap();
        assert_eq!(format_word(&ab, &w), "{r,-g} | {-r,g} {-r,-g}");
        assert_eq!(parse_word(&ab, &format_word(&ab, &w)).unwrap(), w);
    }

    #[test]
    fn mealy_round_trip() {
        let text = "mealy v1\ninputs r\noutputs g\nstate m0 init\ntrans m0 {*} -> {g} m0\n";
        let m = parse_mealy(text).unwrap();
        assert_eq!(m.transitions().count(), 2);
        let again = parse_mealy(&serialize_mealy(&m)).unwrap();
        assert_eq!(m, again);
        assert!(parse_mealy("mealy v1\ninputs r\noutputs g\nstate m0\ntrans m0 {r} -> {*} m0\n").is_err());
    }

    #[test]
    fn game_without_letters() {
        let text = "game v1\ndim 1\nparity on\nstate a p1 init prio 0\nstate b p2 prio 1\n\
            edge a b (1)\nedge b a (0)\nedge b b (2)\n";
        let g = parse_game(text).unwrap();
        assert_eq!(g.game.num_edges(), 3);
        let again = parse_game(&serialize_game(&g)).unwrap();
        assert!(g.game.is_isomorphic(&again.game));
    }
}
