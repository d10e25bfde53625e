//! Büchi acceptance of lassos, exact and bounded.
//!
//! On a lasso `u·v^ω` a machine run lives in the finite wheel graph whose
//! nodes pair a configuration with a position in `u·v` (positions inside `v`
//! wrap). A run is accepting iff some accepting node lies on a reachable
//! cycle that consumes at least one letter. For k = 0 the wheel graph is the
//! whole story and the decision is exact. With counters the graph is explored
//! up to a counter cap; answers are then three-valued:
//!
//! * `Accept` is backed by a reachable accepting loop whose counter effects
//!   can repeat forever (each counter's net effect ≥ 0, and 0 for counters
//!   that are zero-tested inside the loop),
//! * `Reject` is only reported when the exploration was exhaustive: no branch
//!   was cut by the cap or the horizon, so the capped graph is closed and the
//!   cycle criterion is complete,
//! * everything else is `Unknown`. Enlarging the bounds never flips between
//!   `Accept` and `Reject`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::machine::{Config, CounterMachine};
use crate::run::Bounds;
use crate::word::{FiniteWord, Lasso, Letter};

/// Three-valued verdict for bounded acceptance questions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Tv {
    Accept,
    Reject,
    Unknown,
}

impl Tv {
    pub fn from_bool(b: bool) -> Tv {
        if b {
            Tv::Accept
        } else {
            Tv::Reject
        }
    }

    /// Kleene disjunction.
    pub fn or3(self, other: Tv) -> Tv {
        match (self, other) {
            (Tv::Accept, _) | (_, Tv::Accept) => Tv::Accept,
            (Tv::Reject, Tv::Reject) => Tv::Reject,
            _ => Tv::Unknown,
        }
    }

    /// Kleene conjunction.
    pub fn and3(self, other: Tv) -> Tv {
        match (self, other) {
            (Tv::Reject, _) | (_, Tv::Reject) => Tv::Reject,
            (Tv::Accept, Tv::Accept) => Tv::Accept,
            _ => Tv::Unknown,
        }
    }

    pub fn not3(self) -> Tv {
        match self {
            Tv::Accept => Tv::Reject,
            Tv::Reject => Tv::Accept,
            Tv::Unknown => Tv::Unknown,
        }
    }

    /// True iff the two verdicts never claim opposite definite answers.
    pub fn consistent_with(self, other: Tv) -> bool {
        !matches!(
            (self, other),
            (Tv::Accept, Tv::Reject) | (Tv::Reject, Tv::Accept)
        )
    }
}

impl fmt::Display for Tv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tv::Accept => "ACCEPT",
            Tv::Reject => "REJECT",
            Tv::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcceptError {
    /// The exact decision only exists for finite Büchi automata (k = 0).
    CountersPresent(usize),
    UnknownLetter(String),
}

impl fmt::Display for AcceptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptError::CountersPresent(k) => {
                write!(f, "machine has {k} counters, exact decision needs k = 0")
            }
            AcceptError::UnknownLetter(l) => write!(f, "letter '{l}' not in the machine alphabet"),
        }
    }
}

fn check_letters(m: &CounterMachine, l: &Lasso) -> Result<(), AcceptError> {
    for w in [l.spoke(), l.cycle()] {
        for letter in w.iter() {
            if !m.alphabet().contains(letter) {
                return Err(AcceptError::UnknownLetter(letter.as_str().into()));
            }
        }
    }
    Ok(())
}

/// The wheel: positions 0..|u|+|v| with letters of `u·v`, wrapping inside `v`.
struct Wheel {
    letters: Vec<Letter>,
    spoke_len: usize,
}

impl Wheel {
    fn new(l: &Lasso) -> Self {
        let mut letters: Vec<Letter> = l.spoke().iter().cloned().collect();
        letters.extend(l.cycle().iter().cloned());
        Wheel { letters, spoke_len: l.spoke().len() }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn next(&self, pos: usize) -> usize {
        if pos + 1 == self.letters.len() {
            self.spoke_len
        } else {
            pos + 1
        }
    }

    fn letter(&self, pos: usize) -> &Letter {
        &self.letters[pos]
    }
}

/// Exact Büchi acceptance of a lasso by a finite automaton (k = 0).
pub fn lasso_accepts_buchi(m: &CounterMachine, l: &Lasso) -> Result<bool, AcceptError> {
    if m.k() != 0 {
        return Err(AcceptError::CountersPresent(m.k()));
    }
    check_letters(m, l)?;
    let wheel = Wheel::new(l);
    let w = wheel.len();
    let node = |state: usize, pos: usize| state * w + pos;
    // Edge lists over state×position nodes; bool marks letter edges.
    let mut edges: Vec<Vec<(usize, bool)>> = alloc::vec![Vec::new(); m.state_count() * w];
    for pos in 0..w {
        let letter = wheel.letter(pos);
        let next = wheel.next(pos);
        for r in m.rules() {
            match &r.label {
                None => edges[node(r.from, pos)].push((node(r.to, pos), false)),
                Some(l) if l == letter => edges[node(r.from, pos)].push((node(r.to, next), true)),
                Some(_) => {}
            }
        }
    }
    let mut reachable = alloc::vec![false; m.state_count() * w];
    let start = node(m.initial(), 0);
    reachable[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        for &(t, _) in &edges[n] {
            if !reachable[t] {
                reachable[t] = true;
                queue.push_back(t);
            }
        }
    }
    // A cycle through an accepting node must consume at least one letter:
    // pure λ-cycles read only finitely many letters and are not runs on the
    // ω-word.
    for state in m.accepting().iter().copied() {
        for pos in 0..w {
            let n = node(state, pos);
            if !reachable[n] {
                continue;
            }
            if cycle_with_letter(&edges, n) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Is there a cycle through `start` containing at least one letter edge?
fn cycle_with_letter(edges: &[Vec<(usize, bool)>], start: usize) -> bool {
    // Search over (node, saw-letter) pairs.
    let n = edges.len();
    let mut seen = alloc::vec![false; 2 * n];
    let mut queue: VecDeque<(usize, bool)> = VecDeque::new();
    for &(t, is_letter) in &edges[start] {
        let idx = t * 2 + is_letter as usize;
        if !seen[idx] {
            seen[idx] = true;
            queue.push_back((t, is_letter));
        }
    }
    while let Some((v, flag)) = queue.pop_front() {
        if v == start && flag {
            return true;
        }
        for &(t, is_letter) in &edges[v] {
            let f2 = flag || is_letter;
            let idx = t * 2 + f2 as usize;
            if !seen[idx] {
                seen[idx] = true;
                queue.push_back((t, f2));
            }
        }
    }
    false
}

/// Bounded three-valued acceptance for counter machines on a lasso.
pub fn lasso_accepts_counter(
    m: &CounterMachine,
    l: &Lasso,
    bounds: &Bounds,
) -> Result<Tv, AcceptError> {
    check_letters(m, l)?;
    let wheel = Wheel::new(l);

    // Phase 1: explore the capped configuration wheel graph.
    let mut ids: BTreeMap<(Config, usize), usize> = BTreeMap::new();
    let mut nodes: Vec<(Config, usize)> = Vec::new();
    // (target, consumed a letter, bitmask of zero-tested counters on the rule)
    let mut edges: Vec<Vec<(usize, bool, u32)>> = Vec::new();
    let mut pruned = false;
    let mut complete = true;

    let intern = |c: Config,
                  pos: usize,
                  ids: &mut BTreeMap<(Config, usize), usize>,
                  nodes: &mut Vec<(Config, usize)>,
                  edges: &mut Vec<Vec<(usize, bool, u32)>>|
     -> (usize, bool) {
        if let Some(&id) = ids.get(&(c.clone(), pos)) {
            return (id, false);
        }
        let id = nodes.len();
        ids.insert((c.clone(), pos), id);
        nodes.push((c, pos));
        edges.push(Vec::new());
        (id, true)
    };

    let (root, _) = intern(Config::initial(m), 0, &mut ids, &mut nodes, &mut edges);
    let mut queue = VecDeque::from([root]);
    let mut expansions: u64 = 0;
    while let Some(id) = queue.pop_front() {
        expansions += 1;
        if expansions > bounds.horizon {
            complete = false;
            break;
        }
        let (config, pos) = nodes[id].clone();
        let letter = wheel.letter(pos).clone();
        let next_pos = wheel.next(pos);
        let step = |label: Option<&Letter>,
                        to_pos: usize,
                        is_letter: bool,
                        queue: &mut VecDeque<usize>,
                        pruned: &mut bool,
                        edges: &mut Vec<Vec<(usize, bool, u32)>>,
                        ids: &mut BTreeMap<(Config, usize), usize>,
                        nodes: &mut Vec<(Config, usize)>| {
            for succ in m.successors(&config, label).expect("letters pre-checked") {
                if succ.counters.iter().any(|&v| v > bounds.counter_cap) {
                    *pruned = true;
                    continue;
                }
                let mask = zero_mask(&config);
                let (t, fresh) = intern(succ, to_pos, ids, nodes, edges);
                edges[id].push((t, is_letter, mask));
                if fresh {
                    queue.push_back(t);
                }
            }
        };
        step(None, pos, false, &mut queue, &mut pruned, &mut edges, &mut ids, &mut nodes);
        step(Some(&letter), next_pos, true, &mut queue, &mut pruned, &mut edges, &mut ids, &mut nodes);
    }

    // Phase 2: look for a repeatable accepting loop anchored at an accepting
    // node: return to the same (state, position) with pointwise ≥ counters,
    // at least one letter consumed, and no zero test on any counter that
    // strictly grew.
    if m.k() <= 32 {
        for anchor in 0..nodes.len() {
            if !m.is_accepting(nodes[anchor].0.state) {
                continue;
            }
            if accepting_loop_from(&nodes, &edges, anchor) {
                return Ok(Tv::Accept);
            }
        }
    } else {
        complete = false;
    }

    if complete && !pruned {
        Ok(Tv::Reject)
    } else {
        Ok(Tv::Unknown)
    }
}

/// Bitmask of counters the fired rule zero-tested. Tests are total, so a rule
/// fires from a zero counter iff it zero-tests it: the source configuration
/// alone determines the mask.
fn zero_mask(from: &Config) -> u32 {
    let mut mask = 0u32;
    for (i, &v) in from.counters.iter().enumerate() {
        if v == 0 && i < 32 {
            mask |= 1 << i;
        }
    }
    mask
}

fn accepting_loop_from(
    nodes: &[(Config, usize)],
    edges: &[Vec<(usize, bool, u32)>],
    anchor: usize,
) -> bool {
    let (anchor_cfg, anchor_pos) = &nodes[anchor];
    // Search states: (node, consumed-letter flag, zero-tested mask).
    let mut seen: BTreeMap<(usize, bool, u32), ()> = BTreeMap::new();
    let mut queue: VecDeque<(usize, bool, u32)> = VecDeque::new();
    for &(t, is_letter, mask) in &edges[anchor] {
        if seen.insert((t, is_letter, mask), ()).is_none() {
            queue.push_back((t, is_letter, mask));
        }
    }
    while let Some((v, flag, mask)) = queue.pop_front() {
        let (cfg, pos) = &nodes[v];
        if flag && pos == anchor_pos && cfg.state == anchor_cfg.state {
            let geq = cfg
                .counters
                .iter()
                .zip(&anchor_cfg.counters)
                .all(|(&now, &then)| now >= then);
            let grown_untestable = cfg
                .counters
                .iter()
                .zip(&anchor_cfg.counters)
                .enumerate()
                .all(|(i, (&now, &then))| now == then || (mask >> i) & 1 == 0);
            if geq && grown_untestable {
                return true;
            }
        }
        for &(t, is_letter, emask) in &edges[v] {
            let key = (t, flag || is_letter, mask | emask);
            if seen.insert(key, ()).is_none() {
                queue.push_back(key);
            }
        }
    }
    false
}

/// A canonical accepted lasso of a finite Büchi automaton, or `None` iff the
/// language is empty. The witness is the deterministic shortest one: breadth
/// first to the first accepting state that closes a letter-consuming cycle.
pub fn buchi_nonempty(m: &CounterMachine) -> Result<Option<Lasso>, AcceptError> {
    if m.k() != 0 {
        return Err(AcceptError::CountersPresent(m.k()));
    }
    // Words along shortest edge paths from the initial state.
    let mut word_to: Vec<Option<FiniteWord>> = alloc::vec![None; m.state_count()];
    word_to[m.initial()] = Some(FiniteWord::empty());
    let mut order = Vec::new();
    let mut queue = VecDeque::from([m.initial()]);
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for r in m.rules() {
            if r.from != q || word_to[r.to].is_some() {
                continue;
            }
            let mut w = word_to[q].clone().unwrap();
            if let Some(l) = &r.label {
                w.push(l.clone());
            }
            word_to[r.to] = Some(w);
            queue.push_back(r.to);
        }
    }
    for q in order {
        if !m.is_accepting(q) {
            continue;
        }
        if let Some(cycle) = letter_cycle_word(m, q) {
            let spoke = word_to[q].clone().unwrap();
            return Ok(Some(Lasso::new(spoke, cycle).expect("cycle consumes a letter")));
        }
    }
    Ok(None)
}

/// Shortest word of a cycle q → q consuming at least one letter, if any.
fn letter_cycle_word(m: &CounterMachine, q: usize) -> Option<FiniteWord> {
    let mut best: Vec<Option<FiniteWord>> = alloc::vec![None; 2 * m.state_count()];
    let idx = |state: usize, flag: bool| state * 2 + flag as usize;
    let mut queue: VecDeque<(usize, bool)> = VecDeque::new();
    best[idx(q, false)] = Some(FiniteWord::empty());
    queue.push_back((q, false));
    while let Some((s, flag)) = queue.pop_front() {
        let w = best[idx(s, flag)].clone().unwrap();
        for r in m.rules() {
            if r.from != s {
                continue;
            }
            let (w2, f2) = match &r.label {
                Some(l) => {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    (w2, true)
                }
                None => (w.clone(), flag),
            };
            if r.to == q && f2 {
                if best[idx(q, true)].is_none() {
                    return Some(w2);
                }
                continue;
            }
            if best[idx(r.to, f2)].is_none() {
                best[idx(r.to, f2)] = Some(w2);
                queue.push_back((r.to, f2));
            }
        }
    }
    best[idx(q, true)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::CounterTest;
    use crate::word::Alphabet;
    use alloc::vec;

    fn letter(s: &str) -> Letter {
        Letter::new(s)
    }

    /// Accepts words with infinitely many b's.
    fn inf_b() -> CounterMachine {
        CounterMachine::new(
            "inf-b",
            0,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["w".into(), "s".into()],
            "w",
            &["s"],
            vec![
                (0, Some(letter("a")), vec![], 0, vec![]),
                (0, Some(letter("b")), vec![], 1, vec![]),
                (1, Some(letter("a")), vec![], 0, vec![]),
                (1, Some(letter("b")), vec![], 1, vec![]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn exact_buchi_on_lassos() {
        let m = inf_b();
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("", "ab")).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("bbb", "a")).unwrap());
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("aaaa", "b")).unwrap());
    }

    #[test]
    fn pure_lambda_cycle_is_not_accepting() {
        // Accepting state reachable, but its only cycle is a λ self-loop.
        let m = CounterMachine::new(
            "stall",
            0,
            false,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into(), "q".into()],
            "p",
            &["q"],
            vec![
                (0, Some(letter("a")), vec![], 1, vec![]),
                (1, None, vec![], 1, vec![]),
            ],
        )
        .unwrap();
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("", "a")).unwrap());
    }

    /// One counter pumped on a, flushed on b, accepting while flushing.
    fn pump_flush() -> CounterMachine {
        CounterMachine::new(
            "pump",
            1,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["p".into(), "f".into()],
            "p",
            &["f"],
            vec![
                (0, Some(letter("a")), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(letter("a")), vec![CounterTest::Positive], 0, vec![1]),
                (0, Some(letter("b")), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(letter("b")), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(letter("b")), vec![CounterTest::Zero], 1, vec![0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn counter_lasso_three_valued() {
        let m = pump_flush();
        let bounds = Bounds { counter_cap: 32, ..Bounds::default() };
        // a b^ω: counter reaches 1, flushes, then loops accepting at zero.
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("a", "b"), &bounds).unwrap(),
            Tv::Accept
        );
        // a^ω never leaves p, never visits f.
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("", "a"), &bounds).unwrap(),
            Tv::Unknown, // counter grows beyond any cap, exploration is cut
        );
        // b^ω dies immediately (b needs a positive counter).
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("", "b"), &bounds).unwrap(),
            Tv::Reject
        );
    }

    #[test]
    fn growing_counter_certificate() {
        // Counter strictly grows each period yet the loop repeats forever:
        // accepting self-loop that increments and never zero-tests again.
        let m = CounterMachine::new(
            "grow",
            1,
            true,
            Alphabet::from_chars("a").unwrap(),
            vec!["g".into()],
            "g",
            &["g"],
            vec![
                (0, Some(letter("a")), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(letter("a")), vec![CounterTest::Positive], 0, vec![1]),
            ],
        )
        .unwrap();
        let bounds = Bounds { counter_cap: 8, ..Bounds::default() };
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("", "a"), &bounds).unwrap(),
            Tv::Accept
        );
    }

    #[test]
    fn nonempty_witness_is_canonical() {
        let m = CounterMachine::new(
            "self",
            0,
            true,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into()],
            "p",
            &["p"],
            vec![(0, Some(letter("a")), vec![], 0, vec![])],
        )
        .unwrap();
        let w = buchi_nonempty(&m).unwrap().unwrap();
        assert_eq!(w, Lasso::from_chars("", "a"));
        assert!(lasso_accepts_buchi(&m, &w).unwrap());
    }

    #[test]
    fn empty_language_has_no_witness() {
        let m = CounterMachine::new(
            "empty",
            0,
            true,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into(), "q".into()],
            "p",
            &["q"],
            vec![(0, Some(letter("a")), vec![], 1, vec![])],
        )
        .unwrap();
        assert_eq!(buchi_nonempty(&m).unwrap(), None);
    }
}
