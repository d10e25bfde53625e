//! The shape language H and the languages derived from its prefix set.
//!
//! H consists of the ω-words
//!
//! ```text
//! C^{n₁}·C·A·x(1) · C^{n₂}·A·C^{n′₂}·C·x(2)·B · C^{n₃}·A·C^{n′₃}·C·A·x(3) · …
//! ```
//!
//! with every n_i, n′_i even and non-null, payload letters x(i) ∈ Σ, and
//! infinitely many payloads; even-numbered segments end `x(n)·B`, odd ones
//! `A·x(n)`. Letter by letter that means: a first C-run of odd length ≥ 3,
//! then A, then x(1); afterwards segment i contributes a C-run of even length
//! ≥ 2, an A, a C-run of odd length ≥ 3, and `x(i)·B` (i even) or `A·x(i)`
//! (i odd). Only run parities matter, never exact lengths, so prefixes of H
//! are recognized by a small DFA over run parities.
//!
//! A word never leaves Pref(H) if and only if it lies in H or in V·C^ω,
//! where V is the set of finite Pref(H) words ending in C: staying inside the
//! prefix set while avoiding payload slots forces an all-C tail. U collects
//! the finite words whose first exit happens exactly at their last letter at
//! an even position, so U·Γ^ω is the ω-words first exiting at even positions.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coding::{a_letter, b_letter, c_letter, gamma_alphabet, PrefixVerdict};
use crate::compose::union;
use crate::machine::CounterMachine;
use crate::word::{Alphabet, FiniteWord, Lasso, Letter};

/// Segment parity of the segment currently being read.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum SegPar {
    Even,
    Odd,
}

/// DFA states of the Pref(H) recognizer. Run lengths are tracked only up to
/// parity and the ≥ 3 threshold, which is all the grammar constrains.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum PrefHState {
    Start,
    /// First run of length 1 (odd, too short to close).
    F1,
    /// First run of even length.
    FE,
    /// First run of odd length ≥ 3; A may close it.
    FO3,
    /// Expecting x(1).
    X1,
    /// Payload just read; the next segment is even-numbered.
    JxE,
    /// Even segment's payload just read; its sealing B is due.
    SealB,
    /// B just read; the next segment is odd-numbered.
    SegO,
    /// Run 1 with odd length so far.
    R1O(SegPar),
    /// Run 1 with even length so far; A may close it.
    R1E(SegPar),
    /// Mid A read, run 2 not yet begun.
    R2S(SegPar),
    /// Run 2 of length 1.
    R21(SegPar),
    /// Run 2 of even length.
    R2E(SegPar),
    /// Run 2 of odd length ≥ 3; the segment terminator may follow.
    R2O3(SegPar),
    /// Odd segment's second A read; its payload is due.
    PreX,
}

/// One DFA step. Returns the successor and whether a payload letter was read;
/// `None` means the extended word has left Pref(H).
fn step(state: PrefHState, l: &Letter, sigma: &Alphabet) -> Option<(PrefHState, bool)> {
    use PrefHState::*;
    let c = *l == c_letter();
    let a = *l == a_letter();
    let b = *l == b_letter();
    let x = sigma.contains(l);
    let next = match state {
        Start if c => F1,
        F1 if c => FE,
        FE if c => FO3,
        FO3 if c => FE,
        FO3 if a => X1,
        X1 if x => return Some((JxE, true)),
        JxE if c => R1O(SegPar::Even),
        SealB if b => SegO,
        SegO if c => R1O(SegPar::Odd),
        R1O(p) if c => R1E(p),
        R1E(p) if c => R1O(p),
        R1E(p) if a => R2S(p),
        R2S(p) if c => R21(p),
        R21(p) if c => R2E(p),
        R2E(p) if c => R2O3(p),
        R2O3(p) if c => R2E(p),
        R2O3(SegPar::Even) if x => return Some((SealB, true)),
        R2O3(SegPar::Odd) if a => PreX,
        PreX if x => return Some((JxE, true)),
        _ => return None,
    };
    Some((next, false))
}

/// Incremental recognizer for Pref(H); O(1) per letter.
pub struct PrefHTracker {
    sigma: Alphabet,
    state: PrefHState,
    position: u64,
    decoded: FiniteWord,
    exit: Option<u64>,
}

impl PrefHTracker {
    pub fn new(sigma: &Alphabet) -> Result<Self, String> {
        for l in [a_letter(), b_letter(), c_letter()] {
            if sigma.contains(&l) {
                return Err("payload alphabet contains a marker letter".into());
            }
        }
        if sigma.is_empty() {
            return Err("payload alphabet is empty".into());
        }
        Ok(PrefHTracker {
            sigma: sigma.clone(),
            state: PrefHState::Start,
            position: 0,
            decoded: FiniteWord::empty(),
            exit: None,
        })
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn decoded(&self) -> &FiniteWord {
        &self.decoded
    }

    pub fn verdict(&self) -> PrefixVerdict {
        match self.exit {
            Some(position) => PrefixVerdict::ExitedAt { position },
            None => PrefixVerdict::InPref { decoded: self.decoded.clone() },
        }
    }

    /// Feed one letter; false once the word has left the prefix set.
    pub fn feed(&mut self, l: &Letter) -> bool {
        self.position += 1;
        if self.exit.is_some() {
            return false;
        }
        match step(self.state, l, &self.sigma) {
            Some((next, payload)) => {
                self.state = next;
                if payload {
                    self.decoded.push(l.clone());
                }
                true
            }
            None => {
                self.exit = Some(self.position);
                false
            }
        }
    }

    fn state(&self) -> PrefHState {
        self.state
    }
}

pub fn classify_pref_h(sigma: &Alphabet, w: &FiniteWord) -> PrefixVerdict {
    let mut t = PrefHTracker::new(sigma).expect("valid payload alphabet");
    for l in w.iter() {
        if !t.feed(l) {
            break;
        }
    }
    t.verdict()
}

/// V: nonempty Pref(H) words ending in C.
pub fn is_in_v(sigma: &Alphabet, w: &FiniteWord) -> bool {
    w.last() == Some(&c_letter()) && classify_pref_h(sigma, w).exited_at().is_none()
}

/// U: words of even length whose first exit from Pref(H) is their last letter.
pub fn is_in_u(sigma: &Alphabet, w: &FiniteWord) -> bool {
    w.len() % 2 == 0
        && !w.is_empty()
        && classify_pref_h(sigma, w).exited_at() == Some(w.len() as u64)
}

/// Where a lasso ends up relative to Pref(H).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureVerdict {
    /// Never exits and reads payload letters forever: the word is in H.
    InH,
    /// Never exits but the cycle reads no payload: an all-C tail, V·C^ω.
    InVcOmega,
    /// First exit from Pref(H), 1-indexed.
    Exits { position: u64 },
}

/// Decide a lasso against the closure of H by direct simulation: the tracker
/// state at cycle boundaries must repeat, so the outcome is exact.
pub fn decide_closure_h(sigma: &Alphabet, l: &Lasso) -> ClosureVerdict {
    let mut t = PrefHTracker::new(sigma).expect("valid payload alphabet");
    for letter in l.spoke().iter() {
        if !t.feed(letter) {
            return ClosureVerdict::Exits { position: t.position() };
        }
    }
    let mut seen: BTreeMap<PrefHState, usize> = BTreeMap::new();
    loop {
        let payloads_before = t.decoded().len();
        if let Some(&prev) = seen.get(&t.state()) {
            return if t.decoded().len() > prev {
                ClosureVerdict::InH
            } else {
                ClosureVerdict::InVcOmega
            };
        }
        seen.insert(t.state(), payloads_before);
        for letter in l.cycle().iter() {
            if !t.feed(letter) {
                return ClosureVerdict::Exits { position: t.position() };
            }
        }
    }
}

/// A lasso never leaves Pref(H) iff it lies in H ∪ V·C^ω.
pub fn never_exits_pref_h(sigma: &Alphabet, l: &Lasso) -> bool {
    !matches!(decide_closure_h(sigma, l), ClosureVerdict::Exits { .. })
}

/// State table shared by the three machines below. Each entry is
/// (name, on_C, on_A, on_B, on_payload); a `None` target leaves Pref(H).
/// Indices follow the order of the NAMES array.
const NAMES: [&str; 21] = [
    "start", "f1", "fe", "fo3", "x1", "jx", "sealb", "sego", "r1o.e", "r1e.e", "r2s.e", "r21.e",
    "r2e.e", "r2o3.e", "r1o.o", "r1e.o", "r2s.o", "r21.o", "r2e.o", "r2o3.o", "prex",
];

const START: usize = 0;
const F1: usize = 1;
const FE: usize = 2;
const FO3: usize = 3;
const X1: usize = 4;
const JX: usize = 5;
const SEALB: usize = 6;
const SEGO: usize = 7;
const R1O_E: usize = 8;
const R1E_E: usize = 9;
const R2S_E: usize = 10;
const R21_E: usize = 11;
const R2E_E: usize = 12;
const R2O3_E: usize = 13;
const R1O_O: usize = 14;
const R1E_O: usize = 15;
const R2S_O: usize = 16;
const R21_O: usize = 17;
const R2E_O: usize = 18;
const R2O3_O: usize = 19;
const PREX: usize = 20;

type Row = (usize, Option<usize>, Option<usize>, Option<usize>, Option<usize>);

/// (state, C-target, A-target, B-target, payload-target)
const TABLE: [Row; 21] = [
    (START, Some(F1), None, None, None),
    (F1, Some(FE), None, None, None),
    (FE, Some(FO3), None, None, None),
    (FO3, Some(FE), Some(X1), None, None),
    (X1, None, None, None, Some(JX)),
    (JX, Some(R1O_E), None, None, None),
    (SEALB, None, None, Some(SEGO), None),
    (SEGO, Some(R1O_O), None, None, None),
    (R1O_E, Some(R1E_E), None, None, None),
    (R1E_E, Some(R1O_E), Some(R2S_E), None, None),
    (R2S_E, Some(R21_E), None, None, None),
    (R21_E, Some(R2E_E), None, None, None),
    (R2E_E, Some(R2O3_E), None, None, None),
    (R2O3_E, Some(R2E_E), None, None, Some(SEALB)),
    (R1O_O, Some(R1E_O), None, None, None),
    (R1E_O, Some(R1O_O), Some(R2S_O), None, None),
    (R2S_O, Some(R21_O), None, None, None),
    (R21_O, Some(R2E_O), None, None, None),
    (R2E_O, Some(R2O3_O), None, None, None),
    (R2O3_O, Some(R2E_O), Some(PREX), None, None),
    (PREX, None, None, None, Some(JX)),
];

fn table_rules(
    sigma: &Alphabet,
    mut on_rule: impl FnMut(usize, Letter, usize),
) {
    for &(from, on_c, on_a, on_b, on_x) in &TABLE {
        if let Some(to) = on_c {
            on_rule(from, c_letter(), to);
        }
        if let Some(to) = on_a {
            on_rule(from, a_letter(), to);
        }
        if let Some(to) = on_b {
            on_rule(from, b_letter(), to);
        }
        if let Some(to) = on_x {
            for l in sigma.letters() {
                on_rule(from, l.clone(), to);
            }
        }
    }
}

/// The deterministic Büchi automaton for H. Accepting states are entered
/// exactly on payload reads, so a run accepts iff infinitely many payloads
/// are read while the shape is respected.
pub fn h_automaton(sigma: &Alphabet) -> Result<CounterMachine, String> {
    let gamma = gamma_alphabet(sigma)?;
    let mut rules = Vec::new();
    table_rules(sigma, |from, l, to| {
        rules.push((from, Some(l), Vec::new(), to, Vec::new()));
    });
    CounterMachine::new(
        "H",
        0,
        true,
        gamma,
        NAMES.iter().map(|s| String::from(*s)).collect(),
        "start",
        &["jx", "sealb"],
        rules,
    )
    .map_err(|e| alloc::format!("{e}"))
}

/// Automaton for V·C^ω: follow Pref(H) and guess, on some C kept inside the
/// prefix set, that the all-C tail has begun.
pub fn vc_omega_machine(sigma: &Alphabet) -> Result<CounterMachine, String> {
    let gamma = gamma_alphabet(sigma)?;
    let cloop = NAMES.len();
    let mut rules = Vec::new();
    table_rules(sigma, |from, l, to| {
        rules.push((from, Some(l.clone()), Vec::new(), to, Vec::new()));
        if l == c_letter() {
            rules.push((from, Some(l), Vec::new(), cloop, Vec::new()));
        }
    });
    rules.push((cloop, Some(c_letter()), Vec::new(), cloop, Vec::new()));
    let mut states: Vec<String> = NAMES.iter().map(|s| String::from(*s)).collect();
    states.push("cloop".into());
    CounterMachine::new(
        "vc-omega",
        0,
        true,
        gamma,
        states,
        "start",
        &["cloop"],
        rules,
    )
    .map_err(|e| alloc::format!("{e}"))
}

/// Automaton for U·Γ^ω: words whose first exit from Pref(H) happens at an
/// even position. The tracker runs alongside a position-parity bit; an exit
/// letter lands in the accepting sink iff its position is even.
pub fn u_gamma_omega_machine(sigma: &Alphabet) -> Result<CounterMachine, String> {
    let gamma = gamma_alphabet(sigma)?;
    // State layout: tracker states × parity of letters read, then the sinks.
    let id = |q: usize, parity: usize| q * 2 + parity;
    let acc = NAMES.len() * 2;
    let dead = acc + 1;
    let mut states = Vec::new();
    for name in NAMES {
        for parity in ["even", "odd"] {
            states.push(alloc::format!("{name}.{parity}"));
        }
    }
    states.push("exit-even".into());
    states.push("exit-odd".into());

    let mut target: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
    table_rules(sigma, |from, l, to| {
        target.insert((from, l), to);
    });
    let mut rules = Vec::new();
    for (q, _) in TABLE.iter().enumerate() {
        for l in gamma.letters() {
            for parity in [0usize, 1] {
                let to = match target.get(&(q, l.clone())) {
                    Some(&t) => id(t, 1 - parity),
                    // The exit letter sits at position (letters read) + 1,
                    // which is even exactly when that count is odd.
                    None if parity == 1 => acc,
                    None => dead,
                };
                rules.push((id(q, parity), Some(l.clone()), Vec::new(), to, Vec::new()));
            }
        }
    }
    for l in gamma.letters() {
        rules.push((acc, Some(l.clone()), Vec::new(), acc, Vec::new()));
        rules.push((dead, Some(l.clone()), Vec::new(), dead, Vec::new()));
    }
    CounterMachine::new(
        "u-gamma-omega",
        0,
        true,
        gamma,
        states,
        "start.even",
        &["exit-even"],
        rules,
    )
    .map_err(|e| alloc::format!("{e}"))
}

/// The closure of H: H ∪ V·C^ω, the words that never leave Pref(H).
pub fn closure_h_machine(sigma: &Alphabet) -> Result<CounterMachine, String> {
    let u = union(&h_automaton(sigma)?, &vc_omega_machine(sigma)?)
        .map_err(|e| alloc::format!("{e}"))?;
    Ok(u.rename("closure-H"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accept::lasso_accepts_buchi;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn grammar_walks_both_segment_kinds() {
        let w = FiniteWord::from_chars("CCCAaCCACCCbBCCACCCAa");
        match classify_pref_h(&sigma(), &w) {
            PrefixVerdict::InPref { decoded } => {
                assert_eq!(decoded, FiniteWord::from_chars("aba"))
            }
            v => panic!("expected in-pref, got {v:?}"),
        }
    }

    #[test]
    fn grammar_rejects_parity_violations() {
        // First run of even length: A at position 4 exits.
        assert_eq!(
            classify_pref_h(&sigma(), &FiniteWord::from_chars("CCA")).exited_at(),
            Some(3)
        );
        // Run 1 of odd length inside a segment: A after a single C.
        assert_eq!(
            classify_pref_h(&sigma(), &FiniteWord::from_chars("CCCAaCA")).exited_at(),
            Some(7)
        );
    }

    #[test]
    fn closure_decision_examples() {
        let s = sigma();
        assert_eq!(decide_closure_h(&s, &Lasso::from_chars("", "C")), ClosureVerdict::InVcOmega);
        assert_eq!(
            decide_closure_h(&s, &Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa")),
            ClosureVerdict::InH
        );
        assert_eq!(
            decide_closure_h(&s, &Lasso::from_chars("A", "C")),
            ClosureVerdict::Exits { position: 1 }
        );
        assert_eq!(
            decide_closure_h(&s, &Lasso::from_chars("CCCA", "C")),
            ClosureVerdict::Exits { position: 5 }
        );
    }

    #[test]
    fn v_and_u_predicates() {
        let s = sigma();
        assert!(is_in_v(&s, &FiniteWord::from_chars("C")));
        assert!(is_in_v(&s, &FiniteWord::from_chars("CCCAaCC")));
        assert!(!is_in_v(&s, &FiniteWord::from_chars("CCCAa")));
        assert!(is_in_u(&s, &FiniteWord::from_chars("CA")));
        assert!(!is_in_u(&s, &FiniteWord::from_chars("CCA")));
        assert!(!is_in_u(&s, &FiniteWord::from_chars("CC")));
    }

    #[test]
    fn h_machine_agrees_with_structure() {
        let s = sigma();
        let m = h_automaton(&s).unwrap();
        let accept = Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa");
        assert!(lasso_accepts_buchi(&m, &accept).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("", "C")).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("CA", "C")).unwrap());
    }

    #[test]
    fn vc_omega_machine_accepts_all_c_tails() {
        let s = sigma();
        let m = vc_omega_machine(&s).unwrap();
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("", "C")).unwrap());
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("CCCAaCC", "C")).unwrap());
        // In H, but the tail is not all C.
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa")).unwrap());
        // Exits the prefix set before the tail.
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("AC", "C")).unwrap());
    }

    #[test]
    fn u_gamma_machine_checks_exit_parity() {
        let s = sigma();
        let m = u_gamma_omega_machine(&s).unwrap();
        // "CA" exits at position 2.
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("CA", "C")).unwrap());
        // "A" exits at position 1.
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("A", "C")).unwrap());
        // Never exits.
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("", "C")).unwrap());
    }

    #[test]
    fn closure_machine_is_h_or_all_c_tail() {
        let s = sigma();
        let m = closure_h_machine(&s).unwrap();
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("", "C")).unwrap());
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa")).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("CA", "C")).unwrap());
    }
}
