//! The ω-languages of the construction and their counter machines.
//!
//! Each language comes in two independent forms: a `CounterMachine` built by
//! explicit construction, and a structural oracle that decides lassos by
//! direct analysis of the word. Test suites check the two against each other;
//! nothing here decides membership for a constructed language by running its
//! own machine.

mod hcomp;
mod oracle;
mod pref_h;
mod theta_side;

pub use hcomp::{
    a2_machine, a3_machine, clopen_checker_machine, ell_machine, h_complement_machine,
};
pub use oracle::{
    ell_handle, first_letter_handle, h_complement_handle, h_handle, closure_h_handle,
    nth_letter_handle, payload_clopen_handle, sloppy_clopen_handle, theta_game_handle,
    u_gamma_omega_handle, vc_omega_handle, zero_star_one_handle, LanguageHandle, LanguageOracle,
    PrefixWhy,
};
pub use pref_h::{
    classify_pref_h, closure_h_machine, decide_closure_h, h_automaton, is_in_u, is_in_v,
    never_exits_pref_h, u_gamma_omega_machine, vc_omega_machine, ClosureVerdict, PrefHTracker,
};
pub use theta_side::{lprime_machine, theta_game_machine, theta_image_machine};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::machine::{CounterMachine, CounterTest, Rule, StateId};
use crate::word::{Alphabet, FiniteWord, Letter};

/// A clopen constraint on payload words: finitely many positions, each pinned
/// to one letter. Membership of x ∈ Σ^ω is settled by x(1..max index).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClopenCondition {
    sigma: Alphabet,
    required: BTreeMap<u64, Letter>,
}

impl ClopenCondition {
    pub fn new(
        sigma: &Alphabet,
        pairs: impl IntoIterator<Item = (u64, Letter)>,
    ) -> Result<Self, String> {
        let mut required = BTreeMap::new();
        for (idx, l) in pairs {
            if idx == 0 {
                return Err("payload positions are 1-indexed".into());
            }
            if !sigma.contains(&l) {
                return Err(format!("required letter '{l}' not in the payload alphabet"));
            }
            if required.insert(idx, l).is_some() {
                return Err(format!("position {idx} constrained twice"));
            }
        }
        Ok(ClopenCondition { sigma: sigma.clone(), required })
    }

    pub fn unconstrained(sigma: &Alphabet) -> Self {
        ClopenCondition { sigma: sigma.clone(), required: BTreeMap::new() }
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn requirements(&self) -> impl Iterator<Item = (u64, &Letter)> {
        self.required.iter().map(|(&i, l)| (i, l))
    }

    /// Largest constrained position; 0 when unconstrained.
    pub fn max_index(&self) -> u64 {
        self.required.keys().next_back().copied().unwrap_or(0)
    }

    /// Is `l` allowed as the payload letter at position `idx`?
    pub fn allows(&self, idx: u64, l: &Letter) -> bool {
        match self.required.get(&idx) {
            Some(want) => want == l,
            None => true,
        }
    }

    /// Membership of every extension of the prefix, once that is settled:
    /// a violated position settles it immediately, and a prefix covering all
    /// constrained positions settles it positively.
    pub fn check_prefix(&self, x: &FiniteWord) -> Option<bool> {
        for (&idx, want) in &self.required {
            match x.get(idx as usize) {
                Some(got) if got == want => {}
                Some(_) => return Some(false),
                None => return None,
            }
        }
        Some(true)
    }
}

impl fmt::Display for ClopenCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (idx, l)) in self.required.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}:{l}")?;
        }
        write!(f, "}}")
    }
}

/// A rule skeleton whose counter tests may leave counters unconstrained;
/// expansion emits one concrete rule per combination of the free tests.
pub(crate) fn expand_rules(
    k: usize,
    specs: Vec<(StateId, Option<Letter>, Vec<Option<CounterTest>>, StateId, Vec<i8>)>,
) -> Vec<Rule> {
    let mut out = Vec::new();
    for (from, label, tests, to, updates) in specs {
        debug_assert_eq!(tests.len(), k);
        debug_assert_eq!(updates.len(), k);
        let free: Vec<usize> = (0..k).filter(|&i| tests[i].is_none()).collect();
        for mask in 0..(1u32 << free.len()) {
            let mut concrete: Vec<CounterTest> = Vec::with_capacity(k);
            for (i, t) in tests.iter().enumerate() {
                concrete.push(match t {
                    Some(t) => *t,
                    None => {
                        let bit = free.iter().position(|&f| f == i).unwrap();
                        if (mask >> bit) & 1 == 1 {
                            CounterTest::Positive
                        } else {
                            CounterTest::Zero
                        }
                    }
                });
            }
            // A zero-tested counter cannot be decremented; skip combinations
            // the expansion itself made contradictory.
            if concrete
                .iter()
                .zip(&updates)
                .any(|(&t, &u)| t == CounterTest::Zero && u == -1)
            {
                continue;
            }
            out.push(Rule {
                from,
                label: label.clone(),
                tests: concrete,
                to,
                updates: updates.clone(),
            });
        }
    }
    out
}

/// The two-state automaton for ω-words containing infinitely many `one`s,
/// i.e. (other*·one)^ω.
pub fn zero_star_one(alphabet: &Alphabet, one: &Letter) -> Result<CounterMachine, String> {
    if !alphabet.contains(one) {
        return Err(format!("letter '{one}' not in the alphabet"));
    }
    let mut rules = Vec::new();
    for l in alphabet.letters() {
        let hit = l == one;
        rules.push((0, Some(l.clone()), Vec::new(), usize::from(hit), Vec::new()));
        rules.push((1, Some(l.clone()), Vec::new(), usize::from(hit), Vec::new()));
    }
    CounterMachine::new(
        &format!("inf[{one}]"),
        0,
        true,
        alphabet.clone(),
        alloc::vec!["wait".into(), "hit".into()],
        "wait",
        &["hit"],
        rules,
    )
    .map_err(|e| format!("{e}"))
}

/// The clopen set `first·Σ^ω` of words starting with a fixed letter.
pub fn first_letter_machine(alphabet: &Alphabet, first: &Letter) -> Result<CounterMachine, String> {
    if !alphabet.contains(first) {
        return Err(format!("letter '{first}' not in the alphabet"));
    }
    let mut rules = alloc::vec![(0, Some(first.clone()), Vec::new(), 1, Vec::new())];
    for l in alphabet.letters() {
        rules.push((1, Some(l.clone()), Vec::new(), 1, Vec::new()));
    }
    CounterMachine::new(
        &format!("head[{first}]"),
        0,
        true,
        alphabet.clone(),
        alloc::vec!["start".into(), "tail".into()],
        "start",
        &["tail"],
        rules,
    )
    .map_err(|e| format!("{e}"))
}

/// Membership by one payload position: the words whose `index`-th letter
/// equals `target`, or differs from it when `negate` is set.
pub fn nth_letter_machine(
    alphabet: &Alphabet,
    index: u64,
    target: &Letter,
    negate: bool,
) -> Result<CounterMachine, String> {
    if index == 0 {
        return Err("positions are 1-indexed".into());
    }
    if !alphabet.contains(target) {
        return Err(format!("letter '{target}' not in the alphabet"));
    }
    let n = index as usize;
    let mut states: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    states.push("yes".into());
    states.push("no".into());
    let yes = n;
    let no = n + 1;
    let mut rules = Vec::new();
    for i in 0..n - 1 {
        for l in alphabet.letters() {
            rules.push((i, Some(l.clone()), Vec::new(), i + 1, Vec::new()));
        }
    }
    for l in alphabet.letters() {
        let hit = (l == target) != negate;
        let to = if hit { yes } else { no };
        rules.push((n - 1, Some(l.clone()), Vec::new(), to, Vec::new()));
        rules.push((yes, Some(l.clone()), Vec::new(), yes, Vec::new()));
        rules.push((no, Some(l.clone()), Vec::new(), no, Vec::new()));
    }
    let op = if negate { "!=" } else { "=" };
    CounterMachine::new(
        &format!("at[{index}{op}{target}]"),
        0,
        true,
        alphabet.clone(),
        states,
        "p1",
        &["yes"],
        rules,
    )
    .map_err(|e| format!("{e}"))
}

/// The payload-level clopen language L₀ ⊆ Σ^ω as an exact automaton: a chain
/// that checks each constrained position and then accepts everything.
pub fn clopen_payload_machine(cond: &ClopenCondition) -> CounterMachine {
    let sigma = cond.sigma().clone();
    let max = cond.max_index() as usize;
    // States 0..max walk the first `max` payload letters; state `max` is the
    // accepting sink; the extra state is the dead sink.
    let dead = max + 1;
    let mut states: Vec<String> = (0..=max).map(|i| format!("seen{i}")).collect();
    states.push("dead".into());
    let mut rules = Vec::new();
    for i in 0..max {
        for l in sigma.letters() {
            let to = if cond.allows((i + 1) as u64, l) { i + 1 } else { dead };
            rules.push((i, Some(l.clone()), Vec::new(), to, Vec::new()));
        }
    }
    for l in sigma.letters() {
        rules.push((max, Some(l.clone()), Vec::new(), max, Vec::new()));
        rules.push((dead, Some(l.clone()), Vec::new(), dead, Vec::new()));
    }
    CounterMachine::new(
        &format!("payload{cond}"),
        0,
        true,
        sigma,
        states,
        "seen0",
        &[&format!("seen{max}")],
        rules,
    )
    .expect("construction is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accept::lasso_accepts_buchi;
    use crate::word::Lasso;

    #[test]
    fn clopen_condition_decides_prefixes() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let cond =
            ClopenCondition::new(&sigma, [(1, Letter::from('a')), (3, Letter::from('b'))]).unwrap();
        assert_eq!(cond.check_prefix(&FiniteWord::from_chars("a")), None);
        assert_eq!(cond.check_prefix(&FiniteWord::from_chars("aab")), Some(true));
        assert_eq!(cond.check_prefix(&FiniteWord::from_chars("b")), Some(false));
        assert_eq!(cond.max_index(), 3);
        assert_eq!(alloc::format!("{cond}"), "{1:a,3:b}");
    }

    #[test]
    fn zero_star_one_accepts_infinitely_many_ones() {
        let ab = Alphabet::from_chars("01").unwrap();
        let m = zero_star_one(&ab, &Letter::from('1')).unwrap();
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("", "01")).unwrap());
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("111", "001")).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("1011", "0")).unwrap());
    }

    #[test]
    fn payload_machine_matches_condition() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let cond = ClopenCondition::new(&sigma, [(2, Letter::from('b'))]).unwrap();
        let m = clopen_payload_machine(&cond);
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("ab", "a")).unwrap());
        assert!(lasso_accepts_buchi(&m, &Lasso::from_chars("", "b")).unwrap());
        assert!(!lasso_accepts_buchi(&m, &Lasso::from_chars("aa", "b")).unwrap());
    }

    #[test]
    fn expansion_covers_free_tests() {
        let rules = expand_rules(
            2,
            alloc::vec![(0, None, alloc::vec![Some(CounterTest::Zero), None], 1, alloc::vec![0, 0])],
        );
        assert_eq!(rules.len(), 2);
        let rules = expand_rules(2, alloc::vec![(0, None, alloc::vec![None, None], 1, alloc::vec![0, -1])]);
        // The (.., Zero) halves with a decrement are dropped.
        assert_eq!(rules.len(), 2);
        assert!(rules.iter().all(|r| r.tests[1] == CounterTest::Positive));
    }
}
