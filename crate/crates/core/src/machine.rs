//! Nondeterministic Büchi automata with k non-negative counters.
//!
//! A rule fires from state `q` on `label` (a letter, or λ when `None`) when
//! every counter matches its test: `Zero` means the counter is 0, `Positive`
//! means it is > 0. Firing moves to the target state and adds the update
//! (−1, 0, or +1) to each counter. A zero-tested counter never carries a −1
//! update, so counters stay non-negative by construction. With k = 0 the type
//! degenerates to an ordinary finite Büchi automaton. Acceptance is Büchi:
//! a run is accepting iff it visits an accepting state infinitely often while
//! consuming the whole input.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::word::{Alphabet, Letter};

/// Index into a machine's state table.
pub type StateId = usize;

/// Counter guard: fires only on an exact zero / positive match.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum CounterTest {
    Zero,
    Positive,
}

/// One transition. `label = None` is a λ-rule: it consumes no input letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Rule {
    pub from: StateId,
    pub label: Option<Letter>,
    pub tests: Vec<CounterTest>,
    pub to: StateId,
    pub updates: Vec<i8>,
}

/// A machine configuration: control state plus counter values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Config {
    pub state: StateId,
    pub counters: Vec<u64>,
}

impl Config {
    pub fn initial(machine: &CounterMachine) -> Self {
        Config {
            state: machine.initial(),
            counters: alloc::vec![0; machine.k()],
        }
    }

    fn matches(&self, tests: &[CounterTest]) -> bool {
        self.counters
            .iter()
            .zip(tests)
            .all(|(&c, &t)| (c == 0) == (t == CounterTest::Zero))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineError {
    EmptyStates,
    DuplicateState(String),
    UnknownState(String),
    UnknownLetter(String),
    BadArity { rule: usize, field: &'static str, expected: usize, got: usize },
    BadUpdate { rule: usize, value: i8 },
    DecrementOnZeroTest { rule: usize, counter: usize },
    LambdaInRealTime { rule: usize },
    Composition(String),
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::EmptyStates => write!(f, "machine needs at least one state"),
            MachineError::DuplicateState(s) => write!(f, "duplicate state '{s}'"),
            MachineError::UnknownState(s) => write!(f, "unknown state '{s}'"),
            MachineError::UnknownLetter(l) => write!(f, "letter '{l}' not in the alphabet"),
            MachineError::BadArity { rule, field, expected, got } => {
                write!(f, "rule {rule}: {field} has length {got}, machine has k = {expected}")
            }
            MachineError::BadUpdate { rule, value } => {
                write!(f, "rule {rule}: update {value} outside -1..=1")
            }
            MachineError::DecrementOnZeroTest { rule, counter } => {
                write!(f, "rule {rule}: counter {counter} tested zero but decremented")
            }
            MachineError::LambdaInRealTime { rule } => {
                write!(f, "rule {rule}: λ-rule in a machine declared real-time")
            }
            MachineError::Composition(msg) => write!(f, "composition error: {msg}"),
        }
    }
}

/// A k-counter Büchi machine. Rules are kept sorted and deduplicated, so two
/// machines with the same components compare equal regardless of rule order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CounterMachine {
    name: String,
    k: usize,
    real_time: bool,
    alphabet: Alphabet,
    states: Vec<String>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    rules: Vec<Rule>,
}

impl CounterMachine {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        k: usize,
        real_time: bool,
        alphabet: Alphabet,
        states: Vec<String>,
        initial: &str,
        accepting: &[&str],
        rules: Vec<(usize, Option<Letter>, Vec<CounterTest>, usize, Vec<i8>)>,
    ) -> Result<Self, MachineError> {
        let rules = rules
            .into_iter()
            .map(|(from, label, tests, to, updates)| Rule { from, label, tests, to, updates })
            .collect();
        let initial = states
            .iter()
            .position(|s| s == initial)
            .ok_or_else(|| MachineError::UnknownState(initial.to_string()))?;
        let accepting = accepting
            .iter()
            .map(|a| {
                states
                    .iter()
                    .position(|s| s == a)
                    .ok_or_else(|| MachineError::UnknownState((*a).to_string()))
            })
            .collect::<Result<BTreeSet<_>, _>>()?;
        CounterMachine::from_parts(name, k, real_time, alphabet, states, initial, accepting, rules)
    }

    /// The id-level constructor; every other constructor funnels through here.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: &str,
        k: usize,
        real_time: bool,
        alphabet: Alphabet,
        states: Vec<String>,
        initial: StateId,
        accepting: BTreeSet<StateId>,
        mut rules: Vec<Rule>,
    ) -> Result<Self, MachineError> {
        if states.is_empty() {
            return Err(MachineError::EmptyStates);
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        let check_state = |id: StateId| -> Result<(), MachineError> {
            if id >= states.len() {
                Err(MachineError::UnknownState(alloc::format!("#{id}")))
            } else {
                Ok(())
            }
        };
        check_state(initial)?;
        for &a in &accepting {
            check_state(a)?;
        }
        for (i, r) in rules.iter().enumerate() {
            check_state(r.from)?;
            check_state(r.to)?;
            match &r.label {
                Some(l) if !alphabet.contains(l) => {
                    return Err(MachineError::UnknownLetter(l.as_str().to_string()));
                }
                None if real_time => return Err(MachineError::LambdaInRealTime { rule: i }),
                _ => {}
            }
            if r.tests.len() != k {
                return Err(MachineError::BadArity { rule: i, field: "tests", expected: k, got: r.tests.len() });
            }
            if r.updates.len() != k {
                return Err(MachineError::BadArity { rule: i, field: "updates", expected: k, got: r.updates.len() });
            }
            for (c, (&t, &u)) in r.tests.iter().zip(&r.updates).enumerate() {
                if !(-1..=1).contains(&u) {
                    return Err(MachineError::BadUpdate { rule: i, value: u });
                }
                if t == CounterTest::Zero && u == -1 {
                    return Err(MachineError::DecrementOnZeroTest { rule: i, counter: c });
                }
            }
        }
        rules.sort();
        rules.dedup();
        Ok(CounterMachine {
            name: name.to_string(),
            k,
            real_time,
            alphabet,
            states,
            initial,
            accepting,
            rules,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn real_time(&self) -> bool {
        self.real_time
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, id: StateId) -> bool {
        self.accepting.contains(&id)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rename(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Configurations reachable from `c` in one step on `label` (λ = `None`).
    /// The label must be a letter of the alphabet or λ.
    pub fn successors(&self, c: &Config, label: Option<&Letter>) -> Result<Vec<Config>, MachineError> {
        if let Some(l) = label {
            if !self.alphabet.contains(l) {
                return Err(MachineError::UnknownLetter(l.as_str().to_string()));
            }
        }
        let mut out = Vec::new();
        for r in &self.rules {
            if r.from != c.state || r.label.as_ref() != label || !c.matches(&r.tests) {
                continue;
            }
            let counters = c
                .counters
                .iter()
                .zip(&r.updates)
                .map(|(&v, &u)| v.checked_add_signed(u as i64).expect("guarded decrement"))
                .collect();
            out.push(Config { state: r.to, counters });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn two_state() -> CounterMachine {
        CounterMachine::new(
            "toy",
            1,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["p".into(), "q".into()],
            "p",
            &["q"],
            vec![
                (0, Some(Letter::new("a")), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(Letter::new("a")), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(Letter::new("b")), vec![CounterTest::Zero], 1, vec![0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn successors_respect_tests() {
        let m = two_state();
        let c0 = Config::initial(&m);
        let a = Letter::new("a");
        let succ = m.successors(&c0, Some(&a)).unwrap();
        assert_eq!(succ, vec![Config { state: 0, counters: vec![1] }]);
        let succ2 = m.successors(&succ[0], Some(&a)).unwrap();
        assert_eq!(succ2, vec![Config { state: 1, counters: vec![0] }]);
    }

    #[test]
    fn rejects_decrement_on_zero_test() {
        let err = CounterMachine::new(
            "bad",
            1,
            true,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into()],
            "p",
            &[],
            vec![(0, Some(Letter::new("a")), vec![CounterTest::Zero], 0, vec![-1])],
        )
        .unwrap_err();
        assert_eq!(err, MachineError::DecrementOnZeroTest { rule: 0, counter: 0 });
    }

    #[test]
    fn rejects_lambda_in_real_time() {
        let err = CounterMachine::new(
            "bad",
            0,
            true,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into()],
            "p",
            &[],
            vec![(0, None, vec![], 0, vec![])],
        )
        .unwrap_err();
        assert_eq!(err, MachineError::LambdaInRealTime { rule: 0 });
    }

    #[test]
    fn unknown_letter_is_an_error() {
        let m = two_state();
        let c = Config::initial(&m);
        assert!(m.successors(&c, Some(&Letter::new("z"))).is_err());
    }
}
