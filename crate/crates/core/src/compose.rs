//! Machine combinators that preserve the counter-machine class.
//!
//! `union` joins two machines under a fresh initial state, so the language is
//! the union of the two and the counter arity is the larger of the two.
//! `intersect_regular` builds the two-track product of a counter machine with
//! a finite Büchi automaton; the intersection with a regular ω-language stays
//! in the same counter class.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::machine::{CounterMachine, CounterTest, MachineError, Rule};
use crate::word::Alphabet;

fn merged_alphabet(a: &Alphabet, b: &Alphabet) -> Alphabet {
    let extra: Vec<_> = b
        .letters()
        .iter()
        .filter(|l| !a.contains(l))
        .cloned()
        .collect();
    a.extend(extra).expect("duplicates were filtered")
}

/// Pad a rule of a machine with fewer counters up to arity `k`. The padding
/// counters are never touched, so they stay zero and a Zero test is exact.
fn pad_rule(r: &Rule, k: usize, state_of: impl Fn(usize) -> usize) -> Rule {
    let mut tests = r.tests.clone();
    let mut updates = r.updates.clone();
    tests.resize(k, CounterTest::Zero);
    updates.resize(k, 0);
    Rule {
        from: state_of(r.from),
        label: r.label.clone(),
        tests,
        to: state_of(r.to),
        updates,
    }
}

/// Union under a fresh initial state.
///
/// The fresh state replicates the outgoing rules of both old initial states
/// and nothing points back at it, so every run commits to one side after its
/// first step. The fresh state is not accepting; a run that acceptingly
/// revisits an old initial state does so through that side's own copy.
pub fn union(a: &CounterMachine, b: &CounterMachine) -> Result<CounterMachine, MachineError> {
    let k = a.k().max(b.k());
    let alphabet = merged_alphabet(a.alphabet(), b.alphabet());
    let mut states: Vec<String> = Vec::with_capacity(1 + a.state_count() + b.state_count());
    states.push("init".into());
    states.extend(a.state_names().iter().map(|s| format!("l.{s}")));
    states.extend(b.state_names().iter().map(|s| format!("r.{s}")));
    let a_of = |s: usize| 1 + s;
    let b_of = |s: usize| 1 + a.state_count() + s;

    let mut rules = Vec::new();
    for r in a.rules() {
        rules.push(pad_rule(r, k, a_of));
        if r.from == a.initial() {
            let mut copy = pad_rule(r, k, a_of);
            copy.from = 0;
            rules.push(copy);
        }
    }
    for r in b.rules() {
        rules.push(pad_rule(r, k, b_of));
        if r.from == b.initial() {
            let mut copy = pad_rule(r, k, b_of);
            copy.from = 0;
            rules.push(copy);
        }
    }

    let mut accepting = BTreeSet::new();
    accepting.extend(a.accepting().iter().map(|&s| a_of(s)));
    accepting.extend(b.accepting().iter().map(|&s| b_of(s)));

    CounterMachine::from_parts(
        &format!("union({},{})", a.name(), b.name()),
        k,
        a.real_time() && b.real_time(),
        alphabet,
        states,
        0,
        accepting,
        rules,
    )
}

/// Two-track product with a finite Büchi automaton.
///
/// Tracks run in two copies. Copy 1 waits for the counter track to sit in one
/// of its accepting states, copy 2 waits for the automaton track; the copy
/// flips when the source state of a step satisfies the wait. Accepting nodes
/// are the copy-2 nodes whose automaton state is accepting, so they recur
/// exactly when both tracks hit their accepting sets infinitely often.
///
/// λ-rules of the counter track move it alone and leave the automaton track
/// frozen, which requires the automaton to be real-time with no counters.
pub fn intersect_regular(
    m: &CounterMachine,
    b: &CounterMachine,
) -> Result<CounterMachine, MachineError> {
    if b.k() != 0 {
        return Err(MachineError::Composition(format!(
            "regular factor '{}' has {} counters",
            b.name(),
            b.k()
        )));
    }
    if !b.real_time() {
        return Err(MachineError::Composition(format!(
            "regular factor '{}' is not real-time",
            b.name()
        )));
    }
    let alphabet = merged_alphabet(m.alphabet(), b.alphabet());
    let nb = b.state_count();
    let id = |qm: usize, qb: usize, copy: usize| (qm * nb + qb) * 2 + (copy - 1);
    let mut states = Vec::with_capacity(m.state_count() * nb * 2);
    for qm in 0..m.state_count() {
        for qb in 0..nb {
            for copy in [1usize, 2] {
                states.push(format!("{}&{}@{copy}", m.state_name(qm), b.state_name(qb)));
            }
        }
    }
    let next_copy = |qm: usize, qb: usize, copy: usize| match copy {
        1 if m.is_accepting(qm) => 2,
        2 if b.is_accepting(qb) => 1,
        c => c,
    };

    let mut rules = Vec::new();
    for rm in m.rules() {
        match &rm.label {
            None => {
                for qb in 0..nb {
                    for copy in [1, 2] {
                        rules.push(Rule {
                            from: id(rm.from, qb, copy),
                            label: None,
                            tests: rm.tests.clone(),
                            to: id(rm.to, qb, next_copy(rm.from, qb, copy)),
                            updates: rm.updates.clone(),
                        });
                    }
                }
            }
            Some(l) => {
                for rb in b.rules() {
                    if rb.label.as_ref() != Some(l) {
                        continue;
                    }
                    for copy in [1, 2] {
                        rules.push(Rule {
                            from: id(rm.from, rb.from, copy),
                            label: Some(l.clone()),
                            tests: rm.tests.clone(),
                            to: id(rm.to, rb.to, next_copy(rm.from, rb.from, copy)),
                            updates: rm.updates.clone(),
                        });
                    }
                }
            }
        }
    }

    let mut accepting = BTreeSet::new();
    for qm in 0..m.state_count() {
        for &qb in b.accepting() {
            accepting.insert(id(qm, qb, 2));
        }
    }

    CounterMachine::from_parts(
        &format!("product({},{})", m.name(), b.name()),
        m.k(),
        m.real_time(),
        alphabet,
        states,
        id(m.initial(), b.initial(), 1),
        accepting,
        rules,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accept::{lasso_accepts_buchi, lasso_accepts_counter, Tv};
    use crate::run::Bounds;
    use crate::word::{Lasso, Letter};
    use alloc::vec;

    fn only(letter: char, name: &str) -> CounterMachine {
        CounterMachine::new(
            name,
            0,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["s".into()],
            "s",
            &["s"],
            vec![(0, Some(Letter::from(letter)), vec![], 0, vec![])],
        )
        .unwrap()
    }

    fn inf(letter: char, name: &str) -> CounterMachine {
        let l = Some(Letter::from(letter));
        let other = Some(Letter::from(if letter == 'a' { 'b' } else { 'a' }));
        CounterMachine::new(
            name,
            0,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["w".into(), "s".into()],
            "w",
            &["s"],
            vec![
                (0, l.clone(), vec![], 1, vec![]),
                (0, other.clone(), vec![], 0, vec![]),
                (1, l, vec![], 1, vec![]),
                (1, other, vec![], 0, vec![]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn union_takes_either_side() {
        let u = union(&only('a', "A"), &only('b', "B")).unwrap();
        assert!(lasso_accepts_buchi(&u, &Lasso::from_chars("", "a")).unwrap());
        assert!(lasso_accepts_buchi(&u, &Lasso::from_chars("", "b")).unwrap());
        // A run commits to one side with its first letter.
        assert!(!lasso_accepts_buchi(&u, &Lasso::from_chars("", "ab")).unwrap());
    }

    #[test]
    fn union_initial_is_fresh() {
        let u = union(&only('a', "A"), &only('b', "B")).unwrap();
        assert!(!u.is_accepting(u.initial()));
        assert!(u.rules().iter().all(|r| r.to != u.initial()));
    }

    #[test]
    fn union_pads_counter_arity() {
        // One-counter side: pump a's, flush on b's, accept while flushing.
        let pump = CounterMachine::new(
            "pump",
            1,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["p".into(), "f".into()],
            "p",
            &["f"],
            vec![
                (0, Some(Letter::from('a')), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(Letter::from('a')), vec![CounterTest::Positive], 0, vec![1]),
                (0, Some(Letter::from('b')), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(Letter::from('b')), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(Letter::from('b')), vec![CounterTest::Zero], 1, vec![0]),
            ],
        )
        .unwrap();
        let u = union(&pump, &only('b', "B")).unwrap();
        assert_eq!(u.k(), 1);
        let bounds = Bounds { counter_cap: 16, ..Bounds::default() };
        assert_eq!(
            lasso_accepts_counter(&u, &Lasso::from_chars("a", "b"), &bounds).unwrap(),
            Tv::Accept
        );
        assert_eq!(
            lasso_accepts_counter(&u, &Lasso::from_chars("", "b"), &bounds).unwrap(),
            Tv::Accept
        );
        assert_eq!(
            lasso_accepts_counter(&u, &Lasso::from_chars("ba", "b"), &bounds).unwrap(),
            Tv::Reject
        );
    }

    #[test]
    fn product_requires_both_infinitely() {
        let p = intersect_regular(&inf('b', "infB"), &inf('a', "infA")).unwrap();
        assert!(lasso_accepts_buchi(&p, &Lasso::from_chars("", "ab")).unwrap());
        assert!(!lasso_accepts_buchi(&p, &Lasso::from_chars("a", "b")).unwrap());
        assert!(!lasso_accepts_buchi(&p, &Lasso::from_chars("b", "a")).unwrap());
    }

    #[test]
    fn product_keeps_counters() {
        let pump = CounterMachine::new(
            "pump",
            1,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["p".into(), "f".into()],
            "p",
            &["f"],
            vec![
                (0, Some(Letter::from('a')), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(Letter::from('a')), vec![CounterTest::Positive], 0, vec![1]),
                (0, Some(Letter::from('b')), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(Letter::from('b')), vec![CounterTest::Positive], 1, vec![-1]),
                (1, Some(Letter::from('b')), vec![CounterTest::Zero], 1, vec![0]),
            ],
        )
        .unwrap();
        let p = intersect_regular(&pump, &inf('b', "infB")).unwrap();
        assert_eq!(p.k(), 1);
        let bounds = Bounds { counter_cap: 16, ..Bounds::default() };
        assert_eq!(
            lasso_accepts_counter(&p, &Lasso::from_chars("a", "b"), &bounds).unwrap(),
            Tv::Accept
        );
    }

    #[test]
    fn product_rejects_lambda_factor() {
        let lam = CounterMachine::new(
            "lam",
            0,
            false,
            Alphabet::from_chars("a").unwrap(),
            vec!["s".into()],
            "s",
            &["s"],
            vec![(0, None, vec![], 0, vec![])],
        )
        .unwrap();
        assert!(intersect_regular(&only('a', "A"), &lam).is_err());
    }
}
