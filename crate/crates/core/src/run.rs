//! Bounded forward simulation of machine runs on finite prefixes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::machine::{Config, CounterMachine, MachineError};
use crate::word::FiniteWord;

/// Exploration bounds for counter machines.
///
/// `lambda_budget` caps consecutive λ-steps between two consumed letters.
/// `counter_cap` truncates exploration when any counter would exceed it; the
/// truncation is recorded so callers can tell exhaustive answers apart from
/// bounded ones. `horizon` caps the total number of node expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lambda_budget: u64,
    pub counter_cap: u64,
    pub horizon: u64,
}

impl Bounds {
    /// Default λ-budget: 4·|states|·(cap+1) per input letter, enough for any
    /// λ-path that does not revisit a (state, counter-pattern) pair at desk
    /// scale.
    pub fn for_machine(m: &CounterMachine, counter_cap: u64) -> Self {
        Bounds {
            lambda_budget: 4 * m.state_count() as u64 * (counter_cap + 1),
            counter_cap,
            horizon: 1_000_000,
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { lambda_budget: 256, counter_cap: 256, horizon: 1_000_000 }
    }
}

/// What bounded simulation saw: every configuration reachable after consuming
/// the whole prefix, tagged with whether the branch passed an accepting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub reached: BTreeSet<(Config, bool)>,
    pub lambda_steps: u64,
    pub pruned: bool,
}

impl RunRecord {
    pub fn is_dead(&self) -> bool {
        self.reached.is_empty()
    }

    pub fn any_accepting_en_route(&self) -> bool {
        self.reached.iter().any(|(_, saw)| *saw)
    }
}

/// All configurations reachable by consuming exactly `w`, allowing up to
/// `bounds.lambda_budget` λ-steps between letters (and after the last one).
/// Branches that would push a counter beyond `bounds.counter_cap` are cut and
/// `pruned` is set; they are never silently dropped.
pub fn simulate_prefix(
    m: &CounterMachine,
    w: &FiniteWord,
    bounds: &Bounds,
) -> Result<RunRecord, MachineError> {
    for l in w.iter() {
        if !m.alphabet().contains(l) {
            return Err(MachineError::UnknownLetter(l.as_str().into()));
        }
    }
    let init = Config::initial(m);
    let saw0 = m.is_accepting(init.state);
    let mut record = RunRecord {
        reached: BTreeSet::new(),
        lambda_steps: 0,
        pruned: false,
    };
    let mut frontier: BTreeSet<(Config, bool)> = BTreeSet::new();
    frontier.insert((init, saw0));
    lambda_closure(m, &mut frontier, bounds, &mut record);
    for l in w.iter() {
        let mut next: BTreeSet<(Config, bool)> = BTreeSet::new();
        for (c, saw) in &frontier {
            for succ in m.successors(c, Some(l))? {
                if succ.counters.iter().any(|&v| v > bounds.counter_cap) {
                    record.pruned = true;
                    continue;
                }
                let saw2 = *saw || m.is_accepting(succ.state);
                next.insert((succ, saw2));
            }
        }
        frontier = next;
        lambda_closure(m, &mut frontier, bounds, &mut record);
        if frontier.is_empty() {
            break;
        }
    }
    record.reached = frontier;
    Ok(record)
}

/// Expands the frontier by λ-steps, each branch taking at most the λ-budget.
fn lambda_closure(
    m: &CounterMachine,
    frontier: &mut BTreeSet<(Config, bool)>,
    bounds: &Bounds,
    record: &mut RunRecord,
) {
    if m.real_time() {
        return;
    }
    // Depth per (config, saw) pair: a pair reached within budget d is never
    // re-expanded at a worse depth.
    let mut work: Vec<(Config, bool, u64)> =
        frontier.iter().map(|(c, s)| (c.clone(), *s, 0)).collect();
    while let Some((c, saw, depth)) = work.pop() {
        if depth >= bounds.lambda_budget {
            record.pruned = true;
            continue;
        }
        for succ in m.successors(&c, None).expect("λ label is always valid") {
            if succ.counters.iter().any(|&v| v > bounds.counter_cap) {
                record.pruned = true;
                continue;
            }
            record.lambda_steps += 1;
            let saw2 = saw || m.is_accepting(succ.state);
            if frontier.insert((succ.clone(), saw2)) {
                work.push((succ, saw2, depth + 1));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::CounterTest;
    use crate::word::{Alphabet, Letter};
    use alloc::vec;

    /// One counter, counts a's; accepting sink after the first b when the
    /// counter is positive.
    fn count_then_flush() -> CounterMachine {
        CounterMachine::new(
            "count",
            1,
            true,
            Alphabet::from_chars("ab").unwrap(),
            vec!["c".into(), "f".into()],
            "c",
            &["f"],
            vec![
                (0, Some(Letter::new("a")), vec![CounterTest::Zero], 0, vec![1]),
                (0, Some(Letter::new("a")), vec![CounterTest::Positive], 0, vec![1]),
                (0, Some(Letter::new("b")), vec![CounterTest::Positive], 1, vec![0]),
                (1, Some(Letter::new("b")), vec![CounterTest::Positive], 1, vec![-1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn counts_letters() {
        let m = count_then_flush();
        let rec = simulate_prefix(&m, &FiniteWord::from_chars("aaab"), &Bounds::default()).unwrap();
        assert_eq!(rec.reached.len(), 1);
        let (c, saw) = rec.reached.first().unwrap();
        assert_eq!(c.counters, vec![3]);
        assert_eq!(c.state, 1);
        assert!(*saw);
        assert!(!rec.pruned);
    }

    #[test]
    fn dead_on_bad_first_letter() {
        let m = count_then_flush();
        let rec = simulate_prefix(&m, &FiniteWord::from_chars("b"), &Bounds::default()).unwrap();
        assert!(rec.is_dead());
    }

    #[test]
    fn counter_cap_prunes() {
        let m = count_then_flush();
        let tight = Bounds { counter_cap: 2, ..Bounds::default() };
        let rec = simulate_prefix(&m, &FiniteWord::from_chars("aaaa"), &tight).unwrap();
        assert!(rec.pruned);
        assert!(rec.is_dead());
    }

    #[test]
    fn lambda_steps_explore_between_letters() {
        // λ-rule moves p→q for free; an "a" is only readable from q.
        let m = CounterMachine::new(
            "hop",
            0,
            false,
            Alphabet::from_chars("a").unwrap(),
            vec!["p".into(), "q".into()],
            "p",
            &["q"],
            vec![
                (0, None, vec![], 1, vec![]),
                (1, Some(Letter::new("a")), vec![], 0, vec![]),
            ],
        )
        .unwrap();
        let rec = simulate_prefix(&m, &FiniteWord::from_chars("aa"), &Bounds::default()).unwrap();
        assert!(!rec.is_dead());
        assert!(rec.lambda_steps >= 3);
        assert!(rec.any_accepting_en_route());
    }
}
