//! Verification suites behind `cfgames check` and the acceptance test.
//!
//! Every suite is a pure function of its seed: same seed, same cases, same
//! report. Each one pits a construction against an independent witness (a
//! structural oracle, an exhaustive recount, a brute-force search) and
//! records every disagreement. A suite passes iff nothing disagreed.

mod coding;
mod hcomp;
mod hlang;
mod lift;
mod lprime;
mod ops;
mod wadge;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cfgames_core::games::{Mealy, Move, Obs, Strategy};
use cfgames_core::{Alphabet, FiniteWord, Lasso, Letter};

pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub cases: u64,
    pub failure_count: u64,
    /// First few failure descriptions, enough to reproduce by hand.
    pub failures: Vec<String>,
    /// Free-form counters (unknown verdicts, member/mutant splits).
    pub notes: Vec<String>,
}

const KEPT_FAILURES: usize = 8;

impl SuiteReport {
    pub fn new(name: &'static str, seed: u64) -> Self {
        SuiteReport { name, seed, cases: 0, failure_count: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.case();
        if !ok {
            self.fail(msg());
        }
    }

    pub fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// One RNG per suite-and-purpose, so adding cases to one suite never shifts
/// another suite's stream.
pub(crate) fn rng(seed: u64, salt: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in salt.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(h);
    r
}

pub(crate) fn random_letter(r: &mut ChaCha8Rng, alphabet: &Alphabet) -> Letter {
    alphabet.letters()[r.random_range(0..alphabet.len())].clone()
}

pub(crate) fn random_word(r: &mut ChaCha8Rng, alphabet: &Alphabet, len: usize) -> FiniteWord {
    FiniteWord::new((0..len).map(|_| random_letter(r, alphabet)).collect())
}

pub(crate) fn random_lasso(
    r: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_spoke: usize,
    max_cycle: usize,
) -> Lasso {
    let spoke_len = r.random_range(0..=max_spoke);
    let spoke = random_word(r, alphabet, spoke_len);
    let cycle_len = r.random_range(1..=max_cycle);
    let cycle = random_word(r, alphabet, cycle_len);
    Lasso::new(spoke, cycle).expect("cycle is non-empty")
}

pub(crate) fn fmt_lasso(l: &Lasso) -> String {
    let joined = |w: &FiniteWord| w.iter().map(Letter::as_str).collect::<String>();
    format!("{}|{}", joined(l.spoke()), joined(l.cycle()))
}

/// A total random transducer: every (state, observation) pair maps to a
/// fresh random letter. Finite-state, so plays against it produce lassos.
pub(crate) fn random_mealy_strategy(
    r: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_states: usize,
    tag: &str,
) -> Strategy {
    let states = r.random_range(1..=max_states);
    let mut entries = Vec::new();
    for s in 0..states {
        let mut obs: Vec<Obs> = vec![Obs::Start, Obs::Skip];
        obs.extend(alphabet.letters().iter().cloned().map(Obs::Letter));
        for o in obs {
            let to = r.random_range(0..states);
            let mv = Move::Letter(random_letter(r, alphabet));
            entries.push(((s, o), (to, mv)));
        }
    }
    let m = Mealy::new(states, 0, entries).expect("entries are in range and distinct");
    Strategy::finite(tag, m)
}

pub(crate) type SuiteFn = fn(u64) -> SuiteReport;

/// Criterion number, suite name, runner. Order matches the acceptance list.
pub fn criteria() -> Vec<(u32, &'static str, SuiteFn)> {
    vec![
        (1, "coding-roundtrip", coding::roundtrip as SuiteFn),
        (2, "forced-move", coding::forced_move_suite),
        (3, "lprime", lprime::run),
        (4, "h-oracle", hlang::h_oracle),
        (5, "closure-law", hlang::closure_law),
        (6, "closure-ops", ops::run),
        (7, "h-complement", hcomp::h_complement),
        (8, "ell-pipeline", hcomp::ell_pipeline),
        (9, "lift", lift::run),
        (10, "wadge", wadge::run),
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    criteria().into_iter().map(|(_, n, _)| n).collect()
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    criteria()
        .into_iter()
        .find(|(_, n, _)| *n == name)
        .map(|(_, _, f)| f(seed))
}
