//! Round-trip and forced-move suites for the padding codings.

use cfgames_core::coding::{
    h_encode, hk_encode, theta_encode, HParams, HkTracker, HTracker, PrefixVerdict, ThetaParams,
    ThetaTracker,
};
use cfgames_core::games::{forced_move, Coding, ForcedOutcome, Player};
use cfgames_core::{Alphabet, FiniteWord, Letter};
use rand::Rng;

use super::{random_word, rng, SuiteReport};

fn sigma() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

enum Tracker {
    Theta(ThetaTracker),
    Hk(HkTracker),
    H(HTracker),
}

impl Tracker {
    fn feed(&mut self, l: &Letter) -> bool {
        match self {
            Tracker::Theta(t) => t.feed(l),
            Tracker::Hk(t) => t.feed(l),
            Tracker::H(t) => t.feed(l),
        }
    }

    fn decoded(&self) -> FiniteWord {
        match self {
            Tracker::Theta(t) => t.decoded().clone(),
            Tracker::Hk(t) => match t.verdict() {
                PrefixVerdict::InPref { decoded } => decoded,
                PrefixVerdict::ExitedAt { .. } => FiniteWord::empty(),
            },
            Tracker::H(t) => t.decoded().clone(),
        }
    }
}

struct Family {
    label: &'static str,
    /// Payload lengths drawn uniformly from 1..=max_n.
    max_n: usize,
    /// A few cases get this length instead, exercising the next block size
    /// where uniform sampling would be too expensive.
    long_n: Option<usize>,
    encode: Box<dyn Fn(&FiniteWord) -> FiniteWord>,
    tracker: Box<dyn Fn() -> Tracker>,
}

fn families() -> Vec<Family> {
    let s = sigma();
    let mut out = Vec::new();
    for (label, sv, max_n, long_n) in [
        ("theta[S=2]", 2u64, 10, None),
        ("theta[S=4]", 4, 6, None),
        ("theta[S=1728]", 1728, 1, Some(2)),
    ] {
        let params = ThetaParams::new(sv).unwrap();
        let s2 = s.clone();
        out.push(Family {
            label,
            max_n,
            long_n,
            encode: Box::new(move |x| theta_encode(params, x)),
            tracker: Box::new(move || Tracker::Theta(ThetaTracker::new(params, &s2).unwrap())),
        });
    }
    for (label, kv, max_n) in [("hk[K=2]", 2u64, 10), ("hk[K=3]", 3, 7)] {
        let params = HParams::new(kv).unwrap();
        let s2 = s.clone();
        out.push(Family {
            label,
            max_n,
            long_n: None,
            encode: Box::new(move |x| hk_encode(params, x)),
            tracker: Box::new(move || Tracker::Hk(HkTracker::new(params, &s2).unwrap())),
        });
    }
    for (label, kv, max_n) in [("h[K=2]", 2u64, 12), ("h[K=3]", 3, 8)] {
        let params = HParams::new(kv).unwrap();
        let s2 = s.clone();
        out.push(Family {
            label,
            max_n,
            long_n: None,
            encode: Box::new(move |x| h_encode(params, x)),
            tracker: Box::new(move || Tracker::H(HTracker::new(params, &s2).unwrap())),
        });
    }
    out
}

const CASES_PER_FAMILY: usize = 1000;
const LONG_CASES: usize = 3;

/// decode ∘ encode is the identity and every prefix of an image stays in
/// the coding's prefix set, across all parameter families.
pub fn roundtrip(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("coding-roundtrip", seed);
    let s = sigma();
    for fam in families() {
        let mut r = rng(seed, fam.label);
        for case in 0..CASES_PER_FAMILY {
            let n = match fam.long_n {
                Some(long) if case < LONG_CASES => long,
                _ => r.random_range(1..=fam.max_n),
            };
            let x = random_word(&mut r, &s, n);
            let w = (fam.encode)(&x);
            let mut t = (fam.tracker)();
            let mut ok = true;
            for (i, l) in w.iter().enumerate() {
                if !t.feed(l) {
                    report.case();
                    report.fail(format!(
                        "{}: case {case}: image prefix of length {} left the prefix set",
                        fam.label,
                        i + 1
                    ));
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            report.check(t.decoded() == x, || {
                format!(
                    "{}: case {case}: decode(encode(x)) = {:?} but x = {:?}",
                    fam.label,
                    t.decoded(),
                    x
                )
            });
        }
    }
    report
}

const FORCED_DEPTH: usize = 40;

/// Every word in the prefix set has, at each non-payload position, exactly
/// one continuation that stays inside; payload positions admit exactly the
/// payload letters. Exhaustive to depth 40, recounted against `forced_move`.
pub fn forced_move_suite(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("forced-move", seed);
    let s = sigma();
    for coding in [
        Coding::Theta(ThetaParams::new(2).unwrap()),
        Coding::H(HParams::new(2).unwrap()),
    ] {
        let coded = coding.alphabet(&s).unwrap();
        let mut frontier = vec![FiniteWord::empty()];
        let mut visited = 0u64;
        while let Some(w) = frontier.pop() {
            visited += 1;
            let mut stayers = Vec::new();
            for l in coded.letters() {
                let mut ext = w.clone();
                ext.push(l.clone());
                if coding.classify(&s, &ext).unwrap().exited_at().is_none() {
                    stayers.push(l.clone());
                }
            }
            let payload_slot = stayers.len() == s.len()
                && s.letters().iter().all(|l| stayers.contains(l));
            let outcome = forced_move(&coding, &s, &w).unwrap();
            if payload_slot {
                let decoded_len = match coding.classify(&s, &w).unwrap() {
                    cfgames_core::coding::PrefixVerdict::InPref { decoded } => decoded.len() as u64,
                    cfgames_core::coding::PrefixVerdict::ExitedAt { .. } => unreachable!(),
                };
                let want_writer = Player::of_position(w.len() as u64 + 1);
                report.check(
                    matches!(
                        outcome,
                        ForcedOutcome::FreeSlot { writer, x_index }
                            if writer == want_writer && x_index == decoded_len + 1
                    ),
                    || format!("{coding}: payload slot after {} letters misreported", w.len()),
                );
            } else {
                report.check(stayers.len() == 1, || {
                    format!(
                        "{coding}: {} continuations stay after {} letters; the coding is not rigid",
                        stayers.len(),
                        w.len()
                    )
                });
                if stayers.len() == 1 {
                    report.check(
                        outcome == ForcedOutcome::Forced(stayers[0].clone()),
                        || format!("{coding}: forced_move disagrees after {} letters", w.len()),
                    );
                }
            }
            if w.len() < FORCED_DEPTH {
                for l in stayers {
                    let mut ext = w.clone();
                    ext.push(l);
                    frontier.push(ext);
                }
            }
        }
        report.note(format!("{coding}: {visited} prefix-set words visited to depth {FORCED_DEPTH}"));
    }
    report
}
