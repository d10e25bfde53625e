//! The auxiliary language over the θ side: words whose first exit from
//! Pref(θ(Σ^ω)) happens at an even position. Two checks: the definitional
//! predicate coincides with the first-exit characterization on all short
//! words, and the counter machine agrees with the exit-parity oracle on
//! curated lassos with no Unknown verdicts.

use cfgames_core::accept::{lasso_accepts_buchi, lasso_accepts_counter};
use cfgames_core::coding::{e_letter, theta_alphabet, theta_classify, ThetaParams, ThetaTracker};
use cfgames_core::langs::lprime_machine;
use cfgames_core::run::Bounds;
use cfgames_core::{Alphabet, FiniteWord, Lasso, Tv};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{fmt_lasso, random_lasso, random_letter, random_word, rng, SuiteReport};

fn sigma() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

const S: u64 = 2;
const EXHAUSTIVE_LEN: usize = 8;
const CURATED_CASES: usize = 500;

/// First position whose prefix is outside Pref, if any.
fn first_exit(params: ThetaParams, s: &Alphabet, y: &FiniteWord) -> Option<u64> {
    theta_classify(params, s, y).exited_at()
}

/// The definitional form: some even prefix length 2n has its predecessor
/// inside Pref and itself outside. Scans every n rather than reusing the
/// first-exit scan.
fn definitional(params: ThetaParams, s: &Alphabet, y: &FiniteWord) -> bool {
    for n in 1..=(y.len() / 2) {
        let head = y.prefix(2 * n - 1);
        let full = y.prefix(2 * n);
        if theta_classify(params, s, &head).exited_at().is_none()
            && theta_classify(params, s, &full).exited_at().is_some()
        {
            return true;
        }
    }
    false
}

/// An image prefix of odd (`exit_even`) or even length, then a letter that
/// leaves the prefix set, then junk: the first exit lands at a position of
/// known parity.
fn deviating_lasso(
    r: &mut ChaCha8Rng,
    params: ThetaParams,
    s: &Alphabet,
    coded: &Alphabet,
    exit_even: bool,
) -> Lasso {
    let payload_len = r.random_range(1..=4);
    let x = random_word(r, s, payload_len);
    let image = cfgames_core::coding::theta_encode(params, &x);
    let max = image.len().min(24);
    let mut cut = r.random_range(1..=max);
    // One past the image is still fine: the exit letter goes there.
    if (cut % 2 == 0) != exit_even {
        cut = if cut >= 2 { cut - 1 } else { cut + 1 };
    }
    let prefix = image.prefix(cut - 1);
    let mut tracker = ThetaTracker::new(params, s).unwrap();
    for l in prefix.iter() {
        tracker.feed(l);
    }
    let bad = coded
        .letters()
        .iter()
        .find(|l| {
            let mut probe = prefix.clone();
            probe.push((*l).clone());
            theta_classify(params, s, &probe).exited_at().is_some()
        })
        .expect("no prefix-set word has every continuation inside");
    let mut spoke = prefix;
    spoke.push(bad.clone());
    for _ in 0..r.random_range(0..4) {
        spoke.push(random_letter(r, coded));
    }
    let cycle_len = r.random_range(1..=5);
    let cycle = random_word(r, coded, cycle_len);
    Lasso::new(spoke, cycle).unwrap()
}

/// Exit parity of an eventually periodic word, found by feeding letters.
/// Every lasso exits: image E-runs outgrow any period.
fn exit_parity_oracle(params: ThetaParams, s: &Alphabet, l: &Lasso, cap: u64) -> Option<bool> {
    let mut tracker = ThetaTracker::new(params, s).unwrap();
    for pos in 1..=cap {
        if !tracker.feed(l.letter_at(pos)) {
            return Some(pos % 2 == 0);
        }
    }
    None
}

pub fn run(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lprime", seed);
    let params = ThetaParams::new(S).unwrap();
    let s = sigma();
    let coded = theta_alphabet(&s).unwrap();

    // every word over the coded alphabet up to the exhaustive length
    let mut members = 0u64;
    let mut frontier: Vec<FiniteWord> = vec![FiniteWord::empty()];
    while let Some(w) = frontier.pop() {
        let by_definition = definitional(params, &s, &w);
        let by_exit = first_exit(params, &s, &w).is_some_and(|p| p % 2 == 0);
        if by_definition {
            members += 1;
        }
        report.check(by_definition == by_exit, || {
            format!(
                "word {:?}: definitional predicate {} but first-exit parity {}",
                w, by_definition, by_exit
            )
        });
        if w.len() < EXHAUSTIVE_LEN {
            for l in coded.letters() {
                let mut ext = w.clone();
                ext.push(l.clone());
                frontier.push(ext);
            }
        }
    }
    report.note(format!(
        "exhaustive to length {EXHAUSTIVE_LEN}: {} words, {members} members",
        report.cases
    ));

    // curated lassos against the machine
    let machine = lprime_machine(params, &s).unwrap();
    let bounds = Bounds::for_machine(&machine, 4096);
    let mut r = rng(seed, "lprime-lassos");
    let mut unknowns = 0u64;
    for case in 0..CURATED_CASES {
        let lasso = match case % 5 {
            0 => deviating_lasso(&mut r, params, &s, &coded, true),
            1 => deviating_lasso(&mut r, params, &s, &coded, false),
            2 => random_lasso(&mut r, &coded, 8, 6),
            3 => {
                let mut spoke = random_word(&mut r, &s, 1);
                for _ in 0..r.random_range(0..3) {
                    spoke.push(e_letter());
                }
                Lasso::new(spoke, FiniteWord::new(vec![e_letter()])).unwrap()
            }
            _ => {
                let n = r.random_range(1..=3);
                let x = random_word(&mut r, &s, n);
                let image = cfgames_core::coding::theta_encode(params, &x);
                let cut = r.random_range(1..=image.len().min(20));
                Lasso::new(image.prefix(cut), random_word(&mut r, &coded, 3)).unwrap()
            }
        };
        let Some(expected) = exit_parity_oracle(params, &s, &lasso, 10_000) else {
            report.case();
            report.fail(format!("case {case}: lasso {} never exits", fmt_lasso(&lasso)));
            continue;
        };
        let got = if machine.k() == 0 {
            Tv::from_bool(lasso_accepts_buchi(&machine, &lasso).unwrap())
        } else {
            lasso_accepts_counter(&machine, &lasso, &bounds).unwrap()
        };
        if got == Tv::Unknown {
            unknowns += 1;
        }
        report.check(got == Tv::from_bool(expected), || {
            format!(
                "case {case}: lasso {}: machine says {:?}, exit parity says {}",
                fmt_lasso(&lasso),
                got,
                expected
            )
        });
    }
    report.check(unknowns == 0, || {
        format!("{unknowns} curated lassos came back Unknown")
    });
    report
}
