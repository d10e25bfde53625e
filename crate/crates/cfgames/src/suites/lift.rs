//! Lifting big-game strategies to the small game, for both codings and both
//! roles, with the re-encoding identity checked after every lifted move.

use cfgames_core::coding::{HParams, ThetaParams};
use cfgames_core::games::{
    const_strategy, forced_then, lift_p1, lift_p2, run_lift_with_identity_check, Coding,
    GameError, Winner,
};
use cfgames_core::langs::{first_letter_handle, nth_letter_handle};
use cfgames_core::{Alphabet, Letter};

use super::{random_mealy_strategy, rng, SuiteReport};

const OPPONENTS: usize = 100;
const BIG_HORIZON: u64 = 10_000;

fn codings() -> [Coding; 2] {
    [
        Coding::Theta(ThetaParams::new(2).unwrap()),
        Coding::H(HParams::new(2).unwrap()),
    ]
}

pub fn run(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lift", seed);
    let s = Alphabet::from_chars("ab").unwrap();
    let a = Letter::new("a");

    // Player 1 against the clopen set "first letter is a". The big strategy
    // supplies every forced letter and plays a at its payload slots, so the
    // lifted strategy must open with a and win every adjudicated play.
    let first_a = first_letter_handle(&s, &a).unwrap();
    for coding in codings() {
        let mut r = rng(seed, &format!("lift-p1-{coding}"));
        for case in 0..OPPONENTS {
            let big = forced_then(&coding, &s, &a).unwrap();
            let mut lift = lift_p1(big, &coding, &s).unwrap();
            let mut opp = random_mealy_strategy(&mut r, &s, 4, &format!("{coding}-{case}"));
            match run_lift_with_identity_check(&mut lift, &mut opp, &first_a, BIG_HORIZON) {
                Ok(rep) => {
                    report.check(rep.verdict.winner == Winner::Player1, || {
                        format!("{coding} p1 case {case}: verdict {}", rep.verdict)
                    });
                    report.check(rep.identity_ok, || {
                        format!("{coding} p1 case {case}: re-encoding identity broke")
                    });
                    report.check(*rep.small.letter(1) == a, || {
                        format!("{coding} p1 case {case}: opened with {}", rep.small.letter(1))
                    });
                    report.check(rep.big_len >= BIG_HORIZON, || {
                        format!("{coding} p1 case {case}: stopped at big length {}", rep.big_len)
                    });
                }
                Err(e) => {
                    report.case();
                    report.fail(format!("{coding} p1 case {case}: simulation failed: {e}"));
                }
            }
        }
    }

    // A big strategy that ignores the forced letters leaves the prefix set,
    // and the simulation pinpoints the exit instead of mislabeling the play.
    for coding in codings() {
        let coded = coding.alphabet(&s).unwrap();
        let big = const_strategy(&coded, &a).unwrap();
        let mut lift = lift_p1(big, &coding, &s).unwrap();
        let mut opp = const_strategy(&s, &Letter::new("b")).unwrap();
        match run_lift_with_identity_check(&mut lift, &mut opp, &first_a, BIG_HORIZON) {
            Err(GameError::ExitsCoding { got, .. }) => {
                report.check(got == a, || {
                    format!("{coding} deviation: exit letter {got}, expected the constant a")
                });
            }
            Err(e) => {
                report.case();
                report.fail(format!("{coding} deviation: wrong error {e}"));
            }
            Ok(rep) => {
                report.case();
                report.fail(format!(
                    "{coding} deviation: constant big strategy survived to verdict {}",
                    rep.verdict
                ));
            }
        }
    }

    // Player 2 against the set "second letter differs from a". Its first
    // payload slot is the small game's second letter; playing a there denies
    // Player 1 the set on every adjudicated play.
    let second_not_a = nth_letter_handle(&s, 2, &a, true).unwrap();
    for coding in codings() {
        let mut r = rng(seed, &format!("lift-p2-{coding}"));
        for case in 0..OPPONENTS {
            let big = forced_then(&coding, &s, &a).unwrap();
            let mut lift = lift_p2(big, &coding, &s).unwrap();
            let mut opp = random_mealy_strategy(&mut r, &s, 4, &format!("{coding}-{case}"));
            match run_lift_with_identity_check(&mut lift, &mut opp, &second_not_a, BIG_HORIZON) {
                Ok(rep) => {
                    report.check(rep.verdict.winner == Winner::Player2, || {
                        format!("{coding} p2 case {case}: verdict {}", rep.verdict)
                    });
                    report.check(rep.identity_ok, || {
                        format!("{coding} p2 case {case}: re-encoding identity broke")
                    });
                    report.check(*rep.small.letter(2) == a, || {
                        format!("{coding} p2 case {case}: second letter {}", rep.small.letter(2))
                    });
                }
                Err(e) => {
                    report.case();
                    report.fail(format!("{coding} p2 case {case}: simulation failed: {e}"));
                }
            }
        }
    }

    report
}
