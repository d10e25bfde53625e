//! Wadge plays over the bit alphabet, and the continuous reductions the
//! winning Player 2 strategies turn into.

use cfgames_core::games::{
    copy_strategy, first_letter_switch, skip_strategy, strategy_to_reduction, wadge_adjudicate,
    wadge_play, Reason, Winner,
};
use cfgames_core::langs::{first_letter_handle, zero_star_one_handle};
use cfgames_core::{Alphabet, Letter};

use super::{fmt_lasso, random_lasso, random_mealy_strategy, rng, SuiteReport};

const PLAYS: usize = 100;
const REDUCTION_CASES: usize = 100;
/// Joint transducer states are few, so a repeat certifies every tail well
/// before this many rounds.
const ROUNDS: u64 = 64;

fn bits() -> Alphabet {
    Alphabet::from_chars("01").unwrap()
}

pub fn run(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("wadge", seed);
    let s = bits();
    let zero = Letter::new("0");
    let one = Letter::new("1");
    let infinitely_many_ones = zero_star_one_handle(&s, &one).unwrap();
    let starts_with_one = first_letter_handle(&s, &one).unwrap();

    // Copying wins W(L, L) outright: b mirrors a, memberships agree, and the
    // mirrored word is infinite.
    let mut r = rng(seed, "wadge-copy");
    for case in 0..PLAYS {
        let mut f1 = random_mealy_strategy(&mut r, &s, 4, &format!("copy-{case}"));
        let mut f2 = copy_strategy(&s, None).unwrap();
        let t = wadge_play(&mut f1, &mut f2, ROUNDS).unwrap();
        let v = wadge_adjudicate(&t, &infinitely_many_ones, &infinitely_many_ones);
        report.check(v.winner == Winner::Player2, || {
            format!("copy case {case}: verdict {v}, a = {}…", t.a.prefix(12))
        });
    }

    // The switch strategy reduces "starts with 1" to "infinitely many 1s":
    // echo the first letter forever.
    let mut r = rng(seed, "wadge-switch");
    for case in 0..PLAYS {
        let mut f1 = random_mealy_strategy(&mut r, &s, 4, &format!("switch-{case}"));
        let mut f2 = first_letter_switch(&s, &one, &one, &zero).unwrap();
        let t = wadge_play(&mut f1, &mut f2, ROUNDS).unwrap();
        let v = wadge_adjudicate(&t, &starts_with_one, &infinitely_many_ones);
        report.check(v.winner == Winner::Player2, || {
            format!("switch case {case}: verdict {v}, a = {}…", t.a.prefix(12))
        });
    }

    // Refusing to write loses: the all-skip cycle certifies that b stays
    // finite, which no membership agreement can repair.
    let mut r = rng(seed, "wadge-skip");
    for case in 0..PLAYS {
        let mut f1 = random_mealy_strategy(&mut r, &s, 4, &format!("skip-{case}"));
        let mut f2 = skip_strategy(&s);
        let t = wadge_play(&mut f1, &mut f2, ROUNDS).unwrap();
        let v = wadge_adjudicate(&t, &infinitely_many_ones, &infinitely_many_ones);
        report.check(
            v.winner == Winner::Player1 && v.reason == Reason::BFinite,
            || format!("skip case {case}: verdict {v}"),
        );
    }

    // The same strategies as prefix transformers. Copying is the identity
    // reduction of L to itself; the switch witnesses the reduction between
    // the two sets above; all-skip yields no ω-word at all.
    let copy_red = {
        let s = s.clone();
        strategy_to_reduction("copy", move || copy_strategy(&s, None))
    };
    let switch_red = {
        let (s, one, zero) = (s.clone(), one.clone(), zero.clone());
        strategy_to_reduction("switch", move || first_letter_switch(&s, &one, &one, &zero))
    };
    let skip_red = {
        let s = s.clone();
        strategy_to_reduction("skip", move || Ok(skip_strategy(&s)))
    };
    let mut r = rng(seed, "wadge-reduce");
    for _case in 0..REDUCTION_CASES {
        let a = random_lasso(&mut r, &s, 6, 8);

        let image = copy_red.apply_lasso(&a).unwrap();
        let b = match image {
            Some(b) => b,
            None => {
                report.case();
                report.fail(format!("copy reduction dropped lasso {}", fmt_lasso(&a)));
                continue;
            }
        };
        report.check(
            infinitely_many_ones.lasso_membership(&a)
                == infinitely_many_ones.lasso_membership(&b),
            || format!("copy reduction changed membership of {}", fmt_lasso(&a)),
        );

        let image = switch_red.apply_lasso(&a).unwrap();
        let b = match image {
            Some(b) => b,
            None => {
                report.case();
                report.fail(format!("switch reduction dropped lasso {}", fmt_lasso(&a)));
                continue;
            }
        };
        report.check(
            starts_with_one.lasso_membership(&a) == infinitely_many_ones.lasso_membership(&b),
            || {
                format!(
                    "switch reduction broke the equivalence on {}: image {}",
                    fmt_lasso(&a),
                    fmt_lasso(&b)
                )
            },
        );

        report.check(skip_red.apply_lasso(&a).unwrap().is_none(), || {
            format!("all-skip reduction produced an ω-word on {}", fmt_lasso(&a))
        });
    }

    report
}
