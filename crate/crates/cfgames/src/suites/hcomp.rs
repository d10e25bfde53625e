//! The complement-of-the-image machine and the full composed pipeline,
//! each against its semantic oracle.

use cfgames_core::accept::lasso_accepts_counter;
use cfgames_core::coding::{a_letter, b_letter, c_letter, gamma_alphabet, h_encode, HParams};
use cfgames_core::langs::{ell_handle, ell_machine, h_complement_handle, h_complement_machine};
use cfgames_core::run::Bounds;
use cfgames_core::{Alphabet, FiniteWord, Lasso, Tv};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::hlang::{all_c_tail_lasso, member_lasso, mutant_lasso};
use super::{fmt_lasso, random_lasso, random_letter, random_word, rng, SuiteReport};

fn sigma() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

const K: u64 = 2;

fn push_run(w: &mut FiniteWord, n: u64) {
    for _ in 0..n {
        w.push(c_letter());
    }
}

/// Words shaped like image prefixes with controlled run lengths. `pairs`
/// lists (first run, second run) per segment from segment 2 on; honest
/// segments use (K^n, K^n + 1) with each first run K times the previous.
fn segmented_word(r: &mut ChaCha8Rng, s: &Alphabet, pairs: &[(u64, u64)]) -> FiniteWord {
    let mut w = FiniteWord::empty();
    push_run(&mut w, K + 1);
    w.push(a_letter());
    w.push(random_letter(r, s));
    for (n, &(p, q)) in pairs.iter().enumerate() {
        let seg = n + 2;
        push_run(&mut w, p);
        w.push(a_letter());
        push_run(&mut w, q);
        if seg % 2 == 0 {
            w.push(random_letter(r, s));
            w.push(b_letter());
        } else {
            w.push(a_letter());
            w.push(random_letter(r, s));
        }
    }
    w
}

const COMPLEMENT_CASES: usize = 500;

/// No eventually periodic word is an h image, so the complement machine
/// must accept every lasso; the classes differ in which violation an
/// accepting run has to find.
pub fn h_complement(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("h-complement", seed);
    let s = sigma();
    let gamma = gamma_alphabet(&s).unwrap();
    let params = HParams::new(K).unwrap();
    let machine = h_complement_machine(params, &s).unwrap();
    let oracle = h_complement_handle(params, &s).unwrap();
    let bounds = Bounds::for_machine(&machine, 4096);
    let mut r = rng(seed, "h-complement");
    let mut unknowns = 0u64;
    for case in 0..COMPLEMENT_CASES {
        let lasso = match case % 4 {
            // image-consistent: a true image prefix, then junk
            0 => {
                let n = r.random_range(1..=4);
                let x = random_word(&mut r, &s, n);
                let image = h_encode(params, &x);
                let cut = r.random_range(1..=image.len());
                let tail_len = r.random_range(1..=4);
                let tail = random_word(&mut r, &gamma, tail_len);
                Lasso::new(image.prefix(cut), tail).unwrap()
            }
            // unequal pair: some second run is not its first run plus one
            1 => {
                let p = 2 * r.random_range(1..=4);
                let q = p + 1 + r.random_range(1..=3);
                Lasso::new(
                    segmented_word(&mut r, &s, &[(K * K, K * K + 1), (p, q)]),
                    random_word(&mut r, &gamma, 2),
                )
                .unwrap()
            }
            // wrong ratio: the next segment's first run is off K times
            2 => {
                let p = K * K;
                let wrong = K * p + 2 * r.random_range(1..=2);
                Lasso::new(
                    segmented_word(&mut r, &s, &[(p, p + 1), (wrong, wrong + 1)]),
                    random_word(&mut r, &gamma, 2),
                )
                .unwrap()
            }
            // shape violation: unconstrained noise
            _ => random_lasso(&mut r, &gamma, 10, 8),
        };
        let want = oracle.lasso_membership(&lasso);
        let got = lasso_accepts_counter(&machine, &lasso, &bounds).unwrap();
        if got == Tv::Unknown {
            unknowns += 1;
        }
        report.check(got.consistent_with(want), || {
            format!(
                "case {case}: lasso {}: machine {got:?} contradicts oracle {want:?}",
                fmt_lasso(&lasso)
            )
        });
        report.check(got != Tv::Reject, || {
            format!("case {case}: lasso {} rejected; every lasso avoids the image", fmt_lasso(&lasso))
        });
    }
    report.check(unknowns == 0, || format!("{unknowns} lassos came back Unknown"));
    report
}

const PIPELINE_CASES: usize = 500;

/// The composed machine, for the empty condition and for x(1) = a, against
/// the composed semantic oracle.
pub fn ell_pipeline(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("ell-pipeline", seed);
    let s = sigma();
    let gamma = gamma_alphabet(&s).unwrap();
    let params = HParams::new(K).unwrap();
    for cond_str in ["", "1=a"] {
        let cond = crate::format::parse_cond(&s, cond_str).unwrap();
        let machine = ell_machine(params, &s, &cond).unwrap();
        let oracle = ell_handle(params, &s, &cond).unwrap();
        let bounds = Bounds::for_machine(&machine, 4096);
        let label = if cond_str.is_empty() { "cond {}" } else { "cond {1:a}" };
        let mut r = rng(seed, &format!("ell-pipeline-{cond_str}"));
        let mut unknowns = 0u64;
        let mut accepted = 0u64;
        for case in 0..PIPELINE_CASES {
            let lasso = match case % 4 {
                0 => member_lasso(&mut r, &s),
                1 => all_c_tail_lasso(&mut r, &s),
                2 => mutant_lasso(&mut r, &s, &gamma),
                _ => random_lasso(&mut r, &gamma, 6, 8),
            };
            let want = oracle.lasso_membership(&lasso);
            let got = lasso_accepts_counter(&machine, &lasso, &bounds).unwrap();
            if got == Tv::Unknown {
                unknowns += 1;
            }
            if want == Tv::Accept {
                accepted += 1;
            }
            report.check(got.consistent_with(want), || {
                format!(
                    "{label} case {case}: lasso {}: machine {got:?} contradicts oracle {want:?}",
                    fmt_lasso(&lasso)
                )
            });
        }
        report.check(unknowns == 0, || format!("{label}: {unknowns} lassos came back Unknown"));
        report.note(format!("{label}: {accepted} of {PIPELINE_CASES} in the language"));
    }
    report
}
