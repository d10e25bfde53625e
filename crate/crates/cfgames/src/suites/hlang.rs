//! The shape language H: its finite Büchi automaton against the structural
//! oracle, and the closure law driving the exit-parity games.

use cfgames_core::accept::lasso_accepts_buchi;
use cfgames_core::coding::{a_letter, b_letter, c_letter, gamma_alphabet};
use cfgames_core::langs::{h_automaton, h_handle, never_exits_pref_h, vc_omega_handle};
use cfgames_core::{Alphabet, FiniteWord, Lasso, Letter, Tv};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{fmt_lasso, random_lasso, random_letter, rng, SuiteReport};

fn sigma() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn push_run(w: &mut FiniteWord, l: &Letter, n: usize) {
    for _ in 0..n {
        w.push(l.clone());
    }
}

/// A lasso inside H: spoke = first segment, cycle = one even plus one odd
/// segment, with run lengths drawn fresh. Every run parity follows the
/// grammar, so membership holds by construction.
pub(super) fn member_lasso(r: &mut ChaCha8Rng, s: &Alphabet) -> Lasso {
    let c = c_letter();
    let a = a_letter();
    let odd = |r: &mut ChaCha8Rng| 2 * r.random_range(1..=3) + 1;
    let even = |r: &mut ChaCha8Rng| 2 * r.random_range(1..=3);

    let mut spoke = FiniteWord::empty();
    push_run(&mut spoke, &c, odd(r));
    spoke.push(a.clone());
    spoke.push(random_letter(r, s));

    let mut cycle = FiniteWord::empty();
    push_run(&mut cycle, &c, even(r));
    cycle.push(a.clone());
    push_run(&mut cycle, &c, odd(r));
    cycle.push(random_letter(r, s));
    cycle.push(b_letter());
    push_run(&mut cycle, &c, even(r));
    cycle.push(a.clone());
    push_run(&mut cycle, &c, odd(r));
    cycle.push(a.clone());
    cycle.push(random_letter(r, s));

    Lasso::new(spoke, cycle).unwrap()
}

/// A member with one position rewritten to a random Γ letter. Often leaves
/// H; the oracle decides, the automaton must follow.
pub(super) fn mutant_lasso(r: &mut ChaCha8Rng, s: &Alphabet, gamma: &Alphabet) -> Lasso {
    let m = member_lasso(r, s);
    let mut spoke = m.spoke().clone();
    let mut cycle = m.cycle().clone();
    let flat = spoke.len() + cycle.len();
    let pos = r.random_range(0..flat);
    let swap = random_letter(r, gamma);
    if pos < spoke.len() {
        let mut letters: Vec<Letter> = spoke.iter().cloned().collect();
        letters[pos] = swap;
        spoke = FiniteWord::new(letters);
    } else {
        let mut letters: Vec<Letter> = cycle.iter().cloned().collect();
        letters[pos - spoke.len()] = swap;
        cycle = FiniteWord::new(letters);
    }
    Lasso::new(spoke, cycle).unwrap()
}

/// A prefix-set word ending in C, continued by C forever.
pub(super) fn all_c_tail_lasso(r: &mut ChaCha8Rng, s: &Alphabet) -> Lasso {
    let m = member_lasso(r, s);
    let horizon = m.spoke().len() + 2 * m.cycle().len();
    let c = c_letter();
    let mut cuts = Vec::new();
    for p in 1..=horizon as u64 {
        if *m.letter_at(p) == c {
            cuts.push(p);
        }
    }
    let cut = cuts[r.random_range(0..cuts.len())];
    Lasso::new(m.prefix(cut as usize), FiniteWord::new(vec![c])).unwrap()
}

const ORACLE_CASES: usize = 1000;

/// The H automaton answers exactly as the structural oracle on members,
/// one-letter mutants, and noise.
pub fn h_oracle(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("h-oracle", seed);
    let s = sigma();
    let gamma = gamma_alphabet(&s).unwrap();
    let machine = h_automaton(&s).unwrap();
    let oracle = h_handle(&s).unwrap();
    let mut r = rng(seed, "h-oracle");
    let mut split = [0u64; 2];
    for case in 0..ORACLE_CASES {
        let lasso = match case % 5 {
            0 | 1 => member_lasso(&mut r, &s),
            2 | 3 => mutant_lasso(&mut r, &s, &gamma),
            _ => random_lasso(&mut r, &gamma, 8, 12),
        };
        let want = oracle.lasso_membership(&lasso);
        let got = Tv::from_bool(lasso_accepts_buchi(&machine, &lasso).unwrap());
        split[usize::from(want == Tv::Accept)] += 1;
        report.check(got == want, || {
            format!(
                "case {case}: lasso {}: automaton {:?}, oracle {:?}",
                fmt_lasso(&lasso),
                got,
                want
            )
        });
    }
    report.note(format!("{} members, {} non-members", split[1], split[0]));
    report
}

const CLOSURE_CASES: usize = 1000;

/// Never leaving Pref(H) is the same as landing in H or in V·C^ω: the
/// left side comes from cycle analysis of the tracker, the right side from
/// the two independent oracles.
pub fn closure_law(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("closure-law", seed);
    let s = sigma();
    let gamma = gamma_alphabet(&s).unwrap();
    let h = h_handle(&s).unwrap();
    let vc = vc_omega_handle(&s).unwrap();
    let mut r = rng(seed, "closure-law");
    let mut inside = 0u64;
    for case in 0..CLOSURE_CASES {
        let lasso = match case % 4 {
            0 => member_lasso(&mut r, &s),
            1 => all_c_tail_lasso(&mut r, &s),
            2 => mutant_lasso(&mut r, &s, &gamma),
            _ => random_lasso(&mut r, &gamma, 6, 10),
        };
        let never_exits = never_exits_pref_h(&s, &lasso);
        let in_h = h.lasso_membership(&lasso);
        let in_vc = vc.lasso_membership(&lasso);
        report.check(in_h != Tv::Unknown && in_vc != Tv::Unknown, || {
            format!("case {case}: oracle returned Unknown on {}", fmt_lasso(&lasso))
        });
        let in_union = in_h == Tv::Accept || in_vc == Tv::Accept;
        if never_exits {
            inside += 1;
        }
        report.check(never_exits == in_union, || {
            format!(
                "case {case}: lasso {}: never-exits {} but H ∪ V·C^ω {}",
                fmt_lasso(&lasso),
                never_exits,
                in_union
            )
        });
    }
    report.note(format!("{inside} of {CLOSURE_CASES} never leave the prefix set"));
    report
}
