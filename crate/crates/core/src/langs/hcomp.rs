//! The complement of the h image and the assembled language 𝓛.
//!
//! h pads x(1)x(2)x(3)… into
//!
//! ```text
//! C^{K+1}·A·x(1) · C^{K²}·A·C^{K²+1}·x(2)·B · C^{K³}·A·C^{K³+1}·A·x(3) · …
//! ```
//!
//! so a word is an image iff it follows that letter pattern, the first run
//! has length exactly K+1, within each later segment the second run is one
//! longer than the first, consecutive first runs grow by a factor of K
//! (with K·(ℓ₁−1) linking the first segment to the second), and payload
//! letters keep arriving. A single counter suffices to refute any one of
//! these conditions, and the complement machine simply guesses which one
//! fails: it shadows the pattern deterministically and branches at a segment
//! start to measure one equality. Every certificate state is entered only
//! once a violation is irrevocable, so the machine is sound on all words,
//! and on eventually periodic words some violation always exists because
//! image run lengths grow without bound.
//!
//! The remaining pieces of 𝓛 are regular. A sloppy payload checker watches
//! the Σ-letters of a word (on images those are exactly the payloads) and
//! enforces a clopen condition on them, accepting junk on non-images that
//! the union with the complement absorbs. 𝓛 itself is
//! (complement ∪ checker) ∩ H, joined with V·C^ω and the even-exit words
//! U·Γ^ω.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coding::{a_letter, b_letter, c_letter, gamma_alphabet, HParams};
use crate::compose::{intersect_regular, union};
use crate::langs::pref_h::{h_automaton, u_gamma_omega_machine, vc_omega_machine};
use crate::langs::{expand_rules, ClopenCondition};
use crate::machine::{CounterMachine, CounterTest, StateId};
use crate::word::{Alphabet, Letter};

struct StateSpace {
    names: Vec<String>,
}

impl StateSpace {
    fn new() -> Self {
        StateSpace { names: Vec::new() }
    }

    fn add(&mut self, name: String) -> StateId {
        self.names.push(name);
        self.names.len() - 1
    }
}

const ZERO: Option<CounterTest> = Some(CounterTest::Zero);
const POS: Option<CounterTest> = Some(CounterTest::Positive);
const ANY: Option<CounterTest> = None;

/// Nondeterministic real-time 1-counter machine accepting exactly the
/// ω-words over Γ = Σ ∪ {A, B, C} that are not h images.
pub fn h_complement_machine(
    params: HParams,
    sigma: &Alphabet,
) -> Result<CounterMachine, String> {
    let gamma = gamma_alphabet(sigma)?;
    let k = params.k() as usize;
    let (a, b, c) = (a_letter(), b_letter(), c_letter());

    let mut sp = StateSpace::new();
    let q0 = sp.add("q0".into());
    let qrun1: Vec<StateId> =
        (1..=k + 1).map(|i| sp.add(format!("qrun1.{i}"))).collect();
    let qx1 = sp.add("qx1".into());
    // Parity index 0 = even segment, 1 = odd.
    let qpre = [sp.add("qpre.e".into()), sp.add("qpre.o".into())];
    let qr1 = [sp.add("qr1.e".into()), sp.add("qr1.o".into())];
    let qmid = [sp.add("qmid.e".into()), sp.add("qmid.o".into())];
    let qr2 = [sp.add("qr2.e".into()), sp.add("qr2.o".into())];
    let qb = sp.add("qb".into());
    let qodda = sp.add("qodda".into());
    let sink = sp.add("sink".into());
    let cloop = sp.add("cloop".into());
    let bcount = [sp.add("bcount.e".into()), sp.add("bcount.o".into())];
    let bfree = [sp.add("bfree.e".into()), sp.add("bfree.o".into())];
    let bdown = [sp.add("bdown.e".into()), sp.add("bdown.o".into())];
    let rcount1 = sp.add("rcount1".into());
    let rx1 = sp.add("rx1".into());
    let rcount = [sp.add("rcount.e".into()), sp.add("rcount.o".into())];
    let rmid = [sp.add("rmid.e".into()), sp.add("rmid.o".into())];
    let rr2 = [sp.add("rr2.e".into()), sp.add("rr2.o".into())];
    let rsealb = sp.add("rsealb".into());
    let ra2 = sp.add("ra2".into());
    let rdown: Vec<StateId> = (0..k).map(|m| sp.add(format!("rdown.{m}"))).collect();

    // The deterministic shadow of the image pattern. Off-pattern letters are
    // themselves a certificate, so they lead straight to the sink.
    let quiet_move = |q: StateId, l: &Letter| -> StateId {
        let x = sigma.contains(l);
        if q == q0 && *l == c {
            qrun1[0]
        } else if let Some(i) = qrun1.iter().position(|&s| s == q) {
            if i + 1 < k + 1 && *l == c {
                qrun1[i + 1]
            } else if i + 1 == k + 1 && *l == a {
                qx1
            } else {
                sink
            }
        } else if q == qx1 && x {
            qpre[0]
        } else if q == qodda && x {
            qpre[0]
        } else if q == qb && *l == b {
            qpre[1]
        } else if let Some(p) = qpre.iter().position(|&s| s == q) {
            if *l == c {
                qr1[p]
            } else {
                sink
            }
        } else if let Some(p) = qr1.iter().position(|&s| s == q) {
            if *l == c {
                qr1[p]
            } else if *l == a {
                qmid[p]
            } else {
                sink
            }
        } else if let Some(p) = qmid.iter().position(|&s| s == q) {
            if *l == c {
                qr2[p]
            } else {
                sink
            }
        } else if let Some(p) = qr2.iter().position(|&s| s == q) {
            if *l == c {
                qr2[p]
            } else if p == 0 && x {
                qb
            } else if p == 1 && *l == a {
                qodda
            } else {
                sink
            }
        } else {
            sink
        }
    };

    let quiet: Vec<StateId> = [q0, qx1, qb, qodda]
        .into_iter()
        .chain(qrun1.iter().copied())
        .chain(qpre)
        .chain(qr1)
        .chain(qmid)
        .chain(qr2)
        .collect();

    let mut specs = Vec::new();
    for &q in &quiet {
        for l in gamma.letters() {
            specs.push((q, Some(l.clone()), vec![ZERO], quiet_move(q, l), vec![0]));
        }
        // An all-C tail has finitely many payloads; guess it on any C.
        specs.push((q, Some(c.clone()), vec![ZERO], cloop, vec![0]));
    }
    specs.push((cloop, Some(c.clone()), vec![ZERO], cloop, vec![0]));
    for l in gamma.letters() {
        specs.push((sink, Some(l.clone()), vec![ANY], sink, vec![0]));
    }

    // Pair check: within a guessed segment, the second run must be one
    // longer than the first. Count run one, let the first C of run two pass
    // free, drain the rest; the terminator timing exposes any mismatch.
    for p in 0..2usize {
        specs.push((qpre[p], Some(c.clone()), vec![ZERO], bcount[p], vec![1]));
        specs.push((bcount[p], Some(c.clone()), vec![POS], bcount[p], vec![1]));
        specs.push((bcount[p], Some(a.clone()), vec![POS], bfree[p], vec![0]));
        specs.push((bfree[p], Some(c.clone()), vec![POS], bdown[p], vec![0]));
        specs.push((bdown[p], Some(c.clone()), vec![POS], bdown[p], vec![-1]));
        specs.push((bdown[p], Some(c.clone()), vec![ZERO], sink, vec![0]));
        let terminators: Vec<Letter> = if p == 0 {
            sigma.letters().to_vec()
        } else {
            vec![a.clone()]
        };
        for t in terminators {
            specs.push((bdown[p], Some(t), vec![POS], sink, vec![0]));
        }
    }

    // Ratio check: the next segment's first run must be K times this one
    // (K·(ℓ₁−1) against the first run, whose initial C is skipped). Count,
    // skip ahead to the next first run, drain one per block of K.
    specs.push((q0, Some(c.clone()), vec![ZERO], rcount1, vec![0]));
    specs.push((rcount1, Some(c.clone()), vec![ANY], rcount1, vec![1]));
    specs.push((rcount1, Some(a.clone()), vec![ANY], rx1, vec![0]));
    for l in sigma.letters() {
        specs.push((rx1, Some(l.clone()), vec![ANY], rdown[0], vec![0]));
    }
    for p in 0..2usize {
        specs.push((qpre[p], Some(c.clone()), vec![ZERO], rcount[p], vec![1]));
        specs.push((rcount[p], Some(c.clone()), vec![POS], rcount[p], vec![1]));
        specs.push((rcount[p], Some(a.clone()), vec![POS], rmid[p], vec![0]));
        specs.push((rmid[p], Some(c.clone()), vec![POS], rr2[p], vec![0]));
        specs.push((rr2[p], Some(c.clone()), vec![POS], rr2[p], vec![0]));
    }
    for l in sigma.letters() {
        specs.push((rr2[0], Some(l.clone()), vec![POS], rsealb, vec![0]));
        specs.push((ra2, Some(l.clone()), vec![POS], rdown[0], vec![0]));
    }
    specs.push((rr2[1], Some(a.clone()), vec![POS], ra2, vec![0]));
    specs.push((rsealb, Some(b.clone()), vec![POS], rdown[0], vec![0]));
    specs.push((rdown[0], Some(c.clone()), vec![POS], rdown[1 % k], vec![-1]));
    specs.push((rdown[0], Some(c.clone()), vec![ZERO], sink, vec![0]));
    specs.push((rdown[0], Some(a.clone()), vec![POS], sink, vec![0]));
    for m in 1..k {
        specs.push((rdown[m], Some(c.clone()), vec![ANY], rdown[(m + 1) % k], vec![0]));
        specs.push((rdown[m], Some(a.clone()), vec![ANY], sink, vec![0]));
    }

    let accepting = [sink, cloop].into_iter().collect();
    CounterMachine::from_parts(
        "h-complement",
        1,
        true,
        gamma,
        sp.names,
        q0,
        accepting,
        expand_rules(1, specs),
    )
    .map_err(|e| format!("{e}"))
}

/// Regular checker for a clopen payload condition, read off the Σ-letters of
/// a word over Γ in order. On h images those letters are exactly the decoded
/// payloads; elsewhere the checker is deliberately sloppy. Once every
/// constrained position has been seen satisfied the word is accepted
/// outright.
pub fn clopen_checker_machine(cond: &ClopenCondition) -> Result<CounterMachine, String> {
    let sigma = cond.sigma();
    let gamma = gamma_alphabet(sigma)?;
    let max = cond.max_index() as usize;
    let mut states: Vec<String> = (0..=max).map(|n| format!("seen{n}")).collect();
    states.push("dead".into());
    let dead = max + 1;
    let mut rules = Vec::new();
    for n in 0..max {
        for l in gamma.letters() {
            let to = if sigma.contains(l) {
                if cond.allows((n + 1) as u64, l) {
                    n + 1
                } else {
                    dead
                }
            } else {
                n
            };
            rules.push((n, Some(l.clone()), Vec::new(), to, Vec::new()));
        }
    }
    for l in gamma.letters() {
        rules.push((max, Some(l.clone()), Vec::new(), max, Vec::new()));
        rules.push((dead, Some(l.clone()), Vec::new(), dead, Vec::new()));
    }
    let accepting: &[&str] = &[&format!("seen{max}")];
    CounterMachine::new(
        &format!("sloppy-payload{cond}"),
        0,
        true,
        gamma,
        states,
        "seen0",
        accepting,
        rules,
    )
    .map_err(|e| format!("{e}"))
}

fn check_pipeline_inputs(
    params: HParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<(), String> {
    if params.k() % 2 != 0 {
        return Err("K must be even: odd K puts h images outside H".into());
    }
    if cond.sigma() != sigma {
        return Err("condition is over a different payload alphabet".into());
    }
    Ok(())
}

/// First pipeline stage: words that are not h images, together with words
/// whose payload meets `cond` when read sloppily. On an actual image the two
/// branches combine to "payload meets the condition".
pub fn a2_machine(
    params: HParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<CounterMachine, String> {
    check_pipeline_inputs(params, sigma, cond)?;
    let comp = h_complement_machine(params, sigma)?;
    let checker = clopen_checker_machine(cond)?;
    let a2 = union(&comp, &checker).map_err(|e| format!("{e}"))?;
    Ok(a2.rename(&format!("a2{cond}")))
}

/// Second stage: the previous one restricted to the pattern language H.
pub fn a3_machine(
    params: HParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<CounterMachine, String> {
    let a2 = a2_machine(params, sigma, cond)?;
    let a3 = intersect_regular(&a2, &h_automaton(sigma)?).map_err(|e| format!("{e}"))?;
    Ok(a3.rename(&format!("a3{cond}")))
}

/// The 1-counter machine for 𝓛: h images with payloads meeting `cond`,
/// non-images that still lie in H, the all-C tails V·C^ω, and the words
/// leaving Pref(H) first at an even position. K must be even, else the run
/// parities of h images fall outside H and the decomposition breaks.
pub fn ell_machine(
    params: HParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<CounterMachine, String> {
    let a3 = a3_machine(params, sigma, cond)?;
    let a4 = union(&a3, &vc_omega_machine(sigma)?).map_err(|e| format!("{e}"))?;
    let ell = union(&a4, &u_gamma_omega_machine(sigma)?).map_err(|e| format!("{e}"))?;
    Ok(ell.rename(&format!("ell{cond}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accept::{lasso_accepts_counter, Tv};
    use crate::run::Bounds;
    use crate::word::Lasso;

    fn setup() -> (HParams, Alphabet) {
        (HParams::new(2).unwrap(), Alphabet::from_chars("ab").unwrap())
    }

    fn verdict(m: &CounterMachine, l: &Lasso) -> Tv {
        lasso_accepts_counter(m, l, &Bounds::for_machine(m, 4096)).unwrap()
    }

    #[test]
    fn complement_accepts_pattern_violations() {
        let (p, s) = setup();
        let m = h_complement_machine(p, &s).unwrap();
        assert_eq!(verdict(&m, &Lasso::from_chars("A", "C")), Tv::Accept);
        assert_eq!(verdict(&m, &Lasso::from_chars("CCA", "C")), Tv::Accept);
    }

    #[test]
    fn complement_accepts_all_c_tails() {
        let (p, s) = setup();
        let m = h_complement_machine(p, &s).unwrap();
        assert_eq!(verdict(&m, &Lasso::from_chars("", "C")), Tv::Accept);
        assert_eq!(verdict(&m, &Lasso::from_chars("CCCAa", "C")), Tv::Accept);
    }

    #[test]
    fn complement_accepts_periodic_shape_with_wrong_ratios() {
        let (p, s) = setup();
        let m = h_complement_machine(p, &s).unwrap();
        // Follows the H shape forever, but its runs repeat instead of
        // growing by factors of K, so the first ratio is already wrong.
        let l = Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa");
        assert_eq!(verdict(&m, &l), Tv::Accept);
    }

    #[test]
    fn checker_follows_sigma_letters_only() {
        let s = Alphabet::from_chars("ab").unwrap();
        let cond = ClopenCondition::new(&s, [(2, Letter::from('b'))]).unwrap();
        let m = clopen_checker_machine(&cond).unwrap();
        let b = Bounds::for_machine(&m, 64);
        // Payload letters b then anything: markers in between are skipped.
        let good = Lasso::from_chars("CaCCbC", "A");
        assert_eq!(lasso_accepts_counter(&m, &good, &b).unwrap(), Tv::Accept);
        let bad = Lasso::from_chars("aa", "C");
        assert_eq!(lasso_accepts_counter(&m, &bad, &b).unwrap(), Tv::Reject);
    }

    #[test]
    fn ell_requires_even_k() {
        let s = Alphabet::from_chars("ab").unwrap();
        let cond = ClopenCondition::unconstrained(&s);
        assert!(ell_machine(HParams::new(3).unwrap(), &s, &cond).is_err());
    }

    #[test]
    fn ell_membership_on_lassos_is_exit_parity() {
        let (p, s) = setup();
        let cond = ClopenCondition::unconstrained(&s);
        let m = ell_machine(p, &s, &cond).unwrap();
        // Never exits Pref(H): all-C tail lies in V·C^ω.
        assert_eq!(verdict(&m, &Lasso::from_chars("", "C")), Tv::Accept);
        // Never exits, infinitely many payloads: in H, a non-image.
        assert_eq!(
            verdict(&m, &Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa")),
            Tv::Accept
        );
        // First exit at position 2.
        assert_eq!(verdict(&m, &Lasso::from_chars("CA", "C")), Tv::Accept);
        // First exit at position 1.
        assert_eq!(verdict(&m, &Lasso::from_chars("A", "C")), Tv::Reject);
        // First exit at position 3.
        assert_eq!(verdict(&m, &Lasso::from_chars("CCB", "C")), Tv::Reject);
    }
}
