//! Structural membership oracles, paired with the machines they describe.
//!
//! Every language built in this crate also has a decision procedure that
//! works on the word itself: tracking a coding prefix set, counting payload
//! letters around a cycle, reading one constrained position. The oracles
//! here package those procedures so tests can judge a machine against an
//! answer that was not produced by running the machine.
//!
//! The two entry points have different strength. `lasso_membership` is total
//! on eventually periodic words and always definite, because no coding image
//! is eventually periodic (run lengths grow without bound), which collapses
//! every language here to a question about the exit position or the cycle
//! content. `decide_prefix` answers only when every infinite continuation of
//! the prefix agrees, reporting why: a clopen condition ran out of
//! constrained positions, or the word left a coding prefix set and only the
//! exit parity matters. A prefix still inside the set is never decided for
//! the exit-parity languages, since continuations of both kinds exist.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use crate::accept::Tv;
use crate::coding::{
    h_classify, theta_classify, HParams, PrefixVerdict, ThetaParams, ThetaTracker,
};
use crate::langs::hcomp::{clopen_checker_machine, ell_machine, h_complement_machine};
use crate::langs::pref_h::{
    classify_pref_h, closure_h_machine, decide_closure_h, h_automaton, u_gamma_omega_machine,
    vc_omega_machine, ClosureVerdict,
};
use crate::langs::theta_side::theta_game_machine;
use crate::langs::{
    clopen_payload_machine, first_letter_machine, nth_letter_machine, zero_star_one,
    ClopenCondition,
};
use crate::machine::CounterMachine;
use crate::word::{Alphabet, FiniteWord, Lasso, Letter};

/// Why a finite prefix already settles membership.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrefixWhy {
    /// All constrained payload positions have been seen.
    Clopen,
    /// The word left a coding prefix set; only the exit position matters.
    ExitParity { position: u64 },
}

pub trait LanguageOracle {
    /// Membership of the eventually periodic word. Always definite.
    fn lasso_membership(&self, l: &Lasso) -> Tv;

    /// `Some((m, why))` once every infinite continuation of `w` has
    /// membership `m`; `None` while continuations still disagree.
    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)>;
}

/// A language bundled with its machine and its independent oracle.
pub struct LanguageHandle {
    name: String,
    automaton: Option<CounterMachine>,
    oracle: Box<dyn LanguageOracle + Send + Sync>,
}

impl LanguageHandle {
    /// Bundle a custom oracle, optionally with the machine it describes.
    /// The built-in constructors below cover the languages of this crate;
    /// this is for callers bringing their own language.
    pub fn new(
        name: &str,
        automaton: Option<CounterMachine>,
        oracle: Box<dyn LanguageOracle + Send + Sync>,
    ) -> LanguageHandle {
        LanguageHandle {
            name: String::from(name),
            automaton,
            oracle,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn automaton(&self) -> Option<&CounterMachine> {
        self.automaton.as_ref()
    }

    pub fn lasso_membership(&self, l: &Lasso) -> Tv {
        self.oracle.lasso_membership(l)
    }

    pub fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        self.oracle.decide_prefix(w)
    }
}

/// Feeding a lasso into a coding tracker must exit: images are aperiodic.
/// The cap only guards against a broken tracker.
const FEED_CAP: u64 = 1 << 20;

struct EllOracle {
    sigma: Alphabet,
}

impl LanguageOracle for EllOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        // Exit at an even position lands in U·Γ^ω; never exiting lands in
        // H ∪ V·C^ω, both inside 𝓛 since no lasso is an h image and the
        // payload condition only discriminates among images.
        Tv::from_bool(match decide_closure_h(&self.sigma, l) {
            ClosureVerdict::Exits { position } => position % 2 == 0,
            ClosureVerdict::InH | ClosureVerdict::InVcOmega => true,
        })
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match classify_pref_h(&self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((position % 2 == 0, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct UGammaOmegaOracle {
    sigma: Alphabet,
}

impl LanguageOracle for UGammaOmegaOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(matches!(
            decide_closure_h(&self.sigma, l),
            ClosureVerdict::Exits { position } if position % 2 == 0
        ))
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match classify_pref_h(&self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((position % 2 == 0, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct HOracle {
    sigma: Alphabet,
}

impl LanguageOracle for HOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(decide_closure_h(&self.sigma, l) == ClosureVerdict::InH)
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match classify_pref_h(&self.sigma, w) {
            // Once outside the prefix set no continuation is in H. Inside,
            // both H members and all-C tails extend w.
            PrefixVerdict::ExitedAt { position } => {
                Some((false, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct ClosureHOracle {
    sigma: Alphabet,
}

impl LanguageOracle for ClosureHOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(!matches!(
            decide_closure_h(&self.sigma, l),
            ClosureVerdict::Exits { .. }
        ))
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match classify_pref_h(&self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((false, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct VcOmegaOracle {
    sigma: Alphabet,
}

impl LanguageOracle for VcOmegaOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(decide_closure_h(&self.sigma, l) == ClosureVerdict::InVcOmega)
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match classify_pref_h(&self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((false, PrefixWhy::ExitParity { position }))
            }
            // Any in-prefix word extends into V·C^ω (reach the next C-run,
            // then stop reading payloads) and into H, so nothing is settled.
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct ThetaGameOracle {
    params: ThetaParams,
    sigma: Alphabet,
}

impl LanguageOracle for ThetaGameOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        // The winning set is image ∪ exit-at-even, and no lasso is an image.
        let mut t = ThetaTracker::new(self.params, &self.sigma).expect("valid payload alphabet");
        for n in 1..=FEED_CAP {
            if !t.feed(&l.letter_at(n)) {
                return Tv::from_bool(n % 2 == 0);
            }
        }
        unreachable!("every eventually periodic word leaves the θ prefix set")
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match theta_classify(self.params, &self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((position % 2 == 0, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct ComplementImageOracle {
    params: HParams,
    sigma: Alphabet,
}

impl LanguageOracle for ComplementImageOracle {
    fn lasso_membership(&self, _l: &Lasso) -> Tv {
        // No eventually periodic word is an h image.
        Tv::Accept
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        match h_classify(self.params, &self.sigma, w) {
            PrefixVerdict::ExitedAt { position } => {
                Some((true, PrefixWhy::ExitParity { position }))
            }
            PrefixVerdict::InPref { .. } => None,
        }
    }
}

struct ClopenOracle {
    cond: ClopenCondition,
}

impl LanguageOracle for ClopenOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        let head = l.prefix(self.cond.max_index() as usize);
        Tv::from_bool(self.cond.check_prefix(&head).expect("all positions present"))
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        self.cond.check_prefix(w).map(|m| (m, PrefixWhy::Clopen))
    }
}

struct InfLetterOracle {
    one: Letter,
}

impl LanguageOracle for InfLetterOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(l.cycle().iter().any(|x| *x == self.one))
    }

    fn decide_prefix(&self, _w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        // Tail property: no prefix settles it.
        None
    }
}

struct FirstLetterOracle {
    first: Letter,
}

impl LanguageOracle for FirstLetterOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool(*l.letter_at(1) == self.first)
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        if w.is_empty() {
            None
        } else {
            Some((*w.letter(1) == self.first, PrefixWhy::Clopen))
        }
    }
}

pub fn ell_handle(
    params: HParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<LanguageHandle, String> {
    let automaton = ell_machine(params, sigma, cond)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(EllOracle { sigma: sigma.clone() }),
    })
}

pub fn theta_game_handle(
    params: ThetaParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<LanguageHandle, String> {
    let automaton = theta_game_machine(params, sigma, cond)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(ThetaGameOracle { params, sigma: sigma.clone() }),
    })
}

pub fn h_handle(sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let automaton = h_automaton(sigma)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(HOracle { sigma: sigma.clone() }),
    })
}

pub fn closure_h_handle(sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let automaton = closure_h_machine(sigma)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(ClosureHOracle { sigma: sigma.clone() }),
    })
}

pub fn vc_omega_handle(sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let automaton = vc_omega_machine(sigma)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(VcOmegaOracle { sigma: sigma.clone() }),
    })
}

pub fn u_gamma_omega_handle(sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let automaton = u_gamma_omega_machine(sigma)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(UGammaOmegaOracle { sigma: sigma.clone() }),
    })
}

pub fn h_complement_handle(params: HParams, sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let automaton = h_complement_machine(params, sigma)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(ComplementImageOracle { params, sigma: sigma.clone() }),
    })
}

pub fn payload_clopen_handle(cond: &ClopenCondition) -> LanguageHandle {
    let automaton = clopen_payload_machine(cond);
    LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(ClopenOracle { cond: cond.clone() }),
    }
}

/// The checker over Γ is sloppy off images, so its handle keeps the clopen
/// oracle reading Σ-letters in order: that is exactly what the machine sees.
pub fn sloppy_clopen_handle(cond: &ClopenCondition) -> Result<LanguageHandle, String> {
    let automaton = clopen_checker_machine(cond)?;
    let oracle = SloppyClopenOracle { cond: cond.clone() };
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(oracle),
    })
}

struct SloppyClopenOracle {
    cond: ClopenCondition,
}

impl SloppyClopenOracle {
    /// Σ-letters of the word in order, up to the last constrained index;
    /// `None` when the word holds fewer than that many.
    fn sigma_letters(&self, l: &Lasso) -> Option<FiniteWord> {
        let want = self.cond.max_index() as usize;
        let mut seen = FiniteWord::empty();
        for letter in l.spoke().iter() {
            if seen.len() == want {
                break;
            }
            if self.cond.sigma().contains(letter) {
                seen.push(letter.clone());
            }
        }
        if seen.len() < want {
            if !l.cycle().iter().any(|x| self.cond.sigma().contains(x)) {
                return None;
            }
            let mut n = l.spoke().len() as u64;
            while seen.len() < want {
                n += 1;
                let letter = l.letter_at(n);
                if self.cond.sigma().contains(letter) {
                    seen.push(letter.clone());
                }
            }
        }
        Some(seen)
    }
}

impl LanguageOracle for SloppyClopenOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        match self.sigma_letters(l) {
            Some(seen) => {
                Tv::from_bool(self.cond.check_prefix(&seen).expect("enough positions"))
            }
            // Fewer Σ-letters than constrained positions: the word never
            // reaches the accepting sink.
            None => Tv::Reject,
        }
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        let mut seen = FiniteWord::empty();
        for letter in w.iter() {
            if self.cond.sigma().contains(letter) {
                seen.push(letter.clone());
            }
        }
        match self.cond.check_prefix(&seen) {
            Some(false) => Some((false, PrefixWhy::Clopen)),
            // More Σ-letters may still arrive, or never arrive.
            _ => None,
        }
    }
}

pub fn zero_star_one_handle(alphabet: &Alphabet, one: &Letter) -> Result<LanguageHandle, String> {
    let automaton = zero_star_one(alphabet, one)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(InfLetterOracle { one: one.clone() }),
    })
}

pub fn first_letter_handle(alphabet: &Alphabet, first: &Letter) -> Result<LanguageHandle, String> {
    if !alphabet.contains(first) {
        return Err(format!("letter '{first}' not in the alphabet"));
    }
    let automaton = first_letter_machine(alphabet, first)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(FirstLetterOracle { first: first.clone() }),
    })
}

/// One constrained payload position, optionally negated.
struct NthLetterOracle {
    index: u64,
    target: Letter,
    negate: bool,
}

impl LanguageOracle for NthLetterOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        Tv::from_bool((*l.letter_at(self.index) == self.target) != self.negate)
    }

    fn decide_prefix(&self, w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        if (w.len() as u64) < self.index {
            return None;
        }
        let hit = (*w.letter(self.index as usize) == self.target) != self.negate;
        Some((hit, PrefixWhy::Clopen))
    }
}

pub fn nth_letter_handle(
    alphabet: &Alphabet,
    index: u64,
    target: &Letter,
    negate: bool,
) -> Result<LanguageHandle, String> {
    let automaton = nth_letter_machine(alphabet, index, target, negate)?;
    Ok(LanguageHandle {
        name: automaton.name().into(),
        automaton: Some(automaton),
        oracle: Box::new(NthLetterOracle {
            index,
            target: target.clone(),
            negate,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn ell_oracle_is_exit_parity_on_lassos() {
        let h = ell_handle(
            HParams::new(2).unwrap(),
            &sigma(),
            &ClopenCondition::unconstrained(&sigma()),
        )
        .unwrap();
        assert_eq!(h.lasso_membership(&Lasso::from_chars("", "C")), Tv::Accept);
        assert_eq!(h.lasso_membership(&Lasso::from_chars("CA", "C")), Tv::Accept);
        assert_eq!(h.lasso_membership(&Lasso::from_chars("A", "C")), Tv::Reject);
    }

    #[test]
    fn prefix_decisions_report_their_reason() {
        let s = sigma();
        let h = u_gamma_omega_handle(&s).unwrap();
        assert_eq!(h.decide_prefix(&FiniteWord::from_chars("CC")), None);
        assert_eq!(
            h.decide_prefix(&FiniteWord::from_chars("CA")),
            Some((true, PrefixWhy::ExitParity { position: 2 }))
        );
        let cond = ClopenCondition::new(&s, [(2, Letter::from('b'))]).unwrap();
        let p = payload_clopen_handle(&cond);
        assert_eq!(p.decide_prefix(&FiniteWord::from_chars("a")), None);
        assert_eq!(
            p.decide_prefix(&FiniteWord::from_chars("ab")),
            Some((true, PrefixWhy::Clopen))
        );
        assert_eq!(
            p.decide_prefix(&FiniteWord::from_chars("aa")),
            Some((false, PrefixWhy::Clopen))
        );
    }

    #[test]
    fn theta_game_oracle_decides_by_exit() {
        let s = sigma();
        let h = theta_game_handle(
            ThetaParams::new(2).unwrap(),
            &s,
            &ClopenCondition::unconstrained(&s),
        )
        .unwrap();
        assert_eq!(h.lasso_membership(&Lasso::from_chars("aEE", "E")), Tv::Accept);
        assert_eq!(h.lasso_membership(&Lasso::from_chars("aEa", "E")), Tv::Reject);
        assert_eq!(h.lasso_membership(&Lasso::from_chars("", "a")), Tv::Accept);
    }

    #[test]
    fn small_language_oracles() {
        let s = Alphabet::from_chars("01").unwrap();
        let inf = zero_star_one_handle(&s, &Letter::from('1')).unwrap();
        assert_eq!(inf.lasso_membership(&Lasso::from_chars("0", "01")), Tv::Accept);
        assert_eq!(inf.lasso_membership(&Lasso::from_chars("01", "0")), Tv::Reject);
        assert_eq!(inf.decide_prefix(&FiniteWord::from_chars("0101")), None);
        let head = first_letter_handle(&s, &Letter::from('1')).unwrap();
        assert_eq!(head.lasso_membership(&Lasso::from_chars("10", "0")), Tv::Accept);
        assert_eq!(
            head.decide_prefix(&FiniteWord::from_chars("0")),
            Some((false, PrefixWhy::Clopen))
        );
    }

    #[test]
    fn complement_oracle_never_rejects_a_lasso() {
        let h = h_complement_handle(HParams::new(2).unwrap(), &sigma()).unwrap();
        for l in [
            Lasso::from_chars("", "C"),
            Lasso::from_chars("CCCAa", "CCACCCbBCCACCCAa"),
            Lasso::from_chars("AB", "ab"),
        ] {
            assert_eq!(h.lasso_membership(&l), Tv::Accept);
        }
    }
}
