//! Padding codings of ω-words and their prefix trackers.
//!
//! Three codings stretch a word x ∈ Σ^ω by inserting growing runs of filler
//! letters between the payload letters x(n):
//!
//! * θ (filler E, parameter S ≥ 2):
//!   `x(1)·E^S·x(2)·E^{S²}·x(3)·E^{S³}·…`
//! * the marked coding (letters A, B, C, parameter K ≥ 2):
//!   `A·C^K·x(1)·B·C^{K²}·A·C^{K²}·x(2)·B·C^{K³}·A·C^{K³}·x(3)·B·…`
//! * its interleaved variant, written here as h:
//!   `C^K·C·A·x(1)`, then for n ≥ 2 the n-th segment
//!   `C^{K^n}·A·C^{K^n}·C·x(n)·B` when n is even and
//!   `C^{K^n}·A·C^{K^n}·C·A·x(n)` when n is odd.
//!
//! Run lengths grow without bound, so inside the prefix set of an image every
//! position is either forced (exactly one letter continues the prefix) or a
//! free payload slot accepting any letter of Σ. The trackers below walk a
//! prefix one letter at a time, report the slot kind before each step, and
//! record the first position at which a word leaves the prefix set. Payload
//! positions are 1-indexed, as are reported exit positions.
//!
//! Growing run lengths also mean no ultimately periodic word is an image:
//! every lasso leaves the prefix set of each coding after boundedly many
//! letters, a fact the language oracles lean on.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::word::{Alphabet, FiniteWord, Letter};

pub fn e_letter() -> Letter {
    Letter::new("E")
}

pub fn a_letter() -> Letter {
    Letter::new("A")
}

pub fn b_letter() -> Letter {
    Letter::new("B")
}

pub fn c_letter() -> Letter {
    Letter::new("C")
}

/// Σ ∪ {E}; rejects payload alphabets that already use the filler letter.
pub fn theta_alphabet(sigma: &Alphabet) -> Result<Alphabet, String> {
    sigma.extend([e_letter()])
}

/// Σ ∪ {A, B, C}.
pub fn gamma_alphabet(sigma: &Alphabet) -> Result<Alphabet, String> {
    sigma.extend([a_letter(), b_letter(), c_letter()])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThetaParams {
    s: u64,
}

impl ThetaParams {
    pub fn new(s: u64) -> Result<Self, String> {
        if s < 2 {
            return Err("theta parameter S must be at least 2".to_string());
        }
        Ok(ThetaParams { s })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// S^n. Saturates far beyond any prefix length this crate can feed.
    fn power(&self, n: u64) -> u64 {
        self.s.saturating_pow(n.try_into().unwrap_or(u32::MAX))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HParams {
    k: u64,
}

impl HParams {
    pub fn new(k: u64) -> Result<Self, String> {
        if k < 2 {
            return Err("coding parameter K must be at least 2".to_string());
        }
        Ok(HParams { k })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    fn power(&self, n: u64) -> u64 {
        self.k.saturating_pow(n.try_into().unwrap_or(u32::MAX))
    }
}

/// What the next letter may be while still inside the prefix set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Slot {
    /// Payload slot: any letter of Σ continues, everything else exits.
    Free,
    /// Exactly this letter continues, everything else exits.
    Forced(Letter),
}

/// Verdict over a finite word against a coding's prefix set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PrefixVerdict {
    /// Still a prefix of some image; carries the payload letters read so far.
    InPref { decoded: FiniteWord },
    /// First position (1-indexed) at which the word left the prefix set.
    ExitedAt { position: u64 },
}

impl PrefixVerdict {
    pub fn exited_at(&self) -> Option<u64> {
        match self {
            PrefixVerdict::InPref { .. } => None,
            PrefixVerdict::ExitedAt { position } => Some(*position),
        }
    }
}

enum ThetaPhase {
    /// Expecting payload letter x(index).
    XSlot { index: u64 },
    /// Inside the filler run after x(index), `remaining` E's still due.
    ERun { remaining: u64, index: u64 },
}

/// Incremental recognizer for prefixes of θ-images; O(1) per letter.
pub struct ThetaTracker {
    params: ThetaParams,
    sigma: Alphabet,
    position: u64,
    decoded: FiniteWord,
    phase: Option<ThetaPhase>,
    exit: Option<u64>,
}

impl ThetaTracker {
    pub fn new(params: ThetaParams, sigma: &Alphabet) -> Result<Self, String> {
        if sigma.is_empty() {
            return Err("payload alphabet is empty".to_string());
        }
        if sigma.contains(&e_letter()) {
            return Err("payload alphabet contains the filler letter E".to_string());
        }
        Ok(ThetaTracker {
            params,
            sigma: sigma.clone(),
            position: 0,
            decoded: FiniteWord::empty(),
            phase: Some(ThetaPhase::XSlot { index: 1 }),
            exit: None,
        })
    }

    /// Letters fed so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Constraint on the next letter, `None` once the word has exited.
    pub fn slot(&self) -> Option<Slot> {
        match &self.phase {
            None => None,
            Some(ThetaPhase::XSlot { .. }) => Some(Slot::Free),
            Some(ThetaPhase::ERun { .. }) => Some(Slot::Forced(e_letter())),
        }
    }

    pub fn verdict(&self) -> PrefixVerdict {
        match self.exit {
            Some(position) => PrefixVerdict::ExitedAt { position },
            None => PrefixVerdict::InPref { decoded: self.decoded.clone() },
        }
    }

    pub fn decoded(&self) -> &FiniteWord {
        &self.decoded
    }

    /// Feed one letter; returns false once the word is outside the prefix set.
    pub fn feed(&mut self, l: &Letter) -> bool {
        self.position += 1;
        let ok = match self.phase.take() {
            None => false,
            Some(ThetaPhase::XSlot { index }) => {
                if self.sigma.contains(l) {
                    self.decoded.push(l.clone());
                    self.phase = Some(ThetaPhase::ERun {
                        remaining: self.params.power(index),
                        index,
                    });
                    true
                } else {
                    false
                }
            }
            Some(ThetaPhase::ERun { remaining, index }) => {
                if *l == e_letter() {
                    self.phase = if remaining == 1 {
                        Some(ThetaPhase::XSlot { index: index + 1 })
                    } else {
                        Some(ThetaPhase::ERun { remaining: remaining - 1, index })
                    };
                    true
                } else {
                    false
                }
            }
        };
        if !ok && self.exit.is_none() {
            self.exit = Some(self.position);
        }
        ok
    }
}

/// The image prefix of θ determined by a payload prefix, ending at its last
/// payload letter: `x(1)·E^S·x(2)·…·E^{S^{n-1}}·x(n)`.
pub fn theta_encode(params: ThetaParams, x: &FiniteWord) -> FiniteWord {
    let mut out = Vec::new();
    for (i, l) in x.iter().enumerate() {
        if i > 0 {
            let run = params.power(i as u64);
            for _ in 0..run {
                out.push(e_letter());
            }
        }
        out.push(l.clone());
    }
    FiniteWord::new(out)
}

pub fn theta_classify(params: ThetaParams, sigma: &Alphabet, w: &FiniteWord) -> PrefixVerdict {
    let mut t = ThetaTracker::new(params, sigma).expect("valid payload alphabet");
    for l in w.iter() {
        if !t.feed(l) {
            break;
        }
    }
    t.verdict()
}

/// Payload letters of a θ-image prefix, or the first exit position.
pub fn theta_decode(
    params: ThetaParams,
    sigma: &Alphabet,
    w: &FiniteWord,
) -> Result<FiniteWord, u64> {
    match theta_classify(params, sigma, w) {
        PrefixVerdict::InPref { decoded } => Ok(decoded),
        PrefixVerdict::ExitedAt { position } => Err(position),
    }
}

/// Phase of the marked coding `A·C^K·x(1)·B·C^{K²}·A·C^{K²}·x(2)·B·…`.
enum HkPhase {
    LeadA,
    LeadRun { remaining: u64 },
    XSlot { index: u64 },
    SealB { index: u64 },
    Run1 { index: u64, remaining: u64 },
    MidA { index: u64 },
    Run2 { index: u64, remaining: u64 },
}

/// Incremental recognizer for prefixes of the marked coding.
pub struct HkTracker {
    params: HParams,
    sigma: Alphabet,
    position: u64,
    decoded: FiniteWord,
    phase: Option<HkPhase>,
    exit: Option<u64>,
    /// Positions of completed segments: after each B the decoded length.
    complete_segments: u64,
}

impl HkTracker {
    pub fn new(params: HParams, sigma: &Alphabet) -> Result<Self, String> {
        check_payload(sigma)?;
        Ok(HkTracker {
            params,
            sigma: sigma.clone(),
            position: 0,
            decoded: FiniteWord::empty(),
            phase: Some(HkPhase::LeadA),
            exit: None,
            complete_segments: 0,
        })
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// Number of segments sealed by their B so far.
    pub fn complete_segments(&self) -> u64 {
        self.complete_segments
    }

    /// True exactly between segments: before the leading A or right after a B.
    pub fn at_segment_boundary(&self) -> bool {
        matches!(self.phase, Some(HkPhase::LeadA) | Some(HkPhase::Run1 { .. }))
            && self.decoded.len() as u64 == self.complete_segments
            && match self.phase {
                Some(HkPhase::Run1 { index, remaining }) => {
                    remaining == self.params.power(index)
                }
                _ => true,
            }
    }

    pub fn slot(&self) -> Option<Slot> {
        match &self.phase {
            None => None,
            Some(HkPhase::LeadA) | Some(HkPhase::MidA { .. }) => Some(Slot::Forced(a_letter())),
            Some(HkPhase::SealB { .. }) => Some(Slot::Forced(b_letter())),
            Some(HkPhase::LeadRun { .. })
            | Some(HkPhase::Run1 { .. })
            | Some(HkPhase::Run2 { .. }) => Some(Slot::Forced(c_letter())),
            Some(HkPhase::XSlot { .. }) => Some(Slot::Free),
        }
    }

    pub fn verdict(&self) -> PrefixVerdict {
        match self.exit {
            Some(position) => PrefixVerdict::ExitedAt { position },
            None => PrefixVerdict::InPref { decoded: self.decoded.clone() },
        }
    }

    pub fn feed(&mut self, l: &Letter) -> bool {
        self.position += 1;
        let k = self.params;
        let ok = match self.phase.take() {
            None => false,
            Some(HkPhase::LeadA) => {
                if *l == a_letter() {
                    self.phase = Some(HkPhase::LeadRun { remaining: k.k() });
                    true
                } else {
                    false
                }
            }
            Some(HkPhase::LeadRun { remaining }) => self.run_step(l, remaining, |rem| {
                if rem == 0 {
                    HkPhase::XSlot { index: 1 }
                } else {
                    HkPhase::LeadRun { remaining: rem }
                }
            }),
            Some(HkPhase::XSlot { index }) => {
                if self.sigma.contains(l) {
                    self.decoded.push(l.clone());
                    self.phase = Some(HkPhase::SealB { index });
                    true
                } else {
                    false
                }
            }
            Some(HkPhase::SealB { index }) => {
                if *l == b_letter() {
                    self.complete_segments = index;
                    self.phase = Some(HkPhase::Run1 {
                        index: index + 1,
                        remaining: k.power(index + 1),
                    });
                    true
                } else {
                    false
                }
            }
            Some(HkPhase::Run1 { index, remaining }) => self.run_step(l, remaining, |rem| {
                if rem == 0 {
                    HkPhase::MidA { index }
                } else {
                    HkPhase::Run1 { index, remaining: rem }
                }
            }),
            Some(HkPhase::MidA { index }) => {
                if *l == a_letter() {
                    self.phase = Some(HkPhase::Run2 { index, remaining: k.power(index) });
                    true
                } else {
                    false
                }
            }
            Some(HkPhase::Run2 { index, remaining }) => self.run_step(l, remaining, |rem| {
                if rem == 0 {
                    HkPhase::XSlot { index }
                } else {
                    HkPhase::Run2 { index, remaining: rem }
                }
            }),
        };
        if !ok && self.exit.is_none() {
            self.exit = Some(self.position);
        }
        ok
    }

    fn run_step(
        &mut self,
        l: &Letter,
        remaining: u64,
        next: impl FnOnce(u64) -> HkPhase,
    ) -> bool {
        if *l == c_letter() {
            self.phase = Some(next(remaining - 1));
            true
        } else {
            false
        }
    }
}

/// The image prefix of the marked coding through x(n)·B, segment-complete.
pub fn hk_encode(params: HParams, x: &FiniteWord) -> FiniteWord {
    let mut out = Vec::new();
    for (i, l) in x.iter().enumerate() {
        let n = (i + 1) as u64;
        if n == 1 {
            out.push(a_letter());
            push_run(&mut out, params.k());
        } else {
            push_run(&mut out, params.power(n));
            out.push(a_letter());
            push_run(&mut out, params.power(n));
        }
        out.push(l.clone());
        out.push(b_letter());
    }
    FiniteWord::new(out)
}

pub fn hk_classify(params: HParams, sigma: &Alphabet, w: &FiniteWord) -> PrefixVerdict {
    let mut t = HkTracker::new(params, sigma).expect("valid payload alphabet");
    for l in w.iter() {
        if !t.feed(l) {
            break;
        }
    }
    t.verdict()
}

/// Phase of h. Segment 1 is `C^{K+1}·A·x(1)`; segment n ≥ 2 is
/// `C^{K^n}·A·C^{K^n+1}` followed by `x(n)·B` (n even) or `A·x(n)` (n odd).
enum HPhase {
    LeadRun { remaining: u64 },
    LeadA,
    XSlot { index: u64 },
    Run1 { index: u64, remaining: u64 },
    MidA { index: u64 },
    Run2 { index: u64, remaining: u64 },
    OddA { index: u64 },
    SealB { index: u64 },
}

/// Incremental recognizer for prefixes of h-images.
pub struct HTracker {
    params: HParams,
    sigma: Alphabet,
    position: u64,
    decoded: FiniteWord,
    phase: Option<HPhase>,
    exit: Option<u64>,
}

impl HTracker {
    pub fn new(params: HParams, sigma: &Alphabet) -> Result<Self, String> {
        check_payload(sigma)?;
        Ok(HTracker {
            params,
            sigma: sigma.clone(),
            position: 0,
            decoded: FiniteWord::empty(),
            phase: Some(HPhase::LeadRun { remaining: params.k() + 1 }),
            exit: None,
        })
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn slot(&self) -> Option<Slot> {
        match &self.phase {
            None => None,
            Some(HPhase::LeadA) | Some(HPhase::MidA { .. }) | Some(HPhase::OddA { .. }) => {
                Some(Slot::Forced(a_letter()))
            }
            Some(HPhase::SealB { .. }) => Some(Slot::Forced(b_letter())),
            Some(HPhase::LeadRun { .. })
            | Some(HPhase::Run1 { .. })
            | Some(HPhase::Run2 { .. }) => Some(Slot::Forced(c_letter())),
            Some(HPhase::XSlot { .. }) => Some(Slot::Free),
        }
    }

    pub fn verdict(&self) -> PrefixVerdict {
        match self.exit {
            Some(position) => PrefixVerdict::ExitedAt { position },
            None => PrefixVerdict::InPref { decoded: self.decoded.clone() },
        }
    }

    pub fn decoded(&self) -> &FiniteWord {
        &self.decoded
    }

    pub fn feed(&mut self, l: &Letter) -> bool {
        self.position += 1;
        let k = self.params;
        let ok = match self.phase.take() {
            None => false,
            Some(HPhase::LeadRun { remaining }) => self.c_step(l, remaining, |rem| {
                if rem == 0 {
                    HPhase::LeadA
                } else {
                    HPhase::LeadRun { remaining: rem }
                }
            }),
            Some(HPhase::LeadA) => self.a_step(l, HPhase::XSlot { index: 1 }),
            Some(HPhase::XSlot { index }) => {
                if self.sigma.contains(l) {
                    self.decoded.push(l.clone());
                    self.phase = Some(if index % 2 == 0 {
                        HPhase::SealB { index }
                    } else {
                        HPhase::Run1 { index: index + 1, remaining: k.power(index + 1) }
                    });
                    true
                } else {
                    false
                }
            }
            Some(HPhase::SealB { index }) => {
                if *l == b_letter() {
                    self.phase = Some(HPhase::Run1 {
                        index: index + 1,
                        remaining: k.power(index + 1),
                    });
                    true
                } else {
                    false
                }
            }
            Some(HPhase::Run1 { index, remaining }) => self.c_step(l, remaining, |rem| {
                if rem == 0 {
                    HPhase::MidA { index }
                } else {
                    HPhase::Run1 { index, remaining: rem }
                }
            }),
            Some(HPhase::MidA { index }) => self.a_step(
                l,
                HPhase::Run2 { index, remaining: k.power(index).saturating_add(1) },
            ),
            Some(HPhase::Run2 { index, remaining }) => self.c_step(l, remaining, |rem| {
                if rem == 0 {
                    if index % 2 == 0 {
                        HPhase::XSlot { index }
                    } else {
                        HPhase::OddA { index }
                    }
                } else {
                    HPhase::Run2 { index, remaining: rem }
                }
            }),
            Some(HPhase::OddA { index }) => self.a_step(l, HPhase::XSlot { index }),
        };
        if !ok && self.exit.is_none() {
            self.exit = Some(self.position);
        }
        ok
    }

    fn c_step(&mut self, l: &Letter, remaining: u64, next: impl FnOnce(u64) -> HPhase) -> bool {
        if *l == c_letter() {
            self.phase = Some(next(remaining - 1));
            true
        } else {
            false
        }
    }

    fn a_step(&mut self, l: &Letter, next: HPhase) -> bool {
        if *l == a_letter() {
            self.phase = Some(next);
            true
        } else {
            false
        }
    }
}

/// The image prefix of h determined by a payload prefix, ending at its last
/// payload letter.
pub fn h_encode(params: HParams, x: &FiniteWord) -> FiniteWord {
    let mut out = Vec::new();
    for (i, l) in x.iter().enumerate() {
        let n = (i + 1) as u64;
        if n == 1 {
            push_run(&mut out, params.k() + 1);
            out.push(a_letter());
        } else {
            if n % 2 != 0 {
                // The previous segment was even and carries the sealing B.
                out.push(b_letter());
            }
            push_run(&mut out, params.power(n));
            out.push(a_letter());
            push_run(&mut out, params.power(n).saturating_add(1));
            if n % 2 != 0 {
                out.push(a_letter());
            }
        }
        out.push(l.clone());
    }
    FiniteWord::new(out)
}

pub fn h_classify(params: HParams, sigma: &Alphabet, w: &FiniteWord) -> PrefixVerdict {
    let mut t = HTracker::new(params, sigma).expect("valid payload alphabet");
    for l in w.iter() {
        if !t.feed(l) {
            break;
        }
    }
    t.verdict()
}

pub fn h_decode(params: HParams, sigma: &Alphabet, w: &FiniteWord) -> Result<FiniteWord, u64> {
    match h_classify(params, sigma, w) {
        PrefixVerdict::InPref { decoded } => Ok(decoded),
        PrefixVerdict::ExitedAt { position } => Err(position),
    }
}

/// Rewrite a marked-coding image prefix into the h-image prefix of the same
/// payload. The input must be segment-complete: empty, or ending right after
/// a sealing B. Errors carry the offending 1-indexed position; a premature
/// end reports the input length (at least 1).
pub fn hk_to_h(params: HParams, sigma: &Alphabet, w: &FiniteWord) -> Result<FiniteWord, u64> {
    let mut t = HkTracker::new(params, sigma).expect("valid payload alphabet");
    for l in w.iter() {
        if !t.feed(l) {
            break;
        }
    }
    match t.verdict() {
        PrefixVerdict::ExitedAt { position } => Err(position),
        PrefixVerdict::InPref { decoded } => {
            if t.at_segment_boundary() {
                Ok(h_encode(params, &decoded))
            } else {
                Err((w.len() as u64).max(1))
            }
        }
    }
}

fn check_payload(sigma: &Alphabet) -> Result<(), String> {
    if sigma.is_empty() {
        return Err("payload alphabet is empty".to_string());
    }
    for l in [a_letter(), b_letter(), c_letter()] {
        if sigma.contains(&l) {
            return Err("payload alphabet contains a marker letter".to_string());
        }
    }
    Ok(())
}

fn push_run(out: &mut Vec<Letter>, len: u64) {
    for _ in 0..len {
        out.push(c_letter());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn theta2() -> ThetaParams {
        ThetaParams::new(2).unwrap()
    }

    fn h2() -> HParams {
        HParams::new(2).unwrap()
    }

    #[test]
    fn theta_encode_shape() {
        let w = theta_encode(theta2(), &FiniteWord::from_chars("ab"));
        assert_eq!(w, FiniteWord::from_chars("aEEb"));
        let w3 = theta_encode(theta2(), &FiniteWord::from_chars("aba"));
        assert_eq!(w3, FiniteWord::from_chars("aEEbEEEEa"));
    }

    #[test]
    fn theta_classify_examples() {
        let s = sigma();
        assert_eq!(
            theta_classify(theta2(), &s, &FiniteWord::from_chars("aEEa")),
            PrefixVerdict::InPref { decoded: FiniteWord::from_chars("aa") }
        );
        assert_eq!(
            theta_classify(theta2(), &s, &FiniteWord::from_chars("aEa")),
            PrefixVerdict::ExitedAt { position: 3 }
        );
        assert_eq!(
            theta_classify(theta2(), &s, &FiniteWord::from_chars("aEEE")),
            PrefixVerdict::ExitedAt { position: 4 }
        );
    }

    #[test]
    fn theta_round_trip() {
        let s = sigma();
        for chars in ["", "a", "ab", "bba", "abab"] {
            let x = FiniteWord::from_chars(chars);
            let enc = theta_encode(theta2(), &x);
            assert_eq!(theta_decode(theta2(), &s, &enc), Ok(x));
        }
    }

    #[test]
    fn theta_slots_force_fillers() {
        let mut t = ThetaTracker::new(theta2(), &sigma()).unwrap();
        assert_eq!(t.slot(), Some(Slot::Free));
        assert!(t.feed(&Letter::from('a')));
        for _ in 0..2 {
            assert_eq!(t.slot(), Some(Slot::Forced(e_letter())));
            assert!(t.feed(&e_letter()));
        }
        assert_eq!(t.slot(), Some(Slot::Free));
    }

    #[test]
    fn h_classify_examples() {
        let s = sigma();
        assert_eq!(
            h_classify(h2(), &s, &FiniteWord::from_chars("CA")),
            PrefixVerdict::ExitedAt { position: 2 }
        );
        assert!(matches!(
            h_classify(h2(), &s, &FiniteWord::from_chars("CCC")),
            PrefixVerdict::InPref { .. }
        ));
        assert!(matches!(
            h_classify(h2(), &s, &FiniteWord::from_chars("CCCA")),
            PrefixVerdict::InPref { .. }
        ));
        // C·C·C·A·a then five C's: segment 2 opens with C^4, so the A due at
        // position 10 is missing.
        assert_eq!(
            h_classify(h2(), &s, &FiniteWord::from_chars("CCCAaCCCCC")),
            PrefixVerdict::ExitedAt { position: 10 }
        );
    }

    #[test]
    fn h_encode_round_trip() {
        let s = sigma();
        for chars in ["", "a", "ab", "aba", "abba", "babab"] {
            let x = FiniteWord::from_chars(chars);
            let enc = h_encode(h2(), &x);
            assert_eq!(h_decode(h2(), &s, &enc), Ok(x));
        }
    }

    #[test]
    fn h_encode_segment_shapes() {
        // K = 2: C^3 A x1, then seg 2 = C^4 A C^5 x2 B, seg 3 = C^8 A C^9 A x3.
        let enc = h_encode(h2(), &FiniteWord::from_chars("aba"));
        let expected = alloc::format!(
            "CCCAa{}A{}bB{}A{}Aa",
            "CCCC",
            "CCCCC",
            "CCCCCCCC",
            "CCCCCCCCC"
        );
        assert_eq!(enc, FiniteWord::from_chars(&expected));
    }

    #[test]
    fn hk_round_trip_and_shape() {
        let s = sigma();
        let enc = hk_encode(h2(), &FiniteWord::from_chars("ab"));
        // A C^2 a B, then C^4 A C^4 b B.
        assert_eq!(enc, FiniteWord::from_chars("ACCaBCCCCACCCCbB"));
        match hk_classify(h2(), &s, &enc) {
            PrefixVerdict::InPref { decoded } => {
                assert_eq!(decoded, FiniteWord::from_chars("ab"))
            }
            v => panic!("expected in-pref, got {v:?}"),
        }
    }

    #[test]
    fn hk_to_h_rewrites_complete_segments() {
        let s = sigma();
        let x = FiniteWord::from_chars("ab");
        let got = hk_to_h(h2(), &s, &hk_encode(h2(), &x)).unwrap();
        assert_eq!(got, h_encode(h2(), &x));
        assert_eq!(hk_to_h(h2(), &s, &FiniteWord::empty()), Ok(FiniteWord::empty()));
    }

    #[test]
    fn hk_to_h_rejects_partial_segment() {
        let s = sigma();
        assert_eq!(hk_to_h(h2(), &s, &FiniteWord::from_chars("ACC")), Err(3));
        // Exit position wins over the premature-end report.
        assert_eq!(hk_to_h(h2(), &s, &FiniteWord::from_chars("CA")), Err(1));
    }

    #[test]
    fn every_lasso_exits_theta_prefixes() {
        let s = sigma();
        for (spoke, cycle) in [("", "a"), ("", "E"), ("aEE", "bE"), ("aEEb", "E")] {
            let l = crate::word::Lasso::from_chars(spoke, cycle);
            let mut t = ThetaTracker::new(theta2(), &s).unwrap();
            let mut exited = false;
            for i in 1..=10_000u64 {
                if !t.feed(l.letter_at(i)) {
                    exited = true;
                    break;
                }
            }
            assert!(exited, "{l} stayed in the prefix set");
        }
    }
}
