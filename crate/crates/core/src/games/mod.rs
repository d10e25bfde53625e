//! Two-player games on ω-words.
//!
//! A Gale-Stewart play interleaves letters from both players into one word;
//! Player 1 writes the odd positions and wins exactly when the outcome lies
//! in the winning set. A Wadge play builds two words, with Player 2 allowed
//! to skip. On top of the engines sit the padding-game tools: forced-move
//! analysis against a coding's prefix set, strategy lifting along a coding,
//! and extraction of continuous reductions from Player 2 strategies.

mod lift;
mod play;
mod reduce;

pub use lift::{lift_p1, lift_p2, run_lift_with_identity_check, LiftReport, LiftedStrategy};
pub use play::{
    gs_adjudicate, gs_play, wadge_adjudicate, wadge_play, GsTranscript, WadgeTail, WadgeTranscript,
};
pub use reduce::{strategy_to_reduction, Reduction};

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coding::{
    h_encode, theta_alphabet, theta_encode, HParams, HTracker, PrefixVerdict, Slot, ThetaParams,
    ThetaTracker,
};
use crate::word::{Alphabet, FiniteWord, Letter};

/// One side of a two-player game.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Player {
    One,
    Two,
}

impl Player {
    /// Writer of the given 1-indexed position: odd positions belong to
    /// Player 1, even positions to Player 2.
    pub fn of_position(position: u64) -> Player {
        if position % 2 == 1 {
            Player::One
        } else {
            Player::Two
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::One => write!(f, "Player1"),
            Player::Two => write!(f, "Player2"),
        }
    }
}

/// A move: write a letter, or (Wadge Player 2 only) skip the turn.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Move {
    Letter(Letter),
    Skip,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Letter(l) => write!(f, "{l}"),
            Move::Skip => write!(f, "s"),
        }
    }
}

/// What a strategy sees before moving: nothing yet (its opening move), the
/// opponent's latest letter, or the opponent's skip.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Obs {
    Start,
    Letter(Letter),
    Skip,
}

impl fmt::Display for Obs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obs::Start => write!(f, "start"),
            Obs::Letter(l) => write!(f, "{l}"),
            Obs::Skip => write!(f, "s"),
        }
    }
}

/// Failures while running a play. A lifted strategy whose big-game source
/// deviates from the coding is an error, never a silent loss.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GameError {
    /// The big-game strategy emitted `got` where the coding forces `expected`.
    ExitsCoding {
        position: u64,
        expected: Letter,
        got: Letter,
    },
    /// A strategy broke the move discipline (skip outside the Wadge
    /// Player 2 role, missing transducer transition, protocol failure).
    Protocol(String),
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::ExitsCoding {
                position,
                expected,
                got,
            } => write!(
                f,
                "exits coding at position {position}: forced letter {expected}, strategy played {got}"
            ),
            GameError::Protocol(msg) => write!(f, "protocol: {msg}"),
        }
    }
}

/// Who won, if anyone. Finite transcripts that no certificate decides stay
/// undetermined rather than being guessed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Winner {
    Player1,
    Player2,
    Undetermined,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Winner::Player1 => write!(f, "Player1"),
            Winner::Player2 => write!(f, "Player2"),
            Winner::Undetermined => write!(f, "Undetermined"),
        }
    }
}

/// Why the verdict came out as it did.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reason {
    /// Settled by membership of the outcome (lasso oracle or clopen prefix).
    Membership,
    /// Settled because this player left a coding's prefix set first.
    OpponentExited { player: Player, position: u64 },
    /// Wadge only: Player 2's word stays finite, certified by an all-skip cycle.
    BFinite,
    /// Nothing decided within the played horizon.
    Horizon,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Membership => write!(f, "membership"),
            Reason::OpponentExited { player, position } => {
                write!(f, "opponent-exited:{player}@{position}")
            }
            Reason::BFinite => write!(f, "b-finite"),
            Reason::Horizon => write!(f, "horizon"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub winner: Winner,
    pub reason: Reason,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.winner, self.reason)
    }
}

/// Deterministic transducer: `(state, observation) -> (state, move)`.
/// Immutable once built; engines track the current state externally, so one
/// instance can serve many plays.
#[derive(Clone, Debug)]
pub struct Mealy {
    states: usize,
    initial: usize,
    step: BTreeMap<(usize, Obs), (usize, Move)>,
}

impl Mealy {
    pub fn new(
        states: usize,
        initial: usize,
        entries: Vec<((usize, Obs), (usize, Move))>,
    ) -> Result<Self, String> {
        if states == 0 {
            return Err("transducer needs at least one state".into());
        }
        if initial >= states {
            return Err(format!("initial state {initial} out of range"));
        }
        let mut step = BTreeMap::new();
        for ((from, obs), (to, mv)) in entries {
            if from >= states || to >= states {
                return Err(format!("transition {from}->{to} out of range"));
            }
            if step.insert((from, obs.clone()), (to, mv)).is_some() {
                return Err(format!("duplicate transition from state {from} on {obs}"));
            }
        }
        Ok(Mealy {
            states,
            initial,
            step,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, state: usize, obs: &Obs) -> Option<&(usize, Move)> {
        self.step.get(&(state, obs.clone()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, Obs), &(usize, Move))> {
        self.step.iter()
    }
}

/// A strategy object. Finite-state strategies expose their transducer so
/// engines can detect joint cycles; procedural ones step a boxed object that
/// owns whatever state it needs and is good for a single play.
pub struct Strategy {
    name: String,
    kind: StrategyKind,
}

pub enum StrategyKind {
    FiniteState(Mealy),
    Procedural(Box<dyn StepStrategy + Send>),
}

/// Stepping interface for procedural strategies. `fingerprint` may expose a
/// bounded state summary; engines use it for cycle detection only when both
/// sides provide one.
pub trait StepStrategy {
    fn next_move(&mut self, obs: &Obs) -> Result<Move, GameError>;

    fn fingerprint(&self) -> Option<u64> {
        None
    }
}

impl Strategy {
    pub fn finite(name: &str, m: Mealy) -> Strategy {
        Strategy {
            name: String::from(name),
            kind: StrategyKind::FiniteState(m),
        }
    }

    pub fn procedural(name: &str, s: Box<dyn StepStrategy + Send>) -> Strategy {
        Strategy {
            name: String::from(name),
            kind: StrategyKind::Procedural(s),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_finite_state(&self) -> bool {
        matches!(self.kind, StrategyKind::FiniteState(_))
    }

    pub fn mealy(&self) -> Option<&Mealy> {
        match &self.kind {
            StrategyKind::FiniteState(m) => Some(m),
            StrategyKind::Procedural(_) => None,
        }
    }

    /// Fresh play cursor. Finite-state strategies restart from their initial
    /// state; procedural ones continue from wherever they are, so use a fresh
    /// instance per play.
    pub(crate) fn cursor(&mut self) -> Cursor<'_> {
        match &mut self.kind {
            StrategyKind::FiniteState(m) => Cursor::Fs {
                state: m.initial,
                m,
            },
            StrategyKind::Procedural(s) => Cursor::Proc(s.as_mut()),
        }
    }
}

pub(crate) enum Cursor<'a> {
    Fs { m: &'a Mealy, state: usize },
    Proc(&'a mut (dyn StepStrategy + Send)),
}

impl Cursor<'_> {
    pub(crate) fn next(&mut self, name: &str, obs: &Obs) -> Result<Move, GameError> {
        match self {
            Cursor::Fs { m, state } => match m.step(*state, obs) {
                Some((to, mv)) => {
                    *state = *to;
                    Ok(mv.clone())
                }
                None => Err(GameError::Protocol(format!(
                    "strategy {name}: no transition from state {state} on {obs}"
                ))),
            },
            Cursor::Proc(s) => s.next_move(obs),
        }
    }

    pub(crate) fn fingerprint(&self) -> Option<u64> {
        match self {
            Cursor::Fs { state, .. } => Some(*state as u64),
            Cursor::Proc(s) => s.fingerprint(),
        }
    }
}

/// Always write the same letter.
pub fn const_strategy(alphabet: &Alphabet, l: &Letter) -> Result<Strategy, String> {
    if !alphabet.contains(l) {
        return Err(format!("letter {l} is not in the alphabet"));
    }
    let mut entries = Vec::new();
    entries.push(((0, Obs::Start), (0, Move::Letter(l.clone()))));
    entries.push(((0, Obs::Skip), (0, Move::Letter(l.clone()))));
    for x in alphabet.letters() {
        entries.push(((0, Obs::Letter(x.clone())), (0, Move::Letter(l.clone()))));
    }
    Ok(Strategy::finite(
        &format!("const:{l}"),
        Mealy::new(1, 0, entries)?,
    ))
}

/// Echo the opponent's latest letter. An opener is required for use as
/// Player 1 (there is nothing to echo yet) and doubles as the reply to a
/// skip observation.
pub fn copy_strategy(alphabet: &Alphabet, opener: Option<&Letter>) -> Result<Strategy, String> {
    if let Some(l) = opener {
        if !alphabet.contains(l) {
            return Err(format!("opener {l} is not in the alphabet"));
        }
    }
    let mut entries = Vec::new();
    for x in alphabet.letters() {
        entries.push(((0, Obs::Letter(x.clone())), (0, Move::Letter(x.clone()))));
    }
    if let Some(l) = opener {
        entries.push(((0, Obs::Start), (0, Move::Letter(l.clone()))));
        entries.push(((0, Obs::Skip), (0, Move::Letter(l.clone()))));
    }
    let name = match opener {
        Some(l) => format!("copy:{l}"),
        None => String::from("copy"),
    };
    Ok(Strategy::finite(&name, Mealy::new(1, 0, entries)?))
}

/// Wadge Player 2: never write anything.
pub fn skip_strategy(alphabet: &Alphabet) -> Strategy {
    let mut entries = Vec::new();
    entries.push(((0, Obs::Start), (0, Move::Skip)));
    entries.push(((0, Obs::Skip), (0, Move::Skip)));
    for x in alphabet.letters() {
        entries.push(((0, Obs::Letter(x.clone())), (0, Move::Skip)));
    }
    Strategy::finite(
        "skip",
        Mealy::new(1, 0, entries).expect("one-state transducer"),
    )
}

/// Wadge Player 2: skip the first turn, then echo every observed letter.
pub fn skip_once_then_copy(alphabet: &Alphabet) -> Strategy {
    let mut entries = Vec::new();
    for x in alphabet.letters() {
        entries.push(((0, Obs::Letter(x.clone())), (1, Move::Skip)));
        entries.push(((1, Obs::Letter(x.clone())), (1, Move::Letter(x.clone()))));
    }
    Strategy::finite(
        "skip-once-then-copy",
        Mealy::new(2, 0, entries).expect("two-state transducer"),
    )
}

/// Commit on the very first observed letter: if it equals `trigger`, write
/// `yes` forever, otherwise write `no` forever.
pub fn first_letter_switch(
    alphabet: &Alphabet,
    trigger: &Letter,
    yes: &Letter,
    no: &Letter,
) -> Result<Strategy, String> {
    for l in [trigger, yes, no] {
        if !alphabet.contains(l) {
            return Err(format!("letter {l} is not in the alphabet"));
        }
    }
    let mut entries = Vec::new();
    for x in alphabet.letters() {
        let to = if x == trigger { 1 } else { 2 };
        let out = if x == trigger { yes } else { no };
        entries.push(((0, Obs::Letter(x.clone())), (to, Move::Letter(out.clone()))));
        entries.push(((1, Obs::Letter(x.clone())), (1, Move::Letter(yes.clone()))));
        entries.push(((2, Obs::Letter(x.clone())), (2, Move::Letter(no.clone()))));
    }
    entries.push(((1, Obs::Skip), (1, Move::Letter(yes.clone()))));
    entries.push(((2, Obs::Skip), (2, Move::Letter(no.clone()))));
    Ok(Strategy::finite(
        &format!("first-letter-switch:{trigger}:{yes}:{no}"),
        Mealy::new(3, 0, entries)?,
    ))
}

/// A coding of payload words into padded words, as used by the padding games.
#[derive(Clone, Copy, Debug)]
pub enum Coding {
    Theta(ThetaParams),
    H(HParams),
}

impl Coding {
    /// The padded side's alphabet: payload letters plus this coding's markers.
    pub fn alphabet(&self, sigma: &Alphabet) -> Result<Alphabet, String> {
        match self {
            Coding::Theta(_) => theta_alphabet(sigma),
            Coding::H(_) => crate::coding::gamma_alphabet(sigma),
        }
    }

    pub fn encode(&self, x: &FiniteWord) -> FiniteWord {
        match self {
            Coding::Theta(p) => theta_encode(*p, x),
            Coding::H(p) => h_encode(*p, x),
        }
    }

    pub fn tracker(&self, sigma: &Alphabet) -> Result<CodingTracker, String> {
        match self {
            Coding::Theta(p) => Ok(CodingTracker::Theta(ThetaTracker::new(*p, sigma)?)),
            Coding::H(p) => Ok(CodingTracker::H(HTracker::new(*p, sigma)?)),
        }
    }

    pub fn classify(&self, sigma: &Alphabet, w: &FiniteWord) -> Result<PrefixVerdict, String> {
        let mut t = self.tracker(sigma)?;
        for l in w.iter() {
            if !t.feed(l) {
                break;
            }
        }
        Ok(t.verdict())
    }
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coding::Theta(p) => write!(f, "theta[S={}]", p.s()),
            Coding::H(p) => write!(f, "h[K={}]", p.k()),
        }
    }
}

/// Incremental prefix recognizer for either coding, O(1) per letter.
pub enum CodingTracker {
    Theta(ThetaTracker),
    H(HTracker),
}

impl CodingTracker {
    pub fn feed(&mut self, l: &Letter) -> bool {
        match self {
            CodingTracker::Theta(t) => t.feed(l),
            CodingTracker::H(t) => t.feed(l),
        }
    }

    pub fn slot(&self) -> Option<Slot> {
        match self {
            CodingTracker::Theta(t) => t.slot(),
            CodingTracker::H(t) => t.slot(),
        }
    }

    pub fn position(&self) -> u64 {
        match self {
            CodingTracker::Theta(t) => t.position(),
            CodingTracker::H(t) => t.position(),
        }
    }

    pub fn decoded(&self) -> &FiniteWord {
        match self {
            CodingTracker::Theta(t) => t.decoded(),
            CodingTracker::H(t) => t.decoded(),
        }
    }

    pub fn verdict(&self) -> PrefixVerdict {
        match self {
            CodingTracker::Theta(t) => t.verdict(),
            CodingTracker::H(t) => t.verdict(),
        }
    }
}

/// Big-game strategy that plays every forced letter and falls back to a fixed
/// payload letter at its free slots. State grows with the play, so this is
/// procedural, not finite-state.
struct ForcedThen {
    tracker: CodingTracker,
    fallback: Letter,
    exited: bool,
}

impl StepStrategy for ForcedThen {
    fn next_move(&mut self, obs: &Obs) -> Result<Move, GameError> {
        match obs {
            Obs::Start => {}
            Obs::Letter(l) => {
                if !self.exited && !self.tracker.feed(l) {
                    self.exited = true;
                }
            }
            Obs::Skip => {
                return Err(GameError::Protocol(String::from(
                    "forced-then observed a skip outside the Wadge Player 2 role",
                )))
            }
        }
        if self.exited {
            return Ok(Move::Letter(self.fallback.clone()));
        }
        let out = match self.tracker.slot() {
            Some(Slot::Forced(l)) => l,
            Some(Slot::Free) => self.fallback.clone(),
            None => {
                self.exited = true;
                self.fallback.clone()
            }
        };
        if !self.exited && !self.tracker.feed(&out) {
            self.exited = true;
        }
        Ok(Move::Letter(out))
    }
}

/// Big-game strategy for a padding game: every forced letter, then `fallback`
/// at each of its own free slots.
pub fn forced_then(coding: &Coding, sigma: &Alphabet, fallback: &Letter) -> Result<Strategy, String> {
    if !sigma.contains(fallback) {
        return Err(format!("fallback {fallback} is not a payload letter"));
    }
    let tracker = coding.tracker(sigma)?;
    Ok(Strategy::procedural(
        &format!("forced-then:{fallback}"),
        Box::new(ForcedThen {
            tracker,
            fallback: fallback.clone(),
            exited: false,
        }),
    ))
}

/// What the coding demands at the next position of `w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForcedOutcome {
    /// Exactly one letter keeps the word inside the prefix set.
    Forced(Letter),
    /// Payload slot: every payload letter continues. `x_index` is 1-indexed
    /// into the decoded word; `writer` owns the position by parity.
    FreeSlot { writer: Player, x_index: u64 },
    /// The word already left the prefix set at this position.
    AlreadyExited { position: u64 },
}

/// Classify the next position of `w` against the coding's prefix set by
/// probing every letter of the padded alphabet. Agreement with the trackers'
/// own slot analysis is checked exhaustively in the verification suites.
pub fn forced_move(
    coding: &Coding,
    sigma: &Alphabet,
    w: &FiniteWord,
) -> Result<ForcedOutcome, String> {
    let decoded = match coding.classify(sigma, w)? {
        PrefixVerdict::ExitedAt { position } => {
            return Ok(ForcedOutcome::AlreadyExited { position })
        }
        PrefixVerdict::InPref { decoded } => decoded,
    };
    let padded = coding.alphabet(sigma)?;
    let mut stayers = Vec::new();
    for l in padded.letters() {
        let mut probe = w.clone();
        probe.push(l.clone());
        if let PrefixVerdict::InPref { .. } = coding.classify(sigma, &probe)? {
            stayers.push(l.clone());
        }
    }
    let all_payload =
        stayers.len() == sigma.len() && stayers.iter().all(|l| sigma.contains(l));
    if all_payload {
        let position = w.len() as u64 + 1;
        return Ok(ForcedOutcome::FreeSlot {
            writer: Player::of_position(position),
            x_index: decoded.len() as u64 + 1,
        });
    }
    if stayers.len() == 1 {
        let mut it = stayers.into_iter();
        return Ok(ForcedOutcome::Forced(it.next().expect("one stayer")));
    }
    Err(format!(
        "prefix set is not rigid after {w}: {} continuations",
        stayers.len()
    ))
}

/// First departure of an interleaved word from the coding's prefix set,
/// attributed to the writer of the exit position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExitEvent {
    pub player: Player,
    pub position: u64,
}

pub fn detect_exit(
    coding: &Coding,
    sigma: &Alphabet,
    word: &FiniteWord,
) -> Result<Option<ExitEvent>, String> {
    match coding.classify(sigma, word)? {
        PrefixVerdict::InPref { .. } => Ok(None),
        PrefixVerdict::ExitedAt { position } => Ok(Some(ExitEvent {
            player: Player::of_position(position),
            position,
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn theta2() -> Coding {
        Coding::Theta(ThetaParams::new(2).unwrap())
    }

    #[test]
    fn forced_move_walks_the_theta_pattern() {
        let sigma = ab();
        let c = theta2();
        let e = crate::coding::e_letter();

        let w = FiniteWord::from_chars("a");
        assert_eq!(forced_move(&c, &sigma, &w).unwrap(), ForcedOutcome::Forced(e.clone()));

        let w = FiniteWord::from_chars("aEE");
        assert_eq!(
            forced_move(&c, &sigma, &w).unwrap(),
            ForcedOutcome::FreeSlot {
                writer: Player::Two,
                x_index: 2
            }
        );

        let w = FiniteWord::from_chars("aEa");
        assert_eq!(
            forced_move(&c, &sigma, &w).unwrap(),
            ForcedOutcome::AlreadyExited { position: 3 }
        );

        let w = FiniteWord::empty();
        assert_eq!(
            forced_move(&c, &sigma, &w).unwrap(),
            ForcedOutcome::FreeSlot {
                writer: Player::One,
                x_index: 1
            }
        );
    }

    #[test]
    fn forced_move_agrees_with_the_tracker_slot() {
        let sigma = ab();
        let c = Coding::H(HParams::new(2).unwrap());
        let x = FiniteWord::from_chars("abab");
        let coded = c.encode(&x);
        let mut w = FiniteWord::empty();
        for l in coded.iter() {
            let mut t = c.tracker(&sigma).unwrap();
            for fed in w.iter() {
                assert!(t.feed(fed));
            }
            let fm = forced_move(&c, &sigma, &w).unwrap();
            match t.slot().unwrap() {
                Slot::Forced(expect) => assert_eq!(fm, ForcedOutcome::Forced(expect)),
                Slot::Free => assert!(matches!(fm, ForcedOutcome::FreeSlot { .. })),
            }
            w.push(l.clone());
        }
    }

    #[test]
    fn exit_detection_blames_the_writer_by_parity() {
        let sigma = ab();
        let c = theta2();
        let w = FiniteWord::from_chars("aEab");
        assert_eq!(
            detect_exit(&c, &sigma, &w).unwrap(),
            Some(ExitEvent {
                player: Player::One,
                position: 3
            })
        );
        let w = FiniteWord::from_chars("aEEE");
        assert_eq!(
            detect_exit(&c, &sigma, &w).unwrap(),
            Some(ExitEvent {
                player: Player::Two,
                position: 4
            })
        );
        let w = FiniteWord::from_chars("aEEb");
        assert_eq!(detect_exit(&c, &sigma, &w).unwrap(), None);
    }

    #[test]
    fn builtin_transducers_step_as_named() {
        let sigma = Alphabet::from_chars("01").unwrap();
        let zero = Letter::new("0");
        let one = Letter::new("1");

        let mut s = const_strategy(&sigma, &one).unwrap();
        let mut c = s.cursor();
        assert_eq!(c.next("t", &Obs::Start).unwrap(), Move::Letter(one.clone()));
        assert_eq!(
            c.next("t", &Obs::Letter(zero.clone())).unwrap(),
            Move::Letter(one.clone())
        );

        let mut s = first_letter_switch(&sigma, &one, &one, &zero).unwrap();
        let mut c = s.cursor();
        assert_eq!(
            c.next("t", &Obs::Letter(one.clone())).unwrap(),
            Move::Letter(one.clone())
        );
        assert_eq!(
            c.next("t", &Obs::Letter(zero.clone())).unwrap(),
            Move::Letter(one.clone())
        );

        let mut s = skip_once_then_copy(&sigma);
        let mut c = s.cursor();
        assert_eq!(c.next("t", &Obs::Letter(zero.clone())).unwrap(), Move::Skip);
        assert_eq!(
            c.next("t", &Obs::Letter(zero.clone())).unwrap(),
            Move::Letter(zero.clone())
        );
    }

    #[test]
    fn forced_then_follows_the_coding_and_pads() {
        let sigma = ab();
        let c = theta2();
        let a = Letter::new("a");
        let mut s = forced_then(&c, &sigma, &a).unwrap();
        let mut cur = s.cursor();
        assert!(cur.fingerprint().is_none());
        let m1 = cur.next("t", &Obs::Start).unwrap();
        assert_eq!(m1, Move::Letter(a.clone()));
        let e = crate::coding::e_letter();
        let m3 = cur.next("t", &Obs::Letter(e.clone())).unwrap();
        assert_eq!(m3, Move::Letter(e.clone()));
        let m5 = cur.next("t", &Obs::Letter(a.clone())).unwrap();
        assert_eq!(m5.to_string(), "E");
    }
}
