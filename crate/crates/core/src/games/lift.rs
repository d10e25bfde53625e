//! Strategy lifting along a coding.
//!
//! A winning strategy in the big padded game G(coding(L) ∪ exit-parity
//! language) yields a strategy in the small game G(L): simulate the big game,
//! supply every forced padding letter for both sides, insert the small
//! opponent's letters at their payload slots, and surface the big strategy's
//! own payload letters as the small moves. The simulation keeps the invariant
//! that the decoded payload of the big transcript equals the small history,
//! which is what the re-encoding identity check verifies step by step.
//!
//! Payload slot parity must match the players, so both codings require an
//! even parameter here: with S (or K) even, the n-th payload position is odd
//! exactly when n is.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};

use super::{
    Coding, CodingTracker, GameError, Move, Obs, Player, Reason, StepStrategy, Strategy,
    StrategyKind, Verdict, Winner,
};
use crate::coding::Slot;
use crate::langs::LanguageHandle;
use crate::word::{Alphabet, FiniteWord, Letter};

/// A small-game strategy obtained by lifting a big-game strategy. Procedural
/// by nature: the simulated big transcript grows geometrically, so there is
/// no bounded state to fingerprint.
pub struct LiftedStrategy {
    name: String,
    role: Player,
    big: Strategy,
    big_state: usize,
    big_started: bool,
    tracker: CodingTracker,
    big_word: FiniteWord,
    sigma: Alphabet,
    coding: Coding,
    last_opp_big: Option<Letter>,
    pending_small: Option<Letter>,
}

/// Lift a big-game Player 1 strategy to the small game.
pub fn lift_p1(big: Strategy, coding: &Coding, sigma: &Alphabet) -> Result<LiftedStrategy, String> {
    LiftedStrategy::new(Player::One, big, coding, sigma)
}

/// Lift a big-game Player 2 strategy to the small game.
pub fn lift_p2(big: Strategy, coding: &Coding, sigma: &Alphabet) -> Result<LiftedStrategy, String> {
    LiftedStrategy::new(Player::Two, big, coding, sigma)
}

impl LiftedStrategy {
    fn new(
        role: Player,
        big: Strategy,
        coding: &Coding,
        sigma: &Alphabet,
    ) -> Result<LiftedStrategy, String> {
        let even = match coding {
            Coding::Theta(p) => p.s() % 2 == 0,
            Coding::H(p) => p.k() % 2 == 0,
        };
        if !even {
            return Err(format!(
                "lifting along {coding} needs an even parameter: payload slots must alternate writers"
            ));
        }
        let tracker = coding.tracker(sigma)?;
        let big_state = match &big.kind {
            StrategyKind::FiniteState(m) => m.initial(),
            StrategyKind::Procedural(_) => 0,
        };
        let side = match role {
            Player::One => "p1",
            Player::Two => "p2",
        };
        Ok(LiftedStrategy {
            name: format!("lift-{side}[{coding}]:{}", big.name()),
            role,
            big,
            big_state,
            big_started: false,
            tracker,
            big_word: FiniteWord::empty(),
            sigma: sigma.clone(),
            coding: *coding,
            last_opp_big: None,
            pending_small: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> Player {
        self.role
    }

    pub fn coding(&self) -> Coding {
        self.coding
    }

    /// The simulated big-game transcript so far.
    pub fn big_word(&self) -> &FiniteWord {
        &self.big_word
    }

    pub fn big_len(&self) -> u64 {
        self.big_word.len() as u64
    }

    /// Payload letters of the simulated transcript; equals the small-game
    /// history after each of this strategy's own moves.
    pub fn decoded(&self) -> &FiniteWord {
        self.tracker.decoded()
    }

    /// Wrap into a generic strategy object for the play engines.
    pub fn into_strategy(self) -> Strategy {
        let name = self.name.clone();
        Strategy::procedural(&name, Box::new(self))
    }

    fn big_next(&mut self, obs: &Obs) -> Result<Move, GameError> {
        self.big_started = true;
        match &mut self.big.kind {
            StrategyKind::FiniteState(m) => match m.step(self.big_state, obs) {
                Some((to, mv)) => {
                    self.big_state = *to;
                    Ok(mv.clone())
                }
                None => Err(GameError::Protocol(format!(
                    "strategy {}: no transition on {obs}",
                    self.big.name()
                ))),
            },
            StrategyKind::Procedural(s) => s.next_move(obs),
        }
    }

    fn big_obs(&mut self) -> Result<Obs, GameError> {
        match self.last_opp_big.take() {
            Some(l) => Ok(Obs::Letter(l)),
            None if !self.big_started => Ok(Obs::Start),
            None => Err(GameError::Protocol(String::from(
                "big strategy asked to move twice without an observation",
            ))),
        }
    }

    fn feed_big(&mut self, l: &Letter) -> Result<(), GameError> {
        let position = self.tracker.position() + 1;
        if !self.tracker.feed(l) {
            return Err(GameError::Protocol(format!(
                "simulated big transcript left the prefix set at position {position}"
            )));
        }
        self.big_word.push(l.clone());
        Ok(())
    }

    /// Drive the big game until this side's next payload slot produces a
    /// letter. Forced letters on the opponent's turns are synthesized; forced
    /// letters on our turns must come from the big strategy itself.
    fn advance(&mut self) -> Result<Letter, GameError> {
        loop {
            let position = self.tracker.position() + 1;
            let whose = Player::of_position(position);
            let slot = match self.tracker.slot() {
                Some(s) => s,
                None => {
                    return Err(GameError::Protocol(String::from(
                        "simulated big transcript is outside the prefix set",
                    )))
                }
            };
            match slot {
                Slot::Forced(expected) => {
                    if whose == self.role {
                        let obs = self.big_obs()?;
                        let got = match self.big_next(&obs)? {
                            Move::Letter(g) => g,
                            Move::Skip => {
                                return Err(GameError::Protocol(String::from(
                                    "big strategy skipped in a Gale-Stewart game",
                                )))
                            }
                        };
                        if got != expected {
                            return Err(GameError::ExitsCoding {
                                position,
                                expected,
                                got,
                            });
                        }
                        self.feed_big(&expected)?;
                    } else {
                        self.last_opp_big = Some(expected.clone());
                        self.feed_big(&expected)?;
                    }
                }
                Slot::Free => {
                    if whose == self.role {
                        let obs = self.big_obs()?;
                        let got = match self.big_next(&obs)? {
                            Move::Letter(g) => g,
                            Move::Skip => {
                                return Err(GameError::Protocol(String::from(
                                    "big strategy skipped in a Gale-Stewart game",
                                )))
                            }
                        };
                        if !self.sigma.contains(&got) {
                            return Err(GameError::Protocol(format!(
                                "big strategy played non-payload {got} at its payload slot {position}"
                            )));
                        }
                        self.feed_big(&got)?;
                        return Ok(got);
                    }
                    match self.pending_small.take() {
                        Some(l) => {
                            self.last_opp_big = Some(l.clone());
                            self.feed_big(&l)?;
                        }
                        None => {
                            return Err(GameError::Protocol(String::from(
                                "small opponent letter missing at its payload slot",
                            )))
                        }
                    }
                }
            }
        }
    }
}

impl StepStrategy for LiftedStrategy {
    fn next_move(&mut self, obs: &Obs) -> Result<Move, GameError> {
        match obs {
            Obs::Start => {
                if self.role != Player::One {
                    return Err(GameError::Protocol(String::from(
                        "lifted Player 2 strategy cannot open the play",
                    )));
                }
            }
            Obs::Letter(l) => {
                if !self.sigma.contains(l) {
                    return Err(GameError::Protocol(format!(
                        "small opponent played non-payload letter {l}"
                    )));
                }
                if self.pending_small.replace(l.clone()).is_some() {
                    return Err(GameError::Protocol(String::from(
                        "small opponent letter arrived before the previous one was placed",
                    )));
                }
            }
            Obs::Skip => {
                return Err(GameError::Protocol(String::from(
                    "lifted strategies play Gale-Stewart games; skip observed",
                )))
            }
        }
        Ok(Move::Letter(self.advance()?))
    }
}

/// Outcome of driving a lifted strategy against a small-game opponent.
#[derive(Clone, Debug)]
pub struct LiftReport {
    /// The small-game word that was played.
    pub small: FiniteWord,
    /// Length of the simulated big transcript when the run stopped.
    pub big_len: u64,
    /// Moves contributed by the lifted side.
    pub lift_moves: u64,
    /// Whether decoded payload and re-encoded history matched at every one of
    /// the lifted side's moves.
    pub identity_ok: bool,
    /// Verdict on the small play under the given winning set.
    pub verdict: Verdict,
}

/// Play the lifted strategy against `opponent` until the simulated big
/// transcript reaches `big_horizon` letters, checking the re-encoding
/// identity after every lifted move and adjudicating the small word at the
/// end. The horizon counts big-game letters because the big transcript grows
/// geometrically in the small one.
pub fn run_lift_with_identity_check(
    lift: &mut LiftedStrategy,
    opponent: &mut Strategy,
    handle: &LanguageHandle,
    big_horizon: u64,
) -> Result<LiftReport, GameError> {
    let oname = opponent.name().to_string();
    let mut oc = opponent.cursor();
    let mut small = FiniteWord::empty();
    let mut lift_moves = 0u64;
    let mut identity_ok = true;
    let mut lift_last: Option<Letter> = None;
    let mut opp_last: Option<Letter> = None;
    let role = lift.role;

    while lift.big_len() < big_horizon {
        if role == Player::One {
            let obs = match &opp_last {
                None => Obs::Start,
                Some(l) => Obs::Letter(l.clone()),
            };
            let l = letter_of(lift.next_move(&obs)?)?;
            small.push(l.clone());
            lift_moves += 1;
            identity_ok &= identity_holds(lift, &small);
            let ol = match oc.next(&oname, &Obs::Letter(l))? {
                Move::Letter(x) => x,
                Move::Skip => {
                    return Err(GameError::Protocol(format!(
                        "strategy {oname} skipped outside the Wadge Player 2 role"
                    )))
                }
            };
            small.push(ol.clone());
            opp_last = Some(ol);
        } else {
            let oobs = match &lift_last {
                None => Obs::Start,
                Some(l) => Obs::Letter(l.clone()),
            };
            let ol = match oc.next(&oname, &oobs)? {
                Move::Letter(x) => x,
                Move::Skip => {
                    return Err(GameError::Protocol(format!(
                        "strategy {oname} skipped outside the Wadge Player 2 role"
                    )))
                }
            };
            small.push(ol.clone());
            let l = letter_of(lift.next_move(&Obs::Letter(ol))?)?;
            small.push(l.clone());
            lift_moves += 1;
            identity_ok &= identity_holds(lift, &small);
            lift_last = Some(l);
        }
    }

    let verdict = match handle.decide_prefix(&small) {
        Some((member, _)) => Verdict {
            winner: if member {
                Winner::Player1
            } else {
                Winner::Player2
            },
            reason: Reason::Membership,
        },
        None => Verdict {
            winner: Winner::Undetermined,
            reason: Reason::Horizon,
        },
    };

    Ok(LiftReport {
        small,
        big_len: lift.big_len(),
        lift_moves,
        identity_ok,
        verdict,
    })
}

fn letter_of(m: Move) -> Result<Letter, GameError> {
    match m {
        Move::Letter(l) => Ok(l),
        Move::Skip => Err(GameError::Protocol(String::from(
            "lifted strategy produced a skip",
        ))),
    }
}

/// The re-encoding identity: the big transcript's payload equals the small
/// history, and the transcript is prefix-compatible with re-encoding it.
fn identity_holds(lift: &LiftedStrategy, small: &FiniteWord) -> bool {
    if lift.decoded() != small {
        return false;
    }
    let again = lift.coding.encode(small);
    lift.big_word().is_prefix_of(&again) || again.is_prefix_of(lift.big_word())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{e_letter, HParams, ThetaParams};
    use crate::games::{const_strategy, forced_then};
    use crate::langs::{first_letter_handle, nth_letter_handle};
    use crate::word::Alphabet;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn theta2() -> Coding {
        Coding::Theta(ThetaParams::new(2).unwrap())
    }

    fn h2() -> Coding {
        Coding::H(HParams::new(2).unwrap())
    }

    #[test]
    fn lifted_p1_opens_with_the_big_payload_letter() {
        let s = sigma();
        let a = Letter::new("a");
        for coding in [theta2(), h2()] {
            let big = forced_then(&coding, &s, &a).unwrap();
            let mut lift = lift_p1(big, &coding, &s).unwrap();
            let m = lift.next_move(&Obs::Start).unwrap();
            assert_eq!(m, Move::Letter(a.clone()));
            assert_eq!(lift.decoded().to_string(), "a");
        }
    }

    #[test]
    fn deviating_big_strategy_is_an_error_not_a_loss() {
        let s = sigma();
        let coded = theta2().alphabet(&s).unwrap();
        let a = Letter::new("a");
        let big = const_strategy(&coded, &a).unwrap();
        let mut lift = lift_p1(big, &theta2(), &s).unwrap();
        assert_eq!(lift.next_move(&Obs::Start).unwrap(), Move::Letter(a.clone()));
        let err = lift.next_move(&Obs::Letter(Letter::new("b"))).unwrap_err();
        assert_eq!(
            err,
            GameError::ExitsCoding {
                position: 3,
                expected: e_letter(),
                got: a
            }
        );
    }

    #[test]
    fn lift_rejects_odd_parameters() {
        let s = sigma();
        let coding = Coding::Theta(ThetaParams::new(3).unwrap());
        let big = forced_then(&coding, &s, &Letter::new("a")).unwrap();
        assert!(lift_p1(big, &coding, &s).is_err());
    }

    #[test]
    fn lifted_p1_wins_the_clopen_game_with_the_identity_intact() {
        let s = sigma();
        let a = Letter::new("a");
        let handle = first_letter_handle(&s, &a).unwrap();
        for coding in [theta2(), h2()] {
            let big = forced_then(&coding, &s, &a).unwrap();
            let mut lift = lift_p1(big, &coding, &s).unwrap();
            let mut opponent = const_strategy(&s, &Letter::new("b")).unwrap();
            let report =
                run_lift_with_identity_check(&mut lift, &mut opponent, &handle, 2_000).unwrap();
            assert_eq!(report.verdict.winner, Winner::Player1);
            assert!(report.identity_ok);
            assert!(report.lift_moves >= 2);
            assert_eq!(*report.small.letter(1), a);
            assert!(report.big_len >= 2_000);
        }
    }

    #[test]
    fn lifted_p2_controls_the_second_payload_slot() {
        let s = sigma();
        let a = Letter::new("a");
        // Winning set for Player 1 is "second letter differs from a", so the
        // lifted Player 2 strategy wins by playing a there.
        let handle = nth_letter_handle(&s, 2, &a, true).unwrap();
        for coding in [theta2(), h2()] {
            let big = forced_then(&coding, &s, &a).unwrap();
            let mut lift = lift_p2(big, &coding, &s).unwrap();
            let mut opponent = const_strategy(&s, &Letter::new("b")).unwrap();
            let report =
                run_lift_with_identity_check(&mut lift, &mut opponent, &handle, 2_000).unwrap();
            assert_eq!(report.verdict.winner, Winner::Player2);
            assert!(report.identity_ok);
            assert_eq!(*report.small.letter(2), a);
        }
    }
}
