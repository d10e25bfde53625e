//! Play engines and adjudication.
//!
//! Plays run to a finite horizon. Whenever both strategies expose a state
//! fingerprint the engine watches the joint state at round boundaries; a
//! repeat pins the infinite continuation down as a lasso, exactly, because
//! the joint state determines every later move. Adjudication never guesses:
//! a verdict needs a lasso, a decided prefix, or an all-skip cycle, and
//! anything else stays undetermined.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{GameError, Move, Obs, Player, Reason, Strategy, Verdict, Winner};
use crate::accept::Tv;
use crate::langs::{LanguageHandle, PrefixWhy};
use crate::word::{FiniteWord, Lasso, Letter};

/// A finished Gale-Stewart play: `word` interleaves both players' letters,
/// Player 1 at the odd positions. `lasso_form` is present when a joint state
/// repeat certified the continuation.
#[derive(Clone, Debug)]
pub struct GsTranscript {
    pub word: FiniteWord,
    pub rounds: u64,
    pub lasso_form: Option<Lasso>,
}

/// Run `rounds` rounds of the Gale-Stewart game. Each round is one Player 1
/// letter followed by one Player 2 letter, so the transcript has exactly
/// `2 * rounds` letters. Skips are illegal here.
pub fn gs_play(
    f1: &mut Strategy,
    f2: &mut Strategy,
    rounds: u64,
) -> Result<GsTranscript, GameError> {
    let name1 = f1.name().to_string();
    let name2 = f2.name().to_string();
    let mut c1 = f1.cursor();
    let mut c2 = f2.cursor();

    let mut word = FiniteWord::empty();
    let mut seen: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    let mut lasso_form = None;
    let mut last_p2: Option<Letter> = None;

    for r in 1..=rounds + 1 {
        if lasso_form.is_none() {
            if let (Some(s1), Some(s2)) = (c1.fingerprint(), c2.fingerprint()) {
                match seen.get(&(s1, s2)) {
                    Some(&start) => {
                        // Letters written since the earlier visit repeat forever.
                        let spoke = word.prefix(start);
                        let cycle = FiniteWord::new(word.as_slice()[start..].to_vec());
                        lasso_form =
                            Some(Lasso::new(spoke, cycle).expect("round cycle is nonempty"));
                    }
                    None => {
                        seen.insert((s1, s2), word.len());
                    }
                }
            }
        }
        if r > rounds {
            break;
        }
        let obs1 = match &last_p2 {
            None => Obs::Start,
            Some(l) => Obs::Letter(l.clone()),
        };
        let l1 = expect_letter(&name1, c1.next(&name1, &obs1)?)?;
        word.push(l1.clone());
        let l2 = expect_letter(&name2, c2.next(&name2, &Obs::Letter(l1))?)?;
        word.push(l2.clone());
        last_p2 = Some(l2);
    }

    Ok(GsTranscript {
        word,
        rounds,
        lasso_form,
    })
}

fn expect_letter(name: &str, m: Move) -> Result<Letter, GameError> {
    match m {
        Move::Letter(l) => Ok(l),
        Move::Skip => Err(GameError::Protocol(format!(
            "strategy {name} skipped outside the Wadge Player 2 role"
        ))),
    }
}

/// Decide a Gale-Stewart transcript against a winning set. Player 1 wins
/// exactly when the outcome belongs to the set.
pub fn gs_adjudicate(t: &GsTranscript, handle: &LanguageHandle) -> Verdict {
    if let Some(l) = &t.lasso_form {
        let winner = match handle.lasso_membership(l) {
            Tv::Accept => Winner::Player1,
            Tv::Reject => Winner::Player2,
            Tv::Unknown => Winner::Undetermined,
        };
        return Verdict {
            winner,
            reason: Reason::Membership,
        };
    }
    if let Some((member, why)) = handle.decide_prefix(&t.word) {
        let winner = if member {
            Winner::Player1
        } else {
            Winner::Player2
        };
        let reason = match why {
            PrefixWhy::Clopen => Reason::Membership,
            PrefixWhy::ExitParity { position } => Reason::OpponentExited {
                player: Player::of_position(position),
                position,
            },
        };
        return Verdict { winner, reason };
    }
    Verdict {
        winner: Winner::Undetermined,
        reason: Reason::Horizon,
    }
}

/// How a Wadge play continues beyond the horizon, when certified by a joint
/// state repeat.
#[derive(Clone, Debug)]
pub enum WadgeTail {
    /// Both words grow forever, ultimately periodically.
    Lassos { a: Lasso, b: Lasso },
    /// The repeating stretch contains no Player 2 letter, so `b` stays
    /// finite while `a` closes into a lasso.
    AllSkipCycle { a: Lasso },
}

/// A finished Wadge play. `skips` lists the rounds (1-indexed) in which
/// Player 2 skipped, so `b.len() + skips.len() == rounds`.
#[derive(Clone, Debug)]
pub struct WadgeTranscript {
    pub a: FiniteWord,
    pub b: FiniteWord,
    pub skips: Vec<u64>,
    pub rounds: u64,
    pub tail: Option<WadgeTail>,
}

/// Run `rounds` rounds of the Wadge game. Player 1 must write a letter every
/// round; Player 2 may answer with a letter or a skip.
pub fn wadge_play(
    f1: &mut Strategy,
    f2: &mut Strategy,
    rounds: u64,
) -> Result<WadgeTranscript, GameError> {
    let name1 = f1.name().to_string();
    let name2 = f2.name().to_string();
    let mut c1 = f1.cursor();
    let mut c2 = f2.cursor();

    let mut a = FiniteWord::empty();
    let mut b = FiniteWord::empty();
    let mut skips = Vec::new();
    let mut seen: BTreeMap<(u64, u64), (usize, usize)> = BTreeMap::new();
    let mut tail = None;
    let mut last_p2: Option<Move> = None;

    for r in 1..=rounds + 1 {
        if tail.is_none() {
            if let (Some(s1), Some(s2)) = (c1.fingerprint(), c2.fingerprint()) {
                match seen.get(&(s1, s2)) {
                    Some(&(a0, b0)) => {
                        let a_spoke = a.prefix(a0);
                        let a_cycle = FiniteWord::new(a.as_slice()[a0..].to_vec());
                        let a_lasso =
                            Lasso::new(a_spoke, a_cycle).expect("round cycle is nonempty");
                        tail = Some(if b.len() == b0 {
                            WadgeTail::AllSkipCycle { a: a_lasso }
                        } else {
                            let b_spoke = b.prefix(b0);
                            let b_cycle = FiniteWord::new(b.as_slice()[b0..].to_vec());
                            WadgeTail::Lassos {
                                a: a_lasso,
                                b: Lasso::new(b_spoke, b_cycle).expect("nonempty"),
                            }
                        });
                    }
                    None => {
                        seen.insert((s1, s2), (a.len(), b.len()));
                    }
                }
            }
        }
        if r > rounds {
            break;
        }
        let obs1 = match &last_p2 {
            None => Obs::Start,
            Some(Move::Letter(l)) => Obs::Letter(l.clone()),
            Some(Move::Skip) => Obs::Skip,
        };
        let l1 = expect_letter(&name1, c1.next(&name1, &obs1)?)?;
        a.push(l1.clone());
        let m2 = c2.next(&name2, &Obs::Letter(l1))?;
        match &m2 {
            Move::Letter(l) => b.push(l.clone()),
            Move::Skip => skips.push(r),
        }
        last_p2 = Some(m2);
    }

    Ok(WadgeTranscript {
        a,
        b,
        skips,
        rounds,
        tail,
    })
}

/// Decide a Wadge play of W(L, L2). Player 2 wins exactly when the two
/// memberships agree and `b` is infinite; a finite `b` loses for Player 2,
/// but only an all-skip cycle certifies that from a finite transcript.
pub fn wadge_adjudicate(
    t: &WadgeTranscript,
    l: &LanguageHandle,
    l2: &LanguageHandle,
) -> Verdict {
    match &t.tail {
        Some(WadgeTail::AllSkipCycle { .. }) => {
            return Verdict {
                winner: Winner::Player1,
                reason: Reason::BFinite,
            }
        }
        Some(WadgeTail::Lassos { a, b }) => {
            let ma = l.lasso_membership(a);
            let mb = l2.lasso_membership(b);
            let winner = match (ma, mb) {
                (Tv::Unknown, _) | (_, Tv::Unknown) => Winner::Undetermined,
                (x, y) if x == y => Winner::Player2,
                _ => Winner::Player1,
            };
            return Verdict {
                winner,
                reason: Reason::Membership,
            };
        }
        None => {}
    }
    // Without a certified tail only a disagreement of decided prefixes is
    // safe: then Player 1 wins whether or not b ever becomes infinite.
    if let (Some((ma, _)), Some((mb, _))) = (l.decide_prefix(&t.a), l2.decide_prefix(&t.b)) {
        if ma != mb {
            return Verdict {
                winner: Winner::Player1,
                reason: Reason::Membership,
            };
        }
    }
    Verdict {
        winner: Winner::Undetermined,
        reason: Reason::Horizon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{
        const_strategy, copy_strategy, first_letter_switch, skip_once_then_copy, skip_strategy,
        Mealy, StepStrategy,
    };
    use crate::langs::{first_letter_handle, zero_star_one_handle};
    use crate::word::Alphabet;

    fn bits() -> Alphabet {
        Alphabet::from_chars("01").unwrap()
    }

    fn letters() -> (Letter, Letter) {
        (Letter::new("0"), Letter::new("1"))
    }

    #[test]
    fn const_versus_copy_fills_the_board() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let a = Letter::new("a");
        let mut f1 = const_strategy(&sigma, &a).unwrap();
        let mut f2 = copy_strategy(&sigma, None).unwrap();
        let t = gs_play(&mut f1, &mut f2, 2).unwrap();
        assert_eq!(t.word.to_string(), "aaaa");
        let lasso = t.lasso_form.expect("two one-state strategies cycle");
        assert!(lasso.omega_eq(&Lasso::from_chars("", "a")));
    }

    #[test]
    fn zero_rounds_is_an_empty_play() {
        let sigma = bits();
        let (zero, _) = letters();
        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = const_strategy(&sigma, &zero).unwrap();
        let t = gs_play(&mut f1, &mut f2, 0).unwrap();
        assert!(t.word.is_empty());
        assert!(t.lasso_form.is_none());
    }

    #[test]
    fn lasso_expansion_matches_the_transcript() {
        let sigma = bits();
        let (zero, one) = letters();
        let mut f1 = copy_strategy(&sigma, Some(&one)).unwrap();
        let mut f2 = first_letter_switch(&sigma, &one, &one, &zero).unwrap();
        // Joint state space has size 1 * 3; any horizon beyond it must agree
        // with the detected lasso letter for letter.
        let t = gs_play(&mut f1, &mut f2, 40).unwrap();
        let lasso = t.lasso_form.expect("finite-state pair cycles");
        let bound = 4 * 3 * (lasso.spoke().len() + lasso.cycle().len());
        for n in 0..=bound.min(t.word.len()) {
            assert_eq!(lasso.prefix(n), t.word.prefix(n));
        }
    }

    #[test]
    fn adjudication_on_lassos_follows_membership() {
        let sigma = bits();
        let (zero, one) = letters();
        let handle = zero_star_one_handle(&sigma, &one).unwrap();

        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = const_strategy(&sigma, &one).unwrap();
        let t = gs_play(&mut f1, &mut f2, 4).unwrap();
        // Outcome (01)^omega has infinitely many ones.
        let v = gs_adjudicate(&t, &handle);
        assert_eq!(v.winner, Winner::Player1);
        assert_eq!(v.reason, Reason::Membership);

        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = const_strategy(&sigma, &zero).unwrap();
        let t = gs_play(&mut f1, &mut f2, 4).unwrap();
        let v = gs_adjudicate(&t, &handle);
        assert_eq!(v.winner, Winner::Player2);
    }

    /// Opaque strategy: plays a fixed letter but exposes no fingerprint.
    struct Opaque(Letter);

    impl StepStrategy for Opaque {
        fn next_move(&mut self, _obs: &Obs) -> Result<Move, GameError> {
            Ok(Move::Letter(self.0.clone()))
        }
    }

    #[test]
    fn tail_dependent_sets_stay_undetermined_without_a_lasso() {
        let sigma = bits();
        let (zero, one) = letters();
        let handle = zero_star_one_handle(&sigma, &one).unwrap();
        let mut f1 = Strategy::procedural("opaque", alloc::boxed::Box::new(Opaque(zero.clone())));
        let mut f2 = const_strategy(&sigma, &one).unwrap();
        let t = gs_play(&mut f1, &mut f2, 6).unwrap();
        assert!(t.lasso_form.is_none());
        let v = gs_adjudicate(&t, &handle);
        assert_eq!(v.winner, Winner::Undetermined);
        assert_eq!(v.reason, Reason::Horizon);
    }

    #[test]
    fn clopen_sets_decide_finite_transcripts() {
        let sigma = bits();
        let (zero, one) = letters();
        let handle = first_letter_handle(&sigma, &one).unwrap();
        let mut f1 = Strategy::procedural("opaque", alloc::boxed::Box::new(Opaque(one.clone())));
        let mut f2 = const_strategy(&sigma, &zero).unwrap();
        let t = gs_play(&mut f1, &mut f2, 1).unwrap();
        let v = gs_adjudicate(&t, &handle);
        assert_eq!(v.winner, Winner::Player1);
        assert_eq!(v.reason, Reason::Membership);
    }

    #[test]
    fn wadge_copy_mirrors_and_skips_are_recorded() {
        let sigma = bits();
        let (zero, _) = letters();

        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = copy_strategy(&sigma, None).unwrap();
        let t = wadge_play(&mut f1, &mut f2, 3).unwrap();
        assert_eq!(t.a.to_string(), "000");
        assert_eq!(t.b.to_string(), "000");
        assert!(t.skips.is_empty());

        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = skip_once_then_copy(&sigma);
        let t = wadge_play(&mut f1, &mut f2, 3).unwrap();
        assert_eq!(t.b.to_string(), "00");
        assert_eq!(t.skips, alloc::vec![1u64]);
    }

    #[test]
    fn all_skip_cycles_certify_a_finite_b() {
        let sigma = bits();
        let (zero, one) = letters();
        let l = zero_star_one_handle(&sigma, &one).unwrap();
        let mut f1 = const_strategy(&sigma, &zero).unwrap();
        let mut f2 = skip_strategy(&sigma);
        let t = wadge_play(&mut f1, &mut f2, 3).unwrap();
        assert!(t.b.is_empty());
        assert!(matches!(t.tail, Some(WadgeTail::AllSkipCycle { .. })));
        let v = wadge_adjudicate(&t, &l, &l);
        assert_eq!(v.winner, Winner::Player1);
        assert_eq!(v.reason, Reason::BFinite);
    }

    #[test]
    fn first_letter_switch_wins_the_frozen_wadge_pair() {
        let sigma = bits();
        let (zero, one) = letters();
        let l = first_letter_handle(&sigma, &one).unwrap();
        let l2 = zero_star_one_handle(&sigma, &one).unwrap();

        // Player 1 opens with 1 and then repeats 0: a = 1 0^omega.
        let mut entries = Vec::new();
        entries.push(((0usize, Obs::Start), (1usize, Move::Letter(one.clone()))));
        for x in sigma.letters() {
            entries.push(((0, Obs::Letter(x.clone())), (1, Move::Letter(one.clone()))));
            entries.push(((1, Obs::Letter(x.clone())), (1, Move::Letter(zero.clone()))));
        }
        entries.push(((1, Obs::Skip), (1, Move::Letter(zero.clone()))));
        let mut f1 = Strategy::finite("one-then-zeros", Mealy::new(2, 0, entries).unwrap());
        let mut f2 = first_letter_switch(&sigma, &one, &one, &zero).unwrap();

        let t = wadge_play(&mut f1, &mut f2, 8).unwrap();
        match &t.tail {
            Some(WadgeTail::Lassos { a, b }) => {
                assert!(a.omega_eq(&Lasso::from_chars("1", "0")));
                assert!(b.omega_eq(&Lasso::from_chars("", "1")));
            }
            other => panic!("expected both lassos, got {other:?}"),
        }
        let v = wadge_adjudicate(&t, &l, &l2);
        assert_eq!(v.winner, Winner::Player2);
        assert_eq!(v.reason, Reason::Membership);
    }
}
