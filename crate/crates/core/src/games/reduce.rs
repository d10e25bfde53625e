//! Continuous reductions out of Wadge strategies.
//!
//! A Player 2 strategy for W(L, L2) induces a prefix transformer: feed it the
//! letters of `a` one round at a time and collect what it writes, dropping
//! skips. Because the strategy is deterministic, the transformer is monotone
//! in both length and prefix order, so its pointwise limit is a continuous
//! function on the words where the output grows forever; when the strategy
//! wins W(L, L2), that limit witnesses L ≤ L2 in the reducibility order.
//!
//! Each application re-instantiates the strategy, so one reduction can be
//! applied to many words even when the strategy is procedural.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use super::{GameError, Move, Obs, Strategy};
use crate::word::{FiniteWord, Lasso};

/// Rounds simulated before giving up on a repeat while transforming a lasso.
/// Generous for transducers, whose joint state count is tiny.
const LASSO_ROUND_CAP: u64 = 1 << 20;

pub struct Reduction {
    name: String,
    factory: Box<dyn Fn() -> Result<Strategy, String> + Send + Sync>,
}

/// Package a Player 2 Wadge strategy as a prefix transformer. The factory
/// must build the same strategy every time; it is invoked once per
/// application.
pub fn strategy_to_reduction<F>(name: &str, factory: F) -> Reduction
where
    F: Fn() -> Result<Strategy, String> + Send + Sync + 'static,
{
    Reduction {
        name: String::from(name),
        factory: Box::new(factory),
    }
}

impl Reduction {
    pub fn name(&self) -> &str {
        &self.name
    }

    fn fresh(&self) -> Result<Strategy, GameError> {
        (self.factory)().map_err(GameError::Protocol)
    }

    /// The output prefix after Player 1 has played `a`.
    pub fn apply(&self, a: &FiniteWord) -> Result<FiniteWord, GameError> {
        let mut s = self.fresh()?;
        let name = s.name().to_string();
        let mut cursor = s.cursor();
        let mut b = FiniteWord::empty();
        for l in a.iter() {
            match cursor.next(&name, &Obs::Letter(l.clone()))? {
                Move::Letter(out) => b.push(out),
                Move::Skip => {}
            }
        }
        Ok(b)
    }

    /// The image of an eventually periodic word, or `None` when the strategy
    /// stops writing on it (the limit is then no ω-word). Needs a strategy
    /// with a state fingerprint to certify the repeat.
    pub fn apply_lasso(&self, a: &Lasso) -> Result<Option<Lasso>, GameError> {
        let mut s = self.fresh()?;
        let name = s.name().to_string();
        let mut cursor = s.cursor();
        let mut b = FiniteWord::empty();
        let spoke = a.spoke().len() as u64;
        let cycle = a.cycle().len() as u64;
        let mut seen: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
        let mut round = 0u64;
        loop {
            // Boundary check at the start of each pass around the wheel.
            if round >= spoke && (round - spoke) % cycle == 0 {
                let fp = cursor.fingerprint().ok_or_else(|| {
                    GameError::Protocol(String::from(
                        "strategy exposes no state fingerprint; cannot close the image lasso",
                    ))
                })?;
                if let Some(&(_, b0)) = seen.get(&fp) {
                    if b.len() == b0 {
                        return Ok(None);
                    }
                    let cyc = FiniteWord::new(b.as_slice()[b0..].to_vec());
                    let lasso = Lasso::new(b.prefix(b0), cyc)
                        .expect("cycle output is nonempty here");
                    return Ok(Some(lasso));
                }
                seen.insert(fp, (round as usize, b.len()));
            }
            if round >= LASSO_ROUND_CAP {
                return Err(GameError::Protocol(String::from(
                    "no joint repeat within the round cap",
                )));
            }
            round += 1;
            let l = a.letter_at(round).clone();
            match cursor.next(&name, &Obs::Letter(l))? {
                Move::Letter(out) => b.push(out),
                Move::Skip => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{copy_strategy, first_letter_switch, skip_strategy};
    use crate::word::{Alphabet, Letter};

    fn bits() -> Alphabet {
        Alphabet::from_chars("01").unwrap()
    }

    fn switch_reduction() -> Reduction {
        strategy_to_reduction("first-letter-switch", || {
            let sigma = bits();
            first_letter_switch(&sigma, &Letter::new("1"), &Letter::new("1"), &Letter::new("0"))
        })
    }

    #[test]
    fn copy_reduces_to_the_identity() {
        let r = strategy_to_reduction("copy", || copy_strategy(&bits(), None));
        let w = FiniteWord::from_chars("10010");
        assert_eq!(r.apply(&w).unwrap(), w);
        let a = Lasso::from_chars("1", "01");
        let img = r.apply_lasso(&a).unwrap().expect("copy writes forever");
        assert!(img.omega_eq(&a));
    }

    #[test]
    fn the_switch_strategy_transforms_by_its_first_letter() {
        let r = switch_reduction();
        assert_eq!(
            r.apply(&FiniteWord::from_chars("10")).unwrap().to_string(),
            "11"
        );
        assert_eq!(
            r.apply(&FiniteWord::from_chars("01")).unwrap().to_string(),
            "00"
        );
        let img = r
            .apply_lasso(&Lasso::from_chars("1", "0"))
            .unwrap()
            .expect("writes every round");
        assert!(img.omega_eq(&Lasso::from_chars("", "1")));
    }

    #[test]
    fn prefix_monotonicity_holds_along_a_word() {
        let r = switch_reduction();
        let w = FiniteWord::from_chars("011010");
        let mut prev = FiniteWord::empty();
        for n in 0..=w.len() {
            let out = r.apply(&w.prefix(n)).unwrap();
            assert!(prev.is_prefix_of(&out));
            prev = out;
        }
    }

    #[test]
    fn all_skip_strategies_have_no_omega_image() {
        let r = strategy_to_reduction("skip", || Ok(skip_strategy(&bits())));
        assert!(r.apply(&FiniteWord::from_chars("0101")).unwrap().is_empty());
        assert_eq!(r.apply_lasso(&Lasso::from_chars("", "01")).unwrap(), None);
    }
}
