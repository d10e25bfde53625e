//! Machines on the θ side: the image language θ_S(L) for clopen L, the exit
//! parity language L′, and their union, the θ game winning set.
//!
//! All three share one counting skeleton. θ_S pads x(1)x(2)x(3)… into
//! x(1)·E^S·x(2)·E^{S²}·x(3)·…, so following the shape means checking that
//! run i has length exactly S^i. Two counters alternate roles: while run i is
//! read, one counter (holding S^{i-1} from the previous run) is drained by
//! one per block of S letters and the other is built up by one per letter.
//! The drained counter reaches zero exactly at the run's end with the built
//! counter holding S^i, and the roles swap at the next payload letter. The
//! very first payload injects 1, the length of the zeroth "run".
//!
//! Payload slots are where the two languages diverge. The image machine
//! admits only payloads the clopen condition allows and accepts on payload
//! states; anything off-shape simply has no rule. The L′ machine admits any
//! payload but is total: the first off-shape letter falls into a sink chosen
//! by the parity of its position, and the accepting sink is the even one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coding::{e_letter, theta_alphabet, ThetaParams};
use crate::compose::union;
use crate::langs::{expand_rules, ClopenCondition};
use crate::machine::{CounterMachine, CounterTest, StateId};
use crate::word::Alphabet;

/// Counter currently being drained.
type Role = usize;

struct StateSpace {
    names: Vec<String>,
    ids: BTreeMap<String, StateId>,
}

impl StateSpace {
    fn new() -> Self {
        StateSpace { names: Vec::new(), ids: BTreeMap::new() }
    }

    fn add(&mut self, name: String) -> StateId {
        let id = self.names.len();
        self.names.push(name.clone());
        self.ids.insert(name, id);
        id
    }

    fn id(&self, name: &str) -> StateId {
        self.ids[name]
    }
}

fn drain_update(r: Role) -> Vec<i8> {
    let mut u = vec![0i8; 2];
    u[r] = -1;
    u[1 - r] = 1;
    u
}

fn build_update(r: Role) -> Vec<i8> {
    let mut u = vec![0i8; 2];
    u[1 - r] = 1;
    u
}

fn test_on(r: Role, t: CounterTest) -> Vec<Option<CounterTest>> {
    let mut v = vec![None; 2];
    v[r] = Some(t);
    v
}

/// Deterministic real-time 2-counter machine for θ_S(L), L the clopen
/// language of ω-words over Σ meeting `cond`. States carry the clamped index
/// of the next payload so constrained slots admit only their required letter;
/// beyond the last constrained index the slot index saturates. Accepting
/// states are entered exactly on payload reads.
pub fn theta_image_machine(
    params: ThetaParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<CounterMachine, String> {
    if cond.sigma() != sigma {
        return Err("condition is over a different payload alphabet".into());
    }
    let alphabet = theta_alphabet(sigma)?;
    let s = params.s() as usize;
    let sat = (cond.max_index() as usize) + 1;
    let clamp = |i: usize| i.min(sat);

    let mut sp = StateSpace::new();
    sp.add("init".into());
    for r in 0..2usize {
        for idx in 1..=sat {
            sp.add(format!("pb{r}.{idx}"));
            sp.add(format!("j{r}.{idx}"));
            for m in 1..s {
                sp.add(format!("inb{r}.{m}.{idx}"));
            }
        }
    }

    let mut specs = Vec::new();
    // x(1) injects the length of run zero.
    for l in sigma.letters() {
        if cond.allows(1, l) {
            specs.push((
                sp.id("init"),
                Some(l.clone()),
                vec![Some(CounterTest::Zero); 2],
                sp.id(&format!("j1.{}", clamp(2))),
                vec![0, 1],
            ));
        }
    }
    for r in 0..2usize {
        for idx in 1..=sat {
            for boundary in [format!("pb{r}.{idx}"), format!("j{r}.{idx}")] {
                let from = sp.id(&boundary);
                // Inside the run: drain one per block of S letters.
                specs.push((
                    from,
                    Some(e_letter()),
                    test_on(r, CounterTest::Positive),
                    sp.id(&format!("inb{r}.1.{idx}")),
                    drain_update(r),
                ));
                // Run complete: a payload the condition allows may follow.
                for l in sigma.letters() {
                    if cond.allows(idx as u64, l) {
                        specs.push((
                            from,
                            Some(l.clone()),
                            test_on(r, CounterTest::Zero),
                            sp.id(&format!("j{}.{}", 1 - r, clamp(idx + 1))),
                            vec![0, 0],
                        ));
                    }
                }
            }
            for m in 1..s {
                let to = if m + 1 < s {
                    format!("inb{r}.{}.{idx}", m + 1)
                } else {
                    format!("pb{r}.{idx}")
                };
                specs.push((
                    sp.id(&format!("inb{r}.{m}.{idx}")),
                    Some(e_letter()),
                    vec![None; 2],
                    sp.id(&to),
                    build_update(r),
                ));
            }
        }
    }

    let accepting = sp
        .names
        .iter()
        .enumerate()
        .filter(|(_, n)| n.starts_with('j'))
        .map(|(i, _)| i)
        .collect();
    let init = sp.id("init");
    CounterMachine::from_parts(
        &format!("theta-image{cond}"),
        2,
        true,
        alphabet,
        sp.names,
        init,
        accepting,
        expand_rules(2, specs),
    )
    .map_err(|e| format!("{e}"))
}

/// Deterministic total real-time 2-counter machine for L′: the ω-words over
/// Σ ∪ {E} whose first departure from the θ shape happens at an even
/// position. The counting skeleton runs with a position parity bit; the
/// first off-shape letter drops into `exit-even` or `exit-odd`, both of
/// which freeze the counters, and only `exit-even` is accepting. Words that
/// follow the shape forever never leave the skeleton and are rejected.
pub fn lprime_machine(params: ThetaParams, sigma: &Alphabet) -> Result<CounterMachine, String> {
    let alphabet = theta_alphabet(sigma)?;
    let s = params.s() as usize;

    let mut sp = StateSpace::new();
    sp.add("init".into());
    for r in 0..2usize {
        for parity in ["even", "odd"] {
            sp.add(format!("pb{r}.{parity}"));
            for m in 1..s {
                sp.add(format!("inb{r}.{m}.{parity}"));
            }
        }
    }
    let acc = sp.add("exit-even".into());
    let dead = sp.add("exit-odd".into());
    // A letter read with `parity` letters already consumed sits at a position
    // of the opposite parity, so off-shape at even parity exits odd.
    let sink = |parity: &str| if parity == "even" { dead } else { acc };
    let flip = |parity: &str| if parity == "even" { "odd" } else { "even" };

    let mut specs = Vec::new();
    for l in sigma.letters() {
        specs.push((
            sp.id("init"),
            Some(l.clone()),
            vec![None; 2],
            sp.id("pb1.odd"),
            vec![0, 1],
        ));
    }
    specs.push((sp.id("init"), Some(e_letter()), vec![None; 2], dead, vec![0, 0]));
    for r in 0..2usize {
        for parity in ["even", "odd"] {
            let from = sp.id(&format!("pb{r}.{parity}"));
            specs.push((
                from,
                Some(e_letter()),
                test_on(r, CounterTest::Positive),
                sp.id(&format!("inb{r}.1.{}", flip(parity))),
                drain_update(r),
            ));
            specs.push((
                from,
                Some(e_letter()),
                test_on(r, CounterTest::Zero),
                sink(parity),
                vec![0, 0],
            ));
            for l in sigma.letters() {
                specs.push((
                    from,
                    Some(l.clone()),
                    test_on(r, CounterTest::Zero),
                    sp.id(&format!("pb{}.{}", 1 - r, flip(parity))),
                    vec![0, 0],
                ));
                specs.push((
                    from,
                    Some(l.clone()),
                    test_on(r, CounterTest::Positive),
                    sink(parity),
                    vec![0, 0],
                ));
            }
            for m in 1..s {
                let from = sp.id(&format!("inb{r}.{m}.{parity}"));
                let to = if m + 1 < s {
                    format!("inb{r}.{}.{}", m + 1, flip(parity))
                } else {
                    format!("pb{r}.{}", flip(parity))
                };
                specs.push((
                    from,
                    Some(e_letter()),
                    vec![None; 2],
                    sp.id(&to),
                    build_update(r),
                ));
                for l in sigma.letters() {
                    specs.push((from, Some(l.clone()), vec![None; 2], sink(parity), vec![0, 0]));
                }
            }
        }
    }
    for sink_state in [acc, dead] {
        for l in alphabet.letters() {
            specs.push((sink_state, Some(l.clone()), vec![None; 2], sink_state, vec![0, 0]));
        }
    }

    let init = sp.id("init");
    CounterMachine::from_parts(
        "lprime",
        2,
        true,
        alphabet,
        sp.names,
        init,
        [acc].into_iter().collect(),
        expand_rules(2, specs),
    )
    .map_err(|e| format!("{e}"))
}

/// Winning set of the θ game: θ_S(L) ∪ L′ for clopen L given by `cond`.
pub fn theta_game_machine(
    params: ThetaParams,
    sigma: &Alphabet,
    cond: &ClopenCondition,
) -> Result<CounterMachine, String> {
    let image = theta_image_machine(params, sigma, cond)?;
    let lprime = lprime_machine(params, sigma)?;
    let u = union(&image, &lprime).map_err(|e| format!("{e}"))?;
    Ok(u.rename(&format!("theta-game{cond}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accept::{lasso_accepts_counter, Tv};
    use crate::coding::theta_encode;
    use crate::run::Bounds;
    use crate::word::{FiniteWord, Lasso, Letter};

    fn setup() -> (ThetaParams, Alphabet) {
        (ThetaParams::new(2).unwrap(), Alphabet::from_chars("ab").unwrap())
    }

    fn big_bounds(m: &CounterMachine) -> Bounds {
        Bounds::for_machine(m, 4096)
    }

    #[test]
    fn image_machine_rejects_every_lasso() {
        let (p, s) = setup();
        let cond = ClopenCondition::unconstrained(&s);
        let m = theta_image_machine(p, &s, &cond).unwrap();
        // Image run lengths grow without bound, so no eventually periodic
        // word is an image. An encoded prefix padded with E dies once the
        // drained counter bottoms out.
        let enc = theta_encode(p, &FiniteWord::from_chars("ab"));
        assert_eq!(enc, FiniteWord::from_chars("aEEb"));
        let l = Lasso::new(enc, FiniteWord::from_chars("E")).unwrap();
        assert_eq!(lasso_accepts_counter(&m, &l, &big_bounds(&m)).unwrap(), Tv::Reject);
        let all_e = Lasso::from_chars("", "E");
        assert_eq!(lasso_accepts_counter(&m, &all_e, &big_bounds(&m)).unwrap(), Tv::Reject);
    }

    #[test]
    fn image_machine_enforces_the_condition() {
        let (p, s) = setup();
        let cond = ClopenCondition::new(&s, [(1, Letter::from('b'))]).unwrap();
        let m = theta_image_machine(p, &s, &cond).unwrap();
        let b = big_bounds(&m);
        // First payload must be b: from "a…" every continuation is dead.
        let wrong = Lasso::from_chars("a", "E");
        assert_eq!(lasso_accepts_counter(&m, &wrong, &b).unwrap(), Tv::Reject);
        // Runs of the right shape stay alive but lassos still reject.
        let ok = Lasso::from_chars("bEEa", "E");
        assert_eq!(lasso_accepts_counter(&m, &ok, &b).unwrap(), Tv::Reject);
    }

    #[test]
    fn lprime_decides_exit_parity_on_lassos() {
        let (p, s) = setup();
        let m = lprime_machine(p, &s).unwrap();
        let b = big_bounds(&m);
        // "aEa…": position 3 should be E (run of length 2), so the a at
        // position 3 exits at an odd position.
        let odd = Lasso::from_chars("aEa", "E");
        assert_eq!(lasso_accepts_counter(&m, &odd, &b).unwrap(), Tv::Reject);
        // "aEEE…": position 4 starts run 2 early, exit at even position 4.
        let even = Lasso::from_chars("aEE", "E");
        assert_eq!(lasso_accepts_counter(&m, &even, &b).unwrap(), Tv::Accept);
        // E first: exit at position 1.
        let first = Lasso::from_chars("E", "a");
        assert_eq!(lasso_accepts_counter(&m, &first, &b).unwrap(), Tv::Reject);
        // a^ω: exit at position 2 (an E run was due).
        let payloads = Lasso::from_chars("", "a");
        assert_eq!(lasso_accepts_counter(&m, &payloads, &b).unwrap(), Tv::Accept);
    }

    #[test]
    fn game_machine_unions_the_two_sides() {
        let (p, s) = setup();
        let cond = ClopenCondition::unconstrained(&s);
        let m = theta_game_machine(p, &s, &cond).unwrap();
        let b = big_bounds(&m);
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("aEE", "E"), &b).unwrap(),
            Tv::Accept
        );
        assert_eq!(
            lasso_accepts_counter(&m, &Lasso::from_chars("aEa", "E"), &b).unwrap(),
            Tv::Reject
        );
    }
}
