//! Union and product of Büchi machines against boolean recombination, and
//! the lasso acceptance routine against a from-scratch reachability oracle
//! over small machine families.

use cfgames_core::accept::lasso_accepts_buchi;
use cfgames_core::compose::{intersect_regular, union};
use cfgames_core::{Alphabet, CounterMachine, FiniteWord, Lasso};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{fmt_lasso, random_lasso, rng, SuiteReport};

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

/// Edge list representation kept beside the machine, so the brute-force
/// oracle never reads the machine it is checking.
struct SmallMachine {
    states: usize,
    edges: Vec<(usize, usize, usize)>,
    accepting: Vec<bool>,
}

fn build_machine(sm: &SmallMachine, alphabet: &Alphabet, name: &str) -> CounterMachine {
    let names: Vec<String> = (0..sm.states).map(|i| format!("q{i}")).collect();
    let accepting_names: Vec<String> = (0..sm.states)
        .filter(|&i| sm.accepting[i])
        .map(|i| names[i].clone())
        .collect();
    let accepting: Vec<&str> = accepting_names.iter().map(String::as_str).collect();
    let rules = sm
        .edges
        .iter()
        .map(|&(from, li, to)| {
            (from, Some(alphabet.letters()[li].clone()), Vec::new(), to, Vec::new())
        })
        .collect();
    CounterMachine::new(name, 0, true, alphabet.clone(), names.clone(), "q0", &accepting, rules)
        .unwrap()
}

/// Büchi acceptance of u·v^ω by direct graph search on (wheel position,
/// state): accepted iff some accepting cycle node inside the wheel's loop is
/// reachable from the start and from itself.
fn brute_accepts(sm: &SmallMachine, lasso: &Lasso, alphabet: &Alphabet) -> bool {
    let spoke = lasso.spoke().len();
    let wheel = spoke + lasso.cycle().len();
    let letter_index = |i: usize| -> usize {
        let l = lasso.letter_at(i as u64 + 1);
        alphabet.index_of(l).expect("lasso letters come from the alphabet")
    };
    let node = |i: usize, q: usize| i * sm.states + q;
    let succ = |i: usize, q: usize| -> Vec<usize> {
        let li = letter_index(i);
        let next = if i + 1 < wheel { i + 1 } else { spoke };
        sm.edges
            .iter()
            .filter(|&&(from, el, _)| from == q && el == li)
            .map(|&(_, _, to)| node(next, to))
            .collect()
    };
    let reach = |starts: &[usize]| -> Vec<bool> {
        let mut seen = vec![false; wheel * sm.states];
        let mut stack: Vec<usize> = starts.to_vec();
        for &s in starts {
            seen[s] = true;
        }
        while let Some(n) = stack.pop() {
            let (i, q) = (n / sm.states, n % sm.states);
            for m in succ(i, q) {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        seen
    };
    let from_start = reach(&[node(0, 0)]);
    for i in spoke..wheel {
        for q in 0..sm.states {
            if sm.accepting[q] && from_start[node(i, q)] {
                let back: Vec<usize> = succ(i, q);
                if !back.is_empty() {
                    let closes = reach(&back);
                    if closes[node(i, q)] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn random_small(r: &mut ChaCha8Rng, states: usize, alphabet_len: usize) -> SmallMachine {
    let mut edges = Vec::new();
    for q in 0..states {
        for li in 0..alphabet_len {
            for to in 0..states {
                if r.random_range(0..3) == 0 {
                    edges.push((q, li, to));
                }
            }
        }
    }
    let accepting = (0..states).map(|_| r.random_bool(0.5)).collect();
    SmallMachine { states, edges, accepting }
}

/// All lassos with |u| ≤ 2 and 1 ≤ |v| ≤ 3 over the two-letter alphabet.
fn small_lassos(alphabet: &Alphabet) -> Vec<Lasso> {
    let mut words = vec![FiniteWord::empty()];
    for len in 1..=3 {
        let mut next = Vec::new();
        for w in &words {
            if w.len() == len - 1 {
                for l in alphabet.letters() {
                    let mut e = w.clone();
                    e.push(l.clone());
                    next.push(e);
                }
            }
        }
        words.extend(next);
    }
    let mut out = Vec::new();
    for u in words.iter().filter(|w| w.len() <= 2) {
        for v in words.iter().filter(|w| (1..=3).contains(&w.len())) {
            out.push(Lasso::new(u.clone(), v.clone()).unwrap());
        }
    }
    out
}

const RANDOM_PAIRS: usize = 50;
const LASSOS_PER_PAIR: usize = 100;
const RANDOM_ND3: usize = 2000;

pub fn run(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("closure-ops", seed);
    let alphabet = ab();

    // random pairs: union and product against boolean recombination
    let mut r = rng(seed, "ops-pairs");
    for pair in 0..RANDOM_PAIRS {
        let n1 = r.random_range(1..=4);
        let sm1 = random_small(&mut r, n1, alphabet.len());
        let n2 = r.random_range(1..=4);
        let sm2 = random_small(&mut r, n2, alphabet.len());
        let m1 = build_machine(&sm1, &alphabet, "m1");
        let m2 = build_machine(&sm2, &alphabet, "m2");
        let u = union(&m1, &m2).unwrap();
        let p = intersect_regular(&m1, &m2).unwrap();
        for case in 0..LASSOS_PER_PAIR {
            let lasso = random_lasso(&mut r, &alphabet, 4, 5);
            let a1 = lasso_accepts_buchi(&m1, &lasso).unwrap();
            let a2 = lasso_accepts_buchi(&m2, &lasso).unwrap();
            let au = lasso_accepts_buchi(&u, &lasso).unwrap();
            let ap = lasso_accepts_buchi(&p, &lasso).unwrap();
            report.check(au == (a1 || a2), || {
                format!("pair {pair} case {case}: union broke on {}", fmt_lasso(&lasso))
            });
            report.check(ap == (a1 && a2), || {
                format!("pair {pair} case {case}: product broke on {}", fmt_lasso(&lasso))
            });
        }
    }

    // exhaustive families against the brute-force oracle
    let lassos = small_lassos(&alphabet);
    let mut family_cases = 0u64;

    // every nondeterministic machine on up to 2 states (initial fixed at 0:
    // machines differing only by a state relabeling behave identically)
    for edge_bits in 0u32..(1 << 8) {
        for acc_bits in 0u32..(1 << 2) {
            let mut edges = Vec::new();
            let mut idx = 0;
            for from in 0..2usize {
                for li in 0..2usize {
                    for to in 0..2usize {
                        if edge_bits & (1 << idx) != 0 {
                            edges.push((from, li, to));
                        }
                        idx += 1;
                    }
                }
            }
            let sm = SmallMachine {
                states: 2,
                edges,
                accepting: vec![acc_bits & 1 != 0, acc_bits & 2 != 0],
            };
            let m = build_machine(&sm, &alphabet, "nd2");
            for lasso in &lassos {
                family_cases += 1;
                let got = lasso_accepts_buchi(&m, lasso).unwrap();
                let want = brute_accepts(&sm, lasso, &alphabet);
                report.check(got == want, || {
                    format!(
                        "nd2 edges={edge_bits:#x} acc={acc_bits}: {} got {got}, brute {want}",
                        fmt_lasso(lasso)
                    )
                });
            }
        }
    }

    // every partial-deterministic machine on 3 states: each (state, letter)
    // slot is unset or one target
    for code in 0u64..4u64.pow(6) {
        let mut digits = [0usize; 6];
        let mut c = code;
        for d in digits.iter_mut() {
            *d = (c % 4) as usize;
            c /= 4;
        }
        let mut edges = Vec::new();
        for (slot, &d) in digits.iter().enumerate() {
            if d > 0 {
                edges.push((slot / 2, slot % 2, d - 1));
            }
        }
        for acc_bits in 0u32..(1 << 3) {
            let sm = SmallMachine {
                states: 3,
                edges: edges.clone(),
                accepting: (0..3).map(|i| acc_bits & (1 << i) != 0).collect(),
            };
            let m = build_machine(&sm, &alphabet, "pd3");
            for lasso in &lassos {
                family_cases += 1;
                let got = lasso_accepts_buchi(&m, lasso).unwrap();
                let want = brute_accepts(&sm, lasso, &alphabet);
                report.check(got == want, || {
                    format!(
                        "pd3 code={code} acc={acc_bits}: {} got {got}, brute {want}",
                        fmt_lasso(lasso)
                    )
                });
            }
        }
    }

    // seeded nondeterministic 3-state machines fill in what the exhaustive
    // families cannot afford
    let mut r = rng(seed, "ops-nd3");
    for n in 0..RANDOM_ND3 {
        let sm = random_small(&mut r, 3, alphabet.len());
        let m = build_machine(&sm, &alphabet, "nd3");
        for lasso in &lassos {
            family_cases += 1;
            let got = lasso_accepts_buchi(&m, lasso).unwrap();
            let want = brute_accepts(&sm, lasso, &alphabet);
            report.check(got == want, || {
                format!("nd3 sample {n}: {} got {got}, brute {want}", fmt_lasso(lasso))
            });
        }
    }
    report.note(format!("{family_cases} machine/lasso pairs against the brute-force oracle"));
    report
}
