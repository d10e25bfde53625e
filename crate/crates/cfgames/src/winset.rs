//! Winning-set specifiers: the `--winset` argument of `play` and the target
//! languages of `reduce`. A specifier is either a machine file (`file:<path>`,
//! or a bare path to an existing file) or one of the named builtins:
//!
//! ```text
//! head:<letter>          first letter is <letter>
//! at:<n>=<letter>        the n-th letter is <letter>
//! at:<n>!=<letter>       the n-th letter is not <letter>
//! zero-star-one          (0*1)^ω over the alphabet {0,1}
//! h | closure-h | vc-omega | u-gamma-omega
//! h-complement:K=<k>
//! ell:K=<k>[:cond=<pairs>]
//! theta-game:S=<s>[:cond=<pairs>]
//! payload:<pairs>        clopen payload condition, e.g. payload:1=a,3=b
//! ```
//!
//! Builtins carry their own independent oracles from the core crate. A
//! file-backed set only has its machine, so its handle answers lasso
//! membership by running the machine and never settles prefixes early;
//! games over such sets adjudicate lassos and nothing else.

use std::path::Path;

use cfgames_core::accept::{lasso_accepts_buchi, lasso_accepts_counter};
use cfgames_core::coding::{HParams, ThetaParams};
use cfgames_core::langs::{
    closure_h_handle, ell_handle, first_letter_handle, h_complement_handle, h_handle,
    nth_letter_handle, payload_clopen_handle, theta_game_handle, u_gamma_omega_handle,
    vc_omega_handle, zero_star_one_handle, LanguageHandle, LanguageOracle, PrefixWhy,
};
use cfgames_core::run::Bounds;
use cfgames_core::{Alphabet, CounterMachine, FiniteWord, Lasso, Letter, Tv};

use crate::format::{parse_cond, parse_machine};

struct MachineOracle {
    machine: CounterMachine,
    bounds: Bounds,
}

impl LanguageOracle for MachineOracle {
    fn lasso_membership(&self, l: &Lasso) -> Tv {
        if self.machine.k() == 0 {
            match lasso_accepts_buchi(&self.machine, l) {
                Ok(b) => Tv::from_bool(b),
                Err(_) => Tv::Unknown,
            }
        } else {
            lasso_accepts_counter(&self.machine, l, &self.bounds).unwrap_or(Tv::Unknown)
        }
    }

    fn decide_prefix(&self, _w: &FiniteWord) -> Option<(bool, PrefixWhy)> {
        None
    }
}

/// Wraps a parsed machine as a playable language. Membership of lassos is
/// computed by running the machine; exact for k = 0, bounded search above.
pub fn machine_handle(machine: CounterMachine, counter_cap: u64) -> LanguageHandle {
    let bounds = Bounds::for_machine(&machine, counter_cap);
    let name = machine.name().to_string();
    LanguageHandle::new(
        &name,
        Some(machine.clone()),
        Box::new(MachineOracle { machine, bounds }),
    )
}

fn param_err(spec: &str, usage: &str) -> String {
    format!("cannot parse winset '{spec}'; usage: {usage}")
}

/// Splits `K=2` style parameters off a builtin name.
fn num_param(seg: &str, key: &str) -> Option<u64> {
    seg.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
}

fn builtin_handle(spec: &str, sigma: &Alphabet) -> Result<LanguageHandle, String> {
    let segs: Vec<&str> = spec.split(':').collect();
    match segs[0] {
        "head" => match segs[1..] {
            [l] => first_letter_handle(sigma, &Letter::new(l)),
            _ => Err(param_err(spec, "head:<letter>")),
        },
        "at" => {
            let usage = "at:<n>=<letter> or at:<n>!=<letter>";
            let [arg] = segs[1..] else { return Err(param_err(spec, usage)) };
            let (pos, letter, negate) = if let Some((p, l)) = arg.split_once("!=") {
                (p, l, true)
            } else if let Some((p, l)) = arg.split_once('=') {
                (p, l, false)
            } else {
                return Err(param_err(spec, usage));
            };
            let n: u64 = pos.parse().map_err(|_| param_err(spec, usage))?;
            nth_letter_handle(sigma, n, &Letter::new(letter), negate)
        }
        "zero-star-one" if segs.len() == 1 => zero_star_one_handle(sigma, &Letter::new("1")),
        "h" if segs.len() == 1 => h_handle(sigma),
        "closure-h" if segs.len() == 1 => closure_h_handle(sigma),
        "vc-omega" if segs.len() == 1 => vc_omega_handle(sigma),
        "u-gamma-omega" if segs.len() == 1 => u_gamma_omega_handle(sigma),
        "h-complement" => match segs[1..] {
            [kseg] => {
                let k = num_param(kseg, "K").ok_or(param_err(spec, "h-complement:K=<k>"))?;
                h_complement_handle(HParams::new(k)?, sigma)
            }
            _ => Err(param_err(spec, "h-complement:K=<k>")),
        },
        "ell" | "theta-game" => {
            let (key, usage) = if segs[0] == "ell" {
                ("K", "ell:K=<k>[:cond=<pairs>]")
            } else {
                ("S", "theta-game:S=<s>[:cond=<pairs>]")
            };
            let (nseg, cond_str) = match segs[1..] {
                [n] => (n, ""),
                [n, c] => (n, c.strip_prefix("cond=").ok_or(param_err(spec, usage))?),
                _ => return Err(param_err(spec, usage)),
            };
            let n = num_param(nseg, key).ok_or(param_err(spec, usage))?;
            let cond = parse_cond(sigma, cond_str)?;
            if segs[0] == "ell" {
                ell_handle(HParams::new(n)?, sigma, &cond)
            } else {
                theta_game_handle(ThetaParams::new(n)?, sigma, &cond)
            }
        }
        "payload" => {
            let pairs = spec.strip_prefix("payload:").unwrap_or("");
            Ok(payload_clopen_handle(&parse_cond(sigma, pairs)?))
        }
        other => Err(format!("unknown winset builtin '{other}'")),
    }
}

/// Resolves a winset specifier against the payload alphabet.
pub fn parse_winset(spec: &str, sigma: &Alphabet, counter_cap: u64) -> Result<LanguageHandle, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        return Ok(machine_handle(parse_machine(&text)?, counter_cap));
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
        return Ok(machine_handle(parse_machine(&text)?, counter_cap));
    }
    builtin_handle(spec, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_machine;
    use cfgames_core::langs::lprime_machine;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn lasso(sigma: &Alphabet, s: &str) -> Lasso {
        crate::format::parse_lasso(sigma, s).unwrap()
    }

    #[test]
    fn builtins_resolve_and_answer() {
        let sigma = ab();
        let head = parse_winset("head:a", &sigma, 64).unwrap();
        assert_eq!(head.lasso_membership(&lasso(&sigma, "|a")), Tv::Accept);
        assert_eq!(head.lasso_membership(&lasso(&sigma, "|b")), Tv::Reject);

        let at = parse_winset("at:2!=a", &sigma, 64).unwrap();
        assert_eq!(at.lasso_membership(&lasso(&sigma, "ab|a")), Tv::Accept);

        let zo = parse_winset("zero-star-one", &Alphabet::from_chars("01").unwrap(), 64).unwrap();
        assert_eq!(zo.lasso_membership(&lasso(&Alphabet::from_chars("01").unwrap(), "|01")), Tv::Accept);

        for named in ["h", "closure-h", "vc-omega", "u-gamma-omega", "h-complement:K=2",
                      "ell:K=2:cond=1=a", "theta-game:S=2", "payload:1=a"] {
            let h = parse_winset(named, &sigma, 64).unwrap();
            assert!(h.automaton().is_some(), "{named} lost its machine");
        }
    }

    #[test]
    fn malformed_builtins_report_usage() {
        let sigma = ab();
        for bad in ["head", "at:x=a", "h-complement", "ell:K=2:cond", "nope:1"] {
            let err = match parse_winset(bad, &sigma, 64) {
                Err(e) => e,
                Ok(h) => panic!("'{bad}' resolved to {}", h.name()),
            };
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn file_backed_sets_run_their_machine_on_lassos() {
        let sigma = ab();
        let m = lprime_machine(ThetaParams::new(2).unwrap(), &sigma).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lprime.aut");
        std::fs::write(&path, serialize_machine(&m).unwrap()).unwrap();

        let handle = parse_winset(path.to_str().unwrap(), &sigma, 64).unwrap();
        let coded = handle.automaton().unwrap().alphabet().clone();
        // aEE(E...) leaves the image after an even number of letters
        let inside = lasso(&coded, "aEE|E");
        assert_eq!(handle.lasso_membership(&inside), Tv::Accept);
        assert!(handle.decide_prefix(&FiniteWord::from_chars("aE")).is_none());

        let with_prefix = parse_winset(&format!("file:{}", path.display()), &sigma, 64).unwrap();
        assert_eq!(with_prefix.name(), handle.name());
    }
}
