//! Strategy specifiers: the `--p1`/`--p2`/`--big` arguments of the CLI.
//!
//! Three forms. `builtin:<name>[:args]` picks one of the stock transducers.
//! `mealy:<file>` loads a finite-state transducer from a table file.
//! `proc:<command>` spawns a subprocess speaking the line protocol in
//! [`crate::scripted`]. A specifier is parsed once and can be instantiated
//! many times; each instantiation is an independent strategy, which is what
//! keeps subprocess strategies and reduction factories honest.

use std::fs;
use std::path::PathBuf;

use cfgames_core::games::{
    const_strategy, copy_strategy, first_letter_switch, forced_then, skip_once_then_copy,
    skip_strategy, Coding, Mealy, Move, Obs, Strategy,
};
use cfgames_core::{Alphabet, Letter};

use crate::scripted::ScriptedStrategy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategySpec {
    Builtin(String),
    MealyFile(PathBuf),
    Proc(String),
}

pub fn parse_strategy_spec(s: &str) -> Result<StrategySpec, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or("strategy specifier must be builtin:<name>, mealy:<file>, or proc:<command>")?;
    match kind {
        "builtin" if !rest.is_empty() => Ok(StrategySpec::Builtin(rest.to_string())),
        "mealy" if !rest.is_empty() => Ok(StrategySpec::MealyFile(PathBuf::from(rest))),
        "proc" if !rest.is_empty() => Ok(StrategySpec::Proc(rest.to_string())),
        "builtin" | "mealy" | "proc" => Err(format!("'{kind}:' needs an argument")),
        other => Err(format!("unknown strategy kind '{other}'")),
    }
}

/// What a specifier needs to become a strategy: the alphabet it writes,
/// whether its role may skip (Wadge Player 2), and the ambient coding for
/// `forced-then`.
#[derive(Clone)]
pub struct StrategyContext {
    pub alphabet: Alphabet,
    pub allow_skip: bool,
    pub coding: Option<(Coding, Alphabet)>,
}

impl StrategyContext {
    pub fn plain(alphabet: &Alphabet) -> Self {
        StrategyContext { alphabet: alphabet.clone(), allow_skip: false, coding: None }
    }
}

fn letter_arg(ctx: &StrategyContext, tok: &str) -> Result<Letter, String> {
    let l = Letter::new(tok);
    if ctx.alphabet.contains(&l) {
        Ok(l)
    } else {
        Err(format!("letter '{tok}' is not in the game alphabet"))
    }
}

fn instantiate_builtin(name: &str, ctx: &StrategyContext) -> Result<Strategy, String> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts[0] {
        "const" => match parts[1..] {
            [l] => const_strategy(&ctx.alphabet, &letter_arg(ctx, l)?),
            _ => Err("const takes one letter: builtin:const:<letter>".into()),
        },
        "copy" => match parts[1..] {
            [] => copy_strategy(&ctx.alphabet, None),
            [opener] => copy_strategy(&ctx.alphabet, Some(&letter_arg(ctx, opener)?)),
            _ => Err("copy takes at most an opener: builtin:copy[:<letter>]".into()),
        },
        "skip" if parts.len() == 1 => {
            if ctx.allow_skip {
                Ok(skip_strategy(&ctx.alphabet))
            } else {
                Err("skip is only available to the Wadge Player 2 role".into())
            }
        }
        "skip-once-then-copy" if parts.len() == 1 => {
            if ctx.allow_skip {
                Ok(skip_once_then_copy(&ctx.alphabet))
            } else {
                Err("skip-once-then-copy is only available to the Wadge Player 2 role".into())
            }
        }
        "first-letter-switch" => match parts[1..] {
            [t, y, n] => first_letter_switch(
                &ctx.alphabet,
                &letter_arg(ctx, t)?,
                &letter_arg(ctx, y)?,
                &letter_arg(ctx, n)?,
            ),
            _ => Err("usage: builtin:first-letter-switch:<trigger>:<yes>:<no>".into()),
        },
        "forced-then" => match (&ctx.coding, &parts[1..]) {
            (Some((coding, sigma)), [l]) => {
                let l = Letter::new(l);
                if !sigma.contains(&l) {
                    return Err(format!("fallback '{l}' is not a payload letter"));
                }
                forced_then(coding, sigma, &l)
            }
            (None, _) => Err("forced-then needs a coding; pass --coding".into()),
            _ => Err("usage: builtin:forced-then:<payload letter>".into()),
        },
        other => Err(format!("unknown builtin strategy '{other}'")),
    }
}

/// Build a fresh strategy from the specifier. `proc:` spawns a new child
/// process on every call.
pub fn instantiate(spec: &StrategySpec, ctx: &StrategyContext) -> Result<Strategy, String> {
    match spec {
        StrategySpec::Builtin(name) => instantiate_builtin(name, ctx),
        StrategySpec::MealyFile(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let (name, m) = parse_mealy(&text)?;
            Ok(Strategy::finite(&name, m))
        }
        StrategySpec::Proc(command) => {
            let child = ScriptedStrategy::spawn(command, &ctx.alphabet, ctx.allow_skip)?;
            Ok(Strategy::procedural(&format!("proc:{command}"), Box::new(child)))
        }
    }
}

fn parse_obs(tok: &str) -> Obs {
    match tok {
        "start" => Obs::Start,
        "s" => Obs::Skip,
        l => Obs::Letter(Letter::new(l)),
    }
}

fn parse_move(tok: &str) -> Move {
    match tok {
        "s" => Move::Skip,
        l => Move::Letter(Letter::new(l)),
    }
}

/// Transducer table file:
///
/// ```text
/// mealy <name>
/// states <count>
/// initial <index>
/// step <state> <obs> <next-state> <move>
/// ```
///
/// States are numeric. The observation column uses `start` for the opening
/// turn, `s` for an observed skip, and a letter otherwise; the move column is
/// a letter or `s`. Those two tokens are reserved, so no letter may be named
/// `start` or `s` here.
pub fn parse_mealy(text: &str) -> Result<(String, Mealy), String> {
    let mut name: Option<String> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut entries = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "mealy" if toks.len() == 2 => {
                if name.replace(toks[1].to_string()).is_some() {
                    return Err(format!("line {line_no}: duplicate 'mealy' line"));
                }
            }
            "states" if toks.len() == 2 => {
                let n = toks[1]
                    .parse()
                    .map_err(|_| format!("line {line_no}: state count '{}'", toks[1]))?;
                if states.replace(n).is_some() {
                    return Err(format!("line {line_no}: duplicate 'states' line"));
                }
            }
            "initial" if toks.len() == 2 => {
                let n = toks[1]
                    .parse()
                    .map_err(|_| format!("line {line_no}: initial state '{}'", toks[1]))?;
                if initial.replace(n).is_some() {
                    return Err(format!("line {line_no}: duplicate 'initial' line"));
                }
            }
            "step" if toks.len() == 5 => {
                let from: usize = toks[1]
                    .parse()
                    .map_err(|_| format!("line {line_no}: state '{}'", toks[1]))?;
                let to: usize = toks[3]
                    .parse()
                    .map_err(|_| format!("line {line_no}: state '{}'", toks[3]))?;
                entries.push(((from, parse_obs(toks[2])), (to, parse_move(toks[4]))));
            }
            other => {
                return Err(format!(
                    "line {line_no}: expected mealy/states/initial/step, got '{other}'"
                ))
            }
        }
    }

    let name = name.ok_or("missing 'mealy' line")?;
    let states = states.ok_or("missing 'states' line")?;
    let initial = initial.ok_or("missing 'initial' line")?;
    let m = Mealy::new(states, initial, entries)?;
    Ok((name, m))
}

/// Canonical table text for a transducer, inverse to [`parse_mealy`].
pub fn serialize_mealy(name: &str, m: &Mealy) -> String {
    let mut out = String::new();
    out.push_str(&format!("mealy {name}\n"));
    out.push_str(&format!("states {}\n", m.state_count()));
    out.push_str(&format!("initial {}\n", m.initial()));
    for ((from, obs), (to, mv)) in m.entries() {
        out.push_str(&format!("step {from} {obs} {to} {mv}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cfgames_core::coding::ThetaParams;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn builtin_specifiers_cover_the_stock_strategies() {
        let ctx = StrategyContext::plain(&ab());
        for (spec, name) in [
            ("builtin:const:a", "const:a"),
            ("builtin:copy", "copy"),
            ("builtin:copy:b", "copy:b"),
            ("builtin:first-letter-switch:a:b:a", "first-letter-switch:a:b:a"),
        ] {
            let s = instantiate(&parse_strategy_spec(spec).unwrap(), &ctx).unwrap();
            assert_eq!(s.name(), name, "{spec}");
        }
        assert!(instantiate(&parse_strategy_spec("builtin:skip").unwrap(), &ctx).is_err());
        let mut wadge = ctx.clone();
        wadge.allow_skip = true;
        assert!(instantiate(&parse_strategy_spec("builtin:skip").unwrap(), &wadge).is_ok());
    }

    fn expect_err(r: Result<Strategy, String>) -> String {
        match r {
            Ok(s) => panic!("expected an error, built '{}'", s.name()),
            Err(e) => e,
        }
    }

    #[test]
    fn forced_then_needs_its_coding() {
        let sigma = ab();
        let coding = Coding::Theta(ThetaParams::new(2).unwrap());
        let game_alphabet = coding.alphabet(&sigma).unwrap();
        let mut ctx = StrategyContext::plain(&game_alphabet);
        let spec = parse_strategy_spec("builtin:forced-then:a").unwrap();
        assert!(expect_err(instantiate(&spec, &ctx)).contains("--coding"));
        ctx.coding = Some((coding, sigma));
        assert_eq!(instantiate(&spec, &ctx).unwrap().name(), "forced-then:a");
    }

    #[test]
    fn bad_specifiers_name_their_problem() {
        assert!(parse_strategy_spec("const:a").unwrap_err().contains("unknown strategy kind"));
        assert!(parse_strategy_spec("builtin:").is_err());
        let ctx = StrategyContext::plain(&ab());
        let err = expect_err(instantiate(&parse_strategy_spec("builtin:const:z").unwrap(), &ctx));
        assert!(err.contains("'z'"), "{err}");
    }

    #[test]
    fn mealy_tables_round_trip() {
        let text = "# a one-state echo\nmealy echo\nstates 1\ninitial 0\nstep 0 start 0 a\nstep 0 a 0 a\nstep 0 b 0 b\nstep 0 s 0 a\n";
        let (name, m) = parse_mealy(text).unwrap();
        assert_eq!(name, "echo");
        assert_eq!(m.state_count(), 1);
        let again = parse_mealy(&serialize_mealy(&name, &m)).unwrap();
        assert_eq!(again.1.entries().count(), m.entries().count());
        for (k, v) in m.entries() {
            assert_eq!(again.1.step(k.0, &k.1), Some(v));
        }
    }

    #[test]
    fn mealy_parse_rejects_malformed_tables() {
        assert!(parse_mealy("states 1\ninitial 0\n").unwrap_err().contains("mealy"));
        let dup = "mealy m\nstates 1\ninitial 0\nstep 0 a 0 a\nstep 0 a 0 b\n";
        assert!(parse_mealy(dup).unwrap_err().contains("duplicate"));
        let oob = "mealy m\nstates 1\ninitial 2\n";
        assert!(parse_mealy(oob).is_err());
    }
}
