//! Plain-text formats for machines, words, lassos, and clopen conditions.
//!
//! A machine file is line-oriented. Blank lines and lines starting with `#`
//! are ignored, so generated files can carry a comment header describing how
//! they were built without affecting what they parse back to. The body is:
//!
//! ```text
//! automaton <name>
//! k <count>
//! realtime <true|false>
//! alphabet <letter> <letter> ...
//! states <state> <state> ...
//! initial <state>
//! accepting <state> ... | -
//! trans <from> <label|@> <tests|-> <to> <updates|->
//! ```
//!
//! `@` is the λ-label. Tests are comma-joined `z`/`p` flags and updates are
//! comma-joined `-1`/`0`/`1` values, one per counter; both collapse to `-`
//! when k = 0. Tokens are whitespace-delimited, so letters and state names
//! must be whitespace-free and may not collide with the reserved `@`, `-`,
//! or `#` tokens. The serializer enforces that, which keeps every file it
//! emits parseable back to a machine comparing equal to the original.

use cfgames_core::{Alphabet, CounterMachine, CounterTest, FiniteWord, Lasso, Letter};
use cfgames_core::langs::ClopenCondition;

const RESERVED: [&str; 3] = ["@", "-", "#"];

fn check_token(kind: &str, tok: &str) -> Result<(), String> {
    if tok.is_empty() {
        return Err(format!("{kind} may not be empty"));
    }
    if tok.chars().any(char::is_whitespace) {
        return Err(format!("{kind} '{tok}' contains whitespace"));
    }
    if RESERVED.contains(&tok) {
        return Err(format!("{kind} '{tok}' is a reserved token"));
    }
    Ok(())
}

fn tests_field(tests: &[CounterTest]) -> String {
    if tests.is_empty() {
        "-".into()
    } else {
        tests
            .iter()
            .map(|t| if *t == CounterTest::Zero { "z" } else { "p" })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn updates_field(updates: &[i8]) -> String {
    if updates.is_empty() {
        "-".into()
    } else {
        updates.iter().map(i8::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Canonical text for a machine, preceded by `# `-prefixed note lines.
/// Notes are free-form provenance (builder, parameters, seed); parsing
/// ignores them, so the round trip compares equal with or without notes.
pub fn serialize_machine_with_notes(
    m: &CounterMachine,
    notes: &[String],
) -> Result<String, String> {
    for l in m.alphabet().letters() {
        check_token("letter", l.as_str())?;
    }
    for s in m.state_names() {
        check_token("state name", s)?;
    }
    if m.name().is_empty() || m.name().contains('\n') {
        return Err("machine name must be a non-empty single line".into());
    }

    let mut out = String::new();
    for n in notes {
        for line in n.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("automaton {}\n", m.name()));
    out.push_str(&format!("k {}\n", m.k()));
    out.push_str(&format!("realtime {}\n", m.real_time()));
    let letters: Vec<&str> = m.alphabet().letters().iter().map(Letter::as_str).collect();
    out.push_str(&format!("alphabet {}\n", letters.join(" ")));
    out.push_str(&format!("states {}\n", m.state_names().join(" ")));
    out.push_str(&format!("initial {}\n", m.state_name(m.initial())));
    let accepting: Vec<&str> = (0..m.state_count())
        .filter(|&i| m.is_accepting(i))
        .map(|i| m.state_name(i))
        .collect();
    if accepting.is_empty() {
        out.push_str("accepting -\n");
    } else {
        out.push_str(&format!("accepting {}\n", accepting.join(" ")));
    }
    for r in m.rules() {
        let label = match &r.label {
            Some(l) => l.as_str().to_string(),
            None => "@".into(),
        };
        out.push_str(&format!(
            "trans {} {} {} {} {}\n",
            m.state_name(r.from),
            label,
            tests_field(&r.tests),
            m.state_name(r.to),
            updates_field(&r.updates),
        ));
    }
    Ok(out)
}

pub fn serialize_machine(m: &CounterMachine) -> Result<String, String> {
    serialize_machine_with_notes(m, &[])
}

fn parse_tests(k: usize, field: &str, line_no: usize) -> Result<Vec<CounterTest>, String> {
    if field == "-" {
        return if k == 0 {
            Ok(Vec::new())
        } else {
            Err(format!("line {line_no}: '-' tests on a machine with k = {k}"))
        };
    }
    field
        .split(',')
        .map(|t| match t {
            "z" => Ok(CounterTest::Zero),
            "p" => Ok(CounterTest::Positive),
            other => Err(format!("line {line_no}: test flag '{other}' is not z or p")),
        })
        .collect()
}

fn parse_updates(k: usize, field: &str, line_no: usize) -> Result<Vec<i8>, String> {
    if field == "-" {
        return if k == 0 {
            Ok(Vec::new())
        } else {
            Err(format!("line {line_no}: '-' updates on a machine with k = {k}"))
        };
    }
    field
        .split(',')
        .map(|u| {
            u.parse::<i8>()
                .map_err(|_| format!("line {line_no}: update '{u}' is not an integer"))
        })
        .collect()
}

pub fn parse_machine(text: &str) -> Result<CounterMachine, String> {
    let mut name: Option<String> = None;
    let mut k: Option<usize> = None;
    let mut realtime: Option<bool> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial: Option<String> = None;
    let mut accepting: Option<Vec<String>> = None;
    let mut trans: Vec<(usize, Vec<String>)> = Vec::new();

    let set = |slot: &mut Option<String>, key: &str, val: &str, line_no: usize| {
        if slot.is_some() {
            Err(format!("line {line_no}: duplicate '{key}' line"))
        } else {
            *slot = Some(val.to_string());
            Ok(())
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let toks: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key {
            "automaton" => set(&mut name, key, rest, line_no)?,
            "k" => {
                if k.is_some() {
                    return Err(format!("line {line_no}: duplicate 'k' line"));
                }
                k = Some(
                    rest.parse()
                        .map_err(|_| format!("line {line_no}: k '{rest}' is not a count"))?,
                );
            }
            "realtime" => {
                if realtime.is_some() {
                    return Err(format!("line {line_no}: duplicate 'realtime' line"));
                }
                realtime = Some(match rest {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(format!("line {line_no}: realtime '{other}' is not a bool"))
                    }
                });
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(format!("line {line_no}: duplicate 'alphabet' line"));
                }
                alphabet = Some(
                    Alphabet::new(toks.iter().map(String::as_str))
                        .map_err(|e| format!("line {line_no}: {e}"))?,
                );
            }
            "states" => {
                if states.is_some() {
                    return Err(format!("line {line_no}: duplicate 'states' line"));
                }
                states = Some(toks);
            }
            "initial" => set(&mut initial, key, rest, line_no)?,
            "accepting" => {
                if accepting.is_some() {
                    return Err(format!("line {line_no}: duplicate 'accepting' line"));
                }
                accepting = Some(if rest == "-" { Vec::new() } else { toks });
            }
            "trans" => trans.push((line_no, toks)),
            other => return Err(format!("line {line_no}: unknown key '{other}'")),
        }
    }

    let name = name.ok_or("missing 'automaton' line")?;
    let k = k.ok_or("missing 'k' line")?;
    let realtime = realtime.ok_or("missing 'realtime' line")?;
    let alphabet = alphabet.ok_or("missing 'alphabet' line")?;
    let states = states.ok_or("missing 'states' line")?;
    let initial = initial.ok_or("missing 'initial' line")?;
    let accepting = accepting.ok_or("missing 'accepting' line")?;

    let state_id = |name: &str, line_no: usize| -> Result<usize, String> {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| format!("line {line_no}: unknown state '{name}'"))
    };

    let mut rules = Vec::with_capacity(trans.len());
    for (line_no, toks) in trans {
        if toks.len() != 5 {
            return Err(format!(
                "line {line_no}: trans needs 5 fields (from label tests to updates), got {}",
                toks.len()
            ));
        }
        let from = state_id(&toks[0], line_no)?;
        let label = if toks[1] == "@" { None } else { Some(Letter::new(&toks[1])) };
        let tests = parse_tests(k, &toks[2], line_no)?;
        let to = state_id(&toks[3], line_no)?;
        let updates = parse_updates(k, &toks[4], line_no)?;
        rules.push((from, label, tests, to, updates));
    }

    let accepting_refs: Vec<&str> = accepting.iter().map(String::as_str).collect();
    CounterMachine::new(&name, k, realtime, alphabet, states.clone(), &initial, &accepting_refs, rules)
        .map_err(|e| e.to_string())
}

/// One letter per character, each checked against the alphabet.
pub fn parse_word(sigma: &Alphabet, s: &str) -> Result<FiniteWord, String> {
    let mut w = FiniteWord::empty();
    for c in s.chars() {
        let l = Letter::new(&c.to_string());
        if !sigma.contains(&l) {
            return Err(format!("letter '{c}' is not in the alphabet"));
        }
        w.push(l);
    }
    Ok(w)
}

/// `u|v` with a non-empty cycle v; the spoke u may be empty.
pub fn parse_lasso(sigma: &Alphabet, s: &str) -> Result<Lasso, String> {
    let (u, v) = s
        .split_once('|')
        .ok_or("lasso must be written spoke|cycle, e.g. ab|ba or |a")?;
    Lasso::new(parse_word(sigma, u)?, parse_word(sigma, v)?)
}

/// `pos=letter` pairs joined by commas, e.g. `1=a,3=b`; empty means
/// unconstrained.
pub fn parse_cond(sigma: &Alphabet, s: &str) -> Result<ClopenCondition, String> {
    let mut pairs = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (pos, letter) = item
            .split_once('=')
            .ok_or_else(|| format!("constraint '{item}' must look like 2=a"))?;
        let idx: u64 = pos
            .trim()
            .parse()
            .map_err(|_| format!("position '{pos}' is not a number"))?;
        let letter = letter.trim();
        check_token("letter", letter)?;
        pairs.push((idx, Letter::new(letter)));
    }
    ClopenCondition::new(sigma, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cfgames_core::coding::HParams;
    use cfgames_core::langs::{ell_machine, h_automaton, lprime_machine};
    use cfgames_core::coding::ThetaParams;

    fn sigma_ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn a_finite_machine_survives_the_round_trip() {
        let m = h_automaton(&sigma_ab()).unwrap();
        let text = serialize_machine(&m).unwrap();
        let back = parse_machine(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn counter_machines_round_trip_with_tests_and_lambda_rules() {
        let sigma = sigma_ab();
        let lprime = lprime_machine(ThetaParams::new(2).unwrap(), &sigma).unwrap();
        let cond = parse_cond(&sigma, "1=a").unwrap();
        let ell = ell_machine(HParams::new(2).unwrap(), &sigma, &cond).unwrap();
        for m in [lprime, ell] {
            let text = serialize_machine(&m).unwrap();
            assert_eq!(parse_machine(&text).unwrap(), m, "{}", m.name());
        }
    }

    #[test]
    fn notes_ride_along_without_changing_the_machine() {
        let m = h_automaton(&sigma_ab()).unwrap();
        let notes = vec!["built by: test".to_string(), "seed: 7\nextra: line".to_string()];
        let text = serialize_machine_with_notes(&m, &notes).unwrap();
        assert!(text.starts_with("# built by: test\n# seed: 7\n# extra: line\n"));
        assert_eq!(parse_machine(&text).unwrap(), m);
    }

    #[test]
    fn reserved_and_spaced_tokens_are_rejected() {
        let weird = Alphabet::new(["@"]).unwrap();
        let m = CounterMachine::new(
            "weird",
            0,
            true,
            weird,
            vec!["q".into()],
            "q",
            &["q"],
            vec![],
        )
        .unwrap();
        assert!(serialize_machine(&m).unwrap_err().contains("reserved"));
    }

    #[test]
    fn parse_reports_the_offending_line() {
        let text = "automaton t\nk 0\nrealtime true\nalphabet a\nstates q\ninitial q\naccepting q\ntrans q b - q -\n";
        let err = parse_machine(text).unwrap_err();
        assert!(err.contains("letter 'b'"), "{err}");

        let dup = "automaton t\nautomaton t\n";
        assert!(parse_machine(dup).unwrap_err().contains("line 2"));
    }

    #[test]
    fn words_lassos_and_conditions_parse_from_their_cli_shapes() {
        let sigma = sigma_ab();
        assert_eq!(parse_word(&sigma, "ab").unwrap().len(), 2);
        assert!(parse_word(&sigma, "ax").is_err());

        let l = parse_lasso(&sigma, "ab|ba").unwrap();
        assert_eq!(l.letter_at(1).as_str(), "a");
        assert!(parse_lasso(&sigma, "|a").is_ok());
        assert!(parse_lasso(&sigma, "ab").is_err());
        assert!(parse_lasso(&sigma, "ab|").is_err());

        let cond = parse_cond(&sigma, "1=a,3=b").unwrap();
        assert_eq!(cond.to_string(), "{1:a,3:b}");
        assert_eq!(parse_cond(&sigma, "").unwrap(), ClopenCondition::unconstrained(&sigma));
        assert!(parse_cond(&sigma, "0=a").is_err());
    }
}
