//! Command dispatch for the `cfgames` binary.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad file, losing protocol,
//! undecidable input), 2 on usage errors. Transcripts go to standard output
//! as JSON-lines records with the fields `pos`, `writer`, `letter`; summary
//! records (`lasso`, `verdict`) follow the moves. Interactive prompts go to
//! standard error, so piped output stays machine-readable.

use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use cfgames_core::accept::{lasso_accepts_buchi, lasso_accepts_counter};
use cfgames_core::coding::{HParams, PrefixVerdict, ThetaParams};
use cfgames_core::games::{
    const_strategy, gs_adjudicate, gs_play, lift_p1, lift_p2, run_lift_with_identity_check,
    strategy_to_reduction, wadge_adjudicate, wadge_play, Coding, GameError, Move, Obs, Player,
    StepStrategy, Strategy, Verdict, WadgeTail,
};
use cfgames_core::langs::{
    a2_machine, a3_machine, ell_machine, h_automaton, h_complement_machine, lprime_machine,
    payload_clopen_handle, theta_game_machine, zero_star_one, ClopenCondition, LanguageHandle,
};
use cfgames_core::run::Bounds;
use cfgames_core::{Alphabet, CounterMachine, FiniteWord, Letter, Tv};

use crate::dot::machine_to_dot;
use crate::format::{parse_cond, parse_lasso, parse_machine, parse_word, serialize_machine_with_notes};
use crate::strat::{instantiate, parse_strategy_spec, StrategyContext};
use crate::suites;
use crate::winset::parse_winset;

#[derive(Parser)]
#[command(
    name = "cfgames",
    version,
    about = "Counter Büchi machines, padding codings, and infinite games"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a named automaton and write it to a file
    Build(BuildArgs),
    /// Run a machine file on a lasso or a finite prefix
    Simulate(SimulateArgs),
    /// Encode a payload word through a coding
    Encode(CodingArgs),
    /// Recover the payload of a coded word
    Decode(CodingArgs),
    /// Classify a word against a coding's prefix language
    Classify(CodingArgs),
    /// Play a Gale-Stewart or Wadge game
    Play(PlayArgs),
    /// Lift a big-game strategy to the small game and drive it
    Lift(LiftArgs),
    /// Apply the continuous reduction a Wadge strategy induces
    Reduce(ReduceArgs),
    /// Run verification suites
    Check(CheckArgs),
    /// Render a machine file as DOT
    ExportDot(ExportDotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodingKind {
    Theta,
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameKind {
    Gs,
    Wadge,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    P1,
    P2,
}

impl Side {
    fn player(self) -> Player {
        match self {
            Side::P1 => Player::One,
            Side::P2 => Player::Two,
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    /// One of: H, lprime, h-complement, toy-a2, a3, a4, theta-game,
    /// zero-star-one
    target: String,
    /// Payload letters for the h-side constructions (markers are added)
    #[arg(long, default_value = "ab")]
    gamma: String,
    /// Payload letters for the θ-side constructions (the pad is added)
    #[arg(long, default_value = "ab")]
    sigma: String,
    #[arg(long = "K", default_value_t = 2)]
    k: u64,
    #[arg(long = "S", default_value_t = 2)]
    s: u64,
    /// Clopen payload condition, e.g. "1=a,3=b"; empty means unconstrained
    #[arg(long, default_value = "")]
    cond: String,
    /// Alphabet of the zero-star-one automaton
    #[arg(long, default_value = "01")]
    alphabet: String,
    /// Distinguished letter of the zero-star-one automaton
    #[arg(long, default_value = "1")]
    one: String,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["lasso", "prefix"])))]
struct SimulateArgs {
    #[arg(long)]
    machine: PathBuf,
    /// Eventually periodic word "u|v"
    #[arg(long)]
    lasso: Option<String>,
    /// Finite word to feed letter by letter
    #[arg(long)]
    prefix: Option<String>,
    /// Counter ceiling for bounded exploration
    #[arg(long, default_value_t = 4096)]
    counter_cap: u64,
    /// λ-steps allowed between letters; default derives from the machine
    #[arg(long)]
    lambda_budget: Option<u64>,
    /// Wheel steps explored before a lasso verdict degrades to UNKNOWN
    #[arg(long)]
    horizon: Option<u64>,
}

#[derive(Args)]
struct CodingArgs {
    #[arg(long)]
    coding: CodingKind,
    #[arg(long = "S", default_value_t = 2)]
    s: u64,
    #[arg(long = "K", default_value_t = 2)]
    k: u64,
    /// Payload letters
    #[arg(long, default_value = "ab")]
    sigma: String,
    /// Input word; payload letters for encode, coded letters otherwise
    word: String,
}

#[derive(Args)]
struct PlayArgs {
    kind: GameKind,
    /// Player 1: builtin:<name>, mealy:<file>, or proc:<command>
    #[arg(long)]
    p1: String,
    /// Player 2, same specifier grammar
    #[arg(long)]
    p2: String,
    /// Rounds to play (each round is one letter per player)
    #[arg(long)]
    horizon: u64,
    /// Winning set: automaton file or builtin spec
    #[arg(long)]
    winset: Option<String>,
    /// Wadge only: Player 2's set, when it differs from --winset
    #[arg(long)]
    winset2: Option<String>,
    /// Replace one side by moves read from standard input
    #[arg(long)]
    interactive: Option<Side>,
    /// Play alphabet, or the payload alphabet when a coding is attached
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Attach a coding: the play runs over its coded alphabet
    #[arg(long)]
    coding: Option<CodingKind>,
    #[arg(long = "S", default_value_t = 2)]
    s: u64,
    #[arg(long = "K", default_value_t = 2)]
    k: u64,
    /// Counter ceiling for file-backed winning sets
    #[arg(long, default_value_t = 4096)]
    counter_cap: u64,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    coding: CodingKind,
    #[arg(long = "S", default_value_t = 2)]
    s: u64,
    #[arg(long = "K", default_value_t = 2)]
    k: u64,
    /// Side the lifted strategy plays in the small game
    #[arg(long)]
    role: Side,
    /// Big-game strategy over the coded alphabet
    #[arg(long)]
    big: String,
    /// Small-game opponent; default answers with the first payload letter
    #[arg(long)]
    opponent: Option<String>,
    /// Winning set for adjudicating the small play
    #[arg(long)]
    winset: Option<String>,
    /// Big-transcript letters to simulate
    #[arg(long, default_value_t = 10_000)]
    horizon: u64,
    /// Payload letters
    #[arg(long, default_value = "ab")]
    alphabet: String,
    #[arg(long, default_value_t = 4096)]
    counter_cap: u64,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["word", "lasso"])))]
struct ReduceArgs {
    /// Wadge Player 2 strategy to read as a prefix transformer
    #[arg(long)]
    strategy: String,
    /// Finite input word
    #[arg(long)]
    word: Option<String>,
    /// Eventually periodic input "u|v"
    #[arg(long)]
    lasso: Option<String>,
    #[arg(long, default_value = "ab")]
    alphabet: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name or "all"
    suite: String,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct ExportDotArgs {
    #[arg(long)]
    machine: PathBuf,
    /// Default is standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Domain(msg)
    }
}

type CliResult = Result<(), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let outcome = match cli.cmd {
        Cmd::Build(a) => build(a),
        Cmd::Simulate(a) => simulate(a),
        Cmd::Encode(a) => coding_cmd(a, CodingOp::Encode),
        Cmd::Decode(a) => coding_cmd(a, CodingOp::Decode),
        Cmd::Classify(a) => coding_cmd(a, CodingOp::Classify),
        Cmd::Play(a) => play(a),
        Cmd::Lift(a) => lift(a),
        Cmd::Reduce(a) => reduce(a),
        Cmd::Check(a) => check(a),
        Cmd::ExportDot(a) => export_dot(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}

fn alphabet_from(letters: &str) -> Result<Alphabet, String> {
    if letters.is_empty() {
        return Err("alphabet must not be empty".into());
    }
    Alphabet::new(letters.chars()).map_err(|e| format!("bad alphabet '{letters}': {e}"))
}

fn build(a: BuildArgs) -> CliResult {
    let machine = build_target(&a)?;
    let notes = vec![
        format!("target: {}", a.target),
        format!("parameters: {}", build_params(&a)),
        format!("counters: {}", machine.k()),
        format!("realtime: {}", machine.real_time()),
    ];
    let text = serialize_machine_with_notes(&machine, &notes)?;
    std::fs::write(&a.output, text)
        .map_err(|e| format!("cannot write {}: {e}", a.output.display()))?;
    println!("wrote {} ({})", a.output.display(), machine.name());
    Ok(())
}

fn build_target(a: &BuildArgs) -> Result<CounterMachine, CliError> {
    let gamma = alphabet_from(&a.gamma)?;
    let sigma = alphabet_from(&a.sigma)?;
    let m = match a.target.as_str() {
        "H" => h_automaton(&gamma)?,
        "lprime" => lprime_machine(ThetaParams::new(a.s)?, &sigma)?,
        "h-complement" => h_complement_machine(HParams::new(a.k)?, &gamma)?,
        "toy-a2" => a2_machine(HParams::new(a.k)?, &gamma, &parse_cond(&gamma, &a.cond)?)?,
        "a3" => a3_machine(HParams::new(a.k)?, &gamma, &parse_cond(&gamma, &a.cond)?)?,
        "a4" => ell_machine(HParams::new(a.k)?, &gamma, &parse_cond(&gamma, &a.cond)?)?,
        "theta-game" => {
            theta_game_machine(ThetaParams::new(a.s)?, &sigma, &parse_cond(&sigma, &a.cond)?)?
        }
        "zero-star-one" => {
            let bits = alphabet_from(&a.alphabet)?;
            let one = Letter::new(&a.one);
            if !bits.contains(&one) {
                return Err(usage(format!("letter '{}' is not in the alphabet", a.one)));
            }
            zero_star_one(&bits, &one)?
        }
        other => {
            return Err(usage(format!(
                "unknown build target '{other}' (expected H, lprime, h-complement, toy-a2, a3, a4, theta-game, or zero-star-one)"
            )))
        }
    };
    Ok(m)
}

fn build_params(a: &BuildArgs) -> String {
    match a.target.as_str() {
        "H" => format!("gamma={}", a.gamma),
        "lprime" => format!("sigma={} S={}", a.sigma, a.s),
        "theta-game" => format!("sigma={} S={} cond={}", a.sigma, a.s, a.cond),
        "zero-star-one" => format!("alphabet={} one={}", a.alphabet, a.one),
        "h-complement" => format!("gamma={} K={}", a.gamma, a.k),
        _ => format!("gamma={} K={} cond={}", a.gamma, a.k, a.cond),
    }
}

fn simulate(a: SimulateArgs) -> CliResult {
    let text = std::fs::read_to_string(&a.machine)
        .map_err(|e| format!("cannot read {}: {e}", a.machine.display()))?;
    let machine = parse_machine(&text)?;
    let mut bounds = Bounds::for_machine(&machine, a.counter_cap);
    if let Some(l) = a.lambda_budget {
        bounds.lambda_budget = l;
    }
    if let Some(h) = a.horizon {
        bounds.horizon = h;
    }
    if let Some(spec) = &a.lasso {
        let lasso = parse_lasso(machine.alphabet(), spec)?;
        let verdict = if machine.k() == 0 {
            Tv::from_bool(lasso_accepts_buchi(&machine, &lasso).map_err(|e| format!("{e}"))?)
        } else {
            lasso_accepts_counter(&machine, &lasso, &bounds).map_err(|e| format!("{e}"))?
        };
        let word = match verdict {
            Tv::Accept => "ACCEPT",
            Tv::Reject => "REJECT",
            Tv::Unknown => "UNKNOWN",
        };
        println!("{word}");
        return Ok(());
    }
    let prefix = a.prefix.as_deref().expect("clap guarantees one input");
    let word = parse_word(machine.alphabet(), prefix)?;
    let record =
        cfgames_core::run::simulate_prefix(&machine, &word, &bounds).map_err(|e| format!("{e}"))?;
    if record.is_dead() {
        println!("dead: no run consumes the whole prefix");
    } else {
        println!(
            "alive: {} configurations, accepting state {} en route",
            record.reached.len(),
            if record.any_accepting_en_route() { "seen" } else { "not seen" }
        );
    }
    if record.pruned {
        println!("note: some branches were cut at counter cap {}", bounds.counter_cap);
    }
    Ok(())
}

enum CodingOp {
    Encode,
    Decode,
    Classify,
}

fn coding_of(kind: CodingKind, s: u64, k: u64) -> Result<Coding, String> {
    Ok(match kind {
        CodingKind::Theta => Coding::Theta(ThetaParams::new(s)?),
        CodingKind::H => Coding::H(HParams::new(k)?),
    })
}

fn coding_cmd(a: CodingArgs, op: CodingOp) -> CliResult {
    let sigma = alphabet_from(&a.sigma)?;
    let coding = coding_of(a.coding, a.s, a.k)?;
    let coded = coding.alphabet(&sigma)?;
    match op {
        CodingOp::Encode => {
            let x = parse_word(&sigma, &a.word)?;
            println!("{}", coding.encode(&x));
        }
        CodingOp::Decode => {
            let w = parse_word(&coded, &a.word)?;
            match coding.classify(&sigma, &w)? {
                PrefixVerdict::InPref { decoded } => println!("{decoded}"),
                PrefixVerdict::ExitedAt { position } => {
                    return Err(CliError::Domain(format!(
                        "not a coded prefix: leaves the prefix set at position {position}"
                    )))
                }
            }
        }
        CodingOp::Classify => {
            let w = parse_word(&coded, &a.word)?;
            match coding.classify(&sigma, &w)? {
                PrefixVerdict::InPref { decoded } => println!("InPref decoded={decoded}"),
                PrefixVerdict::ExitedAt { position } => println!("ExitedAt {position}"),
            }
        }
    }
    Ok(())
}

/// Moves typed one per line on standard input. Prompts and per-turn state go
/// to standard error. On a terminal an invalid line re-prompts; on piped
/// input it aborts with the failing position.
struct ReplStrategy {
    side: Player,
    game: GameKind,
    alphabet: Alphabet,
    allow_skip: bool,
    echo: Option<(Coding, Alphabet)>,
    tty: bool,
    /// Gale-Stewart: the full interleaved word. Wadge: this side's own word.
    written: FiniteWord,
    rounds: u64,
}

impl ReplStrategy {
    fn new(
        side: Player,
        game: GameKind,
        alphabet: &Alphabet,
        allow_skip: bool,
        echo: Option<(Coding, Alphabet)>,
    ) -> ReplStrategy {
        ReplStrategy {
            side,
            game,
            alphabet: alphabet.clone(),
            allow_skip,
            echo,
            tty: std::io::stdin().is_terminal(),
            written: FiniteWord::empty(),
            rounds: 0,
        }
    }

    fn position(&self) -> u64 {
        match self.game {
            GameKind::Gs => self.written.len() as u64 + 1,
            GameKind::Wadge => self.rounds + 1,
        }
    }

    fn prompt(&self) -> String {
        let mut line = match self.game {
            GameKind::Gs => format!("position {}, {} to move", self.position(), self.side),
            GameKind::Wadge => format!("round {}, {} to move", self.position(), self.side),
        };
        if let Some((coding, payload)) = &self.echo {
            match coding.classify(payload, &self.written) {
                Ok(PrefixVerdict::InPref { decoded }) => {
                    line.push_str(&format!(" (in the prefix set, decoded \"{decoded}\")"));
                }
                Ok(PrefixVerdict::ExitedAt { position }) => {
                    line.push_str(&format!(" (left the prefix set at position {position})"));
                }
                Err(_) => {}
            }
        }
        let mut letters: Vec<&str> = self.alphabet.letters().iter().map(Letter::as_str).collect();
        if self.allow_skip {
            letters.push("s");
        }
        line.push_str(&format!(" [{}]", letters.join(" ")));
        line
    }

    fn read_move(&mut self) -> Result<Move, GameError> {
        let stdin = std::io::stdin();
        loop {
            eprintln!("{}", self.prompt());
            eprint!("> ");
            let _ = std::io::stderr().flush();
            let mut line = String::new();
            let n = stdin
                .lock()
                .read_line(&mut line)
                .map_err(|e| GameError::Protocol(format!("cannot read a move: {e}")))?;
            if n == 0 {
                return Err(GameError::Protocol(format!(
                    "input ended at position {}",
                    self.position()
                )));
            }
            let tok = line.trim();
            if tok == "s" && self.allow_skip {
                return Ok(Move::Skip);
            }
            let letter = Letter::new(tok);
            if !tok.is_empty() && self.alphabet.contains(&letter) {
                return Ok(Move::Letter(letter));
            }
            if !self.tty {
                return Err(GameError::Protocol(format!(
                    "invalid move '{tok}' at position {}",
                    self.position()
                )));
            }
            eprintln!("invalid move '{tok}'");
        }
    }
}

impl StepStrategy for ReplStrategy {
    fn next_move(&mut self, obs: &Obs) -> Result<Move, GameError> {
        if self.game == GameKind::Gs {
            if let Obs::Letter(l) = obs {
                self.written.push(l.clone());
            }
        }
        let mv = self.read_move()?;
        self.rounds += 1;
        if let Move::Letter(l) = &mv {
            self.written.push(l.clone());
        }
        Ok(mv)
    }
}

struct PlaySetup {
    f1: Strategy,
    f2: Strategy,
    winset: Option<LanguageHandle>,
    winset2: Option<LanguageHandle>,
}

fn play_setup(a: &PlayArgs) -> Result<PlaySetup, CliError> {
    let payload = alphabet_from(&a.alphabet)?;
    let coding = match a.coding {
        Some(kind) => Some(coding_of(kind, a.s, a.k)?),
        None => None,
    };
    let play_alphabet = match &coding {
        Some(c) => c.alphabet(&payload)?,
        None => payload.clone(),
    };
    let ctx = |allow_skip: bool| StrategyContext {
        alphabet: play_alphabet.clone(),
        allow_skip,
        coding: coding.map(|c| (c, payload.clone())),
    };
    let p2_may_skip = a.kind == GameKind::Wadge;
    let echo = coding.map(|c| (c, payload.clone()));
    let f1 = match a.interactive {
        Some(Side::P1) => Strategy::procedural(
            "interactive",
            Box::new(ReplStrategy::new(Player::One, a.kind, &play_alphabet, false, echo.clone())),
        ),
        _ => instantiate(&parse_strategy_spec(&a.p1)?, &ctx(false))?,
    };
    let f2 = match a.interactive {
        Some(Side::P2) => Strategy::procedural(
            "interactive",
            Box::new(ReplStrategy::new(
                Player::Two,
                a.kind,
                &play_alphabet,
                p2_may_skip,
                echo,
            )),
        ),
        _ => instantiate(&parse_strategy_spec(&a.p2)?, &ctx(p2_may_skip))?,
    };
    let winset = match &a.winset {
        Some(spec) => Some(parse_winset(spec, &payload, a.counter_cap)?),
        None => None,
    };
    let winset2 = match &a.winset2 {
        Some(spec) => Some(parse_winset(spec, &payload, a.counter_cap)?),
        None => None,
    };
    if a.winset2.is_some() && a.kind == GameKind::Gs {
        return Err(usage("--winset2 only applies to Wadge games"));
    }
    Ok(PlaySetup { f1, f2, winset, winset2 })
}

fn print_verdict(v: &Verdict) {
    println!(
        "{}",
        serde_json::json!({ "verdict": v.winner.to_string(), "reason": v.reason.to_string() })
    );
}

fn writer_tag(pos: u64) -> &'static str {
    match Player::of_position(pos) {
        Player::One => "P1",
        Player::Two => "P2",
    }
}

fn play(a: PlayArgs) -> CliResult {
    let mut setup = play_setup(&a)?;
    match a.kind {
        GameKind::Gs => {
            let t = gs_play(&mut setup.f1, &mut setup.f2, a.horizon).map_err(|e| format!("{e}"))?;
            for (i, l) in t.word.iter().enumerate() {
                let pos = i as u64 + 1;
                println!(
                    "{}",
                    serde_json::json!({ "pos": pos, "writer": writer_tag(pos), "letter": l.as_str() })
                );
            }
            if let Some(lasso) = &t.lasso_form {
                println!("{}", serde_json::json!({ "lasso": lasso.to_string() }));
            }
            if let Some(handle) = &setup.winset {
                print_verdict(&gs_adjudicate(&t, handle));
            }
        }
        GameKind::Wadge => {
            let t =
                wadge_play(&mut setup.f1, &mut setup.f2, a.horizon).map_err(|e| format!("{e}"))?;
            let mut bi = t.b.iter();
            for round in 1..=t.rounds {
                let i = (round - 1) as usize;
                println!(
                    "{}",
                    serde_json::json!({
                        "pos": round,
                        "writer": "Player1",
                        "letter": t.a.letter(i + 1).as_str()
                    })
                );
                let reply = if t.skips.contains(&round) {
                    "s"
                } else {
                    bi.next().map(Letter::as_str).unwrap_or("s")
                };
                println!(
                    "{}",
                    serde_json::json!({ "pos": round, "writer": "Player2", "letter": reply })
                );
            }
            match &t.tail {
                Some(WadgeTail::Lassos { a, b }) => {
                    println!("{}", serde_json::json!({ "lasso": a.to_string(), "side": "a" }));
                    println!("{}", serde_json::json!({ "lasso": b.to_string(), "side": "b" }));
                }
                Some(WadgeTail::AllSkipCycle { a }) => {
                    println!("{}", serde_json::json!({ "lasso": a.to_string(), "side": "a" }));
                    println!("{}", serde_json::json!({ "note": "all-skip cycle: b stays finite" }));
                }
                None => {}
            }
            if let Some(l) = &setup.winset {
                let l2 = setup.winset2.as_ref().unwrap_or(l);
                print_verdict(&wadge_adjudicate(&t, l, l2));
            }
        }
    }
    Ok(())
}

fn lift(a: LiftArgs) -> CliResult {
    let payload = alphabet_from(&a.alphabet)?;
    let coding = coding_of(a.coding, a.s, a.k)?;
    let coded = coding.alphabet(&payload)?;
    let big_ctx = StrategyContext {
        alphabet: coded,
        allow_skip: false,
        coding: Some((coding, payload.clone())),
    };
    let big = instantiate(&parse_strategy_spec(&a.big)?, &big_ctx)?;
    let mut lifted = match a.role {
        Side::P1 => lift_p1(big, &coding, &payload)?,
        Side::P2 => lift_p2(big, &coding, &payload)?,
    };
    let mut opponent = match &a.opponent {
        Some(spec) => instantiate(&parse_strategy_spec(spec)?, &StrategyContext::plain(&payload))?,
        None => {
            let first = payload.letters()[0].clone();
            cfgames_core::games::const_strategy(&payload, &first)?
        }
    };
    let handle = match &a.winset {
        Some(spec) => parse_winset(spec, &payload, a.counter_cap)?,
        None => cfgames_core::langs::payload_clopen_handle(
            &cfgames_core::langs::ClopenCondition::unconstrained(&payload),
        ),
    };
    let adjudicated = a.winset.is_some();
    let report = run_lift_with_identity_check(&mut lifted, &mut opponent, &handle, a.horizon)
        .map_err(|e| format!("{e}"))?;
    println!("{}", serde_json::json!({ "lift": lifted.name() }));
    for (i, l) in report.small.iter().enumerate() {
        let pos = i as u64 + 1;
        println!(
            "{}",
            serde_json::json!({
                "pos": pos,
                "writer": Player::of_position(pos).to_string(),
                "letter": l.as_str()
            })
        );
    }
    println!(
        "{}",
        serde_json::json!({
            "big_letters": report.big_len,
            "identity": if report.identity_ok { "ok" } else { "broken" }
        })
    );
    if adjudicated {
        print_verdict(&report.verdict);
    }
    Ok(())
}

fn reduce(a: ReduceArgs) -> CliResult {
    let alphabet = alphabet_from(&a.alphabet)?;
    let spec = parse_strategy_spec(&a.strategy)?;
    let ctx = StrategyContext {
        alphabet: alphabet.clone(),
        allow_skip: true,
        coding: None,
    };
    let reduction = strategy_to_reduction(&a.strategy, move || instantiate(&spec, &ctx));
    if let Some(w) = &a.word {
        let input = parse_word(&alphabet, w)?;
        let out = reduction.apply(&input).map_err(|e| format!("{e}"))?;
        println!("{out}");
        return Ok(());
    }
    let spec = a.lasso.as_deref().expect("clap guarantees one input");
    let input = parse_lasso(&alphabet, spec)?;
    match reduction.apply_lasso(&input).map_err(|e| format!("{e}"))? {
        Some(out) => println!("{out}"),
        None => println!("no ω-word: the strategy eventually stops writing"),
    }
    Ok(())
}

fn check(a: CheckArgs) -> CliResult {
    let selected: Vec<(u32, &str, suites::SuiteFn)> = if a.suite == "all" {
        suites::criteria()
    } else {
        let all = suites::criteria();
        let found: Vec<_> = all.into_iter().filter(|(_, n, _)| *n == a.suite).collect();
        if found.is_empty() {
            return Err(usage(format!(
                "unknown suite '{}' (expected all or one of: {})",
                a.suite,
                suites::suite_names().join(", ")
            )));
        }
        found
    };
    println!("seed {}", a.seed);
    let mut all_passed = true;
    for (_, name, run) in selected {
        let report = run(a.seed);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {name} ({} checks, {} failures)",
            report.cases, report.failure_count
        );
        for note in &report.notes {
            println!("    note: {note}");
        }
        for failure in &report.failures {
            println!("    failure: {failure}");
        }
        all_passed &= report.passed();
    }
    if !all_passed {
        return Err(CliError::Domain("at least one suite failed".into()));
    }
    Ok(())
}

fn export_dot(a: ExportDotArgs) -> CliResult {
    let text = std::fs::read_to_string(&a.machine)
        .map_err(|e| format!("cannot read {}: {e}", a.machine.display()))?;
    let machine = parse_machine(&text)?;
    let dot = machine_to_dot(&machine);
    match &a.output {
        Some(path) => std::fs::write(path, dot)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{dot}"),
    }
    Ok(())
}
