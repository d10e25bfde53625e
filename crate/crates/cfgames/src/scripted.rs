//! Subprocess strategies. The engine talks to the child over a line
//! protocol: before each of the child's moves it writes
//!
//! ```text
//! TURN <n> <last-opponent-letter|-|s>
//! ```
//!
//! where `n` counts the child's own moves from 1 and the third field is `-`
//! on the opening turn. The child answers with a single token: a letter, or
//! `s` to skip where its role allows skipping. Any other reply, or the child
//! exiting, aborts the play as a protocol error rather than a loss.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use cfgames_core::games::{GameError, Move, Obs, StepStrategy};
use cfgames_core::{Alphabet, Letter};

pub struct ScriptedStrategy {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
    alphabet: Alphabet,
    allow_skip: bool,
    turn: u64,
}

impl ScriptedStrategy {
    /// Spawns `command` (split on whitespace; the first token is the
    /// program) with piped stdin/stdout. Stderr passes through to ours so a
    /// crashing script stays diagnosable.
    pub fn spawn(command: &str, alphabet: &Alphabet, allow_skip: bool) -> Result<Self, String> {
        let mut toks = command.split_whitespace();
        let program = toks.next().ok_or("empty proc command")?;
        let mut child = Command::new(program)
            .args(toks)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| format!("cannot spawn '{program}': {e}"))?;
        let stdin = child.stdin.take().expect("stdin was piped");
        let stdout = BufReader::new(child.stdout.take().expect("stdout was piped"));
        Ok(ScriptedStrategy {
            child,
            stdin,
            stdout,
            alphabet: alphabet.clone(),
            allow_skip,
            turn: 0,
        })
    }

    fn protocol(&self, msg: String) -> GameError {
        GameError::Protocol(format!("scripted strategy: {msg}"))
    }
}

impl StepStrategy for ScriptedStrategy {
    fn next_move(&mut self, obs: &Obs) -> Result<Move, GameError> {
        self.turn += 1;
        let seen = match obs {
            Obs::Start => "-".to_string(),
            Obs::Letter(l) => l.as_str().to_string(),
            Obs::Skip => "s".to_string(),
        };
        writeln!(self.stdin, "TURN {} {}", self.turn, seen)
            .and_then(|()| self.stdin.flush())
            .map_err(|e| self.protocol(format!("write failed: {e}")))?;

        let mut line = String::new();
        let n = self
            .stdout
            .read_line(&mut line)
            .map_err(|e| self.protocol(format!("read failed: {e}")))?;
        if n == 0 {
            return Err(self.protocol("child closed stdout".into()));
        }
        let reply = line.trim();
        if reply == "s" {
            return if self.allow_skip {
                Ok(Move::Skip)
            } else {
                Err(self.protocol("skipped outside the Wadge Player 2 role".into()))
            };
        }
        let l = Letter::new(reply);
        if reply.split_whitespace().count() == 1 && self.alphabet.contains(&l) {
            Ok(Move::Letter(l))
        } else {
            Err(self.protocol(format!("reply '{reply}' is not a letter or s")))
        }
    }
}

impl Drop for ScriptedStrategy {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::os::unix::fs::PermissionsExt;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    /// Writes an executable `/bin/sh` script and returns its path. Shell
    /// `echo` is unbuffered, so replies arrive line by line.
    fn script(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
        let mut perms = std::fs::metadata(&path).unwrap().permissions();
        perms.set_mode(0o755);
        std::fs::set_permissions(&path, perms).unwrap();
        path.to_str().unwrap().to_string()
    }

    #[test]
    fn a_shell_child_plays_and_is_killed_on_drop() {
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(&dir, "const-a", "while read t n l; do echo a; done");
        let mut s = ScriptedStrategy::spawn(&cmd, &ab(), false).unwrap();
        assert_eq!(s.next_move(&Obs::Start).unwrap(), Move::Letter(Letter::new("a")));
        assert_eq!(
            s.next_move(&Obs::Letter(Letter::new("b"))).unwrap(),
            Move::Letter(Letter::new("a"))
        );
        drop(s);
    }

    #[test]
    fn bad_replies_and_dead_children_are_protocol_errors() {
        let mut s = ScriptedStrategy::spawn("true", &ab(), false).unwrap();
        match s.next_move(&Obs::Start) {
            Err(GameError::Protocol(msg)) => assert!(msg.contains("scripted"), "{msg}"),
            other => panic!("expected protocol error, got {other:?}"),
        }

        let dir = tempfile::tempdir().unwrap();
        let cmd = script(&dir, "zebra", "while read t n l; do echo zebra; done");
        let mut s = ScriptedStrategy::spawn(&cmd, &ab(), false).unwrap();
        assert!(matches!(s.next_move(&Obs::Start), Err(GameError::Protocol(_))));
    }

    #[test]
    fn skips_respect_the_role() {
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(&dir, "skipper", "while read t n l; do echo s; done");
        let mut no_skip = ScriptedStrategy::spawn(&cmd, &ab(), false).unwrap();
        assert!(matches!(no_skip.next_move(&Obs::Start), Err(GameError::Protocol(_))));
        let mut can_skip = ScriptedStrategy::spawn(&cmd, &ab(), true).unwrap();
        assert_eq!(can_skip.next_move(&Obs::Start).unwrap(), Move::Skip);
    }

    #[test]
    fn the_turn_line_carries_count_and_observation() {
        // the child echoes the observation field back as its move, opening
        // with `a`, so each move we read equals what we just sent
        let dir = tempfile::tempdir().unwrap();
        let cmd = script(
            &dir,
            "echoer",
            "while read t n l; do if [ \"$l\" = - ]; then echo a; else echo \"$l\"; fi; done",
        );
        let mut s = ScriptedStrategy::spawn(&cmd, &ab(), false).unwrap();
        assert_eq!(s.next_move(&Obs::Start).unwrap(), Move::Letter(Letter::new("a")));
        assert_eq!(
            s.next_move(&Obs::Letter(Letter::new("b"))).unwrap(),
            Move::Letter(Letter::new("b"))
        );
    }

    #[test]
    fn spawn_rejects_missing_programs() {
        assert!(ScriptedStrategy::spawn("definitely-not-a-real-binary-7q", &ab(), false).is_err());
    }
}
