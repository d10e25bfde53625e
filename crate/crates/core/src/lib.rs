//! Counter Büchi machines, padding codings, and the game engines built on them.
//!
//! Everything in this crate works on ω-words presented either as explicit
//! finite prefixes or as lassos `u·v^ω`. Machines are nondeterministic Büchi
//! automata with k non-negative counters; acceptance questions on lassos are
//! exact for k = 0 and three-valued (accept / reject / unknown) once counters
//! are present, with certificates backing every non-unknown answer.
//!
//! The crate is `no_std` (alloc required). IO, file formats, and the CLI live
//! in the companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod accept;
pub mod coding;
pub mod compose;
pub mod games;
pub mod langs;
pub mod machine;
pub mod run;
pub mod word;

pub use accept::Tv;
pub use machine::{Config, CounterMachine, CounterTest, Rule};
pub use word::{Alphabet, FiniteWord, Lasso, Letter};
