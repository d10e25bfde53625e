//! Letters, alphabets, finite words, and lassos.
//!
//! Words are 1-indexed throughout: `w.letter(1)` is the first letter and
//! `w.prefix(0)` is the empty word. A lasso `u|v` denotes the ultimately
//! periodic ω-word `u·v^ω`; two lassos are equal as ω-words iff their
//! canonical forms (minimal cycle, then minimal spoke) are equal.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// A single symbol. Cheap to clone; compared by content.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(s: &str) -> Self {
        Letter(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.0)
    }
}

impl From<char> for Letter {
    fn from(c: char) -> Self {
        let mut buf = [0u8; 4];
        Letter::new(c.encode_utf8(&mut buf))
    }
}

impl From<&str> for Letter {
    fn from(s: &str) -> Self {
        Letter::new(s)
    }
}

/// An ordered set of distinct letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    /// Builds an alphabet from distinct letters. Duplicates are an error.
    pub fn new<I, L>(letters: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = L>,
        L: Into<Letter>,
    {
        let letters: Vec<Letter> = letters.into_iter().map(Into::into).collect();
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(alloc::format!("duplicate letter '{l}' in alphabet"));
            }
        }
        Ok(Alphabet { letters })
    }

    /// One letter per character of `s`.
    pub fn from_chars(s: &str) -> Result<Self, String> {
        Alphabet::new(s.chars())
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.letters.contains(l)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn index_of(&self, l: &Letter) -> Option<usize> {
        self.letters.iter().position(|x| x == l)
    }

    /// This alphabet extended by `extra` letters; rejects overlaps.
    pub fn extend<I, L>(&self, extra: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = L>,
        L: Into<Letter>,
    {
        let mut all = self.letters.clone();
        for l in extra {
            all.push(l.into());
        }
        Alphabet::new(all)
    }
}

/// A finite word, 1-indexed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteWord {
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn empty() -> Self {
        FiniteWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord { letters }
    }

    /// One letter per character, for single-character alphabets.
    pub fn from_chars(s: &str) -> Self {
        FiniteWord {
            letters: s.chars().map(Letter::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The n-th letter, 1-indexed. Panics if n is 0 or past the end.
    pub fn letter(&self, n: usize) -> &Letter {
        assert!(n >= 1 && n <= self.letters.len(), "letter index {n} out of range");
        &self.letters[n - 1]
    }

    pub fn get(&self, n: usize) -> Option<&Letter> {
        if n == 0 {
            None
        } else {
            self.letters.get(n - 1)
        }
    }

    /// The prefix of length n (w[n] in the usual notation); n = 0 is empty.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        assert!(n <= self.letters.len(), "prefix length {n} out of range");
        FiniteWord {
            letters: self.letters[..n].to_owned(),
        }
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FiniteWord { letters }
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        self.letters.len() <= other.letters.len()
            && self.letters[..] == other.letters[..self.letters.len()]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Letter> {
        self.letters.iter()
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.letters
    }

    pub fn last(&self) -> Option<&Letter> {
        self.letters.last()
    }
}

impl fmt::Display for FiniteWord {
    /// Contiguous when every letter is a single character, spaced otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaced = self.letters.iter().any(|l| l.as_str().chars().count() != 1);
        for (i, l) in self.letters.iter().enumerate() {
            if spaced && i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromIterator<Letter> for FiniteWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        FiniteWord {
            letters: iter.into_iter().collect(),
        }
    }
}

/// The ultimately periodic ω-word `spoke·cycle^ω`. The cycle is never empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    spoke: FiniteWord,
    cycle: FiniteWord,
}

impl Lasso {
    /// Builds a lasso in canonical form: the cycle is primitive and the spoke
    /// is shortest among representations of the same ω-word.
    pub fn new(spoke: FiniteWord, cycle: FiniteWord) -> Result<Self, String> {
        if cycle.is_empty() {
            return Err("lasso cycle must be non-empty".into());
        }
        let mut l = Lasso { spoke, cycle };
        l.canonicalize();
        Ok(l)
    }

    pub fn from_chars(spoke: &str, cycle: &str) -> Self {
        Lasso::new(FiniteWord::from_chars(spoke), FiniteWord::from_chars(cycle))
            .expect("non-empty cycle")
    }

    pub fn spoke(&self) -> &FiniteWord {
        &self.spoke
    }

    pub fn cycle(&self) -> &FiniteWord {
        &self.cycle
    }

    /// Total wheel size |u| + |v|; every position ≥ |u| has period |v|.
    pub fn wheel_len(&self) -> usize {
        self.spoke.len() + self.cycle.len()
    }

    /// The n-th letter of the ω-word, 1-indexed.
    pub fn letter_at(&self, n: u64) -> &Letter {
        assert!(n >= 1, "letter index 0");
        let n0 = n - 1;
        let sp = self.spoke.len() as u64;
        if n0 < sp {
            self.spoke.letter(n as usize)
        } else {
            let idx = ((n0 - sp) % self.cycle.len() as u64) as usize;
            self.cycle.letter(idx + 1)
        }
    }

    /// The prefix of length n of the ω-word.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        (1..=n as u64).map(|i| self.letter_at(i).clone()).collect()
    }

    fn canonicalize(&mut self) {
        // Shrink cycle to its primitive root.
        let m = self.cycle.len();
        for d in 1..=m / 2 {
            if m % d != 0 {
                continue;
            }
            let head = self.cycle.prefix(d);
            let periodic = (0..m).all(|i| self.cycle.letter(i + 1) == head.letter(i % d + 1));
            if periodic {
                self.cycle = head;
                break;
            }
        }
        // Roll the cycle backwards over the spoke while their last letters agree.
        while let (Some(s), Some(c)) = (self.spoke.last(), self.cycle.last()) {
            if s != c {
                break;
            }
            let mut rotated = FiniteWord::empty();
            rotated.push(self.cycle.last().unwrap().clone());
            for i in 1..self.cycle.len() {
                rotated.push(self.cycle.letter(i).clone());
            }
            self.cycle = rotated;
            self.spoke = self.spoke.prefix(self.spoke.len() - 1);
        }
    }

    /// ω-word equality by prefix agreement, independent of canonical forms.
    pub fn omega_eq(&self, other: &Lasso) -> bool {
        let lcm = {
            let (a, b) = (self.cycle.len() as u64, other.cycle.len() as u64);
            let gcd = {
                let (mut x, mut y) = (a, b);
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                x
            };
            a / gcd * b
        };
        let n = self.spoke.len() as u64 + other.spoke.len() as u64 + lcm;
        (1..=n).all(|i| self.letter_at(i) == other.letter_at(i))
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.spoke, self.cycle)
    }
}

impl fmt::Debug for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_indexing() {
        let w = FiniteWord::from_chars("abc");
        assert_eq!(w.letter(1).as_str(), "a");
        assert_eq!(w.letter(3).as_str(), "c");
        assert_eq!(w.prefix(0), FiniteWord::empty());
        assert_eq!(w.prefix(2), FiniteWord::from_chars("ab"));
    }

    #[test]
    fn lasso_canonical_primitive_cycle() {
        let l = Lasso::from_chars("", "abab");
        assert_eq!(l.cycle(), &FiniteWord::from_chars("ab"));
    }

    #[test]
    fn lasso_canonical_minimal_spoke() {
        // a·(ba)^ω = (ab)^ω
        let l = Lasso::from_chars("a", "ba");
        assert_eq!(l.spoke(), &FiniteWord::empty());
        assert_eq!(l.cycle(), &FiniteWord::from_chars("ab"));
    }

    #[test]
    fn canonical_equals_omega_eq() {
        let a = Lasso::from_chars("ab", "ba");
        let b = Lasso::from_chars("a", "bb");
        assert_eq!(a.omega_eq(&b), a == b);
        let c = Lasso::from_chars("abb", "ab");
        assert!(a.omega_eq(&c));
        assert_eq!(a, c);
    }

    #[test]
    fn letter_at_wraps() {
        let l = Lasso::from_chars("c", "ab");
        let taken: std::string::String = (1..=6).map(|i| l.letter_at(i).as_str()).collect();
        assert_eq!(taken, "cababa");
    }
}
