use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse. Generators are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        assert!(generator >= 1, "generators are numbered from 1");
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }

    fn cancels(self, other: Self) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Lowercase for the generator, uppercase for its inverse.
    pub fn to_char(self) -> char {
        let c = (b'a' + (self.generator - 1) as u8) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Freely reduces a letter sequence with a single stack pass.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> FreeWord {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|&top| top.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    FreeWord { letters: out }
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: u32) -> Self {
        Self {
            letters: vec![Letter::new(i, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        free_reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Parses the compact syntax: `a..z` generators, `A..Z` inverses,
    /// `1` or the empty string for the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::identity());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(Letter::new(c as u32 - 'a' as u32 + 1, false)),
                'A'..='Z' => Ok(Letter::new(c as u32 - 'A' as u32 + 1, true)),
                _ => Err(Error::BadWord(format!("unexpected character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(free_reduce(letters))
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}
