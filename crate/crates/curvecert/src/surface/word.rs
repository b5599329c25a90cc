//! Words over the symplectic generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::WordError;

/// One signed generator. `gen` indexes `a_1, b_1, a_2, b_2, ...` as
/// `0, 1, 2, 3, ...`; `inv` marks the inverse letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u8, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }

    /// Display name like `a1`, `B2` (uppercase marks the inverse).
    pub fn name(self) -> String {
        let base = if self.gen % 2 == 0 { 'a' } else { 'b' };
        let idx = self.gen / 2 + 1;
        let c = if self.inv {
            base.to_ascii_uppercase()
        } else {
            base
        };
        format!("{}{}", c, idx)
    }
}

/// A word in the surface group: a sequence of signed generators.
///
/// Words are plain free-monoid data; reduction happens through
/// [`Presentation`](super::Presentation) methods.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    pub(crate) letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Generator `a_i` (1-based).
    pub fn a(i: u8) -> Self {
        Word {
            letters: vec![Letter::new(2 * (i - 1), false)],
        }
    }

    /// Generator `b_i` (1-based).
    pub fn b(i: u8) -> Self {
        Word {
            letters: vec![Letter::new(2 * (i - 1) + 1, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    /// Conjugate `u self u^-1`.
    pub fn conjugated_by(&self, u: &Word) -> Self {
        u.concat(self).concat(&u.inverse())
    }

    /// Commutator `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Self {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Free reduction: cancel adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().map_or(false, |&last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Cyclic free reduction: freely reduce and strip cancelling ends.
    pub fn cyclic_free_reduce(&self) -> Self {
        let mut w = self.free_reduce();
        while w.letters.len() >= 2
            && w.letters
                .first()
                .unwrap()
                .cancels(*w.letters.last().unwrap())
        {
            w.letters.pop();
            w.letters.remove(0);
        }
        w
    }

    /// Parse whitespace-separated tokens: `a1 b1 A1 B1` with uppercase as
    /// inverse, or explicit exponents `a1^-1`, `b2^3`.
    pub fn parse(input: &str, genus: usize) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            let (head, exp) = match token.split_once('^') {
                Some((h, e)) => {
                    let exp: i64 = e.parse().map_err(|_| WordError::Parse(token.into()))?;
                    (h, exp)
                }
                None => (token, 1),
            };
            let mut chars = head.chars();
            let c = chars.next().ok_or_else(|| WordError::Parse(token.into()))?;
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| WordError::Parse(token.into()))?;
            if idx == 0 || idx > genus {
                return Err(WordError::GeneratorRange(idx, genus));
            }
            let (gen, upper_inv) = match c {
                'a' => (2 * (idx - 1) as u8, false),
                'b' => (2 * (idx - 1) as u8 + 1, false),
                'A' => (2 * (idx - 1) as u8, true),
                'B' => (2 * (idx - 1) as u8 + 1, true),
                _ => return Err(WordError::Parse(token.into())),
            };
            let inv = upper_inv != (exp < 0);
            let letter = Letter::new(gen, inv);
            for _ in 0..exp.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // Canonical JSON form: sequence of [index, sign].
        let pairs: Vec<(u8, i8)> = self
            .letters
            .iter()
            .map(|l| (l.gen, if l.inv { -1 } else { 1 }))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(u8, i8)> = Vec::deserialize(d)?;
        Ok(Word {
            letters: pairs
                .into_iter()
                .map(|(g, s)| Letter::new(g, s < 0))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduce_examples() {
        let g = 2;
        let w = Word::parse("a1 A1", g).unwrap();
        assert!(w.free_reduce().is_empty());
        let w = Word::parse("a1 b1 B1 a2", g).unwrap();
        assert_eq!(w.free_reduce(), Word::parse("a1 a2", g).unwrap());
        assert!(Word::empty().free_reduce().is_empty());
    }

    #[test]
    fn parse_exponents_and_inverses() {
        let g = 2;
        assert_eq!(
            Word::parse("a1^-1", g).unwrap(),
            Word::parse("A1", g).unwrap()
        );
        assert_eq!(
            Word::parse("b2^2", g).unwrap(),
            Word::parse("b2 b2", g).unwrap()
        );
        assert_eq!(
            Word::parse("A2^-1", g).unwrap(),
            Word::parse("a2", g).unwrap()
        );
        assert!(Word::parse("c1", g).is_err());
        assert!(Word::parse("a3", g).is_err());
    }

    #[test]
    fn serde_uses_index_sign_pairs() {
        let w = Word::parse("a1 B2", 2).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[[0,1],[3,-1]]");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn display_roundtrip() {
        let w = Word::parse("a1 B2 A1", 2).unwrap();
        assert_eq!(w.to_string(), "a1 B2 A1");
    }
}
