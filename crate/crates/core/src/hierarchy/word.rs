use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ternary address of a die. Position `j` picks the subset at nesting level `j`.
///
/// Words of equal length order lexicographically, which is the same order as
/// their die numbers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Word(Vec<u8>);

impl Word {
    /// `3^40` still fits in a `u64` die number.
    pub const MAX_LEN: usize = 40;

    pub fn new(trits: Vec<u8>) -> Result<Self> {
        if trits.is_empty() || trits.len() > Self::MAX_LEN {
            return Err(Error::WordLength {
                len: trits.len(),
                max: Self::MAX_LEN,
            });
        }
        if let Some(&t) = trits.iter().find(|&&t| t > 2) {
            return Err(Error::InvalidTrit(t));
        }
        Ok(Word(trits))
    }

    pub fn trits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `1 + Σ 3^(k-j) w_j`, so `(0,0,0)` is D1 and `(2,2,2)` is D27.
    pub fn paper_number(&self) -> u64 {
        1 + self.index()
    }

    /// Zero-based position in paper order.
    pub fn index(&self) -> u64 {
        self.0.iter().fold(0, |acc, &t| acc * 3 + u64::from(t))
    }

    /// Inverse of [`Word::paper_number`] for words of length `k`.
    pub fn from_paper_number(number: u64, k: usize) -> Result<Self> {
        if k == 0 || k > Self::MAX_LEN {
            return Err(Error::WordLength {
                len: k,
                max: Self::MAX_LEN,
            });
        }
        let max = 3u64.pow(k as u32);
        if number == 0 || number > max {
            return Err(Error::DieNumberOutOfRange { number, max });
        }
        Ok(Self::from_index(number - 1, k))
    }

    pub(crate) fn from_index(mut index: u64, k: usize) -> Self {
        let mut trits = vec![0u8; k];
        for t in trits.iter_mut().rev() {
            *t = (index % 3) as u8;
            index /= 3;
        }
        Word(trits)
    }

    /// All `3^k` words in paper order.
    pub fn all(k: usize) -> impl Iterator<Item = Word> {
        let count = 3u64.pow(k as u32);
        (0..count).map(move |i| Word::from_index(i, k))
    }

    /// First 0-based position where the words differ.
    pub fn first_difference(&self, other: &Word) -> Result<Option<usize>> {
        if self.len() != other.len() {
            return Err(Error::WordLengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).position(|(a, b)| a != b))
    }

    pub fn starts_with(&self, prefix: &[u8]) -> bool {
        self.0.starts_with(prefix)
    }
}

impl TryFrom<Vec<u8>> for Word {
    type Error = Error;

    fn try_from(trits: Vec<u8>) -> Result<Self> {
        Word::new(trits)
    }
}

impl From<Word> for Vec<u8> {
    fn from(w: Word) -> Self {
        w.0
    }
}

/// Digits run together: `012`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Subset `a` beats subset `b` in the cycle `0 → 1 → 2 → 0`.
pub fn cycle_beats(a: u8, b: u8) -> bool {
    b == (a + 1) % 3
}

/// Which word should win a duel: at the first differing position, the one
/// whose trit beats the other's in the cycle. `None` for equal words.
pub fn predicted_winner(w: &Word, v: &Word) -> Result<Option<Word>> {
    Ok(winner_side(w, v)?.map(|side| match side {
        Ordering::Greater => w.clone(),
        _ => v.clone(),
    }))
}

/// `Greater` if `w` is predicted to win, `Less` if `v` is, `None` if equal.
pub(crate) fn winner_side(w: &Word, v: &Word) -> Result<Option<Ordering>> {
    Ok(w.first_difference(v)?.map(|m| {
        if cycle_beats(w.0[m], v.0[m]) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }))
}
