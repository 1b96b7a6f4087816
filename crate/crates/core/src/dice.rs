//! Faces, dice, and exact duel probabilities.
//!
//! A face is a fixed-length sequence of digits read as a `k`-digit number.
//! Faces of equal length compare lexicographically, which is the same as
//! comparing the numbers they denote, so depth is not limited by integer width.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact probabilities. Denominators are products of two die sizes, so `u64`
/// never overflows for any die this crate can build.
pub type Rational = Ratio<u64>;

/// Which digits a face may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `1..=9`, the digits of the Lo Shu square.
    #[default]
    LoShu,
    /// `0..=9`. Leading zeros are allowed since comparison is positional.
    Decimal,
}

impl Alphabet {
    pub const fn min(self) -> u8 {
        match self {
            Alphabet::LoShu => 1,
            Alphabet::Decimal => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Digit(u8);

impl Digit {
    /// A Lo Shu digit, `1..=9`.
    pub fn new(value: u8) -> Result<Self> {
        Self::with_alphabet(value, Alphabet::LoShu)
    }

    pub fn with_alphabet(value: u8, alphabet: Alphabet) -> Result<Self> {
        if value < alphabet.min() || value > 9 {
            return Err(Error::DigitOutOfRange {
                value,
                min: alphabet.min(),
            });
        }
        Ok(Digit(value))
    }

    pub const fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One die face: digits, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceValue(Vec<Digit>);

impl FaceValue {
    pub fn new(digits: Vec<Digit>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyFace);
        }
        Ok(FaceValue(digits))
    }

    /// Builds a face from raw digit values in the Lo Shu alphabet.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let digits = digits
            .iter()
            .map(|&d| Digit::new(d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits)
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse(0, "empty face"));
        }
        let mut digits = Vec::with_capacity(text.len());
        for (pos, c) in text.char_indices() {
            let value = c
                .to_digit(10)
                .ok_or_else(|| Error::parse(pos, format!("unexpected character `{c}`")))?;
            let digit = Digit::with_alphabet(value as u8, alphabet)
                .map_err(|e| Error::parse(pos, e.to_string()))?;
            digits.push(digit);
        }
        Self::new(digits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    /// Index of the first digit where the two faces differ.
    pub fn first_difference(&self, other: &FaceValue) -> Option<usize> {
        self.0.iter().zip(&other.0).position(|(a, b)| a != b)
    }
}

impl fmt::Display for FaceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.0)?;
        }
        Ok(())
    }
}

impl FromStr for FaceValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, Alphabet::LoShu)
    }
}

/// Numeric comparison of two faces of equal length.
pub fn compare_faces(a: &FaceValue, b: &FaceValue) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::IncomparableFaces {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.0.cmp(&b.0))
}

/// A multiset of faces. Faces are kept sorted and merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Die {
    faces: Vec<(FaceValue, u32)>,
    total: u64,
}

impl Die {
    pub fn new(faces: impl IntoIterator<Item = (FaceValue, u32)>) -> Result<Self> {
        let mut faces: Vec<(FaceValue, u32)> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyDie);
        }
        if faces.iter().any(|(_, m)| *m == 0) {
            return Err(Error::ZeroMultiplicity);
        }
        let len = faces[0].0.len();
        if let Some((face, _)) = faces.iter().find(|(f, _)| f.len() != len) {
            return Err(Error::IncomparableFaces {
                left: len,
                right: face.len(),
            });
        }
        faces.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(FaceValue, u32)> = Vec::with_capacity(faces.len());
        for (face, m) in faces {
            match merged.last_mut() {
                Some((last, lm)) if *last == face => *lm += m,
                _ => merged.push((face, m)),
            }
        }
        let total = merged.iter().map(|(_, m)| u64::from(*m)).sum();
        Ok(Die {
            faces: merged,
            total,
        })
    }

    /// Every face gets the same multiplicity.
    pub fn uniform(faces: impl IntoIterator<Item = FaceValue>, multiplicity: u32) -> Result<Self> {
        Self::new(faces.into_iter().map(|f| (f, multiplicity)))
    }

    /// Parses the die text format: `2x2,4x2,9x2` or `222,489,954`.
    ///
    /// The digit length is taken from the longest face; shorter faces are
    /// rejected rather than zero-padded.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut parsed = Vec::new();
        let mut offset = 0;
        for token in text.split(',') {
            let start = offset + (token.len() - token.trim_start().len());
            offset += token.len() + 1;
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::parse(start, "empty face"));
            }
            let (face_text, multiplicity) = match token.split_once(['x', 'X']) {
                Some((face, mult)) => {
                    let mult_pos = start + face.len() + 1;
                    let m: u32 = mult.trim().parse().map_err(|_| {
                        Error::parse(mult_pos, format!("bad multiplicity `{mult}`"))
                    })?;
                    if m == 0 {
                        return Err(Error::parse(mult_pos, "multiplicity must be positive"));
                    }
                    (face, m)
                }
                None => (token, 1),
            };
            let face = FaceValue::parse(face_text, alphabet).map_err(|e| match e {
                Error::Parse { position, message } => Error::parse(start + position, message),
                other => other,
            })?;
            parsed.push((start, face, multiplicity));
        }
        let width = parsed.iter().map(|(_, f, _)| f.len()).max().unwrap_or(0);
        if let Some((pos, face, _)) = parsed.iter().find(|(_, f, _)| f.len() != width) {
            return Err(Error::parse(
                *pos,
                format!("face {face} has {} digits, expected {width}", face.len()),
            ));
        }
        Self::new(parsed.into_iter().map(|(_, f, m)| (f, m)))
    }

    pub fn faces(&self) -> &[(FaceValue, u32)] {
        &self.faces
    }

    pub fn distinct_faces(&self) -> impl Iterator<Item = &FaceValue> {
        self.faces.iter().map(|(f, _)| f)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Digit length shared by all faces.
    pub fn width(&self) -> usize {
        self.faces[0].0.len()
    }

    /// Multiplies every multiplicity by `factor`.
    pub fn scaled(&self, factor: u32) -> Result<Self> {
        if factor == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        Self::new(self.faces.iter().map(|(f, m)| (f.clone(), m * factor)))
    }
}

impl fmt::Display for Die {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (face, m)) in self.faces.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *m == 1 {
                write!(f, "{face}")?;
            } else {
                write!(f, "{face}x{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Die {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, Alphabet::LoShu)
    }
}

/// Weighted outcome counts of a duel, before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DuelCounts {
    pub win: u64,
    pub tie: u64,
    pub loss: u64,
}

impl DuelCounts {
    pub fn total(&self) -> u64 {
        self.win + self.tie + self.loss
    }

    pub fn to_result(self) -> DuelResult {
        let total = self.total();
        DuelResult {
            p_win: Rational::new(self.win, total),
            p_tie: Rational::new(self.tie, total),
            p_loss: Rational::new(self.loss, total),
        }
    }

    /// True iff the normalized result is exactly `(win, 0, 1 - win)`.
    pub fn is_exact_win(&self, win: Rational) -> bool {
        self.tie == 0 && self.win * win.denom() == self.total() * win.numer()
    }
}

/// Exact `(win, tie, loss)` probabilities of one die rolled against another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DuelResult {
    #[serde(rename = "win", serialize_with = "ser_ratio")]
    pub p_win: Rational,
    #[serde(rename = "tie", serialize_with = "ser_ratio")]
    pub p_tie: Rational,
    #[serde(rename = "loss", serialize_with = "ser_ratio")]
    pub p_loss: Rational,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl DuelResult {
    /// Outcome of the same duel seen from the other die.
    pub fn swapped(&self) -> DuelResult {
        DuelResult {
            p_win: self.p_loss,
            p_tie: self.p_tie,
            p_loss: self.p_win,
        }
    }

    /// Decimal approximation, six places.
    pub fn decimal(&self) -> String {
        let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
        format!(
            "{:.6} {:.6} {:.6}",
            f(&self.p_win),
            f(&self.p_tie),
            f(&self.p_loss)
        )
    }
}

impl fmt::Display for DuelResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.p_win, self.p_tie, self.p_loss)
    }
}

pub fn duel_counts(x: &Die, y: &Die) -> Result<DuelCounts> {
    if x.width() != y.width() {
        return Err(Error::IncomparableFaces {
            left: x.width(),
            right: y.width(),
        });
    }
    let mut counts = DuelCounts::default();
    for (f, mf) in &x.faces {
        for (g, mg) in &y.faces {
            let weight = u64::from(*mf) * u64::from(*mg);
            match f.0.cmp(&g.0) {
                Ordering::Greater => counts.win += weight,
                Ordering::Equal => counts.tie += weight,
                Ordering::Less => counts.loss += weight,
            }
        }
    }
    Ok(counts)
}

pub fn duel(x: &Die, y: &Die) -> Result<DuelResult> {
    duel_counts(x, y).map(DuelCounts::to_result)
}

/// Strict majority: `x` wins more often than it loses.
pub fn beats(x: &Die, y: &Die) -> Result<bool> {
    let c = duel_counts(x, y)?;
    Ok(c.win > c.loss)
}

/// Every member of one team meets every member of the other once; the larger
/// strength wins. Returns `(wins_x, wins_y)`.
pub fn round_robin(team_x: &[i64], team_y: &[i64]) -> Result<(u64, u64)> {
    let ys: HashSet<i64> = team_y.iter().copied().collect();
    if let Some(shared) = team_x.iter().find(|a| ys.contains(a)) {
        return Err(Error::AmbiguousOutcome(*shared));
    }
    let mut wins = (0, 0);
    for a in team_x {
        for b in team_y {
            if a > b {
                wins.0 += 1;
            } else {
                wins.1 += 1;
            }
        }
    }
    Ok(wins)
}
