use std::collections::HashSet;

use rayon::prelude::*;

use super::word::Word;
use crate::dice::{duel_counts, Die, Digit, FaceValue, Rational};
use crate::error::{Error, Result};
use crate::loshu::AssignmentStack;

/// All `3^k` dice of a depth-`k` family, stored in paper order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiceFamily {
    depth: usize,
    multiplicity: u32,
    stack: Option<AssignmentStack>,
    dice: Vec<Die>,
}

/// Face of rank `rank` on the die at `word`: level `j` contributes digit
/// `assignment_j(prefix)[w_j][rank]`, level 1 most significant.
pub fn face_value(word: &Word, rank: usize, stack: &AssignmentStack) -> Result<FaceValue> {
    if rank > 2 {
        return Err(Error::InvalidRank(rank));
    }
    if word.len() != stack.depth() {
        return Err(Error::WordLengthMismatch {
            left: word.len(),
            right: stack.depth(),
        });
    }
    FaceValue::new(digits_of(word.trits(), rank, stack))
}

fn digits_of(trits: &[u8], rank: usize, stack: &AssignmentStack) -> Vec<Digit> {
    (0..trits.len())
        .map(|j| {
            stack
                .assignment(j + 1, &trits[..j])
                .get(trits[j] as usize, rank)
        })
        .collect()
}

/// Builds every die of the family described by `stack`.
///
/// The stack has already passed its level predicates on construction.
pub fn generate(stack: &AssignmentStack, multiplicity: u32) -> Result<DiceFamily> {
    if multiplicity == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let k = stack.depth();
    if k > Word::MAX_LEN {
        return Err(Error::WordLength {
            len: k,
            max: Word::MAX_LEN,
        });
    }
    let count = 3u64.pow(k as u32);
    let dice = (0..count)
        .into_par_iter()
        .map(|i| {
            let word = Word::from_index(i, k);
            let faces = (0..3).map(|r| FaceValue::new(digits_of(word.trits(), r, stack)));
            Die::uniform(faces.collect::<Result<Vec<_>>>()?, multiplicity)
        })
        .collect::<Result<Vec<_>>>()?;

    let family = DiceFamily {
        depth: k,
        multiplicity,
        stack: Some(stack.clone()),
        dice,
    };
    // Level-1 digits separate subsets and deeper digits separate siblings, so
    // these can only fire on a broken stack invariant.
    assert!(
        family.dice.iter().all(|d| d.faces().len() == 3),
        "generated die without three distinct faces"
    );
    let distinct: HashSet<&Die> = family.dice.iter().collect();
    assert_eq!(
        distinct.len(),
        family.dice.len(),
        "generated duplicate dice"
    );
    Ok(family)
}

impl DiceFamily {
    /// Wraps externally supplied dice. Every word of length `depth` must
    /// appear exactly once and every face must have `depth` digits.
    pub fn from_dice(
        depth: usize,
        multiplicity: u32,
        stack: Option<AssignmentStack>,
        entries: Vec<(Word, Die)>,
    ) -> Result<Self> {
        if depth == 0 || depth > Word::MAX_LEN {
            return Err(Error::WordLength {
                len: depth,
                max: Word::MAX_LEN,
            });
        }
        if let Some(s) = &stack {
            if s.depth() != depth {
                return Err(Error::MalformedFamily(format!(
                    "stack has {} levels but the family depth is {depth}",
                    s.depth()
                )));
            }
        }
        let count = 3usize.pow(depth as u32);
        if entries.len() != count {
            return Err(Error::MalformedFamily(format!(
                "expected {count} dice, found {}",
                entries.len()
            )));
        }
        let mut slots: Vec<Option<Die>> = vec![None; count];
        for (word, die) in entries {
            if word.len() != depth {
                return Err(Error::MalformedFamily(format!(
                    "word {word} has length {}, expected {depth}",
                    word.len()
                )));
            }
            if die.width() != depth {
                return Err(Error::MalformedFamily(format!(
                    "die {word} has {}-digit faces, expected {depth}",
                    die.width()
                )));
            }
            let slot = &mut slots[word.index() as usize];
            if slot.is_some() {
                return Err(Error::MalformedFamily(format!("word {word} appears twice")));
            }
            *slot = Some(die);
        }
        Ok(DiceFamily {
            depth,
            multiplicity,
            stack,
            dice: slots
                .into_iter()
                .map(|d| d.expect("all slots filled"))
                .collect(),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn stack(&self) -> Option<&AssignmentStack> {
        self.stack.as_ref()
    }

    pub fn len(&self) -> usize {
        self.dice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dice.is_empty()
    }

    pub fn die(&self, word: &Word) -> Option<&Die> {
        if word.len() != self.depth {
            return None;
        }
        self.dice.get(word.index() as usize)
    }

    /// Die by 1-based die number.
    pub fn die_number(&self, number: u64) -> Option<&Die> {
        number
            .checked_sub(1)
            .and_then(|i| self.dice.get(i as usize))
    }

    pub fn dice(&self) -> &[Die] {
        &self.dice
    }

    /// `(word, die)` in paper order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &Die)> {
        let k = self.depth;
        self.dice
            .iter()
            .enumerate()
            .map(move |(i, d)| (Word::from_index(i as u64, k), d))
    }

    /// Index range (paper order) of the dice whose words start with `prefix`.
    pub fn subtree_range(&self, prefix: &[u8]) -> Result<std::ops::Range<usize>> {
        if prefix.len() > self.depth {
            return Err(Error::LevelOutOfRange {
                level: prefix.len(),
                depth: self.depth,
            });
        }
        if let Some(&t) = prefix.iter().find(|&&t| t > 2) {
            return Err(Error::InvalidTrit(t));
        }
        let size = 3usize.pow((self.depth - prefix.len()) as u32);
        let start = prefix.iter().fold(0usize, |acc, &t| acc * 3 + t as usize) * size;
        Ok(start..start + size)
    }

    /// Every duel between a die under `winner` and a die under `loser`, seen
    /// from the `winner` side.
    pub fn group_duel(&self, winner: &[u8], loser: &[u8]) -> Result<GroupDuel> {
        let a = self.subtree_range(winner)?;
        let b = self.subtree_range(loser)?;
        let dice = &self.dice;
        let stats = a
            .into_par_iter()
            .map(|i| {
                let mut g = GroupDuel::empty();
                for j in b.clone() {
                    let r = duel_counts(&dice[i], &dice[j])?.to_result();
                    g.absorb(r.p_win, r.p_tie);
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(stats.into_iter().fold(GroupDuel::empty(), GroupDuel::merge))
    }
}

/// Extremes of the win probability over all cross-group duels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupDuel {
    pub pairs: u64,
    pub min_win: Rational,
    pub max_win: Rational,
    pub max_tie: Rational,
}

impl GroupDuel {
    fn empty() -> Self {
        GroupDuel {
            pairs: 0,
            min_win: Rational::new(1, 1),
            max_win: Rational::new(0, 1),
            max_tie: Rational::new(0, 1),
        }
    }

    fn absorb(&mut self, win: Rational, tie: Rational) {
        self.pairs += 1;
        self.min_win = self.min_win.min(win);
        self.max_win = self.max_win.max(win);
        self.max_tie = self.max_tie.max(tie);
    }

    fn merge(self, other: GroupDuel) -> GroupDuel {
        GroupDuel {
            pairs: self.pairs + other.pairs,
            min_win: self.min_win.min(other.min_win),
            max_win: self.max_win.max(other.max_win),
            max_tie: self.max_tie.max(other.max_tie),
        }
    }

    /// Every cross pair is exactly `(p, 0, 1 - p)`.
    pub fn is_exactly(&self, p: Rational) -> bool {
        self.pairs > 0
            && self.min_win == p
            && self.max_win == p
            && self.max_tie == Rational::new(0, 1)
    }
}
