//! The Lo Shu square, digit assignments, and assignment stacks.
//!
//! A [`DigitAssignment`] is a 3×3 table of distinct digits indexed by
//! `(subset, rank)`. Level 1 of a family uses an assignment with the
//! *leading* property (each subset beats the next in 5 of 9 all-pairs
//! comparisons); deeper levels need only the *rank-wise* property (each subset
//! beats the next at 2 of the 3 ranks). Subsets cycle `0 → 1 → 2 → 0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dice::{Alphabet, Digit};
use crate::error::{Error, Result};

/// The standard Lo Shu square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoShuSquare {
    rows: [[u8; 3]; 3],
}

impl LoShuSquare {
    pub const ROWS: [[u8; 3]; 3] = [[4, 9, 2], [3, 5, 7], [8, 1, 6]];

    pub const fn standard() -> Self {
        LoShuSquare { rows: Self::ROWS }
    }

    pub fn rows(&self) -> &[[u8; 3]; 3] {
        &self.rows
    }

    /// Row, column and diagonal sums, in that order.
    pub fn line_sums(&self) -> [u32; 8] {
        let r = &self.rows;
        let v = |i: usize, j: usize| u32::from(r[i][j]);
        [
            v(0, 0) + v(0, 1) + v(0, 2),
            v(1, 0) + v(1, 1) + v(1, 2),
            v(2, 0) + v(2, 1) + v(2, 2),
            v(0, 0) + v(1, 0) + v(2, 0),
            v(0, 1) + v(1, 1) + v(2, 1),
            v(0, 2) + v(1, 2) + v(2, 2),
            v(0, 0) + v(1, 1) + v(2, 2),
            v(0, 2) + v(1, 1) + v(2, 0),
        ]
    }

    pub fn is_magic(&self) -> bool {
        let mut seen = [false; 10];
        for &d in self.rows.iter().flatten() {
            if !(1..=9).contains(&d) || seen[d as usize] {
                return false;
            }
            seen[d as usize] = true;
        }
        self.line_sums().iter().all(|&s| s == 15)
    }
}

impl Default for LoShuSquare {
    fn default() -> Self {
        Self::standard()
    }
}

/// `table[subset][rank]`, nine pairwise distinct digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DigitAssignment {
    table: [[Digit; 3]; 3],
}

impl DigitAssignment {
    pub fn new(table: [[u8; 3]; 3]) -> Result<Self> {
        Self::with_alphabet(table, Alphabet::LoShu)
    }

    pub fn with_alphabet(table: [[u8; 3]; 3], alphabet: Alphabet) -> Result<Self> {
        let mut seen = [false; 10];
        let mut digits = [[Digit::new(1)?; 3]; 3];
        for (s, row) in table.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                let d = Digit::with_alphabet(v, alphabet)?;
                if seen[v as usize] {
                    return Err(Error::RepeatedDigit(v));
                }
                seen[v as usize] = true;
                digits[s][i] = d;
            }
        }
        Ok(DigitAssignment { table: digits })
    }

    pub fn get(&self, subset: usize, rank: usize) -> Digit {
        self.table[subset][rank]
    }

    pub fn subset(&self, subset: usize) -> [u8; 3] {
        self.table[subset].map(Digit::get)
    }

    pub fn table(&self) -> [[u8; 3]; 3] {
        self.table.map(|row| row.map(Digit::get))
    }
}

impl fmt::Display for DigitAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..3 {
            if s > 0 {
                f.write_str(";")?;
            }
            let [a, b, c] = self.subset(s);
            write!(f, "{a},{b},{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitAssignment {
    type Err = Error;

    /// `2,4,9;1,6,8;3,5,7`
    fn from_str(s: &str) -> Result<Self> {
        let mut table = [[0u8; 3]; 3];
        let subsets: Vec<&str> = s.split(';').collect();
        if subsets.len() != 3 {
            return Err(Error::parse(0, "expected three `;`-separated triples"));
        }
        let mut offset = 0;
        for (si, subset) in subsets.iter().enumerate() {
            let digits: Vec<&str> = subset.split(',').collect();
            if digits.len() != 3 {
                return Err(Error::parse(offset, "expected three `,`-separated digits"));
            }
            for (ri, d) in digits.iter().enumerate() {
                table[si][ri] = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(offset, format!("bad digit `{}`", d.trim())))?;
            }
            offset += subset.len() + 1;
        }
        Self::new(table)
    }
}

/// P1: the Lo Shu rows sorted ascending, `(2,4,9), (1,6,8), (3,5,7)`, ordered
/// so that each subset beats the next.
pub fn sorted_rows() -> DigitAssignment {
    DigitAssignment::new([[2, 4, 9], [1, 6, 8], [3, 5, 7]]).expect("constant assignment")
}

/// P2: residue classes mod 3, `(2,8,5), (9,6,3), (4,1,7)`. Rank-wise only.
pub fn residue_classes() -> DigitAssignment {
    DigitAssignment::new([[2, 8, 5], [9, 6, 3], [4, 1, 7]]).expect("constant assignment")
}

/// P3: each sorted row reordered min, max, middle: `(2,9,4), (1,8,6), (3,7,5)`.
pub fn rotated_rows() -> DigitAssignment {
    DigitAssignment::new([[2, 9, 4], [1, 8, 6], [3, 7, 5]]).expect("constant assignment")
}

/// Cyclic left rotation of every subset: `out[s][i] = a[s][(i + r) % 3]`.
pub fn rotate(a: &DigitAssignment, r: usize) -> DigitAssignment {
    let mut table = a.table;
    for (s, row) in table.iter_mut().enumerate() {
        for (i, d) in row.iter_mut().enumerate() {
            *d = a.table[s][(i + r) % 3];
        }
    }
    DigitAssignment { table }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// Subset `s` beats subset `s+1` in 5 of 9 all-pairs comparisons.
    Leading,
    /// Subset `s` beats subset `s+1` at 2 of 3 ranks.
    RankWise,
}

impl Predicate {
    pub const fn expected(self) -> usize {
        match self {
            Predicate::Leading => 5,
            Predicate::RankWise => 2,
        }
    }

    pub const fn out_of(self) -> usize {
        match self {
            Predicate::Leading => 9,
            Predicate::RankWise => 3,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Leading => "leading",
            Predicate::RankWise => "rank-wise",
        })
    }
}

/// The counterexample produced when an assignment fails a predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error(
    "{predicate} predicate violated{}: subset {winner} beats subset {loser} in {count} of {} comparisons, expected {}",
    level.map(|l| format!(" at level {l}")).unwrap_or_default(),
    predicate.out_of(),
    predicate.expected()
)]
pub struct PredicateViolation {
    pub predicate: Predicate,
    pub winner: usize,
    pub loser: usize,
    pub count: usize,
    /// Stack level (1-based) when raised during stack validation.
    pub level: Option<usize>,
}

fn check(
    a: &DigitAssignment,
    predicate: Predicate,
    count: impl Fn(&[Digit; 3], &[Digit; 3]) -> usize,
) -> Result<(), PredicateViolation> {
    for s in 0..3 {
        let t = (s + 1) % 3;
        let n = count(&a.table[s], &a.table[t]);
        if n != predicate.expected() {
            return Err(PredicateViolation {
                predicate,
                winner: s,
                loser: t,
                count: n,
                level: None,
            });
        }
    }
    Ok(())
}

pub fn validate_leading(a: &DigitAssignment) -> Result<(), PredicateViolation> {
    check(a, Predicate::Leading, |x, y| {
        x.iter().map(|d| y.iter().filter(|e| d > e).count()).sum()
    })
}

pub fn validate_rankwise(a: &DigitAssignment) -> Result<(), PredicateViolation> {
    check(a, Predicate::RankWise, |x, y| {
        x.iter().zip(y).filter(|(d, e)| d > e).count()
    })
}

/// How one level of a stack picks its assignment.
///
/// With `rotation = Some(j)` the level uses `rotate(base, w_j)`, where `w_j` is
/// the trit at 1-based word position `j` (which must precede this level).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelRule {
    base: DigitAssignment,
    rotation: Option<usize>,
    variants: [DigitAssignment; 3],
}

impl LevelRule {
    pub fn uniform(base: DigitAssignment) -> Self {
        LevelRule {
            base,
            rotation: None,
            variants: [base; 3],
        }
    }

    pub fn rotated_by(base: DigitAssignment, position: usize) -> Self {
        LevelRule {
            base,
            rotation: Some(position),
            variants: [rotate(&base, 0), rotate(&base, 1), rotate(&base, 2)],
        }
    }

    pub fn base(&self) -> &DigitAssignment {
        &self.base
    }

    pub fn rotation(&self) -> Option<usize> {
        self.rotation
    }

    /// Assignment for a die whose word starts with `prefix`.
    pub fn assignment(&self, prefix: &[u8]) -> &DigitAssignment {
        match self.rotation {
            Some(j) => &self.variants[prefix[j - 1] as usize],
            None => &self.base,
        }
    }

    /// Every assignment this rule can produce.
    pub fn variants(&self) -> &[DigitAssignment] {
        match self.rotation {
            Some(_) => &self.variants,
            None => std::slice::from_ref(&self.base),
        }
    }
}

impl fmt::Display for LevelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if let Some(j) = self.rotation {
            write!(f, " rot=w{j}")?;
        }
        Ok(())
    }
}

impl FromStr for LevelRule {
    type Err = Error;

    /// `2,4,9;1,6,8;3,5,7` or `2,9,4;1,8,6;3,7,5 rot=w2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (table, rot) = match s.split_once(char::is_whitespace) {
            Some((t, r)) => (t, Some(r.trim())),
            None => (s, None),
        };
        let base: DigitAssignment = table.parse()?;
        match rot {
            None => Ok(LevelRule::uniform(base)),
            Some(r) => {
                let pos = r
                    .strip_prefix("rot=w")
                    .and_then(|p| p.parse::<usize>().ok())
                    .ok_or_else(|| {
                        Error::parse(table.len() + 1, format!("expected `rot=w<j>`, got `{r}`"))
                    })?;
                Ok(LevelRule::rotated_by(base, pos))
            }
        }
    }
}

/// One rule per level, level 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssignmentStack {
    levels: Vec<LevelRule>,
}

impl AssignmentStack {
    /// Validates level 1 against the leading predicate and every assignment a
    /// deeper level can produce against the rank-wise predicate.
    pub fn new(levels: Vec<LevelRule>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidStack(
                "a stack needs at least one level".into(),
            ));
        }
        for (idx, rule) in levels.iter().enumerate() {
            let level = idx + 1;
            if let Some(j) = rule.rotation {
                if j == 0 || j >= level {
                    return Err(Error::InvalidStack(format!(
                        "level {level} rotates by word position {j}, which must be in 1..{level}"
                    )));
                }
            }
            for a in rule.variants() {
                let checked = if level == 1 {
                    validate_leading(a)
                } else {
                    validate_rankwise(a)
                };
                checked.map_err(|mut v| {
                    v.level = Some(level);
                    Error::Predicate(v)
                })?;
            }
        }
        Ok(AssignmentStack { levels })
    }

    /// `depth` copies of P1.
    pub fn uniform(assignment: DigitAssignment, depth: usize) -> Result<Self> {
        Self::new(vec![LevelRule::uniform(assignment); depth])
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[LevelRule] {
        &self.levels
    }

    /// Assignment used at 1-based `level` for a word starting with `prefix`.
    pub fn assignment(&self, level: usize, prefix: &[u8]) -> &DigitAssignment {
        self.levels[level - 1].assignment(prefix)
    }

    pub fn is_uniform(&self) -> bool {
        self.levels.iter().all(|l| l.rotation.is_none())
    }

    /// One level descriptor per line.
    pub fn descriptors(&self) -> Vec<String> {
        self.levels.iter().map(ToString::to_string).collect()
    }

    /// Reads the line-oriented stack format. Lines starting with `#` and blank
    /// lines are skipped; parse positions refer to the whole text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut levels = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                let lead = line.len() - line.trim_start().len();
                let rule = trimmed.parse::<LevelRule>().map_err(|e| match e {
                    Error::Parse { position, message } => {
                        Error::parse(offset + lead + position, message)
                    }
                    other => other,
                })?;
                levels.push(rule);
            }
            offset += line.len();
        }
        Self::new(levels)
    }
}

impl fmt::Display for AssignmentStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in &self.levels {
            writeln!(f, "{level}")?;
        }
        Ok(())
    }
}

impl FromStr for AssignmentStack {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Built-in stacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// The three base dice.
    Paper1,
    /// Nine dice: `[P1, P1]`.
    Paper2,
    /// Twenty-seven dice: `[P1, P2, P3 rotated by w2]`.
    Paper3,
    /// `[P1; k]`.
    Uniform(usize),
}

impl Preset {
    pub fn depth(&self) -> usize {
        match self {
            Preset::Paper1 => 1,
            Preset::Paper2 => 2,
            Preset::Paper3 => 3,
            Preset::Uniform(k) => *k,
        }
    }

    pub fn stack(&self) -> Result<AssignmentStack> {
        let p1 = LevelRule::uniform(sorted_rows());
        match self {
            Preset::Paper1 => AssignmentStack::new(vec![p1]),
            Preset::Paper2 => AssignmentStack::new(vec![p1.clone(), p1]),
            Preset::Paper3 => AssignmentStack::new(vec![
                p1,
                LevelRule::uniform(residue_classes()),
                LevelRule::rotated_by(rotated_rows(), 2),
            ]),
            Preset::Uniform(k) => AssignmentStack::uniform(sorted_rows(), *k),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Paper1 => f.write_str("paper-1"),
            Preset::Paper2 => f.write_str("paper-2"),
            Preset::Paper3 => f.write_str("paper-3"),
            Preset::Uniform(k) => write!(f, "uniform-{k}"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-1" => Ok(Preset::Paper1),
            "paper-2" => Ok(Preset::Paper2),
            "paper-3" => Ok(Preset::Paper3),
            _ => s
                .strip_prefix("uniform-")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(Preset::Uniform)
                .ok_or_else(|| Error::UnknownPreset(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lo_shu_is_magic() {
        let sq = LoShuSquare::standard();
        assert!(sq.is_magic());
        assert_eq!(sq.line_sums(), [15; 8]);
        let broken = LoShuSquare {
            rows: [[4, 9, 2], [3, 5, 7], [8, 6, 1]],
        };
        assert!(!broken.is_magic());
    }

    #[test]
    fn sorted_rows_are_the_base_dice() {
        let p1 = sorted_rows();
        assert_eq!(p1.subset(0), [2, 4, 9]);
        assert_eq!(p1.subset(1), [1, 6, 8]);
        assert_eq!(p1.subset(2), [3, 5, 7]);
        // Die B of the cycle carries square row C and vice versa.
        for (s, row) in [0, 2, 1].into_iter().zip(LoShuSquare::ROWS) {
            let mut sorted = row;
            sorted.sort();
            assert_eq!(p1.subset(s), sorted);
        }
    }

    #[test]
    fn predicates_on_known_assignments() {
        assert!(validate_leading(&sorted_rows()).is_ok());
        assert!(validate_rankwise(&sorted_rows()).is_ok());
        assert!(validate_rankwise(&residue_classes()).is_ok());
        assert!(validate_rankwise(&rotated_rows()).is_ok());

        let v = validate_leading(&residue_classes()).unwrap_err();
        assert_eq!(v.predicate, Predicate::Leading);
        assert_eq!((v.winner, v.loser, v.count), (0, 1, 3));

        let ordered = DigitAssignment::new([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        assert_eq!(validate_leading(&ordered).unwrap_err().count, 0);
    }

    #[test]
    fn assignment_rejects_repeats_and_bad_digits() {
        assert_eq!(
            DigitAssignment::new([[2, 4, 9], [1, 6, 8], [3, 5, 2]]),
            Err(Error::RepeatedDigit(2))
        );
        assert!(DigitAssignment::new([[0, 4, 9], [1, 6, 8], [3, 5, 7]]).is_err());
        assert!(DigitAssignment::with_alphabet(
            [[0, 4, 9], [1, 6, 8], [3, 5, 7]],
            Alphabet::Decimal
        )
        .is_ok());
    }

    #[test]
    fn rotate_examples() {
        let p3 = rotated_rows();
        assert_eq!(rotate(&p3, 0), p3);
        assert_eq!(rotate(&p3, 1).subset(0), [9, 4, 2]);
        assert_eq!(rotate(&p3, 2).subset(1), [6, 1, 8]);
        assert_eq!(rotate(&rotate(&p3, 1), 2), p3);
    }

    #[test]
    fn presets() {
        let p2 = Preset::Paper2.stack().unwrap();
        for prefix in [[0u8], [1], [2]] {
            assert_eq!(*p2.assignment(2, &prefix), sorted_rows());
        }
        let p3 = Preset::Paper3.stack().unwrap();
        assert_eq!(*p3.assignment(3, &[0, 1]), rotate(&rotated_rows(), 1));
        assert_eq!(*p3.assignment(3, &[2, 1]), rotate(&rotated_rows(), 1));
        assert_eq!(*p3.assignment(2, &[2]), residue_classes());
        let u4 = Preset::Uniform(4).stack().unwrap();
        assert_eq!(u4.depth(), 4);
        assert_eq!(*u4.assignment(4, &[2, 1, 0]), sorted_rows());
        assert!(u4.is_uniform());
        assert!(!p3.is_uniform());
    }

    #[test]
    fn preset_names() {
        for p in [
            Preset::Paper1,
            Preset::Paper2,
            Preset::Paper3,
            Preset::Uniform(7),
        ] {
            assert_eq!(p.to_string().parse::<Preset>().unwrap(), p);
        }
        assert!(matches!(
            "paper-4".parse::<Preset>(),
            Err(Error::UnknownPreset(_))
        ));
        assert!("uniform-0".parse::<Preset>().is_err());
        assert!("uniform".parse::<Preset>().is_err());
    }

    #[test]
    fn stack_validation_names_the_failure() {
        // P2 at level 1 fails the leading predicate.
        let err = AssignmentStack::new(vec![LevelRule::uniform(residue_classes())]).unwrap_err();
        match err {
            Error::Predicate(v) => {
                assert_eq!(v.predicate, Predicate::Leading);
                assert_eq!(v.level, Some(1));
                assert_eq!(v.count, 3);
                assert!(v.to_string().contains("at level 1"));
            }
            other => panic!("unexpected {other:?}"),
        }
        // Transitive rows fail rank-wise at level 2.
        let ordered = DigitAssignment::new([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let err = AssignmentStack::new(vec![
            LevelRule::uniform(sorted_rows()),
            LevelRule::uniform(ordered),
        ])
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Predicate(PredicateViolation {
                predicate: Predicate::RankWise,
                level: Some(2),
                ..
            })
        ));
        // Rotation must refer to an earlier position.
        assert!(AssignmentStack::new(vec![
            LevelRule::uniform(sorted_rows()),
            LevelRule::rotated_by(sorted_rows(), 2),
        ])
        .is_err());
        assert!(AssignmentStack::new(vec![]).is_err());
    }

    #[test]
    fn stack_file_format() {
        let text = "# paper-3\n2,4,9;1,6,8;3,5,7\n\n2,8,5;9,6,3;4,1,7\n2,9,4;1,8,6;3,7,5 rot=w2\n";
        let stack = AssignmentStack::parse(text).unwrap();
        assert_eq!(stack, Preset::Paper3.stack().unwrap());
        assert_eq!(
            stack.to_string(),
            "2,4,9;1,6,8;3,5,7\n2,8,5;9,6,3;4,1,7\n2,9,4;1,8,6;3,7,5 rot=w2\n"
        );
        assert_eq!(stack.to_string().parse::<AssignmentStack>().unwrap(), stack);
    }

    #[test]
    fn stack_file_errors() {
        assert!(matches!(
            AssignmentStack::parse("2,4,9;1,6,8"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            AssignmentStack::parse("2,4,9;1,6,8;3,5,7 spin=2"),
            Err(Error::Parse { .. })
        ));
        match AssignmentStack::parse("2,4,9;1,6,8;3,5,7\n1,2,3;4,5,6;7,8,9") {
            Err(Error::Predicate(v)) => assert_eq!(v.level, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
