//! Self-similar nontransitive dice families built from the Lo Shu magic square.
//!
//! Three dice whose faces are the (sorted) rows of the Lo Shu square beat one
//! another in a cycle with probability 5/9. This crate nests that cycle: a
//! depth-`k` family has `3^k` dice addressed by ternary [`Word`]s, and any two
//! dice duel at exactly 5/9 in favour of the die whose subset wins at the first
//! position where their words differ.
//!
//! The crate is organised bottom-up:
//!
//! * [`dice`]: faces, dice, exact duels, and deterministic round-robins.
//! * [`loshu`]: the square, digit assignments, and the two validity predicates.
//! * [`hierarchy`]: family generation, the winner rule, and exhaustive verification.
//! * [`export`]: dominance graphs, DOT, family JSON, tables, and normalized points.
//!
//! ```
//! use metadice::{generate, verify_family, Preset};
//!
//! let stack = Preset::Paper3.stack().unwrap();
//! let family = generate(&stack, 2).unwrap();
//! let report = verify_family(&family);
//! assert!(report.passed());
//! assert_eq!(report.pairs_checked, 351);
//! ```

pub mod dice;
pub mod error;
pub mod export;
pub mod hierarchy;
pub mod loshu;

pub use dice::{
    beats, compare_faces, duel, round_robin, Alphabet, Die, Digit, DuelCounts, DuelResult,
    FaceValue, Rational,
};
pub use error::{Error, Result};
pub use hierarchy::{
    face_value, generate, monte_carlo, predicted_winner, verify_family, verify_family_with,
    DiceFamily, GroupDuel, LevelSummary, PairFailure, SimulationEstimate, VerificationReport,
    VerifyOptions, Word,
};
pub use loshu::{
    residue_classes, rotate, rotated_rows, sorted_rows, validate_leading, validate_rankwise,
    AssignmentStack, DigitAssignment, LevelRule, LoShuSquare, Predicate, PredicateViolation,
    Preset,
};
