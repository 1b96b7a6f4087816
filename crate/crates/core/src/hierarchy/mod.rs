//! Recursive family generation and exhaustive verification.
//!
//! For two distinct words first differing at position `m`, the six
//! off-diagonal face pairs are decided by the level-1 digits of one subset
//! (three each way), and the three same-rank pairs are decided at level `m`,
//! where the rank-wise predicate gives the cycle winner two of them. That is
//! 5 of 9, for every pair in the family.

mod family;
mod montecarlo;
mod verify;
mod word;

pub use family::{face_value, generate, DiceFamily, GroupDuel};
pub use montecarlo::{monte_carlo, SimulationEstimate};
pub use verify::{
    is_exact_cycle, target_probability, verify_family, verify_family_with, LevelSummary,
    PairFailure, VerificationReport, VerifyOptions,
};
pub use word::{cycle_beats, predicted_winner, Word};
