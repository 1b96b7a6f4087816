use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::family::DiceFamily;
use super::word::{winner_side, Word};
use crate::dice::{duel_counts, DuelResult, Rational};

/// The probability every pair in a valid family duels at.
pub fn target_probability() -> Rational {
    Rational::new(5, 9)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Keep at most this many failures in the report (the lowest pairs in
    /// paper order). `failure_count` is always exact.
    pub failure_limit: Option<usize>,
}

/// A pair that did not duel at exactly 5/9 for its predicted winner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub first: Word,
    pub second: Word,
    pub expected_winner: Word,
    /// `duel(first, second)`.
    pub observed: DuelResult,
}

/// Pairs whose words first differ at `level` (1-based): the cross-subtree
/// duels between the three sibling groups under every level-`level - 1` prefix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    /// Number of sibling triples (`3^(level-1)`).
    pub groups: u64,
    pub pairs: u64,
    pub failures: u64,
}

impl LevelSummary {
    /// Every sibling triple at this level forms a 5/9 three-cycle.
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub depth: usize,
    pub pairs_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<PairFailure>,
    pub levels: Vec<LevelSummary>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Duels every unordered pair and checks it against the winner rule.
pub fn verify_family(family: &DiceFamily) -> VerificationReport {
    verify_family_with(family, &VerifyOptions::default())
}

pub fn verify_family_with(family: &DiceFamily, options: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let k = family.depth();
    let words: Vec<Word> = Word::all(k).collect();
    let dice = family.dice();
    let target = target_probability();

    struct Partial {
        pairs: Vec<u64>,
        failed: Vec<u64>,
        failures: Vec<PairFailure>,
    }

    let partials: Vec<Partial> = (0..dice.len())
        .into_par_iter()
        .map(|i| {
            let mut p = Partial {
                pairs: vec![0; k],
                failed: vec![0; k],
                failures: Vec::new(),
            };
            for j in i + 1..dice.len() {
                let (w, v) = (&words[i], &words[j]);
                let level = w
                    .first_difference(v)
                    .expect("equal lengths")
                    .expect("distinct words");
                p.pairs[level] += 1;
                let first_wins =
                    winner_side(w, v).expect("equal lengths") == Some(Ordering::Greater);
                let ok = match duel_counts(&dice[i], &dice[j]) {
                    Ok(c) => {
                        let seen = if first_wins {
                            c
                        } else {
                            crate::dice::DuelCounts {
                                win: c.loss,
                                tie: c.tie,
                                loss: c.win,
                            }
                        };
                        if seen.is_exact_win(target) {
                            None
                        } else {
                            Some(c.to_result())
                        }
                    }
                    // Unreachable for families built through `from_dice`.
                    Err(_) => Some(DuelResult {
                        p_win: Rational::new(0, 1),
                        p_tie: Rational::new(1, 1),
                        p_loss: Rational::new(0, 1),
                    }),
                };
                if let Some(observed) = ok {
                    p.failed[level] += 1;
                    if options.failure_limit.is_none_or(|n| p.failures.len() < n) {
                        p.failures.push(PairFailure {
                            first: w.clone(),
                            second: v.clone(),
                            expected_winner: if first_wins { w.clone() } else { v.clone() },
                            observed,
                        });
                    }
                }
            }
            p
        })
        .collect();

    let mut levels: Vec<LevelSummary> = (0..k)
        .map(|m| LevelSummary {
            level: m + 1,
            groups: 3u64.pow(m as u32),
            ..Default::default()
        })
        .collect();
    let mut failures = Vec::new();
    for p in partials {
        for (m, level) in levels.iter_mut().enumerate() {
            level.pairs += p.pairs[m];
            level.failures += p.failed[m];
        }
        for f in p.failures {
            if options.failure_limit.is_none_or(|n| failures.len() < n) {
                failures.push(f);
            }
        }
    }
    // Partials arrive in index order, so failures are already sorted by pair.
    debug_assert!(failures
        .windows(2)
        .all(|w| (&w[0].first, &w[0].second) < (&w[1].first, &w[1].second)));

    VerificationReport {
        depth: k,
        pairs_checked: levels.iter().map(|l| l.pairs).sum(),
        failure_count: levels.iter().map(|l| l.failures).sum(),
        failures,
        levels,
        elapsed: start.elapsed(),
    }
}

/// `a` beats `b` beats `c` beats `a`, each at exactly 5/9 with no ties.
pub fn is_exact_cycle(family: &DiceFamily, [a, b, c]: [u64; 3]) -> bool {
    let target = target_probability();
    let die = |n| family.die_number(n);
    let (Some(x), Some(y), Some(z)) = (die(a), die(b), die(c)) else {
        return false;
    };
    [(x, y), (y, z), (z, x)].iter().all(|(p, q)| {
        duel_counts(p, q)
            .map(|c| c.is_exact_win(target))
            .unwrap_or(false)
    })
}
