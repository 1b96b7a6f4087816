use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dice::{Die, FaceValue};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationEstimate {
    pub trials: u64,
    pub wins: u64,
    pub ties: u64,
    pub losses: u64,
}

impl SimulationEstimate {
    pub fn win_frequency(&self) -> f64 {
        self.wins as f64 / self.trials as f64
    }

    pub fn tie_frequency(&self) -> f64 {
        self.ties as f64 / self.trials as f64
    }
}

fn expand(die: &Die) -> Vec<&FaceValue> {
    die.faces()
        .iter()
        .flat_map(|(f, m)| std::iter::repeat_n(f, *m as usize))
        .collect()
}

/// Rolls both dice `trials` times with a ChaCha8 stream seeded from `seed`.
pub fn monte_carlo(x: &Die, y: &Die, trials: u64, seed: u64) -> Result<SimulationEstimate> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if x.width() != y.width() {
        return Err(Error::IncomparableFaces {
            left: x.width(),
            right: y.width(),
        });
    }
    let (xs, ys) = (expand(x), expand(y));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut est = SimulationEstimate {
        trials,
        wins: 0,
        ties: 0,
        losses: 0,
    };
    for _ in 0..trials {
        let f = xs[rng.random_range(0..xs.len())];
        let g = ys[rng.random_range(0..ys.len())];
        match f.cmp(g) {
            std::cmp::Ordering::Greater => est.wins += 1,
            std::cmp::Ordering::Equal => est.ties += 1,
            std::cmp::Ordering::Less => est.losses += 1,
        }
    }
    Ok(est)
}
