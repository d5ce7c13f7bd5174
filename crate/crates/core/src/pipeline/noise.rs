//! Seeded substitution / insertion / deletion channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nucleotide::{DnaSeq, Nucleotide};

/// Per-nucleotide error probabilities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub substitution: f64,
    pub insertion: f64,
    pub deletion: f64,
}

impl ErrorRates {
    pub fn substitution(rate: f64) -> Self {
        Self { substitution: rate, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        let all = [self.substitution, self.insertion, self.deletion];
        if all.iter().any(|r| !(0.0..=1.0).contains(r)) || all.iter().sum::<f64>() > 1.0 {
            return Err(Error::Config(format!("error rates must lie in [0, 1] and sum to at most 1: {self:?}")));
        }
        Ok(())
    }
}

/// Counts of the mutations applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationLog {
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
}

/// Each nucleotide is independently deleted, substituted by a different
/// nucleotide, or preceded by a random inserted one.
pub fn inject_errors(strands: &[DnaSeq], rates: ErrorRates, seed: u64) -> Result<(Vec<DnaSeq>, MutationLog)> {
    rates.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = MutationLog::default();
    let out = strands
        .iter()
        .map(|s| {
            let mut m = DnaSeq::with_capacity(s.len() + 2);
            for &n in s.iter() {
                let u: f64 = rng.gen();
                if u < rates.deletion {
                    log.deletions += 1;
                } else if u < rates.deletion + rates.substitution {
                    m.push(n.rotate(rng.gen_range(1..4)));
                    log.substitutions += 1;
                } else if u < rates.deletion + rates.substitution + rates.insertion {
                    m.push(Nucleotide::from_index(rng.gen_range(0..4)));
                    m.push(n);
                    log.insertions += 1;
                } else {
                    m.push(n);
                }
            }
            m
        })
        .collect();
    Ok((out, log))
}
