//! Occurrence counting over a BWT sequence: `C(u, x)` (symbols smaller than
//! `x`) and `rank(u, x, t)` (occurrences of `x` in the first `t` symbols).
//!
//! Cumulative counts for all 256 symbols are sampled every `interval`
//! positions; a query adds the sample to a scan of at most `interval - 1`
//! symbols. The sentinel is byte 0 and therefore the smallest symbol.

use crate::error::{Error, Result};

pub const DEFAULT_CHECKPOINT: usize = 64;

const SIGMA: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDict {
    sequence: Vec<u8>,
    interval: usize,
    totals: [usize; SIGMA],
    // smaller[x] = number of symbols < x
    smaller: [usize; SIGMA],
    // checkpoint c holds counts of sequence[..c * interval], flattened
    checkpoints: Vec<u32>,
}

impl RankDict {
    pub fn build(sequence: &[u8]) -> Self {
        Self::with_interval(sequence, DEFAULT_CHECKPOINT)
    }

    pub fn with_interval(sequence: &[u8], interval: usize) -> Self {
        assert!(interval >= 1, "checkpoint interval must be positive");
        let mut dict = RankDict {
            sequence: Vec::with_capacity(sequence.len()),
            interval,
            totals: [0; SIGMA],
            smaller: [0; SIGMA],
            checkpoints: vec![0; SIGMA],
        };
        dict.extend(sequence);
        dict
    }

    /// Dictionary over `old sequence ++ suffix`.
    pub fn append(mut self, suffix: &[u8]) -> Self {
        self.extend(suffix);
        self
    }

    fn extend(&mut self, suffix: &[u8]) {
        assert!(
            self.sequence.len() + suffix.len() < u32::MAX as usize,
            "sequence too long for 32-bit checkpoints"
        );
        for &b in suffix {
            self.sequence.push(b);
            self.totals[b as usize] += 1;
            if self.sequence.len().is_multiple_of(self.interval) {
                self.checkpoints
                    .extend(self.totals.iter().map(|&c| c as u32));
            }
        }
        let mut acc = 0;
        for (s, &t) in self.smaller.iter_mut().zip(self.totals.iter()) {
            *s = acc;
            acc += t;
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[u8] {
        &self.sequence
    }

    pub fn interval(&self) -> usize {
        self.interval
    }

    pub fn total(&self, x: u8) -> usize {
        self.totals[x as usize]
    }

    /// Number of symbols in the sequence strictly smaller than `x`.
    pub fn count_smaller(&self, x: u8) -> usize {
        self.smaller[x as usize]
    }

    /// Occurrences of `x` among the first `t` symbols.
    pub fn rank(&self, x: u8, t: usize) -> Result<usize> {
        self.rank_scanned(x, t).map(|(r, _)| r)
    }

    /// [`rank`](Self::rank) plus the number of symbols scanned past the
    /// checkpoint, for work accounting.
    pub fn rank_scanned(&self, x: u8, t: usize) -> Result<(usize, usize)> {
        if t > self.sequence.len() {
            return Err(Error::RankOutOfBounds);
        }
        let c = t / self.interval;
        let from = c * self.interval;
        let base = self.checkpoints[c * SIGMA + x as usize] as usize;
        let scanned = &self.sequence[from..t];
        Ok((
            base + scanned.iter().filter(|&&b| b == x).count(),
            scanned.len(),
        ))
    }
}

impl Default for RankDict {
    fn default() -> Self {
        RankDict::build(&[])
    }
}
