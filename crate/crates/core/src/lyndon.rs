//! Lyndon words: predicate, Duval factorization and least rotation.
//!
//! All positions in [`FactorSpan`] are 1-based and inclusive. Bytes are
//! ordered by unsigned value.

use std::cmp::Ordering;
use std::ops::Range;

use crate::error::{Error, Result};

/// A factor `text[start..=end]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSpan {
    pub start: usize,
    pub end: usize,
}

impl FactorSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start >= 1 && start <= end, "bad span {start}..={end}");
        FactorSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Zero-based byte range of the span.
    pub fn range(&self) -> Range<usize> {
        self.start - 1..self.end
    }

    pub fn slice<'t>(&self, text: &'t [u8]) -> &'t [u8] {
        &text[self.range()]
    }

    /// Smallest span covering both `self` and `other`.
    pub fn join(&self, other: &FactorSpan) -> FactorSpan {
        FactorSpan::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn check(&self, text_len: usize) -> Result<()> {
        if self.start >= 1 && self.start <= self.end && self.end <= text_len {
            Ok(())
        } else {
            Err(Error::InvalidSpan {
                start: self.start,
                end: self.end,
                len: text_len,
            })
        }
    }
}

/// Chen-Fox-Lyndon factorization: spans tiling the text left to right, each a
/// Lyndon word, in non-increasing lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    spans: Vec<FactorSpan>,
}

impl Factorization {
    pub fn spans(&self) -> &[FactorSpan] {
        &self.spans
    }

    /// Number of factors.
    pub fn k(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Length of the longest factor, 0 for the empty text.
    pub fn max_len(&self) -> usize {
        self.spans.iter().map(FactorSpan::len).max().unwrap_or(0)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FactorSpan> {
        self.spans.iter()
    }

    pub fn factors<'t>(&self, text: &'t [u8]) -> Vec<&'t [u8]> {
        self.spans.iter().map(|s| s.slice(text)).collect()
    }

    /// True when a factor ends at 1-based position `pos` (or `pos` is 0).
    pub fn is_boundary(&self, pos: usize) -> bool {
        pos == 0 || self.spans.binary_search_by_key(&pos, |s| s.end).is_ok()
    }
}

impl FromIterator<FactorSpan> for Factorization {
    fn from_iter<I: IntoIterator<Item = FactorSpan>>(iter: I) -> Self {
        Factorization {
            spans: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Factorization {
    type Item = &'a FactorSpan;
    type IntoIter = std::slice::Iter<'a, FactorSpan>;

    fn into_iter(self) -> Self::IntoIter {
        self.spans.iter()
    }
}

/// Duval's factorization as an iterator: each span is yielded as soon as it
/// is final, left to right. Uses constant extra state.
#[derive(Debug, Clone)]
pub struct Duval<'t> {
    text: &'t [u8],
    i: usize,
    // (period, last start) of a run of equal factors still being emitted
    run: Option<(usize, usize)>,
    comparisons: usize,
}

impl<'t> Duval<'t> {
    pub fn new(text: &'t [u8]) -> Self {
        Duval {
            text,
            i: 0,
            run: None,
            comparisons: 0,
        }
    }

    /// Symbol comparisons performed so far.
    pub fn comparisons(&self) -> usize {
        self.comparisons
    }
}

impl Iterator for Duval<'_> {
    type Item = FactorSpan;

    fn next(&mut self) -> Option<FactorSpan> {
        let text = self.text;
        let n = text.len();
        let i = self.i;
        let (period, last_start) = match self.run {
            Some(run) => run,
            None => {
                if i >= n {
                    return None;
                }
                let (mut j, mut k) = (i + 1, i);
                while j < n {
                    self.comparisons += 1;
                    match text[k].cmp(&text[j]) {
                        Ordering::Less => k = i,
                        Ordering::Equal => k += 1,
                        Ordering::Greater => break,
                    }
                    j += 1;
                }
                let run = (j - k, k);
                self.run = Some(run);
                run
            }
        };
        self.i += period;
        if self.i > last_start {
            self.run = None;
        }
        Some(FactorSpan::new(i + 1, i + period))
    }
}

/// Lyndon factorization of `text`. The empty text has no factors.
pub fn duval_factorize(text: &[u8]) -> Factorization {
    Duval::new(text).collect()
}

/// Like [`duval_factorize`], also returning the number of symbol comparisons.
pub fn duval_factorize_counted(text: &[u8]) -> (Factorization, usize) {
    let mut duval = Duval::new(text);
    let fact = duval.by_ref().collect();
    (fact, duval.comparisons())
}

/// A word is Lyndon iff Duval's scan from position 0 swallows it whole as a
/// single factor.
pub fn is_lyndon(word: &[u8]) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    let (mut j, mut k) = (1, 0);
    while j < n {
        match word[k].cmp(&word[j]) {
            Ordering::Less => k = 0,
            Ordering::Equal => k += 1,
            Ordering::Greater => return false,
        }
        j += 1;
    }
    j - k == n
}

/// Length of the primitive root of `word` (`word = root^e`).
pub fn primitive_root_len(word: &[u8]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    // KMP border of the whole word
    let mut fail = vec![0usize; n];
    let mut b = 0;
    for i in 1..n {
        while b > 0 && word[i] != word[b] {
            b = fail[b - 1];
        }
        if word[i] == word[b] {
            b += 1;
        }
        fail[i] = b;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

pub fn is_primitive(word: &[u8]) -> bool {
    !word.is_empty() && primitive_root_len(word) == word.len()
}

/// Lexicographically least rotation and the smallest shift producing it.
pub fn least_rotation(word: &[u8]) -> Result<(Vec<u8>, usize)> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let at = |x: usize| word[x % n];
    // Duval over the doubled word; the last factor start below n begins a
    // least rotation.
    let mut i = 0;
    let mut best = 0;
    while i < n {
        best = i;
        let (mut j, mut k) = (i + 1, i);
        while j < 2 * n && at(k) <= at(j) {
            if at(k) < at(j) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            i += j - k;
        }
    }
    let shift = best % primitive_root_len(word);
    let mut rotation = Vec::with_capacity(n);
    rotation.extend_from_slice(&word[shift..]);
    rotation.extend_from_slice(&word[..shift]);
    Ok((rotation, shift))
}
