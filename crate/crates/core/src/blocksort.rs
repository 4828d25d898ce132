//! Suffix array and BWT of a single block `u$`, where `u` is one or more
//! consecutive Lyndon factors of the text.
//!
//! Suffix array values are 1-based positions in the whole text; the bare
//! block sentinel is encoded as `span.end + 1`.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::lyndon::FactorSpan;
use crate::text::{Text, SENTINEL};

/// Orders the suffixes of a block.
pub trait SuffixSorter {
    /// Returns the 0-based start offsets `0..=block.len()` of the suffixes of
    /// `block$` in ascending order, offset `block.len()` being the bare `$`.
    fn sort_suffixes(&self, block: &[u8]) -> Vec<usize>;
}

/// Plain comparison sort on suffix slices. `O(m log m)` suffix comparisons,
/// each bounded by the longest common prefix.
#[derive(Debug, Default, Clone)]
pub struct ComparisonSorter {
    comparisons: Cell<u64>,
}

impl ComparisonSorter {
    /// Suffix comparisons performed so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons.get()
    }
}

impl SuffixSorter for ComparisonSorter {
    fn sort_suffixes(&self, block: &[u8]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..=block.len()).collect();
        let mut count = 0u64;
        // slices order a proper prefix first, which is the sentinel rule
        order.sort_unstable_by(|&a, &b| {
            count += 1;
            block[a..].cmp(&block[b..])
        });
        self.comparisons.set(self.comparisons.get() + count);
        order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSort {
    pub span: FactorSpan,
    /// 1-based global positions, length `span.len() + 1`.
    pub sa: Vec<usize>,
    pub bwt: Vec<u8>,
    /// 0-based row holding the sentinel character, i.e. the row of the full
    /// block suffix `u$`.
    pub sentinel_row: usize,
}

impl BlockSort {
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// 0-based offset of a global SA value inside the block.
    pub fn local(&self, global: usize) -> usize {
        global - self.span.start
    }
}

pub fn sort_block(text: &Text, span: FactorSpan) -> Result<BlockSort> {
    sort_block_with(&ComparisonSorter::default(), text, span)
}

pub fn sort_block_with<S: SuffixSorter + ?Sized>(
    sorter: &S,
    text: &Text,
    span: FactorSpan,
) -> Result<BlockSort> {
    span.check(text.len())?;
    let sa: Vec<usize> = sorter
        .sort_suffixes(span.slice(text))
        .into_iter()
        .map(|q| q + span.start)
        .collect();
    let bwt = block_bwt_from_sa(text, span, &sa)?;
    let sentinel_row = sa.iter().position(|&p| p == span.start).unwrap();
    Ok(BlockSort {
        span,
        sa,
        bwt,
        sentinel_row,
    })
}

/// BWT rows of the block `span` given its (globally shifted) suffix array.
pub fn block_bwt_from_sa(text: &[u8], span: FactorSpan, sa: &[usize]) -> Result<Vec<u8>> {
    span.check(text.len())?;
    let m = span.len();
    if sa.len() != m + 1 {
        return Err(Error::InvalidSuffixArray);
    }
    let mut seen = vec![false; m + 1];
    for &p in sa {
        if p < span.start || p > span.end + 1 || std::mem::replace(&mut seen[p - span.start], true)
        {
            return Err(Error::InvalidSuffixArray);
        }
    }
    Ok(sa
        .iter()
        .map(|&p| {
            if p == span.start {
                SENTINEL
            } else {
                text[p - 2]
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyndon::{duval_factorize, is_lyndon};
    use crate::oracle;
    use crate::text::render_bwt;
    use proptest::prelude::*;

    fn text(s: &str) -> Text {
        Text::try_from(s).unwrap()
    }

    #[test]
    fn first_factor_of_worked_example() {
        let t = text("aabcabbaabaabdabbaaabbdc");
        let b = sort_block(&t, FactorSpan::new(1, 7)).unwrap();
        assert_eq!(b.sa, [8, 1, 5, 2, 7, 6, 3, 4]);
        assert_eq!(render_bwt(&b.bwt), "b$cabaab");
        assert_eq!(b.sentinel_row, 1);
    }

    #[test]
    fn second_factor_is_shifted_by_seven() {
        let t = text("aabcabbaabaabdabbaaabbdc");
        let b = sort_block(&t, FactorSpan::new(8, 17)).unwrap();
        assert_eq!(b.sa, [18, 8, 11, 9, 15, 12, 17, 10, 16, 13, 14]);
        assert_eq!(render_bwt(&b.bwt), "b$badabaaab");
    }

    #[test]
    fn single_letter_block() {
        let b = sort_block(&text("a"), FactorSpan::new(1, 1)).unwrap();
        assert_eq!(b.sa, [2, 1]);
        assert_eq!(render_bwt(&b.bwt), "a$");
    }

    #[test]
    fn bwt_from_sa() {
        let t = text("aabcabb");
        let bwt = block_bwt_from_sa(&t, FactorSpan::new(1, 7), &[8, 1, 5, 2, 7, 6, 3, 4]).unwrap();
        assert_eq!(render_bwt(&bwt), "b$cabaab");
        assert_eq!(
            render_bwt(&block_bwt_from_sa(b"a", FactorSpan::new(1, 1), &[2, 1]).unwrap()),
            "a$"
        );
        let bwt = block_bwt_from_sa(b"ab", FactorSpan::new(1, 2), &[3, 1, 2]).unwrap();
        assert_eq!(render_bwt(&bwt), "b$a");
        assert_eq!(
            oracle::naive_sa(b"ab"),
            [3, 1, 2],
            "brute-force order of {{ab$, b$, $}}"
        );
    }

    #[test]
    fn bwt_from_sa_rejects_non_permutations() {
        let span = FactorSpan::new(1, 2);
        for bad in [
            &[3, 1][..],
            &[3, 1, 1],
            &[4, 1, 2],
            &[0, 1, 2],
            &[3, 1, 2, 2],
        ] {
            assert_eq!(
                block_bwt_from_sa(b"ab", span, bad),
                Err(Error::InvalidSuffixArray)
            );
        }
        assert_eq!(
            Error::InvalidSuffixArray.to_string(),
            "invalid suffix array"
        );
    }

    #[test]
    fn rejects_span_outside_text() {
        assert!(sort_block(&text("ab"), FactorSpan::new(2, 3)).is_err());
    }

    #[test]
    fn sorter_counts_comparisons() {
        let sorter = ComparisonSorter::default();
        sorter.sort_suffixes(b"abc");
        assert!(sorter.comparisons() >= 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn block_sort_matches_oracle(
            prefix in proptest::collection::vec(b'a'..=b'd', 0..=8),
            block in proptest::collection::vec(b'a'..=b'd', 1..=64),
        ) {
            let mut bytes = prefix.clone();
            bytes.extend_from_slice(&block);
            let t = Text::new(bytes).unwrap();
            let span = FactorSpan::new(prefix.len() + 1, prefix.len() + block.len());
            let b = sort_block(&t, span).unwrap();
            let expected: Vec<usize> = oracle::naive_sa(&block).iter().map(|p| p + prefix.len()).collect();
            prop_assert_eq!(&b.sa, &expected);
            prop_assert_eq!(b.sa[0], span.end + 1);
            prop_assert_eq!(b.bwt.iter().filter(|&&c| c == SENTINEL).count(), 1);
            prop_assert_eq!(b.bwt, oracle::naive_bwt(&block));
        }

        /// Rotation order of a Lyndon word equals the order of its nonempty
        /// sentinel-terminated suffixes.
        #[test]
        fn lyndon_rotations_match_block_order(word in proptest::collection::vec(b'a'..=b'c', 1..=16)) {
            let factor = duval_factorize(&word).spans()[0];
            let lyndon = factor.slice(&word);
            prop_assume!(is_lyndon(lyndon));
            let t = Text::new(lyndon).unwrap();
            let b = sort_block(&t, FactorSpan::new(1, lyndon.len())).unwrap();
            let rotations: Vec<usize> = oracle::sorted_rotations(lyndon).iter().map(|s| s + 1).collect();
            prop_assert_eq!(&b.sa[1..], rotations.as_slice());
        }
    }
}
