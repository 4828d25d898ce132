//! Gap arrays and the merge step of the incremental construction.
//!
//! Given the accumulated transform of a window `P = L_r..L_{i-1}` and the
//! sorted block `u = L_i..L_s` that follows it, the suffixes of `u` can be
//! placed among the suffixes of `P` without touching their relative order,
//! because local suffix order inside a run of Lyndon factors agrees with the
//! global order. Where each block row lands is decided by backward search
//! over the BWT of `P$`.
//!
//! Indexing: `a` is indexed by 0-based local offset inside the block (offset
//! `m` is the bare sentinel), `g` by 0-based block row.

use crate::blocksort::BlockSort;
use crate::error::{Error, Result};
use crate::rankdict::RankDict;
use crate::text::{Text, SENTINEL};

/// BWT (and optionally SA) of the sentinel-terminated window
/// `text[start..start + len - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedTransform {
    /// 1-based first position of the window.
    pub start: usize,
    pub bwt: Vec<u8>,
    /// 1-based global positions; the bare sentinel is `start + len - 1`.
    pub sa: Option<Vec<usize>>,
    /// 0-based row whose BWT character is the sentinel (the row of the
    /// whole window).
    pub sentinel_row: usize,
}

impl MergedTransform {
    /// Transform of the empty window at `start`: the single row `$`.
    pub fn empty(start: usize, emit_sa: bool) -> Self {
        MergedTransform {
            start,
            bwt: vec![SENTINEL],
            sa: emit_sa.then(|| vec![start]),
            sentinel_row: 0,
        }
    }

    /// Rows, i.e. covered text length plus one.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.len() == 1
    }

    /// Number of text symbols covered.
    pub fn text_len(&self) -> usize {
        self.bwt.len() - 1
    }

    /// Position of the window's sentinel, which is where the next block
    /// has to start.
    pub fn sentinel_position(&self) -> usize {
        self.start + self.text_len()
    }

    pub fn without_sa(mut self) -> Self {
        self.sa = None;
        self
    }

    /// Reinterprets a non-empty transform that carries its SA as a sorted
    /// block.
    pub fn into_block(self) -> Result<BlockSort> {
        let sa = self.sa.ok_or(Error::MissingSuffixArray)?;
        assert!(self.bwt.len() > 1, "empty transform is not a block");
        let span = crate::lyndon::FactorSpan::new(self.start, self.start + self.bwt.len() - 2);
        Ok(BlockSort {
            span,
            sa,
            bwt: self.bwt,
            sentinel_row: self.sentinel_row,
        })
    }
}

impl From<BlockSort> for MergedTransform {
    fn from(block: BlockSort) -> Self {
        MergedTransform {
            start: block.span.start,
            bwt: block.bwt,
            sa: Some(block.sa),
            sentinel_row: block.sentinel_row,
        }
    }
}

/// The two gap arrays for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCounts {
    /// By local offset: previous-window suffixes sorting below the block
    /// suffix at that offset.
    pub a: Vec<usize>,
    /// The same counts permuted into block row order.
    pub g: Vec<usize>,
}

impl GapCounts {
    pub fn compute(prev: &RankDict, text: &Text, block: &BlockSort) -> Result<Self> {
        let a = compute_a(prev, text, block)?;
        let g = compute_g(&a, block)?;
        Ok(GapCounts { a, g })
    }
}

/// Backward search of every block suffix against the previous window.
///
/// `prev` indexes the BWT of the previous window. Entry `q` counts the rows
/// of that BWT whose suffix, continued by the block, is smaller than the
/// block suffix at offset `q`. The full block suffix (offset 0) is the
/// previous window's bare-sentinel row and gets 0; the bare block sentinel
/// (offset `m`) gets 0.
///
/// For `q` from `m - 1` down to 1, with `c` the symbol at offset `q`:
///
/// `a[q] = C(c) - 1 + [u$ sorts below suffix q] + rank(c, a[q + 1])`
///
/// The `- 1` removes the sentinel from `C(c)`; the bracket puts it back
/// exactly when the previous window's `$` row, which stands for `u$`, is
/// smaller than the suffix at `q` in the block order. For a block that is a
/// single Lyndon word the bracket is always 1 and this is the textbook
/// `C(c) + rank(c, a[q + 1])`.
pub fn compute_a(prev: &RankDict, text: &Text, block: &BlockSort) -> Result<Vec<usize>> {
    compute_a_counting(prev, text, block, &mut 0)
}

pub(crate) fn compute_a_counting(
    prev: &RankDict,
    text: &Text,
    block: &BlockSort,
    work: &mut u64,
) -> Result<Vec<usize>> {
    let span = block.span;
    span.check(text.len())?;
    let m = span.len();
    if block.sa.len() != m + 1 {
        return Err(Error::GapLengthMismatch);
    }
    if prev.total(SENTINEL) != 1 {
        return Err(Error::NotSentinelTerminated);
    }
    let mut row_of = vec![0usize; m + 1];
    for (r, &p) in block.sa.iter().enumerate() {
        row_of[block.local(p)] = r;
    }
    let fused_row = block.sentinel_row;
    let bytes = span.slice(text);
    let mut a = vec![0usize; m + 1];
    for q in (1..m).rev() {
        let c = bytes[q];
        let (rank, scanned) = prev.rank_scanned(c, a[q + 1])?;
        let fused_below = usize::from(row_of[q] > fused_row);
        a[q] = prev.count_smaller(c) - 1 + fused_below + rank;
        *work += 1 + scanned as u64;
    }
    Ok(a)
}

/// Permutes `a` into block row order: `g[r] = a[local(sa[r])]`.
pub fn compute_g(a: &[usize], block: &BlockSort) -> Result<Vec<usize>> {
    if a.len() != block.sa.len() {
        return Err(Error::GapLengthMismatch);
    }
    block
        .sa
        .iter()
        .map(|&p| {
            p.checked_sub(block.span.start)
                .and_then(|q| a.get(q).copied())
                .ok_or(Error::GapLengthMismatch)
        })
        .collect()
}

/// Interleaves the block rows into `prev`.
///
/// Block row `r` is preceded by exactly `g[r]` rows of `prev`, counting
/// `prev`'s bare-`$` row. That `$` row and the block row of the full block
/// suffix are the same suffix once the two are concatenated: the merged row
/// keeps `prev`'s character and position. The block's own `$` row becomes
/// the new first row. Relative order inside each side is preserved.
pub fn merge_transforms(
    prev: &MergedTransform,
    block: &BlockSort,
    g: &[usize],
) -> Result<MergedTransform> {
    merge_transforms_counting(prev, block, g, &mut 0)
}

pub(crate) fn merge_transforms_counting(
    prev: &MergedTransform,
    block: &BlockSort,
    g: &[usize],
    work: &mut u64,
) -> Result<MergedTransform> {
    if prev.sentinel_position() != block.span.start {
        return Err(Error::NotAdjacent);
    }
    if g.len() != block.len() || block.bwt.len() != block.len() {
        return Err(Error::GapLengthMismatch);
    }
    let fused = block.sentinel_row;
    check_gaps(g, fused, prev.len())?;

    let total = prev.len() + block.len() - 1;
    let mut bwt = Vec::with_capacity(total);
    let mut sa = prev.sa.as_ref().map(|_| Vec::with_capacity(total));
    let mut sentinel_row = None;
    let mut push = |c: u8, p: usize, bwt: &mut Vec<u8>, sa: &mut Option<Vec<usize>>| {
        if c == SENTINEL {
            sentinel_row = Some(bwt.len());
        }
        bwt.push(c);
        if let Some(sa) = sa.as_mut() {
            sa.push(p);
        }
    };
    let prev_pos = |row: usize| prev.sa.as_ref().map_or(0, |sa| sa[row]);

    // prev rows [0, consumed) have been emitted (row 0 via the fused row)
    let mut consumed = 1;
    for (r, &gap) in g.iter().enumerate() {
        if r == fused {
            push(prev.bwt[0], block.span.start, &mut bwt, &mut sa);
            continue;
        }
        while consumed < gap {
            push(prev.bwt[consumed], prev_pos(consumed), &mut bwt, &mut sa);
            consumed += 1;
        }
        push(block.bwt[r], block.sa[r], &mut bwt, &mut sa);
    }
    for row in consumed..prev.len() {
        push(prev.bwt[row], prev_pos(row), &mut bwt, &mut sa);
    }
    debug_assert_eq!(bwt.len(), total);
    *work += bwt.len() as u64;
    Ok(MergedTransform {
        start: prev.start,
        bwt,
        sa,
        sentinel_row: sentinel_row.ok_or(Error::NotSentinelTerminated)?,
    })
}

fn check_gaps(g: &[usize], fused: usize, prev_rows: usize) -> Result<()> {
    let ordered = g.windows(2).all(|w| w[0] <= w[1]);
    let placed = g.iter().enumerate().all(|(r, &gap)| {
        if r <= fused {
            gap == 0
        } else {
            (1..=prev_rows).contains(&gap)
        }
    });
    if ordered && placed {
        Ok(())
    } else {
        Err(Error::InconsistentGaps)
    }
}
