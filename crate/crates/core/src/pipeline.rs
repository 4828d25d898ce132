//! The incremental driver: factorize, then for each block sort its suffixes,
//! compute the gap counts against everything to its left and merge.
//!
//! Blocks are one or more consecutive Lyndon factors (`chunk_factors`). With
//! `parallel_groups > 1` the blocks are split into contiguous groups that are
//! folded independently on the rayon pool and then merged pairwise in tree
//! order with [`merge_groups`]. All steps are pure, so the output does not
//! depend on scheduling.

use crate::blocksort::{sort_block_with, ComparisonSorter};
use crate::error::{Error, Result};
use crate::lyndon::{duval_factorize, is_lyndon, Duval, FactorSpan, Factorization};
use crate::merge::{compute_a_counting, compute_g, merge_transforms_counting, MergedTransform};
use crate::rankdict::{RankDict, DEFAULT_CHECKPOINT};
use crate::text::Text;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Consecutive Lyndon factors sorted together as one block.
    pub chunk_factors: usize,
    pub emit_sa: bool,
    /// Number of independently folded groups of blocks.
    pub parallel_groups: usize,
    /// Checkpoint interval of the rank dictionary.
    pub rank_checkpoint: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            chunk_factors: 1,
            emit_sa: false,
            parallel_groups: 1,
            rank_checkpoint: DEFAULT_CHECKPOINT,
        }
    }
}

impl PipelineConfig {
    pub fn with_sa(mut self) -> Self {
        self.emit_sa = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.chunk_factors == 0 {
            return Err(Error::InvalidConfig("chunk_factors must be at least 1"));
        }
        if self.parallel_groups == 0 {
            return Err(Error::InvalidConfig("parallel_groups must be at least 1"));
        }
        if self.rank_checkpoint == 0 {
            return Err(Error::InvalidConfig("rank_checkpoint must be at least 1"));
        }
        Ok(())
    }
}

/// Instrumentation of one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineStats {
    /// Number of Lyndon factors.
    pub k: usize,
    /// Longest factor.
    pub max_factor_len: usize,
    /// Block merges performed (one per block).
    pub iterations: usize,
    /// Work units of each block iteration: suffix comparisons of the block
    /// sort, symbols indexed by the rank dictionary, rank queries plus the
    /// symbols they scanned, and rows written by the merge.
    pub per_iteration_work: Vec<u64>,
    /// Text covered by the fold after each iteration, counted from the start
    /// of the iteration's group.
    pub prefix_lengths: Vec<usize>,
    /// Pairwise merges of parallel groups.
    pub group_merges: usize,
    pub group_merge_work: u64,
}

impl PipelineStats {
    pub fn total_work(&self) -> u64 {
        self.per_iteration_work.iter().sum::<u64>() + self.group_merge_work
    }

    fn absorb(&mut self, other: PipelineStats) {
        self.iterations += other.iterations;
        self.per_iteration_work.extend(other.per_iteration_work);
        self.prefix_lengths.extend(other.prefix_lengths);
        self.group_merges += other.group_merges;
        self.group_merge_work += other.group_merge_work;
    }
}

/// Left-to-right fold of blocks into a growing transform.
#[derive(Debug, Clone)]
struct Fold<'t> {
    text: &'t Text,
    transform: MergedTransform,
    checkpoint: usize,
    stats: PipelineStats,
}

impl<'t> Fold<'t> {
    fn new(text: &'t Text, start: usize, keep_sa: bool, checkpoint: usize) -> Self {
        Fold {
            text,
            transform: MergedTransform::empty(start, keep_sa),
            checkpoint,
            stats: PipelineStats::default(),
        }
    }

    fn push_block(&mut self, span: FactorSpan) -> Result<()> {
        if span.start != self.transform.sentinel_position() {
            return Err(Error::NonContiguousStream);
        }
        span.check(self.text.len())?;
        let sorter = ComparisonSorter::default();
        let block = sort_block_with(&sorter, self.text, span)?;
        let mut work = sorter.comparisons();
        let dict = RankDict::with_interval(&self.transform.bwt, self.checkpoint);
        work += dict.len() as u64;
        let a = compute_a_counting(&dict, self.text, &block, &mut work)?;
        let g = compute_g(&a, &block)?;
        self.transform = merge_transforms_counting(&self.transform, &block, &g, &mut work)?;
        self.stats.iterations += 1;
        self.stats.per_iteration_work.push(work);
        self.stats.prefix_lengths.push(self.transform.text_len());
        Ok(())
    }
}

/// Groups consecutive factors `chunk` at a time into blocks.
pub fn chunk_blocks(factors: &Factorization, chunk: usize) -> Vec<FactorSpan> {
    assert!(chunk >= 1);
    factors
        .spans()
        .chunks(chunk)
        .map(|c| c[0].join(&c[c.len() - 1]))
        .collect()
}

/// Splits blocks into at most `groups` contiguous runs of roughly equal text
/// length.
fn partition(blocks: &[FactorSpan], groups: usize, n: usize) -> Vec<&[FactorSpan]> {
    let mut out = Vec::new();
    let mut begin = 0;
    let group_of = |b: &FactorSpan| ((b.start - 1) * groups) / n.max(1);
    for i in 1..=blocks.len() {
        if i == blocks.len() || group_of(&blocks[i]) != group_of(&blocks[begin]) {
            out.push(&blocks[begin..i]);
            begin = i;
        }
    }
    out
}

/// BWT (and SA if requested) of `text$`.
pub fn bwt_lynd(text: &Text, config: &PipelineConfig) -> Result<MergedTransform> {
    bwt_lynd_with_stats(text, config).map(|(t, _)| t)
}

/// [`bwt_lynd`] plus work counters.
pub fn bwt_lynd_with_stats(
    text: &Text,
    config: &PipelineConfig,
) -> Result<(MergedTransform, PipelineStats)> {
    config.validate()?;
    let factors = duval_factorize(text);
    let blocks = chunk_blocks(&factors, config.chunk_factors);

    let (transform, mut stats) = if config.parallel_groups == 1 || blocks.len() < 2 {
        fold(text, &blocks, config.emit_sa, config.rank_checkpoint)?
    } else {
        let groups = partition(&blocks, config.parallel_groups, text.len());
        let (t, s) = fold_tree(text, &groups, config.rank_checkpoint)?;
        (if config.emit_sa { t } else { t.without_sa() }, s)
    };
    stats.k = factors.k();
    stats.max_factor_len = factors.max_len();
    Ok((transform, stats))
}

fn fold(
    text: &Text,
    blocks: &[FactorSpan],
    keep_sa: bool,
    checkpoint: usize,
) -> Result<(MergedTransform, PipelineStats)> {
    let start = blocks.first().map_or(1, |b| b.start);
    let mut fold = Fold::new(text, start, keep_sa, checkpoint);
    for &span in blocks {
        fold.push_block(span)?;
    }
    Ok((fold.transform, fold.stats))
}

fn fold_tree(
    text: &Text,
    groups: &[&[FactorSpan]],
    checkpoint: usize,
) -> Result<(MergedTransform, PipelineStats)> {
    if let [group] = groups {
        return fold(text, group, true, checkpoint);
    }
    let (left, right) = groups.split_at(groups.len() / 2);
    let (l, r) = rayon::join(
        || fold_tree(text, left, checkpoint),
        || fold_tree(text, right, checkpoint),
    );
    let (left, mut stats) = l?;
    let (right, right_stats) = r?;
    stats.absorb(right_stats);
    let mut work = 0;
    let merged = merge_adjacent(text, &left, right, checkpoint, &mut work)?;
    stats.group_merges += 1;
    stats.group_merge_work += work;
    Ok((merged, stats))
}

fn merge_adjacent(
    text: &Text,
    left: &MergedTransform,
    right: MergedTransform,
    checkpoint: usize,
    work: &mut u64,
) -> Result<MergedTransform> {
    if right.start != left.sentinel_position() {
        return Err(Error::NotAdjacent);
    }
    if right.is_empty() {
        return Ok(left.clone());
    }
    let block = right.into_block()?;
    let dict = RankDict::with_interval(&left.bwt, checkpoint);
    *work += dict.len() as u64;
    let a = compute_a_counting(&dict, text, &block, work)?;
    let g = compute_g(&a, &block)?;
    merge_transforms_counting(left, &block, &g, work)
}

/// Merges the transform of a window `L_r..L_l` with the sorted suffixes of
/// the window `L_{l+1}..L_s` that follows it. The right side is treated as a
/// single block and must carry its SA. An empty right side is the identity.
pub fn merge_groups(
    text: &Text,
    left: &MergedTransform,
    right: &MergedTransform,
) -> Result<MergedTransform> {
    if right.start != left.sentinel_position() {
        return Err(Error::NotAdjacent);
    }
    if !right.is_empty() {
        let window = &text[left.start - 1..right.sentinel_position() - 1];
        if !duval_factorize(window).is_boundary(left.text_len()) {
            return Err(Error::CutInsideFactor);
        }
    }
    merge_adjacent(text, left, right.clone(), DEFAULT_CHECKPOINT, &mut 0)
}

/// Incremental construction fed one Lyndon factor at a time.
#[derive(Debug, Clone)]
pub struct OnlineBwt<'t> {
    fold: Fold<'t>,
    last_factor: Option<FactorSpan>,
}

impl<'t> OnlineBwt<'t> {
    pub fn new(text: &'t Text, config: &PipelineConfig) -> Result<Self> {
        config.validate()?;
        Ok(OnlineBwt {
            fold: Fold::new(text, 1, config.emit_sa, config.rank_checkpoint),
            last_factor: None,
        })
    }

    /// Adds the next factor. It has to start right after the previous one,
    /// be a Lyndon word and not exceed the previous factor.
    pub fn push(&mut self, factor: FactorSpan) -> Result<&MergedTransform> {
        if factor.start != self.fold.transform.sentinel_position() {
            return Err(Error::NonContiguousStream);
        }
        factor.check(self.fold.text.len())?;
        let word = factor.slice(self.fold.text);
        let ordered = self
            .last_factor
            .is_none_or(|last| last.slice(self.fold.text) >= word);
        if !is_lyndon(word) || !ordered {
            return Err(Error::NotLyndonFactor);
        }
        self.fold.push_block(factor)?;
        self.last_factor = Some(factor);
        Ok(&self.fold.transform)
    }

    pub fn snapshot(&self) -> &MergedTransform {
        &self.fold.transform
    }

    pub fn stats(&self) -> &PipelineStats {
        &self.fold.stats
    }

    pub fn into_transform(self) -> MergedTransform {
        self.fold.transform
    }

    /// Runs Duval on the text and pushes each factor as it is finalized.
    pub fn run_to_end(mut self) -> Result<MergedTransform> {
        let text = self.fold.text;
        for factor in Duval::new(text) {
            self.push(factor)?;
        }
        Ok(self.into_transform())
    }
}

/// Snapshot after each factor of `factors`. Stops after the first error.
pub fn bwt_lynd_online<'t, I>(
    text: &'t Text,
    factors: I,
    config: &PipelineConfig,
) -> impl Iterator<Item = Result<MergedTransform>> + 't
where
    I: IntoIterator<Item = FactorSpan>,
    I::IntoIter: 't,
{
    let mut online = OnlineBwt::new(text, config);
    let mut factors = factors.into_iter();
    let mut failed = false;
    std::iter::from_fn(move || {
        if failed {
            return None;
        }
        let step = match online.as_mut() {
            Err(e) => Err(e.clone()),
            Ok(online) => {
                let factor = factors.next()?;
                online.push(factor).cloned()
            }
        };
        failed = step.is_err();
        Some(step)
    })
}
