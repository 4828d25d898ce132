//! Suffix array and Burrows-Wheeler transform of a byte text, built one
//! Lyndon factor at a time.
//!
//! The text is split into its Lyndon factorization `L_1 >= L_2 >= ... >= L_k`.
//! Suffixes local to a run of consecutive factors sort the same way as the
//! corresponding suffixes of the whole text, so each factor can be sorted on
//! its own and merged into the transform of everything to its left with a
//! backward search over that transform.
//!
//! ```
//! use lyndon_bwt::{bwt_lynd, render_bwt, PipelineConfig, Text};
//!
//! let text = Text::try_from("mathematics").unwrap();
//! let out = bwt_lynd(&text, &PipelineConfig::default().with_sa()).unwrap();
//! assert_eq!(render_bwt(&out.bwt), "smmihtt$ecaa");
//! assert_eq!(out.sa.unwrap(), [12, 2, 7, 10, 5, 4, 9, 1, 6, 11, 3, 8]);
//! ```

pub mod blocksort;
pub mod cli;
pub mod error;
pub mod lyndon;
pub mod merge;
pub mod oracle;
pub mod pipeline;
pub mod rankdict;
pub mod text;

pub use blocksort::{sort_block, BlockSort};
pub use error::{Error, Result};
pub use lyndon::{duval_factorize, is_lyndon, least_rotation, FactorSpan, Factorization};
pub use merge::{GapCounts, MergedTransform};
pub use pipeline::{
    bwt_lynd, bwt_lynd_online, bwt_lynd_with_stats, merge_groups, OnlineBwt, PipelineConfig,
    PipelineStats,
};
pub use rankdict::RankDict;
pub use text::{parse_bwt, render_bwt, Text, SENTINEL};
