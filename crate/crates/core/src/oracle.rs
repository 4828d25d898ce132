//! Brute-force reference implementations.
//!
//! Everything here materializes suffixes and rotations explicitly and sorts
//! them with a hand-written comparison. It is quadratic or worse on purpose
//! and shares no code with the incremental pipeline, so it can serve as the
//! ground truth in differential tests and in the `verify` command.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::lyndon::FactorSpan;
use crate::text::SENTINEL;

/// Symbols widened so that 0 is the sentinel and byte `b` is `b + 1`.
fn widen(bytes: &[u8]) -> Vec<u16> {
    bytes.iter().map(|&b| b as u16 + 1).collect()
}

fn terminated(bytes: &[u8]) -> Vec<u16> {
    let mut w = widen(bytes);
    w.push(0);
    w
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let mut i = 0;
    loop {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(y),
            _ => i += 1,
        }
    }
}

/// Suffix array of `text$`, 1-based; the first entry is always `n + 1`.
pub fn naive_sa(text: &[u8]) -> Vec<usize> {
    let t = terminated(text);
    let mut suffixes: Vec<(usize, Vec<u16>)> =
        (0..t.len()).map(|p| (p + 1, t[p..].to_vec())).collect();
    suffixes.sort_by(|a, b| lex_cmp(&a.1, &b.1));
    suffixes.into_iter().map(|(p, _)| p).collect()
}

/// BWT of `text$`: the symbol preceding each suffix in sorted order, with
/// [`SENTINEL`] for the row of the whole text.
pub fn naive_bwt(text: &[u8]) -> Vec<u8> {
    naive_sa(text)
        .into_iter()
        .map(|p| if p == 1 { SENTINEL } else { text[p - 2] })
        .collect()
}

/// Rotation form of the BWT: last column of the sorted rotation matrix and
/// the 1-based row of the original word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationBwt {
    pub l: Vec<u8>,
    pub i: usize,
}

/// Sorted rotations of `word`, as 0-based start offsets. Equal rotations
/// (non-primitive words) are ordered by start offset.
pub fn sorted_rotations(word: &[u8]) -> Vec<usize> {
    let n = word.len();
    let rotations: Vec<Vec<u16>> = (0..n)
        .map(|s| {
            let mut r = widen(&word[s..]);
            r.extend(widen(&word[..s]));
            r
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lex_cmp(&rotations[a], &rotations[b]).then(a.cmp(&b)));
    order
}

pub fn rotation_bwt(word: &[u8]) -> Result<RotationBwt> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let order = sorted_rotations(word);
    let l = order.iter().map(|&s| word[(s + n - 1) % n]).collect();
    let i = order.iter().position(|&s| s == 0).unwrap() + 1;
    Ok(RotationBwt { l, i })
}

/// Recovers the text from a sentinel-terminated BWT by walking the
/// last-to-first mapping from the bare-sentinel row.
pub fn inverse_bwt(bwt: &[u8]) -> Result<Vec<u8>> {
    if bwt.iter().filter(|&&b| b == SENTINEL).count() != 1 {
        return Err(Error::NotSentinelTerminated);
    }
    let mut counts = [0usize; 256];
    for &b in bwt {
        counts[b as usize] += 1;
    }
    let mut first = [0usize; 256];
    let mut acc = 0;
    for (slot, &c) in first.iter_mut().zip(counts.iter()) {
        *slot = acc;
        acc += c;
    }
    let mut seen = [0usize; 256];
    let lf: Vec<usize> = bwt
        .iter()
        .map(|&b| {
            let row = first[b as usize] + seen[b as usize];
            seen[b as usize] += 1;
            row
        })
        .collect();

    let n = bwt.len() - 1;
    let mut out = Vec::with_capacity(n);
    let mut row = 0;
    for _ in 0..n {
        let c = bwt[row];
        if c == SENTINEL {
            return Err(Error::MalformedBwt);
        }
        out.push(c);
        row = lf[row];
    }
    if bwt[row] != SENTINEL {
        return Err(Error::MalformedBwt);
    }
    out.reverse();
    Ok(out)
}

/// Whether the order of the local suffixes `text[i..=last]` inside the
/// 1-based window agrees with the order of the global suffixes `text[i..]`
/// for every pair of positions in the window.
pub fn compatibility_check(text: &[u8], window: RangeInclusive<usize>) -> bool {
    let (first, last) = (*window.start(), *window.end());
    assert!(first >= 1 && last <= text.len(), "window outside text");
    let t = widen(text);
    let local = |i: usize| &t[i - 1..last];
    let global = |i: usize| &t[i - 1..];
    for i in first..=last {
        for j in i + 1..=last {
            let l = lex_cmp(local(i), local(j));
            let g = lex_cmp(global(i), global(j));
            if l != g {
                return false;
            }
        }
    }
    true
}

/// [`compatibility_check`] for every window `first..=last` with `first` taken
/// from `firsts` and `last` from `lasts`, skipping `first > last`.
///
/// Local suffix order only depends on `last`, so the local suffixes ending
/// there are sorted once and each window is checked by restricting that
/// order to positions `>= first` and testing that global ranks increase.
pub fn compatibility_table(
    text: &[u8],
    firsts: &[usize],
    lasts: &[usize],
) -> Vec<(usize, usize, bool)> {
    let t = widen(text);
    let mut by_global: Vec<usize> = (1..=t.len()).collect();
    by_global.sort_by(|&i, &j| lex_cmp(&t[i - 1..], &t[j - 1..]));
    let mut global_rank = vec![0; t.len() + 1];
    for (r, &p) in by_global.iter().enumerate() {
        global_rank[p] = r;
    }
    let mut table = Vec::new();
    for &last in lasts {
        assert!(last <= t.len(), "window outside text");
        let mut local: Vec<usize> = (1..=last).collect();
        local.sort_by(|&i, &j| lex_cmp(&t[i - 1..last], &t[j - 1..last]));
        for &first in firsts.iter().filter(|&&f| f <= last) {
            assert!(first >= 1, "window outside text");
            let ranks: Vec<usize> = local
                .iter()
                .filter(|&&p| p >= first)
                .map(|&p| global_rank[p])
                .collect();
            table.push((first, last, ranks.windows(2).all(|w| w[0] < w[1])));
        }
    }
    table
}

/// Lyndon test by definition: nonempty, primitive and strictly smaller than
/// every proper rotation.
pub fn is_lyndon_by_rotations(word: &[u8]) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    let w = widen(word);
    (1..n).all(|s| {
        let mut r = w[s..].to_vec();
        r.extend_from_slice(&w[..s]);
        lex_cmp(&w, &r) == Ordering::Less
    })
}

/// Lyndon test via suffixes: nonempty and strictly smaller than every proper
/// suffix.
pub fn is_lyndon_by_suffixes(word: &[u8]) -> bool {
    let w = widen(word);
    !w.is_empty() && (1..w.len()).all(|s| lex_cmp(&w, &w[s..]) == Ordering::Less)
}

/// Factorization by repeatedly taking the longest Lyndon prefix.
pub fn brute_factorize(text: &[u8]) -> Vec<FactorSpan> {
    let mut spans = Vec::new();
    let mut start = 0;
    while start < text.len() {
        let len = (1..=text.len() - start)
            .rev()
            .find(|&l| is_lyndon_by_suffixes(&text[start..start + l]))
            .expect("a single letter is always Lyndon");
        spans.push(FactorSpan::new(start + 1, start + len));
        start += len;
    }
    spans
}

/// Least rotation by trying every shift; ties keep the smallest shift.
pub fn brute_least_rotation(word: &[u8]) -> (Vec<u8>, usize) {
    let n = word.len();
    assert!(n > 0);
    let rotate = |s: usize| {
        let mut r = word[s..].to_vec();
        r.extend_from_slice(&word[..s]);
        r
    };
    let mut best = (rotate(0), 0);
    for s in 1..n {
        let r = rotate(s);
        if widen(&r) < widen(&best.0) {
            best = (r, s);
        }
    }
    best
}

/// Number of sentinel-terminated suffixes of `prev$` strictly smaller than
/// `block[q..]$`, for each 0-based local offset `q` in `0..=block.len()`.
pub fn dollar_gap_counts(prev: &[u8], block: &[u8]) -> Vec<usize> {
    let p = terminated(prev);
    let b = terminated(block);
    (0..b.len())
        .map(|q| {
            (0..p.len())
                .filter(|&s| lex_cmp(&p[s..], &b[q..]) == Ordering::Less)
                .count()
        })
        .collect()
}

/// For each 0-based local offset `q` of `block` (plus the bare sentinel at
/// `block.len()`), the number of positions in `prev_window` or at
/// `block.start` whose global suffix of `text` is smaller than the global
/// suffix at `block.start + q`. This is the quantity the merge needs when
/// `prev_window` is immediately followed by `block`.
pub fn global_gap_counts(
    text: &[u8],
    prev_window: RangeInclusive<usize>,
    block: FactorSpan,
) -> Vec<usize> {
    let t = terminated(text);
    let suffix = |pos: usize| &t[pos - 1..];
    (0..=block.len())
        .map(|q| {
            let target = block.start + q;
            if target > block.end {
                return 0;
            }
            prev_window
                .clone()
                .chain(std::iter::once(block.start))
                .filter(|&p| p != target)
                .filter(|&p| lex_cmp(suffix(p), suffix(target)) == Ordering::Less)
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_bwt, render_bwt};
    use proptest::prelude::*;

    #[test]
    fn mathematics_text() {
        assert_eq!(
            naive_sa(b"mathematics"),
            [12, 2, 7, 10, 5, 4, 9, 1, 6, 11, 3, 8]
        );
        assert_eq!(render_bwt(&naive_bwt(b"mathematics")), "smmihtt$ecaa");
        assert_eq!(
            inverse_bwt(&parse_bwt("smmihtt$ecaa")).unwrap(),
            b"mathematics"
        );
    }

    #[test]
    fn first_factor_of_worked_example() {
        assert_eq!(naive_sa(b"aabcabb"), [8, 1, 5, 2, 7, 6, 3, 4]);
        assert_eq!(render_bwt(&naive_bwt(b"aabcabb")), "b$cabaab");
    }

    #[test]
    fn empty_text() {
        assert_eq!(naive_sa(b""), [1]);
        assert_eq!(render_bwt(&naive_bwt(b"")), "$");
        assert_eq!(inverse_bwt(&parse_bwt("$")).unwrap(), b"");
    }

    #[test]
    fn inverse_rejects_bad_input() {
        assert_eq!(inverse_bwt(b"abc"), Err(Error::NotSentinelTerminated));
        assert_eq!(
            inverse_bwt(&parse_bwt("a$$")),
            Err(Error::NotSentinelTerminated)
        );
        assert_eq!(inverse_bwt(&[]), Err(Error::NotSentinelTerminated));
        // LF cycle through the sentinel covers only two of the three rows
        assert_eq!(inverse_bwt(&parse_bwt("$ba")), Err(Error::MalformedBwt));
        assert_eq!(Error::MalformedBwt.to_string(), "malformed bwt");
        assert_eq!(
            Error::NotSentinelTerminated.to_string(),
            "not a sentinel-terminated bwt"
        );
    }

    #[test]
    fn rotation_form() {
        assert_eq!(
            rotation_bwt(b"ab").unwrap(),
            RotationBwt {
                l: b"ba".to_vec(),
                i: 1
            }
        );
        assert_eq!(rotation_bwt(b"aabcabb").unwrap().i, 1);
        assert!(rotation_bwt(b"").is_err());
        // ties by start offset
        assert_eq!(sorted_rotations(b"abab"), [0, 2, 1, 3]);
    }

    /// Sorted rotations of a Lyndon word, by start, coincide with the sorted
    /// nonempty suffixes of the word with a sentinel.
    #[test]
    fn rotations_and_suffixes_coincide_for_lyndon_words() {
        for w in [&b"aabcabb"[..], b"ab", b"a", b"aabaabdabb", b"abb"] {
            let rot: Vec<usize> = sorted_rotations(w).iter().map(|s| s + 1).collect();
            assert_eq!(rot, naive_sa(w)[1..], "{w:?}");
        }
        // "ba" happens to agree; "baa" and "bab" are the shortest primitive
        // non-Lyndon words over {a, b} where the orders differ
        let rot: Vec<usize> = sorted_rotations(b"ba").iter().map(|s| s + 1).collect();
        assert_eq!(rot, naive_sa(b"ba")[1..]);
        for w in [&b"baa"[..], b"bab"] {
            let rot: Vec<usize> = sorted_rotations(w).iter().map(|s| s + 1).collect();
            assert_ne!(rot, naive_sa(w)[1..], "{w:?}");
        }
    }

    #[test]
    fn table_flags_counterexample() {
        assert_eq!(compatibility_table(b"abababb", &[1], &[5]), [(1, 5, false)]);
        assert_eq!(
            compatibility_table(b"abababb", &[1, 3], &[7]),
            [(1, 7, true), (3, 7, true)]
        );
    }

    #[test]
    fn counterexample_window_is_incompatible() {
        assert!(!compatibility_check(b"abababb", 1..=5));
        assert!(compatibility_check(b"abababb", 1..=7));
        assert!(compatibility_check(b"abababb", 3..=3));
    }

    #[test]
    fn dollar_gaps_against_single_sentinel() {
        // prev = "" so prev$ = "$": every nonempty block suffix has one
        // smaller suffix, the bare block sentinel has none
        assert_eq!(dollar_gap_counts(b"", b"abc"), [1, 1, 1, 0]);
    }

    proptest! {
        #[test]
        fn table_agrees_with_pairwise_check(text in proptest::collection::vec(b'a'..=b'c', 0..=14)) {
            let all: Vec<usize> = (1..=text.len()).collect();
            for (first, last, ok) in compatibility_table(&text, &all, &all) {
                prop_assert_eq!(ok, compatibility_check(&text, first..=last));
            }
        }

        #[test]
        fn naive_sa_is_sorted_permutation(text in proptest::collection::vec(b'a'..=b'd', 0..=40)) {
            let sa = naive_sa(&text);
            let mut sorted = sa.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (1..=text.len() + 1).collect::<Vec<_>>());
            prop_assert_eq!(sa[0], text.len() + 1);
            for w in sa.windows(2) {
                prop_assert!(text[w[0] - 1..] < text[w[1] - 1..]);
            }
        }

        #[test]
        fn inverse_undoes_naive_bwt(text in proptest::collection::vec(1u8..=255, 0..=256)) {
            prop_assert_eq!(inverse_bwt(&naive_bwt(&text)).unwrap(), text);
        }

        #[test]
        fn rotation_bwt_is_permutation(word in proptest::collection::vec(b'a'..=b'c', 1..=24)) {
            let r = rotation_bwt(&word).unwrap();
            let (mut a, mut b) = (r.l.clone(), word.clone());
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            prop_assert!(r.i >= 1 && r.i <= word.len());
        }
    }
}
