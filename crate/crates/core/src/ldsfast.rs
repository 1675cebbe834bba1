//! `O(n log n)` pass counts through the longest-increasing-subsequence tails scan.
//!
//! The pass count of a sequence equals its longest strictly decreasing
//! subsequence, which is the longest increasing subsequence of any strictly
//! order-reversing relabeling. For permutations the relabeling is the value
//! complement `v -> n + 1 - v`; for general ordered values it is [`Reverse`].

use std::cmp::Reverse;

use crate::error::Result;
use crate::permcore::{check_distinct, Permutation};

/// Scratch state of the tails scan: `tails[l]` is the smallest value that ends
/// an increasing subsequence of length `l + 1` seen so far.
#[derive(Debug, Clone, Default)]
pub struct TailsState<T> {
    tails: Vec<T>,
}

impl<T: Ord> TailsState<T> {
    pub fn new() -> Self {
        Self { tails: Vec::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            tails: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, x: T) {
        // Lower bound: first index with tails[i] >= x.
        let i = self.tails.partition_point(|t| *t < x);
        if i == self.tails.len() {
            self.tails.push(x);
        } else {
            self.tails[i] = x;
        }
        debug_assert!(i == 0 || self.tails[i - 1] < self.tails[i]);
        debug_assert!(i + 1 >= self.tails.len() || self.tails[i] < self.tails[i + 1]);
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    pub fn tails(&self) -> &[T] {
        &self.tails
    }
}

fn lis_len<T: Ord>(values: impl ExactSizeIterator<Item = T>) -> usize {
    let mut state = TailsState::with_capacity(values.len().min(1 << 16));
    for x in values {
        state.push(x);
    }
    state.len()
}

/// Longest strictly decreasing subsequence, i.e. the DS pass count.
///
/// Values must be pairwise distinct.
pub fn lds_fast<T: Ord>(seq: &[T]) -> Result<usize> {
    check_distinct(seq)?;
    Ok(lis_len(seq.iter().map(Reverse)))
}

/// Longest strictly increasing subsequence. Values must be pairwise distinct.
pub fn lis_fast<T: Ord>(seq: &[T]) -> Result<usize> {
    check_distinct(seq)?;
    Ok(lis_len(seq.iter()))
}

/// [`lds_fast`] for a permutation, which needs no distinctness check.
pub fn lds_permutation(p: &Permutation) -> usize {
    let top = p.len() as u32 + 1;
    lis_len(p.iter().map(|&v| top - v))
}

pub fn lis_permutation(p: &Permutation) -> usize {
    lis_len(p.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::permcore::{all_permutations, ds_passes_naive, longest_chain_bruteforce, DsPoset};
    use proptest::prelude::*;

    /// Longest decreasing subsequence by trying every subset.
    fn lds_by_subsets(seq: &[u32]) -> usize {
        let n = seq.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).collect();
                picked.windows(2).all(|w| w[0] > w[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(lds_fast(&[2, 5, 3, 9, 6, 4]).unwrap(), 3);
        let inc: Vec<u32> = (1..=1000).collect();
        assert_eq!(lds_fast(&inc).unwrap(), 1);
        assert_eq!(lds_fast(&[1, 4, 2, 6, 5, 3]).unwrap(), 3);
        assert_eq!(lds_by_subsets(&[1, 4, 2, 6, 5, 3]), 3);
        assert_eq!(lds_by_subsets(&[4, 1, 3, 2]), 3);

        assert_eq!(lis_fast(&[1, 4, 2, 6, 5, 3]).unwrap(), 3);
        assert_eq!(lis_fast(&[5, 4, 3, 2, 1]).unwrap(), 1);
        assert_eq!(lis_fast(&[1, 2, 3]).unwrap(), 3);
        assert_eq!(lds_fast::<u32>(&[]).unwrap(), 0);
    }

    #[test]
    fn rejects_ties() {
        assert_eq!(
            lds_fast(&[3, 1, 3]),
            Err(Error::DuplicateValues { first: 1, second: 3 })
        );
        assert!(lis_fast(&[2, 2]).is_err());
    }

    #[test]
    fn matches_subset_oracle_exhaustively() {
        for n in 0..=8 {
            for p in all_permutations(n) {
                assert_eq!(lds_permutation(&p), lds_by_subsets(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn tails_stay_strictly_increasing() {
        let mut state = TailsState::new();
        for x in [5, 1, 8, 3, 9, 2, 7, 4, 6] {
            let before = state.len();
            state.push(x);
            assert!(state.len() >= before);
            assert!(state.tails().windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(state.tails(), &[1, 2, 4, 6]);
    }

    fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max)
            .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn fast_matches_naive_and_chain(p in permutation(512)) {
            let fast = lds_permutation(&p);
            prop_assert_eq!(fast, lds_fast(&p).unwrap());
            prop_assert_eq!(fast, ds_passes_naive(&p).unwrap());
            prop_assert_eq!(fast, longest_chain_bruteforce(&DsPoset::new(p.clone())).unwrap());
        }

        #[test]
        fn order_reversals(p in permutation(200)) {
            let lds = lds_permutation(&p);
            // Complement and reversal each swap LDS and LIS; doing both swaps back.
            prop_assert_eq!(lds, lis_permutation(&p.complement()));
            prop_assert_eq!(lds, lis_permutation(&p.reversed()));
            prop_assert_eq!(lds, lds_permutation(&p.reversed().complement()));
            prop_assert_eq!(lis_permutation(&p), lis_permutation(&p.reversed().complement()));
        }

        #[test]
        fn monotone_relabeling_is_invisible(v in proptest::collection::hash_set(-10_000i64..10_000, 0..64)) {
            let seq: Vec<i64> = v.into_iter().collect();
            let relabeled: Vec<i64> = seq.iter().map(|x| 3 * x * x * x + x - 7).collect();
            prop_assert_eq!(lds_fast(&seq).unwrap(), lds_fast(&relabeled).unwrap());
            prop_assert_eq!(lis_fast(&seq).unwrap(), lis_fast(&relabeled).unwrap());
        }
    }
}
