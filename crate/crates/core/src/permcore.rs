//! Sequences, record detection, single DS passes and the full layer
//! decomposition, plus the induced poset and the slow oracles built on it.
//!
//! All reported positions are 1-based.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`longest_chain_bruteforce`].
pub const CHAIN_ORACLE_LIMIT: usize = 2000;
/// Largest `n` accepted by [`min_antichain_partition`].
pub const MIRSKY_ORACLE_LIMIT: usize = 8;

/// A permutation of `1..=n`, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for (pos, &v) in values.iter().enumerate() {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::NotAPermutation(format!(
                    "value {v} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::NotAPermutation(format!(
                    "value {v} repeated at position {}",
                    pos + 1
                )));
            }
        }
        Ok(Self(values))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    /// Relabels any sequence of distinct values by rank, so the smallest becomes 1.
    pub fn from_ranks<T: Ord>(seq: &[T]) -> Result<Self> {
        let order = sorted_positions(seq);
        check_sorted_distinct(seq, &order)?;
        let mut ranks = vec![0u32; seq.len()];
        for (rank, &pos) in order.iter().enumerate() {
            ranks[pos] = rank as u32 + 1;
        }
        Ok(Self(ranks))
    }

    /// Caller guarantees `values` is a permutation of `1..=n`.
    pub(crate) fn new_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self(values)
    }

    /// Value complement `v -> n + 1 - v`, a strictly order-reversing relabeling.
    pub fn complement(&self) -> Self {
        let n = self.0.len() as u32;
        Self(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for Permutation {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Every permutation of `1..=n` in lexicographic order (`n! ` items).
pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        next: Some((1..=n as u32).collect()),
    }
}

pub struct AllPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn sorted_positions<T: Ord>(seq: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&a, &b| seq[a].cmp(&seq[b]).then(a.cmp(&b)));
    order
}

fn check_sorted_distinct<T: Ord>(seq: &[T], order: &[usize]) -> Result<()> {
    for w in order.windows(2) {
        if seq[w[0]] == seq[w[1]] {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::DuplicateValues {
                first: a + 1,
                second: b + 1,
            });
        }
    }
    Ok(())
}

/// Fails with [`Error::DuplicateValues`] naming the earliest-sorted tie.
pub fn check_distinct<T: Ord>(seq: &[T]) -> Result<()> {
    check_sorted_distinct(seq, &sorted_positions(seq))
}

/// Positions (1-based) of the strict upper records of `seq`.
pub fn record_indices<T: PartialOrd>(seq: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best: Option<&T> = None;
    for (i, v) in seq.iter().enumerate() {
        if best.is_none_or(|b| v > b) {
            out.push(i + 1);
            best = Some(v);
        }
    }
    out
}

/// One left-to-right sweep: records stay, everything else is discarded in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PassResult<T> {
    pub records: Vec<T>,
    pub discards: Vec<T>,
    /// 1-based positions of `records` in the input.
    pub record_positions: Vec<usize>,
    /// 1-based positions of `discards` in the input.
    pub discard_positions: Vec<usize>,
}

impl<T: Clone> PassResult<T> {
    /// Interleaves records and discards back by original position.
    pub fn merge(&self) -> Vec<T> {
        let n = self.records.len() + self.discards.len();
        let mut out: Vec<Option<T>> = vec![None; n];
        for (p, v) in self.record_positions.iter().zip(&self.records) {
            out[p - 1] = Some(v.clone());
        }
        for (p, v) in self.discard_positions.iter().zip(&self.discards) {
            out[p - 1] = Some(v.clone());
        }
        out.into_iter().map(|v| v.expect("positions cover the input")).collect()
    }
}

/// Ties are discarded: a value equal to the running maximum is not a record.
pub fn ds_pass<T: PartialOrd + Clone>(seq: &[T]) -> PassResult<T> {
    let record_positions = record_indices(seq);
    let mut records = Vec::with_capacity(record_positions.len());
    let mut discards = Vec::with_capacity(seq.len() - record_positions.len());
    let mut discard_positions = Vec::with_capacity(discards.capacity());
    let mut next_record = record_positions.iter().peekable();
    for (i, v) in seq.iter().enumerate() {
        if next_record.peek() == Some(&&(i + 1)) {
            next_record.next();
            records.push(v.clone());
        } else {
            discards.push(v.clone());
            discard_positions.push(i + 1);
        }
    }
    PassResult {
        records,
        discards,
        record_positions,
        discard_positions,
    }
}

/// The layers removed by successive DS passes, as sets of original positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    /// Each layer lists 1-based positions in increasing order.
    pub layers: Vec<Vec<usize>>,
}

impl LayerDecomposition {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// The values of each layer, in sequence order.
    pub fn values<T: Clone>(&self, seq: &[T]) -> Vec<Vec<T>> {
        self.layers
            .iter()
            .map(|layer| layer.iter().map(|&p| seq[p - 1].clone()).collect())
            .collect()
    }
}

/// Runs DS passes on the discards until nothing is left.
pub fn ds_layers<T: Ord>(seq: &[T]) -> Result<LayerDecomposition> {
    check_distinct(seq)?;
    let mut remaining: Vec<usize> = (0..seq.len()).collect();
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let mut layer = Vec::new();
        let mut rest = Vec::with_capacity(remaining.len());
        let mut best: Option<&T> = None;
        for &i in &remaining {
            if best.is_none_or(|b| &seq[i] > b) {
                best = Some(&seq[i]);
                layer.push(i + 1);
            } else {
                rest.push(i);
            }
        }
        layers.push(layer);
        remaining = rest;
    }
    Ok(LayerDecomposition { layers })
}

/// Pass count by direct simulation; `O(n * D)`, used as the reference.
pub fn ds_passes_naive<T: Ord>(seq: &[T]) -> Result<usize> {
    ds_layers(seq).map(|l| l.depth())
}

/// Positions ordered by `i ≺ j` iff `i < j` and `p_i > p_j`.
///
/// Only the permutation is stored; comparability is evaluated on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsPoset {
    p: Permutation,
}

impl DsPoset {
    pub fn new(p: Permutation) -> Self {
        Self { p }
    }

    pub fn from_values<T: Ord>(seq: &[T]) -> Result<Self> {
        Permutation::from_ranks(seq).map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.p
    }

    /// `i ≺ j` for 1-based positions.
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        i < j && self.p[i - 1] > self.p[j - 1]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.precedes(i, j) || self.precedes(j, i)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Elements of `subset` with no predecessor inside `subset`.
    pub fn minimal_elements(&self, subset: &[usize]) -> Result<Vec<usize>> {
        for &i in subset {
            self.check_index(i)?;
        }
        let mut out: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&j| !subset.iter().any(|&i| self.precedes(i, j)))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// True iff no two members of `indices` are comparable.
pub fn is_antichain(poset: &DsPoset, indices: &[usize]) -> Result<bool> {
    for &i in indices {
        poset.check_index(i)?;
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    // Pairwise incomparable iff the values read in position order increase.
    Ok(sorted
        .windows(2)
        .all(|w| poset.p[w[0] - 1] < poset.p[w[1] - 1]))
}

/// Height of the poset by `O(n²)` dynamic programming over all pairs.
pub fn longest_chain_bruteforce(poset: &DsPoset) -> Result<usize> {
    longest_chain_with_limit(poset, CHAIN_ORACLE_LIMIT)
}

pub fn longest_chain_with_limit(poset: &DsPoset, limit: usize) -> Result<usize> {
    let n = poset.len();
    if n > limit {
        return Err(Error::SizeLimitExceeded {
            what: "longest chain oracle",
            n,
            limit,
        });
    }
    // ending[j] = longest chain whose maximum element is j.
    let mut ending = vec![1usize; n];
    for j in 1..=n {
        for i in 1..j {
            if poset.precedes(i, j) {
                ending[j - 1] = ending[j - 1].max(ending[i - 1] + 1);
            }
        }
    }
    Ok(ending.into_iter().max().unwrap_or(0))
}

/// Fewest antichains whose union is the whole poset, by exhaustive search over
/// subsets (`3^n` work). Independent of any chain argument.
pub fn min_antichain_partition(poset: &DsPoset) -> Result<usize> {
    let n = poset.len();
    if n > MIRSKY_ORACLE_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "antichain partition search",
            n,
            limit: MIRSKY_ORACLE_LIMIT,
        });
    }
    let full = (1usize << n) - 1;
    let mut antichain = vec![true; full + 1];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        antichain[mask] = antichain[rest]
            && (0..n)
                .filter(|b| rest >> b & 1 == 1)
                .all(|b| !poset.comparable(low + 1, b + 1));
    }
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let others = mask ^ low;
        // Every block containing the lowest element, i.e. low | (subset of others).
        let mut sub = others;
        loop {
            let block = sub | low;
            if antichain[block] {
                let cand = best[mask ^ block].saturating_add(1);
                if cand < best[mask] {
                    best[mask] = cand;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    Ok(best[full])
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: [u32; 6] = [2, 5, 3, 9, 6, 4];

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn records_of_worked_example() {
        assert_eq!(record_indices(&EXAMPLE), vec![1, 2, 4]);
        assert_eq!(record_indices(&[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(record_indices(&[3, 2, 1]), vec![1]);
        assert!(record_indices::<u32>(&[]).is_empty());
    }

    #[test]
    fn single_pass() {
        let r = ds_pass(&EXAMPLE);
        assert_eq!(r.records, vec![2, 5, 9]);
        assert_eq!(r.discards, vec![3, 6, 4]);
        assert_eq!(r.discard_positions, vec![3, 5, 6]);
        assert_eq!(r.merge(), EXAMPLE.to_vec());

        let empty = ds_pass::<u32>(&[]);
        assert!(empty.records.is_empty() && empty.discards.is_empty());
        let one = ds_pass(&[7]);
        assert_eq!((one.records, one.discards), (vec![7], vec![]));
    }

    #[test]
    fn pass_discards_ties() {
        let r = ds_pass(&[1.0, 3.0, 3.0, 2.0, 4.0]);
        assert_eq!(r.records, vec![1.0, 3.0, 4.0]);
        assert_eq!(r.discards, vec![3.0, 2.0]);
    }

    #[test]
    fn layers_of_worked_example() {
        let l = ds_layers(&EXAMPLE).unwrap();
        assert_eq!(l.layers, vec![vec![1, 2, 4], vec![3, 5], vec![6]]);
        assert_eq!(l.values(&EXAMPLE), vec![vec![2, 5, 9], vec![3, 6], vec![4]]);
        assert_eq!(l.depth(), 3);
    }

    #[test]
    fn layers_edge_cases() {
        assert_eq!(ds_layers::<u32>(&[]).unwrap().depth(), 0);
        let inc: Vec<u32> = (1..=50).collect();
        assert_eq!(ds_layers(&inc).unwrap().depth(), 1);
        assert_eq!(
            ds_layers(&[3, 2, 1]).unwrap().layers,
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            ds_layers(&[4, 1, 4]),
            Err(Error::DuplicateValues { first: 1, second: 3 })
        );
    }

    #[test]
    fn naive_pass_counts() {
        assert_eq!(ds_passes_naive(&EXAMPLE).unwrap(), 3);
        assert_eq!(ds_passes_naive(&[1]).unwrap(), 1);
        assert_eq!(ds_passes_naive(&[4, 1, 3, 2]).unwrap(), 3);
    }

    #[test]
    fn antichains() {
        let poset = DsPoset::from_values(&EXAMPLE).unwrap();
        assert!(is_antichain(&poset, &[1, 2, 4]).unwrap());
        assert!(is_antichain(&poset, &[5]).unwrap());
        assert!(!is_antichain(&poset, &[4, 5]).unwrap());
        let rev = DsPoset::new(perm(&[3, 2, 1]));
        assert!(!is_antichain(&rev, &[1, 2]).unwrap());
        assert_eq!(
            is_antichain(&rev, &[0]),
            Err(Error::IndexOutOfRange { index: 0, n: 3 })
        );
        assert_eq!(
            is_antichain(&rev, &[4]),
            Err(Error::IndexOutOfRange { index: 4, n: 3 })
        );
    }

    #[test]
    fn chain_oracle() {
        let poset = DsPoset::from_values(&EXAMPLE).unwrap();
        assert_eq!(longest_chain_bruteforce(&poset).unwrap(), 3);
        assert_eq!(
            longest_chain_bruteforce(&DsPoset::new(Permutation::identity(9))).unwrap(),
            1
        );
        assert_eq!(
            longest_chain_bruteforce(&DsPoset::new(perm(&[1, 4, 2, 6, 5, 3]))).unwrap(),
            3
        );
        let big = DsPoset::new(Permutation::identity(CHAIN_ORACLE_LIMIT + 1));
        assert!(matches!(
            longest_chain_bruteforce(&big),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn antichain_partition_search() {
        let poset = DsPoset::from_values(&EXAMPLE).unwrap();
        assert_eq!(min_antichain_partition(&poset).unwrap(), 3);
        assert_eq!(min_antichain_partition(&DsPoset::new(Permutation::identity(0))).unwrap(), 0);
        assert_eq!(
            min_antichain_partition(&DsPoset::new(perm(&[8, 7, 6, 5, 4, 3, 2, 1]))).unwrap(),
            8
        );
        assert!(min_antichain_partition(&DsPoset::new(Permutation::identity(9))).is_err());
    }

    #[test]
    fn minimal_elements_are_first_layer() {
        let poset = DsPoset::from_values(&EXAMPLE).unwrap();
        assert_eq!(poset.minimal_elements(&[1, 2, 3, 4, 5, 6]).unwrap(), vec![1, 2, 4]);
        assert_eq!(poset.minimal_elements(&[3, 5, 6]).unwrap(), vec![3, 5]);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(matches!(Permutation::new(vec![0, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(Permutation::new(vec![1, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(Permutation::new(vec![1, 3]), Err(Error::NotAPermutation(_))));
        assert_eq!(
            Permutation::from_ranks(&[2.5f64, -1.0, 9.0].map(|x| (x * 10.0) as i64)).unwrap(),
            perm(&[2, 1, 3])
        );
        assert_eq!(perm(&[2, 3, 1]).complement(), perm(&[2, 1, 3]));
    }

    #[test]
    fn enumerates_symmetric_group() {
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(1).count(), 1);
        let s4: Vec<_> = all_permutations(4).collect();
        assert_eq!(s4.len(), 24);
        assert_eq!(s4[0], Permutation::identity(4));
        assert_eq!(s4[23], perm(&[4, 3, 2, 1]));
        let mut dedup = s4.clone();
        dedup.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        dedup.dedup();
        assert_eq!(dedup.len(), 24);
    }
}
