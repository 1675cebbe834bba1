//! Integer partitions, hook lengths, standard Young tableaux and
//! Robinson–Schensted row insertion.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permcore::Permutation;

/// Largest `n` accepted by [`syt_enumerate`].
pub const SYT_ENUMERATION_LIMIT: usize = 12;

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, i.e. the length of the first column.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the first row (zero for the empty partition).
    pub fn first_row(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn first_column(&self) -> usize {
        self.parts.len()
    }

    /// Boxes as 1-based `(row, col)` pairs, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.parts.get(row - 1).is_some_and(|&len| col <= len)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `n` in reverse-lexicographic order, starting from `(n)`.
pub fn partitions(n: usize) -> Partitions {
    Partitions::with_max_part(n, n)
}

/// Reverse-lexicographic iterator over partitions, optionally capped in part size.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Partitions {
    /// Partitions of `n` whose parts are all at most `max_part`.
    pub fn with_max_part(n: usize, max_part: usize) -> Self {
        let next = if n == 0 {
            Some(Vec::new())
        } else if max_part == 0 {
            None
        } else {
            let mut first = vec![max_part; n / max_part];
            if !n.is_multiple_of(max_part) {
                first.push(n % max_part);
            }
            Some(first)
        };
        Self { next }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: lower the last part exceeding 1 and refill greedily.
        if let Some(k) = current.iter().rposition(|&p| p > 1) {
            let cap = current[k] - 1;
            let mut rest: usize = current[k + 1..].iter().sum::<usize>() + 1;
            let mut succ = current[..k].to_vec();
            succ.push(cap);
            while rest > 0 {
                let take = rest.min(cap);
                succ.push(take);
                rest -= take;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

/// Column lengths of the diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let cols = lambda.first_row();
    let parts = (1..=cols)
        .map(|c| lambda.parts.iter().take_while(|&&len| len >= c).count())
        .collect();
    Partition { parts }
}

/// `arm + leg + 1` for the 1-based box `(row, col)`.
pub fn hook_length(lambda: &Partition, row: usize, col: usize) -> Result<usize> {
    if !lambda.contains_box(row, col) {
        return Err(Error::BoxOutsideShape { row, col });
    }
    let arm = lambda.parts[row - 1] - col;
    let leg = lambda.parts[row..].iter().take_while(|&&len| len >= col).count();
    Ok(arm + leg + 1)
}

/// Number of standard tableaux of shape `lambda`, by the hook-length formula.
pub fn syt_count(lambda: &Partition) -> BigUint {
    let factorial = product_of(1..=lambda.size() as u64);
    syt_count_given_factorial(lambda, &factorial)
}

/// [`syt_count`] with `n!` supplied by the caller.
pub(crate) fn syt_count_given_factorial(lambda: &Partition, factorial: &BigUint) -> BigUint {
    let (f, rem) = num_integer::Integer::div_rem(factorial, &hook_product(lambda));
    debug_assert!(num_traits::Zero::is_zero(&rem));
    f
}

/// `Π_b h(b)` over all boxes, with `h(r, c) = λ_r - c + λ'_c - r + 1`.
pub fn hook_product(lambda: &Partition) -> BigUint {
    let cols = conjugate(lambda);
    let hooks = lambda.parts.iter().enumerate().flat_map(|(r, &len)| {
        let cols = &cols.parts;
        (0..len).map(move |c| (len - c + cols[c] - r - 1) as u64)
    });
    product_of(hooks)
}

/// Multiplies small factors in machine words before touching big integers.
fn product_of(factors: impl Iterator<Item = u64>) -> BigUint {
    let mut acc = BigUint::one();
    let mut word: u64 = 1;
    for f in factors {
        match word.checked_mul(f) {
            Some(w) => word = w,
            None => {
                acc *= word;
                word = f;
            }
        }
    }
    acc * word
}

/// A filling of a diagram with `1..=n`, increasing along rows and down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StandardTableau {
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Self { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(format!("not a standard tableau: {msg}")));
        let lens: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        if Partition::new(lens).is_err() {
            return bad("row lengths do not form a partition".into());
        }
        let n = self.size();
        let mut seen = vec![false; n];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v as usize > n || std::mem::replace(&mut seen[v as usize - 1], true) {
                    return bad(format!("entry {v} is not from 1..={n} or repeats"));
                }
                if c > 0 && row[c - 1] >= v {
                    return bad(format!("row {} not increasing", r + 1));
                }
                if r > 0 && self.rows[r - 1][c] >= v {
                    return bad(format!("column {} not increasing", c + 1));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Every standard tableau of shape `lambda` (at most [`SYT_ENUMERATION_LIMIT`] boxes).
pub fn syt_enumerate(lambda: &Partition) -> Result<Vec<StandardTableau>> {
    let n = lambda.size();
    if n > SYT_ENUMERATION_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "tableau enumeration",
            n,
            limit: SYT_ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); lambda.len()];
    place_next(lambda.parts(), &mut rows, 1, n as u32, &mut out);
    Ok(out)
}

fn place_next(shape: &[usize], rows: &mut [Vec<u32>], k: u32, n: u32, out: &mut Vec<StandardTableau>) {
    if k > n {
        out.push(StandardTableau { rows: rows.to_vec() });
        return;
    }
    for r in 0..shape.len() {
        let len = rows[r].len();
        let fits_row = len < shape[r];
        let supported = r == 0 || rows[r - 1].len() > len;
        if fits_row && supported {
            rows[r].push(k);
            place_next(shape, rows, k + 1, n, out);
            rows[r].pop();
        }
    }
}

/// Output of Robinson–Schensted row insertion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rsk {
    /// Insertion tableau.
    pub p: StandardTableau,
    /// Recording tableau.
    pub q: StandardTableau,
    pub shape: Partition,
}

/// Robinson–Schensted correspondence of a permutation of `1..=n`.
pub fn rsk_shape(p: &[u32]) -> Result<Rsk> {
    let perm = Permutation::new(p.to_vec())?;
    Ok(rsk(&perm))
}

/// Row insertion, each value bumping the smallest entry greater than it.
pub fn rsk(p: &Permutation) -> Rsk {
    let mut ins: Vec<Vec<u32>> = Vec::new();
    let mut rec: Vec<Vec<u32>> = Vec::new();
    for (step, &value) in p.iter().enumerate() {
        let mut x = value;
        let mut r = 0;
        loop {
            if r == ins.len() {
                ins.push(vec![x]);
                rec.push(vec![step as u32 + 1]);
                break;
            }
            let row = &mut ins[r];
            let pos = row.partition_point(|&e| e < x);
            if pos == row.len() {
                row.push(x);
                rec[r].push(step as u32 + 1);
                break;
            }
            x = std::mem::replace(&mut row[pos], x);
            r += 1;
        }
    }
    let shape = Partition {
        parts: ins.iter().map(Vec::len).collect(),
    };
    Rsk {
        p: StandardTableau { rows: ins },
        q: StandardTableau { rows: rec },
        shape,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::all_permutations;
    use std::collections::HashSet;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_four_in_order() {
        let got: Vec<Vec<usize>> = partitions(4).map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(1).collect::<Vec<_>>(), vec![part(&[1])]);
        assert_eq!(partitions(0).collect::<Vec<_>>(), vec![part(&[])]);
        assert!(partitions(6).any(|p| p == part(&[3, 2, 1])));
    }

    #[test]
    fn partition_counts() {
        // p(n) from the Euler pentagonal recurrence.
        let mut p = vec![1i64];
        for n in 1..=40i64 {
            let mut total = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * p[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    total += sign * p[(n - g2) as usize];
                }
            }
            p.push(total);
        }
        for (n, &count) in p.iter().enumerate() {
            let all: Vec<Partition> = partitions(n).collect();
            assert_eq!(all.len() as i64, count, "n = {n}");
            assert!(all.windows(2).all(|w| w[0] > w[1]), "order at n = {n}");
            assert!(all.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn capped_partitions() {
        let got: Vec<Vec<usize>> = Partitions::with_max_part(5, 2).map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 2, 1], vec![2, 1, 1, 1], vec![1, 1, 1, 1, 1]]);
        assert_eq!(Partitions::with_max_part(3, 0).count(), 0);
    }

    #[test]
    fn rejects_malformed_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate(&part(&[3, 2, 1])), part(&[3, 2, 1]));
        assert_eq!(conjugate(&part(&[3, 1])), part(&[2, 1, 1]));
        assert_eq!(conjugate(&part(&[5])), part(&[1, 1, 1, 1, 1]));
        assert_eq!(conjugate(&part(&[])), part(&[]));
        for n in 0..=60 {
            for l in partitions(n) {
                assert_eq!(conjugate(&conjugate(&l)), l);
            }
        }
    }

    #[test]
    fn hooks() {
        let l = part(&[3, 2, 1]);
        assert_eq!(hook_length(&l, 1, 1), Ok(5));
        assert_eq!(hook_length(&l, 1, 3), Ok(1));
        assert_eq!(hook_length(&l, 2, 1), Ok(3));
        assert_eq!(hook_length(&part(&[1]), 1, 1), Ok(1));
        assert_eq!(hook_length(&l, 2, 3), Err(Error::BoxOutsideShape { row: 2, col: 3 }));
        assert_eq!(hook_length(&l, 0, 1), Err(Error::BoxOutsideShape { row: 0, col: 1 }));
    }

    #[test]
    fn hook_product_matches_box_hooks() {
        for n in 0..=15 {
            for l in partitions(n) {
                let by_box: BigUint = l
                    .boxes()
                    .map(|(r, c)| BigUint::from(hook_length(&l, r, c).unwrap()))
                    .product();
                assert_eq!(hook_product(&l), by_box, "{l}");
            }
        }
    }

    #[test]
    fn hook_formula_matches_enumeration() {
        assert_eq!(syt_count(&part(&[3, 2, 1])), 16u32.into());
        assert_eq!(syt_count(&part(&[7])), 1u32.into());
        assert_eq!(syt_count(&part(&[2, 1])), 2u32.into());
        assert_eq!(syt_enumerate(&part(&[2, 1])).unwrap().len(), 2);
        assert_eq!(syt_enumerate(&part(&[1, 1, 1])).unwrap().len(), 1);
        for n in 0..=SYT_ENUMERATION_LIMIT {
            for l in partitions(n) {
                let all = syt_enumerate(&l).unwrap();
                assert_eq!(BigUint::from(all.len()), syt_count(&l), "{l}");
                assert!(all.iter().all(|t| t.is_standard() && t.shape() == l));
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
        assert!(syt_enumerate(&part(&[13])).is_err());
    }

    #[test]
    fn tableau_validation() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3, 4], vec![5]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 3], vec![1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 4]]).is_err());
    }

    #[test]
    fn rsk_examples() {
        assert_eq!(rsk_shape(&[1, 2, 3]).unwrap().shape, part(&[3]));
        assert_eq!(rsk_shape(&[3, 2, 1]).unwrap().shape, part(&[1, 1, 1]));
        let r = rsk_shape(&[1, 4, 2, 6, 5, 3]).unwrap();
        assert_eq!(r.shape, part(&[3, 2, 1]));
        assert_eq!(r.shape.first_column(), 3);
        assert_eq!(r.p.rows(), &[vec![1, 2, 3], vec![4, 5], vec![6]]);
        assert_eq!(r.q.rows(), &[vec![1, 2, 4], vec![3, 5], vec![6]]);
        assert!(matches!(rsk_shape(&[1, 1]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn rsk_is_injective_into_standard_pairs() {
        for n in 0..=6 {
            let mut seen = HashSet::new();
            for p in all_permutations(n) {
                let r = rsk(&p);
                assert!(r.p.is_standard() && r.q.is_standard());
                assert_eq!(r.p.shape(), r.q.shape());
                assert!(seen.insert((r.p, r.q)), "collision at {p:?}");
            }
        }
    }
}
