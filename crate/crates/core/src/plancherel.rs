//! Exact expected pass count of the non-resampling procedure as a sum over the
//! Plancherel measure `(f^λ)² / n!` on partitions of `n`.
//!
//! Sums are accumulated as integers (`Σ weight · (f^λ)²`) and divided by `n!`
//! once, so the result is independent of the order in which partial sums are
//! combined. Work is split by first part across the rayon pool.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::tableaux::{syt_count, syt_count_given_factorial, Partition, Partitions};

/// Default ceiling on `n`; `p(80)` is about 1.6 × 10⁷ partitions.
pub const DEFAULT_MAX_N: usize = 80;

/// `P(Λ_n = λ) = (f^λ)² / n!`.
pub fn plancherel_pmf(lambda: &Partition) -> ExactRational {
    let f = BigInt::from(syt_count(lambda));
    ExactRational::new(&f * &f, BigInt::from(factorial(lambda.size())))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `E[D_n]` together with, optionally, each partition's contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PlancherelExpectation {
    pub n: usize,
    pub value: ExactRational,
    /// `(λ, λ'_1 · (f^λ)² / n!)` in reverse-lexicographic order of `λ`.
    pub terms: Option<Vec<(Partition, ExactRational)>>,
}

/// Integer sums over all `λ ⊢ n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlancherelSums {
    /// `Σ (f^λ)²`, which should equal `n!`.
    pub total: BigUint,
    /// `Σ λ_1 (f^λ)²`.
    pub first_row: BigUint,
    /// `Σ λ'_1 (f^λ)²`.
    pub first_column: BigUint,
}

impl PlancherelSums {
    fn add(mut self, other: Self) -> Self {
        self.total += other.total;
        self.first_row += other.first_row;
        self.first_column += other.first_column;
        self
    }
}

/// Size-bounded front end for the Plancherel sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlancherelEngine {
    pub max_n: usize,
    pub log_terms: bool,
}

impl Default for PlancherelEngine {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            log_terms: false,
        }
    }
}

impl PlancherelEngine {
    pub fn with_max_n(max_n: usize) -> Self {
        Self {
            max_n,
            ..Self::default()
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::SizeLimitExceeded {
                what: "Plancherel sum",
                n,
                limit: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn sums(&self, n: usize) -> Result<PlancherelSums> {
        self.check(n)?;
        if n == 0 {
            return Ok(PlancherelSums {
                total: BigUint::one(),
                ..PlancherelSums::default()
            });
        }
        let fact = factorial(n);
        Ok((1..=n)
            .into_par_iter()
            .map(|first| {
                Partitions::with_max_part(n - first, first)
                    .map(|rest| {
                        let mut parts = Vec::with_capacity(rest.len() + 1);
                        parts.push(first);
                        parts.extend_from_slice(rest.parts());
                        let lambda = Partition::new(parts).expect("prefixing the largest part");
                        let f = syt_count_given_factorial(&lambda, &fact);
                        let f2 = &f * &f;
                        PlancherelSums {
                            first_row: &f2 * lambda.first_row(),
                            first_column: &f2 * lambda.first_column(),
                            total: f2,
                        }
                    })
                    .fold(PlancherelSums::default(), PlancherelSums::add)
            })
            .reduce(PlancherelSums::default, PlancherelSums::add))
    }

    pub fn expectation(&self, n: usize) -> Result<PlancherelExpectation> {
        let sums = self.sums(n)?;
        let value = if n == 0 {
            ExactRational::zero()
        } else {
            ExactRational::new(BigInt::from(sums.first_column), BigInt::from(factorial(n)))
        };
        let terms = self.log_terms.then(|| {
            crate::tableaux::partitions(n)
                .map(|l| {
                    let w = plancherel_pmf(&l) * BigInt::from(l.first_column());
                    (l, w)
                })
                .collect()
        });
        Ok(PlancherelExpectation { n, value, terms })
    }

    pub fn conjugation_check(&self, n: usize) -> Result<bool> {
        let sums = self.sums(n)?;
        Ok(sums.first_row == sums.first_column)
    }
}

/// `E[D_n] = Σ_{λ ⊢ n} λ'_1 (f^λ)² / n!` under the default size bound.
pub fn exact_ds_expectation(n: usize) -> Result<PlancherelExpectation> {
    PlancherelEngine::default().expectation(n)
}

/// Whether the first row and first column have equal Plancherel expectation.
pub fn plancherel_conjugation_check(n: usize) -> Result<bool> {
    PlancherelEngine::default().conjugation_check(n)
}
