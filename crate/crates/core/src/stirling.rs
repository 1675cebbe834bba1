//! Unsigned Stirling numbers of the first kind, the exact distribution of the
//! record count of a uniform permutation, and the exact expected pass count of
//! the resampling procedure.
//!
//! Everything here is exact. The table is dense and triangular, so memory grows
//! as `O(n_max²)` big integers; `n_max` in the low hundreds is the intended range.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactRational;

/// `c(n, r)` for `0 <= r <= n <= n_max`, the number of permutations of `n`
/// elements with exactly `r` records.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
    factorials: Vec<BigUint>,
}

impl StirlingTable {
    /// Fills the table by `c(n, r) = c(n-1, r-1) + (n-1) c(n-1, r)`.
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for r in 1..=n {
                let mut v = prev[r - 1].clone();
                if r < n {
                    v += &prev[r] * (n - 1);
                }
                row[r] = v;
            }
            rows.push(row);
        }
        let mut factorials = Vec::with_capacity(n_max + 1);
        factorials.push(BigUint::one());
        for n in 1..=n_max {
            let f = &factorials[n - 1] * n;
            factorials.push(f);
        }
        Self { rows, factorials }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n, r)`, zero when `r > n`.
    pub fn get(&self, n: usize, r: usize) -> Result<BigUint> {
        let row = self.row(n)?;
        Ok(row.get(r).cloned().unwrap_or_default())
    }

    /// `c(n, 0), ..., c(n, n)`.
    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice).ok_or(Error::OutOfTableRange {
            n,
            n_max: self.n_max(),
        })
    }

    pub fn factorial(&self, n: usize) -> Result<&BigUint> {
        self.factorials.get(n).ok_or(Error::OutOfTableRange {
            n,
            n_max: self.n_max(),
        })
    }
}

/// Alias matching the table constructor's role.
pub fn stirling_table(n_max: usize) -> StirlingTable {
    StirlingTable::new(n_max)
}

/// `P(N_n = r) = c(n, r) / n!`, indexed by `r = 0..=n` (entry 0 is zero for `n >= 1`).
pub fn record_count_pmf(n: usize, table: &StirlingTable) -> Result<Vec<ExactRational>> {
    let row = table.row(n)?;
    let fact = BigInt::from(table.factorial(n)?.clone());
    Ok(row
        .iter()
        .map(|c| ExactRational::new(BigInt::from(c.clone()), fact.clone()))
        .collect())
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: usize) -> ExactRational {
    (1..=n).fold(ExactRational::zero(), |acc, k| {
        acc + ExactRational::new(BigInt::one(), BigInt::from(k))
    })
}

/// Exact expected pass counts `d_0, ..., d_n` of the resampling procedure.
#[derive(Debug, Clone, PartialEq)]
pub struct RdsExpectationTable {
    pub d: Vec<ExactRational>,
}

impl RdsExpectationTable {
    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.d.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.d.len().saturating_sub(1)
    }
}

/// `d_n = 1 + Σ_{r=1..n} d_{n-r} c(n, r) / n!` with `d_0 = 0`, evaluated in increasing `n`.
///
/// Earlier values are held as integer numerators over one running common
/// denominator `L`. Every denominator involved divides `L · n!`, whose prime
/// factors are all at most `n`, so reduction tracks prime exponents and strips
/// them from the numerator by small divisions instead of a general gcd.
pub fn rds_expectation(n: usize, table: &StirlingTable) -> Result<RdsExpectationTable> {
    if n > table.n_max() {
        return Err(Error::OutOfTableRange {
            n,
            n_max: table.n_max(),
        });
    }
    let primes = primes_up_to(n);
    let mut d: Vec<ExactRational> = Vec::with_capacity(n + 1);
    d.push(ExactRational::zero());
    // scaled[k] = d_k * L, with L = Π primes[i]^common_exp[i].
    let mut common_exp = vec![0u32; primes.len()];
    let mut scaled: Vec<BigUint> = vec![BigUint::zero()];
    for m in 1..=n {
        let row = table.row(m)?;
        let weighted: BigUint = (1..m).map(|r| &scaled[m - r] * &row[r]).sum();
        // d_m = (L m! + weighted) / (L m!)
        let den_exp: Vec<u32> = primes
            .iter()
            .zip(&common_exp)
            .map(|(&p, &e)| e + legendre(m, p))
            .collect();
        let den = prime_power_product(&primes, &den_exp);
        let mut num = weighted + &den;
        let mut red_exp = den_exp;
        for (i, &p) in primes.iter().enumerate() {
            red_exp[i] -= strip_factor(&mut num, p, red_exp[i]);
        }
        let red_den = prime_power_product(&primes, &red_exp);

        let mut grew = false;
        let lift: Vec<u32> = common_exp
            .iter_mut()
            .zip(&red_exp)
            .map(|(c, &e)| {
                let up = e.saturating_sub(*c);
                *c += up;
                grew |= up > 0;
                up
            })
            .collect();
        if grew {
            let factor = prime_power_product(&primes, &lift);
            for s in scaled.iter_mut() {
                *s *= &factor;
            }
        }
        let to_common: Vec<u32> = common_exp.iter().zip(&red_exp).map(|(c, e)| c - e).collect();
        scaled.push(&num * prime_power_product(&primes, &to_common));
        d.push(ExactRational::new_raw(BigInt::from(num), BigInt::from(red_den)));
    }
    Ok(RdsExpectationTable { d })
}

fn primes_up_to(n: usize) -> Vec<u64> {
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
}

/// Exponent of `p` in `m!`.
fn legendre(m: usize, p: u64) -> u32 {
    let (mut e, mut q) = (0u64, p);
    while q <= m as u64 {
        e += m as u64 / q;
        q = q.saturating_mul(p);
    }
    e as u32
}

fn prime_power_product(primes: &[u64], exps: &[u32]) -> BigUint {
    primes
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
}

/// Divides `p` out of `num` up to `max` times; returns how many times it did.
fn strip_factor(num: &mut BigUint, p: u64, max: u32) -> u32 {
    let mut removed = 0;
    while removed < max {
        // Largest chunk p^c that fits a u64 and does not overshoot `max`.
        let mut c = 1;
        let mut pc = p;
        while c < max - removed && pc.checked_mul(p).is_some() {
            pc *= p;
            c += 1;
        }
        let (q, r) = num.div_rem(&BigUint::from(pc));
        if r.is_zero() {
            *num = q;
            removed += c;
            continue;
        }
        // Fewer than c factors remain: peel them one by one.
        while removed < max {
            let (q, r) = num.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                return removed;
            }
            *num = q;
            removed += 1;
        }
    }
    removed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{all_permutations, record_indices};

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn counts_by_enumeration(n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n + 1];
        for p in all_permutations(n) {
            counts[record_indices(&p).len()] += 1;
        }
        counts
    }

    #[test]
    fn small_rows_match_enumeration() {
        let t = StirlingTable::new(7);
        for n in 0..=7 {
            let expected: Vec<BigUint> = counts_by_enumeration(n).into_iter().map(BigUint::from).collect();
            assert_eq!(t.row(n).unwrap(), expected.as_slice(), "n = {n}");
        }
        assert_eq!(t.get(3, 0).unwrap(), 0u32.into());
        assert_eq!(t.get(4, 1).unwrap(), 6u32.into());
        assert_eq!(t.get(3, 9).unwrap(), 0u32.into());
    }

    #[test]
    fn boundary_values_and_row_sums() {
        let t = StirlingTable::new(120);
        assert_eq!(t.get(0, 0).unwrap(), BigUint::one());
        for n in 1..=120 {
            assert!(t.get(n, 0).unwrap().is_zero());
            assert_eq!(t.get(n, n).unwrap(), BigUint::one());
            let sum: BigUint = t.row(n).unwrap().iter().sum();
            assert_eq!(&sum, t.factorial(n).unwrap());
        }
        assert_eq!(t.get(121, 0), Err(Error::OutOfTableRange { n: 121, n_max: 120 }));
    }

    #[test]
    fn pmf_and_harmonic() {
        let t = StirlingTable::new(200);
        assert_eq!(record_count_pmf(2, &t).unwrap(), vec![q(0, 1), q(1, 2), q(1, 2)]);
        assert_eq!(harmonic(0), q(0, 1));
        assert_eq!(harmonic(1), q(1, 1));
        assert_eq!(harmonic(2), q(3, 2));
        assert_eq!(harmonic(3), q(11, 6));
        for n in [0, 1, 3, 17, 200] {
            let pmf = record_count_pmf(n, &t).unwrap();
            let total: ExactRational = pmf.iter().sum();
            assert_eq!(total, q(1, 1));
            let mean: ExactRational = pmf
                .iter()
                .enumerate()
                .map(|(r, p)| p * BigInt::from(r))
                .sum();
            assert_eq!(mean, harmonic(n), "n = {n}");
        }
        assert!(record_count_pmf(201, &t).is_err());
    }

    /// The literal recurrence, one fraction at a time.
    fn rds_literal(n: usize, t: &StirlingTable) -> Vec<ExactRational> {
        let mut d = vec![q(0, 1)];
        for m in 1..=n {
            let fact = BigInt::from(t.factorial(m).unwrap().clone());
            let mut v = q(1, 1);
            for r in 1..=m {
                let c = BigInt::from(t.get(m, r).unwrap());
                v += &d[m - r] * ExactRational::new(c, fact.clone());
            }
            d.push(v);
        }
        d
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(legendre(10, 2), 8);
        assert_eq!(legendre(25, 5), 6);
        let mut x = BigUint::from(2u32).pow(130) * 3u32;
        assert_eq!(strip_factor(&mut x, 2, 200), 130);
        assert_eq!(x, BigUint::from(3u32));
        let mut y = BigUint::from(2u32).pow(70);
        assert_eq!(strip_factor(&mut y, 2, 65), 65);
        assert_eq!(y, BigUint::from(32u32));
    }

    #[test]
    fn rds_recurrence_values() {
        let t = StirlingTable::new(60);
        let d = rds_expectation(60, &t).unwrap();
        assert_eq!(d.d[0], q(0, 1));
        assert_eq!(d.d[1], q(1, 1));
        assert_eq!(d.d[2], q(3, 2));
        assert_eq!(d.d[3], q(2, 1));
        assert_eq!(d.d, rds_literal(60, &t));
        for v in &d.d {
            assert!(v.numer().gcd(v.denom()).is_one() && v.denom() > &BigInt::zero());
        }
        for n in 1..60 {
            assert!(d.d[n + 1] > d.d[n]);
            assert!(d.d[n + 1] <= q(n as i64 + 1, 1));
        }
        assert!(rds_expectation(61, &t).is_err());
    }
}
