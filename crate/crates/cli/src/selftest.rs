//! Invariant suites bundled into `dsort selftest`.

use std::time::Instant;

use dsort_core::exact::to_f64;
use dsort_core::permcore::all_permutations;
use dsort_core::tableaux::rsk;
use dsort_core::{
    conjugate, ds_layers, ds_passes_naive, exact_ds_expectation, harmonic, is_antichain,
    lds_permutation, lis_permutation, longest_chain_bruteforce, mc_ds, mc_rds,
    min_antichain_partition, partitions, plancherel_conjugation_check, rds_expectation,
    record_count_pmf, record_indices, syt_count, syt_enumerate, DsPoset, ExactRational,
    PlancherelEngine, RngSpec, StirlingTable,
};
use num_bigint::{BigInt, BigUint};

use crate::commands::CliError;

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&mut Report),
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "records",
        description: "record positions; P(record at i) = 1/i over S_n, n <= 8",
        run: records,
    },
    Suite {
        name: "layers",
        description: "layers partition positions, are antichains and minimal sets, n <= 8",
        run: layers,
    },
    Suite {
        name: "theorem5",
        description: "naive passes = tails scan = longest chain, all of S_n, n <= 8",
        run: theorem5,
    },
    Suite {
        name: "mirsky",
        description: "no antichain partition smaller than the depth, all of S_n, n <= 8",
        run: mirsky,
    },
    Suite {
        name: "rsk",
        description: "RS first column = LDS and first row = LIS, n <= 7; injective, n <= 6",
        run: rsk_suite,
    },
    Suite {
        name: "tableaux",
        description: "hook-length count = enumeration, n <= 10; conjugation involution, n <= 30",
        run: tableaux,
    },
    Suite {
        name: "stirling",
        description: "row sums = n!, pmf mean = H_n, n <= 200",
        run: stirling,
    },
    Suite {
        name: "rds",
        description: "resampling recurrence values, monotonicity and d_n <= n",
        run: rds,
    },
    Suite {
        name: "plancherel",
        description: "Σ (f^λ)² = n!, exact E[D_n] = S_n average, conjugation symmetry",
        run: plancherel,
    },
    Suite {
        name: "mc",
        description: "Monte Carlo means within 3 standard errors of the exact values",
        run: mc,
    },
];

#[derive(Default)]
pub struct Report {
    failures: usize,
    checks: usize,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: impl AsRef<str>) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!("  {status} {name}: {}", detail.as_ref());
    }
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn records(r: &mut Report) {
    r.check(
        "worked-example",
        record_indices(&[2, 5, 3, 9, 6, 4]) == [1, 2, 4],
        "[2,5,3,9,6,4] -> {1,2,4}",
    );
    let mut ok = true;
    for n in 1..=8 {
        let mut hits = vec![0u64; n];
        for p in all_permutations(n) {
            for i in record_indices(&p) {
                hits[i - 1] += 1;
            }
        }
        ok &= hits.iter().enumerate().all(|(i, &h)| h * (i as u64 + 1) == factorial(n));
    }
    r.check("record-probability", ok, "#{p : i is a record} = n!/i for n <= 8");
}

fn layers(r: &mut Report) {
    let (mut partition, mut antichain, mut minimal) = (true, true, true);
    for n in 0..=8 {
        for p in all_permutations(n) {
            let l = ds_layers(&p).expect("permutation");
            let poset = DsPoset::new(p.clone());
            let mut all: Vec<usize> = l.layers.concat();
            all.sort_unstable();
            partition &= all == (1..=n).collect::<Vec<_>>();
            antichain &= l.layers.iter().all(|a| is_antichain(&poset, a).unwrap());
            let mut remaining: Vec<usize> = (1..=n).collect();
            for a in &l.layers {
                minimal &= poset.minimal_elements(&remaining).unwrap() == *a;
                remaining.retain(|i| !a.contains(i));
            }
        }
    }
    r.check("partition", partition, "layers are disjoint and cover 1..n");
    r.check("antichains", antichain, "every layer is an antichain");
    r.check("minimal-elements", minimal, "layer t+1 = minimal elements after removing layers 1..t");
}

fn theorem5(r: &mut Report) {
    let mut count = 0usize;
    let mut ok = true;
    for n in 1..=8 {
        for p in all_permutations(n) {
            let naive = ds_passes_naive(&p).unwrap();
            ok &= naive == lds_permutation(&p)
                && naive == longest_chain_bruteforce(&DsPoset::new(p.clone())).unwrap();
            count += 1;
        }
    }
    r.check("equivalence", ok, format!("{count} permutations"));
}

fn mirsky(r: &mut Report) {
    let mut ok = true;
    for n in 0..=8 {
        for p in all_permutations(n) {
            let depth = ds_layers(&p).unwrap().depth();
            ok &= min_antichain_partition(&DsPoset::new(p)).unwrap() == depth;
        }
    }
    r.check("minimality", ok, "fewest antichains covering the poset = depth, n <= 8");
}

fn rsk_suite(r: &mut Report) {
    let (mut col, mut row) = (true, true);
    for n in 0..=7 {
        for p in all_permutations(n) {
            let shape = rsk(&p).shape;
            col &= shape.first_column() == lds_permutation(&p);
            row &= shape.first_row() == lis_permutation(&p);
        }
    }
    r.check("first-column", col, "first column length = LDS, n <= 7");
    r.check("first-row", row, "first row length = LIS, n <= 7");
    let mut injective = true;
    for n in 0..=6 {
        let mut seen = std::collections::HashSet::new();
        for p in all_permutations(n) {
            let t = rsk(&p);
            injective &= t.p.is_standard() && t.q.is_standard() && seen.insert((t.p, t.q));
        }
    }
    r.check("injective", injective, "distinct (P, Q) pairs over S_n, n <= 6");
}

fn tableaux(r: &mut Report) {
    let mut ok = true;
    for n in 0..=10 {
        for l in partitions(n) {
            ok &= BigUint::from(syt_enumerate(&l).unwrap().len()) == syt_count(&l);
        }
    }
    r.check("hook-length", ok, "f^λ by hooks = enumerated tableaux, n <= 10");
    let involution = (0..=30).all(|n| partitions(n).all(|l| conjugate(&conjugate(&l)) == l));
    r.check("conjugation", involution, "conjugate is an involution, n <= 30");
}

fn stirling(r: &mut Report) {
    let t = StirlingTable::new(200);
    let sums = (0..=200).all(|n| t.row(n).unwrap().iter().sum::<BigUint>() == *t.factorial(n).unwrap());
    r.check("row-sums", sums, "Σ_r c(n,r) = n!, n <= 200");
    let means = (0..=200).all(|n| {
        let pmf = record_count_pmf(n, &t).unwrap();
        let mean: ExactRational = pmf.iter().enumerate().map(|(k, p)| p * BigInt::from(k)).sum();
        mean == harmonic(n)
    });
    r.check("harmonic-mean", means, "E[records] = H_n exactly, n <= 200");
}

fn rds(r: &mut Report) {
    let t = StirlingTable::new(100);
    let d = rds_expectation(100, &t).unwrap().d;
    r.check(
        "initial-values",
        d[0] == q(0, 1) && d[1] == q(1, 1) && d[2] == q(3, 2) && d[3] == q(2, 1),
        "d_0..d_3 = 0, 1, 3/2, 2",
    );
    let mono = (1..100).all(|n| d[n] < d[n + 1] && d[n + 1] <= q(n as i64 + 1, 1));
    r.check("monotone", mono, "d_n strictly increasing and d_n <= n, n <= 100");
}

fn plancherel(r: &mut Report) {
    let engine = PlancherelEngine::default();
    let total = (0..=60).all(|n| {
        engine.sums(n).unwrap().total == (1..=n).fold(BigUint::from(1u32), |a, k| a * k)
    });
    r.check("normalization", total, "Σ (f^λ)² = n!, n <= 60");
    let brute = (1..=8).all(|n| {
        let sum: usize = all_permutations(n).map(|p| lds_permutation(&p)).sum();
        exact_ds_expectation(n).unwrap().value == q(sum as i64, factorial(n) as i64)
    });
    r.check("brute-force", brute, "Plancherel sum = S_n average, n <= 8");
    let sym = (0..=40).all(|n| plancherel_conjugation_check(n).unwrap());
    r.check("conjugation", sym, "E[λ_1] = E[λ'_1], n <= 40");
}

fn mc(r: &mut Report) {
    let spec = RngSpec::new(20240601);
    for n in [3, 6, 10] {
        let s = mc_ds(n, 100_000, spec).unwrap();
        let exact = to_f64(&exact_ds_expectation(n).unwrap().value);
        r.check(
            &format!("ds-n{n}"),
            (s.mean - exact).abs() <= 3.0 * s.std_error,
            format!("mean {:.5} vs exact {exact:.5} (se {:.5})", s.mean, s.std_error),
        );
    }
    let t = StirlingTable::new(20);
    let d = rds_expectation(20, &t).unwrap().d;
    for n in [2, 5, 20] {
        let s = mc_rds(n, 100_000, spec).unwrap();
        let exact = to_f64(&d[n]);
        r.check(
            &format!("rds-n{n}"),
            (s.mean - exact).abs() <= 3.0 * s.std_error,
            format!("mean {:.5} vs exact {exact:.5} (se {:.5})", s.mean, s.std_error),
        );
    }
}

/// Runs the selected suites (all when `only` is empty) and reports per check.
pub fn run(only: &[String]) -> Result<(), CliError> {
    for name in only {
        if !SUITES.iter().any(|s| s.name == name) {
            let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
            return Err(dsort_core::Error::InvalidArgument(format!(
                "unknown suite {name:?}; expected one of {}",
                names.join(", ")
            ))
            .into());
        }
    }
    let mut report = Report::default();
    for suite in SUITES.iter().filter(|s| only.is_empty() || only.iter().any(|o| o == s.name)) {
        println!("{} ({})", suite.name, suite.description);
        let start = Instant::now();
        (suite.run)(&mut report);
        println!("  [{:.2}s]", start.elapsed().as_secs_f64());
    }
    println!(
        "{} checks, {} failed",
        report.checks, report.failures
    );
    if report.failures == 0 {
        Ok(())
    } else {
        Err(CliError::SelftestFailed(report.failures))
    }
}
