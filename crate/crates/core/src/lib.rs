//! Disappear-Sort (DS): repeated record-extraction passes over a sequence.
//!
//! One pass keeps the upper records of a list and discards everything else in
//! its original order; the procedure recurses on the discards until nothing is
//! left. The number of passes equals the length of the longest strictly
//! decreasing subsequence, which this crate computes three independent ways
//! (naive passes, a tails scan, and the first column of the Robinson–Schensted
//! shape). The expected pass count is available exactly, both for the plain
//! procedure (a sum over the Plancherel measure on partitions) and for the
//! resampling variant (a recurrence over unsigned Stirling numbers of the first
//! kind), alongside a seeded, scheduling-independent Monte Carlo engine.
//!
//! ```
//! use dsort_core::{ds_layers, lds_fast};
//!
//! let seq = [2, 5, 3, 9, 6, 4];
//! let layers = ds_layers(&seq).unwrap();
//! assert_eq!(layers.depth(), 3);
//! assert_eq!(lds_fast(&seq).unwrap(), 3);
//! ```

pub mod error;
pub mod exact;
pub mod ldsfast;
pub mod mc;
pub mod permcore;
pub mod plancherel;
pub mod stirling;
pub mod tableaux;

pub use error::{Error, Result};
pub use exact::{render_decimal, ExactRational};
pub use ldsfast::{lds_fast, lds_permutation, lis_fast, lis_permutation};
pub use mc::{
    asymptotic_scan, mc_ds, mc_ds_with_mode, mc_rds, mc_record_count, mc_record_counts,
    mc_record_frequencies, mc_record_probability, rds_trial, sample_permutation, AsymptoticRow,
    RngSpec, RunSummary, SampleMode, Variant,
};
pub use permcore::{
    all_permutations, check_distinct, ds_layers, ds_pass, ds_passes_naive, is_antichain, longest_chain_bruteforce,
    min_antichain_partition, record_indices, DsPoset, LayerDecomposition, PassResult, Permutation,
};
pub use plancherel::{
    exact_ds_expectation, plancherel_conjugation_check, plancherel_pmf, PlancherelEngine,
    PlancherelExpectation,
};
pub use stirling::{
    harmonic, rds_expectation, record_count_pmf, stirling_table, RdsExpectationTable, StirlingTable,
};
pub use tableaux::{
    conjugate, hook_length, partitions, rsk_shape, syt_count, syt_enumerate, Partition, Rsk,
    StandardTableau,
};
