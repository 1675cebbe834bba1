use std::io::{self, Write};
use std::path::Path;

use dsort_core::exact::{render_fraction, to_f64};
use dsort_core::mc::{mc_ds_with_mode, RNG_ALGORITHM};
use dsort_core::plancherel::DEFAULT_MAX_N as PLANCHEREL_MAX_N;
use dsort_core::{
    asymptotic_scan, ds_layers, lds_fast, mc_rds, rds_expectation, render_decimal, Error,
    ExactRational, PlancherelEngine, RngSpec, SampleMode, StirlingTable,
};
use thiserror::Error;

use crate::input::{parse_sizes, parse_values, read_source, ParseError};
use crate::output::{Cell, Format, Table};
use crate::{ModeArg, VariantArg};

/// Default size bound of the resampling recurrence (dense Stirling table).
pub const RDS_MAX_N: usize = 500;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0} selftest check(s) failed")]
    SelftestFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Engine(Error::SizeLimitExceeded { .. } | Error::OutOfTableRange { .. }) => 3,
            CliError::Engine(_) => 2,
            CliError::Io(_) => 1,
            CliError::SelftestFailed(_) => 4,
        }
    }
}

fn load(input: &str) -> Result<crate::input::Values, CliError> {
    Ok(parse_values(&read_source(input)?)?)
}

fn bracketed(items: &[String]) -> String {
    format!("[{}]", items.join(","))
}

pub fn run_lds(input: &str, with_layers: bool) -> Result<(), CliError> {
    let vals = load(input)?;
    let d = lds_fast(&vals.values)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{d}")?;
    if with_layers {
        for layer in ds_layers(&vals.values)?.values(&vals.tokens) {
            writeln!(out, "{}", bracketed(&layer))?;
        }
    }
    Ok(())
}

pub fn run_layers(input: &str, positions: bool) -> Result<(), CliError> {
    let vals = load(input)?;
    let layers = ds_layers(&vals.values)?;
    let mut out = io::stdout().lock();
    for layer in &layers.layers {
        let items: Vec<String> = if positions {
            layer.iter().map(usize::to_string).collect()
        } else {
            layer.iter().map(|&p| vals.tokens[p - 1].clone()).collect()
        };
        writeln!(out, "{}", bracketed(&items))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactKind {
    Ds,
    Rds,
}

const EXACT_COLUMNS: &[&str] = &["n", "exact_value_rational", "exact_value_decimal"];

fn check_bound(what: &'static str, n: usize, limit: usize) -> Result<(), Error> {
    if n > limit {
        Err(Error::SizeLimitExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

/// Exact expectations for each requested size; fails as a whole if any size is out of bounds.
fn exact_values(kind: ExactKind, sizes: &[usize], max_n: Option<usize>) -> Result<Vec<ExactRational>, Error> {
    let top = sizes.iter().copied().max().unwrap_or(0);
    match kind {
        ExactKind::Rds => {
            check_bound("resampling recurrence", top, max_n.unwrap_or(RDS_MAX_N))?;
            let table = StirlingTable::new(top);
            let d = rds_expectation(top, &table)?;
            Ok(sizes.iter().map(|&n| d.d[n].clone()).collect())
        }
        ExactKind::Ds => {
            let engine = PlancherelEngine::with_max_n(max_n.unwrap_or(PLANCHEREL_MAX_N));
            sizes.iter().map(|&n| engine.expectation(n).map(|e| e.value)).collect()
        }
    }
}

pub fn run_exact(
    kind: ExactKind,
    sizes: &str,
    precision: usize,
    max_n: Option<usize>,
    format: Format,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let sizes = parse_sizes(sizes)?;
    let values = exact_values(kind, &sizes, max_n)?;
    let mut table = Table::new(EXACT_COLUMNS).meta(
        "command",
        match kind {
            ExactKind::Ds => "exact-ds",
            ExactKind::Rds => "exact-rds",
        },
    );
    for (n, v) in sizes.iter().zip(&values) {
        table.push(vec![
            Cell::Int(*n as u64),
            Cell::Text(render_fraction(v)),
            Cell::Text(render_decimal(v, precision)),
        ]);
    }
    table.emit(format, output)?;
    Ok(())
}

pub struct SimulateConfig<'a> {
    pub variant: VariantArg,
    pub sizes: &'a str,
    pub trials: u64,
    pub seed: u64,
    pub stream: u64,
    pub mode: ModeArg,
    pub precision: usize,
    pub exact_max_n: Option<usize>,
    pub format: Format,
    pub output: Option<&'a Path>,
}

const SIMULATE_COLUMNS: &[&str] = &[
    "variant",
    "n",
    "trials",
    "seed",
    "mean",
    "std_error",
    "exact_value_decimal",
    "abs_error",
];

/// Default largest `n` with an exact column in `simulate --variant ds`.
pub const SIMULATE_DS_EXACT_MAX_N: usize = 60;

pub fn run_simulate(cfg: &SimulateConfig<'_>) -> Result<(), CliError> {
    let sizes = parse_sizes(cfg.sizes)?;
    let spec = RngSpec::with_stream(cfg.seed, cfg.stream);
    let mode = match cfg.mode {
        ModeArg::Permutation => SampleMode::Permutation,
        ModeArg::Uniform => SampleMode::Uniform,
        ModeArg::Exponential => SampleMode::Exponential,
        ModeArg::Normal => SampleMode::Normal,
    };
    let (kind, exact_limit) = match cfg.variant {
        VariantArg::Ds => (ExactKind::Ds, cfg.exact_max_n.unwrap_or(SIMULATE_DS_EXACT_MAX_N)),
        VariantArg::Rds => (ExactKind::Rds, cfg.exact_max_n.unwrap_or(RDS_MAX_N)),
    };
    let in_bounds: Vec<usize> = sizes.iter().copied().filter(|&n| n <= exact_limit).collect();
    let exact = exact_values(kind, &in_bounds, Some(exact_limit))?;

    let mut table = Table::new(SIMULATE_COLUMNS)
        .meta("command", "simulate")
        .meta("rng", RNG_ALGORITHM)
        .meta("stream", cfg.stream)
        .meta("mode", format!("{mode:?}").to_lowercase());
    for &n in &sizes {
        let summary = match cfg.variant {
            VariantArg::Ds => mc_ds_with_mode(n, cfg.trials, spec, mode)?,
            VariantArg::Rds => mc_rds(n, cfg.trials, spec)?,
        };
        let exact_value = in_bounds.iter().position(|&m| m == n).map(|i| &exact[i]);
        table.push(vec![
            Cell::Text(summary.variant.to_string()),
            Cell::Int(n as u64),
            Cell::Int(summary.trials),
            Cell::Int(cfg.seed),
            Cell::Float(summary.mean),
            Cell::Float(summary.std_error),
            exact_value.map_or(Cell::Empty, |v| Cell::Text(render_decimal(v, cfg.precision))),
            exact_value.map_or(Cell::Empty, |v| Cell::Float((summary.mean - to_f64(v)).abs())),
        ]);
    }
    table.emit(cfg.format, cfg.output)?;
    Ok(())
}

const ASYMPTOTIC_COLUMNS: &[&str] = &[
    "n",
    "trials",
    "seed",
    "mean",
    "std_error",
    "two_sqrt_n",
    "ratio",
    "scaled_fluct",
];

pub fn run_asymptotics(
    ns: &str,
    trials: u64,
    seed: u64,
    stream: u64,
    format: Format,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let sizes = parse_sizes(ns)?;
    let rows = asymptotic_scan(&sizes, trials, RngSpec::with_stream(seed, stream))?;
    let mut table = Table::new(ASYMPTOTIC_COLUMNS)
        .meta("command", "asymptotics")
        .meta("rng", RNG_ALGORITHM)
        .meta("stream", stream);
    for r in rows {
        table.push(vec![
            Cell::Int(r.n as u64),
            Cell::Int(r.trials),
            Cell::Int(seed),
            Cell::Float(r.mean),
            Cell::Float(r.std_error),
            Cell::Float(r.two_sqrt_n),
            Cell::Float(r.ratio),
            Cell::Float(r.scaled_fluct),
        ]);
    }
    table.emit(format, output)?;
    Ok(())
}
