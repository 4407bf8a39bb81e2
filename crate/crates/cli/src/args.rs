use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use icpi_core::theorems::TheoremId;
use icpi_core::PropertyKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "icpi",
    version,
    about = "Finite permutation group engine for the Π and IC-Π properties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for cached results.
    #[arg(long, global = true, env = "ICPI_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Largest ambient order for exhaustive subgroup enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub subgroup_bound: Option<u64>,

    /// Largest group order whose elements may be listed.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub enumeration_bound: Option<u64>,

    /// Worker threads for campaigns.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Built-in group name such as `Sym(4)` or `Alt(5)xCyc(5)`, or an entry of `--group-file`.
    #[arg(long)]
    pub group: Option<String>,

    /// JSON group file: an array of `{"name", "degree", "generators"}`.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print order, primes, normal lattice, chief pairs and characteristic subgroups.
    Info {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Decide one embedding property of a subgroup.
    Check {
        #[command(flatten)]
        group: GroupArgs,
        /// Property name, e.g. `pi`, `ic-pi`, `s-permutable`.
        #[arg(long, value_parser = parse_property)]
        property: PropertyKind,
        /// Subgroup generator in cycle notation; repeat or separate with `;`.
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        /// Generators of the normal subgroup `X` for `x-permutable`.
        #[arg(long = "x")]
        x: Vec<String>,
    },
    /// Evaluate one theorem instance.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        /// Subgroup parameter `KEY=gen;gen` (an empty list is the trivial subgroup).
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        part: Option<u8>,
    },
    /// Run theorem checks over a corpus and report tallies.
    Campaign {
        /// Admit built-in groups up to this order (default: order 100 plus A5, S5, A5xC5).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        corpus_max_order: Option<u64>,
        /// `all` or a comma-separated list of theorem ids.
        #[arg(long, default_value = "all", value_parser = parse_theorem_list)]
        theorems: TheoremList,
        /// Take the groups from this file instead of the built-in corpus.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Seed for sampled instances.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the built-in corpus.
    CorpusList {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        corpus_max_order: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremList(pub Vec<TheoremId>);

fn parse_property(s: &str) -> Result<PropertyKind, String> {
    s.parse::<PropertyKind>().map_err(|e| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse::<TheoremId>().map_err(|e| e.to_string())
}

fn parse_theorem_list(s: &str) -> Result<TheoremList, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremList(TheoremId::ALL.to_vec()));
    }
    let ids = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_theorem)
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err("no theorem ids given".into());
    }
    Ok(TheoremList(ids))
}

/// Splits repeated generator flags that may also use `;` as a separator.
pub fn split_generators(raw: &[String]) -> Vec<String> {
    raw.iter()
        .flat_map(|s| s.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}
