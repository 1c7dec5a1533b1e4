use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "mcgf", version, about = "Mapping class group orbits and finiteness certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct GlobalOpts {
    /// Seed for randomized isomorphism and subspace searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for orbit enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    /// Maximum number of orbit classes, group elements or points explored.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    /// Word length used for trace fingerprints and word scans.
    #[arg(long = "fingerprint-len", global = true, default_value_t = 2)]
    pub fingerprint_len: usize,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

/// Where a representation comes from.
#[derive(Debug, Args, Serialize, Clone, Default)]
pub struct RepSource {
    /// Representation JSON file.
    #[arg(long = "rep", value_name = "FILE", conflicts_with_all = ["rep_json", "instance"])]
    pub rep_file: Option<PathBuf>,
    /// Inline representation JSON.
    #[arg(long = "rep-json", value_name = "JSON", conflicts_with = "instance")]
    pub rep_json: Option<String>,
    /// Shipped instance (see `mcgf instances`).
    #[arg(long)]
    pub instance: Option<String>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List shipped representation instances.
    Instances,
    /// Orbit of a representation under the mapping class group generators.
    Orbit(RepSource),
    #[command(subcommand)]
    Twist(TwistCmd),
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Cut along atlas curves; with a representation and one curve, also
    /// search for an invariant subspace of the cut surface.
    Cut {
        #[arg(long)]
        surface: Option<String>,
        /// Comma separated curve names, e.g. `a1,a2`.
        #[arg(long, value_delimiter = ',', required = true)]
        curves: Vec<String>,
        #[command(flatten)]
        rep: RepSource,
    },
    #[command(subcommand)]
    Check(CheckCmd),
    /// Direct sum of composition factors.
    Semisimplify(RepSource),
    #[command(subcommand)]
    Sigma(SigmaCmd),
    #[command(subcommand)]
    Rank1(Rank1Cmd),
    #[command(subcommand)]
    Examples(ExamplesCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistCmd {
    /// Print the automorphism of a Dehn twist, and act on a representation if one is given.
    Apply {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        /// Surface as `g,n,b`; taken from the representation if omitted.
        #[arg(long)]
        surface: Option<String>,
        #[command(flatten)]
        rep: RepSource,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverCmd {
    /// All connected covers up to a degree, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        surface: String,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
    /// Restrict a representation to a finite cover.
    Pullback {
        /// Cover JSON file.
        #[arg(long)]
        cover: PathBuf,
        #[command(flatten)]
        rep: RepSource,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckCmd {
    /// Quasi-unipotence of a matrix, or of the images of all reduced words
    /// up to `--fingerprint-len` that are nontrivial modulo boundary.
    Quasiunipotent {
        /// Matrix JSON, e.g. `[["2"]]`.
        #[arg(long, conflicts_with_all = ["rep_file", "rep_json", "instance"])]
        matrix: Option<String>,
        #[command(flatten)]
        rep: RepSource,
    },
    /// Closure of the image group up to `--cutoff` elements.
    FiniteImage(RepSource),
    /// Search for a proper invariant subspace.
    Irreducible(RepSource),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaCmd {
    /// Off-diagonal block of a block upper unitriangular representation.
    Extract {
        #[arg(long, default_value_t = 1)]
        d1: usize,
        #[command(flatten)]
        rep: RepSource,
    },
    /// Compare the block of the twisted representation with the transvection formula.
    TwistTransform {
        #[arg(long, default_value_t = 1)]
        d1: usize,
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        #[command(flatten)]
        rep: RepSource,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank1Cmd {
    /// Orbit of a torsion point under the symplectic group.
    Orbit {
        /// Comma separated rationals, e.g. `1/2,0`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Finite image or an escaping orbit trace for a one-dimensional representation.
    Criterion {
        #[arg(long = "trace-len", default_value_t = 60)]
        trace_len: usize,
        #[command(flatten)]
        rep: RepSource,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExamplesCmd {
    /// Conjugation action on a truncated group algebra of a free group.
    Augmentation {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        /// Check that every mapping class generator fixes the isomorphism class.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCmd {
    /// Run a property suite on the shipped instance families.
    Lemma {
        #[arg(value_enum)]
        name: Lemma,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    DehnConjugate,
    ExactSeq,
    Subquot,
    GlnFinite,
}
