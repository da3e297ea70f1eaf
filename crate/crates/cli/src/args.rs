use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use korbit_lemmas::{CheckId, Convention};

#[derive(Debug, Parser)]
#[command(name = "korbit", version, about = "k-orbits, 2-closures and lemma checks on small permutation groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Largest group enumerated element by element.
    #[arg(long, global = true)]
    pub element_cap: Option<NonZeroUsize>,
    /// Largest n!/(n-k)! accepted for a full k-tuple sweep.
    #[arg(long, global = true)]
    pub tuple_cap: Option<NonZeroUsize>,
    /// Largest point count handed to the automorphism engine.
    #[arg(long, global = true)]
    pub engine_cap: Option<NonZeroUsize>,
    /// Largest group whose subgroup lattice is enumerated.
    #[arg(long, global = true)]
    pub subgroup_cap: Option<NonZeroUsize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub parallelism: Option<NonZeroUsize>,
    /// Let the identity count as an element with uniform cycle type.
    #[arg(long, global = true)]
    pub include_identity: bool,
    /// Which groups count as primitive in lemma hypotheses.
    #[arg(long, global = true, default_value = "nonabelian")]
    pub convention: Convention,
    /// Exit with status 3 when the report has a FAIL or REFUTED row.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Catalog file (JSON Lines) used instead of building one in memory.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the group catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// k-orbit inspection.
    #[command(subcommand)]
    Korbit(KorbitCmd),
    /// 2-closure computation.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// The lemma check suite.
    #[command(subcommand)]
    Lemmas(LemmasCmd),
    /// Search for elements with a uniform cycle type.
    #[command(subcommand)]
    Polycirc(PolycircCmd),
    /// Graph import.
    #[command(subcommand)]
    Graph(GraphCmd),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    Build {
        /// Degrees up to this one get every transitive group.
        #[arg(long, default_value_t = 6)]
        max_exhaustive_degree: usize,
        /// Degrees up to this one get the named families.
        #[arg(long, default_value_t = 12)]
        max_family_degree: usize,
        /// Leave the 2-closed tag unset.
        #[arg(long)]
        no_two_closed: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KorbitCmd {
    /// Write every k-orbit as a .korb file and print a coherence summary.
    Compute {
        /// Catalog id (NAME@n) or path to a .grp file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: NonZeroUsize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClosureCmd {
    /// Print the order of the 2-closure and whether the group is 2-closed.
    Two {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum LemmasCmd {
    /// Run checks over the catalog and write a JSON Lines report.
    Run {
        /// Comma-separated check ids (e.g. L11,CHK-P3); all when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckId>,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// Rows per (check, group) before the rest becomes one SKIPPED row.
        #[arg(long)]
        instance_cap: Option<NonZeroUsize>,
        /// Stop after the hypothesis; satisfied instances become SKIPPED.
        #[arg(long)]
        hypotheses_only: bool,
        /// Record wall-clock milliseconds per row (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Re-verify the PASS and FAIL rows of a report.
    Verify { report: PathBuf },
    /// List the checks.
    List,
}

#[derive(Debug, Subcommand)]
pub enum PolycircCmd {
    /// Scan every transitive 2-closed catalog group for a regular element.
    Survey {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCmd {
    /// Read a graph6 string or edge list and print its automorphism group as a catalog entry.
    Import {
        file: PathBuf,
        /// Append the entry to this catalog file.
        #[arg(long)]
        append: Option<PathBuf>,
    },
}
