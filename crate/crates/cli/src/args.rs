use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prepdyn::Caps;
use serde::Serialize;

/// Exact computations on periodic and preperiodic points. Output is JSON.
///
/// Maps are written `p1:[c0,..,cd]/[e0,..,ed]` (entry i multiplies X^i Y^(d-i)),
/// `mat:[[..],..]`, `mat(d=2):[[..],..]` or `aff(d=2):A=[[..],..],b=[..]`.
#[derive(Debug, Parser)]
#[command(name = "prepdyn", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Write a run manifest to this file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    /// Re-run the command recorded in a manifest.
    #[arg(long, conflicts_with = "manifest")]
    pub replay: Option<PathBuf>,

    /// Accepted for compatibility; output is always JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CapArgs {
    /// Largest degree of a composed or iterated map.
    #[arg(long, global = true, default_value_t = Caps::default().degree)]
    pub max_degree: u64,
    /// Largest hash table of maps, points or group elements.
    #[arg(long, global = true, default_value_t = Caps::default().hash_entries)]
    pub max_entries: usize,
    /// Largest enumeration of candidates.
    #[arg(long, global = true, default_value_t = Caps::default().enumeration)]
    pub max_enumeration: u64,
    /// Largest number of height iterations.
    #[arg(long, global = true, default_value_t = Caps::default().iterations)]
    pub max_iterations: u32,
    /// Largest number of orbit steps.
    #[arg(long, global = true, default_value_t = Caps::default().orbit_steps)]
    pub max_orbit_steps: usize,
}

impl CapArgs {
    pub fn to_caps(&self) -> Caps {
        Caps {
            degree: self.max_degree,
            hash_entries: self.max_entries,
            enumeration: self.max_enumeration,
            iterations: self.max_iterations,
            orbit_steps: self.max_orbit_steps,
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Per_n, Per* and Per** of a linear map; Prep_{m,n} of a P1 map.
    Perlocus {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Preperiod for P1 maps.
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// The rational preperiodic portrait of a P1 map of degree at least 2.
    Portrait {
        #[arg(long)]
        map: String,
    },
    /// Canonical height of a rational point.
    Chgt {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Decide preperiodicity of a rational point.
    Preper {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Search for a relation between words in P1 maps.
    Relations {
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Generator names, comma separated (default f, g, ...).
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
        /// Also count distinct maps over all words without pruning.
        #[arg(long)]
        audit: bool,
    },
    /// Certify that the orbit of a point under the semigroup <f, g> is infinite.
    CertifyUnbounded {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Orbit of a periodic point under a finite group of linear maps.
    Orbit {
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Cycles of a P1 map on P1(Z/p^s).
    PadicCycles {
        #[arg(long)]
        map: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Also report the period bound with this ramification exponent.
        #[arg(long)]
        e0: Option<u32>,
    },
    /// Periods of a point modulo p, p^2, ..., p^s_max.
    PadicPeriod {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        s_max: u32,
    },
    /// Depth bound for rational preimage chains of gamma.
    PreimageBound {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        p: u64,
    },
    /// Linearization of a matrix on the residue disc of a fixed point mod p.
    ArcTest {
        #[arg(long)]
        map: String,
        /// Residue point, `(a:b:...)` with entries mod p.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        p: u64,
    },
    /// Diagonalizability and exponent identity over a finite field.
    CharpCheck {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Check this many random matrices instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Group-structure checks on linear or affine generators.
    GroupVerify {
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value_t = Check::Series)]
        check: Check,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        word_length: usize,
        /// Period used by commute-same.
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// Point for commutator-orbit, `(a:b:...)`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// The two group examples and the 2x / x^2 relation.
    Demo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Series,
    NilSame,
    Solvable,
    CommuteSame,
    CommutatorOrbit,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Perlocus { .. } => "perlocus",
            Command::Portrait { .. } => "portrait",
            Command::Chgt { .. } => "chgt",
            Command::Preper { .. } => "preper",
            Command::Relations { .. } => "relations",
            Command::CertifyUnbounded { .. } => "certify-unbounded",
            Command::Orbit { .. } => "orbit",
            Command::PadicCycles { .. } => "padic-cycles",
            Command::PadicPeriod { .. } => "padic-period",
            Command::PreimageBound { .. } => "preimage-bound",
            Command::ArcTest { .. } => "arc-test",
            Command::CharpCheck { .. } => "charp-check",
            Command::GroupVerify { .. } => "group-verify",
            Command::Demo => "demo",
        }
    }
}
