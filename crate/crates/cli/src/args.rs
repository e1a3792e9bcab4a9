use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Multi-field persistent homology and torsion inference.
#[derive(Debug, Parser)]
#[command(name = "modrec", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Vietoris-Rips filtration and write it as a filtration file.
    Rips {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geometry: Geometry,
        /// Output filtration file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random 2-complex Y(n, m) with triangles in random order.
    GenYm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random flag complex on n vertices with m edges.
    GenFlag {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute persistence diagrams.
    Reduce {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        primes: Primes,
        #[arg(long, value_enum, default_value_t = Mode::Modular)]
        mode: Mode,
        #[arg(long)]
        no_clearing: bool,
        /// Output directory; diagrams go to stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Infer integral Betti numbers and torsion primes.
    Torsion {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        primes: Primes,
        #[arg(long)]
        no_clearing: bool,
        /// Filtration value to evaluate at; the end of the filtration if omitted.
        #[arg(long)]
        at: Option<f64>,
        /// Highest homology dimension reported.
        #[arg(long, default_value_t = 2)]
        d_max: usize,
        /// Reference prime; the largest prime if omitted.
        #[arg(long)]
        reference: Option<u64>,
        /// Also list the most persistent classes of each dimension.
        #[arg(long, default_value_t = 0)]
        top: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the multi-field reduction against one reduction per field.
    Bench {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        geometry: Geometry,
        /// Comma-separated numbers of leading primes to sweep over.
        #[arg(long, value_delimiter = ',', required = true)]
        sweep: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 64)]
        word_bits: u32,
        #[arg(long)]
        no_clearing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate the range of m where H_1 of Y(n, m) has torsion.
    Window {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(short = 'r', long = "primes", default_value_t = 25)]
        r: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Constant subtracted after normalizing m by C(n,3)/n.
        #[arg(long, allow_negative_numbers = true)]
        c_star: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Modular,
    Bruteforce,
    Both,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Filtration file.
    #[arg(long)]
    pub filtration: Option<PathBuf>,
    /// Point cloud file, one point per line.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Lower-triangular distance matrix file.
    #[arg(long)]
    pub distances: Option<PathBuf>,
    /// Sampled shape: cube[:D], sphere-s3 or klein-bottle.
    #[arg(long)]
    pub shape: Option<String>,
}

#[derive(Debug, Args)]
pub struct Geometry {
    /// Rips threshold.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Points drawn from --shape.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Keep a max-min subsample of this many points.
    #[arg(long)]
    pub landmarks: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Primes {
    /// A count N for the first N primes, or a comma-separated prime list.
    /// A single explicit prime is written with a trailing comma, as in `7,`.
    #[arg(short = 'r', long = "primes", required = true)]
    pub text: String,
}
