use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "haarcalc", version, about = "Exact and Monte Carlo Haar integrals over U(N) and SU(N)")]
pub struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for Monte Carlo sampling
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Weingarten,
    SuShifted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffMethod {
    Character,
    Recursion,
    Shift,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Wd,
    Ww,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesMethod {
    Closed,
    Fixedpoint,
    FiniteN,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    U,
    Su,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tables,
    Shift,
    Largen,
    Mc,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient tables z_alpha (weingarten) or d_alpha (su-shifted)
    Coeffs {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Defaults to character for weingarten and shift for su-shifted
        #[arg(long, value_enum)]
        method: Option<CoeffMethod>,
    },
    /// Large-N series W_D or W_W
    Largen {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SeriesMethod::Closed)]
        method: SeriesMethod,
        /// Diff against the other derivations; exit 1 on disagreement
        #[arg(long)]
        compare: bool,
    },
    /// Monte Carlo estimate of Z_{p,n}(J,K)
    Mc {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        dim: usize,
        #[arg(long, value_enum, default_value_t = GroupArg::Su)]
        group: GroupArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// JSON file with N, J, K; identity matrices when absent
        #[arg(long)]
        matrices: Option<PathBuf>,
        #[arg(long, default_value_t = 5.0)]
        sigmas: f64,
    },
    /// Single monomial integral of U and U^+ entries (1-based indices)
    Tensor {
        #[arg(long, value_delimiter = ',')]
        i: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        j: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        l: Vec<usize>,
        #[arg(long = "N")]
        dim: usize,
        #[arg(long, value_enum, default_value_t = GroupArg::U)]
        group: GroupArg,
        /// Also estimate by Monte Carlo with this many samples
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 5.0)]
        sigmas: f64,
    },
    /// Regression suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}
