use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dp1_core::numerics::{bits_for_digits, parse_rational, DEFAULT_CONTRACTIONS, DEFAULT_PRECISION_BITS};
use dp1_core::Params;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "dp1", version, about = "Orbits, coordinates, series and diagnostics for the discrete Painleve I map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Map parameters and numerical settings shared by all subcommands.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    /// r as an integer, "p/q" or decimal literal (exact)
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Scale parameter N (exact)
    #[arg(long = "N", default_value = "1")]
    #[serde(rename = "N")]
    pub n_scale: String,
    /// Working precision in decimal digits [default: 1233, i.e. 4096 bits]
    #[arg(long, env = "DP1_DIGITS")]
    pub digits: Option<u32>,
    /// Lew-Quarles contraction count Nc
    #[arg(long, default_value_t = DEFAULT_CONTRACTIONS)]
    pub nc: usize,
}

impl ModelArgs {
    pub fn params(&self) -> Result<Params, CliError> {
        let bits = self.digits.map_or(DEFAULT_PRECISION_BITS, bits_for_digits);
        Ok(Params::with_settings(parse_rational(&self.r)?, parse_rational(&self.n_scale)?, bits, self.nc)?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    /// Output file; stdout when absent. A `.json` sidecar is written next to it.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Pinf,
    Pminf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackArg {
    Forward,
    Backward,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Freud orbit seeded by the Lew-Quarles contraction with xi_0 = 0
    Freud {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = -224, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 225, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lew-Quarles orbit for a given xi_0 >= 0
    Lq {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        xi0: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 225, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Orbit of an arbitrary seed (x, y) given at step n-start
    Orbit {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n_start: i64,
        #[arg(long, allow_hyphen_values = true)]
        n_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact coordinate changes between (x, y, n) and (s, f, u)
    Coords {
        #[command(subcommand)]
        op: CoordsOp,
    },
    /// Invariant-curve series (s(u), f(u)) at P_inf or P_minf
    Series {
        #[arg(value_enum)]
        side: SideArg,
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Print coefficients as polynomials in gamma instead of values at gamma = r/N
        #[arg(long)]
        symbolic: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Asymptotic expansions of u_n or x_n
    Asym {
        #[command(subcommand)]
        op: AsymOp,
    },
    /// Distance of the Freud orbit to the alpha-dP1 fixed points (forward) or period-2 points (backward)
    Track {
        #[arg(value_enum)]
        side: TrackArg,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = -224, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 225, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Log-distance and secant slope between Lew-Quarles orbits and the Freud orbit
    Logdist {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated xi_0 values
        #[arg(long, value_delimiter = ',', required = true)]
        xi0_list: Vec<String>,
        #[arg(long, default_value_t = 225)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Five forward steps from (eps, y) at step n
    Confine {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "1e-6", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Moments of the quartic weight and the Freud initial data b_1^2, b_2^2
    Moments {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 8)]
        max_index: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// alpha-dP1 iteration with its biquadratic invariant
    Qrt {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "op")]
pub enum CoordsOp {
    /// (x, y, n) -> (s, f, u)
    ToSfu {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// (s, f, u) -> (x, y, alpha)
    FromSfu {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "op")]
pub enum AsymOp {
    /// Half-power expansion of u_n along an invariant curve
    U {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = BranchArg::Minus)]
        branch: BranchArg,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Evaluate over [n-min, n-max] instead of printing the terms
        #[arg(long, allow_hyphen_values = true, requires = "n_max")]
        n_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "n_min")]
        n_max: Option<i64>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Three-term expansion of the Freud x_n for n >= 1
    X {
        #[arg(long, default_value_t = 1)]
        n_min: i64,
        #[arg(long, default_value_t = 225)]
        n_max: i64,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}
