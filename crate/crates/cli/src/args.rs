use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "qbps",
    version,
    about = "Exact combinatorics of quasi-BPS categories and DT/PT windows"
)]
pub struct Cli {
    /// Output format; falls back to QBPS_FORMAT, then json.
    #[arg(long, global = true, value_enum, env = "QBPS_FORMAT")]
    pub format: Option<Format>,

    /// Worker threads for parameter sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// key=value file mirroring long flags; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<String>,

    /// Add the wall-clock duration to the report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dominant integral generators of a quasi-BPS or window category.
    Generators(GeneratorsArgs),
    /// Window zonotopes and point membership.
    Windows(WindowsArgs),
    /// Hom dimensions, window widths and obstruction dimensions of a formal fiber.
    Fiber(FiberArgs),
    /// Index sets of semiorthogonal decompositions.
    Sod(SodArgs),
    /// Truncated generating series.
    Series(SeriesArgs),
    /// Numerical identity checks; exit code 2 on mismatch.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum GeneratorKind {
    #[value(name = "quasibps")]
    #[serde(rename = "quasibps")]
    QuasiBps,
    #[value(name = "E")]
    #[serde(rename = "E")]
    E,
    #[value(name = "F")]
    #[serde(rename = "F")]
    F,
    #[value(name = "fiberI")]
    #[serde(rename = "fiberI")]
    FiberI,
    #[value(name = "fiberP")]
    #[serde(rename = "fiberP")]
    FiberP,
}

#[derive(Args, Debug, Serialize)]
pub struct GeneratorsArgs {
    #[arg(long, value_enum, default_value = "quasibps")]
    pub kind: GeneratorKind,
    /// Rank, or comma-separated block sizes for fiber windows.
    #[arg(long)]
    pub d: String,
    /// Weight: an integer, a list `a,b,c` or a range `lo..hi` (quasibps only).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Framing arrows (E, F) or comma-separated flags (fiber windows).
    #[arg(long)]
    pub a: Option<String>,
    /// `p/q` or `auto-eps` for `-a/2 - eps`.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum WindowKind {
    #[value(name = "W")]
    #[serde(rename = "W")]
    W,
    #[value(name = "nabla")]
    #[serde(rename = "nabla")]
    Nabla,
    #[value(name = "E")]
    #[serde(rename = "E")]
    E,
    #[value(name = "F")]
    #[serde(rename = "F")]
    F,
    #[value(name = "fiberI")]
    #[serde(rename = "fiberI")]
    FiberI,
    #[value(name = "fiberP")]
    #[serde(rename = "fiberP")]
    FiberP,
}

#[derive(Args, Debug, Serialize)]
pub struct WindowsArgs {
    #[arg(long, value_enum)]
    pub kind: WindowKind,
    #[arg(long)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<i64>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Points to test, coordinates separated by `,` and blocks by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct FiberArgs {
    /// Comma-separated multiplicities.
    #[arg(long)]
    pub d: String,
    /// Comma-separated flags.
    #[arg(long)]
    pub a: String,
    #[arg(long, default_value_t = 0)]
    pub h0: u64,
    #[arg(long, default_value_t = 0)]
    pub h1: u64,
    /// `n1:n2` per point, comma-separated; all splits when omitted.
    #[arg(long)]
    pub split: Option<String>,
    /// Accept flags larger than 1.
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SodMode {
    Points,
    Dtpt,
    Quiver,
    Surface,
}

#[derive(Args, Debug, Serialize)]
pub struct SodArgs {
    #[arg(long, value_enum)]
    pub mode: SodMode,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long)]
    pub dmax: Option<usize>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Slope window of the surface mode.
    #[arg(long, allow_hyphen_values = true)]
    pub v_lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v_hi: Option<String>,
    /// Derive `d` from `beta^2`, `K.beta` and `n` in surface mode.
    #[arg(long, allow_hyphen_values = true)]
    pub beta_sq: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k_beta: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Macmahon,
    Hilb,
    Sodweighted,
}

#[derive(Args, Debug, Serialize)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub kind: SeriesKind,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: i64,
    #[arg(long)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Wallcrossing,
    Thmtoric,
    Cor410,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Sweepable: integer, list or range (wallcrossing).
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Sweepable (thmtoric).
    #[arg(long)]
    pub e: Option<String>,
    /// Sweepable (cor410).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long)]
    pub dmax: Option<usize>,
}
