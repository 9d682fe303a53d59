use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dsop", version, about = "Recurrence coefficients of discrete semiclassical orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print β_n, γ_n for n = 0..=N
    Table(CommonArgs),
    /// Compare against the moment oracle and check the structure relations
    Verify(VerifyArgs),
    /// Print the moments μ_n (or μ_n/μ_0 with --normalized)
    Moments(MomentArgs),
    /// Print the structure-relation bands A_k(n), B_k(n)
    Structure(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// meixner, charlier, gen-charlier, ghahn1, hahn or hypergeometric
    #[arg(long)]
    pub family: String,
    /// Numerator parameters a_i, comma-separated
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub a: String,
    /// Denominator parameters b_j, comma-separated
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Largest index N
    #[arg(long)]
    pub n: usize,
    /// Defaults to lf where the family has an engine, oracle otherwise
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum, default_value = "float")]
    pub arithmetic: ArithmeticKind,
    /// Float precision in bits
    #[arg(long, env = "DSOP_PRECISION", default_value_t = 256)]
    pub precision: u32,
    /// Significant digits of float output
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Override β_0, γ_1 of the generalized Hahn engine, as `beta0,gamma1`
    #[arg(long, allow_hyphen_values = true)]
    pub seeds: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest residual accepted (default 0 for rational, 1e-20 for float)
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct MomentArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Divide by μ_0
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lf,
    Closed,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithmeticKind {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
