//! `kloo`: exact Kloosterman-sum moments over GF(2^r) from the command line.
//!
//! Exit status: 0 on success, 1 when a computed comparison disagrees,
//! 2 on usage or precondition errors.

mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kloo_core::{
    CodeFamily, CodeOptions, FieldSpec, MomentKind, DEFAULT_DP_LIMIT, DEFAULT_ENUM_BUDGET,
};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "kloo",
    version,
    about = "Exact power moments of Kloosterman sums over GF(2^r)"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Field as `r` or `r:modulus_hex`, e.g. `3` or `3:b`
    #[arg(long, global = true, value_name = "R[:HEX]")]
    pub field: Option<FieldSpec>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Maximum number of tuples any brute-force enumeration may visit
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub budget: u64,

    /// Allow code constructions over GF(4)
    #[arg(long, global = true)]
    pub allow_r2: bool,

    /// Allow multi-dimensional codes with n not a power of two
    #[arg(long, global = true)]
    pub allow_any_n: bool,

    /// Leave out timing fields so repeated runs give identical output
    #[arg(long, global = true)]
    pub deterministic: bool,
}

impl GlobalOpts {
    pub fn code_options(&self) -> CodeOptions {
        CodeOptions {
            allow_any_n: self.allow_any_n,
            allow_r2: self.allow_r2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Multi-dimensional sums K_{n-1}, code C_{n-1}
    Md,
    /// Powers K^m, code D_m
    Pow,
    /// K_2 through the D_2 code
    K2,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KindArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,

    /// Dimension parameter for `--kind md` (moments of K_{n-1})
    #[arg(long, default_value_t = 2)]
    pub n: u32,

    /// Power for `--kind pow`
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

impl KindArgs {
    pub fn moment_kind(&self) -> MomentKind {
        match self.kind {
            Kind::Md => MomentKind::Md { n: self.n },
            Kind::Pow => MomentKind::Pow { m: self.m },
            Kind::K2 => MomentKind::K2,
        }
    }

    /// Code family and its parameter (`n - 1` for md, `m` for pow, 2 for k2).
    pub fn family(&self) -> (CodeFamily, u32) {
        match self.kind {
            Kind::Md => (CodeFamily::Md, self.n.saturating_sub(1)),
            Kind::Pow => (CodeFamily::Pow, self.m),
            Kind::K2 => (CodeFamily::Pow, 2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Formula,
    Direct,
    /// Compute both and compare
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field summary: q, modulus, generator, number of trace-zero elements
    Field {
        /// Same as --field
        #[arg(value_name = "R[:HEX]")]
        spec: Option<FieldSpec>,
    },
    /// A single Kloosterman sum K_m(a)
    Ksum {
        #[arg(long, value_parser = parse_code)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Twist c in sum psi(c(x + a/x)); only for m = 1
        #[arg(long, value_parser = parse_code)]
        twist: Option<u32>,
    },
    /// K_m(a) for every nonzero a
    KsumTable {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Observed values of K(a) against the predicted range
    ValueRange,
    /// Fiber counts of the defining vector, keyed by element code
    Counts {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, value_enum, default_value_t = Source::Formula)]
        source: Source,
    },
    /// Weight distributions of a code and its dual
    Weights {
        #[command(flatten)]
        kind: KindArgs,
        /// Only compute code weights up to this value
        #[arg(long)]
        max_weight: Option<usize>,
        /// Largest code length for the full distribution
        #[arg(long, default_value_t = DEFAULT_DP_LIMIT)]
        limit: usize,
    },
    /// Power moments by recursion and by direct summation
    Moments {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, default_value_t = 6)]
        hmax: usize,
    },
    /// Run the identity and cross-check suite
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Add one to the code's weight count at this weight before checking
        #[arg(long, hide = true)]
        tamper_weight: Option<usize>,
    },
}

/// Element code, decimal or `0x` hex.
fn parse_code(s: &str) -> Result<u32, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid element code {s:?}: {e}"))
}

/// Whether every comparison in the command agreed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Mismatch,
}

impl Verdict {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Agree
        } else {
            Verdict::Mismatch
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let g = &cli.global;
    let (report, verdict) = match cli.command {
        Command::Field { spec } => commands::field(spec.or(g.field))?,
        Command::Ksum { a, m, twist } => commands::ksum(g, a, m, twist)?,
        Command::KsumTable { m } => commands::ksum_table(g, m)?,
        Command::ValueRange => commands::value_range(g)?,
        Command::Counts { kind, source } => commands::counts(g, kind, source)?,
        Command::Weights {
            kind,
            max_weight,
            limit,
        } => commands::weights(g, kind, max_weight, limit)?,
        Command::Moments { kind, hmax } => commands::moments(g, kind, hmax)?,
        Command::Verify {
            level,
            tamper_weight,
        } => verify::run(g, level, tamper_weight)?,
    };
    output::print(&report, g.format)?;
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Agree) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_codes() {
        assert_eq!(parse_code("11"), Ok(11));
        assert_eq!(parse_code("0x1b"), Ok(27));
        assert_eq!(parse_code("0XF"), Ok(15));
        assert!(parse_code("b").is_err());
        assert!(parse_code("-1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
