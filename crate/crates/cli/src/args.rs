use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact computations in Leavitt path algebras.
///
/// Element expressions are read from --expr or, one per line, from
/// standard input.
#[derive(Parser, Debug)]
#[command(name = "leavitt", version)]
pub struct Cli {
    /// Graph file.
    #[arg(long, global = true, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Degree file, or `canonical` (every edge 1 in Z), or `canonical:GROUP`
    /// such as `canonical:Z/5`.
    #[arg(long, global = true, default_value = "canonical", value_name = "FILE|canonical")]
    pub degrees: String,

    /// Coefficient ring: z, q or z/N.
    #[arg(long, global = true, default_value = "z")]
    pub ring: String,

    /// Length bound for both paths of every enumerated monomial.
    #[arg(long, global = true, default_value_t = 6)]
    pub bound: usize,

    /// Degrees to check: `A..B` for Z and Z/n, or a list separated by `;`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,

    /// Seed for sampled elements.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: OutputFormat,

    /// Element expression; may be repeated.
    #[arg(long = "expr", short = 'e', global = true, allow_hyphen_values = true)]
    pub exprs: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of each expression.
    Nf,
    /// Product of the expressions, left to right.
    Mul,
    /// Involution of each expression.
    Involve,
    /// Homogeneous components of each expression.
    Decompose,
    /// Normal-form monomials of one degree.
    Xg {
        #[arg(short = 'g', long = "degree", allow_hyphen_values = true)]
        g: String,
    },
    /// The idempotent epsilon_g with its factorization.
    Epsilon {
        #[arg(short = 'g', long = "degree", allow_hyphen_values = true)]
        g: String,
    },
    /// Local units of each (homogeneous) expression.
    Localunits,
    /// Check a grading property.
    Check {
        #[arg(long, value_enum)]
        property: Property,
        /// Random samples for nearly-epsilon when no expression is given.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Build and verify the Frobenius system of a finite grading.
    Frobenius {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Triples (t, a, t') for the bimodule law.
        #[arg(long, default_value_t = 50)]
        triples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Symmetric,
    EpsilonStrong,
    NearlyEpsilon,
    Strong,
    Nondegenerate,
    Grading,
}

impl Cli {
    /// Whether expressions are needed and none were given on the command
    /// line.
    pub fn needs_stdin(&self) -> bool {
        let wants = match &self.command {
            Command::Nf | Command::Mul | Command::Involve | Command::Decompose | Command::Localunits => true,
            Command::Check { property, .. } => *property == Property::Nondegenerate,
            _ => false,
        };
        wants && self.exprs.is_empty()
    }
}
