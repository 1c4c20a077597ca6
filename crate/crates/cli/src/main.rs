//! `slinv`: tables, module analysis, Hecke data and L-invariants from the
//! command line. Results go to stdout as JSON (or CSV for tables); errors go
//! to stderr as `{"error": {...}}` with exit code 2 for bad input and 3 for a
//! singular direction.

mod commands;
mod json;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use slinv_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "slinv",
    version,
    about = "Exact symmetric-power L-invariant computations"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inverse Clebsch-Gordan coefficient C_{m,n,p}^{u,v,w}, or the whole table.
    Cg {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, conflicts_with_all = ["u", "v", "w"])]
        table: bool,
        #[arg(long, required_unless_present = "table")]
        u: Option<usize>,
        #[arg(long, required_unless_present = "table")]
        v: Option<usize>,
        #[arg(long, required_unless_present = "table")]
        w: Option<usize>,
    },
    /// Coefficients B_{n,k,i} of the projection End(Sym^n) -> Sym^{2k}.
    Bcoeff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Project a diagonal endomorphism of Sym^n onto Sym^{2k}.
    ProjectEndo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// JSON array of n+1 rationals, inline or a file path.
        #[arg(long)]
        diag: String,
    },
    /// Filtered (phi, N)-module of Sym^{2n} in one local case.
    Phin {
        #[arg(long, value_enum)]
        case: PhinCase,
        #[arg(long)]
        n: usize,
        /// L-invariant parameter (steinberg only), default 1.
        #[arg(long = "L")]
        l: Option<String>,
        /// Weight for the split crystalline case, default 2.
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, group = "view")]
        all_submodules: bool,
        #[arg(long, group = "view")]
        benois: bool,
        #[arg(long, group = "view")]
        gr1: bool,
    },
    /// Iwahori-Hecke eigenvalue of a torus element on Iwahori vectors.
    Hecke {
        #[arg(long)]
        g: usize,
        /// Exponents "a_1,...,a_g;a_0".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Weyl element {"nu": [...], "eps": [...]}, default identity.
        #[arg(long, conflicts_with = "all")]
        weyl: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Recover the Satake characters from normalized U_p eigenvalues.
    RecoverChi {
        #[arg(long)]
        g: usize,
        /// JSON array of monomials {"symbol": "exponent", ...}.
        #[arg(long)]
        eigs: String,
        /// JSON {"mu": [...], "mu0": ...}.
        #[arg(long)]
        weights: String,
        #[arg(long)]
        weyl: Option<String>,
    },
    /// Noncritical slope check (and twist search for GSp).
    Slope {
        #[arg(long, value_enum)]
        family: SlopeFamily,
        #[arg(long)]
        input: String,
    },
    /// Root-of-unity orders that would break regularity of a refinement.
    Obstruction {
        /// Comma-separated exponents of alpha/beta.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        exponents: Vec<i64>,
        #[arg(long = "check-N")]
        check_n: Option<u64>,
    },
    /// L-invariant of a family from the generic formula.
    Linv {
        #[arg(long, value_enum)]
        family: LinvFamily,
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        compare_theorem: Option<TheoremArg>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhinCase {
    Steinberg,
    #[value(name = "crystalline_split", alias = "split")]
    CrystallineSplit,
    #[value(name = "crystalline_nonsplit", alias = "nonsplit")]
    CrystallineNonsplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SlopeFamily {
    Hilbert,
    Gsp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LinvFamily {
    Hilbert,
    #[value(name = "gsp4_spin")]
    Gsp4Spin,
    #[value(name = "gsp_std")]
    GspStd,
    Unitary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D1")]
    D1,
    #[value(name = "D2")]
    D2,
}

#[derive(Debug)]
pub struct CliError {
    kind: &'static str,
    message: String,
    place: Option<usize>,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError {
            kind: "parse",
            message,
            place: None,
        }
    }

    pub fn io(message: String) -> Self {
        CliError {
            kind: "io",
            message,
            place: None,
        }
    }

    pub fn usage(message: String) -> Self {
        CliError {
            kind: "usage",
            message,
            place: None,
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind {
            "singular_direction" => 3,
            "internal" => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut body = json!({ "kind": self.kind, "message": self.message });
        if let Some(p) = self.place {
            body["place"] = json!(p);
        }
        json!({ "error": body })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::OutOfRange(_) => "out_of_range",
            Error::Precondition(_) => "precondition",
            Error::Unsupported(_) => "unsupported",
            Error::SingularDirection { .. } => "singular_direction",
            Error::Inversion(_) => "inversion",
            Error::NoTwist(_) => "no_twist",
            Error::Internal(_) => "internal",
        };
        let place = match e {
            Error::SingularDirection { place } => Some(place),
            _ => None,
        };
        CliError {
            kind,
            message: e.to_string(),
            place,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::usage(
                e.to_string()
                    .lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .to_string(),
            );
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match commands::run(&cli.command, cli.format) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
