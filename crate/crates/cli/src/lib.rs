//! `clg`: command-line access to Steinitz arithmetic and the generalized
//! Clifford algebra.
//!
//! Exit status is 0 on success, 2 on a parse or usage error and 3 when the
//! input parses but violates a precondition.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use clg_core::clifford::{self, parse_index_list, CliffordElement, Word};
use clg_core::matrixrep::{self, RepAssignment};
use clg_core::{CycField, Error, SteinitzNumber};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "clg", version, about = "Exact Steinitz-number and generalized Clifford algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steinitz arithmetic, e.g. `st "2^inf * 3" mul "2 * 3^inf"`
    St {
        /// Steinitz literal: `term (* term)*`, term = `p`, `p^e` or `rest^e`, e = decimal or `inf`
        expr: String,
        #[arg(value_enum, requires = "operand")]
        op: Option<StOp>,
        operand: Option<String>,
        /// Print the natural / infinite / locally finite / primary predicates
        #[arg(long)]
        classify: bool,
    },
    /// Normal form of a generator word, e.g. `nf --l 3 "x2 x1"`
    Nf {
        #[arg(long = "l")]
        level: u32,
        /// Letters `x<rational>[^<int>]`; several arguments are concatenated
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Product of two algebra elements
    Mul {
        #[arg(long = "l")]
        level: u32,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Centralizer of probe generators within the truncation on the ambient indices
    Cent {
        #[arg(long = "l")]
        level: u32,
        /// Comma-separated rational indices, e.g. `1,2`
        #[arg(long, allow_hyphen_values = true)]
        ambient: String,
        /// Comma-separated rational indices, e.g. `0.5,1.5,2.5`
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        probes: String,
        /// Also solve the commutator equations directly and compare spans
        #[arg(long)]
        brute: bool,
    },
    /// Clock-and-shift generator images and their relation report
    Rep {
        #[arg(long = "l")]
        level: u32,
        #[arg(long)]
        n: usize,
    },
    /// Linear independence of all ordered monomial images
    Span {
        #[arg(long = "l")]
        level: u32,
        #[arg(long)]
        n: usize,
    },
    /// Steinitz number (lcm) of a chain of matrix sizes
    Stchain {
        #[arg(required = true)]
        sizes: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StOp {
    Lcm,
    Gcd,
    Mul,
    Divides,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("write failed: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

type CliResult = Result<(), CliError>;

/// Parses `argv` (including the program name), writes results to `out` and
/// diagnostics to stderr, and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = e.print();
            return EXIT_PARSE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Parse(_) => EXIT_PARSE,
                CliError::Domain(_) => EXIT_DOMAIN,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut impl Write) -> CliResult {
    match cmd {
        Command::St { expr, op, operand, classify } => st(&expr, op, operand.as_deref(), classify, out),
        Command::Nf { level, word } => {
            let field = clifford_field(level)?;
            let word: Word = word.join(" ").parse()?;
            writeln!(out, "{}", clifford::normal_form(&word, &field))?;
            Ok(())
        }
        Command::Mul { level, left, right } => {
            let field = clifford_field(level)?;
            let a = CliffordElement::parse(&left, &field)?;
            let b = CliffordElement::parse(&right, &field)?;
            writeln!(out, "{}", a.mul(&b)?)?;
            Ok(())
        }
        Command::Cent { level, ambient, probes, brute } => cent(level, &ambient, &probes, brute, out),
        Command::Rep { level, n } => rep(level, n, out),
        Command::Span { level, n } => {
            let field = clifford_field(level)?;
            let faithful = matrixrep::faithfulness_check(n, &field)?;
            writeln!(out, "monomials: {}", (level as u128).pow(n as u32))?;
            writeln!(out, "faithful: {faithful}")?;
            Ok(())
        }
        Command::Stchain { sizes } => {
            let sizes = sizes
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    s.parse::<u64>()
                        .map_err(|_| CliError::Parse(format!("argument {}: invalid positive integer `{s}`", k + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "{}", SteinitzNumber::lcm_of_sequence(sizes)?)?;
            Ok(())
        }
    }
}

fn clifford_field(level: u32) -> Result<CycField, CliError> {
    if level < 2 {
        return Err(CliError::Domain(format!("--l must be at least 2, got {level}")));
    }
    Ok(CycField::new(level)?)
}

fn st(expr: &str, op: Option<StOp>, operand: Option<&str>, classify: bool, out: &mut impl Write) -> CliResult {
    let a: SteinitzNumber = expr.parse()?;
    let result = match (op, operand) {
        (None, _) => a,
        (Some(op), Some(rhs)) => {
            let b: SteinitzNumber = rhs.parse()?;
            match op {
                StOp::Lcm => a.lcm(&b),
                StOp::Gcd => a.gcd(&b),
                StOp::Mul => a.mul(&b),
                StOp::Divides => {
                    writeln!(out, "{}", a.divides(&b))?;
                    if classify {
                        print_classification(&a, out)?;
                    }
                    return Ok(());
                }
            }
        }
        (Some(_), None) => return Err(CliError::Parse("missing operand".into())),
    };
    writeln!(out, "{result}")?;
    if classify {
        print_classification(&result, out)?;
    }
    Ok(())
}

fn print_classification(s: &SteinitzNumber, out: &mut impl Write) -> CliResult {
    let c = s.classify();
    writeln!(out, "natural: {}", c.is_natural)?;
    writeln!(out, "infinite: {}", c.is_infinite)?;
    writeln!(out, "locally_finite: {}", c.is_locally_finite)?;
    writeln!(out, "primary: {}", c.is_primary)?;
    Ok(())
}

fn cent(level: u32, ambient: &str, probes: &str, brute: bool, out: &mut impl Write) -> CliResult {
    let field = clifford_field(level)?;
    let ambient = parse_index_list(ambient)?;
    let probes = parse_index_list(probes)?;
    let monomials = clifford::centralizer_congruence(&ambient, &probes, level);
    if !brute {
        for m in &monomials {
            writeln!(out, "{m}")?;
        }
        return Ok(());
    }
    let basis = clifford::centralizer_bruteforce(&ambient, &probes, &field)?;
    for e in &basis {
        writeln!(out, "{e}")?;
    }
    let as_elems: Vec<CliffordElement> =
        monomials.into_iter().map(|m| CliffordElement::term(&field, m, field.one())).collect();
    writeln!(out, "agree: {}", clifford::spans_equal(&field, &as_elems, &basis))?;
    Ok(())
}

fn rep(level: u32, n: usize, out: &mut impl Write) -> CliResult {
    let field = clifford_field(level)?;
    if n == 0 {
        return Err(CliError::Domain("--n must be at least 1".into()));
    }
    let size = (level as usize).checked_pow(n as u32).filter(|&d| d <= clg_core::DIMENSION_GUARD);
    if size.is_none() {
        return Err(CliError::Domain(format!(
            "matrix size {level}^{n} exceeds the limit {}",
            clg_core::DIMENSION_GUARD
        )));
    }
    let rep = RepAssignment::standard(n, &field);
    for (i, g) in rep.indices().iter().zip(rep.images()) {
        writeln!(out, "x{i}:")?;
        write!(out, "{g}")?;
    }
    write!(out, "{}", matrixrep::verify_relations(&rep)?)?;
    let pair = RepAssignment::standard(2, &field);
    writeln!(out, "spanned dimension (n=2): {}", matrixrep::spanned_dimension(pair.images())?)?;
    Ok(())
}
