//! Argument parsing and dispatch. [`run`] writes results to `out`,
//! diagnostics to `err`, and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use cycloinv_core::{
    generic_scaled_inverse, make_modulus, max_expansion_factor, monomial_expansion_factor,
    norm_profile, reduce, reduction_matrix, scaled::binomial_element,
    scaled::consistent_with_generic, scaled_inverse, CycloModulus, Error as CoreError,
};

use crate::output::{
    coeff_list, matrix_csv, matrix_pretty, parse_coeff_list, sweep_csv, sweep_summary,
    ExpansionJson, ExpansionKJson, InverseJson, MatrixJson, PolyJson, ScaledInvJson, SweepJson,
};
use crate::verify::{run_verify, Fault, Suite, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cycloinv",
    version,
    about = "Scaled inverses and reduction structure in Z[x]/Phi_M(x) for M = p^s or p^s q^t"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
#[command(args_conflicts_with_subcommands = true)]
enum Command {
    /// Print Phi_M.
    Cyclo {
        m: u64,
        #[arg(long, value_enum, default_value_t = PolyFormat::Pretty)]
        format: PolyFormat,
    },
    /// Reduce a polynomial modulo Phi_M.
    Reduce {
        m: u64,
        /// Coefficients c0,c1,... (degree-ascending).
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = PolyFormat::Coeffs)]
        format: PolyFormat,
    },
    /// Print the reduction matrix R_M.
    Matrix {
        m: u64,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Pretty)]
        format: MatrixFormat,
        /// Separate the I | B1 | B2 | B3 column groups (squarefree pq only).
        #[arg(long)]
        blocks: bool,
    },
    /// Scaled inverse of x^i - x^j.
    #[command(allow_negative_numbers = true)]
    ScaledInv {
        m: u64,
        i: i64,
        j: i64,
        #[arg(long, value_enum, default_value_t = Method::Construct)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OutFormat::Pretty)]
        format: OutFormat,
    },
    /// Expansion factor of x^k, or the maximum over all k.
    #[command(allow_negative_numbers = true)]
    Expansion {
        m: u64,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Pretty)]
        format: OutFormat,
    },
    /// Constructive inverse for every 0 <= j < i < M, with per-case maxima.
    Sweep {
        m: u64,
        #[arg(long, value_enum, default_value_t = SweepFormat::Summary)]
        format: SweepFormat,
        /// Also compute the minimal scale of each pair via the resultant route.
        #[arg(long)]
        minimal_scale: bool,
    },
    /// Run the verification suites.
    Verify {
        m: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Pretty)]
        format: OutFormat,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyFormat {
    Coeffs,
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Pretty,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepFormat {
    Summary,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Construct,
    Bezout,
    Both,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::UnsupportedModulus(_)) => EXIT_UNSUPPORTED,
            CliError::Core(
                CoreError::BadRange { .. }
                | CoreError::ZeroElement
                | CoreError::OutOfRange(_)
                | CoreError::NotApplicable(_),
            )
            | CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}

type CliResult = Result<(), CliError>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn modulus(m: u64) -> Result<CycloModulus, CliError> {
    Ok(make_modulus(m)?)
}

fn json_line<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> CliResult {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Cyclo { m, format } => {
            let md = modulus(m)?;
            let poly = md.poly();
            match format {
                PolyFormat::Coeffs => writeln!(out, "{}", coeff_list(poly.coeffs()))?,
                PolyFormat::Pretty => writeln!(out, "{poly}")?,
                PolyFormat::Json => {
                    json_line(out, &PolyJson::new(md.m(), md.phi(), poly.coeffs()))?
                }
            }
        }
        Command::Reduce { m, poly, format } => {
            let md = modulus(m)?;
            let a = parse_coeff_list(&poly).map_err(CliError::Usage)?;
            let r = reduce(&a, &md);
            match format {
                PolyFormat::Coeffs => writeln!(out, "{}", coeff_list(r.coeffs()))?,
                PolyFormat::Pretty => writeln!(out, "{}", r.to_poly())?,
                PolyFormat::Json => json_line(out, &PolyJson::new(md.m(), md.phi(), r.coeffs()))?,
            }
        }
        Command::Matrix { m, format, blocks } => {
            let md = modulus(m)?;
            let r = reduction_matrix(&md);
            if blocks && r.blocks().is_none() {
                writeln!(
                    err,
                    "note: M = {m} is not a squarefree pq; no block annotation"
                )?;
            }
            match format {
                MatrixFormat::Pretty => {
                    let b = if blocks { r.blocks() } else { None };
                    write!(out, "{}", matrix_pretty(&r, b))?
                }
                MatrixFormat::Csv => write!(out, "{}", matrix_csv(&r))?,
                MatrixFormat::Json => json_line(out, &MatrixJson::from(&r))?,
            }
        }
        Command::ScaledInv {
            m,
            i,
            j,
            method,
            format,
        } => {
            let md = modulus(m)?;
            let mut results = Vec::new();
            let mut pair = (None, None);
            if method != Method::Bezout {
                let c = scaled_inverse(i, j, &md)?;
                results.push(InverseJson::new("construct", &c));
                pair.0 = Some(c);
            }
            if method != Method::Construct {
                // Range is checked here too so both methods reject the same inputs.
                if !(0 <= j && j < i && i < md.m() as i64) {
                    return Err(CoreError::BadRange { i, j, m: md.m() }.into());
                }
                let g = generic_scaled_inverse(&binomial_element(i, j, &md))?;
                results.push(InverseJson::new("bezout", &g));
                pair.1 = Some(g);
            }
            let agree = match &pair {
                (Some(c), Some(g)) => Some(consistent_with_generic(c, g)),
                _ => None,
            };
            let doc = ScaledInvJson {
                m: md.m(),
                phi: md.phi(),
                i,
                j,
                results,
                agree,
            };
            match format {
                OutFormat::Pretty => {
                    for (n, r) in doc.results.iter().enumerate() {
                        if n > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", r.pretty())?;
                    }
                    if let Some(a) = agree {
                        writeln!(out, "agree: {a}")?;
                    }
                }
                OutFormat::Json => json_line(out, &doc)?,
            }
            if agree == Some(false) {
                return Err(CliError::Failed(
                    "constructive and resultant inverses disagree".into(),
                ));
            }
        }
        Command::Expansion { m, k, format } => {
            let md = modulus(m)?;
            match k {
                Some(k) => {
                    let (factor, g) = monomial_expansion_factor(k, &md)?;
                    let doc = ExpansionKJson::new(k, factor, &g);
                    match format {
                        OutFormat::Pretty => writeln!(
                            out,
                            "k: {k}\nfactor: {factor}\nwitness_g: {}",
                            coeff_list(g.coeffs())
                        )?,
                        OutFormat::Json => json_line(out, &doc)?,
                    }
                }
                None => {
                    let report = max_expansion_factor(&md)?;
                    match format {
                        OutFormat::Pretty => {
                            let per_k: Vec<String> =
                                report.per_k.iter().map(ToString::to_string).collect();
                            writeln!(
                                out,
                                "max_factor: {}\nwitness_k: {}\nwitness_g: {}\nper_k: {}",
                                report.max_factor,
                                report.witness_k,
                                coeff_list(report.witness_g.coeffs()),
                                per_k.join(",")
                            )?
                        }
                        OutFormat::Json => json_line(out, &ExpansionJson::from(&report))?,
                    }
                }
            }
        }
        Command::Sweep {
            m,
            format,
            minimal_scale,
        } => {
            let md = modulus(m)?;
            let profile = norm_profile(&md, minimal_scale)?;
            match format {
                SweepFormat::Summary => write!(out, "{}", sweep_summary(&profile))?,
                SweepFormat::Csv => write!(out, "{}", sweep_csv(&profile)?)?,
                SweepFormat::Json => json_line(out, &SweepJson::from(&profile))?,
            }
        }
        Command::Verify {
            m,
            suite,
            trials,
            seed,
            format,
            inject_fault,
        } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let md = modulus(m)?;
            let opts = VerifyOptions {
                suite,
                trials,
                seed,
                fault: inject_fault,
            };
            let report = run_verify(&md, &opts);
            match format {
                OutFormat::Pretty => write!(out, "{}", report.pretty())?,
                OutFormat::Json => json_line(out, &report)?,
            }
            if !report.passed() {
                let names: Vec<&str> = report.failures().map(|c| c.name).collect();
                return Err(CliError::Failed(format!(
                    "failed checks: {}",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(())
}
