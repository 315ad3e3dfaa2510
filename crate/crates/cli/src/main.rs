mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobdiv::counting::{ambient_count, count, extension_order, CountOptions};
use frobdiv::mu::mu;
use frobdiv::verify::{self, ProbeReport, SpecSummary, Verdict, VerifyOptions};
use frobdiv::zeta::{zeta_with_counts, ZetaFunction, ZetaOptions};
use frobdiv::{ErrorKind, Result};
use serde::{Deserialize, Serialize};

use input::{load, InputError, Loaded};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_COMPUTATION: u8 = 3;

/// Zeta functions of varieties over finite fields and q-divisibility checks
/// on their Frobenius eigenvalues.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
/// 3 the computation could not finish (budget, stabilization, impure factor).
///
/// Variety files are JSON: {"p", "e", "ambient": "affine" | "projective", "n",
/// "polys": [...], "dim"?, "budget"?}. The point-count budget defaults to 1e8
/// enumerated points per extension degree.
#[derive(Parser, Debug)]
#[command(name = "frobdiv", version, about, long_about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of mu_j(n; d) for j = 0..=jmax.
    Mu {
        #[arg(long)]
        n: u32,
        /// Comma-separated degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Largest j to print [default: n].
        #[arg(long)]
        jmax: Option<u32>,
    },
    /// Count points over F_{q^k}.
    Count {
        file: PathBuf,
        #[arg(long)]
        k: u32,
        /// Count the complement in the ambient space instead.
        #[arg(long)]
        complement: bool,
    },
    /// Zeta function from point counts.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        complement: bool,
        /// Largest numerator or denominator degree to try.
        #[arg(long, default_value_t = ZetaOptions::default().max_bound)]
        bound: usize,
        /// Extra counts a fit must reproduce.
        #[arg(long, default_value_t = ZetaOptions::default().holdout)]
        holdout: usize,
    },
    /// Divisibility checks.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Exploratory checks of unproven bounds; violations do not change the exit code.
    Probe {
        #[command(subcommand)]
        target: ProbeTarget,
    },
}

#[derive(Args, Debug)]
struct KmaxArgs {
    file: PathBuf,
    /// Largest extension degree k to check.
    #[arg(long, default_value_t = 3)]
    kmax: u32,
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Point counts (and complement or cone counts) divisible by q^(k mu_0).
    AxKatz(KmaxArgs),
    /// Bounds on Z(Y) and Z(P^n \ Y) for projective Y.
    Projective { file: PathBuf },
    /// Reciprocal poles of Z(X)^((-1)^(dim X - 1)) for an affine complete intersection.
    Polar {
        file: PathBuf,
        /// Treat X as a complete intersection even if its dimension is not n - r.
        #[arg(long)]
        assert_ci: bool,
    },
    /// #(P^n \ Y) = #(A^n \ X) + #(P^(n-1) \ Y_inf).
    Excision(KmaxArgs),
}

#[derive(Subcommand, Debug)]
enum ProbeTarget {
    /// The complement-type bounds transplanted to A^n \ X and X.
    Affine { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuRow {
    pub j: u32,
    pub mu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuTable {
    pub n: u32,
    pub degrees: Vec<u32>,
    pub rows: Vec<MuRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub spec: SpecSummary,
    pub k: u32,
    pub complement: bool,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaOutput {
    pub spec: SpecSummary,
    pub complement: bool,
    pub zeta: ZetaFunction,
    pub counts: Vec<u128>,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] frobdiv::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Core(e) if e.kind() == ErrorKind::Input => EXIT_INPUT,
            Failure::Core(_) => EXIT_COMPUTATION,
        }
    }
}

/// Rendered output and the exit code it implies.
struct Outcome {
    text: String,
    json: String,
    code: u8,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, code: u8) -> Self {
        Outcome {
            text,
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            code,
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Error => EXIT_COMPUTATION,
    }
}

fn count_opts(l: &Loaded) -> CountOptions {
    CountOptions {
        budget: l.budget,
        ..CountOptions::default()
    }
}

fn verify_opts(l: &Loaded) -> VerifyOptions {
    let mut o = VerifyOptions::with_budget(l.budget);
    o.dim_override = l.dim;
    o
}

fn run(command: Command) -> std::result::Result<Outcome, Failure> {
    Ok(match command {
        Command::Mu { n, degrees, jmax } => {
            let rows = (0..=jmax.unwrap_or(n))
                .map(|j| {
                    Ok(MuRow {
                        j,
                        mu: mu(j, n, &degrees)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let t = MuTable { n, degrees, rows };
            Outcome::new(&t, render::mu(&t), 0)
        }
        Command::Count {
            file,
            k,
            complement,
        } => {
            let l = load(&file)?;
            let mut c = count(&l.spec, k, &count_opts(&l))?;
            if complement {
                c = ambient_count(l.spec.ambient(), l.spec.n(), extension_order(&l.spec, k)?) - c;
            }
            let out = CountOutput {
                spec: (&l.spec).into(),
                k,
                complement,
                count: c,
            };
            Outcome::new(&out, render::count(&out), 0)
        }
        Command::Zeta {
            file,
            complement,
            bound,
            holdout,
        } => {
            let l = load(&file)?;
            let opts = ZetaOptions {
                holdout,
                max_bound: bound,
                count: count_opts(&l),
            };
            let (zeta, counts) = zeta_with_counts(&l.spec, complement, &opts)?;
            let out = ZetaOutput {
                spec: (&l.spec).into(),
                complement,
                zeta,
                counts: counts
                    .iter()
                    .map(|c| u128::try_from(c).expect("counts are nonnegative"))
                    .collect(),
            };
            Outcome::new(&out, render::zeta(&out), 0)
        }
        Command::Verify { check } => match check {
            Check::AxKatz(a) => {
                let l = load(&a.file)?;
                let r = verify::verify_ax_katz(&l.spec, a.kmax, &count_opts(&l))?;
                Outcome::new(&r, render::ax_katz(&r), verdict_code(r.overall))
            }
            Check::Projective { file } => {
                let l = load(&file)?;
                let r = verify::verify_projective_bounds(&l.spec, &verify_opts(&l))?;
                Outcome::new(&r, render::projective(&r), verdict_code(r.overall))
            }
            Check::Polar { file, assert_ci } => {
                let l = load(&file)?;
                let r = verify::verify_polar(&l.spec, assert_ci, &verify_opts(&l))?;
                Outcome::new(&r, render::polar(&r), verdict_code(r.overall))
            }
            Check::Excision(a) => {
                let l = load(&a.file)?;
                let r = verify::verify_excision(&l.spec, a.kmax, &count_opts(&l))?;
                Outcome::new(&r, render::excision(&r), verdict_code(r.overall))
            }
        },
        Command::Probe {
            target: ProbeTarget::Affine { file },
        } => {
            let l = load(&file)?;
            let r: ProbeReport = verify::probe_affine(&l.spec, &verify_opts(&l))?;
            Outcome::new(&r, render::probe(&r), 0)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
