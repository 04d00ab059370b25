//! Command-line front end: evaluation, inversion, rectangle modulus,
//! CSV tables, and the verification sweep.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extmod::elliptic::{ellip_e, ellip_ec, ellip_k, ellip_kc};
use extmod::grid::{GridLaw, GridSpec};
use extmod::modulus::{comparison_gap, exterior_modulus, interior_modulus, modulus_bounds};
use extmod::psi::{f8, mu, mu_inv, psi, psi_bounds, psi_inv, psi_prime};
use extmod::verify::{run_all, run_matching, CheckReport, Verdict, VerifyConfig};
use extmod::Modulus;

/// Writes one line to stdout, exiting quietly when the reader has gone away:
/// `table … | head` must end the process, not panic it.
fn out(line: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_fmt(line)
        .and_then(|()| stdout.write_all(b"\n"))
        .is_err()
    {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { out(format_args!($($t)*)) };
}

#[derive(Parser)]
#[command(name = "extmod", version, about = "Elliptic integrals, the ring function, and the exterior modulus of a rectangle")]
struct Cli {
    /// Digits printed after the decimal point.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,

    /// Output shape for scalar commands (tables are always CSV).
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval {
        #[arg(value_enum)]
        function: EvalFunction,
        /// The argument; `3-2sqrt2` and `1/sqrt2` are accepted literals.
        argument: String,
    },
    /// Find the argument at which psi or mu takes the given value.
    Invert {
        #[arg(value_enum)]
        function: InvertFunction,
        value: String,
    },
    /// Exterior modulus of the rectangle with the given aspect ratio,
    /// together with the interior modulus and the two-sided bounds.
    Modulus { aspect: String },
    /// Emit a CSV table of a quantity over a grid of n points.
    Table {
        #[arg(value_enum)]
        quantity: TableQuantity,
        lo: String,
        hi: String,
        n: usize,
        /// Space the points logarithmically instead of uniformly.
        #[arg(long)]
        log: bool,
    },
    /// Run verification claims: all of them, or those whose id starts
    /// with the given prefix. One report line per claim.
    Verify { prefix: Option<String> },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum EvalFunction {
    #[value(name = "K")]
    K,
    #[value(name = "E")]
    E,
    #[value(name = "Kc")]
    Kc,
    #[value(name = "Ec")]
    Ec,
    #[value(name = "psi")]
    Psi,
    #[value(name = "psi_prime")]
    PsiPrime,
    #[value(name = "mu")]
    Mu,
    #[value(name = "f8")]
    F8,
}

impl EvalFunction {
    fn name(self) -> &'static str {
        match self {
            EvalFunction::K => "K",
            EvalFunction::E => "E",
            EvalFunction::Kc => "Kc",
            EvalFunction::Ec => "Ec",
            EvalFunction::Psi => "psi",
            EvalFunction::PsiPrime => "psi_prime",
            EvalFunction::Mu => "mu",
            EvalFunction::F8 => "f8",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum InvertFunction {
    Psi,
    Mu,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TableQuantity {
    #[value(name = "psi")]
    Psi,
    #[value(name = "psi_bounds")]
    PsiBounds,
    #[value(name = "modulus")]
    Modulus,
    #[value(name = "modulus_bounds")]
    ModulusBounds,
    #[value(name = "comparison_gap")]
    ComparisonGap,
}

/// Parses a real argument, resolving the two symbolic literals for the
/// irrational test points that deserve full precision.
fn parse_real(text: &str) -> Result<f64, String> {
    match text.trim() {
        "3-2sqrt2" => Ok(3.0 - 2.0 * std::f64::consts::SQRT_2),
        "1/sqrt2" => Ok(std::f64::consts::FRAC_1_SQRT_2),
        plain => plain
            .parse::<f64>()
            .map_err(|_| format!("cannot read {plain:?} as a real number")),
    }
}

fn modulus_arg(x: f64) -> Result<Modulus, extmod::Error> {
    Modulus::new(x)
}

struct Printer {
    digits: usize,
    format: Format,
}

impl Printer {
    fn num(&self, x: f64) -> String {
        format!("{:.*}", self.digits, x)
    }

    /// One labelled scalar result.
    fn scalar(&self, command: &str, label: &str, argument: f64, value: f64) {
        match self.format {
            Format::Plain => outln!("{}", self.num(value)),
            Format::Csv => {
                outln!("command,function,argument,value");
                outln!("{command},{label},{},{}", self.num(argument), self.num(value));
            }
            Format::Json => outln!(
                "{{\"command\":\"{command}\",\"function\":\"{label}\",\"argument\":{},\"value\":{}}}",
                self.num(argument),
                self.num(value)
            ),
        }
    }

    /// The four-quantity modulus summary.
    fn modulus(&self, aspect: f64, exterior: f64, interior: f64, lower: f64, upper: f64) {
        match self.format {
            Format::Plain => {
                outln!("exterior {}", self.num(exterior));
                outln!("interior {}", self.num(interior));
                outln!("lower {}", self.num(lower));
                outln!("upper {}", self.num(upper));
            }
            Format::Csv => {
                outln!("aspect,exterior,interior,lower,upper");
                outln!(
                    "{},{},{},{},{}",
                    self.num(aspect),
                    self.num(exterior),
                    self.num(interior),
                    self.num(lower),
                    self.num(upper)
                );
            }
            Format::Json => outln!(
                "{{\"aspect\":{},\"exterior\":{},\"interior\":{},\"lower\":{},\"upper\":{}}}",
                self.num(aspect),
                self.num(exterior),
                self.num(interior),
                self.num(lower),
                self.num(upper)
            ),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let printer = Printer {
        digits: cli.digits as usize,
        format: cli.format,
    };
    match dispatch(cli.command, &printer) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command, printer: &Printer) -> Result<ExitCode, String> {
    match command {
        Command::Eval { function, argument } => {
            let x = parse_real(&argument)?;
            let value = eval_function(function, x).map_err(|e| e.to_string())?;
            printer.scalar("eval", function.name(), x, value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Invert { function, value } => {
            let y = parse_real(&value)?;
            let (label, root) = match function {
                InvertFunction::Psi => ("psi", psi_inv(y).map_err(|e| e.to_string())?),
                InvertFunction::Mu => ("mu", mu_inv(y).map_err(|e| e.to_string())?),
            };
            printer.scalar("invert", label, y, root.get());
            Ok(ExitCode::SUCCESS)
        }
        Command::Modulus { aspect } => {
            let b = parse_real(&aspect)?;
            let exterior = exterior_modulus(b).map_err(|e| e.to_string())?;
            let interior = interior_modulus(b).map_err(|e| e.to_string())?;
            let bounds = modulus_bounds(b).map_err(|e| e.to_string())?;
            printer.modulus(b, exterior, interior, bounds.lower, bounds.upper);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            quantity,
            lo,
            hi,
            n,
            log,
        } => {
            let lo = parse_real(&lo)?;
            let hi = parse_real(&hi)?;
            let law = if log {
                GridLaw::Logarithmic
            } else {
                GridLaw::Uniform
            };
            let grid = GridSpec::new(lo, hi, n, law).map_err(|e| e.to_string())?;
            emit_table(quantity, &grid, printer).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { prefix } => {
            let cfg = VerifyConfig::default();
            let reports: Vec<CheckReport> = match &prefix {
                Some(p) => {
                    let matched = run_matching(p, &cfg);
                    if matched.is_empty() {
                        return Err(format!("no claim id starts with {p:?}"));
                    }
                    matched
                }
                None => run_all(&cfg),
            };
            let mut all_pass = true;
            for report in &reports {
                outln!("{}", report.line());
                all_pass &= report.verdict == Verdict::Pass;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn eval_function(function: EvalFunction, x: f64) -> extmod::Result<f64> {
    match function {
        EvalFunction::K => ellip_k(x),
        EvalFunction::E => ellip_e(x),
        EvalFunction::Kc => ellip_kc(x),
        EvalFunction::Ec => ellip_ec(x),
        EvalFunction::Psi => Ok(psi(modulus_arg(x)?)),
        EvalFunction::PsiPrime => Ok(psi_prime(modulus_arg(x)?)),
        EvalFunction::Mu => Ok(mu(modulus_arg(x)?)),
        EvalFunction::F8 => Ok(f8(modulus_arg(x)?)),
    }
}

fn emit_table(
    quantity: TableQuantity,
    grid: &GridSpec,
    printer: &Printer,
) -> extmod::Result<()> {
    let points = grid.points();
    match quantity {
        TableQuantity::Psi => {
            outln!("r,psi");
            for x in points {
                outln!("{},{}", printer.num(x), printer.num(psi(modulus_arg(x)?)));
            }
        }
        TableQuantity::PsiBounds => {
            outln!("r,lower,psi,upper");
            for x in points {
                let r = modulus_arg(x)?;
                let b = psi_bounds(r);
                outln!(
                    "{},{},{},{}",
                    printer.num(x),
                    printer.num(b.lower),
                    printer.num(psi(r)),
                    printer.num(b.upper)
                );
            }
        }
        TableQuantity::Modulus => {
            outln!("b,modulus");
            for x in points {
                outln!("{},{}", printer.num(x), printer.num(exterior_modulus(x)?));
            }
        }
        TableQuantity::ModulusBounds => {
            outln!("b,lower,modulus,upper");
            for x in points {
                let bounds = modulus_bounds(x)?;
                outln!(
                    "{},{},{},{}",
                    printer.num(x),
                    printer.num(bounds.lower),
                    printer.num(exterior_modulus(x)?),
                    printer.num(bounds.upper)
                );
            }
        }
        TableQuantity::ComparisonGap => {
            outln!("r,gap");
            for x in points {
                outln!("{},{}", printer.num(x), printer.num(comparison_gap(x)?));
            }
        }
    }
    Ok(())
}
