use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use modpde::forms::{build_form, Built, FormName};
use modpde::hypergeom::{clausen_check, clausen_pairs};
use modpde::mirror::{self, MirrorCase, ThetaOperator};
use modpde::report::{all, VerificationItem, VerificationReport};
use modpde::scalar::parse_rational;
use modpde::series::dump::dump;
use modpde::suites::{run_suite, SuiteOptions, MIN_ORDER};
use modpde::{Error, Rational};

#[derive(Parser)]
#[command(name = "modpde", version, about = "Exact verification of modular-form identities and PDE systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        /// forms, hypergeom, thm21-random, thm31, thm41, thm51, thm52-transforms,
        /// example41, schwarzian, mirror, op-equiv or all
        suite: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_parser = rational)]
        a: Option<Rational>,
        #[arg(long, value_parser = rational)]
        b: Option<Rational>,
        /// Weight-one case for thm41: a, b, c or d
        #[arg(long)]
        case: Option<char>,
        /// Number of random contexts for thm21-random
        #[arg(long)]
        instances: Option<u64>,
    },
    /// Inspect classical forms.
    Forms {
        #[command(subcommand)]
        command: FormsCommand,
    },
    /// Frobenius bases, mirror maps and operator identities.
    Mirror {
        #[command(subcommand)]
        command: MirrorCommand,
    },
    /// Hypergeometric identities.
    Hypergeom {
        #[command(subcommand)]
        command: HypergeomCommand,
    },
}

#[derive(Subcommand)]
enum FormsCommand {
    /// Print the q-expansion of a named form, one term per line.
    Dump {
        name: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum MirrorCommand {
    /// Modular relation of one of the cases I-IV.
    Relation {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Symbolic operator identities.
    OpEquiv {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Frobenius solutions and mirror map of an operator such as "T^3 - 8x(2T+1)^3".
    Frobenius {
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum HypergeomCommand {
    Check {
        #[command(subcommand)]
        identity: HypergeomIdentity,
    },
}

#[derive(Subcommand)]
enum HypergeomIdentity {
    /// 2F1(a,b;a+b+1/2;z)^2 = 3F2(2a,a+b,2b;a+b+1/2,2a+2b;z)
    Clausen {
        #[arg(long, value_parser = rational)]
        a: Option<Rational>,
        #[arg(long, value_parser = rational)]
        b: Option<Rational>,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn print(report: &VerificationReport, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn usage(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn check_order(order: usize) -> Result<(), Error> {
    if order < MIN_ORDER {
        Err(Error::InvalidOrder(order, MIN_ORDER))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify {
            suite,
            order,
            seed,
            format,
            a,
            b,
            case,
            instances,
        } => {
            let opts = SuiteOptions {
                order,
                seed,
                instances,
                a,
                b,
                case,
            };
            Ok(print(&run_suite(&suite, &opts)?, format))
        }
        Command::Forms {
            command: FormsCommand::Dump { name, order },
        } => {
            let name: FormName = name.parse()?;
            match build_form(name, order)? {
                Built::Single(s) => print!("{}", dump(&s)),
                Built::Pair(p) => {
                    println!("# h");
                    print!("{}", dump(&p.h));
                    println!("# t");
                    print!("{}", dump(&p.t));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mirror { command } => match command {
            MirrorCommand::Relation { case, order, format } => {
                check_order(order)?;
                let case = MirrorCase::parse(&case)?;
                let start = Instant::now();
                let items = mirror::case_items(case, order);
                let r = VerificationReport::new("mirror", order, None, items, start.elapsed().as_millis());
                Ok(print(&r, format))
            }
            MirrorCommand::OpEquiv { format } => {
                let start = Instant::now();
                let r = VerificationReport::new("op-equiv", 0, None, mirror::op_equiv_items(), start.elapsed().as_millis());
                Ok(print(&r, format))
            }
            MirrorCommand::Frobenius { op, order } => {
                check_order(order)?;
                let op: ThetaOperator = op.parse()?;
                let basis = mirror::frobenius(&op, order)?;
                println!("# operator\n{op}");
                println!("# f0");
                print!("{}", dump(&basis.f0));
                println!("# g, with f1 = f0 log x + g");
                print!("{}", dump(&basis.g));
                println!("# mirror map x(q)");
                print!("{}", dump(&mirror::mirror_map(&basis)?));
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Hypergeom {
            command:
                HypergeomCommand::Check {
                    identity: HypergeomIdentity::Clausen { a, b, order, format },
                },
        } => {
            check_order(order)?;
            let pairs = match (a, b) {
                (Some(a), Some(b)) => vec![(a, b)],
                (None, None) => clausen_pairs().to_vec(),
                _ => return Err(Error::Parse("--a and --b must be given together".into())),
            };
            let start = Instant::now();
            let outcome = all(pairs
                .iter()
                .map(|(a, b)| (format!("({a},{b})"), clausen_check(a, b, order))));
            let item = VerificationItem::new(
                "hypergeom.clausen",
                r"_2F_1\left(a,b;a+b+\frac12;z\right)^2=\,_3F_2\left(2a,a+b,2b;a+b+\frac12,2a+2b;z\right)",
                order,
                outcome,
            );
            let r = VerificationReport::new("hypergeom", order, None, vec![item], start.elapsed().as_millis());
            Ok(print(&r, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(usage)
}
