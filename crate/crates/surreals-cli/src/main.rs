//! The `surreals` binary: expression evaluation, sign-sequence and
//! normal-form rendering, κ/ι/ε maps, κ-iterate tables, and the kernel's
//! differential-verification suites.
//!
//! Exit codes: `0` success (and, for `verify`, no `FAIL` verdict), `1` when
//! a verification suite reports a `FAIL`, `2` on usage or evaluation errors.

use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use surreals::kappa::{class_membership, epsilon_map, iota, kappa_iter, kappa_recognize};
use surreals::normalform::Surreal;
use surreals::verify::{available_suites, run_all, run_suite, SuiteReport, VerifyOptions};
use surreals::Error;

use surreals_cli::eval::{evaluate, normal_form_rendering, sign_rendering, Evaluated};
use surreals_cli::expr;
use surreals_cli::table::kappa_table;

#[derive(Parser)]
#[command(
    name = "surreals",
    version,
    about = "Exact surreal-number computation: normal forms, sign sequences, \
             omega/epsilon/kappa maps, exp and log, and verification suites"
)]
struct Cli {
    /// Truncation and sampling order for the recursive exp/log/g/h evaluator.
    #[arg(long, global = true, default_value_t = 6)]
    trunc_order: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print every available rendering.
    Eval {
        /// Expression, e.g. "w^(w) + 2" or "cmp(kappa(-1), log(w))".
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the sign-sequence rendering of an expression.
    Sign {
        /// Numeric expression to render.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the normal-form rendering of an expression.
    Nf {
        /// Numeric expression to render.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// kappa(a), or its n-th log iterate (n < 0: exp iterate).
    Kappa {
        /// Index expression; must render as a sign sequence.
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Iterate count (default 0).
        #[arg(allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Apply the iota map to an index expression.
    Iota {
        /// Index expression; must render as a sign sequence.
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Apply the epsilon-number map to an index expression.
    Eps {
        /// Index expression; must render as a sign sequence.
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Decide whether x = log^n(kappa(a)) and report the index.
    Recognize {
        /// Numeric expression to inspect.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Report which exp-related class an expression falls in.
    Class {
        /// Numeric expression to classify.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run differential-verification suites (all of them when none named).
    Verify {
        /// Suite names to run; see --list.
        suites: Vec<String>,
        /// Generator-sampling and ladder bound for witness checks.
        #[arg(long, default_value_t = 4)]
        bound: u64,
        /// Truncation order for minimality probing.
        #[arg(long, default_value_t = 3)]
        probes: u64,
        /// Emit the report as JSON instead of text lines.
        #[arg(long)]
        json: bool,
        /// List the available suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print a grid of kappa(a, n) sign sequences.
    Table {
        /// Table kind; currently only "kappa".
        kind: String,
        /// Comma-separated index expressions, e.g. "-1,0,1".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Comma-separated iterate counts, e.g. "-1,0,1".
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> surreals::Result<ExitCode> {
    let order = cli.trunc_order;
    match cli.command {
        Command::Eval { expr: text } => {
            let e = expr::parse(&text)?;
            match evaluate(&e, order)? {
                Evaluated::Value(v) => print_value(&v),
                Evaluated::Comparison(ord) => println!(
                    "{}",
                    match ord {
                        Ordering::Less => "<",
                        Ordering::Equal => "=",
                        Ordering::Greater => ">",
                    }
                ),
                Evaluated::Class(c) => println!("{c}"),
                Evaluated::SignSequence(s) => println!("sign: {s}"),
                Evaluated::NormalForm(n) => println!("nf: {n}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sign { expr: text } => {
            let s = numeric(&text, order)?.to_signseq()?;
            println!("{s}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Nf { expr: text } => {
            let v = numeric(&text, order)?;
            match normal_form_rendering(&v) {
                Some(n) => {
                    println!("{n}");
                    Ok(ExitCode::SUCCESS)
                }
                None => Err(Error::UnsupportedRendering(format!(
                    "{v} has no normal-form rendering"
                ))),
            }
        }
        Command::Kappa { a, n } => {
            let idx = numeric(&a, order)?.to_signseq()?;
            print_value(&Surreal::Nf(kappa_iter(&idx, n.unwrap_or(0))));
            Ok(ExitCode::SUCCESS)
        }
        Command::Iota { a } => {
            let idx = numeric(&a, order)?.to_signseq()?;
            print_value(&Surreal::Seq(iota(&idx)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Eps { a } => {
            let idx = numeric(&a, order)?.to_signseq()?;
            print_value(&Surreal::Seq(epsilon_map(&idx)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Recognize { expr: text } => {
            let v = numeric(&text, order)?;
            match kappa_recognize(&v) {
                Some(k) => {
                    println!("index a: {}", k.a);
                    println!("iterate n: {}", k.n);
                }
                None => println!("not of the form log^n(kappa(a))"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Class { expr: text } => {
            let v = numeric(&text, order)?;
            println!("{}", class_membership(&v));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suites,
            bound,
            probes,
            json,
            list,
        } => {
            if list {
                for name in available_suites() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let opts = VerifyOptions {
                bound,
                probes,
                ..VerifyOptions::default()
            };
            let report = if suites.is_empty() {
                run_all(&opts)
            } else {
                let mut merged = SuiteReport::default();
                for name in &suites {
                    merged.merge(run_suite(name, &opts)?);
                }
                merged
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("suite report serializes")
                );
            } else {
                println!("{report}");
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Table { kind, a, n } => {
            if kind != "kappa" {
                return Err(Error::Domain(format!(
                    "unknown table kind `{kind}`; available kinds: kappa"
                )));
            }
            let mut a_values = Vec::new();
            for item in split_list(&a) {
                let seq = numeric(item, order)?.to_signseq()?;
                a_values.push((item.to_string(), seq));
            }
            let mut n_values = Vec::new();
            for item in split_list(&n) {
                let count: i64 = item.parse().map_err(|_| {
                    Error::Domain(format!("iterate counts must be integers, got `{item}`"))
                })?;
                n_values.push(count);
            }
            print!("{}", kappa_table(&a_values, &n_values));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parse and evaluate an expression that must denote a surreal value.
fn numeric(text: &str, order: u64) -> surreals::Result<Surreal> {
    let e = expr::parse(text)?;
    match evaluate(&e, order)? {
        Evaluated::Value(v) => Ok(v),
        _ => Err(Error::Domain(format!(
            "`{text}` is a rendering directive, not a numeric expression"
        ))),
    }
}

/// Print the renderings a value supports, one per line.
fn print_value(v: &Surreal) {
    let nf = normal_form_rendering(v);
    let sign = sign_rendering(v);
    if let Some(n) = &nf {
        println!("nf: {n}");
    }
    if let Some(s) = &sign {
        println!("sign: {s}");
    }
    if nf.is_none() && sign.is_none() {
        println!("value: {v}");
    }
}

/// Split a comma-separated list, trimming blanks and dropping empty items.
fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}
