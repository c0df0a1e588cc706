//! `detloci`: analyze degree data for families of determinantal schemes,
//! print resolution data, verify predictions against the Groebner oracle,
//! and sweep parameter ranges into CSV/JSONL files.
//!
//! Exit codes: 0 ok / all checks pass, 1 usage or input error, 2 empty
//! family, 3 verification failure.

mod sweep;
mod verify;

use clap::{Args, Parser, Subcommand};
use detloci::checker::analyze;
use detloci::resolution::en_betti_table;
use detloci::{CharFlag, DegreeSpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "detloci",
    version,
    about = "Dimension formulas and Groebner-basis verification for families of determinantal schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Ambient projective dimension
    #[arg(long)]
    n: u32,
    /// Row count of the defining matrix
    #[arg(long)]
    t: usize,
    /// Codimension (the matrix has t+c-1 columns)
    #[arg(long)]
    c: usize,
    /// Row degrees b_1..b_t, comma separated, weakly increasing
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<i64>,
    /// Column degrees a_0..a_(t+c-2), comma separated, weakly increasing
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<i64>,
}

impl SpecArgs {
    fn build(&self) -> Result<DegreeSpec, String> {
        DegreeSpec::new(self.n, self.t, self.c, self.b.clone(), self.a.clone())
            .map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the dimension formulas and certification rules on one spec
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        /// Field characteristic for the rules: 0 or a prime
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the resolution Betti table and the Hilbert polynomial
    Betti {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run Groebner-oracle checks against the predictions
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Seed for the generic specialization
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Prime field characteristic for the oracle
        #[arg(long, default_value_t = detloci::algebra::DEFAULT_PRIME)]
        field: u64,
        /// Comma-separated list: codim, hilbert, height, eq31, tangent
        #[arg(long, value_delimiter = ',', default_value = "codim,hilbert")]
        checks: Vec<String>,
    },
    /// Enumerate sorted degree vectors in a range and write one row per spec
    Sweep {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        deg_min: i64,
        #[arg(long, allow_hyphen_values = true)]
        deg_max: i64,
        /// Output file; `.jsonl` switches to JSON lines, anything else is CSV
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; the output does not depend on this
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit codes do not match the documented contract
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze {
            spec,
            characteristic,
            json,
        } => {
            let s = spec.build()?;
            let ch = parse_char(characteristic)?;
            let report = analyze(&s, ch);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                );
            } else {
                print!("{report}");
            }
            Ok(if report.nonempty { 0 } else { 2 })
        }
        Command::Betti { spec, json } => {
            let s = spec.build()?;
            if !s.is_nonempty() {
                eprintln!("empty family: the non-emptiness criterion fails");
                return Ok(2);
            }
            let table = en_betti_table(&s).map_err(|e| e.to_string())?;
            let poly = table.hilbert_polynomial();
            if json {
                let value = serde_json::json!({
                    "table": table,
                    "hilbert_polynomial": poly,
                    "rendered": poly.to_string(),
                    "degree_of_scheme": poly.scheme_degree().map(|d| d.to_string()),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?
                );
            } else {
                print!("{table}");
                println!("H(v) = {poly}");
                if let Some(d) = poly.scheme_degree() {
                    println!("degree of the cut-out scheme: {d}");
                }
            }
            Ok(0)
        }
        Command::Verify {
            spec,
            seed,
            field,
            checks,
        } => {
            let s = spec.build()?;
            if !s.is_nonempty() {
                eprintln!("empty family: nothing to verify");
                return Ok(2);
            }
            verify::run(&s, seed, field, &checks)
        }
        Command::Sweep {
            t,
            c,
            n,
            deg_min,
            deg_max,
            out,
            jobs,
        } => sweep::run(t, c, n, deg_min, deg_max, &out, jobs),
    }
}

fn parse_char(raw: u64) -> Result<CharFlag, String> {
    if raw == 0 {
        Ok(CharFlag::Zero)
    } else {
        CharFlag::prime(raw).map_err(|e| e.to_string())
    }
}
