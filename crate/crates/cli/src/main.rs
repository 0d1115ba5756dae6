//! `dalg`: command-line front end for the closure operations and the ansatz
//! search.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dalg::ansatz::{ansatz_search, AnsatzConfig};
use dalg::arith::DepId;
use dalg::closure::{
    arithmetic_dalg, compose_dalg, ddfinite_to_dalg, diff_dalg, inv_dalg, unary_dalg, ClosureConfig,
};
use dalg::frontend::{parse_ade, parse_poly, parse_rational_spec, read_equations, render, Format};
use dalg::groebner::GbConfig;
use dalg::{Ade, Error, RatFunc, VarTable};

const EXIT_PARSE: u8 = 2;
const EXIT_FAILED: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "dalg",
    version,
    about = "Algebraic differential equations for closure operations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// z = R(x, y) for one function y.
    Unary(Common),
    /// z = R(x, y1, ..., yN) for two or more functions.
    Arith(Common),
    /// z = f(g(x)); the first equation is f's, the second g's.
    Compose(Common),
    /// z = y^(j).
    Diff(Common),
    /// Functional inverse of y.
    Inverse(Common),
    /// Linear equation whose coefficients satisfy ADEs; the first equation
    /// is the linear one.
    Ddfinite(Common),
    /// Degree-bounded ansatz search for z = R(x, y1, ..., yN).
    Ansatz(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Unary(c)
            | Command::Arith(c)
            | Command::Compose(c)
            | Command::Diff(c)
            | Command::Inverse(c)
            | Command::Ddfinite(c)
            | Command::Ansatz(c) => c,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Input equation, e.g. 'diff(y(x),x)^2=4*y(x)^3-g2*y(x)-g3'. Repeatable.
    #[arg(long = "ade", value_name = "EQ")]
    ades: Vec<String>,
    /// File with one equation per line; `#` starts a comment.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output definition such as 'z=y/(x+y)'.
    #[arg(long)]
    spec: Option<String>,
    /// Derivative order for `diff`.
    #[arg(long, default_value_t = 1)]
    j: u32,
    /// Degree bound of the ansatz.
    #[arg(long = "degree-de", default_value_t = 2)]
    degree_de: u32,
    /// Highest derivative allowed in the ansatz.
    #[arg(long = "order-cap")]
    order_cap: Option<u32>,
    /// Name of the output function where no spec gives one.
    #[arg(long, default_value = "z")]
    name: String,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Abort when a basis element exceeds this total degree.
    #[arg(long = "max-degree")]
    max_degree: Option<u32>,
    /// Abort after this many basis elements.
    #[arg(long = "max-generators")]
    max_generators: Option<usize>,
}

/// Failures carrying their exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::Argument(_) | Error::DivisionByZero(_) => EXIT_PARSE,
            Error::EliminationFailed(_) | Error::NotFound(_) | Error::Degenerate(_) => EXIT_FAILED,
            Error::Resource(_) => EXIT_RESOURCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl Common {
    fn equations(&self) -> Result<Vec<String>, Failure> {
        let mut eqs = Vec::new();
        if let Some(path) = &self.input {
            let text = fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            eqs.extend(read_equations(&text));
        }
        eqs.extend(self.ades.iter().cloned());
        if eqs.is_empty() {
            return Err(usage("no equations given; use --ade or --in"));
        }
        Ok(eqs)
    }

    fn count(
        &self,
        eqs: &[String],
        want: std::ops::RangeInclusive<usize>,
        what: &str,
    ) -> Result<(), Failure> {
        if want.contains(&eqs.len()) {
            Ok(())
        } else {
            Err(usage(format!("{what}, got {}", eqs.len())))
        }
    }

    fn spec(&self, table: &mut VarTable) -> Result<(DepId, RatFunc), Failure> {
        let text = self.spec.as_deref().ok_or_else(|| usage("missing --spec"))?;
        let (name, r) = parse_rational_spec(text, table)?;
        Ok((table.dep(&name)?, r))
    }

    fn config(&self) -> ClosureConfig {
        let mut gb = GbConfig::default();
        if let Some(d) = self.max_degree {
            gb.max_degree = d;
        }
        if let Some(g) = self.max_generators {
            gb.max_generators = g;
        }
        ClosureConfig {
            gb,
            ..ClosureConfig::default()
        }
    }
}

fn parse_all(eqs: &[String], table: &mut VarTable) -> Result<Vec<Ade>, Failure> {
    Ok(eqs
        .iter()
        .map(|e| parse_ade(e, table))
        .collect::<dalg::Result<Vec<_>>>()?)
}

fn run(cmd: &Command) -> Result<(Ade, VarTable, &Common), Failure> {
    let mut t = VarTable::new("x");
    let ade = match cmd {
        Command::Unary(c) => {
            let eqs = c.equations()?;
            c.count(&eqs, 1..=1, "unary takes one equation")?;
            let ades = parse_all(&eqs, &mut t)?;
            let (z, r) = c.spec(&mut t)?;
            unary_dalg(&ades[0], &r, z, &c.config())?.ade
        }
        Command::Arith(c) => {
            let eqs = c.equations()?;
            c.count(&eqs, 2..=usize::MAX, "arith takes at least two equations")?;
            let ades = parse_all(&eqs, &mut t)?;
            let (z, r) = c.spec(&mut t)?;
            arithmetic_dalg(&ades, &r, z, &c.config())?.ade
        }
        Command::Compose(c) => {
            let eqs = c.equations()?;
            c.count(&eqs, 2..=2, "compose takes the outer and the inner equation")?;
            let ades = parse_all(&eqs, &mut t)?;
            let z = t.dep(&c.name)?;
            compose_dalg(&ades[0], &ades[1], z, &c.config())?.ade
        }
        Command::Diff(c) => {
            let eqs = c.equations()?;
            c.count(&eqs, 1..=1, "diff takes one equation")?;
            let ades = parse_all(&eqs, &mut t)?;
            let z = t.dep(&c.name)?;
            diff_dalg(&ades[0], c.j, z, &c.config())?.ade
        }
        Command::Inverse(c) => {
            let eqs = c.equations()?;
            c.count(&eqs, 1..=1, "inverse takes one equation")?;
            let ades = parse_all(&eqs, &mut t)?;
            let z = t.dep(&c.name)?;
            inv_dalg(&ades[0], z)?.ade
        }
        Command::Ddfinite(c) => {
            let eqs = c.equations()?;
            c.count(
                &eqs,
                2..=usize::MAX,
                "ddfinite takes the linear equation and one per coefficient",
            )?;
            let main = parse_poly(&eqs[0], &mut t)?;
            let coeffs = parse_all(&eqs[1..], &mut t)?;
            let mut free = main
                .vars()
                .into_iter()
                .filter_map(|v| v.dep())
                .filter(|d| coeffs.iter().all(|a| a.dep != *d))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter();
            let (Some(y), None) = (free.next(), free.next()) else {
                return Err(Error::Argument(
                    "the linear equation must have exactly one function without an equation".into(),
                )
                .into());
            };
            ddfinite_to_dalg(&main, y, &coeffs, &c.config())?.ade
        }
        Command::Ansatz(c) => {
            let eqs = c.equations()?;
            let ades = parse_all(&eqs, &mut t)?;
            let (z, r) = c.spec(&mut t)?;
            let cfg = AnsatzConfig {
                degree: c.degree_de,
                order_cap: c.order_cap,
            };
            ansatz_search(&ades, &r, z, &cfg)?.ade
        }
    };
    Ok((ade, t, cmd.common()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let outcome = run(&cli.command).and_then(|(ade, table, c)| {
        let format = match c.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        };
        let mut text = render(&ade, &table, format);
        text.push('\n');
        match &c.out {
            Some(path) => fs::write(path, text).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("cannot write {}: {e}", path.display()),
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dalg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
