use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2hahn::config::{nonnegative, AnchorPolicy, RunConfig};
use sl2hahn::report::Format;
use sl2hahn::suite::{run_verify, suites};
use sl2hahn::tables::{
    decompose_rows, decompose_to_csv, decompose_to_json, decompose_to_text, table_rows, table_to_csv, table_to_json,
    table_to_text,
};
use sl2hahn::Error;

#[derive(Parser)]
#[command(
    name = "sl2hahn",
    version,
    about = "Exact checks for sl2 tensor products, the Hahn algebra and Johnson graph Terwilliger algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (sl2, hahn, decomp, johnson, all).
    Verify { suite: String },
    /// List the weight spaces of L_m (x) L_n with their (a, b, d) parameters.
    Decompose {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "l", allow_negative_numbers = true)]
        l: Option<i64>,
    },
    /// Tabulate dim T(x0) for every D in the range and every k.
    Table {
        #[arg(allow_negative_numbers = true)]
        d_min: i64,
        #[arg(allow_negative_numbers = true)]
        d_max: i64,
    },
    /// List the registered suites and dimension methods.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorArg {
    Default,
    Random,
    Both,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the random anchors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest m for L_m (x) L_n [default: 4].
    #[arg(long, global = true, allow_negative_numbers = true)]
    m_max: Option<i64>,
    /// Largest n for L_m (x) L_n [default: 4].
    #[arg(long, global = true, allow_negative_numbers = true)]
    n_max: Option<i64>,
    /// Largest D for the lattice and Johnson checks [default: 8].
    #[arg(long, global = true, allow_negative_numbers = true)]
    d_max: Option<i64>,
    /// Only this k in the Johnson checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Largest C(D,k) for generated-algebra computations [default: 130].
    #[arg(long, global = true, allow_negative_numbers = true)]
    cap: Option<i64>,
    /// Largest D for building the full subset lattice [default: 12].
    #[arg(long, global = true, allow_negative_numbers = true)]
    lattice_cap: Option<i64>,
    /// Anchors for the generated-algebra checks [default: both].
    #[arg(long, global = true, value_enum)]
    anchors: Option<AnchorArg>,
    /// Record wall-clock milliseconds per check.
    #[arg(long, global = true)]
    timing: bool,
}

impl Common {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }

    fn config(&self) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig { seed: self.seed, timing: self.timing, ..RunConfig::default() };
        if let Some(v) = self.m_max {
            cfg.m_max = nonnegative("--m-max", v)?;
        }
        if let Some(v) = self.n_max {
            cfg.n_max = nonnegative("--n-max", v)?;
        }
        if let Some(v) = self.d_max {
            cfg.d_max = nonnegative("--d-max", v)?;
        }
        if let Some(v) = self.k {
            cfg.k = Some(nonnegative("--k", v)?);
        }
        if let Some(v) = self.cap {
            cfg.cap = nonnegative("--cap", v)?;
        }
        if let Some(v) = self.lattice_cap {
            cfg.lattice_cap = nonnegative("--lattice-cap", v)?;
        }
        if let Some(a) = self.anchors {
            cfg.anchors = match a {
                AnchorArg::Default => AnchorPolicy::Default,
                AnchorArg::Random => AnchorPolicy::Random,
                AnchorArg::Both => AnchorPolicy::Both,
            };
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Outcome of a command: whether every check passed.
fn run(cli: &Cli) -> Result<bool, Error> {
    let common = &cli.common;
    let cfg = common.config()?;
    match &cli.command {
        Command::Verify { suite } => {
            let report = run_verify(suite, &cfg)?;
            common.emit(&report.render(common.format())?)?;
            if common.out.is_some() {
                eprintln!(
                    "{} checks, {} passed, {} failed",
                    report.summary.total, report.summary.passed, report.summary.failed
                );
            }
            Ok(report.all_pass())
        }
        Command::Decompose { m, n, l } => {
            let m = nonnegative("m", *m)?;
            let n = nonnegative("n", *n)?;
            let l = l.map(|l| nonnegative("--l", l)).transpose()?;
            let rows = decompose_rows(m, n, l)?;
            let text = match common.format() {
                Format::Text => decompose_to_text(&rows),
                Format::Json => decompose_to_json(&rows)?,
                Format::Csv => decompose_to_csv(&rows)?,
            };
            common.emit(&text)?;
            Ok(rows.iter().all(|r| r.verified))
        }
        Command::Table { d_min, d_max } => {
            let d_min = nonnegative("D_min", *d_min)?;
            let d_max = nonnegative("D_max", *d_max)?;
            let rows = table_rows(d_min, d_max, &cfg)?;
            let text = match common.format() {
                Format::Text => table_to_text(&rows),
                Format::Json => table_to_json(&rows)?,
                Format::Csv => table_to_csv(&rows)?,
            };
            common.emit(&text)?;
            Ok(rows.iter().all(|r| r.agree))
        }
        Command::List => {
            let mut text = String::from("suites:\n");
            for (name, s) in suites().iter() {
                text.push_str(&format!("  {name:<10} {}\n", s.describe()));
            }
            text.push_str("dimension methods:\n");
            for (name, m) in sl2hahn::strategy::dimension_methods().iter() {
                text.push_str(&format!("  {name:<10} {}\n", m.describe()));
            }
            common.emit(&text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
