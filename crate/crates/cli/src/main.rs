mod cube_cmd;
mod group_cmd;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Output;

#[derive(Parser)]
#[command(
    name = "quasiline",
    version,
    about = "Finite-scale invariants of Houghton Schreier graphs and cube complexes"
)]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 2 when a verdict is inconclusive or unverified.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<std::path::PathBuf>,
    /// Worker threads for the parallel parts.
    #[arg(long, global = true, env = "QUASILINE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the ball B(R) of the Schreier graph as DOT or JSON.
    Schreier(group_cmd::SchreierArgs),
    /// Ball sizes |B(r)| and the linear growth check.
    Growth(group_cmd::GrowthArgs),
    /// Deep components of B(R) - B(r).
    Ends(group_cmd::EndsArgs),
    /// Largest family of disjoint deep mu-coarsely connected sets.
    Narrowness(group_cmd::NarrownessArgs),
    /// H-orbits on the ball, i.e. double cosets H\G/H.
    DoubleCosets(group_cmd::DoubleCosetArgs),
    /// Growth of the H-orbit of x0.g inside B(r).
    CommProbe(group_cmd::ProbeArgs),
    /// Distance from H to gH.
    CosetDistance(group_cmd::CosetDistanceArgs),
    /// Evaluate a word or parse an element of G_n.
    Element(group_cmd::ElementArgs),
    /// Median graphs, hyperplanes, poc-set duals and windowed shifts.
    #[command(subcommand)]
    Cube(cube_cmd::CubeCommand),
}

/// Result of a command: the rendered report and whether it was conclusive.
pub struct Outcome {
    pub text: String,
    pub conclusive: bool,
}

impl Outcome {
    pub fn done(text: String) -> Self {
        Self {
            text,
            conclusive: true,
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Schreier(a) => group_cmd::schreier(a, &out),
        Command::Growth(a) => group_cmd::growth(a, &out),
        Command::Ends(a) => group_cmd::ends(a, &out),
        Command::Narrowness(a) => group_cmd::narrowness(a, &out),
        Command::DoubleCosets(a) => group_cmd::double_cosets(a, &out),
        Command::CommProbe(a) => group_cmd::comm_probe(a, &out),
        Command::CosetDistance(a) => group_cmd::coset_distance(a, &out),
        Command::Element(a) => group_cmd::element(a, &out),
        Command::Cube(c) => cube_cmd::run(c, &out),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on bad arguments, which is reserved for --strict
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: thread count must be at least 1");
            return ExitCode::from(1);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if cli.strict && !outcome.conclusive {
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
