use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use wonderfan_cli::config::JobArgs;
use wonderfan_cli::envelope::Envelope;
use wonderfan_cli::error::CliError;
use wonderfan_cli::{commands, pretty};

#[derive(Parser)]
#[command(
    name = "wonderfan",
    version,
    about = "Root data, wonderful embeddings and their fans"
)]
struct Cli {
    /// Write the result to this file instead of stdout. For `plot` this is the SVG path.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, coweights, center and chamber of a root datum.
    Rootdata(JobArgs),
    /// The fundamental alcove and its walls.
    Alcove(JobArgs),
    /// Levi types and center quotients of the maximal parahorics.
    Parahoric(JobArgs),
    /// The Weyl-chamber stacky fan, its Z(beta) and Picard presentation.
    Stackyfan(JobArgs),
    /// The cone C_Delta and its dual, with a certificate.
    Cdelta(JobArgs),
    /// The poset of orbits, stabilizers and Birkhoff strata.
    Orbits(JobArgs),
    /// Voronoi and Delaunay cells of a positive definite form.
    Voronoi(JobArgs),
    /// The loop-torus fan over the Voronoi cells.
    Ltfan(JobArgs),
    /// Limits of one-parameter subgroups and minimizer sets.
    Limit(JobArgs),
    /// Weight multiplicities of an irreducible representation.
    Freudenthal(JobArgs),
    /// Render a fan, alcove or Voronoi diagram as SVG.
    Plot(JobArgs),
}

impl Command {
    fn parts(&self) -> (&'static str, &JobArgs) {
        match self {
            Command::Rootdata(a) => ("rootdata", a),
            Command::Alcove(a) => ("alcove", a),
            Command::Parahoric(a) => ("parahoric", a),
            Command::Stackyfan(a) => ("stackyfan", a),
            Command::Cdelta(a) => ("cdelta", a),
            Command::Orbits(a) => ("orbits", a),
            Command::Voronoi(a) => ("voronoi", a),
            Command::Ltfan(a) => ("ltfan", a),
            Command::Limit(a) => ("limit", a),
            Command::Freudenthal(a) => ("freudenthal", a),
            Command::Plot(a) => ("plot", a),
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let (name, args) = cli.command.parts();
    let input = args.resolve()?;
    let out = commands::run(name, &input)?;
    let mut result = out.result;
    let mut output = cli.output.as_ref();
    if name == "plot" {
        if let (Some(path), Value::Object(map)) = (output, &mut result) {
            let svg = map.remove("svg").unwrap_or_default();
            write_out(Some(path), svg.as_str().unwrap_or_default())?;
            map.insert("path".into(), Value::String(path.display().to_string()));
            output = None;
        }
    }
    let env = Envelope::new(name, input, result, out.provenance);
    let text = if cli.pretty {
        pretty::render(&env)
    } else {
        let mut s = serde_json::to_string_pretty(&env)?;
        s.push('\n');
        s
    };
    write_out(output, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.parts().0;
    panic::set_hook(Box::new(|_| {}));
    let res = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(CliError::Internal(msg))
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = e.payload(name);
            eprintln!(
                "{}",
                serde_json::to_string(&payload).unwrap_or_else(|_| e.to_string())
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
