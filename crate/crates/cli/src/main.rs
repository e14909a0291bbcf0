use clap::error::ErrorKind;
use clap::Parser;
use filtdef_cli::{exit_code, run, Command, Format, JobSpec, Range};
use std::path::PathBuf;
use std::process::ExitCode;

/// Tangent cones, blowups, cyclic homology and K-theory fiber
/// bookkeeping for k[x]/I over Q.
///
/// Exit status: 0 ok, 1 parse or internal error, 2 hypothesis failure,
/// 3 a window sequence did not stabilize.
#[derive(Parser, Debug)]
#[command(name = "filtdef", version)]
struct Cli {
    /// Operation to run; may come from --spec instead.
    #[arg(value_enum)]
    command: Option<Command>,
    /// Comma-separated variable names.
    #[arg(long)]
    vars: Option<String>,
    /// A generator of the ideal; repeat for several.
    #[arg(long, allow_hyphen_values = true)]
    ideal: Vec<String>,
    /// Comma-separated generators of the blowup center (default: the origin).
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Hodge index or range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    i: Option<Range>,
    /// Degree or range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<Range>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read the job from a file (one directive per line, `#` comments);
    /// flags given on the command line override it.
    #[arg(long)]
    spec: Option<PathBuf>,
}

fn build(cli: Cli) -> filtdef::Result<JobSpec> {
    let mut spec = match &cli.spec {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| filtdef::Error::InvalidInput(format!("{}: {e}", p.display())))?;
            JobSpec::parse(&text)?
        }
        None => {
            let c = cli.command.ok_or_else(|| filtdef::Error::Parse { pos: 0, msg: "no command given".into() })?;
            JobSpec::new(c)
        }
    };
    if let Some(c) = cli.command {
        spec.command = c;
    }
    if let Some(v) = &cli.vars {
        spec.set("vars", v)?;
    }
    if !cli.ideal.is_empty() {
        spec.ideal = cli.ideal;
    }
    if let Some(c) = &cli.center {
        spec.set("center", c)?;
    }
    spec.i = cli.i.or(spec.i);
    spec.n = cli.n.or(spec.n);
    spec.degree_bound = cli.degree_bound.or(spec.degree_bound);
    spec.truncation = cli.truncation.or(spec.truncation);
    spec.format = cli.format.unwrap_or(spec.format);
    spec.out = cli.out.or(spec.out);
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    let spec = match build(cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let outcome = run(&spec);
    let text = outcome.report.render(spec.format);
    match &spec.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if outcome.code != 0 {
        if let Some(line) = text.lines().find(|l| l.starts_with("error")) {
            eprintln!("{line}");
        }
    }
    ExitCode::from(outcome.code as u8)
}
