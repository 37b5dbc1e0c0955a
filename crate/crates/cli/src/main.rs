use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use inscriber_cli::args::{Cli, Command, Generate};
use inscriber_cli::commands::{self, RunConfig};
use inscriber_cli::formats::{fvectors_csv, read_input, to_json, write_file, InputFile};
use inscriber_cli::{export, CliError, Result, Status};

fn tree_file(path: &std::path::Path) -> Result<inscriber::trees::DualTree> {
    match read_input(path)? {
        InputFile::Tree(t) => Ok(t),
        other => Err(CliError::Input(format!("expected a tree file, got a {}", other.kind()))),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Status> {
    let cfg = RunConfig::new(cli.run.seed, &cli.run.scale, cli.run.halving_cap)?;
    match cli.command {
        Command::Decide { tree, json } => {
            let r = commands::decide(&tree_file(&tree)?, json);
            out.write_all(r.text.as_bytes())?;
            Ok(r.status)
        }
        Command::Build(a) => {
            let input = a.input.as_deref().map(read_input).transpose()?;
            let source = commands::build_source(input, a.root, a.path, a.d)?;
            let built = commands::build(&source, &cfg)?;
            for (name, contents) in built.files() {
                let path = a.out.join(name);
                write_file(&path, &contents)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            let p = &built.polytope;
            writeln!(out, "verified: {} vertices, {} facets, d = {}", p.vertices.len(), p.facets.len(), p.d)?;
            Ok(Status::Affirmative)
        }
        Command::Verify { file, mode, json } => {
            let mode = mode.as_deref().map(str::parse).transpose()?;
            let r = commands::verify(&read_input(&file)?, mode, json)?;
            out.write_all(r.text.as_bytes())?;
            Ok(r.status)
        }
        Command::Generate(Generate::Cyclic { method, d, n, params, out: path }) => {
            let (p, ps) = commands::cyclic(method, d, n, params.as_deref())?;
            write_file(&path, &to_json(&p))?;
            out.write_all(commands::cyclic_summary(method, &p, &ps).as_bytes())?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(Status::Affirmative)
        }
        Command::Generate(Generate::Fvectors { f0_max, out: path }) => {
            let rows = commands::fvectors(f0_max)?;
            write_file(&path, &fvectors_csv(&rows))?;
            writeln!(out, "{} f-vectors with f0 <= {f0_max}; wrote {}", rows.len(), path.display())?;
            Ok(Status::Affirmative)
        }
        Command::Certify { tree, d, trials, out: path } => {
            let r = commands::certify(&tree_file(&tree)?, d, trials, cfg.seed)?;
            if let Some(path) = path {
                write_file(&path, &to_json(&r))?;
                writeln!(out, "wrote {}", path.display())?;
            }
            out.write_all(commands::certify_summary(&r).as_bytes())?;
            Ok(Status::Affirmative)
        }
        Command::Export { polytope, format: _, digits, out: path } => {
            let InputFile::Polytope(p) = read_input(&polytope)? else {
                return Err(CliError::Input("expected a polytope file".into()));
            };
            let text = export::to_off(&p, digits)?;
            match path {
                Some(path) => write_file(&path, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(Status::Affirmative)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(s) => ExitCode::from(s.exit_code()),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
