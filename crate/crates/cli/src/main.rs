use std::path::PathBuf;
use std::process::ExitCode;

use amalgam_cli::build::{self, Env, Object};
use amalgam_cli::report::{self, Format};
use amalgam_cli::run::{self, Options, Record};
use amalgam_cli::{dsl, EXIT_INPUT};
use amalgam_core::checks::{CheckResult, Witness};
use amalgam_core::spectrum;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "amalgam", version, about = "Build finite rings from a spec file and run structural checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Resolution depth for jobs that do not set one.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Largest ring order enumerated element by element.
    #[arg(long, global = true, default_value_t = 65536)]
    max_order: u128,
    /// Leave per-check wall times out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every job in the file.
    Check { file: PathBuf },
    /// Run only the jobs with the given name.
    Verify {
        file: PathBuf,
        #[arg(long)]
        job: String,
    },
    /// Minimal free resolution of a declared module or ideal.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Nilradical, idempotents and maximal ideals of a declared ring.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        ring: String,
    },
    /// Print the file in canonical form with basis labels as comments.
    Fmt { file: PathBuf },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn spectrum_record(name: &str, obj: &Object, budget: u128) -> Result<CheckResult, String> {
    let r = obj.ring()?;
    let mut c = CheckResult::new("spectrum", "maximal ideals and idempotents");
    let s = |e: amalgam_core::Error| e.to_string();
    c.push("order", Witness::Text(r.order().to_string()));
    c.push("characteristic", Witness::Int(r.characteristic()));
    c.push("nilradical_generators", Witness::Vectors(spectrum::nilradical(r).generators(r)));
    c.push("idempotents", Witness::Vectors(spectrum::idempotents(r, budget).map_err(s)?));
    let max = spectrum::maximal_ideals(r, budget).map_err(s)?;
    c.push("maximal_ideal_count", Witness::Int(max.len() as u64));
    for (i, m) in max.iter().enumerate() {
        c.push(&format!("maximal_ideal_{i}"), Witness::Vectors(m.generators(r)));
    }
    c.push("local", Witness::Bool(max.len() == 1));
    if let Ok(l) = spectrum::LocalRing::with_budget(r, budget) {
        c.push("residue_field_order", Witness::Text(l.residue_field().order().to_string()));
    }
    if r.order().to_u128().is_some_and(|o| o <= budget) {
        c.push("unit_count", Witness::Int(spectrum::units(r, budget).map_err(s)?.len() as u64));
    }
    let _ = name;
    Ok(c)
}

fn single(label: &str, result: Result<CheckResult, String>, name: &str) -> Result<Vec<Record>, String> {
    let result = result.map_err(|e| format!("`{name}`: {e}"))?;
    Ok(vec![Record { label: label.to_string(), result, wall_ms: None }])
}

fn lookup<'a>(env: &'a Env, name: &str) -> Result<&'a Object, String> {
    env.get(name).map_err(|e| format!("`{name}`: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.command {
        Command::Check { file } | Command::Verify { file, .. } | Command::Resolve { file, .. } | Command::Spectrum { file, .. } | Command::Fmt { file } => file,
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let spec = match dsl::parse(&text) {
        Ok(s) => s,
        Err(d) => return input_error(format!("{}: {d}", file.display())),
    };
    let env = build::build(&spec);
    let opts = Options { seed: cli.seed, depth: cli.depth, max_order: cli.max_order, timing: !cli.no_timing };

    let records = match &cli.command {
        Command::Fmt { .. } => {
            print!("{}", dsl::serialize_annotated(&spec, |n| env.basis_comment(n)));
            return ExitCode::SUCCESS;
        }
        Command::Check { .. } => Ok(run::run(&spec, &env, &opts, None)),
        Command::Verify { job, .. } => {
            if dsl::job(job).is_none() {
                return input_error(format!("unknown job `{job}`"));
            }
            Ok(run::run(&spec, &env, &opts, Some(job)))
        }
        Command::Resolve { module, .. } => {
            lookup(&env, module).and_then(|o| single(module, run::resolve_check(o, opts.depth), module))
        }
        Command::Spectrum { ring, .. } => lookup(&env, ring).and_then(|o| single(ring, spectrum_record(ring, o, opts.max_order), ring)),
    };
    let records = match records {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let rep = report::assemble(&text, cli.seed, &records);
    match cli.format {
        Format::Json => print!("{}", report::to_json(&rep)),
        Format::Text => print!("{}", report::to_text(&rep, &records)),
    }
    ExitCode::from(amalgam_cli::exit_code(&records) as u8)
}
