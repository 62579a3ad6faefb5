use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use exact_linalg::scalar::{format, int};
use exact_linalg::{KernelSolver, Scalar};
use exceptional_cli::calibration::{self, CalibrationFile, Target};
use exceptional_cli::dump::{self, Format, Structure};
use exceptional_cli::{run_suite, CliError, RunOptions, Suite};
use exceptional_core::classical_demos::{self as demos, BinaryQuadraticForm};
use exceptional_core::weyl_orbits::{self as weyl, RootSystemData, RootType};
use rand::SeedableRng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "exceptional", version, about = "Exact verification of octonion, Albert and Brown algebra structure")]
struct Cli {
    /// Seed for random instances and prime selection.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Multi-modular prime budget.
    #[arg(long, global = true, default_value_t = 4)]
    primes: usize,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record elapsed_ms for each check (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    /// Calibration file read by Brown computations and written by `calibrate`.
    #[arg(long, global = true, default_value = "calibration.json")]
    calibration: PathBuf,
    /// No progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite: octonion, albert, similitudes, brown, weyl, demos or all.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Run a calibration search and record it: octonion-signs, moufang-slots, brown-fts or all.
    Calibrate {
        #[arg(long)]
        target: String,
    },
    /// Serialize a structure: octonion-table, albert-tensor, brown-t-tensor, lie-basis:<name>.
    Dump {
        structure: String,
        /// json or csv
        format: String,
        /// Output file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight orbit and parabolic double cosets (Bourbaki node numbering).
    Weyl {
        #[arg(long = "type")]
        root_type: String,
        #[arg(long)]
        node: usize,
        /// Count orbits on pairs.
        #[arg(long)]
        pairs: bool,
    },
    /// Classical examples: `--torus p=3 [diag=1,2,4]`, `--quadric random=50 seed=N`.
    Demos {
        #[arg(long, num_args = 1..)]
        torus: Option<Vec<String>>,
        #[arg(long, num_args = 1..)]
        quadric: Option<Vec<String>>,
    },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn write_json(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// `key=value` arguments.
fn key_values(args: &[String]) -> Result<Vec<(&str, &str)>, CliError> {
    args.iter().map(|a| a.split_once('=').ok_or_else(|| usage(format!("expected key=value, got {a:?}")))).collect()
}

fn lookup<T: std::str::FromStr>(kv: &[(&str, &str)], key: &str) -> Result<Option<T>, CliError> {
    kv.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.parse().map_err(|_| usage(format!("bad value for {key}: {v:?}"))))
        .transpose()
}

fn torus_demo(args: &[String]) -> Result<(serde_json::Value, bool), CliError> {
    let kv = key_values(args)?;
    let p: usize = lookup(&kv, "p")?.ok_or_else(|| usage("--torus needs p=<prime>"))?;
    let diagonal: Vec<Scalar> = match lookup::<String>(&kv, "diag")? {
        Some(d) => d
            .split(',')
            .map(|x| exact_linalg::scalar::parse(x).map_err(|e| usage(e.to_string())))
            .collect::<Result<_, _>>()?,
        None => (0..p as u32).map(|k| int(1 << k)).collect(),
    };
    let lines = demos::torus_fixed_parabolics(p, &diagonal).map_err(|e| usage(e.to_string()))?;
    let ok = lines.len() == p;
    let out = json!({
        "p": p,
        "diagonal": diagonal.iter().map(format).collect::<Vec<_>>(),
        "fixed_lines": lines.iter().map(|l| l.iter().map(format).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "count": lines.len(),
    });
    Ok((out, ok))
}

fn quadric_demo(args: &[String], default_seed: u64) -> Result<(serde_json::Value, bool), CliError> {
    let kv = key_values(args)?;
    let n: usize = lookup(&kv, "random")?.unwrap_or(50);
    let seed: u64 = lookup(&kv, "seed")?.unwrap_or(default_seed);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut forms = Vec::new();
    let mut ok = true;
    for _ in 0..n {
        let q = BinaryQuadraticForm::random_isotropic(&mut rng, 9);
        let iso = demos::isotropic_lines(&q).map_err(|e| CliError::Computation(e.to_string()))?;
        let unique = demos::hyperbolic_basis_uniqueness_check(&q) == Ok(true);
        ok &= iso.lines.len() == 2 && unique;
        forms.push(json!({ "form": q, "isotropic": iso, "unique_hyperbolic_basis": unique }));
    }
    Ok((json!({ "random": n, "seed": seed, "all_pass": ok, "forms": forms }), ok))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| usage(format!("--threads: {e}")))?;
    }
    let solver =
        KernelSolver { prime_budget: cli.primes, seed: cli.seed, progress: !cli.quiet, ..KernelSolver::default() };
    let json_path = cli.json.as_deref();
    match &cli.command {
        Command::Verify { suite } => {
            let suite = Suite::parse(suite).ok_or_else(|| usage(format!("unknown suite {suite:?}")))?;
            let cal = CalibrationFile::load(&cli.calibration)?;
            let opts = RunOptions { seed: cli.seed, solver, timings: cli.timings };
            let report = run_suite(suite, &opts, cal.as_ref())?;
            let text = report.to_json();
            write_json(json_path, &text)?;
            print!("{text}");
            eprint!("{}", report.summary());
            Ok(report.passed())
        }
        Command::Calibrate { target } => {
            let target =
                Target::parse(target).ok_or_else(|| usage(format!("unknown calibration target {target:?}")))?;
            let existing = CalibrationFile::load(&cli.calibration).unwrap_or(None);
            let file = calibration::calibrate(target, &solver, existing)?;
            file.save(&cli.calibration)?;
            let text = file.to_json();
            write_json(json_path, &text)?;
            print!("{text}");
            Ok(true)
        }
        Command::Dump { structure, format, out } => {
            let s = Structure::parse(structure).ok_or_else(|| usage(format!("unknown structure {structure:?}")))?;
            let f =
                Format::parse(format).ok_or_else(|| usage(format!("unknown format {format:?}; use json or csv")))?;
            let cal = if s.needs_calibration() { CalibrationFile::load(&cli.calibration)? } else { None };
            let text = dump::dump(&s, f, &solver, cal.as_ref())?;
            match out {
                Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Weyl { root_type, node, pairs } => {
            let t = RootType::parse(root_type)
                .ok_or_else(|| usage(format!("unknown root system {root_type:?}; use An, Dn, E6 or E7")))?;
            let system = RootSystemData::new(t);
            let orbit = weyl::weight_orbit(&system, *node).map_err(|e| usage(e.to_string()))?;
            let mut out = json!({
                "type": t.to_string(),
                "node": node,
                "numbering": "Bourbaki",
                "parabolic_weyl_group": format!("generated by all simple reflections except s{node}"),
                "orbit_size": orbit.len(),
            });
            if *pairs {
                let p = weyl::parabolic_pair_orbits(&system, *node).map_err(|e| usage(e.to_string()))?;
                out["double_cosets"] = json!(p.double_cosets);
                out["partition"] = json!(p.partition);
            }
            let text = pretty(&out);
            write_json(json_path, &text)?;
            print!("{text}");
            Ok(true)
        }
        Command::Demos { torus, quadric } => {
            if torus.is_none() && quadric.is_none() {
                return Err(usage("demos needs --torus and/or --quadric"));
            }
            let mut out = serde_json::Map::new();
            let mut ok = true;
            if let Some(args) = torus {
                let (v, pass) = torus_demo(args)?;
                out.insert("torus".into(), v);
                ok &= pass;
            }
            if let Some(args) = quadric {
                let (v, pass) = quadric_demo(args, cli.seed)?;
                out.insert("quadric".into(), v);
                ok &= pass;
            }
            let text = pretty(&serde_json::Value::Object(out));
            write_json(json_path, &text)?;
            print!("{text}");
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
