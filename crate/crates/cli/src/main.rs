mod instance;
mod output;
mod runs;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlconj::fuzz::fuzz_reports;
use serde_json::{json, Map, Value};

use instance::{Domain, Instance};
use output::{render, Format, Summary};
use runs::{Run, RunOutput};

const EXIT_INVALID: u8 = 2;
const EXIT_LAW_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "nlconj", version, about = "Exact nonlinear Fenchel conjugates on finite carriers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Instance file, or a directory whose *.json files are read in name order.
    #[arg(long, global = true)]
    instance: Option<PathBuf>,
    /// Directory for report and plot files; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for `check --fuzz`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Conjugate values and attainers, cross-checked across all formulations.
    Conjugate,
    /// Regularization of f with respect to a test family.
    Regularize,
    /// Biconjugate of f with respect to a real-valued family.
    Biconjugate,
    /// Sup-closure membership.
    Supcl,
    /// Infimal convolution on group windows.
    Infconv,
    /// Exp-map conjugates, certificates, and plot data on grids.
    Geometry,
    /// Every run and law suite in the instance; exit 3 on any failure.
    Check {
        /// Also sweep this many random instances drawn from `--seed`.
        #[arg(long)]
        fuzz: Option<usize>,
    },
}

impl Command {
    fn ops(self) -> Option<&'static [&'static str]> {
        match self {
            Command::Conjugate => Some(&["conjugate"]),
            Command::Regularize => Some(&["regularize"]),
            Command::Biconjugate => Some(&["biconjugate"]),
            Command::Supcl => Some(&["supcl"]),
            Command::Infconv => Some(&["infconv"]),
            Command::Geometry => Some(&["geometry", "legendre"]),
            Command::Check { .. } => None,
        }
    }
}

fn instance_files(path: &Path) -> Result<Vec<PathBuf>, String> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

fn run_obj(op: &str, args: Value) -> Map<String, Value> {
    let mut m = args.as_object().cloned().unwrap_or_default();
    m.insert("op".into(), Value::String(op.into()));
    m
}

/// Runs implied by a subcommand when the instance declares none of its operations.
fn default_runs(inst: &Instance, ops: &[&str]) -> Vec<Map<String, Value>> {
    let mut out = Vec::new();
    let fns = &inst.functions;
    for op in ops {
        match *op {
            "conjugate" => {
                for (f, fd) in fns {
                    for (phi, pd) in fns {
                        if fd.on == pd.on {
                            out.push(run_obj(op, json!({"f": f, "phi": phi})));
                        }
                    }
                }
            }
            "regularize" | "supcl" | "biconjugate" => {
                for (f, fd) in fns {
                    for (name, fam) in &inst.families {
                        let same = fam.carrier() == fd.f.carrier();
                        if same && (*op != "biconjugate" || fam.all_real_valued()) {
                            out.push(run_obj(op, json!({"f": f, "family": name})));
                        }
                    }
                }
            }
            "infconv" => {
                for (f, fd) in fns.iter().filter(|(_, d)| d.domain == Domain::Group) {
                    for (g, gd) in fns.iter().filter(|(_, d)| d.domain == Domain::Group) {
                        if fd.on == gd.on {
                            out.push(run_obj(op, json!({"f": f, "g": g})));
                        }
                    }
                }
            }
            "geometry" => {
                for (f, fd) in fns.iter().filter(|(_, d)| d.domain == Domain::Grid) {
                    out.push(run_obj(op, json!({"grid": fd.on, "f": f, "x": fd.f.carrier().name(0)})));
                }
            }
            _ => {}
        }
    }
    out
}

fn selected_runs(inst: &Instance, command: Command) -> Vec<Map<String, Value>> {
    let Some(ops) = command.ops() else {
        return inst.runs.clone();
    };
    let explicit: Vec<_> = inst
        .runs
        .iter()
        .filter(|r| r.get("op").and_then(Value::as_str).is_some_and(|op| ops.contains(&op)))
        .cloned()
        .collect();
    if explicit.is_empty() {
        default_runs(inst, ops)
    } else {
        explicit
    }
}

fn fail(code: u8, errors: &[String]) -> ExitCode {
    for e in errors {
        eprintln!("error: {e}");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fuzz = match cli.command {
        Command::Check { fuzz } => fuzz,
        _ => None,
    };

    let files = match &cli.instance {
        Some(p) => match instance_files(p) {
            Ok(f) => f,
            Err(e) => return fail(EXIT_INVALID, &[e]),
        },
        None if fuzz.is_some() => Vec::new(),
        None => return fail(EXIT_INVALID, &["--instance is required".into()]),
    };
    let multi = files.len() > 1 || cli.instance.as_deref().is_some_and(Path::is_dir);

    let mut loaded = Vec::new();
    let mut errors = Vec::new();
    for file in &files {
        let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match instance::load(file) {
            Ok(inst) => loaded.push((stem, inst)),
            Err(errs) => errors.extend(errs.into_iter().map(|e| format!("{}: {e}", file.display()))),
        }
    }
    if !errors.is_empty() {
        return fail(EXIT_INVALID, &errors);
    }

    let mut outputs: Vec<RunOutput> = Vec::new();
    for (stem, inst) in &loaded {
        for (i, raw) in selected_runs(inst, cli.command).iter().enumerate() {
            let run = match Run::resolve(inst, i, raw) {
                Ok(r) => r,
                Err(errs) => return fail(EXIT_INVALID, &errs.into_iter().map(|e| format!("{stem}: {e}")).collect::<Vec<_>>()),
            };
            match run.execute() {
                Ok(mut out) => {
                    if multi {
                        out.label = format!("{stem}/{}", out.label);
                        out.reports = out.reports.into_iter().map(|r| r.in_context(stem)).collect();
                        out.plots = out.plots.into_iter().map(|(n, b)| (format!("{stem}-{n}"), b)).collect();
                    }
                    outputs.push(out);
                }
                Err(e) => return fail(EXIT_INVALID, &[format!("{stem}: {}: {e}", run.label)]),
            }
        }
    }

    let extra = match fuzz {
        Some(n) => match fuzz_reports(cli.seed, n) {
            Ok(r) => r,
            Err(e) => return fail(EXIT_INVALID, &[format!("fuzz: {e}")]),
        },
        None => Vec::new(),
    };

    let rendered = render(&outputs, &extra, cli.format);
    match &cli.out {
        Some(dir) => {
            if let Err(e) = std::fs::create_dir_all(dir) {
                return fail(EXIT_INVALID, &[format!("{}: {e}", dir.display())]);
            }
            for (name, body) in &rendered.files {
                let path = dir.join(name.replace('/', "-"));
                if let Err(e) = std::fs::write(&path, body) {
                    return fail(EXIT_INVALID, &[format!("{}: {e}", path.display())]);
                }
            }
        }
        None => print!("{}", rendered.stdout),
    }

    let summary = Summary::of(outputs.iter().flat_map(|o| &o.reports).chain(&extra));
    if cli.out.is_some() {
        println!("{}", summary.line());
    }
    if summary.fail > 0 {
        ExitCode::from(EXIT_LAW_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}
