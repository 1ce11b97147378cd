use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pseudofactor::generators::parse_manifest;
use pseudofactor::harness::{self, Instance, Mode, Status};
use pseudofactor::heuristic::solve;
use pseudofactor::{load_graph, min_small_components_exact, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pseudofactor",
    version,
    about = "Pseudo [2,b]-factors with few edge/vertex components"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write every manifest instance as an edge-list file.
    Generate {
        manifest: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Compute a pseudo [2,b]-factor of one graph file.
    Solve {
        graph: PathBuf,
        #[arg(short = 'b')]
        b: usize,
        #[arg(long, default_value = "both")]
        mode: Mode,
        /// Print JSON instead of the text format.
        #[arg(long)]
        json: bool,
    },
    /// Check the bound on a manifest or a directory of graph files.
    Verify {
        input: PathBuf,
        /// Comma-separated list of b values.
        #[arg(short = 'b', value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[arg(long, default_value = "oracle")]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSON-lines report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// CSV report.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Exit with code 3 if any row was skipped for capacity.
        #[arg(long)]
        strict: bool,
        /// Where reproducer files go on a violation (default: current dir).
        #[arg(long)]
        reproducer_dir: Option<PathBuf>,
    },
    /// Evaluate max(0, alpha - floor(b(delta-1)/2)).
    Bound {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        delta: usize,
        #[arg(short = 'b')]
        b: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::SelfLoop { .. } | Error::VertexOutOfRange { .. } => {
                    EXIT_PARSE
                }
                Error::Capacity { .. } => EXIT_CAPACITY,
                _ => EXIT_FAILURE,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn load_instances(input: &Path) -> Result<Vec<Instance>, Error> {
    if input.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(input)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|p| {
                let graph = load_graph(&read(&p)?)?;
                let id = p
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                Ok(Instance { id, graph })
            })
            .collect()
    } else {
        parse_manifest(&read(input)?)?
            .iter()
            .map(Instance::from_spec)
            .collect()
    }
}

fn run(command: Command) -> Result<u8, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Generate { manifest, out: dir } => {
            let specs = parse_manifest(&read(&manifest)?)?;
            fs::create_dir_all(&dir)?;
            for spec in &specs {
                let g = spec.build()?;
                let path = dir.join(format!("{}.edges", spec.file_stem()));
                fs::write(&path, format!("# {spec}\n{}", g.to_edge_list()))?;
            }
            writeln!(out, "wrote {} graphs to {}", specs.len(), dir.display())?;
            Ok(0)
        }
        Command::Solve {
            graph,
            b,
            mode,
            json,
        } => {
            let g = load_graph(&read(&graph)?)?;
            let mut doc = serde_json::Map::new();
            if matches!(mode, Mode::Oracle | Mode::Both) {
                let r = min_small_components_exact(&g, b)?;
                if json {
                    doc.insert("oracle".into(), r.witness.to_json());
                } else {
                    writeln!(out, "# oracle optimum {}", r.optimum)?;
                    write!(out, "{}", r.witness.to_text())?;
                }
            }
            if matches!(mode, Mode::Heuristic | Mode::Both) {
                let s = solve(&g, b)?;
                if json {
                    let mut h = s.factor.to_json();
                    h["steps"] = serde_json::to_value(s.steps()).map_err(io::Error::other)?;
                    h["fallback"] = s.fallback.into();
                    doc.insert("heuristic".into(), h);
                } else {
                    writeln!(out, "# heuristic small components {}", s.small_count())?;
                    if s.fallback {
                        writeln!(out, "# no endpoint cycle, cover only")?;
                    }
                    for (i, step) in s.steps().iter().enumerate() {
                        writeln!(out, "# step {}: {step}", i + 1)?;
                    }
                    write!(out, "{}", s.factor.to_text())?;
                }
            }
            if json {
                writeln!(out, "{}", serde_json::Value::Object(doc))?;
            }
            Ok(0)
        }
        Command::Verify {
            input,
            b,
            mode,
            jobs,
            report,
            csv,
            strict,
            reproducer_dir,
        } => {
            let instances = load_instances(&input)?;
            let result = harness::run_corpus(&instances, &b, mode, jobs)?;
            if let Some(path) = report {
                let mut f = io::BufWriter::new(fs::File::create(path)?);
                harness::write_jsonl(&mut f, &result)?;
                f.flush()?;
            }
            if let Some(path) = csv {
                let mut f = io::BufWriter::new(fs::File::create(path)?);
                harness::write_csv(&mut f, &result)?;
                f.flush()?;
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string(&result.summary).map_err(io::Error::other)?
            )?;

            let violations: Vec<_> = result.violations().collect();
            if !violations.is_empty() {
                let dir = reproducer_dir.unwrap_or_else(|| PathBuf::from("."));
                fs::create_dir_all(&dir)?;
                for r in violations {
                    let inst = instances
                        .iter()
                        .find(|i| i.id == r.id)
                        .expect("report ids come from instances");
                    let stem: String =
                        r.id.chars()
                            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                            .collect();
                    let path = dir.join(format!("violation_{stem}_b{}.edges", r.b));
                    fs::write(&path, harness::reproducer(r, &inst.graph))?;
                    eprintln!("BOUND_VIOLATION {} b={} -> {}", r.id, r.b, path.display());
                }
                return Ok(EXIT_VIOLATION);
            }
            if strict
                && result
                    .reports
                    .iter()
                    .any(|r| r.status == Status::CapacitySkipped)
            {
                eprintln!("capacity_skipped rows present (strict mode)");
                return Ok(EXIT_CAPACITY);
            }
            Ok(0)
        }
        Command::Bound { alpha, delta, b } => {
            writeln!(out, "{}", harness::theorem_bound(alpha, delta, b)?)?;
            Ok(0)
        }
    }
}
