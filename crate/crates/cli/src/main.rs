use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use grograde::algebra::{check_m_iso, compute_epsilons, is_strongly_graded, validate_grading_by_ids, AlgebraSpec};
use grograde::cohomology::{cohomology, Backend, Complex};
use grograde::crossed::{classify, ClassifyOptions, CrossedError};
use grograde::finalg::{check_idem_ideal_bijection, RingSpec};
use grograde::groupoid::{standard_construction, Construction, FiniteGroupoid, GroupoidSpec};
use grograde::io;
use grograde::leavitt::{lpa_build, lpa_report};
use grograde::skew::{build_skew_ring, skew_report};
use grograde::Error;

mod render;

#[derive(Parser)]
#[command(name = "grograde", version, about = "Groupoid graded rings, partial actions and partial cohomology over prime fields")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (falls back to GROGRADE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite groupoids.
    #[command(subcommand)]
    Groupoid(GroupoidCmd),
    /// Finite commutative rings and monoids.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Graded algebras given by structure constants.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Partial skew groupoid rings.
    #[command(subcommand)]
    Skew(SkewCmd),
    /// Leavitt path algebras of acyclic graphs.
    #[command(subcommand)]
    Lpa(LpaCmd),
    /// Partial cohomology.
    #[command(subcommand)]
    Coh(CohCmd),
    /// Compare H^2 of the canonical module with equivalence classes of twists.
    Classify {
        algebra: PathBuf,
        #[arg(long)]
        groupoid: PathBuf,
        /// Extra non-representative cocycles to test.
        #[arg(long, default_value_t = 50)]
        sample: usize,
        /// Bound on enumerated sets and on the equivalence search space.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GroupoidCmd {
    Validate { file: PathBuf },
    /// Writes a standard groupoid file.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        /// Group order for `group` and `matrix`.
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Comma separated object names for `pair` and `matrix`.
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Group,
    Pair,
    Matrix,
}

#[derive(Subcommand)]
enum RingCmd {
    Validate { file: PathBuf },
    Idempotents {
        file: PathBuf,
        /// Largest ring searched over all subsets.
        #[arg(long, default_value_t = 12)]
        subset_cap: usize,
    },
}

#[derive(Args)]
struct GradedArgs {
    algebra: PathBuf,
    #[arg(long)]
    groupoid: PathBuf,
}

#[derive(Subcommand)]
enum AlgCmd {
    CheckGrading(GradedArgs),
    Epsilons(GradedArgs),
    Strong(GradedArgs),
}

#[derive(Subcommand)]
enum SkewCmd {
    Build {
        action: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the grading groupoid.
        #[arg(long)]
        groupoid_out: Option<PathBuf>,
    },
    Check { action: PathBuf },
}

#[derive(Subcommand)]
enum LpaCmd {
    Report {
        graph: PathBuf,
        #[arg(short, long)]
        p: u32,
    },
    Export {
        graph: PathBuf,
        #[arg(short, long)]
        p: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        groupoid_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CohCmd {
    Compute {
        module: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Snf)]
        backend: BackendArg,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u128,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Enumerate,
    Snf,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Outcome {
    inputs: Vec<PathBuf>,
    ok: bool,
    result: Value,
}

impl Outcome {
    fn new(inputs: Vec<PathBuf>, ok: bool, result: Value) -> Self {
        Outcome { inputs, ok, result }
    }
}

fn digest(path: &Path) -> Result<String, Failure> {
    let bytes = io::read_bytes(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn groupoid_summary(g: &FiniteGroupoid) -> Value {
    json!({
        "objects": g.num_objects(),
        "morphisms": g.num_morphisms(),
        "composable_pairs": g.count_composable_pairs(),
    })
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Groupoid(GroupoidCmd::Validate { file }) => {
            let spec: GroupoidSpec = io::read_json(file)?;
            Ok(match FiniteGroupoid::validate(&spec) {
                Ok(g) => Outcome::new(vec![file.clone()], true, json!({ "valid": true, "groupoid": groupoid_summary(&g) })),
                Err(e) => Outcome::new(vec![file.clone()], false, json!({ "valid": false, "error": e.to_string() })),
            })
        }
        Command::Groupoid(GroupoidCmd::Construct { kind, order, objects, out }) => {
            let c = match kind {
                Kind::Group => Construction::OneObjectGroup { order: *order },
                Kind::Pair => Construction::Pair { objects: objects.clone() },
                Kind::Matrix => Construction::Matrix { objects: objects.clone(), order: *order },
            };
            let g = standard_construction(&c).map_err(|e| Failure::Input(e.to_string()))?;
            write_json(out, &g.to_spec())?;
            Ok(Outcome::new(vec![], true, json!({ "written": out.display().to_string(), "groupoid": groupoid_summary(&g) })))
        }
        Command::Ring(RingCmd::Validate { file }) => {
            let spec: RingSpec = io::read_json(file)?;
            let is_ring = !matches!(&spec, RingSpec::Table(t) if t.add.is_none());
            let res = if is_ring {
                spec.to_ring().map(|r| json!({ "valid": true, "kind": "ring", "size": r.len(), "characteristic": r.characteristic() }))
            } else {
                spec.to_monoid().map(|m| json!({ "valid": true, "kind": "monoid", "size": m.len(), "units": m.units().order() }))
            };
            Ok(match res {
                Ok(v) => Outcome::new(vec![file.clone()], true, v),
                Err(e) => Outcome::new(vec![file.clone()], false, json!({ "valid": false, "error": e.to_string() })),
            })
        }
        Command::Ring(RingCmd::Idempotents { file, subset_cap }) => {
            let ring = io::load_ring(file)?;
            let rep = check_idem_ideal_bijection(&ring, *subset_cap);
            Ok(Outcome::new(vec![file.clone()], rep.passed(), json!({ "bijective": rep.passed(), "report": rep })))
        }
        Command::Alg(sub) => {
            let (args, which) = match sub {
                AlgCmd::CheckGrading(a) => (a, 0),
                AlgCmd::Epsilons(a) => (a, 1),
                AlgCmd::Strong(a) => (a, 2),
            };
            let inputs = vec![args.algebra.clone(), args.groupoid.clone()];
            let (alg, deg) = io::load_algebra(&args.algebra)?;
            let deg = deg.ok_or_else(|| Failure::Input(format!("{}: algebra file has no `deg`", args.algebra.display())))?;
            let grp = std::sync::Arc::new(io::load_groupoid(&args.groupoid)?);
            let s = match validate_grading_by_ids(alg, grp, &deg) {
                Ok(s) => s,
                Err(e) if which == 0 => return Ok(Outcome::new(inputs, false, json!({ "graded": false, "error": e.to_string() }))),
                Err(e) => return Err(Failure::Input(e.to_string())),
            };
            let g = s.groupoid();
            match which {
                0 => {
                    let dims: serde_json::Map<String, Value> =
                        (0..g.num_morphisms()).map(|m| (g.id(m).to_string(), json!(s.component_basis(m).len()))).collect();
                    Ok(Outcome::new(inputs, true, json!({ "graded": true, "dim": s.alg().dim(), "component_dims": dims })))
                }
                1 => Ok(match compute_epsilons(&s) {
                    Ok(eps) => {
                        let table: serde_json::Map<String, Value> =
                            (0..g.num_morphisms()).map(|m| (g.id(m).to_string(), json!(s.alg().render(eps.get(m))))).collect();
                        let isos: Vec<_> = g.composable_tuples(2).iter().map(|t| check_m_iso(&s, &eps, t[0], t[1])).collect();
                        let ok = isos.iter().all(|r| r.passed());
                        Outcome::new(inputs, ok, json!({ "epsilon_strong": true, "epsilons": table, "m_iso_passed": ok, "m_iso": isos }))
                    }
                    Err(e) => Outcome::new(inputs, false, json!({ "epsilon_strong": false, "error": e.to_string() })),
                }),
                _ => {
                    let rep = is_strongly_graded(&s);
                    Ok(Outcome::new(inputs, rep.strong, json!({ "strongly_graded": rep.strong, "pairs_checked": rep.pairs_checked, "witness": rep.witness() })))
                }
            }
        }
        Command::Skew(SkewCmd::Build { action, out, groupoid_out }) => {
            let (act, p) = io::load_action(action)?;
            let ring = build_skew_ring(&act, p).map_err(Error::from)?;
            write_json(out, &AlgebraSpec::from_graded(&ring.graded))?;
            if let Some(gp) = groupoid_out {
                write_json(gp, &act.groupoid().to_spec())?;
            }
            Ok(Outcome::new(vec![action.clone()], true, json!({ "dim": ring.graded.alg().dim(), "written": out.display().to_string() })))
        }
        Command::Skew(SkewCmd::Check { action }) => {
            let (act, p) = io::load_action(action)?;
            let ring = build_skew_ring(&act, p).map_err(Error::from)?;
            let rep = skew_report(&act, &ring);
            Ok(Outcome::new(vec![action.clone()], rep.passed(), json!({ "passed": rep.passed(), "report": rep })))
        }
        Command::Lpa(LpaCmd::Report { graph, p }) => {
            let g = io::load_graph(graph)?;
            let l = lpa_build(&g, *p).map_err(Error::from)?;
            let rep = lpa_report(&l);
            Ok(Outcome::new(vec![graph.clone()], rep.passed(), json!({ "passed": rep.passed(), "report": rep })))
        }
        Command::Lpa(LpaCmd::Export { graph, p, out, groupoid_out }) => {
            let g = io::load_graph(graph)?;
            let l = lpa_build(&g, *p).map_err(Error::from)?;
            write_json(out, &AlgebraSpec::from_graded(&l.graded))?;
            if let Some(gp) = groupoid_out {
                write_json(gp, &l.groupoid().to_spec())?;
            }
            Ok(Outcome::new(vec![graph.clone()], true, json!({ "dim": l.alg().dim(), "written": out.display().to_string() })))
        }
        Command::Coh(CohCmd::Compute { module, n, backend, cap }) => {
            let m = io::load_module(module)?;
            let cx = Complex::new(&m, n + 1).map_err(Error::from)?;
            let b = match backend {
                BackendArg::Enumerate => Backend::Enumerate,
                BackendArg::Snf => Backend::Snf,
            };
            let h = cohomology(&cx, *n, b, *cap).map_err(Error::from)?;
            let reps: Vec<Value> = h
                .representatives
                .iter()
                .map(|r| Value::Object(cx.render(r).into_iter().map(|(k, v)| (k, Value::String(v))).collect()))
                .collect();
            Ok(Outcome::new(
                vec![module.clone()],
                true,
                json!({ "degree": n, "backend": h.backend, "order": h.order, "factors": h.factors, "representatives": reps }),
            ))
        }
        Command::Classify { algebra, groupoid, sample, cap, seed } => {
            let s = io::load_graded(algebra, groupoid)?;
            let inputs = vec![algebra.clone(), groupoid.clone()];
            let eps = compute_epsilons(&s).map_err(Error::from)?;
            let opts = ClassifyOptions { sample: *sample, cap: *cap, seed: *seed };
            match classify(&s, &eps, &opts) {
                Ok(rep) => Ok(Outcome::new(inputs, true, json!(rep))),
                Err(CrossedError::BijectionFailure(rep)) => Ok(Outcome::new(inputs, false, json!(rep))),
                Err(e) => Err(Error::from(e).into()),
            }
        }
    }
}

fn threads(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| std::env::var("GROGRADE_THREADS").ok().and_then(|v| v.parse().ok()))
}

/// The argument list without `--threads` and `--json`, which affect neither
/// the results nor the content of the report.
fn echo_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_value = false;
    for a in args {
        if skip_value {
            skip_value = false;
        } else if a == "--threads" {
            skip_value = true;
        } else if a != "--json" && !a.starts_with("--threads=") {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = threads(&cli) {
        // a second initialisation can only fail inside tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let command = echo_args(std::env::args().skip(1));
    let outcome = run(&cli.command).and_then(|o| {
        let inputs = o
            .inputs
            .iter()
            .map(|p| Ok(json!({ "path": p.display().to_string(), "sha256": digest(p)? })))
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok((o.ok, json!({ "command": command, "inputs": inputs, "verdict": o.ok, "result": o.result })))
    });
    match outcome {
        Ok((ok, report)) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                render::text(&report)
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
