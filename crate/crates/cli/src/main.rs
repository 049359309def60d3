//! `cutkit` command line front end.

mod bench;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cutkit::io::{
    generate_random, parse_instance, write_dimacs, GenKind, GenParams, InstanceDocument, Payload,
    Provenance,
};
use cutkit::reductions::{
    certify_bisection_tmec, certify_maxcover_interdiction, certify_setcover_directed,
    certify_setcover_multipartner, certify_squaring, verify_certificate, ReductionCertificate,
    Solution, SQUARE_LIMIT,
};
use cutkit::{CutKind, Error};

use solve::{Algo, BackendArg, Problem, SolveOptions, Status};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "cutkit",
    version,
    about = "Connectivity preserving and threshold minimum cuts"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance document.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum, default_value = "exact")]
        algo: Algo,
        #[arg(long = "in")]
        input: PathBuf,
        /// Bisection backend for the bisection based algorithm.
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        /// Clique size of the bisection gadget (default n²).
        #[arg(long)]
        scale_size: Option<usize>,
        /// Weight of gadget edges (default n²).
        #[arg(long)]
        scale_cost: Option<u64>,
        /// Write the solution to this file.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Build a reduction target and its certificate.
    Reduce {
        #[arg(long, value_enum)]
        from: From,
        #[arg(long, value_enum)]
        to: To,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Certificate path (default: OUT with `.cert.json` appended).
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check a certificate against a source and a target solution.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        source_sol: PathBuf,
        #[arg(long)]
        target_sol: PathBuf,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_parser = parse_gen_kind)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        min_weight: u64,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        #[arg(long, value_enum, default_value = "edge")]
        mode: ModeArg,
        #[arg(long)]
        directed: bool,
        /// Min-cover objective for the cover kind.
        #[arg(long)]
        minimize: bool,
        /// Emit a DIMACS-like edge list (graph kinds only).
        #[arg(long)]
        dimacs: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite.
    Bench {
        #[arg(long)]
        suite: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum From {
    Setcover,
    Bisection,
    Maxcover,
    Cover,
}

#[derive(Clone, Copy, ValueEnum)]
enum To {
    Cpmec,
    CpmecMultipartner,
    Tmec,
    Interdiction,
    Squared,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Node,
    Edge,
}

fn parse_gen_kind(s: &str) -> Result<GenKind, String> {
    GenKind::parse(s).ok_or_else(|| {
        let names: Vec<&str> = GenKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown kind {s:?}, expected one of {}", names.join(", "))
    })
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Error(String),
    Infeasible,
}

impl std::convert::From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn read_doc(path: &Path) -> Result<InstanceDocument, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_slice(&read(path)?)
        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn cmd_solve(
    cli_json: bool,
    problem: Problem,
    algo: Algo,
    input: &Path,
    opts: SolveOptions,
    out: Option<&Path>,
) -> Outcome {
    let doc = read_doc(input)?;
    let report = solve::solve(problem, algo, &doc, &opts)?;
    if let (Some(path), Some(sol)) = (out, &report.solution) {
        write(path, &to_json(sol))?;
    }
    if cli_json {
        print!("{}", to_json(&report));
    } else {
        println!(
            "status: {}",
            serde_json::to_value(report.status)
                .unwrap()
                .as_str()
                .unwrap()
        );
        println!("value: {}", opt(report.value));
        if let Some(sol) = &report.solution {
            println!("solution: {}", serde_json::to_string(sol).unwrap());
        }
        println!("oracle: {}", opt(report.oracle_value));
        if let Some(lp) = report.lp_bound {
            println!("lp bound: {lp:.4}");
        }
        match (report.ratio, report.ratio_basis) {
            (Some(r), Some(solve::RatioBasis::LpBound)) => println!("ratio: {r:.4} (vs lp bound)"),
            (Some(r), _) => println!("ratio: {r:.4}"),
            _ => println!("ratio: -"),
        }
        println!("wall ms: {:.3}", report.wall_ms);
    }
    if report.status == Status::Infeasible {
        return Err(Failure::Infeasible);
    }
    Ok(())
}

fn certify(from: From, to: To, doc: &InstanceDocument) -> Result<ReductionCertificate, Failure> {
    let mismatch = || {
        Failure::Error(format!(
            "cannot reduce a {} document this way",
            doc.kind.name()
        ))
    };
    Ok(match (from, to, &doc.payload) {
        (From::Setcover, To::Cpmec, Payload::Setcover(sc)) => certify_setcover_directed(sc)?,
        (From::Setcover, To::CpmecMultipartner, Payload::Setcover(sc)) => {
            certify_setcover_multipartner(sc)?
        }
        (From::Bisection, To::Tmec, Payload::Graph(g)) => certify_bisection_tmec(g)?,
        (From::Maxcover, To::Interdiction, Payload::Cover(c)) => certify_maxcover_interdiction(c)?,
        (From::Cover, To::Squared, Payload::Cover(c)) => certify_squaring(c, SQUARE_LIMIT)?,
        (From::Setcover, To::Cpmec | To::CpmecMultipartner, _)
        | (From::Bisection, To::Tmec, _)
        | (From::Maxcover, To::Interdiction, _)
        | (From::Cover, To::Squared, _) => return Err(mismatch()),
        _ => return Err(Failure::Error("unsupported reduction pair".into())),
    })
}

fn target_payload(cert: &ReductionCertificate) -> Payload {
    match cert {
        ReductionCertificate::SetcoverDirectedCpmec { target, .. }
        | ReductionCertificate::SetcoverMultipartnerCpmec { target, .. } => {
            Payload::Cpmc(target.clone())
        }
        ReductionCertificate::BisectionTmec { target, .. } => Payload::Tmc(target.clone()),
        ReductionCertificate::MaxcoverInterdiction { target, .. } => {
            Payload::Interdiction(target.clone())
        }
        ReductionCertificate::Squaring { target, .. } => Payload::Cover(target.clone()),
    }
}

#[derive(Serialize)]
struct ReduceReport {
    reduction: &'static str,
    instance: String,
    certificate: String,
}

fn cmd_reduce(
    json: bool,
    from: From,
    to: To,
    input: &Path,
    out: &Path,
    cert_path: Option<&Path>,
) -> Outcome {
    let doc = read_doc(input)?;
    let cert = certify(from, to, &doc)?;
    let mut lineage = doc
        .provenance
        .clone()
        .map(|p| p.reductions)
        .unwrap_or_default();
    lineage.push(cert.name().to_string());
    let target = InstanceDocument::new(target_payload(&cert)).with_provenance(Provenance {
        reductions: lineage,
        source: Some(input.display().to_string()),
    });
    let cert_path = cert_path.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".cert.json");
        PathBuf::from(p)
    });
    write(out, &target.to_json())?;
    write(&cert_path, &to_json(&cert))?;
    let report = ReduceReport {
        reduction: cert.name(),
        instance: out.display().to_string(),
        certificate: cert_path.display().to_string(),
    };
    if json {
        print!("{}", to_json(&report));
    } else {
        println!(
            "{}: instance {}, certificate {}",
            report.reduction, report.instance, report.certificate
        );
    }
    Ok(())
}

fn cmd_verify(json: bool, cert: &Path, source_sol: &Path, target_sol: &Path) -> Outcome {
    let cert: ReductionCertificate = read_json(cert)?;
    let s: Solution = read_json(source_sol)?;
    let t: Solution = read_json(target_sol)?;
    let verdict = verify_certificate(&cert, &s, &t);
    if json {
        print!("{}", to_json(&verdict));
    } else if verdict.ok {
        println!("ok");
    } else {
        for v in &verdict.violations {
            println!("violation: {}", serde_json::to_string(v).unwrap());
        }
    }
    if verdict.ok {
        Ok(())
    } else {
        Err(Failure::Error(format!(
            "{} violation(s)",
            verdict.violations.len()
        )))
    }
}

fn cmd_bench(json: bool, suite_path: &Path) -> Outcome {
    let suite: bench::Suite = read_json(suite_path)?;
    let base = suite_path.parent().unwrap_or(Path::new("."));
    let rows = bench::run_suite(&suite, base);
    if json {
        print!("{}", to_json(&rows));
    } else {
        print!("{}", bench::render(&rows));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.cmd {
        Cmd::Solve {
            problem,
            algo,
            input,
            backend,
            seed,
            restarts,
            scale_size,
            scale_cost,
            solution,
        } => {
            let opts = SolveOptions {
                backend,
                seed,
                restarts,
                scale_size,
                scale_cost,
            };
            cmd_solve(json, problem, algo, &input, opts, solution.as_deref())
        }
        Cmd::Reduce {
            from,
            to,
            input,
            out,
            cert,
        } => cmd_reduce(json, from, to, &input, &out, cert.as_deref()),
        Cmd::Verify {
            cert,
            source_sol,
            target_sol,
        } => cmd_verify(json, &cert, &source_sol, &target_sol),
        Cmd::Gen {
            kind,
            seed,
            n,
            k,
            l,
            density,
            min_weight,
            max_weight,
            mode,
            directed,
            minimize,
            dimacs,
            out,
        } => {
            let mode = match mode {
                ModeArg::Node => CutKind::Node,
                ModeArg::Edge => CutKind::Edge,
            };
            let params = GenParams {
                n,
                k,
                l,
                density,
                min_weight,
                max_weight,
                mode,
                directed,
                maximize: !minimize,
            };
            let doc = generate_random(kind, &params, seed)?;
            let text = if dimacs {
                match &doc.payload {
                    Payload::Graph(g) => write_dimacs(g),
                    _ => {
                        return Err(Failure::Error(
                            "--dimacs applies to graph kinds only".into(),
                        ))
                    }
                }
            } else {
                doc.to_json()
            };
            match out {
                Some(p) => write(&p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Cmd::Bench { suite } => cmd_bench(json, &suite),
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CUTKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("CUTKIT_THREADS={v:?} is not a thread count"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(Failure::Infeasible) => ExitCode::from(EXIT_INFEASIBLE),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
