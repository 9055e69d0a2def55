use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use isocover_core::classify::{enumerate, sigma4_obstruction, Classification, ClassificationEntry, Label, SearchBounds};
use isocover_core::maps::{five_to_genus2, phi1_descend, phi1_fiber, phi1_pullback, pi_descend, pi_fiber, pi_pullback};
use isocover_core::reps::{
    reparam_d_to_c, sample_five_rep, sample_genus2_rep, sample_torus_c_rep, sample_torus_rep, AnyRep, Theta,
};
use isocover_core::verify::{backend_name, run_suite, Failure, RunReport, Theorem};
use isocover_core::words::{eval_word, involution, phi_star, reduce_with_sign, Assignment, Word};
use isocover_core::{set_epsilon, Backend, MapError};

#[derive(Parser)]
#[command(name = "isocover", version, about = "SL2 monodromy maps under ramified covers, and the classification of their cover data")]
struct Cli {
    /// Tolerance for every floating-point comparison.
    #[arg(long, global = true, value_parser = parse_epsilon)]
    epsilon: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate admissible cover data up to a given degree.
    Classify {
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        /// Search the widened bounds instead of the reduced ones and check
        /// that the admissible set is unchanged.
        #[arg(long)]
        no_pruning: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orders of all products of three double transpositions in S4.
    Sigma4 {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a randomized property suite.
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Theorem,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "ISOCOVER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "float", value_parser = parse_backend)]
        backend: Backend,
    },
    /// Apply a map to a representation file.
    Map {
        #[arg(value_enum)]
        name: MapName,
        /// Input JSON, `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Output JSON; without it the result goes to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw a random representation.
    Sample {
        #[arg(value_enum)]
        kind: SampleKind,
        #[arg(long, default_value = "1/2", value_parser = parse_theta)]
        theta: Theta,
        #[arg(long, env = "ISOCOVER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "float", value_parser = parse_backend)]
        backend: Backend,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Word operations: `word phi-star "alpha beta^-1"`.
    Word {
        #[arg(value_enum)]
        action: WordAction,
        word: String,
        /// Representation to evaluate in (for `eval`).
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Phi1Pullback,
    Phi1Descend,
    PiPullback,
    PiDescend,
    FiveToGenus2,
    Fiber,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleKind {
    Five,
    Torus,
    TorusC,
    Genus2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WordAction {
    PhiStar,
    Involution,
    Reduce,
    Eval,
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_theta(s: &str) -> Result<Theta, String> {
    s.parse().map_err(|e| format!("{e}"))
}

enum CliError {
    /// Unreadable or invalid input: exit 2.
    Input(String),
    /// A check failed: exit 1.
    Failed,
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(eps) = cli.epsilon {
        set_epsilon(eps);
    }
    let result = match cli.command {
        Command::Classify { dmax, no_pruning, format } => classify(dmax, no_pruning, format),
        Command::Sigma4 { format } => sigma4(format),
        Command::Verify { theorem, trials, seed, backend } => verify(theorem, trials as usize, seed, backend),
        Command::Map { name, input, output } => map(name, &input, output.as_deref()),
        Command::Sample { kind, theta, seed, backend, output } => sample(kind, theta, seed, backend, output.as_deref()),
        Command::Word { action, word, input } => word_cmd(action, &word, input.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &impl Serialize) {
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn finish(failures: &[Failure]) -> CliResult {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn failure(case_id: &str, invariant: impl Into<String>, input: Value) -> Failure {
    Failure { case_id: case_id.to_string(), violated_invariant: invariant.into(), input }
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    command: String,
    failures: Vec<Failure>,
    elapsed_ms: u128,
    bounds: &'a SearchBounds,
    admissible: Vec<&'a ClassificationEntry>,
    eliminated: Vec<&'a ClassificationEntry>,
    informational: &'a [ClassificationEntry],
}

fn admissible_set(c: &Classification) -> BTreeSet<(String, String)> {
    c.admissible().map(|e| (e.label.to_string(), format!("{:?}", e.candidate.key()))).collect()
}

fn classify(dmax: u32, no_pruning: bool, format: Format) -> CliResult {
    if dmax < 2 {
        return Err(CliError::Input("--dmax must be at least 2".into()));
    }
    let start = Instant::now();
    let result = enumerate(dmax, no_pruning);
    let mut failures = Vec::new();
    for e in result.entries.iter().filter(|e| e.label == Label::Unexpected) {
        failures.push(failure("classify", "candidate matches no known construction", json!(e)));
    }
    if no_pruning {
        let reduced = enumerate(dmax, false);
        let (wide, narrow) = (admissible_set(&result), admissible_set(&reduced));
        if wide != narrow {
            let diff: Vec<_> = wide.symmetric_difference(&narrow).collect();
            failures.push(failure("classify", "widened search changes the admissible set", json!(diff)));
        }
    }
    let mut command = format!("classify --dmax {dmax}");
    if no_pruning {
        command.push_str(" --no-pruning");
    }
    let report = ClassifyReport {
        command,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
        bounds: &result.bounds,
        admissible: result.admissible().collect(),
        eliminated: result.eliminated().collect(),
        informational: &result.informational,
    };
    match format {
        Format::Json => print_json(&report),
        Format::Table => print_table(&report),
    }
    finish(&report.failures)
}

fn print_table(report: &ClassifyReport) {
    println!(
        "{:<32} {:>2}  {:<22} {:>3} {:>3} {:>3}  {:<7}  {:<10}  realizable",
        "label", "d", "base", "g~", "n~", "b", "area", "constraints"
    );
    let rows = report.admissible.iter().chain(&report.eliminated).copied();
    let row = |e: &ClassificationEntry| {
        let c = &e.candidate;
        let constraints = if e.constraints.all() { "ok" } else { "violated" };
        println!(
            "{:<32} {:>2}  {:<22} {:>3} {:>3} {:>3}  {:<7}  {:<10}  {}",
            e.label.to_string(),
            c.degree,
            c.base.to_string(),
            c.cover_genus,
            c.cover_orbifold_count,
            c.branch_count,
            e.base_area,
            constraints,
            if e.realizable { "yes" } else { "no" }
        );
    };
    rows.for_each(row);
    println!("non-hyperbolic, outside the classification:");
    report.informational.iter().for_each(row);
    for f in &report.failures {
        println!("FAILURE: {}", f.violated_invariant);
    }
}

fn sigma4(format: Format) -> CliResult {
    let report = sigma4_obstruction();
    match format {
        Format::Json => print_json(&report),
        Format::Table => {
            for row in &report.rows {
                println!("{} {} {} = {}  order {}", row.factors[0], row.factors[1], row.factors[2], row.product, row.order);
            }
            println!("{}", report.verdict);
        }
    }
    if report.obstruction_confirmed {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn verify(theorem: Theorem, trials: usize, seed: u64, backend: Backend) -> CliResult {
    let mut report = run_suite(theorem, trials, seed, backend);
    report.command = format!("verify {theorem} --trials {trials} --seed {seed} --backend {}", backend_name(backend));
    print_json(&report);
    finish(&report.failures)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn read_rep(path: &Path) -> Result<AnyRep, CliError> {
    let text = read_text(path)?;
    let rep: AnyRep =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let violations = rep.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Input(format!("{}: invalid {} representation: {}", path.display(), rep.kind(), list.join("; "))));
    }
    Ok(rep)
}

fn wrong_kind(name: &str, want: &str, got: &AnyRep) -> CliError {
    CliError::Input(format!("{name} expects a {want} representation, got {}", got.kind()))
}

fn apply_map(name: MapName, rep: &AnyRep) -> Result<Result<Vec<AnyRep>, MapError>, CliError> {
    let one = |r: Result<AnyRep, MapError>| r.map(|x| vec![x]);
    Ok(match (name, rep) {
        (MapName::Phi1Pullback, AnyRep::Five(r)) => one(phi1_pullback(r).map(AnyRep::from)),
        (MapName::Phi1Pullback, other) => return Err(wrong_kind("phi1-pullback", "five", other)),
        (MapName::Phi1Descend, AnyRep::Torus(r)) => one(phi1_descend(r).map(AnyRep::from)),
        (MapName::Phi1Descend, other) => return Err(wrong_kind("phi1-descend", "torus", other)),
        (MapName::PiPullback, AnyRep::TorusC(r)) => one(pi_pullback(r).map(AnyRep::from)),
        (MapName::PiPullback, AnyRep::Torus(r)) => {
            let c = reparam_d_to_c(r).map_err(|e| CliError::Input(e.to_string()))?;
            one(pi_pullback(&c).map(AnyRep::from))
        }
        (MapName::PiPullback, other) => return Err(wrong_kind("pi-pullback", "torusC", other)),
        (MapName::PiDescend, AnyRep::Genus2(r)) => one(pi_descend(r).map(AnyRep::from)),
        (MapName::PiDescend, other) => return Err(wrong_kind("pi-descend", "genus2", other)),
        (MapName::FiveToGenus2, AnyRep::Five(r)) if !r.theta.is_half() => {
            return Err(CliError::Input(format!("five-to-genus2 needs theta = 1/2, got {}", r.theta)))
        }
        (MapName::FiveToGenus2, AnyRep::Five(r)) => one(five_to_genus2(r).map(AnyRep::from)),
        (MapName::FiveToGenus2, other) => return Err(wrong_kind("five-to-genus2", "five", other)),
        (MapName::Fiber, AnyRep::Torus(r)) => phi1_fiber(r).map(|f| f.elements.into_iter().map(AnyRep::from).collect()),
        (MapName::Fiber, AnyRep::Genus2(r)) => pi_fiber(r).map(|f| f.into_iter().map(AnyRep::from).collect()),
        (MapName::Fiber, other) => return Err(wrong_kind("fiber", "torus or genus2", other)),
    })
}

fn map(name: MapName, input: &Path, output: Option<&Path>) -> CliResult {
    let start = Instant::now();
    let rep = read_rep(input)?;
    let input_json = json!(rep);
    let label = name.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut failures = Vec::new();
    let result = match apply_map(name, &rep)? {
        Ok(out) => {
            for (k, r) in out.iter().enumerate() {
                for v in r.validate() {
                    failures.push(failure(&format!("output-{k}"), v.to_string(), input_json.clone()));
                }
            }
            Some(if name == MapName::Fiber { json!(out) } else { json!(out[0]) })
        }
        Err(e) => {
            failures.push(failure("map", e.to_string(), input_json));
            None
        }
    };
    let report = RunReport {
        command: format!("map {label}"),
        seed: 0,
        trials: 1,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    };
    match (output, &result) {
        (Some(path), Some(value)) => {
            let text = serde_json::to_string_pretty(value).expect("serializable");
            fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            print_json(&report);
        }
        (None, Some(value)) => {
            print_json(value);
            for f in &report.failures {
                eprintln!("failure: {}", f.violated_invariant);
            }
        }
        (_, None) => print_json(&report),
    }
    finish(&report.failures)
}

fn sample(kind: SampleKind, theta: Theta, seed: u64, backend: Backend, output: Option<&Path>) -> CliResult {
    let drawn = match kind {
        SampleKind::Five => sample_five_rep(theta, seed, backend).map(AnyRep::from),
        SampleKind::Torus => sample_torus_rep(theta, seed, backend).map(AnyRep::from),
        SampleKind::TorusC => sample_torus_c_rep(seed, backend).map(AnyRep::from),
        SampleKind::Genus2 => sample_genus2_rep(seed, backend).map(AnyRep::from),
    };
    let rep = drawn.map_err(|e| CliError::Input(e.to_string()))?;
    match output {
        Some(path) => {
            let text = serde_json::to_string_pretty(&rep).expect("serializable");
            fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        None => print_json(&rep),
    }
    Ok(())
}

fn word_cmd(action: WordAction, text: &str, input: Option<&Path>) -> CliResult {
    let w: Word = text.parse().map_err(|e| CliError::Input(format!("{e}")))?;
    let out = match action {
        WordAction::PhiStar => json!({ "input": w.to_string(), "output": phi_star(&w).map_err(|e| CliError::Input(e.to_string()))?.to_string() }),
        WordAction::Involution => json!({ "input": w.to_string(), "output": involution(&w).map_err(|e| CliError::Input(e.to_string()))?.to_string() }),
        WordAction::Reduce => {
            let (r, sign) = reduce_with_sign(&w);
            json!({ "input": w.to_string(), "output": r.to_string(), "sign": sign })
        }
        WordAction::Eval => {
            let path = input.ok_or_else(|| CliError::Input("eval needs --input".into()))?;
            let assignment = match read_rep(path)? {
                AnyRep::Five(r) => Assignment::from(&r),
                AnyRep::Torus(r) => Assignment::from(&r),
                other => return Err(wrong_kind("eval", "five or torus", &other)),
            };
            let m = eval_word(&w, &assignment).map_err(|e| CliError::Input(e.to_string()))?;
            json!({ "input": w.to_string(), "matrix": m })
        }
    };
    print_json(&out);
    Ok(())
}
