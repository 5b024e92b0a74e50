//! Command line front end for the subgraph-similarity search simulator:
//! exact enumeration, sampling reconstruction, minimum search, quadratic
//! forms, and the asymptotic cost model. Reports are deterministic for a
//! given command line, so reruns are byte-identical.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use qlap::analysis::{
    classical_cost, convergence_study, crossover_size, quadratic_form_quantum, quantum_cost,
    qubit_estimate, reconstruct_distances,
};
use qlap::circuits::{prepare_state, Registers};
use qlap::graph::{
    argmin_bruteforce, builtin, enumerate_configurations, frobenius_distance_sparse, gen_cycle,
    gen_path, gen_random, gen_star, quadratic_form_classical, read_graph_file, WeightedGraph,
};
use qlap::minfind::{MinimumFinder, SearchMode, SearchOutcome};

#[derive(Parser)]
#[command(
    name = "qlap",
    version,
    about = "Simulated quantum search for the most similar subgraph under fixed edge removal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every removal pattern of order x with its exact distance.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of removed edges.
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the prepared state and reconstruct distances from success
    /// counts; a comma-separated shot grid produces a convergence study.
    Sample {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        x: usize,
        /// Shot count, or a comma-separated grid of counts.
        #[arg(long, value_delimiter = ',', default_value = "100000")]
        shots: Vec<u64>,
        /// Sampling seeds.
        #[arg(long, value_delimiter = ',', default_value = "7")]
        seeds: Vec<u64>,
        /// Largest register the simulator may allocate.
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for the minimum-distance pattern by threshold descent.
    Minfind {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        x: usize,
        /// full simulates the complete register pipeline; hybrid keeps
        /// only the pattern register and labels patterns classically.
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        /// Phase register size in bits.
        #[arg(long, default_value_t = 8)]
        aeps: usize,
        #[arg(long, value_delimiter = ',', default_value = "7")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate quadratic forms of the kept Laplacian through the
    /// encoding and compare them with the classical values.
    Quadform {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        x: usize,
        /// Number of random test vectors per pattern.
        #[arg(long, default_value_t = 5)]
        vectors: usize,
        /// Seed for the test vectors.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Asymptotic step counts, crossover sizes, and qubit estimates.
    Costmodel {
        /// Removal orders to tabulate.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
        x: Vec<u32>,
        /// Target precision in the per-step cost.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Instance selection: a builtin name, a graph file, or a generator.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// Builtin instance (p3, p3w, p4, c4, c5, star4, demo4, ring9) or a
    /// path to a graph file.
    #[arg(long)]
    graph: Option<String>,
    /// Generated instance: path:V, cycle:V, star:V, or rand:V,E,SEED.
    #[arg(long)]
    gen: Option<GenSpec>,
}

impl GraphArgs {
    fn load(&self) -> Result<(WeightedGraph, String), qlap::Error> {
        if let Some(name) = &self.graph {
            if let Some(g) = builtin(name) {
                return Ok((g, format!("builtin {name}")));
            }
            let g = read_graph_file(Path::new(name))?;
            Ok((g, format!("file {name}")))
        } else {
            let spec = self.gen.as_ref().expect("clap enforces one source");
            Ok((spec.build()?, spec.to_string()))
        }
    }
}

#[derive(Clone, Debug)]
enum GenSpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Rand { vertices: usize, edges: usize, seed: u64 },
}

impl FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:ARGS, got `{s}`"))?;
        let count = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|e| format!("bad vertex count `{rest}`: {e}"))
        };
        match kind {
            "path" => Ok(GenSpec::Path(count(rest)?)),
            "cycle" => Ok(GenSpec::Cycle(count(rest)?)),
            "star" => Ok(GenSpec::Star(count(rest)?)),
            "rand" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(format!("expected rand:V,E,SEED, got `{s}`"));
                }
                Ok(GenSpec::Rand {
                    vertices: count(parts[0])?,
                    edges: parts[1]
                        .parse()
                        .map_err(|e| format!("bad edge count `{}`: {e}", parts[1]))?,
                    seed: parts[2]
                        .parse()
                        .map_err(|e| format!("bad seed `{}`: {e}", parts[2]))?,
                })
            }
            other => Err(format!(
                "unknown generator `{other}` (use path, cycle, star, or rand)"
            )),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Path(v) => write!(f, "path:{v}"),
            GenSpec::Cycle(v) => write!(f, "cycle:{v}"),
            GenSpec::Star(v) => write!(f, "star:{v}"),
            GenSpec::Rand { vertices, edges, seed } => {
                write!(f, "rand:{vertices},{edges},{seed}")
            }
        }
    }
}

impl GenSpec {
    fn build(&self) -> qlap::Result<WeightedGraph> {
        match *self {
            GenSpec::Path(v) => gen_path(v),
            GenSpec::Cycle(v) => gen_cycle(v),
            GenSpec::Star(v) => gen_star(v),
            GenSpec::Rand { vertices, edges, seed } => gen_random(vertices, edges, seed),
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    Full,
    Hybrid,
}

impl From<Mode> for SearchMode {
    fn from(mode: Mode) -> SearchMode {
        match mode {
            Mode::Full => SearchMode::Full,
            Mode::Hybrid => SearchMode::Hybrid,
        }
    }
}

enum AppError {
    Lib(qlap::Error),
    Io(std::io::Error),
}

impl From<qlap::Error> for AppError {
    fn from(e: qlap::Error) -> Self {
        AppError::Lib(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Lib(e) => e.fmt(f),
            AppError::Io(e) => e.fmt(f),
        }
    }
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Lib(qlap::Error::QubitCap { .. }) => 3,
            _ => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Enumerate { graph, x, output } => cmd_enumerate(&graph, x, &output),
        Command::Sample { graph, x, shots, seeds, cap, output } => {
            cmd_sample(&graph, x, &shots, &seeds, cap, &output)
        }
        Command::Minfind { graph, x, mode, aeps, seeds, cap, output } => {
            cmd_minfind(&graph, x, mode, aeps, &seeds, cap, &output)
        }
        Command::Quadform { graph, x, vectors, seed, cap, output } => {
            cmd_quadform(&graph, x, vectors, seed, cap, &output)
        }
        Command::Costmodel { x, eps, output } => cmd_costmodel(&x, eps, &output),
    }
}

fn emit(output: &OutputArgs, text: String) -> Result<(), AppError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// `# `-prefixed provenance block for table and csv reports.
fn header(lines: &[String]) -> String {
    lines.iter().map(|l| format!("# {l}\n")).collect()
}

fn provenance_line(command: &str) -> String {
    format!("qlap {} {command}", env!("CARGO_PKG_VERSION"))
}

fn graph_line(desc: &str, g: &WeightedGraph) -> String {
    format!(
        "graph: {desc} ({} vertices, {} edges)",
        g.vertex_count(),
        g.edge_count()
    )
}

fn json_provenance(command: &str, extra: serde_json::Value) -> serde_json::Value {
    let mut obj = json!({
        "tool": "qlap",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
    });
    if let (Some(map), serde_json::Value::Object(extra)) = (obj.as_object_mut(), extra) {
        map.extend(extra);
    }
    obj
}

/// Left-aligned plain-text table.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let mut parts = Vec::new();
        for (w, cell) in widths.iter().zip(cells) {
            parts.push(format!("{cell:<w$}"));
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        line(row.clone());
    }
    out
}

fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn pretty_json(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    text
}

fn cmd_enumerate(graph: &GraphArgs, x: usize, output: &OutputArgs) -> Result<(), AppError> {
    let (g, desc) = graph.load()?;
    let configs = enumerate_configurations(g.edge_count(), x)?;
    let (best, best_distance) = argmin_bruteforce(&g, x)?;
    let mut rows = Vec::new();
    for c in &configs {
        let d = frobenius_distance_sparse(&g, c)?;
        rows.push((c.to_string(), d, *c == best));
    }
    let text = match output.format {
        Format::Json => pretty_json(json!({
            "provenance": json_provenance("enumerate", json!({
                "graph": desc,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "x": x,
            })),
            "argmin": {"pattern": best.to_string(), "distance": best_distance},
            "patterns": rows.iter().map(|(p, d, m)| json!({
                "pattern": p, "distance": d, "argmin": m,
            })).collect::<Vec<_>>(),
        })),
        format => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, d, m)| {
                    vec![
                        p.clone(),
                        d.to_string(),
                        if matches!(format, Format::Csv) {
                            m.to_string()
                        } else if *m {
                            "*".into()
                        } else {
                            String::new()
                        },
                    ]
                })
                .collect();
            let head = [
                provenance_line("enumerate"),
                graph_line(&desc, &g),
                format!("x: {x}, patterns: {}", rows.len()),
            ];
            let body = match format {
                Format::Csv => csv(&["pattern", "distance", "argmin"], &cells),
                _ => table(&["pattern", "distance", "argmin"], &cells),
            };
            header(&head) + &body
        }
    };
    emit(output, text)
}

fn cmd_sample(
    graph: &GraphArgs,
    x: usize,
    shots: &[u64],
    seeds: &[u64],
    cap: usize,
    output: &OutputArgs,
) -> Result<(), AppError> {
    let (g, desc) = graph.load()?;
    let regs = Registers::for_graph(&g, 0, cap)?;
    let common = [
        graph_line(&desc, &g),
        format!("x: {x}, alpha: {}, layout: {}", regs.alpha(), regs.describe()),
    ];
    if shots.len() > 1 {
        let study = convergence_study(&g, x, shots, seeds, cap)?;
        let text = match output.format {
            Format::Json => pretty_json(json!({
                "provenance": json_provenance("sample", json!({
                    "graph": desc,
                    "x": x,
                    "alpha": regs.alpha(),
                    "layout": regs.describe(),
                    "seeds": seeds,
                })),
                "points": serde_json::to_value(&study.points).expect("points serialize"),
                "slope": study.slope,
                "error_drop": study.error_drop(),
            })),
            format => {
                let cells: Vec<Vec<String>> = study
                    .points
                    .iter()
                    .map(|p| vec![p.shots.to_string(), format!("{:.6e}", p.mean_error)])
                    .collect();
                let mut head = vec![provenance_line("sample")];
                head.extend(common.iter().cloned());
                head.push(format!(
                    "seeds: {}",
                    seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                ));
                head.push(format!(
                    "log-log slope: {:.4}, error drop: {:.2}x",
                    study.slope,
                    study.error_drop()
                ));
                let body = match format {
                    Format::Csv => csv(&["shots", "mean_error"], &cells),
                    _ => table(&["shots", "mean_error"], &cells),
                };
                header(&head) + &body
            }
        };
        return emit(output, text);
    }

    let shot_count = shots.first().copied().unwrap_or(100_000);
    let prep = prepare_state(&g, x, cap)?;
    let mut rows = Vec::new();
    for &seed in seeds {
        for e in reconstruct_distances(&g, &prep, shot_count, seed)? {
            rows.push((seed, e));
        }
    }
    let text = match output.format {
        Format::Json => pretty_json(json!({
            "provenance": json_provenance("sample", json!({
                "graph": desc,
                "x": x,
                "alpha": regs.alpha(),
                "layout": regs.describe(),
                "shots": shot_count,
                "seeds": seeds,
            })),
            "estimates": rows.iter().map(|(seed, e)| {
                let mut v = serde_json::to_value(e).expect("estimate serializes");
                v.as_object_mut()
                    .expect("estimate is an object")
                    .insert("seed".into(), json!(seed));
                v
            }).collect::<Vec<_>>(),
        })),
        format => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(seed, e)| {
                    let rel = if e.exact > 0.0 {
                        format!("{:.3e}", (e.estimate - e.exact).abs() / e.exact)
                    } else {
                        format!("{:.3e}", e.estimate.abs())
                    };
                    vec![
                        seed.to_string(),
                        e.pattern.clone(),
                        e.exact.to_string(),
                        e.estimate.to_string(),
                        e.successes.to_string(),
                        rel,
                    ]
                })
                .collect();
            let mut head = vec![provenance_line("sample")];
            head.extend(common.iter().cloned());
            head.push(format!("shots: {shot_count}"));
            let columns = ["seed", "pattern", "exact", "estimate", "successes", "rel_error"];
            let body = match format {
                Format::Csv => csv(&columns, &cells),
                _ => table(&columns, &cells),
            };
            header(&head) + &body
        }
    };
    emit(output, text)
}

fn cmd_minfind(
    graph: &GraphArgs,
    x: usize,
    mode: Mode,
    aeps: usize,
    seeds: &[u64],
    cap: usize,
    output: &OutputArgs,
) -> Result<(), AppError> {
    let (g, desc) = graph.load()?;
    let finder = MinimumFinder::new(&g, x, mode.into(), aeps, cap)?;
    let (argmin, argmin_distance) = argmin_bruteforce(&g, x)?;
    let mut outcomes: Vec<SearchOutcome> = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        outcomes.push(finder.run(seed)?);
    }
    let hits = outcomes
        .iter()
        .filter(|o| o.best == argmin.to_string())
        .count();
    let text = match output.format {
        Format::Json => pretty_json(json!({
            "provenance": json_provenance("minfind", json!({
                "graph": desc,
                "x": x,
                "phase_bits": aeps,
                "layout": finder.describe(),
                "budget": finder.budget(),
            })),
            "argmin": {"pattern": argmin.to_string(), "distance": argmin_distance},
            "hits": hits,
            "runs": serde_json::to_value(&outcomes).expect("runs serialize"),
        })),
        format => {
            let cells: Vec<Vec<String>> = outcomes
                .iter()
                .map(|o| {
                    vec![
                        o.seed.to_string(),
                        o.best.clone(),
                        o.best_distance.to_string(),
                        o.steps_used.to_string(),
                        o.budget.to_string(),
                        o.rounds.to_string(),
                        if o.best == argmin.to_string() {
                            "yes".into()
                        } else {
                            "no".into()
                        },
                    ]
                })
                .collect();
            let head = [
                provenance_line("minfind"),
                graph_line(&desc, &g),
                format!("x: {x}, phase bits: {aeps}, {}", finder.describe()),
                format!(
                    "classical argmin: {} ({}), step budget: {}",
                    argmin, argmin_distance, finder.budget()
                ),
                format!("found the argmin in {hits}/{} runs", outcomes.len()),
            ];
            let columns = ["seed", "best", "distance", "steps", "budget", "rounds", "hit"];
            let body = match format {
                Format::Csv => csv(&columns, &cells),
                _ => table(&columns, &cells),
            };
            header(&head) + &body
        }
    };
    emit(output, text)
}

fn cmd_quadform(
    graph: &GraphArgs,
    x: usize,
    vectors: usize,
    seed: u64,
    cap: usize,
    output: &OutputArgs,
) -> Result<(), AppError> {
    let (g, desc) = graph.load()?;
    let prep = prepare_state(&g, x, cap)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut max_diff: f64 = 0.0;
    for config in enumerate_configurations(g.edge_count(), x)? {
        let mut push = |label: String, a: &[f64], rows: &mut Vec<_>| -> Result<(), AppError> {
            let classical = quadratic_form_classical(&g, &config, a)?;
            let quantum = quadratic_form_quantum(&g, &prep, &config, a)?;
            max_diff = max_diff.max((classical - quantum).abs());
            rows.push((config.to_string(), label, classical, quantum));
            Ok(())
        };
        for k in 0..vectors {
            let a: Vec<f64> = (0..g.vertex_count())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            push(format!("v{k}"), &a, &mut rows)?;
        }
        let ones = vec![1.0; g.vertex_count()];
        push("ones".into(), &ones, &mut rows)?;
    }
    let text = match output.format {
        Format::Json => pretty_json(json!({
            "provenance": json_provenance("quadform", json!({
                "graph": desc,
                "x": x,
                "alpha": prep.regs.alpha(),
                "layout": prep.regs.describe(),
                "seed": seed,
            })),
            "max_abs_difference": max_diff,
            "rows": rows.iter().map(|(p, l, c, q)| json!({
                "pattern": p, "vector": l, "classical": c, "quantum": q,
                "difference": (c - q).abs(),
            })).collect::<Vec<_>>(),
        })),
        format => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, l, c, q)| {
                    vec![
                        p.clone(),
                        l.clone(),
                        format!("{c:.12}"),
                        format!("{q:.12}"),
                        format!("{:.3e}", (c - q).abs()),
                    ]
                })
                .collect();
            let head = [
                provenance_line("quadform"),
                graph_line(&desc, &g),
                format!(
                    "x: {x}, alpha: {}, vectors per pattern: {vectors} random + ones, seed: {seed}",
                    prep.regs.alpha()
                ),
                format!("largest |classical - quantum|: {max_diff:.3e}"),
            ];
            let columns = ["pattern", "vector", "classical", "quantum", "difference"];
            let body = match format {
                Format::Csv => csv(&columns, &cells),
                _ => table(&columns, &cells),
            };
            header(&head) + &body
        }
    };
    emit(output, text)
}

fn cmd_costmodel(xs: &[u32], eps: f64, output: &OutputArgs) -> Result<(), AppError> {
    let mut rows = Vec::new();
    for &x in xs {
        let crossover = crossover_size(x, eps);
        rows.push((x, crossover));
    }
    let text = match output.format {
        Format::Json => pretty_json(json!({
            "provenance": json_provenance("costmodel", json!({"eps": eps})),
            "rows": rows.iter().map(|&(x, c)| match c {
                Some(n) => json!({
                    "x": x,
                    "crossover": n,
                    "quantum_steps": quantum_cost(n, x, eps),
                    "classical_steps": classical_cost(n, x),
                    "qubits": qubit_estimate(n as usize, n as usize, x as usize, eps),
                }),
                None => json!({"x": x, "crossover": null}),
            }).collect::<Vec<_>>(),
        })),
        format => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|&(x, c)| match c {
                    Some(n) => vec![
                        x.to_string(),
                        n.to_string(),
                        format!("{:.3e}", quantum_cost(n, x, eps)),
                        format!("{:.3e}", classical_cost(n, x)),
                        qubit_estimate(n as usize, n as usize, x as usize, eps).to_string(),
                    ],
                    None => vec![x.to_string(), "none".into(), "-".into(), "-".into(), "-".into()],
                })
                .collect();
            let head = [
                provenance_line("costmodel"),
                format!("per-step precision eps: {eps}"),
                "crossover: smallest element count where the quantum \
                 step count undercuts the classical baseline"
                    .to_string(),
            ];
            let columns = ["x", "crossover", "quantum_steps", "classical_steps", "qubits"];
            let body = match format {
                Format::Csv => csv(&columns, &cells),
                _ => table(&columns, &cells),
            };
            header(&head) + &body
        }
    };
    emit(output, text)
}
