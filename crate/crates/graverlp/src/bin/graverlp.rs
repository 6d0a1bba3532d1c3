use clap::{Args, Parser, Subcommand};
use graverlp::arith::{Int, Rat};
use graverlp::engine::{augment_to_optimality, Rule};
use graverlp::error::Error;
use graverlp::instance::{Instance, VarDomain};
use graverlp::json::{
    self, nfold_to_doc, parse_input, rat_to_string, testset_to_csv, testset_to_doc,
    to_pretty_json, trace_to_csv, trace_to_doc, InputDoc, TraceDoc,
};
use graverlp::lab::{self, brute_force_optimum, BruteForceOutcome};
use graverlp::nfold::{solve_nfold, NFoldResolution, NFoldSpec};
use graverlp::testset::{circuits, graver_basis};
use graverlp::verify::{diameter_experiment, verify_instance, VerifyOptions};
use graverlp::Limits;
use serde::Serialize;
use std::fs;
use std::process::ExitCode;

/// Exact Graver-basis and circuit augmentation toolkit for bounded
/// standard-form linear and integer programs.
#[derive(Parser)]
#[command(name = "graverlp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for reports.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Seed for generated inputs ({"random": {...}} documents).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Box bound M for oracle comparisons (verify).
    #[arg(long, global = true)]
    box_bound: Option<u32>,

    /// Cap on completion sizes and enumeration counts.
    #[arg(long, global = true)]
    cap: Option<u64>,
}

#[derive(Args)]
struct InputArg {
    /// Instance, matrix, network, or n-fold JSON document.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Graver basis of the input's matrix.
    Graver(InputArg),
    /// Compute the circuit set of the input's matrix.
    Circuits(InputArg),
    /// Solve an instance by augmentation under a chosen rule.
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Augmentation rule.
        #[arg(long, value_parser = ["deepest", "dantzig", "steepest"])]
        rule: String,
        /// Starting point as comma-separated exact rationals; defaults to the
        /// lexicographically smallest feasible point.
        #[arg(long)]
        x0: Option<String>,
    },
    /// Run every applicable augmentation bound against an instance.
    Verify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        x0: Option<String>,
    },
    /// Phase-I/phase-II N-fold pipeline.
    Nfold {
        /// N-fold spec JSON ({"A": ..., "B": ..., "N": ...}).
        #[arg(long)]
        spec: String,
        /// Right-hand side, comma-separated integers.
        #[arg(long)]
        b: String,
        /// Cost vector, comma-separated integers.
        #[arg(long)]
        c: String,
        /// Upper bounds, comma-separated integers.
        #[arg(long)]
        u: String,
        #[arg(long, default_value = "integer", value_parser = ["integer", "real"])]
        domain: String,
    },
    /// All-pairs circuit-distance experiment over the instance's vertices.
    Diameter(InputArg),
    /// Exact brute-force optimum (box or vertex enumeration).
    Oracle(InputArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ResourceLimit(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn limits_from(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.testset_elements = cap as usize;
        limits.lattice_points = cap;
        limits.vertex_patterns = cap;
    }
    limits
}

fn read_input(path: &str) -> Result<InputDoc, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read '{path}': {e}")))?;
    parse_input(&text)
}

fn read_raw(path: &str) -> Result<serde_json::Value, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read '{path}': {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

#[derive(serde::Deserialize)]
struct RandomDoc {
    d: usize,
    n: usize,
    #[serde(default = "default_entry_bound")]
    entry_bound: i64,
    #[serde(default = "default_u_bound")]
    u_bound: i64,
}

fn default_entry_bound() -> i64 {
    3
}

fn default_u_bound() -> i64 {
    3
}

/// Instance inputs: an instance document, a network (its max-flow model), or
/// a {"random": {...}} generator document seeded by --seed.
fn resolve_instance(cli: &Cli, path: &str) -> Result<(Instance, VerifyOptions), Error> {
    let raw = read_raw(path)?;
    if let Some(spec) = raw.get("random") {
        let doc: RandomDoc = serde_json::from_value(spec.clone())
            .map_err(|e| Error::InvalidInput(format!("malformed random document: {e}")))?;
        let generated =
            lab::random_instance(cli.seed, doc.d, doc.n, doc.entry_bound, doc.u_bound)?;
        return Ok((
            generated.instance,
            VerifyOptions {
                box_bound: cli.box_bound,
                network: None,
            },
        ));
    }
    match parse_input(&raw.to_string())? {
        InputDoc::Instance(inst) => Ok((
            inst,
            VerifyOptions {
                box_bound: cli.box_bound,
                network: None,
            },
        )),
        InputDoc::Network(net) => {
            let inst = lab::maxflow_instance(&net)?;
            Ok((
                inst,
                VerifyOptions {
                    box_bound: cli.box_bound,
                    network: Some(net),
                },
            ))
        }
        InputDoc::Matrix(_) | InputDoc::NFold(_) => Err(Error::InvalidInput(
            "this command needs a full instance (A, b, c, u, domain) or a network".to_string(),
        )),
    }
}

/// Matrix inputs for test-set commands: any document with a matrix in it.
fn resolve_matrix(doc: InputDoc) -> Result<graverlp::IntegerMatrix, Error> {
    Ok(match doc {
        InputDoc::Matrix(m) => m,
        InputDoc::Instance(inst) => inst.matrix().clone(),
        InputDoc::NFold(spec) => graverlp::nfold::build_nfold(&spec),
        InputDoc::Network(net) => lab::maxflow_instance(&net)?.matrix().clone(),
    })
}

fn parse_rat_vec(text: &str) -> Result<Vec<Rat>, Error> {
    text.split(',')
        .map(|s| json::rat_from_str(s.trim()))
        .collect()
}

fn parse_int_vec(text: &str) -> Result<Vec<Int>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map(Int::from)
                .map_err(|_| Error::InvalidInput(format!("not an integer: '{s}'")))
        })
        .collect()
}

fn emit(cli: &Cli, text: String) -> Result<(), Error> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write '{path}': {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SolveSummary {
    instance: String,
    rule: String,
    status: &'static str,
    optimal_objective: String,
    optimum: Vec<String>,
    rule_steps: usize,
    cleanup_steps: usize,
    trace: TraceDoc,
}

#[derive(Serialize)]
struct OracleSummary {
    instance: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<Vec<String>>,
}

#[derive(Serialize)]
struct NFoldSummary {
    spec: json::NFoldDoc,
    domain: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase1_objective: Option<String>,
    graver_size: usize,
    graver_complexity: String,
    phase1_steps: usize,
    phase2_steps: Option<usize>,
    phase1_trace: TraceDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase2_trace: Option<TraceDoc>,
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let limits = limits_from(cli);
    match &cli.command {
        Command::Graver(input) => {
            let matrix = resolve_matrix(read_input(&input.input)?)?;
            let tset = graver_basis(&matrix, &limits)?;
            let text = match cli.format.as_str() {
                "csv" => testset_to_csv(&tset)?,
                _ => to_pretty_json(&testset_to_doc(&tset)?),
            };
            emit(cli, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Circuits(input) => {
            let matrix = resolve_matrix(read_input(&input.input)?)?;
            let tset = circuits(&matrix);
            let text = match cli.format.as_str() {
                "csv" => testset_to_csv(&tset)?,
                _ => to_pretty_json(&testset_to_doc(&tset)?),
            };
            emit(cli, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { input, rule, x0 } => {
            let (inst, _) = resolve_instance(cli, &input.input)?;
            let rule: Rule = rule.parse()?;
            let start = match x0 {
                Some(text) => {
                    let x = parse_rat_vec(text)?;
                    if !inst.is_feasible(&x) {
                        return Err(Error::NotFeasible);
                    }
                    x
                }
                None => graverlp::verify::default_start(&inst, &limits)?,
            };
            let tset = inst.test_set(&limits)?;
            let out = augment_to_optimality(&inst, &start, rule, &tset, &limits)?;
            let summary = SolveSummary {
                instance: inst.name().to_string(),
                rule: rule.to_string(),
                status: "optimal",
                optimal_objective: rat_to_string(&inst.objective(&out.optimum)),
                optimum: out.optimum.iter().map(rat_to_string).collect(),
                rule_steps: out.trace.rule_step_count(),
                cleanup_steps: out.trace.cleanup_step_count(),
                trace: trace_to_doc(&out.trace)?,
            };
            let text = match cli.format.as_str() {
                "csv" => trace_to_csv(&out.trace)?,
                _ => to_pretty_json(&summary),
            };
            emit(cli, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, x0 } => {
            let (inst, opts) = resolve_instance(cli, &input.input)?;
            let start = match x0 {
                Some(text) => Some(parse_rat_vec(text)?),
                None => None,
            };
            let report = verify_instance(&inst, start.as_deref(), &opts, &limits)?;
            let text = match cli.format.as_str() {
                "csv" => report.to_csv(),
                _ => to_pretty_json(&report),
            };
            emit(cli, text)?;
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                for row in report.failed_rows() {
                    eprintln!("bound violated: {} — {}", row.name, row.detail);
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Nfold {
            spec,
            b,
            c,
            u,
            domain,
        } => {
            let raw = read_raw(spec)?;
            let doc: json::NFoldDoc = serde_json::from_value(raw)
                .map_err(|e| Error::InvalidInput(format!("malformed n-fold document: {e}")))?;
            let spec: NFoldSpec = json::nfold_from_doc(&doc)?;
            let rhs = parse_int_vec(b)?;
            let cost = parse_int_vec(c)?;
            let upper = parse_int_vec(u)?;
            let domain_enum = match domain.as_str() {
                "real" => VarDomain::Real,
                _ => VarDomain::Integer,
            };
            let report = solve_nfold(&spec, &rhs, &cost, &upper, domain_enum, &limits)?;
            let (status, objective, point, phase1_objective) = match &report.resolution {
                NFoldResolution::Optimal { point, objective } => (
                    "optimal",
                    Some(rat_to_string(objective)),
                    Some(point.iter().map(rat_to_string).collect::<Vec<_>>()),
                    None,
                ),
                NFoldResolution::Infeasible { phase1_objective } => (
                    "infeasible",
                    None,
                    None,
                    Some(rat_to_string(phase1_objective)),
                ),
            };
            let summary = NFoldSummary {
                spec: nfold_to_doc(&spec)?,
                domain: domain.clone(),
                status,
                objective,
                point,
                phase1_objective,
                graver_size: report.graver_size,
                graver_complexity: report.graver_complexity.to_string(),
                phase1_steps: report.phase1_trace.rule_step_count(),
                phase2_steps: report.phase2_trace.as_ref().map(|t| t.rule_step_count()),
                phase1_trace: trace_to_doc(&report.phase1_trace)?,
                phase2_trace: report
                    .phase2_trace
                    .as_ref()
                    .map(trace_to_doc)
                    .transpose()?,
            };
            emit(cli, to_pretty_json(&summary))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Diameter(input) => {
            let (inst, _) = resolve_instance(cli, &input.input)?;
            let report = diameter_experiment(&inst, &limits)?;
            emit(cli, to_pretty_json(&report))?;
            if report.within_bound {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "bound violated: circuit-diameter — max distance {} > {}",
                    report.max_distance, report.bound
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Oracle(input) => {
            let (inst, _) = resolve_instance(cli, &input.input)?;
            let outcome = brute_force_optimum(&inst, &limits)?;
            let summary = match outcome {
                BruteForceOutcome::Optimal { point, objective } => OracleSummary {
                    instance: inst.name().to_string(),
                    status: "optimal",
                    objective: Some(rat_to_string(&objective)),
                    point: Some(point.iter().map(rat_to_string).collect()),
                },
                BruteForceOutcome::Infeasible => OracleSummary {
                    instance: inst.name().to_string(),
                    status: "infeasible",
                    objective: None,
                    point: None,
                },
            };
            emit(cli, to_pretty_json(&summary))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
