use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use modcard_core::classes::GraphClass;
use modcard_core::gadgets::{
    blueprint_stars_mc, build_reduction, check_witness, deletion_star_graph, materialize, retention_star_graph,
    smc_from_clique, verify_deletion_graph, verify_retention_graph, witness_from_clique, Direction, GadgetReport,
    ReductionBlueprint, ReductionCase, ValidTriple, VerifyPath, GADGET_CAP, MATERIALIZE_CAP,
};
use modcard_core::gmc::{compute_gmc, exhaustive_gmc, iterated_type_partition, neighborhood_diversity, EXHAUSTIVE_GMC_CAP};
use modcard_core::graph::Graph;
use modcard_core::modular::{md_tree, modular_width, ModularPartition};
use modcard_core::solvers::{
    brute_force_ldd, solve_bdd_gmc, solve_ldd_nd, BddOptions, ClusterForm, LddInstance, SolveOutcome, BRUTE_FORCE_CAP,
    ND_CAP,
};
use modcard_core::tables::{
    brute_force_deletion_table, cluster_piecewise, compress_step_table, deletion_table_with_cap,
    retention_table_with_cap, PiecewiseLinearFn, StepTable, DELETION_CAP, RETENTION_CAP,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dto::*;
use crate::io::{format_edge_list, format_smc, parse_edge_list, parse_smc};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "modcard", version, about = "Modular-decomposition parameters, degree tables and exact LDD solvers")]
pub struct Cli {
    /// Override the brute-force / materialization cap of the chosen operation.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Edge-list file: `n m`, then `u v` per line.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Modular decomposition tree and modular-width.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Validate and re-emit a tree produced by this command.
        #[arg(long, conflicts_with = "input")]
        from_json: Option<PathBuf>,
    },
    /// Minimum G-modular partition.
    Gmc {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Exhaustive subset search (any class, small graphs).
        #[arg(long)]
        exhaustive: bool,
        /// Check a partition file against the graph and class, then re-emit it.
        #[arg(long)]
        from_json: Option<PathBuf>,
    },
    /// Neighborhood diversity (twin classes).
    Nd {
        #[command(flatten)]
        input: Input,
    },
    /// Iterated type partition.
    Itp {
        #[command(flatten)]
        input: Input,
    },
    /// Degree deletion or retention table.
    Table {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TableKindArg::Deletion)]
        kind: TableKindArg,
        /// Skip closed forms and enumerate.
        #[arg(long)]
        brute_force: bool,
        #[arg(long, conflicts_with = "input")]
        from_json: Option<PathBuf>,
    },
    /// Succinct piecewise-linear form of a table, or the cluster closed form of a graph.
    Compress {
        /// Table JSON as written by `table`.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Cluster graph: emit its convex ceiling-mode function.
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from_json: Option<PathBuf>,
        /// Also report the evaluated values on 0..=N.
        #[arg(long)]
        eval_to: Option<i64>,
    },
    /// Bounded degree deletion over a G-modular partition.
    SolveBdd {
        #[arg(long)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ClusterFormArg::Convex)]
        cluster_form: ClusterFormArg,
    },
    /// (alpha, beta) linear degree domination.
    SolveLdd {
        /// `p/q`
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LddMethod::Nd)]
        method: LddMethod,
    },
    /// Brute-force minimum LDD solution.
    Oracle {
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        /// Budget; defaults to n.
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Build a reduction blueprint from a symmetric multicolored clique instance.
    Reduce(Box<ReduceArgs>),
    /// Check per-factor deletion counts against a blueprint.
    CheckWitness { blueprint: PathBuf, witness: PathBuf },
    /// Build a star gadget for a triple and verify its defining conditions.
    VerifyGadget {
        #[arg(long, value_enum)]
        kind: GadgetKind,
        /// `a0,a1,...,an`
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
        /// `c(a0),c(a1),...,c(an)`
        #[arg(long, value_delimiter = ',')]
        costs: Vec<String>,
        /// Verify this graph instead of the constructed one.
        #[command(flatten)]
        input: Input,
        /// Retention parameter p for `--input` (constructed gadgets use their own).
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        out_graph: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, value_enum, required_unless_present = "from_json")]
    pub case: Option<CaseArg>,
    /// alpha for the alpha01 case, `p/q`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// beta for the alpha01 case.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<i64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Cross-colour edge density of the generated instance, `p/q`.
    #[arg(long, default_value = "1/2")]
    pub density: String,
    /// Read the instance instead of generating one.
    #[arg(long)]
    pub smc: Option<PathBuf>,
    #[arg(long)]
    pub smc_out: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-factor counts derived from the (planted or found) clique.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    /// Write the concrete graph (scaled blueprints only, capped).
    #[arg(long)]
    pub materialize: Option<PathBuf>,
    #[arg(long, conflicts_with = "case")]
    pub from_json: Option<PathBuf>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub beta_abs: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub p_prime: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableKindArg {
    Deletion,
    Retention,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClusterFormArg {
    Convex,
    Step,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LddMethod {
    Nd,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CaseArg {
    Alpha0,
    Alpha01,
    Alpha1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GadgetKind {
    Deletion,
    Retention,
}

/// JSON for stdout plus the exit code it carries.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(v: impl Serialize) -> Result<Self, CliError> {
        Ok(Report { json: serde_json::to_value(v)?, code: 0 })
    }

    fn verdict(v: impl Serialize, yes: bool) -> Result<Self, CliError> {
        Ok(Report { json: serde_json::to_value(v)?, code: if yes { 0 } else { 1 } })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_json(path: &Path, v: &impl Serialize) -> Result<(), CliError> {
    write(path, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn graph(input: &Input) -> Result<Graph, CliError> {
    let path = input.input.as_ref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
    parse_edge_list(&read(path)?)
}

fn class(s: &str) -> Result<GraphClass, CliError> {
    s.parse::<GraphClass>().map_err(|e| CliError::Usage(e.to_string()))
}

fn solve_dto(o: &SolveOutcome) -> SolveDto {
    SolveDto {
        feasible: o.witness.is_some(),
        witness: o.witness.as_ref().map(|w| w.to_vec()),
        branches_explored: o.branches_explored,
    }
}

fn gadget_dto(kind: &str, r: &GadgetReport, vertices: usize, p: Option<&BigInt>, l: Option<usize>) -> GadgetDto {
    GadgetDto {
        kind: kind.into(),
        holds: r.holds(),
        path: match r.path {
            VerifyPath::Enumeration => "enumeration",
            VerifyPath::Structural => "structural",
        }
        .into(),
        cond1: r.cond1,
        cond2: r.cond2,
        cond3: r.cond3,
        vertices,
        p: p.map(BigInt::to_string),
        l,
    }
}

/// Parses `argv` and runs one command.
pub fn run(cli: Cli) -> Result<Report, CliError> {
    let cap = cli.cap;
    match cli.cmd {
        Command::Decompose { input, from_json } => {
            if let Some(path) = from_json {
                let t: TreeDto = read_json(&path)?;
                t.validate()?;
                return Report::ok(t);
            }
            let g = graph(&input)?;
            let t = md_tree(&g)?;
            Report::ok(TreeDto::new(&t, modular_width(&g)))
        }
        Command::Gmc { class: c, input, output, exhaustive, from_json } => {
            let c = class(&c)?;
            let g = graph(&input)?;
            let dto = if let Some(path) = from_json {
                let d: PartitionDto = read_json(&path)?;
                let sets = d.to_sets(g.n())?;
                ModularPartition::new(&g, sets.clone())?;
                if let Some(b) = sets.iter().find(|b| !c.recognize_within(&g, b)) {
                    return Err(CliError::Parse(format!("block {:?} is not in class {c}", b.to_vec())));
                }
                PartitionDto::new(Some(c.to_string()), &sets)
            } else {
                let res = if exhaustive || !c.is_trivially_mergeable() {
                    exhaustive_gmc(&c, &g, cap.unwrap_or(EXHAUSTIVE_GMC_CAP))?
                } else {
                    compute_gmc(&c, &g)?
                };
                PartitionDto::new(Some(c.to_string()), res.partition.blocks())
            };
            if let Some(out) = output {
                write_json(&out, &dto)?;
            }
            Report::ok(dto)
        }
        Command::Nd { input } => {
            let g = graph(&input)?;
            let res = neighborhood_diversity(&g)?;
            Report::ok(PartitionDto::new(Some("ki".into()), res.partition.blocks()))
        }
        Command::Itp { input } => {
            let g = graph(&input)?;
            Report::ok(json!({ "itp": iterated_type_partition(&g)? }))
        }
        Command::Table { input, kind, brute_force, from_json } => {
            if let Some(path) = from_json {
                let d: TableDto = read_json(&path)?;
                let t = StepTable::try_from(&d)?;
                return Report::ok(TableDto::from(&t));
            }
            let g = graph(&input)?;
            let t = match kind {
                TableKindArg::Deletion if brute_force => brute_force_deletion_table(&g, cap.unwrap_or(DELETION_CAP))?,
                TableKindArg::Deletion => deletion_table_with_cap(&g, cap.unwrap_or(DELETION_CAP))?,
                TableKindArg::Retention => retention_table_with_cap(&g, cap.unwrap_or(RETENTION_CAP))?,
            };
            Report::ok(TableDto::from(&t))
        }
        Command::Compress { table, input, from_json, eval_to } => {
            let f = match (table, input.input.is_some(), from_json) {
                (Some(path), false, None) => compress_step_table(&StepTable::try_from(&read_json::<TableDto>(&path)?)?),
                (None, true, None) => cluster_piecewise(&graph(&input)?)?,
                (None, false, Some(path)) => PiecewiseLinearFn::try_from(&read_json::<PiecewiseDto>(&path)?)?,
                _ => return Err(CliError::Usage("give exactly one of --table, --input, --from-json".into())),
            };
            let mut v = serde_json::to_value(PiecewiseDto::from(&f))?;
            if let Some(hi) = eval_to {
                let vals: Vec<String> = (0..=hi).map(|x| format_rational(&f.eval(x))).collect();
                v["values"] = json!(vals);
            }
            Report::ok(v)
        }
        Command::SolveBdd { class: c, beta, q, input, cluster_form } => {
            let c = class(&c)?;
            let g = graph(&input)?;
            let opts = BddOptions {
                cluster_form: match cluster_form {
                    ClusterFormArg::Convex => ClusterForm::Convex,
                    ClusterFormArg::Step => ClusterForm::Step,
                },
                table_cap: cap.unwrap_or(DELETION_CAP),
            };
            let out = solve_bdd_gmc(&g, q, beta, &c, &opts)?;
            let d = solve_dto(&out);
            let yes = d.feasible;
            Report::verdict(d, yes)
        }
        Command::SolveLdd { alpha, beta, q, input, method } => {
            let inst = LddInstance::new(graph(&input)?, parse_rational(&alpha)?, beta, q)?;
            let d = match method {
                LddMethod::Nd => solve_dto(&solve_ldd_nd(&inst, cap.unwrap_or(ND_CAP))?),
                LddMethod::Brute => {
                    let w = brute_force_ldd(&inst, cap.unwrap_or(BRUTE_FORCE_CAP))?;
                    SolveDto { feasible: w.is_some(), witness: w.map(|w| w.to_vec()), branches_explored: 0 }
                }
            };
            let yes = d.feasible;
            Report::verdict(d, yes)
        }
        Command::Oracle { alpha, beta, q, input } => {
            let g = graph(&input)?;
            let q = q.unwrap_or(g.n());
            let inst = LddInstance::new(g, parse_rational(&alpha)?, beta, q)?;
            let w = brute_force_ldd(&inst, cap.unwrap_or(BRUTE_FORCE_CAP))?;
            let d = OracleDto { feasible: w.is_some(), minimum: w.as_ref().map(|w| w.len()), witness: w.map(|w| w.to_vec()) };
            let yes = d.feasible;
            Report::verdict(d, yes)
        }
        Command::Reduce(args) => reduce(*args, cli.seed, cap),
        Command::CheckWitness { blueprint, witness } => {
            let bp = ReductionBlueprint::try_from(&read_json::<BlueprintDto>(&blueprint)?)?;
            let w: WitnessDto = read_json(&witness)?;
            let rep = check_witness(&bp, &w.counts()?)?;
            let d = WitnessReportDto::from(&rep);
            let yes = d.passed;
            Report::verdict(d, yes)
        }
        Command::VerifyGadget { kind, values, costs, input, p, l, out_graph } => {
            let parse = |v: &[String]| -> Result<Vec<BigInt>, CliError> {
                v.iter().map(|s| s.trim().parse::<BigInt>().map_err(|_| CliError::Parse(format!("bad integer {s:?}")))).collect()
            };
            let dir = match kind {
                GadgetKind::Deletion => Direction::Decreasing,
                GadgetKind::Retention => Direction::Increasing,
            };
            let t = ValidTriple::new(dir, parse(&values)?, parse(&costs)?)?;
            let gcap = cap.unwrap_or(GADGET_CAP);
            let (g, d) = match kind {
                GadgetKind::Deletion => {
                    let g = if input.input.is_some() { graph(&input)? } else { deletion_star_graph(&t, gcap)? };
                    let r = verify_deletion_graph(&g, &t)?;
                    let d = gadget_dto("deletion", &r, g.n(), None, None);
                    (g, d)
                }
                GadgetKind::Retention => {
                    let (g, p, l) = if input.input.is_some() {
                        let p = p.ok_or_else(|| CliError::Usage("--p is required with --input".into()))?;
                        let p = p.parse::<BigInt>().map_err(|_| CliError::Parse(format!("bad integer {p:?}")))?;
                        (graph(&input)?, p, l.unwrap_or(1))
                    } else {
                        let gad = retention_star_graph(&t, gcap)?;
                        (gad.graph, gad.p, gad.l)
                    };
                    let r = verify_retention_graph(&g, &t, &p, l)?;
                    let d = gadget_dto("retention", &r, g.n(), Some(&p), Some(l));
                    (g, d)
                }
            };
            if let Some(path) = out_graph {
                write(&path, &format_edge_list(&g))?;
            }
            let yes = d.holds;
            Report::verdict(d, yes)
        }
    }
}

fn reduce(a: ReduceArgs, seed: u64, cap: Option<usize>) -> Result<Report, CliError> {
    if let Some(path) = &a.from_json {
        let d: BlueprintDto = read_json(path)?;
        let bp = ReductionBlueprint::try_from(&d)?;
        return Report::ok(BlueprintDto::from(&bp));
    }
    let case = match (a.case.expect("clap requires --case"), &a.alpha, a.beta) {
        (CaseArg::Alpha0, None, None) => ReductionCase::Alpha0,
        (CaseArg::Alpha1, None, None) => ReductionCase::Alpha1,
        (CaseArg::Alpha01, Some(al), Some(beta)) => ReductionCase::Alpha01 { alpha: parse_rational(al)?, beta },
        (CaseArg::Alpha01, _, _) => return Err(CliError::Usage("alpha01 needs --alpha and --beta".into())),
        _ => return Err(CliError::Usage("--alpha/--beta only apply to alpha01".into())),
    };
    let (smc, clique) = match &a.smc {
        Some(path) => {
            let smc = parse_smc(&read(path)?)?;
            let c = smc.find_clique();
            (smc, c)
        }
        None => {
            let (k, n) = a.k.zip(a.n).ok_or_else(|| CliError::Usage("--k and --n are required without --smc".into()))?;
            let (smc, pick) = smc_from_clique(k, n, parse_rational(&a.density)?, seed)?;
            (smc, Some(pick))
        }
    };
    if let Some(path) = &a.smc_out {
        write(path, &format_smc(&smc))?;
    }
    let ov = OverrideArgs {
        r: a.r.clone(),
        s: a.s.clone(),
        beta_abs: a.beta_abs.clone(),
        x: a.x.clone(),
        y: a.y.clone(),
        m: a.m.clone(),
        p_prime: a.p_prime.clone(),
    }
    .parse()?;
    let bp = build_reduction(&smc, &case, &ov)?;
    let dto = BlueprintDto::from(&bp);
    let mut witness_ok = Value::Null;
    if let Some(path) = &a.witness_out {
        let Some(pick) = &clique else {
            return Err(CliError::Usage("instance has no multicolored clique; no witness to write".into()));
        };
        let chi = witness_from_clique(&bp, &smc, pick)?;
        witness_ok = json!(check_witness(&bp, &chi)?.passed());
        let w = WitnessDto { counts: chi.iter().map(BigInt::to_string).collect(), clique: Some(pick.clone()) };
        write_json(path, &w)?;
    }
    let mut vertices = Value::Null;
    if let Some(path) = &a.materialize {
        let m = materialize(&bp, cap.unwrap_or(MATERIALIZE_CAP))?;
        write(path, &format_edge_list(&m.graph))?;
        vertices = json!(m.graph.n());
    }
    match &a.out {
        Some(path) => {
            write_json(path, &dto)?;
            Report::ok(json!({
                "case": dto.case,
                "k": bp.k,
                "n": bp.n,
                "scaled": bp.scaled,
                "q": dto.scalars.q,
                "factors": bp.factors.len(),
                "stars_mc": blueprint_stars_mc(&bp),
                "clique": clique,
                "witness_passed": witness_ok,
                "materialized_vertices": vertices,
            }))
        }
        None => Report::ok(dto),
    }
}

/// Full entry point: parse, run, print, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(r) => {
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{}", r.json);
            r.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
