use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hedonic_core::exhaustive::first_stable_exhaustive;
use hedonic_core::{
    cycle_no_is, fixture, random_instance, reduce_clique_enemy_star, reduce_clique_ins_star,
    reduce_clique_irins_tree, reduce_clique_scr_star, reduce_maxcut_star, run_dynamics, solve_core,
    solve_core_is, solve_dp, solve_is, star_greedy_enemy_ns, star_greedy_ir_ins,
    unique_clique_family, verify, BlockKind, DeviationRule, DynamicsOutcome, EnumerationBudget,
    Error, Game, Graph, Partition, PreferenceKind, RandomKind, Selection, StabilityConcept,
    Verdict, Witness, DEFAULT_SUBSET_CAP,
};
use serde_json::json;

use crate::format::{
    coalition_display, coalition_names, game_to_json, parse_game, parse_partition,
    partition_display, partition_names, FormatError, GameFile,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSTABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hedonic",
    version,
    about = "Hedonic games on communication graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,

    /// Worker threads for exhaustive searches (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,

    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Most connected coalitions a single enumeration may produce.
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP, global = true)]
    max_subsets: usize,
    /// Most feasible partitions an exhaustive search may visit.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    max_partitions: usize,
}

impl BudgetArgs {
    fn budget(self) -> EnumerationBudget {
        EnumerationBudget {
            max_partitions: self.max_partitions,
            max_subsets: self.max_subsets,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveConcept {
    Ir,
    Is,
    Cr,
    CrIs,
    Ns,
    Ins,
    IrIns,
    Scr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    ConnectedSubsets,
    FeasiblePartitions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Rule {
    Ns,
    Ins,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Fixture,
    CycleNoIs,
    EnemyStar,
    ScrStar,
    InsStar,
    IrinsTree,
    MaxcutStar,
    UniqueClique,
    Random,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a stable partition, or report that none exists.
    Solve {
        #[arg(long, value_enum)]
        concept: SolveConcept,
        game: PathBuf,
        /// Root the forest at this player.
        #[arg(long)]
        root: Option<String>,
        /// Search all feasible partitions instead of using a structural solver.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check a partition; prints STABLE or a witness.
    Verify {
        #[arg(long)]
        concept: StabilityConcept,
        game: PathBuf,
        partition: PathBuf,
    },
    /// List connected coalitions or feasible partitions.
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        game: PathBuf,
    },
    /// Write a game (or graph) of the given family to stdout.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Fixture name.
        #[arg(long)]
        name: Option<String>,
        /// Cycle length.
        #[arg(long)]
        k: Option<usize>,
        /// Clique threshold.
        #[arg(long)]
        t: Option<usize>,
        /// Size of the added clique.
        #[arg(long)]
        s: Option<usize>,
        /// Base graph file (weighted for maxcut-star).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        prefs: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run better-response dynamics.
    Dynamics {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Rule::Ns)]
        rule: Rule,
        /// Starting partition file (default: all singletons).
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Pick deviations uniformly at random with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(e) => match e {
                Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::NotATree
                | Error::NotAForest
                | Error::NotAStar
                | Error::NotEnemyOriented
                | Error::NotAdditive
                | Error::InfeasiblePartition
                | Error::InfeasibleStart => EXIT_PRECONDITION,
                _ => EXIT_USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => format!("{e} ({e:?})"),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    format: OutputFormat,
    budget: EnumerationBudget,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn json(&mut self, v: serde_json::Value) {
        let _ = writeln!(
            self.out,
            "{}",
            serde_json::to_string_pretty(&v).expect("json")
        );
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "warning: {}", s.as_ref());
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_game(path: &Path) -> std::result::Result<Game, Failure> {
    Ok(parse_game(&read(path)?)?)
}

fn player(graph: &Graph, name: &str) -> std::result::Result<usize, Failure> {
    graph
        .index_of(name)
        .ok_or_else(|| Failure::Usage(format!("unknown player {name:?}")))
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run<I, S>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        budget: cli.budget.budget(),
        out,
        err,
    };
    let result = pool.install(|| dispatch(&cli.command, &mut ctx));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn dispatch(command: &Command, ctx: &mut Ctx<'_>) -> Outcome {
    match command {
        Command::Solve {
            concept,
            game,
            root,
            exhaustive,
        } => solve(ctx, *concept, game, root.as_deref(), *exhaustive),
        Command::Verify {
            concept,
            game,
            partition,
        } => verify_cmd(ctx, *concept, game, partition),
        Command::Enumerate { what, game } => enumerate(ctx, *what, game),
        Command::Generate {
            family,
            name,
            k,
            t,
            s,
            graph,
            kind,
            n,
            prefs,
            seed,
        } => generate(
            ctx,
            *family,
            GenerateParams {
                name: name.as_deref(),
                k: *k,
                t: *t,
                s: *s,
                graph: graph.as_deref(),
                kind: kind.as_deref(),
                n: *n,
                prefs: prefs.as_deref(),
                seed: *seed,
            },
        ),
        Command::Dynamics {
            game,
            rule,
            start,
            max_steps,
            seed,
        } => dynamics(ctx, game, *rule, start.as_deref(), *max_steps, *seed),
    }
}

fn emit_partition(ctx: &mut Ctx<'_>, game: &Game, p: Option<&Partition>, method: &str) {
    let graph = game.graph();
    match (ctx.format, p) {
        (OutputFormat::Human, Some(p)) => {
            ctx.line("PARTITION");
            ctx.line(partition_display(graph, p));
        }
        (OutputFormat::Human, None) => ctx.line("NONE"),
        (OutputFormat::Machine, Some(p)) => ctx.json(json!({
            "result": "partition",
            "method": method,
            "partition": partition_names(graph, p),
        })),
        (OutputFormat::Machine, None) => ctx.json(json!({"result": "none", "method": method})),
    }
}

fn solve(
    ctx: &mut Ctx<'_>,
    concept: SolveConcept,
    path: &Path,
    root: Option<&str>,
    exhaustive: bool,
) -> Outcome {
    let game = load_game(path)?;
    let graph = game.graph();
    let root = root.map(|r| player(graph, r)).transpose()?;
    let cap = ctx.budget.max_subsets;

    if exhaustive || concept == SolveConcept::Scr {
        if concept == SolveConcept::Scr {
            ctx.warn("no structural algorithm is known for scr; searching all feasible partitions");
        }
        let found = match concept {
            SolveConcept::CrIs => {
                let all =
                    hedonic_core::find_stable_exhaustive(&game, StabilityConcept::CR, &ctx.budget)?;
                let mut found = None;
                for p in all {
                    if verify(&game, &p, StabilityConcept::IS, cap)?.is_stable() {
                        found = Some(p);
                        break;
                    }
                }
                found
            }
            other => first_stable_exhaustive(&game, core_concept(other), &ctx.budget)?,
        };
        emit_partition(ctx, &game, found.as_ref(), "exhaustive");
        return Ok(EXIT_OK);
    }

    let is_star = graph.star_center().is_some();
    let enemy = game
        .utilities()
        .is_some_and(|u| u.check_symmetric() && u.is_enemy_oriented());
    let (found, method) = match concept {
        SolveConcept::Ir => (Some(Partition::singletons(game.len())), "singletons"),
        SolveConcept::Is => (Some(solve_is(&game, root)?), "forest-is"),
        SolveConcept::Cr => (Some(solve_core(&game, root, cap)?), "forest-core"),
        SolveConcept::CrIs => (
            Some(solve_core_is(&game, root, cap)?),
            "forest-core-refined",
        ),
        SolveConcept::IrIns if is_star && root.is_none() => {
            (Some(star_greedy_ir_ins(&game)?), "star-greedy")
        }
        SolveConcept::Ns if is_star && enemy && root.is_none() => {
            (Some(star_greedy_enemy_ns(&game)?), "star-greedy")
        }
        SolveConcept::Ns | SolveConcept::Ins | SolveConcept::IrIns => (
            solve_dp(&game, core_concept(concept), root, cap)?,
            "forest-dp",
        ),
        SolveConcept::Scr => unreachable!("handled above"),
    };
    emit_partition(ctx, &game, found.as_ref(), method);
    Ok(EXIT_OK)
}

fn core_concept(c: SolveConcept) -> StabilityConcept {
    match c {
        SolveConcept::Ir => StabilityConcept::IR,
        SolveConcept::Is => StabilityConcept::IS,
        SolveConcept::Cr | SolveConcept::CrIs => StabilityConcept::CR,
        SolveConcept::Ns => StabilityConcept::NS,
        SolveConcept::Ins => StabilityConcept::INS,
        SolveConcept::IrIns => StabilityConcept::IrIns,
        SolveConcept::Scr => StabilityConcept::SCR,
    }
}

fn witness_json(graph: &Graph, w: &Witness) -> serde_json::Value {
    match w {
        Witness::IndividualDeviation { player, target } => json!({
            "kind": "deviation",
            "player": graph.name(*player),
            "target": target.as_ref().map(|t| coalition_names(graph, t)),
        }),
        Witness::BlockingCoalition { coalition, kind } => json!({
            "kind": match kind { BlockKind::Strong => "strong-block", BlockKind::Weak => "weak-block" },
            "coalition": coalition_names(graph, coalition),
        }),
    }
}

fn witness_line(graph: &Graph, w: &Witness) -> String {
    match w {
        Witness::IndividualDeviation { player, target } => format!(
            "{} moves to {}",
            graph.name(*player),
            target
                .as_ref()
                .map_or("{}".to_string(), |t| coalition_display(graph, t))
        ),
        Witness::BlockingCoalition { coalition, kind } => format!(
            "{} blocks {}",
            coalition_display(graph, coalition),
            match kind {
                BlockKind::Strong => "strongly",
                BlockKind::Weak => "weakly",
            }
        ),
    }
}

fn verify_cmd(
    ctx: &mut Ctx<'_>,
    concept: StabilityConcept,
    game: &Path,
    partition: &Path,
) -> Outcome {
    let game = load_game(game)?;
    let pi = parse_partition(game.graph(), &read(partition)?)?;
    let verdict = verify(&game, &pi, concept, ctx.budget.max_subsets)?;
    let graph = game.graph();
    match (&verdict, ctx.format) {
        (Verdict::Stable, OutputFormat::Human) => ctx.line("STABLE"),
        (Verdict::Stable, OutputFormat::Machine) => {
            ctx.json(json!({"verdict": "stable", "concept": concept.as_str()}))
        }
        (Verdict::Unstable(w), OutputFormat::Human) => {
            ctx.line("WITNESS");
            ctx.line(witness_line(graph, w));
        }
        (Verdict::Unstable(w), OutputFormat::Machine) => ctx.json(json!({
            "verdict": "witness",
            "concept": concept.as_str(),
            "witness": witness_json(graph, w),
        })),
    }
    Ok(if verdict.is_stable() {
        EXIT_OK
    } else {
        EXIT_UNSTABLE
    })
}

fn enumerate(ctx: &mut Ctx<'_>, what: What, path: &Path) -> Outcome {
    let graph = serde_json::from_str::<GameFile>(&read(path)?)
        .map_err(FormatError::from)?
        .to_graph()?;
    let items: Vec<Vec<Vec<String>>> = match what {
        What::ConnectedSubsets => graph
            .connected_subsets(None, None, ctx.budget.max_subsets)?
            .iter()
            .map(|x| vec![coalition_names(&graph, x)])
            .collect(),
        What::FeasiblePartitions => {
            hedonic_core::enumerate_feasible_partitions(&graph, &ctx.budget)?
                .iter()
                .map(|p| partition_names(&graph, p))
                .collect()
        }
    };
    match ctx.format {
        OutputFormat::Human => {
            ctx.line(format!("COUNT {}", items.len()));
            for item in &items {
                let blocks: Vec<String> = item
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(", ")))
                    .collect();
                ctx.line(blocks.join(" "));
            }
        }
        OutputFormat::Machine => {
            let key = match what {
                What::ConnectedSubsets => "coalitions",
                What::FeasiblePartitions => "partitions",
            };
            let payload: serde_json::Value = match what {
                What::ConnectedSubsets => json!(items
                    .into_iter()
                    .map(|mut i| i.remove(0))
                    .collect::<Vec<_>>()),
                What::FeasiblePartitions => json!(items),
            };
            ctx.json(json!({"count": payload.as_array().map_or(0, Vec::len), key: payload}));
        }
    }
    Ok(EXIT_OK)
}

struct GenerateParams<'a> {
    name: Option<&'a str>,
    k: Option<usize>,
    t: Option<usize>,
    s: Option<usize>,
    graph: Option<&'a Path>,
    kind: Option<&'a str>,
    n: Option<usize>,
    prefs: Option<&'a str>,
    seed: u64,
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("this family needs --{flag}")))
}

fn generate(ctx: &mut Ctx<'_>, family: Family, p: GenerateParams<'_>) -> Outcome {
    let base = |p: &GenerateParams<'_>| -> std::result::Result<GameFile, Failure> {
        let path = need(p.graph, "graph")?;
        serde_json::from_str::<GameFile>(&read(path)?)
            .map_err(|e| Failure::from(FormatError::from(e)))
    };
    let game = match family {
        Family::Fixture => fixture(need(p.name, "name")?)?,
        Family::CycleNoIs => cycle_no_is(need(p.k, "k")?)?,
        Family::EnemyStar => reduce_clique_enemy_star(&base(&p)?.to_graph()?),
        Family::ScrStar => reduce_clique_scr_star(&base(&p)?.to_graph()?, need(p.t, "t")?)?,
        Family::InsStar => reduce_clique_ins_star(&base(&p)?.to_graph()?, need(p.t, "t")?)?,
        Family::IrinsTree => reduce_clique_irins_tree(&base(&p)?.to_graph()?, need(p.t, "t")?)?,
        Family::MaxcutStar => reduce_maxcut_star(&base(&p)?.to_weighted_graph()?),
        Family::UniqueClique => {
            let h = unique_clique_family(&base(&p)?.to_graph()?, need(p.s, "s")?)?;
            let text = serde_json::to_string_pretty(&GameFile::from_graph(&h)).expect("json");
            ctx.line(text);
            return Ok(EXIT_OK);
        }
        Family::Random => {
            let kind: RandomKind = need(p.kind, "kind")?.parse()?;
            let prefs: PreferenceKind = need(p.prefs, "prefs")?.parse()?;
            random_instance(kind, need(p.n, "n")?, prefs, p.seed)?
        }
    };
    ctx.line(game_to_json(&game));
    Ok(EXIT_OK)
}

fn dynamics(
    ctx: &mut Ctx<'_>,
    path: &Path,
    rule: Rule,
    start: Option<&Path>,
    max_steps: usize,
    seed: Option<u64>,
) -> Outcome {
    let game = load_game(path)?;
    let graph = game.graph();
    let start = match start {
        Some(s) => parse_partition(graph, &read(s)?)?,
        None => Partition::singletons(game.len()),
    };
    let rule = match rule {
        Rule::Ns => DeviationRule::NS,
        Rule::Ins => DeviationRule::INS,
    };
    let selection = seed.map_or(Selection::First, Selection::Random);
    let trace = run_dynamics(&game, &start, rule, max_steps, selection)?;
    let verdict = match trace.outcome {
        DynamicsOutcome::Converged => "CONVERGED",
        DynamicsOutcome::StepLimit => "STEP_LIMIT",
    };
    let target = |t: &Option<hedonic_core::Coalition>| {
        t.as_ref()
            .map_or("{}".to_string(), |t| coalition_display(graph, t))
    };
    match ctx.format {
        OutputFormat::Human => {
            ctx.line(format!("{verdict} after {} steps", trace.steps.len()));
            for s in &trace.steps {
                let potential = match (&s.potential_before, &s.potential_after) {
                    (Some(a), Some(b)) => format!(", potential {a} -> {b}"),
                    _ => String::new(),
                };
                ctx.line(format!(
                    "{} leaves {} for {}{potential}",
                    graph.name(s.player),
                    coalition_display(graph, &s.source),
                    target(&s.target)
                ));
            }
            ctx.line("PARTITION");
            ctx.line(partition_display(graph, &trace.terminal));
        }
        OutputFormat::Machine => {
            let steps: Vec<serde_json::Value> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "player": graph.name(s.player),
                        "source": coalition_names(graph, &s.source),
                        "target": s.target.as_ref().map(|t| coalition_names(graph, t)),
                        "potential_before": s.potential_before.map(|v| v.to_string()),
                        "potential_after": s.potential_after.map(|v| v.to_string()),
                    })
                })
                .collect();
            ctx.json(json!({
                "outcome": verdict.to_lowercase(),
                "steps": steps,
                "partition": partition_names(graph, &trace.terminal),
            }));
        }
    }
    Ok(EXIT_OK)
}
