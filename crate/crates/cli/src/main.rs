use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use issue_control::exact::Exhaustive;
use issue_control::generators::{generate, GenConfig, GenKind};
use issue_control::harness::{self, ExperimentSpec, Solver, SweepParam};
use issue_control::ilp::export_ilp;
use issue_control::io::{read_election, write_election, MarginRows};
use issue_control::poly;
use issue_control::reductions::{
    self, Graph, HittingSetInstance, Reduced, ReductionBundle, X3cInstance, ZeroOneIlp,
};
use issue_control::{Election, Error, NormOrder, TieRule};

#[derive(Parser)]
#[command(
    name = "issue-control",
    version,
    about = "Election control by issue selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolveOpts {
    /// Election instance file (JSON).
    file: PathBuf,
    #[arg(long, default_value = "worst")]
    tie: TieRule,
    /// Norm order; defaults to the file's `p`, then 2.
    #[arg(long)]
    p: Option<u32>,
    /// Largest issue count searched exhaustively.
    #[arg(long, default_value_t = issue_control::subsets::DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Exhaustive,
    Greedy,
    Bsi,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Exhaustive => Solver::Exhaustive,
            SolverArg::Greedy => Solver::Greedy,
            SolverArg::Bsi => Solver::BestSingleIssue,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Siw,
    Aoi,
    #[value(name = "2v-bc")]
    TwoVoterBest,
    #[value(name = "2v-wc")]
    TwoVoterWorst,
    #[value(name = "3v-wc")]
    ThreeVoterWorst,
    Bsi,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Gaussian,
    Tree,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SourceKind {
    Ilp,
    Mis,
    X3c,
    Hittingset,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Lift {
    None,
    Worstcase,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Target {
    Svis,
    Tcis,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some issue set makes the target win.
    Solve {
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long, value_enum, default_value = "exhaustive")]
        solver: SolverArg,
    },
    /// Maximize the number of voters won by the target.
    Maxsupport {
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long, value_enum, default_value = "exhaustive")]
        solver: SolverArg,
        /// Also write the integer program for this instance.
        #[arg(long)]
        export_lp: Option<PathBuf>,
    },
    /// Run a polynomial-time algorithm for a restricted binary election.
    Poly {
        #[command(flatten)]
        opts: SolveOpts,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
    },
    /// Greedy Max Support heuristic.
    Greedy {
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Write a random election.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Norm order stored in the file (Gaussian instances only).
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a reduced instance from a source problem.
    Reduce {
        #[arg(long = "from", value_enum)]
        source: SourceKind,
        /// Source file: JSON for ilp, x3c and hittingset, DIMACS for mis.
        #[arg(long)]
        input: PathBuf,
        /// Reduced instance; provenance goes to `<out>.provenance.json`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        lift: Lift,
        /// Target problem for ILP sources.
        #[arg(long, value_enum, default_value = "svis")]
        target: Target,
        /// Emit the three-voter X3C election exactly as constructed, without
        /// the extra all-zero voter.
        #[arg(long)]
        literal: bool,
        /// Turn a margin instance into a concrete election.
        #[arg(long)]
        realize: bool,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Run a parameter sweep and write one CSV row per instance and solver.
    Experiment(ExperimentArgs),
    /// Write the integer program for an election.
    ExportLp {
        file: PathBuf,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw mean-ratio plots from an experiment CSV.
    Plot {
        csv: PathBuf,
        #[arg(long, default_value = "plots")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML file with experiment fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    sweep: Option<SweepParam>,
    /// Comma-separated sweep values.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<usize>>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    tie: Option<TieRule>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated from exhaustive, greedy, best_single_issue.
    #[arg(long, value_delimiter = ',')]
    solvers: Option<Vec<Solver>>,
    /// Record wall-clock milliseconds (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Also write mean ratios per sweep value and solver.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Also draw plots into this directory.
    #[arg(long)]
    plots: Option<PathBuf>,
}

fn kind(k: KindArg) -> GenKind {
    match k {
        KindArg::Gaussian => GenKind::Gaussian,
        KindArg::Tree => GenKind::TreeBinary,
    }
}

fn load(opts: &SolveOpts) -> Result<(Election, NormOrder)> {
    let text = fs::read_to_string(&opts.file)
        .with_context(|| format!("reading {}", opts.file.display()))?;
    let doc = read_election(&text)?;
    let norm = match opts.p {
        Some(p) => NormOrder::new(p)?,
        None => doc.p.unwrap_or_default(),
    };
    Ok((doc.election, norm))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { opts, solver } => {
            let (e, norm) = load(&opts)?;
            let out = match Solver::from(solver) {
                Solver::Exhaustive => match Exhaustive::new(opts.cap).isc(&e, norm, opts.tie)? {
                    Some(s) => e.outcome(&s, norm, opts.tie)?,
                    None => Exhaustive::new(opts.cap).max_support(&e, norm, opts.tie)?,
                },
                s => s.run(&e, norm, opts.tie, opts.cap)?,
            };
            print!("{}", harness::render_outcome(&out));
        }
        Command::Maxsupport {
            opts,
            solver,
            export_lp,
        } => {
            let (e, norm) = load(&opts)?;
            let out = Solver::from(solver).run(&e, norm, opts.tie, opts.cap)?;
            print!("{}", harness::render_outcome(&out));
            if let Some(path) = export_lp {
                write(&path, &export_ilp(&e, norm).to_lp())?;
            }
        }
        Command::Poly { opts, algorithm } => {
            let (e, norm) = load(&opts)?;
            let answer = match algorithm {
                Algorithm::Siw => poly::single_issue_win(&e)?,
                Algorithm::Aoi => poly::agree_on_issues(&e)?,
                Algorithm::TwoVoterBest => poly::two_voter_best_case(&e)?,
                Algorithm::TwoVoterWorst => poly::two_voter_worst_case(&e)?,
                Algorithm::ThreeVoterWorst => poly::three_voter_worst_case(&e)?,
                Algorithm::Bsi => {
                    print!(
                        "{}",
                        harness::render_outcome(&poly::best_single_issue(&e, norm, opts.tie))
                    );
                    return Ok(());
                }
            };
            println!("decision: {}", answer.decision);
            if let Some(w) = answer.witness {
                println!("witness: {w}");
            }
        }
        Command::Greedy { opts } => {
            let (e, norm) = load(&opts)?;
            print!(
                "{}",
                harness::render_outcome(&Solver::Greedy.run(&e, norm, opts.tie, opts.cap)?)
            );
        }
        Command::Generate {
            kind: k,
            m,
            n,
            l,
            seed,
            p,
            out,
        } => {
            let cfg = GenConfig {
                num_candidates: m,
                num_voters: n,
                num_issues: l,
                seed,
                kind: kind(k),
            };
            let e = generate(&cfg)?;
            let p = p.map(NormOrder::new).transpose()?;
            write(&out, &write_election(&e, p))?;
        }
        Command::Reduce {
            source,
            input,
            out,
            lift,
            target,
            literal,
            realize,
            p,
        } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let parse = |e: serde_json::Error| Error::Parse(e.to_string());
            let mut bundle = match source {
                SourceKind::Ilp => {
                    let src: ZeroOneIlp = serde_json::from_str(&text).map_err(parse)?;
                    match target {
                        Target::Svis => reductions::ilp_to_svis(&src),
                        Target::Tcis => reductions::ilp_to_tcis(&src),
                    }
                }
                SourceKind::Mis => reductions::mis_to_tcms(&Graph::from_dimacs(&text)?),
                SourceKind::X3c => {
                    let src: X3cInstance = serde_json::from_str(&text).map_err(parse)?;
                    if literal {
                        reductions::x3c_to_3voter_bisc(&src)
                    } else {
                        reductions::x3c_to_bisc(&src)
                    }
                }
                SourceKind::Hittingset => {
                    let src: HittingSetInstance = serde_json::from_str(&text).map_err(parse)?;
                    reductions::hitting_set_to_bisc(&src)
                }
            };
            if lift == Lift::Worstcase {
                bundle = lifted(&bundle)?;
            }
            let instance = if realize {
                let Reduced::Margin { margin, rows } = &bundle.reduced else {
                    bail!("--realize applies to margin instances only");
                };
                let norm = NormOrder::new(p)?;
                let r = match rows {
                    MarginRows::Rivals => reductions::realize_single_voter(margin, norm)?,
                    MarginRows::Voters => reductions::realize_two_candidate(margin, norm)?,
                };
                bundle
                    .provenance
                    .parameters
                    .insert("realization_residual".into(), r.residual.into());
                write_election(&r.election, Some(norm))
            } else {
                bundle.instance_text()
            };
            write(&out, &instance)?;
            let mut sidecar = out.clone().into_os_string();
            sidecar.push(".provenance.json");
            write(
                Path::new(&sidecar),
                &(serde_json::to_string_pretty(&bundle.provenance)? + "\n"),
            )?;
        }
        Command::Experiment(args) => experiment(args)?,
        Command::ExportLp { file, p, out } => {
            let doc = read_election(
                &fs::read_to_string(&file)
                    .with_context(|| format!("reading {}", file.display()))?,
            )?;
            let norm = match p {
                Some(p) => NormOrder::new(p)?,
                None => doc.p.unwrap_or_default(),
            };
            write(&out, &export_ilp(&doc.election, norm).to_lp())?;
        }
        Command::Plot { csv, out_dir } => {
            let text =
                fs::read_to_string(&csv).with_context(|| format!("reading {}", csv.display()))?;
            for path in harness::emit_plots(&text, &out_dir)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn lifted(bundle: &ReductionBundle) -> Result<ReductionBundle> {
    let Reduced::Margin { margin, rows } = &bundle.reduced else {
        bail!("--lift worstcase applies to margin instances only");
    };
    let mut out = match rows {
        MarginRows::Rivals => reductions::lift_svis_to_worstcase(margin)?,
        MarginRows::Voters => reductions::lift_tcis_to_worstcase(margin)?,
    };
    out.provenance
        .notes
        .push(format!("lifted from {}", bundle.provenance.construction));
    out.provenance.source = serde_json::json!({
        "construction": bundle.provenance.construction,
        "source": bundle.provenance.source,
    });
    Ok(out)
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let mut spec = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?
        }
        None => ExperimentSpec::default(),
    };
    if let Some(k) = args.kind {
        spec.kind = kind(k);
    }
    if let Some(s) = args.sweep {
        spec.sweep = s;
        if args.values.is_none() && args.config.is_none() {
            spec.values = s.default_values();
        }
    }
    macro_rules! set {
        ($($field:ident <- $arg:expr),*) => {$(if let Some(v) = $arg { spec.$field = v; })*};
    }
    set!(values <- args.values, m <- args.m, n <- args.n, l <- args.l, instances_per_point <- args.instances,
         p <- args.p, tie <- args.tie, seed <- args.seed, solvers <- args.solvers, cap <- args.cap);
    spec.timing |= args.timing;
    let rows = harness::run_experiment(&spec)?;
    let csv = harness::write_csv(&rows)?;
    write(&args.out, &csv)?;
    if let Some(path) = &args.summary {
        write(path, &harness::render_summary(&harness::summarize(&rows)))?;
    }
    if let Some(dir) = &args.plots {
        harness::emit_plots(&csv, dir)?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => 3,
        Some(Error::Capacity { .. }) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
