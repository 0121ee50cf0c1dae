//! Experiment sweeps: generate instances, run solvers, and compare each
//! solver's support with the exhaustive optimum.
//!
//! Rows are computed in parallel and sorted before they are written, and
//! wall-clock timing is off unless asked for, so a spec and seed always give
//! the same CSV bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::election::{Election, NormOrder, SolveOutcome, TieRule};
use crate::error::{usage, Error, Result};
use crate::exact::Exhaustive;
use crate::generators::{generate, GenConfig, GenKind};
use crate::greedy::greedy_max_support;
use crate::io::read_election;
use crate::poly::best_single_issue;
use crate::subsets::DEFAULT_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Exhaustive,
    Greedy,
    BestSingleIssue,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::Exhaustive, Solver::Greedy, Solver::BestSingleIssue];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Exhaustive => "exhaustive",
            Solver::Greedy => "greedy",
            Solver::BestSingleIssue => "best_single_issue",
        }
    }

    pub fn run(
        self,
        e: &Election,
        norm: NormOrder,
        tie: TieRule,
        cap: usize,
    ) -> Result<SolveOutcome> {
        match self {
            Solver::Exhaustive => Exhaustive::new(cap).max_support(e, norm, tie),
            Solver::Greedy => Ok(greedy_max_support(e, norm, tie)),
            Solver::BestSingleIssue => Ok(best_single_issue(e, norm, tie)),
        }
    }
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Solver::Exhaustive),
            "greedy" => Ok(Solver::Greedy),
            "best_single_issue" | "bsi" => Ok(Solver::BestSingleIssue),
            _ => usage(format!("unknown solver {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    M,
    N,
    L,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::M => "m",
            SweepParam::N => "n",
            SweepParam::L => "l",
        }
    }

    pub fn default_values(self) -> Vec<usize> {
        match self {
            SweepParam::M => (2..=6).collect(),
            SweepParam::N => vec![20, 50, 100, 200],
            SweepParam::L => (4..=14).collect(),
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(SweepParam::M),
            "n" => Ok(SweepParam::N),
            "l" => Ok(SweepParam::L),
            _ => usage(format!(
                "unknown sweep parameter {s:?} (expected m, n or l)"
            )),
        }
    }
}

/// One sweep. The fixed values of the swept parameter are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: GenKind,
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub sweep: SweepParam,
    pub values: Vec<usize>,
    pub instances_per_point: usize,
    pub p: u32,
    pub tie: TieRule,
    pub seed: u64,
    pub solvers: Vec<Solver>,
    /// Record wall-clock milliseconds; off keeps output reproducible.
    pub timing: bool,
    pub cap: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            kind: GenKind::Gaussian,
            m: 3,
            n: 100,
            l: 10,
            sweep: SweepParam::M,
            values: SweepParam::M.default_values(),
            instances_per_point: 100,
            p: 2,
            tie: TieRule::WorstCase,
            seed: 0,
            solvers: Solver::ALL.to_vec(),
            timing: false,
            cap: DEFAULT_CAP,
        }
    }
}

impl ExperimentSpec {
    pub fn config(&self, value: usize, seed: u64) -> GenConfig {
        let (mut m, mut n, mut l) = (self.m, self.n, self.l);
        match self.sweep {
            SweepParam::M => m = value,
            SweepParam::N => n = value,
            SweepParam::L => l = value,
        }
        GenConfig {
            num_candidates: m,
            num_voters: n,
            num_issues: l,
            seed,
            kind: self.kind,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return usage("experiment needs at least one sweep value");
        }
        if self.instances_per_point == 0 {
            return usage("instances_per_point must be at least 1");
        }
        if self.solvers.is_empty() {
            return usage("experiment needs at least one solver");
        }
        NormOrder::new(self.p)?;
        for &v in &self.values {
            let cfg = self.config(v, 0);
            cfg.validate()?;
            crate::subsets::check_cap(cfg.num_issues, self.cap)?;
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of instance `index` at one sweep value: splitmix64 applied to the
/// base seed, then folded with the value and the index.
pub fn instance_seed(base: u64, value: usize, index: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ value as u64) ^ index as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub sweep_param: SweepParam,
    pub sweep_value: usize,
    pub seed: u64,
    pub solver: Solver,
    pub support: usize,
    pub optimum: usize,
    /// `support / optimum`, or 1 when the optimum is 0.
    pub ratio: f64,
    pub zero_opt_flag: u8,
    pub millis: u64,
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, u64) {
    if !on {
        return (f(), 0);
    }
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

fn run_instance(spec: &ExperimentSpec, value: usize, index: usize) -> Result<Vec<ResultRow>> {
    let seed = instance_seed(spec.seed, value, index);
    let e = generate(&spec.config(value, seed))?;
    let norm = NormOrder::new(spec.p)?;
    let (opt, opt_ms) = timed(spec.timing, || {
        Solver::Exhaustive.run(&e, norm, spec.tie, spec.cap)
    });
    let optimum = opt?.target_support;
    let mut rows = Vec::with_capacity(spec.solvers.len());
    for &solver in &spec.solvers {
        let (support, millis) = if solver == Solver::Exhaustive {
            (optimum, opt_ms)
        } else {
            let (out, ms) = timed(spec.timing, || solver.run(&e, norm, spec.tie, spec.cap));
            (out?.target_support, ms)
        };
        let ratio = if optimum == 0 {
            1.0
        } else {
            support as f64 / optimum as f64
        };
        rows.push(ResultRow {
            sweep_param: spec.sweep,
            sweep_value: value,
            seed,
            solver,
            support,
            optimum,
            ratio,
            zero_opt_flag: (optimum == 0) as u8,
            millis,
        });
    }
    Ok(rows)
}

/// All rows of a sweep, ordered by sweep value, instance index, then solver
/// in the order given by the spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> = spec
        .values
        .iter()
        .flat_map(|&v| (0..spec.instances_per_point).map(move |i| (v, i)))
        .collect();
    let per_job: Vec<Vec<ResultRow>> = jobs
        .par_iter()
        .map(|&(v, i)| run_instance(spec, v, i))
        .collect::<Result<_>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

pub fn write_csv(rows: &[ResultRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub const CSV_HEADER: [&str; 9] = [
    "sweep_param",
    "sweep_value",
    "seed",
    "solver",
    "support",
    "optimum",
    "ratio",
    "zero_opt_flag",
    "millis",
];

pub fn read_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// Mean ratio of one solver at one sweep value.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryPoint {
    pub sweep_param: SweepParam,
    pub sweep_value: usize,
    pub solver: Solver,
    pub instances: usize,
    pub zero_optima: usize,
    pub mean_ratio: f64,
}

/// Means are accumulated in row order so re-reading a CSV reproduces them
/// bit for bit.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryPoint> {
    let mut acc: BTreeMap<(SweepParam, usize, Solver), (usize, usize, f64)> = BTreeMap::new();
    for r in rows {
        let e = acc
            .entry((r.sweep_param, r.sweep_value, r.solver))
            .or_default();
        e.0 += 1;
        e.1 += r.zero_opt_flag as usize;
        e.2 += r.ratio;
    }
    acc.into_iter()
        .map(
            |((sweep_param, sweep_value, solver), (instances, zero_optima, sum))| SummaryPoint {
                sweep_param,
                sweep_value,
                solver,
                instances,
                zero_optima,
                mean_ratio: sum / instances as f64,
            },
        )
        .collect()
}

pub fn render_summary(points: &[SummaryPoint]) -> String {
    let mut out = String::from("sweep_param,sweep_value,solver,instances,zero_optima,mean_ratio\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            p.sweep_param.name(),
            p.sweep_value,
            p.solver.name(),
            p.instances,
            p.zero_optima,
            p.mean_ratio
        );
    }
    out
}

/// Solves an election file; the norm order in the file is used unless
/// `norm` overrides it.
pub fn solve_file(
    path: &Path,
    solver: Solver,
    norm: Option<NormOrder>,
    tie: TieRule,
) -> Result<SolveOutcome> {
    let doc = read_election(&fs::read_to_string(path)?)?;
    let norm = norm.or(doc.p).unwrap_or_default();
    solver.run(&doc.election, norm, tie, DEFAULT_CAP)
}

pub fn render_outcome(out: &SolveOutcome) -> String {
    let votes: Vec<String> = out.votes.iter().map(usize::to_string).collect();
    format!(
        "issue_set: {}\nvotes: {}\nsupport: {}\ntarget_wins: {}\n",
        out.issue_set,
        votes.join(" "),
        out.target_support,
        out.target_wins
    )
}

const SERIES_COLORS: [&str; 3] = ["#1b6ca8", "#d1495b", "#2e933c"];

/// Writes one SVG per swept parameter in `csv_text` into `dir` and returns
/// the paths. Each point carries its exact mean in a `data-value` attribute.
pub fn emit_plots(csv_text: &str, dir: &Path) -> Result<Vec<PathBuf>> {
    let rows = read_csv(csv_text)?;
    if rows.is_empty() {
        return Err(Error::Parse("CSV has no data rows".into()));
    }
    let points = summarize(&rows);
    let mut by_param: BTreeMap<SweepParam, Vec<&SummaryPoint>> = BTreeMap::new();
    for p in &points {
        by_param.entry(p.sweep_param).or_default().push(p);
    }
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (param, pts) in by_param {
        let path = dir.join(format!("ratio_vs_{}.svg", param.name()));
        fs::write(&path, plot_svg(param, &pts))?;
        written.push(path);
    }
    Ok(written)
}

fn plot_svg(param: SweepParam, pts: &[&SummaryPoint]) -> String {
    let (w, h, left, right, top, bottom) = (640.0, 400.0, 60.0, 160.0, 30.0, 50.0);
    let xs: Vec<usize> = pts.iter().map(|p| p.sweep_value).collect();
    let (xmin, xmax) = (
        *xs.iter().min().unwrap() as f64,
        *xs.iter().max().unwrap() as f64,
    );
    let plot_w = w - left - right;
    let plot_h = h - top - bottom;
    let sx = |x: usize| {
        if xmax > xmin {
            left + (x as f64 - xmin) / (xmax - xmin) * plot_w
        } else {
            left + plot_w / 2.0
        }
    };
    let sy = |y: f64| top + (1.0 - y) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="18" text-anchor="middle" font-family="sans-serif" font-size="14">mean approximation ratio vs {}</text>"#,
        left + plot_w / 2.0,
        param.name()
    );
    for tick in 0..=4 {
        let y = tick as f64 / 4.0;
        let _ = writeln!(
            s,
            r##"<line x1="{left}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="#ddd"/><text x="{2}" y="{3:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{y:.2}</text>"##,
            sy(y),
            left + plot_w,
            left - 6.0,
            sy(y) + 4.0
        );
    }
    let mut seen = xs.clone();
    seen.dedup();
    for x in seen {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{x}</text>"#,
            sx(x),
            h - bottom + 16.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        left + plot_w / 2.0,
        h - 10.0,
        param.name()
    );
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    let mut series: BTreeMap<Solver, Vec<&SummaryPoint>> = BTreeMap::new();
    for p in pts {
        series.entry(p.solver).or_default().push(p);
    }
    for (i, (solver, sp)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let _ = writeln!(s, r#"<g class="series" data-solver="{}">"#, solver.name());
        if sp.len() > 1 {
            let path: Vec<String> = sp
                .iter()
                .map(|p| format!("{:.2},{:.2}", sx(p.sweep_value), sy(p.mean_ratio)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                path.join(" ")
            );
        }
        for p in sp {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{color}" data-x="{}" data-value="{}"/>"#,
                sx(p.sweep_value),
                sy(p.mean_ratio),
                p.sweep_value,
                p.mean_ratio
            );
        }
        let ly = top + 20.0 * i as f64 + 10.0;
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="12" height="12" fill="{color}"/><text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            w - right + 15.0,
            ly - 6.0,
            w - right + 32.0,
            ly + 4.0,
            solver.name()
        );
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: GenKind) -> ExperimentSpec {
        ExperimentSpec {
            kind,
            m: 3,
            n: 15,
            l: 5,
            sweep: SweepParam::M,
            values: vec![2, 3],
            instances_per_point: 4,
            seed: 11,
            ..ExperimentSpec::default()
        }
    }

    #[test]
    fn rows_are_ordered_and_bounded() {
        let rows = run_experiment(&small(GenKind::TreeBinary)).unwrap();
        assert_eq!(rows.len(), 2 * 4 * 3);
        for chunk in rows.chunks(3) {
            let [ex, gr, bsi] = chunk else { unreachable!() };
            assert_eq!(
                (ex.solver, gr.solver, bsi.solver),
                (Solver::Exhaustive, Solver::Greedy, Solver::BestSingleIssue)
            );
            assert!(bsi.support <= gr.support && gr.support <= ex.support);
            assert!(chunk
                .iter()
                .all(|r| (0.0..=1.0).contains(&r.ratio) && r.millis == 0));
            if ex.optimum > 0 {
                assert_eq!(ex.ratio, 1.0);
            }
        }
        assert!(rows
            .windows(2)
            .all(|w| w[0].sweep_value <= w[1].sweep_value));
    }

    #[test]
    fn csv_is_reproducible_and_round_trips() {
        let spec = small(GenKind::Gaussian);
        let a = write_csv(&run_experiment(&spec).unwrap()).unwrap();
        let b = write_csv(&run_experiment(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(
            "sweep_param,sweep_value,seed,solver,support,optimum,ratio,zero_opt_flag,millis\n"
        ));
        let rows = read_csv(&a).unwrap();
        assert_eq!(write_csv(&rows).unwrap(), a);
    }

    #[test]
    fn one_instance_per_point_gives_one_row_per_value() {
        let spec = ExperimentSpec {
            instances_per_point: 1,
            solvers: vec![Solver::Greedy],
            ..small(GenKind::TreeBinary)
        };
        assert_eq!(run_experiment(&spec).unwrap().len(), 2);
    }

    #[test]
    fn capacity_is_checked_before_running() {
        let spec = ExperimentSpec {
            sweep: SweepParam::L,
            values: vec![5, 30],
            ..small(GenKind::Gaussian)
        };
        assert!(matches!(
            run_experiment(&spec),
            Err(Error::Capacity { size: 30, .. })
        ));
    }

    #[test]
    fn zero_optimum_counts_as_ratio_one() {
        // two identical candidates: under worst-case ties the target never
        // gets a vote
        let mut spec = small(GenKind::TreeBinary);
        spec.m = 2;
        spec.sweep = SweepParam::L;
        spec.values = vec![1];
        spec.instances_per_point = 20;
        let rows = run_experiment(&spec).unwrap();
        let zero: Vec<&ResultRow> = rows.iter().filter(|r| r.zero_opt_flag == 1).collect();
        assert!(!zero.is_empty());
        assert!(zero.iter().all(|r| r.ratio == 1.0 && r.optimum == 0));
    }

    #[test]
    fn plots_carry_exact_means() {
        let rows = run_experiment(&small(GenKind::TreeBinary)).unwrap();
        let csv = write_csv(&rows).unwrap();
        let dir = std::env::temp_dir().join(format!("issue-control-plot-{}", std::process::id()));
        let paths = emit_plots(&csv, &dir).unwrap();
        assert_eq!(paths.len(), 1);
        let svg = fs::read_to_string(&paths[0]).unwrap();
        for p in summarize(&read_csv(&csv).unwrap()) {
            assert!(svg.contains(&format!(
                "data-x=\"{}\" data-value=\"{}\"",
                p.sweep_value, p.mean_ratio
            )));
        }
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn empty_or_malformed_csv_is_rejected() {
        let dir = std::env::temp_dir().join(format!("issue-control-empty-{}", std::process::id()));
        let empty = write_csv(&[]).unwrap();
        assert!(matches!(emit_plots(&empty, &dir), Err(Error::Parse(_))));
        assert!(!dir.exists());
        assert!(matches!(
            emit_plots("a,b\n1,2\n", &dir),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn seeds_are_distinct_across_points() {
        let mut seen: Vec<u64> = (0..5)
            .flat_map(|v| (0..50).map(move |i| instance_seed(1, v, i)))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 250);
    }
}
