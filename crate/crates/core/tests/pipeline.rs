use issue_control::exact::{Exhaustive, MarginInstance, Satisfaction, WinRule};
use issue_control::generators::{generate, GenConfig, GenKind};
use issue_control::harness::{
    read_csv, run_experiment, summarize, write_csv, ExperimentSpec, ResultRow, Solver, SweepParam,
};
use issue_control::io::{read_election, read_margin, write_election, write_margin, MarginRows};
use issue_control::reductions::{self, Graph, HittingSetInstance, X3cInstance, ZeroOneIlp};
use issue_control::{Election, NormOrder, TieRule};

fn small_spec(kind: GenKind, sweep: SweepParam, values: Vec<usize>) -> ExperimentSpec {
    ExperimentSpec {
        kind,
        sweep,
        values,
        m: 3,
        n: 25,
        l: 6,
        instances_per_point: 8,
        seed: 17,
        ..ExperimentSpec::default()
    }
}

#[test]
fn generated_elections_survive_a_file_round_trip() {
    for kind in [GenKind::Gaussian, GenKind::TreeBinary] {
        for seed in 0..5 {
            let cfg = GenConfig {
                num_candidates: 4,
                num_voters: 9,
                num_issues: 5,
                seed,
                kind,
            };
            let e = generate(&cfg).unwrap();
            let text = write_election(&e, Some(NormOrder::L2));
            let doc = read_election(&text).unwrap();
            assert_eq!(doc.election, e);
            assert_eq!(doc.p, Some(NormOrder::L2));
            assert_eq!(write_election(&doc.election, doc.p), text);
        }
    }
}

#[test]
fn reduced_instances_survive_a_file_round_trip() {
    let ilp = ZeroOneIlp::new(vec![vec![1, -1], vec![-1, 1]], vec![0, 1]).unwrap();
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    for bundle in [
        reductions::ilp_to_svis(&ilp),
        reductions::ilp_to_tcis(&ilp),
        reductions::mis_to_tcms(&g),
    ] {
        let text = bundle.instance_text();
        let doc = read_margin(&text).unwrap();
        assert_eq!(&doc.margin, bundle.margin().unwrap());
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed, bundle.instance_json());
    }
    let x3c = X3cInstance::new(3, &[vec![1, 2, 3]]).unwrap();
    let hs = HittingSetInstance::new(2, vec![vec![1], vec![2]], 2).unwrap();
    for bundle in [
        reductions::x3c_to_bisc(&x3c),
        reductions::hitting_set_to_bisc(&hs),
    ] {
        let doc = read_election(&bundle.instance_text()).unwrap();
        assert_eq!(&doc.election, bundle.election().unwrap());
    }
}

#[test]
fn source_formats_round_trip() {
    let g = Graph::new(5, &[(0, 4), (1, 3), (2, 3)]).unwrap();
    assert_eq!(Graph::from_dimacs(&g.to_dimacs()).unwrap(), g);

    let ilp: ZeroOneIlp =
        serde_json::from_str(r#"{"A": [[1, 0], [0, -1]], "b": [1, -1]}"#).unwrap();
    let back: ZeroOneIlp = serde_json::from_value(serde_json::to_value(&ilp).unwrap()).unwrap();
    assert_eq!(back, ilp);
    assert!(serde_json::from_str::<ZeroOneIlp>(r#"{"A": [[1, 0]], "b": [1, 2]}"#).is_err());

    let x3c: X3cInstance = serde_json::from_str(r#"{"t": 6, "sets": [[1,2,3],[4,5,6]]}"#).unwrap();
    assert_eq!(x3c.exact_cover().unwrap(), Some(vec![0, 1]));
    assert!(serde_json::from_str::<X3cInstance>(r#"{"t": 4, "sets": []}"#).is_err());
}

#[test]
fn rational_entries_are_written_exactly() {
    let mi = MarginInstance::new(
        vec![vec![
            issue_control::rational::ratio(1, 3),
            issue_control::rational::ratio(-7, 2),
        ]],
        Satisfaction::Strict,
        WinRule::CountRows,
    )
    .unwrap();
    let text = write_margin(&mi, MarginRows::Voters);
    assert!(text.contains(r#"["1/3","-3.5"]"#), "{text}");
    let doc = read_margin(&text).unwrap();
    assert_eq!((doc.margin, doc.rows), (mi, MarginRows::Voters));
}

fn check_rows(rows: &[ResultRow]) {
    for r in rows {
        assert!(r.ratio <= 1.0 && r.ratio >= 0.0);
        assert!(r.support <= r.optimum || r.optimum == 0);
        if r.solver == Solver::Exhaustive {
            assert_eq!(r.ratio, 1.0);
        }
    }
    // greedy starts from the best single issue, so it never does worse
    for pair in rows.chunks(3) {
        let support = |s: Solver| pair.iter().find(|r| r.solver == s).unwrap().support;
        assert!(support(Solver::Greedy) >= support(Solver::BestSingleIssue));
    }
}

#[test]
fn experiment_rows_satisfy_invariants() {
    for kind in [GenKind::Gaussian, GenKind::TreeBinary] {
        for (sweep, values) in [
            (SweepParam::M, vec![2, 4]),
            (SweepParam::N, vec![5, 30]),
            (SweepParam::L, vec![3, 7]),
        ] {
            let spec = small_spec(kind, sweep, values);
            let rows = run_experiment(&spec).unwrap();
            assert_eq!(rows.len(), 2 * 8 * 3);
            check_rows(&rows);
        }
    }
}

#[test]
fn summary_means_match_rows() {
    let spec = small_spec(GenKind::Gaussian, SweepParam::N, vec![5, 10, 20]);
    let rows = run_experiment(&spec).unwrap();
    let reread = read_csv(&write_csv(&rows).unwrap()).unwrap();
    assert_eq!(summarize(&rows), summarize(&reread));
    for p in summarize(&rows) {
        let picked: Vec<f64> = rows
            .iter()
            .filter(|r| r.sweep_value == p.sweep_value && r.solver == p.solver)
            .map(|r| r.ratio)
            .collect();
        assert_eq!(picked.len(), p.instances);
        assert_eq!(
            p.mean_ratio,
            picked.iter().sum::<f64>() / picked.len() as f64
        );
    }
}

#[test]
fn one_instance_per_point_gives_one_row_per_value() {
    let mut spec = small_spec(GenKind::TreeBinary, SweepParam::M, vec![2, 3, 4, 5]);
    spec.instances_per_point = 1;
    spec.solvers = vec![Solver::Greedy];
    let rows = run_experiment(&spec).unwrap();
    let values: Vec<usize> = rows.iter().map(|r| r.sweep_value).collect();
    assert_eq!(values, vec![2, 3, 4, 5]);
}

#[test]
fn exhaustive_optimum_is_attained() {
    let e = Election::binary(
        &[vec![0, 0, 1], vec![1, 1, 0]],
        &[
            vec![1, 1, 1],
            vec![1, 1, 1],
            vec![1, 1, 1],
            vec![1, 1, 0],
            vec![1, 1, 0],
        ],
    )
    .unwrap();
    for tie in [TieRule::BestCase, TieRule::WorstCase] {
        let out = Exhaustive::default()
            .max_support(&e, NormOrder::L1, tie)
            .unwrap();
        assert_eq!(e.outcome(&out.issue_set, NormOrder::L1, tie).unwrap(), out);
    }
}
