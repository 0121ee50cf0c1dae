//! Executable hardness constructions.
//!
//! Each construction turns a source instance into a margin instance or an
//! election and returns it in a [`ReductionBundle`] with enough provenance to
//! re-check the round trip. Every bundle can be decided exhaustively with
//! [`ReductionBundle::decide`] and compared against the source's brute-force
//! oracle.

mod realize;
mod sources;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::election::{Election, IssueSet, NormOrder, TieRule};
use crate::error::{usage, Result};
use crate::exact::{Exhaustive, MarginInstance, Satisfaction, WinRule};
use crate::io::{election_json, margin_json, write_election, write_margin, MarginRows};
use crate::rational::{common_denominator, int, ratio, to_exact_string, Rational};

pub use realize::{realize_single_voter, realize_two_candidate, tolerance, Realized};
pub use sources::{Graph, HittingSetInstance, X3cInstance, ZeroOneIlp};

/// The bias used by both worst-case lifts.
pub fn lift_epsilon() -> Rational {
    ratio(1, 2)
}

/// What the reduced instance is and how it is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    /// Margin matrix; see [`MarginRows`] for how rows are read.
    Margin {
        margin: MarginInstance,
        rows: MarginRows,
    },
    /// Election decided by issue selection control under `tie`.
    Election { election: Election, tie: TieRule },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub construction: String,
    pub source: Value,
    pub parameters: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionBundle {
    pub reduced: Reduced,
    pub provenance: Provenance,
}

impl ReductionBundle {
    fn new(reduced: Reduced, construction: &str, source: Value) -> Self {
        let provenance = Provenance {
            construction: construction.into(),
            source,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        };
        ReductionBundle {
            reduced,
            provenance,
        }
    }

    fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.provenance.parameters.insert(key.into(), value.into());
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.provenance.notes.push(text.into());
        self
    }

    pub fn margin(&self) -> Option<&MarginInstance> {
        match &self.reduced {
            Reduced::Margin { margin, .. } => Some(margin),
            Reduced::Election { .. } => None,
        }
    }

    pub fn election(&self) -> Option<&Election> {
        match &self.reduced {
            Reduced::Election { election, .. } => Some(election),
            Reduced::Margin { .. } => None,
        }
    }

    /// The reduced instance as an instance file.
    pub fn instance_json(&self) -> Value {
        match &self.reduced {
            Reduced::Margin { margin, rows } => margin_json(margin, *rows),
            Reduced::Election { election, .. } => election_json(election, Some(NormOrder::L1)),
        }
    }

    /// The reduced instance as formatted file text.
    pub fn instance_text(&self) -> String {
        match &self.reduced {
            Reduced::Margin { margin, rows } => write_margin(margin, *rows),
            Reduced::Election { election, .. } => write_election(election, Some(NormOrder::L1)),
        }
    }

    /// Decides the reduced instance by exhaustive search and returns the
    /// first winning issue set in canonical order.
    pub fn decide(&self, solver: &Exhaustive) -> Result<Option<IssueSet>> {
        match &self.reduced {
            Reduced::Margin {
                margin,
                rows: MarginRows::Rivals,
            } => Ok(solver
                .margin(&margin.with_mode(margin.satisfaction, WinRule::AllRows))?
                .subset),
            Reduced::Margin {
                margin,
                rows: MarginRows::Voters,
            } => solver.two_candidate_control(margin),
            // binary instances: any norm order gives the same votes
            Reduced::Election { election, tie } => solver.isc(election, NormOrder::L1, *tie),
        }
    }
}

fn margin_source(mi: &MarginInstance) -> Value {
    margin_json(mi, MarginRows::Rivals)["entries"].clone()
}

/// `(m+1) × (ℓ+1)` single-voter margin matrix: `A` with `−b` appended, and a
/// last row `−1/(ℓ+1), …, −1/(ℓ+1), 1` that forces the extra column into any
/// solution while leaving room for every other column.
pub fn ilp_to_svis(src: &ZeroOneIlp) -> ReductionBundle {
    let l = src.num_vars();
    let mut rows: Vec<Vec<Rational>> = src
        .a()
        .iter()
        .zip(src.b())
        .map(|(row, &b)| row.iter().map(|&x| int(x)).chain([int(-b)]).collect())
        .collect();
    let mut last = vec![ratio(-1, l as i64 + 1); l];
    last.push(Rational::one());
    rows.push(last);
    let margin =
        MarginInstance::new(rows, Satisfaction::Weak, WinRule::AllRows).expect("shape is valid");
    ReductionBundle::new(
        Reduced::Margin {
            margin,
            rows: MarginRows::Rivals,
        },
        "ilp_to_svis",
        serde_json::to_value(src).expect("ILP serializes"),
    )
    .param("m", src.num_constraints())
    .param("l", l)
}

/// `(2n+1) × (ℓ+1)` two-candidate margin matrix: `n` constraint rows, `n`
/// dummy rows that are never satisfied, and one row satisfied exactly when
/// the extra column is chosen. Control needs `n+1` weak rows, so every
/// constraint row must hold.
pub fn ilp_to_tcis(src: &ZeroOneIlp) -> ReductionBundle {
    let (n, l) = (src.num_constraints(), src.num_vars());
    let mut rows: Vec<Vec<i64>> = src
        .a()
        .iter()
        .zip(src.b())
        .map(|(row, &b)| [row.as_slice(), &[-b]].concat())
        .collect();
    rows.extend((0..n).map(|_| vec![-1; l + 1]));
    let mut last = vec![-1; l];
    last.push(l as i64 + 1);
    rows.push(last);
    let margin = MarginInstance::from_i64(&rows, Satisfaction::Weak, WinRule::CountRows)
        .expect("shape is valid");
    ReductionBundle::new(
        Reduced::Margin { margin, rows: MarginRows::Voters },
        "ilp_to_tcis",
        serde_json::to_value(src).expect("ILP serializes"),
    )
    .param("n", n)
    .param("l", l)
    .param("majority", n + 1)
    .note("dummy rows hold -1 in the extra column; with 0 there the extra column alone would satisfy them")
}

/// `|V| × |V|` matrix with `|V| − 1` on the diagonal, `−|V|` for edges and
/// `−1` otherwise. A column subset satisfies exactly its own rows when it is
/// independent, so the best satisfied-row count is the independence number.
pub fn mis_to_tcms(g: &Graph) -> ReductionBundle {
    let n = g.num_vertices();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| match () {
                    _ if u == v => n as i64 - 1,
                    _ if g.has_edge(u, v) => -(n as i64),
                    _ => -1,
                })
                .collect()
        })
        .collect();
    let margin = MarginInstance::from_i64(&rows, Satisfaction::Weak, WinRule::CountRows)
        .expect("shape is valid");
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect();
    ReductionBundle::new(
        Reduced::Margin {
            margin,
            rows: MarginRows::Voters,
        },
        "mis_to_tcms",
        json!({ "num_vertices": n, "edges": edges }),
    )
}

/// Scales the whole matrix by the common denominator of its entries.
fn integral_rows(mi: &MarginInstance) -> Vec<Vec<BigInt>> {
    let d = common_denominator(mi.entries().iter().flatten());
    mi.entries()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect()
}

fn to_rationals(rows: Vec<Vec<BigInt>>) -> Vec<Vec<Rational>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Worst-case single-voter instance equivalent to best-case control of `mi`.
///
/// Input rows are scaled to integers. Every original row gets `ε/2` in a new
/// column, so a zero row sum becomes strictly positive once the new column is
/// chosen while nonzero integer sums keep their sign. A row of zeros with
/// `ε/2` forces the new column in; a row of `ε` with `−ε/2` forces at least
/// one original column.
pub fn lift_svis_to_worstcase(mi: &MarginInstance) -> Result<ReductionBundle> {
    check_lift_input(mi)?;
    let eps = lift_epsilon();
    let half = &eps / int(2);
    let l = mi.cols();
    let mut rows = to_rationals(integral_rows(mi));
    for r in &mut rows {
        r.push(half.clone());
    }
    rows.push(
        std::iter::repeat_n(Rational::zero(), l)
            .chain([half.clone()])
            .collect(),
    );
    rows.push(std::iter::repeat_n(eps.clone(), l).chain([-half]).collect());
    let margin =
        MarginInstance::new(rows, Satisfaction::Strict, WinRule::AllRows).expect("shape is valid");
    Ok(ReductionBundle::new(
        Reduced::Margin {
            margin,
            rows: MarginRows::Rivals,
        },
        "lift_svis_to_worstcase",
        margin_source(mi),
    )
    .param("epsilon", to_exact_string(&eps))
    .note("epsilon fixed at 1/2 on integer-scaled input instead of the unparseable closed form"))
}

/// Worst-case two-candidate instance equivalent to best-case control of `mi`.
///
/// `n` original rows with `+ε/2` in a new column, `n` rows of `+x` and `n`
/// rows of `−x` with `−ε/2`, and one more row `0, …, 0, ε/2`. With the new
/// column and at least one original column chosen, the target wins
/// `n + 1 + w` rows, where `w` counts weakly satisfied original rows, and a
/// strict majority of `3n + 1` is exactly `2w ≥ n`.
pub fn lift_tcis_to_worstcase(mi: &MarginInstance) -> Result<ReductionBundle> {
    check_lift_input(mi)?;
    let eps = lift_epsilon();
    let half = &eps / int(2);
    let (n, l) = (mi.rows(), mi.cols());
    let ints = integral_rows(mi);
    let x = ints
        .iter()
        .flatten()
        .map(Signed::abs)
        .max()
        .unwrap_or_default()
        .max(BigInt::one());
    let x = Rational::from_integer(x);
    let mut rows = to_rationals(ints);
    for r in &mut rows {
        r.push(half.clone());
    }
    for sign in [1, -1] {
        for _ in 0..n {
            rows.push(
                std::iter::repeat_n(&x * int(sign), l)
                    .chain([-half.clone()])
                    .collect(),
            );
        }
    }
    rows.push(
        std::iter::repeat_n(Rational::zero(), l)
            .chain([half])
            .collect(),
    );
    let margin = MarginInstance::new(rows, Satisfaction::Strict, WinRule::CountRows)
        .expect("shape is valid");
    Ok(ReductionBundle::new(
        Reduced::Margin {
            margin,
            rows: MarginRows::Voters,
        },
        "lift_tcis_to_worstcase",
        margin_source(mi),
    )
    .param("epsilon", to_exact_string(&eps))
    .param("x", to_exact_string(&x))
    .note("one extra row 0..0, epsilon/2 keeps majorities equivalent when n is even")
    .note("epsilon fixed at 1/2 on integer-scaled input instead of the unparseable closed form"))
}

/// Candidates in order: target `w` (all ones), `c_1..c_t`, `x`, `y`, `c`
/// (all zeros), over `s + t + 2` issues.
fn x3c_election(src: &X3cInstance, extra_zero_voter: bool) -> Election {
    let (s, t) = (src.s(), src.t());
    let r = s + t + 2;
    let mut candidates = vec![vec![1u8; r]];
    for j in 1..=t {
        let mut c: Vec<u8> = (0..s).map(|k| src.contains(k, j) as u8).collect();
        c.extend(std::iter::repeat_n(0, t));
        c.extend([0, 1]);
        candidates.push(c);
    }
    let y: Vec<u8> = std::iter::repeat_n(1, s + t).chain([0, 0]).collect();
    let x: Vec<u8> = y.iter().map(|b| 1 - b).collect();
    candidates.extend([x, y, vec![0; r]]);

    let v1: Vec<u8> = std::iter::repeat_n(1, s)
        .chain(std::iter::repeat_n(0, t))
        .chain([1, 0])
        .collect();
    let v2: Vec<u8> = v1[..s + t].iter().map(|b| 1 - b).chain([0, 1]).collect();
    let mut voters = vec![v1, v2, vec![0; r]];
    if extra_zero_voter {
        voters.push(vec![0; r]);
    }
    Election::binary(&candidates, &voters).expect("shape is valid")
}

/// Three-voter binary election built literally from the X3C construction.
///
/// With best-case ties at the winner level a 1–1–1 split is a win, and the
/// issue set `{s+t+1, s+t+2}` always produces one, so this election is
/// controllable even for instances without an exact cover. See
/// [`x3c_to_bisc`] for the repaired version.
pub fn x3c_to_3voter_bisc(src: &X3cInstance) -> ReductionBundle {
    ReductionBundle::new(
        Reduced::Election {
            election: x3c_election(src, false),
            tie: TieRule::BestCase,
        },
        "x3c_to_3voter_bisc",
        serde_json::to_value(src).expect("X3C serializes"),
    )
    .param("issues", src.s() + src.t() + 2)
    .param("candidates", src.t() + 4)
    .note("as written: {s+t+1, s+t+2} splits the voters 1-1-1, which wins under best-case ties")
}

/// The X3C construction with a second all-zero voter. Both zero voters
/// always vote alike, so the target wins exactly when it holds both `v1` and
/// `v2`, which is the condition the construction is designed around.
pub fn x3c_to_bisc(src: &X3cInstance) -> ReductionBundle {
    ReductionBundle::new(
        Reduced::Election {
            election: x3c_election(src, true),
            tie: TieRule::BestCase,
        },
        "x3c_to_bisc",
        serde_json::to_value(src).expect("X3C serializes"),
    )
    .param("issues", src.s() + src.t() + 2)
    .param("candidates", src.t() + 4)
    .note("fourth voter duplicates the all-zero voter so one supporter can never tie for the win")
}

/// Two-candidate binary election over `p + k` issues with `2ks + 4` voters:
/// two balancing voters, `k` copies of the set-membership block each opposed
/// on one tail issue, and `ks + 2` all-zero voters.
pub fn hitting_set_to_bisc(src: &HittingSetInstance) -> ReductionBundle {
    let (p, k, s) = (src.num_elements(), src.k(), src.sets().len());
    let l = p + k;
    let mut voters: Vec<Vec<u8>> = Vec::with_capacity(2 * k * s + 4);
    let first: Vec<u8> = std::iter::repeat_n(0, p)
        .chain(std::iter::repeat_n(1, k))
        .collect();
    voters.push(first.iter().map(|b| 1 - b).collect());
    voters.insert(0, first);
    for f in 0..k {
        for set in src.sets() {
            let mut v: Vec<u8> = (1..=p).map(|j| set.contains(&j) as u8).collect();
            v.extend((0..k).map(|g| (g != f) as u8));
            voters.push(v);
        }
    }
    voters.extend(std::iter::repeat_n(vec![0; l], k * s + 2));
    let election = Election::binary(&[vec![1; l], vec![0; l]], &voters).expect("shape is valid");
    ReductionBundle::new(
        Reduced::Election {
            election,
            tie: TieRule::BestCase,
        },
        "hitting_set_to_bisc",
        serde_json::to_value(src).expect("hitting set serializes"),
    )
    .param("issues", l)
    .param("voters", 2 * k * s + 4)
}

pub fn is_integral(mi: &MarginInstance) -> bool {
    mi.entries().iter().flatten().all(|x| x.is_integer())
}

fn check_lift_input(mi: &MarginInstance) -> Result<()> {
    if mi.satisfaction != Satisfaction::Weak {
        return usage("lifts take best-case (weak) margin instances");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_margin;

    fn decide(b: &ReductionBundle) -> bool {
        b.decide(&Exhaustive::default()).unwrap().is_some()
    }

    fn one_col(rows: &[i64], sat: Satisfaction) -> MarginInstance {
        let rows: Vec<Vec<i64>> = rows.iter().map(|&x| vec![x]).collect();
        MarginInstance::from_i64(&rows, sat, WinRule::AllRows).unwrap()
    }

    #[test]
    fn ilp_to_svis_examples() {
        let b = ilp_to_svis(&ZeroOneIlp::new(vec![vec![1]], vec![1]).unwrap());
        let m = b.margin().unwrap();
        assert_eq!(
            m.entries(),
            &[vec![int(1), int(-1)], vec![ratio(-1, 2), int(1)]]
        );
        assert_eq!(
            b.decide(&Exhaustive::default()).unwrap(),
            Some(IssueSet::all(2))
        );
        assert_eq!(m.row_sums(&IssueSet::all(2)), vec![int(0), ratio(1, 2)]);
        assert!(!decide(&ilp_to_svis(
            &ZeroOneIlp::new(vec![vec![1]], vec![2]).unwrap()
        )));
        assert!(decide(&ilp_to_svis(
            &ZeroOneIlp::new(vec![vec![0]], vec![0]).unwrap()
        )));
    }

    #[test]
    fn ilp_to_tcis_examples() {
        let b = ilp_to_tcis(&ZeroOneIlp::new(vec![vec![1]], vec![1]).unwrap());
        let want = MarginInstance::from_i64(
            &[vec![1, -1], vec![-1, -1], vec![-1, 2]],
            Satisfaction::Weak,
            WinRule::CountRows,
        )
        .unwrap();
        assert_eq!(b.margin().unwrap(), &want);
        assert_eq!(
            b.decide(&Exhaustive::default()).unwrap(),
            Some(IssueSet::all(2))
        );
        assert!(!decide(&ilp_to_tcis(
            &ZeroOneIlp::new(vec![vec![1]], vec![2]).unwrap()
        )));
        assert!(decide(&ilp_to_tcis(
            &ZeroOneIlp::new(vec![vec![0]], vec![0]).unwrap()
        )));
    }

    #[test]
    fn zero_in_dummy_column_would_be_wrong() {
        let literal = MarginInstance::from_i64(
            &[vec![1, -2], vec![-1, 0], vec![-1, 2]],
            Satisfaction::Weak,
            WinRule::CountRows,
        )
        .unwrap();
        assert_eq!(
            Exhaustive::default()
                .two_candidate_control(&literal)
                .unwrap(),
            Some(IssueSet::singleton(1))
        );
        assert_eq!(
            ZeroOneIlp::new(vec![vec![1]], vec![2])
                .unwrap()
                .solve_brute_force()
                .unwrap(),
            None
        );
    }

    #[test]
    fn mis_examples() {
        let best = |g: Graph| solve_margin(mis_to_tcms(&g).margin().unwrap()).unwrap();
        let edgeless = best(Graph::new(3, &[]).unwrap());
        assert_eq!(
            (edgeless.satisfied_rows, edgeless.subset),
            (3, Some(IssueSet::all(3)))
        );
        assert_eq!(
            best(Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()).satisfied_rows,
            1
        );
        let p3 = best(Graph::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(p3.satisfied_rows, 2);
        let b = mis_to_tcms(&Graph::new(3, &[(0, 1), (1, 2)]).unwrap());
        let s = IssueSet::from_one_based(&[1, 3], 3).unwrap();
        assert_eq!(
            b.margin().unwrap().row_sums(&s),
            vec![int(1), int(-6), int(1)]
        );
    }

    #[test]
    fn svis_lift_examples() {
        for (x, want) in [(0, true), (-1, false), (1, true)] {
            let m = one_col(&[x], Satisfaction::Weak);
            assert_eq!(solve_margin(&m).unwrap().all_satisfied, want);
            let lifted = lift_svis_to_worstcase(&m).unwrap();
            assert_eq!(lifted.margin().unwrap().rows(), 3);
            assert_eq!(decide(&lifted), want, "M=[[{x}]]");
        }
        let lifted = lift_svis_to_worstcase(&one_col(&[0], Satisfaction::Weak)).unwrap();
        assert_eq!(
            lifted.decide(&Exhaustive::default()).unwrap(),
            Some(IssueSet::all(2))
        );
    }

    #[test]
    fn tcis_lift_examples() {
        let solver = Exhaustive::default();
        for rows in [
            vec![0],
            vec![-1],
            vec![1],
            vec![1, -1],
            vec![-1, -1],
            vec![0, -2, 3],
        ] {
            let m = one_col(&rows, Satisfaction::Weak);
            let before = solver.two_candidate_control(&m).unwrap().is_some();
            let lifted = lift_tcis_to_worstcase(&m).unwrap();
            assert_eq!(lifted.margin().unwrap().rows(), 3 * rows.len() + 1);
            assert_eq!(decide(&lifted), before, "M={rows:?}");
        }
    }

    #[test]
    fn lifts_rescale_fractions() {
        let m = MarginInstance::new(
            vec![vec![ratio(1, 3), ratio(-1, 3)]],
            Satisfaction::Weak,
            WinRule::AllRows,
        )
        .unwrap();
        assert!(!is_integral(&m));
        let lifted = lift_svis_to_worstcase(&m).unwrap();
        assert!(!is_integral(lifted.margin().unwrap()));
        assert_eq!(lifted.margin().unwrap().get(0, 0), &int(1));
        assert!(decide(&lifted));
        assert!(
            lift_tcis_to_worstcase(&m.with_mode(Satisfaction::Strict, WinRule::AllRows)).is_err()
        );
    }

    #[test]
    fn x3c_shapes_and_answers() {
        let src = X3cInstance::new(3, &[vec![1, 2, 3]]).unwrap();
        let b = x3c_to_3voter_bisc(&src);
        let e = b.election().unwrap();
        assert_eq!(
            (e.num_issues(), e.num_candidates(), e.num_voters()),
            (6, 7, 3)
        );
        let witness = IssueSet::from_one_based(&[1, 2, 5, 6], 6).unwrap();
        assert!(e
            .target_wins(&witness, NormOrder::L1, TieRule::BestCase)
            .unwrap());
        assert!(decide(&b));
        assert!(decide(&x3c_to_bisc(&src)));
        assert!(decide(&x3c_to_bisc(
            &X3cInstance::new(3, &[vec![1, 2, 3], vec![1, 2, 3]]).unwrap()
        )));
    }

    #[test]
    fn literal_x3c_construction_accepts_instances_without_cover() {
        let src = X3cInstance::new(3, &[]).unwrap();
        assert_eq!(src.exact_cover().unwrap(), None);
        let e = x3c_to_3voter_bisc(&src).election().unwrap().clone();
        let last_two = IssueSet::from_one_based(&[4, 5], 5).unwrap();
        assert_eq!(
            e.vote_counts(&last_two, NormOrder::L1, TieRule::BestCase)
                .unwrap(),
            vec![1, 1, 0, 0, 0, 1, 0]
        );
        assert!(e
            .target_wins(&last_two, NormOrder::L1, TieRule::BestCase)
            .unwrap());
        assert!(!decide(&x3c_to_bisc(&src)));
    }

    #[test]
    fn x3c_repaired_matches_oracle_on_six_elements() {
        let all: Vec<Vec<usize>> = vec![
            vec![1, 2, 3],
            vec![4, 5, 6],
            vec![1, 4, 5],
            vec![2, 3, 6],
            vec![3, 4, 5],
        ];
        for pick in 0u32..1 << all.len() {
            let sets: Vec<Vec<usize>> = (0..all.len())
                .filter(|i| pick >> i & 1 == 1)
                .map(|i| all[i].clone())
                .collect();
            let src = X3cInstance::new(6, &sets).unwrap();
            assert_eq!(
                decide(&x3c_to_bisc(&src)),
                src.exact_cover().unwrap().is_some(),
                "{sets:?}"
            );
        }
    }

    #[test]
    fn hitting_set_examples() {
        let src = HittingSetInstance::new(2, vec![vec![1], vec![2]], 2).unwrap();
        let b = hitting_set_to_bisc(&src);
        let e = b.election().unwrap();
        assert_eq!(
            (e.num_issues(), e.num_voters(), e.num_candidates()),
            (4, 12, 2)
        );
        assert!(decide(&b));
        assert!(!decide(&hitting_set_to_bisc(
            &HittingSetInstance::new(2, vec![vec![1], vec![2]], 1).unwrap()
        )));
        assert!(decide(&hitting_set_to_bisc(
            &HittingSetInstance::new(1, vec![vec![1]], 1).unwrap()
        )));
    }

    #[test]
    fn provenance_serializes() {
        let b = lift_tcis_to_worstcase(&one_col(&[1, -1], Satisfaction::Weak)).unwrap();
        let v = serde_json::to_value(&b.provenance).unwrap();
        assert_eq!(v["construction"], "lift_tcis_to_worstcase");
        assert_eq!(v["parameters"]["epsilon"], "0.5");
        assert_eq!(b.instance_json()["rows"], "voters");
    }
}
