//! Exact solvers: exhaustive search over issue subsets for elections, and
//! over column subsets for margin matrices.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::election::{
    choose_candidate, target_wins_with, Election, IssueSet, NormOrder, SolveOutcome, TieRule,
};
use crate::error::{usage, Result};
use crate::rational::{abs_pow, common_denominator, scale_to_integers, Rational};
use crate::subsets::{
    check_cap, with_table, CanonicalSubsets, ColumnTable, IntTable, SumInt, DEFAULT_CAP,
};

/// Whether a row counts as satisfied when its sum is `≥ 0` or `> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Satisfaction {
    Weak,
    Strict,
}

impl Satisfaction {
    fn holds<T: SumInt>(self, sum: &T) -> bool {
        match self {
            Satisfaction::Weak => *sum >= T::zero(),
            Satisfaction::Strict => *sum > T::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WinRule {
    /// Decision: every row must be satisfied.
    AllRows,
    /// Optimization: satisfy as many rows as possible.
    CountRows,
}

/// A matrix whose row sums over a chosen nonempty column subset decide who
/// wins each row.
///
/// With one voter the rows are rivals; with two candidates the rows are
/// voters. Either way, a row sum `≥ 0` means the target is at least as
/// close as the rival that row stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginInstance {
    entries: Vec<Vec<Rational>>,
    pub satisfaction: Satisfaction,
    pub win_rule: WinRule,
}

impl MarginInstance {
    pub fn new(
        entries: Vec<Vec<Rational>>,
        satisfaction: Satisfaction,
        win_rule: WinRule,
    ) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return usage("margin instance needs at least one row and one column");
        }
        if entries.iter().any(|r| r.len() != cols) {
            return usage("margin instance rows have different lengths");
        }
        Ok(MarginInstance {
            entries,
            satisfaction,
            win_rule,
        })
    }

    pub fn from_i64(
        rows: &[Vec<i64>],
        satisfaction: Satisfaction,
        win_rule: WinRule,
    ) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
            .collect();
        Self::new(entries, satisfaction, win_rule)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r][c]
    }

    pub fn with_mode(&self, satisfaction: Satisfaction, win_rule: WinRule) -> Self {
        MarginInstance {
            entries: self.entries.clone(),
            satisfaction,
            win_rule,
        }
    }

    /// Exact row sums over `s`.
    pub fn row_sums(&self, s: &IssueSet) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|r| s.members().iter().map(|&k| r[k].clone()).sum())
            .collect()
    }

    pub fn satisfied_rows(&self, s: &IssueSet) -> usize {
        self.row_sums(s)
            .iter()
            .filter(|x| match self.satisfaction {
                Satisfaction::Weak => !x.is_negative(),
                Satisfaction::Strict => x.is_positive(),
            })
            .count()
    }

    /// Rows scaled by their own common denominator. Row-wise positive
    /// scaling leaves every sign test unchanged.
    fn integer_table(&self) -> IntTable {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                let d = common_denominator(r);
                scale_to_integers(r, &d)
            })
            .collect();
        IntTable::from_rows(rows, self.cols())
    }
}

/// Best column subset found for a margin instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginSolution {
    /// For [`WinRule::CountRows`] the first maximizer in canonical order; for
    /// [`WinRule::AllRows`] the first subset satisfying every row, if any.
    pub subset: Option<IssueSet>,
    /// Largest number of satisfied rows over all visited subsets.
    pub satisfied_rows: usize,
    pub all_satisfied: bool,
}

/// Exhaustive solvers with a configurable enumeration cap.
#[derive(Clone, Copy, Debug)]
pub struct Exhaustive {
    pub cap: usize,
}

impl Default for Exhaustive {
    fn default() -> Self {
        Exhaustive { cap: DEFAULT_CAP }
    }
}

/// Distances `|c_{ik} − v_{jk}|^p` scaled per voter to integers; row
/// `j·m + i` holds voter `j`, candidate `i`.
pub(crate) fn distance_table(e: &Election, norm: NormOrder) -> IntTable {
    let (m, l) = (e.num_candidates(), e.num_issues());
    let mut rows = Vec::with_capacity(m * e.num_voters());
    for v in e.voters() {
        let raw: Vec<Vec<Rational>> = e
            .candidates()
            .iter()
            .map(|c| {
                (0..l)
                    .map(|k| abs_pow(&(&c[k] - &v[k]), norm.get()))
                    .collect()
            })
            .collect();
        let d = common_denominator(raw.iter().flatten());
        rows.extend(raw.iter().map(|r| scale_to_integers(r, &d)));
    }
    IntTable::from_rows(rows, l)
}

pub(crate) fn votes_from_sums<T: SumInt>(sums: &[T], m: usize, tie: TieRule, counts: &mut [usize]) {
    counts.iter_mut().for_each(|c| *c = 0);
    for voter in sums.chunks(m) {
        counts[choose_candidate(voter, tie)] += 1;
    }
}

/// Visits every nonempty subset in canonical order with the vote counts it
/// produces; stops early when `visit` returns `true`.
fn scan_votes<T: SumInt>(
    t: &ColumnTable<T>,
    m: usize,
    tie: TieRule,
    mut visit: impl FnMut(u64, &[usize]) -> bool,
) {
    let mut sums = t.sums();
    let mut counts = vec![0; m];
    for mask in CanonicalSubsets::new(t.cols()) {
        sums.set_mask(mask);
        votes_from_sums(sums.get(), m, tie, &mut counts);
        if visit(mask, &counts) {
            return;
        }
    }
}

impl Exhaustive {
    pub fn new(cap: usize) -> Self {
        Exhaustive { cap }
    }

    /// The first issue set (by size, then lexicographically) that makes the
    /// target win, or `None` if no nonempty set does.
    pub fn isc(&self, e: &Election, norm: NormOrder, tie: TieRule) -> Result<Option<IssueSet>> {
        check_cap(e.num_issues(), self.cap)?;
        let table = distance_table(e, norm);
        let mut found = None;
        with_table!(&table, |t| scan_votes(
            t,
            e.num_candidates(),
            tie,
            |mask, counts| {
                let win = target_wins_with(counts, tie);
                if win {
                    found = Some(mask);
                }
                win
            }
        ));
        Ok(found.map(IssueSet::from_mask))
    }

    /// Maximum target support over all nonempty issue sets, with the first
    /// maximizer in canonical order.
    pub fn max_support(&self, e: &Election, norm: NormOrder, tie: TieRule) -> Result<SolveOutcome> {
        check_cap(e.num_issues(), self.cap)?;
        let table = distance_table(e, norm);
        let n = e.num_voters();
        let mut best: Option<(u64, Vec<usize>)> = None;
        with_table!(&table, |t| scan_votes(
            t,
            e.num_candidates(),
            tie,
            |mask, counts| {
                if best.as_ref().is_none_or(|(_, b)| counts[0] > b[0]) {
                    best = Some((mask, counts.to_vec()));
                }
                counts[0] == n
            }
        ));
        let (mask, votes) = best.expect("at least one issue");
        Ok(SolveOutcome::from_votes(
            IssueSet::from_mask(mask),
            votes,
            tie,
        ))
    }

    pub fn margin(&self, mi: &MarginInstance) -> Result<MarginSolution> {
        check_cap(mi.cols(), self.cap)?;
        let table = mi.integer_table();
        let rows = mi.rows();
        let mut best: Option<(u64, usize)> = None;
        let mut first_all = None;
        with_table!(&table, |t| {
            let mut sums = t.sums();
            for mask in CanonicalSubsets::new(t.cols()) {
                sums.set_mask(mask);
                let count = sums
                    .get()
                    .iter()
                    .filter(|s| mi.satisfaction.holds(*s))
                    .count();
                if best.is_none_or(|(_, b)| count > b) {
                    best = Some((mask, count));
                }
                if count == rows {
                    first_all = Some(mask);
                    break;
                }
            }
        });
        let (best_mask, satisfied_rows) = best.expect("at least one column");
        let subset = match mi.win_rule {
            WinRule::CountRows => Some(best_mask),
            WinRule::AllRows => first_all,
        };
        Ok(MarginSolution {
            subset: subset.map(IssueSet::from_mask),
            satisfied_rows,
            all_satisfied: first_all.is_some(),
        })
    }

    /// Two-candidate decision on a voter-by-issue margin matrix: weak rows
    /// need at least half of all rows (ties go to the target), strict rows
    /// need more than half. Returns the first winning subset.
    pub fn two_candidate_control(&self, mi: &MarginInstance) -> Result<Option<IssueSet>> {
        check_cap(mi.cols(), self.cap)?;
        let table = mi.integer_table();
        let rows = mi.rows();
        let wins = |count: usize| match mi.satisfaction {
            Satisfaction::Weak => 2 * count >= rows,
            Satisfaction::Strict => 2 * count > rows,
        };
        let mut found = None;
        with_table!(&table, |t| {
            let mut sums = t.sums();
            for mask in CanonicalSubsets::new(t.cols()) {
                sums.set_mask(mask);
                if wins(
                    sums.get()
                        .iter()
                        .filter(|s| mi.satisfaction.holds(*s))
                        .count(),
                ) {
                    found = Some(mask);
                    break;
                }
            }
        });
        Ok(found.map(IssueSet::from_mask))
    }
}

pub fn solve_isc_exhaustive(
    e: &Election,
    norm: NormOrder,
    tie: TieRule,
) -> Result<Option<IssueSet>> {
    Exhaustive::default().isc(e, norm, tie)
}

pub fn solve_maxsupport_exhaustive(
    e: &Election,
    norm: NormOrder,
    tie: TieRule,
) -> Result<SolveOutcome> {
    Exhaustive::default().max_support(e, norm, tie)
}

pub fn solve_margin(mi: &MarginInstance) -> Result<MarginSolution> {
    Exhaustive::default().margin(mi)
}

/// Margin instance of a two-candidate election: one row per voter.
pub fn two_candidate_margins(
    e: &Election,
    norm: NormOrder,
    tie: TieRule,
) -> Result<MarginInstance> {
    if e.num_candidates() != 2 {
        return usage("two_candidate_margins needs exactly two candidates");
    }
    let a = e.margin_tensor(norm);
    let rows = (0..e.num_voters()).map(|j| a.row(0, j).to_vec()).collect();
    let satisfaction = match tie {
        TieRule::BestCase => Satisfaction::Weak,
        TieRule::WorstCase => Satisfaction::Strict,
    };
    MarginInstance::new(rows, satisfaction, WinRule::CountRows)
}

/// Margin instance of a single-voter election: one row per rival.
pub fn single_voter_margins(e: &Election, norm: NormOrder, tie: TieRule) -> Result<MarginInstance> {
    if e.num_voters() != 1 {
        return usage("single_voter_margins needs exactly one voter");
    }
    let a = e.margin_tensor(norm);
    let rows = (0..e.num_candidates() - 1)
        .map(|i| a.row(i, 0).to_vec())
        .collect();
    let satisfaction = match tie {
        TieRule::BestCase => Satisfaction::Weak,
        TieRule::WorstCase => Satisfaction::Strict,
    };
    MarginInstance::new(rows, satisfaction, WinRule::AllRows)
}
