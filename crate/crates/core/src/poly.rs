//! Polynomial-time algorithms for binary issues with one, two, or three
//! voters, and the best-single-issue baseline.

use num_traits::One;

use crate::election::{Domain, Election, IssueSet, NormOrder, SolveOutcome, TieRule, TARGET};
use crate::error::{usage, Result};
use crate::exact::{distance_table, votes_from_sums};
use crate::subsets::with_table;

/// Answer of a decision algorithm; `witness` is present exactly when the
/// answer is yes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAnswer {
    pub decision: bool,
    pub witness: Option<IssueSet>,
}

impl PolyAnswer {
    fn yes(witness: IssueSet) -> Self {
        PolyAnswer {
            decision: true,
            witness: Some(witness),
        }
    }

    fn no() -> Self {
        PolyAnswer {
            decision: false,
            witness: None,
        }
    }
}

fn require(e: &Election, voters: usize, what: &str) -> Result<()> {
    if e.domain() != Domain::Binary {
        return usage(format!("{what} needs a binary election"));
    }
    if e.num_voters() != voters {
        return usage(format!(
            "{what} needs exactly {voters} voter(s), got {}",
            e.num_voters()
        ));
    }
    Ok(())
}

/// Single voter, best-case ties: look for an issue where the target agrees
/// with the voter, or where no rival does.
pub fn single_issue_win(e: &Election) -> Result<PolyAnswer> {
    require(e, 1, "single_issue_win")?;
    let v = e.voter(0);
    let target = e.candidate(TARGET);
    let found = (0..e.num_issues())
        .find(|&k| target[k] == v[k] || (1..e.num_candidates()).all(|i| e.candidate(i)[k] != v[k]));
    Ok(found.map_or_else(PolyAnswer::no, |k| PolyAnswer::yes(IssueSet::singleton(k))))
}

/// Single voter, worst-case ties: restrict to the issues where the target
/// agrees with the voter and check for a strict win there.
pub fn agree_on_issues(e: &Election) -> Result<PolyAnswer> {
    require(e, 1, "agree_on_issues")?;
    let v = e.voter(0);
    let agree: Vec<usize> = (0..e.num_issues())
        .filter(|&k| e.candidate(TARGET)[k] == v[k])
        .collect();
    strict_win_on(e, agree)
}

/// Yes iff every voter strictly prefers the target to every rival on `s`.
/// On these issues the target sits at distance 0 from each voter, so a rival
/// ties exactly when it also agrees everywhere on `s`.
fn strict_win_on(e: &Election, s: Vec<usize>) -> Result<PolyAnswer> {
    if s.is_empty() {
        return Ok(PolyAnswer::no());
    }
    let s = IssueSet::new(s, e.num_issues())?;
    let all_strict = e
        .cast_votes(&s, NormOrder::L1, TieRule::WorstCase)?
        .iter()
        .all(|&c| c == TARGET);
    Ok(if all_strict {
        PolyAnswer::yes(s)
    } else {
        PolyAnswer::no()
    })
}

/// Two voters, best-case ties. Winning either voter suffices: a 1–1 split
/// goes to the target.
pub fn two_voter_best_case(e: &Election) -> Result<PolyAnswer> {
    require(e, 2, "two_voter_best_case")?;
    for j in 0..2 {
        let ans = single_issue_win(&e.with_voters(&[j]))?;
        if ans.decision {
            return Ok(ans);
        }
    }
    Ok(PolyAnswer::no())
}

/// Two voters, worst-case ties. Both voters must strictly prefer the target;
/// after flipping issues so the target holds 1 everywhere, the only set
/// worth testing is where both voters hold 1.
pub fn two_voter_worst_case(e: &Election) -> Result<PolyAnswer> {
    require(e, 2, "two_voter_worst_case")?;
    let norm = e.normalize_binary()?;
    let agree: Vec<usize> = (0..e.num_issues())
        .filter(|&k| norm.voter(0)[k].is_one() && norm.voter(1)[k].is_one())
        .collect();
    strict_win_on(&norm, agree)
}

/// Three voters, worst-case ties: the target wins iff some pair of voters
/// can both be won strictly.
pub fn three_voter_worst_case(e: &Election) -> Result<PolyAnswer> {
    require(e, 3, "three_voter_worst_case")?;
    for pair in [[0, 1], [0, 2], [1, 2]] {
        let ans = two_voter_worst_case(&e.with_voters(&pair))?;
        if ans.decision {
            return Ok(ans);
        }
    }
    Ok(PolyAnswer::no())
}

/// The single issue that captures the most voters for the target, lowest
/// index on ties.
///
/// For two candidates and binary issues this is within a factor of two of
/// the best issue set under either tie rule. It is also a usable baseline
/// elsewhere.
pub fn best_single_issue(e: &Election, norm: NormOrder, tie: TieRule) -> SolveOutcome {
    let table = distance_table(e, norm);
    let m = e.num_candidates();
    let mut best: Option<(usize, Vec<usize>)> = None;
    with_table!(&table, |t| {
        let mut sums = t.sums();
        let mut counts = vec![0; m];
        for k in 0..e.num_issues() {
            sums.add(k);
            votes_from_sums(sums.get(), m, tie, &mut counts);
            sums.remove(k);
            if best
                .as_ref()
                .is_none_or(|(_, b)| counts[TARGET] > b[TARGET])
            {
                best = Some((k, counts.clone()));
            }
        }
    });
    let (k, votes) = best.expect("at least one issue");
    SolveOutcome::from_votes(IssueSet::singleton(k), votes, tie)
}
