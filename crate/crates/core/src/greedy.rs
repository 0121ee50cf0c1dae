//! Greedy Max Support: start from the best single issue and keep adding the
//! issue with the largest gain until nothing helps.

use crate::election::{Election, NormOrder, SolveOutcome, TieRule, TARGET};
use crate::exact::{distance_table, votes_from_sums};
use crate::poly::best_single_issue;
use crate::subsets::with_table;

/// Support after each accepted step of a greedy run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace {
    pub outcome: SolveOutcome,
    /// `(issue added, support afterwards)`; the first entry is the starting
    /// issue.
    pub steps: Vec<(usize, usize)>,
}

pub fn greedy_max_support(e: &Election, norm: NormOrder, tie: TieRule) -> SolveOutcome {
    greedy_trace(e, norm, tie).outcome
}

/// Runs the heuristic and records its trajectory. Stops as soon as no single
/// addition strictly increases support; ties between issues go to the lowest
/// index.
pub fn greedy_trace(e: &Election, norm: NormOrder, tie: TieRule) -> GreedyTrace {
    let start = best_single_issue(e, norm, tie);
    let first = start.issue_set.members()[0];
    let mut steps = vec![(first, start.target_support)];
    let table = distance_table(e, norm);
    let m = e.num_candidates();
    let mut chosen = start.issue_set.clone();
    let mut votes = start.votes.clone();
    with_table!(&table, |t| {
        let mut sums = t.sums();
        sums.add(first);
        let mut counts = vec![0; m];
        loop {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for k in 0..e.num_issues() {
                if sums.contains(k) {
                    continue;
                }
                sums.add(k);
                votes_from_sums(sums.get(), m, tie, &mut counts);
                sums.remove(k);
                let current = best.as_ref().map_or(votes[TARGET], |(_, b)| b[TARGET]);
                if counts[TARGET] > current {
                    best = Some((k, counts.clone()));
                }
            }
            match best {
                Some((k, c)) => {
                    sums.add(k);
                    chosen = chosen.with(k);
                    steps.push((k, c[TARGET]));
                    votes = c;
                }
                None => break,
            }
        }
    });
    GreedyTrace {
        outcome: SolveOutcome::from_votes(chosen, votes, tie),
        steps,
    }
}
