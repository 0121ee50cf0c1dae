//! Elections in the spatial model: candidates and voters are points in issue
//! space, and every voter votes for the nearest candidate once distances are
//! restricted to the salient issues.
//!
//! Candidate `0` is always the target. Distances are compared through their
//! `p`-th powers, `Σ_{k∈S} |c_k − v_k|^p`, which keeps every comparison
//! exact.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::rational::{abs_pow, int, Rational};

/// Index of the target candidate.
pub const TARGET: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Real,
    Binary,
}

/// Order `p ≥ 1` of the `l_p` norm voters use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormOrder(u32);

impl NormOrder {
    pub const L1: NormOrder = NormOrder(1);
    pub const L2: NormOrder = NormOrder(2);

    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return usage("norm order must be at least 1");
        }
        Ok(NormOrder(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for NormOrder {
    fn default() -> Self {
        NormOrder::L2
    }
}

/// Who gets undecided voters and tied elections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieRule {
    /// Ties go to the target.
    #[serde(alias = "best")]
    BestCase,
    /// Ties go against the target.
    #[serde(alias = "worst")]
    WorstCase,
}

impl TieRule {
    pub const ALL: [TieRule; 2] = [TieRule::BestCase, TieRule::WorstCase];
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" | "best-case" | "bestcase" => Ok(TieRule::BestCase),
            "worst" | "worst-case" | "worstcase" => Ok(TieRule::WorstCase),
            _ => Err(Error::Parse(format!(
                "unknown tie rule {s:?} (expected best|worst)"
            ))),
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieRule::BestCase => "best",
            TieRule::WorstCase => "worst",
        })
    }
}

/// A nonempty set of salient issues, stored as sorted zero-based indices.
///
/// Text output numbers issues from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IssueSet(Vec<usize>);

impl IssueSet {
    pub fn new(mut members: Vec<usize>, num_issues: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return usage("issue set must be nonempty");
        }
        if let Some(&k) = members.iter().find(|&&k| k >= num_issues) {
            return usage(format!("issue {k} out of range for {num_issues} issues"));
        }
        Ok(IssueSet(members))
    }

    /// Builds a set from one-based issue numbers, as written in text.
    pub fn from_one_based(members: &[usize], num_issues: usize) -> Result<Self> {
        if members.contains(&0) {
            return usage("issue numbers start at 1");
        }
        Self::new(members.iter().map(|k| k - 1).collect(), num_issues)
    }

    pub fn singleton(k: usize) -> Self {
        IssueSet(vec![k])
    }

    pub fn all(num_issues: usize) -> Self {
        assert!(num_issues > 0);
        IssueSet((0..num_issues).collect())
    }

    /// The set whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        assert!(mask != 0, "empty mask");
        IssueSet((0..64).filter(|k| mask >> k & 1 == 1).collect())
    }

    pub fn mask(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |m, &k| (k < 64).then_some(m | 1 << k))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.push(k);
        v.sort_unstable();
        v.dedup();
        IssueSet(v)
    }
}

impl fmt::Display for IssueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        f.write_str("}")
    }
}

/// Result of solving an instance for one chosen issue set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub issue_set: IssueSet,
    /// Votes per candidate; sums to the number of voters.
    pub votes: Vec<usize>,
    pub target_support: usize,
    pub target_wins: bool,
}

impl SolveOutcome {
    pub fn from_votes(issue_set: IssueSet, votes: Vec<usize>, tie: TieRule) -> Self {
        SolveOutcome {
            target_support: votes[TARGET],
            target_wins: target_wins_with(&votes, tie),
            issue_set,
            votes,
        }
    }
}

/// Picks the candidate a voter votes for, given that voter's distance to
/// every candidate.
///
/// When the target is among the nearest candidates, best-case gives it the
/// vote and worst-case hands the vote to the lowest-index rival that is also
/// nearest. Ties among rivals only always go to the lowest index.
pub fn choose_candidate<T: Ord>(distances: &[T], tie: TieRule) -> usize {
    let min = distances.iter().min().expect("at least one candidate");
    if &distances[TARGET] == min {
        match tie {
            TieRule::BestCase => TARGET,
            TieRule::WorstCase => distances
                .iter()
                .enumerate()
                .skip(1)
                .find(|(_, d)| *d == min)
                .map_or(TARGET, |(i, _)| i),
        }
    } else {
        distances.iter().position(|d| d == min).unwrap()
    }
}

/// Plurality winner test for the target: best-case needs at least as many
/// votes as every rival, worst-case strictly more.
pub fn target_wins_with(votes: &[usize], tie: TieRule) -> bool {
    let mine = votes[TARGET];
    votes.iter().skip(1).all(|&v| match tie {
        TieRule::BestCase => mine >= v,
        TieRule::WorstCase => mine > v,
    })
}

/// Candidates and voters as exact points in issue space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<Vec<Rational>>,
    voters: Vec<Vec<Rational>>,
    domain: Domain,
}

impl Election {
    pub fn new(
        candidates: Vec<Vec<Rational>>,
        voters: Vec<Vec<Rational>>,
        domain: Domain,
    ) -> Result<Self> {
        if candidates.len() < 2 {
            return usage("an election needs at least two candidates");
        }
        if voters.is_empty() {
            return usage("an election needs at least one voter");
        }
        let issues = candidates[0].len();
        if issues == 0 {
            return usage("an election needs at least one issue");
        }
        if let Some(row) = candidates.iter().chain(&voters).find(|r| r.len() != issues) {
            return usage(format!(
                "position has {} issues, expected {issues}",
                row.len()
            ));
        }
        if domain == Domain::Binary {
            let ok = candidates
                .iter()
                .chain(&voters)
                .flatten()
                .all(|x| x.is_zero() || x.is_one());
            if !ok {
                return usage("binary elections only take positions 0 and 1");
            }
        }
        Ok(Election {
            candidates,
            voters,
            domain,
        })
    }

    /// Convenience constructor from integer positions.
    pub fn from_i64(domain: Domain, candidates: &[Vec<i64>], voters: &[Vec<i64>]) -> Result<Self> {
        let conv = |rows: &[Vec<i64>]| {
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect()
        };
        Self::new(conv(candidates), conv(voters), domain)
    }

    pub fn binary(candidates: &[Vec<u8>], voters: &[Vec<u8>]) -> Result<Self> {
        let conv = |rows: &[Vec<u8>]| {
            rows.iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect::<Vec<_>>()
        };
        Self::from_i64(Domain::Binary, &conv(candidates), &conv(voters))
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn num_issues(&self) -> usize {
        self.candidates[0].len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn candidate(&self, i: usize) -> &[Rational] {
        &self.candidates[i]
    }

    pub fn voter(&self, j: usize) -> &[Rational] {
        &self.voters[j]
    }

    pub fn candidates(&self) -> &[Vec<Rational>] {
        &self.candidates
    }

    pub fn voters(&self) -> &[Vec<Rational>] {
        &self.voters
    }

    /// The election restricted to the listed voters, in the given order.
    pub fn with_voters(&self, voters: &[usize]) -> Election {
        Election {
            candidates: self.candidates.clone(),
            voters: voters.iter().map(|&j| self.voters[j].clone()).collect(),
            domain: self.domain,
        }
    }

    fn check_issue_set(&self, s: &IssueSet) -> Result<()> {
        match s.members().last() {
            Some(&k) if k >= self.num_issues() => usage(format!(
                "issue {} out of range for {} issues",
                k + 1,
                self.num_issues()
            )),
            _ => Ok(()),
        }
    }

    /// `Σ_{k∈S} |c_{ik} − v_{jk}|^p`, the `p`-th power of the restricted
    /// distance between voter `j` and candidate `i`.
    pub fn restricted_distance(
        &self,
        j: usize,
        i: usize,
        s: &IssueSet,
        norm: NormOrder,
    ) -> Result<Rational> {
        if j >= self.num_voters() {
            return usage(format!("voter {j} out of range"));
        }
        if i >= self.num_candidates() {
            return usage(format!("candidate {i} out of range"));
        }
        self.check_issue_set(s)?;
        Ok(self.distance_unchecked(j, i, s, norm))
    }

    fn distance_unchecked(&self, j: usize, i: usize, s: &IssueSet, norm: NormOrder) -> Rational {
        let (c, v) = (&self.candidates[i], &self.voters[j]);
        s.members()
            .iter()
            .map(|&k| abs_pow(&(&c[k] - &v[k]), norm.get()))
            .sum()
    }

    /// The candidate each voter votes for.
    pub fn cast_votes(&self, s: &IssueSet, norm: NormOrder, tie: TieRule) -> Result<Vec<usize>> {
        self.check_issue_set(s)?;
        Ok((0..self.num_voters())
            .map(|j| {
                let d: Vec<Rational> = (0..self.num_candidates())
                    .map(|i| self.distance_unchecked(j, i, s, norm))
                    .collect();
                choose_candidate(&d, tie)
            })
            .collect())
    }

    pub fn vote_counts(&self, s: &IssueSet, norm: NormOrder, tie: TieRule) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.num_candidates()];
        for c in self.cast_votes(s, norm, tie)? {
            counts[c] += 1;
        }
        Ok(counts)
    }

    /// Number of voters voting for the target.
    pub fn support(&self, s: &IssueSet, norm: NormOrder, tie: TieRule) -> Result<usize> {
        Ok(self.vote_counts(s, norm, tie)?[TARGET])
    }

    pub fn target_wins(&self, s: &IssueSet, norm: NormOrder, tie: TieRule) -> Result<bool> {
        Ok(target_wins_with(&self.vote_counts(s, norm, tie)?, tie))
    }

    pub fn outcome(&self, s: &IssueSet, norm: NormOrder, tie: TieRule) -> Result<SolveOutcome> {
        Ok(SolveOutcome::from_votes(
            s.clone(),
            self.vote_counts(s, norm, tie)?,
            tie,
        ))
    }

    /// `A_{ijk} = |c_{ik} − v_{jk}|^p − |c_{0k} − v_{jk}|^p` for every rival
    /// `i`, voter `j`, and issue `k`.
    pub fn margin_tensor(&self, norm: NormOrder) -> MarginTensor {
        let (m, n, l) = (self.num_candidates(), self.num_voters(), self.num_issues());
        let p = norm.get();
        let mut data = Vec::with_capacity((m - 1) * n * l);
        for c in &self.candidates[1..] {
            for v in &self.voters {
                for k in 0..l {
                    let target = abs_pow(&(&self.candidates[TARGET][k] - &v[k]), p);
                    data.push(abs_pow(&(&c[k] - &v[k]), p) - target);
                }
            }
        }
        MarginTensor {
            rivals: m - 1,
            voters: n,
            issues: l,
            data,
        }
    }

    /// Flips every issue on which the target holds 0 so the target becomes
    /// all ones. Agreement between any two points is unchanged on every
    /// issue, so votes are unchanged for every issue set.
    pub fn normalize_binary(&self) -> Result<Election> {
        if self.domain != Domain::Binary {
            return usage("normalize_binary needs a binary election");
        }
        let flip: Vec<bool> = self.candidates[TARGET].iter().map(Zero::is_zero).collect();
        let apply = |rows: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .zip(&flip)
                        .map(|(x, &f)| if f { Rational::one() - x } else { x.clone() })
                        .collect()
                })
                .collect()
        };
        Ok(Election {
            candidates: apply(&self.candidates),
            voters: apply(&self.voters),
            domain: self.domain,
        })
    }
}

/// The `(m−1) × n × ℓ` margin tensor of an election.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginTensor {
    rivals: usize,
    voters: usize,
    issues: usize,
    data: Vec<Rational>,
}

impl MarginTensor {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.rivals, self.voters, self.issues)
    }

    /// Entry for rival `rival` (zero-based among rivals, i.e. candidate
    /// `rival + 1`), voter `j`, issue `k`.
    pub fn get(&self, rival: usize, j: usize, k: usize) -> &Rational {
        &self.data[(rival * self.voters + j) * self.issues + k]
    }

    /// The row of issue entries for one rival/voter pair.
    pub fn row(&self, rival: usize, j: usize) -> &[Rational] {
        let start = (rival * self.voters + j) * self.issues;
        &self.data[start..start + self.issues]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// `Σ |A_{ijk}|`.
    pub fn alpha(&self) -> Rational {
        self.data.iter().map(num_traits::Signed::abs).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn two_issue(c: [[i64; 2]; 2], v: [[i64; 2]; 1]) -> Election {
        Election::from_i64(Domain::Real, &c.map(Vec::from), &v.map(Vec::from)).unwrap()
    }

    /// Issues (healthcare, environment, restrict immigration); the rival
    /// supports the first two, the target only the third.
    pub(crate) fn intro() -> Election {
        Election::binary(
            &[vec![0, 0, 1], vec![1, 1, 0]],
            &[
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![1, 1, 0],
                vec![1, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn restricted_distance_examples() {
        let e = two_issue([[0, 0], [1, 1]], [[1, 1]]);
        let s = IssueSet::all(2);
        assert_eq!(
            e.restricted_distance(0, 0, &s, NormOrder::L2).unwrap(),
            int(2)
        );
        assert_eq!(
            e.restricted_distance(0, 1, &s, NormOrder::L2).unwrap(),
            int(0)
        );

        let e = Election::from_i64(
            Domain::Real,
            &[vec![0, 0, 0], vec![0, 0, 0]],
            &[vec![1, 0, 1]],
        )
        .unwrap();
        let s = IssueSet::from_one_based(&[3], 3).unwrap();
        assert_eq!(
            e.restricted_distance(0, 0, &s, NormOrder::L1).unwrap(),
            int(1)
        );
        assert!(e.restricted_distance(1, 0, &s, NormOrder::L1).is_err());
        assert!(e.restricted_distance(0, 2, &s, NormOrder::L1).is_err());
        assert!(e
            .restricted_distance(0, 0, &IssueSet::singleton(3), NormOrder::L1)
            .is_err());
    }

    #[test]
    fn exact_tie_depends_on_rule() {
        let e = Election::new(
            vec![vec![int(1)], vec![int(0)]],
            vec![vec![ratio(1, 2)]],
            Domain::Real,
        )
        .unwrap();
        let s = IssueSet::all(1);
        assert_eq!(
            e.cast_votes(&s, NormOrder::L1, TieRule::BestCase).unwrap(),
            vec![0]
        );
        assert_eq!(
            e.cast_votes(&s, NormOrder::L1, TieRule::WorstCase).unwrap(),
            vec![1]
        );

        let e = Election::from_i64(Domain::Real, &[vec![1], vec![0]], &[vec![1]]).unwrap();
        assert_eq!(
            e.cast_votes(&s, NormOrder::L1, TieRule::WorstCase).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn intro_scenario_immigration_only() {
        let e = intro();
        let s = IssueSet::from_one_based(&[3], 3).unwrap();
        let votes = e.cast_votes(&s, NormOrder::L1, TieRule::WorstCase).unwrap();
        assert_eq!(votes, vec![0, 0, 0, 1, 1]);
        for tie in TieRule::ALL {
            assert_eq!(e.support(&s, NormOrder::L1, tie).unwrap(), 3);
            assert!(e.target_wins(&s, NormOrder::L1, tie).unwrap());
        }
        // all issues: landslide for the rival
        assert_eq!(
            e.support(&IssueSet::all(3), NormOrder::L1, TieRule::BestCase)
                .unwrap(),
            0
        );
    }

    #[test]
    fn support_examples() {
        let e = Election::binary(
            &[vec![1, 1], vec![0, 0]],
            &[vec![1, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(
            e.support(&IssueSet::singleton(0), NormOrder::L1, TieRule::WorstCase)
                .unwrap(),
            2
        );
        let e = Election::binary(&[vec![1, 0], vec![0, 0]], &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(
            e.support(&IssueSet::all(2), NormOrder::L1, TieRule::WorstCase)
                .unwrap(),
            2
        );
    }

    #[test]
    fn winner_rule() {
        assert!(target_wins_with(&[1, 0], TieRule::BestCase));
        assert!(target_wins_with(&[1, 1], TieRule::BestCase));
        assert!(!target_wins_with(&[1, 1], TieRule::WorstCase));
        assert!(target_wins_with(&[2, 1, 1], TieRule::WorstCase));
        assert!(!target_wins_with(&[0, 1], TieRule::BestCase));
    }

    #[test]
    fn lowest_index_rival_takes_rival_ties() {
        assert_eq!(choose_candidate(&[3, 1, 1], TieRule::BestCase), 1);
        assert_eq!(choose_candidate(&[1, 2, 1, 1], TieRule::WorstCase), 2);
        assert_eq!(choose_candidate(&[1, 2, 1, 1], TieRule::BestCase), 0);
    }

    #[test]
    fn margin_tensor_examples() {
        let e = two_issue([[0, 3], [0, 3]], [[5, 1]]);
        assert!(e
            .margin_tensor(NormOrder::L2)
            .entries()
            .iter()
            .all(Zero::is_zero));

        let e = Election::from_i64(Domain::Real, &[vec![0], vec![1]], &[vec![0]]).unwrap();
        let a = e.margin_tensor(NormOrder::L1);
        assert_eq!(a.dims(), (1, 1, 1));
        assert_eq!(a.get(0, 0, 0), &int(1));

        let e = Election::from_i64(Domain::Real, &[vec![0], vec![2]], &[vec![1]]).unwrap();
        assert_eq!(e.margin_tensor(NormOrder::L2).get(0, 0, 0), &int(0));
    }

    #[test]
    fn normalize_binary_examples() {
        let e = Election::binary(&[vec![1, 1], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert_eq!(e.normalize_binary().unwrap(), e);

        let e = Election::binary(&[vec![0, 1], vec![1, 0]], &[vec![0, 0]]).unwrap();
        let want = Election::binary(&[vec![1, 1], vec![0, 0]], &[vec![1, 0]]).unwrap();
        assert_eq!(e.normalize_binary().unwrap(), want);

        let real = Election::from_i64(Domain::Real, &[vec![0], vec![1]], &[vec![0]]).unwrap();
        assert!(real.normalize_binary().is_err());
    }

    #[test]
    fn rejects_malformed_elections() {
        assert!(Election::binary(&[vec![1]], &[vec![1]]).is_err());
        assert!(Election::binary(&[vec![1], vec![0]], &[]).is_err());
        assert!(Election::from_i64(Domain::Binary, &[vec![2], vec![0]], &[vec![1]]).is_err());
        assert!(Election::from_i64(Domain::Real, &[vec![2, 1], vec![0]], &[vec![1, 1]]).is_err());
        assert!(NormOrder::new(0).is_err());
        assert!(IssueSet::new(vec![], 3).is_err());
        assert!(IssueSet::new(vec![3], 3).is_err());
        assert_eq!(
            IssueSet::new(vec![2, 0, 2], 3).unwrap().to_string(),
            "{1,3}"
        );
    }
}
