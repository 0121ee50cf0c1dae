//! Election control by issue selection in the spatial voting model.
//!
//! Candidate 0 is the target. Solvers look for a nonempty set of salient
//! issues that makes it win ([`Exhaustive::isc`]) or that maximizes its
//! support ([`Exhaustive::max_support`], [`greedy`], [`poly`]). The book in
//! `book/` walks through the concepts with runnable examples.

pub mod election;
pub mod error;
pub mod exact;
pub mod generators;
pub mod greedy;
pub mod harness;
pub mod ilp;
pub mod io;
pub mod poly;
pub mod rational;
pub mod reductions;
pub mod subsets;

pub use election::{
    Domain, Election, IssueSet, MarginTensor, NormOrder, SolveOutcome, TieRule, TARGET,
};
pub use error::{Error, Result};
pub use exact::{
    solve_isc_exhaustive, solve_margin, solve_maxsupport_exhaustive, Exhaustive, MarginInstance,
    MarginSolution, Satisfaction, WinRule,
};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/elections.md")]
    mod elections {}
    #[doc = include_str!("../../../book/src/ties.md")]
    mod ties {}
    #[doc = include_str!("../../../book/src/margins.md")]
    mod margins {}
    #[doc = include_str!("../../../book/src/binary.md")]
    mod binary {}
    #[doc = include_str!("../../../book/src/heuristics.md")]
    mod heuristics {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
