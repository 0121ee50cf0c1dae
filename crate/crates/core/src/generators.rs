//! Random election generators.
//!
//! Every instance is a pure function of its [`GenConfig`]. Each role draws
//! from its own ChaCha stream of the seed (0: tree weights or covariance
//! factor, 1: candidates, 2: voters), so changing the number of voters never
//! changes the candidates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::election::{Domain, Election};
use crate::error::{usage, Result};
use crate::rational::{from_f64, Rational};

/// Largest issue count for the tree generator.
pub const MAX_TREE_ISSUES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Gaussian,
    #[serde(alias = "tree")]
    TreeBinary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenConfig {
    pub num_candidates: usize,
    pub num_voters: usize,
    pub num_issues: usize,
    pub seed: u64,
    pub kind: GenKind,
}

impl GenConfig {
    /// 3 candidates, 100 voters, 10 issues.
    pub fn defaults(kind: GenKind, seed: u64) -> Self {
        GenConfig {
            num_candidates: 3,
            num_voters: 100,
            num_issues: 10,
            seed,
            kind,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_candidates < 2 || self.num_voters < 1 || self.num_issues < 1 {
            return usage("generator needs m >= 2, n >= 1 and l >= 1");
        }
        if self.kind == GenKind::TreeBinary && self.num_issues > MAX_TREE_ISSUES {
            return usage(format!(
                "tree generator supports at most {MAX_TREE_ISSUES} issues"
            ));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

const WEIGHTS: u64 = 0;
const CANDIDATES: u64 = 1;
const VOTERS: u64 = 2;

pub fn generate(cfg: &GenConfig) -> Result<Election> {
    match cfg.kind {
        GenKind::Gaussian => gen_gaussian(cfg),
        GenKind::TreeBinary => gen_tree_binary(cfg),
    }
}

/// Candidates and voters drawn from `N(0, G·Gᵀ)` for one standard-normal
/// `ℓ × ℓ` matrix `G`.
pub fn gen_gaussian(cfg: &GenConfig) -> Result<Election> {
    if cfg.kind != GenKind::Gaussian {
        return usage("gen_gaussian needs a gaussian config");
    }
    cfg.validate()?;
    let l = cfg.num_issues;
    let mut rng = cfg.rng(WEIGHTS);
    let g: Vec<Vec<f64>> = (0..l)
        .map(|_| (0..l).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    let draw = |count: usize, stream: u64| -> Result<Vec<Vec<Rational>>> {
        let mut rng = cfg.rng(stream);
        (0..count)
            .map(|_| {
                let z: Vec<f64> = (0..l).map(|_| rng.sample(StandardNormal)).collect();
                g.iter()
                    .map(|row| from_f64(row.iter().zip(&z).map(|(a, b)| a * b).sum()))
                    .collect()
            })
            .collect()
    };
    Election::new(
        draw(cfg.num_candidates, CANDIDATES)?,
        draw(cfg.num_voters, VOTERS)?,
        Domain::Real,
    )
}

/// Complete binary tree of `2^ℓ − 1` decision vertices in heap order. A walk
/// starts at the root and at vertex `v` moves right (emitting 1) with
/// probability `p_v`, else left (emitting 0), so every walk emits `ℓ` bits.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDecisionTree {
    depth: usize,
    weights: Vec<f64>,
}

impl WeightedDecisionTree {
    pub fn new(depth: usize, weights: Vec<f64>) -> Result<Self> {
        if depth == 0 || depth > MAX_TREE_ISSUES {
            return usage(format!("tree depth must be in 1..={MAX_TREE_ISSUES}"));
        }
        if weights.len() != (1 << depth) - 1 {
            return usage(format!(
                "a depth-{depth} tree has {} vertices, got {} weights",
                (1 << depth) - 1,
                weights.len()
            ));
        }
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return usage("tree weights must lie in [0, 1]");
        }
        Ok(WeightedDecisionTree { depth, weights })
    }

    pub fn random(depth: usize, rng: &mut impl Rng) -> Result<Self> {
        let n = 1usize
            .checked_shl(depth as u32)
            .unwrap_or(0)
            .saturating_sub(1);
        Self::new(depth, (0..n).map(|_| rng.random::<f64>()).collect())
    }

    /// Every vertex with the same weight.
    pub fn constant(depth: usize, weight: f64) -> Result<Self> {
        Self::new(
            depth,
            vec![weight; (1usize << depth.min(MAX_TREE_ISSUES)) - 1],
        )
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn walk(&self, rng: &mut impl Rng) -> Vec<u8> {
        let mut v = 0;
        (0..self.depth)
            .map(|_| {
                let right = rng.random::<f64>() < self.weights[v];
                v = if right { 2 * v + 2 } else { 2 * v + 1 };
                right as u8
            })
            .collect()
    }
}

/// Binary election whose belief vectors are independent walks down one
/// random tree.
pub fn gen_tree_binary(cfg: &GenConfig) -> Result<Election> {
    if cfg.kind != GenKind::TreeBinary {
        return usage("gen_tree_binary needs a tree config");
    }
    cfg.validate()?;
    let tree = WeightedDecisionTree::random(cfg.num_issues, &mut cfg.rng(WEIGHTS))?;
    gen_from_tree(cfg, &tree)
}

/// Walks a given tree with the candidate and voter streams of `cfg`.
pub fn gen_from_tree(cfg: &GenConfig, tree: &WeightedDecisionTree) -> Result<Election> {
    if tree.depth() != cfg.num_issues {
        return usage("tree depth must equal the issue count");
    }
    let walks = |count: usize, stream: u64| -> Vec<Vec<u8>> {
        let mut rng = cfg.rng(stream);
        (0..count).map(|_| tree.walk(&mut rng)).collect()
    };
    Election::binary(
        &walks(cfg.num_candidates, CANDIDATES),
        &walks(cfg.num_voters, VOTERS),
    )
}
