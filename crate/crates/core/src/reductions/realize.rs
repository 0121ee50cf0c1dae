//! Concrete elections whose margin matrix is a prescribed one.
//!
//! For `p = 1` every position is an exact rational. For larger `p` the
//! positions involve `p`-th roots and are stored as the nearest doubles, so
//! each realization is checked by recomputing its margins exactly from the
//! stored positions.

use num_traits::{Signed, Zero};

use crate::election::{Domain, Election, NormOrder, TARGET};
use crate::error::{Error, Result};
use crate::exact::MarginInstance;
use crate::rational::{from_f64, int, to_f64, Rational};

/// A realized election and the largest deviation of its recomputed margins
/// from the requested ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Realized {
    pub election: Election,
    pub residual: f64,
}

/// Residual accepted for a realization: tight for `p ≤ 2` where closed forms
/// exist, looser once bisection is involved.
pub fn tolerance(norm: NormOrder) -> f64 {
    if norm.get() <= 2 {
        1e-9
    } else {
        1e-6
    }
}

fn root(x: f64, p: u32) -> f64 {
    match p {
        1 => x,
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / p as f64),
    }
}

fn checked(
    election: Election,
    mi: &MarginInstance,
    norm: NormOrder,
    rows_are_voters: bool,
) -> Result<Realized> {
    let a = election.margin_tensor(norm);
    let mut residual = 0f64;
    for r in 0..mi.rows() {
        for k in 0..mi.cols() {
            let got = if rows_are_voters {
                a.get(0, r, k)
            } else {
                a.get(r, 0, k)
            };
            residual = residual.max(to_f64(&(got - mi.get(r, k)).abs()));
        }
    }
    let tolerance = tolerance(norm);
    if residual > tolerance {
        return Err(Error::Realization {
            residual,
            tolerance,
        });
    }
    Ok(Realized { election, residual })
}

/// One voter at the origin, a target at `|min_i M_ik|^{1/p}` on each issue
/// and rival `i` at `(M_ik + |min_i M_ik|)^{1/p}`, so that
/// `|c_ik|^p − |c_0k|^p = M_ik`.
pub fn realize_single_voter(mi: &MarginInstance, norm: NormOrder) -> Result<Realized> {
    let p = norm.get();
    let (rows, cols) = (mi.rows(), mi.cols());
    let mut candidates = vec![Vec::with_capacity(cols); rows + 1];
    for k in 0..cols {
        let base = (0..rows)
            .map(|i| mi.get(i, k))
            .min()
            .expect("nonempty column")
            .abs();
        let place = |x: Rational| -> Result<Rational> {
            if p == 1 {
                Ok(x)
            } else {
                from_f64(root(to_f64(&x), p))
            }
        };
        candidates[TARGET].push(place(base.clone())?);
        for i in 0..rows {
            candidates[i + 1].push(place(mi.get(i, k) + &base)?);
        }
    }
    let voters = vec![vec![Rational::zero(); cols]];
    let election = Election::new(candidates, voters, Domain::Real)?;
    checked(election, mi, norm, false)
}

/// Two candidates, target at 0 and rival at `M̄_k^{1/p}` with
/// `M̄_k = max_j |M_jk|`; voter `j` sits where
/// `f(z) = |c_2 − z|^p − |z|^p` equals `M_jk`.
pub fn realize_two_candidate(mi: &MarginInstance, norm: NormOrder) -> Result<Realized> {
    let p = norm.get();
    let (rows, cols) = (mi.rows(), mi.cols());
    let mut rival = Vec::with_capacity(cols);
    let mut voters = vec![Vec::with_capacity(cols); rows];
    for k in 0..cols {
        let bar = (0..rows)
            .map(|j| mi.get(j, k).abs())
            .max()
            .expect("nonempty column");
        if bar.is_zero() {
            rival.push(Rational::zero());
            for v in &mut voters {
                v.push(Rational::zero());
            }
            continue;
        }
        if p == 1 {
            rival.push(bar.clone());
            for (j, v) in voters.iter_mut().enumerate() {
                v.push((&bar - mi.get(j, k)) / int(2));
            }
            continue;
        }
        let c2 = root(to_f64(&bar), p);
        rival.push(from_f64(c2)?);
        for (j, v) in voters.iter_mut().enumerate() {
            let target = to_f64(mi.get(j, k));
            let z = if p == 2 {
                (to_f64(&bar) - target) / (2.0 * c2)
            } else {
                bisect(c2, p, target)
            };
            v.push(from_f64(z)?);
        }
    }
    let candidates = vec![vec![Rational::zero(); cols], rival];
    let election = Election::new(candidates, voters, Domain::Real)?;
    checked(election, mi, norm, true)
}

/// Solves `|c2 − z|^p − |z|^p = target` on `[0, c2]`, where the left side
/// decreases from `c2^p` to `−c2^p`.
fn bisect(c2: f64, p: u32, target: f64) -> f64 {
    let f = |z: f64| (c2 - z).abs().powi(p as i32) - z.abs().powi(p as i32);
    let (mut lo, mut hi) = (0.0, c2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let val = f(mid);
        if (val - target).abs() <= 1e-12 || mid == lo || mid == hi {
            return mid;
        }
        if val > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
