//! Subset enumeration and incremental row sums.
//!
//! Every exhaustive solver here reduces to the same loop: walk nonempty
//! column subsets and keep, for each row of an integer matrix, the sum of the
//! row over the current subset. Rows are scaled to integers once up front so
//! the inner loop is additions only; `i128` is used whenever no partial sum
//! can overflow, arbitrary precision otherwise.

use std::fmt::Debug;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default limit on the number of columns enumerated exhaustively.
pub const DEFAULT_CAP: usize = 25;

/// Hard limit imposed by the `u64` subset masks.
pub const MAX_CAP: usize = 63;

pub fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap.min(MAX_CAP) {
        return Err(Error::Capacity {
            size,
            cap: cap.min(MAX_CAP),
        });
    }
    Ok(())
}

/// Nonempty subsets of `{0..n}` as bit masks, by increasing size and then
/// lexicographically by sorted member list.
#[derive(Clone, Debug)]
pub struct CanonicalSubsets {
    n: usize,
    combo: Vec<usize>,
    done: bool,
}

impl CanonicalSubsets {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_CAP);
        CanonicalSubsets {
            n,
            combo: Vec::new(),
            done: n == 0,
        }
    }
}

impl Iterator for CanonicalSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let k = self.combo.len();
        // advance to the next combination of the same size, or grow
        let mut pos = None;
        for i in (0..k).rev() {
            if self.combo[i] < self.n - k + i {
                pos = Some(i);
                break;
            }
        }
        match pos {
            Some(i) => {
                self.combo[i] += 1;
                for t in i + 1..k {
                    self.combo[t] = self.combo[t - 1] + 1;
                }
            }
            None if k < self.n => self.combo = (0..=k).collect(),
            None => {
                self.done = true;
                return None;
            }
        }
        Some(self.combo.iter().fold(0u64, |m, &c| m | 1 << c))
    }
}

/// Integer types the row-sum engine runs on.
pub trait SumInt:
    Clone + Ord + Zero + Debug + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    /// Converts a threshold to compare sums against. Values outside the
    /// representable range are clamped beyond any reachable sum.
    fn from_big_saturating(v: &BigInt) -> Self;

    fn to_big(&self) -> BigInt;
}

impl SumInt for i128 {
    fn from_big_saturating(v: &BigInt) -> Self {
        const LIMIT: i128 = 1 << 121;
        v.to_i128()
            .map_or(if v.is_negative() { -LIMIT } else { LIMIT }, |x| {
                x.clamp(-LIMIT, LIMIT)
            })
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SumInt for BigInt {
    fn from_big_saturating(v: &BigInt) -> Self {
        v.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// A rows × cols integer matrix stored column by column.
#[derive(Clone, Debug)]
pub struct ColumnTable<T> {
    rows: usize,
    columns: Vec<Vec<T>>,
}

impl<T: SumInt> ColumnTable<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn sums(&self) -> RunningSums<'_, T> {
        RunningSums {
            table: self,
            in_set: vec![false; self.cols()],
            mask: 0,
            sums: vec![T::zero(); self.rows],
        }
    }
}

/// Integer table with the narrowest representation that cannot overflow.
#[derive(Clone, Debug)]
pub enum IntTable {
    Small(ColumnTable<i128>),
    Big(ColumnTable<BigInt>),
}

impl IntTable {
    /// `rows[r][c]` becomes entry `(r, c)`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        let bound = BigInt::from(1u128 << 120);
        let fits = rows
            .iter()
            .all(|r| r.iter().map(Signed::abs).sum::<BigInt>() < bound);
        let nrows = rows.len();
        let mut columns: Vec<Vec<BigInt>> = vec![Vec::with_capacity(nrows); cols];
        for r in rows {
            for (c, v) in r.into_iter().enumerate() {
                columns[c].push(v);
            }
        }
        if fits {
            let columns = columns
                .into_iter()
                .map(|c| c.iter().map(|v| v.to_i128().unwrap()).collect())
                .collect();
            IntTable::Small(ColumnTable {
                rows: nrows,
                columns,
            })
        } else {
            IntTable::Big(ColumnTable {
                rows: nrows,
                columns,
            })
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            IntTable::Small(t) => t.rows,
            IntTable::Big(t) => t.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            IntTable::Small(t) => t.cols(),
            IntTable::Big(t) => t.cols(),
        }
    }
}

/// Dispatches a generic body over both representations of an [`IntTable`].
macro_rules! with_table {
    ($table:expr, |$t:ident| $body:expr) => {
        match $table {
            $crate::subsets::IntTable::Small($t) => $body,
            $crate::subsets::IntTable::Big($t) => $body,
        }
    };
}
pub(crate) use with_table;

/// Per-row sums over a column subset that is edited one column at a time.
#[derive(Clone, Debug)]
pub struct RunningSums<'a, T> {
    table: &'a ColumnTable<T>,
    in_set: Vec<bool>,
    mask: u64,
    sums: Vec<T>,
}

impl<T: SumInt> RunningSums<'_, T> {
    pub fn add(&mut self, c: usize) {
        if !std::mem::replace(&mut self.in_set[c], true) {
            for (s, v) in self.sums.iter_mut().zip(&self.table.columns[c]) {
                *s += v;
            }
            if c < 64 {
                self.mask |= 1 << c;
            }
        }
    }

    pub fn remove(&mut self, c: usize) {
        if std::mem::replace(&mut self.in_set[c], false) {
            for (s, v) in self.sums.iter_mut().zip(&self.table.columns[c]) {
                *s -= v;
            }
            if c < 64 {
                self.mask &= !(1 << c);
            }
        }
    }

    /// Moves to the subset given by `mask`, touching only changed columns.
    pub fn set_mask(&mut self, mask: u64) {
        let diff = self.mask ^ mask;
        for c in (0..self.table.cols().min(64)).filter(|c| diff >> c & 1 == 1) {
            if mask >> c & 1 == 1 {
                self.add(c);
            } else {
                self.remove(c);
            }
        }
    }

    pub fn get(&self) -> &[T] {
        &self.sums
    }

    pub fn contains(&self, c: usize) -> bool {
        self.in_set[c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(mask: u64) -> Vec<usize> {
        (0..64).filter(|k| mask >> k & 1 == 1).collect()
    }

    #[test]
    fn canonical_order_small() {
        let got: Vec<Vec<usize>> = CanonicalSubsets::new(3).map(members).collect();
        let want: Vec<Vec<usize>> = vec![
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![0, 1, 2],
        ];
        assert_eq!(got, want);
        assert_eq!(CanonicalSubsets::new(0).count(), 0);
    }

    #[test]
    fn canonical_order_is_sorted_and_complete() {
        for n in 1..=10 {
            let all: Vec<u64> = CanonicalSubsets::new(n).collect();
            assert_eq!(all.len(), (1 << n) - 1);
            let keys: Vec<(usize, Vec<usize>)> = all
                .iter()
                .map(|&m| (m.count_ones() as usize, members(m)))
                .collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn running_sums_follow_masks() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(-2), BigInt::from(5)],
            vec![BigInt::from(0), BigInt::from(3), BigInt::from(-1)],
        ];
        let table = IntTable::from_rows(rows.clone(), 3);
        assert!(matches!(table, IntTable::Small(_)));
        with_table!(&table, |t| {
            let mut s = t.sums();
            for mask in CanonicalSubsets::new(3) {
                s.set_mask(mask);
                for (r, row) in rows.iter().enumerate() {
                    let want: BigInt = members(mask).iter().map(|&c| row[c].clone()).sum();
                    assert_eq!(s.get()[r].to_big(), want);
                }
            }
        });
    }

    #[test]
    fn huge_entries_use_big_integers() {
        let big = BigInt::from(1u128 << 126);
        let table = IntTable::from_rows(vec![vec![big.clone(), big.clone()]], 2);
        let IntTable::Big(t) = &table else {
            panic!("expected big table")
        };
        let mut s = t.sums();
        s.set_mask(0b11);
        assert_eq!(s.get()[0], big * 2);
    }
}
