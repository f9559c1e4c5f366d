//! Smith normal form over the integers.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseMatrix};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, in order.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Checks every postcondition against the input matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() || !self.d.is_diagonal() {
            return false;
        }
        let k = self.d.rows().min(self.d.cols());
        let diag: Vec<&BigInt> = (0..k).map(|i| &self.d[(i, i)]).collect();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        // zeros trail, and each entry divides the next
        let r = self.invariant_factors.len();
        diag[..r].iter().all(|x| !x.is_zero())
            && diag[r..].iter().all(|x| x.is_zero())
            && diag[..r].windows(2).all(|w| (w[1] % w[0]).is_zero())
            && diag[..r].iter().zip(&self.invariant_factors).all(|(a, b)| *a == b)
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let invariant_factors = reduce(&mut d, Some(&mut u), Some(&mut v));
    let out = SnfResult {
        d,
        u,
        v,
        invariant_factors,
    };
    debug_assert!(out.verify(a), "Smith normal form postconditions failed");
    out
}

/// Diagonalizes `d` in place, mirroring row operations into `u` and column
/// operations into `v`. Returns the invariant factors.
fn reduce(d: &mut IntMatrix, mut u: Option<&mut IntMatrix>, mut v: Option<&mut IntMatrix>) -> Vec<BigInt> {
    let (m, n) = (d.rows(), d.cols());
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return factors;
            };
            d.swap_rows(t, pr);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(t, pr);
            }
            d.swap_cols(t, pc);
            if let Some(v) = v.as_deref_mut() {
                v.swap_cols(t, pc);
            }

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &pivot;
                d.sub_row_multiple(i, t, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.sub_row_multiple(i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &pivot;
                d.sub_col_multiple(j, t, &q);
                if let Some(v) = v.as_deref_mut() {
                    v.sub_col_multiple(j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = bad_row {
                let one = -BigInt::one();
                d.sub_row_multiple(t, i, &one);
                if let Some(u) = u.as_deref_mut() {
                    u.sub_row_multiple(t, i, &one);
                }
                continue;
            }
            if pivot.is_negative() {
                d.negate_row(t);
                if let Some(u) = u.as_deref_mut() {
                    u.negate_row(t);
                }
            }
            factors.push(d[(t, t)].clone());
            break;
        }
    }
    factors
}

/// Invariant factors without transforms.
///
/// Unit pivots are first eliminated sparsely in checked `i64` arithmetic;
/// whatever is left goes through the dense big-integer reduction. If the
/// sparse pass would overflow, the whole matrix is reduced densely instead.
pub fn invariant_factors(a: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_unit_pivots(a) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            if let Some(mut rest) = rest {
                out.extend(reduce(&mut rest, None, None));
            }
            out
        }
        None => reduce(&mut a.to_dense(), None, None),
    }
}

pub fn rank(a: &SparseMatrix) -> usize {
    invariant_factors(a).len()
}

/// Invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    reduce(&mut a.clone(), None, None)
}

/// Z-basis of the kernel of `a`, as columns.
pub fn kernel_basis(a: &SparseMatrix) -> IntMatrix {
    let mut d = a.to_dense();
    let n = a.cols;
    let mut v = IntMatrix::identity(n);
    let r = reduce(&mut d, None, Some(&mut v)).len();
    let mut k = IntMatrix::zeros(n, n - r);
    for i in 0..n {
        for j in r..n {
            k[(i, j - r)] = v[(i, j)].clone();
        }
    }
    k
}

type Remainder = Option<IntMatrix>;

fn eliminate_unit_pivots(a: &SparseMatrix) -> Option<(usize, Remainder)> {
    let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); a.rows];
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); a.cols];
    for &(r, c, v) in &a.entries {
        rows[r].insert(c, v);
        cols[c].insert(r);
    }
    let mut active: Vec<usize> = (0..a.rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut units = 0;
    loop {
        // sparsest row with a unit entry, then its sparsest unit column
        let mut choice: Option<(usize, usize, usize)> = None;
        for (slot, &r) in active.iter().enumerate() {
            if choice.is_some_and(|(_, _, best_r)| rows[r].len() >= rows[best_r].len()) {
                continue;
            }
            let col = rows[r]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .map(|(&c, _)| c)
                .min_by_key(|&c| (cols[c].len(), c));
            if let Some(c) = col {
                choice = Some((slot, c, r));
            }
        }
        let Some((slot, pc, pr)) = choice else {
            break;
        };
        active.swap_remove(slot);
        let pivot_row = std::mem::take(&mut rows[pr]);
        let p = pivot_row[&pc];
        for &c in pivot_row.keys() {
            cols[c].remove(&pr);
        }
        let targets: Vec<usize> = cols[pc].iter().copied().collect();
        for i in targets {
            let factor = rows[i][&pc].checked_mul(p)?;
            for (&c, &v) in &pivot_row {
                let cur = rows[i].get(&c).copied().unwrap_or(0);
                let next = cur.checked_sub(factor.checked_mul(v)?)?;
                if next == 0 {
                    rows[i].remove(&c);
                    cols[c].remove(&i);
                } else {
                    rows[i].insert(c, next);
                    cols[c].insert(i);
                }
            }
        }
        debug_assert!(cols[pc].is_empty());
        units += 1;
        active.retain(|&r| !rows[r].is_empty());
    }
    if active.is_empty() {
        return Some((units, None));
    }
    active.sort_unstable();
    let mut live_cols: Vec<usize> = active.iter().flat_map(|&r| rows[r].keys().copied()).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut rest = IntMatrix::zeros(active.len(), live_cols.len());
    for (ri, &r) in active.iter().enumerate() {
        for (&c, &v) in &rows[r] {
            rest[(ri, col_pos[&c])] = BigInt::from(v);
        }
    }
    Some((units, Some(rest)))
}
