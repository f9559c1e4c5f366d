//! Integer cohomology of a bigraded cube complex, block by block.

pub mod snf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

pub use snf::{dense_invariant_factors, invariant_factors, kernel_basis, smith_normal_form, SnfResult};

use crate::cube::{BigradedComplex, ChainMap, Variant};
use crate::error::Result;
use crate::laurent::BivariateLaurent;
use crate::matrix::{IntMatrix, SparseMatrix};
use crate::{par, Bidegree};

/// One cohomology group `H^{i,j,k}`: a free part and cyclic torsion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Nonzero cohomology groups keyed by `(i, (j, k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub variant: Variant,
    /// Number of heights, `|E| + 1`.
    pub heights: usize,
    pub groups: BTreeMap<(usize, Bidegree), CohomologyGroup>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, bd: Bidegree) -> Option<&CohomologyGroup> {
        self.groups.get(&(i, bd))
    }

    pub fn free_rank(&self, i: usize, bd: Bidegree) -> usize {
        self.get(i, bd).map_or(0, |g| g.free_rank)
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|g| !g.torsion.is_empty())
    }

    /// Groups at height `i` in bidegree order.
    pub fn at_height(&self, i: usize) -> impl Iterator<Item = (Bidegree, &CohomologyGroup)> {
        self.groups
            .range((i, (i64::MIN, i64::MIN))..=(i, (i64::MAX, i64::MAX)))
            .map(|(&(_, bd), g)| (bd, g))
    }

    pub fn to_json(&self) -> CohomologyJson {
        CohomologyJson {
            variant: self.variant,
            groups: (0..self.heights)
                .map(|i| HeightJson {
                    i,
                    summands: self
                        .at_height(i)
                        .map(|((j, k), g)| SummandJson {
                            bidegree: [j, k],
                            free_rank: g.free_rank,
                            torsion: g.torsion.iter().map(ToString::to_string).collect(),
                        })
                        .collect(),
                })
                .collect(),
            euler: poincare(self).euler,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyJson {
    pub variant: Variant,
    pub groups: Vec<HeightJson>,
    pub euler: BivariateLaurent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightJson {
    pub i: usize,
    pub summands: Vec<SummandJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandJson {
    pub bidegree: [i64; 2],
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

/// For each block of `d^i`: its bidegree and invariant factors.
fn differential_factors(cx: &BigradedComplex) -> BTreeMap<(usize, Bidegree), Vec<BigInt>> {
    let jobs: Vec<(usize, Bidegree, &SparseMatrix)> = (0..cx.heights())
        .filter_map(|i| cx.differential_blocks(i).map(|b| (i, b)))
        .flat_map(|(i, blocks)| blocks.iter().map(move |(&bd, m)| (i, bd, m)))
        .collect();
    par::map_collect(&jobs, |&(i, bd, m)| ((i, bd), invariant_factors(m)))
        .into_iter()
        .collect()
}

pub fn cohomology(cx: &BigradedComplex) -> CohomologyTable {
    let factors = differential_factors(cx);
    let rank = |i: usize, bd: Bidegree| factors.get(&(i, bd)).map_or(0, Vec::len);
    let mut groups = BTreeMap::new();
    for (i, group) in cx.groups().iter().enumerate() {
        for (&bd, basis) in &group.blocks {
            let incoming = if i == 0 { 0 } else { rank(i - 1, bd) };
            let free_rank = basis.len() - rank(i, bd) - incoming;
            let torsion = match i {
                0 => Vec::new(),
                _ => factors
                    .get(&(i - 1, bd))
                    .map(|f| f.iter().filter(|d| !d.is_one()).cloned().collect())
                    .unwrap_or_default(),
            };
            let g = CohomologyGroup { free_rank, torsion };
            if !g.is_zero() {
                groups.insert((i, bd), g);
            }
        }
    }
    CohomologyTable {
        variant: cx.variant(),
        heights: cx.heights(),
        groups,
    }
}

/// Per-height Poincaré polynomials and their alternating sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poincare {
    pub heights: Vec<BivariateLaurent>,
    pub euler: BivariateLaurent,
}

pub fn poincare(table: &CohomologyTable) -> Poincare {
    let heights: Vec<BivariateLaurent> = (0..table.heights)
        .map(|i| {
            BivariateLaurent::from_terms(
                table
                    .at_height(i)
                    .map(|((j, k), g)| (j, k, g.free_rank as i64)),
            )
        })
        .collect();
    let mut euler = BivariateLaurent::zero();
    for (i, p) in heights.iter().enumerate() {
        euler = if i % 2 == 0 { &euler + p } else { &euler - p };
    }
    Poincare { heights, euler }
}

fn sparse_times_dense(a: &SparseMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows, b.cols());
    for &(r, k, v) in &a.entries {
        let v = BigInt::from(v);
        for c in 0..b.cols() {
            out[(r, c)] += &v * &b[(k, c)];
        }
    }
    out
}

/// Rank over the rationals of `f*: H^{i,j,k}(src) → H^{i,j,k}(dst)` for every
/// block where the source has free cohomology.
pub fn induced_map_ranks(
    src: &BigradedComplex,
    dst: &BigradedComplex,
    f: &ChainMap,
) -> Result<BTreeMap<(usize, Bidegree), usize>> {
    f.check(src, dst)?;
    let table = cohomology(src);
    let keys: Vec<(usize, Bidegree)> = table
        .groups
        .iter()
        .filter(|(_, g)| g.free_rank > 0)
        .map(|(&key, _)| key)
        .collect();
    let blocks = (0..src.heights())
        .map(|i| f.blocks(i, src, dst))
        .collect::<Result<Vec<_>>>()?;
    let ranks = par::map_collect(&keys, |&(i, bd)| {
        let Some(dg) = dst.group(i) else { return 0 };
        let rows = dg.block_dim(bd);
        if rows == 0 {
            return 0;
        }
        let cocycles = kernel_basis(&src.differential_block(i, bd));
        let fk = match blocks[i].get(&bd) {
            Some(fb) => sparse_times_dense(fb, &cocycles),
            None => IntMatrix::zeros(rows, cocycles.cols()),
        };
        let boundary = if i == 0 {
            SparseMatrix::zeros(rows, 0)
        } else {
            dst.differential_block(i - 1, bd)
        };
        let boundary_rank = invariant_factors(&boundary).len();
        let b = boundary.to_dense();
        let mut stacked = IntMatrix::zeros(rows, fk.cols() + b.cols());
        for r in 0..rows {
            for c in 0..fk.cols() {
                stacked[(r, c)] = fk[(r, c)].clone();
            }
            for c in 0..b.cols() {
                stacked[(r, fk.cols() + c)] = b[(r, c)].clone();
            }
        }
        dense_invariant_factors(&stacked).len() - boundary_rank
    });
    Ok(keys.into_iter().zip(ranks).collect())
}

#[cfg(test)]
mod tests;
