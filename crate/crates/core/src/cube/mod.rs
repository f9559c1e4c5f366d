//! The hypercube cochain complex of a graph.
//!
//! Each state `S` carries `M^{⊗λ} ⊗ M^{⊗μ} ⊗ N^{⊗ν}` with `λ = |S|`,
//! `μ = b0([G:S])`, `ν = b1([G:S])`. Tensor slots are laid out as edge slots
//! (ascending edge index), then component slots (ascending minimal vertex),
//! then cycle slots. A local basis index is the mixed-radix number whose
//! least significant digit is the first edge slot. The tutte variant drops
//! the edge slots.
//!
//! Adding an edge `e` to `S` inserts `u(1)` at `e`'s edge slot and then
//! either appends `u_N(1)` as a new last cycle slot (a cycle closes) or
//! multiplies the two merging components' factors. The differential is
//! `d = Σ (-1)^{#{edges of S before e}} d_{S,e}`.

mod algebra;
mod maps;

use std::collections::BTreeMap;

use serde::Serialize;

pub use algebra::{AlgebraSpec, CubeAlgebras};
pub use maps::{phi_psi, projection_map, ChainMap};

use crate::error::{Error, Result};
use crate::laurent::BivariateLaurent;
use crate::matrix::SparseMatrix;
use crate::multigraph::{EdgeAddition, Multigraph, StateStats, StateSubset};
use crate::{par, Bidegree};

pub const DEFAULT_MAX_EDGES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `C_Y`, with edge factors.
    Yamada,
    /// `C_T`, without edge factors.
    Tutte,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "yamada" => Ok(Self::Yamada),
            "tutte" => Ok(Self::Tutte),
            other => Err(format!("unknown variant '{other}' (expected yamada or tutte)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Yamada => "yamada",
            Self::Tutte => "tutte",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_edges: usize,
    pub algebras: CubeAlgebras,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_edges: DEFAULT_MAX_EDGES,
            algebras: CubeAlgebras::default(),
        }
    }
}

/// One letter of a cube edge label in `{0, 1, *}^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeCoord {
    Zero,
    One,
    Star,
}

/// `(-1)^{number of 1s before the *}`.
pub fn edge_sign(label: &[CubeCoord]) -> Result<i64> {
    let stars = label.iter().filter(|&&c| c == CubeCoord::Star).count();
    if stars != 1 {
        return Err(Error::BadCubeLabel(stars));
    }
    let ones = label
        .iter()
        .take_while(|&&c| c != CubeCoord::Star)
        .filter(|&&c| c == CubeCoord::One)
        .count();
    Ok(if ones % 2 == 0 { 1 } else { -1 })
}

/// A basis element of `C^S`: one basis index of `M` or `N` per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub state: StateSubset,
    pub edge_digits: Vec<u8>,
    pub comp_digits: Vec<u8>,
    pub cycle_digits: Vec<u8>,
}

impl BasisVector {
    pub fn bidegree(&self, algebras: &CubeAlgebras) -> Bidegree {
        let mut deg = (0, 0);
        let slots = self.edge_digits.iter().chain(&self.comp_digits);
        for &d in slots {
            let (j, k) = algebras.m.degree(d as usize);
            deg = (deg.0 + j, deg.1 + k);
        }
        for &d in &self.cycle_digits {
            let (j, k) = algebras.n.degree(d as usize);
            deg = (deg.0 + j, deg.1 + k);
        }
        deg
    }
}

/// The summand `C^S` of one state inside a chain group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub state: StateSubset,
    pub stats: StateStats,
    /// Global index of this summand's first basis vector within its height.
    pub offset: usize,
    pub dim: usize,
    edge_slots: usize,
}

impl Summand {
    fn new(state: StateSubset, stats: StateStats, variant: Variant, algebras: &CubeAlgebras) -> Self {
        let edge_slots = match variant {
            Variant::Yamada => stats.edges,
            Variant::Tutte => 0,
        };
        let rm = algebras.m.rank();
        let rn = algebras.n.rank();
        let dim = rm.pow((edge_slots + stats.b0) as u32) * rn.pow(stats.b1 as u32);
        Self {
            state,
            stats,
            offset: 0,
            dim,
            edge_slots,
        }
    }

    pub fn edge_slots(&self) -> usize {
        self.edge_slots
    }

    fn decode(&self, mut local: usize, rm: usize, rn: usize) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let mut take = |count: usize, radix: usize| {
            let mut v = Vec::with_capacity(count + 1);
            for _ in 0..count {
                v.push((local % radix) as u8);
                local /= radix;
            }
            v
        };
        let edge = take(self.edge_slots, rm);
        let comp = take(self.stats.b0, rm);
        let cycle = take(self.stats.b1, rn);
        (edge, comp, cycle)
    }

    fn encode(edge: &[u8], comp: &[u8], cycle: &[u8], rm: usize, rn: usize) -> usize {
        let mut local = 0;
        let mut scale = 1;
        for (digits, radix) in [(edge, rm), (comp, rm), (cycle, rn)] {
            for &d in digits {
                local += d as usize * scale;
                scale *= radix;
            }
        }
        local
    }

    fn basis_vector(&self, local: usize, algebras: &CubeAlgebras) -> BasisVector {
        let (edge_digits, comp_digits, cycle_digits) =
            self.decode(local, algebras.m.rank(), algebras.n.rank());
        BasisVector {
            state: self.state,
            edge_digits,
            comp_digits,
            cycle_digits,
        }
    }
}

/// `C^i`: the summands of height `i` in ascending state order, split into
/// bidegree blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGroup {
    pub summands: Vec<Summand>,
    pub dim: usize,
    /// Global indices of each bidegree block, ascending.
    pub blocks: BTreeMap<Bidegree, Vec<usize>>,
    degree_of: Vec<Bidegree>,
    position: Vec<usize>,
}

impl ChainGroup {
    fn empty() -> Self {
        Self {
            summands: Vec::new(),
            dim: 0,
            blocks: BTreeMap::new(),
            degree_of: Vec::new(),
            position: Vec::new(),
        }
    }

    pub fn summand_index(&self, state: StateSubset) -> Option<usize> {
        self.summands
            .binary_search_by_key(&state.mask(), |s| s.state.mask())
            .ok()
    }

    pub fn block_dim(&self, bd: Bidegree) -> usize {
        self.blocks.get(&bd).map_or(0, Vec::len)
    }

    /// Bidegree and in-block position of a global index.
    pub fn locate(&self, global: usize) -> (Bidegree, usize) {
        (self.degree_of[global], self.position[global])
    }

    pub fn qdim(&self) -> BivariateLaurent {
        BivariateLaurent::from_terms(self.blocks.iter().map(|(&(j, k), v)| (j, k, v.len() as i64)))
    }
}

/// The cochain complex `C^0 → C^1 → ... → C^n` with bidegree-split
/// differentials, checked for `d² = 0` at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComplex {
    variant: Variant,
    graph: Multigraph,
    algebras: CubeAlgebras,
    groups: Vec<ChainGroup>,
    /// `differentials[i][bd]` maps block `bd` of `C^i` to block `bd` of `C^{i+1}`.
    differentials: Vec<BTreeMap<Bidegree, SparseMatrix>>,
}

/// Per-block differential record, as emitted by `dump`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixRecord {
    pub i: usize,
    pub bidegree: [i64; 2],
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[i64; 3]>,
}

struct CubeContext<'a> {
    graph: &'a Multigraph,
    variant: Variant,
    algebras: &'a CubeAlgebras,
}

impl CubeContext<'_> {
    fn summand(&self, state: StateSubset) -> Result<Summand> {
        let stats = self.graph.state_stats(state)?;
        Ok(Summand::new(state, stats, self.variant, self.algebras))
    }

    /// Unsigned `d_{S,e}` as `(target local, source local, coefficient)`.
    fn edge_map(&self, src: &Summand, e: usize, tgt: &Summand) -> Vec<(usize, usize, i64)> {
        let m = &self.algebras.m;
        let rm = m.rank();
        let rn = self.algebras.n.rank();
        let slot = src.state.rank_of(e);
        let addition = src.stats.classify_addition(self.graph.edges()[e]);
        // source component -> target component slot
        let comp_target: Vec<usize> = src
            .stats
            .components
            .iter()
            .map(|c| tgt.stats.component_of[c[0]])
            .collect();
        let mut out = Vec::new();
        for local in 0..src.dim {
            let (mut edge, comp, mut cycle) = src.decode(local, rm, rn);
            if self.variant == Variant::Yamada {
                edge.insert(slot, m.unit() as u8);
            }
            match addition {
                EdgeAddition::ClosesCycle { .. } => {
                    cycle.push(self.algebras.n.unit() as u8);
                    out.push((Summand::encode(&edge, &comp, &cycle, rm, rn), local, 1));
                }
                EdgeAddition::Merges { first, second } => {
                    let merged_slot = comp_target[first];
                    let mut new_comp = vec![0u8; tgt.stats.b0];
                    for (k, &d) in comp.iter().enumerate() {
                        if k != first && k != second {
                            new_comp[comp_target[k]] = d;
                        }
                    }
                    let product = m.product(comp[first] as usize, comp[second] as usize);
                    for (basis, &coeff) in product.iter().enumerate() {
                        if coeff != 0 {
                            new_comp[merged_slot] = basis as u8;
                            out.push((Summand::encode(&edge, &new_comp, &cycle, rm, rn), local, coeff));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Basis of `C^S` in local order.
pub fn chain_module(g: &Multigraph, s: StateSubset, variant: Variant) -> Result<Vec<BasisVector>> {
    chain_module_with(g, s, variant, &CubeAlgebras::default())
}

pub fn chain_module_with(
    g: &Multigraph,
    s: StateSubset,
    variant: Variant,
    algebras: &CubeAlgebras,
) -> Result<Vec<BasisVector>> {
    let ctx = CubeContext {
        graph: g,
        variant,
        algebras,
    };
    let summand = ctx.summand(s)?;
    Ok((0..summand.dim)
        .map(|local| summand.basis_vector(local, algebras))
        .collect())
}

/// Unsigned per-edge map `C^S → C^{S ∪ {e}}` in local bases
/// (rows index the target).
pub fn per_edge_map(g: &Multigraph, s: StateSubset, e: usize, variant: Variant) -> Result<SparseMatrix> {
    per_edge_map_with(g, s, e, variant, &CubeAlgebras::default())
}

pub fn per_edge_map_with(
    g: &Multigraph,
    s: StateSubset,
    e: usize,
    variant: Variant,
    algebras: &CubeAlgebras,
) -> Result<SparseMatrix> {
    g.edge(e)?;
    if s.contains(e) {
        return Err(Error::EdgeInState(e));
    }
    let ctx = CubeContext {
        graph: g,
        variant,
        algebras,
    };
    let src = ctx.summand(s)?;
    let tgt = ctx.summand(s.with(e))?;
    SparseMatrix::from_entries(tgt.dim, src.dim, ctx.edge_map(&src, e, &tgt))
}

pub fn build_complex(g: &Multigraph, variant: Variant) -> Result<BigradedComplex> {
    build_complex_with(g, variant, &BuildOptions::default())
}

pub fn build_complex_with(g: &Multigraph, variant: Variant, options: &BuildOptions) -> Result<BigradedComplex> {
    let n = g.edge_count();
    if n > options.max_edges || n > 62 {
        return Err(Error::SizeLimit {
            edges: n,
            limit: options.max_edges.min(62),
        });
    }
    let ctx = CubeContext {
        graph: g,
        variant,
        algebras: &options.algebras,
    };

    let mut by_height: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 0..1u64 << n {
        by_height[mask.count_ones() as usize].push(mask);
    }
    let groups = by_height
        .iter()
        .map(|masks| build_group(&ctx, masks))
        .collect::<Result<Vec<_>>>()?;

    let differentials = par::map_range(n, |i| assemble_differential(&ctx, &groups[i], &groups[i + 1], i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let cx = BigradedComplex {
        variant,
        graph: g.clone(),
        algebras: options.algebras.clone(),
        groups,
        differentials,
    };
    cx.check_square_zero()?;
    Ok(cx)
}

fn build_group(ctx: &CubeContext<'_>, masks: &[u64]) -> Result<ChainGroup> {
    let width = ctx.graph.edge_count();
    let mut summands = par::map_collect(masks, |&mask| {
        StateSubset::new(mask, width).and_then(|s| ctx.summand(s))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut offset = 0;
    for s in &mut summands {
        s.offset = offset;
        offset += s.dim;
    }
    let mut group = ChainGroup {
        summands,
        dim: offset,
        ..ChainGroup::empty()
    };
    group.degree_of = Vec::with_capacity(offset);
    for s in &group.summands {
        for local in 0..s.dim {
            group
                .degree_of
                .push(s.basis_vector(local, ctx.algebras).bidegree(ctx.algebras));
        }
    }
    group.position = vec![0; offset];
    for (global, &bd) in group.degree_of.iter().enumerate() {
        let block = group.blocks.entry(bd).or_default();
        group.position[global] = block.len();
        block.push(global);
    }
    Ok(group)
}

fn assemble_differential(
    ctx: &CubeContext<'_>,
    src: &ChainGroup,
    tgt: &ChainGroup,
    height: usize,
) -> Result<BTreeMap<Bidegree, SparseMatrix>> {
    let n = ctx.graph.edge_count();
    let pieces = par::map_collect(&src.summands, |s| {
        let mut entries = Vec::new();
        for e in (0..n).filter(|&e| !s.state.contains(e)) {
            let t = &tgt.summands[tgt
                .summand_index(s.state.with(e))
                .expect("target state present at the next height")];
            let sign = if s.state.rank_of(e) % 2 == 0 { 1 } else { -1 };
            for (tl, sl, v) in ctx.edge_map(s, e, t) {
                entries.push((t.offset + tl, s.offset + sl, sign * v));
            }
        }
        entries
    });

    let mut blocks: BTreeMap<Bidegree, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for &bd in src.blocks.keys().chain(tgt.blocks.keys()) {
        blocks.entry(bd).or_default();
    }
    for (r, c, v) in pieces.into_iter().flatten() {
        let (from, col) = src.locate(c);
        let (to, row) = tgt.locate(r);
        if from != to {
            return Err(Error::BidegreeViolation { height, from, to });
        }
        blocks.get_mut(&from).expect("block registered").push((row, col, v));
    }
    blocks
        .into_iter()
        .map(|(bd, entries)| {
            SparseMatrix::from_entries(tgt.block_dim(bd), src.block_dim(bd), entries).map(|m| (bd, m))
        })
        .collect()
}

impl BigradedComplex {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn algebras(&self) -> &CubeAlgebras {
        &self.algebras
    }

    /// Heights `0..=n`.
    pub fn heights(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, i: usize) -> Option<&ChainGroup> {
        self.groups.get(i)
    }

    pub fn groups(&self) -> &[ChainGroup] {
        &self.groups
    }

    /// `dim C^i`, zero outside `0..=n`.
    pub fn dim(&self, i: usize) -> usize {
        self.groups.get(i).map_or(0, |g| g.dim)
    }

    pub fn chain_ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim).collect()
    }

    /// All bidegrees occurring in any chain group.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut all: Vec<Bidegree> = self.groups.iter().flat_map(|g| g.blocks.keys().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// The block of `d^i` in bidegree `bd`, or an empty matrix of the
    /// right shape when the block is absent.
    pub fn differential_block(&self, i: usize, bd: Bidegree) -> SparseMatrix {
        self.differentials
            .get(i)
            .and_then(|m| m.get(&bd))
            .cloned()
            .unwrap_or_else(|| {
                let rows = self.groups.get(i + 1).map_or(0, |g| g.block_dim(bd));
                let cols = self.groups.get(i).map_or(0, |g| g.block_dim(bd));
                SparseMatrix::zeros(rows, cols)
            })
    }

    pub fn differential_blocks(&self, i: usize) -> Option<&BTreeMap<Bidegree, SparseMatrix>> {
        self.differentials.get(i)
    }

    /// `d^i` in global coordinates, `dim C^{i+1} × dim C^i`.
    pub fn differential(&self, i: usize) -> SparseMatrix {
        let mut entries = Vec::new();
        if let Some(blocks) = self.differentials.get(i) {
            let (src, tgt) = (&self.groups[i], &self.groups[i + 1]);
            for (bd, m) in blocks {
                let (Some(cols), Some(rows)) = (src.blocks.get(bd), tgt.blocks.get(bd)) else {
                    continue;
                };
                entries.extend(m.entries.iter().map(|&(r, c, v)| (rows[r], cols[c], v)));
            }
        }
        SparseMatrix::from_entries(self.dim(i + 1), self.dim(i), entries).expect("no duplicate entries")
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 0..self.differentials.len().saturating_sub(1) {
            for (&bd, first) in &self.differentials[i] {
                let Some(second) = self.differentials[i + 1].get(&bd) else {
                    continue;
                };
                if !second.mul(first)?.is_zero() {
                    return Err(Error::DifferentialSquareNonzero { height: i, bidegree: bd });
                }
            }
        }
        Ok(())
    }

    /// `Σ_i (-1)^i qdim C^i`.
    pub fn graded_euler(&self) -> BivariateLaurent {
        let mut chi = BivariateLaurent::zero();
        for (i, g) in self.groups.iter().enumerate() {
            let q = g.qdim();
            if i % 2 == 0 {
                chi += q;
            } else {
                chi = &chi - &q;
            }
        }
        chi
    }

    /// Differential blocks for `dump`, optionally restricted to one height.
    pub fn dump(&self, height: Option<usize>) -> Vec<MatrixRecord> {
        self.differentials
            .iter()
            .enumerate()
            .filter(|(i, _)| height.is_none_or(|h| h == *i))
            .flat_map(|(i, blocks)| {
                blocks.iter().map(move |(&(j, k), m)| MatrixRecord {
                    i,
                    bidegree: [j, k],
                    rows: m.rows,
                    cols: m.cols,
                    entries: m.entries.iter().map(|&(r, c, v)| [r as i64, c as i64, v]).collect(),
                })
            })
            .collect()
    }
}

/// `Σ_i (-1)^i qdim C^i` of a built complex.
pub fn graded_euler(cx: &BigradedComplex) -> BivariateLaurent {
    cx.graded_euler()
}
