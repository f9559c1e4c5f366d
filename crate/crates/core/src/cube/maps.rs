use std::collections::BTreeMap;

use super::{BigradedComplex, BuildOptions, Variant};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::multigraph::StateSubset;
use crate::Bidegree;

/// A degree-zero map of cochain complexes, one matrix per height in global
/// coordinates (`dim dst^i × dim src^i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub heights: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn zero(src: &BigradedComplex, dst: &BigradedComplex) -> Self {
        Self {
            heights: (0..src.heights())
                .map(|i| SparseMatrix::zeros(dst.dim(i), src.dim(i)))
                .collect(),
        }
    }

    pub fn identity(cx: &BigradedComplex) -> Self {
        Self {
            heights: (0..cx.heights()).map(|i| SparseMatrix::identity(cx.dim(i))).collect(),
        }
    }

    pub fn at(&self, i: usize) -> Option<&SparseMatrix> {
        self.heights.get(i)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.heights.len() != other.heights.len() {
            return Err(Error::IncompatibleComplexes("maps cover different heights".into()));
        }
        let heights = self
            .heights
            .iter()
            .zip(&other.heights)
            .map(|(f, g)| {
                if g.cols != f.rows {
                    return Err(Error::IncompatibleComplexes("inner dimensions differ".into()));
                }
                g.mul(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { heights })
    }

    fn check_shape(&self, src: &BigradedComplex, dst: &BigradedComplex) -> Result<()> {
        if self.heights.len() != src.heights() {
            return Err(Error::IncompatibleComplexes(format!(
                "map has {} heights, source complex {}",
                self.heights.len(),
                src.heights()
            )));
        }
        for (i, f) in self.heights.iter().enumerate() {
            if (f.rows, f.cols) != (dst.dim(i), src.dim(i)) {
                return Err(Error::IncompatibleComplexes(format!(
                    "height {i}: map is {}x{}, complexes need {}x{}",
                    f.rows,
                    f.cols,
                    dst.dim(i),
                    src.dim(i)
                )));
            }
        }
        Ok(())
    }

    /// `f^{i+1} ∘ d_src^i = d_dst^i ∘ f^i` at every height, and every entry
    /// connects equal bidegrees.
    pub fn check(&self, src: &BigradedComplex, dst: &BigradedComplex) -> Result<()> {
        self.check_shape(src, dst)?;
        for i in 0..self.heights.len() {
            self.blocks(i, src, dst)?;
        }
        for i in 0..self.heights.len().saturating_sub(1) {
            let left = self.heights[i + 1].mul(&src.differential(i))?;
            let right = dst.differential(i).mul(&self.heights[i])?;
            if left != right {
                return Err(Error::NotChainMap(format!("square at height {i} does not commute")));
            }
        }
        Ok(())
    }

    /// The map at height `i` split into bidegree blocks. Blocks absent from
    /// the result are zero.
    pub fn blocks(
        &self,
        i: usize,
        src: &BigradedComplex,
        dst: &BigradedComplex,
    ) -> Result<BTreeMap<Bidegree, SparseMatrix>> {
        let f = self
            .heights
            .get(i)
            .ok_or_else(|| Error::IncompatibleComplexes(format!("no map at height {i}")))?;
        let (Some(sg), Some(dg)) = (src.group(i), dst.group(i)) else {
            return Ok(BTreeMap::new());
        };
        let mut out: BTreeMap<Bidegree, Vec<(usize, usize, i64)>> = BTreeMap::new();
        for &(r, c, v) in &f.entries {
            let (from, col) = sg.locate(c);
            let (to, row) = dg.locate(r);
            if from != to {
                return Err(Error::NotChainMap(format!(
                    "height {i}: entry maps bidegree {from:?} to {to:?}"
                )));
            }
            out.entry(from).or_default().push((row, col, v));
        }
        out.into_iter()
            .map(|(bd, e)| SparseMatrix::from_entries(dg.block_dim(bd), sg.block_dim(bd), e).map(|m| (bd, m)))
            .collect()
    }
}

fn same_graph(a: &BigradedComplex, b: &BigradedComplex) -> Result<()> {
    if a.graph() != b.graph() || a.algebras() != b.algebras() {
        return Err(Error::IncompatibleComplexes(
            "complexes are built on different graphs or algebras".into(),
        ));
    }
    Ok(())
}

/// `φ: C_T → C_Y` (insert `u(1)` in every edge slot) and
/// `ψ: C_Y → C_T` (apply `η` to every edge slot).
pub fn phi_psi(tutte: &BigradedComplex, yamada: &BigradedComplex) -> Result<(ChainMap, ChainMap)> {
    if tutte.variant() != Variant::Tutte || yamada.variant() != Variant::Yamada {
        return Err(Error::IncompatibleComplexes("expected a tutte and a yamada complex".into()));
    }
    same_graph(tutte, yamada)?;
    let m = &tutte.algebras().m;
    let eta = m.counit().ok_or(Error::MissingCounit)?;
    let rm = m.rank();
    let unit = m.unit();

    let mut phi = Vec::with_capacity(tutte.heights());
    let mut psi = Vec::with_capacity(tutte.heights());
    for (tg, yg) in tutte.groups().iter().zip(yamada.groups()) {
        let mut phi_entries = Vec::with_capacity(tg.dim);
        let mut psi_entries = Vec::new();
        for (ts, ys) in tg.summands.iter().zip(&yg.summands) {
            let lambda = ys.edge_slots();
            let scale = rm.pow(lambda as u32);
            let unit_code: usize = (0..lambda).map(|k| unit * rm.pow(k as u32)).sum();
            for x in 0..ts.dim {
                phi_entries.push((ys.offset + unit_code + scale * x, ts.offset + x, 1));
            }
            for y in 0..ys.dim {
                let mut rest = y;
                let mut coeff = 1i64;
                for _ in 0..lambda {
                    coeff *= eta[rest % rm];
                    rest /= rm;
                    if coeff == 0 {
                        break;
                    }
                }
                if coeff != 0 {
                    psi_entries.push((ts.offset + y / scale, ys.offset + y, coeff));
                }
            }
        }
        phi.push(SparseMatrix::from_entries(yg.dim, tg.dim, phi_entries)?);
        psi.push(SparseMatrix::from_entries(tg.dim, yg.dim, psi_entries)?);
    }
    Ok((ChainMap { heights: phi }, ChainMap { heights: psi }))
}

/// Complex of the spanning subgraph `Γ` (edges in induced order) and the
/// projection `p: C(G) → C(Γ)` that is the identity on summands with
/// `S ⊆ Γ` and zero elsewhere.
pub fn projection_map(cx: &BigradedComplex, gamma: &[usize]) -> Result<(BigradedComplex, ChainMap)> {
    let g = cx.graph();
    let sub = g.spanning_subgraph(gamma)?;
    let mut kept = gamma.to_vec();
    kept.sort_unstable();
    let options = BuildOptions {
        max_edges: sub.edge_count(),
        algebras: cx.algebras().clone(),
    };
    let target = super::build_complex_with(&sub, cx.variant(), &options)?;
    let gamma_mask: u64 = kept.iter().map(|&e| 1u64 << e).sum();

    let mut heights = Vec::with_capacity(cx.heights());
    for (i, group) in cx.groups().iter().enumerate() {
        let mut entries = Vec::new();
        if let Some(tg) = target.group(i) {
            for s in &group.summands {
                if s.state.mask() & !gamma_mask != 0 {
                    continue;
                }
                let compressed = kept
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| s.state.contains(e))
                    .map(|(k, _)| 1u64 << k)
                    .sum();
                let state = StateSubset::new(compressed, kept.len())?;
                let t = &tg.summands[tg.summand_index(state).expect("subgraph state present")];
                debug_assert_eq!(t.dim, s.dim);
                entries.extend((0..s.dim).map(|l| (t.offset + l, s.offset + l, 1)));
            }
        }
        heights.push(SparseMatrix::from_entries(target.dim(i), group.dim, entries)?);
    }
    Ok((target, ChainMap { heights }))
}
