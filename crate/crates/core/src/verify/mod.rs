//! Pass/fail checkers for the structural theorems on a single graph.

mod corpus;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use corpus::{corpus, CorpusEntry};

use crate::cube::{build_complex_with, phi_psi, projection_map, BuildOptions, ChainMap, Variant};
use crate::error::{Error, Result};
use crate::homology::{cohomology, induced_map_ranks, poincare};
use crate::invariants::{g_polynomials, yamada_state_sum};
use crate::laurent::BivariateLaurent;
use crate::multigraph::{EdgeKind, Multigraph, Reduction};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Euler,
    Permutation,
    Retraction,
    DeletionContraction,
    Projection,
}

impl CheckName {
    pub const ALL: [CheckName; 5] = [
        Self::Euler,
        Self::Permutation,
        Self::Retraction,
        Self::DeletionContraction,
        Self::Projection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Euler => "euler",
            Self::Permutation => "permutation",
            Self::Retraction => "retraction",
            Self::DeletionContraction => "deletion_contraction",
            Self::Projection => "projection",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: CheckName,
    pub verdict: Verdict,
    /// First counterexample found; empty on pass.
    pub witness: String,
    /// Extra context on a pass, such as a vacuous one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn pass(name: CheckName) -> Self {
        Self {
            name,
            verdict: Verdict::Pass,
            witness: String::new(),
            note: None,
        }
    }

    fn fail(name: CheckName, witness: impl Into<String>) -> Self {
        Self {
            name,
            verdict: Verdict::Fail,
            witness: witness.into(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => write!(f, "PASS {}", self.name)?,
            Verdict::Fail => write!(f, "FAIL {}: {}", self.name, self.witness)?,
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

fn show(p: &BivariateLaurent) -> String {
    p.display_with("t", "w").to_string()
}

/// Chains, cohomology and `g(G; t, w)` give the same polynomial.
pub fn check_euler(g: &Multigraph, options: &BuildOptions) -> Result<CheckReport> {
    let name = CheckName::Euler;
    let cx = build_complex_with(g, Variant::Yamada, options)?;
    let chains = cx.graded_euler();
    let homology = poincare(&cohomology(&cx)).euler;
    let (_, expected) = g_polynomials(g);
    Ok(if chains != expected {
        CheckReport::fail(name, format!("chain Euler characteristic {} != g = {}", show(&chains), show(&expected)))
    } else if homology != expected {
        CheckReport::fail(name, format!("cohomology Euler characteristic {} != g = {}", show(&homology), show(&expected)))
    } else {
        CheckReport::pass(name)
    })
}

/// Cohomology of `G` and of `G` with edges reordered by `sigma` coincide,
/// torsion included.
pub fn check_permutation_invariance(g: &Multigraph, sigma: &[usize], options: &BuildOptions) -> Result<CheckReport> {
    let name = CheckName::Permutation;
    let h = g.permute_edges(sigma)?;
    for variant in [Variant::Yamada, Variant::Tutte] {
        let a = cohomology(&build_complex_with(g, variant, options)?);
        let b = cohomology(&build_complex_with(&h, variant, options)?);
        let keys = a.groups.keys().chain(b.groups.keys());
        if let Some(&(i, bd)) = keys.clone().find(|k| a.groups.get(k) != b.groups.get(k)) {
            return Ok(CheckReport::fail(
                name,
                format!(
                    "{variant} H^{i} at bidegree {bd:?}: {:?} vs {:?} under sigma {sigma:?}",
                    a.get(i, bd),
                    b.get(i, bd)
                ),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

/// `φ`, `ψ` are chain maps with `ψ∘φ = id`, `ψ*∘φ* = id` on `H_T`, and
/// `H_T` free ranks never exceed `H_Y`.
pub fn check_retraction(g: &Multigraph, options: &BuildOptions) -> Result<CheckReport> {
    let name = CheckName::Retraction;
    let t = build_complex_with(g, Variant::Tutte, options)?;
    let y = build_complex_with(g, Variant::Yamada, options)?;
    let (phi, psi) = phi_psi(&t, &y)?;
    if let Err(e) = phi.check(&t, &y) {
        return Ok(CheckReport::fail(name, format!("phi: {e}")));
    }
    if let Err(e) = psi.check(&y, &t) {
        return Ok(CheckReport::fail(name, format!("psi: {e}")));
    }
    let round = phi.then(&psi)?;
    let id = ChainMap::identity(&t);
    if let Some(i) = (0..round.heights.len()).find(|&i| round.heights[i] != id.heights[i]) {
        return Ok(CheckReport::fail(name, format!("psi . phi differs from the identity at height {i}")));
    }
    let ht = cohomology(&t);
    let hy = cohomology(&y);
    let induced = match induced_map_ranks(&t, &t, &round) {
        Ok(r) => r,
        Err(e @ Error::NotChainMap(_)) => return Ok(CheckReport::fail(name, format!("psi . phi: {e}"))),
        Err(e) => return Err(e),
    };
    for (&(i, bd), group) in &ht.groups {
        let rank = induced.get(&(i, bd)).copied().unwrap_or(0);
        if rank != group.free_rank {
            return Ok(CheckReport::fail(
                name,
                format!("induced psi* . phi* has rank {rank} on H_T^{i} at {bd:?} of rank {}", group.free_rank),
            ));
        }
        let ry = hy.free_rank(i, bd);
        if group.free_rank > ry {
            return Ok(CheckReport::fail(
                name,
                format!("H_T^{i} at {bd:?} has rank {} > H_Y rank {ry}", group.free_rank),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

/// `h(G) = h(G/e) - x^-1 h(G-e)` at every ordinary edge.
pub fn check_deletion_contraction(g: &Multigraph) -> Result<CheckReport> {
    let name = CheckName::DeletionContraction;
    let h = yamada_state_sum(g);
    let x_inv = BivariateLaurent::monomial(1, -1, 0);
    let mut ordinary = 0;
    for e in 0..g.edge_count() {
        if g.classify_edge(e)? != EdgeKind::Ordinary {
            continue;
        }
        ordinary += 1;
        let contracted = yamada_state_sum(&g.reduce(e, Reduction::Contract)?);
        let deleted = yamada_state_sum(&g.reduce(e, Reduction::Delete)?);
        let rhs = &contracted - &(&x_inv * &deleted);
        if rhs != h {
            return Ok(CheckReport::fail(
                name,
                format!("edge {e}: h(G) = {} but h(G/e) - x^-1 h(G-e) = {}", h.display_with("x", "y"), rhs.display_with("x", "y")),
            ));
        }
    }
    let report = CheckReport::pass(name);
    Ok(if ordinary == 0 {
        report.with_note("vacuous: no ordinary edge")
    } else {
        report
    })
}

/// The projection onto the spanning subgraph on `gamma` is a chain map,
/// for both variants.
pub fn check_projection(g: &Multigraph, gamma: &[usize], options: &BuildOptions) -> Result<CheckReport> {
    let name = CheckName::Projection;
    for variant in [Variant::Yamada, Variant::Tutte] {
        let cx = build_complex_with(g, variant, options)?;
        let (sub, p) = projection_map(&cx, gamma)?;
        if let Err(e) = p.check(&cx, &sub) {
            return Ok(CheckReport::fail(name, format!("{variant}, subgraph {gamma:?}: {e}")));
        }
    }
    Ok(CheckReport::pass(name))
}

/// Edge order reversed.
pub fn default_permutation(g: &Multigraph) -> Vec<usize> {
    (0..g.edge_count()).rev().collect()
}

/// Every edge but the last.
pub fn default_subgraph(g: &Multigraph) -> Vec<usize> {
    (0..g.edge_count().saturating_sub(1)).collect()
}

/// Runs the selected checks concurrently; reports come back in the order
/// of `names`.
pub fn run_checks(
    g: &Multigraph,
    names: &[CheckName],
    sigma: Option<&[usize]>,
    gamma: Option<&[usize]>,
    options: &BuildOptions,
) -> Result<Vec<CheckReport>> {
    let sigma = sigma.map_or_else(|| default_permutation(g), <[usize]>::to_vec);
    let gamma = gamma.map_or_else(|| default_subgraph(g), <[usize]>::to_vec);
    par::map_collect(names, |name| match name {
        CheckName::Euler => check_euler(g, options),
        CheckName::Permutation => check_permutation_invariance(g, &sigma, options),
        CheckName::Retraction => check_retraction(g, options),
        CheckName::DeletionContraction => check_deletion_contraction(g),
        CheckName::Projection => check_projection(g, &gamma, options),
    })
    .into_iter()
    .collect()
}
