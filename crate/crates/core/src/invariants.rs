//! Deletion–contraction graph invariants.
//!
//! A graph function `f` here is fixed by five Laurent coefficients
//! `(A, B, C, D, E)`: `f(G) = A f(G/e) + B f(G-e)` on ordinary edges,
//! `f(H·K) = C f(H) f(K)` on one-point unions, `f(T_1) = D`, `f(L_1) = E`.
//! The Yamada polynomial is also available through its state sum, which is
//! the independent route the recursion is checked against.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::{geometric_sum, BivariateLaurent, Exponent};
use crate::multigraph::{EdgeKind, Multigraph};
use crate::par;

type P = BivariateLaurent;

/// The coefficients `(A, B, C, D, E)`. `C` must be a unit so that the
/// single-vertex value `C^{-1}` exists in the Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantParams {
    pub a: P,
    pub b: P,
    pub c: P,
    pub d: P,
    pub e: P,
    c_inv: P,
}

impl InvariantParams {
    pub fn new(a: P, b: P, c: P, d: P, e: P) -> Result<Self> {
        let c_inv = c.inverse().map_err(|_| Error::NonUnitC)?;
        Ok(Self {
            a,
            b,
            c,
            d,
            e,
            c_inv,
        })
    }

    /// `f` of a single isolated vertex.
    pub fn c_inv(&self) -> &P {
        &self.c_inv
    }
}

/// Rows of the classical specialization table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    Tutte,
    /// Variable `x` plays the role of `λ`.
    Chromatic,
    /// Variable `x` plays the role of `λ`.
    Flow,
    /// `N(G; t, x, y)` with `t` fixed to an integer.
    Negami { t: i64 },
    Yamada,
}

impl FromStr for Specialization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tutte" => Self::Tutte,
            "chromatic" => Self::Chromatic,
            "flow" => Self::Flow,
            "negami" => Self::Negami { t: 1 },
            "yamada" => Self::Yamada,
            other => return Err(Error::UnknownSpecialization(other.to_string())),
        })
    }
}

impl Specialization {
    pub const ALL_NAMES: [&'static str; 5] = ["tutte", "chromatic", "flow", "negami", "yamada"];

    /// The table row verbatim. For Negami, `C = 1/t` is a Laurent unit only
    /// when `t = ±1`; use [`negami_polynomial`] for other values.
    pub fn params(self) -> Result<InvariantParams> {
        let x = P::x();
        let y = P::y();
        let one = P::one();
        match self {
            Self::Tutte => InvariantParams::new(one.clone(), one.clone(), one, x, y),
            Self::Chromatic => InvariantParams::new(
                P::constant(-1),
                one.clone(),
                P::monomial(1, -1, 0),
                &x * &(&x - &one),
                P::zero(),
            ),
            Self::Flow => {
                InvariantParams::new(one.clone(), P::constant(-1), one.clone(), P::zero(), &x - &one)
            }
            Self::Negami { t } => {
                if t != 1 && t != -1 {
                    return Err(Error::NonUnitC);
                }
                let tp = P::constant(t);
                InvariantParams::new(
                    x.clone(),
                    y.clone(),
                    tp.clone(), // 1/t = t for t = ±1
                    &tp * &(&x + &(&tp * &y)),
                    &tp * &(&x + &y),
                )
            }
            Self::Yamada => InvariantParams::new(
                one,
                P::monomial(-1, -1, 0),
                P::monomial(1, -1, 0),
                P::zero(),
                &(&x * &y) - &P::one(),
            ),
        }
    }
}

/// Sums monomial weights over all `2^|E|` states. `weight(|S|, b0, b1)`
/// returns `(coefficient, x-exponent, y-exponent)`.
pub fn state_sum<F>(g: &Multigraph, weight: F) -> BivariateLaurent
where
    F: Fn(usize, usize, usize) -> (i64, i64, i64) + Sync + Send,
{
    let n = g.edge_count();
    assert!(n < 63, "state sums index states by a u64 mask");
    let acc = par::fold_range(
        1u64 << n,
        BTreeMap::<Exponent, i64>::new,
        |mut acc, mask| {
            let (b0, b1) = g.betti_of_mask(mask);
            let (c, a, b) = weight(mask.count_ones() as usize, b0, b1);
            *acc.entry((a, b)).or_insert(0) += c;
            acc
        },
        |mut lhs, rhs| {
            for (e, c) in rhs {
                *lhs.entry(e).or_insert(0) += c;
            }
            lhs
        },
    );
    P::from_terms(acc.into_iter().map(|((a, b), c)| (a, b, BigInt::from(c))))
}

/// `h(G; x, y) = Σ_S (-x)^{|S|-|E|} x^{b0} y^{b1}`.
pub fn yamada_state_sum(g: &Multigraph) -> BivariateLaurent {
    let n = g.edge_count() as i64;
    state_sum(g, |s, b0, b1| {
        let k = s as i64 - n;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        (sign, k + b0 as i64, b1 as i64)
    })
}

/// `g~ = Σ_S (-1)^{|S|} x^{|S|+b0} y^{b1}`, which equals `(-x)^{|E|} h`.
pub fn g_tilde(g: &Multigraph) -> BivariateLaurent {
    state_sum(g, |s, b0, b1| {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        (sign, (s + b0) as i64, b1 as i64)
    })
}

/// `(g~, g)` with `g(t, w) = g~(1 + t, 1 + w)`.
pub fn g_polynomials(g: &Multigraph) -> (BivariateLaurent, BivariateLaurent) {
    let gt = g_tilde(g);
    let shifted = gt
        .substitute_shift()
        .expect("g~ has nonnegative exponents by construction");
    (gt, shifted)
}

/// Evaluates `f(G)` by deletion–contraction on the first edge.
///
/// Loops and isthmuses split off an `L_1` or `T_1` block:
/// `f(G) = C E f(G-e)` and `f(G) = C D f(G/e)`. An edgeless graph on `k`
/// vertices is `C^{-k}`, making `f` multiplicative over disjoint unions.
pub fn eval_del_con(g: &Multigraph, params: &InvariantParams) -> BivariateLaurent {
    let ce = &params.c * &params.e;
    let cd = &params.c * &params.d;
    del_con_rec(g, params, &ce, &cd)
}

fn del_con_rec(g: &Multigraph, params: &InvariantParams, ce: &P, cd: &P) -> P {
    if g.edge_count() == 0 {
        return params
            .c_inv
            .pow(g.vertex_count() as i64)
            .expect("nonnegative power");
    }
    let kind = g.classify_edge(0).expect("edge 0 exists");
    match kind {
        EdgeKind::Loop => {
            let rest = g.delete_edge(0).expect("edge 0 exists");
            ce * &del_con_rec(&rest, params, ce, cd)
        }
        EdgeKind::Isthmus => {
            let rest = g.contract_edge(0).expect("isthmus is not a loop");
            cd * &del_con_rec(&rest, params, ce, cd)
        }
        EdgeKind::Ordinary => {
            let contracted = g.contract_edge(0).expect("ordinary edge is not a loop");
            let deleted = g.delete_edge(0).expect("edge 0 exists");
            let (fc, fd) = par::join(
                || del_con_rec(&contracted, params, ce, cd),
                || del_con_rec(&deleted, params, ce, cd),
            );
            &(&params.a * &fc) + &(&params.b * &fd)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `T_n`, a tree with `n` edges.
    Tree,
    /// `L_n`, `n` loops at one vertex.
    Bouquet,
    /// `D_n`, `n` parallel edges.
    MultiEdge,
    /// `P_n`, the simple cycle with `n` edges.
    Cycle,
}

impl Family {
    pub const ALL: [Family; 4] = [Self::Tree, Self::Bouquet, Self::MultiEdge, Self::Cycle];

    pub fn graph(self, n: usize) -> Multigraph {
        match self {
            Self::Tree => Multigraph::path(n),
            Self::Bouquet => Multigraph::bouquet(n),
            Self::MultiEdge => Multigraph::multi_edge(n),
            Self::Cycle => Multigraph::cycle(n),
        }
    }
}

/// Closed forms of `f` on the four basic families, for `n >= 1`.
pub fn closed_form(kind: Family, n: usize, params: &InvariantParams) -> BivariateLaurent {
    assert!(n >= 1, "closed forms are stated for n >= 1");
    let pow = |p: &P, k: usize| p.pow(k as i64).expect("nonnegative power");
    let (a, b, c, d, e) = (&params.a, &params.b, &params.c, &params.d, &params.e);
    match kind {
        Family::Tree => &pow(c, n - 1) * &pow(d, n),
        Family::Bouquet => &pow(c, n - 1) * &pow(e, n),
        Family::MultiEdge => {
            let ce = c * e;
            &(&pow(b, n - 1) * d) + &(&(a * e) * &geometric_sum(b, &ce, n))
        }
        Family::Cycle => {
            let cd = c * d;
            &(&pow(a, n - 1) * e) + &(&(b * d) * &geometric_sum(a, &cd, n))
        }
    }
}

pub fn tutte_polynomial(g: &Multigraph) -> BivariateLaurent {
    eval_del_con(g, &Specialization::Tutte.params().expect("unit C"))
}

/// Chromatic polynomial in the variable `x` (standing for `λ`).
pub fn chromatic_polynomial(g: &Multigraph) -> BivariateLaurent {
    eval_del_con(g, &Specialization::Chromatic.params().expect("unit C"))
}

/// Flow polynomial in the variable `x` (standing for `λ`).
pub fn flow_polynomial(g: &Multigraph) -> BivariateLaurent {
    eval_del_con(g, &Specialization::Flow.params().expect("unit C"))
}

/// `N(G; t, x, y)` at an integer `t ≠ 0`.
///
/// Scaling `f` per component by `1/t` turns the row into
/// `(x, y, 1, x + t y, x + y)`, which has unit `C` for every `t`;
/// the result is then multiplied back by `t^{b0(G)}`.
pub fn negami_polynomial(g: &Multigraph, t: i64) -> Result<BivariateLaurent> {
    if t == 0 {
        return Err(Error::NegamiZeroT);
    }
    let x = P::x();
    let y = P::y();
    let tp = P::constant(t);
    let normalized = InvariantParams::new(
        x.clone(),
        y.clone(),
        P::one(),
        &x + &(&tp * &y),
        &x + &y,
    )?;
    let (b0, _) = g.betti(g.full_state()?)?;
    Ok(&tp.pow(b0 as i64)? * &eval_del_con(g, &normalized))
}

pub const MAX_COLORING: usize = 8;

/// Number of proper `lambda`-colorings, by brute force.
pub fn chromatic_count(g: &Multigraph, lambda: usize) -> Result<u64> {
    if lambda > MAX_COLORING || g.vertex_count() > MAX_COLORING {
        return Err(Error::ColoringTooLarge { max: MAX_COLORING });
    }
    if g.has_loop() {
        return Ok(0);
    }
    let n = g.vertex_count();
    let total = (lambda as u64).pow(n as u32);
    let mut count = 0;
    let mut colors = vec![0usize; n];
    for mut code in 0..total {
        for c in colors.iter_mut() {
            *c = (code % lambda as u64) as usize;
            code /= lambda as u64;
        }
        if g.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
            count += 1;
        }
    }
    Ok(count)
}
