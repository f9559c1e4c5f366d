use crate::error::{Error, Result};
use crate::Bidegree;

/// A finite-rank free bigraded algebra over the integers, given on a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    labels: Vec<String>,
    degrees: Vec<Bidegree>,
    /// `mult[a][b]` is the coordinate vector of `e_a · e_b`.
    mult: Vec<Vec<Vec<i64>>>,
    unit: usize,
    counit: Option<Vec<i64>>,
}

impl AlgebraSpec {
    /// Validates the descriptor: shapes, bidegree additivity, associativity,
    /// commutativity, a unit image of bidegree `(0, 0)`, and `η(u(1)) = 1`
    /// with `η` supported in bidegree `(0, 0)`.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<Bidegree>,
        mult: Vec<Vec<Vec<i64>>>,
        unit: usize,
        counit: Option<Vec<i64>>,
    ) -> Result<Self> {
        let r = labels.len();
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if r == 0 || r > u8::MAX as usize {
            return bad(format!("rank {r} outside 1..=255"));
        }
        if degrees.len() != r || mult.len() != r {
            return bad("degree list or multiplication table has the wrong size".into());
        }
        if mult.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return bad("multiplication table must be rank x rank x rank".into());
        }
        if unit >= r || degrees[unit] != (0, 0) {
            return bad("unit image must be a basis element of bidegree (0, 0)".into());
        }
        for a in 0..r {
            for b in 0..r {
                if mult[a][b] != mult[b][a] {
                    return bad(format!("product {a}*{b} is not commutative"));
                }
                let want = (degrees[a].0 + degrees[b].0, degrees[a].1 + degrees[b].1);
                if let Some(c) = (0..r).find(|&c| mult[a][b][c] != 0 && degrees[c] != want) {
                    return bad(format!("product {a}*{b} has a term {c} of the wrong bidegree"));
                }
            }
        }
        let spec = Self {
            labels,
            degrees,
            mult,
            unit,
            counit,
        };
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if spec.triple_left(a, b, c) != spec.triple_right(a, b, c) {
                        return bad(format!("product is not associative on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        if let Some(eta) = &spec.counit {
            if eta.len() != r {
                return bad("counit has the wrong length".into());
            }
            if eta[unit] != 1 {
                return bad("counit composed with unit is not the identity".into());
            }
            if (0..r).any(|i| eta[i] != 0 && spec.degrees[i] != (0, 0)) {
                return bad("counit must vanish outside bidegree (0, 0)".into());
            }
        }
        Ok(spec)
    }

    fn triple_left(&self, a: usize, b: usize, c: usize) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0; r];
        for (k, &ab) in self.mult[a][b].iter().enumerate() {
            if ab != 0 {
                for (i, &v) in self.mult[k][c].iter().enumerate() {
                    out[i] += ab * v;
                }
            }
        }
        out
    }

    fn triple_right(&self, a: usize, b: usize, c: usize) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0; r];
        for (k, &bc) in self.mult[b][c].iter().enumerate() {
            if bc != 0 {
                for (i, &v) in self.mult[a][k].iter().enumerate() {
                    out[i] += bc * v;
                }
            }
        }
        out
    }

    /// `Z[v]/(v^2)` on the basis `{1, v}` with `deg v = degree`, unit
    /// `1 ↦ 1` and counit `1 ↦ 1, v ↦ 0`.
    pub fn dual_numbers(var: &str, degree: Bidegree) -> Self {
        Self::new(
            vec![format!("1_{var}"), var.to_string()],
            vec![(0, 0), degree],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
            0,
            Some(vec![1, 0]),
        )
        .expect("dual numbers form a valid algebra")
    }

    /// `A = Z[t]/(t^2)`, `deg t = (1, 0)`.
    pub fn algebra_a() -> Self {
        Self::dual_numbers("t", (1, 0))
    }

    /// `B = Z[w]/(w^2)`, `deg w = (0, 1)`.
    pub fn algebra_b() -> Self {
        Self::dual_numbers("w", (0, 1))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> Bidegree {
        self.degrees[i]
    }

    pub fn product(&self, a: usize, b: usize) -> &[i64] {
        &self.mult[a][b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn counit(&self) -> Option<&[i64]> {
        self.counit.as_deref()
    }

    /// Graded dimension `Σ_i t^{j_i} w^{k_i}`.
    pub fn qdim(&self) -> crate::BivariateLaurent {
        crate::BivariateLaurent::from_terms(self.degrees.iter().map(|&(j, k)| (j, k, 1)))
    }
}

/// The pair `(M, N)`: `M` sits on edge and component slots, `N` on cycle slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeAlgebras {
    pub m: AlgebraSpec,
    pub n: AlgebraSpec,
}

impl Default for CubeAlgebras {
    fn default() -> Self {
        Self {
            m: AlgebraSpec::algebra_a(),
            n: AlgebraSpec::algebra_b(),
        }
    }
}
