use crate::invariants::Family;
use crate::multigraph::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Multigraph,
}

/// Non-decreasing index sequences of length `len` over `0..base`.
fn multisets(base: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if base == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; len];
    loop {
        out.push(pick.clone());
        let Some(k) = (0..len).rev().find(|&k| pick[k] + 1 < base) else {
            return out;
        };
        let next = pick[k] + 1;
        pick[k..].fill(next);
    }
}

/// Every multigraph with at most `max_vertices` vertices and `max_edges`
/// edges, as sorted multisets of pairs `u <= v`, followed by `T_n`, `L_n`,
/// `D_n`, `P_n` for `n <= 4`, the bigon and the triangle. No isomorphism
/// reduction.
pub fn corpus(max_vertices: usize, max_edges: usize) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for v in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
        for e in 0..=max_edges {
            for pick in multisets(pairs.len(), e) {
                let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                out.push(CorpusEntry {
                    name: format!("v{v}{edges:?}"),
                    graph: Multigraph::new(v, edges).expect("pairs index valid vertices"),
                });
            }
        }
    }
    for (family, letter) in Family::ALL.into_iter().zip(["T", "L", "D", "P"]) {
        for n in 0..=4 {
            out.push(CorpusEntry {
                name: format!("{letter}{n}"),
                graph: family.graph(n),
            });
        }
    }
    out.push(CorpusEntry {
        name: "bigon".into(),
        graph: Multigraph::cycle(2),
    });
    out.push(CorpusEntry {
        name: "triangle".into(),
        graph: Multigraph::cycle(3),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        // 1 + 5 + 35 + 210 enumerated, 20 family members, 2 named
        assert_eq!(corpus(3, 4).len(), 273);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 1).len(), 0);
        assert_eq!(multisets(0, 0).len(), 1);
    }
}
