use super::*;
use crate::cube::{build_complex, phi_psi};
use crate::laurent::BivariateLaurent as P;
use crate::multigraph::Multigraph;

fn free_table(t: &CohomologyTable) -> Vec<(usize, Bidegree, usize)> {
    t.groups.iter().map(|(&(i, bd), g)| (i, bd, g.free_rank)).collect()
}

#[test]
fn p2_yamada_golden() {
    let cx = build_complex(&Multigraph::cycle(2), Variant::Yamada).unwrap();
    let table = cohomology(&cx);
    assert!(!table.has_torsion());
    assert_eq!(
        free_table(&table),
        vec![
            (0, (1, 0), 1),
            (0, (2, 0), 1),
            (2, (0, 1), 1),
            (2, (1, 1), 3),
            (2, (2, 0), 1),
            (2, (2, 1), 3),
            (2, (3, 0), 1),
            (2, (3, 1), 1),
        ]
    );
    let expected = P::from_terms([
        (1, 0, 1),
        (2, 0, 2),
        (3, 0, 1),
        (0, 1, 1),
        (1, 1, 3),
        (2, 1, 3),
        (3, 1, 1),
    ]);
    assert_eq!(poincare(&table).euler, expected);
    assert_eq!(cx.graded_euler(), expected);
}

#[test]
fn p2_tutte_golden() {
    let cx = build_complex(&Multigraph::cycle(2), Variant::Tutte).unwrap();
    let table = cohomology(&cx);
    assert_eq!(
        free_table(&table),
        vec![(0, (1, 0), 1), (0, (2, 0), 1), (2, (0, 1), 1), (2, (1, 1), 1)]
    );
    assert!(!table.has_torsion());
}

#[test]
fn single_vertex() {
    let cx = build_complex(&Multigraph::isolated(1), Variant::Yamada).unwrap();
    let table = cohomology(&cx);
    assert_eq!(free_table(&table), vec![(0, (0, 0), 1), (0, (1, 0), 1)]);
}

#[test]
fn zero_table() {
    let table = CohomologyTable {
        variant: Variant::Yamada,
        heights: 3,
        groups: BTreeMap::new(),
    };
    let p = poincare(&table);
    assert!(p.euler.is_zero());
    assert_eq!(p.heights.len(), 3);
}

#[test]
fn json_shape() {
    let cx = build_complex(&Multigraph::cycle(2), Variant::Yamada).unwrap();
    let v = serde_json::to_value(cohomology(&cx).to_json()).unwrap();
    assert_eq!(v["variant"], "yamada");
    assert_eq!(v["groups"].as_array().unwrap().len(), 3);
    assert_eq!(v["groups"][1]["summands"].as_array().unwrap().len(), 0);
    assert_eq!(v["groups"][0]["summands"][0]["bidegree"], serde_json::json!([1, 0]));
    assert_eq!(v["groups"][0]["summands"][0]["free_rank"], 1);
    assert_eq!(v["groups"][0]["summands"][0]["torsion"], serde_json::json!([]));
    assert!(v["euler"]["terms"].is_array());
}

#[test]
fn induced_ranks_on_p2() {
    let g = Multigraph::cycle(2);
    let t = build_complex(&g, Variant::Tutte).unwrap();
    let y = build_complex(&g, Variant::Yamada).unwrap();
    let (phi, psi) = phi_psi(&t, &y).unwrap();
    let tt = cohomology(&t);

    let phi_ranks = induced_map_ranks(&t, &y, &phi).unwrap();
    let height0: usize = phi_ranks.iter().filter(|((i, _), _)| *i == 0).map(|(_, r)| r).sum();
    assert_eq!(height0, 2);

    let round = phi.then(&psi).unwrap();
    let ranks = induced_map_ranks(&t, &t, &round).unwrap();
    for (&(i, bd), &r) in &ranks {
        assert_eq!(r, tt.free_rank(i, bd));
    }
    assert_eq!(ranks.len(), tt.groups.len());

    let zero = ChainMap::zero(&t, &y);
    assert!(induced_map_ranks(&t, &y, &zero).unwrap().values().all(|&r| r == 0));
}

#[test]
fn rejects_non_chain_maps() {
    let g = Multigraph::cycle(2);
    let t = build_complex(&g, Variant::Tutte).unwrap();
    let mut f = ChainMap::identity(&t);
    // identity at height 0 only breaks commutativity with d^0
    f.heights[1] = SparseMatrix::zeros(t.dim(1), t.dim(1));
    assert!(matches!(induced_map_ranks(&t, &t, &f), Err(crate::Error::NotChainMap(_))));
}

#[test]
fn rank_nullity_and_euler_on_small_graphs() {
    for v in 0..=3usize {
        for edges in [
            vec![],
            vec![(0, 0)],
            vec![(0, 1), (0, 1), (0, 1)],
            vec![(0, 1), (1, 2), (0, 2)],
            vec![(0, 0), (0, 1), (1, 2), (2, 2)],
        ] {
            if edges.iter().any(|&(a, b)| a.max(b) >= v) {
                continue;
            }
            let g = Multigraph::new(v, edges).unwrap();
            for variant in [Variant::Yamada, Variant::Tutte] {
                let cx = build_complex(&g, variant).unwrap();
                let table = cohomology(&cx);
                assert_eq!(poincare(&table).euler, cx.graded_euler(), "{g:?} {variant}");
                for i in 0..cx.heights() {
                    for bd in cx.bidegrees() {
                        let dim = cx.group(i).unwrap().block_dim(bd);
                        let d = cx.differential_block(i, bd);
                        let rank = invariant_factors(&d).len();
                        let kernel = if dim == 0 { 0 } else { kernel_basis(&d).cols() };
                        assert_eq!(dim, rank + kernel);
                    }
                }
            }
        }
    }
}
