//! Acceptance gate. Each criterion prints one PASS/FAIL line; the binary
//! exits nonzero if any criterion fails. All comparisons are exact.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use yamada_core::cube::{build_complex, BigradedComplex, Variant};
use yamada_core::homology::{cohomology, poincare, smith_normal_form, CohomologyTable};
use yamada_core::invariants::{
    closed_form, eval_del_con, g_polynomials, yamada_state_sum, Family, Specialization,
};
use yamada_core::matrix::IntMatrix;
use yamada_core::verify::{check_retraction, corpus, CorpusEntry};
use yamada_core::{BivariateLaurent as P, EdgeKind, Multigraph, Reduction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_graphs() -> Vec<CorpusEntry> {
    corpus(3, 4)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn free_ranks(t: &CohomologyTable) -> Vec<(usize, (i64, i64), usize)> {
    t.groups.iter().map(|(&(i, bd), g)| (i, bd, g.free_rank)).collect()
}

fn p2_common_value() -> P {
    P::from_terms([
        (1, 0, 1),
        (2, 0, 2),
        (3, 0, 1),
        (0, 1, 1),
        (1, 1, 3),
        (2, 1, 3),
        (3, 1, 1),
    ])
}

fn golden_yamada() -> Outcome {
    let cx = build_complex(&Multigraph::cycle(2), Variant::Yamada).map_err(|e| e.to_string())?;
    let t = cohomology(&cx);
    let expected = vec![
        (0, (1, 0), 1),
        (0, (2, 0), 1),
        (2, (0, 1), 1),
        (2, (1, 1), 3),
        (2, (2, 0), 1),
        (2, (2, 1), 3),
        (2, (3, 0), 1),
        (2, (3, 1), 1),
    ];
    ensure(free_ranks(&t) == expected, || format!("table {:?}", free_ranks(&t)))?;
    ensure(!t.has_torsion(), || "unexpected torsion".into())?;
    ensure(t.heights == 3, || "heights".into())?;
    Ok("H^0 = (1,0)+(2,0), H^1 = 0, H^2 = 1,1,1,3,3,1, no torsion".into())
}

fn golden_tutte() -> Outcome {
    let cx = build_complex(&Multigraph::cycle(2), Variant::Tutte).map_err(|e| e.to_string())?;
    let t = cohomology(&cx);
    let expected = vec![(0, (1, 0), 1), (0, (2, 0), 1), (2, (0, 1), 1), (2, (1, 1), 1)];
    ensure(free_ranks(&t) == expected, || format!("table {:?}", free_ranks(&t)))?;
    ensure(!t.has_torsion(), || "unexpected torsion".into())?;
    Ok("H^0 = (1,0)+(2,0), H^1 = 0, H^2 = (0,1)+(1,1)".into())
}

fn euler_identity() -> Outcome {
    let graphs = corpus_graphs();
    for entry in &graphs {
        let g = &entry.graph;
        let cx = build_complex(g, Variant::Yamada).map_err(|e| format!("{}: {e}", entry.name))?;
        let chains = cx.graded_euler();
        let homology = poincare(&cohomology(&cx)).euler;
        let (_, expected) = g_polynomials(g);
        ensure(chains == expected && homology == expected, || {
            format!("{}: chains {chains:?}, homology {homology:?}, g {expected:?}", entry.name)
        })?;
    }
    let (_, g) = g_polynomials(&Multigraph::cycle(2));
    ensure(g == p2_common_value(), || format!("P2 value {g:?}"))?;
    let a = P::one() + P::x();
    let closed = &(&(&a * &a) * &a) * &(P::one() + P::y()) - &a * &a;
    ensure(closed == g, || "closed form for P2".into())?;
    Ok(format!("{} graphs; P2 value t + 2t^2 + t^3 + w + 3tw + 3t^2w + t^3w", graphs.len()))
}

fn square_zero_and_bidegree(cx: &BigradedComplex) -> Result<(), String> {
    for i in 0..cx.heights().saturating_sub(1) {
        let d = cx.differential(i);
        let (src, dst) = (cx.group(i).unwrap(), cx.group(i + 1).unwrap());
        for &(r, c, _) in &d.entries {
            ensure(src.locate(c).0 == dst.locate(r).0, || format!("entry ({r},{c}) of d^{i} mixes bidegrees"))?;
        }
        if i + 2 < cx.heights() {
            let dd = cx.differential(i + 1).mul(&d).map_err(|e| e.to_string())?;
            ensure(dd.is_zero(), || format!("d^{} d^{i} != 0", i + 1))?;
        }
    }
    Ok(())
}

fn d_squared() -> Outcome {
    let graphs = corpus_graphs();
    for entry in &graphs {
        for variant in [Variant::Yamada, Variant::Tutte] {
            let cx = build_complex(&entry.graph, variant).map_err(|e| format!("{} {variant}: {e}", entry.name))?;
            square_zero_and_bidegree(&cx).map_err(|e| format!("{} {variant}: {e}", entry.name))?;
        }
    }
    Ok(format!("{} graphs, both variants", graphs.len()))
}

fn edge_order() -> Outcome {
    let graphs: Vec<CorpusEntry> = corpus_graphs().into_iter().filter(|e| e.graph.edge_count() >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..20 {
        let entry = graphs.choose(&mut rng).unwrap();
        let mut sigma: Vec<usize> = (0..entry.graph.edge_count()).collect();
        sigma.shuffle(&mut rng);
        let h = entry.graph.permute_edges(&sigma).unwrap();
        for variant in [Variant::Yamada, Variant::Tutte] {
            let a = cohomology(&build_complex(&entry.graph, variant).unwrap());
            let b = cohomology(&build_complex(&h, variant).unwrap());
            ensure(a == b, || format!("{} sigma {sigma:?} {variant}", entry.name))?;
        }
    }
    Ok("20 seeded (graph, permutation) pairs, torsion included".into())
}

fn retraction() -> Outcome {
    let graphs = corpus_graphs();
    let reports = yamada_core::par::map_collect(&graphs, |entry| {
        check_retraction(&entry.graph, &Default::default()).map(|r| (entry.name.clone(), r))
    });
    for r in reports {
        let (name, report) = r.map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{name}: {}", report.witness))?;
    }
    Ok(format!("{} graphs: chain maps, psi.phi = id, H_T <= H_Y", graphs.len()))
}

fn polynomials() -> Outcome {
    let yamada = Specialization::Yamada.params().unwrap();
    let graphs = corpus_graphs();
    for entry in &graphs {
        let a = yamada_state_sum(&entry.graph);
        let b = eval_del_con(&entry.graph, &yamada);
        ensure(a == b, || format!("{}: state sum {a:?} vs deletion-contraction {b:?}", entry.name))?;
    }
    for family in Family::ALL {
        for n in 1..=5 {
            let g = family.graph(n);
            let c = closed_form(family, n, &yamada);
            ensure(c == yamada_state_sum(&g) && c == eval_del_con(&g, &yamada), || {
                format!("{family:?} n={n}: closed form {c:?}")
            })?;
        }
    }
    let xy_minus_one = P::from_terms([(1, 1, 1), (0, 0, -1)]);
    for g in [Multigraph::cycle(2), Multigraph::cycle(3), Multigraph::bouquet(1)] {
        ensure(yamada_state_sum(&g) == xy_minus_one, || format!("h({g:?}) != xy - 1"))?;
    }
    ensure(yamada_state_sum(&Multigraph::path(1)).is_zero(), || "h(T1) != 0".into())?;
    Ok(format!("{} graphs, families n <= 5, named values", graphs.len()))
}

/// Proper colorings with `lambda` colors, by enumerating all assignments.
fn brute_force_colorings(g: &Multigraph, lambda: u64) -> u64 {
    let v = g.vertex_count() as u32;
    let total = lambda.pow(v);
    (0..total)
        .filter(|&code| {
            let color = |x: usize| code / lambda.pow(x as u32) % lambda;
            g.edges().iter().all(|&(a, b)| color(a) != color(b))
        })
        .count() as u64
}

fn chromatic() -> Outcome {
    let row = Specialization::Chromatic.params().unwrap();
    let graphs: Vec<CorpusEntry> = corpus_graphs().into_iter().filter(|e| e.graph.vertex_count() <= 6).collect();
    for entry in &graphs {
        let p = eval_del_con(&entry.graph, &row);
        for lambda in 0..=5u64 {
            let at = BigRational::from_integer(BigInt::from(lambda));
            let value = p.evaluate(&at, &BigRational::zero()).map_err(|e| format!("{}: {e}", entry.name))?;
            let want = BigRational::from_integer(BigInt::from(brute_force_colorings(&entry.graph, lambda)));
            ensure(value == want, || format!("{} at {lambda}: {value} vs {want}", entry.name))?;
        }
    }
    Ok(format!("{} graphs, lambda in 0..=5", graphs.len()))
}

fn gcd_of_entries(a: &IntMatrix) -> BigInt {
    (0..a.rows())
        .flat_map(|r| a.row(r).iter().cloned())
        .fold(BigInt::zero(), |g, x| g.gcd(&x))
}

fn snf_self_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for case in 0..100 {
        let (r, c) = (rng.gen_range(1..=8usize), rng.gen_range(1..=8usize));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || format!("case {case}: U A V != D"))?;
        ensure(s.u.determinant().abs() == BigInt::from(1), || format!("case {case}: det U"))?;
        ensure(s.v.determinant().abs() == BigInt::from(1), || format!("case {case}: det V"))?;
        ensure(s.d.is_diagonal(), || format!("case {case}: D not diagonal"))?;
        let f = &s.invariant_factors;
        ensure(f.iter().all(|x| x.is_positive()), || format!("case {case}: nonpositive factor"))?;
        ensure(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || format!("case {case}: divisibility"))?;
        let k = r.min(c);
        ensure((f.len()..k).all(|i| s.d[(i, i)].is_zero()), || format!("case {case}: trailing zeros"))?;
        // d1 is the gcd of all entries; for square A the product is |det A|
        if let Some(d1) = f.first() {
            ensure(*d1 == gcd_of_entries(&a), || format!("case {case}: d1 != gcd"))?;
        }
        if r == c {
            let prod: BigInt = if f.len() == r { f.iter().product() } else { BigInt::zero() };
            ensure(prod == a.determinant().abs(), || format!("case {case}: product != |det|"))?;
        }
    }
    Ok("100 seeded matrices up to 8x8, entries in [-20, 20]".into())
}

fn deletion_contraction() -> Outcome {
    let graphs = corpus_graphs();
    let x_inv = P::monomial(1, -1, 0);
    let mut edges = 0;
    for entry in &graphs {
        let g = &entry.graph;
        let h = yamada_state_sum(g);
        for e in 0..g.edge_count() {
            if g.classify_edge(e).unwrap() != EdgeKind::Ordinary {
                continue;
            }
            edges += 1;
            let c = yamada_state_sum(&g.reduce(e, Reduction::Contract).unwrap());
            let d = yamada_state_sum(&g.reduce(e, Reduction::Delete).unwrap());
            ensure(h == &c - &(&x_inv * &d), || format!("{} edge {e}", entry.name))?;
        }
    }
    Ok(format!("{edges} ordinary edges across {} graphs", graphs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden P2 cohomology, yamada variant", golden_yamada),
        ("golden P2 cohomology, tutte variant", golden_tutte),
        ("Euler identity on the corpus", euler_identity),
        ("d^2 = 0 and bidegree preservation", d_squared),
        ("edge-order invariance", edge_order),
        ("retraction psi.phi = id", retraction),
        ("polynomial cross-validation", polynomials),
        ("chromatic oracle", chromatic),
        ("Smith normal form self-check", snf_self_check),
        ("deletion-contraction for h", deletion_contraction),
    ];
    let outcomes = yamada_core::par::map_collect(&criteria, |(_, run)| run());
    let mut failed = 0;
    for (k, ((name, _), outcome)) in criteria.iter().zip(outcomes).enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(witness) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {witness}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
