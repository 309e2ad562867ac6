use proptest::prelude::*;

use wallcross::algebra::BracketMode;
use wallcross::fixtures::{running_algebra, running_central_charge, running_lattice};
use wallcross::lattice::Charge;
use wallcross::multidisk::{enumerate_forests, link, ChainVertex, DecoratedForest};
use wallcross::Rational;

#[test]
fn spanning_tree_counts() {
    for n in 1..=6usize {
        let charges = vec![Charge::new(vec![1, 0]); n];
        let trees = enumerate_forests(&charges).into_iter().filter(|f| f.edge_count() + 1 == n).count();
        assert_eq!(trees, n.pow(n.saturating_sub(2) as u32), "n = {n}");
    }
}

#[test]
fn forest_counts_by_brute_force() {
    // acyclic subsets of the edges of K_n
    fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
    for n in 1..=5usize {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let brute = (0u32..1 << all.len())
            .filter(|mask| {
                let chosen: Vec<_> =
                    all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
                acyclic(n, &chosen)
            })
            .count();
        assert_eq!(enumerate_forests(&vec![Charge::new(vec![0, 1]); n]).len(), brute, "n = {n}");
    }
}

#[test]
fn contraction_keeps_stability() {
    let pool = [Charge::new(vec![0, 0]), Charge::new(vec![1, 0]), Charge::new(vec![0, 1])];
    for n in 2..=4usize {
        for code in 0..pool.len().pow(n as u32) {
            let mut c = code;
            let charges: Vec<Charge> = (0..n)
                .map(|_| {
                    let x = pool[c % pool.len()].clone();
                    c /= pool.len();
                    x
                })
                .collect();
            for forest in enumerate_forests(&charges) {
                if !forest.is_stable() {
                    continue;
                }
                let edges = forest.edges();
                for (e, &(a, b)) in edges.iter().enumerate() {
                    let merged = forest.contract_edge(e).unwrap();
                    assert_eq!(merged.total_charge(), forest.total_charge());
                    assert_eq!(merged.edge_count() + 1, forest.edge_count());
                    if !merged.is_stable() {
                        assert!(charges[a].is_zero() && charges[b].is_zero(), "{charges:?} {edges:?} e={e}");
                    }
                }
            }
        }
    }
}

#[test]
fn contraction_order_does_not_matter() {
    let charges: Vec<Charge> = (1..=4).map(|i| Charge::new(vec![i, 1])).collect();
    let f = DecoratedForest::from_edges(charges, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let a = f.contract_edge(0).unwrap().contract_edge(0).unwrap().contract_edge(0).unwrap();
    let b = f.contract_edge(2).unwrap().contract_edge(1).unwrap().contract_edge(0).unwrap();
    assert_eq!(a.charges(), b.charges());
    assert_eq!(a.charges(), &[Charge::new(vec![10, 4])]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn link_is_symmetric_and_height_stable(
        i in 0usize..14, j in 0usize..14,
        h1 in 1i64..50, h2 in 51i64..99, shift in -40i64..=40, swap in any::<bool>(),
    ) {
        let alg = running_algebra(4, BracketMode::Plain);
        let (l, z) = (running_lattice(), running_central_charge());
        let (a, b) = (alg.letters()[i].clone(), alg.letters()[j].clone());
        let (h1, h2) = if swap { (h2, h1) } else { (h1, h2) };
        let q = |h: i64| Rational::new(h.into(), 100.into());
        let va = ChainVertex::new(&l, q(h1), a.clone());
        let vb = ChainVertex::new(&l, q(h2), b.clone());
        let v = link(&l, &z, &va, &vb).unwrap();
        prop_assert_eq!(v, link(&l, &z, &vb, &va).unwrap());
        // moving one height without crossing the other leaves the link alone
        let moved = (h1 + shift).clamp(1, 99);
        if (h1 < h2) == (moved < h2) && moved != h2 {
            let va2 = ChainVertex::new(&l, q(moved), a);
            prop_assert_eq!(link(&l, &z, &va2, &vb).unwrap(), v);
        }
    }
}
