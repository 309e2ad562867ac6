use proptest::prelude::*;

use wallcross::algebra::{BracketMode, Spectrum, Word};
use wallcross::fixtures::{running_algebra, running_lattice};
use wallcross::lattice::{Charge, ChargeLattice, SurfaceModel};
use wallcross::refinement::{covariant_spectrum, to_twisted, twist_spectrum, CohomologyAction, QuadraticRefinement};
use wallcross::Rational;

fn signs(n: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n)
}

fn value() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratic_relation(
        genus in 1usize..=2,
        values in signs(4),
        x in prop::collection::vec(-3i64..=3, 4),
        y in prop::collection::vec(-3i64..=3, 4),
    ) {
        let surface = SurfaceModel::standard(genus);
        let m = 2 * genus;
        let sigma = QuadraticRefinement::new(surface.clone(), values[..m].to_vec()).unwrap();
        let (x, y) = (&x[..m], &y[..m]);
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let sign = if surface.intersect(x, y).rem_euclid(2) == 1 { -1 } else { 1 };
        prop_assert_eq!(sigma.eval(x) * sigma.eval(y), sign * sigma.eval(&sum));
    }

    #[test]
    fn action_composes(values in signs(4), a in prop::collection::vec(0u8..=1, 4), b in prop::collection::vec(0u8..=1, 4)) {
        let sigma = QuadraticRefinement::new(SurfaceModel::standard(2), values).unwrap();
        let (ea, eb) = (CohomologyAction::new(a.clone()).unwrap(), CohomologyAction::new(b.clone()).unwrap());
        let sum = CohomologyAction::new(a.iter().zip(&b).map(|(x, y)| x ^ y).collect()).unwrap();
        prop_assert_eq!(ea.act(&eb.act(&sigma).unwrap()).unwrap(), sum.act(&sigma).unwrap());
        prop_assert_eq!(ea.act(&ea.act(&sigma).unwrap()).unwrap(), sigma);
    }

    #[test]
    fn twisting_is_an_algebra_morphism(
        values in signs(2),
        a in prop::collection::vec((prop::collection::vec(0usize..9, 0..3), value()), 0..4),
        b in prop::collection::vec((prop::collection::vec(0usize..9, 0..3), value()), 0..4),
    ) {
        let alg = running_algebra(3, BracketMode::Plain);
        let sigma = QuadraticRefinement::new(alg.lattice().surface().clone(), values).unwrap();
        let build = |t: &[(Vec<usize>, Rational)]| {
            let words: Vec<(Word, Rational)> = t
                .iter()
                .map(|(w, c)| (Word::new(w.iter().map(|&i| alg.letters()[i].clone()).collect()), c.clone()))
                .collect();
            alg.element_from_terms(words.iter().map(|(w, c)| (w, c))).unwrap()
        };
        let (x, y) = (build(&a), build(&b));
        let lhs = to_twisted(&sigma, &x.multiply(&y).unwrap()).unwrap();
        let rhs = to_twisted(&sigma, &x).unwrap().multiply(&to_twisted(&sigma, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_spectrum_is_refinement_independent(
        boundary in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 4),
        entries in prop::collection::vec((prop::collection::vec(0i64..=3, 2), value()), 0..6),
        base in signs(4),
    ) {
        let surface = SurfaceModel::standard(2);
        let lattice = ChargeLattice::new(2, boundary, surface.clone()).unwrap();
        let spec: Spectrum = entries.into_iter().map(|(c, v)| (Charge::new(c), v)).collect();
        let base = QuadraticRefinement::new(surface.clone(), base).unwrap();
        let reference = twist_spectrum(&base, &lattice, &spec);
        for eps in CohomologyAction::all(surface.genus_rank()) {
            let sigma = eps.act(&base).unwrap();
            prop_assert_eq!(twist_spectrum(&sigma, &lattice, &covariant_spectrum(&eps, &lattice, &spec)), reference.clone());
        }
    }
}

#[test]
fn morphism_carries_ray_products() {
    let alg = running_algebra(3, BracketMode::Plain);
    let lattice = running_lattice();
    let tw = alg.with_mode(BracketMode::Twisted).unwrap();
    for sigma in QuadraticRefinement::all(lattice.surface()) {
        let spec: Spectrum = alg
            .letters()
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), Rational::new((i as i64 % 3 - 1).into(), 2.into())))
            .collect();
        let image = to_twisted(&sigma, &alg.ray_product(&spec).unwrap()).unwrap();
        let expected = tw.ray_product(&twist_spectrum(&sigma, &lattice, &spec)).unwrap();
        assert_eq!(image, expected);
    }
}
