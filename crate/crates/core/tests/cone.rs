use proptest::prelude::*;

use wallcross::algebra::{generator_cmp, BracketMode};
use wallcross::fixtures::{
    height_truncation, product_form, running_lattice, transport_algebra, transport_cone, wide_sector,
};
use wallcross::lattice::{cone_enumerate, cross, CentralCharge, Charge, ChargeLattice, SurfaceModel};
use wallcross::Rational;

fn z_from(a: i64, b: i64) -> CentralCharge {
    let q = |n: i64| Rational::new(n.into(), 4.into());
    CentralCharge::new(vec![q(a), q(b)], vec![Rational::from_integer(1.into()); 2]).unwrap()
}

fn off_diagonal() -> impl Strategy<Value = (i64, i64)> {
    (-15i64..=15, -15i64..=15).prop_filter("Z(γ₁) ∦ Z(γ₂)", |(a, b)| a != b)
}

fn charge(rank: usize) -> impl Strategy<Value = Charge> {
    prop::collection::vec(-5i64..=5, rank).prop_map(Charge::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_is_skew_and_bilinear(
        boundary in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4),
        a in charge(3), b in charge(3), c in charge(3),
    ) {
        let l = ChargeLattice::new(3, boundary, SurfaceModel::standard(2)).unwrap();
        prop_assert_eq!(l.pairing(&a, &b), -l.pairing(&b, &a));
        prop_assert_eq!(l.pairing(&a, &a), 0);
        prop_assert_eq!(l.pairing(&(&a + &b), &c), l.pairing(&a, &c) + l.pairing(&b, &c));
    }

    #[test]
    fn cone_is_closed_under_bounded_sums((a, b) in off_diagonal(), cutoff in 1i64..=4) {
        let z = z_from(a, b);
        let cone = transport_cone(&z, cutoff);
        let lambda = Rational::from_integer(cutoff.into());
        for x in cone.members() {
            for y in cone.members() {
                let s = x + y;
                let h = cone.height(x).unwrap() + cone.height(y).unwrap();
                prop_assert_eq!(cone.contains(&s), h <= lambda, "{} + {}", x, y);
            }
        }
    }

    #[test]
    fn members_satisfy_the_defining_conditions((a, b) in off_diagonal(), cutoff in 1i64..=4) {
        let z = z_from(a, b);
        let cone = transport_cone(&z, cutoff);
        let q = product_form();
        for m in cone.members() {
            prop_assert!(wide_sector().contains(&z.eval(m)).unwrap());
            prop_assert!(q.eval(m) >= Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn smaller_cutoff_gives_the_truncated_cone((a, b) in off_diagonal(), big in 2i64..=5, small in 0i64..=5) {
        let small = small.min(big);
        let z = z_from(a, b);
        let truncated = transport_cone(&z, big).truncated(&Rational::from_integer(small.into()));
        let direct = cone_enumerate(
            &running_lattice(), &z, &product_form(), &wide_sector(), &height_truncation(small), small as u32 + 2,
        ).unwrap();
        prop_assert_eq!(truncated.members(), direct.members());
    }

    #[test]
    fn letters_are_strictly_ordered((a, b) in off_diagonal(), cutoff in 1i64..=4) {
        let z = z_from(a, b);
        let alg = transport_algebra(&z, cutoff, BracketMode::Plain);
        for pair in alg.letters().windows(2) {
            prop_assert_eq!(
                generator_cmp(&z, alg.truncation(), &pair[0], &pair[1]),
                std::cmp::Ordering::Less
            );
            // clockwise phase never goes backwards along the order
            prop_assert!(cross(&z.eval(&pair[0]), &z.eval(&pair[1])) <= Rational::from_integer(0.into()));
        }
    }
}
