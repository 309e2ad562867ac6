//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wallcross::algebra::{Algebra, BracketMode, RewriteStrategy, Spectrum, Word};
use wallcross::engine::{
    detect_walls, split_spectrum, transport_spectrum, Configuration, StabilityStructure, VariationPath,
};
use wallcross::error::{Error, Interval};
use wallcross::fixtures::{
    height_truncation, product_form, running_algebra, running_central_charge, running_lattice, swapped_central_charge,
    wide_sector,
};
use wallcross::lattice::{CentralCharge, Charge, PlaneVector};
use wallcross::multidisk::{
    crossing_rewrite, enumerate_forests, multilink_forest, multilink_total, sort_to_normal_order, to_monomial,
    NiceChain,
};
use wallcross::refinement::{covariant_spectrum, twist_spectrum, CohomologyAction, QuadraticRefinement};
use wallcross::Rational;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn random_value(rng: &mut StdRng) -> Rational {
    q(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_spectrum(rng: &mut StdRng, letters: &[Charge], density: f64) -> Spectrum {
    let mut spec = Spectrum::new();
    for c in letters {
        if rng.gen_bool(density) {
            spec.set(c.clone(), random_value(rng));
        }
    }
    spec
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn config(cutoff: i64, mode: BracketMode) -> Configuration {
    Configuration {
        lattice: running_lattice(),
        quadratic_form: product_form(),
        sector: wide_sector(),
        truncation: height_truncation(cutoff),
        scan_box: cutoff as u32 + 2,
        mode,
    }
}

/// Z(γ₁) = (a, 1), Z(γ₂) = (b, 1) with a ≠ b strictly inside the wide sector.
fn random_z(rng: &mut StdRng) -> CentralCharge {
    loop {
        let a = q(rng.gen_range(-15..=15), 4);
        let b = q(rng.gen_range(-15..=15), 4);
        if a != b {
            return CentralCharge::new(vec![a, b], vec![r(1), r(1)]).unwrap();
        }
    }
}

fn words_up_to(letters: &[Charge], max: usize) -> Vec<Vec<Charge>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<Charge>> = vec![vec![]];
    for _ in 0..max {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |l| [w.clone(), vec![l.clone()]].concat())).collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn chain_in_order(charges: &[Charge]) -> NiceChain {
    let n = charges.len() as i64;
    let items: Vec<(Rational, Charge)> =
        charges.iter().enumerate().map(|(i, c)| (q(i as i64 + 1, n + 1), c.clone())).collect();
    NiceChain::from_charges(&running_lattice(), &items).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let algebras: Vec<Arc<Algebra>> = (1..=4).map(|l| running_algebra(l, BracketMode::Plain)).collect();
    ensure(algebras[3].letters().len() == 14, || "Λ = 4 cone should have 14 charges".into())?;
    let start = Instant::now();
    for i in 0..500 {
        let alg = &algebras[i % 4];
        let spec = random_spectrum(&mut rng, alg.letters(), 0.6);
        let back = alg.factorize(&alg.ray_product(&spec).map_err(e2s)?).map_err(e2s)?;
        ensure(back == spec, || format!("round trip failed for {spec:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("500 spectra, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (g1, g2) = (Charge::new(vec![1, 0]), Charge::new(vec![0, 1]));
    let g12 = &g1 + &g2;
    let spec: Spectrum = [(g1.clone(), r(1)), (g2.clone(), r(1))].into_iter().collect();
    let lattice = running_lattice();
    ensure(lattice.pairing(&g1, &g2) == 1, || "pairing should be 1".into())?;

    let s =
        StabilityStructure::new(config(2, BracketMode::Plain), swapped_central_charge(), spec.clone()).map_err(e2s)?;
    let plain = transport_spectrum(&s, &running_central_charge()).map_err(e2s)?;
    ensure(plain.get(&g12) == r(1), || format!("plain a(γ₁+γ₂) = {}", plain.get(&g12)))?;

    let sigma = QuadraticRefinement::trivial(lattice.surface().clone());
    let invariant = twist_spectrum(&sigma, &lattice, &plain);
    ensure(invariant.get(&g12) == r(-1), || format!("twisted invariant = {}", invariant.get(&g12)))?;

    // the same value from transport in the twisted bracket
    let tw_in = twist_spectrum(&sigma, &lattice, &spec);
    let t = StabilityStructure::new(config(2, BracketMode::Twisted), swapped_central_charge(), tw_in).map_err(e2s)?;
    let twisted = transport_spectrum(&t, &running_central_charge()).map_err(e2s)?;
    ensure(twisted == invariant, || format!("twisted-mode transport gave {twisted:?}"))?;

    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("a = 1 plain, -1 twisted, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let cfg = config(3, BracketMode::Plain);
    for _ in 0..200 {
        let (z_old, z_new) = (random_z(&mut rng), random_z(&mut rng));
        let alg_old = cfg.algebra(&z_old).map_err(e2s)?;
        let spec = random_spectrum(&mut rng, alg_old.letters(), 0.5);
        let s = StabilityStructure::new(cfg.clone(), z_old, spec).map_err(e2s)?;
        let moved = s.transport(&z_new).map_err(e2s)?;
        let before = s.total_element().map_err(e2s)?.reexpress(moved.algebra()).map_err(e2s)?;
        let after = moved.total_element().map_err(e2s)?;
        ensure(before == after, || format!("total element changed for {:?}", s.spectrum()))?;
    }
    Ok("200 random transports".into())
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let alg = running_algebra(4, BracketMode::Plain);
    let z = running_central_charge();
    for _ in 0..100 {
        let spec = random_spectrum(&mut rng, alg.letters(), 0.5);
        // interior ray of the sector from (-1, 1) to (1, 1)
        let ray = PlaneVector::new(q(rng.gen_range(-99..=99), 100), r(1));
        let (s1, s2) = split_spectrum(&z, &ray, &spec);
        let whole = alg.ray_product(&spec).map_err(e2s)?;
        let parts = alg.ray_product(&s1).map_err(e2s)?.multiply(&alg.ray_product(&s2).map_err(e2s)?).map_err(e2s)?;
        ensure(whole == parts, || format!("split at {ray} failed for {spec:?}"))?;
    }
    Ok("100 random splits".into())
}

fn criterion_5() -> Outcome {
    let small = running_algebra(2, BracketMode::Plain);
    let host = running_algebra(8, BracketMode::Plain);
    let lattice = running_lattice();
    let mut rewrites = 0;
    let chains = words_up_to(small.letters(), 4);
    for charges in &chains {
        let chain = chain_in_order(charges);
        let word = to_monomial(&chain);
        for j in 0..charges.len().saturating_sub(1) {
            let combo = crossing_rewrite(&lattice, &chain, j).map_err(e2s)?;
            let via_chains = host.element_from_terms(combo.image_words().iter()).map_err(e2s)?;
            let raw = host.relation_step(&word, j).map_err(e2s)?;
            let via_relation = host.element_from_terms(raw.iter().map(|(w, c)| (w, c))).map_err(e2s)?;
            ensure(via_chains == via_relation, || format!("rewrite at {j} of {word} disagrees"))?;
            rewrites += 1;
        }
        let direct = host.normal_form(&word, r(1)).map_err(e2s)?;
        for strategy in [RewriteStrategy::LeftmostFirst, RewriteStrategy::RightmostFirst] {
            let sorted = sort_to_normal_order(&host, &chain, strategy).map_err(e2s)?;
            let image = host.element_from_terms(sorted.image_words().iter()).map_err(e2s)?;
            ensure(image == direct, || format!("sorting {word} with {strategy:?} disagrees"))?;
        }
    }
    Ok(format!("{} chains, {rewrites} rewrites", chains.len()))
}

fn criterion_6() -> Outcome {
    let small = running_algebra(2, BracketMode::Plain);
    let lattice = running_lattice();
    let z = running_central_charge();
    let mut count = 0;
    for charges in words_up_to(small.letters(), 4) {
        // phase-ordered: heights increase along the generator order
        let mut idx: Vec<usize> = charges.iter().map(|c| small.order_index(c).unwrap()).collect();
        let sorted = idx.clone();
        idx.sort();
        if idx != sorted {
            continue;
        }
        let chain = chain_in_order(&charges);
        for forest in enumerate_forests(&chain.charges()) {
            if forest.edge_count() == 0 {
                continue;
            }
            let v = multilink_forest(&lattice, &z, &chain, &forest).map_err(e2s)?;
            ensure(v == r(0), || format!("forest with {} edges contributes {v}", forest.edge_count()))?;
        }
        let total = multilink_total(&lattice, &z, &chain).map_err(e2s)?;
        ensure(total == r(1), || format!("multilink_total = {total}"))?;
        count += 1;
    }
    Ok(format!("{count} phase-ordered chains"))
}

fn criterion_7() -> Outcome {
    let lattice = running_lattice();
    let surface = lattice.surface().clone();
    let letters = running_algebra(2, BracketMode::Plain).letters().to_vec();
    let values = [r(-1), r(0), r(1), q(1, 2)];
    let base = QuadraticRefinement::trivial(surface.clone());
    let mut count = 0;
    for mask in 0..values.len().pow(letters.len() as u32) {
        let mut m = mask;
        let mut spec = Spectrum::new();
        for c in &letters {
            spec.set(c.clone(), values[m % values.len()].clone());
            m /= values.len();
        }
        let reference = twist_spectrum(&base, &lattice, &spec);
        let mut seen = 0;
        for eps in CohomologyAction::all(surface.genus_rank()) {
            let sigma = eps.act(&base).map_err(e2s)?;
            let input = covariant_spectrum(&eps, &lattice, &spec);
            ensure(twist_spectrum(&sigma, &lattice, &input) == reference, || format!("σ = {:?}", sigma.values()))?;
            seen += 1;
        }
        ensure(seen == 4, || "expected 4 refinements".into())?;
        count += 1;
    }
    Ok(format!("{count} spectra × 4 refinements"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for mode in [BracketMode::Plain, BracketMode::Twisted] {
        let small = running_algebra(2, mode);
        let host = running_algebra(8, mode);
        for alg in [&small, &host] {
            for w in words_up_to(small.letters(), 4) {
                let w = Word::new(w);
                let a = alg.normal_form_with(&w, r(1), RewriteStrategy::LeftmostFirst).map_err(e2s)?;
                let b = alg.normal_form_with(&w, r(1), RewriteStrategy::RightmostFirst).map_err(e2s)?;
                ensure(a == b, || format!("{w} in {} mode", mode.name()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} normal forms, 0 discrepancies"))
}

fn criterion_9() -> Outcome {
    let (g1, g2) = (Charge::new(vec![1, 0]), Charge::new(vec![0, 1]));
    let tol = Rational::new(1.into(), (1i64 << 20).into());
    let path = VariationPath::new(vec![running_central_charge(), swapped_central_charge()]).map_err(e2s)?;
    let events = detect_walls(&path, &[g1.clone(), g2.clone()], &wide_sector(), &tol).map_err(e2s)?;
    ensure(events.len() == 1, || format!("{} events", events.len()))?;
    ensure(events[0].interval == Interval::point(q(1, 2)), || format!("interval {}", events[0].interval))?;
    let a = CentralCharge::from_ints(&[1, 2], &[1, 2]).unwrap();
    let b = CentralCharge::from_ints(&[1, 3], &[1, 3]).unwrap();
    let along = VariationPath::new(vec![a, b]).map_err(e2s)?;
    match detect_walls(&along, &[g1, g2], &wide_sector(), &tol) {
        Err(Error::PathAlongWall(..)) => Ok("[1/2, 1/2]; along-wall path rejected".into()),
        other => Err(format!("path along a wall gave {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Check; 9] = [
        ("round-trip factorization", criterion_1),
        ("primitive wall crossing", criterion_2),
        ("invariance of the total element", criterion_3),
        ("sector splitting", criterion_4),
        ("chains and monomials", criterion_5),
        ("multilink reduction", criterion_6),
        ("refinement independence", criterion_7),
        ("confluence", criterion_8),
        ("wall detection exactness", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
