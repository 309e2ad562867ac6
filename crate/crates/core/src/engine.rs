//! Stability structures, wall detection along paths of central charges, and
//! transport of spectra across walls of the first type.
//!
//! Transport keeps the total element `A = ∏→ exp(Σ a_β e_β)` fixed and
//! refactorizes it in the generator order of the new central charge. Wall
//! times are isolated exactly: on each linear segment of a path the phase
//! determinant `cross(Z_t(β₁), Z_t(β₂))` is a polynomial of degree at most
//! two in `t`, whose sign-changing roots are either computed exactly (when
//! rational) or bracketed by rational bisection.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Algebra, AlgebraElement, BracketMode, Spectrum};
use crate::error::{Error, Interval, Result};
use crate::lattice::{
    cone_enumerate, cross, phase_precedes, wall_first_type, CentralCharge, Charge, ChargeLattice, Cone, PlaneVector,
    QuadraticForm, Sector, TruncationSet,
};
use crate::refinement::{twist_spectrum, QuadraticRefinement};
use crate::Rational;

/// Everything in a stability structure that does not depend on Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub lattice: ChargeLattice,
    pub quadratic_form: QuadraticForm,
    pub sector: Sector,
    pub truncation: TruncationSet,
    pub scan_box: u32,
    pub mode: BracketMode,
}

impl Configuration {
    pub fn cone(&self, z: &CentralCharge) -> Result<Cone> {
        cone_enumerate(&self.lattice, z, &self.quadratic_form, &self.sector, &self.truncation, self.scan_box)
    }

    pub fn algebra(&self, z: &CentralCharge) -> Result<Arc<Algebra>> {
        Algebra::new(self.lattice.clone(), z.clone(), self.truncation.clone(), self.cone(z)?, self.mode)
    }
}

/// A central charge, its truncated algebra and a spectrum supported in the cone.
#[derive(Clone, Debug)]
pub struct StabilityStructure {
    config: Configuration,
    z: CentralCharge,
    spectrum: Spectrum,
    refinement: Option<QuadraticRefinement>,
    algebra: Arc<Algebra>,
}

impl StabilityStructure {
    pub fn new(config: Configuration, z: CentralCharge, spectrum: Spectrum) -> Result<Self> {
        let algebra = config.algebra(&z)?;
        StabilityStructure::with_algebra(config, z, spectrum, algebra)
    }

    fn with_algebra(
        config: Configuration,
        z: CentralCharge,
        spectrum: Spectrum,
        algebra: Arc<Algebra>,
    ) -> Result<Self> {
        if let Some(c) = spectrum.support().find(|c| !algebra.contains(c)) {
            return Err(Error::SupportOutsideCone(c.clone()));
        }
        let support: Vec<Charge> = spectrum.support().cloned().collect();
        if let Some((a, b)) = wall_first_type(&z, &support) {
            return Err(Error::FirstTypeWall(a, b));
        }
        Ok(StabilityStructure { config, z, spectrum, refinement: None, algebra })
    }

    pub fn with_refinement(mut self, sigma: QuadraticRefinement) -> Self {
        self.refinement = Some(sigma);
        self
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn central_charge(&self) -> &CentralCharge {
        &self.z
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn refinement(&self) -> Option<&QuadraticRefinement> {
        self.refinement.as_ref()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn cone(&self) -> &Cone {
        self.algebra.cone()
    }

    /// `∏→ exp(Σ a_β e_β)` in the order of this structure's central charge.
    pub fn total_element(&self) -> Result<AlgebraElement> {
        self.algebra.ray_product(&self.spectrum)
    }

    /// σ-independent invariants `a_β = σ(∂β) a^σ_β`, if a refinement is attached.
    pub fn twisted_spectrum(&self) -> Option<Spectrum> {
        self.refinement.as_ref().map(|s| twist_spectrum(s, &self.config.lattice, &self.spectrum))
    }

    /// The structure at `z_new` carrying the same total element.
    pub fn transport(&self, z_new: &CentralCharge) -> Result<StabilityStructure> {
        let cone_new = self.config.cone(z_new)?;
        if cone_new != *self.cone() {
            return Err(Error::ConeChanged);
        }
        if let Some((a, b)) = wall_first_type(z_new, cone_new.members()) {
            return Err(Error::FirstTypeWall(a, b));
        }
        let algebra_new = self.algebra.with_central_charge(z_new.clone())?;
        let a = self.total_element()?.reexpress(&algebra_new)?;
        let spectrum = algebra_new.factorize(&a)?;
        let mut out = StabilityStructure::with_algebra(self.config.clone(), z_new.clone(), spectrum, algebra_new)?;
        out.refinement = self.refinement.clone();
        Ok(out)
    }
}

/// Spectrum at `z_new` with the same ordered product as `structure`.
pub fn transport_spectrum(structure: &StabilityStructure, z_new: &CentralCharge) -> Result<Spectrum> {
    Ok(structure.transport(z_new)?.spectrum)
}

/// Split a spectrum at a ray: phases strictly before `ray` clockwise, and the rest.
pub fn split_spectrum(z: &CentralCharge, ray: &PlaneVector, spectrum: &Spectrum) -> (Spectrum, Spectrum) {
    let first = spectrum.filter(|c| phase_precedes(&z.eval(c), ray));
    let second = spectrum.filter(|c| !phase_precedes(&z.eval(c), ray));
    (first, second)
}

/// Keyframed central charges, linear between consecutive keyframes.
///
/// Keyframe `k` of `m` sits at `t = k / (m - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationPath {
    keyframes: Vec<CentralCharge>,
}

impl VariationPath {
    pub fn new(keyframes: Vec<CentralCharge>) -> Result<Self> {
        if keyframes.len() < 2 {
            return Err(Error::ShortPath);
        }
        if keyframes.iter().any(|k| k.rank() != keyframes[0].rank()) {
            return Err(Error::Dimension("keyframes have different ranks".into()));
        }
        Ok(VariationPath { keyframes })
    }

    pub fn keyframes(&self) -> &[CentralCharge] {
        &self.keyframes
    }

    pub fn segments(&self) -> usize {
        self.keyframes.len() - 1
    }

    fn segment_start(&self, k: usize) -> Rational {
        Rational::new((k as i64).into(), (self.segments() as i64).into())
    }

    /// Z at global time `t ∈ [0, 1]`.
    pub fn at(&self, t: &Rational) -> CentralCharge {
        let m = Rational::from_integer((self.segments() as i64).into());
        let scaled = t * &m;
        let k = (scaled.floor().to_integer().try_into().unwrap_or(0i64).max(0) as usize).min(self.segments() - 1);
        let s = scaled - Rational::from_integer((k as i64).into());
        self.keyframes[k].interpolate(&self.keyframes[k + 1], &s)
    }

    fn to_global(&self, k: usize, s: &Rational) -> Rational {
        (Rational::from_integer((k as i64).into()) + s) / Rational::from_integer((self.segments() as i64).into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    FirstType,
    SecondType,
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallKind::FirstType => "first_type",
            WallKind::SecondType => "second_type",
        })
    }
}

/// A crossing isolated in a rational interval of the path parameter.
///
/// First type: the phases of `pair` align. Second type: `pair.0` reaches a
/// boundary ray while `pair.0 + pair.1` is one of the tracked charges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WallEvent {
    pub interval: Interval,
    pub kind: WallKind,
    pub pair: (Charge, Charge),
}

impl fmt::Display for WallEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} t in {} pair {} {}", self.kind, self.interval, self.pair.0, self.pair.1)
    }
}

/// `p(s) = c[0] + c[1] s + c[2] s²`.
#[derive(Clone, Debug)]
struct Poly([Rational; 3]);

impl Poly {
    fn eval(&self, s: &Rational) -> Rational {
        &self.0[0] + s * (&self.0[1] + s * &self.0[2])
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn derivative(&self, s: &Rational) -> Rational {
        &self.0[1] + Rational::from_integer(2.into()) * s * &self.0[2]
    }

    /// Sign of p on `(s, s + ε)` (`right`) or `(s - ε, s)`.
    fn side_sign(&self, s: &Rational, right: bool) -> i32 {
        let d = if right { 1 } else { -1 };
        let v = self.eval(s);
        if !v.is_zero() {
            return sgn(&v);
        }
        let dv = self.derivative(s);
        if !dv.is_zero() {
            return d * sgn(&dv);
        }
        sgn(&self.0[2])
    }

    /// Exact rational root in `(a, b)` when one exists there.
    fn rational_root_in(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        let [c0, c1, c2] = &self.0;
        let candidates = if c2.is_zero() {
            if c1.is_zero() {
                vec![]
            } else {
                vec![-c0 / c1]
            }
        } else {
            let disc = c1 * c1 - Rational::from_integer(4.into()) * c2 * c0;
            if disc.is_negative() {
                return None;
            }
            let root = rational_sqrt(&disc)?;
            let two_a = Rational::from_integer(2.into()) * c2;
            vec![(-c1 + &root) / &two_a, (-c1 - &root) / &two_a]
        };
        candidates.into_iter().find(|r| r > a && r < b && self.eval(r).is_zero())
    }

    /// Roots in the open interval `(0, 1)` where the sign changes.
    fn sign_change_roots(&self, tolerance: &Rational) -> Vec<Interval> {
        let zero = Rational::zero();
        let one = Rational::one();
        let mut cuts = vec![zero.clone()];
        if !self.0[2].is_zero() {
            let vertex = -&self.0[1] / (Rational::from_integer(2.into()) * &self.0[2]);
            if vertex > zero && vertex < one {
                cuts.push(vertex);
            }
        }
        cuts.push(one);
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (pa, pb) = (self.eval(a), self.eval(b));
            // p is monotone on [a, b]; a zero at a cut point is either a double
            // root (no sign change) or lies on the segment boundary
            if sgn(&pa) * sgn(&pb) < 0 {
                if let Some(r) = self.rational_root_in(a, b) {
                    out.push(Interval::point(r));
                } else {
                    out.push(self.bisect(a.clone(), b.clone(), tolerance));
                }
            }
        }
        out
    }

    fn bisect(&self, mut lo: Rational, mut hi: Rational, tolerance: &Rational) -> Interval {
        let s_lo = sgn(&self.eval(&lo));
        while &hi - &lo > *tolerance {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let s = sgn(&self.eval(&mid));
            if s == 0 {
                return Interval::point(mid);
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Interval { lo, hi }
    }
}

fn sgn(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

fn cross_poly(u0: &PlaneVector, du: &PlaneVector, v0: &PlaneVector, dv: &PlaneVector) -> Poly {
    Poly([cross(u0, v0), cross(u0, dv) + cross(du, v0), cross(du, dv)])
}

/// Default bracket width for irrational wall times.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), (1i64 << 20).into())
}

/// Every wall crossed by `path` among `charges`, sorted by interval.
///
/// Non-parallel pairs give first-type events where their phases swap;
/// a charge whose phase crosses a boundary ray of `sector` gives one
/// second-type event per split `β = β₁ + β₂` inside `charges`.
pub fn detect_walls(
    path: &VariationPath,
    charges: &[Charge],
    sector: &Sector,
    tolerance: &Rational,
) -> Result<Vec<WallEvent>> {
    let set: BTreeSet<&Charge> = charges.iter().collect();
    let segments = path.segments();
    // motion[k][i] = (Z_k(βᵢ), Z_{k+1}(βᵢ) − Z_k(βᵢ))
    let motion: Vec<Vec<(PlaneVector, PlaneVector)>> = (0..segments)
        .map(|k| {
            charges
                .iter()
                .map(|c| {
                    let u0 = path.keyframes[k].eval(c);
                    let du = &path.keyframes[k + 1].eval(c) - &u0;
                    (u0, du)
                })
                .collect()
        })
        .collect();
    let still = PlaneVector::from_ints(0, 0);
    let mut events = BTreeSet::new();

    for i in 0..charges.len() {
        for j in i + 1..charges.len() {
            if charges[i].is_proportional(&charges[j]) {
                continue;
            }
            let polys: Vec<Poly> = motion.iter().map(|m| cross_poly(&m[i].0, &m[i].1, &m[j].0, &m[j].1)).collect();
            if polys.iter().any(Poly::is_zero) {
                return Err(Error::PathAlongWall(charges[i].clone(), charges[j].clone()));
            }
            for interval in path_roots(path, &polys, &|_, _| true, tolerance) {
                events.insert(WallEvent {
                    interval,
                    kind: WallKind::FirstType,
                    pair: (charges[i].clone(), charges[j].clone()),
                });
            }
        }
    }

    for (i, b1) in charges.iter().enumerate() {
        let splits: Vec<(Charge, Charge)> =
            charges.iter().map(|beta| beta - b1).filter(|b2| set.contains(b2)).map(|b2| (b1.clone(), b2)).collect();
        if splits.is_empty() {
            continue;
        }
        for ray in [sector.start(), sector.end()] {
            let polys: Vec<Poly> = motion.iter().map(|m| cross_poly(ray, &still, &m[i].0, &m[i].1)).collect();
            // the root must land on the ray itself, not its opposite
            let on_ray = |k: usize, s: &Rational| {
                let (u0, du) = &motion[k][i];
                let zs = u0 + &PlaneVector::new(&du.x * s, &du.y * s);
                ray.dot(&zs).is_positive()
            };
            let mut intervals = Vec::new();
            for (k, poly) in polys.iter().enumerate() {
                if poly.is_zero() && (on_ray(k, &Rational::zero()) || on_ray(k, &Rational::one())) {
                    intervals.push(Interval { lo: path.segment_start(k), hi: path.segment_start(k + 1) });
                }
            }
            intervals.extend(path_roots(path, &polys, &on_ray, tolerance));
            for interval in intervals {
                for p in &splits {
                    events.insert(WallEvent {
                        interval: interval.clone(),
                        kind: WallKind::SecondType,
                        pair: p.clone(),
                    });
                }
            }
        }
    }
    Ok(events.into_iter().collect())
}

/// Sign-changing roots of a piecewise polynomial in the open interval `(0, 1)`
/// of global time, including sign changes exactly at interior keyframes.
fn path_roots(
    path: &VariationPath,
    polys: &[Poly],
    accept: &dyn Fn(usize, &Rational) -> bool,
    tolerance: &Rational,
) -> Vec<Interval> {
    let mut out = Vec::new();
    let one = Rational::one();
    let zero = Rational::zero();
    for (k, poly) in polys.iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        for iv in poly.sign_change_roots(tolerance) {
            let mid = (&iv.lo + &iv.hi) / Rational::from_integer(2.into());
            if accept(k, &mid) {
                out.push(Interval { lo: path.to_global(k, &iv.lo), hi: path.to_global(k, &iv.hi) });
            }
        }
        if let Some(next) = polys.get(k + 1) {
            if poly.eval(&one).is_zero() && !next.is_zero() && accept(k, &one) {
                let left = poly.side_sign(&one, false);
                let right = next.side_sign(&zero, true);
                if left * right < 0 {
                    out.push(Interval::point(path.segment_start(k + 1)));
                }
            }
        }
    }
    out
}

/// A crossing of one cluster of first-type events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub interval: Interval,
    pub witnesses: Vec<(Charge, Charge)>,
    pub before: Spectrum,
    pub after: Spectrum,
}

impl Jump {
    pub fn changed(&self) -> bool {
        self.before != self.after
    }
}

/// Outcome of walking a path: events in order, spectrum changes at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationReport {
    pub events: Vec<WallEvent>,
    pub jumps: Vec<Jump>,
    pub initial: Spectrum,
    pub final_spectrum: Spectrum,
}

impl VariationReport {
    pub fn is_constant(&self) -> bool {
        self.initial == self.final_spectrum && self.jumps.iter().all(|j| !j.changed())
    }
}

fn write_spectrum(f: &mut fmt::Formatter<'_>, label: &str, s: &Spectrum) -> fmt::Result {
    writeln!(f, "  {label}")?;
    for (beta, a) in s.iter() {
        writeln!(f, "    {beta} -> {a}")?;
    }
    Ok(())
}

impl fmt::Display for VariationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.events.is_empty() {
            return writeln!(f, "no events, spectrum constant");
        }
        writeln!(f, "events = {}", self.events.len())?;
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        for j in &self.jumps {
            write!(f, "jump t in {} witness", j.interval)?;
            for (a, b) in &j.witnesses {
                write!(f, " {a}|{b}")?;
            }
            writeln!(f)?;
            write_spectrum(f, "before", &j.before)?;
            write_spectrum(f, "after", &j.after)?;
        }
        write_spectrum(f, "final", &self.final_spectrum)
    }
}

type Cluster = (Interval, Vec<(Charge, Charge)>);

/// Every charge in the cone at some keyframe.
pub fn tracked_charges(config: &Configuration, path: &VariationPath) -> Result<Vec<Charge>> {
    let mut all = BTreeSet::new();
    for z in path.keyframes() {
        all.extend(config.cone(z)?.members().iter().cloned());
    }
    Ok(all.into_iter().collect())
}

/// Walk `path` from the spectrum given at `t = 0`, transporting across every
/// first-type wall and stopping at the first second-type one.
pub fn check_variation(
    config: &Configuration,
    path: &VariationPath,
    spectrum: Spectrum,
    tolerance: &Rational,
) -> Result<VariationReport> {
    let charges = tracked_charges(config, path)?;
    let events = detect_walls(path, &charges, &config.sector, tolerance)?;
    if let Some(e) = events.iter().find(|e| e.kind == WallKind::SecondType) {
        return Err(Error::SecondTypeWall {
            beta: &e.pair.0 + &e.pair.1,
            beta1: e.pair.0.clone(),
            beta2: e.pair.1.clone(),
            interval: Box::new(e.interval.clone()),
        });
    }

    // overlapping brackets are crossed together
    let mut clusters: Vec<Cluster> = Vec::new();
    for e in &events {
        match clusters.last_mut() {
            Some((iv, pairs)) if e.interval.lo <= iv.hi => {
                if e.interval.hi > iv.hi {
                    iv.hi = e.interval.hi.clone();
                }
                pairs.push(e.pair.clone());
            }
            _ => clusters.push((e.interval.clone(), vec![e.pair.clone()])),
        }
    }

    let three = Rational::from_integer(3.into());
    let two = Rational::from_integer(2.into());
    let c = clusters.len();
    let region = |r: usize| {
        let left = if r == 0 { Rational::zero() } else { clusters[r - 1].0.hi.clone() };
        let right = if r == c { Rational::one() } else { clusters[r].0.lo.clone() };
        let a = if r == 0 { Rational::zero() } else { (&two * &left + &right) / &three };
        let b = if r == c { Rational::one() } else { (&left + &two * &right) / &three };
        (a, b)
    };

    let start = StabilityStructure::new(config.clone(), path.at(&Rational::zero()), spectrum)?;
    let initial = start.spectrum().clone();
    let mut current = start;
    let mut jumps = Vec::new();
    for r in 0..=c {
        let (a, b) = region(r);
        if a != b {
            let moved = current.transport(&path.at(&b))?;
            if moved.spectrum() != current.spectrum() {
                return Err(Error::ReconstructionMismatch);
            }
            current = moved;
        }
        if r < c {
            let (next, _) = region(r + 1);
            let after = current.transport(&path.at(&next))?;
            jumps.push(Jump {
                interval: clusters[r].0.clone(),
                witnesses: clusters[r].1.clone(),
                before: current.spectrum().clone(),
                after: after.spectrum().clone(),
            });
            current = after;
        }
    }
    Ok(VariationReport { events, jumps, initial, final_spectrum: current.spectrum().clone() })
}
