//! Quadratic refinements of the mod-2 intersection form.
//!
//! A refinement σ: H₁(Σ, Z) → {±1} satisfies
//! `σ(x)σ(y) = (-1)^⟨x,y⟩ σ(x + y)`; it is fixed by its values on a basis.
//! Spin structures enter only through their refinements. Twisting
//! `e_β ↦ σ(∂β) ê_β` intertwines the plain bracket with the twisted one,
//! and `a_β = σ(∂β) a^σ_β` is the same for every σ when the inputs are
//! related by the H¹(Σ, Z₂) covariance rule.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraElement, BracketMode, Spectrum, Word};
use crate::error::{Error, Result};
use crate::lattice::{ChargeLattice, SurfaceModel};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticRefinement {
    surface: SurfaceModel,
    values: Vec<i8>,
}

impl QuadraticRefinement {
    /// `values[i]` is σ on the `i`-th basis class.
    pub fn new(surface: SurfaceModel, values: Vec<i8>) -> Result<Self> {
        if values.len() != surface.genus_rank() {
            return Err(Error::Dimension(format!(
                "refinement needs {} basis values, got {}",
                surface.genus_rank(),
                values.len()
            )));
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Invalid("refinement values must be +1 or -1".into()));
        }
        Ok(QuadraticRefinement { surface, values })
    }

    /// σ ≡ +1 on the basis.
    pub fn trivial(surface: SurfaceModel) -> Self {
        let values = vec![1; surface.genus_rank()];
        QuadraticRefinement { surface, values }
    }

    /// All 2^{2g} refinements, in binary order of their basis values.
    pub fn all(surface: &SurfaceModel) -> Vec<QuadraticRefinement> {
        let m = surface.genus_rank();
        (0..1u32 << m)
            .map(|mask| QuadraticRefinement {
                surface: surface.clone(),
                values: (0..m).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            })
            .collect()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    /// σ(γ), built up one basis class at a time from the defining relation.
    pub fn eval(&self, gamma: &[i64]) -> i8 {
        let j = self.surface.intersection();
        let m = self.values.len();
        let mut acc = vec![0i64; m];
        let mut value = 1i8;
        for i in 0..m {
            if gamma[i].rem_euclid(2) == 0 {
                continue;
            }
            // σ(acc + eᵢ) = σ(acc) σ(eᵢ) (-1)^⟨acc, eᵢ⟩
            let p: i64 = (0..m).map(|k| acc[k] * j[k][i]).sum();
            value *= self.values[i];
            if p.rem_euclid(2) == 1 {
                value = -value;
            }
            acc[i] = 1;
        }
        value
    }
}

/// An element ε of H¹(Σ, Z₂), given by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyAction {
    bits: Vec<u8>,
}

impl CohomologyAction {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Invalid("cohomology class values must be 0 or 1".into()));
        }
        Ok(CohomologyAction { bits })
    }

    pub fn zero(genus_rank: usize) -> Self {
        CohomologyAction { bits: vec![0; genus_rank] }
    }

    /// All 2^{2g} classes.
    pub fn all(genus_rank: usize) -> Vec<CohomologyAction> {
        (0..1u32 << genus_rank)
            .map(|mask| CohomologyAction { bits: (0..genus_rank).map(|i| (mask >> i & 1) as u8).collect() })
            .collect()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// ε(γ) ∈ {0, 1}.
    pub fn eval(&self, gamma: &[i64]) -> u8 {
        let s: i64 = self.bits.iter().zip(gamma).map(|(&b, g)| b as i64 * g).sum();
        s.rem_euclid(2) as u8
    }

    /// (−1)^{ε(γ)}.
    pub fn sign(&self, gamma: &[i64]) -> i8 {
        if self.eval(gamma) == 1 {
            -1
        } else {
            1
        }
    }

    /// σ ↦ (−1)^ε σ.
    pub fn act(&self, sigma: &QuadraticRefinement) -> Result<QuadraticRefinement> {
        if self.bits.len() != sigma.values.len() {
            return Err(Error::Dimension("cohomology class and refinement ranks differ".into()));
        }
        let values = sigma.values.iter().zip(&self.bits).map(|(&v, &b)| if b == 1 { -v } else { v }).collect();
        Ok(QuadraticRefinement { surface: sigma.surface.clone(), values })
    }
}

fn signed(v: &Rational, s: i8) -> Rational {
    if s < 0 {
        -v
    } else {
        v.clone()
    }
}

/// a_β = σ(∂β) a^σ_β.
pub fn twist_spectrum(sigma: &QuadraticRefinement, lattice: &ChargeLattice, spectrum: &Spectrum) -> Spectrum {
    spectrum.map_values(|beta, v| signed(v, sigma.eval(&lattice.boundary_of(beta))))
}

/// a^{εσ}_β = (−1)^{ε(∂β)} a^σ_β.
pub fn covariant_spectrum(eps: &CohomologyAction, lattice: &ChargeLattice, spectrum: &Spectrum) -> Spectrum {
    spectrum.map_values(|beta, v| signed(v, eps.sign(&lattice.boundary_of(beta))))
}

/// Image of a plain-mode element under `e_β ↦ σ(∂β) ê_β`.
pub fn to_twisted(sigma: &QuadraticRefinement, a: &AlgebraElement) -> Result<AlgebraElement> {
    let target = a.algebra().with_mode(BracketMode::Twisted)?;
    to_twisted_in(sigma, a, &target)
}

/// As [`to_twisted`], landing in a prepared twisted algebra on the same letters.
pub fn to_twisted_in(sigma: &QuadraticRefinement, a: &AlgebraElement, target: &Arc<Algebra>) -> Result<AlgebraElement> {
    let source = a.algebra();
    if source.mode() != BracketMode::Plain
        || target.mode() != BracketMode::Twisted
        || source.letters() != target.letters()
        || source.lattice() != target.lattice()
    {
        return Err(Error::BasisMismatch);
    }
    if sigma.surface() != source.lattice().surface() {
        return Err(Error::Dimension("refinement lives on another surface".into()));
    }
    let lattice = source.lattice();
    let terms: Vec<(Word, Rational)> = a
        .terms()
        .map(|(w, c)| {
            let s = w.letters().iter().fold(1i8, |s, beta| s * sigma.eval(&lattice.boundary_of(beta)));
            (w, signed(c, s))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    target.element_from_terms(terms.iter().map(|(w, c)| (w, c)))
}
