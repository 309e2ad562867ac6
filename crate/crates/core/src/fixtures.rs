//! Ready-made configurations used throughout the docs and tests.
//!
//! The *running example* is the rank-2 lattice Γ = Zγ₁ ⊕ Zγ₂ with ∂ the
//! identity onto H₁ of a torus (so ⟨γ₁, γ₂⟩ = 1), central charge
//! Z(γ₁) = (1, 1), Z(γ₂) = (-1, 1), Q the identity form, sector from
//! (-1, 1) clockwise to (1, 1) and height functional λ = (0, 1).
//!
//! The running sector has both Z(γ₁) and Z(γ₂) on its boundary rays, so
//! variations of Z use the *transport* configuration instead: the same
//! lattice, Q(β) = β₁β₂, and the wider sector from (-4, 1) to (4, 1).
//! With this Q the cone is exactly the positive quadrant for every Z that
//! keeps Z(γ₁), Z(γ₂) inside the sector.

use std::sync::Arc;

use crate::algebra::{Algebra, BracketMode};
use crate::lattice::{
    cone_enumerate, CentralCharge, ChargeLattice, Cone, PlaneVector, QuadraticForm, Sector, SurfaceModel, TruncationSet,
};
use crate::Rational;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn running_lattice() -> ChargeLattice {
    ChargeLattice::new(2, vec![vec![1, 0], vec![0, 1]], SurfaceModel::standard(1)).expect("valid lattice")
}

pub fn running_central_charge() -> CentralCharge {
    CentralCharge::from_ints(&[1, -1], &[1, 1]).expect("valid central charge")
}

/// Z(γ₁) = (-3, 1), Z(γ₂) = (-1, 1): the γ₁ ray comes first clockwise.
pub fn swapped_central_charge() -> CentralCharge {
    CentralCharge::from_ints(&[-3, -1], &[1, 1]).expect("valid central charge")
}

pub fn running_sector() -> Sector {
    Sector::new(PlaneVector::from_ints(-1, 1), PlaneVector::from_ints(1, 1)).expect("convex sector")
}

pub fn wide_sector() -> Sector {
    Sector::new(PlaneVector::from_ints(-4, 1), PlaneVector::from_ints(4, 1)).expect("convex sector")
}

/// Q(β) = β₁β₂.
pub fn product_form() -> QuadraticForm {
    let h = Rational::new(1.into(), 2.into());
    QuadraticForm::new(vec![vec![int(0), h.clone()], vec![h, int(0)]]).expect("symmetric")
}

pub fn height_truncation(cutoff: i64) -> TruncationSet {
    TruncationSet::new([int(0), int(1)], int(cutoff)).expect("non-negative cutoff")
}

fn scan_box(cutoff: i64) -> u32 {
    (cutoff.max(0) + 2) as u32
}

pub fn running_cone(cutoff: i64) -> Cone {
    cone_enumerate(
        &running_lattice(),
        &running_central_charge(),
        &QuadraticForm::identity(2),
        &running_sector(),
        &height_truncation(cutoff),
        scan_box(cutoff),
    )
    .expect("running example cone")
}

pub fn running_algebra(cutoff: i64, mode: BracketMode) -> Arc<Algebra> {
    Algebra::new(running_lattice(), running_central_charge(), height_truncation(cutoff), running_cone(cutoff), mode)
        .expect("running example algebra")
}

/// Cone of the transport configuration under `z`.
pub fn transport_cone(z: &CentralCharge, cutoff: i64) -> Cone {
    cone_enumerate(&running_lattice(), z, &product_form(), &wide_sector(), &height_truncation(cutoff), scan_box(cutoff))
        .expect("transport cone")
}

pub fn transport_algebra(z: &CentralCharge, cutoff: i64, mode: BracketMode) -> Arc<Algebra> {
    Algebra::new(running_lattice(), z.clone(), height_truncation(cutoff), transport_cone(z, cutoff), mode)
        .expect("transport algebra")
}
