//! Exact wall-crossing computations over a charge lattice.
//!
//! The crate models spectra `{a_β}` attached to charges of a lattice Γ
//! carrying a skew pairing pulled back from the intersection form of a
//! surface. A spectrum is encoded as a clockwise-ordered product of
//! exponentials in a truncated enveloping algebra; transporting it across
//! walls of marginal stability means refactorizing that product in a new
//! order. Alongside the algebra sits the combinatorial layer of nice
//! multi-disk chains (decorated forests, linking numbers, the crossing
//! rewrite and the monomial map), which realizes the same algebra from
//! curves at distinct heights.
//!
//! All arithmetic is exact: rationals are arbitrary precision and every
//! phase comparison is the sign of a 2×2 determinant.
//!
//! Modules, bottom-up:
//!
//! - [`lattice`]: Γ, ∂, Z, Q, sectors, heights and the truncated cone.
//! - [`algebra`]: PBW normal form, exponentials, ray products, factorization.
//! - [`refinement`]: quadratic refinements and the twisted bracket.
//! - [`multidisk`]: forests, nice chains, linking numbers, multilink.
//! - [`engine`]: stability structures, wall detection and transport.
//! - [`scenario`]: the scenario file format and command dispatch.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod lattice;
mod linalg;
pub mod multidisk;
pub mod refinement;
pub mod scenario;

pub use num_rational::BigRational as Rational;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::algebra::{Algebra, AlgebraElement, BracketMode, RewriteStrategy, Spectrum, Word};
    pub use crate::engine::{Configuration, StabilityStructure, VariationPath, WallEvent, WallKind};
    pub use crate::lattice::{
        cone_enumerate, phase_precedes, CentralCharge, Charge, ChargeLattice, Cone, PlaneVector, QuadraticForm, Sector,
        SurfaceModel, TruncationSet,
    };
    pub use crate::multidisk::{ChainVertex, DecoratedForest, NiceChain};
    pub use crate::refinement::{CohomologyAction, QuadraticRefinement};
    pub use crate::Rational;
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/charges.md")]
    mod charges {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/refinements.md")]
    mod refinements {}
    #[doc = include_str!("../../../book/src/multidisk.md")]
    mod multidisk {}
    #[doc = include_str!("../../../book/src/wall_crossing.md")]
    mod wall_crossing {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
}
