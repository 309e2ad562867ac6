use std::fmt;

use crate::lattice::Charge;
use crate::Rational;

/// Closed rational interval in the path parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(t: Rational) -> Self {
        Interval { lo: t.clone(), hi: t }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Invalid(String),
    #[error("intersection matrix is not skew-symmetric")]
    NotSkew,
    #[error("quadratic form matrix is not symmetric")]
    NotSymmetric,
    #[error("zero vector has no phase")]
    ZeroVector,
    #[error("sector not strictly convex")]
    SectorNotConvex,
    #[error("truncation functional is not positive on the closed sector")]
    FunctionalNotPositive,
    #[error("truncation cutoff must be non-negative")]
    NegativeCutoff,
    #[error("unbounded search region: quadratic form is not negative definite on ker Z")]
    UnboundedRegion,
    #[error("scan box {0} too small: generator {1} lies on its boundary")]
    ScanBoxTooSmall(u32, Charge),
    #[error("letter {0} is outside the truncation set")]
    LetterOutsideCone(Charge),
    #[error("word is not in normal form")]
    NotNormalForm,
    #[error("operands live in different truncated algebras")]
    BasisMismatch,
    #[error("exponential needs a vanishing constant term")]
    NonzeroConstant,
    #[error("constant term must equal 1, found {0}")]
    ConstantNotOne(Rational),
    #[error("first-type wall: Z({0}) and Z({1}) are parallel")]
    FirstTypeWall(Charge, Charge),
    #[error("reconstruction mismatch after factorization")]
    ReconstructionMismatch,
    #[error("second-type wall for {beta} = {beta1} + {beta2} at t in {interval}")]
    SecondTypeWall { beta: Charge, beta1: Charge, beta2: Charge, interval: Box<Interval> },
    #[error("path runs along a wall for {0} and {1}")]
    PathAlongWall(Charge, Charge),
    #[error("cone changed between central charges (second-type wall)")]
    ConeChanged,
    #[error("spectrum charge {0} is outside the cone")]
    SupportOutsideCone(Charge),
    #[error("chain vertices share a height")]
    EqualHeights,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("edge {0} does not exist")]
    NotAnEdge(usize),
    #[error("position {0} has no right neighbour")]
    NotAdjacent(usize),
    #[error("variation path needs at least two keyframes")]
    ShortPath,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Machine-parsable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SecondTypeWall { .. } | Error::ConeChanged => "second-type-wall",
            Error::ReconstructionMismatch => "reconstruction-mismatch",
            Error::Parse { .. } => "parse",
            Error::FirstTypeWall(..) | Error::PathAlongWall(..) => "first-type-wall",
            _ => "validation",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_status(&self) -> i32 {
        match self {
            Error::SecondTypeWall { .. } | Error::ConeChanged => 3,
            Error::ReconstructionMismatch => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
