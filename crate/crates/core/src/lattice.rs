//! Charge lattice, central charge, quadratic form, sectors and the truncated cone.
//!
//! Every phase decision in this module is an exact sign test on a 2×2
//! determinant. The convention used throughout the crate is
//!
//! ```text
//! cross(u, v) = u.x * v.y - u.y * v.x
//! u precedes v (clockwise)  <=>  cross(u, v) < 0
//! ```
//!
//! so a sector swept clockwise from `start` to `end` has `cross(start, end) < 0`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// An element of the charge lattice Γ ≅ Zⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Charge(Vec<i64>);

impl Charge {
    pub fn new(coords: Vec<i64>) -> Self {
        Charge(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Charge(vec![0; rank])
    }

    /// The `i`-th basis charge γᵢ of a rank-`rank` lattice.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Charge(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Charge {
        Charge(self.0.iter().map(|c| c * k).collect())
    }

    /// True iff the two charges are rational multiples of each other.
    pub fn is_proportional(&self, other: &Charge) -> bool {
        let (a, b) = (&self.0, &other.0);
        (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
    }
}

impl Add for &Charge {
    type Output = Charge;
    fn add(self, rhs: &Charge) -> Charge {
        Charge(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Charge {
    type Output = Charge;
    fn sub(self, rhs: &Charge) -> Charge {
        Charge(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A rational vector in the plane, read as the complex number `x + iy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneVector {
    pub x: Rational,
    pub y: Rational,
}

impl PlaneVector {
    pub fn new(x: Rational, y: Rational) -> Self {
        PlaneVector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlaneVector::new(int(x), int(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, other: &PlaneVector) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }
}

impl Add for &PlaneVector {
    type Output = PlaneVector;
    fn add(self, rhs: &PlaneVector) -> PlaneVector {
        PlaneVector::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &PlaneVector {
    type Output = PlaneVector;
    fn sub(self, rhs: &PlaneVector) -> PlaneVector {
        PlaneVector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl fmt::Display for PlaneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross(u: &PlaneVector, v: &PlaneVector) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

/// Clockwise precedence: `u` comes strictly before `v` when rotating clockwise.
///
/// Parallel vectors never precede each other.
pub fn phase_precedes(u: &PlaneVector, v: &PlaneVector) -> bool {
    cross(u, v).is_negative()
}

/// First homology of the surface together with its intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    intersection: Vec<Vec<i64>>,
}

impl SurfaceModel {
    pub fn new(intersection: Vec<Vec<i64>>) -> Result<Self> {
        let m = intersection.len();
        if !m.is_multiple_of(2) {
            return Err(Error::Dimension(format!("H1 rank {m} is odd")));
        }
        if intersection.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension("intersection matrix is not square".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if intersection[i][j] != -intersection[j][i] {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(SurfaceModel { intersection })
    }

    /// Genus-`g` surface with the standard symplectic basis a₁, b₁, …, a_g, b_g.
    pub fn standard(genus: usize) -> Self {
        let m = 2 * genus;
        let mut j = vec![vec![0; m]; m];
        for k in 0..genus {
            j[2 * k][2 * k + 1] = 1;
            j[2 * k + 1][2 * k] = -1;
        }
        SurfaceModel { intersection: j }
    }

    /// 2g, the rank of H₁(Σ).
    pub fn genus_rank(&self) -> usize {
        self.intersection.len()
    }

    pub fn intersection(&self) -> &[Vec<i64>] {
        &self.intersection
    }

    /// Intersection number ⟨γ₁, γ₂⟩ of two homology classes.
    pub fn intersect(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.intersection.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for (j, &e) in row.iter().enumerate() {
                s += a[i] * e * b[j];
            }
        }
        s
    }
}

/// Γ with its boundary map ∂: Γ → H₁(Σ, Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeLattice {
    rank: usize,
    boundary: Vec<Vec<i64>>,
    surface: SurfaceModel,
}

impl ChargeLattice {
    /// `boundary` is a 2g×n integer matrix whose column `i` is ∂γᵢ.
    pub fn new(rank: usize, boundary: Vec<Vec<i64>>, surface: SurfaceModel) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Dimension("lattice rank must be at least 1".into()));
        }
        if boundary.len() != surface.genus_rank() {
            return Err(Error::Dimension(format!(
                "boundary map has {} rows, surface H1 has rank {}",
                boundary.len(),
                surface.genus_rank()
            )));
        }
        if boundary.iter().any(|row| row.len() != rank) {
            return Err(Error::Dimension(format!("boundary map rows must have {rank} columns")));
        }
        Ok(ChargeLattice { rank, boundary, surface })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn boundary_matrix(&self) -> &[Vec<i64>] {
        &self.boundary
    }

    /// ∂β as an integer vector in H₁(Σ, Z).
    pub fn boundary_of(&self, beta: &Charge) -> Vec<i64> {
        self.boundary.iter().map(|row| row.iter().zip(beta.coords()).map(|(d, b)| d * b).sum()).collect()
    }

    /// ⟨β₁, β₂⟩ = ⟨∂β₁, ∂β₂⟩.
    pub fn pairing(&self, a: &Charge, b: &Charge) -> i64 {
        self.surface.intersect(&self.boundary_of(a), &self.boundary_of(b))
    }
}

/// Additive central charge Z: Γ → C, stored as a 2×n rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    rows: [Vec<Rational>; 2],
}

impl CentralCharge {
    pub fn new(re: Vec<Rational>, im: Vec<Rational>) -> Result<Self> {
        if re.len() != im.len() || re.is_empty() {
            return Err(Error::Dimension("central charge rows differ in length".into()));
        }
        Ok(CentralCharge { rows: [re, im] })
    }

    pub fn from_ints(re: &[i64], im: &[i64]) -> Result<Self> {
        Self::new(re.iter().map(|&x| int(x)).collect(), im.iter().map(|&x| int(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Rational>; 2] {
        &self.rows
    }

    pub fn eval(&self, beta: &Charge) -> PlaneVector {
        let dot = |row: &Vec<Rational>| -> Rational {
            row.iter().zip(beta.coords()).filter(|(_, &b)| b != 0).map(|(z, &b)| z * int(b)).sum()
        };
        PlaneVector::new(dot(&self.rows[0]), dot(&self.rows[1]))
    }

    /// `(1 - s)·self + s·other`.
    pub fn interpolate(&self, other: &CentralCharge, s: &Rational) -> CentralCharge {
        let one_minus = Rational::from_integer(1.into()) - s;
        let mix = |a: &Vec<Rational>, b: &Vec<Rational>| -> Vec<Rational> {
            a.iter().zip(b).map(|(x, y)| &one_minus * x + s * y).collect()
        };
        CentralCharge { rows: [mix(&self.rows[0], &other.rows[0]), mix(&self.rows[1], &other.rows[1])] }
    }
}

/// Quadratic form Q(β) = βᵀ M β with M symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("quadratic form matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect();
        QuadraticForm { matrix }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, beta: &Charge) -> Rational {
        let b = beta.coords();
        let mut s = Rational::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                if b[i] != 0 && b[j] != 0 {
                    s += m * int(b[i] * b[j]);
                }
            }
        }
        s
    }

    /// Exact check that Q restricted to ker Z is negative definite.
    pub fn check_negative_on_kernel(&self, z: &CentralCharge) -> Result<()> {
        let n = self.rank();
        if z.rank() != n {
            return Err(Error::Dimension("quadratic form and central charge ranks differ".into()));
        }
        let kernel = linalg::kernel_basis(&z.rows.to_vec(), n);
        let k = kernel.len();
        let mut gram = vec![vec![Rational::zero(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let mut s = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        s += &kernel[a][i] * &self.matrix[i][j] * &kernel[b][j];
                    }
                }
                gram[a][b] = s;
            }
        }
        if linalg::is_negative_definite(&gram) {
            Ok(())
        } else {
            Err(Error::UnboundedRegion)
        }
    }
}

/// Strictly convex sector swept clockwise from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    start: PlaneVector,
    end: PlaneVector,
}

impl Sector {
    pub fn new(start: PlaneVector, end: PlaneVector) -> Result<Self> {
        if start.is_zero() || end.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !cross(&start, &end).is_negative() {
            return Err(Error::SectorNotConvex);
        }
        Ok(Sector { start, end })
    }

    pub fn start(&self) -> &PlaneVector {
        &self.start
    }

    pub fn end(&self) -> &PlaneVector {
        &self.end
    }

    /// Membership in the closed sector.
    pub fn contains(&self, v: &PlaneVector) -> Result<bool> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(!cross(&self.start, v).is_positive() && !cross(v, &self.end).is_positive())
    }

    /// True iff `v` lies on one of the two boundary rays.
    pub fn on_boundary(&self, v: &PlaneVector) -> bool {
        !v.is_zero()
            && ((cross(&self.start, v).is_zero() && self.start.dot(v).is_positive())
                || (cross(v, &self.end).is_zero() && self.end.dot(v).is_positive()))
    }
}

/// The height cutoff C = {β : λ(Z(β)) ≤ Λ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSet {
    functional: [Rational; 2],
    cutoff: Rational,
}

impl TruncationSet {
    pub fn new(functional: [Rational; 2], cutoff: Rational) -> Result<Self> {
        if cutoff.is_negative() {
            return Err(Error::NegativeCutoff);
        }
        Ok(TruncationSet { functional, cutoff })
    }

    pub fn functional(&self) -> &[Rational; 2] {
        &self.functional
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn with_cutoff(&self, cutoff: Rational) -> Result<Self> {
        TruncationSet::new(self.functional.clone(), cutoff)
    }

    pub fn height(&self, v: &PlaneVector) -> Rational {
        &self.functional[0] * &v.x + &self.functional[1] * &v.y
    }

    /// λ is positive on the closed sector iff it is positive on both boundary rays.
    pub fn check_positive_on(&self, sector: &Sector) -> Result<()> {
        if self.height(sector.start()).is_positive() && self.height(sector.end()).is_positive() {
            Ok(())
        } else {
            Err(Error::FunctionalNotPositive)
        }
    }
}

/// The finite set Γ(S, Z, Q) ∩ C, ordered by λ-height then lexicographically.
#[derive(Clone, Debug)]
pub struct Cone {
    members: Vec<Charge>,
    heights: Vec<Rational>,
    index: HashMap<Charge, usize>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Cone {
    pub fn members(&self) -> &[Charge] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, beta: &Charge) -> bool {
        self.index.contains_key(beta)
    }

    pub fn height(&self, beta: &Charge) -> Option<&Rational> {
        self.index.get(beta).map(|&i| &self.heights[i])
    }

    /// Restrict to members of height at most `cutoff`.
    pub fn truncated(&self, cutoff: &Rational) -> Cone {
        let pairs = self
            .members
            .iter()
            .zip(&self.heights)
            .filter(|(_, h)| *h <= cutoff)
            .map(|(c, h)| (c.clone(), h.clone()))
            .collect();
        Cone::from_sorted(pairs)
    }

    fn from_sorted(pairs: Vec<(Charge, Rational)>) -> Cone {
        let index = pairs.iter().enumerate().map(|(i, (c, _))| (c.clone(), i)).collect();
        let (members, heights) = pairs.into_iter().unzip();
        Cone { members, heights, index }
    }
}

/// Enumerate the non-zero non-negative integer combinations of
/// `{β : Z(β) ∈ S, Q(β) ≥ 0}` with λ(Z(β)) ≤ Λ.
///
/// Generators are searched in the box `|βᵢ| ≤ scan_box`. The box is rejected
/// when a generator touches its boundary; Q is required to be negative
/// definite on ker Z, which makes the generator region bounded.
pub fn cone_enumerate(
    lattice: &ChargeLattice,
    z: &CentralCharge,
    q: &QuadraticForm,
    sector: &Sector,
    truncation: &TruncationSet,
    scan_box: u32,
) -> Result<Cone> {
    let n = lattice.rank();
    if z.rank() != n || q.rank() != n {
        return Err(Error::Dimension("lattice, central charge and quadratic form ranks differ".into()));
    }
    q.check_negative_on_kernel(z)?;
    truncation.check_positive_on(sector)?;

    let b = scan_box as i64;
    let mut generators = Vec::new();
    let mut coords = vec![-b; n];
    loop {
        let beta = Charge::new(coords.clone());
        let zb = z.eval(&beta);
        if !zb.is_zero()
            && sector.contains(&zb)?
            && !q.eval(&beta).is_negative()
            && truncation.height(&zb) <= *truncation.cutoff()
        {
            if coords.iter().any(|c| c.abs() == b) {
                return Err(Error::ScanBoxTooSmall(scan_box, beta));
            }
            generators.push((beta, truncation.height(&zb)));
        }
        // odometer step
        let mut i = 0;
        while i < n && coords[i] == b {
            coords[i] = -b;
            i += 1;
        }
        if i == n {
            break;
        }
        coords[i] += 1;
    }

    let mut seen: HashSet<Charge> = generators.iter().map(|(c, _)| c.clone()).collect();
    let mut members = generators.clone();
    let mut frontier = generators.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, hm) in &frontier {
            for (g, hg) in &generators {
                let h = hm + hg;
                if h > *truncation.cutoff() {
                    continue;
                }
                let s = m + g;
                if seen.insert(s.clone()) {
                    next.push((s, h));
                }
            }
        }
        members.extend(next.iter().cloned());
        frontier = next;
    }
    members.sort_by(|(a, ha), (b, hb)| ha.cmp(hb).then_with(|| a.cmp(b)));
    Ok(Cone::from_sorted(members))
}

/// A pair of non-proportional charges with parallel central charges, if any.
pub fn wall_first_type(z: &CentralCharge, charges: &[Charge]) -> Option<(Charge, Charge)> {
    let images: Vec<PlaneVector> = charges.iter().map(|c| z.eval(c)).collect();
    for i in 0..charges.len() {
        for j in i + 1..charges.len() {
            if cross(&images[i], &images[j]).is_zero() && !charges[i].is_proportional(&charges[j]) {
                return Some((charges[i].clone(), charges[j].clone()));
            }
        }
    }
    None
}

/// A split β = β₁ + β₂ inside the cone with Z(β₁) on the sector boundary, if any.
pub fn wall_second_type(z: &CentralCharge, sector: &Sector, cone: &Cone, beta: &Charge) -> Option<(Charge, Charge)> {
    cone.members().iter().find_map(|b1| {
        let b2 = beta - b1;
        (cone.contains(&b2) && sector.on_boundary(&z.eval(b1))).then(|| (b1.clone(), b2))
    })
}
