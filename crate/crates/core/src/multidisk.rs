//! Decorated forests and nice multi-disk chains.
//!
//! A nice chain is a set of curves, one per vertex, each supported at a
//! distinct height `θ_v ∈ (0, 1)` and decorated by a charge whose boundary
//! is the curve's homology class. Its image in the enveloping algebra is the
//! word of charges read in increasing height ([`to_monomial`]). Exchanging
//! the heights of two neighbours crosses the curves `⟨γ_j, γ_{j+1}⟩` times,
//! and each crossing contributes a merged vertex ([`crossing_rewrite`]);
//! this is exactly the PBW relation `e_a e_b = e_b e_a + ⟨a, b⟩ e_{a+b}`.
//!
//! Linking numbers vanish when the height order agrees with the clockwise
//! phase order of the central charges; otherwise they equal the intersection
//! number of the lower curve with the upper one.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Algebra, RewriteStrategy, Word};
use crate::error::{Error, Result};
use crate::lattice::{cross, CentralCharge, Charge, ChargeLattice};
use crate::Rational;

/// A forest with charged vertices, stored as half-edges with a fixed-point-free involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedForest {
    charges: Vec<Charge>,
    attach: Vec<usize>,
    involution: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl DecoratedForest {
    pub fn new(charges: Vec<Charge>, attach: Vec<usize>, involution: Vec<usize>) -> Result<Self> {
        let h = attach.len();
        if involution.len() != h {
            return Err(Error::InvalidForest("involution and attachment sizes differ".into()));
        }
        if attach.iter().any(|&v| v >= charges.len()) {
            return Err(Error::InvalidForest("half-edge attached to a missing vertex".into()));
        }
        for (i, &j) in involution.iter().enumerate() {
            if j >= h || j == i || involution[j] != i {
                return Err(Error::InvalidForest(format!("half-edge {i} is not paired by the involution")));
            }
        }
        let forest = DecoratedForest { charges, attach, involution };
        let mut parent: Vec<usize> = (0..forest.charges.len()).collect();
        for (u, v) in forest.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::InvalidForest("edge set contains a cycle".into()));
            }
            parent[ru] = rv;
        }
        Ok(forest)
    }

    /// Edge `k` becomes half-edges `2k` and `2k + 1`.
    pub fn from_edges(charges: Vec<Charge>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut attach = Vec::with_capacity(2 * edges.len());
        let mut involution = Vec::with_capacity(2 * edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            attach.extend([u, v]);
            involution.extend([2 * k + 1, 2 * k]);
        }
        DecoratedForest::new(charges, attach, involution)
    }

    pub fn vertex_count(&self) -> usize {
        self.charges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.attach.len() / 2
    }

    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }

    /// Edges as vertex pairs, ordered by their smaller half-edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.attach.len())
            .filter(|&h| h < self.involution[h])
            .map(|h| (self.attach[h], self.attach[self.involution[h]]))
            .collect()
    }

    fn edge_half_edges(&self) -> Vec<(usize, usize)> {
        (0..self.attach.len()).filter(|&h| h < self.involution[h]).map(|h| (h, self.involution[h])).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.attach.iter().filter(|&&a| a == v).count()
    }

    pub fn total_charge(&self) -> Option<Charge> {
        let mut it = self.charges.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| &acc + c))
    }

    /// A vertex is unstable when its charge is zero and it has at most two half-edges.
    pub fn is_stable(&self) -> bool {
        (0..self.charges.len()).all(|v| !(self.charges[v].is_zero() && self.degree(v) <= 2))
    }

    /// Merge the endpoints of edge `e` into one vertex carrying the summed charge.
    pub fn contract_edge(&self, e: usize) -> Result<DecoratedForest> {
        let &(h1, h2) = self.edge_half_edges().get(e).ok_or(Error::NotAnEdge(e))?;
        let (u, v) = (self.attach[h1], self.attach[h2]);
        assert_ne!(u, v, "forests have no self-loops");
        let (keep, drop) = (u.min(v), u.max(v));
        let mut charges = self.charges.clone();
        charges[keep] = &charges[keep] + &charges[drop];
        charges.remove(drop);
        let vertex_map = |x: usize| {
            let x = if x == drop { keep } else { x };
            if x > drop {
                x - 1
            } else {
                x
            }
        };
        let kept: Vec<usize> = (0..self.attach.len()).filter(|&h| h != h1 && h != h2).collect();
        let mut renumber = vec![usize::MAX; self.attach.len()];
        for (new, &old) in kept.iter().enumerate() {
            renumber[old] = new;
        }
        let attach = kept.iter().map(|&h| vertex_map(self.attach[h])).collect();
        let involution = kept.iter().map(|&h| renumber[self.involution[h]]).collect();
        DecoratedForest::new(charges, attach, involution)
    }
}

/// All forests on the labelled vertex set, by edge count and then edge list.
pub fn enumerate_forests(charges: &[Charge]) -> Vec<DecoratedForest> {
    let n = charges.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found: Vec<Vec<(usize, usize)>> = Vec::new();

    fn grow(
        pairs: &[(usize, usize)],
        start: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        found: &mut Vec<Vec<(usize, usize)>>,
    ) {
        found.push(chosen.clone());
        for k in start..pairs.len() {
            let (u, v) = pairs[k];
            let (ru, rv) = (find(parent, u), find(parent, v));
            if ru == rv {
                continue;
            }
            let saved = parent.clone();
            parent[ru] = rv;
            chosen.push(pairs[k]);
            grow(pairs, k + 1, parent, chosen, found);
            chosen.pop();
            *parent = saved;
        }
    }

    let mut parent: Vec<usize> = (0..n).collect();
    grow(&pairs, 0, &mut parent, &mut Vec::new(), &mut found);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|edges| DecoratedForest::from_edges(charges.to_vec(), &edges).expect("acyclic by construction"))
        .collect()
}

/// One curve of a nice chain: its height, homology class and charge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainVertex {
    pub height: Rational,
    pub boundary_class: Vec<i64>,
    pub charge: Charge,
}

impl ChainVertex {
    /// Vertex whose boundary class is `∂β`.
    pub fn new(lattice: &ChargeLattice, height: Rational, charge: Charge) -> Self {
        ChainVertex { height, boundary_class: lattice.boundary_of(&charge), charge }
    }
}

/// Vertices kept sorted by increasing height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NiceChain {
    vertices: Vec<ChainVertex>,
}

impl NiceChain {
    pub fn new(lattice: &ChargeLattice, mut vertices: Vec<ChainVertex>) -> Result<Self> {
        vertices.sort();
        for v in &vertices {
            if !v.height.is_positive() || v.height >= Rational::one() {
                return Err(Error::InvalidChain(format!("height {} outside (0, 1)", v.height)));
            }
            if v.charge.rank() != lattice.rank() {
                return Err(Error::Dimension("chain charge has the wrong rank".into()));
            }
            if v.boundary_class != lattice.boundary_of(&v.charge) {
                return Err(Error::InvalidChain(format!("class of {} differs from its boundary", v.charge)));
            }
        }
        if vertices.windows(2).any(|p| p[0].height == p[1].height) {
            return Err(Error::EqualHeights);
        }
        Ok(NiceChain { vertices })
    }

    /// Chain from `(height, charge)` pairs with boundary classes `∂β`.
    pub fn from_charges(lattice: &ChargeLattice, items: &[(Rational, Charge)]) -> Result<Self> {
        let vs = items.iter().map(|(h, c)| ChainVertex::new(lattice, h.clone(), c.clone())).collect();
        NiceChain::new(lattice, vs)
    }

    /// Vertices in increasing height.
    pub fn vertices(&self) -> &[ChainVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn charges(&self) -> Vec<Charge> {
        self.vertices.iter().map(|v| v.charge.clone()).collect()
    }
}

/// Finite rational combination of nice chains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainCombination {
    terms: BTreeMap<NiceChain, Rational>,
}

impl ChainCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(chain: NiceChain) -> Self {
        let mut c = Self::new();
        c.add(chain, Rational::one());
        c
    }

    pub fn add(&mut self, chain: NiceChain, coeff: Rational) {
        let v = self.terms.remove(&chain).unwrap_or_default() + coeff;
        if !v.is_zero() {
            self.terms.insert(chain, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NiceChain, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ coeff · to_monomial(chain), as raw words.
    pub fn image_words(&self) -> BTreeMap<Word, Rational> {
        let mut out: BTreeMap<Word, Rational> = BTreeMap::new();
        for (chain, c) in &self.terms {
            let w = to_monomial(chain);
            let v = out.remove(&w).unwrap_or_default() + c;
            if !v.is_zero() {
                out.insert(w, v);
            }
        }
        out
    }
}

/// Linking number of two decorated curves at heights `θ₁ ≠ θ₂`.
///
/// Zero when the height order agrees with the clockwise order of the phases;
/// otherwise `⟨γ_lower, γ_upper⟩`. Equal phases are allowed only when the
/// classes do not intersect.
pub fn link(lattice: &ChargeLattice, z: &CentralCharge, a: &ChainVertex, b: &ChainVertex) -> Result<i64> {
    if a.height == b.height {
        return Err(Error::EqualHeights);
    }
    let (lower, upper) = if a.height < b.height { (a, b) } else { (b, a) };
    let p = lattice.surface().intersect(&lower.boundary_class, &upper.boundary_class);
    let c = cross(&z.eval(&lower.charge), &z.eval(&upper.charge));
    if c.is_zero() {
        return if p == 0 { Ok(0) } else { Err(Error::FirstTypeWall(a.charge.clone(), b.charge.clone())) };
    }
    // c < 0: the lower curve also comes first clockwise
    Ok(if c.is_negative() { 0 } else { p })
}

/// `(1/k!) ∏_{edges} Link`, with forest vertex `i` sitting on the `i`-th chain vertex.
pub fn multilink_forest(
    lattice: &ChargeLattice,
    z: &CentralCharge,
    chain: &NiceChain,
    forest: &DecoratedForest,
) -> Result<Rational> {
    if forest.charges() != chain.charges().as_slice() {
        return Err(Error::InvalidForest("forest vertices do not match the chain".into()));
    }
    let mut value = Rational::one();
    for (k, (u, v)) in forest.edges().into_iter().enumerate() {
        let l = link(lattice, z, &chain.vertices[u], &chain.vertices[v])?;
        value = value * Rational::from_integer(l.into()) / Rational::from_integer((k as i64 + 1).into());
    }
    Ok(value)
}

/// Sum of [`multilink_forest`] over every forest on the chain's vertices.
pub fn multilink_total(lattice: &ChargeLattice, z: &CentralCharge, chain: &NiceChain) -> Result<Rational> {
    enumerate_forests(&chain.charges())
        .iter()
        .try_fold(Rational::zero(), |acc, f| Ok(acc + multilink_forest(lattice, z, chain, f)?))
}

/// The word `e_{β_{v₀}} … e_{β_{v_r}}` read in increasing height.
pub fn to_monomial(chain: &NiceChain) -> Word {
    Word::new(chain.charges())
}

/// Exchange the heights of the vertices at sorted positions `j` and `j + 1`.
///
/// Returns the swapped chain plus `⟨γ_j, γ_{j+1}⟩` times the chain in which
/// the two vertices merge at the midpoint height.
pub fn crossing_rewrite(lattice: &ChargeLattice, chain: &NiceChain, j: usize) -> Result<ChainCombination> {
    let vs = &chain.vertices;
    if j + 1 >= vs.len() {
        return Err(Error::NotAdjacent(j));
    }
    let (a, b) = (&vs[j], &vs[j + 1]);
    let mut swapped = vs.clone();
    swapped[j].height = b.height.clone();
    swapped[j + 1].height = a.height.clone();
    let mut out = ChainCombination::new();
    out.add(NiceChain::new(lattice, swapped)?, Rational::one());

    let p = lattice.surface().intersect(&a.boundary_class, &b.boundary_class);
    if p != 0 {
        let merged = ChainVertex {
            height: (&a.height + &b.height) / Rational::from_integer(2.into()),
            boundary_class: a.boundary_class.iter().zip(&b.boundary_class).map(|(x, y)| x + y).collect(),
            charge: &a.charge + &b.charge,
        };
        let mut rest = vs.clone();
        rest.splice(j..j + 2, [merged]);
        out.add(NiceChain::new(lattice, rest)?, Rational::from_integer(p.into()));
    }
    Ok(out)
}

/// Apply crossing rewrites until every chain reads as a normal-form word of `algebra`.
///
/// Each step rewrites the leftmost or rightmost neighbouring pair whose
/// charges are out of generator order.
pub fn sort_to_normal_order(
    algebra: &Arc<Algebra>,
    chain: &NiceChain,
    strategy: RewriteStrategy,
) -> Result<ChainCombination> {
    let index = |c: &Charge| algebra.order_index(c).ok_or_else(|| Error::LetterOutsideCone(c.clone()));
    let mut done = ChainCombination::new();
    let mut pending = vec![(chain.clone(), Rational::one())];
    while let Some((ch, coeff)) = pending.pop() {
        let idx: Vec<usize> = ch.vertices.iter().map(|v| index(&v.charge)).collect::<Result<_>>()?;
        let mut descents = (0..idx.len().saturating_sub(1)).filter(|&i| idx[i] > idx[i + 1]);
        let pos = match strategy {
            RewriteStrategy::LeftmostFirst => descents.next(),
            RewriteStrategy::RightmostFirst => descents.next_back(),
        };
        match pos {
            None => done.add(ch, coeff),
            Some(j) => {
                for (next, c) in crossing_rewrite(algebra.lattice(), &ch, j)?.iter() {
                    pending.push((next.clone(), c * &coeff));
                }
            }
        }
    }
    Ok(done)
}
