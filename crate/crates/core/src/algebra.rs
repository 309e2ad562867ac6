//! The truncated graded enveloping algebra U(g)_C in PBW normal form.
//!
//! Generators `e_β` are indexed by the members of a truncated cone `C`. The
//! bracket is `[e_a, e_b] = c(a, b) e_{a+b}` with `c(a, b) = ⟨a, b⟩` in
//! [`BracketMode::Plain`] and `(-1)^⟨a,b⟩ ⟨a, b⟩` in [`BracketMode::Twisted`].
//!
//! Letters are sorted by the generator order: clockwise phase of `Z(β)`,
//! then λ-height, then lexicographically. A word is in normal form when its
//! letters are non-decreasing in this order, and every element is stored as a
//! finite sum of normal-form words with exact rational coefficients. Words
//! whose total charge leaves `C` are dropped; rewriting preserves total charge,
//! so truncation commutes with normalization.
//!
//! ```
//! use wallcross::prelude::*;
//!
//! let alg = wallcross::fixtures::running_algebra(2, BracketMode::Plain);
//! let (g1, g2) = (Charge::new(vec![1, 0]), Charge::new(vec![0, 1]));
//! // γ₂ precedes γ₁ clockwise, so e_{γ₁} e_{γ₂} is out of order
//! let x = alg.normal_form(&Word::new(vec![g1.clone(), g2.clone()]), Rational::from_integer(1.into())).unwrap();
//! assert_eq!(x.coefficient(&Word::new(vec![g2.clone(), g1.clone()])).unwrap(), Rational::from_integer(1.into()));
//! assert_eq!(x.coefficient(&Word::letter(&g1 + &g2)).unwrap(), Rational::from_integer(1.into()));
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{cross, CentralCharge, Charge, ChargeLattice, Cone, TruncationSet};
use crate::Rational;

/// Which structure constants the bracket uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketMode {
    Plain,
    Twisted,
}

impl BracketMode {
    /// Structure constant for a pair with pairing `p = ⟨a, b⟩`.
    pub fn structure_constant(self, p: i64) -> i64 {
        match self {
            BracketMode::Plain => p,
            BracketMode::Twisted if p % 2 != 0 => -p,
            BracketMode::Twisted => p,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BracketMode::Plain => "plain",
            BracketMode::Twisted => "twisted",
        }
    }
}

impl std::str::FromStr for BracketMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(BracketMode::Plain),
            "twisted" => Ok(BracketMode::Twisted),
            other => Err(format!("unknown bracket mode `{other}`")),
        }
    }
}

/// Order in which adjacent out-of-order pairs are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// A finite sequence of letters `e_{β₁} … e_{β_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Charge>);

impl Word {
    pub fn new(letters: Vec<Charge>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(beta: Charge) -> Self {
        Word(vec![beta])
    }

    pub fn letters(&self) -> &[Charge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the letters; `None` for the empty word.
    pub fn total_charge(&self) -> Option<Charge> {
        let mut it = self.0.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| &acc + c))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "e{c}")?;
        }
        Ok(())
    }
}

/// Finitely supported map charge → rational, zero values absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum(BTreeMap<Charge, Rational>);

impl Spectrum {
    pub fn new() -> Self {
        Spectrum(BTreeMap::new())
    }

    /// Overwrites the value at `beta`; a zero value removes the entry.
    pub fn set(&mut self, beta: Charge, value: Rational) {
        if value.is_zero() {
            self.0.remove(&beta);
        } else {
            self.0.insert(beta, value);
        }
    }

    pub fn add_to(&mut self, beta: &Charge, delta: &Rational) {
        let v = self.get(beta) + delta;
        self.set(beta.clone(), v);
    }

    pub fn get(&self, beta: &Charge) -> Rational {
        self.0.get(beta).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Charge, &Rational)> {
        self.0.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Charge> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries whose charge satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Charge) -> bool) -> Spectrum {
        Spectrum(self.0.iter().filter(|(c, _)| keep(c)).map(|(c, v)| (c.clone(), v.clone())).collect())
    }

    pub fn map_values(&self, mut f: impl FnMut(&Charge, &Rational) -> Rational) -> Spectrum {
        let mut out = Spectrum::new();
        for (c, v) in &self.0 {
            out.set(c.clone(), f(c, v));
        }
        out
    }
}

impl FromIterator<(Charge, Rational)> for Spectrum {
    fn from_iter<I: IntoIterator<Item = (Charge, Rational)>>(iter: I) -> Self {
        let mut s = Spectrum::new();
        for (c, v) in iter {
            s.add_to(&c, &v);
        }
        s
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in &self.0 {
            writeln!(f, "{c} -> {v}")?;
        }
        Ok(())
    }
}

/// Total order on cone charges: clockwise phase, then λ-height, then lexicographic.
pub fn generator_cmp(z: &CentralCharge, truncation: &TruncationSet, a: &Charge, b: &Charge) -> Ordering {
    let (za, zb) = (z.eval(a), z.eval(b));
    match cross(&za, &zb) {
        c if c.is_negative() => Ordering::Less,
        c if c.is_positive() => Ordering::Greater,
        _ => truncation.height(&za).cmp(&truncation.height(&zb)).then_with(|| a.cmp(b)),
    }
}

type IndexWord = Vec<u16>;

/// The truncated algebra: letters, their order and the bracket tables.
#[derive(Debug)]
pub struct Algebra {
    lattice: ChargeLattice,
    z: CentralCharge,
    truncation: TruncationSet,
    mode: BracketMode,
    cone: Cone,
    letters: Vec<Charge>,
    heights: Vec<Rational>,
    position: HashMap<Charge, u16>,
    // row-major n×n tables indexed by letter positions
    constants: Vec<i64>,
    sums: Vec<Option<u16>>,
    ray: Vec<usize>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.mode == other.mode && self.lattice == other.lattice
    }
}

impl Algebra {
    pub fn new(
        lattice: ChargeLattice,
        z: CentralCharge,
        truncation: TruncationSet,
        cone: Cone,
        mode: BracketMode,
    ) -> Result<Arc<Algebra>> {
        if z.rank() != lattice.rank() {
            return Err(Error::Dimension("central charge and lattice ranks differ".into()));
        }
        if cone.len() > u16::MAX as usize {
            return Err(Error::Dimension(format!("cone has {} members, too many letters", cone.len())));
        }
        let mut letters = cone.members().to_vec();
        letters.sort_by(|a, b| generator_cmp(&z, &truncation, a, b));
        let n = letters.len();
        let heights: Vec<Rational> = letters.iter().map(|c| truncation.height(&z.eval(c))).collect();
        let position: HashMap<Charge, u16> = letters.iter().enumerate().map(|(i, c)| (c.clone(), i as u16)).collect();
        let mut constants = vec![0; n * n];
        let mut sums = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                constants[i * n + j] = mode.structure_constant(lattice.pairing(&letters[i], &letters[j]));
                sums[i * n + j] = position.get(&(&letters[i] + &letters[j])).copied();
            }
        }
        let mut ray = Vec::with_capacity(n);
        let images: Vec<_> = letters.iter().map(|c| z.eval(c)).collect();
        for i in 0..n {
            let id = match i {
                0 => 0,
                _ if cross(&images[i - 1], &images[i]).is_zero() => ray[i - 1],
                _ => ray[i - 1] + 1,
            };
            ray.push(id);
        }
        Ok(Arc::new(Algebra { lattice, z, truncation, mode, cone, letters, heights, position, constants, sums, ray }))
    }

    /// Same letters and central charge, other bracket.
    pub fn with_mode(&self, mode: BracketMode) -> Result<Arc<Algebra>> {
        Algebra::new(self.lattice.clone(), self.z.clone(), self.truncation.clone(), self.cone.clone(), mode)
    }

    /// Same letters and bracket, ordered by another central charge.
    pub fn with_central_charge(&self, z: CentralCharge) -> Result<Arc<Algebra>> {
        Algebra::new(self.lattice.clone(), z, self.truncation.clone(), self.cone.clone(), self.mode)
    }

    pub fn lattice(&self) -> &ChargeLattice {
        &self.lattice
    }

    pub fn central_charge(&self) -> &CentralCharge {
        &self.z
    }

    pub fn truncation(&self) -> &TruncationSet {
        &self.truncation
    }

    pub fn mode(&self) -> BracketMode {
        self.mode
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Cone charges in generator order.
    pub fn letters(&self) -> &[Charge] {
        &self.letters
    }

    pub fn height(&self, beta: &Charge) -> Option<&Rational> {
        self.position.get(beta).map(|&i| &self.heights[i as usize])
    }

    pub fn contains(&self, beta: &Charge) -> bool {
        self.position.contains_key(beta)
    }

    /// Position of `beta` in the generator order.
    pub fn order_index(&self, beta: &Charge) -> Option<usize> {
        self.position.get(beta).map(|&i| i as usize)
    }

    /// `c(a, b)` for arbitrary charges (no truncation involved).
    pub fn structure_constant(&self, a: &Charge, b: &Charge) -> i64 {
        self.mode.structure_constant(self.lattice.pairing(a, b))
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement { algebra: Arc::clone(self), terms: BTreeMap::new() }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.scalar(Rational::one())
    }

    pub fn scalar(self: &Arc<Self>, c: Rational) -> AlgebraElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    /// `coeff · e_β`.
    pub fn generator(self: &Arc<Self>, beta: &Charge, coeff: Rational) -> Result<AlgebraElement> {
        self.normal_form(&Word::letter(beta.clone()), coeff)
    }

    fn encode(&self, word: &Word) -> Result<IndexWord> {
        word.letters()
            .iter()
            .map(|c| self.position.get(c).copied().ok_or_else(|| Error::LetterOutsideCone(c.clone())))
            .collect()
    }

    fn decode(&self, w: &[u16]) -> Word {
        Word(w.iter().map(|&i| self.letters[i as usize].clone()).collect())
    }

    fn word_height(&self, w: &[u16]) -> Rational {
        w.iter().map(|&i| &self.heights[i as usize]).sum()
    }

    fn within_cutoff(&self, w: &[u16]) -> bool {
        w.is_empty() || self.word_height(w) <= *self.truncation.cutoff()
    }

    fn descent(w: &[u16], strategy: RewriteStrategy) -> Option<usize> {
        match strategy {
            RewriteStrategy::LeftmostFirst => (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]),
            RewriteStrategy::RightmostFirst => (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]),
        }
    }

    /// Rewrite `coeff · w` into sorted words, accumulating into `out`.
    /// The total charge of `w` must lie in the cone.
    fn normalize_into(
        &self,
        w: IndexWord,
        coeff: Rational,
        strategy: RewriteStrategy,
        out: &mut BTreeMap<IndexWord, Rational>,
    ) {
        let n = self.letters.len();
        let mut pending: BTreeMap<IndexWord, Rational> = BTreeMap::new();
        pending.insert(w, coeff);
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let Some(i) = Self::descent(&w, strategy) else {
                accumulate(out, w, c);
                continue;
            };
            let (a, b) = (w[i] as usize, w[i + 1] as usize);
            let k = self.constants[a * n + b];
            if k != 0 {
                let merged = self.sums[a * n + b].expect("cone is closed under sums below the cutoff");
                let mut m = Vec::with_capacity(w.len() - 1);
                m.extend_from_slice(&w[..i]);
                m.push(merged);
                m.extend_from_slice(&w[i + 2..]);
                accumulate(&mut pending, m, &c * Rational::from_integer(k.into()));
            }
            let mut s = w;
            s.swap(i, i + 1);
            accumulate(&mut pending, s, c);
        }
    }

    /// Normal form of `coeff · word` using leftmost-first rewriting.
    pub fn normal_form(self: &Arc<Self>, word: &Word, coeff: Rational) -> Result<AlgebraElement> {
        self.normal_form_with(word, coeff, RewriteStrategy::LeftmostFirst)
    }

    pub fn normal_form_with(
        self: &Arc<Self>,
        word: &Word,
        coeff: Rational,
        strategy: RewriteStrategy,
    ) -> Result<AlgebraElement> {
        let w = self.encode(word)?;
        let mut e = self.zero();
        if self.within_cutoff(&w) {
            self.normalize_into(w, coeff, strategy, &mut e.terms);
        }
        Ok(e)
    }

    /// Sum of `coeff · word` over arbitrary (unsorted) words.
    pub fn element_from_terms<'a>(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (&'a Word, &'a Rational)>,
    ) -> Result<AlgebraElement> {
        let mut e = self.zero();
        for (word, c) in terms {
            let w = self.encode(word)?;
            if self.within_cutoff(&w) {
                self.normalize_into(w, c.clone(), RewriteStrategy::LeftmostFirst, &mut e.terms);
            }
        }
        Ok(e)
    }

    /// One application of `e_a e_b = e_b e_a + c(a, b) e_{a+b}` at positions `j, j+1`.
    ///
    /// Acts on raw words; no sorting and no truncation.
    pub fn relation_step(&self, word: &Word, j: usize) -> Result<Vec<(Word, Rational)>> {
        let l = word.letters();
        if j + 1 >= l.len() {
            return Err(Error::NotAdjacent(j));
        }
        let mut swapped = l.to_vec();
        swapped.swap(j, j + 1);
        let mut out = vec![(Word(swapped), Rational::one())];
        let k = self.structure_constant(&l[j], &l[j + 1]);
        if k != 0 {
            let mut merged = l[..j].to_vec();
            merged.push(&l[j] + &l[j + 1]);
            merged.extend_from_slice(&l[j + 2..]);
            out.push((Word(merged), Rational::from_integer(k.into())));
        }
        Ok(out)
    }

    /// exp(X) = Σ Xᵏ/k!, finite because every letter has positive height.
    pub fn exponential(self: &Arc<Self>, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(x)?;
        if x.terms.contains_key(&Vec::new()) {
            return Err(Error::NonzeroConstant);
        }
        let mut result = self.one();
        let mut power = self.one();
        let mut k = 1u64;
        loop {
            power = power.multiply(x)?.scaled(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                return Ok(result);
            }
            result = result.add(&power)?;
            k += 1;
        }
    }

    fn check_same(&self, x: &AlgebraElement) -> Result<()> {
        if std::ptr::eq(self, Arc::as_ptr(&x.algebra)) || *self == *x.algebra {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Support grouped by ray, rays in clockwise order.
    pub fn rays(&self, spectrum: &Spectrum) -> Result<Vec<Vec<(Charge, Rational)>>> {
        let mut groups: BTreeMap<usize, Vec<(u16, Rational)>> = BTreeMap::new();
        for (c, v) in spectrum.iter() {
            let &i = self.position.get(c).ok_or_else(|| Error::SupportOutsideCone(c.clone()))?;
            groups.entry(self.ray[i as usize]).or_default().push((i, v.clone()));
        }
        groups
            .into_values()
            .map(|mut g| {
                g.sort_by_key(|(i, _)| *i);
                for p in 0..g.len() {
                    for q in p + 1..g.len() {
                        let (a, b) = (&self.letters[g[p].0 as usize], &self.letters[g[q].0 as usize]);
                        if !a.is_proportional(b) {
                            return Err(Error::FirstTypeWall(a.clone(), b.clone()));
                        }
                    }
                }
                Ok(g.into_iter().map(|(i, v)| (self.letters[i as usize].clone(), v)).collect())
            })
            .collect()
    }

    /// Clockwise-ordered product of `exp(Σ_{Z(β) ∈ l} a_β e_β)` over rays `l`.
    pub fn ray_product(self: &Arc<Self>, spectrum: &Spectrum) -> Result<AlgebraElement> {
        let mut acc = self.one();
        for ray in self.rays(spectrum)? {
            let mut x = self.zero();
            for (c, v) in &ray {
                x = x.add(&self.generator(c, v.clone())?)?;
            }
            acc = acc.multiply(&self.exponential(&x)?)?;
        }
        Ok(acc)
    }

    /// The unique spectrum whose ray product is `a`.
    ///
    /// Single-letter coefficients are peeled off in increasing λ-height; a
    /// correction at height `h` only depends on strictly lower heights, so
    /// all letters of one height are fixed together.
    pub fn factorize(self: &Arc<Self>, a: &AlgebraElement) -> Result<Spectrum> {
        self.check_same(a)?;
        let constant = a.constant_term();
        if !constant.is_one() {
            return Err(Error::ConstantNotOne(constant));
        }
        let mut levels: BTreeMap<&Rational, Vec<u16>> = BTreeMap::new();
        for (i, h) in self.heights.iter().enumerate() {
            levels.entry(h).or_default().push(i as u16);
        }
        let mut spectrum = Spectrum::new();
        for letters in levels.values() {
            let current = self.ray_product(&spectrum)?;
            for &i in letters {
                let key = vec![i];
                let d = a.terms.get(&key).cloned().unwrap_or_default()
                    - current.terms.get(&key).cloned().unwrap_or_default();
                if !d.is_zero() {
                    spectrum.add_to(&self.letters[i as usize], &d);
                }
            }
        }
        if self.ray_product(&spectrum)? != *a {
            return Err(Error::ReconstructionMismatch);
        }
        Ok(spectrum)
    }
}

fn accumulate(map: &mut BTreeMap<IndexWord, Rational>, w: IndexWord, c: Rational) {
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A finite rational combination of normal-form words.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    algebra: Arc<Algebra>,
    terms: BTreeMap<IndexWord, Rational>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra)
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// Coefficient of a normal-form word; unsorted words are rejected.
    pub fn coefficient(&self, word: &Word) -> Result<Rational> {
        let w = self.algebra.encode(word)?;
        if w.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::NotNormalForm);
        }
        Ok(self.terms.get(&w).cloned().unwrap_or_default())
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &Rational)> + '_ {
        self.terms.iter().map(|(w, c)| (self.algebra.decode(w), c))
    }

    /// Terms ordered by total height, then length, then letter positions.
    pub fn sorted_terms(&self) -> Vec<(Word, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (self.algebra.word_height(w), w.len(), w, c)).collect();
        v.sort();
        v.into_iter().map(|(_, _, w, c)| (self.algebra.decode(w), c.clone())).collect()
    }

    /// The homogeneous component of total charge `beta` (`None` selects the constant).
    pub fn graded_component(&self, beta: Option<&Charge>) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| self.algebra.decode(w).total_charge().as_ref() == beta)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        AlgebraElement { algebra: Arc::clone(&self.algebra), terms }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.algebra.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, k: &Rational) -> AlgebraElement {
        let terms =
            if k.is_zero() { BTreeMap::new() } else { self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() };
        AlgebraElement { algebra: Arc::clone(&self.algebra), terms }
    }

    /// Concatenation product followed by normalization.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        let alg = &self.algebra;
        alg.check_same(other)?;
        let cutoff = alg.truncation.cutoff();
        let rhs: Vec<_> = other.terms.iter().map(|(w, c)| (w, c, alg.word_height(w))).collect();
        let mut out = BTreeMap::new();
        for (wa, ca) in &self.terms {
            let ha = alg.word_height(wa);
            for (wb, cb, hb) in &rhs {
                if !wa.is_empty() && !wb.is_empty() && &ha + hb > *cutoff {
                    continue;
                }
                let mut w = Vec::with_capacity(wa.len() + wb.len());
                w.extend_from_slice(wa);
                w.extend_from_slice(wb);
                let c = ca * *cb;
                match (wa.last(), wb.first()) {
                    (Some(x), Some(y)) if x > y => alg.normalize_into(w, c, RewriteStrategy::LeftmostFirst, &mut out),
                    _ => accumulate(&mut out, w, c),
                }
            }
        }
        Ok(AlgebraElement { algebra: Arc::clone(alg), terms: out })
    }

    /// Re-express this element in `target`, an algebra on the same letters and
    /// bracket whose generator order may differ.
    pub fn reexpress(&self, target: &Arc<Algebra>) -> Result<AlgebraElement> {
        let same_letters = {
            let mut a = self.algebra.letters.clone();
            let mut b = target.letters.clone();
            a.sort();
            b.sort();
            a == b
        };
        if !same_letters || self.algebra.mode != target.mode || self.algebra.lattice != target.lattice {
            return Err(Error::BasisMismatch);
        }
        let mut out = target.zero();
        for (w, c) in &self.terms {
            let mapped: IndexWord = w.iter().map(|&i| target.position[&self.algebra.letters[i as usize]]).collect();
            target.normalize_into(mapped, c.clone(), RewriteStrategy::LeftmostFirst, &mut out.terms);
        }
        Ok(out)
    }

    /// `(word, coefficient)` lines in [`AlgebraElement::sorted_terms`] order.
    pub fn to_lines(&self) -> Vec<String> {
        self.sorted_terms().into_iter().map(|(w, c)| format!("{w} : {c}")).collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_algebra;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    fn g1() -> Charge {
        Charge::new(vec![1, 0])
    }

    fn g2() -> Charge {
        Charge::new(vec![0, 1])
    }

    fn w(letters: &[&Charge]) -> Word {
        Word::new(letters.iter().map(|c| (*c).clone()).collect())
    }

    #[test]
    fn generator_order_of_running_example() {
        let alg = running_algebra(2, BracketMode::Plain);
        let expect: Vec<Charge> =
            [[0, 1], [0, 2], [1, 1], [1, 0], [2, 0]].iter().map(|v| Charge::new(v.to_vec())).collect();
        assert_eq!(alg.letters(), expect.as_slice());
    }

    #[test]
    fn normal_form_examples() {
        let alg = running_algebra(2, BracketMode::Plain);
        let x = alg.normal_form(&w(&[&g1(), &g2()]), r(1)).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coefficient(&w(&[&g2(), &g1()])).unwrap(), r(1));
        assert_eq!(x.coefficient(&Word::letter(&g1() + &g2())).unwrap(), r(1));

        let y = alg.normal_form(&w(&[&g2(), &g1()]), r(1)).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.coefficient(&w(&[&g2(), &g1()])).unwrap(), r(1));

        let tw = running_algebra(2, BracketMode::Twisted);
        let t = tw.normal_form(&w(&[&g1(), &g2()]), r(1)).unwrap();
        assert_eq!(t.coefficient(&w(&[&g2(), &g1()])).unwrap(), r(1));
        assert_eq!(t.coefficient(&Word::letter(&g1() + &g2())).unwrap(), r(-1));
    }

    #[test]
    fn normal_form_rejects_foreign_letters() {
        let alg = running_algebra(2, BracketMode::Plain);
        let bad = Charge::new(vec![3, 0]);
        assert_eq!(alg.normal_form(&Word::letter(bad.clone()), r(1)), Err(Error::LetterOutsideCone(bad)));
        // words above the cutoff vanish
        let big = alg.normal_form(&w(&[&g1(), &g1(), &g2()]), r(1)).unwrap();
        assert!(big.is_zero());
    }

    #[test]
    fn multiply_examples() {
        let alg = running_algebra(2, BracketMode::Plain);
        let a = alg.one().add(&alg.generator(&g1(), r(1)).unwrap()).unwrap();
        let b = alg.one().add(&alg.generator(&g2(), r(1)).unwrap()).unwrap();
        let ab = a.multiply(&b).unwrap();
        let lines = ab.to_lines();
        assert_eq!(lines, vec!["1 : 1", "e(0,1) : 1", "e(1,0) : 1", "e(1,1) : 1", "e(0,1)*e(1,0) : 1"]);
        assert_eq!(a.multiply(&alg.one()).unwrap(), a);
    }

    #[test]
    fn multiply_rejects_other_algebra() {
        let p = running_algebra(2, BracketMode::Plain);
        let t = running_algebra(2, BracketMode::Twisted);
        assert_eq!(p.one().multiply(&t.one()), Err(Error::BasisMismatch));
    }

    #[test]
    fn exponential_examples() {
        let alg = running_algebra(2, BracketMode::Plain);
        let e1 = alg.exponential(&alg.generator(&g1(), r(1)).unwrap()).unwrap();
        assert_eq!(e1.to_lines(), vec!["1 : 1", "e(1,0) : 1", "e(1,0)*e(1,0) : 1/2"]);
        assert_eq!(alg.exponential(&alg.zero()).unwrap(), alg.one());

        let x = alg.generator(&g1(), r(1)).unwrap().add(&alg.generator(&g2(), r(1)).unwrap()).unwrap();
        let ex = alg.exponential(&x).unwrap();
        assert_eq!(ex.constant_term(), r(1));
        assert_eq!(ex.coefficient(&Word::letter(g1())).unwrap(), r(1));
        assert_eq!(ex.coefficient(&Word::letter(g2())).unwrap(), r(1));
        assert_eq!(ex.coefficient(&Word::letter(&g1() + &g2())).unwrap(), half());
        assert_eq!(alg.exponential(&alg.one()), Err(Error::NonzeroConstant));
    }

    #[test]
    fn ray_product_examples() {
        let alg = running_algebra(2, BracketMode::Plain);
        let spec: Spectrum = [(g1(), r(1)), (g2(), r(1))].into_iter().collect();
        let p = alg.ray_product(&spec).unwrap();
        let e2 = alg.exponential(&alg.generator(&g2(), r(1)).unwrap()).unwrap();
        let e1 = alg.exponential(&alg.generator(&g1(), r(1)).unwrap()).unwrap();
        assert_eq!(p, e2.multiply(&e1).unwrap());
        assert_eq!(p.coefficient(&Word::letter(&g1() + &g2())).unwrap(), r(0));
        assert_eq!(p.coefficient(&w(&[&g2(), &g1()])).unwrap(), r(1));
        assert_eq!(alg.ray_product(&Spectrum::new()).unwrap(), alg.one());
    }

    #[test]
    fn factorize_examples() {
        let alg = running_algebra(2, BracketMode::Plain);
        let e1 = alg.exponential(&alg.generator(&g1(), r(1)).unwrap()).unwrap();
        let e2 = alg.exponential(&alg.generator(&g2(), r(1)).unwrap()).unwrap();
        // built with the γ₁ ray first, then factorized in the running order
        let a = e1.multiply(&e2).unwrap();
        let spec = alg.factorize(&a).unwrap();
        let expect: Spectrum = [(g1(), r(1)), (g2(), r(1)), (&g1() + &g2(), r(1))].into_iter().collect();
        assert_eq!(spec, expect);
        assert!(alg.factorize(&alg.one()).unwrap().is_empty());
        assert_eq!(alg.factorize(&alg.scalar(r(2))), Err(Error::ConstantNotOne(r(2))));
    }

    #[test]
    fn coefficient_rejects_unsorted_word() {
        let alg = running_algebra(2, BracketMode::Plain);
        assert_eq!(alg.one().coefficient(&Word::empty()).unwrap(), r(1));
        assert_eq!(alg.one().coefficient(&w(&[&g1(), &g2()])), Err(Error::NotNormalForm));
    }

    #[test]
    fn relation_step_matches_bracket() {
        let alg = running_algebra(2, BracketMode::Plain);
        let out = alg.relation_step(&w(&[&g1(), &g2()]), 0).unwrap();
        assert_eq!(out, vec![(w(&[&g2(), &g1()]), r(1)), (Word::letter(&g1() + &g2()), r(1))]);
        assert_eq!(alg.relation_step(&w(&[&g1()]), 0), Err(Error::NotAdjacent(0)));
    }

    #[test]
    fn reexpress_round_trip() {
        let alg = running_algebra(2, BracketMode::Plain);
        let other = alg.with_central_charge(CentralCharge::from_ints(&[-3, -1], &[1, 1]).unwrap()).unwrap();
        let x = alg.normal_form(&w(&[&g1(), &g2(), &g2()]), r(3)).unwrap();
        let back = x.reexpress(&other).unwrap().reexpress(&alg).unwrap();
        assert_eq!(back, x);
    }
}
