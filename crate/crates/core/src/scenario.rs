//! Plain-text scenarios and the command runner behind the `wallcross` binary.
//!
//! A scenario is a list of `[section]` headers, each followed by
//! `key = value` lines. `#` starts a comment. Rationals are written as
//! integers or `p/q`, vectors are whitespace separated and matrix rows are
//! separated by `;`.
//!
//! ```text
//! [surface]
//! genus = 1
//!
//! [lattice]
//! rank = 2
//! boundary = 1 0 ; 0 1
//!
//! [central_charge]
//! matrix = 1 -1 ; 1 1
//!
//! [quadratic_form]
//! matrix = 1 0 ; 0 1
//!
//! [sector]
//! start = -1 1
//! end = 1 1
//!
//! [truncation]
//! functional = 0 1
//! cutoff = 2
//!
//! [spectrum]
//! charge = 1 0 : 1
//! charge = 0 1 : 1
//! ```
//!
//! Optional sections: `mode` (`bracket = plain|twisted`), `refinement`
//! (`values = ±1 …`), `chains` (`chain = θ : charge ; θ : charge …`),
//! `scan` (`box = N`), `element` (`term = e(1,0)*e(0,1) : p/q`, one per
//! term, `1` for the empty word) and repeated `keyframe = …` lines under
//! `central_charge`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Algebra, BracketMode, RewriteStrategy, Spectrum, Word};
use crate::engine::{check_variation, default_tolerance, detect_walls, tracked_charges, Configuration, VariationPath};
use crate::error::{Error, Result};
use crate::lattice::{
    CentralCharge, Charge, ChargeLattice, PlaneVector, QuadraticForm, Sector, SurfaceModel, TruncationSet,
};
use crate::multidisk::{enumerate_forests, multilink_total, to_monomial, NiceChain};
use crate::refinement::{covariant_spectrum, twist_spectrum, CohomologyAction, QuadraticRefinement};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub lattice: ChargeLattice,
    pub central_charge: CentralCharge,
    pub keyframes: Vec<CentralCharge>,
    pub quadratic_form: QuadraticForm,
    pub sector: Sector,
    pub truncation: TruncationSet,
    pub mode: BracketMode,
    pub spectrum: Spectrum,
    pub refinement: Option<QuadraticRefinement>,
    pub chains: Vec<NiceChain>,
    pub scan_box: Option<u32>,
    pub element: Vec<(Word, Rational)>,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("surface", &["genus", "intersection"]),
    ("lattice", &["rank", "boundary"]),
    ("central_charge", &["matrix", "keyframe"]),
    ("quadratic_form", &["matrix"]),
    ("sector", &["start", "end"]),
    ("truncation", &["functional", "cutoff"]),
    ("mode", &["bracket"]),
    ("spectrum", &["charge"]),
    ("refinement", &["values"]),
    ("chains", &["chain"]),
    ("scan", &["box"]),
    ("element", &["term"]),
];

const REPEATED: &[(&str, &str)] =
    &[("central_charge", "keyframe"), ("spectrum", "charge"), ("chains", "chain"), ("element", "term")];

struct Entry<'a> {
    line: usize,
    value: &'a str,
}

struct Section<'a> {
    name: &'a str,
    line: usize,
    entries: Vec<(&'a str, Entry<'a>)>,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<&Entry<'a>> {
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, e)| e)
    }

    fn require(&self, key: &str) -> Result<&Entry<'a>> {
        self.get(key).ok_or_else(|| parse_err(self.line, format!("[{}] is missing `{key}`", self.name)))
    }

    fn all(&self, key: &'a str) -> impl Iterator<Item = &Entry<'a>> + '_ {
        self.entries.iter().filter(move |(k, _)| *k == key).map(|(_, e)| e)
    }

    /// Check a library-level invariant, blaming this section's header line.
    fn check<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| parse_err(self.line, e.to_string()))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn rational(s: &str, line: usize) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| parse_err(line, format!("malformed rational `{}`", s.trim())))
}

fn integer<T: FromStr>(s: &str, line: usize) -> Result<T> {
    s.trim().parse().map_err(|_| parse_err(line, format!("malformed integer `{}`", s.trim())))
}

fn vector<T>(s: &str, line: usize, item: impl Fn(&str, usize) -> Result<T>) -> Result<Vec<T>> {
    s.split_whitespace().map(|t| item(t, line)).collect()
}

fn matrix<T>(s: &str, line: usize, item: impl Fn(&str, usize) -> Result<T> + Copy) -> Result<Vec<Vec<T>>> {
    s.split(';').map(|row| vector(row, line, item)).collect()
}

fn fixed<T, const N: usize>(v: Vec<T>, line: usize, what: &str) -> Result<[T; N]> {
    let n = v.len();
    v.try_into().map_err(|_| parse_err(line, format!("{what} needs {N} entries, got {n}")))
}

fn split_value(s: &str, line: usize) -> Result<(&str, &str)> {
    s.rsplit_once(':').ok_or_else(|| parse_err(line, "expected `<lhs> : <value>`"))
}

fn charge(s: &str, rank: usize, line: usize) -> Result<Charge> {
    let v: Vec<i64> = vector(s, line, integer)?;
    if v.len() != rank {
        return Err(parse_err(line, format!("charge needs {rank} entries, got {}", v.len())));
    }
    Ok(Charge::new(v))
}

fn central_charge(s: &str, rank: usize, line: usize) -> Result<CentralCharge> {
    let m = matrix(s, line, rational)?;
    let [re, im] = fixed(m, line, "central charge")?;
    if re.len() != rank || im.len() != rank {
        return Err(parse_err(line, format!("central charge rows need {rank} entries")));
    }
    CentralCharge::new(re, im).map_err(|e| parse_err(line, e.to_string()))
}

/// `e(1,0)*e(0,1)` or `1`.
fn word(s: &str, rank: usize, line: usize) -> Result<Word> {
    let s = s.trim();
    if s == "1" {
        return Ok(Word::empty());
    }
    let letters = s
        .split('*')
        .map(|t| {
            let inner = t
                .trim()
                .strip_prefix("e(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| parse_err(line, format!("malformed letter `{}`", t.trim())))?;
            charge(&inner.replace(',', " "), rank, line)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::new(letters))
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Scenario::parse(text)
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let mut sections: BTreeMap<&str, Section> = BTreeMap::new();
        let mut current: Option<&str> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| parse_err(line, "unterminated section header"))?.trim();
                if !SECTIONS.iter().any(|(s, _)| *s == name) {
                    return Err(parse_err(line, format!("unknown section [{name}]")));
                }
                if sections.contains_key(name) {
                    return Err(parse_err(line, format!("duplicate section [{name}]")));
                }
                sections.insert(name, Section { name, line, entries: Vec::new() });
                current = Some(name);
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| parse_err(line, "expected `key = value`"))?;
            let key = key.trim();
            let name = current.ok_or_else(|| parse_err(line, "key outside any section"))?;
            let keys = SECTIONS.iter().find(|(s, _)| *s == name).map(|(_, k)| *k).unwrap_or(&[]);
            if !keys.contains(&key) {
                return Err(parse_err(line, format!("unknown key `{key}` in [{name}]")));
            }
            let section = sections.get_mut(name).expect("section registered");
            if !REPEATED.contains(&(name, key)) && section.get(key).is_some() {
                return Err(parse_err(line, format!("duplicate key `{key}` in [{name}]")));
            }
            section.entries.push((key, Entry { line, value: value.trim() }));
        }
        let section = |name: &str| {
            sections
                .get(name)
                .ok_or_else(|| parse_err(text.lines().count().max(1), format!("missing section [{name}]")))
        };

        let s = section("surface")?;
        let g_entry = s.require("genus")?;
        let genus: usize = integer(g_entry.value, g_entry.line)?;
        let surface = match s.get("intersection") {
            Some(e) => {
                let m = matrix(e.value, e.line, integer)?;
                if m.len() != 2 * genus {
                    return Err(parse_err(e.line, format!("intersection matrix must be {0}×{0}", 2 * genus)));
                }
                SurfaceModel::new(m).map_err(|err| parse_err(e.line, err.to_string()))?
            }
            None => SurfaceModel::standard(genus),
        };

        let s = section("lattice")?;
        let e = s.require("rank")?;
        let rank: usize = integer(e.value, e.line)?;
        let e = s.require("boundary")?;
        let boundary = if genus == 0 { Vec::new() } else { matrix(e.value, e.line, integer)? };
        let lattice = ChargeLattice::new(rank, boundary, surface).map_err(|err| parse_err(e.line, err.to_string()))?;

        let s = section("central_charge")?;
        let e = s.require("matrix")?;
        let z = central_charge(e.value, rank, e.line)?;
        let keyframes = s.all("keyframe").map(|e| central_charge(e.value, rank, e.line)).collect::<Result<Vec<_>>>()?;

        let s = section("quadratic_form")?;
        let e = s.require("matrix")?;
        let qm = matrix(e.value, e.line, rational)?;
        if qm.len() != rank || qm.iter().any(|r| r.len() != rank) {
            return Err(parse_err(e.line, format!("quadratic form must be {rank}×{rank}")));
        }
        let quadratic_form = QuadraticForm::new(qm).map_err(|err| parse_err(e.line, err.to_string()))?;
        quadratic_form.check_negative_on_kernel(&z).map_err(|err| parse_err(e.line, err.to_string()))?;

        let s = section("sector")?;
        let plane = |e: &Entry| -> Result<PlaneVector> {
            let [x, y] = fixed(vector(e.value, e.line, rational)?, e.line, "direction")?;
            Ok(PlaneVector::new(x, y))
        };
        let sector = s.check(Sector::new(plane(s.require("start")?)?, plane(s.require("end")?)?))?;

        let s = section("truncation")?;
        let e = s.require("functional")?;
        let functional = fixed(vector(e.value, e.line, rational)?, e.line, "functional")?;
        let e = s.require("cutoff")?;
        let cutoff = rational(e.value, e.line)?;
        let truncation = s.check(TruncationSet::new(functional, cutoff))?;
        s.check(truncation.check_positive_on(&sector))?;

        let mode = match sections.get("mode") {
            Some(s) => {
                let e = s.require("bracket")?;
                e.value.parse().map_err(|err: String| parse_err(e.line, err))?
            }
            None => BracketMode::Plain,
        };

        let mut spectrum = Spectrum::new();
        if let Some(s) = sections.get("spectrum") {
            let mut seen = std::collections::BTreeSet::new();
            for e in s.all("charge") {
                let (c, v) = split_value(e.value, e.line)?;
                let c = charge(c, rank, e.line)?;
                if !seen.insert(c.clone()) {
                    return Err(parse_err(e.line, format!("charge {c} listed twice")));
                }
                if c.is_zero() {
                    return Err(parse_err(e.line, "spectrum charge must be nonzero"));
                }
                spectrum.set(c, rational(v, e.line)?);
            }
        }

        let refinement = match sections.get("refinement") {
            Some(s) => {
                let e = s.require("values")?;
                let values: Vec<i8> = vector(e.value, e.line, integer)?;
                Some(
                    QuadraticRefinement::new(lattice.surface().clone(), values)
                        .map_err(|err| parse_err(e.line, err.to_string()))?,
                )
            }
            None => None,
        };

        let mut chains = Vec::new();
        if let Some(s) = sections.get("chains") {
            for e in s.all("chain") {
                let items = e
                    .value
                    .split(';')
                    .map(|v| {
                        let (h, c) = v.split_once(':').ok_or_else(|| parse_err(e.line, "expected `θ : charge`"))?;
                        Ok((rational(h, e.line)?, charge(c, rank, e.line)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                chains
                    .push(NiceChain::from_charges(&lattice, &items).map_err(|err| parse_err(e.line, err.to_string()))?);
            }
        }

        let scan_box = match sections.get("scan") {
            Some(s) => {
                let e = s.require("box")?;
                Some(integer(e.value, e.line)?)
            }
            None => None,
        };

        let mut element = Vec::new();
        if let Some(s) = sections.get("element") {
            for e in s.all("term") {
                let (w, v) = split_value(e.value, e.line)?;
                element.push((word(w, rank, e.line)?, rational(v, e.line)?));
            }
        }

        Ok(Scenario {
            lattice,
            central_charge: z,
            keyframes,
            quadratic_form,
            sector,
            truncation,
            mode,
            spectrum,
            refinement,
            chains,
            scan_box,
            element,
        })
    }

    /// Same scenario with the cutoff replaced.
    pub fn with_cutoff(&self, cutoff: Rational) -> Result<Scenario> {
        Ok(Scenario { truncation: self.truncation.with_cutoff(cutoff)?, ..self.clone() })
    }

    pub fn with_mode(&self, mode: BracketMode) -> Scenario {
        Scenario { mode, ..self.clone() }
    }

    /// The path `central_charge → keyframe → …`, if keyframes are given.
    pub fn path(&self) -> Result<VariationPath> {
        let mut k = vec![self.central_charge.clone()];
        k.extend(self.keyframes.iter().cloned());
        VariationPath::new(k)
    }

    /// Configuration with an explicit scan box, or the smallest doubling of
    /// `⌈Λ⌉ + 2` that contains every generator at each central charge.
    pub fn configuration(&self) -> Result<Configuration> {
        let mut config = Configuration {
            lattice: self.lattice.clone(),
            quadratic_form: self.quadratic_form.clone(),
            sector: self.sector.clone(),
            truncation: self.truncation.clone(),
            scan_box: 0,
            mode: self.mode,
        };
        let zs: Vec<&CentralCharge> = std::iter::once(&self.central_charge).chain(&self.keyframes).collect();
        if let Some(b) = self.scan_box {
            config.scan_box = b;
            return Ok(config);
        }
        let start = self.truncation.cutoff().ceil().to_integer().to_u32().unwrap_or(0) + 2;
        let mut b = start;
        loop {
            config.scan_box = b;
            match zs.iter().try_for_each(|z| config.cone(z).map(|_| ())) {
                Err(Error::ScanBoxTooSmall(..)) if b < 1 << 12 => b *= 2,
                Err(e) => return Err(e),
                Ok(()) => return Ok(config),
            }
        }
    }
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn rows<T: fmt::Display>(m: &[Vec<T>]) -> String {
    m.iter().map(|r| join(r, " ")).collect::<Vec<_>>().join(" ; ")
}

fn coords(c: &Charge) -> String {
    join(c.coords(), " ")
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surface = self.lattice.surface();
        writeln!(f, "[surface]")?;
        writeln!(f, "genus = {}", surface.genus_rank() / 2)?;
        if surface.genus_rank() > 0 {
            writeln!(f, "intersection = {}", rows(surface.intersection()))?;
        }
        writeln!(f, "\n[lattice]")?;
        writeln!(f, "rank = {}", self.lattice.rank())?;
        writeln!(f, "boundary = {}", rows(self.lattice.boundary_matrix()))?;
        writeln!(f, "\n[central_charge]")?;
        writeln!(f, "matrix = {}", rows(self.central_charge.rows()))?;
        for k in &self.keyframes {
            writeln!(f, "keyframe = {}", rows(k.rows()))?;
        }
        writeln!(f, "\n[quadratic_form]")?;
        writeln!(f, "matrix = {}", rows(self.quadratic_form.matrix()))?;
        let (s, e) = (self.sector.start(), self.sector.end());
        writeln!(f, "\n[sector]")?;
        writeln!(f, "start = {} {}", s.x, s.y)?;
        writeln!(f, "end = {} {}", e.x, e.y)?;
        writeln!(f, "\n[truncation]")?;
        writeln!(f, "functional = {}", join(self.truncation.functional(), " "))?;
        writeln!(f, "cutoff = {}", self.truncation.cutoff())?;
        writeln!(f, "\n[mode]")?;
        writeln!(f, "bracket = {}", self.mode.name())?;
        if !self.spectrum.is_empty() {
            writeln!(f, "\n[spectrum]")?;
            for (c, v) in self.spectrum.iter() {
                writeln!(f, "charge = {} : {v}", coords(c))?;
            }
        }
        if let Some(sigma) = &self.refinement {
            writeln!(f, "\n[refinement]")?;
            writeln!(f, "values = {}", join(sigma.values(), " "))?;
        }
        if !self.chains.is_empty() {
            writeln!(f, "\n[chains]")?;
            for ch in &self.chains {
                let items: Vec<String> =
                    ch.vertices().iter().map(|v| format!("{} : {}", v.height, coords(&v.charge))).collect();
                writeln!(f, "chain = {}", items.join(" ; "))?;
            }
        }
        if let Some(b) = self.scan_box {
            writeln!(f, "\n[scan]")?;
            writeln!(f, "box = {b}")?;
        }
        if !self.element.is_empty() {
            writeln!(f, "\n[element]")?;
            for (w, c) in &self.element {
                writeln!(f, "term = {w} : {c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cone,
    Product,
    Factorize,
    Cross,
    Walls,
    Multilink,
    Twist,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Cone,
        Command::Product,
        Command::Factorize,
        Command::Cross,
        Command::Walls,
        Command::Multilink,
        Command::Twist,
        Command::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Cone => "cone",
            Command::Product => "product",
            Command::Factorize => "factorize",
            Command::Cross => "cross",
            Command::Walls => "walls",
            Command::Multilink => "multilink",
            Command::Twist => "twist",
            Command::Selftest => "selftest",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Invalid(format!("unknown command `{s}`")))
    }
}

fn push_spectrum(out: &mut String, s: &Spectrum) {
    if s.is_empty() {
        out.push_str("empty spectrum\n");
    }
    out.push_str(&s.to_string());
}

/// Run one command; output always starts with the active cutoff.
pub fn run(command: Command, scenario: &Scenario) -> Result<String> {
    let config = scenario.configuration()?;
    let z = &scenario.central_charge;
    let mut out = format!("cutoff = {}\nmode = {}\n", scenario.truncation.cutoff(), scenario.mode.name());
    let algebra = || config.algebra(z);
    match command {
        Command::Cone => {
            let cone = config.cone(z)?;
            for c in cone.members() {
                out.push_str(&format!("{c} height {}\n", cone.height(c).expect("member")));
            }
        }
        Command::Product => {
            let a = algebra()?.ray_product(&scenario.spectrum)?;
            for l in a.to_lines() {
                out.push_str(&l);
                out.push('\n');
            }
        }
        Command::Factorize => {
            let alg = algebra()?;
            let a = if scenario.element.is_empty() {
                alg.ray_product(&scenario.spectrum)?
            } else {
                alg.element_from_terms(scenario.element.iter().map(|(w, c)| (w, c)))?
            };
            push_spectrum(&mut out, &alg.factorize(&a)?);
        }
        Command::Cross => {
            let path = scenario.path()?;
            let report = check_variation(&config, &path, scenario.spectrum.clone(), &default_tolerance())?;
            out.push_str(&report.to_string());
        }
        Command::Walls => {
            let path = scenario.path()?;
            let charges = tracked_charges(&config, &path)?;
            let events = detect_walls(&path, &charges, &config.sector, &default_tolerance())?;
            if events.is_empty() {
                out.push_str("no events\n");
            }
            for e in events {
                out.push_str(&format!("{e}\n"));
            }
        }
        Command::Multilink => {
            for (i, ch) in scenario.chains.iter().enumerate() {
                let v = multilink_total(&scenario.lattice, z, ch)?;
                out.push_str(&format!("chain {i} monomial {} multilink {v}\n", to_monomial(ch)));
            }
        }
        Command::Twist => {
            let sigma = scenario
                .refinement
                .as_ref()
                .ok_or_else(|| Error::Invalid("twist needs a [refinement] section".into()))?;
            push_spectrum(&mut out, &twist_spectrum(sigma, &scenario.lattice, &scenario.spectrum));
        }
        Command::Selftest => {
            for line in selftest(scenario, &config)? {
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Small exhaustive versions of the library's property suites.
fn selftest(scenario: &Scenario, config: &Configuration) -> Result<Vec<String>> {
    let two = Rational::from_integer(2.into());
    let small =
        if *config.truncation.cutoff() > two { config.truncation.with_cutoff(two)? } else { config.truncation.clone() };
    let small_config = Configuration { truncation: small, ..config.clone() };
    let alg = small_config.algebra(&scenario.central_charge)?;
    let mut lines = Vec::new();

    let n = roundtrip_suite(&alg)?;
    lines.push(format!("selftest factorize-roundtrip ok {n}"));
    let n = confluence_suite(&alg)?;
    lines.push(format!("selftest confluence ok {n}"));
    let n = covariance_suite(scenario)?;
    lines.push(format!("selftest refinement-independence ok {n}"));
    let mut trees = 0;
    for k in 1..=5usize {
        let charges = vec![Charge::zero(scenario.lattice.rank()); k];
        let spanning = enumerate_forests(&charges).into_iter().filter(|f| f.edge_count() + 1 == k).count();
        if spanning != k.pow(k.saturating_sub(2) as u32) {
            return Err(Error::InvalidForest(format!("{spanning} spanning trees on {k} vertices")));
        }
        trees += spanning;
    }
    lines.push(format!("selftest forest-count ok {trees}"));
    Ok(lines)
}

fn roundtrip_suite(alg: &Arc<Algebra>) -> Result<usize> {
    let values = [Rational::zero(), Rational::one(), -Rational::one()];
    let letters: Vec<&Charge> = alg.letters().iter().take(5).collect();
    let mut count = 0;
    for mask in 0..values.len().pow(letters.len() as u32) {
        let mut m = mask;
        let mut spec = Spectrum::new();
        for c in &letters {
            spec.set((*c).clone(), values[m % values.len()].clone());
            m /= values.len();
        }
        let back = alg.factorize(&alg.ray_product(&spec)?)?;
        if back != spec {
            return Err(Error::ReconstructionMismatch);
        }
        count += 1;
    }
    Ok(count)
}

fn confluence_suite(alg: &Arc<Algebra>) -> Result<usize> {
    let letters = alg.letters();
    let mut words: Vec<Vec<Charge>> = vec![vec![]];
    let mut count = 0;
    for _ in 0..3 {
        words = words.iter().flat_map(|w| letters.iter().map(move |l| [w.clone(), vec![l.clone()]].concat())).collect();
        for w in &words {
            let w = Word::new(w.clone());
            let a = alg.normal_form_with(&w, Rational::one(), RewriteStrategy::LeftmostFirst)?;
            let b = alg.normal_form_with(&w, Rational::one(), RewriteStrategy::RightmostFirst)?;
            if a != b {
                return Err(Error::NotNormalForm);
            }
            count += 1;
        }
    }
    Ok(count)
}

fn covariance_suite(scenario: &Scenario) -> Result<usize> {
    let surface = scenario.lattice.surface();
    let lattice = &scenario.lattice;
    let base = QuadraticRefinement::trivial(surface.clone());
    let reference = twist_spectrum(&base, lattice, &scenario.spectrum);
    let mut count = 0;
    for eps in CohomologyAction::all(surface.genus_rank()) {
        let sigma = eps.act(&base)?;
        let input = covariant_spectrum(&eps, lattice, &scenario.spectrum);
        if twist_spectrum(&sigma, lattice, &input) != reference {
            return Err(Error::Invalid("twisted spectrum depends on the refinement".into()));
        }
        count += 1;
    }
    Ok(count)
}
