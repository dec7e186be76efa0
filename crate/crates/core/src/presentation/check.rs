//! Consistency checking: do the relations of a presentation define a ring?
//!
//! Three groups of conditions are verified:
//!
//! 1. each σ_i is a ring endomorphism that sends nonzero elements to nonzero
//!    elements, each δ_i is a σ_i-derivation, and each c_ij is a unit;
//! 2. `h(x_j x_i r) = h(p(x_j x_i) r)` for `i < j` and sampled `r`;
//! 3. `h(x_k x_j x_i) = h(p(x_k x_j) x_i)` for every `i < j < k`.
//!
//! Item indices in reports are 1-based.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Presentation;
use crate::coeff::{CoeffElem, RingMap, SigmaDerivation};
use crate::reduction::{collapse_q, Reducer};
use crate::rng::Sampler;
use crate::words::{FreeElem, Letter, Word};

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Structural,
    Sampled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Structural => "structural",
            Mode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn ok(mode: Mode) -> Self {
        Check { pass: true, mode, witness: None }
    }

    fn fail(mode: Mode, witness: String) -> Self {
        Check { pass: false, mode, witness: Some(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapCheck {
    pub i: usize,
    pub endomorphism: Check,
    pub derivation: Check,
    pub nonzero_on_nonzero: Check,
    pub injectivity: Check,
}

impl MapCheck {
    pub fn pass(&self) -> bool {
        // injectivity is reported, not required
        self.endomorphism.pass && self.derivation.pass && self.nonzero_on_nonzero.pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCheck {
    pub i: usize,
    pub j: usize,
    pub c: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition1 {
    pub maps: Vec<MapCheck>,
    pub units: Vec<UnitCheck>,
}

impl Condition1 {
    pub fn pass(&self) -> bool {
        self.maps.iter().all(MapCheck::pass) && self.units.iter().all(|u| u.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition2Item {
    pub i: usize,
    pub j: usize,
    pub r: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition3Item {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub presentation: String,
    pub condition1: Condition1,
    pub condition2_mode: Mode,
    pub condition2: Vec<Condition2Item>,
    pub condition3: Vec<Condition3Item>,
    pub overall: bool,
}

impl ConsistencyReport {
    fn finish(mut self) -> Self {
        self.overall = self.condition1.pass()
            && self.condition2.iter().all(|c| c.pass)
            && self.condition3.iter().all(|c| c.pass);
        self
    }

    pub fn failing_triples(&self) -> Vec<(usize, usize, usize)> {
        self.condition3.iter().filter(|c| !c.pass).map(|c| (c.i, c.j, c.k)).collect()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "presentation {}", self.presentation)?;
        writeln!(f, "condition 1: {}", status(self.condition1.pass()))?;
        for m in &self.condition1.maps {
            writeln!(
                f,
                "  sigma{0}/delta{0}: endomorphism {1} ({2}), derivation {3} ({4}), nonzero-on-nonzero {5} ({6}), injectivity {7} ({8})",
                m.i,
                status(m.endomorphism.pass),
                m.endomorphism.mode,
                status(m.derivation.pass),
                m.derivation.mode,
                status(m.nonzero_on_nonzero.pass),
                m.nonzero_on_nonzero.mode,
                if m.injectivity.pass { "ok" } else { "not injective" },
                m.injectivity.mode,
            )?;
            for c in [&m.endomorphism, &m.derivation, &m.nonzero_on_nonzero, &m.injectivity] {
                if let Some(w) = &c.witness {
                    writeln!(f, "    witness: {w}")?;
                }
            }
        }
        for u in self.condition1.units.iter().filter(|u| !u.pass) {
            writeln!(f, "  c{}{} = {} is not a unit", u.i, u.j, u.c)?;
        }
        let c2_fail: Vec<_> = self.condition2.iter().filter(|c| !c.pass).collect();
        writeln!(
            f,
            "condition 2: {} ({} items, {})",
            status(c2_fail.is_empty()),
            self.condition2.len(),
            self.condition2_mode
        )?;
        for c in c2_fail {
            writeln!(f, "  (i={}, j={}, r={}): lhs {} != rhs {}", c.i, c.j, c.r,
                c.lhs.as_deref().unwrap_or(""), c.rhs.as_deref().unwrap_or(""))?;
        }
        let c3_fail: Vec<_> = self.condition3.iter().filter(|c| !c.pass).collect();
        writeln!(
            f,
            "condition 3: {} ({} triples, exhaustive)",
            status(c3_fail.is_empty()),
            self.condition3.len()
        )?;
        for c in c3_fail {
            writeln!(
                f,
                "  (i={}, j={}, k={}): lhs {} != rhs {}; difference {}",
                c.i,
                c.j,
                c.k,
                c.lhs.as_deref().unwrap_or(""),
                c.rhs.as_deref().unwrap_or(""),
                c.difference.as_deref().unwrap_or("")
            )?;
        }
        write!(f, "overall: {}", status(self.overall))
    }
}

fn label(p: &Presentation) -> String {
    match p.name() {
        Some(n) => format!("{n} ({})", p.id()),
        None => p.id().to_string(),
    }
}

fn ring_gens(p: &Presentation) -> Vec<CoeffElem> {
    (0..p.ring().generators().len()).map(|k| CoeffElem::generator(p.ring(), k)).collect()
}

fn check_endomorphism(sigma: &RingMap, pairs: &[(CoeffElem, CoeffElem)]) -> Check {
    let ring = sigma.source();
    if !sigma.apply(&CoeffElem::one(ring)).is_one() {
        return Check::fail(Mode::Structural, "sigma(1) != 1".into());
    }
    for (r, s) in pairs {
        if sigma.apply(&(r + s)) != &sigma.apply(r) + &sigma.apply(s) {
            return Check::fail(Mode::Sampled, format!("sigma({r} + {s}) is not additive"));
        }
        if sigma.apply(&(r * s)) != &sigma.apply(r) * &sigma.apply(s) {
            return Check::fail(Mode::Sampled, format!("sigma(({r})*({s})) is not multiplicative"));
        }
    }
    // generator images determine a homomorphism of a free commutative (Laurent) ring
    Check::ok(Mode::Structural)
}

fn leibniz_defect(delta: &SigmaDerivation, r: &CoeffElem, s: &CoeffElem) -> CoeffElem {
    let sigma = delta.twist();
    let lhs = delta.apply(&(r * s));
    let rhs = &(&sigma.apply(r) * &delta.apply(s)) + &(&delta.apply(r) * s);
    &lhs - &rhs
}

fn check_derivation(delta: &SigmaDerivation, pairs: &[(CoeffElem, CoeffElem)]) -> Check {
    let ring = delta.ring().clone();
    if !delta.apply(&CoeffElem::one(&ring)).is_zero() {
        return Check::fail(Mode::Structural, "delta(1) != 0".into());
    }
    let sigma = delta.twist();
    let gens: Vec<CoeffElem> = (0..ring.generators().len()).map(|k| CoeffElem::generator(&ring, k)).collect();
    // compatible with commutativity iff σ(a)δ(b) + δ(a)b = σ(b)δ(a) + δ(b)a on generator pairs
    for (x, a) in gens.iter().enumerate() {
        for b in &gens[x + 1..] {
            let da = &delta.images()[x];
            let db = delta.apply(b);
            let ab = &(&sigma.apply(a) * &db) + &(da * b);
            let ba = &(&sigma.apply(b) * da) + &(&db * a);
            if ab != ba {
                return Check::fail(
                    Mode::Structural,
                    format!("generators ({a}, {b}): delta(ab) = {ab} but delta(ba) = {ba}"),
                );
            }
        }
    }
    for (r, s) in pairs {
        if delta.apply(&(r + s)) != &delta.apply(r) + &delta.apply(s) {
            return Check::fail(Mode::Sampled, format!("delta({r} + {s}) is not additive"));
        }
        let defect = leibniz_defect(delta, r, s);
        if !defect.is_zero() {
            return Check::fail(Mode::Sampled, format!("pair ({r}, {s}): twisted Leibniz defect {defect}"));
        }
    }
    Check::ok(Mode::Structural)
}

fn check_nonzero(sigma: &RingMap, samples: &[CoeffElem]) -> (Check, Check) {
    let ring = sigma.source();
    if sigma.is_identity() || sigma.is_monomial_permutation() {
        return (Check::ok(Mode::Structural), Check::ok(Mode::Structural));
    }
    for (k, img) in sigma.images().iter().enumerate() {
        if let Some(c) = img.constant_value() {
            let g = CoeffElem::generator(ring, k);
            let r = &g - &CoeffElem::from_scalar(ring, c);
            let w = format!("sigma({r}) = 0");
            return (Check::fail(Mode::Structural, w.clone()), Check::fail(Mode::Structural, w));
        }
    }
    if ring.generators().len() == 1 {
        // a single generator with a non-constant image generates a copy of the ring
        return (Check::ok(Mode::Structural), Check::ok(Mode::Structural));
    }
    let nonzero = samples
        .iter()
        .find(|r| !r.is_zero() && sigma.apply(r).is_zero())
        .map(|r| Check::fail(Mode::Sampled, format!("sigma({r}) = 0")))
        .unwrap_or(Check::ok(Mode::Sampled));
    let mut injective = Check::ok(Mode::Sampled);
    'outer: for (x, r) in samples.iter().enumerate() {
        for s in &samples[x + 1..] {
            if r != s && sigma.apply(r) == sigma.apply(s) {
                injective = Check::fail(Mode::Sampled, format!("sigma({r}) = sigma({s})"));
                break 'outer;
            }
        }
    }
    (nonzero, injective)
}

/// Condition 1 only: the maps and the units c_ij.
pub fn validate_structure(p: &Presentation, samples: usize, seed: u64) -> ConsistencyReport {
    let mut sampler = Sampler::new(seed, "check/condition1");
    let ring = p.ring().clone();
    let gens = ring_gens(p);
    let mut pairs: Vec<(CoeffElem, CoeffElem)> = Vec::new();
    for a in &gens {
        for b in &gens {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for _ in 0..samples {
        pairs.push((CoeffElem::random(&ring, 2, &mut sampler), CoeffElem::random(&ring, 2, &mut sampler)));
    }
    let elems: Vec<CoeffElem> = gens
        .iter()
        .cloned()
        .chain((0..samples).map(|_| CoeffElem::random_nonzero(&ring, 2, &mut sampler)))
        .collect();
    let maps = (0..p.n())
        .map(|i| {
            let (nonzero_on_nonzero, injectivity) = check_nonzero(p.sigma(i), &elems);
            MapCheck {
                i: i + 1,
                endomorphism: check_endomorphism(p.sigma(i), &pairs),
                derivation: check_derivation(p.delta(i), &pairs),
                nonzero_on_nonzero,
                injectivity,
            }
        })
        .collect();
    let mut units = Vec::new();
    for i in 0..p.n() {
        for j in i + 1..p.n() {
            let c = &p.relation(i, j).c;
            units.push(UnitCheck { i: i + 1, j: j + 1, c: c.to_string(), pass: c.is_unit() });
        }
    }
    ConsistencyReport {
        presentation: label(p),
        condition1: Condition1 { maps, units },
        condition2_mode: condition2_mode(p),
        condition2: vec![],
        condition3: vec![],
        overall: false,
    }
    .finish()
}

fn condition2_mode(p: &Presentation) -> Mode {
    if p.ring().is_field() {
        Mode::Structural
    } else {
        Mode::Sampled
    }
}

fn h_of(p: &Presentation, reducer: &mut Reducer, e: &FreeElem) -> crate::Result<crate::algebra::Poly> {
    collapse_q(&reducer.reduce(e)?, p)
}

/// `h(x_j x_i r) = h(p(x_j x_i) r)` for 0-based `i < j`.
pub fn check_condition2(p: &Presentation, i: usize, j: usize, r: &CoeffElem) -> Condition2Item {
    assert!(i < j && j < p.n(), "condition 2 needs i < j");
    let mut red = Reducer::new(p).pruning_zeros();
    let xj_xi = Word(vec![Letter::Var(j), Letter::Var(i)]);
    let rw = Word(vec![Letter::Scalar(r.clone())]);
    let lhs = h_of(p, &mut red, &FreeElem::word(xj_xi.concat(&rw)));
    let rhs = red
        .reduce(&FreeElem::word(xj_xi))
        .and_then(|inner| h_of(p, &mut red, &inner.concat(&FreeElem::word(rw))));
    let (pass, l, r_) = match (lhs, rhs) {
        (Ok(a), Ok(b)) => (a == b, a.to_text(p), b.to_text(p)),
        (a, b) => (false, format!("{a:?}"), format!("{b:?}")),
    };
    Condition2Item {
        i: i + 1,
        j: j + 1,
        r: r.to_string(),
        pass,
        lhs: (!pass).then_some(l),
        rhs: (!pass).then_some(r_),
    }
}

/// `h(x_k x_j x_i) = h(p(x_k x_j) x_i)` for 0-based `i < j < k`.
pub fn check_condition3(p: &Presentation, i: usize, j: usize, k: usize) -> Condition3Item {
    assert!(i < j && j < k && k < p.n(), "condition 3 needs i < j < k");
    let mut red = Reducer::new(p).pruning_zeros();
    let lhs = h_of(p, &mut red, &FreeElem::word(Word(vec![Letter::Var(k), Letter::Var(j), Letter::Var(i)])));
    let rhs = red
        .reduce(&FreeElem::word(Word(vec![Letter::Var(k), Letter::Var(j)])))
        .and_then(|inner| h_of(p, &mut red, &inner.concat(&FreeElem::word(Word(vec![Letter::Var(i)])))));
    let (pass, l, r, d) = match (lhs, rhs) {
        (Ok(a), Ok(b)) => {
            let diff = b.sub(&a).map(|d| d.to_text(p)).unwrap_or_default();
            (a == b, a.to_text(p), b.to_text(p), diff)
        }
        (a, b) => (false, format!("{a:?}"), format!("{b:?}"), String::new()),
    };
    Condition3Item {
        i: i + 1,
        j: j + 1,
        k: k + 1,
        pass,
        lhs: (!pass).then_some(l),
        rhs: (!pass).then_some(r),
        difference: (!pass).then_some(d),
    }
}

/// The values of r used for condition 2: 1, the generators, `samples` random
/// elements and `samples` random products of generators.
pub fn condition2_samples(p: &Presentation, samples: usize, seed: u64) -> Vec<CoeffElem> {
    let ring = p.ring();
    let gens = ring_gens(p);
    let mut sampler = Sampler::new(seed, "check/condition2");
    let mut out = vec![CoeffElem::one(ring)];
    out.extend(gens.iter().cloned());
    if ring.is_field() {
        // 1 spans additively up to torsion-free scaling; extra samples only add confidence
        out.extend((0..samples.min(8)).map(|_| CoeffElem::random_nonzero(ring, 0, &mut sampler)));
        return out;
    }
    for _ in 0..samples {
        out.push(CoeffElem::random_nonzero(ring, 3, &mut sampler));
    }
    for _ in 0..samples {
        let len = sampler.gen_range(2..=3);
        let mut prod = CoeffElem::one(ring);
        for _ in 0..len {
            let g = &gens[sampler.gen_range(0..gens.len())];
            let g = if ring.generators()[gens.iter().position(|x| x == g).unwrap()].invertible
                && sampler.gen_bool(0.3)
            {
                g.unit_inverse().expect("invertible generator")
            } else {
                g.clone()
            };
            prod = &prod * &g;
        }
        out.push(prod);
    }
    out
}

/// Conditions 1–3. Condition 3 is exhaustive; condition 2 is exhaustive over
/// generators and sampled beyond them.
pub fn check_all(p: &Presentation, samples: usize, seed: u64) -> ConsistencyReport {
    let mut report = validate_structure(p, samples, seed);
    let rs = condition2_samples(p, samples, seed);
    let n = p.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let items2: Vec<(usize, usize, &CoeffElem)> =
        pairs.iter().flat_map(|&(i, j)| rs.iter().map(move |r| (i, j, r))).collect();
    report.condition2 = items2.par_iter().map(|&(i, j, r)| check_condition2(p, i, j, r)).collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .collect();
    report.condition3 = triples.par_iter().map(|&(i, j, k)| check_condition3(p, i, j, k)).collect();
    report.finish()
}
