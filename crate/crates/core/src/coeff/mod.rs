//! Exact commutative coefficient rings.
//!
//! Every supported ring is a (Laurent) polynomial ring over a prime field:
//! `Q`, `F_p`, `K[t_1..t_m]`, `K[q^±1]` and `K[q^±1][t_1..t_m]`. Elements are
//! sparse maps from exponent vectors to nonzero field scalars, with negative
//! exponents allowed only on invertible (Laurent) generators. Canonical storage
//! makes structural equality coincide with ring equality.

mod maps;
mod scalar;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;

pub use maps::{RingMap, SigmaDerivation};
pub use scalar::{is_prime, BaseField, Scalar};

use crate::error::{Error, Result};
use crate::rng::Sampler;

/// Shape of a coefficient ring, as written in presentation files.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rationals,
    PrimeField(u64),
    Poly { base: Box<RingKind>, vars: Vec<String> },
    Laurent { base: Box<RingKind>, var: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub invertible: bool,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct CoeffRing {
    kind: RingKind,
    field: BaseField,
    gens: Vec<Generator>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl CoeffRing {
    pub fn new(kind: RingKind) -> Result<Arc<CoeffRing>> {
        let (field, gens) = Self::analyze(&kind, 0)?;
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if !valid_name(&g.name) {
                return Err(Error::InvalidRing(format!("bad generator name `{}`", g.name)));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Arc::new(CoeffRing { kind, field, gens }))
    }

    // depth 0: top level; polynomial layers may sit on a Laurent layer, not the reverse.
    fn analyze(kind: &RingKind, depth: usize) -> Result<(BaseField, Vec<Generator>)> {
        match kind {
            RingKind::Rationals => Ok((BaseField::Rationals, vec![])),
            RingKind::PrimeField(p) => Ok((BaseField::prime(*p)?, vec![])),
            RingKind::Poly { base, vars } => {
                if depth > 0 {
                    return Err(Error::InvalidRing(
                        "a polynomial layer may only appear at the top".into(),
                    ));
                }
                if vars.is_empty() {
                    return Err(Error::InvalidRing("polynomial ring without variables".into()));
                }
                let (field, mut gens) = Self::analyze(base, depth + 1)?;
                gens.extend(vars.iter().map(|v| Generator { name: v.clone(), invertible: false }));
                Ok((field, gens))
            }
            RingKind::Laurent { base, var } => {
                if !matches!(**base, RingKind::Rationals | RingKind::PrimeField(_)) {
                    return Err(Error::InvalidRing(
                        "a Laurent layer must sit directly over a field".into(),
                    ));
                }
                let (field, _) = Self::analyze(base, depth + 1)?;
                Ok((field, vec![Generator { name: var.clone(), invertible: true }]))
            }
        }
    }

    pub fn rationals() -> Arc<CoeffRing> {
        Self::new(RingKind::Rationals).expect("Q is valid")
    }

    pub fn prime_field(p: u64) -> Result<Arc<CoeffRing>> {
        Self::new(RingKind::PrimeField(p))
    }

    pub fn polynomial(base: RingKind, vars: &[&str]) -> Result<Arc<CoeffRing>> {
        Self::new(RingKind::Poly {
            base: Box::new(base),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn laurent(base: RingKind, var: &str) -> Result<Arc<CoeffRing>> {
        Self::new(RingKind::Laurent { base: Box::new(base), var: var.to_string() })
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn is_field(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "F{p}"),
            RingKind::Poly { base, vars } => write!(f, "{base}[{}]", vars.join(",")),
            RingKind::Laurent { base, var } => write!(f, "{base}[{var}^±1]"),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

pub(crate) fn same_ring(a: &Arc<CoeffRing>, b: &Arc<CoeffRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

type Exps = Vec<i32>;

/// An element of a coefficient ring in canonical form.
#[derive(Clone)]
pub struct CoeffElem {
    ring: Arc<CoeffRing>,
    // sorted ascending by exponent vector, no zero scalars
    terms: Vec<(Exps, Scalar)>,
}

impl CoeffElem {
    pub fn zero(ring: &Arc<CoeffRing>) -> Self {
        CoeffElem { ring: ring.clone(), terms: vec![] }
    }

    pub fn one(ring: &Arc<CoeffRing>) -> Self {
        Self::from_scalar(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<CoeffRing>, v: i64) -> Self {
        Self::from_scalar(ring, ring.field.from_i64(v))
    }

    pub fn from_rational(ring: &Arc<CoeffRing>, v: &BigRational) -> Result<Self> {
        Ok(Self::from_scalar(ring, ring.field.from_rational(v)?))
    }

    pub fn from_scalar(ring: &Arc<CoeffRing>, s: Scalar) -> Self {
        assert!(ring.field.contains(&s), "scalar {s} is not in {}", ring.field);
        let terms = if ring.field.is_zero(&s) {
            vec![]
        } else {
            vec![(vec![0; ring.gens.len()], s)]
        };
        CoeffElem { ring: ring.clone(), terms }
    }

    /// The generator with index `idx` in the ring's generator list.
    pub fn generator(ring: &Arc<CoeffRing>, idx: usize) -> Self {
        Self::monomial(ring, ring.field.one(), {
            let mut e = vec![0; ring.gens.len()];
            e[idx] = 1;
            e
        })
    }

    pub fn generator_named(ring: &Arc<CoeffRing>, name: &str) -> Result<Self> {
        let idx = ring
            .generator_index(name)
            .ok_or_else(|| Error::Eval(format!("unknown generator `{name}` in {ring}")))?;
        Ok(Self::generator(ring, idx))
    }

    fn monomial(ring: &Arc<CoeffRing>, c: Scalar, exps: Exps) -> Self {
        debug_assert_eq!(exps.len(), ring.gens.len());
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        CoeffElem { ring: ring.clone(), terms: vec![(exps, c)] }
    }

    /// Builds an element from raw terms, validating exponents and collecting like terms.
    pub fn from_terms(
        ring: &Arc<CoeffRing>,
        terms: impl IntoIterator<Item = (Vec<i32>, Scalar)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != ring.gens.len() {
                return Err(Error::Eval(format!("exponent vector {e:?} has wrong length")));
            }
            for (g, &x) in ring.gens.iter().zip(&e) {
                if x < 0 && !g.invertible {
                    return Err(Error::NotAUnit(g.name.clone()));
                }
            }
            if !ring.field.contains(&c) {
                return Err(Error::Eval(format!("scalar {c} is not in {}", ring.field)));
            }
            accumulate(&ring.field, &mut acc, e, c);
        }
        Ok(Self::collect(ring, acc))
    }

    fn collect(ring: &Arc<CoeffRing>, acc: BTreeMap<Exps, Scalar>) -> Self {
        let field = ring.field;
        CoeffElem {
            ring: ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Vec<i32>, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| self.ring.field.is_one(&c))
    }

    /// The scalar value if this element lies in the prime field.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field.zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Largest sum of absolute exponents over the terms (0 for constants and zero).
    pub fn degree_measure(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|x| x.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "coefficient ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_same(self, other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let field = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let s = field.add(ca, cb);
                        if !field.is_zero(&s) {
                            out.push((ea.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        CoeffElem { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&field, &mut acc, e, field.mul(ca, cb));
            }
        }
        Self::collect(&self.ring, acc)
    }

    /// Multiplies by a prime-field scalar.
    pub fn scale(&self, c: &Scalar) -> Self {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        if field.is_one(c) {
            return self.clone();
        }
        CoeffElem {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), field.mul(x, c))).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self.terms.as_slice() {
            [(e, _)] => e.iter().zip(&self.ring.gens).all(|(&x, g)| x == 0 || g.invertible),
            _ => false,
        }
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (e, c) = &self.terms[0];
        let inv = self.ring.field.inv(c).expect("nonzero scalar");
        Ok(Self::monomial(&self.ring, inv, e.iter().map(|x| -x).collect()))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.unit_inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(&self.ring);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Pseudorandom element with degree measure at most `degree_bound`.
    pub fn random(ring: &Arc<CoeffRing>, degree_bound: u32, sampler: &mut Sampler) -> Self {
        let field = ring.field;
        let n_terms = if ring.gens.is_empty() { 1 } else { sampler.gen_range(1..=3) };
        let mut terms = Vec::with_capacity(n_terms);
        for _ in 0..n_terms {
            let mut e = vec![0i32; ring.gens.len()];
            let mut budget = sampler.gen_range(0..=degree_bound) as i32;
            while budget > 0 && !e.is_empty() {
                let g = sampler.gen_range(0..e.len());
                let step = if ring.gens[g].invertible && sampler.gen_bool(0.5) { -1 } else { 1 };
                e[g] += step;
                budget -= 1;
            }
            terms.push((e, random_scalar(&field, sampler)));
        }
        Self::from_terms(ring, terms).expect("sampled exponents are admissible")
    }

    pub fn random_nonzero(ring: &Arc<CoeffRing>, degree_bound: u32, sampler: &mut Sampler) -> Self {
        loop {
            let r = Self::random(ring, degree_bound, sampler);
            if !r.is_zero() {
                return r;
            }
        }
    }
}

/// Deterministic element for a given seed; same seed, same element.
pub fn random_elem(ring: &Arc<CoeffRing>, degree_bound: u32, seed: u64) -> CoeffElem {
    let mut s = Sampler::new(seed, "coeff::random_elem");
    CoeffElem::random(ring, degree_bound, &mut s)
}

pub(crate) fn random_scalar(field: &BaseField, sampler: &mut Sampler) -> Scalar {
    match field {
        BaseField::Rationals => {
            let n: i64 = sampler.gen_range(-6..=6);
            let d: i64 = sampler.gen_range(1..=4);
            Scalar::Rat(BigRational::new(n.into(), d.into()))
        }
        BaseField::Prime(p) => Scalar::Mod(sampler.gen_range(0..*p)),
    }
}

fn accumulate(field: &BaseField, acc: &mut BTreeMap<Exps, Scalar>, e: Exps, c: Scalar) {
    match acc.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &c);
            *o.get_mut() = s;
        }
    }
}

fn ensure_same(a: &CoeffElem, b: &CoeffElem) -> Result<()> {
    if same_ring(&a.ring, &b.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.ring.to_string(), b.ring.to_string()))
    }
}

/// Checked sum; errors on ring mismatch.
pub fn ring_add(a: &CoeffElem, b: &CoeffElem) -> Result<CoeffElem> {
    a.try_add(b)
}

/// Checked product; errors on ring mismatch.
pub fn ring_mul(a: &CoeffElem, b: &CoeffElem) -> Result<CoeffElem> {
    a.try_mul(b)
}

impl Add for &CoeffElem {
    type Output = CoeffElem;
    fn add(self, rhs: &CoeffElem) -> CoeffElem {
        self.check_ring(rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &CoeffElem {
    type Output = CoeffElem;
    fn sub(self, rhs: &CoeffElem) -> CoeffElem {
        self + &(-rhs)
    }
}

impl Mul for &CoeffElem {
    type Output = CoeffElem;
    fn mul(self, rhs: &CoeffElem) -> CoeffElem {
        self.check_ring(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &CoeffElem {
    type Output = CoeffElem;
    fn neg(self) -> CoeffElem {
        let field = self.ring.field;
        CoeffElem {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect(),
        }
    }
}

impl PartialEq for CoeffElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for CoeffElem {}

impl Hash for CoeffElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for CoeffElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CoeffElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl fmt::Debug for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn print_order(a: &Exps, b: &Exps) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl CoeffElem {
    /// True when printing needs parentheses to act as a product factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    /// True when the canonical text starts with a minus sign.
    pub fn leading_negative(&self) -> bool {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| print_order(&a.0, &b.0));
        sorted.first().is_some_and(|(_, c)| self.ring.field.is_negative(c))
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| print_order(&a.0, &b.0));
        for (k, (e, c)) in sorted.into_iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = self
                .ring
                .gens
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(g, &x)| if x == 1 { g.name.clone() } else { format!("{}^{x}", g.name) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Arc<CoeffRing> {
        CoeffRing::polynomial(RingKind::Rationals, &["t"]).unwrap()
    }

    fn lq() -> Arc<CoeffRing> {
        CoeffRing::laurent(RingKind::Rationals, "q").unwrap()
    }

    fn frac(r: &Arc<CoeffRing>, n: i64, d: i64) -> CoeffElem {
        CoeffElem::from_rational(r, &BigRational::new(n.into(), d.into())).unwrap()
    }

    #[test]
    fn rational_sum() {
        let r = CoeffRing::rationals();
        assert_eq!(&frac(&r, 1, 2) + &frac(&r, 1, 3), frac(&r, 5, 6));
        let x = frac(&r, -7, 3);
        assert_eq!(&x + &CoeffElem::zero(&r), x);
    }

    #[test]
    fn laurent_collection() {
        let r = lq();
        let q = CoeffElem::generator(&r, 0);
        let one = CoeffElem::one(&r);
        let s = &(&q + &one) + &(&q - &one);
        assert_eq!(s, q.scale(&r.field().from_i64(2)));
        assert_eq!(s.to_string(), "2*q");
        assert_eq!(&q * &q.unit_inverse().unwrap(), one);
    }

    #[test]
    fn polynomial_expansion() {
        let r = qt();
        let t = CoeffElem::generator(&r, 0);
        let one = CoeffElem::one(&r);
        let p = &(&t + &one) * &(&t - &one);
        assert_eq!(p.to_string(), "t^2 - 1");
    }

    #[test]
    fn prime_field_product() {
        let r = CoeffRing::prime_field(5).unwrap();
        let p = &CoeffElem::from_i64(&r, 3) * &CoeffElem::from_i64(&r, 4);
        assert_eq!(p, CoeffElem::from_i64(&r, 2));
    }

    #[test]
    fn units() {
        let r = CoeffRing::rationals();
        let x = frac(&r, 2, 3);
        assert!(x.is_unit());
        assert_eq!(x.unit_inverse().unwrap(), frac(&r, 3, 2));
        assert!(!CoeffElem::zero(&r).is_unit());

        let t = CoeffElem::generator(&qt(), 0);
        assert!(!t.is_unit());
        assert!(matches!(t.unit_inverse(), Err(Error::NotAUnit(_))));
        assert!(CoeffElem::from_i64(&qt(), 7).is_unit());

        let l = lq();
        let a = CoeffElem::generator(&l, 0).pow(3).unwrap().scale(&l.field().from_i64(2));
        assert!(a.is_unit());
        let inv = a.unit_inverse().unwrap();
        assert_eq!(inv.to_string(), "1/2*q^-3");
        assert!(!(&CoeffElem::generator(&l, 0) + &CoeffElem::one(&l)).is_unit());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CoeffElem::one(&qt());
        let b = CoeffElem::one(&lq());
        assert!(matches!(ring_add(&a, &b), Err(Error::RingMismatch(..))));
        assert!(matches!(ring_mul(&a, &b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn ring_validation() {
        assert!(CoeffRing::prime_field(9).is_err());
        assert!(CoeffRing::polynomial(RingKind::Rationals, &["t", "t"]).is_err());
        assert!(CoeffRing::polynomial(RingKind::Rationals, &[]).is_err());
        let nested = RingKind::Poly {
            base: Box::new(RingKind::Laurent {
                base: Box::new(RingKind::Rationals),
                var: "q".into(),
            }),
            vars: vec!["t".into()],
        };
        let ring = CoeffRing::new(nested).unwrap();
        assert_eq!(ring.generators().len(), 2);
        assert!(ring.generators()[0].invertible);
        let bad = RingKind::Laurent {
            base: Box::new(RingKind::Poly { base: Box::new(RingKind::Rationals), vars: vec!["t".into()] }),
            var: "q".into(),
        };
        assert!(CoeffRing::new(bad).is_err());
    }

    #[test]
    fn random_is_reproducible_and_bounded() {
        let r = CoeffRing::polynomial(RingKind::Rationals, &["s", "t"]).unwrap();
        for seed in 0..50 {
            let a = random_elem(&r, 2, seed);
            assert_eq!(a, random_elem(&r, 2, seed));
            assert!(a.degree_measure() <= 2);
        }
        let q = CoeffRing::rationals();
        assert_eq!(random_elem(&q, 0, 9), random_elem(&q, 0, 9));
    }

    #[test]
    fn display_forms() {
        let l = lq();
        let q = CoeffElem::generator(&l, 0);
        assert_eq!(q.pow(-2).unwrap().to_string(), "q^-2");
        let e = &(&q.pow(2).unwrap() - &CoeffElem::one(&l)) + &q.pow(-1).unwrap().scale(&l.field().from_i64(-3));
        assert_eq!(e.to_string(), "q^2 - 1 - 3*q^-1");
    }
}
