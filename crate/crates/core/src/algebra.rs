//! The skew PBW extension as a computable ring.
//!
//! Elements are [`Poly`] values: finite sums `r·x^α` over standard monomials
//! with nonzero coefficients on the left. The product [`SkewPbw::mul`]
//! straightens directly on exponent vectors: a variable is pushed leftwards
//! through a standard monomial one neighbour at a time, and through a
//! coefficient via `x_i r = σ_i(r) x_i + δ_i(r)`. Single steps are memoized
//! per algebra. The word-level normalization in [`crate::reduction`] is the
//! reference this product is tested against.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::coeff::{same_ring, CoeffElem, CoeffRing};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, PresentationId};
use crate::rng::Sampler;

/// Exponent vector α ∈ ℕⁿ of a standard monomial x₁^α₁⋯xₙ^αₙ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        exps.iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentCap))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// |α|
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentCap))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    fn bump(&self, i: usize) -> Result<Monomial> {
        let mut e = self.0.clone();
        e[i] = e[i].checked_add(1).ok_or(Error::ExponentCap)?;
        Ok(Monomial(e))
    }

    fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Variable indices of the monomial written out left to right.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
    }
}

/// exp(X) = α
pub fn exp(x: &Monomial) -> Vec<u16> {
    x.0.clone()
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Canonical print order: total degree descending, then exponent vector descending.
pub fn print_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0))
}

/// An element of the free left module F_R(Mon) over a fixed presentation.
#[derive(Clone)]
pub struct Poly {
    pid: PresentationId,
    ring: Arc<CoeffRing>,
    n: usize,
    terms: BTreeMap<Monomial, CoeffElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.pid == other.pid && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero_for(p: &Presentation) -> Self {
        Poly { pid: p.id(), ring: p.ring().clone(), n: p.n(), terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        Poly { pid: self.pid, ring: self.ring.clone(), n: self.n, terms: BTreeMap::new() }
    }

    pub fn presentation_id(&self) -> PresentationId {
        self.pid
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CoeffElem {
        self.terms.get(m).cloned().unwrap_or_else(|| CoeffElem::zero(&self.ring))
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: CoeffElem) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// deg(f) = max |α|; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The value if `f` is a constant (degree ≤ 0).
    pub fn constant_value(&self) -> Option<CoeffElem> {
        match self.deg() {
            None => Some(CoeffElem::zero(&self.ring)),
            Some(0) => Some(self.coeff(&Monomial::one(self.n))),
            _ => None,
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.pid == other.pid {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        out
    }

    /// Left scalar multiplication r·f.
    pub fn scalar_mul(&self, r: &CoeffElem) -> Result<Poly> {
        if !same_ring(r.ring(), &self.ring) {
            return Err(Error::RingMismatch(r.ring().to_string(), self.ring.to_string()));
        }
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), r * c);
        }
        Ok(out)
    }

    /// Sum of `c_k · f_k`, all over the same presentation as `self`.
    fn axpy(&mut self, c: &CoeffElem, f: &Poly) {
        for (m, x) in &f.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    /// Canonical text using the given presentation's variable names.
    pub fn display<'a>(&'a self, p: &'a Presentation) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names: p.var_names() }
    }

    pub fn to_text(&self, p: &Presentation) -> String {
        self.display(p).to_string()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        write!(f, "{}", PolyDisplay { poly: self, names: &names })
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| print_order(a.0, b.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = self
                .names
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            // a single-term coefficient carries its own sign; compound ones are parenthesized
            let neg = !c.is_compound() && c.leading_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                if abs.is_compound() && k > 0 {
                    write!(f, "({abs})")?;
                } else {
                    write!(f, "{abs}")?;
                }
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if abs.is_compound() {
                write!(f, "({abs})*{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A presentation together with its product.
pub struct SkewPbw {
    pres: Arc<Presentation>,
    // x_i ⋆ x^β for standard x^β
    var_mono_memo: Mutex<HashMap<(usize, Monomial), Arc<Poly>>>,
}

impl SkewPbw {
    pub fn new(pres: Arc<Presentation>) -> Self {
        SkewPbw { pres, var_mono_memo: Mutex::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        self.pres.ring()
    }

    pub fn n(&self) -> usize {
        self.pres.n()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero_for(&self.pres)
    }

    pub fn one(&self) -> Poly {
        self.constant(CoeffElem::one(self.ring()))
    }

    pub fn constant(&self, r: CoeffElem) -> Poly {
        self.term(r, Monomial::one(self.n()))
    }

    pub fn var(&self, i: usize) -> Poly {
        self.monomial(Monomial::var(self.n(), i))
    }

    pub fn monomial(&self, m: Monomial) -> Poly {
        self.term(CoeffElem::one(self.ring()), m)
    }

    pub fn term(&self, c: CoeffElem, m: Monomial) -> Poly {
        assert_eq!(m.n(), self.n(), "monomial arity");
        let mut p = self.zero();
        p.add_term(m, c);
        p
    }

    fn owns(&self, f: &Poly) -> Result<()> {
        if f.pid == self.pres.id() {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// f ⋆ g
    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.owns(f)?;
        self.owns(g)?;
        let mut out = self.zero();
        for (alpha, r) in &f.terms {
            let prod = self.monomial_times(alpha, g)?;
            out.axpy(r, &prod);
        }
        Ok(out)
    }

    pub fn pow(&self, f: &Poly, e: u32) -> Result<Poly> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// x^α ⋆ g
    pub fn monomial_times(&self, alpha: &Monomial, g: &Poly) -> Result<Poly> {
        let letters: Vec<usize> = alpha.letters().collect();
        let mut acc = g.clone();
        for &i in letters.iter().rev() {
            acc = self.var_times(i, &acc)?;
        }
        Ok(acc)
    }

    /// x_i ⋆ g, pushing x_i through each coefficient first.
    fn var_times(&self, i: usize, g: &Poly) -> Result<Poly> {
        let sigma = self.pres.sigma(i);
        let delta = self.pres.delta(i);
        let mut out = self.zero();
        for (beta, c) in &g.terms {
            let sc = sigma.apply(c);
            if !sc.is_zero() {
                let vm = self.var_mono(i, beta)?;
                out.axpy(&sc, &vm);
            }
            if !delta.is_zero() {
                out.add_term(beta.clone(), delta.apply(c));
            }
        }
        Ok(out)
    }

    /// x_i ⋆ x^β, memoized.
    fn var_mono(&self, i: usize, beta: &Monomial) -> Result<Arc<Poly>> {
        let key = (i, beta.clone());
        if let Some(hit) = self.var_mono_memo.lock().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let result = Arc::new(self.var_mono_uncached(i, beta)?);
        self.var_mono_memo.lock().expect("memo lock").insert(key, result.clone());
        Ok(result)
    }

    fn var_mono_uncached(&self, i: usize, beta: &Monomial) -> Result<Poly> {
        let k = match beta.first_var() {
            Some(k) if k < i => k,
            _ => return Ok(self.monomial(beta.bump(i)?)),
        };
        // x_i x_k x^β' with k < i:  x_i x_k = c x_k x_i + Σ_m a_m x_m + d
        let mut rest = beta.0.clone();
        rest[k] -= 1;
        let rest = Monomial(rest);
        let rel = self.pres.relation(k, i);
        let mut out = self.zero();
        let inner = self.var_mono(i, &rest)?;
        let swapped = self.var_times(k, &inner)?;
        out.axpy(&rel.c, &swapped);
        for (m, a) in rel.a.iter().enumerate() {
            if !a.is_zero() {
                let t = self.var_mono(m, &rest)?;
                out.axpy(a, &t);
            }
        }
        out.add_term(rest, rel.d.clone());
        Ok(out)
    }

    /// σ^α(r) = σ₁^α₁ ∘ ⋯ ∘ σₙ^αₙ (r)
    pub fn sigma_pow(&self, alpha: &Monomial, r: &CoeffElem) -> CoeffElem {
        let mut acc = r.clone();
        for i in (0..self.n()).rev() {
            for _ in 0..alpha.0[i] {
                acc = self.pres.sigma(i).apply(&acc);
            }
        }
        acc
    }

    /// x^α r = r_α x^α + p_{α,r} with deg p_{α,r} < |α|.
    pub fn decompose_var_coeff(&self, alpha: &Monomial, r: &CoeffElem) -> Result<(CoeffElem, Poly)> {
        if r.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        let prod = self.monomial_times(alpha, &self.constant(r.clone()))?;
        let lead = prod.coeff(alpha);
        let mut tail = prod;
        tail.terms.remove(alpha);
        Ok((lead, tail))
    }

    /// x^α x^β = c_{α,β} x^{α+β} + p_{α,β} with c_{α,β} a unit and deg p_{α,β} < |α+β|.
    pub fn monomial_product(&self, alpha: &Monomial, beta: &Monomial) -> Result<(CoeffElem, Poly)> {
        let sum = alpha.mul(beta)?;
        let mut tail = self.monomial_times(alpha, &self.monomial(beta.clone()))?;
        let lead = tail.coeff(&sum);
        tail.terms.remove(&sum);
        if !lead.is_unit() {
            return Err(Error::Internal(format!(
                "leading coefficient {lead} of x^{alpha:?} x^{beta:?} is not a unit"
            )));
        }
        Ok((lead, tail))
    }

    pub fn random_monomial(&self, max_degree: u32, sampler: &mut Sampler) -> Monomial {
        let mut e = vec![0u16; self.n()];
        if self.n() > 0 {
            let d = sampler.gen_range(0..=max_degree);
            for _ in 0..d {
                e[sampler.gen_range(0..self.n())] += 1;
            }
        }
        Monomial(e)
    }

    /// Pseudorandom polynomial with at most three terms of degree ≤ `max_degree`.
    pub fn random_poly(&self, max_degree: u32, coeff_degree: u32, sampler: &mut Sampler) -> Poly {
        let mut p = self.zero();
        let terms = sampler.gen_range(1..=3);
        for _ in 0..terms {
            let m = self.random_monomial(max_degree, sampler);
            p.add_term(m, CoeffElem::random_nonzero(self.ring(), coeff_degree, sampler));
        }
        p
    }
}

impl fmt::Debug for SkewPbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPbw({})", self.pres.name().unwrap_or("?"))
    }
}

/// deg(f), `None` for zero.
pub fn deg(f: &Poly) -> Option<u32> {
    f.deg()
}
