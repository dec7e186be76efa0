//! Parameter systems (σᵢ, δᵢ, c_ij, d_ij, a_ij^(k)) defining candidate skew PBW extensions.
//!
//! A presentation stores the relations
//!
//! ```text
//! x_i r   = σ_i(r) x_i + δ_i(r)
//! x_j x_i = c_ij x_i x_j + Σ_k a_ij^(k) x_k + d_ij        (i < j)
//! ```
//!
//! Structural validity (names, arities, rings) is enforced on construction.
//! The mathematical conditions for the relations to define a ring are checked
//! separately by [`check`].

pub mod check;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::coeff::{same_ring, CoeffElem, CoeffRing, RingMap, SigmaDerivation};
use crate::error::{Error, Result};

pub use check::{check_all, check_condition2, check_condition3, validate_structure, ConsistencyReport};

/// Content hash of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresentationId(pub u64);

impl fmt::Display for PresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

/// Right-hand side data of `x_j x_i` for a stored pair `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub c: CoeffElem,
    pub d: CoeffElem,
    pub a: Vec<CoeffElem>,
}

impl Relation {
    pub fn commuting(ring: &Arc<CoeffRing>, n: usize) -> Self {
        Relation {
            c: CoeffElem::one(ring),
            d: CoeffElem::zero(ring),
            a: vec![CoeffElem::zero(ring); n],
        }
    }
}

#[derive(Clone)]
pub struct Presentation {
    name: Option<String>,
    ring: Arc<CoeffRing>,
    var_names: Vec<String>,
    sigma: Vec<RingMap>,
    delta: Vec<SigmaDerivation>,
    relations: Vec<Relation>,
    id: PresentationId,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs ordered (0,1),(0,2),..,(0,n-1),(1,2),..
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Presentation {
    pub fn builder(ring: &Arc<CoeffRing>, var_names: &[&str]) -> PresentationBuilder {
        PresentationBuilder::new(ring, var_names.iter().map(|s| s.to_string()).collect())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn sigma(&self, i: usize) -> &RingMap {
        &self.sigma[i]
    }

    pub fn delta(&self, i: usize) -> &SigmaDerivation {
        &self.delta[i]
    }

    /// Stored relation for `x_j x_i` with `i < j`.
    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        assert!(i < j && j < self.n(), "relation ({i},{j}) is not a stored pair");
        &self.relations[pair_index(self.n(), i, j)]
    }

    pub fn id(&self) -> PresentationId {
        self.id
    }

    /// Parameters of `x_i x_j = c_ji x_j x_i + Σ a_ji^(k) x_k + d_ji` for `i < j`:
    /// `c_ji = c_ij⁻¹`, `a_ji^(k) = -c_ji a_ij^(k)`, `d_ji = -c_ji d_ij`.
    pub fn derived_params(&self, j: usize, i: usize) -> Result<Relation> {
        if i >= j || j >= self.n() {
            return Err(Error::InvalidPresentation(format!("({j},{i}) is not a pair with j > i")));
        }
        let rel = self.relation(i, j);
        let c = rel.c.unit_inverse()?;
        let minus_c = -&c;
        Ok(Relation {
            d: &minus_c * &rel.d,
            a: rel.a.iter().map(|a| &minus_c * a).collect(),
            c,
        })
    }

    /// Same ring, same variables, relations replaced by the given closure's output.
    pub fn with_relations(
        &self,
        mut f: impl FnMut(usize, usize, &Relation) -> Relation,
    ) -> Result<Presentation> {
        let mut b = PresentationBuilder::from_presentation(self);
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                b.relations[pair_index(self.n(), i, j)] = f(i, j, self.relation(i, j));
            }
        }
        b.build()
    }

    /// Canonical text used for the content hash.
    fn canonical_text(&self) -> String {
        let mut s = format!("ring {}\nvars {}\n", self.ring.kind(), self.var_names.join(" "));
        for i in 0..self.n() {
            s += &format!("sigma{i} {:?}\ndelta{i} {:?}\n", self.sigma[i].images(), self.delta[i].images());
        }
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let r = self.relation(i, j);
                s += &format!("rel {i} {j} c {} d {} a {:?}\n", r.c, r.d, r.a);
            }
        }
        s
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation {}{}:\n{}", self.name.as_deref().unwrap_or(""), self.id, self.canonical_text())
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.canonical_text() == other.canonical_text()
    }
}

pub struct PresentationBuilder {
    name: Option<String>,
    ring: Arc<CoeffRing>,
    var_names: Vec<String>,
    sigma: Vec<RingMap>,
    delta_images: Vec<Vec<CoeffElem>>,
    relations: Vec<Relation>,
}

impl PresentationBuilder {
    pub fn new(ring: &Arc<CoeffRing>, var_names: Vec<String>) -> Self {
        let n = var_names.len();
        let g = ring.generators().len();
        PresentationBuilder {
            name: None,
            ring: ring.clone(),
            sigma: vec![RingMap::identity(ring); n],
            delta_images: vec![vec![CoeffElem::zero(ring); g]; n],
            relations: vec![Relation::commuting(ring, n); n * n.saturating_sub(1) / 2],
            var_names,
        }
    }

    fn from_presentation(p: &Presentation) -> Self {
        PresentationBuilder {
            name: p.name.clone(),
            ring: p.ring.clone(),
            var_names: p.var_names.clone(),
            sigma: p.sigma.clone(),
            delta_images: p.delta.iter().map(|d| d.images().to_vec()).collect(),
            relations: p.relations.clone(),
        }
    }

    pub fn name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn sigma(mut self, i: usize, map: RingMap) -> Self {
        self.sigma[i] = map;
        self
    }

    /// Generator images of δ_i, in generator order.
    pub fn delta(mut self, i: usize, images: Vec<CoeffElem>) -> Self {
        self.delta_images[i] = images;
        self
    }

    /// `x_j x_i = c x_i x_j + Σ a[k] x_k + d` for `i < j`.
    pub fn relation(mut self, i: usize, j: usize, c: CoeffElem, d: CoeffElem, a: Vec<CoeffElem>) -> Self {
        let n = self.var_names.len();
        self.relations[pair_index(n, i, j)] = Relation { c, d, a };
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let n = self.var_names.len();
        let invalid = |m: String| Err(Error::InvalidPresentation(m));
        let mut seen = HashSet::new();
        for v in &self.var_names {
            let ok = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return invalid(format!("bad variable name `{v}`"));
            }
            if !seen.insert(v.as_str()) {
                return invalid(format!("duplicate variable `{v}`"));
            }
            if self.ring.generator_index(v).is_some() {
                return invalid(format!("variable `{v}` clashes with a coefficient generator"));
            }
        }
        let mut delta = Vec::with_capacity(n);
        for (i, (s, imgs)) in self.sigma.iter().zip(self.delta_images).enumerate() {
            if !same_ring(s.source(), &self.ring) || !same_ring(s.target(), &self.ring) {
                return invalid(format!("sigma{} is not an endomorphism of {}", i + 1, self.ring));
            }
            delta.push(SigmaDerivation::new(s.clone(), imgs)?);
        }
        for (k, rel) in self.relations.iter().enumerate() {
            let elems = std::iter::once(&rel.c).chain(std::iter::once(&rel.d)).chain(&rel.a);
            if rel.a.len() != n {
                return invalid(format!("relation #{k}: expected {n} linear coefficients"));
            }
            if let Some(bad) = elems.into_iter().find(|e| !same_ring(e.ring(), &self.ring)) {
                return invalid(format!("relation #{k}: {bad} is not in {}", self.ring));
            }
        }
        let mut p = Presentation {
            name: self.name,
            ring: self.ring,
            var_names: self.var_names,
            sigma: self.sigma,
            delta,
            relations: self.relations,
            id: PresentationId(0),
        };
        let digest = Sha256::digest(p.canonical_text().as_bytes());
        p.id = PresentationId(u64::from_be_bytes(digest[..8].try_into().expect("8 bytes")));
        Ok(p)
    }
}
