use std::fmt;
use std::sync::Arc;

use super::{same_ring, CoeffElem, CoeffRing};
use crate::error::{Error, Result};

/// A ring homomorphism between coefficient rings, determined by generator images.
///
/// Prime-field scalars are fixed; invertible generators must map to units.
#[derive(Clone)]
pub struct RingMap {
    source: Arc<CoeffRing>,
    target: Arc<CoeffRing>,
    images: Vec<CoeffElem>,
    identity: bool,
}

impl RingMap {
    pub fn new(
        source: &Arc<CoeffRing>,
        target: &Arc<CoeffRing>,
        images: Vec<CoeffElem>,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::InvalidMap(format!(
                "base fields differ: {} vs {}",
                source.field(),
                target.field()
            )));
        }
        if images.len() != source.generators().len() {
            return Err(Error::InvalidMap(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                images.len()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if !same_ring(img.ring(), target) {
                return Err(Error::InvalidMap(format!("image of `{}` is not in {target}", g.name)));
            }
            if g.invertible && !img.is_unit() {
                return Err(Error::InvalidMap(format!(
                    "`{}` is invertible but its image {img} is not a unit",
                    g.name
                )));
            }
        }
        let identity = same_ring(source, target)
            && images
                .iter()
                .enumerate()
                .all(|(k, img)| *img == CoeffElem::generator(source, k));
        Ok(RingMap { source: source.clone(), target: target.clone(), images, identity })
    }

    pub fn identity(ring: &Arc<CoeffRing>) -> Self {
        let images = (0..ring.generators().len()).map(|k| CoeffElem::generator(ring, k)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images, identity: true }
    }

    /// Endomorphism from images given by generator name; missing names map to themselves.
    pub fn from_named(
        ring: &Arc<CoeffRing>,
        named: impl IntoIterator<Item = (String, CoeffElem)>,
    ) -> Result<Self> {
        let mut images: Vec<CoeffElem> =
            (0..ring.generators().len()).map(|k| CoeffElem::generator(ring, k)).collect();
        for (name, img) in named {
            let k = ring
                .generator_index(&name)
                .ok_or_else(|| Error::InvalidMap(format!("unknown generator `{name}`")))?;
            images[k] = img;
        }
        Self::new(ring, ring, images)
    }

    pub fn source(&self) -> &Arc<CoeffRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CoeffRing> {
        &self.target
    }

    pub fn images(&self) -> &[CoeffElem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn apply(&self, r: &CoeffElem) -> CoeffElem {
        assert!(same_ring(r.ring(), &self.source), "element of {} given to map on {}", r.ring(), self.source);
        if self.identity {
            return r.clone();
        }
        let mut acc = CoeffElem::zero(&self.target);
        for (e, c) in r.terms() {
            let mut term = CoeffElem::from_scalar(&self.target, c.clone());
            for (img, &x) in self.images.iter().zip(e) {
                if x != 0 {
                    term = &term * &img.pow(x as i64).expect("invertible generators map to units");
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn try_apply(&self, r: &CoeffElem) -> Result<CoeffElem> {
        if !same_ring(r.ring(), &self.source) {
            return Err(Error::RingMismatch(r.ring().to_string(), self.source.to_string()));
        }
        Ok(self.apply(r))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingMap) -> Result<RingMap> {
        if !same_ring(other.target(), &self.source) {
            return Err(Error::RingMismatch(other.target.to_string(), self.source.to_string()));
        }
        let images = other.images.iter().map(|img| self.apply(img)).collect();
        RingMap::new(&other.source, &self.target, images)
    }

    /// True when every generator goes to a unit multiple of a distinct generator,
    /// which makes the map injective (and nonzero on nonzero elements).
    pub fn is_monomial_permutation(&self) -> bool {
        if !same_ring(&self.source, &self.target) {
            return false;
        }
        let mut hit = vec![false; self.images.len()];
        for img in &self.images {
            let [(e, _)] = img.terms() else { return false };
            let nz: Vec<usize> = (0..e.len()).filter(|&k| e[k] != 0).collect();
            let [k] = nz.as_slice() else { return false };
            let inv = self.source.generators()[*k].invertible;
            if hit[*k] || !(e[*k] == 1 || (inv && e[*k] == -1)) {
                return false;
            }
            hit[*k] = true;
        }
        true
    }
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| format!("{} -> {img}", g.name))
            .collect();
        write!(f, "RingMap{{{}}}", parts.join(", "))
    }
}

/// A σ-derivation of a coefficient ring: additive, δ(rs) = σ(r)δ(s) + δ(r)s.
///
/// The extension from generator images processes each monomial left to right
/// in generator order; when the images are incompatible with commutativity
/// the result is still a well-defined additive map, but the twisted Leibniz
/// law fails and the consistency checker reports it.
#[derive(Clone)]
pub struct SigmaDerivation {
    twist: RingMap,
    images: Vec<CoeffElem>,
    zero: bool,
}

impl SigmaDerivation {
    pub fn new(twist: RingMap, images: Vec<CoeffElem>) -> Result<Self> {
        let ring = twist.source().clone();
        if !same_ring(twist.target(), &ring) {
            return Err(Error::InvalidMap("the twist of a σ-derivation must be an endomorphism".into()));
        }
        if images.len() != ring.generators().len() {
            return Err(Error::InvalidMap(format!(
                "expected {} derivation images, got {}",
                ring.generators().len(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|img| !same_ring(img.ring(), &ring)) {
            return Err(Error::InvalidMap(format!("derivation image {bad} is not in {ring}")));
        }
        let zero = images.iter().all(CoeffElem::is_zero);
        Ok(SigmaDerivation { twist, images, zero })
    }

    pub fn zero(twist: RingMap) -> Self {
        let ring = twist.source().clone();
        let images = vec![CoeffElem::zero(&ring); ring.generators().len()];
        SigmaDerivation { twist, images, zero: true }
    }

    pub fn from_named(
        twist: RingMap,
        named: impl IntoIterator<Item = (String, CoeffElem)>,
    ) -> Result<Self> {
        let ring = twist.source().clone();
        let mut images = vec![CoeffElem::zero(&ring); ring.generators().len()];
        for (name, img) in named {
            let k = ring
                .generator_index(&name)
                .ok_or_else(|| Error::InvalidMap(format!("unknown generator `{name}`")))?;
            images[k] = img;
        }
        Self::new(twist, images)
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        self.twist.source()
    }

    pub fn twist(&self) -> &RingMap {
        &self.twist
    }

    pub fn images(&self) -> &[CoeffElem] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn apply(&self, r: &CoeffElem) -> CoeffElem {
        let ring = self.ring();
        assert!(same_ring(r.ring(), ring), "element of {} given to derivation on {ring}", r.ring());
        if self.zero {
            return CoeffElem::zero(ring);
        }
        let mut acc = CoeffElem::zero(ring);
        for (e, c) in r.terms() {
            acc = &acc + &self.on_monomial(e).scale(c);
        }
        acc
    }

    pub fn try_apply(&self, r: &CoeffElem) -> Result<CoeffElem> {
        if !same_ring(r.ring(), self.ring()) {
            return Err(Error::RingMismatch(r.ring().to_string(), self.ring().to_string()));
        }
        Ok(self.apply(r))
    }

    fn on_monomial(&self, e: &[i32]) -> CoeffElem {
        let ring = self.ring();
        // running σ(u), δ(u) for the processed prefix u
        let mut su = CoeffElem::one(ring);
        let mut du = CoeffElem::zero(ring);
        for (k, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let g = CoeffElem::generator(ring, k);
            let (f, sf, df) = if x > 0 {
                (g, self.twist.images()[k].clone(), self.images[k].clone())
            } else {
                // δ(g⁻¹) = -σ(g)⁻¹ δ(g) g⁻¹
                let ginv = g.unit_inverse().expect("negative exponent on a unit");
                let sginv = self.twist.images()[k].unit_inverse().expect("units map to units");
                let d = -&(&(&sginv * &self.images[k]) * &ginv);
                (ginv, sginv, d)
            };
            for _ in 0..x.unsigned_abs() {
                du = &(&su * &df) + &(&du * &f);
                su = &su * &sf;
            }
        }
        du
    }
}

impl fmt::Debug for SigmaDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring()
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| format!("{} -> {img}", g.name))
            .collect();
        write!(f, "SigmaDerivation{{{}; twist {:?}}}", parts.join(", "), self.twist)
    }
}

#[cfg(test)]
mod tests {
    use super::super::RingKind;
    use super::*;

    fn qlt() -> Arc<CoeffRing> {
        CoeffRing::new(RingKind::Poly {
            base: Box::new(RingKind::Laurent { base: Box::new(RingKind::Rationals), var: "q".into() }),
            vars: vec!["t".into()],
        })
        .unwrap()
    }

    #[test]
    fn twisted_endomorphism_on_monomial() {
        let r = qlt();
        let q = CoeffElem::generator(&r, 0);
        let t = CoeffElem::generator(&r, 1);
        let sigma = RingMap::from_named(&r, [("t".to_string(), &q * &t)]).unwrap();
        let t2 = &t * &t;
        assert_eq!(sigma.apply(&t2), &(&q * &q) * &t2);
        assert!(!sigma.is_monomial_permutation());
    }

    #[test]
    fn ordinary_derivative() {
        let r = CoeffRing::polynomial(RingKind::Rationals, &["t"]).unwrap();
        let t = CoeffElem::generator(&r, 0);
        let d = SigmaDerivation::from_named(RingMap::identity(&r), [("t".into(), CoeffElem::one(&r))])
            .unwrap();
        let t3 = t.pow(3).unwrap();
        assert_eq!(d.apply(&t3), (&t * &t).scale(&r.field().from_i64(3)));
        assert!(d.apply(&CoeffElem::one(&r)).is_zero());
    }

    #[test]
    fn derivation_of_inverse_generator() {
        let r = CoeffRing::laurent(RingKind::Rationals, "q").unwrap();
        let q = CoeffElem::generator(&r, 0);
        let d = SigmaDerivation::from_named(RingMap::identity(&r), [("q".into(), CoeffElem::one(&r))])
            .unwrap();
        // d/dq q^-1 = -q^-2
        let qi = q.unit_inverse().unwrap();
        assert_eq!(d.apply(&qi), -&q.pow(-2).unwrap());
    }

    #[test]
    fn laurent_generator_needs_unit_image() {
        let r = qlt();
        let t = CoeffElem::generator(&r, 1);
        assert!(RingMap::from_named(&r, [("q".to_string(), t)]).is_err());
    }

    #[test]
    fn monomial_permutation_detection() {
        let r = CoeffRing::polynomial(RingKind::Rationals, &["s", "t"]).unwrap();
        let s = CoeffElem::generator(&r, 0);
        let t = CoeffElem::generator(&r, 1);
        let swap = RingMap::new(&r, &r, vec![t.clone(), s.clone()]).unwrap();
        assert!(swap.is_monomial_permutation());
        let collapse = RingMap::new(&r, &r, vec![s.clone(), s.clone()]).unwrap();
        assert!(!collapse.is_monomial_permutation());
        assert!(RingMap::identity(&r).is_identity());
    }
}
