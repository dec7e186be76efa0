//! Extending a coefficient map φ: R → B and images y_1..y_n to a ring
//! homomorphism A → B.
//!
//! The extension exists when, for all i, r and all i < j,
//!
//! ```text
//! (i)  y_i φ(r) = φ(σ_i(r)) y_i + φ(δ_i(r))
//! (ii) y_j y_i  = φ(c_ij) y_i y_j + Σ_k φ(a_ij^(k)) y_k + φ(d_ij)
//! ```
//!
//! and then sends `Σ r x^α` to `Σ φ(r) y_1^α1 ⋯ y_n^αn`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{Monomial, Poly, SkewPbw};
use crate::coeff::{BaseField, CoeffElem, RingMap, Scalar};
use crate::error::{Error, Result};
use crate::expr::{eval, eval_coeff_str, parse, Scope};
use crate::presentation::Presentation;
use crate::rng::Sampler;
use crate::schema::HomSpecDoc;

pub struct HomSpec {
    source: SkewPbw,
    target: SkewPbw,
    phi: RingMap,
    y: Vec<Poly>,
}

impl HomSpec {
    pub fn new(source: Arc<Presentation>, target: Arc<Presentation>, phi: RingMap, y: Vec<Poly>) -> Result<Self> {
        if !crate::coeff::same_ring(phi.source(), source.ring()) || !crate::coeff::same_ring(phi.target(), target.ring()) {
            return Err(Error::Hom("phi must map the source coefficient ring to the target coefficient ring".into()));
        }
        if y.len() != source.n() {
            return Err(Error::Hom(format!("expected {} images y, got {}", source.n(), y.len())));
        }
        if y.iter().any(|p| p.presentation_id() != target.id()) {
            return Err(Error::Hom("images y must be elements of the target".into()));
        }
        Ok(HomSpec { source: SkewPbw::new(source), target: SkewPbw::new(target), phi, y })
    }

    /// Identity spec on `p`: φ = id, y_i = x_i.
    pub fn identity(p: Arc<Presentation>) -> Self {
        let alg = SkewPbw::new(p.clone());
        let y = (0..p.n()).map(|i| alg.var(i)).collect();
        HomSpec::new(p.clone(), p.clone(), RingMap::identity(p.ring()), y).expect("identity spec")
    }

    /// Builds a spec from a JSON document; relative paths resolve against `base_dir`.
    pub fn from_doc(doc: &HomSpecDoc, base_dir: Option<&Path>) -> Result<Self> {
        let source = Arc::new(doc.source.resolve(base_dir)?);
        let target = Arc::new(doc.target.resolve(base_dir)?);
        let (sr, tr) = (source.ring(), target.ring());
        for g in doc.phi.keys() {
            if sr.generator_index(g).is_none() {
                return Err(Error::Hom(format!("phi: `{g}` is not a source coefficient generator")));
            }
        }
        let mut images = vec![];
        for g in sr.generators() {
            let img = match doc.phi.get(&g.name) {
                Some(v) => {
                    let text = match v {
                        crate::schema::Value::Int(k) => k.to_string(),
                        crate::schema::Value::Text(s) => s.clone(),
                    };
                    eval_coeff_str(&text, tr).map_err(|e| Error::Hom(format!("phi[{}]: {e}", g.name)))?
                }
                None => CoeffElem::generator_named(tr, &g.name)
                    .map_err(|_| Error::Hom(format!("phi: no image for `{}`", g.name)))?,
            };
            images.push(img);
        }
        let phi = RingMap::new(sr, tr, images)?;
        let talg = SkewPbw::new(target.clone());
        let y = doc
            .y
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let text = match v {
                    crate::schema::Value::Int(k) => k.to_string(),
                    crate::schema::Value::Text(s) => s.clone(),
                };
                parse(&text, &Scope::of(&target))
                    .and_then(|e| eval(&e, &talg))
                    .map_err(|e| Error::Hom(format!("y[{}]: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        HomSpec::new(source, target, phi, y)
    }

    pub fn source(&self) -> &SkewPbw {
        &self.source
    }

    pub fn target(&self) -> &SkewPbw {
        &self.target
    }

    pub fn phi(&self) -> &RingMap {
        &self.phi
    }

    pub fn y(&self) -> &[Poly] {
        &self.y
    }

    fn phi_poly(&self, r: &CoeffElem) -> Poly {
        self.target.constant(self.phi.apply(r))
    }

    /// Condition (i) for one `i` and `r`.
    pub fn condition_i(&self, i: usize, r: &CoeffElem) -> Result<Option<(Poly, Poly)>> {
        let p = self.source.presentation();
        let t = &self.target;
        let lhs = t.mul(&self.y[i], &self.phi_poly(r))?;
        let rhs = t
            .mul(&self.phi_poly(&p.sigma(i).apply(r)), &self.y[i])?
            .add(&self.phi_poly(&p.delta(i).apply(r)))?;
        Ok((lhs != rhs).then_some((lhs, rhs)))
    }

    /// Condition (ii) for a pair `i < j`.
    pub fn condition_ii(&self, i: usize, j: usize) -> Result<Option<(Poly, Poly)>> {
        let rel = self.source.presentation().relation(i, j);
        let t = &self.target;
        let lhs = t.mul(&self.y[j], &self.y[i])?;
        let mut rhs = t.mul(&self.phi_poly(&rel.c), &t.mul(&self.y[i], &self.y[j])?)?;
        for (k, a) in rel.a.iter().enumerate() {
            if !a.is_zero() {
                rhs = rhs.add(&t.mul(&self.phi_poly(a), &self.y[k])?)?;
            }
        }
        rhs = rhs.add(&self.phi_poly(&rel.d))?;
        Ok((lhs != rhs).then_some((lhs, rhs)))
    }

    /// Checks (i) on generators and random samples and (ii) on every pair.
    pub fn check(&self, samples: usize, seed: u64) -> Result<HomReport> {
        let p = self.source.presentation();
        let tp = self.target.presentation();
        let ring = p.ring();
        let mut rs: Vec<CoeffElem> = vec![CoeffElem::one(ring)];
        rs.extend((0..ring.generators().len()).map(|k| CoeffElem::generator(ring, k)));
        let mut sampler = Sampler::new(seed, "hom/condition-i");
        if !ring.is_field() {
            rs.extend((0..samples).map(|_| CoeffElem::random_nonzero(ring, 3, &mut sampler)));
        }
        let mut items = vec![];
        for i in 0..p.n() {
            for r in &rs {
                let fail = self.condition_i(i, r)?;
                items.push(HomItem {
                    condition: "i".into(),
                    i: i + 1,
                    j: None,
                    r: Some(r.to_string()),
                    pass: fail.is_none(),
                    lhs: fail.as_ref().map(|(l, _)| l.to_text(tp)),
                    rhs: fail.as_ref().map(|(_, r)| r.to_text(tp)),
                });
            }
        }
        for i in 0..p.n() {
            for j in i + 1..p.n() {
                let fail = self.condition_ii(i, j)?;
                items.push(HomItem {
                    condition: "ii".into(),
                    i: i + 1,
                    j: Some(j + 1),
                    r: None,
                    pass: fail.is_none(),
                    lhs: fail.as_ref().map(|(l, _)| l.to_text(tp)),
                    rhs: fail.as_ref().map(|(_, r)| r.to_text(tp)),
                });
            }
        }
        let pass = items.iter().all(|it| it.pass);
        Ok(HomReport { items, pass })
    }

    /// Checks the conditions and, if they hold, returns the extension.
    #[allow(clippy::result_large_err)]
    pub fn verify(self, samples: usize, seed: u64) -> std::result::Result<VerifiedHom, (Self, HomReport)> {
        match self.check(samples, seed) {
            Ok(report) if report.pass => Ok(VerifiedHom { spec: self, report, powers: Mutex::new(HashMap::new()) }),
            Ok(report) => Err((self, report)),
            Err(e) => {
                let report = HomReport {
                    items: vec![HomItem {
                        condition: "eval".into(),
                        i: 0,
                        j: None,
                        r: None,
                        pass: false,
                        lhs: Some(e.to_string()),
                        rhs: None,
                    }],
                    pass: false,
                };
                Err((self, report))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomItem {
    pub condition: String,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub items: Vec<HomItem>,
    pub pass: bool,
}

impl std::fmt::Display for HomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n_i = self.items.iter().filter(|it| it.condition == "i").count();
        let n_ii = self.items.iter().filter(|it| it.condition == "ii").count();
        writeln!(f, "condition (i): {n_i} items; condition (ii): {n_ii} pairs")?;
        for it in self.items.iter().filter(|it| !it.pass) {
            let at = match (&it.r, it.j) {
                (Some(r), _) => format!("i={}, r={r}", it.i),
                (None, Some(j)) => format!("i={}, j={j}", it.i),
                _ => String::new(),
            };
            writeln!(
                f,
                "  FAIL ({}) {at}: {} != {}",
                it.condition,
                it.lhs.as_deref().unwrap_or(""),
                it.rhs.as_deref().unwrap_or("")
            )?;
        }
        write!(f, "overall: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// A spec whose conditions have been checked.
pub struct VerifiedHom {
    spec: HomSpec,
    report: HomReport,
    powers: Mutex<HashMap<(usize, u16), Arc<Poly>>>,
}

impl VerifiedHom {
    pub fn spec(&self) -> &HomSpec {
        &self.spec
    }

    pub fn report(&self) -> &HomReport {
        &self.report
    }

    fn y_pow(&self, i: usize, e: u16) -> Result<Arc<Poly>> {
        if let Some(hit) = self.powers.lock().expect("lock").get(&(i, e)) {
            return Ok(hit.clone());
        }
        let t = &self.spec.target;
        let v = if e == 0 { t.one() } else { t.mul(&*self.y_pow(i, e - 1)?, &self.spec.y[i])? };
        let v = Arc::new(v);
        self.powers.lock().expect("lock").insert((i, e), v.clone());
        Ok(v)
    }

    /// y^α = y_1^α1 ⋆ ⋯ ⋆ y_n^αn
    pub fn image_monomial(&self, alpha: &Monomial) -> Result<Poly> {
        let t = &self.spec.target;
        let mut acc = t.one();
        for (i, &e) in alpha.exponents().iter().enumerate() {
            if e > 0 {
                acc = t.mul(&acc, &*self.y_pow(i, e)?)?;
            }
        }
        Ok(acc)
    }

    pub fn extend(&self, f: &Poly) -> Result<Poly> {
        if f.presentation_id() != self.spec.source.presentation().id() {
            return Err(Error::PresentationMismatch);
        }
        let mut out = self.spec.target.zero();
        for (alpha, r) in f.terms() {
            let img = self.image_monomial(alpha)?.scalar_mul(&self.spec.phi.apply(r))?;
            out = out.add(&img)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn round_trip_on(
    there: &VerifiedHom,
    back: &VerifiedHom,
    samples: usize,
    sampler: &mut Sampler,
) -> Result<Option<String>> {
    let a = there.spec.source();
    let p = a.presentation();
    let ring = p.ring();
    let mut probes: Vec<Poly> = (0..p.n()).map(|i| a.var(i)).collect();
    probes.extend((0..ring.generators().len()).map(|k| a.constant(CoeffElem::generator(ring, k))));
    probes.extend((0..samples).map(|_| a.random_poly(3, 2, sampler)));
    for f in probes {
        let g = back.extend(&there.extend(&f)?)?;
        if g != f {
            return Ok(Some(format!("{} maps back to {}", f.to_text(p), g.to_text(p))));
        }
    }
    Ok(None)
}

/// Checks both composites are identities on generators and random elements.
pub fn verify_mutual_inverse(s: &VerifiedHom, back: &VerifiedHom, samples: usize, seed: u64) -> Result<RoundTrip> {
    let (sp, tp) = (s.spec.source.presentation(), s.spec.target.presentation());
    if back.spec.source.presentation().id() != tp.id() || back.spec.target.presentation().id() != sp.id() {
        return Err(Error::Hom("specs do not go in opposite directions".into()));
    }
    let mut sampler = Sampler::new(seed, "hom/round-trip");
    if let Some(w) = round_trip_on(s, back, samples, &mut sampler)? {
        return Ok(RoundTrip { pass: false, witness: Some(w) });
    }
    if let Some(w) = round_trip_on(back, s, samples, &mut sampler)? {
        return Ok(RoundTrip { pass: false, witness: Some(w) });
    }
    Ok(RoundTrip { pass: true, witness: None })
}

fn specialize(c: &CoeffElem, point: &[Scalar]) -> Scalar {
    let field = c.ring().field();
    let mut acc = field.zero();
    for (exps, s) in c.terms() {
        let mut t = s.clone();
        for (e, v) in exps.iter().zip(point) {
            let base = if *e < 0 { field.inv(v).expect("nonzero point") } else { v.clone() };
            for _ in 0..e.unsigned_abs() {
                t = field.mul(&t, &base);
            }
        }
        acc = field.add(&acc, &t);
    }
    acc
}

fn rank(field: BaseField, mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&k| !field.is_zero(&rows[k][c])) else { continue };
        rows.swap(r, pivot);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !field.is_zero(&row[c]) {
                let factor = field.mul(&row[c], &inv);
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = field.add(x, &field.neg(&field.mul(&factor, p)));
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the coefficient matrix of {y^α : |α| ≤ degree} after specializing
/// the coefficient generators at a random point. Full rank at one point
/// implies linear independence over R. Returns (rank, number of monomials).
pub fn basis_image_rank(h: &VerifiedHom, degree: u32, seed: u64) -> Result<(usize, usize)> {
    let src = h.spec.source();
    let ring = h.spec.target().ring().clone();
    let field = ring.field();
    let mut sampler = Sampler::new(seed, "hom/basis-rank");
    let point: Vec<Scalar> = ring
        .generators()
        .iter()
        .map(|_| loop {
            let v = match field {
                BaseField::Rationals => Scalar::Rat(BigRational::new(
                    sampler.gen_range(-97i64..=97).into(),
                    sampler.gen_range(1i64..=13).into(),
                )),
                BaseField::Prime(p) => Scalar::Mod(sampler.gen_range(0..p)),
            };
            if !field.is_zero(&v) {
                break v;
            }
        })
        .collect();
    let mut monos = vec![];
    let n = src.n();
    let mut stack = vec![(vec![0u32; n], 0usize, 0u32)];
    while let Some((exps, pos, deg)) = stack.pop() {
        if pos == n {
            monos.push(Monomial::from_exponents(&exps)?);
            continue;
        }
        for e in 0..=(degree - deg) {
            let mut next = exps.clone();
            next[pos] = e;
            stack.push((next, pos + 1, deg + e));
        }
    }
    let images = monos.iter().map(|m| h.image_monomial(m)).collect::<Result<Vec<_>>>()?;
    let mut columns: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    columns.sort();
    columns.dedup();
    let rows = images
        .iter()
        .map(|p| columns.iter().map(|m| specialize(&p.coeff(m), &point)).collect())
        .collect();
    Ok((rank(field, rows), monos.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_spec_round_trips() {
        let p = Arc::new(catalog::quantum_plane());
        let h = HomSpec::identity(p.clone()).verify(8, 1).ok().unwrap();
        let back = HomSpec::identity(p).verify(8, 1).ok().unwrap();
        assert!(verify_mutual_inverse(&h, &back, 16, 3).unwrap().pass);
        assert_eq!(basis_image_rank(&h, 3, 0).unwrap(), (10, 10));
    }

    #[test]
    fn heisenberg_to_weyl() {
        let src = Arc::new(catalog::get("u_heisenberg", &Default::default()).unwrap());
        let tgt = Arc::new(catalog::weyl(1).unwrap());
        let w = SkewPbw::new(tgt.clone());
        let y = vec![w.var(0), w.var(1), w.one()];
        let spec = HomSpec::new(src.clone(), tgt.clone(), RingMap::identity(src.ring()), y).unwrap();
        let h = spec.verify(4, 0).ok().expect("conditions hold");
        let f = SkewPbw::new(src.clone()).var(0);
        assert_eq!(h.extend(&f).unwrap(), w.var(0));
        // the source monomial x1*x2 (q p) goes to x1 ⋆ x2
        let qp = SkewPbw::new(src.clone()).monomial(Monomial::new(vec![1, 1, 0]));
        assert_eq!(h.extend(&qp).unwrap().to_text(&tgt), "x1*x2");
        let two = w.constant(CoeffElem::from_i64(w.ring(), 2));
        let bad = HomSpec::new(src.clone(), tgt, RingMap::identity(src.ring()), vec![w.var(0), w.var(1), two]).unwrap();
        let (_, report) = bad.verify(4, 0).err().expect("y_z = 2 breaks (ii)");
        assert!(report.items.iter().any(|it| !it.pass && it.condition == "ii" && it.i == 1 && it.j == Some(2)));
    }
}
