//! Built-in presentations and the Lie-algebra presentation constructor.
//!
//! All catalog algebras name their variables `x1..xn`. Diffusion algebras and
//! quantum matrices use the usual presentations from the literature.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::coeff::{same_ring, CoeffElem, CoeffRing, RingKind, RingMap};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rng::Sampler;

/// Brackets `[x_j, x_i] = Σ_k a_ij^(k) x_k` for `i < j`, over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    ring: Arc<CoeffRing>,
    n: usize,
    // pair (i, j), i < j, in row-major order
    a: Vec<Vec<CoeffElem>>,
}

fn pair(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl StructureConstants {
    /// The abelian Lie algebra of dimension `n`.
    pub fn abelian(ring: &Arc<CoeffRing>, n: usize) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::InvalidPresentation(format!("structure constants need a field, not {ring}")));
        }
        Ok(StructureConstants {
            ring: ring.clone(),
            n,
            a: vec![vec![CoeffElem::zero(ring); n]; n * n.saturating_sub(1) / 2],
        })
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `[x_u, x_v] = Σ coeffs[k] x_k` (0-based, `u != v`); `[x_v, x_u]` follows by antisymmetry.
    pub fn set_bracket(&mut self, u: usize, v: usize, coeffs: Vec<CoeffElem>) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::InvalidPresentation(format!("bracket [x{}, x{}] cannot be set", u + 1, v + 1)));
        }
        if coeffs.len() != self.n || coeffs.iter().any(|c| !same_ring(c.ring(), &self.ring)) {
            return Err(Error::InvalidPresentation("bracket needs n coefficients in the field".into()));
        }
        let (i, j, val) = if v < u {
            (v, u, coeffs)
        } else {
            (u, v, coeffs.iter().map(|c| -c).collect())
        };
        let k = pair(self.n, i, j);
        self.a[k] = val;
        Ok(())
    }

    /// Shorthand for integer brackets.
    pub fn with(mut self, u: usize, v: usize, coeffs: &[i64]) -> Result<Self> {
        let c = coeffs.iter().map(|&x| CoeffElem::from_i64(&self.ring, x)).collect();
        self.set_bracket(u, v, c)?;
        Ok(self)
    }

    /// The stored `a_ij` for `i < j`, i.e. the coefficients of `[x_j, x_i]`.
    pub fn a(&self, i: usize, j: usize) -> &[CoeffElem] {
        &self.a[pair(self.n, i, j)]
    }

    /// `[x_u, x_v]` as a coefficient vector, for any `u`, `v`.
    pub fn bracket(&self, u: usize, v: usize) -> Vec<CoeffElem> {
        match u.cmp(&v) {
            std::cmp::Ordering::Equal => vec![CoeffElem::zero(&self.ring); self.n],
            std::cmp::Ordering::Greater => self.a(v, u).to_vec(),
            std::cmp::Ordering::Less => self.a(u, v).iter().map(|c| -c).collect(),
        }
    }

    /// Bilinear extension of the bracket to coefficient vectors.
    pub fn bracket_vec(&self, f: &[CoeffElem], g: &[CoeffElem]) -> Vec<CoeffElem> {
        let mut out = vec![CoeffElem::zero(&self.ring); self.n];
        for (u, fu) in f.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, gv) in g.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = fu * gv;
                for (k, b) in self.bracket(u, v).iter().enumerate() {
                    out[k] = &out[k] + &(&w * b);
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<CoeffElem> {
        (0..self.n)
            .map(|k| if k == i { CoeffElem::one(&self.ring) } else { CoeffElem::zero(&self.ring) })
            .collect()
    }

    /// `[[x_j,x_i],x_k] + [x_j,[x_k,x_i]] + [[x_k,x_j],x_i]`, by direct expansion.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<CoeffElem> {
        let (xi, xj, xk) = (self.unit_vec(i), self.unit_vec(j), self.unit_vec(k));
        let t1 = self.bracket_vec(&self.bracket_vec(&xj, &xi), &xk);
        let t2 = self.bracket_vec(&xj, &self.bracket_vec(&xk, &xi));
        let t3 = self.bracket_vec(&self.bracket_vec(&xk, &xj), &xi);
        (0..self.n).map(|m| &(&t1[m] + &t2[m]) + &t3[m]).collect()
    }

    /// Triples `i < j < k` (0-based) with a nonzero Jacobiator.
    pub fn non_jacobi_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    if self.jacobiator(i, j, k).iter().any(|c| !c.is_zero()) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Adds a random small integer to one random structure constant.
    pub fn perturbed(&self, sampler: &mut Sampler) -> Self {
        let mut out = self.clone();
        if out.a.is_empty() {
            return out;
        }
        let p = sampler.gen_range(0..out.a.len());
        let k = sampler.gen_range(0..out.n);
        let mut delta = sampler.gen_range(-3i64..=2);
        if delta >= 0 {
            delta += 1;
        }
        out.a[p][k] = &out.a[p][k] + &CoeffElem::from_i64(&out.ring, delta);
        out
    }
}

fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn builder(ring: &Arc<CoeffRing>, n: usize) -> crate::presentation::PresentationBuilder {
    crate::presentation::PresentationBuilder::new(ring, var_names(n))
}

/// σ = id, δ = 0, c = 1, d = 0 and a given by the structure constants.
pub fn lie_presentation(sc: &StructureConstants) -> Presentation {
    lie_named(sc, None)
}

fn lie_named(sc: &StructureConstants, name: Option<&str>) -> Presentation {
    let ring = &sc.ring;
    let mut b = builder(ring, sc.n);
    if let Some(name) = name {
        b = b.name(name);
    }
    for i in 0..sc.n {
        for j in i + 1..sc.n {
            b = b.relation(i, j, CoeffElem::one(ring), CoeffElem::zero(ring), sc.a(i, j).to_vec());
        }
    }
    b.build().expect("Lie presentations are structurally valid")
}

/// sl2 with basis (e, f, h) = (x1, x2, x3).
pub fn sl2(ring: &Arc<CoeffRing>) -> StructureConstants {
    StructureConstants::abelian(ring, 3)
        .and_then(|s| s.with(0, 1, &[0, 0, 1]))
        .and_then(|s| s.with(2, 0, &[2, 0, 0]))
        .and_then(|s| s.with(2, 1, &[0, -2, 0]))
        .expect("sl2")
}

/// Heisenberg algebra with basis (q, p, z) = (x1, x2, x3), `[p, q] = z`.
pub fn heisenberg(ring: &Arc<CoeffRing>) -> StructureConstants {
    StructureConstants::abelian(ring, 3)
        .and_then(|s| s.with(1, 0, &[0, 0, 1]))
        .expect("heisenberg")
}

pub fn so3(ring: &Arc<CoeffRing>) -> StructureConstants {
    StructureConstants::abelian(ring, 3)
        .and_then(|s| s.with(0, 1, &[0, 0, 1]))
        .and_then(|s| s.with(1, 2, &[1, 0, 0]))
        .and_then(|s| s.with(2, 0, &[0, 1, 0]))
        .expect("so3")
}

/// Weyl algebra A_n: variables t_1..t_n, ∂_1..∂_n as x1..x2n with `∂_i t_i = t_i ∂_i + 1`.
pub fn weyl(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::CatalogParams { name: "weyl".into(), msg: "n must be positive".into() });
    }
    let ring = CoeffRing::rationals();
    let one = CoeffElem::one(&ring);
    let mut b = builder(&ring, 2 * n).name(&format!("weyl{n}"));
    for i in 0..n {
        b = b.relation(i, n + i, one.clone(), one.clone(), vec![CoeffElem::zero(&ring); 2 * n]);
    }
    b.build()
}

/// `x2 x1 = q x1 x2` over Q[q, q⁻¹].
pub fn quantum_plane() -> Presentation {
    let ring = CoeffRing::laurent(RingKind::Rationals, "q").expect("ring");
    let q = CoeffElem::generator(&ring, 0);
    builder(&ring, 2)
        .name("quantum_plane")
        .relation(0, 1, q, CoeffElem::zero(&ring), vec![CoeffElem::zero(&ring); 2])
        .build()
        .expect("quantum plane")
}

/// Quantum 2×2 matrices with `b`, `c` in the coefficients: R = Q[q^±1][b, c],
/// x1 = a, x2 = d, `a b = q b a`, `a c = q c a`, `b d = q d b`, `c d = q d c`,
/// `d a = a d − (q − q⁻¹) b c`.
pub fn quantum_matrices2() -> Presentation {
    let base = RingKind::Laurent { base: Box::new(RingKind::Rationals), var: "q".into() };
    let ring = CoeffRing::polynomial(base, &["b", "c"]).expect("ring");
    let q = CoeffElem::generator_named(&ring, "q").expect("q");
    let qi = q.unit_inverse().expect("unit");
    let b = CoeffElem::generator_named(&ring, "b").expect("b");
    let c = CoeffElem::generator_named(&ring, "c").expect("c");
    let sa = RingMap::from_named(&ring, [("b".to_string(), &q * &b), ("c".to_string(), &q * &c)]).expect("sigma_a");
    let sd = RingMap::from_named(&ring, [("b".to_string(), &qi * &b), ("c".to_string(), &qi * &c)]).expect("sigma_d");
    let d12 = -&(&(&q - &qi) * &(&b * &c));
    builder(&ring, 2)
        .name("quantum_matrices2")
        .sigma(0, sa)
        .sigma(1, sd)
        .relation(0, 1, CoeffElem::one(&ring), d12, vec![CoeffElem::zero(&ring); 2])
        .build()
        .expect("quantum matrices")
}

/// Two-generator diffusion algebra `λ12 D1 D2 − λ21 D2 D1 = s2 D1 − s1 D2` over Q.
pub fn diffusion2(l12: &BigRational, l21: &BigRational, s1: &BigRational, s2: &BigRational) -> Result<Presentation> {
    if l12.is_zero() || l21.is_zero() {
        return Err(Error::CatalogParams { name: "diffusion2".into(), msg: "lambda12 and lambda21 must be nonzero".into() });
    }
    let ring = CoeffRing::rationals();
    let e = |v: BigRational| CoeffElem::from_rational(&ring, &v).expect("rational");
    let c = e(l12 / l21);
    let a = vec![e(-(s2 / l21)), e(s1 / l21)];
    builder(&ring, 2).name("diffusion2").relation(0, 1, c, CoeffElem::zero(&ring), a).build()
}

/// Ore extension Q[t][x; d/dt].
pub fn ore_weyl() -> Presentation {
    let ring = CoeffRing::polynomial(RingKind::Rationals, &["t"]).expect("ring");
    builder(&ring, 1).name("ore_weyl").delta(0, vec![CoeffElem::one(&ring)]).build().expect("ore_weyl")
}

/// q-Weyl: Q[q^±1][t][x; σ, δ] with σ(t) = q t, δ(t) = 1.
pub fn q_weyl() -> Presentation {
    let base = RingKind::Laurent { base: Box::new(RingKind::Rationals), var: "q".into() };
    let ring = CoeffRing::polynomial(base, &["t"]).expect("ring");
    let q = CoeffElem::generator_named(&ring, "q").expect("q");
    let t = CoeffElem::generator_named(&ring, "t").expect("t");
    let sigma = RingMap::from_named(&ring, [("t".to_string(), &q * &t)]).expect("sigma");
    let g = ring.generators().len();
    let mut delta = vec![CoeffElem::zero(&ring); g];
    delta[ring.generator_index("t").expect("t")] = CoeffElem::one(&ring);
    builder(&ring, 1).name("q_weyl").sigma(0, sigma).delta(0, delta).build().expect("q_weyl")
}

fn lie_entry(name: &str, sc: StructureConstants) -> Presentation {
    lie_named(&sc, Some(name))
}

pub type Params = BTreeMap<String, BigRational>;

pub struct Entry {
    pub name: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub summary: &'static str,
}

pub const ENTRIES: &[Entry] = &[
    Entry { name: "weyl", params: &[("n", "required")], summary: "Weyl algebra A_n over Q (t_i = x_i, d_i = x_{n+i})" },
    Entry { name: "weyl1", params: &[], summary: "Weyl algebra A_1: x2*x1 = x1*x2 + 1" },
    Entry { name: "weyl2", params: &[], summary: "Weyl algebra A_2" },
    Entry { name: "u_sl2", params: &[], summary: "U(sl2), basis (e, f, h)" },
    Entry { name: "u_heisenberg", params: &[], summary: "U(h), basis (q, p, z), [p, q] = z" },
    Entry { name: "u_so3", params: &[], summary: "U(so3)" },
    Entry { name: "quantum_plane", params: &[], summary: "x2*x1 = q*x1*x2 over Q[q, q^-1]" },
    Entry { name: "quantum_matrices2", params: &[], summary: "quantum 2x2 matrices, a = x1, d = x2 over Q[q, q^-1][b, c]" },
    Entry {
        name: "diffusion2",
        params: &[("lambda12", "2"), ("lambda21", "3"), ("s1", "1"), ("s2", "5")],
        summary: "diffusion algebra lambda12*x1*x2 - lambda21*x2*x1 = s2*x1 - s1*x2",
    },
    Entry { name: "ore_weyl", params: &[], summary: "Q[t][x; d/dt]" },
    Entry { name: "q_weyl", params: &[], summary: "Q[q, q^-1][t][x; sigma(t) = q*t, delta(t) = 1]" },
];

pub fn list() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Every entry that needs no parameters, at default settings.
pub fn defaults() -> Vec<Presentation> {
    ENTRIES
        .iter()
        .filter(|e| !e.params.iter().any(|(_, d)| *d == "required"))
        .map(|e| get(e.name, &Params::new()).expect("catalog defaults build"))
        .collect()
}

fn param(name: &str, params: &Params, key: &str, default: Option<i64>) -> Result<BigRational> {
    match (params.get(key), default) {
        (Some(v), _) => Ok(v.clone()),
        (None, Some(d)) => Ok(BigRational::from_integer(d.into())),
        (None, None) => Err(Error::CatalogParams { name: name.into(), msg: format!("missing parameter `{key}`") }),
    }
}

pub fn get(name: &str, params: &Params) -> Result<Presentation> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    if let Some(k) = params.keys().find(|k| !entry.params.iter().any(|(p, _)| p == k)) {
        return Err(Error::CatalogParams { name: name.into(), msg: format!("unknown parameter `{k}`") });
    }
    let q = CoeffRing::rationals();
    match name {
        "weyl" => {
            let n = param(name, params, "n", None)?;
            let n = (n.is_integer() && n.is_positive())
                .then(|| n.to_integer().to_usize())
                .flatten()
                .filter(|&n| n <= 64)
                .ok_or_else(|| Error::CatalogParams { name: name.into(), msg: "n must be an integer in 1..=64".into() })?;
            weyl(n)
        }
        "weyl1" => weyl(1),
        "weyl2" => weyl(2),
        "u_sl2" => Ok(lie_entry(name, sl2(&q))),
        "u_heisenberg" => Ok(lie_entry(name, heisenberg(&q))),
        "u_so3" => Ok(lie_entry(name, so3(&q))),
        "quantum_plane" => Ok(quantum_plane()),
        "quantum_matrices2" => Ok(quantum_matrices2()),
        "diffusion2" => diffusion2(
            &param(name, params, "lambda12", Some(2))?,
            &param(name, params, "lambda21", Some(3))?,
            &param(name, params, "s1", Some(1))?,
            &param(name, params, "s2", Some(5))?,
        ),
        "ore_weyl" => Ok(ore_weyl()),
        "q_weyl" => Ok(q_weyl()),
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::check_all;

    #[test]
    fn antisymmetry_is_enforced() {
        let q = CoeffRing::rationals();
        let s = sl2(&q);
        // [e, f] = h stored as a_12 = -h
        assert_eq!(s.bracket(0, 1)[2], CoeffElem::one(&q));
        assert_eq!(s.a(0, 1)[2], CoeffElem::from_i64(&q, -1));
        assert_eq!(s.bracket(1, 0)[2], CoeffElem::from_i64(&q, -1));
    }

    #[test]
    fn jacobiator_vanishes_for_lie_algebras() {
        let q = CoeffRing::rationals();
        for s in [sl2(&q), heisenberg(&q), so3(&q), StructureConstants::abelian(&q, 4).unwrap()] {
            assert!(s.non_jacobi_triples().is_empty());
        }
    }

    #[test]
    fn broken_bracket_has_nonzero_jacobiator() {
        let q = CoeffRing::rationals();
        // [x1,x2] = x3, [x2,x3] = x1, [x1,x3] = 0 still satisfies Jacobi
        let s = StructureConstants::abelian(&q, 3)
            .unwrap()
            .with(0, 1, &[0, 0, 1])
            .unwrap()
            .with(1, 2, &[1, 0, 0])
            .unwrap();
        assert!(s.non_jacobi_triples().is_empty());
        let s = StructureConstants::abelian(&q, 3)
            .unwrap()
            .with(0, 1, &[0, 1, 0])
            .unwrap()
            .with(0, 2, &[1, 0, 0])
            .unwrap();
        assert_eq!(s.non_jacobi_triples(), vec![(0, 1, 2)]);
        let one = CoeffElem::one(&q);
        assert_eq!(s.jacobiator(0, 1, 2).iter().filter(|c| !c.is_zero()).count(), 1);
        assert!(s.jacobiator(0, 1, 2).iter().any(|c| *c == one || *c == -&one));
    }

    #[test]
    fn every_default_entry_is_consistent() {
        for p in defaults() {
            let rep = check_all(&p, 8, 1);
            assert!(rep.overall, "{rep}");
        }
    }

    #[test]
    fn parameters() {
        assert_eq!(get("weyl", &Params::from([("n".into(), BigRational::from_integer(3.into()))])).unwrap().n(), 6);
        assert!(matches!(get("weyl", &Params::new()), Err(Error::CatalogParams { .. })));
        assert!(matches!(get("nope", &Params::new()), Err(Error::UnknownCatalog(_))));
        let zero = Params::from([("lambda21".into(), BigRational::zero())]);
        assert!(get("diffusion2", &zero).is_err());
    }
}
