use std::sync::Arc;

use skewpbw::algebra::{Monomial, SkewPbw};
use skewpbw::catalog::{self, lie_presentation, StructureConstants};
use skewpbw::coeff::{CoeffElem, CoeffRing, RingKind, RingMap};
use skewpbw::presentation::{check_all, check_condition2, Presentation};
use skewpbw::schema::{presentation_from_json, presentation_to_json};

#[test]
fn catalog_is_consistent() {
    for p in catalog::defaults() {
        let rep = check_all(&p, 16, 1);
        assert!(rep.overall, "{}:\n{rep}", p.name().unwrap());
    }
}

#[test]
fn broken_bracket_names_its_triple() {
    let q = CoeffRing::rationals();
    let sc = StructureConstants::abelian(&q, 3).and_then(|s| s.with(0, 1, &[0, 1, 0])).and_then(|s| s.with(0, 2, &[1, 0, 0])).unwrap();
    let rep = check_all(&lie_presentation(&sc), 8, 0);
    assert!(!rep.overall);
    assert_eq!(rep.failing_triples(), vec![(1, 2, 3)]);
    let text = rep.to_string();
    assert!(text.contains("(i=1, j=2, k=3)") && text.contains("difference"), "{text}");
}

// Q[t]<x1, x2>: x1 t = t x1 + 1, x2 t = 2t x2, x2 x1 = x1 x2.
// x2 x1 t reduces to 2t x1 x2 + x2 one way and 2t x1 x2 + 2 x2 the other.
#[test]
fn twisted_derivation_fails_condition2() {
    let ring = CoeffRing::polynomial(RingKind::Rationals, &["t"]).unwrap();
    let t = CoeffElem::generator(&ring, 0);
    let p = Presentation::builder(&ring, &["x1", "x2"])
        .delta(0, vec![CoeffElem::one(&ring)])
        .sigma(1, RingMap::new(&ring, &ring, vec![&CoeffElem::from_i64(&ring, 2) * &t]).unwrap())
        .build()
        .unwrap();
    let item = check_condition2(&p, 0, 1, &t);
    assert!(!item.pass);
    assert!(!check_all(&p, 16, 0).overall);
    assert!(check_condition2(&p, 0, 1, &CoeffElem::from_i64(&ring, 5)).pass);
}

#[test]
fn non_unit_c_fails_condition1() {
    let ring = CoeffRing::polynomial(RingKind::Rationals, &["t"]).unwrap();
    let t = CoeffElem::generator(&ring, 0);
    let zero = CoeffElem::zero(&ring);
    let p = Presentation::builder(&ring, &["x1", "x2"])
        .relation(0, 1, t, zero.clone(), vec![zero.clone(), zero])
        .build()
        .unwrap();
    let rep = check_all(&p, 4, 0);
    assert!(!rep.condition1.pass());
    assert!(rep.condition1.units.iter().any(|u| !u.pass && (u.i, u.j) == (1, 2)));
}

// x_i x_j = c_ji (x_j ⋆ x_i) + Σ a_ji^(k) x_k + d_ji
#[test]
fn derived_params_reverse_relations() {
    for p in catalog::defaults() {
        let alg = SkewPbw::new(Arc::new(p.clone()));
        for i in 0..p.n() {
            for j in i + 1..p.n() {
                let rel = p.derived_params(j, i).unwrap();
                let mut rhs = alg.mul(&alg.var(j), &alg.var(i)).unwrap().scalar_mul(&rel.c).unwrap();
                for (k, a) in rel.a.iter().enumerate() {
                    rhs = rhs.add(&alg.var(k).scalar_mul(a).unwrap()).unwrap();
                }
                rhs = rhs.add(&alg.constant(rel.d.clone())).unwrap();
                let mut e = vec![0u32; p.n()];
                e[i] = 1;
                e[j] = 1;
                assert_eq!(alg.monomial(Monomial::from_exponents(&e).unwrap()), rhs, "{} ({i},{j})", p.name().unwrap());
            }
        }
    }
}

#[test]
fn json_round_trip_keeps_identity() {
    for p in catalog::defaults() {
        let back = presentation_from_json(&presentation_to_json(&p)).unwrap();
        assert_eq!(back.id(), p.id());
        assert_eq!(back, p);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    for bad in [
        r#"{"ring": {"kind": "rationals"}, "vars": ["x1"], "bogus": 1}"#,
        r#"{"ring": {"kind": "prime_field", "p": 8}, "vars": ["x1"]}"#,
        r#"{"ring": {"kind": "rationals"}, "vars": ["x1", "x2"], "relations": [{"i": 2, "j": 1}]}"#,
        r#"{"ring": {"kind": "rationals"}, "vars": ["x1", "x1"]}"#,
    ] {
        assert!(presentation_from_json(bad).is_err(), "{bad}");
    }
}
