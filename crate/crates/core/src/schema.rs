//! JSON documents for presentations and homomorphism specs.
//!
//! Relation indices are 1-based. Pairs without an entry commute; `d` and `a`
//! default to zero, `c` to one. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::coeff::{CoeffElem, CoeffRing, RingKind, RingMap};
use crate::error::{Error, Result};
use crate::expr::eval_coeff_str;
use crate::presentation::{Presentation, PresentationBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<RingDoc>>,
}

/// A coefficient given either as an expression string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub i: usize,
    pub j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingDoc,
    pub vars: Vec<String>,
    #[serde(default)]
    pub sigma: Vec<BTreeMap<String, Value>>,
    #[serde(default)]
    pub delta: Vec<BTreeMap<String, Value>>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Schema(msg.into()))
}

pub fn ring_kind(doc: &RingDoc) -> Result<RingKind> {
    let no_extra = |what: &str, ok: bool| if ok { Ok(()) } else { schema(format!("ring kind `{}` does not take {what}", doc.kind)) };
    match doc.kind.as_str() {
        "rationals" => {
            no_extra("p, vars or base", doc.p.is_none() && doc.vars.is_none() && doc.base.is_none())?;
            Ok(RingKind::Rationals)
        }
        "prime_field" => {
            no_extra("vars or base", doc.vars.is_none() && doc.base.is_none())?;
            match doc.p {
                Some(p) => Ok(RingKind::PrimeField(p)),
                None => schema("prime_field needs `p`"),
            }
        }
        "poly" | "laurent" => {
            no_extra("p", doc.p.is_none())?;
            let base = match &doc.base {
                Some(b) => ring_kind(b)?,
                None => RingKind::Rationals,
            };
            let vars = doc.vars.clone().unwrap_or_default();
            if doc.kind == "poly" {
                if vars.is_empty() {
                    return schema("poly needs a nonempty `vars`");
                }
                Ok(RingKind::Poly { base: Box::new(base), vars })
            } else {
                match <[String; 1]>::try_from(vars) {
                    Ok([var]) => Ok(RingKind::Laurent { base: Box::new(base), var }),
                    Err(_) => schema("laurent needs exactly one entry in `vars`"),
                }
            }
        }
        k => schema(format!("unknown ring kind `{k}`")),
    }
}

pub fn ring_doc(kind: &RingKind) -> RingDoc {
    let plain = |k: &str| RingDoc { kind: k.into(), p: None, vars: None, base: None };
    match kind {
        RingKind::Rationals => plain("rationals"),
        RingKind::PrimeField(p) => RingDoc { p: Some(*p), ..plain("prime_field") },
        RingKind::Poly { base, vars } => RingDoc { vars: Some(vars.clone()), base: base_doc(base), ..plain("poly") },
        RingKind::Laurent { base, var } => RingDoc { vars: Some(vec![var.clone()]), base: base_doc(base), ..plain("laurent") },
    }
}

fn base_doc(base: &RingKind) -> Option<Box<RingDoc>> {
    (*base != RingKind::Rationals).then(|| Box::new(ring_doc(base)))
}

fn coeff(ring: &Arc<CoeffRing>, v: &Value, what: &str) -> Result<CoeffElem> {
    eval_coeff_str(&v.text(), ring).map_err(|e| Error::Schema(format!("{what}: {e}")))
}

fn named_images(ring: &Arc<CoeffRing>, m: &BTreeMap<String, Value>, what: &str) -> Result<Vec<(String, CoeffElem)>> {
    m.iter()
        .map(|(g, v)| {
            if ring.generator_index(g).is_none() {
                return schema(format!("{what}: `{g}` is not a coefficient generator"));
            }
            Ok((g.clone(), coeff(ring, v, &format!("{what}[{g}]"))?))
        })
        .collect()
}

impl PresentationDoc {
    pub fn build(&self) -> Result<Presentation> {
        let ring = CoeffRing::new(ring_kind(&self.ring)?)?;
        let n = self.vars.len();
        let mut b = PresentationBuilder::new(&ring, self.vars.clone());
        if let Some(name) = &self.name {
            b = b.name(name);
        }
        for (field, len) in [("sigma", self.sigma.len()), ("delta", self.delta.len())] {
            if len != 0 && len != n {
                return schema(format!("`{field}` must list one map per variable ({n}), got {len}"));
            }
        }
        let mut sigmas = vec![RingMap::identity(&ring); n];
        for (i, m) in self.sigma.iter().enumerate() {
            sigmas[i] = RingMap::from_named(&ring, named_images(&ring, m, &format!("sigma[{}]", i + 1))?)?;
            b = b.sigma(i, sigmas[i].clone());
        }
        for (i, m) in self.delta.iter().enumerate() {
            let mut imgs = vec![CoeffElem::zero(&ring); ring.generators().len()];
            for (g, v) in named_images(&ring, m, &format!("delta[{}]", i + 1))? {
                imgs[ring.generator_index(&g).expect("checked")] = v;
            }
            b = b.delta(i, imgs);
        }
        let mut seen = std::collections::HashSet::new();
        for r in &self.relations {
            if !(1 <= r.i && r.i < r.j && r.j <= n) {
                return schema(format!("relation ({}, {}) needs 1 <= i < j <= {n}", r.i, r.j));
            }
            if !seen.insert((r.i, r.j)) {
                return schema(format!("relation ({}, {}) given twice", r.i, r.j));
            }
            let what = format!("relation ({}, {})", r.i, r.j);
            let c = match &r.c {
                Some(v) => coeff(&ring, v, &what)?,
                None => CoeffElem::one(&ring),
            };
            let d = match &r.d {
                Some(v) => coeff(&ring, v, &what)?,
                None => CoeffElem::zero(&ring),
            };
            let a = match &r.a {
                Some(vs) if vs.len() != n => return schema(format!("{what}: `a` needs {n} entries")),
                Some(vs) => vs.iter().map(|v| coeff(&ring, v, &what)).collect::<Result<_>>()?,
                None => vec![CoeffElem::zero(&ring); n],
            };
            b = b.relation(r.i - 1, r.j - 1, c, d, a);
        }
        b.build()
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let ring = p.ring();
        let gens: Vec<String> = ring.generators().iter().map(|g| g.name.clone()).collect();
        let n = p.n();
        let nontrivial = (0..n).any(|i| !p.sigma(i).is_identity() || !p.delta(i).is_zero());
        let mut sigma = vec![];
        let mut delta = vec![];
        if nontrivial {
            for i in 0..n {
                let s = p.sigma(i);
                sigma.push(
                    gens.iter()
                        .zip(s.images())
                        .enumerate()
                        .filter(|(k, (_, img))| **img != CoeffElem::generator(ring, *k))
                        .map(|(_, (g, img))| (g.clone(), Value::Text(img.to_string())))
                        .collect(),
                );
                delta.push(
                    gens.iter()
                        .zip(p.delta(i).images())
                        .filter(|(_, img)| !img.is_zero())
                        .map(|(g, img)| (g.clone(), Value::Text(img.to_string())))
                        .collect(),
                );
            }
        }
        let mut relations = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let r = p.relation(i, j);
                let zero_a = r.a.iter().all(CoeffElem::is_zero);
                if r.c.is_one() && r.d.is_zero() && zero_a {
                    continue;
                }
                relations.push(RelationDoc {
                    i: i + 1,
                    j: j + 1,
                    c: Some(Value::Text(r.c.to_string())),
                    d: (!r.d.is_zero()).then(|| Value::Text(r.d.to_string())),
                    a: (!zero_a).then(|| r.a.iter().map(|x| Value::Text(x.to_string())).collect()),
                });
            }
        }
        PresentationDoc {
            name: p.name().map(str::to_string),
            ring: ring_doc(ring.kind()),
            vars: p.var_names().to_vec(),
            sigma,
            delta,
            relations,
        }
    }
}

pub fn presentation_from_json(text: &str) -> Result<Presentation> {
    let doc: PresentationDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.build()
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&PresentationDoc::from_presentation(p)).expect("serializable")
}

/// A presentation reference: `catalog:NAME`, a file path, or an inline document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationRef {
    Named(String),
    Inline(PresentationDoc),
}

/// Loads `catalog:NAME` or a presentation JSON file.
pub fn load_presentation(spec: &str, base_dir: Option<&Path>) -> Result<Presentation> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::get(name, &catalog::Params::new());
    }
    let mut path = PathBuf::from(spec);
    if let (true, Some(dir)) = (path.is_relative(), base_dir) {
        path = dir.join(path);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    presentation_from_json(&text)
}

impl PresentationRef {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<Presentation> {
        match self {
            PresentationRef::Named(s) => load_presentation(s, base_dir),
            PresentationRef::Inline(doc) => doc.build(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpecDoc {
    pub source: PresentationRef,
    pub target: PresentationRef,
    #[serde(default)]
    pub phi: BTreeMap<String, Value>,
    pub y: Vec<Value>,
}

impl HomSpecDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trip() {
        for p in catalog::defaults() {
            let text = presentation_to_json(&p);
            let back = presentation_from_json(&text).unwrap();
            assert_eq!(back, p, "{text}");
            assert_eq!(back.id(), p.id());
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"ring": {"kind": "rationals"}, "vars": ["x1"], "relation": []}"#;
        assert!(matches!(presentation_from_json(bad), Err(Error::Schema(_))));
        let bad = r#"{"ring": {"kind": "rationals"}, "vars": ["x1","x2"], "relations": [{"i":1,"j":2,"cc":"1"}]}"#;
        assert!(presentation_from_json(bad).is_err());
    }

    #[test]
    fn minimal_document() {
        let p = presentation_from_json(
            r#"{"ring": {"kind": "laurent", "vars": ["q"]}, "vars": ["x", "y"],
                "relations": [{"i": 1, "j": 2, "c": "q"}]}"#,
        )
        .unwrap();
        assert_eq!(p.relation(0, 1).c.to_string(), "q");
        let bad_pair = r#"{"ring": {"kind": "rationals"}, "vars": ["x1","x2"], "relations": [{"i":2,"j":1}]}"#;
        assert!(presentation_from_json(bad_pair).is_err());
        let integers = r#"{"ring": {"kind": "prime_field", "p": 7}, "vars": ["x1","x2"], "relations": [{"i":1,"j":2,"c":3,"d":-1}]}"#;
        assert_eq!(presentation_from_json(integers).unwrap().relation(0, 1).d.to_string(), "6");
    }
}
