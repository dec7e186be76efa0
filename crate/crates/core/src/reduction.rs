//! Word-level normalization: p, q, t and h = q∘p.
//!
//! `p` rewrites the rightmost adjacent violation of a word whose right context
//! is standard, exactly one of
//!
//! ```text
//! v1 · x_i · r · v2    ->  v1 · σ_i(r) · x_i · v2  +  v1 · δ_i(r) · v2
//! v1 · x_j · x_i · v2  ->  v1 · c_ij · x_i · x_j · v2  +  Σ_k v1 · a_ij^(k) · x_k · v2  +  v1 · d_ij · v2
//! ```
//!
//! until only standard words remain. Every rewrite is literal: scalar letters
//! are inserted even when they are 0 or 1, so the result is the element of
//! Z⟨X ∪ R⟩ the recursion defines, not merely its image under q.
//!
//! Evaluation is a worklist over words bucketed by complexity, largest first.
//! Rewrites strictly lower the complexity, so each distinct word is expanded
//! once and equal words reached along different paths merge their
//! multiplicities. By linearity this equals the recursive definition.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Monomial, Poly};
use crate::coeff::{CoeffElem, Scalar};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Complexity, FreeElem, Letter, Violation, Word};

/// Longest input word accepted by the reducer.
pub const DEFAULT_WORD_CAP: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    /// Rewrite steps applied (one per distinct non-standard word).
    pub steps: usize,
    /// Longest chain of rewrites from an input word to a standard word.
    pub max_depth: usize,
    /// Number of produced words whose complexity failed to drop below their parent's.
    pub non_decreasing: usize,
}

// Letters as codes: `i < n` is x_{i+1}, `n + k` is the k-th interned scalar.
type Code = u32;
type Coded = Vec<Code>;
type Buckets = BTreeMap<Complexity, HashMap<Coded, (i128, usize)>>;

pub struct Reducer<'a> {
    pres: &'a Presentation,
    cap: usize,
    prune_zero: bool,
    n: Code,
    scalars: Vec<CoeffElem>,
    ids: HashMap<CoeffElem, Code>,
    // (i, scalar code) -> (σ_i(r), δ_i(r)) codes
    coeff_cache: HashMap<(Code, Code), (Code, Code)>,
    // pair (i, j) -> codes of c, a_1..a_n, d
    rel_cache: HashMap<(Code, Code), Vec<Code>>,
}

impl<'a> Reducer<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        Reducer {
            pres,
            cap: DEFAULT_WORD_CAP,
            prune_zero: false,
            n: pres.n() as Code,
            scalars: vec![],
            ids: HashMap::new(),
            coeff_cache: HashMap::new(),
            rel_cache: HashMap::new(),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Drops words containing a 0 letter. Every descendant of such a word
    /// keeps the 0, so the result has the same image under q.
    pub fn pruning_zeros(mut self) -> Self {
        self.prune_zero = true;
        self
    }

    fn intern(&mut self, r: &CoeffElem) -> Code {
        if let Some(&c) = self.ids.get(r) {
            return c;
        }
        let c = self.n + self.scalars.len() as Code;
        self.scalars.push(r.clone());
        self.ids.insert(r.clone(), c);
        c
    }

    fn is_zero_code(&self, c: Code) -> bool {
        c >= self.n && self.scalars[(c - self.n) as usize].is_zero()
    }

    fn encode(&mut self, w: &Word) -> Coded {
        w.letters()
            .iter()
            .map(|l| match l {
                Letter::Var(i) => *i as Code,
                Letter::Scalar(r) => self.intern(r),
            })
            .collect()
    }

    fn decode(&self, w: &[Code]) -> Word {
        Word(
            w.iter()
                .map(|&c| if c < self.n { Letter::Var(c as usize) } else { Letter::Scalar(self.scalars[(c - self.n) as usize].clone()) })
                .collect(),
        )
    }

    fn complexity(&self, w: &[Code]) -> Complexity {
        let mut c = Complexity::default();
        let mut seen = vec![0usize; self.n as usize];
        for &l in w {
            if l < self.n {
                c.var_inversions += seen[l as usize + 1..].iter().sum::<usize>();
                seen[l as usize] += 1;
                c.vars += 1;
            } else {
                c.scalar_inversions += c.vars;
            }
        }
        c
    }

    fn violation(&self, w: &[Code]) -> Option<Violation> {
        for pos in (0..w.len().saturating_sub(1)).rev() {
            let j = w[pos];
            if j < self.n {
                let next = w[pos + 1];
                if next >= self.n {
                    return Some(Violation::ScalarSwap { pos, var: j as usize });
                }
                if next < j {
                    return Some(Violation::VarSwap { pos, left: j as usize, right: next as usize });
                }
            }
        }
        None
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() > self.cap {
            return Err(Error::WordTooLong { len: w.len(), cap: self.cap });
        }
        if let Some(bad) = w.vars().find(|&i| i >= self.pres.n()) {
            return Err(Error::InvalidPresentation(format!(
                "word uses x{} but the presentation has {} variables",
                bad + 1,
                self.pres.n()
            )));
        }
        Ok(())
    }

    fn push(&self, buckets: &mut Buckets, w: Coded, m: i128, depth: usize) -> Complexity {
        let cx = self.complexity(&w);
        if self.prune_zero && w.iter().any(|&c| self.is_zero_code(c)) {
            return cx;
        }
        let slot = buckets.entry(cx).or_default().entry(w).or_insert((0, 0));
        slot.0 = slot.0.checked_add(m).expect("multiplicity overflow");
        slot.1 = slot.1.max(depth);
        cx
    }

    /// p extended linearly, with trace statistics.
    pub fn reduce_traced(&mut self, e: &FreeElem) -> Result<(FreeElem, ReductionStats)> {
        let mut stats = ReductionStats::default();
        let mut buckets = Buckets::new();
        for (w, m) in e.iter() {
            self.check_word(w)?;
            let coded = self.encode(w);
            self.push(&mut buckets, coded, m, 0);
        }
        let mut out = FreeElem::zero();
        while let Some((cx, bucket)) = buckets.pop_last() {
            for (w, (m, depth)) in bucket {
                if m == 0 {
                    continue;
                }
                let Some(v) = self.violation(&w) else {
                    stats.max_depth = stats.max_depth.max(depth);
                    out.add_term(self.decode(&w), m);
                    continue;
                };
                stats.steps += 1;
                for child in self.rewrite_coded(&w, v) {
                    if self.push(&mut buckets, child, m, depth + 1) >= cx {
                        stats.non_decreasing += 1;
                    }
                }
            }
        }
        Ok((out, stats))
    }

    pub fn reduce(&mut self, e: &FreeElem) -> Result<FreeElem> {
        self.reduce_traced(e).map(|(r, _)| r)
    }

    fn sigma_delta(&mut self, i: Code, r: Code) -> (Code, Code) {
        if let Some(&hit) = self.coeff_cache.get(&(i, r)) {
            return hit;
        }
        let elem = self.scalars[(r - self.n) as usize].clone();
        let s = self.pres.sigma(i as usize).apply(&elem);
        let d = self.pres.delta(i as usize).apply(&elem);
        let v = (self.intern(&s), self.intern(&d));
        self.coeff_cache.insert((i, r), v);
        v
    }

    fn relation_codes(&mut self, i: Code, j: Code) -> Vec<Code> {
        if let Some(hit) = self.rel_cache.get(&(i, j)) {
            return hit.clone();
        }
        let rel = self.pres.relation(i as usize, j as usize).clone();
        let mut codes = vec![self.intern(&rel.c)];
        codes.extend(rel.a.iter().map(|a| self.intern(a)));
        codes.push(self.intern(&rel.d));
        self.rel_cache.insert((i, j), codes.clone());
        codes
    }

    fn rewrite_coded(&mut self, w: &[Code], v: Violation) -> Vec<Coded> {
        let pos = v.pos();
        let (v1, v2) = (&w[..pos], &w[pos + 2..]);
        let build = |mid: &[Code]| {
            let mut out = Vec::with_capacity(v1.len() + mid.len() + v2.len());
            out.extend_from_slice(v1);
            out.extend_from_slice(mid);
            out.extend_from_slice(v2);
            out
        };
        match v {
            Violation::ScalarSwap { var, .. } => {
                let (s, d) = self.sigma_delta(var as Code, w[pos + 1]);
                vec![build(&[s, var as Code]), build(&[d])]
            }
            Violation::VarSwap { left: j, right: i, .. } => {
                let codes = self.relation_codes(i as Code, j as Code);
                let n = self.n as usize;
                let mut out = Vec::with_capacity(n + 2);
                out.push(build(&[codes[0], i as Code, j as Code]));
                for k in 0..n {
                    out.push(build(&[codes[1 + k], k as Code]));
                }
                out.push(build(&[codes[n + 1]]));
                out
            }
        }
    }

    /// The words one rewrite step produces from `w` (each with the parent's multiplicity).
    pub fn rewrite(&mut self, w: &Word, v: Violation) -> Vec<Word> {
        let coded = self.encode(w);
        self.rewrite_coded(&coded, v).iter().map(|c| self.decode(c)).collect()
    }
}

/// p(w): an element of ZT.
pub fn reduce_p(w: &Word, pres: &Presentation) -> Result<FreeElem> {
    Reducer::new(pres).reduce(&FreeElem::word(w.clone()))
}

/// p extended linearly to Z⟨X ∪ R⟩.
pub fn reduce_free(e: &FreeElem, pres: &Presentation) -> Result<FreeElem> {
    Reducer::new(pres).reduce(e)
}

/// q: multiplies out scalar prefixes of standard words and collects monomials.
pub fn collapse_q(e: &FreeElem, pres: &Presentation) -> Result<Poly> {
    let ring = pres.ring();
    let field = ring.field();
    let mut out = Poly::zero_for(pres);
    for (w, m) in e.iter() {
        if !w.is_standard() {
            return Err(Error::NotStandard(w.to_string()));
        }
        let mut coeff = CoeffElem::one(ring);
        let mut exps = vec![0u32; pres.n()];
        for l in w.letters() {
            match l {
                Letter::Scalar(r) => coeff = coeff.try_mul(r)?,
                Letter::Var(i) => {
                    let slot = exps.get_mut(*i).ok_or_else(|| {
                        Error::InvalidPresentation(format!("x{} out of range", i + 1))
                    })?;
                    *slot += 1;
                }
            }
        }
        let mult: Scalar = field.from_bigint(&m.into());
        out.add_term(Monomial::from_exponents(&exps)?, coeff.scale(&mult));
    }
    Ok(out)
}

/// t: each term r·x^α becomes the word r·x_{i1}⋯x_{ik} with multiplicity 1.
pub fn section_t(f: &Poly) -> FreeElem {
    let mut out = FreeElem::zero();
    for (m, r) in f.terms() {
        let mut letters = Vec::with_capacity(1 + m.degree() as usize);
        letters.push(Letter::Scalar(r.clone()));
        letters.extend(m.letters().map(Letter::Var));
        out.add_term(Word(letters), 1);
    }
    out
}

/// h = q∘p. Words carrying a 0 letter are dropped during reduction since q
/// sends all their descendants to 0.
pub fn normalize_h(e: &FreeElem, pres: &Presentation) -> Result<Poly> {
    collapse_q(&Reducer::new(pres).pruning_zeros().reduce(e)?, pres)
}

/// h(t(f)·t(g)), the reference product.
pub fn oracle_product(f: &Poly, g: &Poly, pres: &Presentation) -> Result<Poly> {
    if f.presentation_id() != pres.id() || g.presentation_id() != pres.id() {
        return Err(Error::PresentationMismatch);
    }
    normalize_h(&section_t(f).concat(&section_t(g)), pres)
}
