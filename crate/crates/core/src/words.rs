//! Words over the alphabet X ∪ R and the free ring Z⟨X ∪ R⟩.
//!
//! Variables are 0-based here (`Var(0)` is x1). Scalar letters are opaque
//! coefficient values; adjacent scalars are never merged at word level.

use std::collections::HashMap;
use std::fmt;

use crate::coeff::CoeffElem;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Var(usize),
    Scalar(CoeffElem),
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

/// Termination measure: (variables, variable inversions, variable-before-scalar pairs),
/// compared lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complexity {
    pub vars: usize,
    pub var_inversions: usize,
    pub scalar_inversions: usize,
}

/// The adjacent pair rewritten next: `letters[pos]` is a variable and
/// everything from `pos + 1` on is standard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x_var · r` at `pos`.
    ScalarSwap { pos: usize, var: usize },
    /// `x_left · x_right` at `pos` with `right < left`.
    VarSwap { pos: usize, left: usize, right: usize },
}

impl Violation {
    pub fn pos(&self) -> usize {
        match *self {
            Violation::ScalarSwap { pos, .. } | Violation::VarSwap { pos, .. } => pos,
        }
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn complexity(&self) -> Complexity {
        let mut c = Complexity::default();
        // histogram of variable indices seen so far
        let mut seen: Vec<usize> = Vec::new();
        for l in &self.0 {
            match l {
                Letter::Var(i) => {
                    if seen.len() <= *i {
                        seen.resize(i + 1, 0);
                    }
                    c.var_inversions += seen[i + 1..].iter().sum::<usize>();
                    seen[*i] += 1;
                    c.vars += 1;
                }
                Letter::Scalar(_) => c.scalar_inversions += c.vars,
            }
        }
        c
    }

    pub fn is_standard(&self) -> bool {
        self.rightmost_violation().is_none()
    }

    /// The rightmost adjacent pair that breaks standardness; its right context is standard.
    pub fn rightmost_violation(&self) -> Option<Violation> {
        for pos in (0..self.0.len().saturating_sub(1)).rev() {
            if let Letter::Var(j) = self.0[pos] {
                match &self.0[pos + 1] {
                    Letter::Scalar(_) => return Some(Violation::ScalarSwap { pos, var: j }),
                    Letter::Var(i) if *i < j => {
                        return Some(Violation::VarSwap { pos, left: j, right: *i })
                    }
                    Letter::Var(_) => {}
                }
            }
        }
        None
    }

    /// Indices of the variable letters, in order.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|l| match l {
            Letter::Var(i) => Some(*i),
            Letter::Scalar(_) => None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Var(i) => write!(f, "x{}", i + 1),
            Letter::Scalar(r) if r.is_compound() || r.leading_negative() => write!(f, "({r})"),
            Letter::Scalar(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of Z⟨X ∪ R⟩: finitely many words with nonzero integer multiplicities.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FreeElem {
    terms: HashMap<Word, i128>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Word, m: i128) -> Self {
        let mut e = Self::zero();
        e.add_term(w, m);
        e
    }

    pub fn add_term(&mut self, w: Word, m: i128) {
        if m == 0 {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(m).expect("multiplicity overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&Word, i128)> {
        self.terms.iter().map(|(w, m)| (w, *m))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, i128)> {
        self.terms.into_iter()
    }

    pub fn multiplicity(&self, w: &Word) -> i128 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &FreeElem) -> FreeElem {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add_term(w.clone(), m);
        }
        out
    }

    pub fn scale(&self, k: i128) -> FreeElem {
        let mut out = FreeElem::zero();
        for (w, m) in self.iter() {
            out.add_term(w.clone(), m.checked_mul(k).expect("multiplicity overflow"));
        }
        out
    }

    /// Bilinear concatenation product.
    pub fn concat(&self, other: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        for (u, a) in self.iter() {
            for (v, b) in other.iter() {
                out.add_term(u.concat(v), a.checked_mul(b).expect("multiplicity overflow"));
            }
        }
        out
    }

    /// Longest word length present (0 for the zero element).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn all_standard(&self) -> bool {
        self.terms.keys().all(Word::is_standard)
    }
}

pub fn free_add(u: &FreeElem, v: &FreeElem) -> FreeElem {
    u.add(v)
}

pub fn free_concat(u: &FreeElem, v: &FreeElem) -> FreeElem {
    u.concat(v)
}

impl From<Word> for FreeElem {
    fn from(w: Word) -> Self {
        FreeElem::word(w)
    }
}

impl fmt::Debug for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort();
        if items.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, m)) in items.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m != 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
