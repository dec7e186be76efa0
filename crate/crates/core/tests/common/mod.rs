#![allow(dead_code)]

use rand::Rng;
use skewpbw::algebra::Poly;
use skewpbw::coeff::CoeffElem;
use skewpbw::presentation::Presentation;
use skewpbw::reduction::{collapse_q, Reducer};
use skewpbw::rng::Sampler;
use skewpbw::words::{FreeElem, Letter, Word};

pub const WIDE_CAP: usize = 256;

pub fn random_scalar(p: &Presentation, s: &mut Sampler) -> CoeffElem {
    CoeffElem::random(p.ring(), 2, s)
}

/// Word of length ≤ `max_len`; about two thirds of the letters are variables.
pub fn random_word(p: &Presentation, max_len: usize, s: &mut Sampler) -> Word {
    let len = s.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                if p.n() > 0 && s.gen_bool(0.65) {
                    Letter::Var(s.gen_range(0..p.n()))
                } else {
                    Letter::Scalar(random_scalar(p, s))
                }
            })
            .collect(),
    )
}

pub fn random_free(p: &Presentation, max_len: usize, s: &mut Sampler) -> FreeElem {
    let mut e = FreeElem::zero();
    for _ in 0..s.gen_range(1..=2) {
        e.add_term(random_word(p, max_len, s), s.gen_range(-3i128..=3));
    }
    e
}

/// An element of ZT: standard words only.
pub fn random_standard(p: &Presentation, max_deg: usize, s: &mut Sampler) -> FreeElem {
    let mut e = FreeElem::zero();
    for _ in 0..s.gen_range(1..=2) {
        let mut letters: Vec<Letter> = (0..s.gen_range(0..=2)).map(|_| Letter::Scalar(random_scalar(p, s))).collect();
        let mut vars: Vec<usize> = (0..s.gen_range(0..=max_deg)).map(|_| s.gen_range(0..p.n().max(1))).collect();
        if p.n() == 0 {
            vars.clear();
        }
        vars.sort();
        letters.extend(vars.into_iter().map(Letter::Var));
        e.add_term(Word(letters), s.gen_range(-2i128..=2));
    }
    e
}

/// h with a cap wide enough for words grown by reduction.
pub fn h(p: &Presentation, e: &FreeElem) -> Poly {
    let reduced = Reducer::new(p).with_cap(WIDE_CAP).pruning_zeros().reduce(e).expect("reduction");
    collapse_q(&reduced, p).expect("standard output")
}

pub fn p_of(p: &Presentation, e: &FreeElem) -> FreeElem {
    Reducer::new(p).with_cap(WIDE_CAP).reduce(e).expect("reduction")
}

pub fn w(letters: Vec<Letter>) -> FreeElem {
    FreeElem::word(Word(letters))
}

pub fn cat(parts: &[&FreeElem]) -> FreeElem {
    parts.iter().fold(FreeElem::one(), |acc, x| acc.concat(x))
}
