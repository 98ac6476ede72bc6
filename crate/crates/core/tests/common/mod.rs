//! Shared helpers for the integration suites: an independent word-based sign
//! oracle and small constructors.

use freefield::monomial::{Monomial, Signature, Variable};
use freefield::{Element, MuPoly};

pub fn x(i: u16) -> Variable {
    Variable::even(i, 0)
}

pub fn y(k: u16) -> Variable {
    Variable::odd(k, 0)
}

pub fn fin(m: u16, n: u16) -> Signature {
    Signature::finite(m, n).unwrap()
}

pub fn aff(m: u16, n: u16) -> Signature {
    Signature::affine(m, n).unwrap()
}

pub fn mono(sig: &Signature, s: &str) -> Monomial {
    freefield::text::parse_monomial(sig, s).unwrap()
}

pub fn elem(sig: &Signature, s: &str) -> Element {
    freefield::text::parse_element(sig, s).unwrap()
}

/// Independent of the engine: normalize a flat word of variables by bubble
/// sort, flipping the sign on every adjacent odd-odd transposition. Returns
/// None when an odd variable repeats.
pub fn normalize_word(word: &[Variable]) -> Option<(i64, Monomial)> {
    let mut w = word.to_vec();
    let mut sign = 1i64;
    loop {
        let mut swapped = false;
        for i in 0..w.len().saturating_sub(1) {
            if w[i] > w[i + 1] {
                if w[i].is_odd() && w[i + 1].is_odd() {
                    sign = -sign;
                }
                w.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        if w[i] == w[i + 1] && w[i].is_odd() {
            return None;
        }
    }
    let evens = w.iter().filter(|v| !v.is_odd()).map(|v| (*v, 1u32)).collect::<Vec<_>>();
    let odds = w.iter().filter(|v| v.is_odd()).copied().collect::<Vec<_>>();
    let (extra, mono) = Monomial::from_parts(evens, odds)?;
    assert_eq!(extra, 1, "sorted word should need no further transpositions");
    Some((sign, mono))
}

/// Flatten a canonical monomial back into a word (evens with multiplicity in
/// canonical order, then odds).
pub fn monomial_word(m: &Monomial) -> Vec<Variable> {
    let mut word = Vec::new();
    for (v, e) in m.even_part() {
        for _ in 0..*e {
            word.push(*v);
        }
    }
    word.extend(m.odd_part().iter().copied());
    word
}

/// Word-level left superderivation: strike each occurrence of `v` with the
/// sign (-1)^(number of odd factors to its left).
pub fn derive_word(v: &Variable, word: &[Variable]) -> Vec<(i64, Vec<Variable>)> {
    let mut out = Vec::new();
    for (i, u) in word.iter().enumerate() {
        if u == v {
            let before_odd = word[..i].iter().filter(|w| w.is_odd()).count();
            let sign = if v.is_odd() && before_odd % 2 == 1 { -1 } else { 1 };
            let mut rest = word.to_vec();
            rest.remove(i);
            out.push((sign, rest));
        }
    }
    out
}

/// Sum a list of signed words into an element.
pub fn words_to_element(words: &[(i64, Vec<Variable>)]) -> Element {
    let mut e = Element::zero();
    for (sign, w) in words {
        if let Some((s, m)) = normalize_word(w) {
            e.add_term(m, MuPoly::from_int(sign * s));
        }
    }
    e
}
