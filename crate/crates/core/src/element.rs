//! Sparse linear combinations of canonical monomials with Q[mu] coefficients,
//! and the basic derivation / multiplication operators on them.

use crate::coeff::{MuPoly, Rat};
use crate::error::Result;
use crate::monomial::{mono_mul, MonoProd, Monomial, Parity, Signature, Variable};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Finite sparse sum of monomials; no zero coefficient is ever stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Monomial, MuPoly>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn unit() -> Self {
        Element::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::from_term(m, MuPoly::one())
    }

    pub fn from_term(m: Monomial, c: MuPoly) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &MuPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> MuPoly {
        self.terms.get(m).cloned().unwrap_or_else(MuPoly::zero)
    }

    /// Coefficient of the unit monomial (the degree-zero component).
    pub fn unit_coeff(&self) -> MuPoly {
        self.coeff(&Monomial::unit())
    }

    pub fn add_term(&mut self, m: Monomial, c: MuPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c);
        }
    }

    pub fn scale(&self, c: &MuPoly) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Element {
        self.scale(&MuPoly::from_rat(c.clone()))
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let MonoProd::Term { sign, product } = mono_mul(ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_term(product, c);
                }
            }
        }
        out
    }

    /// True when the element is c * 1 with c nonzero.
    pub fn as_unit_multiple(&self) -> Option<MuPoly> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    /// If the element is c * v for a single monomial v, return (v, c).
    pub fn as_single_term(&self) -> Option<(&Monomial, &MuPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Evaluate every coefficient at mu = value.
    pub fn specialize_mu(&self, value: &Rat) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), MuPoly::from_rat(c.eval(value)));
        }
        out
    }

    /// Largest total degree among the terms; None for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn render(&self, affine: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            if c.is_one() {
                parts.push(m.render(affine));
            } else {
                parts.push(format!("{} * {}", c.canonical_string(), m.render(affine)));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let affine = self
            .terms
            .keys()
            .any(|m| m.support().iter().any(|v| v.mode != 0));
        f.write_str(&self.render(affine))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

/// Partial derivative by `v`. Even case is the ordinary Leibniz rule; odd case
/// is the left superderivation with sign (-1)^(p-1) on the p-th odd factor.
pub fn partial(sig: &Signature, v: &Variable, e: &Element) -> Result<Element> {
    sig.check_var(v)?;
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        match v.parity {
            Parity::Even => {
                if let Some((exp, stripped)) = m.strip_even(v) {
                    out.add_term(stripped, c.scale(&Rat::from_integer(exp.into())));
                }
            }
            Parity::Odd => {
                if let Some((sign, stripped)) = m.strip_odd(v) {
                    let c = if sign < 0 { -c } else { c.clone() };
                    out.add_term(stripped, c);
                }
            }
        }
    }
    Ok(out)
}

/// Left multiplication by `v`, re-sorting odd factors with the proper sign.
pub fn mul_var(sig: &Signature, v: &Variable, e: &Element) -> Result<Element> {
    sig.check_var(v)?;
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        match v.parity {
            Parity::Even => out.add_term(m.push_even(*v), c.clone()),
            Parity::Odd => {
                if let Some((sign, pushed)) = m.push_odd_front(*v) {
                    let c = if sign < 0 { -c } else { c.clone() };
                    out.add_term(pushed, c);
                }
            }
        }
    }
    Ok(out)
}

/// Scalar extraction: if `e = lambda * v` for the given monomial, return lambda.
pub fn eigenvalue_on(e: &Element, v: &Monomial) -> Option<MuPoly> {
    if e.is_zero() {
        return Some(MuPoly::zero());
    }
    if e.len() != 1 {
        return None;
    }
    let (m, c) = e.terms().next().unwrap();
    if m == v {
        Some(c.clone())
    } else {
        None
    }
}
