//! Enumeration and indexing of monomial bases for truncated searches.

use crate::monomial::{Monomial, Parity, Signature, Variable};
use std::collections::HashMap;

/// All canonical monomials of total degree <= `max_degree` over the variables
/// of the signature (modes restricted to `window` in the affine case),
/// sorted in the canonical graded order.
pub fn monomials_up_to(sig: &Signature, window: (i32, i32), max_degree: u32) -> Vec<Monomial> {
    let vars = sig.variables(window);
    let mut out = Vec::new();
    let mut stack = Monomial::unit();
    enumerate(&vars, 0, max_degree, &mut stack, &mut out);
    out.sort();
    out
}

/// Monomials of exactly the given degree.
pub fn monomials_of_degree(sig: &Signature, window: (i32, i32), degree: u32) -> Vec<Monomial> {
    monomials_up_to(sig, window, degree)
        .into_iter()
        .filter(|m| m.degree() == degree)
        .collect()
}

fn enumerate(
    vars: &[Variable],
    at: usize,
    budget: u32,
    current: &mut Monomial,
    out: &mut Vec<Monomial>,
) {
    if at == vars.len() {
        out.push(current.clone());
        return;
    }
    let v = vars[at];
    // exponent 0
    enumerate(vars, at + 1, budget, current, out);
    let max_exp = match v.parity {
        Parity::Even => budget,
        Parity::Odd => budget.min(1),
    };
    for e in 1..=max_exp {
        let next = match v.parity {
            Parity::Even => {
                let mut m = current.clone();
                for _ in 0..e {
                    m = m.push_even(v);
                }
                m
            }
            Parity::Odd => current.push_odd_front(v).expect("odd var not repeated").1,
        };
        let mut next = next;
        enumerate(vars, at + 1, budget - e, &mut next, out);
        if v.parity == Parity::Odd {
            break;
        }
    }
}

/// A fixed ordered basis with O(1) monomial -> coordinate lookup.
pub struct BasisIndex {
    monomials: Vec<Monomial>,
    lookup: HashMap<Monomial, usize>,
}

impl BasisIndex {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let lookup = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        BasisIndex { monomials, lookup }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.lookup.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_basis_of_gl22() {
        // {x2^2, x2*y1, x2*y2, y1*y2}
        let sig = Signature::finite(2, 2).unwrap();
        let basis = monomials_of_degree(&sig, (0, 0), 2);
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn affine_window_count() {
        // gl(1|1), modes -1..1, degree <= 2: odd variables only, so
        // 1 + 3 + C(3,2) = 7 monomials.
        let sig = Signature::affine(1, 1).unwrap();
        let basis = monomials_up_to(&sig, (-1, 1), 2);
        assert_eq!(basis.len(), 7);
    }

    #[test]
    fn gl_1_0_is_trivial() {
        let sig = Signature::finite(1, 0).unwrap();
        let basis = monomials_up_to(&sig, (0, 0), 5);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_unit());
    }

    #[test]
    fn index_roundtrip() {
        let sig = Signature::finite(2, 1).unwrap();
        let idx = BasisIndex::new(monomials_up_to(&sig, (0, 0), 3));
        for i in 0..idx.len() {
            assert_eq!(idx.index_of(idx.monomial(i)), Some(i));
        }
    }
}
