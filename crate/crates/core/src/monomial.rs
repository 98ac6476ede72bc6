//! Canonical monomials of the free supercommutative algebra on
//! x_i (i = 2..m, even) and y_k (k = 1..n, odd), with optional integer modes.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Shape of the algebra: gl(m|n) with m >= 1; `affine` decides whether
/// variables carry loop modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub m: u16,
    pub n: u16,
    pub affine: bool,
}

impl Signature {
    pub fn new(m: u16, n: u16, affine: bool) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidSignature(m as i64));
        }
        Ok(Signature { m, n, affine })
    }

    pub fn finite(m: u16, n: u16) -> Result<Self> {
        Signature::new(m, n, false)
    }

    pub fn affine(m: u16, n: u16) -> Result<Self> {
        Signature::new(m, n, true)
    }

    /// Dimension of the ambient matrix superalgebra.
    pub fn dim(&self) -> u16 {
        self.m + self.n
    }

    /// Parity of a matrix index: even for 1..=m, odd above.
    pub fn index_parity(&self, i: u16) -> Parity {
        if i <= self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn check_index(&self, i: u16) -> Result<()> {
        if i >= 1 && i <= self.dim() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange { i, j: i, m: self.m, n: self.n })
        }
    }

    pub fn check_var(&self, v: &Variable) -> Result<()> {
        let ok = match v.parity {
            Parity::Even => v.index >= 2 && v.index <= self.m,
            Parity::Odd => v.index >= 1 && v.index <= self.n,
        };
        if !ok {
            return Err(Error::VarOutOfRange {
                var: v.to_string(),
                m: self.m,
                n: self.n,
            });
        }
        if !self.affine && v.mode != 0 {
            return Err(Error::ModeInFiniteSignature(v.mode));
        }
        Ok(())
    }

    pub fn check_monomial(&self, mono: &Monomial) -> Result<()> {
        for (v, _) in mono.even_part() {
            self.check_var(v)?;
        }
        for v in mono.odd_part() {
            self.check_var(v)?;
        }
        Ok(())
    }

    /// All generators of the algebra with modes in the given window
    /// (the window is ignored for a non-affine signature).
    pub fn variables(&self, window: (i32, i32)) -> Vec<Variable> {
        let modes: Vec<i32> = if self.affine {
            (window.0..=window.1).collect()
        } else {
            vec![0]
        };
        let mut out = Vec::new();
        for i in 2..=self.m {
            for &r in &modes {
                out.push(Variable::even(i, r));
            }
        }
        for k in 1..=self.n {
            for &r in &modes {
                out.push(Variable::odd(k, r));
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// One generator of the algebra. The (parity, index, mode) derive order is
/// the canonical order used for sign normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub parity: Parity,
    pub index: u16,
    pub mode: i32,
}

impl Variable {
    pub fn even(index: u16, mode: i32) -> Self {
        Variable { parity: Parity::Even, index, mode }
    }

    pub fn odd(index: u16, mode: i32) -> Self {
        Variable { parity: Parity::Odd, index, mode }
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    fn render(&self, affine: bool) -> String {
        let name = match self.parity {
            Parity::Even => 'x',
            Parity::Odd => 'y',
        };
        if affine {
            format!("{}{}({})", name, self.index, self.mode)
        } else {
            format!("{}{}", name, self.index)
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.mode != 0))
    }
}

/// Sign-normalized monomial: even variables with exponents, odd variables as a
/// strictly increasing list. The empty monomial is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: BTreeMap<Variable, u32>,
    odd: Vec<Variable>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn is_unit(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    /// Single variable to the first power.
    pub fn var(v: Variable) -> Self {
        let mut mono = Monomial::unit();
        match v.parity {
            Parity::Even => {
                mono.even.insert(v, 1);
            }
            Parity::Odd => mono.odd.push(v),
        }
        mono
    }

    /// Build from even exponents and an odd factor set in any order.
    /// Returns None when an odd variable repeats (the square of an odd
    /// variable is zero). The sign accounts for sorting the odd factors.
    pub fn from_parts(
        even: impl IntoIterator<Item = (Variable, u32)>,
        odd: impl IntoIterator<Item = Variable>,
    ) -> Option<(i64, Monomial)> {
        let mut mono = Monomial::unit();
        for (v, e) in even {
            debug_assert_eq!(v.parity, Parity::Even);
            if e > 0 {
                *mono.even.entry(v).or_insert(0) += e;
            }
        }
        let mut sign = 1i64;
        for v in odd {
            debug_assert_eq!(v.parity, Parity::Odd);
            match mono.odd.binary_search(&v) {
                Ok(_) => return None,
                Err(pos) => {
                    // v moves left past everything after position `pos`.
                    if (mono.odd.len() - pos) % 2 == 1 {
                        sign = -sign;
                    }
                    mono.odd.insert(pos, v);
                }
            }
        }
        Some((sign, mono))
    }

    pub fn even_part(&self) -> impl Iterator<Item = (&Variable, &u32)> {
        self.even.iter()
    }

    pub fn odd_part(&self) -> &[Variable] {
        &self.odd
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        match v.parity {
            Parity::Even => self.even.get(v).copied().unwrap_or(0),
            Parity::Odd => u32::from(self.odd.binary_search(v).is_ok()),
        }
    }

    pub fn degree(&self) -> u32 {
        self.even.values().sum::<u32>() + self.odd.len() as u32
    }

    /// Parity of the monomial as an element of the superalgebra.
    pub fn parity(&self) -> Parity {
        if self.odd.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Number of factors (counting exponents) with matrix index `i`,
    /// where odd index k corresponds to matrix index m + k.
    pub fn index_multiplicity(&self, sig: &Signature, i: u16) -> u32 {
        if i <= sig.m {
            self.even
                .iter()
                .filter(|(v, _)| v.index == i)
                .map(|(_, e)| *e)
                .sum()
        } else {
            let k = i - sig.m;
            self.odd.iter().filter(|v| v.index == k).count() as u32
        }
    }

    /// Sum of modes over all factors, counted with exponent multiplicity.
    pub fn mode_sum(&self) -> i64 {
        let even: i64 = self
            .even
            .iter()
            .map(|(v, e)| v.mode as i64 * *e as i64)
            .sum();
        let odd: i64 = self.odd.iter().map(|v| v.mode as i64).sum();
        even + odd
    }

    /// Distinct variables occurring in this monomial, in canonical order.
    pub fn support(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self.even.keys().copied().collect();
        vars.extend(self.odd.iter().copied());
        vars.sort();
        vars
    }

    pub fn modes_within(&self, lo: i32, hi: i32) -> bool {
        self.support().iter().all(|v| v.mode >= lo && v.mode <= hi)
    }

    /// Multiply by a single even variable.
    pub fn push_even(&self, v: Variable) -> Monomial {
        debug_assert_eq!(v.parity, Parity::Even);
        let mut out = self.clone();
        *out.even.entry(v).or_insert(0) += 1;
        out
    }

    /// Left-multiply by a single odd variable; None when it squares to zero.
    /// The sign counts the odd factors the new variable passes over.
    pub fn push_odd_front(&self, v: Variable) -> Option<(i64, Monomial)> {
        debug_assert_eq!(v.parity, Parity::Odd);
        match self.odd.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.clone();
                out.odd.insert(pos, v);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, out))
            }
        }
    }

    /// Remove one power of an even variable; None if absent.
    pub fn strip_even(&self, v: &Variable) -> Option<(u32, Monomial)> {
        let e = *self.even.get(v)?;
        let mut out = self.clone();
        if e == 1 {
            out.even.remove(v);
        } else {
            out.even.insert(*v, e - 1);
        }
        Some((e, out))
    }

    /// Remove an odd variable acting as a left superderivation would:
    /// sign (-1)^(p-1) for the p-th odd factor. None if absent.
    pub fn strip_odd(&self, v: &Variable) -> Option<(i64, Monomial)> {
        let pos = self.odd.binary_search(v).ok()?;
        let mut out = self.clone();
        out.odd.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((sign, out))
    }

    pub fn render(&self, affine: bool) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (v, e) in &self.even {
            if *e == 1 {
                parts.push(v.render(affine));
            } else {
                parts.push(format!("{}^{}", v.render(affine), e));
            }
        }
        for v in &self.odd {
            parts.push(v.render(affine));
        }
        parts.join("*")
    }
}

/// Graded order: by total degree, then by the canonical variable content.
/// This is the order used for deterministic element printing.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let affine = self.support().iter().any(|v| v.mode != 0);
        f.write_str(&self.render(affine))
    }
}

/// Product of two canonical monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoProd {
    /// The odd parts intersect, so the product vanishes.
    Zero,
    Term { sign: i64, product: Monomial },
}

/// Multiply canonical monomials, merging the odd lists with the Koszul sign:
/// (-1)^(number of transpositions needed to interleave b's odd part into a's).
pub fn mono_mul(a: &Monomial, b: &Monomial) -> MonoProd {
    let mut even = a.even.clone();
    for (v, e) in &b.even {
        *even.entry(*v).or_insert(0) += e;
    }
    let mut odd = Vec::with_capacity(a.odd.len() + b.odd.len());
    let mut transpositions = 0usize;
    let mut ai = a.odd.iter().peekable();
    let mut bi = b.odd.iter().peekable();
    let mut remaining_a = a.odd.len();
    while let (Some(&&u), Some(&&v)) = (ai.peek(), bi.peek()) {
        match u.cmp(&v) {
            Ordering::Equal => return MonoProd::Zero,
            Ordering::Less => {
                odd.push(u);
                ai.next();
                remaining_a -= 1;
            }
            Ordering::Greater => {
                // v jumps over everything still unmerged from a.
                transpositions += remaining_a;
                odd.push(v);
                bi.next();
            }
        }
    }
    odd.extend(ai.copied());
    odd.extend(bi.copied());
    let sign = if transpositions % 2 == 0 { 1 } else { -1 };
    MonoProd::Term {
        sign,
        product: Monomial { even, odd },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u16) -> Variable {
        Variable::even(i, 0)
    }

    fn y(k: u16) -> Variable {
        Variable::odd(k, 0)
    }

    #[test]
    fn signature_requires_m_at_least_one() {
        assert!(Signature::finite(0, 3).is_err());
        assert!(Signature::finite(1, 0).is_ok());
    }

    #[test]
    fn mode_rejected_in_finite_signature() {
        let sig = Signature::finite(2, 1).unwrap();
        assert!(sig.check_var(&Variable::even(2, -1)).is_err());
        assert!(sig.check_var(&Variable::even(2, 0)).is_ok());
    }

    #[test]
    fn variable_range_checks() {
        let sig = Signature::finite(2, 1).unwrap();
        // There is no x_1.
        assert!(sig.check_var(&x(1)).is_err());
        assert!(sig.check_var(&x(2)).is_ok());
        assert!(sig.check_var(&x(3)).is_err());
        assert!(sig.check_var(&y(1)).is_ok());
        assert!(sig.check_var(&y(2)).is_err());
    }

    #[test]
    fn unit_law() {
        let m = Monomial::var(y(1));
        match mono_mul(&Monomial::unit(), &m) {
            MonoProd::Term { sign, product } => {
                assert_eq!(sign, 1);
                assert_eq!(product, m);
            }
            MonoProd::Zero => panic!("unit product vanished"),
        }
    }

    #[test]
    fn odd_anticommute() {
        let y1 = Monomial::var(y(1));
        let y2 = Monomial::var(y(2));
        match mono_mul(&y2, &y1) {
            MonoProd::Term { sign, product } => {
                assert_eq!(sign, -1);
                assert_eq!(product.odd_part(), &[y(1), y(2)]);
            }
            MonoProd::Zero => panic!("expected -y1*y2"),
        }
    }

    #[test]
    fn odd_square_is_zero() {
        let y1 = Monomial::var(y(1));
        assert_eq!(mono_mul(&y1, &y1), MonoProd::Zero);
    }

    #[test]
    fn mixed_product() {
        // (x2*y1) * (x2*y2) = +x2^2*y1*y2
        let (s1, a) = Monomial::from_parts([(x(2), 1)], [y(1)]).unwrap();
        let (s2, b) = Monomial::from_parts([(x(2), 1)], [y(2)]).unwrap();
        assert_eq!((s1, s2), (1, 1));
        match mono_mul(&a, &b) {
            MonoProd::Term { sign, product } => {
                assert_eq!(sign, 1);
                assert_eq!(product.exponent(&x(2)), 2);
                assert_eq!(product.odd_part(), &[y(1), y(2)]);
                assert_eq!(product.degree(), 4);
            }
            MonoProd::Zero => panic!("expected x2^2*y1*y2"),
        }
    }

    #[test]
    fn from_parts_sorts_with_sign() {
        // y2 then y1 needs one transposition.
        let (sign, mono) = Monomial::from_parts([], [y(2), y(1)]).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(mono.odd_part(), &[y(1), y(2)]);
        assert!(Monomial::from_parts([], [y(1), y(1)]).is_none());
    }

    #[test]
    fn strip_odd_signs() {
        let (_, m) = Monomial::from_parts([], [y(1), y(2), y(3)]).unwrap();
        let (s1, _) = m.strip_odd(&y(1)).unwrap();
        let (s2, _) = m.strip_odd(&y(2)).unwrap();
        let (s3, _) = m.strip_odd(&y(3)).unwrap();
        assert_eq!((s1, s2, s3), (1, -1, 1));
        assert!(m.strip_odd(&y(4)).is_none());
    }

    #[test]
    fn render_modes() {
        let (_, m) = Monomial::from_parts(
            [(Variable::even(2, -1), 2)],
            [Variable::odd(1, 3)],
        )
        .unwrap();
        assert_eq!(m.render(true), "x2(-1)^2*y1(3)");
        let (_, f) = Monomial::from_parts([(x(2), 3), (x(4), 1)], [y(1), y(3)]).unwrap();
        assert_eq!(f.render(false), "x2^3*x4*y1*y3");
    }

    #[test]
    fn graded_order_is_by_degree_first() {
        let a = Monomial::var(x(2));
        let (_, b) = Monomial::from_parts([], [y(1), y(2)]).unwrap();
        assert!(a < b);
    }
}
