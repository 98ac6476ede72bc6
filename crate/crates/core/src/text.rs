//! The canonical exchange grammar for elements and generator labels.
//!
//! Monomials: `x2^3*x4*y1*y3` (non-affine) or `x2(-1)^2*y1(3)` (affine).
//! Elements: ` + `-separated `coeff * monomial` terms, coefficients printed as
//! polynomials in `mu`, e.g. `2*(mu - 1) * x2`. Generators: `e[1,2]`,
//! `e[2,3](-1)`, `d`, `K`.

use crate::coeff::{MuPoly, Rat};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Signature, Variable};
use num::One;
use std::str::FromStr;

/// A parsed generator label, before being bound to a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    MatrixUnit { i: u16, j: u16, mode: Option<i32> },
    Central,
    Derivation,
}

pub fn parse_element(sig: &Signature, input: &str) -> Result<Element> {
    let mut p = Parser::new(input);
    let e = p.element(sig)?;
    p.expect_end()?;
    Ok(e)
}

/// Parse a single canonical monomial (an element with exactly one term and
/// coefficient one).
pub fn parse_monomial(sig: &Signature, input: &str) -> Result<Monomial> {
    let e = parse_element(sig, input)?;
    match e.as_single_term() {
        Some((m, c)) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("`{input}` is not a canonical monomial with coefficient 1"),
        }),
    }
}

pub fn parse_generator(input: &str) -> Result<GeneratorSpec> {
    let mut p = Parser::new(input);
    let g = p.generator()?;
    p.expect_end()?;
    Ok(g)
}

pub fn parse_rational(input: &str) -> Result<Rat> {
    let cleaned: String = input
        .trim()
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    Rat::from_str(&cleaned).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{input}`: {e}"),
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        Parser { chars: input.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    /// Minus sign, accepting the typographic variant.
    fn eat_minus(&mut self) -> bool {
        self.eat('-') || self.eat('\u{2212}')
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("number `{s}` out of range"),
        })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.eat_minus() {
            true
        } else {
            let _ = self.eat('+');
            false
        };
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rat> {
        let n = self.uint()?;
        let mut r = Rat::from_integer(n.into());
        // No whitespace laxity inside a fraction: `3/2`.
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.uint()?;
            if d == 0 {
                return self.err("zero denominator");
            }
            r = Rat::new(r.numer().clone(), d.into());
        }
        Ok(r)
    }

    fn element(&mut self, sig: &Signature) -> Result<Element> {
        let mut acc = Element::zero();
        self.skip_ws();
        let mut negate = self.eat_minus();
        loop {
            let term = self.term(sig)?;
            if negate {
                acc.sub_assign(&term);
            } else {
                acc.add_assign(&term);
            }
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') | Some('\u{2212}') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self, sig: &Signature) -> Result<Element> {
        let mut acc = Element::unit();
        loop {
            let factor = self.factor(sig)?;
            acc = acc.mul(&factor);
            if !self.eat('*') {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self, sig: &Signature) -> Result<Element> {
        self.skip_ws();
        match self.peek() {
            Some('x') | Some('y') => self.variable(sig),
            Some('m') => {
                let p = self.mu_power()?;
                Ok(Element::from_term(Monomial::unit(), p))
            }
            Some('(') => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(Element::from_term(Monomial::unit(), p))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(Element::from_term(Monomial::unit(), MuPoly::from_rat(r)))
            }
            _ => self.err("expected a variable, number, `mu`, or `(`"),
        }
    }

    fn variable(&mut self, sig: &Signature) -> Result<Element> {
        let name = self.bump().unwrap();
        let index = self.uint()? as u16;
        let mode = if self.peek() == Some('(') {
            self.pos += 1;
            let r = self.int()?;
            self.expect(')')?;
            i32::try_from(r).map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "mode out of range".into(),
            })?
        } else {
            0
        };
        let v = match name {
            'x' => Variable::even(index, mode),
            _ => Variable::odd(index, mode),
        };
        sig.check_var(&v)?;
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            self.uint()? as u32
        } else {
            1
        };
        let single = Element::from_monomial(Monomial::var(v));
        let mut acc = Element::unit();
        for _ in 0..exp {
            acc = acc.mul(&single);
        }
        Ok(acc)
    }

    /// `mu` with an optional exponent.
    fn mu_power(&mut self) -> Result<MuPoly> {
        self.skip_ws();
        if self.peek() == Some('m') && self.chars.get(self.pos + 1) == Some(&'u') {
            self.pos += 2;
        } else {
            return self.err("expected `mu`");
        }
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            self.uint()? as u32
        } else {
            1
        };
        Ok(MuPoly::term(exp, Rat::one()))
    }

    /// Polynomial in mu inside parentheses: `mu^2 - 2*mu + 1`.
    fn poly(&mut self) -> Result<MuPoly> {
        let mut acc = MuPoly::zero();
        self.skip_ws();
        let mut negate = self.eat_minus();
        loop {
            let t = self.poly_term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') | Some('\u{2212}') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn poly_term(&mut self) -> Result<MuPoly> {
        self.skip_ws();
        match self.peek() {
            Some('m') => self.mu_power(),
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                if self.eat('*') {
                    let p = self.mu_power()?;
                    Ok(p.scale(&r))
                } else {
                    Ok(MuPoly::from_rat(r))
                }
            }
            _ => self.err("expected a polynomial term"),
        }
    }

    fn generator(&mut self) -> Result<GeneratorSpec> {
        self.skip_ws();
        match self.peek() {
            Some('d') => {
                self.pos += 1;
                Ok(GeneratorSpec::Derivation)
            }
            Some('K') => {
                self.pos += 1;
                Ok(GeneratorSpec::Central)
            }
            Some('e') => {
                self.pos += 1;
                self.expect('[')?;
                let i = self.uint()? as u16;
                self.expect(',')?;
                let j = self.uint()? as u16;
                self.expect(']')?;
                let mode = if self.eat('(') {
                    let r = self.int()? as i32;
                    self.expect(')')?;
                    Some(r)
                } else {
                    None
                };
                Ok(GeneratorSpec::MatrixUnit { i, j, mode })
            }
            _ => self.err("expected `e[i,j]`, `d`, or `K`"),
        }
    }
}

/// Render a generator label in the grammar.
pub fn generator_string(spec: &GeneratorSpec) -> String {
    match spec {
        GeneratorSpec::MatrixUnit { i, j, mode: None } => format!("e[{i},{j}]"),
        GeneratorSpec::MatrixUnit { i, j, mode: Some(r) } => format!("e[{i},{j}]({r})"),
        GeneratorSpec::Central => "K".to_string(),
        GeneratorSpec::Derivation => "d".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_frac};

    fn sig21() -> Signature {
        Signature::finite(2, 1).unwrap()
    }

    #[test]
    fn parse_plain_monomial() {
        let sig = Signature::finite(4, 3).unwrap();
        let m = parse_monomial(&sig, "x2^3*x4*y1*y3").unwrap();
        assert_eq!(m.render(false), "x2^3*x4*y1*y3");
        assert_eq!(m.degree(), 6);
    }

    #[test]
    fn parse_affine_monomial() {
        let sig = Signature::affine(2, 1).unwrap();
        let m = parse_monomial(&sig, "x2(-1)^2*y1(3)").unwrap();
        assert_eq!(m.render(true), "x2(-1)^2*y1(3)");
        // Typographic minus accepted.
        let m2 = parse_monomial(&sig, "x2(\u{2212}1)^2*y1(3)").unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn mode_rejected_when_finite() {
        assert!(parse_element(&sig21(), "y1(2)").is_err());
        // ...but an explicit zero mode is fine.
        assert!(parse_element(&sig21(), "y1(0)").is_ok());
    }

    #[test]
    fn parse_element_with_coefficients() {
        let sig = sig21();
        let e = parse_element(&sig, "2*(mu - 1) * x2 + y1 - 1/2").unwrap();
        assert_eq!(e.len(), 3);
        let c = e.coeff(&Monomial::var(Variable::even(2, 0)));
        assert_eq!(c, &MuPoly::term(1, rat(2)) - &MuPoly::from_int(2));
        assert_eq!(e.unit_coeff().as_constant().unwrap(), rat_frac(-1, 2));
    }

    #[test]
    fn parse_normalizes_odd_order() {
        let sig = Signature::finite(1, 2).unwrap();
        let e = parse_element(&sig, "y2*y1").unwrap();
        let canonical = parse_element(&sig, "y1*y2").unwrap();
        assert_eq!(e, (-&canonical));
        // ...and such an input is not accepted as a canonical monomial.
        assert!(parse_monomial(&sig, "y2*y1").is_err());
        assert!(parse_monomial(&sig, "y1*y2").is_ok());
    }

    #[test]
    fn print_parse_roundtrip() {
        let sig = Signature::finite(2, 2).unwrap();
        let e = parse_element(&sig, "(mu^2 - 1) * x2^2 + 3*mu * y1*y2 + 7/3 * x2").unwrap();
        let printed = e.render(false);
        let again = parse_element(&sig, &printed).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn zero_element() {
        let sig = sig21();
        assert!(parse_element(&sig, "0").unwrap().is_zero());
        assert!(parse_element(&sig, "x2 - x2").unwrap().is_zero());
    }

    #[test]
    fn generator_labels() {
        assert_eq!(
            parse_generator("e[1,2]").unwrap(),
            GeneratorSpec::MatrixUnit { i: 1, j: 2, mode: None }
        );
        assert_eq!(
            parse_generator("e[2,3](-1)").unwrap(),
            GeneratorSpec::MatrixUnit { i: 2, j: 3, mode: Some(-1) }
        );
        assert_eq!(parse_generator("d").unwrap(), GeneratorSpec::Derivation);
        assert_eq!(parse_generator("K").unwrap(), GeneratorSpec::Central);
        assert!(parse_generator("e[1]").is_err());
        for g in ["e[1,2]", "e[2,3](-1)", "d", "K"] {
            let spec = parse_generator(g).unwrap();
            assert_eq!(generator_string(&spec), g);
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("7/2").unwrap(), rat_frac(7, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("\u{2212}3").unwrap(), rat(-3));
        assert!(parse_rational("x").is_err());
    }
}

#[cfg(test)]
mod debug_roundtrip {
    use super::*;
    use crate::monomial::Variable;

    #[test]
    fn negative_unit_coeff_roundtrip() {
        let sig = Signature::finite(1, 1).unwrap();
        let mut e = Element::zero();
        e.add_term(Monomial::var(Variable::odd(1, 0)), MuPoly::from_int(-1));
        let printed = e.render(false);
        eprintln!("printed = {printed:?}");
        let parsed = parse_element(&sig, &printed).unwrap();
        assert_eq!(parsed, e);
    }
}
