//! Exact coefficient arithmetic: the polynomial ring Q[mu] and its fraction field.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational the way the element grammar expects: `p` or `p/q`.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Polynomial in the formal parameter mu over exact rationals.
///
/// The zero polynomial is the empty map; a zero rational is never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuPoly {
    coeffs: BTreeMap<u32, Rat>,
}

impl MuPoly {
    pub fn zero() -> Self {
        MuPoly::default()
    }

    pub fn one() -> Self {
        MuPoly::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        MuPoly { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        MuPoly::from_rat(rat(n))
    }

    /// The polynomial mu.
    pub fn mu() -> Self {
        MuPoly::term(1, Rat::one())
    }

    /// c * mu^deg.
    pub fn term(deg: u32, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        MuPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> Rat {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(Rat::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, deg: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(deg) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MuPoly::zero();
        }
        MuPoly {
            coeffs: self.coeffs.iter().map(|(d, a)| (*d, a * c)).collect(),
        }
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        // Horner over the dense range is overkill; powers are tiny here.
        for (d, c) in &self.coeffs {
            let mut p = Rat::one();
            for _ in 0..*d {
                p *= at;
            }
            acc += c * p;
        }
        acc
    }

    /// Exact euclidean division; panics on zero divisor.
    pub fn div_rem(&self, div: &MuPoly) -> (MuPoly, MuPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quo = MuPoly::zero();
        let ddeg = div.degree().unwrap();
        let dlead = div.leading_coeff();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = MuPoly::term(rdeg - ddeg, rem.leading_coeff() / &dlead);
            rem = &rem - &(&factor * div);
            quo = &quo + &factor;
        }
        (quo, rem)
    }

    /// Monic gcd in Q[mu].
    pub fn gcd(&self, other: &MuPoly) -> MuPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scale(&(Rat::one() / lead))
    }

    /// Signed content: the rational c with `self = c * primitive` where the
    /// primitive part has coprime integer coefficients and positive leading one.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.coeffs.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        content
    }

    pub fn primitive_part(&self) -> MuPoly {
        if self.is_zero() {
            return MuPoly::zero();
        }
        let c = self.content();
        self.scale(&(Rat::one() / c))
    }

    /// Canonical text form used by the element grammar: `3`, `mu`, `2*mu^2`,
    /// `(mu^2 - 1)`, `2*(mu - 1)`, `-1/2*(2*mu - 3)`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if let Some(c) = self.as_constant() {
            return rat_string(&c);
        }
        if self.coeffs.len() == 1 {
            let (deg, c) = self.coeffs.iter().next_back().unwrap();
            return format!("{}{}", single_term_prefix(c), mu_power(*deg));
        }
        let content = self.content();
        let prim = self.primitive_part();
        let mut body = String::new();
        for (deg, c) in prim.coeffs.iter().rev() {
            let mag = c.abs();
            if body.is_empty() {
                // Leading coefficient of the primitive part is positive.
                body.push_str(&format!("{}{}", single_term_prefix(&mag), mu_power(*deg)));
            } else {
                let op = if c.is_negative() { " - " } else { " + " };
                body.push_str(op);
                if *deg == 0 {
                    body.push_str(&rat_string(&mag));
                } else {
                    body.push_str(&format!("{}{}", single_term_prefix(&mag), mu_power(*deg)));
                }
            }
        }
        if content.is_one() {
            format!("({body})")
        } else {
            format!("{}*({body})", rat_string(&content))
        }
    }
}

fn mu_power(deg: u32) -> String {
    match deg {
        0 => "1".to_string(),
        1 => "mu".to_string(),
        d => format!("mu^{d}"),
    }
}

fn single_term_prefix(c: &Rat) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{}*", rat_string(c))
    }
}

impl fmt::Display for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Add for &MuPoly {
    type Output = MuPoly;
    fn add(self, rhs: &MuPoly) -> MuPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.insert_add(*d, c.clone());
        }
        out
    }
}

impl Sub for &MuPoly {
    type Output = MuPoly;
    fn sub(self, rhs: &MuPoly) -> MuPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.insert_add(*d, -c.clone());
        }
        out
    }
}

impl Neg for &MuPoly {
    type Output = MuPoly;
    fn neg(self) -> MuPoly {
        MuPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect(),
        }
    }
}

impl Mul for &MuPoly {
    type Output = MuPoly;
    fn mul(self, rhs: &MuPoly) -> MuPoly {
        let mut out = MuPoly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.insert_add(da + db, ca * cb);
            }
        }
        out
    }
}

/// Element of Q(mu), normalized with a monic denominator coprime to the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: MuPoly,
    den: MuPoly,
}

impl RatFn {
    pub fn new(num: MuPoly, den: MuPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(mu)");
        let mut r = RatFn { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: MuPoly) -> Self {
        RatFn { num: p, den: MuPoly::one() }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(MuPoly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(MuPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &MuPoly {
        &self.num
    }

    pub fn denom(&self) -> &MuPoly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MuPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading_coeff();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RatFn) -> RatFn {
        assert!(!o.is_zero(), "division by zero in Q(mu)");
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
