//! The level-zero action of the affinization on the mode-indexed algebra:
//! loop operators, the derivation D, homomorphism verification, and the
//! irreducibility certificate machinery.

use crate::basis::{monomials_up_to, BasisIndex};
use crate::coeff::{MuPoly, Rat};
use crate::element::{eigenvalue_on, Element};
use crate::error::{Error, Result};
use crate::finite::{gl_superbracket, GlGenerator, HomReport, HomViolation, ReachOutcome};
use crate::linalg::SpanBasis;
use crate::monomial::{Monomial, Parity, Signature, Variable};
use num::{One, Zero};
use rayon::prelude::*;
use std::collections::VecDeque;
use std::fmt;

/// Generator of the affinization: a matrix unit with a loop mode, the central
/// element K (acting as zero), or the derivation d (acting as D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineGenerator {
    MatrixUnit { i: u16, j: u16, mode: i32 },
    Central,
    Derivation,
}

impl AffineGenerator {
    pub fn matrix_unit(sig: &Signature, i: u16, j: u16, mode: i32) -> Result<Self> {
        GlGenerator::new(sig, i, j)?;
        Ok(AffineGenerator::MatrixUnit { i, j, mode })
    }

    pub fn parity(&self, sig: &Signature) -> Parity {
        match self {
            AffineGenerator::MatrixUnit { i, j, .. } => GlGenerator { i: *i, j: *j }.parity(sig),
            _ => Parity::Even,
        }
    }

    pub fn is_odd(&self, sig: &Signature) -> bool {
        self.parity(sig) == Parity::Odd
    }
}

impl fmt::Display for AffineGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineGenerator::MatrixUnit { i, j, mode } => write!(f, "e[{i},{j}]({mode})"),
            AffineGenerator::Central => write!(f, "K"),
            AffineGenerator::Derivation => write!(f, "d"),
        }
    }
}

/// Inclusive bounds on the variable modes admitted in a truncated search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeWindow {
    pub lo: i32,
    pub hi: i32,
}

impl ModeWindow {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > 0 || hi < 0 {
            return Err(Error::BadModeWindow { lo, hi });
        }
        Ok(ModeWindow { lo, hi })
    }

    pub fn pair(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    /// Largest generator-mode magnitude that can move one in-window mode to
    /// another; outside this range every in-window image is zero or leaves.
    pub fn shift_range(&self) -> (i32, i32) {
        (self.lo - self.hi, self.hi - self.lo)
    }
}

fn source_var(sig: &Signature, i: u16, mode: i32) -> Variable {
    if i <= sig.m {
        Variable::even(i, mode)
    } else {
        Variable::odd(i - sig.m, mode)
    }
}

/// The mode sums in the loop operators collapse to the variable modes present
/// in each term, so every image is computed exactly without truncation.
fn diag_shift_term(r: i32, mono: &Monomial, c: &MuPoly, out: &mut Element) {
    for u in mono.support() {
        let shifted = Variable { mode: u.mode + r, ..u };
        match u.parity {
            Parity::Even => {
                let (exp, stripped) = mono.strip_even(&u).unwrap();
                let coeff = c.scale(&Rat::from_integer(exp.into()));
                out.add_term(stripped.push_even(shifted), -&coeff);
            }
            Parity::Odd => {
                let (s1, stripped) = mono.strip_odd(&u).unwrap();
                if let Some((s2, pushed)) = stripped.push_odd_front(shifted) {
                    let coeff = if s1 * s2 < 0 { c.clone() } else { -c };
                    out.add_term(pushed, coeff);
                }
            }
        }
    }
}

/// e_{1,1}(r) = mu delta_{r,0} - sum over present modes of the shift operators.
fn apply_e11_affine(sig: &Signature, r: i32, e: &Element) -> Element {
    let _ = sig;
    let mut out = if r == 0 {
        e.scale(&MuPoly::mu())
    } else {
        Element::zero()
    };
    for (mono, c) in e.terms() {
        diag_shift_term(r, mono, c, &mut out);
    }
    out
}

/// e_{i,j}(r) for i, j >= 2: replace one j-factor of mode q by an i-factor of
/// mode q + r, with the superderivation signs.
fn apply_shift(sig: &Signature, i: u16, j: u16, r: i32, e: &Element) -> Element {
    let mut out = Element::zero();
    for (mono, c) in e.terms() {
        let modes: Vec<i32> = mono
            .support()
            .into_iter()
            .filter(|u| {
                (u.parity == Parity::Even && j <= sig.m && u.index == j)
                    || (u.parity == Parity::Odd && j > sig.m && u.index == j - sig.m)
            })
            .map(|u| u.mode)
            .collect();
        for q in modes {
            let target = source_var(sig, j, q);
            let src = source_var(sig, i, q + r);
            match target.parity {
                Parity::Even => {
                    let (exp, stripped) = mono.strip_even(&target).unwrap();
                    let coeff = c.scale(&Rat::from_integer(exp.into()));
                    push_signed(&src, &stripped, coeff, &mut out);
                }
                Parity::Odd => {
                    let (s1, stripped) = mono.strip_odd(&target).unwrap();
                    let coeff = if s1 < 0 { -c } else { c.clone() };
                    push_signed(&src, &stripped, coeff, &mut out);
                }
            }
        }
    }
    out
}

fn push_signed(src: &Variable, mono: &Monomial, coeff: MuPoly, out: &mut Element) {
    match src.parity {
        Parity::Even => out.add_term(mono.push_even(*src), coeff),
        Parity::Odd => {
            if let Some((s, pushed)) = mono.push_odd_front(*src) {
                out.add_term(pushed, if s < 0 { -&coeff } else { coeff });
            }
        }
    }
}

/// Exact image of an element under an affine generator; K acts as zero.
pub fn apply_affine(sig: &Signature, g: AffineGenerator, e: &Element) -> Result<Element> {
    if !sig.affine {
        return Err(Error::WrongSignatureKind { expected: "affine" });
    }
    match g {
        AffineGenerator::Central => Ok(Element::zero()),
        AffineGenerator::Derivation => apply_d(sig, e),
        AffineGenerator::MatrixUnit { i, j, mode: r } => {
            GlGenerator::new(sig, i, j)?;
            match (i, j) {
                (1, 1) => Ok(apply_e11_affine(sig, r, e)),
                (i, 1) => crate::element::mul_var(sig, &source_var(sig, i, r), e),
                // e_{1,j}(r): the derivation factor acts first, then
                // e_{1,1}(r + q) for the struck mode q.
                (1, j) => {
                    let mut out = Element::zero();
                    for (mono, c) in e.terms() {
                        let modes: Vec<i32> = mono
                            .support()
                            .into_iter()
                            .filter(|u| {
                                (u.parity == Parity::Even && j <= sig.m && u.index == j)
                                    || (u.parity == Parity::Odd
                                        && j > sig.m
                                        && u.index == j - sig.m)
                            })
                            .map(|u| u.mode)
                            .collect();
                        for q in modes {
                            let target = source_var(sig, j, q);
                            let stripped = match target.parity {
                                Parity::Even => {
                                    let (exp, stripped) = mono.strip_even(&target).unwrap();
                                    Element::from_term(
                                        stripped,
                                        c.scale(&Rat::from_integer(exp.into())),
                                    )
                                }
                                Parity::Odd => {
                                    let (s, stripped) = mono.strip_odd(&target).unwrap();
                                    Element::from_term(
                                        stripped,
                                        if s < 0 { -c } else { c.clone() },
                                    )
                                }
                            };
                            out.add_assign(&apply_e11_affine(sig, r + q, &stripped));
                        }
                    }
                    Ok(out)
                }
                (i, j) => Ok(apply_shift(sig, i, j, r, e)),
            }
        }
    }
}

/// D scales every basis monomial by the sum of its modes.
pub fn apply_d(sig: &Signature, e: &Element) -> Result<Element> {
    if !sig.affine {
        return Err(Error::WrongSignatureKind { expected: "affine" });
    }
    let mut out = Element::zero();
    for (mono, c) in e.terms() {
        out.add_term(mono.clone(), c.scale(&Rat::from_integer(mono.mode_sum().into())));
    }
    Ok(out)
}

/// Superbracket of the affinization, including the central term
/// m1 delta_{m1,-n1} (a,b) K with the supertrace form
/// (E_ab, E_cd) = (-1)^{|a|} delta_{bc} delta_{ad}.
pub fn affine_superbracket(
    sig: &Signature,
    a: AffineGenerator,
    b: AffineGenerator,
) -> Result<Vec<(i64, AffineGenerator)>> {
    use AffineGenerator::*;
    Ok(match (a, b) {
        (Central, _) | (_, Central) => Vec::new(),
        (Derivation, Derivation) => Vec::new(),
        (Derivation, MatrixUnit { i, j, mode }) => {
            GlGenerator::new(sig, i, j)?;
            if mode == 0 {
                Vec::new()
            } else {
                vec![(mode as i64, MatrixUnit { i, j, mode })]
            }
        }
        (MatrixUnit { i, j, mode }, Derivation) => {
            GlGenerator::new(sig, i, j)?;
            if mode == 0 {
                Vec::new()
            } else {
                vec![(-(mode as i64), MatrixUnit { i, j, mode })]
            }
        }
        (MatrixUnit { i: i1, j: j1, mode: r1 }, MatrixUnit { i: i2, j: j2, mode: r2 }) => {
            let mut out: Vec<(i64, AffineGenerator)> = gl_superbracket(
                sig,
                GlGenerator { i: i1, j: j1 },
                GlGenerator { i: i2, j: j2 },
            )?
            .into_iter()
            .map(|(c, g)| (c, MatrixUnit { i: g.i, j: g.j, mode: r1 + r2 }))
            .collect();
            if r1 != 0 && r2 == -r1 && j1 == i2 && i1 == j2 {
                let sign = if sig.index_parity(i1) == Parity::Even { 1 } else { -1 };
                out.push((r1 as i64 * sign, Central));
            }
            out
        }
    })
}

/// Level-zero homomorphism sweep: every ordered pair of generators with modes
/// in `bracket_mode_range` (plus d and K), applied to every basis monomial
/// with variable modes in `window` and degree <= degree_cap.
pub fn verify_affine_homomorphism(
    sig: &Signature,
    window: ModeWindow,
    degree_cap: u32,
    bracket_mode_range: (i32, i32),
) -> Result<HomReport<AffineGenerator>> {
    if !sig.affine {
        return Err(Error::WrongSignatureKind { expected: "affine" });
    }
    let mut gens = Vec::new();
    for i in 1..=sig.dim() {
        for j in 1..=sig.dim() {
            for r in bracket_mode_range.0..=bracket_mode_range.1 {
                gens.push(AffineGenerator::MatrixUnit { i, j, mode: r });
            }
        }
    }
    gens.push(AffineGenerator::Derivation);
    gens.push(AffineGenerator::Central);

    let basis = monomials_up_to(sig, window.pair(), degree_cap);
    let images: Vec<Vec<Element>> = gens
        .par_iter()
        .map(|g| {
            basis
                .iter()
                .map(|v| apply_affine(sig, *g, &Element::from_monomial(v.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|a| (0..gens.len()).map(move |b| (a, b)))
        .collect();

    let violations: Vec<HomViolation<AffineGenerator>> = pairs
        .par_iter()
        .map(|&(gi, hi)| {
            let g = gens[gi];
            let h = gens[hi];
            let both_odd = g.is_odd(sig) && h.is_odd(sig);
            let bracket = affine_superbracket(sig, g, h)?;
            let mut found = Vec::new();
            for (vi, v) in basis.iter().enumerate() {
                let gh = apply_affine(sig, g, &images[hi][vi])?;
                let hg = apply_affine(sig, h, &images[gi][vi])?;
                let lhs = if both_odd { &gh + &hg } else { &gh - &hg };
                let mut rhs = Element::zero();
                for (c, t) in &bracket {
                    // psi(K) = 0: the central term is invisible at level zero.
                    if *t == AffineGenerator::Central {
                        continue;
                    }
                    let img = apply_affine(sig, *t, &Element::from_monomial(v.clone()))?;
                    rhs.add_assign(&img.scale(&MuPoly::from_int(*c)));
                }
                if lhs != rhs {
                    found.push(HomViolation { left: g, right: h, monomial: v.clone(), lhs, rhs });
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(HomReport {
        pairs_checked: pairs.len(),
        monomials_checked: basis.len(),
        violations,
    })
}

/// Search order for reachability: strip odd factors into even ones first,
/// then rearrange evens, then odd-to-odd and odd-to-even moves, then the
/// degree-lowering operators, then diagonal mode shifts. Within a class,
/// smaller |r| first with ties broken toward positive r.
fn reach_generators(sig: &Signature, window: ModeWindow) -> Vec<AffineGenerator> {
    let (rlo, rhi) = window.shift_range();
    let mut modes: Vec<i32> = (rlo..=rhi).collect();
    modes.sort_by_key(|r| (r.abs(), r.is_negative()));
    let class = |i: u16, j: u16| -> u8 {
        let even_i = i <= sig.m;
        let even_j = j <= sig.m;
        match (i, j) {
            (1, 1) => 5,
            (1, _) => 4,
            _ if even_i && !even_j => 0,
            _ if even_i && even_j => 1,
            _ if !even_i && !even_j => 2,
            _ => 3,
        }
    };
    let mut pairs: Vec<(u16, u16)> = Vec::new();
    for i in 1..=sig.dim() {
        for j in 2..=sig.dim() {
            pairs.push((i, j));
        }
    }
    pairs.push((1, 1));
    pairs.sort_by_key(|&(i, j)| (class(i, j), i, j));
    let mut out = Vec::new();
    for (i, j) in pairs {
        for &r in &modes {
            out.push(AffineGenerator::MatrixUnit { i, j, mode: r });
        }
    }
    out
}

/// Breadth-first closure of the span of `start` under the non-raising loop
/// operators, restricted to the window. Per the degree bookkeeping the degree
/// never needs to rise; images leaving the window are discarded, which only
/// shrinks the computed span.
pub fn reach_unit_affine(
    sig: &Signature,
    start: &Monomial,
    mu: &Rat,
    window: ModeWindow,
    step_cap: u32,
) -> Result<ReachOutcome<AffineGenerator>> {
    if !sig.affine {
        return Err(Error::WrongSignatureKind { expected: "affine" });
    }
    if mu.is_zero() {
        return Err(Error::MuZeroRejected);
    }
    sig.check_monomial(start)?;
    if !start.modes_within(window.lo, window.hi) {
        return Err(Error::MonomialOutsideWindow { lo: window.lo, hi: window.hi });
    }

    let idx = BasisIndex::new(monomials_up_to(sig, window.pair(), start.degree()));
    let gens = reach_generators(sig, window);

    let vector_of = |e: &Element| -> Option<Vec<Rat>> {
        let mut v = vec![Rat::zero(); idx.len()];
        for (m, c) in e.terms() {
            let i = idx.index_of(m)?;
            v[i] = c.as_constant().expect("specialized coefficients");
        }
        Some(v)
    };

    let mut span = SpanBasis::<Rat>::new(idx.len());
    let start_elem = Element::from_monomial(start.clone());
    span.insert(&vector_of(&start_elem).unwrap());
    let mut certificate: Option<Vec<AffineGenerator>> = None;

    let mut frontier = VecDeque::new();
    frontier.push_back((start_elem, Vec::new()));
    let mut depth = 0u32;
    'bfs: while !frontier.is_empty() && depth < step_cap {
        depth += 1;
        let mut next = VecDeque::new();
        while let Some((e, word)) = frontier.pop_front() {
            for g in &gens {
                let img = apply_affine(sig, *g, &e)?.specialize_mu(mu);
                if img.is_zero() {
                    continue;
                }
                let Some(vec) = vector_of(&img) else {
                    // Image leaves the mode window; skip it.
                    continue;
                };
                let expanded = span.insert(&vec);
                if certificate.is_none() && img.as_unit_multiple().is_some() {
                    let mut w = word.clone();
                    w.push(*g);
                    certificate = Some(w);
                    break 'bfs;
                }
                if expanded {
                    let mut w = word.clone();
                    w.push(*g);
                    next.push_back((img, w));
                }
            }
        }
        frontier = next;
    }

    let mut unit_vec = vec![Rat::zero(); idx.len()];
    unit_vec[idx.index_of(&Monomial::unit()).unwrap()] = Rat::one();
    let reached = span.contains(&unit_vec);

    Ok(ReachOutcome {
        reached,
        certificate,
        span_dim: span.rank(),
        space_dim: idx.len(),
    })
}

#[derive(Debug, Clone)]
pub struct MuZeroViolation {
    pub generator: AffineGenerator,
    pub monomial: Monomial,
    pub unit_coefficient: MuPoly,
}

/// Witness data for the invariant subspace at mu = 0.
#[derive(Debug, Clone)]
pub struct MuZeroReport {
    pub applications_checked: usize,
    pub degree_one_lowerings_checked: usize,
    pub degree_one_all_annihilated: bool,
    pub violations: Vec<MuZeroViolation>,
}

impl MuZeroReport {
    pub fn confirmed(&self) -> bool {
        self.violations.is_empty() && self.degree_one_all_annihilated
    }
}

/// At mu = 0, the span of all monomials of degree >= 1 is invariant: no
/// generator image of such a monomial has a component on the constant 1, and
/// every single lowering step from degree one collapses to zero outright.
pub fn mu_zero_witness(
    sig: &Signature,
    window: ModeWindow,
    degree_cap: u32,
) -> Result<MuZeroReport> {
    if !sig.affine {
        return Err(Error::WrongSignatureKind { expected: "affine" });
    }
    let mu = Rat::zero();
    let (rlo, rhi) = window.shift_range();
    let mut gens = Vec::new();
    for i in 1..=sig.dim() {
        for j in 1..=sig.dim() {
            for r in rlo..=rhi {
                gens.push(AffineGenerator::MatrixUnit { i, j, mode: r });
            }
        }
    }
    gens.push(AffineGenerator::Derivation);

    let basis: Vec<Monomial> = monomials_up_to(sig, window.pair(), degree_cap)
        .into_iter()
        .filter(|m| m.degree() >= 1)
        .collect();

    let mut violations = Vec::new();
    let mut checked = 0usize;
    let mut lowerings = 0usize;
    let mut degree_one_ok = true;
    for v in &basis {
        let elem = Element::from_monomial(v.clone());
        for g in &gens {
            let img = apply_affine(sig, *g, &elem)?.specialize_mu(&mu);
            checked += 1;
            let unit = img.unit_coeff();
            if !unit.is_zero() {
                violations.push(MuZeroViolation {
                    generator: *g,
                    monomial: v.clone(),
                    unit_coefficient: unit,
                });
            }
            if v.degree() == 1 {
                if let AffineGenerator::MatrixUnit { i: 1, j, .. } = g {
                    if *j >= 2 {
                        lowerings += 1;
                        if !img.is_zero() {
                            degree_one_ok = false;
                        }
                    }
                }
            }
        }
    }

    Ok(MuZeroReport {
        applications_checked: checked,
        degree_one_lowerings_checked: lowerings,
        degree_one_all_annihilated: degree_one_ok,
        violations,
    })
}

/// Weight under the affine Cartan: eigenvalues of E_{i,i}(0), the level
/// (always zero here), and the d-eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineWeight {
    pub diag: Vec<MuPoly>,
    pub level: i64,
    pub d_eigen: i64,
}

/// Closed form: (mu - deg, multiplicities...), level 0, d = sum of modes.
pub fn affine_weight_of(sig: &Signature, v: &Monomial) -> AffineWeight {
    let deg = MuPoly::from_int(v.degree() as i64);
    let mut diag = vec![&MuPoly::mu() - &deg];
    for i in 2..=sig.dim() {
        diag.push(MuPoly::from_int(v.index_multiplicity(sig, i) as i64));
    }
    AffineWeight { diag, level: 0, d_eigen: v.mode_sum() }
}

/// Cross-check by applying the diagonal operators and D.
pub fn affine_weight_by_action(sig: &Signature, v: &Monomial) -> Result<Option<AffineWeight>> {
    let elem = Element::from_monomial(v.clone());
    let mut diag = Vec::new();
    for i in 1..=sig.dim() {
        let img = apply_affine(sig, AffineGenerator::MatrixUnit { i, j: i, mode: 0 }, &elem)?;
        match eigenvalue_on(&img, v) {
            Some(lambda) => diag.push(lambda),
            None => return Ok(None),
        }
    }
    let d_img = apply_d(sig, &elem)?;
    let d_eigen = match eigenvalue_on(&d_img, v).and_then(|p| p.as_constant()) {
        Some(c) if c.denom().is_one() => {
            let num: num::BigInt = c.numer().clone();
            i64::try_from(num).ok()
        }
        _ => None,
    };
    let Some(d_eigen) = d_eigen else {
        return Ok(None);
    };
    Ok(Some(AffineWeight { diag, level: 0, d_eigen }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_frac};
    use crate::text::{parse_element, parse_monomial};

    fn sig(m: u16, n: u16) -> Signature {
        Signature::affine(m, n).unwrap()
    }

    fn mono(sig: &Signature, s: &str) -> Monomial {
        parse_monomial(sig, s).unwrap()
    }

    fn elem(sig: &Signature, s: &str) -> Element {
        parse_element(sig, s).unwrap()
    }

    fn mx(i: u16, j: u16, mode: i32) -> AffineGenerator {
        AffineGenerator::MatrixUnit { i, j, mode }
    }

    #[test]
    fn e11_zero_mode_counts_degree() {
        let s = sig(2, 1);
        let e = elem(&s, "x2(-3)");
        let img = apply_affine(&s, mx(1, 1, 0), &e).unwrap();
        assert_eq!(img, elem(&s, "(mu - 1) * x2(-3)"));
    }

    #[test]
    fn e11_nonzero_mode_shifts() {
        let s = sig(2, 1);
        let e = elem(&s, "x2(-3)");
        let img = apply_affine(&s, mx(1, 1, 5), &e).unwrap();
        assert_eq!(img, elem(&s, "-x2(2)"));
    }

    #[test]
    fn odd_strip_becomes_even() {
        // e_{2,m+1}(b) converts y_1(r) into x_2(r+b).
        let s = sig(2, 1);
        let e = elem(&s, "y1(1)");
        let img = apply_affine(&s, mx(2, 3, 2), &e).unwrap();
        assert_eq!(img, elem(&s, "x2(3)"));
    }

    #[test]
    fn lowering_on_single_even_mode() {
        // e_{1,2}(r) x_2(q) = mu delta_{r+q,0} * 1
        let s = sig(2, 1);
        let e = elem(&s, "x2(3)");
        let hit = apply_affine(&s, mx(1, 2, -3), &e).unwrap();
        assert_eq!(hit, Element::from_term(Monomial::unit(), MuPoly::mu()));
        let miss = apply_affine(&s, mx(1, 2, 1), &e).unwrap();
        assert!(miss.is_zero());
    }

    #[test]
    fn derivation_scales_by_mode_sum() {
        let s = sig(2, 1);
        assert!(apply_d(&s, &Element::unit()).unwrap().is_zero());
        let e = elem(&s, "x2(-1)*y1(3)");
        assert_eq!(apply_d(&s, &e).unwrap(), e.scale(&MuPoly::from_int(2)));
        let sq = elem(&s, "x2(2)^2");
        assert_eq!(apply_d(&s, &sq).unwrap(), sq.scale(&MuPoly::from_int(4)));
    }

    #[test]
    fn bracket_with_central_term() {
        let s = sig(3, 1);
        let b = affine_superbracket(&s, mx(2, 3, 2), mx(3, 2, -2)).unwrap();
        assert_eq!(
            b,
            vec![
                (1, mx(2, 2, 0)),
                (-1, mx(3, 3, 0)),
                (2, AffineGenerator::Central)
            ]
        );
    }

    #[test]
    fn bracket_with_derivation() {
        let s = sig(2, 1);
        let b = affine_superbracket(&s, AffineGenerator::Derivation, mx(1, 2, 5)).unwrap();
        assert_eq!(b, vec![(5, mx(1, 2, 5))]);
        assert!(affine_superbracket(&s, AffineGenerator::Central, mx(1, 2, 5))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn derivation_bracket_acts_correctly() {
        // [D, e_{2,1}(3)] applied to 1 equals 3 x_2(3).
        let s = sig(2, 1);
        let unit = Element::unit();
        let g = mx(2, 1, 3);
        let img = apply_affine(&s, g, &unit).unwrap();
        let d_of = apply_d(&s, &img).unwrap();
        let expected = elem(&s, "3 * x2(3)");
        assert_eq!(d_of, expected);
    }

    #[test]
    fn central_term_invisible_at_level_zero() {
        // [e_{2,3}(2), e_{3,2}(-2)] acts as (e_{2,2} - e_{3,3})(0); the 2K
        // part maps to zero.
        let s = sig(3, 1);
        let v = elem(&s, "x2(1)*x3(-1)");
        let a = apply_affine(&s, mx(2, 3, 2), &apply_affine(&s, mx(3, 2, -2), &v).unwrap()).unwrap();
        let b = apply_affine(&s, mx(3, 2, -2), &apply_affine(&s, mx(2, 3, 2), &v).unwrap()).unwrap();
        let lhs = &a - &b;
        let rhs = &apply_affine(&s, mx(2, 2, 0), &v).unwrap()
            - &apply_affine(&s, mx(3, 3, 0), &v).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reach_gl11_direct_hit() {
        let s = sig(1, 1);
        let w = ModeWindow::new(-2, 2).unwrap();
        let out = reach_unit_affine(&s, &mono(&s, "y1(0)"), &rat(1), w, 10).unwrap();
        assert!(out.reached);
        assert_eq!(out.certificate, Some(vec![mx(1, 2, 0)]));
    }

    #[test]
    fn reach_requires_nonzero_mu() {
        let s = sig(1, 1);
        let w = ModeWindow::new(-1, 1).unwrap();
        let err = reach_unit_affine(&s, &mono(&s, "y1(0)"), &Rat::zero(), w, 5);
        assert_eq!(err.unwrap_err(), Error::MuZeroRejected);
    }

    #[test]
    fn reach_two_even_modes() {
        let s = sig(2, 1);
        let w = ModeWindow::new(-1, 1).unwrap();
        let out = reach_unit_affine(&s, &mono(&s, "x2(-1)*y1(1)"), &rat(3), w, 10).unwrap();
        assert!(out.reached);
        assert!(out.certificate.is_some());
    }

    #[test]
    fn reach_fractional_mu() {
        let s = sig(1, 2);
        let w = ModeWindow::new(-2, 2).unwrap();
        let out = reach_unit_affine(&s, &mono(&s, "y1(2)"), &rat_frac(1, 2), w, 10).unwrap();
        assert!(out.reached);
        assert_eq!(out.certificate, Some(vec![mx(1, 2, -2)]));
    }

    #[test]
    fn mu_zero_witness_confirms() {
        let s = sig(1, 1);
        let w = ModeWindow::new(-1, 1).unwrap();
        let report = mu_zero_witness(&s, w, 2).unwrap();
        assert!(report.confirmed(), "{report:?}");
        assert!(report.degree_one_lowerings_checked > 0);
    }

    #[test]
    fn affine_weights() {
        let s = sig(2, 1);
        let v = mono(&s, "x2(-1)*y1(3)");
        let w = affine_weight_of(&s, &v);
        assert_eq!(
            w.diag,
            vec![
                &MuPoly::mu() - &MuPoly::from_int(2),
                MuPoly::from_int(1),
                MuPoly::from_int(1)
            ]
        );
        assert_eq!(w.level, 0);
        assert_eq!(w.d_eigen, 2);
        assert_eq!(affine_weight_by_action(&s, &v).unwrap().unwrap(), w);
        let sq = mono(&s, "x2(1)^2");
        let wq = affine_weight_of(&s, &sq);
        assert_eq!(wq.d_eigen, 2);
        assert_eq!(wq.diag[1], MuPoly::from_int(2));
    }

    #[test]
    fn window_validation() {
        assert!(ModeWindow::new(1, 2).is_err());
        assert!(ModeWindow::new(-2, -1).is_err());
        assert!(ModeWindow::new(-2, 2).is_ok());
        let s = sig(1, 1);
        let w = ModeWindow::new(-1, 1).unwrap();
        let far = mono(&s, "y1(5)");
        assert!(matches!(
            reach_unit_affine(&s, &far, &rat(1), w, 5),
            Err(Error::MonomialOutsideWindow { .. })
        ));
    }
}
