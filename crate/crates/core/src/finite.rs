//! The gl(m|n) action on W: matrix units as differential/multiplication
//! operators, superbrackets, homomorphism verification, weight theory,
//! singular vectors, the maximal submodule V(mu), and reachability.

use crate::basis::{monomials_up_to, BasisIndex};
use crate::coeff::{MuPoly, Rat, RatFn};
use crate::element::{eigenvalue_on, mul_var, partial, Element};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SpanBasis};
use crate::monomial::{Monomial, Parity, Signature, Variable};
use num::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

/// Matrix unit E_{i,j} of gl(m|n), 1-based indices in 1..=m+n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlGenerator {
    pub i: u16,
    pub j: u16,
}

impl GlGenerator {
    pub fn new(sig: &Signature, i: u16, j: u16) -> Result<Self> {
        if i < 1 || i > sig.dim() || j < 1 || j > sig.dim() {
            return Err(Error::GeneratorOutOfRange { i, j, m: sig.m, n: sig.n });
        }
        Ok(GlGenerator { i, j })
    }

    pub fn parity(&self, sig: &Signature) -> Parity {
        if sig.index_parity(self.i) == sig.index_parity(self.j) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self, sig: &Signature) -> bool {
        self.parity(sig) == Parity::Odd
    }
}

impl fmt::Display for GlGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{},{}]", self.i, self.j)
    }
}

/// All m+n squared matrix units in row-major order.
pub fn all_generators(sig: &Signature) -> Vec<GlGenerator> {
    let d = sig.dim();
    (1..=d)
        .flat_map(|i| (1..=d).map(move |j| GlGenerator { i, j }))
        .collect()
}

/// The simple raising operators e_{k,k+1} of the standard Borel.
pub fn simple_raising(sig: &Signature) -> Vec<GlGenerator> {
    (1..sig.dim()).map(|k| GlGenerator { i: k, j: k + 1 }).collect()
}

fn var_for_index(sig: &Signature, i: u16) -> Variable {
    if i <= sig.m {
        Variable::even(i, 0)
    } else {
        Variable::odd(i - sig.m, 0)
    }
}

/// e_{1,1} = mu - sum_s x_s d/dx_s - sum_t y_t d/dy_t.
fn apply_e11(sig: &Signature, e: &Element) -> Result<Element> {
    let mut out = e.scale(&MuPoly::mu());
    for v in sig.variables((0, 0)) {
        let d = partial(sig, &v, e)?;
        out.sub_assign(&mul_var(sig, &v, &d)?);
    }
    Ok(out)
}

/// Exact image of an element under the free-field operator for E_{i,j}.
pub fn apply_gl(sig: &Signature, g: GlGenerator, e: &Element) -> Result<Element> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    let GlGenerator { i, j } = GlGenerator::new(sig, g.i, g.j)?;
    match (i, j) {
        (1, 1) => apply_e11(sig, e),
        // e_{i,1} and e_{m+k,1} multiply by the corresponding variable.
        (i, 1) => mul_var(sig, &var_for_index(sig, i), e),
        // e_{1,j} = e_{1,1} ∘ d/dx_j: the derivation acts first.
        (1, j) => {
            let d = partial(sig, &var_for_index(sig, j), e)?;
            apply_e11(sig, &d)
        }
        (i, j) => {
            let d = partial(sig, &var_for_index(sig, j), e)?;
            mul_var(sig, &var_for_index(sig, i), &d)
        }
    }
}

/// Superbracket of matrix units:
/// [E_ab, E_cd] = delta_bc E_ad - (-1)^(p(E_ab)p(E_cd)) delta_da E_cb.
pub fn gl_superbracket(
    sig: &Signature,
    a: GlGenerator,
    b: GlGenerator,
) -> Result<Vec<(i64, GlGenerator)>> {
    GlGenerator::new(sig, a.i, a.j)?;
    GlGenerator::new(sig, b.i, b.j)?;
    let mut acc: BTreeMap<GlGenerator, i64> = BTreeMap::new();
    if a.j == b.i {
        *acc.entry(GlGenerator { i: a.i, j: b.j }).or_insert(0) += 1;
    }
    if b.j == a.i {
        let sign = if a.is_odd(sig) && b.is_odd(sig) { 1 } else { -1 };
        *acc.entry(GlGenerator { i: b.i, j: a.j }).or_insert(0) += sign;
    }
    Ok(acc.into_iter().filter(|(_, c)| *c != 0).map(|(g, c)| (c, g)).collect())
}

/// One failed instance of the homomorphism identity.
#[derive(Debug, Clone)]
pub struct HomViolation<G> {
    pub left: G,
    pub right: G,
    pub monomial: Monomial,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Debug, Clone)]
pub struct HomReport<G> {
    pub pairs_checked: usize,
    pub monomials_checked: usize,
    pub violations: Vec<HomViolation<G>>,
}

impl<G> HomReport<G> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check [phi(g), phi(h)] = phi([g,h]) on every basis monomial of degree
/// <= degree_cap, for every ordered generator pair, exactly in Q[mu].
pub fn verify_finite_homomorphism(
    sig: &Signature,
    degree_cap: u32,
) -> Result<HomReport<GlGenerator>> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    let gens = all_generators(sig);
    let basis = monomials_up_to(sig, (0, 0), degree_cap);
    let images: Vec<Vec<Element>> = gens
        .iter()
        .map(|g| {
            basis
                .iter()
                .map(|v| apply_gl(sig, *g, &Element::from_monomial(v.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|a| (0..gens.len()).map(move |b| (a, b)))
        .collect();

    let violations: Vec<HomViolation<GlGenerator>> = pairs
        .par_iter()
        .map(|&(gi, hi)| {
            let g = gens[gi];
            let h = gens[hi];
            let both_odd = g.is_odd(sig) && h.is_odd(sig);
            let bracket = gl_superbracket(sig, g, h)?;
            let mut found = Vec::new();
            for (vi, v) in basis.iter().enumerate() {
                let gh = apply_gl(sig, g, &images[hi][vi])?;
                let hg = apply_gl(sig, h, &images[gi][vi])?;
                let lhs = if both_odd { &gh + &hg } else { &gh - &hg };
                let mut rhs = Element::zero();
                for (c, t) in &bracket {
                    let img = apply_gl(sig, *t, &Element::from_monomial(v.clone()))?;
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

/// Eigenvalue vector under E_{1,1}, ..., E_{m+n,m+n}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<MuPoly>);

/// Values on the sl(m|n) Cartan basis
/// {E_{1,1}-E_{i,i} | i=2..m} followed by {E_{1,1}+E_{m+k,m+k} | k=1..n}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlWeight(pub Vec<MuPoly>);

/// Closed form: the weight of v(a;b) is (mu - deg, a_2, ..., a_m, b_1, ..., b_n).
pub fn weight_of(sig: &Signature, v: &Monomial) -> Weight {
    let deg = MuPoly::from_int(v.degree() as i64);
    let mut entries = vec![&MuPoly::mu() - &deg];
    for i in 2..=sig.dim() {
        entries.push(MuPoly::from_int(v.index_multiplicity(sig, i) as i64));
    }
    Weight(entries)
}

/// Closed form on the sl Cartan basis: mu - a_i - deg and mu + b_k - deg.
pub fn sl_weight_of(sig: &Signature, v: &Monomial) -> SlWeight {
    let deg = MuPoly::from_int(v.degree() as i64);
    let mut entries = Vec::new();
    for i in 2..=sig.m {
        let a = MuPoly::from_int(v.index_multiplicity(sig, i) as i64);
        entries.push(&(&MuPoly::mu() - &a) - &deg);
    }
    for k in 1..=sig.n {
        let b = MuPoly::from_int(v.index_multiplicity(sig, sig.m + k) as i64);
        entries.push(&(&MuPoly::mu() + &b) - &deg);
    }
    SlWeight(entries)
}

/// Cross-check: extract the eigenvalue vector by actually applying the
/// diagonal operators. None when some image is not a scalar multiple.
pub fn weight_by_action(sig: &Signature, v: &Monomial) -> Result<Option<Weight>> {
    let elem = Element::from_monomial(v.clone());
    let mut entries = Vec::new();
    for i in 1..=sig.dim() {
        let img = apply_gl(sig, GlGenerator { i, j: i }, &elem)?;
        match eigenvalue_on(&img, v) {
            Some(lambda) => entries.push(lambda),
            None => return Ok(None),
        }
    }
    Ok(Some(Weight(entries)))
}

/// Cross-check of `sl_weight_of` by operator application.
pub fn sl_weight_by_action(sig: &Signature, v: &Monomial) -> Result<Option<SlWeight>> {
    let elem = Element::from_monomial(v.clone());
    let e11 = apply_gl(sig, GlGenerator { i: 1, j: 1 }, &elem)?;
    let mut entries = Vec::new();
    for i in 2..=sig.m {
        let eii = apply_gl(sig, GlGenerator { i, j: i }, &elem)?;
        match eigenvalue_on(&(&e11 - &eii), v) {
            Some(lambda) => entries.push(lambda),
            None => return Ok(None),
        }
    }
    for k in 1..=sig.n {
        let i = sig.m + k;
        let eii = apply_gl(sig, GlGenerator { i, j: i }, &elem)?;
        match eigenvalue_on(&(&e11 + &eii), v) {
            Some(lambda) => entries.push(lambda),
            None => return Ok(None),
        }
    }
    Ok(Some(SlWeight(entries)))
}

#[derive(Debug, Clone)]
pub struct CollisionPair {
    pub first: Monomial,
    pub second: Monomial,
    pub sl_weight: SlWeight,
}

/// Pairs of distinct basis monomials sharing an sl-weight. The enumeration
/// reaches one degree past the cap so that every pair whose lower-degree
/// member fits under the cap is reported (for m = n the partners differ in
/// degree by exactly one).
pub fn weight_collisions(sig: &Signature, degree_cap: u32) -> Result<Vec<CollisionPair>> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    let mut groups: BTreeMap<Vec<MuPoly>, Vec<Monomial>> = BTreeMap::new();
    for v in monomials_up_to(sig, (0, 0), degree_cap + 1) {
        groups.entry(sl_weight_of(sig, &v).0).or_default().push(v);
    }
    let mut out = Vec::new();
    for (w, group) in groups {
        for a in 0..group.len() {
            for b in a + 1..group.len() {
                out.push(CollisionPair {
                    first: group[a].clone(),
                    second: group[b].clone(),
                    sl_weight: SlWeight(w.clone()),
                });
            }
        }
    }
    out.sort_by(|p, q| p.first.cmp(&q.first).then_with(|| p.second.cmp(&q.second)));
    Ok(out)
}

/// How the parameter is treated by the singular-vector solver.
#[derive(Debug, Clone)]
pub enum MuMode {
    Symbolic,
    Rational(Rat),
}

#[derive(Debug, Clone)]
pub struct SingularVector {
    pub sl_weight: SlWeight,
    pub vector: Element,
}

/// Vectors of degree <= degree_cap annihilated by every simple raising
/// operator, solved weight space by weight space with exact elimination.
/// Symbolic mode demands vanishing identically in mu.
pub fn singular_vectors(
    sig: &Signature,
    degree_cap: u32,
    mode: &MuMode,
) -> Result<Vec<SingularVector>> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    let raising = simple_raising(sig);
    let mut groups: BTreeMap<Vec<MuPoly>, Vec<Monomial>> = BTreeMap::new();
    for v in monomials_up_to(sig, (0, 0), degree_cap) {
        groups.entry(sl_weight_of(sig, &v).0).or_default().push(v);
    }

    let mut out = Vec::new();
    for (w, group) in groups {
        // Rows of the annihilation system: one per (raising op, image monomial).
        let mut row_of: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut rows: Vec<Vec<MuPoly>> = Vec::new();
        for (col, v) in group.iter().enumerate() {
            for (op, r) in raising.iter().enumerate() {
                let img = apply_gl(sig, *r, &Element::from_monomial(v.clone()))?;
                for (m, c) in img.terms() {
                    let next = rows.len();
                    let idx = *row_of.entry((op, m.clone())).or_insert(next);
                    if idx == rows.len() {
                        rows.push(vec![MuPoly::zero(); group.len()]);
                    }
                    rows[idx][col] = c.clone();
                }
            }
        }

        let solutions: Vec<Vec<MuPoly>> = match mode {
            MuMode::Symbolic => {
                let mat: Vec<Vec<RatFn>> = rows
                    .iter()
                    .map(|r| r.iter().map(|p| RatFn::from_poly(p.clone())).collect())
                    .collect();
                nullspace(&mat, group.len())
                    .into_iter()
                    .map(|v| clear_to_polynomials(&v))
                    .collect()
            }
            MuMode::Rational(mu) => {
                let mat: Vec<Vec<Rat>> = rows
                    .iter()
                    .map(|r| r.iter().map(|p| p.eval(mu)).collect())
                    .collect();
                nullspace(&mat, group.len())
                    .into_iter()
                    .map(|v| {
                        let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap();
                        v.iter()
                            .map(|c| MuPoly::from_rat(c / &lead))
                            .collect()
                    })
                    .collect()
            }
        };

        for sol in solutions {
            let mut vector = Element::zero();
            for (c, m) in sol.iter().zip(&group) {
                vector.add_term(m.clone(), c.clone());
            }
            if !vector.is_zero() {
                out.push(SingularVector { sl_weight: SlWeight(w.clone()), vector });
            }
        }
    }
    out.sort_by(|a, b| {
        let ka = a.vector.terms().next().map(|(m, _)| m.clone());
        let kb = b.vector.terms().next().map(|(m, _)| m.clone());
        ka.cmp(&kb)
    });
    Ok(out)
}

/// Scale a Q(mu) vector to coprime Q[mu] entries whose first nonzero entry is
/// primitive with a positive leading coefficient.
fn clear_to_polynomials(v: &[RatFn]) -> Vec<MuPoly> {
    let mut lcm = MuPoly::one();
    for f in v {
        if !f.is_zero() {
            let g = lcm.gcd(f.denom());
            lcm = &lcm.div_rem(&g).0 * f.denom();
        }
    }
    let mut polys: Vec<MuPoly> = v
        .iter()
        .map(|f| {
            if f.is_zero() {
                MuPoly::zero()
            } else {
                let extra = lcm.div_rem(f.denom()).0;
                f.numer() * &extra
            }
        })
        .collect();
    let mut g = MuPoly::zero();
    for p in &polys {
        if !p.is_zero() {
            g = if g.is_zero() { p.clone() } else { g.gcd(p) };
        }
    }
    if !g.is_zero() && !g.is_one() {
        for p in polys.iter_mut() {
            *p = p.div_rem(&g).0;
        }
    }
    if let Some(first) = polys.iter().find(|p| !p.is_zero()) {
        let c = first.content();
        if !c.is_one() {
            let inv = Rat::one() / c;
            for p in polys.iter_mut() {
                *p = p.scale(&inv);
            }
        }
    }
    polys
}

fn check_vmu_parameters(sig: &Signature, mu: i64) -> Result<()> {
    if mu < 0 {
        return Err(Error::InvalidMu(mu.to_string(), "must be a nonnegative integer"));
    }
    if sig.m == 1 && mu >= sig.n as i64 {
        return Err(Error::InvalidMu(
            mu.to_string(),
            "for m = 1 the module is irreducible unless mu < n, so V(mu) is undefined",
        ));
    }
    Ok(())
}

/// Generator of the unique maximal submodule V(mu):
/// x_2^(mu+1) for m >= 2, or y_1...y_(mu+1) for m = 1 and mu <= n-1.
pub fn vmu_generator(sig: &Signature, mu: i64) -> Result<Monomial> {
    check_vmu_parameters(sig, mu)?;
    if sig.m >= 2 {
        let (_, m) = Monomial::from_parts([(Variable::even(2, 0), mu as u32 + 1)], []).unwrap();
        Ok(m)
    } else {
        let odd = (1..=mu as u16 + 1).map(|k| Variable::odd(k, 0));
        Ok(Monomial::from_parts([], odd).unwrap().1)
    }
}

/// V(mu) is spanned by the monomials of degree >= mu + 1.
pub fn vmu_contains(sig: &Signature, v: &Monomial, mu: i64) -> Result<bool> {
    check_vmu_parameters(sig, mu)?;
    sig.check_monomial(v)?;
    Ok(v.degree() as i64 >= mu + 1)
}

#[derive(Debug, Clone)]
pub struct ReachOutcome<G> {
    pub reached: bool,
    pub certificate: Option<Vec<G>>,
    pub span_dim: usize,
    pub space_dim: usize,
}

fn element_vector(e: &Element, idx: &BasisIndex) -> Option<Vec<Rat>> {
    let mut v = vec![Rat::zero(); idx.len()];
    for (m, c) in e.terms() {
        let i = idx.index_of(m)?;
        v[i] = c.as_constant().expect("specialized element has constant coefficients");
    }
    Some(v)
}

/// Close the span of `start` under all degree-nonincreasing operators at the
/// given specialization of mu, with exact linear algebra, and test whether the
/// constant 1 enters the span. The raising operators e_{i,1} are never needed:
/// e_{1,j} lowers the degree and e_{i,j} with i,j >= 2 preserves it.
pub fn reach_unit_finite(
    sig: &Signature,
    start: &Monomial,
    mu: &Rat,
) -> Result<ReachOutcome<GlGenerator>> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    sig.check_monomial(start)?;
    let idx = BasisIndex::new(monomials_up_to(sig, (0, 0), start.degree()));
    let gens: Vec<GlGenerator> = all_generators(sig)
        .into_iter()
        .filter(|g| g.j >= 2)
        .collect();

    let mut span = SpanBasis::<Rat>::new(idx.len());
    let start_elem = Element::from_monomial(start.clone());
    span.insert(&element_vector(&start_elem, &idx).expect("start monomial indexed"));
    let mut queue = VecDeque::new();
    queue.push_back(start_elem);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let img = apply_gl(sig, *g, &e)?.specialize_mu(mu);
            if img.is_zero() {
                continue;
            }
            let vec = element_vector(&img, &idx).expect("images stay within the degree cap");
            if span.insert(&vec) {
                queue.push_back(img);
            }
        }
    }
    let mut unit_vec = vec![Rat::zero(); idx.len()];
    unit_vec[idx.index_of(&Monomial::unit()).unwrap()] = Rat::one();
    let reached = span.contains(&unit_vec);

    let certificate = constructive_word(sig, start).filter(|word| {
        validate_word(sig, start, word, mu)
    });

    Ok(ReachOutcome {
        reached,
        certificate,
        span_dim: span.rank(),
        space_dim: idx.len(),
    })
}

/// The constructive proof-order word: clear odd factors with e_{2,m+k},
/// then spare even factors with e_{2,j}, then lower x_2^s with e_{1,2}^s.
/// For m = 1 the odd factors are cleared directly with e_{1,1+k}.
fn constructive_word(sig: &Signature, start: &Monomial) -> Option<Vec<GlGenerator>> {
    let mut word = Vec::new();
    if sig.m >= 2 {
        for v in start.odd_part() {
            word.push(GlGenerator { i: 2, j: sig.m + v.index });
        }
        for (v, e) in start.even_part() {
            if v.index >= 3 {
                for _ in 0..*e {
                    word.push(GlGenerator { i: 2, j: v.index });
                }
            }
        }
        for _ in 0..start.degree() {
            word.push(GlGenerator { i: 1, j: 2 });
        }
    } else {
        for v in start.odd_part() {
            word.push(GlGenerator { i: 1, j: sig.m + v.index });
        }
    }
    Some(word)
}

fn validate_word(sig: &Signature, start: &Monomial, word: &[GlGenerator], mu: &Rat) -> bool {
    let mut e = Element::from_monomial(start.clone());
    for g in word {
        e = match apply_gl(sig, *g, &e) {
            Ok(img) => img.specialize_mu(mu),
            Err(_) => return false,
        };
    }
    match e.as_unit_multiple() {
        Some(c) => !c.is_zero(),
        None => false,
    }
}

#[derive(Debug, Clone)]
pub struct SpanCheckOutcome {
    pub degree: u32,
    pub dimension: usize,
    pub spans_from_every_monomial: bool,
    pub highest_weight_vector: Monomial,
    pub highest_weight_annihilated: bool,
    pub highest_weight_unique: bool,
}

impl SpanCheckOutcome {
    pub fn ok(&self) -> bool {
        self.spans_from_every_monomial
            && self.highest_weight_annihilated
            && self.highest_weight_unique
    }
}

/// Check that W_s is irreducible over the subalgebra S = <e_{i,j} : i,j >= 2>:
/// the S-closure of each single monomial of degree s is all of W_s, and the
/// unique singular vector for the S-raising operators is x_2^s (m >= 2)
/// or y_1...y_s (m = 1).
pub fn s_span_check(sig: &Signature, s: u32) -> Result<SpanCheckOutcome> {
    if sig.affine {
        return Err(Error::WrongSignatureKind { expected: "non-affine" });
    }
    if sig.m == 1 && s > sig.n as u32 {
        return Err(Error::DegreeAboveExteriorTop { s, n: sig.n });
    }
    let ws = crate::basis::monomials_of_degree(sig, (0, 0), s);
    let idx = BasisIndex::new(ws.clone());
    let dim = idx.len();
    let s_gens: Vec<GlGenerator> = all_generators(sig)
        .into_iter()
        .filter(|g| g.i >= 2 && g.j >= 2)
        .collect();

    // The S-operators never involve mu, so the closure runs over Q.
    let mut spans_all = true;
    for v in &ws {
        let mut span = SpanBasis::<Rat>::new(dim);
        let start = Element::from_monomial(v.clone());
        span.insert(&element_vector(&start, &idx).unwrap());
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(e) = queue.pop_front() {
            for g in &s_gens {
                let img = apply_gl(sig, *g, &e)?;
                if img.is_zero() {
                    continue;
                }
                let vec = element_vector(&img, &idx).expect("S preserves the degree");
                if span.insert(&vec) {
                    queue.push_back(img);
                }
            }
        }
        if span.rank() != dim {
            spans_all = false;
            break;
        }
    }

    let hw = if sig.m >= 2 {
        Monomial::from_parts([(Variable::even(2, 0), s)], []).unwrap().1
    } else {
        let odd = (1..=s as u16).map(|k| Variable::odd(k, 0));
        Monomial::from_parts([], odd).unwrap().1
    };

    let s_raising: Vec<GlGenerator> = simple_raising(sig)
        .into_iter()
        .filter(|g| g.i >= 2)
        .collect();
    let hw_elem = Element::from_monomial(hw.clone());
    let mut annihilated = true;
    for r in &s_raising {
        if !apply_gl(sig, *r, &hw_elem)?.is_zero() {
            annihilated = false;
        }
    }

    // Uniqueness: the joint kernel of the raising operators inside W_s.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut row_of: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for (col, v) in ws.iter().enumerate() {
        for (op, r) in s_raising.iter().enumerate() {
            let img = apply_gl(sig, *r, &Element::from_monomial(v.clone()))?;
            for (m, c) in img.terms() {
                let next = rows.len();
                let entry = *row_of.entry((op, m.clone())).or_insert(next);
                if entry == rows.len() {
                    rows.push(vec![Rat::zero(); dim]);
                }
                rows[entry][col] = c.as_constant().expect("S-operator coefficients are constant");
            }
        }
    }
    let kernel = nullspace(&rows, dim);
    let hw_index = idx.index_of(&hw);
    let unique = kernel.len() == 1
        && hw_index.is_some_and(|hi| {
            let v = &kernel[0];
            !v[hi].is_zero() && v.iter().enumerate().all(|(i, c)| i == hi || c.is_zero())
        });

    Ok(SpanCheckOutcome {
        degree: s,
        dimension: dim,
        spans_from_every_monomial: spans_all,
        highest_weight_vector: hw,
        highest_weight_annihilated: annihilated,
        highest_weight_unique: unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_frac};
    use crate::text::parse_monomial;

    fn sig(m: u16, n: u16) -> Signature {
        Signature::finite(m, n).unwrap()
    }

    fn mono(sig: &Signature, s: &str) -> Monomial {
        parse_monomial(sig, s).unwrap()
    }

    fn elem(sig: &Signature, s: &str) -> Element {
        crate::text::parse_element(sig, s).unwrap()
    }

    #[test]
    fn e11_on_unit_is_mu() {
        let s = sig(2, 1);
        let img = apply_gl(&s, GlGenerator { i: 1, j: 1 }, &Element::unit()).unwrap();
        assert_eq!(img, Element::from_term(Monomial::unit(), MuPoly::mu()));
    }

    #[test]
    fn lowering_on_x2_squared() {
        // e_{1,2}(x2^2) = 2(mu - 1) x2
        let s = sig(2, 1);
        let img = apply_gl(&s, GlGenerator { i: 1, j: 2 }, &elem(&s, "x2^2")).unwrap();
        assert_eq!(img, elem(&s, "2*(mu - 1) * x2"));
        assert_eq!(img.render(false), "2*(mu - 1) * x2");
    }

    #[test]
    fn raising_is_multiplication() {
        // e_{3,1}(1) = y_1 for (m,n) = (2,1)
        let s = sig(2, 1);
        let img = apply_gl(&s, GlGenerator { i: 3, j: 1 }, &Element::unit()).unwrap();
        assert_eq!(img, elem(&s, "y1"));
    }

    #[test]
    fn even_substitution() {
        // e_{2,3}(x3*y1) = x2*y1 for (m,n) = (3,1)
        let s = sig(3, 1);
        let img = apply_gl(&s, GlGenerator { i: 2, j: 3 }, &elem(&s, "x3*y1")).unwrap();
        assert_eq!(img, elem(&s, "x2*y1"));
    }

    #[test]
    fn odd_lowering_chain_step() {
        // For (m,n) = (1,2): e_{1,2}(y1*y2) = e_{1,1} d/dy1 (y1 y2) = (mu - 1) y2
        let s = sig(1, 2);
        let img = apply_gl(&s, GlGenerator { i: 1, j: 2 }, &elem(&s, "y1*y2")).unwrap();
        assert_eq!(img, elem(&s, "(mu - 1) * y2"));
    }

    #[test]
    fn bracket_even_matrix_units() {
        let s = sig(3, 1);
        let b = gl_superbracket(&s, GlGenerator { i: 2, j: 3 }, GlGenerator { i: 3, j: 2 }).unwrap();
        assert_eq!(
            b,
            vec![(1, GlGenerator { i: 2, j: 2 }), (-1, GlGenerator { i: 3, j: 3 })]
        );
    }

    #[test]
    fn bracket_odd_pair_anticommutator() {
        // {E_{m+1,1}, E_{1,m+1}}_+ = E_{m+1,m+1} + E_{1,1}
        let s = sig(2, 1);
        let b = gl_superbracket(&s, GlGenerator { i: 3, j: 1 }, GlGenerator { i: 1, j: 3 }).unwrap();
        assert_eq!(
            b,
            vec![(1, GlGenerator { i: 1, j: 1 }), (1, GlGenerator { i: 3, j: 3 })]
        );
    }

    #[test]
    fn bracket_odd_pair_vanishing() {
        // {E_{1,m+1}, E_{1,m+2}}_+ = 0
        let s = sig(1, 2);
        let b = gl_superbracket(&s, GlGenerator { i: 1, j: 2 }, GlGenerator { i: 1, j: 3 }).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn hand_expanded_anticommutator_on_x2() {
        // {e_{3,1}, e_{1,3}}_+ x2 = (mu - 1) x2 = (e_{3,3} + e_{1,1}) x2 for (2,1)
        let s = sig(2, 1);
        let x2 = elem(&s, "x2");
        let a = apply_gl(&s, GlGenerator { i: 3, j: 1 }, &apply_gl(&s, GlGenerator { i: 1, j: 3 }, &x2).unwrap()).unwrap();
        let b = apply_gl(&s, GlGenerator { i: 1, j: 3 }, &apply_gl(&s, GlGenerator { i: 3, j: 1 }, &x2).unwrap()).unwrap();
        let lhs = &a + &b;
        assert_eq!(lhs, elem(&s, "(mu - 1) * x2"));
    }

    #[test]
    fn weights_match_closed_form() {
        let s = sig(2, 1);
        let v = mono(&s, "x2*y1");
        let w = weight_of(&s, &v);
        assert_eq!(
            w.0,
            vec![
                &MuPoly::mu() - &MuPoly::from_int(2),
                MuPoly::from_int(1),
                MuPoly::from_int(1)
            ]
        );
        assert_eq!(weight_by_action(&s, &v).unwrap().unwrap(), w);
        let slw = sl_weight_of(&s, &v);
        assert_eq!(sl_weight_by_action(&s, &v).unwrap().unwrap(), slw);
    }

    #[test]
    fn weight_entries_sum_to_mu() {
        let s = sig(2, 2);
        for v in monomials_up_to(&s, (0, 0), 3) {
            let w = weight_of(&s, &v);
            let mut sum = MuPoly::zero();
            for e in &w.0 {
                sum = &sum + e;
            }
            assert_eq!(sum, MuPoly::mu());
        }
    }

    #[test]
    fn collisions_empty_when_m_ne_n() {
        let s = sig(2, 1);
        assert!(weight_collisions(&s, 5).unwrap().is_empty());
        let s12 = sig(1, 2);
        assert!(weight_collisions(&s12, 4).unwrap().is_empty());
    }

    #[test]
    fn collision_for_gl11_is_the_whole_exterior_algebra() {
        // The sl(1|1) Cartan is spanned by E_{1,1}+E_{2,2} alone, and both 1
        // and y_1 have the value mu on it: the m = n pair family degenerates
        // to {1, y_1} (the empty x-product against y_1). Computed directly:
        // (e_{1,1}+e_{2,2}) fixes both basis vectors with eigenvalue mu.
        let s11 = sig(1, 1);
        assert_eq!(sl_weight_of(&s11, &Monomial::unit()).0, vec![MuPoly::mu()]);
        let y1 = Monomial::var(Variable::odd(1, 0));
        assert_eq!(sl_weight_of(&s11, &y1).0, vec![MuPoly::mu()]);
        let pairs = weight_collisions(&s11, 1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].first, Monomial::unit());
        assert_eq!(pairs[0].second, y1);
    }

    #[test]
    fn collisions_for_gl22() {
        let s = sig(2, 2);
        let pairs = weight_collisions(&s, 3).unwrap();
        let rendered: Vec<(String, String)> = pairs
            .iter()
            .map(|p| (p.first.render(false), p.second.render(false)))
            .collect();
        assert_eq!(
            rendered,
            vec![
                ("x2".to_string(), "y1*y2".to_string()),
                ("x2^2".to_string(), "x2*y1*y2".to_string()),
                ("x2^3".to_string(), "x2^2*y1*y2".to_string()),
            ]
        );
    }

    #[test]
    fn singular_vectors_symbolic_only_unit() {
        let s = sig(2, 1);
        let sv = singular_vectors(&s, 4, &MuMode::Symbolic).unwrap();
        assert_eq!(sv.len(), 1);
        assert_eq!(sv[0].vector, Element::unit());
    }

    #[test]
    fn singular_vectors_at_mu_two() {
        let s = sig(2, 1);
        let sv = singular_vectors(&s, 4, &MuMode::Rational(rat(2))).unwrap();
        let rendered: Vec<String> = sv.iter().map(|v| v.vector.render(false)).collect();
        assert_eq!(rendered, vec!["1".to_string(), "x2^3".to_string()]);
    }

    #[test]
    fn singular_vectors_gl12_mu_one() {
        let s = sig(1, 2);
        let sv = singular_vectors(&s, 3, &MuMode::Rational(rat(1))).unwrap();
        let rendered: Vec<String> = sv.iter().map(|v| v.vector.render(false)).collect();
        assert_eq!(rendered, vec!["1".to_string(), "y1*y2".to_string()]);
    }

    #[test]
    fn vmu_generators() {
        let s = sig(2, 1);
        assert_eq!(vmu_generator(&s, 0).unwrap().render(false), "x2");
        let s13 = sig(1, 3);
        assert_eq!(vmu_generator(&s13, 1).unwrap().render(false), "y1*y2");
        assert!(vmu_generator(&s, -1).is_err());
        let s11 = sig(1, 1);
        assert!(vmu_generator(&s11, 1).is_err());
    }

    #[test]
    fn vmu_membership_is_by_degree() {
        let s = sig(2, 1);
        let v = mono(&s, "x2*y1");
        assert!(!vmu_contains(&s, &v, 2).unwrap());
        assert!(vmu_contains(&s, &v, 1).unwrap());
    }

    #[test]
    fn reach_generic_mu() {
        let s = sig(2, 1);
        let out = reach_unit_finite(&s, &mono(&s, "x2^2*y1"), &rat_frac(1, 2)).unwrap();
        assert!(out.reached);
        let word = out.certificate.expect("constructive certificate");
        assert!(validate_word(&s, &mono(&s, "x2^2*y1"), &word, &rat_frac(1, 2)));
    }

    #[test]
    fn reach_blocked_inside_vmu() {
        let s = sig(2, 1);
        let out = reach_unit_finite(&s, &mono(&s, "x2^3"), &rat(2)).unwrap();
        assert!(!out.reached);
        assert!(out.certificate.is_none());
    }

    #[test]
    fn reach_blocked_at_mu_zero_gl11() {
        let s = sig(1, 1);
        let out = reach_unit_finite(&s, &mono(&s, "y1"), &rat(0)).unwrap();
        assert!(!out.reached);
    }

    #[test]
    fn span_check_small_cases() {
        let s = sig(2, 1);
        for deg in 0..=2 {
            let out = s_span_check(&s, deg).unwrap();
            assert!(out.ok(), "degree {deg}: {out:?}");
        }
        let s12 = sig(1, 2);
        let out = s_span_check(&s12, 1).unwrap();
        assert!(out.ok());
        assert_eq!(out.highest_weight_vector.render(false), "y1");
        assert!(s_span_check(&s12, 3).is_err());
    }
}
