//! Character combinatorics: the lattice sets P and Q, root coordinates of
//! basis monomials, graded dimensions, and the quotient character.

use crate::basis::{monomials_of_degree, monomials_up_to};
use crate::coeff::MuPoly;
use crate::error::{Error, Result};
use crate::finite::{weight_of, Weight};
use crate::monomial::{Monomial, Signature, Variable};
use std::collections::BTreeMap;

/// Nonnegative coefficients (t_1, ..., t_{m+n-1}) of the simple roots in
/// mu*eps_1 - weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootCoordinates(pub Vec<u32>);

/// Coordinates of a basis monomial: t_1 = deg, t_i = t_{i-1} - a_i for
/// 2 <= i <= m, then t_{m+k} = t_{m+k-1} - b_k for 1 <= k <= n-1.
pub fn monomial_coords(sig: &Signature, v: &Monomial) -> RootCoordinates {
    let mut t = Vec::with_capacity(sig.dim() as usize - 1);
    if sig.dim() >= 2 {
        let mut last = v.degree();
        t.push(last);
        for i in 2..=sig.m {
            last -= v.index_multiplicity(sig, i);
            t.push(last);
        }
        for k in 1..sig.n {
            last -= v.index_multiplicity(sig, sig.m + k);
            t.push(last);
        }
        // t_m duplicates the loop boundary when n = 0; drop the extra entry.
        t.truncate(sig.dim() as usize - 1);
        debug_assert_eq!(t.len(), sig.dim() as usize - 1);
    }
    RootCoordinates(t)
}

/// Membership in P: a weakly decreasing chain ending at t_{m+n} = 0 whose
/// steps are 0 or 1 from position m onward.
pub fn coords_in_p(sig: &Signature, t: &RootCoordinates) -> bool {
    let len = sig.dim() as usize - 1;
    if t.0.len() != len {
        return false;
    }
    if len == 0 {
        return true;
    }
    for j in 1..=len {
        let tj = t.0[j - 1];
        let next = if j == len { 0 } else { t.0[j] };
        if tj < next {
            return false;
        }
        if j as u16 >= sig.m && tj - next > 1 {
            return false;
        }
    }
    true
}

/// All of P with t_1 <= t1_cap, in lexicographic order.
pub fn enumerate_p(sig: &Signature, t1_cap: u32) -> Vec<RootCoordinates> {
    let len = sig.dim() as usize - 1;
    let mut out = Vec::new();
    if len == 0 {
        out.push(RootCoordinates(Vec::new()));
        return out;
    }
    // Build from the tail: position m+n-1 down to 1 with t_{m+n} = 0.
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for j in (1..=len).rev() {
        let mut next = Vec::new();
        for tail in &acc {
            let t_next = tail.first().copied().unwrap_or(0);
            let choices: Vec<u32> = if j as u16 >= sig.m {
                vec![t_next, t_next + 1]
            } else {
                (t_next..=t1_cap).collect()
            };
            for c in choices {
                if c > t1_cap {
                    continue;
                }
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(c);
                v.extend_from_slice(tail);
                next.push(v);
            }
        }
        acc = next;
    }
    out.extend(acc.into_iter().map(RootCoordinates));
    out.sort();
    out
}

/// Q = { t in P : t_1 >= mu + 1 }, with t_1 <= t1_cap.
pub fn enumerate_q(sig: &Signature, mu: i64, t1_cap: u32) -> Result<Vec<RootCoordinates>> {
    if mu < 0 {
        return Err(Error::InvalidMu(mu.to_string(), "must be a nonnegative integer"));
    }
    Ok(enumerate_p(sig, t1_cap)
        .into_iter()
        .filter(|t| t.0.first().copied().unwrap_or(0) as i64 >= mu + 1)
        .collect())
}

/// Invert the coordinate map when possible: a_i and b_k are the consecutive
/// differences. None when the differences are invalid.
pub fn coords_to_monomial(sig: &Signature, t: &RootCoordinates) -> Option<Monomial> {
    if !coords_in_p(sig, t) {
        return None;
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    // t_j for 1 <= j <= m+n, with the trailing t_{m+n} = 0.
    let get = |j: usize| -> u32 { t.0.get(j - 1).copied().unwrap_or(0) };
    for i in 2..=sig.m {
        let a = get(i as usize - 1) - get(i as usize);
        if a > 0 {
            even.push((Variable::even(i, 0), a));
        }
    }
    for k in 1..=sig.n {
        let b = get((sig.m + k) as usize - 1) - get((sig.m + k) as usize);
        if b == 1 {
            odd.push(Variable::odd(k, 0));
        }
    }
    let (sign, m) = Monomial::from_parts(even, odd)?;
    debug_assert_eq!(sign, 1);
    Some(m)
}

/// Number of basis monomials of degree s, by enumeration.
pub fn dim_ws(sig: &Signature, s: u32) -> u64 {
    monomials_of_degree(sig, (0, 0), s).len() as u64
}

fn check_quotient_mu(sig: &Signature, mu: i64) -> Result<()> {
    if mu < 0 {
        return Err(Error::InvalidMu(mu.to_string(), "must be a nonnegative integer"));
    }
    if sig.m == 1 && mu >= sig.n as i64 {
        return Err(Error::InvalidMu(
            mu.to_string(),
            "for m = 1 the quotient W/V(mu) requires mu < n",
        ));
    }
    Ok(())
}

/// Weights of W/V(mu) with multiplicities (all one): the monomials of degree
/// at most mu survive in the quotient.
pub fn quotient_character(sig: &Signature, mu: i64) -> Result<BTreeMap<Vec<MuPoly>, u32>> {
    check_quotient_mu(sig, mu)?;
    let mut out = BTreeMap::new();
    for v in monomials_up_to(sig, (0, 0), mu as u32) {
        let Weight(entries) = weight_of(sig, &v);
        *out.entry(entries).or_insert(0) += 1;
    }
    Ok(out)
}
