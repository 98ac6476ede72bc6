//! Seeded random monomials and elements for property suites and
//! cross-consistency sweeps.

use crate::coeff::{MuPoly, Rat};
use crate::element::Element;
use crate::monomial::{Monomial, Parity, Signature};
use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_monomial<R: Rng>(
    sig: &Signature,
    window: (i32, i32),
    max_degree: u32,
    rng: &mut R,
) -> Monomial {
    let vars = sig.variables(window);
    let mut mono = Monomial::unit();
    if vars.is_empty() {
        return mono;
    }
    let degree = rng.gen_range(0..=max_degree);
    let mut placed = 0;
    let mut attempts = 0;
    while placed < degree && attempts < 8 * degree + 8 {
        attempts += 1;
        let v = vars[rng.gen_range(0..vars.len())];
        match v.parity {
            Parity::Even => {
                mono = mono.push_even(v);
                placed += 1;
            }
            Parity::Odd => {
                if let Some((_, next)) = mono.push_odd_front(v) {
                    mono = next;
                    placed += 1;
                }
            }
        }
    }
    mono
}

/// Small random rational, occasionally multiplied by mu.
fn random_coeff<R: Rng>(rng: &mut R) -> MuPoly {
    let num = rng.gen_range(-4i64..=4);
    let num = if num == 0 { 1 } else { num };
    let den = rng.gen_range(1i64..=3);
    let c = Rat::new(BigInt::from(num), BigInt::from(den));
    let deg = if rng.gen_bool(0.25) { 1 } else { 0 };
    MuPoly::term(deg, c)
}

pub fn random_element<R: Rng>(
    sig: &Signature,
    window: (i32, i32),
    max_degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> Element {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut e = Element::zero();
    for _ in 0..terms {
        let m = random_monomial(sig, window, max_degree, rng);
        e.add_term(m, random_coeff(rng));
    }
    e
}
