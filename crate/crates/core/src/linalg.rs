//! Exact Gaussian elimination over Q and over Q(mu).

use crate::coeff::{Rat, RatFn};
use num::{One, Zero};

/// The minimal field interface the solvers need.
pub trait ExactField: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl ExactField for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl ExactField for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RatFn::div(self, o)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
}

/// Incrementally maintained row space in reduced echelon form.
/// Rows are normalized to a unit pivot and fully reduced against each other,
/// so membership tests and insertions are deterministic.
pub struct SpanBasis<F: ExactField> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: ExactField> SpanBasis<F> {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    fn reduce(&self, vec: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if vec[p].is_zero() {
                continue;
            }
            let factor = vec[p].clone();
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    vec[j] = vec[j].sub(&factor.mul(&row[j]));
                }
            }
        }
    }

    /// Does the vector already lie in the span?
    pub fn contains(&self, vec: &[F]) -> bool {
        let mut v = vec.to_vec();
        self.reduce(&mut v);
        v.iter().all(|c| c.is_zero())
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, vec: &[F]) -> bool {
        let mut v = vec.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = F::one().div(&v[p]);
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        // Back-substitute into the existing rows to keep the reduced form.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&v[j]));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Basis of the right nullspace of the matrix (rows x cols), reduced and
/// normalized so the first nonzero entry of each vector is one.
pub fn nullspace<F: ExactField>(matrix: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut rows: Vec<Vec<F>> = matrix
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = F::one().div(&rows[rank][col]);
        for j in 0..cols {
            if !rows[rank][j].is_zero() {
                rows[rank][j] = rows[rank][j].mul(&inv);
            }
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for j in 0..cols {
                    if !rows[rank][j].is_zero() {
                        rows[r][j] = rows[r][j].sub(&factor.mul(&rows[rank][j]));
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);

    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = rows[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, MuPoly};

    #[test]
    fn span_membership() {
        let mut span = SpanBasis::<Rat>::new(3);
        assert!(span.insert(&[rat(1), rat(2), rat(0)]));
        assert!(span.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!span.insert(&[rat(1), rat(3), rat(1)]));
        assert!(span.contains(&[rat(2), rat(5), rat(1)]));
        assert!(!span.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(span.rank(), 2);
    }

    #[test]
    fn nullspace_over_rationals() {
        // x + y + z = 0, x - z = 0 -> null vector (1, -2, 1)
        let m = vec![
            vec![rat(1), rat(1), rat(1)],
            vec![rat(1), rat(0), rat(-1)],
        ];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let lam = v[0].clone();
        assert_eq!(v[1], lam.mul(&rat(-2)));
        assert_eq!(v[2], lam);
    }

    #[test]
    fn nullspace_over_rational_functions() {
        // [(mu-1), (mu-1)] has nullspace spanned by (1, -1) identically in mu.
        let p = RatFn::from_poly(&MuPoly::mu() - &MuPoly::from_int(1));
        let m = vec![vec![p.clone(), p]];
        let ns = nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0].add(&ns[0][1]), RatFn::zero());

        // Over the field Q(mu) even [(mu-1), mu] has a one-dimensional
        // kernel, spanned by (mu, -(mu-1)).
        let a = RatFn::from_poly(&MuPoly::mu() - &MuPoly::from_int(1));
        let b = RatFn::from_poly(MuPoly::mu());
        let m2 = vec![vec![a.clone(), b.clone()]];
        let ns2 = nullspace(&m2, 2);
        assert_eq!(ns2.len(), 1);
        assert_eq!(a.mul(&ns2[0][0]).add(&b.mul(&ns2[0][1])), RatFn::zero());
    }
}
