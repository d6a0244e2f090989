//! Composition subalgebras: orthogonal bases, closure generation,
//! orthogonal complements and Cayley–Dickson doubling.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Scalar, TOL_EQ, TOL_RESIDUAL};
use crate::matrix::Matrix;
use crate::octonion::{AlgebraContext, Octonion, DIM};

/// A composition subalgebra, stored as an orthogonal basis with the unit
/// element first. The basis is closed under multiplication and conjugation
/// and the norm form restricted to the span is nondegenerate.
#[derive(Clone, PartialEq, Debug)]
pub struct Subalgebra<K: Scalar> {
    basis: Vec<Octonion<K>>,
}

/// Gram–Schmidt without normalization, deterministic pivot order (input
/// order). Vectors whose residual is negligible relative to their own norm
/// are dropped.
fn orthogonalize<K: Scalar>(
    ctx: &AlgebraContext<K>,
    candidates: &[Octonion<K>],
) -> Vec<Octonion<K>> {
    let mut basis: Vec<Octonion<K>> = Vec::new();
    let mut norms: Vec<K> = Vec::new();
    for v in candidates {
        let mut r = v.clone();
        for (b, nb) in basis.iter().zip(&norms) {
            let coeff = ctx.bilinear(&r, b) / nb.clone();
            r = &r - &b.scale(&coeff);
        }
        if residual_nonzero(ctx, &r, v) {
            let n = ctx.norm(&r);
            basis.push(r);
            norms.push(n);
        }
    }
    basis
}

/// True when the Gram–Schmidt residual `r` of candidate `v` counts as a new
/// direction: exact nonzero, or norm above the squared residual tolerance.
fn residual_nonzero<K: Scalar>(ctx: &AlgebraContext<K>, r: &Octonion<K>, v: &Octonion<K>) -> bool {
    if K::EXACT {
        return !r.is_zero();
    }
    let scale = ctx.norm(v).magnitude().max(1.0);
    ctx.norm(r).magnitude() > TOL_RESIDUAL * TOL_RESIDUAL * scale
}

impl<K: Scalar> Subalgebra<K> {
    /// The one-dimensional subalgebra k·1.
    pub fn unit_line() -> Self {
        Subalgebra {
            basis: vec![Octonion::one()],
        }
    }

    /// The whole algebra with its standard basis.
    pub fn full() -> Self {
        Subalgebra {
            basis: (0..DIM).map(Octonion::basis).collect(),
        }
    }

    /// Smallest composition subalgebra containing 1 and the seeds: closes
    /// the span under multiplication, orthogonalizes with the unit first,
    /// and validates the result.
    pub fn generate(ctx: &AlgebraContext<K>, seeds: &[Octonion<K>]) -> Result<Self> {
        let mut candidates = vec![Octonion::one()];
        candidates.extend_from_slice(seeds);
        let mut basis = orthogonalize(ctx, &candidates);
        loop {
            let mut grew = false;
            let snapshot = basis.clone();
            for x in &snapshot {
                for y in &snapshot {
                    let p = ctx.mul(x, y);
                    let mut r = p.clone();
                    for b in &basis {
                        let coeff = ctx.bilinear(&r, b) / ctx.norm(b);
                        r = &r - &b.scale(&coeff);
                    }
                    if residual_nonzero(ctx, &r, &p) {
                        basis.push(r);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let sub = Subalgebra { basis };
        sub.validate(ctx)?;
        Ok(sub)
    }

    /// Wrap vectors already known to span a subalgebra (e.g. a fixed-point
    /// space); re-orthogonalizes with 1 first and validates closure.
    pub fn from_spanning(ctx: &AlgebraContext<K>, vectors: &[Octonion<K>]) -> Result<Self> {
        Self::generate(ctx, vectors)
    }

    fn validate(&self, ctx: &AlgebraContext<K>) -> Result<()> {
        let dim = self.basis.len();
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return Err(Error::NotComposition(dim));
        }
        for b in &self.basis {
            if ctx.norm(b).is_zero() {
                return Err(Error::NotComposition(dim));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Octonion<K>] {
        &self.basis
    }

    /// Coefficients of the orthogonal projection of `x` onto the span.
    pub fn project_coords(&self, ctx: &AlgebraContext<K>, x: &Octonion<K>) -> Vec<K> {
        self.basis
            .iter()
            .map(|b| ctx.bilinear(x, b) / ctx.norm(b))
            .collect()
    }

    /// Membership by projection residual: exact zero or within the equality
    /// tolerance relative to `x`.
    pub fn contains(&self, ctx: &AlgebraContext<K>, x: &Octonion<K>) -> bool {
        let coords = self.project_coords(ctx, x);
        let mut r = x.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            r = &r - &b.scale(c);
        }
        if K::EXACT {
            r.is_zero()
        } else {
            let scale = x.max_magnitude().max(1.0);
            r.max_magnitude() <= TOL_EQ * scale
        }
    }

    /// True when every basis vector of `other` lies in this span and the
    /// dimensions agree.
    pub fn same_span(&self, ctx: &AlgebraContext<K>, other: &Self) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(ctx, b))
    }

    /// Orthogonal basis of `{x : ⟨x, d⟩ = 0 for all d in the subalgebra}`.
    pub fn orthogonal_complement(&self, ctx: &AlgebraContext<K>) -> Vec<Octonion<K>> {
        let constraints = Matrix::from_fn(self.dim(), DIM, |r, c| {
            ctx.bilinear(&self.basis[r], &Octonion::basis(c))
        });
        let kernel = constraints.nullspace(TOL_RESIDUAL);
        let vectors: Vec<Octonion<K>> = kernel
            .into_iter()
            .map(|v| Octonion::from_coords(core::array::from_fn(|i| v[i].clone())))
            .collect();
        orthogonalize(ctx, &vectors)
    }

    /// Cayley–Dickson doubling `D ⊕ Da` for `a` orthogonal to D with
    /// nonzero norm; the new basis is `{d, d·a}` over the old one.
    pub fn double(&self, ctx: &AlgebraContext<K>, a: &Octonion<K>) -> Result<Self> {
        if 2 * self.dim() > DIM {
            return Err(Error::DimensionOverflow);
        }
        if ctx.norm(a).is_zero() {
            return Err(Error::NormZero);
        }
        let scale = a.max_magnitude().max(1.0);
        for b in &self.basis {
            let ip = ctx.bilinear(a, b);
            if !crate::field::negligible(&ip, TOL_EQ, scale * b.max_magnitude().max(1.0)) {
                return Err(Error::NotOrthogonal);
            }
        }
        let mut basis = self.basis.clone();
        basis.extend(self.basis.iter().map(|d| ctx.mul(d, a)));
        let sub = Subalgebra { basis };
        sub.validate(ctx)?;
        Ok(sub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Field as _, Rational};

    fn ctx() -> AlgebraContext<Rational> {
        AlgebraContext::compact()
    }

    fn e(i: usize) -> Octonion<Rational> {
        Octonion::basis(i)
    }

    #[test]
    fn generate_from_unit_is_one_dimensional() {
        let c = ctx();
        let s = Subalgebra::generate(&c, &[Octonion::one()]).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn generate_quadratic_from_e1() {
        let c = ctx();
        let s = Subalgebra::generate(&c, &[e(1)]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&c, &e(1)));
        assert!(!s.contains(&c, &e(2)));
    }

    #[test]
    fn generate_quaternions_from_e1_e2() {
        let c = ctx();
        let s = Subalgebra::generate(&c, &[e(1), e(2)]).unwrap();
        assert_eq!(s.dim(), 4);
        for i in [0, 1, 2, 3] {
            assert!(s.contains(&c, &e(i)), "e{i} should be inside");
        }
        assert!(!s.contains(&c, &e(4)));
    }

    #[test]
    fn complement_of_full_algebra_is_empty() {
        let c = ctx();
        assert!(Subalgebra::full().orthogonal_complement(&c).is_empty());
    }

    #[test]
    fn complement_of_quadratic_spans_the_rest() {
        let c = ctx();
        let l = Subalgebra::generate(&c, &[e(1)]).unwrap();
        let comp = l.orthogonal_complement(&c);
        assert_eq!(comp.len(), 6);
        let span = Subalgebra::generate(&c, &comp).unwrap();
        // closure of {e2..e7} is everything, but each complement vector is
        // orthogonal to both 1 and e1
        assert_eq!(span.dim(), 8);
        for v in &comp {
            assert!(c.bilinear(v, &Octonion::one()).is_zero());
            assert!(c.bilinear(v, &e(1)).is_zero());
        }
    }

    #[test]
    fn complement_of_quaternions() {
        let c = ctx();
        let q = Subalgebra::generate(&c, &[e(1), e(2)]).unwrap();
        let comp = q.orthogonal_complement(&c);
        assert_eq!(comp.len(), 4);
        for v in &comp {
            for i in 0..4 {
                assert!(c.bilinear(v, &e(i)).is_zero());
            }
        }
    }

    #[test]
    fn doubling_tower_reaches_the_full_algebra() {
        let c = ctx();
        let one = Subalgebra::unit_line();
        let l = one.double(&c, &e(1)).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(l.contains(&c, &e(1)));

        let q = l.double(&c, &e(2)).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(q.contains(&c, &e(3)), "closure must contain e1e2 = e3");

        let full = q.double(&c, &e(4)).unwrap();
        assert_eq!(full.dim(), 8);
    }

    #[test]
    fn doubling_rejects_non_orthogonal_elements() {
        let c = ctx();
        let l = Subalgebra::generate(&c, &[e(1)]).unwrap();
        let bad = &e(1) + &e(2);
        assert_eq!(l.double(&c, &bad).unwrap_err(), Error::NotOrthogonal);
    }

    #[test]
    fn doubling_rejects_zero_norm() {
        let c = ctx();
        let l = Subalgebra::generate(&c, &[e(1)]).unwrap();
        assert_eq!(l.double(&c, &Octonion::zero()).unwrap_err(), Error::NormZero);
    }

    #[test]
    fn doubling_rejects_overflow() {
        let c = ctx();
        let full = Subalgebra::full();
        assert_eq!(full.double(&c, &e(1)).unwrap_err(), Error::DimensionOverflow);
    }

    #[test]
    fn mixed_coordinate_seed() {
        let c = ctx();
        let x = &e(1).scale(&ratio(3, 5)) + &e(2).scale(&ratio(4, 5));
        let s = Subalgebra::generate(&c, core::slice::from_ref(&x)).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&c, &x));
    }
}
