//! Constructive extension of composition-subalgebra isomorphisms to full
//! algebra automorphisms, and conjugating elements between isomorphic
//! subalgebras.
//!
//! The extension doubles both sides simultaneously: pick the first
//! orthogonalized complement vector `a` of the source, a complement vector
//! `a'` of the target with the same norm, and extend by
//! `x + ya ↦ φ(x) + φ(y)a'` until dimension 8. On the exact backend the
//! norm-matching search is restricted to rational multiples of complement
//! basis vectors and fails with `NormNotRepresented` otherwise.

use alloc::vec::Vec;

use crate::aut::AutMatrix;
use crate::error::{Error, Result};
use crate::field::{scalars_close, Scalar, TOL_EQ, TOL_RESIDUAL};
use crate::matrix::Matrix;
use crate::octonion::{AlgebraContext, Octonion, DIM};
use crate::subalgebra::Subalgebra;

/// An isomorphism between composition subalgebras of equal dimension,
/// given by the images of the source basis. Validated on construction:
/// maps 1 to 1, multiplicative on basis pairs, norm-preserving.
#[derive(Clone, Debug)]
pub struct SubalgebraIso<K: Scalar> {
    source: Subalgebra<K>,
    target: Subalgebra<K>,
    images: Vec<Octonion<K>>,
}

impl<K: Scalar> SubalgebraIso<K> {
    /// `map` is dim x dim over the target basis: column j holds the
    /// target-basis coordinates of the image of source basis vector j.
    pub fn new(
        ctx: &AlgebraContext<K>,
        source: Subalgebra<K>,
        target: Subalgebra<K>,
        map: Matrix<K>,
    ) -> Result<Self> {
        let dim = source.dim();
        if target.dim() != dim {
            return Err(Error::InvalidIso);
        }
        map.require_shape(dim)?;
        let images: Vec<Octonion<K>> = (0..dim)
            .map(|j| {
                let mut acc = Octonion::zero();
                for (i, b) in target.basis().iter().enumerate() {
                    acc = &acc + &b.scale(map.get(i, j));
                }
                acc
            })
            .collect();
        Self::from_images(ctx, source, target, images)
    }

    /// Build from explicit image octonions (must lie in the target span).
    pub fn from_images(
        ctx: &AlgebraContext<K>,
        source: Subalgebra<K>,
        target: Subalgebra<K>,
        images: Vec<Octonion<K>>,
    ) -> Result<Self> {
        let dim = source.dim();
        if target.dim() != dim || images.len() != dim {
            return Err(Error::InvalidIso);
        }
        if !images[0].approx_eq(&Octonion::one(), TOL_EQ) {
            return Err(Error::InvalidIso);
        }
        for im in &images {
            if !target.contains(ctx, im) {
                return Err(Error::InvalidIso);
            }
        }
        let iso = SubalgebraIso {
            source,
            target,
            images,
        };
        if !iso.is_multiplicative(ctx) || !iso.is_isometric(ctx) {
            return Err(Error::InvalidIso);
        }
        Ok(iso)
    }

    /// Identity map of a subalgebra onto itself.
    pub fn identity(ctx: &AlgebraContext<K>, sub: &Subalgebra<K>) -> Result<Self> {
        Self::from_images(ctx, sub.clone(), sub.clone(), sub.basis().to_vec())
    }

    pub fn source(&self) -> &Subalgebra<K> {
        &self.source
    }

    pub fn target(&self) -> &Subalgebra<K> {
        &self.target
    }

    pub fn images(&self) -> &[Octonion<K>] {
        &self.images
    }

    /// Apply the map to an element of the source span.
    pub fn apply(&self, ctx: &AlgebraContext<K>, x: &Octonion<K>) -> Octonion<K> {
        let coords = self.source.project_coords(ctx, x);
        let mut acc = Octonion::zero();
        for (im, c) in self.images.iter().zip(&coords) {
            acc = &acc + &im.scale(c);
        }
        acc
    }

    fn is_multiplicative(&self, ctx: &AlgebraContext<K>) -> bool {
        for (i, bi) in self.source.basis().iter().enumerate() {
            for (j, bj) in self.source.basis().iter().enumerate() {
                let product = ctx.mul(bi, bj);
                let lhs = self.apply(ctx, &product);
                let rhs = ctx.mul(&self.images[i], &self.images[j]);
                if !lhs.approx_eq(&rhs, TOL_RESIDUAL) {
                    return false;
                }
            }
        }
        true
    }

    fn is_isometric(&self, ctx: &AlgebraContext<K>) -> bool {
        for (i, bi) in self.source.basis().iter().enumerate() {
            for (j, bj) in self.source.basis().iter().enumerate() {
                let lhs = ctx.bilinear(&self.images[i], &self.images[j]);
                let rhs = ctx.bilinear(bi, bj);
                if !scalars_close(&lhs, &rhs, TOL_RESIDUAL) {
                    return false;
                }
            }
        }
        true
    }
}

/// Pick a complement vector of `sub` rescaled to norm `target_norm`.
/// On floats the first complement vector is rescaled; on the exact backend
/// the search walks complement basis vectors looking for a rational scale.
fn complement_vector_of_norm<K: Scalar>(
    ctx: &AlgebraContext<K>,
    sub: &Subalgebra<K>,
    target_norm: &K,
) -> Result<Octonion<K>> {
    let complement = sub.orthogonal_complement(ctx);
    for v in &complement {
        let nv = ctx.norm(v);
        if nv.is_zero() {
            continue;
        }
        let ratio = target_norm.clone() / nv;
        if let Some(q) = ratio.sqrt() {
            let q = if q.is_negative() { -q } else { q };
            return Ok(v.scale(&q));
        }
    }
    Err(Error::NormNotRepresented)
}

/// Extend a subalgebra isomorphism to a certified automorphism of the whole
/// algebra by simultaneous doubling.
pub fn extend_isomorphism<K: Scalar>(
    ctx: &AlgebraContext<K>,
    iso: &SubalgebraIso<K>,
) -> Result<AutMatrix<K>> {
    let mut src = iso.source().clone();
    let mut tgt = iso.target().clone();
    let mut src_basis: Vec<Octonion<K>> = src.basis().to_vec();
    let mut images: Vec<Octonion<K>> = iso.images().to_vec();
    while src.dim() < DIM {
        let a = src
            .orthogonal_complement(ctx)
            .into_iter()
            .next()
            .ok_or(Error::DegenerateForm)?;
        let na = ctx.norm(&a);
        if na.is_zero() {
            return Err(Error::NormZero);
        }
        let a_prime = complement_vector_of_norm(ctx, &tgt, &na)?;
        // doubling invariant: the matched vector stays orthogonal to the
        // current target
        debug_assert!(tgt.basis().iter().all(|b| {
            let ip = ctx.bilinear(&a_prime, b);
            crate::field::negligible(&ip, TOL_EQ, a_prime.max_magnitude().max(1.0))
        }));
        let halves: Vec<(Octonion<K>, Octonion<K>)> = src_basis
            .iter()
            .zip(&images)
            .map(|(x, fx)| (ctx.mul(x, &a), ctx.mul(fx, &a_prime)))
            .collect();
        for (xa, fxa) in halves {
            src_basis.push(xa);
            images.push(fxa);
        }
        src = src.double(ctx, &a)?;
        tgt = tgt.double(ctx, &a_prime)?;
    }
    let mut change = Matrix::zero(DIM, DIM);
    let mut image_mat = Matrix::zero(DIM, DIM);
    for j in 0..DIM {
        change.set_column(j, src_basis[j].coords());
        image_mat.set_column(j, images[j].coords());
    }
    let change_inv = change.inverse(TOL_RESIDUAL).ok_or(Error::DegenerateForm)?;
    AutMatrix::certify(ctx, image_mat.mul(&change_inv))
}

/// Normalize the sign of a trace-zero generator: first coordinate of
/// largest magnitude is made positive.
fn positive_sign<K: Scalar>(v: &Octonion<K>) -> Octonion<K> {
    for c in v.coords() {
        if !c.is_zero() {
            if c.is_negative() {
                return -v;
            }
            return v.clone();
        }
    }
    v.clone()
}

/// Construct the generator-matched isomorphism between two subalgebras of
/// the same dimension: trace-zero orthogonal generators are paired in basis
/// order and rescaled to equal norms, with signs resolved deterministically.
pub fn matching_isomorphism<K: Scalar>(
    ctx: &AlgebraContext<K>,
    d: &Subalgebra<K>,
    d_prime: &Subalgebra<K>,
) -> Result<SubalgebraIso<K>> {
    if d.dim() != d_prime.dim() {
        return Err(Error::NotIsomorphic);
    }
    match d.dim() {
        1 => SubalgebraIso::identity(ctx, &Subalgebra::unit_line()),
        2 => {
            let g = d.basis()[1].clone();
            let g2 = positive_sign(&d_prime.basis()[1]);
            let scaled = rescale_to_norm(ctx, &g2, &ctx.norm(&g))?;
            SubalgebraIso::from_images(
                ctx,
                d.clone(),
                d_prime.clone(),
                alloc::vec![Octonion::one(), scaled],
            )
        }
        4 => {
            let i1 = d.basis()[1].clone();
            let j1 = d.basis()[2].clone();
            let i2 = rescale_to_norm(ctx, &positive_sign(&d_prime.basis()[1]), &ctx.norm(&i1))?;
            let j2 = rescale_to_norm(ctx, &positive_sign(&d_prime.basis()[2]), &ctx.norm(&j1))?;
            let k1 = ctx.mul(&i1, &j1);
            let k2 = ctx.mul(&i2, &j2);
            // realign the source basis as {1, i, j, ij}; same span as d
            let basis_aligned = Subalgebra::from_spanning(ctx, &[i1, j1, k1])?;
            let images = alloc::vec![Octonion::one(), i2, j2, k2];
            SubalgebraIso::from_images(ctx, basis_aligned, d_prime.clone(), images)
        }
        8 => SubalgebraIso::identity(ctx, &Subalgebra::full()),
        _ => Err(Error::NotIsomorphic),
    }
}

fn rescale_to_norm<K: Scalar>(
    ctx: &AlgebraContext<K>,
    v: &Octonion<K>,
    target: &K,
) -> Result<Octonion<K>> {
    let nv = ctx.norm(v);
    if nv.is_zero() {
        return Err(Error::NormZero);
    }
    let ratio = target.clone() / nv;
    let q = ratio.sqrt().ok_or(Error::NotIsomorphic)?;
    Ok(v.scale(&q))
}

/// A certified automorphism mapping `d` onto `d_prime`, realizing the
/// conjugation between the fixing subgroups of the two subalgebras.
pub fn conjugating_element<K: Scalar>(
    ctx: &AlgebraContext<K>,
    d: &Subalgebra<K>,
    d_prime: &Subalgebra<K>,
) -> Result<AutMatrix<K>> {
    let iso = matching_isomorphism(ctx, d, d_prime)?;
    let phi = extend_isomorphism(ctx, &iso)?;
    Ok(phi)
}
