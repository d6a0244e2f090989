//! Certified algebra automorphisms: elements of G2.
//!
//! An [`AutMatrix`] exists only after certification: the 8x8 matrix fixes
//! the unit and is multiplicative on all 64 basis pairs (exactly on the
//! exact backend, within `TOL_RESIDUAL` on floats). Automorphisms are
//! stored as full matrices, never as generator words, so composition,
//! commutation and eigenspace extraction are uniform.
//!
//! Constructors cover the classical families: `make_rp` (fixing a
//! quaternion subalgebra pointwise), `make_inner_ext` (lifted inner
//! automorphisms of a quaternion subalgebra) and `make_rho` (the involution
//! lifting the conjugation of a quadratic subalgebra).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{negligible, scalars_close, Scalar, TOL_EQ, TOL_RESIDUAL};
use crate::matrix::Matrix;
use crate::octonion::{AlgebraContext, Octonion, DIM};
use crate::subalgebra::Subalgebra;

/// A certified automorphism of the octonion algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct AutMatrix<K: Scalar> {
    m: Matrix<K>,
}

/// A point of a quaternion subalgebra, carrying its host. Membership is
/// checked at construction.
#[derive(Clone, Debug)]
pub struct QuaternionPoint<K: Scalar> {
    value: Octonion<K>,
    host: Subalgebra<K>,
}

impl<K: Scalar> QuaternionPoint<K> {
    pub fn new(ctx: &AlgebraContext<K>, host: &Subalgebra<K>, value: Octonion<K>) -> Result<Self> {
        if host.dim() != 4 {
            return Err(Error::NotInHost);
        }
        if !host.contains(ctx, &value) {
            return Err(Error::NotInHost);
        }
        Ok(QuaternionPoint {
            value,
            host: host.clone(),
        })
    }

    pub fn value(&self) -> &Octonion<K> {
        &self.value
    }

    pub fn host(&self) -> &Subalgebra<K> {
        &self.host
    }
}

impl<K: Scalar> AutMatrix<K> {
    pub fn identity() -> Self {
        AutMatrix {
            m: Matrix::identity(DIM),
        }
    }

    /// Certify an 8x8 matrix as an algebra automorphism: it must fix the
    /// unit and satisfy `m(ei·ej) = m(ei)·m(ej)` on every basis pair.
    /// Reports the first failing pair.
    pub fn certify(ctx: &AlgebraContext<K>, m: Matrix<K>) -> Result<Self> {
        m.require_shape(DIM)?;
        let scale = m.max_magnitude().max(1.0);
        let one = m.apply(Octonion::one().coords());
        for (k, v) in one.iter().enumerate() {
            let expected = if k == 0 { K::one() } else { K::zero() };
            let diff = v.clone() - expected;
            if !negligible(&diff, TOL_RESIDUAL, scale) {
                return Err(Error::NotAutomorphism { i: 0, j: 0 });
            }
        }
        let columns: Vec<Octonion<K>> = (0..DIM)
            .map(|j| Octonion::from_coords(core::array::from_fn(|i| m.get(i, j).clone())))
            .collect();
        for i in 0..DIM {
            for j in 0..DIM {
                let (coeff, k) = ctx.basis_product(i, j);
                let lhs = columns[*k].scale(coeff);
                let rhs = ctx.mul(&columns[i], &columns[j]);
                let diff = &lhs - &rhs;
                if !diff
                    .coords()
                    .iter()
                    .all(|d| negligible(d, TOL_RESIDUAL, scale * scale))
                {
                    return Err(Error::NotAutomorphism { i, j });
                }
            }
        }
        Ok(AutMatrix { m })
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.m
    }

    pub fn apply(&self, x: &Octonion<K>) -> Octonion<K> {
        let v = self.m.apply(x.coords());
        Octonion::from_coords(core::array::from_fn(|i| v[i].clone()))
    }

    /// Composition `g ∘ t` (apply `t` first); certification is inherited.
    pub fn compose(&self, t: &Self) -> Self {
        AutMatrix {
            m: self.m.mul(&t.m),
        }
    }

    /// Inverse automorphism; certification is inherited.
    pub fn inverse(&self) -> Self {
        let inv = self
            .m
            .inverse(TOL_RESIDUAL)
            .expect("certified automorphisms are invertible");
        AutMatrix { m: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.m.close_to(&Matrix::identity(DIM), TOL_RESIDUAL)
    }

    /// `‖gt - tg‖ = 0` exactly, or at most `TOL_RESIDUAL` on floats.
    pub fn commutes(&self, other: &Self) -> bool {
        let gt = self.m.mul(&other.m);
        let tg = other.m.mul(&self.m);
        if K::EXACT {
            gt == tg
        } else {
            gt.distance(&tg) <= TOL_RESIDUAL
        }
    }

    /// The fixed subalgebra: the 1-eigenspace, orthogonalized with the unit
    /// first. Dimension is in {2, 4, 8} for certified automorphisms on the
    /// compact preset, and 8 exactly for the identity.
    pub fn fixed_subalgebra(&self, ctx: &AlgebraContext<K>) -> Subalgebra<K> {
        let shifted = self.m.sub(&Matrix::identity(DIM));
        let kernel = shifted.nullspace(TOL_RESIDUAL);
        let vectors: Vec<Octonion<K>> = kernel
            .into_iter()
            .map(|v| Octonion::from_coords(core::array::from_fn(|i| v[i].clone())))
            .collect();
        Subalgebra::from_spanning(ctx, &vectors)
            .expect("fixed points of an automorphism form a composition subalgebra")
    }

    /// True when the automorphism fixes every element of `sub`.
    pub fn fixes_pointwise(&self, sub: &Subalgebra<K>) -> bool {
        sub.basis().iter().all(|b| {
            let image = self.apply(b);
            image.approx_eq(b, TOL_RESIDUAL)
        })
    }
}

/// Decomposition helper for `C = Q ⊕ Qb`: columns are the basis of Q
/// followed by the basis of Qb.
struct QuaternionSplit<K: Scalar> {
    q_basis: Vec<Octonion<K>>,
    change_inv: Matrix<K>,
}

impl<K: Scalar> QuaternionSplit<K> {
    fn new(ctx: &AlgebraContext<K>, q: &Subalgebra<K>, b: &Octonion<K>) -> Result<Self> {
        if q.dim() != 4 {
            return Err(Error::NotInHost);
        }
        if ctx.norm(b).is_zero() {
            return Err(Error::NormZero);
        }
        let scale = b.max_magnitude().max(1.0);
        for d in q.basis() {
            let ip = ctx.bilinear(b, d);
            if !negligible(&ip, TOL_EQ, scale * d.max_magnitude().max(1.0)) {
                return Err(Error::NotOrthogonal);
            }
        }
        let mut change = Matrix::zero(DIM, DIM);
        for (j, d) in q.basis().iter().enumerate() {
            change.set_column(j, d.coords());
            change.set_column(4 + j, ctx.mul(d, b).coords());
        }
        let change_inv = change.inverse(TOL_RESIDUAL).ok_or(Error::DegenerateForm)?;
        Ok(QuaternionSplit {
            q_basis: q.basis().to_vec(),
            change_inv,
        })
    }

    /// Write `z = x + y·b` with `x, y` in Q.
    fn split(&self, z: &Octonion<K>) -> (Octonion<K>, Octonion<K>) {
        let co = self.change_inv.apply(z.coords());
        let mut x = Octonion::zero();
        let mut y = Octonion::zero();
        for i in 0..4 {
            x = &x + &self.q_basis[i].scale(&co[i]);
            y = &y + &self.q_basis[i].scale(&co[4 + i]);
        }
        (x, y)
    }
}

/// The automorphism `x + yb ↦ x + (py)b` fixing the quaternion subalgebra
/// hosting `p` pointwise; requires `N(p) = 1` and `b` orthogonal to the
/// host with nonzero norm.
pub fn make_rp<K: Scalar>(
    ctx: &AlgebraContext<K>,
    p: &QuaternionPoint<K>,
    b: &Octonion<K>,
) -> Result<AutMatrix<K>> {
    let n = ctx.norm(p.value());
    if !scalars_close(&n, &K::one(), TOL_EQ) {
        return Err(Error::NormNotOne);
    }
    let split = QuaternionSplit::new(ctx, p.host(), b)?;
    let mut m = Matrix::zero(DIM, DIM);
    for j in 0..DIM {
        let (x, y) = split.split(&Octonion::basis(j));
        let py = ctx.mul(p.value(), &y);
        let image = &x + &ctx.mul(&py, b);
        m.set_column(j, image.coords());
    }
    AutMatrix::certify(ctx, m)
}

/// The lifted inner automorphism `x + yb ↦ cxc⁻¹ + (cyc⁻¹)b` for a
/// nonzero `c` in the quaternion subalgebra.
pub fn make_inner_ext<K: Scalar>(
    ctx: &AlgebraContext<K>,
    c: &QuaternionPoint<K>,
    b: &Octonion<K>,
) -> Result<AutMatrix<K>> {
    let n = ctx.norm(c.value());
    if n.is_zero() {
        return Err(Error::NormZero);
    }
    let c_inv = ctx.inverse(c.value())?;
    let split = QuaternionSplit::new(ctx, c.host(), b)?;
    let conj_by_c = |z: &Octonion<K>| ctx.mul(&ctx.mul(c.value(), z), &c_inv);
    let mut m = Matrix::zero(DIM, DIM);
    for j in 0..DIM {
        let (x, y) = split.split(&Octonion::basis(j));
        let image = &conj_by_c(&x) + &ctx.mul(&conj_by_c(&y), b);
        m.set_column(j, image.coords());
    }
    AutMatrix::certify(ctx, m)
}

/// The involution lifting the nontrivial conjugation of the quadratic
/// subalgebra L through the doubling basis {1, a, b, ab}: coefficients are
/// conjugated, the basis vectors stay fixed.
pub fn make_rho<K: Scalar>(
    ctx: &AlgebraContext<K>,
    l: &Subalgebra<K>,
    a: &Octonion<K>,
    b: &Octonion<K>,
) -> Result<AutMatrix<K>> {
    let basis = doubling_basis(ctx, l, a, b)?;
    let mut change = Matrix::zero(DIM, DIM);
    for (j, v) in basis.iter().enumerate() {
        change.set_column(j, v.coords());
    }
    let change_inv = change.inverse(TOL_RESIDUAL).ok_or(Error::DegenerateForm)?;
    // Conjugating the L-coefficients negates the odd (gamma-multiplied)
    // positions of the doubling basis.
    let mut diag = Matrix::zero(DIM, DIM);
    for i in 0..DIM {
        diag.set(i, i, if i % 2 == 0 { K::one() } else { -K::one() });
    }
    let m = change.mul(&diag).mul(&change_inv);
    AutMatrix::certify(ctx, m)
}

/// The real doubling basis `{1, γ, a, γa, b, γb, ab, γ(ab)}` for
/// `C = (L ⊕ La) ⊕ (L ⊕ La)b`, with position checks.
pub(crate) fn doubling_basis<K: Scalar>(
    ctx: &AlgebraContext<K>,
    l: &Subalgebra<K>,
    a: &Octonion<K>,
    b: &Octonion<K>,
) -> Result<[Octonion<K>; 8]> {
    if l.dim() != 2 {
        return Err(Error::BadBasisPosition);
    }
    let gamma = l.basis()[1].clone();
    if ctx.norm(a).is_zero() || ctx.norm(b).is_zero() {
        return Err(Error::NormZero);
    }
    let in_l_perp = |x: &Octonion<K>| {
        let s = x.max_magnitude().max(1.0);
        negligible(&ctx.bilinear(x, &Octonion::one()), TOL_EQ, s)
            && negligible(&ctx.bilinear(x, &gamma), TOL_EQ, s * gamma.max_magnitude().max(1.0))
    };
    if !in_l_perp(a) {
        return Err(Error::NotOrthogonal);
    }
    let ga = ctx.mul(&gamma, a);
    let s = b.max_magnitude().max(1.0);
    if !in_l_perp(b)
        || !negligible(&ctx.bilinear(b, a), TOL_EQ, s * a.max_magnitude().max(1.0))
        || !negligible(&ctx.bilinear(b, &ga), TOL_EQ, s * ga.max_magnitude().max(1.0))
    {
        return Err(Error::NotOrthogonal);
    }
    let ab = ctx.mul(a, b);
    let gb = ctx.mul(&gamma, b);
    let gab = ctx.mul(&gamma, &ab);
    Ok([
        Octonion::one(),
        gamma,
        a.clone(),
        ga,
        b.clone(),
        gb,
        ab,
        gab,
    ])
}
