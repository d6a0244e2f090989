//! The hermitian space on the orthogonal complement of a quadratic
//! subalgebra, and the bridge between automorphisms fixing L pointwise and
//! 3x3 special unitary matrices.
//!
//! L = k(γ) with γ² = c·1, c < 0. L⊥ is a left L-module with basis
//! (a, b, ab); the form
//!
//! ```text
//! h(x, y) = ⟨x, y⟩ + c⁻¹ γ ⟨γx, y⟩
//! ```
//!
//! is L-linear in the first argument and conjugate-linear in the second,
//! and membership in SU(H) reads `ᵗA·H·Ā = H` with
//! `H = diag(h(a,a), h(b,b), h(ab,ab))` for matrices whose columns are the
//! images of the basis. Complex values are normalized so the imaginary unit
//! is γ/√(−c).

use alloc::vec::Vec;

use crate::aut::{doubling_basis, AutMatrix};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::{negligible, scalars_close, Field, Scalar, TOL_EQ, TOL_RESIDUAL};
use crate::matrix::Matrix;
use crate::octonion::{AlgebraContext, Octonion, DIM};
use crate::subalgebra::Subalgebra;

/// The hermitian rank-3 space over a quadratic subalgebra.
#[derive(Clone, Debug)]
pub struct HermitianSpace<K: Scalar> {
    l: Subalgebra<K>,
    gamma: Octonion<K>,
    /// γ² = c·1 with c < 0.
    c: K,
    /// √(−c); the imaginary unit of L-values is γ/√(−c).
    sqrt_mc: K,
    basis: [Octonion<K>; 3],
    real_basis: [Octonion<K>; 8],
    change: Matrix<K>,
    change_inv: Matrix<K>,
    h_diag: [K; 3],
}

impl<K: Scalar> HermitianSpace<K> {
    /// Build the space for `L` and doubling elements `a`, `b` positioned as
    /// `a ∈ L⊥`, `b ⊥ L ⊕ La`, both of nonzero norm.
    pub fn build(
        ctx: &AlgebraContext<K>,
        l: &Subalgebra<K>,
        a: &Octonion<K>,
        b: &Octonion<K>,
    ) -> Result<Self> {
        if l.dim() != 2 {
            return Err(Error::BadBasisPosition);
        }
        let gamma = l.basis()[1].clone();
        // gamma is trace-zero, so gamma^2 = -N(gamma)·1
        let c = -ctx.norm(&gamma);
        if !c.is_negative() {
            return Err(Error::DegenerateForm);
        }
        let gamma_sq = ctx.mul(&gamma, &gamma);
        debug_assert!(gamma_sq.approx_eq(&Octonion::scalar(c.clone()), TOL_RESIDUAL));
        let sqrt_mc = (-c.clone()).sqrt().ok_or(Error::NormNotRepresented)?;
        let real_basis = doubling_basis(ctx, l, a, b)?;
        let mut change = Matrix::zero(DIM, DIM);
        for (j, v) in real_basis.iter().enumerate() {
            change.set_column(j, v.coords());
        }
        let change_inv = change.inverse(TOL_RESIDUAL).ok_or(Error::DegenerateForm)?;
        let ab = real_basis[6].clone();
        let basis = [a.clone(), b.clone(), ab];
        let mut space = HermitianSpace {
            l: l.clone(),
            gamma,
            c,
            sqrt_mc,
            basis,
            real_basis,
            change,
            change_inv,
            h_diag: [K::one(), K::one(), K::one()],
        };
        let mut diag = [K::zero(), K::zero(), K::zero()];
        for (i, v) in space.basis.clone().iter().enumerate() {
            let h = space.h_eval(ctx, v, v)?;
            if !negligible(&h.im, TOL_EQ, h.re.magnitude().max(1.0)) {
                return Err(Error::DegenerateForm);
            }
            if h.re.is_zero() {
                return Err(Error::DegenerateForm);
            }
            diag[i] = h.re;
        }
        space.h_diag = diag;
        Ok(space)
    }

    pub fn quadratic(&self) -> &Subalgebra<K> {
        &self.l
    }

    pub fn gamma(&self) -> &Octonion<K> {
        &self.gamma
    }

    /// The constant with γ² = c·1; negative on valid spaces.
    pub fn c(&self) -> &K {
        &self.c
    }

    /// The real basis {1, γ, a, γa, b, γb, ab, γ(ab)}.
    pub fn real_basis(&self) -> &[Octonion<K>; 8] {
        &self.real_basis
    }

    pub fn basis(&self) -> &[Octonion<K>; 3] {
        &self.basis
    }

    pub fn h_diag(&self) -> &[K; 3] {
        &self.h_diag
    }

    /// Gram matrix `H = diag(h(a,a), h(b,b), h(ab,ab))` over L.
    pub fn h_matrix(&self) -> Matrix<Complex<K>> {
        let mut m = Matrix::zero(3, 3);
        for i in 0..3 {
            m.set(i, i, Complex::from_real(self.h_diag[i].clone()));
        }
        m
    }

    fn check_in_complement(&self, ctx: &AlgebraContext<K>, x: &Octonion<K>) -> Result<()> {
        let s = x.max_magnitude().max(1.0);
        let p0 = ctx.bilinear(x, &Octonion::one());
        let p1 = ctx.bilinear(x, &self.gamma);
        if !negligible(&p0, TOL_EQ, s) || !negligible(&p1, TOL_EQ, s * self.gamma.max_magnitude().max(1.0))
        {
            return Err(Error::NotInComplement);
        }
        Ok(())
    }

    /// Evaluate the hermitian form; the L-value is returned as a complex
    /// number over the normalized imaginary unit γ/√(−c).
    pub fn h_eval(
        &self,
        ctx: &AlgebraContext<K>,
        x: &Octonion<K>,
        y: &Octonion<K>,
    ) -> Result<Complex<K>> {
        self.check_in_complement(ctx, x)?;
        self.check_in_complement(ctx, y)?;
        let re = ctx.bilinear(x, y);
        let gx = ctx.mul(&self.gamma, x);
        // gamma-coefficient c^{-1}·⟨γx, y⟩, rescaled by √(−c) to the
        // normalized unit: im = -⟨γx, y⟩ / √(−c)
        let im = -(ctx.bilinear(&gx, y) / self.sqrt_mc.clone());
        Ok(Complex::new(re, im))
    }

    /// L-module coordinates of `x ∈ L⊥` in the basis (a, b, ab).
    pub fn module_coords(&self, ctx: &AlgebraContext<K>, x: &Octonion<K>) -> Result<[Complex<K>; 3]> {
        self.check_in_complement(ctx, x)?;
        let w = self.change_inv.apply(x.coords());
        let s = x.max_magnitude().max(1.0);
        if !negligible(&w[0], TOL_EQ, s) || !negligible(&w[1], TOL_EQ, s) {
            return Err(Error::NotInComplement);
        }
        Ok(core::array::from_fn(|i| {
            Complex::new(
                w[2 + 2 * i].clone(),
                w[3 + 2 * i].clone() * self.sqrt_mc.clone(),
            )
        }))
    }

    /// Evaluate L-module coordinates back into an octonion.
    pub fn from_module_coords(&self, coords: &[Complex<K>; 3]) -> Octonion<K> {
        let mut v = [
            K::zero(),
            K::zero(),
            K::zero(),
            K::zero(),
            K::zero(),
            K::zero(),
            K::zero(),
            K::zero(),
        ];
        for i in 0..3 {
            v[2 + 2 * i] = coords[i].re.clone();
            v[3 + 2 * i] = coords[i].im.clone() / self.sqrt_mc.clone();
        }
        let image = self.change.apply(&v);
        Octonion::from_coords(core::array::from_fn(|i| image[i].clone()))
    }
}

/// A 3x3 matrix over L satisfying the SU(H) membership conditions
/// `det(A) = 1` and `ᵗA·H·Ā = H`.
#[derive(Clone, PartialEq, Debug)]
pub struct Su3Matrix<K: Scalar> {
    a: Matrix<Complex<K>>,
}

impl<K: Scalar> Su3Matrix<K> {
    pub fn new(space: &HermitianSpace<K>, a: Matrix<Complex<K>>) -> Result<Self> {
        a.require_shape(3)?;
        let det = a.det();
        if !scalars_close(&det.re, &K::one(), TOL_EQ) || !negligible(&det.im, TOL_EQ, 1.0) {
            return Err(Error::NotSpecialUnitary);
        }
        let h = space.h_matrix();
        let lhs = a.transpose().mul(&h).mul(&a.map(Field::conjugate));
        if !lhs.close_to(&h, TOL_EQ) {
            return Err(Error::NotSpecialUnitary);
        }
        Ok(Su3Matrix { a })
    }

    pub fn matrix(&self) -> &Matrix<Complex<K>> {
        &self.a
    }

    pub fn identity(space: &HermitianSpace<K>) -> Self {
        Su3Matrix::new(space, Matrix::identity(3)).expect("identity is special unitary")
    }

    pub fn diagonal(space: &HermitianSpace<K>, entries: [Complex<K>; 3]) -> Result<Self> {
        let mut m = Matrix::zero(3, 3);
        for (i, v) in entries.into_iter().enumerate() {
            m.set(i, i, v);
        }
        Su3Matrix::new(space, m)
    }
}

/// Matrix of `t` restricted to L⊥ in the left-L-module basis (a, b, ab).
/// `t` must fix L pointwise.
pub fn aut_to_su3<K: Scalar>(
    ctx: &AlgebraContext<K>,
    space: &HermitianSpace<K>,
    t: &AutMatrix<K>,
) -> Result<Su3Matrix<K>> {
    if !t.fixes_pointwise(space.quadratic()) {
        return Err(Error::NotFixingL);
    }
    let mut a = Matrix::zero(3, 3);
    for (j, x) in space.basis().iter().enumerate() {
        let image = t.apply(x);
        let coords = space.module_coords(ctx, &image)?;
        for (i, v) in coords.into_iter().enumerate() {
            a.set(i, j, v);
        }
    }
    Su3Matrix::new(space, a)
}

/// The unique automorphism fixing L pointwise whose restriction matrix is
/// `A`: identity on L, L-linear action on L⊥, then certification.
pub fn su3_to_aut<K: Scalar>(
    ctx: &AlgebraContext<K>,
    space: &HermitianSpace<K>,
    a: &Su3Matrix<K>,
) -> Result<AutMatrix<K>> {
    let s = &space.sqrt_mc;
    let mut mb: Matrix<K> = Matrix::zero(DIM, DIM);
    mb.set(0, 0, K::one());
    mb.set(1, 1, K::one());
    for j in 0..3 {
        for i in 0..3 {
            let entry = a.matrix().get(i, j);
            let u = entry.re.clone();
            let v = entry.im.clone();
            // complex entry u + v·ι acts on the real pair (x, γx) as
            // [[u, -v√(-c)], [v/√(-c), u]]
            mb.set(2 + 2 * i, 2 + 2 * j, u.clone());
            mb.set(3 + 2 * i, 2 + 2 * j, v.clone() / s.clone());
            mb.set(2 + 2 * i, 3 + 2 * j, -(v * s.clone()));
            mb.set(3 + 2 * i, 3 + 2 * j, u);
        }
    }
    let m = space.change.mul(&mb).mul(&space.change_inv);
    AutMatrix::certify(ctx, m)
}

/// The compact default space: L = span{1, e1}, a = e2, b = e4.
pub fn default_space<K: Scalar>(ctx: &AlgebraContext<K>) -> Result<HermitianSpace<K>> {
    let l = Subalgebra::generate(ctx, &[Octonion::basis(1)])?;
    HermitianSpace::build(ctx, &l, &Octonion::basis(2), &Octonion::basis(4))
}

/// Find `B ∈ SU(H)` with `A·B = B·Ā` for a matrix with spectrum
/// `{1, α, ᾱ}`: diagonalize with a special unitary `U` ordered as
/// (1, α, ᾱ) and conjugate the basic intertwiner
/// `B0 = [[-1,0,0],[0,0,1],[0,1,0]]` by `U … Uᵀ`. Requires the identity
/// Gram matrix.
pub fn find_intertwiner(
    space: &HermitianSpace<f64>,
    a: &Su3Matrix<f64>,
    tol: f64,
) -> Result<Su3Matrix<f64>> {
    type C = Complex<f64>;
    if space
        .h_diag()
        .iter()
        .any(|d| !scalars_close(d, &1.0, TOL_RESIDUAL))
    {
        return Err(Error::NonUnitGram);
    }
    let eigs = crate::eig3::eig3_unit(a.matrix())?;
    let one_idx = (0..3)
        .min_by(|&i, &j| {
            let di = (eigs[i].clone() - C::one()).abs();
            let dj = (eigs[j].clone() - C::one()).abs();
            di.partial_cmp(&dj).unwrap()
        })
        .unwrap();
    if (eigs[one_idx].clone() - C::one()).abs() > tol {
        return Err(Error::SpectrumInconsistent);
    }
    let others: Vec<C> = (0..3)
        .filter(|&i| i != one_idx)
        .map(|i| eigs[i].clone())
        .collect();
    let repeated = (others[0].clone() - others[1].clone()).abs() <= tol;

    let eigvec = |lambda: &C, eps: f64| -> Result<Vec<Vec<C>>> {
        let shifted = shift_matrix(a.matrix(), lambda);
        let ns = shifted.nullspace(eps);
        if ns.is_empty() {
            return Err(Error::SolverFailure);
        }
        Ok(ns)
    };

    let mut columns: Vec<Vec<C>> = Vec::with_capacity(3);
    let v1 = eigvec(&eigs[one_idx], TOL_RESIDUAL)?;
    columns.push(v1[0].clone());
    if repeated {
        let mean = (others[0].clone() + others[1].clone()).scale(&0.5);
        let pair = eigvec(&mean, 10.0 * tol)?;
        if pair.len() < 2 {
            return Err(Error::SolverFailure);
        }
        columns.push(pair[0].clone());
        columns.push(pair[1].clone());
    } else {
        // the member with positive imaginary part comes second
        let (alpha, alpha_bar) = if others[0].im >= 0.0 {
            (others[0].clone(), others[1].clone())
        } else {
            (others[1].clone(), others[0].clone())
        };
        columns.push(eigvec(&alpha, TOL_RESIDUAL)?[0].clone());
        columns.push(eigvec(&alpha_bar, TOL_RESIDUAL)?[0].clone());
    }

    // Gram–Schmidt in the standard hermitian inner product, then phase
    // normalization so the first significant component is real positive.
    let mut u_cols: Vec<Vec<C>> = Vec::with_capacity(3);
    for col in columns {
        let mut v = col;
        for prev in &u_cols {
            let ip = hdot(&v, prev);
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi = vi.clone() - ip.clone() * pi.clone();
            }
        }
        let norm = libm::sqrt(hdot(&v, &v).re);
        if norm < 1e-12 {
            return Err(Error::SolverFailure);
        }
        for vi in v.iter_mut() {
            *vi = vi.scale(&(1.0 / norm));
        }
        let lead = v
            .iter()
            .find(|z| z.abs() > 1e-6)
            .cloned()
            .ok_or(Error::SolverFailure)?;
        let phase = lead.scale(&(1.0 / lead.abs()));
        for vi in v.iter_mut() {
            *vi = vi.clone() / phase.clone();
        }
        u_cols.push(v);
    }
    let mut u: Matrix<C> = Matrix::zero(3, 3);
    for (j, col) in u_cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            u.set(i, j, v.clone());
        }
    }
    // det correction keeps U unitary and makes det(U) = 1
    let det = u.det();
    for i in 0..3 {
        let v = u.get(i, 2).clone() / det.clone();
        u.set(i, 2, v);
    }

    let mut b0: Matrix<C> = Matrix::zero(3, 3);
    b0.set(0, 0, C::from_real(-1.0));
    b0.set(1, 2, C::one());
    b0.set(2, 1, C::one());
    let b = u.mul(&b0).mul(&u.transpose());

    let ab = a.matrix().mul(&b);
    let ba_conj = b.mul(&a.matrix().map(Field::conjugate));
    if ab.distance(&ba_conj) > TOL_RESIDUAL {
        return Err(Error::SolverFailure);
    }
    Su3Matrix::new(space, b)
}

fn shift_matrix(a: &Matrix<Complex<f64>>, lambda: &Complex<f64>) -> Matrix<Complex<f64>> {
    let mut m = a.clone();
    for i in 0..3 {
        let v = m.get(i, i).clone() - lambda.clone();
        m.set(i, i, v);
    }
    m
}

fn hdot(x: &[Complex<f64>], y: &[Complex<f64>]) -> Complex<f64> {
    let mut acc = Complex::from_real(0.0);
    for (a, b) in x.iter().zip(y) {
        acc = acc + a.clone() * b.conjugate();
    }
    acc
}
