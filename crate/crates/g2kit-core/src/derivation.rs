//! The Lie-algebra layer: derivations of the octonions, commutant
//! dimensions, matrix exponentials and the seeded element sampler.
//!
//! A derivation satisfies the Leibniz rule `d(xy) = d(x)y + x d(y)`; the
//! solution space of the resulting linear system (64 unknowns, 512 scalar
//! equations) has dimension 14 on the compact preset — the Lie algebra of
//! G2. Centralizer dimensions of group elements are measured as commutant
//! dimensions inside this space.

use alloc::vec::Vec;

use crate::aut::AutMatrix;
use crate::error::{Error, Result};
use crate::field::{Scalar, TOL_RESIDUAL};
use crate::matrix::Matrix;
use crate::octonion::{AlgebraContext, Octonion, DIM};
use crate::rng::XorShift64Star;

/// An element of the derivation algebra. Validated on construction:
/// `d(1) = 0` is forced by the Leibniz rule itself.
#[derive(Clone, PartialEq, Debug)]
pub struct Derivation<K: Scalar> {
    d: Matrix<K>,
}

impl<K: Scalar> Derivation<K> {
    pub fn new(ctx: &AlgebraContext<K>, d: Matrix<K>) -> Result<Self> {
        d.require_shape(DIM)?;
        let der = Derivation { d };
        if !der.satisfies_leibniz(ctx) {
            return Err(Error::NotDerivation);
        }
        Ok(der)
    }

    pub(crate) fn new_unchecked(d: Matrix<K>) -> Self {
        Derivation { d }
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.d
    }

    pub fn apply(&self, x: &Octonion<K>) -> Octonion<K> {
        let v = self.d.apply(x.coords());
        Octonion::from_coords(core::array::from_fn(|i| v[i].clone()))
    }

    pub fn satisfies_leibniz(&self, ctx: &AlgebraContext<K>) -> bool {
        let scale = self.d.max_magnitude().max(1.0);
        for i in 0..DIM {
            for j in 0..DIM {
                let (coeff, k) = ctx.basis_product(i, j);
                let lhs = self.apply(&Octonion::basis(*k)).scale(coeff);
                let ei = Octonion::basis(i);
                let ej = Octonion::basis(j);
                let rhs = &ctx.mul(&self.apply(&ei), &ej) + &ctx.mul(&ei, &self.apply(&ej));
                let diff = &lhs - &rhs;
                if !diff
                    .coords()
                    .iter()
                    .all(|v| crate::field::negligible(v, TOL_RESIDUAL, scale))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Skewness w.r.t. the bilinear form, a consequence of the Leibniz rule.
    pub fn is_skew(&self, ctx: &AlgebraContext<K>) -> bool {
        let scale = self.d.max_magnitude().max(1.0);
        for i in 0..DIM {
            for j in 0..DIM {
                let ei = Octonion::basis(i);
                let ej = Octonion::basis(j);
                let s = ctx.bilinear(&self.apply(&ei), &ej) + ctx.bilinear(&ei, &self.apply(&ej));
                if !crate::field::negligible(&s, TOL_RESIDUAL, scale) {
                    return false;
                }
            }
        }
        true
    }

    /// Lie bracket `[d1, d2] = d1 d2 - d2 d1`, again a derivation.
    pub fn bracket(&self, other: &Self) -> Self {
        Derivation {
            d: self.d.mul(&other.d).sub(&other.d.mul(&self.d)),
        }
    }

    pub fn scale(&self, s: &K) -> Self {
        Derivation {
            d: self.d.scale(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Derivation {
            d: self.d.add(&other.d),
        }
    }

    pub fn zero() -> Self {
        Derivation {
            d: Matrix::zero(DIM, DIM),
        }
    }
}

/// Assemble the Leibniz linear system: 512 equations in the 64 entries of
/// an 8x8 matrix, row-major unknown order.
fn leibniz_system<K: Scalar>(ctx: &AlgebraContext<K>) -> Matrix<K> {
    let mut m: Matrix<K> = Matrix::zero(DIM * DIM * DIM, DIM * DIM);
    let mut row = 0;
    for i in 0..DIM {
        for j in 0..DIM {
            let (cij, kij) = ctx.basis_product(i, j).clone();
            for k in 0..DIM {
                // d(ei ej) = cij * d(e_kij): coordinate k reads D[k][kij]
                let cur = m.get(row + k, k * DIM + kij).clone();
                m.set(row + k, k * DIM + kij, cur + cij.clone());
            }
            for r in 0..DIM {
                // -(d(ei) ej): d(ei) = sum_r D[r][i] e_r, and e_r e_j lands
                // on coordinate k_rj with coefficient c_rj
                let (crj, krj) = ctx.basis_product(r, j).clone();
                let cur = m.get(row + krj, r * DIM + i).clone();
                m.set(row + krj, r * DIM + i, cur - crj);
                // -(ei d(ej))
                let (cir, kir) = ctx.basis_product(i, r).clone();
                let cur = m.get(row + kir, r * DIM + j).clone();
                m.set(row + kir, r * DIM + j, cur - cir);
            }
            row += DIM;
        }
    }
    m
}

/// Basis of the derivation algebra: the nullspace of the Leibniz system.
/// Has exactly 14 elements on the compact preset.
pub fn derivation_basis<K: Scalar>(ctx: &AlgebraContext<K>) -> Vec<Derivation<K>> {
    let system = leibniz_system(ctx);
    system
        .nullspace(TOL_RESIDUAL)
        .into_iter()
        .map(|v| {
            Derivation::new_unchecked(Matrix::from_fn(DIM, DIM, |r, c| v[r * DIM + c].clone()))
        })
        .collect()
}

/// The derivation algebra with its basis computed once; commutant queries
/// run against the cached basis.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra<K: Scalar> {
    basis: Vec<Derivation<K>>,
}

impl<K: Scalar> DerivationAlgebra<K> {
    pub fn new(ctx: &AlgebraContext<K>) -> Self {
        DerivationAlgebra {
            basis: derivation_basis(ctx),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation<K>] {
        &self.basis
    }

    /// Dimension of `{d in Der : t d = d t}` — the Lie algebra of the
    /// centralizer's identity component.
    pub fn centralizer_dimension(&self, t: &AutMatrix<K>) -> usize {
        let cols: Vec<Vec<K>> = self
            .basis
            .iter()
            .map(|d| {
                let comm = t.matrix().mul(d.matrix()).sub(&d.matrix().mul(t.matrix()));
                (0..DIM * DIM)
                    .map(|idx| comm.get(idx / DIM, idx % DIM).clone())
                    .collect()
            })
            .collect();
        let m = Matrix::from_fn(DIM * DIM, self.basis.len(), |r, c| cols[c][r].clone());
        m.nullspace(TOL_RESIDUAL).len()
    }

    /// Linear combination of basis derivations.
    pub fn combination(&self, coeffs: &[K]) -> Derivation<K> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = Derivation::zero();
        for (d, c) in self.basis.iter().zip(coeffs) {
            acc = acc.add(&d.scale(c));
        }
        acc
    }
}

/// Matrix exponential of `scale * d` by scaling-and-squaring with a
/// truncated series (terms below 1e-16 after scaling to spectral radius
/// at most 1/2). The result must certify as an automorphism.
pub fn exponentiate(
    ctx: &AlgebraContext<f64>,
    d: &Derivation<f64>,
    scale: f64,
) -> Result<AutMatrix<f64>> {
    let a = d.matrix().scale(&scale);
    // infinity norm
    let norm = (0..DIM)
        .map(|r| (0..DIM).map(|c| a.get(r, c).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut halvings = 0u32;
    let mut factor = 1.0;
    while norm * factor > 0.5 {
        factor /= 2.0;
        halvings += 1;
    }
    let b = a.scale(&factor);
    let mut sum: Matrix<f64> = Matrix::identity(DIM);
    let mut term: Matrix<f64> = Matrix::identity(DIM);
    for n in 1..=40 {
        term = term.mul(&b).scale(&(1.0 / n as f64));
        sum = sum.add(&term);
        if term.max_magnitude() < 1e-16 {
            break;
        }
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    AutMatrix::certify(ctx, sum.clone()).map_err(|_| {
        let residual = worst_multiplicativity_residual(ctx, &sum);
        Error::CertificationFailure { residual }
    })
}

fn worst_multiplicativity_residual(ctx: &AlgebraContext<f64>, m: &Matrix<f64>) -> f64 {
    let columns: Vec<Octonion<f64>> = (0..DIM)
        .map(|j| Octonion::from_coords(core::array::from_fn(|i| *m.get(i, j))))
        .collect();
    let mut worst = 0.0f64;
    for i in 0..DIM {
        for j in 0..DIM {
            let (coeff, k) = ctx.basis_product(i, j);
            let lhs = columns[*k].scale(coeff);
            let rhs = ctx.mul(&columns[i], &columns[j]);
            worst = worst.max((&lhs - &rhs).max_magnitude());
        }
    }
    worst
}

/// Deterministic function of the seed: the product of three exponentials of
/// independent pseudo-random derivations. Full support on the group but not
/// Haar-uniform.
pub fn sample_automorphism(
    ctx: &AlgebraContext<f64>,
    der: &DerivationAlgebra<f64>,
    seed: u64,
) -> Result<AutMatrix<f64>> {
    let mut rng = XorShift64Star::new(seed);
    let mut t = AutMatrix::identity();
    for _ in 0..3 {
        let coeffs: Vec<f64> = (0..der.dim()).map(|_| rng.symmetric()).collect();
        let d = der.combination(&coeffs);
        let g = exponentiate(ctx, &d, 1.0)?;
        t = t.compose(&g);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn exact_derivation_dimension_is_14() {
        let ctx: AlgebraContext<Rational> = AlgebraContext::compact();
        let basis = derivation_basis(&ctx);
        assert_eq!(basis.len(), 14);
        for d in &basis {
            // d(1) = 0 is forced by the Leibniz equations with i = j = 0
            assert!(d.apply(&Octonion::one()).is_zero());
            assert!(d.satisfies_leibniz(&ctx));
            assert!(d.is_skew(&ctx));
        }
    }

    #[test]
    fn float_derivation_dimension_is_14() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        assert_eq!(DerivationAlgebra::new(&ctx).dim(), 14);
    }

    #[test]
    fn bracket_closes() {
        let ctx: AlgebraContext<Rational> = AlgebraContext::compact();
        let basis = derivation_basis(&ctx);
        for d1 in basis.iter().take(4) {
            for d2 in basis.iter().take(4) {
                assert!(d1.bracket(d2).satisfies_leibniz(&ctx));
            }
        }
    }

    #[test]
    fn identity_centralizer_is_whole_algebra() {
        let ctx: AlgebraContext<Rational> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        assert_eq!(der.centralizer_dimension(&AutMatrix::identity()), 14);
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let t = exponentiate(&ctx, &Derivation::zero(), 1.0).unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn exponential_inverse_pairs() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        let mut rng = XorShift64Star::new(11);
        let coeffs: Vec<f64> = (0..der.dim()).map(|_| rng.symmetric()).collect();
        let d = der.combination(&coeffs);
        let s = 0.37;
        let fwd = exponentiate(&ctx, &d, s).unwrap();
        let back = exponentiate(&ctx, &d, -s).unwrap();
        assert!(fwd.compose(&back).is_identity());
    }

    #[test]
    fn random_exponentials_certify() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        let mut rng = XorShift64Star::new(3);
        for _ in 0..10 {
            let coeffs: Vec<f64> = (0..der.dim()).map(|_| rng.symmetric()).collect();
            let d = der.combination(&coeffs);
            let s = rng.uniform();
            assert!(exponentiate(&ctx, &d, s).is_ok());
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        let a = sample_automorphism(&ctx, &der, 42).unwrap();
        let b = sample_automorphism(&ctx, &der, 42).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let c = sample_automorphism(&ctx, &der, 43).unwrap();
        assert!(a.matrix().distance(c.matrix()) > 1e-6);
    }

    #[test]
    fn samples_fix_a_quadratic_subalgebra() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        for seed in 0..10 {
            let t = sample_automorphism(&ctx, &der, seed).unwrap();
            assert!(t.fixed_subalgebra(&ctx).dim() >= 2, "seed {seed}");
        }
    }
}
