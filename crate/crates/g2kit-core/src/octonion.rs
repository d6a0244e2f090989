//! The octonion algebra engine.
//!
//! An [`AlgebraContext`] fixes three nonzero doubling parameters
//! (c1, c2, c3) and derives the 8x8 multiplication table once from the
//! recursive Cayley–Dickson rule
//!
//! ```text
//! (a, b)(c, d) = (ac + λ·conj(d)b, da + b·conj(c))
//! ```
//!
//! applied at each doubling level with λ the level's parameter. The compact
//! preset is (-1, -1, -1). The standard basis is e0 = 1, e1, e2, e3 = e1e2,
//! e4, e5 = e1e4, e6 = e2e4, e7 = e3e4.
//!
//! The bilinear form is the halved polarization
//! `⟨x, y⟩ = (N(x+y) - N(x) - N(y)) / 2`, which makes the standard basis
//! orthonormal on the compact preset.

use alloc::vec::Vec;
use core::array;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{negligible, scalars_close, Field, Scalar, TOL_EQ};

pub const DIM: usize = 8;

/// Element of the Cayley–Dickson algebra, as coordinates over the standard
/// basis. Any coordinate vector is a valid element; the trace-zero subspace
/// is `coords[0] == 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Octonion<K> {
    coords: [K; 8],
}

impl<K: Scalar> Octonion<K> {
    pub fn from_coords(coords: [K; 8]) -> Self {
        Octonion { coords }
    }

    pub fn zero() -> Self {
        Octonion {
            coords: array::from_fn(|_| K::zero()),
        }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.coords[i] = K::one();
        o
    }

    /// Element of the scalar line k·1.
    pub fn scalar(s: K) -> Self {
        let mut o = Self::zero();
        o.coords[0] = s;
        o
    }

    pub fn coords(&self) -> &[K; 8] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &K {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(K::is_zero)
    }

    pub fn scale(&self, s: &K) -> Self {
        Octonion {
            coords: array::from_fn(|i| self.coords[i].clone() * s.clone()),
        }
    }

    /// Conjugation: negate the trace-zero part. Equals
    /// `2·⟨x, 1⟩·1 - x` for every doubling parameter choice.
    pub fn conjugate(&self) -> Self {
        Octonion {
            coords: array::from_fn(|i| {
                if i == 0 {
                    self.coords[0].clone()
                } else {
                    -self.coords[i].clone()
                }
            }),
        }
    }

    /// Trace `x + conj(x) = 2·x0`.
    pub fn trace(&self) -> K {
        self.coords[0].clone() + self.coords[0].clone()
    }

    /// Projection onto the trace-zero subspace.
    pub fn imaginary(&self) -> Self {
        let mut o = self.clone();
        o.coords[0] = K::zero();
        o
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coords.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| scalars_close(a, b, tol))
    }

    pub fn close_to_zero(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| negligible(c, tol, 1.0))
    }
}

impl<K: Scalar> Add for &Octonion<K> {
    type Output = Octonion<K>;
    fn add(self, rhs: &Octonion<K>) -> Octonion<K> {
        Octonion {
            coords: array::from_fn(|i| self.coords[i].clone() + rhs.coords[i].clone()),
        }
    }
}

impl<K: Scalar> Sub for &Octonion<K> {
    type Output = Octonion<K>;
    fn sub(self, rhs: &Octonion<K>) -> Octonion<K> {
        Octonion {
            coords: array::from_fn(|i| self.coords[i].clone() - rhs.coords[i].clone()),
        }
    }
}

impl<K: Scalar> Neg for &Octonion<K> {
    type Output = Octonion<K>;
    fn neg(self) -> Octonion<K> {
        Octonion {
            coords: array::from_fn(|i| -self.coords[i].clone()),
        }
    }
}

/// Product of two basis vectors: a scalar multiple of a single basis vector.
type TableEntry<K> = (K, usize);

/// The algebra: doubling parameters plus the cached multiplication table and
/// the diagonal Gram matrix of the norm form on the standard basis.
///
/// Immutable after construction; all operations are pure.
#[derive(Clone, Debug)]
pub struct AlgebraContext<K: Scalar> {
    params: [K; 3],
    table: Vec<TableEntry<K>>,
    gram: [K; 8],
}

impl<K: Scalar> PartialEq for AlgebraContext<K> {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

/// Recursive Cayley–Dickson product on coordinate slices; `params[level-1]`
/// is the λ for vectors of length `2^level`. Retained alongside the cached
/// table so the two routes can be checked against each other.
pub(crate) fn cd_mul_recursive<K: Scalar>(x: &[K], y: &[K], params: &[K; 3]) -> Vec<K> {
    let n = x.len();
    if n == 1 {
        return alloc::vec![x[0].clone() * y[0].clone()];
    }
    let h = n / 2;
    let lam = &params[n.trailing_zeros() as usize - 1];
    let conj = |u: &[K]| -> Vec<K> {
        u.iter()
            .enumerate()
            .map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() })
            .collect()
    };
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul_recursive(a, c, params);
    let db_conj = cd_mul_recursive(&conj(d), b, params);
    let da = cd_mul_recursive(d, a, params);
    let bc_conj = cd_mul_recursive(b, &conj(c), params);
    let mut out = Vec::with_capacity(n);
    for i in 0..h {
        out.push(ac[i].clone() + lam.clone() * db_conj[i].clone());
    }
    for i in 0..h {
        out.push(da[i].clone() + bc_conj[i].clone());
    }
    out
}

impl<K: Scalar> AlgebraContext<K> {
    /// Build the algebra for the given doubling parameters.
    pub fn new(params: [K; 3]) -> Result<Self> {
        if params.iter().any(K::is_zero) {
            return Err(Error::ZeroParameter);
        }
        let mut table = Vec::with_capacity(64);
        for i in 0..8 {
            let ei: Vec<K> = (0..8).map(|k| if k == i { K::one() } else { K::zero() }).collect();
            for j in 0..8 {
                let ej: Vec<K> = (0..8).map(|k| if k == j { K::one() } else { K::zero() }).collect();
                let prod = cd_mul_recursive(&ei, &ej, &params);
                let mut entry = None;
                for (k, v) in prod.iter().enumerate() {
                    if !v.is_zero() {
                        assert!(entry.is_none(), "basis product not a scaled basis vector");
                        entry = Some((v.clone(), k));
                    }
                }
                table.push(entry.unwrap_or((K::zero(), 0)));
            }
        }
        // Diagonal of the norm form: doubling multiplies the tail block by -λ.
        let mut gram = alloc::vec![K::one()];
        for lam in &params {
            let next: Vec<K> = gram.iter().map(|q| -(lam.clone()) * q.clone()).collect();
            gram.extend(next);
        }
        let gram: [K; 8] = array::from_fn(|i| gram[i].clone());
        Ok(AlgebraContext { params, table, gram })
    }

    /// The real division octonions: parameters (-1, -1, -1).
    pub fn compact() -> Self {
        Self::new([K::from_int(-1), K::from_int(-1), K::from_int(-1)])
            .expect("compact preset is valid")
    }

    pub fn params(&self) -> &[K; 3] {
        &self.params
    }

    /// Product of basis vectors as (coefficient, index).
    pub fn basis_product(&self, i: usize, j: usize) -> &(K, usize) {
        &self.table[i * 8 + j]
    }

    /// Octonion product via the cached table.
    pub fn mul(&self, x: &Octonion<K>, y: &Octonion<K>) -> Octonion<K> {
        let mut out: Octonion<K> = Octonion::zero();
        for i in 0..8 {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if y.coords[j].is_zero() {
                    continue;
                }
                let (coeff, k) = self.basis_product(i, j);
                let term = x.coords[i].clone() * y.coords[j].clone() * coeff.clone();
                out.coords[*k] = out.coords[*k].clone() + term;
            }
        }
        out
    }

    /// Norm form `N(x)`; a sum of squares on the compact preset.
    pub fn norm(&self, x: &Octonion<K>) -> K {
        let mut acc = K::zero();
        for i in 0..8 {
            acc = acc + self.gram[i].clone() * x.coords[i].clone() * x.coords[i].clone();
        }
        acc
    }

    /// Halved polarization `(N(x+y) - N(x) - N(y)) / 2`; the standard basis
    /// is orthogonal with `⟨ei, ei⟩ = gram[i]`.
    pub fn bilinear(&self, x: &Octonion<K>, y: &Octonion<K>) -> K {
        let mut acc = K::zero();
        for i in 0..8 {
            acc = acc + self.gram[i].clone() * x.coords[i].clone() * y.coords[i].clone();
        }
        acc
    }

    /// Multiplicative inverse `conj(x) / N(x)`.
    pub fn inverse(&self, x: &Octonion<K>) -> Result<Octonion<K>> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.conjugate().scale(&n.recip()))
    }

    /// Norm-aware closeness of a scalar to zero, used for membership and
    /// orthogonality decisions at the default equality tolerance.
    pub fn scalar_negligible(&self, v: &K, scale: f64) -> bool {
        negligible(v, TOL_EQ, scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Rational};

    fn exact_ctx() -> AlgebraContext<Rational> {
        AlgebraContext::compact()
    }

    #[test]
    fn basis_products_match_definitions() {
        let ctx = exact_ctx();
        // e3 = e1e2, e5 = e1e4, e6 = e2e4, e7 = e3e4
        for (i, j, k) in [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7)] {
            let p = ctx.mul(&Octonion::basis(i), &Octonion::basis(j));
            assert_eq!(p, Octonion::basis(k), "e{i} * e{j}");
        }
    }

    #[test]
    fn unit_squares_are_minus_one() {
        let ctx = exact_ctx();
        for i in 1..8 {
            let sq = ctx.mul(&Octonion::basis(i), &Octonion::basis(i));
            assert_eq!(sq, Octonion::scalar(ratio(-1, 1)), "e{i}^2");
        }
    }

    #[test]
    fn table_agrees_with_recursive_rule() {
        let ctx = exact_ctx();
        let x = Octonion::from_coords(core::array::from_fn(|i| ratio(i as i64 + 1, 3)));
        let y = Octonion::from_coords(core::array::from_fn(|i| ratio(2 * i as i64 - 5, 7)));
        let via_table = ctx.mul(&x, &y);
        let via_rec = cd_mul_recursive(x.coords(), y.coords(), ctx.params());
        assert_eq!(via_table.coords().to_vec(), via_rec);
    }

    #[test]
    fn inverse_of_unit_vector() {
        let ctx = exact_ctx();
        let x = &Octonion::scalar(ratio(3, 5)) + &Octonion::basis(1).scale(&ratio(4, 5));
        let xc = x.conjugate();
        assert_eq!(ctx.mul(&x, &xc), Octonion::one());
        let inv = ctx.inverse(&x).unwrap();
        assert_eq!(ctx.mul(&x, &inv), Octonion::one());
    }

    #[test]
    fn norm_of_one_plus_e1() {
        let ctx = exact_ctx();
        let x = &Octonion::one() + &Octonion::basis(1);
        assert_eq!(ctx.norm(&x), ratio(2, 1));
    }

    #[test]
    fn standard_basis_is_orthonormal() {
        let ctx = exact_ctx();
        for i in 0..8 {
            for j in 0..8 {
                let b = ctx.bilinear(&Octonion::basis(i), &Octonion::basis(j));
                let expected = if i == j { ratio(1, 1) } else { ratio(0, 1) };
                assert_eq!(b, expected, "<e{i}, e{j}>");
            }
        }
    }

    #[test]
    fn bilinear_is_halved_polarization() {
        let ctx = exact_ctx();
        let x = Octonion::from_coords(core::array::from_fn(|i| ratio(i as i64 - 3, 2)));
        let y = Octonion::from_coords(core::array::from_fn(|i| ratio(5 - i as i64, 3)));
        let pol = (ctx.norm(&(&x + &y)) - ctx.norm(&x) - ctx.norm(&y)) / ratio(2, 1);
        assert_eq!(ctx.bilinear(&x, &y), pol);
    }

    #[test]
    fn conjugate_matches_bilinear_formula() {
        let ctx = exact_ctx();
        let x = Octonion::from_coords(core::array::from_fn(|i| ratio(2 * i as i64 + 1, 5)));
        let via_form = &Octonion::scalar(ratio(2, 1) * ctx.bilinear(&x, &Octonion::one())) - &x;
        assert_eq!(x.conjugate(), via_form);
    }

    #[test]
    fn trace_is_twice_the_real_part() {
        let x = &Octonion::scalar(ratio(3, 7)) + &Octonion::basis(5).scale(&ratio(2, 1));
        assert_eq!(x.trace(), ratio(6, 7));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let ctx = exact_ctx();
        let err = ctx.inverse(&Octonion::zero()).unwrap_err();
        assert_eq!(err, Error::DivisionByZero);
    }

    #[test]
    fn zero_parameter_is_rejected() {
        let err = AlgebraContext::new([ratio(0, 1), ratio(-1, 1), ratio(-1, 1)]);
        assert_eq!(err.unwrap_err(), Error::ZeroParameter);
    }
}
