//! Spectrum of a 3x3 complex matrix by Cardano's formula with Newton
//! polishing. Intended inputs are special unitary, so every eigenvalue lies
//! on the unit circle; the companion-matrix power-iteration oracle lives in
//! the test suite, not here.
//!
//! Multiple roots need care: Cardano amplifies coefficient noise ε to
//! roughly ε^(1/2) (double roots) or ε^(1/3) (triple roots). A refinement
//! pass detects clustered roots and, when the cluster mean is a root of the
//! polynomial to machine precision, snaps the cluster to the refined
//! multiple root (a simple root of the derivative), restoring full accuracy
//! for genuinely repeated spectra.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

type C = Complex<f64>;

/// Coefficients of `det(X I - A) = X^3 - c2 X^2 + c1 X - c0`.
pub fn char_poly_coeffs(a: &Matrix<C>) -> (C, C, C) {
    assert_eq!((a.rows(), a.cols()), (3, 3));
    let m = |r: usize, c: usize| a.get(r, c).clone();
    let c2 = m(0, 0) + m(1, 1) + m(2, 2);
    let minor = |i: usize, j: usize| m(i, i) * m(j, j) - m(i, j) * m(j, i);
    let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let c0 = a.det();
    (c2, c1, c0)
}

struct Cubic {
    c2: C,
    c1: C,
    c0: C,
    scale: f64,
}

impl Cubic {
    fn eval(&self, x: &C) -> C {
        let x2 = x.clone() * x.clone();
        let x3 = x2.clone() * x.clone();
        x3 - self.c2.clone() * x2 + self.c1.clone() * x.clone() - self.c0.clone()
    }

    fn deriv(&self, x: &C) -> C {
        C::from_real(3.0) * x.clone() * x.clone()
            - C::from_real(2.0) * self.c2.clone() * x.clone()
            + self.c1.clone()
    }

    fn second_deriv(&self, x: &C) -> C {
        C::from_real(6.0) * x.clone() - C::from_real(2.0) * self.c2.clone()
    }

    /// Newton steps on the polynomial itself (simple roots).
    fn polish(&self, mut x: C, steps: usize) -> C {
        for _ in 0..steps {
            let fp = self.deriv(&x);
            if fp.abs() < 1e-13 {
                break;
            }
            let next = x.clone() - self.eval(&x) / fp;
            if !next.is_finite() {
                break;
            }
            x = next;
        }
        x
    }

    /// Newton steps on the derivative (locates double roots).
    fn polish_double(&self, mut x: C, steps: usize) -> C {
        for _ in 0..steps {
            let fpp = self.second_deriv(&x);
            if fpp.abs() < 1e-13 {
                break;
            }
            let next = x.clone() - self.deriv(&x) / fpp;
            if !next.is_finite() {
                break;
            }
            x = next;
        }
        x
    }
}

/// Eigenvalues of a 3x3 complex matrix. For special unitary inputs each
/// value has modulus 1 within 1e-8 and the product equals `det(A)`.
pub fn eig3_unit(a: &Matrix<C>) -> Result<[C; 3]> {
    let (c2, c1, c0) = char_poly_coeffs(a);
    let scale = 1.0f64.max(c2.abs()).max(c1.abs()).max(c0.abs());
    let cubic = Cubic { c2, c1, c0, scale };
    let raw = cardano(&cubic)?;
    let mut roots: [C; 3] = core::array::from_fn(|i| cubic.polish(raw[i].clone(), 4));
    for r in &roots {
        if !r.is_finite() {
            return Err(Error::SolverFailure);
        }
    }
    refine_clusters(&cubic, &mut roots);
    for r in &roots {
        if cubic.eval(r).abs() > 1e-5 * cubic.scale {
            return Err(Error::SolverFailure);
        }
    }
    // deterministic output order: ascending argument, then real part
    roots.sort_by(|x, y| {
        x.arg()
            .partial_cmp(&y.arg())
            .unwrap()
            .then(x.re.partial_cmp(&y.re).unwrap())
    });
    Ok(roots)
}

/// Snap clustered roots onto exact multiple roots when the polynomial
/// confirms the multiplicity at machine precision.
fn refine_clusters(cubic: &Cubic, roots: &mut [C; 3]) {
    const CLUSTER: f64 = 1e-4;
    let residual_tol = 1e-12 * cubic.scale;
    let d01 = (roots[0].clone() - roots[1].clone()).abs();
    let d02 = (roots[0].clone() - roots[2].clone()).abs();
    let d12 = (roots[1].clone() - roots[2].clone()).abs();
    let all_close = d01 < CLUSTER && d02 < CLUSTER && d12 < CLUSTER;
    if all_close {
        // triple root must sit at tr/3
        let m = cubic.c2.scale(&(1.0 / 3.0));
        if cubic.eval(&m).abs() <= residual_tol {
            *roots = core::array::from_fn(|_| m.clone());
        }
        return;
    }
    let pair = if d01 < CLUSTER {
        Some((0, 1, 2))
    } else if d02 < CLUSTER {
        Some((0, 2, 1))
    } else if d12 < CLUSTER {
        Some((1, 2, 0))
    } else {
        None
    };
    if let Some((i, j, k)) = pair {
        let mean = (roots[i].clone() + roots[j].clone()).scale(&0.5);
        let m = cubic.polish_double(mean, 4);
        if cubic.eval(&m).abs() <= residual_tol {
            roots[i] = m.clone();
            roots[j] = m.clone();
            // remaining root from the trace
            roots[k] = cubic.c2.clone() - m.clone() - m;
        }
    }
}

/// Roots of `X^3 - c2 X^2 + c1 X - c0` by Cardano's formula, unpolished.
fn cardano(cubic: &Cubic) -> Result<[C; 3]> {
    let third = C::from_real(1.0 / 3.0);
    let shift = cubic.c2.clone() * third.clone();
    // depressed cubic t^3 + p t + q
    let p = cubic.c1.clone() - cubic.c2.clone() * cubic.c2.clone() * third.clone();
    let q = -(C::from_real(2.0 / 27.0)) * cubic.c2.clone() * cubic.c2.clone() * cubic.c2.clone()
        + cubic.c1.clone() * cubic.c2.clone() * third
        - cubic.c0.clone();
    if p.abs() < 1e-12 * cubic.scale && q.abs() < 1e-12 * cubic.scale {
        return Ok(core::array::from_fn(|_| shift.clone()));
    }
    let half_q = q.scale(&0.5);
    let disc = half_q.clone() * half_q.clone()
        + (p.clone() * p.clone() * p.clone()).scale(&(1.0 / 27.0));
    let sq = disc.sqrt();
    // pick the branch with less cancellation
    let plus = -half_q.clone() + sq.clone();
    let minus = -half_q - sq;
    let u0 = if plus.abs() >= minus.abs() { plus } else { minus };
    let u = u0.cbrt();
    if u.abs() < 1e-12 {
        return Ok(core::array::from_fn(|_| shift.clone()));
    }
    let omega = C::unit(2.0 * core::f64::consts::PI / 3.0);
    let mut roots: [C; 3] = core::array::from_fn(|_| C::zero());
    for (k, r) in roots.iter_mut().enumerate() {
        let mut uk = u.clone();
        for _ in 0..k {
            uk = uk * omega.clone();
        }
        let t = uk.clone() - p.clone() / (uk.scale(&3.0));
        *r = t + shift.clone();
        if !r.is_finite() {
            return Err(Error::SolverFailure);
        }
    }
    Ok(roots)
}
