//! Independent oracles for the derived values: a companion-matrix
//! power-iteration eigensolver checked against the Cardano path, and exact
//! cross-checks of the derivation dimension.

use g2kit_core::complex::Complex;
use g2kit_core::field::Field;
use g2kit_core::rng::XorShift64Star;
use g2kit_core::{AlgebraContext, Matrix, Rational};

type C = Complex<f64>;

/// Characteristic coefficients computed independently of the library path:
/// `det(XI - A) = X^3 - c2 X^2 + c1 X - c0`.
fn char_coeffs(a: &Matrix<C>) -> (C, C, C) {
    let m = |r: usize, c: usize| a.get(r, c).clone();
    let c2 = m(0, 0) + m(1, 1) + m(2, 2);
    let c1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
        + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)
        + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    let c0 = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    (c2, c1, c0)
}

/// Shifted inverse power iteration on a companion matrix, with Rayleigh
/// updates. Converges to the eigenvalue nearest the initial shift.
fn inverse_power(companion: &Matrix<C>, mut shift: C, iters: usize) -> C {
    let n = companion.rows();
    let mut v: Vec<C> = (0..n)
        .map(|i| C::new(1.0 + 0.3 * i as f64, 0.2 - 0.1 * i as f64))
        .collect();
    for _ in 0..iters {
        let mut shifted = companion.clone();
        for i in 0..n {
            let d = shifted.get(i, i).clone() - shift.clone();
            shifted.set(i, i, d);
        }
        let Some(w) = shifted.solve(&v, 1e-14) else {
            // shift landed on the eigenvalue
            return shift;
        };
        let norm = w.iter().map(|z| z.abs()).fold(0.0, f64::max);
        if !norm.is_finite() || norm == 0.0 {
            return shift;
        }
        v = w.into_iter().map(|z| z.scale(&(1.0 / norm))).collect();
        // Rayleigh quotient (max-normalized vectors are fine here)
        let av = companion.apply(&v);
        let num: C = av
            .iter()
            .zip(&v)
            .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.conjugate());
        let den: C = v
            .iter()
            .fold(C::zero(), |acc, b| acc + b.clone() * b.conjugate());
        shift = num / den;
    }
    shift
}

/// All three roots of `X^3 - c2 X^2 + c1 X - c0` via the companion matrix:
/// one root by inverse power iteration, synthetic division, the 2x2
/// companion for the second, Vieta for the last.
fn companion_eigs(c2: &C, c1: &C, c0: &C, seed_shift: C) -> [C; 3] {
    let mut comp3: Matrix<C> = Matrix::zero(3, 3);
    comp3.set(0, 2, c0.clone());
    comp3.set(1, 0, C::one());
    comp3.set(1, 2, -c1.clone());
    comp3.set(2, 1, C::one());
    comp3.set(2, 2, c2.clone());
    let r1 = inverse_power(&comp3, seed_shift, 60);
    // X^3 - c2 X^2 + c1 X - c0 = (X - r1)(X^2 + a X + b)
    let a = r1.clone() - c2.clone();
    let b = r1.clone() * r1.clone() - c2.clone() * r1.clone() + c1.clone();
    let mut comp2: Matrix<C> = Matrix::zero(2, 2);
    comp2.set(0, 1, -b.clone());
    comp2.set(1, 0, C::one());
    comp2.set(1, 1, -a.clone());
    let r2 = inverse_power(&comp2, C::new(0.9, 0.4), 60);
    let r3 = -a - r2.clone();
    [r1, r2, r3]
}

fn random_su3(rng: &mut XorShift64Star) -> Matrix<C> {
    let hdot = |x: &[C], y: &[C]| -> C {
        x.iter()
            .zip(y)
            .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.conjugate())
    };
    let mut cols: Vec<Vec<C>> = Vec::new();
    for _ in 0..3 {
        let mut v: Vec<C> = (0..3)
            .map(|_| C::new(rng.symmetric(), rng.symmetric()))
            .collect();
        for prev in &cols {
            let ip = hdot(&v, prev);
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi = vi.clone() - ip.clone() * pi.clone();
            }
        }
        let norm = libm::sqrt(hdot(&v, &v).re);
        for vi in v.iter_mut() {
            *vi = vi.scale(&(1.0 / norm));
        }
        cols.push(v);
    }
    let mut m: Matrix<C> = Matrix::zero(3, 3);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    let det = m.det();
    for i in 0..3 {
        let v = m.get(i, 0).clone() / det.clone();
        m.set(i, 0, v);
    }
    m
}

fn multiset_distance(a: &[C; 3], b: &[C; 3]) -> f64 {
    // best matching over the 6 permutations
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms
        .iter()
        .map(|p| {
            (0..3)
                .map(|i| (a[i].clone() - b[p[i]].clone()).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn cardano_agrees_with_companion_power_iteration_on_random_su3() {
    let mut rng = XorShift64Star::new(2024);
    for trial in 0..100 {
        let m = random_su3(&mut rng);
        let fast = g2kit_core::eig3::eig3_unit(&m).unwrap();
        let (c2, c1, c0) = char_coeffs(&m);
        let slow = companion_eigs(&c2, &c1, &c0, C::new(1.7, 0.9));
        assert!(
            multiset_distance(&fast, &slow) < 1e-7,
            "trial {trial}: cardano and companion oracles disagree"
        );
        for r in &fast {
            assert!((r.abs() - 1.0).abs() <= 1e-8, "unit modulus");
        }
        let product = fast[0].clone() * fast[1].clone() * fast[2].clone();
        assert!((product - c0).abs() < 1e-8, "product equals det");
    }
}

#[test]
fn companion_oracle_confirms_the_derived_reference_spectrum() {
    use core::f64::consts::PI;
    // diag(e^{2πi/5}, e^{-2πi/5} e^{2πi/7}, e^{-2πi/7})
    let targets = [
        C::unit(2.0 * PI / 5.0),
        C::unit(-2.0 * PI / 5.0 + 2.0 * PI / 7.0),
        C::unit(-2.0 * PI / 7.0),
    ];
    let mut m: Matrix<C> = Matrix::zero(3, 3);
    for (i, t) in targets.iter().enumerate() {
        m.set(i, i, t.clone());
    }
    let (c2, c1, c0) = char_coeffs(&m);
    let oracle = companion_eigs(&c2, &c1, &c0, C::new(1.5, 0.8));
    assert!(multiset_distance(&oracle, &targets) < 1e-9);
    let fast = g2kit_core::eig3::eig3_unit(&m).unwrap();
    assert!(multiset_distance(&fast, &targets) < 1e-8);
}

/// The Leibniz system solved over both backends gives the same dimension,
/// and the exact rational basis converts to a float solution of the float
/// system.
#[test]
fn derivation_dimension_cross_backend() {
    let exact: AlgebraContext<Rational> = AlgebraContext::compact();
    let float: AlgebraContext<f64> = AlgebraContext::compact();
    let exact_basis = g2kit_core::derivation::derivation_basis(&exact);
    let float_basis = g2kit_core::derivation::derivation_basis(&float);
    assert_eq!(exact_basis.len(), 14);
    assert_eq!(float_basis.len(), 14);
    use g2kit_core::field::Scalar;
    for d in exact_basis.iter().take(3) {
        let as_float = d.matrix().map(|q| q.to_f64());
        let converted = g2kit_core::derivation::Derivation::new(&float, as_float).unwrap();
        assert!(converted.satisfies_leibniz(&float));
    }
}
