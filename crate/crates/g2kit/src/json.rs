//! JSON forms of the core types, for both scalar backends.
//!
//! Octonions are arrays of 8 numbers on the float backend or 8 strings
//! "p/q" on the exact backend; matrices are row-major arrays of rows;
//! complex spectra are arrays of [re, im] pairs. Files may carry an
//! optional "context" object {"params": [c1, c2, c3], "backend": ...}
//! which must match the running configuration.

use anyhow::{anyhow, bail, Context, Result};
use g2kit_core::field::Scalar;
use g2kit_core::rng::XorShift64Star;
use g2kit_core::skolem::SubalgebraIso;
use g2kit_core::{AlgebraContext, AutMatrix, Complex, Matrix, Octonion, Rational, Subalgebra};
use serde_json::{json, Value};

/// Scalars that can cross the JSON boundary.
pub trait JsonScalar: Scalar {
    const BACKEND: &'static str;
    fn from_value(v: &Value) -> Result<Self>;
    fn to_value(&self) -> Value;
    /// Small random value for the seeded property suites.
    fn random(rng: &mut XorShift64Star) -> Self;
}

impl JsonScalar for f64 {
    const BACKEND: &'static str = "float";

    fn from_value(v: &Value) -> Result<f64> {
        v.as_f64()
            .ok_or_else(|| anyhow!("expected a number, got {v}"))
    }

    fn to_value(&self) -> Value {
        json!(self)
    }

    fn random(rng: &mut XorShift64Star) -> f64 {
        rng.symmetric()
    }
}

impl JsonScalar for Rational {
    const BACKEND: &'static str = "exact";

    fn from_value(v: &Value) -> Result<Rational> {
        if let Some(s) = v.as_str() {
            let mut parts = s.splitn(2, '/');
            let numer: i128 = parts
                .next()
                .unwrap()
                .trim()
                .parse()
                .with_context(|| format!("bad rational {s:?}"))?;
            let denom: i128 = match parts.next() {
                Some(d) => d.trim().parse().with_context(|| format!("bad rational {s:?}"))?,
                None => 1,
            };
            if denom == 0 {
                bail!("zero denominator in {s:?}");
            }
            Ok(Rational::new(numer.into(), denom.into()))
        } else if let Some(i) = v.as_i64() {
            Ok(Rational::from_integer(i.into()))
        } else {
            bail!("expected a rational string \"p/q\" or an integer, got {v}")
        }
    }

    fn to_value(&self) -> Value {
        use num_traits::One;
        if self.denom().is_one() {
            Value::String(format!("{}", self.numer()))
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }

    fn random(rng: &mut XorShift64Star) -> Rational {
        let numer = rng.below(25) as i64 - 12;
        let denom = rng.below(9) as i64 + 1;
        Rational::new(numer.into(), denom.into())
    }
}

pub fn octonion_to_value<K: JsonScalar>(o: &Octonion<K>) -> Value {
    Value::Array(o.coords().iter().map(JsonScalar::to_value).collect())
}

pub fn octonion_from_value<K: JsonScalar>(v: &Value) -> Result<Octonion<K>> {
    let arr = v.as_array().ok_or_else(|| anyhow!("octonion must be an array"))?;
    if arr.len() != 8 {
        bail!("octonion needs 8 coordinates, got {}", arr.len());
    }
    let coords: Vec<K> = arr.iter().map(K::from_value).collect::<Result<_>>()?;
    Ok(Octonion::from_coords(core::array::from_fn(|i| {
        coords[i].clone()
    })))
}

pub fn matrix_to_value<K: JsonScalar>(m: &Matrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| m.get(r, c).to_value()).collect()))
            .collect(),
    )
}

pub fn matrix_from_value<K: JsonScalar>(v: &Value, n: usize) -> Result<Matrix<K>> {
    let rows = v.as_array().ok_or_else(|| anyhow!("matrix must be an array of rows"))?;
    if rows.len() != n {
        bail!("matrix needs {n} rows, got {}", rows.len());
    }
    let mut data: Vec<Vec<K>> = Vec::with_capacity(n);
    for row in rows {
        let cols = row.as_array().ok_or_else(|| anyhow!("matrix row must be an array"))?;
        if cols.len() != n {
            bail!("matrix needs {n} columns, got {}", cols.len());
        }
        data.push(cols.iter().map(K::from_value).collect::<Result<_>>()?);
    }
    Ok(Matrix::from_fn(n, n, |r, c| data[r][c].clone()))
}

pub fn spectrum_to_value(spectrum: &[Complex<f64>; 3]) -> Value {
    Value::Array(
        spectrum
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect(),
    )
}

pub fn aut_to_value<K: JsonScalar>(t: &AutMatrix<K>) -> Value {
    json!({
        "matrix": matrix_to_value(t.matrix()),
        "certified": true,
    })
}

/// Load and re-certify an automorphism; the stored "certified" flag is
/// never trusted.
pub fn aut_from_value<K: JsonScalar>(ctx: &AlgebraContext<K>, v: &Value) -> Result<AutMatrix<K>> {
    check_context::<K>(v)?;
    let m = v
        .get("matrix")
        .ok_or_else(|| anyhow!("element file needs a \"matrix\" field"))?;
    let matrix = matrix_from_value::<K>(m, 8)?;
    AutMatrix::certify(ctx, matrix).map_err(|e| anyhow!("certification failed: {e}"))
}

/// Validate the optional "context" block against the running backend and
/// the compact preset.
pub fn check_context<K: JsonScalar>(v: &Value) -> Result<()> {
    let Some(ctx) = v.get("context") else {
        return Ok(());
    };
    if let Some(backend) = ctx.get("backend").and_then(Value::as_str) {
        if backend != K::BACKEND {
            bail!(
                "context mismatch: file declares backend {backend:?}, run uses {:?}",
                K::BACKEND
            );
        }
    }
    if let Some(params) = ctx.get("params").and_then(Value::as_array) {
        let want = [-1i64, -1, -1];
        let got: Vec<Option<i64>> = params.iter().map(Value::as_i64).collect();
        if got.len() != 3 || got.iter().zip(&want) .any(|(g, w)| *g != Some(*w)) {
            bail!("context mismatch: only the compact preset (-1, -1, -1) is supported");
        }
    }
    Ok(())
}

pub fn context_to_value<K: JsonScalar>() -> Value {
    json!({"params": [-1, -1, -1], "backend": K::BACKEND})
}

/// SU(3) matrix form: a 3x3 array of [re, im] pairs.
pub fn su3_to_value<K: JsonScalar>(m: &Matrix<Complex<K>>) -> Value {
    Value::Array(
        (0..3)
            .map(|r| {
                Value::Array(
                    (0..3)
                        .map(|c| {
                            let z = m.get(r, c);
                            json!([z.re.to_value(), z.im.to_value()])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn su3_from_value<K: JsonScalar>(v: &Value) -> Result<Matrix<Complex<K>>> {
    let rows = v.as_array().ok_or_else(|| anyhow!("SU(3) matrix must be an array"))?;
    if rows.len() != 3 {
        bail!("SU(3) matrix needs 3 rows");
    }
    let mut m = Matrix::zero(3, 3);
    for (r, row) in rows.iter().enumerate() {
        let cols = row.as_array().ok_or_else(|| anyhow!("row must be an array"))?;
        if cols.len() != 3 {
            bail!("SU(3) matrix needs 3 columns");
        }
        for (c, pair) in cols.iter().enumerate() {
            let pair = pair.as_array().filter(|p| p.len() == 2)
                .ok_or_else(|| anyhow!("entry must be an [re, im] pair"))?;
            m.set(r, c, Complex::new(K::from_value(&pair[0])?, K::from_value(&pair[1])?));
        }
    }
    Ok(m)
}

/// Isomorphism input: {"source_basis": [...], "target_basis": [...],
/// "map": k×k matrix over the target basis}.
pub fn iso_from_value<K: JsonScalar>(
    ctx: &AlgebraContext<K>,
    v: &Value,
) -> Result<SubalgebraIso<K>> {
    check_context::<K>(v)?;
    let read_basis = |key: &str| -> Result<Vec<Octonion<K>>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("iso file needs a \"{key}\" array"))?
            .iter()
            .map(octonion_from_value)
            .collect()
    };
    let source_vectors = read_basis("source_basis")?;
    let target_vectors = read_basis("target_basis")?;
    let source = Subalgebra::generate(ctx, &source_vectors)
        .map_err(|e| anyhow!("source basis does not span a composition subalgebra: {e}"))?;
    let target = Subalgebra::generate(ctx, &target_vectors)
        .map_err(|e| anyhow!("target basis does not span a composition subalgebra: {e}"))?;
    let k = source.dim();
    let map = matrix_from_value::<K>(
        v.get("map")
            .ok_or_else(|| anyhow!("iso file needs a \"map\" field"))?,
        k,
    )?;
    SubalgebraIso::new(ctx, source, target, map).map_err(|e| anyhow!("invalid isomorphism: {e}"))
}
