//! Subcommand implementations. Each returns a [`CommandOutcome`]: whether
//! every check in the invoked suite passed, the machine-readable report and
//! a short text rendering. Identical inputs and seeds give byte-identical
//! reports.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use g2kit_core::derivation::{derivation_basis, sample_automorphism};
use g2kit_core::error::Error as CoreError;
use g2kit_core::field::{scalars_close, TOL_EQ};
use g2kit_core::orbit::{representative_with, OrbitType, REP_PHI, REP_THETA};
use g2kit_core::rng::XorShift64Star;
use g2kit_core::skolem::extend_isomorphism;
use g2kit_core::{AlgebraContext, Classifier, Octonion, Rational};
use serde_json::{json, Map, Value};

use crate::json::{
    aut_from_value, aut_to_value, context_to_value, iso_from_value, matrix_to_value,
    octonion_to_value, spectrum_to_value, JsonScalar,
};
use crate::SCHEMA_VERSION;

pub struct CommandOutcome {
    pub passed: bool,
    pub report: Value,
    pub text: String,
}

fn envelope(command: &str, backend: &str, body: Map<String, Value>) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("backend".into(), json!(backend));
    for (k, v) in body {
        map.insert(k, v);
    }
    Value::Object(map)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid JSON in {}", path.display()))
}

// ---------------------------------------------------------------- axioms

struct AxiomCheck {
    name: &'static str,
    failures: usize,
    counterexample: Option<Value>,
}

impl AxiomCheck {
    fn new(name: &'static str) -> Self {
        AxiomCheck {
            name,
            failures: 0,
            counterexample: None,
        }
    }

    fn record<K: JsonScalar>(&mut self, ok: bool, witnesses: &[&Octonion<K>]) {
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(Value::Array(
                    witnesses.iter().map(|o| octonion_to_value(o)).collect(),
                ));
            }
        }
    }
}

/// The Cayley–Dickson property suite: norm multiplicativity, left and
/// right alternativity, the Moufang identity and conjugation
/// anti-multiplicativity over seeded random elements.
pub fn axioms<K: JsonScalar>(trials: usize, seed: u64) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<K> = AlgebraContext::compact();
    let mut rng = XorShift64Star::new(seed);
    let mut checks = [
        AxiomCheck::new("norm_multiplicativity"),
        AxiomCheck::new("left_alternativity"),
        AxiomCheck::new("right_alternativity"),
        AxiomCheck::new("moufang"),
        AxiomCheck::new("conjugation_antihomomorphism"),
    ];
    let random_oct =
        |rng: &mut XorShift64Star| Octonion::from_coords(core::array::from_fn(|_| K::random(rng)));
    let close = |a: &Octonion<K>, b: &Octonion<K>| {
        if K::EXACT {
            a == b
        } else {
            a.approx_eq(b, TOL_EQ)
        }
    };
    for _ in 0..trials {
        let x = random_oct(&mut rng);
        let y = random_oct(&mut rng);
        let z = random_oct(&mut rng);
        let xy = ctx.mul(&x, &y);
        checks[0].record(
            scalars_close(&ctx.norm(&xy), &(ctx.norm(&x) * ctx.norm(&y)), TOL_EQ),
            &[&x, &y],
        );
        checks[1].record(
            close(&ctx.mul(&x, &xy), &ctx.mul(&ctx.mul(&x, &x), &y)),
            &[&x, &y],
        );
        checks[2].record(
            close(
                &ctx.mul(&ctx.mul(&y, &x), &x),
                &ctx.mul(&y, &ctx.mul(&x, &x)),
            ),
            &[&x, &y],
        );
        checks[3].record(
            close(
                &ctx.mul(&xy, &ctx.mul(&z, &x)),
                &ctx.mul(&x, &ctx.mul(&ctx.mul(&y, &z), &x)),
            ),
            &[&x, &y, &z],
        );
        checks[4].record(
            close(&xy.conjugate(), &ctx.mul(&y.conjugate(), &x.conjugate())),
            &[&x, &y],
        );
    }
    let passed = checks.iter().all(|c| c.failures == 0);
    let mut body = Map::new();
    body.insert("seed".into(), json!(seed));
    body.insert("trials".into(), json!(trials));
    body.insert(
        "checks".into(),
        Value::Array(
            checks
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("name".into(), json!(c.name));
                    m.insert("failures".into(), json!(c.failures));
                    m.insert("passed".into(), json!(c.failures == 0));
                    if let Some(ce) = &c.counterexample {
                        m.insert("counterexample".into(), ce.clone());
                    }
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    body.insert("passed".into(), json!(passed));
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            text,
            "{:32} {} ({} trials)",
            c.name,
            if c.failures == 0 { "ok" } else { "FAILED" },
            trials
        );
    }
    Ok(CommandOutcome {
        passed,
        report: envelope("axioms", K::BACKEND, body),
        text,
    })
}

// ----------------------------------------------------------- derivations

/// Derivation algebra: a basis of the Leibniz nullspace, its dimension and
/// the structural checks.
pub fn derivations<K: JsonScalar>() -> Result<CommandOutcome> {
    let ctx: AlgebraContext<K> = AlgebraContext::compact();
    let basis = derivation_basis(&ctx);
    let dimension = basis.len();
    let kills_unit = basis
        .iter()
        .all(|d| d.apply(&Octonion::one()).close_to_zero(TOL_EQ));
    let skew = basis.iter().all(|d| d.is_skew(&ctx));
    let passed = dimension == 14 && kills_unit && skew;
    let mut body = Map::new();
    body.insert("dimension".into(), json!(dimension));
    body.insert("kills_unit".into(), json!(kills_unit));
    body.insert("skew_symmetric".into(), json!(skew));
    body.insert(
        "basis".into(),
        Value::Array(basis.iter().map(|d| matrix_to_value(d.matrix())).collect()),
    );
    body.insert("context".into(), context_to_value::<K>());
    body.insert("passed".into(), json!(passed));
    let text = format!(
        "derivation algebra dimension {dimension} (unit killed: {kills_unit}, skew: {skew})\n"
    );
    Ok(CommandOutcome {
        passed,
        report: envelope("derivations", K::BACKEND, body),
        text,
    })
}

// -------------------------------------------------------------- classify

fn classification_body(
    classifier: &Classifier,
    t: &g2kit_core::AutMatrix<f64>,
) -> Result<(bool, Map<String, Value>)> {
    let mut body = Map::new();
    match classifier.classify(t) {
        Ok(report) => {
            let dim_ok = report.dim_matches_expected();
            body.insert("type".into(), json!(report.orbit_type.tag()));
            body.insert("spectrum".into(), spectrum_to_value(&report.spectrum));
            body.insert("fixed_dim".into(), json!(report.fixed_dim));
            body.insert("measured_dim".into(), json!(report.measured_dim));
            body.insert("expected_dim".into(), json!(report.expected_dim()));
            body.insert(
                "expected_components".into(),
                json!(report.expected_components()),
            );
            body.insert(
                "witness".into(),
                report
                    .witness
                    .as_ref()
                    .map(aut_to_value)
                    .unwrap_or(Value::Null),
            );
            body.insert("dim_matches_expected".into(), json!(dim_ok));
            Ok((dim_ok, body))
        }
        Err(CoreError::AmbiguousSpectrum) => {
            body.insert("error".into(), json!("ambiguous spectrum"));
            Ok((false, body))
        }
        Err(e) => Err(anyhow!("classification failed: {e}")),
    }
}

pub fn classify(path: &Path, tolerance: Option<f64>) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let value = read_json(path)?;
    let t = aut_from_value::<f64>(&ctx, &value)?;
    let classifier = build_classifier(&ctx, tolerance);
    let (passed, body) = classification_body(&classifier, &t)?;
    let text = match body.get("type") {
        Some(tag) => format!(
            "type {} measured_dim {} expected_dim {}\n",
            tag.as_str().unwrap_or("?"),
            body["measured_dim"],
            body["expected_dim"]
        ),
        None => "ambiguous spectrum\n".to_string(),
    };
    Ok(CommandOutcome {
        passed,
        report: envelope("classify", "float", body),
        text,
    })
}

fn build_classifier(ctx: &AlgebraContext<f64>, tolerance: Option<f64>) -> Classifier {
    let classifier = Classifier::new(ctx);
    match tolerance {
        Some(tol) => classifier.with_tolerance(tol),
        None => classifier,
    }
}

// ----------------------------------------------------------------- table

pub fn table(theta: f64, phi: f64, tolerance: Option<f64>) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let classifier = build_classifier(&ctx, tolerance);
    let mut rows = Vec::new();
    for ty in OrbitType::TABLE_ORDER {
        let t = representative_with(&ctx, ty, theta, phi)
            .map_err(|e| anyhow!("representative of {} failed: {e}", ty.tag()))?;
        let report = classifier
            .classify(&t)
            .map_err(|e| anyhow!("classifying the {} representative failed: {e}", ty.tag()))?;
        rows.push((ty, report));
    }
    let all_types = rows.iter().all(|(ty, r)| r.orbit_type == *ty);
    let all_dims = rows.iter().all(|(ty, r)| r.measured_dim == ty.expected_dim());
    let witnesses_ok = rows
        .iter()
        .all(|(ty, r)| r.witness.is_some() == ty.has_witness());
    let passed = all_types && all_dims && witnesses_ok;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<4} {:<17} {:<44} {:>4} {:>4} {:>5} {:>8}",
        "row", "type", "spectrum", "dim", "exp", "comps", "witness"
    );
    for (i, (ty, r)) in rows.iter().enumerate() {
        let spec_str = r
            .spectrum
            .iter()
            .map(|z| format!("{:+.3}{:+.3}i", z.re, z.im))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            text,
            "{:<4} {:<17} {:<44} {:>4} {:>4} {:>5} {:>8}",
            i + 1,
            r.orbit_type.tag(),
            spec_str,
            r.measured_dim,
            ty.expected_dim(),
            ty.expected_components(),
            if r.witness.is_some() { "yes" } else { "-" }
        );
    }
    let _ = writeln!(
        text,
        "types match: {all_types}; dims match: {all_dims}; witnesses as catalogued: {witnesses_ok}"
    );

    let mut body = Map::new();
    body.insert("theta".into(), json!(theta));
    body.insert("phi".into(), json!(phi));
    body.insert(
        "rows".into(),
        Value::Array(
            rows.iter()
                .map(|(ty, r)| {
                    json!({
                        "expected_type": ty.tag(),
                        "classified_type": r.orbit_type.tag(),
                        "spectrum": spectrum_to_value(&r.spectrum),
                        "fixed_dim": r.fixed_dim,
                        "measured_dim": r.measured_dim,
                        "expected_dim": ty.expected_dim(),
                        "expected_components": ty.expected_components(),
                        "witness_present": r.witness.is_some(),
                        "dim_matches": r.measured_dim == ty.expected_dim(),
                    })
                })
                .collect(),
        ),
    );
    body.insert("all_types_match".into(), json!(all_types));
    body.insert("all_dims_match".into(), json!(all_dims));
    body.insert("witnesses_as_expected".into(), json!(witnesses_ok));
    body.insert("passed".into(), json!(passed));
    Ok(CommandOutcome {
        passed,
        report: envelope("table", "float", body),
        text,
    })
}

// ---------------------------------------------------------------- sample

pub fn sample(trials: usize, seed: u64, tolerance: Option<f64>) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let classifier = build_classifier(&ctx, tolerance);
    let mut histogram: std::collections::BTreeMap<&'static str, usize> =
        std::collections::BTreeMap::new();
    let mut min_fixed_dim = 8usize;
    let mut certified = 0usize;
    for i in 0..trials {
        let t = sample_automorphism(&ctx, classifier.derivations(), seed + i as u64)
            .map_err(|e| anyhow!("sampling seed {} failed: {e}", seed + i as u64))?;
        certified += 1;
        match classifier.classify(&t) {
            Ok(report) => {
                min_fixed_dim = min_fixed_dim.min(report.fixed_dim);
                *histogram.entry(report.orbit_type.tag()).or_default() += 1;
            }
            Err(CoreError::AmbiguousSpectrum) => {
                *histogram.entry("Ambiguous").or_default() += 1;
            }
            Err(e) => return Err(anyhow!("classifying sample {i} failed: {e}")),
        }
    }
    let regular = histogram.get("StronglyRegular").copied().unwrap_or(0);
    let fraction = regular as f64 / trials.max(1) as f64;
    let passed = certified == trials && min_fixed_dim >= 2;
    let mut body = Map::new();
    body.insert("seed".into(), json!(seed));
    body.insert("trials".into(), json!(trials));
    body.insert(
        "histogram".into(),
        Value::Object(
            histogram
                .iter()
                .map(|(k, v)| ((*k).to_string(), json!(v)))
                .collect(),
        ),
    );
    body.insert("strongly_regular_fraction".into(), json!(fraction));
    body.insert("min_fixed_dim".into(), json!(min_fixed_dim));
    body.insert("all_certified".into(), json!(certified == trials));
    body.insert("passed".into(), json!(passed));
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} samples: strongly regular fraction {:.4}, min fixed dim {}",
        trials, fraction, min_fixed_dim
    );
    for (k, v) in &histogram {
        let _ = writeln!(text, "  {k:<17} {v}");
    }
    Ok(CommandOutcome {
        passed,
        report: envelope("sample", "float", body),
        text,
    })
}

// ------------------------------------------------------------ centralizer

pub fn centralizer_float(path: &Path, tolerance: Option<f64>) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let value = read_json(path)?;
    let t = aut_from_value::<f64>(&ctx, &value)?;
    let classifier = build_classifier(&ctx, tolerance);
    let measured = classifier.centralizer_dimension(&t);
    let mut body = Map::new();
    body.insert("measured_dim".into(), json!(measured));
    let passed = match classifier.classify(&t) {
        Ok(report) => {
            body.insert("type".into(), json!(report.orbit_type.tag()));
            body.insert("expected_dim".into(), json!(report.expected_dim()));
            body.insert(
                "dim_matches_expected".into(),
                json!(measured == report.expected_dim()),
            );
            measured == report.expected_dim()
        }
        Err(CoreError::AmbiguousSpectrum) => {
            body.insert("type".into(), Value::Null);
            body.insert("expected_dim".into(), Value::Null);
            true
        }
        Err(e) => return Err(anyhow!("classification failed: {e}")),
    };
    body.insert("passed".into(), json!(passed));
    let text = format!("measured centralizer dimension {measured}\n");
    Ok(CommandOutcome {
        passed,
        report: envelope("centralizer", "float", body),
        text,
    })
}

pub fn centralizer_exact(path: &Path) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<Rational> = AlgebraContext::compact();
    let value = read_json(path)?;
    let t = aut_from_value::<Rational>(&ctx, &value)?;
    let der = g2kit_core::derivation::DerivationAlgebra::new(&ctx);
    let measured = der.centralizer_dimension(&t);
    let mut body = Map::new();
    body.insert("measured_dim".into(), json!(measured));
    body.insert("type".into(), Value::Null);
    body.insert("expected_dim".into(), Value::Null);
    body.insert("passed".into(), json!(true));
    let text = format!("measured centralizer dimension {measured}\n");
    Ok(CommandOutcome {
        passed: true,
        report: envelope("centralizer", "exact", body),
        text,
    })
}

// -------------------------------------------------------------- extend-iso

pub fn extend_iso<K: JsonScalar>(path: &Path) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<K> = AlgebraContext::compact();
    let value = read_json(path)?;
    let iso = iso_from_value::<K>(&ctx, &value)?;
    let phi = match extend_isomorphism(&ctx, &iso) {
        Ok(phi) => phi,
        Err(CoreError::NormNotRepresented) => {
            bail!("no complement vector of matching norm is representable over the exact backend")
        }
        Err(e) => bail!("extension failed: {e}"),
    };
    // the extension must restrict to the input map
    let restriction_ok = iso
        .source()
        .basis()
        .iter()
        .zip(iso.images())
        .all(|(b, im)| phi.apply(b).approx_eq(im, g2kit_core::TOL_RESIDUAL));
    let mut body = Map::new();
    body.insert("matrix".into(), matrix_to_value(phi.matrix()));
    body.insert("certified".into(), json!(true));
    body.insert("source_dim".into(), json!(iso.source().dim()));
    body.insert("restriction_verified".into(), json!(restriction_ok));
    body.insert("passed".into(), json!(restriction_ok));
    let text = format!(
        "extended a dimension-{} isomorphism to a certified automorphism\n",
        iso.source().dim()
    );
    Ok(CommandOutcome {
        passed: restriction_ok,
        report: envelope("extend-iso", K::BACKEND, body),
        text,
    })
}

// ---------------------------------------------------------------- verify

pub fn verify_rp(
    p_spec: &str,
    trials: usize,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let coords: Vec<f64> = p_spec
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| anyhow!("bad p coordinate {s:?}: {e}")))
        .collect::<Result<_>>()?;
    if coords.len() != 4 {
        bail!("--p needs 4 comma-separated coordinates inside the quaternion subalgebra");
    }
    let mut full = [0.0; 8];
    full[..4].copy_from_slice(&coords);
    let p = Octonion::from_coords(full);
    let n = ctx.norm(&p);
    if !scalars_close(&n, &1.0, 1e-6) {
        bail!("p must have norm 1 (got {n})");
    }
    if p.imaginary().close_to_zero(TOL_EQ) {
        bail!("p must not be a scalar");
    }
    let classifier = build_classifier(&ctx, tolerance);
    let report = classifier
        .verify_rp_centralizer(&p, trials, seed)
        .map_err(|e| anyhow!("verification setup failed: {e}"))?;
    let passed = report.agreed() && report.both_outcomes();
    let mut body = Map::new();
    body.insert("p".into(), octonion_to_value(&p));
    body.insert("trials".into(), json!(report.trials));
    body.insert("seed".into(), json!(seed));
    body.insert("members".into(), json!(report.members));
    body.insert("nonmembers".into(), json!(report.nonmembers));
    body.insert("both_outcomes".into(), json!(report.both_outcomes()));
    body.insert(
        "disagreement".into(),
        match &report.disagreement {
            None => Value::Null,
            Some(case) => json!({
                "trial": case.trial,
                "p1": octonion_to_value(&case.p1),
                "c1": octonion_to_value(&case.c1),
                "commutes": case.commutes,
                "member": case.member,
            }),
        },
    );
    body.insert("passed".into(), json!(passed));
    let text = format!(
        "{} trials: {} members, {} nonmembers, disagreements: {}\n",
        report.trials,
        report.members,
        report.nonmembers,
        if report.agreed() { "none" } else { "FOUND" }
    );
    Ok(CommandOutcome {
        passed,
        report: envelope("verify-rp", "float", body),
        text,
    })
}

pub fn verify_involution(
    trials: usize,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<CommandOutcome> {
    let ctx: AlgebraContext<f64> = AlgebraContext::compact();
    let classifier = build_classifier(&ctx, tolerance);
    let report = classifier
        .verify_involution_centralizer(trials, seed)
        .map_err(|e| anyhow!("verification setup failed: {e}"))?;
    let passed = report.commutation_holds() && report.dim_matches();
    let mut body = Map::new();
    body.insert("trials".into(), json!(report.trials));
    body.insert("seed".into(), json!(seed));
    body.insert(
        "failed_trial".into(),
        report.failed_trial.map(|t| json!(t)).unwrap_or(Value::Null),
    );
    body.insert("rho_commutes_with_u2ext".into(), json!(report.rho_commutes));
    body.insert("measured_dim".into(), json!(report.measured_dim));
    body.insert("expected_dim".into(), json!(report.expected_dim));
    body.insert("dim_matches_expected".into(), json!(report.dim_matches()));
    body.insert("passed".into(), json!(passed));
    let text = format!(
        "{} trials commute: {}; rho commutes: {}; measured dim {} vs expected {}\n",
        report.trials,
        report.failed_trial.is_none(),
        report.rho_commutes,
        report.measured_dim,
        report.expected_dim
    );
    Ok(CommandOutcome {
        passed,
        report: envelope("verify-involution", "float", body),
        text,
    })
}

// ------------------------------------------------------------------ misc

/// Defaults match the table representatives.
pub fn default_angles() -> (f64, f64) {
    (REP_THETA, REP_PHI)
}
