//! Independent brute-force verification of every classifier verdict by
//! direct search in the extension, with explicit resource bounds.
//!
//! An oracle never consults a classifier: a positive answer always carries
//! a witness that re-verifies through engine arithmetic alone, and a
//! negative answer is only ever "false up to the stated bounds". With a
//! fixed seed and fixed bounds the reports are byte-identical across runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::classifiers::{
    self, classify_idempotent_shape, hypothesis_profile, TheoremId, Verdict,
};
use crate::pbw::{monomials_up_to, Extension, PbwError, SkewPoly};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("resource bound exceeded: {what}")]
    ResourceBoundExceeded { what: String },
    #[error("sweep would need sampling; supply a seed to enable it")]
    SeedRequired,
    #[error("hypotheses unsatisfied for `{theorem}`: {missing}")]
    HypothesesUnsatisfied { theorem: TheoremId, missing: String },
    #[error(transparent)]
    Engine(#[from] PbwError),
    #[error(transparent)]
    Classifier(#[from] classifiers::ClassifierError),
}

/// Bounds for oracle searches and crosscheck sweeps.
#[derive(Debug, Clone, Serialize)]
pub struct SearchBounds {
    /// Degree of enumerated elements in crosscheck sweeps.
    pub sweep_degree: u32,
    /// Degree bound for searched witnesses (inverses, inner inverses).
    pub search_degree: u32,
    /// Power bound for nilpotency / pi-regularity; `None` means twice the
    /// base-ring order.
    pub max_power: Option<usize>,
    /// Cap on exhaustively enumerated coefficient assignments.
    pub max_candidates: usize,
    /// Seed for sampled sweeps beyond the cap; without one, sampling is
    /// refused.
    pub seed: Option<u64>,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            sweep_degree: 1,
            search_degree: 3,
            max_power: None,
            max_candidates: 65_536,
            seed: None,
        }
    }
}

impl SearchBounds {
    pub fn with_seed(seed: u64) -> SearchBounds {
        SearchBounds {
            seed: Some(seed),
            ..SearchBounds::default()
        }
    }

    fn power_bound(&self, ext: &Extension) -> usize {
        self.max_power.unwrap_or(2 * ext.base().order())
    }
}

/// Positive oracle witnesses; every variant re-verifies through the
/// engine.
#[derive(Debug, Clone)]
pub enum OracleWitness {
    /// `f^k = 0`.
    NilpotencyIndex(usize),
    /// Two-sided inverse.
    Inverse(SkewPoly),
    /// `f g f = f`.
    InnerInverse(SkewPoly),
    /// `f^m g f^m = f^m`.
    PiRegular { power: usize, inner: SkewPoly },
    /// `f = (f - e) + e` with `f - e` invertible.
    Clean { idempotent: SkewPoly, inverse: SkewPoly },
    /// Which side of the vnl disjunction holds, with its inner inverse.
    Vnl { complement_side: bool, inner: SkewPoly },
    Idempotent,
}

#[derive(Debug, Clone)]
pub enum OracleVerdict {
    Holds(OracleWitness),
    FalseUpToBound,
}

impl OracleVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OracleVerdict::Holds(_))
    }

    pub fn describe(&self) -> String {
        match self {
            OracleVerdict::Holds(w) => match w {
                OracleWitness::NilpotencyIndex(k) => format!("holds: power {k} vanishes"),
                OracleWitness::Inverse(g) => format!("holds: inverse {g}"),
                OracleWitness::InnerInverse(g) => format!("holds: inner inverse {g}"),
                OracleWitness::PiRegular { power, inner } => {
                    format!("holds: power {power} with inner inverse {inner}")
                }
                OracleWitness::Clean { idempotent, .. } => {
                    format!("holds: idempotent part {idempotent}")
                }
                OracleWitness::Vnl {
                    complement_side,
                    inner,
                } => format!(
                    "holds on {}: inner inverse {inner}",
                    if *complement_side { "1 - f" } else { "f" }
                ),
                OracleWitness::Idempotent => "holds: equals its square".into(),
            },
            OracleVerdict::FalseUpToBound => "false up to bound".into(),
        }
    }
}

/// Iterator over all (or a seeded sample of) elements with coefficients on
/// the monomials of degree at most `degree`.
pub struct PolySweep {
    ext: Extension,
    monos: Vec<crate::pbw::Monomial>,
    mode: SweepMode,
    emitted: usize,
}

enum SweepMode {
    Exhaustive { total: usize },
    Sampled { rng: ChaCha8Rng, total: usize },
}

impl PolySweep {
    pub fn new(ext: &Extension, degree: u32, bounds: &SearchBounds) -> Result<PolySweep, OracleError> {
        let monos = monomials_up_to(ext.n(), degree);
        let order = ext.base().order();
        let full = order.checked_pow(monos.len() as u32);
        let mode = match full {
            Some(total) if total <= bounds.max_candidates => SweepMode::Exhaustive { total },
            _ => {
                let seed = bounds.seed.ok_or(OracleError::SeedRequired)?;
                SweepMode::Sampled {
                    rng: ChaCha8Rng::seed_from_u64(seed),
                    total: bounds.max_candidates,
                }
            }
        };
        Ok(PolySweep {
            ext: ext.clone(),
            monos,
            mode,
            emitted: 0,
        })
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self.mode, SweepMode::Exhaustive { .. })
    }

    pub fn len(&self) -> usize {
        match &self.mode {
            SweepMode::Exhaustive { total } | SweepMode::Sampled { total, .. } => *total,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn assemble(&self, digits: impl Iterator<Item = usize>) -> SkewPoly {
        let mut acc = self.ext.zero();
        for (m, c) in self.monos.iter().zip(digits) {
            acc = acc.add(&self.ext.monomial(m.clone(), c));
        }
        acc
    }
}

impl Iterator for PolySweep {
    type Item = SkewPoly;

    fn next(&mut self) -> Option<SkewPoly> {
        let order = self.ext.base().order();
        let k = self.emitted;
        match &mut self.mode {
            SweepMode::Exhaustive { total } => {
                if k >= *total {
                    return None;
                }
                self.emitted += 1;
                let monos = self.monos.len();
                let mut digits = Vec::with_capacity(monos);
                let mut idx = k;
                for _ in 0..monos {
                    digits.push(idx % order);
                    idx /= order;
                }
                Some(self.assemble(digits.into_iter()))
            }
            SweepMode::Sampled { rng, total } => {
                if k >= *total {
                    return None;
                }
                self.emitted += 1;
                let digits: Vec<usize> =
                    (0..self.monos.len()).map(|_| rng.random_range(0..order)).collect();
                Some(self.assemble(digits.into_iter()))
            }
        }
    }
}

/// Successive powers `f, f^2, ...` up to the power bound; reports the
/// first vanishing exponent.
pub fn oracle_nilpotent(f: &SkewPoly, bounds: &SearchBounds) -> Result<OracleVerdict, OracleError> {
    if f.is_zero() {
        return Ok(OracleVerdict::Holds(OracleWitness::NilpotencyIndex(1)));
    }
    let max_power = bounds.power_bound(f.ext());
    let mut p = f.clone();
    for k in 1..=max_power {
        if p.is_zero() {
            return Ok(OracleVerdict::Holds(OracleWitness::NilpotencyIndex(k)));
        }
        if k < max_power {
            p = p.mul(f).map_err(|e| match e {
                PbwError::ResourceBoundExceeded { degree, bound } => {
                    OracleError::ResourceBoundExceeded {
                        what: format!("power {} needs degree {degree} > {bound}", k + 1),
                    }
                }
                other => other.into(),
            })?;
        }
    }
    Ok(if p.is_zero() {
        OracleVerdict::Holds(OracleWitness::NilpotencyIndex(max_power))
    } else {
        OracleVerdict::FalseUpToBound
    })
}

/// Two-sided inverse search. Strategy one: when the constant coefficient
/// is invertible, peel it off and sum the alternating geometric series of
/// the remaining tail, which terminates whenever that tail is nilpotent.
/// Strategy two: exhaustive (or seeded) search over candidates of bounded
/// degree. Either way the returned inverse is re-verified by the engine.
pub fn oracle_unit(f: &SkewPoly, bounds: &SearchBounds) -> Result<OracleVerdict, OracleError> {
    let ext = f.ext().clone();
    let one = ext.one();
    if let Some(g) = geometric_inverse(f, bounds)? {
        if f.mul(&g)? == one && g.mul(f)? == one {
            return Ok(OracleVerdict::Holds(OracleWitness::Inverse(g)));
        }
    }
    let sweep = PolySweep::new(&ext, bounds.search_degree, bounds)?;
    for g in sweep {
        if try_mul(f, &g)?.is_some_and(|p| p == one)
            && try_mul(&g, f)?.is_some_and(|p| p == one)
        {
            return Ok(OracleVerdict::Holds(OracleWitness::Inverse(g)));
        }
    }
    Ok(OracleVerdict::FalseUpToBound)
}

fn geometric_inverse(
    f: &SkewPoly,
    bounds: &SearchBounds,
) -> Result<Option<SkewPoly>, OracleError> {
    let ext = f.ext();
    let ring = ext.base();
    let a0 = f.constant_coeff();
    let Some(t) = ring.inverse(a0) else {
        return Ok(None);
    };
    let tail = f.sub(&ext.constant(a0));
    if tail.is_zero() {
        return Ok(Some(ext.constant(t)));
    }
    // f = a0 (1 + w) with w = a0^{-1} tail; if w^m = 0 the inverse of
    // 1 + w is the alternating sum of powers of w.
    let w = tail.scalar_left(t);
    let neg_w = w.neg();
    let max_power = bounds.power_bound(ext);
    let mut series = ext.one();
    let mut power = ext.one();
    for _ in 1..=max_power {
        power = match power.mul(&neg_w) {
            Ok(p) => p,
            // Degree growth past the engine cap means the series will not
            // terminate within bounds; fall back to the exhaustive search.
            Err(PbwError::ResourceBoundExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if power.is_zero() {
            return Ok(Some(series.mul(&ext.constant(t))?));
        }
        series = series.add(&power);
    }
    Ok(None)
}

/// Exact idempotency through the engine.
pub fn oracle_idempotent(f: &SkewPoly) -> Result<OracleVerdict, OracleError> {
    Ok(if f.mul(f)? == *f {
        OracleVerdict::Holds(OracleWitness::Idempotent)
    } else {
        OracleVerdict::FalseUpToBound
    })
}

/// `None` when the product overflows the engine's degree cap: such a
/// candidate is unreachable within bounds and the search skips it.
fn try_mul(a: &SkewPoly, b: &SkewPoly) -> Result<Option<SkewPoly>, OracleError> {
    match a.mul(b) {
        Ok(p) => Ok(Some(p)),
        Err(PbwError::ResourceBoundExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn try_triple(a: &SkewPoly, b: &SkewPoly, c: &SkewPoly) -> Result<Option<SkewPoly>, OracleError> {
    match try_mul(a, b)? {
        Some(ab) => try_mul(&ab, c),
        None => Ok(None),
    }
}

/// Searches `g` of bounded degree with `f g f = f`.
pub fn oracle_vnr(f: &SkewPoly, bounds: &SearchBounds) -> Result<OracleVerdict, OracleError> {
    let sweep = PolySweep::new(f.ext(), bounds.search_degree, bounds)?;
    for g in sweep {
        if try_triple(f, &g, f)?.is_some_and(|p| p == *f) {
            return Ok(OracleVerdict::Holds(OracleWitness::InnerInverse(g)));
        }
    }
    Ok(OracleVerdict::FalseUpToBound)
}

/// For each power `m` up to the bound, searches `g` with
/// `f^m g f^m = f^m`. A vanishing power succeeds immediately with `g = 0`;
/// powers past the engine's degree cap are out of reach and end the search.
pub fn oracle_pi_regular(
    f: &SkewPoly,
    bounds: &SearchBounds,
) -> Result<OracleVerdict, OracleError> {
    let ext = f.ext();
    let max_power = bounds.power_bound(ext);
    let mut p = f.clone();
    for m in 1..=max_power {
        if p.is_zero() {
            return Ok(OracleVerdict::Holds(OracleWitness::PiRegular {
                power: m,
                inner: ext.zero(),
            }));
        }
        let sweep = PolySweep::new(ext, bounds.search_degree, bounds)?;
        for g in sweep {
            if try_triple(&p, &g, &p)?.is_some_and(|prod| prod == p) {
                return Ok(OracleVerdict::Holds(OracleWitness::PiRegular {
                    power: m,
                    inner: g,
                }));
            }
        }
        if m < max_power {
            p = match try_mul(&p, f)? {
                Some(next) => next,
                None => return Ok(OracleVerdict::FalseUpToBound),
            };
        }
    }
    Ok(OracleVerdict::FalseUpToBound)
}

/// Enumerates idempotents of the extension up to the search degree (by the
/// exact `e^2 = e` sweep) and tests `f - e` for invertibility.
pub fn oracle_clean(f: &SkewPoly, bounds: &SearchBounds) -> Result<OracleVerdict, OracleError> {
    let sweep = PolySweep::new(f.ext(), bounds.search_degree, bounds)?;
    for e in sweep {
        if !try_mul(&e, &e)?.is_some_and(|sq| sq == e) {
            continue;
        }
        let u = f.sub(&e);
        if let OracleVerdict::Holds(OracleWitness::Inverse(inv)) = oracle_unit(&u, bounds)? {
            return Ok(OracleVerdict::Holds(OracleWitness::Clean {
                idempotent: e,
                inverse: inv,
            }));
        }
    }
    Ok(OracleVerdict::FalseUpToBound)
}

/// `f` or `1 - f` admits an inner inverse.
pub fn oracle_vnl(f: &SkewPoly, bounds: &SearchBounds) -> Result<OracleVerdict, OracleError> {
    if let OracleVerdict::Holds(OracleWitness::InnerInverse(g)) = oracle_vnr(f, bounds)? {
        return Ok(OracleVerdict::Holds(OracleWitness::Vnl {
            complement_side: false,
            inner: g,
        }));
    }
    let complement = f.ext().one().sub(f);
    if let OracleVerdict::Holds(OracleWitness::InnerInverse(g)) =
        oracle_vnr(&complement, bounds)?
    {
        return Ok(OracleVerdict::Holds(OracleWitness::Vnl {
            complement_side: true,
            inner: g,
        }));
    }
    Ok(OracleVerdict::FalseUpToBound)
}

/// One classifier-vs-oracle disagreement, with enough data to re-verify.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<String>,
    pub classifier: Verdict,
    pub oracle: String,
}

/// Outcome of sweeping one criterion against its oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub theorem: TheoremId,
    pub swept: usize,
    pub agreements: usize,
    /// Witnessed disagreements: the oracle proved the opposite of the
    /// classifier.
    pub counterexamples: Vec<Counterexample>,
    /// Classifier said yes but the bounded oracle found no witness. Not a
    /// falsification; listed for bound tuning.
    pub unresolved: Vec<String>,
    pub bounds: SearchBounds,
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

impl CrosscheckReport {
    pub fn clean_pass(&self) -> bool {
        self.counterexamples.is_empty() && self.unresolved.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn crosscheck_gate(ext: &Extension, theorem: TheoremId) -> Result<(), OracleError> {
    let profile = hypothesis_profile(ext);
    let mut missing = Vec::new();
    if !profile.weak_compatible {
        missing.push("weak_compatible");
    }
    if !profile.ni {
        missing.push("ni");
    }
    let needs_abelian = matches!(
        theorem,
        TheoremId::Vnr | TheoremId::PiRegular | TheoremId::Vnl | TheoremId::Clean
    );
    if needs_abelian && !profile.abelian {
        missing.push("abelian");
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(OracleError::HypothesesUnsatisfied {
            theorem,
            missing: missing.join(", "),
        })
    }
}

/// Sweeps every element of degree at most `bounds.sweep_degree` (or a
/// seeded sample past the cap), comparing the classifier for `theorem`
/// with its oracle. `invert_classifier` flips the classifier's boolean
/// before comparison; it exists so the counterexample path can be
/// demonstrated end to end.
pub fn theorem_crosscheck_with(
    ext: &Extension,
    theorem: TheoremId,
    bounds: &SearchBounds,
    invert_classifier: bool,
) -> Result<CrosscheckReport, OracleError> {
    crosscheck_gate(ext, theorem)?;
    let mut report = CrosscheckReport {
        theorem,
        swept: 0,
        agreements: 0,
        counterexamples: Vec::new(),
        unresolved: Vec::new(),
        bounds: bounds.clone(),
        exhaustive: true,
        seed: bounds.seed,
    };

    if theorem == TheoremId::ProductNilpotents {
        let outer = PolySweep::new(ext, bounds.sweep_degree, bounds)?;
        report.exhaustive = outer.is_exhaustive();
        let elements: Vec<SkewPoly> = outer.collect();
        for f in &elements {
            for g in &elements {
                report.swept += 1;
                let mut verdict = classifiers::classify_product_nilpotent(f, g);
                if invert_classifier {
                    verdict = invert(verdict);
                }
                let oracle = oracle_nilpotent(&f.mul(g)?, bounds)?;
                record(&mut report, verdict, oracle, f, Some(g));
            }
        }
        return Ok(report);
    }

    let sweep = PolySweep::new(ext, bounds.sweep_degree, bounds)?;
    report.exhaustive = sweep.is_exhaustive();
    for f in sweep {
        report.swept += 1;
        let mut verdict = match theorem {
            TheoremId::Units => classifiers::classify_unit(&f),
            TheoremId::Nilpotents => classifiers::classify_nilpotent(&f),
            TheoremId::IdempotentShape => classify_idempotent_shape(&f),
            TheoremId::Vnr => classifiers::classify_vnr(&f),
            TheoremId::PiRegular => classifiers::classify_pi_regular(&f),
            TheoremId::Vnl => classifiers::classify_vnl(&f),
            TheoremId::Clean => classifiers::classify_clean(&f),
            other => {
                return Err(OracleError::ResourceBoundExceeded {
                    what: format!("`{other}` has no elementwise crosscheck"),
                })
            }
        };
        if invert_classifier {
            verdict = invert(verdict);
        }
        let oracle = match theorem {
            TheoremId::Units => oracle_unit(&f, bounds)?,
            TheoremId::Nilpotents => oracle_nilpotent(&f, bounds)?,
            TheoremId::IdempotentShape => oracle_idempotent(&f)?,
            TheoremId::Vnr => oracle_vnr(&f, bounds)?,
            TheoremId::PiRegular => oracle_pi_regular(&f, bounds)?,
            TheoremId::Vnl => oracle_vnl(&f, bounds)?,
            TheoremId::Clean => oracle_clean(&f, bounds)?,
            _ => unreachable!(),
        };
        // In the non-Abelian regime the idempotent shape is only a
        // necessary condition: oracle-true with shape-false is the one
        // actionable direction.
        let necessary_only =
            theorem == TheoremId::IdempotentShape && !hypothesis_profile(ext).abelian;
        if necessary_only {
            if oracle.holds() && verdict.is_false() {
                report.counterexamples.push(Counterexample {
                    element: f.to_expr_string(),
                    second: None,
                    classifier: verdict,
                    oracle: oracle.describe(),
                });
            } else {
                report.agreements += 1;
            }
        } else {
            record(&mut report, verdict, oracle, &f, None);
        }
    }
    Ok(report)
}

pub fn theorem_crosscheck(
    ext: &Extension,
    theorem: TheoremId,
    bounds: &SearchBounds,
) -> Result<CrosscheckReport, OracleError> {
    theorem_crosscheck_with(ext, theorem, bounds, false)
}

fn invert(mut v: Verdict) -> Verdict {
    use crate::classifiers::VerdictValue;
    v.value = match v.value {
        VerdictValue::True => VerdictValue::False,
        VerdictValue::False => VerdictValue::True,
        other => other,
    };
    v
}

fn record(
    report: &mut CrosscheckReport,
    verdict: Verdict,
    oracle: OracleVerdict,
    f: &SkewPoly,
    g: Option<&SkewPoly>,
) {
    match (verdict.is_true(), oracle.holds()) {
        (true, true) | (false, false) => report.agreements += 1,
        (false, true) => report.counterexamples.push(Counterexample {
            element: f.to_expr_string(),
            second: g.map(|p| p.to_expr_string()),
            classifier: verdict,
            oracle: oracle.describe(),
        }),
        (true, false) => report.unresolved.push(f.to_expr_string()),
    }
}

/// Verdict JSON enriched with the oracle's independent answer; used by the
/// element-classification front end.
pub fn verdict_with_oracle(
    verdict: &Verdict,
    oracle: Option<&OracleVerdict>,
) -> serde_json::Value {
    let mut value = verdict.to_json();
    if let (Some(obj), Some(oracle)) = (value.as_object_mut(), oracle) {
        obj.insert("oracle".into(), json!(oracle.describe()));
        obj.insert(
            "oracle_agrees".into(),
            json!(oracle.holds() == verdict.is_true()),
        );
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pbw::parse_expr;

    const E12: usize = 2;

    fn seeded() -> SearchBounds {
        SearchBounds::with_seed(17)
    }

    #[test]
    fn nilpotency_oracle() {
        let ut2 = fixtures::ut2_z2_ore();
        let f = ut2.constant(E12).add(&ut2.var(1).scalar_left(E12));
        match oracle_nilpotent(&f, &seeded()).unwrap() {
            OracleVerdict::Holds(OracleWitness::NilpotencyIndex(k)) => assert_eq!(k, 2),
            other => panic!("expected nilpotency, got {other:?}"),
        }
        assert!(!oracle_nilpotent(&ut2.one(), &seeded()).unwrap().holds());

        let z4 = fixtures::z4_poly();
        match oracle_nilpotent(&z4.constant(2), &seeded()).unwrap() {
            OracleVerdict::Holds(OracleWitness::NilpotencyIndex(k)) => assert_eq!(k, 2),
            other => panic!("expected nilpotency, got {other:?}"),
        }
    }

    #[test]
    fn unit_oracle_geometric_and_exhaustive() {
        let z4 = fixtures::z4_poly();
        let f = parse_expr(&z4, "1 + 2*x1").unwrap();
        match oracle_unit(&f, &seeded()).unwrap() {
            OracleVerdict::Holds(OracleWitness::Inverse(g)) => {
                assert_eq!(g, f); // self-inverse
                // Inverses are unique: brute force must find the same one.
                let mut brute = None;
                for cand in PolySweep::new(&z4, 2, &seeded()).unwrap() {
                    if f.mul(&cand).unwrap() == z4.one()
                        && cand.mul(&f).unwrap() == z4.one()
                    {
                        brute = Some(cand);
                        break;
                    }
                }
                assert_eq!(brute.unwrap(), g);
            }
            other => panic!("expected inverse, got {other:?}"),
        }
        assert!(!oracle_unit(&z4.var(1), &seeded()).unwrap().holds());

        let ut2 = fixtures::ut2_z2_ore();
        let g = ut2.one().add(&ut2.var(1).scalar_left(E12));
        match oracle_unit(&g, &seeded()).unwrap() {
            OracleVerdict::Holds(OracleWitness::Inverse(inv)) => {
                assert_eq!(g.mul(&inv).unwrap(), ut2.one());
                assert_eq!(inv.mul(&g).unwrap(), ut2.one());
            }
            other => panic!("expected inverse, got {other:?}"),
        }
    }

    #[test]
    fn shape_oracles() {
        let z4 = fixtures::z4_poly();
        assert!(oracle_idempotent(&z4.one()).unwrap().holds());
        assert!(!oracle_idempotent(&z4.var(1)).unwrap().holds());

        let mut bounds = seeded();
        bounds.search_degree = 4;
        assert!(!oracle_vnr(&z4.var(1), &bounds).unwrap().holds());
        assert!(!oracle_clean(&z4.var(1), &bounds).unwrap().holds());

        bounds.max_power = Some(8);
        let f = parse_expr(&z4, "2 + 2*x1").unwrap();
        match oracle_pi_regular(&f, &bounds).unwrap() {
            OracleVerdict::Holds(OracleWitness::PiRegular { power, .. }) => {
                assert_eq!(power, 2)
            }
            other => panic!("expected pi-regular, got {other:?}"),
        }

        let v = oracle_vnl(&parse_expr(&z4, "2*x1").unwrap(), &bounds).unwrap();
        match v {
            OracleVerdict::Holds(OracleWitness::Vnl {
                complement_side, ..
            }) => assert!(complement_side),
            other => panic!("expected vnl, got {other:?}"),
        }
    }

    #[test]
    fn sweep_is_exhaustive_within_cap_and_needs_seed_beyond() {
        let z4 = fixtures::z4_poly();
        let sweep = PolySweep::new(&z4, 1, &SearchBounds::default()).unwrap();
        assert!(sweep.is_exhaustive());
        let all: Vec<SkewPoly> = sweep.collect();
        assert_eq!(all.len(), 16);
        // First candidates are the constants, in index order.
        assert_eq!(all[0], z4.zero());
        assert_eq!(all[1], z4.one());

        let mut small = SearchBounds::default();
        small.max_candidates = 4;
        assert!(matches!(
            PolySweep::new(&z4, 1, &small),
            Err(OracleError::SeedRequired)
        ));
        small.seed = Some(5);
        let sampled: Vec<SkewPoly> = PolySweep::new(&z4, 1, &small).unwrap().collect();
        assert_eq!(sampled.len(), 4);
    }

    #[test]
    fn units_crosscheck_is_clean_and_deterministic() {
        let z4 = fixtures::z4_poly();
        let mut bounds = seeded();
        bounds.search_degree = 2;
        let a = theorem_crosscheck(&z4, TheoremId::Units, &bounds).unwrap();
        let b = theorem_crosscheck(&z4, TheoremId::Units, &bounds).unwrap();
        assert_eq!(a.swept, 16);
        assert_eq!(a.agreements, 16);
        assert!(a.clean_pass());
        assert_eq!(
            serde_json::to_string(&a.to_json()).unwrap(),
            serde_json::to_string(&b.to_json()).unwrap()
        );
    }

    #[test]
    fn fault_injection_produces_witnessed_counterexample() {
        let z4 = fixtures::z4_poly();
        let mut bounds = seeded();
        bounds.search_degree = 2;
        let report =
            theorem_crosscheck_with(&z4, TheoremId::Units, &bounds, true).unwrap();
        assert!(!report.counterexamples.is_empty());
        // Witnessed means the oracle side holds where the classifier said no.
        assert!(report.counterexamples[0].oracle.starts_with("holds"));
    }

    #[test]
    fn crosscheck_gate_blocks_abelian_theorems_on_ut2() {
        let ut2 = fixtures::ut2_z2_ore();
        assert!(matches!(
            theorem_crosscheck(&ut2, TheoremId::Vnr, &seeded()),
            Err(OracleError::HypothesesUnsatisfied { .. })
        ));
    }
}
