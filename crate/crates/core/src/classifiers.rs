//! Coefficient-shape classification of extension elements, valid under the
//! weak-compatibility / NI hypotheses (plus Abelian where stated).
//!
//! Every classifier is gated on a computed [`HypothesisProfile`]: when the
//! required hypotheses fail, the verdict is `hypotheses_unsatisfied` rather
//! than a guess. Constructive verdicts carry witnesses. A classifier never
//! reconciles a disagreement silently: violations of a guaranteed
//! consequence surface as [`ClassifierError::TheoremFalsified`].

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::pbw::{Extension, PbwError, SkewPoly};

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("precondition unmet: {what}")]
    PreconditionUnmet { what: String },
    #[error("guaranteed consequence `{theorem}` failed: {detail}")]
    TheoremFalsified { theorem: TheoremId, detail: String },
    #[error(transparent)]
    Engine(#[from] PbwError),
}

/// Hypotheses under which the coefficient-shape criteria are valid.
/// Computed from the validated extension, never asserted by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypothesisProfile {
    /// Weak sigma- and delta-compatibility of the base system.
    pub weak_compatible: bool,
    /// The base ring is NI; by the transfer equivalence the extension is
    /// then NI as well.
    pub ni: bool,
    pub abelian: bool,
    pub reduced: bool,
    /// Every reordering constant is central and invertible (enforced at
    /// validation, recorded for reporting).
    pub d_central_invertible: bool,
}

pub fn hypothesis_profile(ext: &Extension) -> HypothesisProfile {
    let compat = ext.compat();
    let classes = ext.base_classes();
    HypothesisProfile {
        weak_compatible: compat.weak_compatible(),
        ni: classes.ni,
        abelian: classes.abelian,
        reduced: classes.reduced,
        d_central_invertible: true,
    }
}

/// Identifies which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Nilpotents,
    ProductNilpotents,
    Units,
    ConstantProduct,
    IdempotentExact,
    IdempotentShape,
    IdempotentCentral,
    IdempotentSigmaShift,
    NilpotentCorrection,
    Vnr,
    PiRegularDecomposition,
    PiRegular,
    Vnl,
    Clean,
    RadicalNilpotents,
    ModRadicalSeparation,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Nilpotents => "nilpotent-coefficients",
            TheoremId::ProductNilpotents => "product-nilpotent-pairs",
            TheoremId::Units => "unit-constant-nilpotent-tail",
            TheoremId::ConstantProduct => "constant-product-nilpotent-tail",
            TheoremId::IdempotentExact => "idempotent-exact",
            TheoremId::IdempotentShape => "idempotent-constant-shape",
            TheoremId::IdempotentCentral => "idempotent-central",
            TheoremId::IdempotentSigmaShift => "idempotent-twist-nilpotent",
            TheoremId::NilpotentCorrection => "idempotent-nilpotent-correction",
            TheoremId::Vnr => "vnr-unit-times-idempotent",
            TheoremId::PiRegularDecomposition => "pi-regular-idempotent-split",
            TheoremId::PiRegular => "pi-regular-constant-nilpotent-tail",
            TheoremId::Vnl => "vnl-either-side-vnr",
            TheoremId::Clean => "clean-constant-nilpotent-tail",
            TheoremId::RadicalNilpotents => "radical-equals-nilpotents-bounded",
            TheoremId::ModRadicalSeparation => "mod-radical-separation-criterion",
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictValue {
    True,
    False,
    HypothesesUnsatisfied,
}

/// Outcome of a theorem-backed classification, with optional witness data.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Verdict {
    fn holds(theorem: TheoremId, witness: serde_json::Value) -> Verdict {
        Verdict {
            value: VerdictValue::True,
            theorem,
            witness: Some(witness),
        }
    }

    fn fails(theorem: TheoremId, witness: serde_json::Value) -> Verdict {
        Verdict {
            value: VerdictValue::False,
            theorem,
            witness: Some(witness),
        }
    }

    fn ungated(theorem: TheoremId, profile: &HypothesisProfile, missing: &str) -> Verdict {
        Verdict {
            value: VerdictValue::HypothesesUnsatisfied,
            theorem,
            witness: Some(json!({
                "missing": missing,
                "profile": profile,
            })),
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == VerdictValue::True
    }

    pub fn is_false(&self) -> bool {
        self.value == VerdictValue::False
    }

    pub fn gated(&self) -> bool {
        self.value == VerdictValue::HypothesesUnsatisfied
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

fn gate(
    ext: &Extension,
    theorem: TheoremId,
    need_abelian: bool,
) -> Result<HypothesisProfile, Verdict> {
    let profile = hypothesis_profile(ext);
    let mut missing = Vec::new();
    if !profile.weak_compatible {
        missing.push("weak_compatible");
    }
    if !profile.ni {
        missing.push("ni");
    }
    if need_abelian && !profile.abelian {
        missing.push("abelian");
    }
    if missing.is_empty() {
        Ok(profile)
    } else {
        Err(Verdict::ungated(theorem, &profile, &missing.join(", ")))
    }
}

fn coeff_names(f: &SkewPoly) -> Vec<serde_json::Value> {
    f.terms()
        .iter()
        .map(|(m, &c)| {
            json!({
                "exp": m.exponents(),
                "coeff": c,
                "name": f.ext().base().name(c),
            })
        })
        .collect()
}

/// `f` is nilpotent in the extension iff every coefficient is nilpotent in
/// the base ring.
pub fn classify_nilpotent(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::Nilpotents;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, false) {
        return v;
    }
    let nil = ext.base().nilpotents();
    match f.terms().iter().find(|(_, c)| !nil.contains(c)) {
        None => Verdict::holds(theorem, json!({ "coefficients": coeff_names(f) })),
        Some((m, &c)) => Verdict::fails(
            theorem,
            json!({
                "offending_exp": m.exponents(),
                "offending_coeff": c,
            }),
        ),
    }
}

/// `fg` is nilpotent iff every coefficient product `a_i b_j` is nilpotent.
pub fn classify_product_nilpotent(f: &SkewPoly, g: &SkewPoly) -> Verdict {
    let theorem = TheoremId::ProductNilpotents;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, false) {
        return v;
    }
    let ring = ext.base();
    let nil = ring.nilpotents();
    for (ma, &a) in f.terms() {
        for (mb, &b) in g.terms() {
            let p = ring.mul(a, b);
            if !nil.contains(&p) {
                return Verdict::fails(
                    theorem,
                    json!({
                        "left_exp": ma.exponents(),
                        "right_exp": mb.exponents(),
                        "product": p,
                    }),
                );
            }
        }
    }
    Verdict::holds(theorem, json!({ "pairs": f.terms().len() * g.terms().len() }))
}

/// `f` is a unit iff its constant coefficient is a unit and every higher
/// coefficient is nilpotent. The witness records the decomposition of `f`
/// as a base-ring unit plus an element with nilpotent coefficients.
pub fn classify_unit(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::Units;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, false) {
        return v;
    }
    let ring = ext.base();
    let a0 = f.constant_coeff();
    if !ring.is_unit(a0) {
        return Verdict::fails(theorem, json!({ "constant": a0, "reason": "constant coefficient is not a unit" }));
    }
    let nil = ring.nilpotents();
    if let Some((m, c)) = f.tail_coeffs().find(|(_, c)| !nil.contains(c)) {
        return Verdict::fails(
            theorem,
            json!({
                "offending_exp": m.exponents(),
                "offending_coeff": c,
                "reason": "higher coefficient is not nilpotent",
            }),
        );
    }
    let tail: Vec<serde_json::Value> = f
        .tail_coeffs()
        .map(|(m, c)| json!({ "exp": m.exponents(), "coeff": c }))
        .collect();
    Verdict::holds(
        theorem,
        json!({
            "unit_part": a0,
            "nilpotent_tail": tail,
        }),
    )
}

/// When `fg` lies in the base ring and the constant coefficient of `g` is
/// a unit, every higher coefficient of `f` must be nilpotent. A violation
/// here is impossible under the hypotheses and is reported as a
/// falsification.
pub fn constant_product_consequence(
    f: &SkewPoly,
    g: &SkewPoly,
) -> Result<Verdict, ClassifierError> {
    let theorem = TheoremId::ConstantProduct;
    let ext = f.ext();
    match gate(ext, theorem, false) {
        Ok(_) => {}
        Err(v) => return Ok(v),
    }
    let product = f.mul(g)?;
    if product.degree().map_or(false, |d| d > 0) {
        return Err(ClassifierError::PreconditionUnmet {
            what: format!("f*g = {} does not lie in the coefficient ring", product),
        });
    }
    let ring = ext.base();
    if !ring.is_unit(g.constant_coeff()) {
        return Err(ClassifierError::PreconditionUnmet {
            what: "constant coefficient of g is not a unit".into(),
        });
    }
    let nil = ring.nilpotents();
    if let Some((m, c)) = f.tail_coeffs().find(|(_, c)| !nil.contains(c)) {
        return Err(ClassifierError::TheoremFalsified {
            theorem,
            detail: format!(
                "higher coefficient {} at {:?} is not nilpotent although f*g = {}",
                ring.name(c),
                m.exponents(),
                product
            ),
        });
    }
    Ok(Verdict::holds(
        theorem,
        json!({
            "product_constant": product.constant_coeff(),
            "nilpotent_tail_len": f.tail_coeffs().count(),
        }),
    ))
}

/// Engine-exact idempotency: computes `f*f` and compares.
pub fn classify_idempotent_exact(f: &SkewPoly) -> Result<Verdict, ClassifierError> {
    let theorem = TheoremId::IdempotentExact;
    let sq = f.mul(f)?;
    Ok(if sq == *f {
        Verdict::holds(theorem, json!({}))
    } else {
        Verdict::fails(theorem, json!({}))
    })
}

/// Shape criterion for idempotency.
///
/// Under weak compatibility and NI alone this is a *necessary* condition:
/// every higher coefficient nilpotent and the constant congruent to an
/// idempotent modulo the nilpotents. With the Abelian hypothesis it is
/// exact: `f` is idempotent iff `f` is a constant idempotent of the base
/// ring. The witness carries the mode so a necessary-only answer is never
/// mistaken for a decision.
pub fn classify_idempotent_shape(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::IdempotentShape;
    let ext = f.ext();
    let profile = match gate(ext, theorem, false) {
        Ok(p) => p,
        Err(v) => return v,
    };
    let ring = ext.base();
    if profile.abelian {
        let constant = f.degree().map_or(true, |d| d == 0);
        let value = constant && ring.is_idempotent(f.constant_coeff());
        let witness = json!({
            "mode": "exact",
            "constant": f.constant_coeff(),
        });
        return if value {
            Verdict::holds(theorem, witness)
        } else {
            Verdict::fails(theorem, witness)
        };
    }
    let nil = ring.nilpotents();
    let tail_ok = f.tail_coeffs().all(|(_, c)| nil.contains(&c));
    let residue = ring
        .idempotents()
        .iter()
        .find(|&&e| nil.contains(&ring.sub(f.constant_coeff(), e)))
        .copied();
    let value = tail_ok && residue.is_some();
    let witness = json!({
        "mode": "necessary-only",
        "tail_nilpotent": tail_ok,
        "idempotent_residue": residue,
    });
    if value {
        Verdict::holds(theorem, witness)
    } else {
        Verdict::fails(theorem, witness)
    }
}

/// Centrality of a base-ring idempotent in the whole extension.
///
/// Abelian case: verifies `sigma_i(e) = e`, `delta_i(e) = 0` for all `i`
/// and `e` central in the base ring, which together put `e` in the center
/// of the extension; any failure is a falsification. Non-Abelian case:
/// reports the decompositions `sigma_i(e) = e + u_i` with `u_i` nilpotent.
pub fn idempotent_centrality(ext: &Extension, e: usize) -> Result<Verdict, ClassifierError> {
    let ring = ext.base();
    if !ring.is_idempotent(e) {
        return Err(ClassifierError::PreconditionUnmet {
            what: format!("{} is not idempotent", ring.name(e)),
        });
    }
    let profile = match gate(ext, TheoremId::IdempotentCentral, false) {
        Ok(p) => p,
        Err(v) => return Ok(v),
    };
    let sys = ext.system();
    if profile.abelian {
        let theorem = TheoremId::IdempotentCentral;
        for i in 0..ext.n() {
            let se = sys.sigma(i).apply(e);
            if se != e {
                return Err(ClassifierError::TheoremFalsified {
                    theorem,
                    detail: format!("sigma_{}({}) = {}", i + 1, ring.name(e), ring.name(se)),
                });
            }
            let de = sys.delta(i).apply(e);
            if de != ring.zero() {
                return Err(ClassifierError::TheoremFalsified {
                    theorem,
                    detail: format!("delta_{}({}) = {}", i + 1, ring.name(e), ring.name(de)),
                });
            }
        }
        if !ring.is_central(e) {
            return Err(ClassifierError::TheoremFalsified {
                theorem,
                detail: format!("{} is not central in the base ring", ring.name(e)),
            });
        }
        return Ok(Verdict::holds(
            theorem,
            json!({ "central": true, "element": e }),
        ));
    }
    let theorem = TheoremId::IdempotentSigmaShift;
    let nil = ring.nilpotents();
    let mut shifts = Vec::with_capacity(ext.n());
    for i in 0..ext.n() {
        let u = ring.sub(sys.sigma(i).apply(e), e);
        let de = sys.delta(i).apply(e);
        if !nil.contains(&u) {
            return Err(ClassifierError::TheoremFalsified {
                theorem,
                detail: format!(
                    "sigma_{}({}) - {} = {} is not nilpotent",
                    i + 1,
                    ring.name(e),
                    ring.name(e),
                    ring.name(u)
                ),
            });
        }
        if !nil.contains(&de) {
            return Err(ClassifierError::TheoremFalsified {
                theorem,
                detail: format!("delta_{}({}) is not nilpotent", i + 1, ring.name(e)),
            });
        }
        shifts.push(json!({ "var": i + 1, "u": u, "delta": de }));
    }
    Ok(Verdict::holds(theorem, json!({ "shifts": shifts })))
}

/// If `e` and `e + s` are idempotent, `s` is nilpotent and `es = se`, then
/// `s = 0`. Preconditions are checked; a surviving nonzero `s` would
/// falsify the statement.
pub fn nilpotent_correction(
    ext: &Extension,
    e: usize,
    s: usize,
) -> Result<Verdict, ClassifierError> {
    let theorem = TheoremId::NilpotentCorrection;
    let ring = ext.base();
    let pre = |what: &str| ClassifierError::PreconditionUnmet { what: what.into() };
    if !ring.is_idempotent(e) {
        return Err(pre("e is not idempotent"));
    }
    if !ring.is_nilpotent(s) {
        return Err(pre("s is not nilpotent"));
    }
    if ring.mul(e, s) != ring.mul(s, e) {
        return Err(pre("e and s do not commute"));
    }
    if !ring.is_idempotent(ring.add(e, s)) {
        return Err(pre("e + s is not idempotent"));
    }
    if s != ring.zero() {
        return Err(ClassifierError::TheoremFalsified {
            theorem,
            detail: format!("s = {} survives the preconditions", ring.name(s)),
        });
    }
    Ok(Verdict::holds(theorem, json!({ "s": s })))
}

/// Searches the factorization `a0 = u e` with the tail inside `e N(R)`.
/// Search order is idempotents then units, ascending; first witness wins.
fn vnr_shape(f: &SkewPoly) -> Option<(usize, usize)> {
    let ring = f.ext().base();
    let nil = ring.nilpotents();
    for &e in ring.idempotents() {
        let e_nil: std::collections::BTreeSet<usize> =
            nil.iter().map(|&n| ring.mul(e, n)).collect();
        if !f.tail_coeffs().all(|(_, c)| e_nil.contains(&c)) {
            continue;
        }
        for &u in ring.units() {
            if ring.mul(u, e) == f.constant_coeff() {
                return Some((u, e));
            }
        }
    }
    None
}

/// Von Neumann regularity: `a0 = u e` for a unit `u` and idempotent `e`,
/// with every higher coefficient in `e N(R)`.
pub fn classify_vnr(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::Vnr;
    if let Err(v) = gate(f.ext(), theorem, true) {
        return v;
    }
    match vnr_shape(f) {
        Some((u, e)) => Verdict::holds(theorem, json!({ "u": u, "e": e })),
        None => Verdict::fails(theorem, json!({})),
    }
}

/// Pi-regularity split in an Abelian base ring: `e r = e u` and
/// `(1-e) r` nilpotent for some idempotent `e` and unit `u`. Cross-checked
/// against the exhaustive pi-regularity search.
pub fn pi_regular_decomposition(
    ext: &Extension,
    r: usize,
) -> Result<Verdict, ClassifierError> {
    let theorem = TheoremId::PiRegularDecomposition;
    let ring = ext.base();
    let profile = hypothesis_profile(ext);
    if !profile.abelian {
        return Ok(Verdict::ungated(theorem, &profile, "abelian"));
    }
    let one = ring.one();
    let mut found = None;
    'outer: for &e in ring.idempotents() {
        if !ring.is_nilpotent(ring.mul(ring.sub(one, e), r)) {
            continue;
        }
        for &u in ring.units() {
            if ring.mul(e, r) == ring.mul(e, u) {
                found = Some((e, u));
                break 'outer;
            }
        }
    }
    let direct = ring.element_report(r).pi_regular;
    if found.is_some() != direct {
        return Err(ClassifierError::TheoremFalsified {
            theorem,
            detail: format!(
                "decomposition {} but exhaustive search says pi-regular = {}",
                if found.is_some() { "exists" } else { "missing" },
                direct
            ),
        });
    }
    Ok(match found {
        Some((e, u)) => Verdict::holds(theorem, json!({ "e": e, "u": u })),
        None => Verdict::fails(theorem, json!({})),
    })
}

/// Pi-regularity in the extension: constant coefficient pi-regular in the
/// base, all higher coefficients nilpotent.
pub fn classify_pi_regular(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::PiRegular;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, true) {
        return v;
    }
    let ring = ext.base();
    let nil = ring.nilpotents();
    if let Some((m, c)) = f.tail_coeffs().find(|(_, c)| !nil.contains(c)) {
        return Verdict::fails(
            theorem,
            json!({ "offending_exp": m.exponents(), "offending_coeff": c }),
        );
    }
    let a0 = f.constant_coeff();
    if ring.element_report(a0).pi_regular {
        Verdict::holds(theorem, json!({ "constant": a0 }))
    } else {
        Verdict::fails(theorem, json!({ "constant": a0, "reason": "constant not pi-regular" }))
    }
}

/// Von Neumann locality: `f` or `1 - f` has the vnr shape.
pub fn classify_vnl(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::Vnl;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, true) {
        return v;
    }
    if let Some((u, e)) = vnr_shape(f) {
        return Verdict::holds(theorem, json!({ "side": "f", "u": u, "e": e }));
    }
    let complement = ext.one().sub(f);
    if let Some((u, e)) = vnr_shape(&complement) {
        return Verdict::holds(theorem, json!({ "side": "one_minus_f", "u": u, "e": e }));
    }
    Verdict::fails(theorem, json!({}))
}

/// Cleanness: constant coefficient clean in the base ring, higher
/// coefficients nilpotent. The witness places the nilpotent tail inside
/// the unit summand: `f = (u + tail) + e`.
pub fn classify_clean(f: &SkewPoly) -> Verdict {
    let theorem = TheoremId::Clean;
    let ext = f.ext();
    if let Err(v) = gate(ext, theorem, true) {
        return v;
    }
    let ring = ext.base();
    let nil = ring.nilpotents();
    if let Some((m, c)) = f.tail_coeffs().find(|(_, c)| !nil.contains(c)) {
        return Verdict::fails(
            theorem,
            json!({ "offending_exp": m.exponents(), "offending_coeff": c }),
        );
    }
    let a0 = f.constant_coeff();
    for &e in ring.idempotents() {
        let u = ring.sub(a0, e);
        if ring.is_unit(u) {
            let unit_part = f.sub(&ext.constant(e));
            return Verdict::holds(
                theorem,
                json!({
                    "u": u,
                    "e": e,
                    "unit_part": unit_part.to_json_value(),
                }),
            );
        }
    }
    Verdict::fails(theorem, json!({ "constant": a0, "reason": "constant not clean" }))
}

/// Bounded-degree check that the Jacobson radical coincides with the
/// nilpotent elements, stated on coefficients.
///
/// Part one: every element with nilpotent coefficients and degree at most
/// `degree_bound` stays quasi-regular after right-multiplication by the
/// last generator (`1 + f x_n` is a unit). Part two: for every element of
/// the sweep with a non-nilpotent coefficient there is a constant `c` such
/// that `1 + f c` is not a unit, separating `f` from the radical. The
/// sweep is exhaustive while the candidate count stays within `cap`.
pub fn nj_check(ext: &Extension, degree_bound: u32, cap: usize) -> Result<Verdict, ClassifierError> {
    let theorem = TheoremId::RadicalNilpotents;
    match gate(ext, theorem, false) {
        Ok(_) => {}
        Err(v) => return Ok(v),
    }
    let ring = ext.base();
    let nil: Vec<usize> = ring.nilpotents().iter().copied().collect();
    let monos = crate::pbw::monomials_up_to(ext.n(), degree_bound);

    // Part one: nilpotent-coefficient sweep.
    let count = nil
        .len()
        .checked_pow(monos.len() as u32)
        .filter(|&c| c <= cap)
        .ok_or_else(|| ClassifierError::PreconditionUnmet {
            what: format!("nilpotent sweep exceeds the cap of {cap} candidates"),
        })?;
    let xn = ext.var(ext.n());
    let mut nilpotent_swept = 0usize;
    for k in 0..count {
        let mut idx = k;
        let mut terms = Vec::with_capacity(monos.len());
        for m in &monos {
            terms.push((m.clone(), nil[idx % nil.len()]));
            idx /= nil.len();
        }
        let f = terms
            .into_iter()
            .fold(ext.zero(), |acc, (m, c)| acc.add(&ext.monomial(m, c)));
        let candidate = ext.one().add(&f.mul(&xn)?);
        let verdict = classify_unit(&candidate);
        if !verdict.is_true() {
            return Ok(Verdict::fails(
                theorem,
                json!({
                    "part": "nilpotent-implies-quasi-regular",
                    "f": f.to_json_value(),
                }),
            ));
        }
        nilpotent_swept += 1;
    }

    // Part two: separation witnesses for non-nilpotent elements.
    let order = ring.order();
    let full_count = order
        .checked_pow(monos.len() as u32)
        .filter(|&c| c <= cap)
        .ok_or_else(|| ClassifierError::PreconditionUnmet {
            what: format!("separation sweep exceeds the cap of {cap} candidates"),
        })?;
    let nil_set = ring.nilpotents();
    let mut separated = 0usize;
    for k in 0..full_count {
        let mut idx = k;
        let mut terms = Vec::with_capacity(monos.len());
        for m in &monos {
            terms.push((m.clone(), idx % order));
            idx /= order;
        }
        if terms.iter().all(|(_, c)| nil_set.contains(c)) {
            continue;
        }
        let f = terms
            .into_iter()
            .fold(ext.zero(), |acc, (m, c)| acc.add(&ext.monomial(m, c)));
        let mut witness = None;
        for c in ring.elements() {
            let candidate = ext.one().add(&f.mul(&ext.constant(c))?);
            if !classify_unit(&candidate).is_true() {
                witness = Some(c);
                break;
            }
        }
        match witness {
            Some(_) => separated += 1,
            None => {
                return Ok(Verdict::fails(
                    theorem,
                    json!({
                        "part": "separation",
                        "f": f.to_json_value(),
                        "reason": "no constant c with 1 + f c outside the units",
                    }),
                ));
            }
        }
    }

    Ok(Verdict::holds(
        theorem,
        json!({
            "degree_bound": degree_bound,
            "nilpotent_swept": nilpotent_swept,
            "separated": separated,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pbw::parse_expr;

    const E12: usize = 2;

    #[test]
    fn profiles_of_fixtures() {
        let p = hypothesis_profile(&fixtures::ut2_z2_ore());
        assert!(p.weak_compatible && p.ni && !p.abelian && !p.reduced);
        let p = hypothesis_profile(&fixtures::s2_z4_negate());
        assert!(p.weak_compatible && p.ni && p.abelian);
        let p = hypothesis_profile(&fixtures::z6_poly());
        assert!(p.reduced && p.weak_compatible && p.ni && p.abelian);
    }

    #[test]
    fn nilpotent_classification() {
        let ext = fixtures::ut2_z2_ore();
        let f = ext.constant(E12).add(&ext.var(1).scalar_left(E12));
        assert!(classify_nilpotent(&f).is_true());
        assert!(classify_nilpotent(&ext.one()).is_false());
        assert!(classify_nilpotent(&ext.var(1)).is_false());
    }

    #[test]
    fn product_nilpotent_classification() {
        let ext = fixtures::ut2_z2_ore();
        let f = ext.constant(E12).add(&ext.var(1).scalar_left(E12));
        assert!(classify_product_nilpotent(&f, &f).is_true());
        assert!(classify_product_nilpotent(&ext.one(), &ext.one()).is_false());

        let z4 = fixtures::z4_poly();
        let two = z4.constant(2);
        let g = parse_expr(&z4, "2 + 2*x1").unwrap();
        assert!(classify_product_nilpotent(&two, &g).is_true());
    }

    #[test]
    fn unit_classification() {
        let z4 = fixtures::z4_poly();
        let f = parse_expr(&z4, "1 + 2*x1").unwrap();
        let v = classify_unit(&f);
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["unit_part"], 1);
        assert!(classify_unit(&z4.var(1)).is_false());

        let ut2 = fixtures::ut2_z2_ore();
        let g = ut2.one().add(&ut2.var(1).scalar_left(E12));
        assert!(classify_unit(&g).is_true());
    }

    #[test]
    fn constant_product_consequences() {
        let ut2 = fixtures::ut2_z2_ore();
        let f = ut2.one().add(&ut2.var(1).scalar_left(E12));
        let err = constant_product_consequence(&f, &ut2.one()).unwrap_err();
        assert!(matches!(err, ClassifierError::PreconditionUnmet { .. }));

        let z4 = fixtures::z4_poly();
        let f = parse_expr(&z4, "1 + 2*x1").unwrap();
        let v = constant_product_consequence(&f, &f).unwrap();
        assert!(v.is_true());
        let three = z4.constant(3);
        assert!(constant_product_consequence(&three, &three).unwrap().is_true());
    }

    #[test]
    fn idempotent_two_tier() {
        let s2 = fixtures::s2_z4_negate();
        assert!(classify_idempotent_exact(&s2.one()).unwrap().is_true());
        assert!(classify_idempotent_shape(&s2.one()).is_true());
        let x = s2.var(1);
        assert!(classify_idempotent_exact(&x).unwrap().is_false());
        let shape = classify_idempotent_shape(&x);
        assert!(shape.is_false());
        assert_eq!(shape.witness.as_ref().unwrap()["mode"], "exact");

        // Non-Abelian profile reports necessity only.
        let ut2 = fixtures::ut2_z2_ore();
        let e11_plus_nil = ut2.constant(4).add(&ut2.var(1).scalar_left(E12));
        let shape = classify_idempotent_shape(&e11_plus_nil);
        assert_eq!(shape.witness.as_ref().unwrap()["mode"], "necessary-only");
    }

    #[test]
    fn idempotent_centrality_modes() {
        let s2 = fixtures::s2_z4_negate();
        for &e in s2.base().idempotents().iter() {
            let v = idempotent_centrality(&s2, e).unwrap();
            assert!(v.is_true());
            assert_eq!(v.theorem, TheoremId::IdempotentCentral);
        }
        let err = idempotent_centrality(&s2, 8).unwrap_err();
        assert!(matches!(err, ClassifierError::PreconditionUnmet { .. }));

        // Non-Abelian: sigma shifts reported with nilpotent u.
        let ut2 = fixtures::ut2_z2_ore();
        let v = idempotent_centrality(&ut2, 4).unwrap(); // E11
        assert!(v.is_true());
        assert_eq!(v.theorem, TheoremId::IdempotentSigmaShift);
    }

    #[test]
    fn nilpotent_correction_cases() {
        let z4 = fixtures::z4_poly();
        assert!(nilpotent_correction(&z4, 1, 0).unwrap().is_true());
        let err = nilpotent_correction(&z4, 0, 2).unwrap_err();
        assert!(matches!(err, ClassifierError::PreconditionUnmet { .. }));

        // Exhaustive sweep over S2(Z/4): no precondition-satisfying pair
        // has s != 0.
        let s2 = fixtures::s2_z4_negate();
        let ring = s2.base().clone();
        for &e in ring.idempotents().iter() {
            for s in ring.elements() {
                if !ring.is_nilpotent(s)
                    || ring.mul(e, s) != ring.mul(s, e)
                    || !ring.is_idempotent(ring.add(e, s))
                {
                    continue;
                }
                assert!(nilpotent_correction(&s2, e, s).unwrap().is_true());
            }
        }
    }

    #[test]
    fn vnr_classification() {
        let z4 = fixtures::z4_poly();
        let v = classify_vnr(&z4.zero());
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["u"], 1);
        assert_eq!(v.witness.as_ref().unwrap()["e"], 0);

        let f = parse_expr(&z4, "1 + 2*x1").unwrap();
        assert!(classify_vnr(&f).is_true());
        assert!(classify_vnr(&z4.var(1)).is_false());

        // Gated on the non-Abelian fixture.
        let ut2 = fixtures::ut2_z2_ore();
        assert!(classify_vnr(&ut2.one()).gated());
    }

    #[test]
    fn pi_regular_decomposition_examples() {
        let z4 = fixtures::z4_poly();
        let v = pi_regular_decomposition(&z4, 2).unwrap();
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["e"], 0);
        let v = pi_regular_decomposition(&z4, 1).unwrap();
        assert_eq!(v.witness.as_ref().unwrap()["e"], 1);
        assert_eq!(v.witness.as_ref().unwrap()["u"], 1);

        let z6 = fixtures::z6_poly();
        let v = pi_regular_decomposition(&z6, 3).unwrap();
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["e"], 3);
        assert_eq!(v.witness.as_ref().unwrap()["u"], 1);
    }

    #[test]
    fn pi_regular_classification() {
        let z4 = fixtures::z4_poly();
        assert!(classify_pi_regular(&parse_expr(&z4, "2 + 2*x1").unwrap()).is_true());
        assert!(classify_pi_regular(&parse_expr(&z4, "2 + x1").unwrap()).is_false());
        assert!(classify_pi_regular(&z4.one()).is_true());
    }

    #[test]
    fn vnl_classification() {
        let z4 = fixtures::z4_poly();
        let v = classify_vnl(&parse_expr(&z4, "1 + 2*x1").unwrap());
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["side"], "f");
        let v = classify_vnl(&parse_expr(&z4, "2*x1").unwrap());
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["side"], "one_minus_f");
        assert!(classify_vnl(&z4.zero()).is_true());
    }

    #[test]
    fn clean_classification() {
        let z4 = fixtures::z4_poly();
        let v = classify_clean(&parse_expr(&z4, "1 + 2*x1").unwrap());
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["e"], 0);
        assert!(classify_clean(&z4.var(1)).is_false());
        let v = classify_clean(&z4.zero());
        assert!(v.is_true());
        assert_eq!(v.witness.as_ref().unwrap()["u"], 3);
        assert_eq!(v.witness.as_ref().unwrap()["e"], 1);
    }

    #[test]
    fn nj_bounded_suite() {
        let v = nj_check(&fixtures::ut2_z2_ore(), 2, 65_536).unwrap();
        assert!(v.is_true(), "{v:?}");
        let v = nj_check(&fixtures::z4_poly(), 2, 65_536).unwrap();
        assert!(v.is_true(), "{v:?}");
    }

    #[test]
    fn gating_is_monotone() {
        // No classifier answers true/false when its gate fails.
        let ut2 = fixtures::ut2_z2_ore(); // not Abelian
        let x = ut2.var(1);
        for v in [
            classify_vnr(&x),
            classify_pi_regular(&x),
            classify_vnl(&x),
            classify_clean(&x),
        ] {
            assert!(v.gated());
        }
    }
}
