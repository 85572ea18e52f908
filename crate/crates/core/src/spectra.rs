//! Maximal-ideal enumeration and Gelfand / strongly-harmonic analysis for
//! the finite base ring, plus the separation verdicts these force on the
//! extension.
//!
//! Separation here is the element form: two maximal right ideals (resp.
//! maximal ideals) `M1`, `M2` are separated by `r` outside `M1` and `s`
//! outside `M2` with `r R s = 0`. For the extension nothing is decided
//! directly; the module reports exactly what the base-level facts force:
//! the extension is never local, and when the nilpotents of the base form
//! a prime ideal, both `A/J(A)` and `A/N_*(A)` fail to be Gelfand, with
//! strong harmonicity equivalent to a unique maximal ideal.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::classifiers::{hypothesis_profile, TheoremId, Verdict, VerdictValue};
use crate::finite_rings::{
    enumerate_ideals, FiniteRing, IdealDescriptor, RingError, Sidedness, IDEAL_ENUM_BOUND,
};
use crate::pbw::Extension;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("hypotheses unsatisfied: missing {missing}")]
    HypothesesUnsatisfied { missing: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A separating element pair for one ordered pair of maximal ideals.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationWitness {
    /// Indices into the corresponding maximal-ideal list.
    pub first: usize,
    pub second: usize,
    pub r: usize,
    pub s: usize,
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub maximal_right_ideals: Vec<IdealDescriptor>,
    pub maximal_two_sided_ideals: Vec<IdealDescriptor>,
    pub gelfand: bool,
    pub strongly_harmonic: bool,
    pub right_witnesses: Vec<SeparationWitness>,
    pub two_sided_witnesses: Vec<SeparationWitness>,
    /// First ordered pair with no separating elements, if any.
    pub gelfand_failure: Option<(usize, usize)>,
    pub harmonic_failure: Option<(usize, usize)>,
}

fn maximal_of(
    ring: &FiniteRing,
    sidedness: Sidedness,
) -> Result<Vec<IdealDescriptor>, SpectraError> {
    let all = enumerate_ideals(ring, sidedness, IDEAL_ENUM_BOUND)?;
    let proper: Vec<&BTreeSet<usize>> =
        all.iter().filter(|i| i.len() < ring.order()).collect();
    let mut maximal = Vec::new();
    for candidate in &proper {
        let is_max = proper.iter().all(|other| {
            other == candidate
                || !candidate.iter().all(|a| other.contains(a))
        });
        if is_max {
            maximal.push(IdealDescriptor::new(
                ring.clone(),
                sidedness,
                (*candidate).clone(),
            )?);
        }
    }
    Ok(maximal)
}

/// All maximal right ideals, by closure enumeration.
pub fn maximal_right_ideals(ring: &FiniteRing) -> Result<Vec<IdealDescriptor>, SpectraError> {
    maximal_of(ring, Sidedness::Right)
}

pub fn maximal_two_sided_ideals(
    ring: &FiniteRing,
) -> Result<Vec<IdealDescriptor>, SpectraError> {
    maximal_of(ring, Sidedness::TwoSided)
}

/// First `(r, s)` in canonical order with `r` outside `m1`, `s` outside
/// `m2` and `r t s = 0` for every `t`.
fn separation_pair(
    ring: &FiniteRing,
    m1: &IdealDescriptor,
    m2: &IdealDescriptor,
) -> Option<(usize, usize)> {
    let zero = ring.zero();
    for r in ring.elements() {
        if m1.contains(r) {
            continue;
        }
        for s in ring.elements() {
            if m2.contains(s) {
                continue;
            }
            if ring
                .elements()
                .all(|t| ring.mul(ring.mul(r, t), s) == zero)
            {
                return Some((r, s));
            }
        }
    }
    None
}

/// Decides the Gelfand and strongly-harmonic separation properties with
/// exhaustive witness search over every ordered pair of distinct maximal
/// ideals. Rings with a unique maximal (right) ideal pass vacuously.
pub fn spectrum_report(ring: &FiniteRing) -> Result<SpectrumReport, SpectraError> {
    let maximal_right = maximal_right_ideals(ring)?;
    let maximal_two_sided = maximal_two_sided_ideals(ring)?;
    let mut report = SpectrumReport {
        maximal_right_ideals: maximal_right,
        maximal_two_sided_ideals: maximal_two_sided,
        gelfand: true,
        strongly_harmonic: true,
        right_witnesses: Vec::new(),
        two_sided_witnesses: Vec::new(),
        gelfand_failure: None,
        harmonic_failure: None,
    };
    for i in 0..report.maximal_right_ideals.len() {
        for j in 0..report.maximal_right_ideals.len() {
            if i == j {
                continue;
            }
            match separation_pair(
                ring,
                &report.maximal_right_ideals[i],
                &report.maximal_right_ideals[j],
            ) {
                Some((r, s)) => report.right_witnesses.push(SeparationWitness {
                    first: i,
                    second: j,
                    r,
                    s,
                }),
                None => {
                    report.gelfand = false;
                    if report.gelfand_failure.is_none() {
                        report.gelfand_failure = Some((i, j));
                    }
                }
            }
        }
    }
    for i in 0..report.maximal_two_sided_ideals.len() {
        for j in 0..report.maximal_two_sided_ideals.len() {
            if i == j {
                continue;
            }
            match separation_pair(
                ring,
                &report.maximal_two_sided_ideals[i],
                &report.maximal_two_sided_ideals[j],
            ) {
                Some((r, s)) => report.two_sided_witnesses.push(SeparationWitness {
                    first: i,
                    second: j,
                    r,
                    s,
                }),
                None => {
                    report.strongly_harmonic = false;
                    if report.harmonic_failure.is_none() {
                        report.harmonic_failure = Some((i, j));
                    }
                }
            }
        }
    }
    Ok(report)
}

impl SpectrumReport {
    pub fn to_json(&self, ring: &FiniteRing) -> serde_json::Value {
        let ideals = |list: &[IdealDescriptor]| -> Vec<serde_json::Value> {
            list.iter()
                .map(|i| {
                    json!({
                        "elements": i.elements().iter().copied().collect::<Vec<_>>(),
                        "names": i.elements().iter().map(|&a| ring.name(a)).collect::<Vec<_>>(),
                    })
                })
                .collect()
        };
        json!({
            "maximal_right_ideals": ideals(&self.maximal_right_ideals),
            "maximal_two_sided_ideals": ideals(&self.maximal_two_sided_ideals),
            "gelfand": self.gelfand,
            "strongly_harmonic": self.strongly_harmonic,
            "right_witnesses": self.right_witnesses,
            "two_sided_witnesses": self.two_sided_witnesses,
        })
    }
}

/// Base-level criterion behind the mod-radical separation statement for
/// the extension: every ordered pair of distinct maximal right ideals of
/// the base admits `r`, `s` outside them with `r R s` inside the
/// nilpotents. Reported for the base ring and labeled as such; it is the
/// hypothesis the radical-level statement consumes, not a decision about
/// ideals of the extension.
pub fn mod_radical_gelfand_criterion(ext: &Extension) -> Result<Verdict, SpectraError> {
    let theorem = TheoremId::ModRadicalSeparation;
    let profile = hypothesis_profile(ext);
    if !(profile.weak_compatible && profile.ni) {
        return Ok(Verdict {
            value: VerdictValue::HypothesesUnsatisfied,
            theorem,
            witness: Some(json!({ "profile": profile })),
        });
    }
    let ring = ext.base();
    let nil = ring.nilpotents();
    let maximal = maximal_right_ideals(ring)?;
    let mut witnesses = Vec::new();
    for i in 0..maximal.len() {
        for j in 0..maximal.len() {
            if i == j {
                continue;
            }
            let mut found = None;
            'outer: for r in ring.elements() {
                if maximal[i].contains(r) {
                    continue;
                }
                for s in ring.elements() {
                    if maximal[j].contains(s) {
                        continue;
                    }
                    if ring
                        .elements()
                        .all(|t| nil.contains(&ring.mul(ring.mul(r, t), s)))
                    {
                        found = Some((r, s));
                        break 'outer;
                    }
                }
            }
            match found {
                Some((r, s)) => witnesses.push(json!({
                    "first": i, "second": j, "r": r, "s": s,
                })),
                None => {
                    return Ok(Verdict {
                        value: VerdictValue::False,
                        theorem,
                        witness: Some(json!({ "unseparated_pair": [i, j] })),
                    })
                }
            }
        }
    }
    Ok(Verdict {
        value: VerdictValue::True,
        theorem,
        witness: Some(json!({
            "maximal_right_ideals": maximal.len(),
            "witnesses": witnesses,
            "scope": "base-level criterion",
        })),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GelfandVerdict {
    Refuted,
    Undetermined,
}

/// What the base-ring facts force on the extension.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionVerdicts {
    /// Always true under the gate: the last generator is neither a unit
    /// nor nilpotent, so the non-units cannot form an ideal.
    pub not_local: bool,
    pub not_local_reason: String,
    /// Whether the nilpotents of the base form a prime ideal (sandwich
    /// form, decided exhaustively).
    pub nilpotents_prime: bool,
    /// When not prime: a pair outside the nilpotents whose sandwich lands
    /// inside them.
    pub prime_witness: Option<(usize, usize)>,
    pub mod_jacobson_gelfand: GelfandVerdict,
    pub mod_prime_radical_gelfand: GelfandVerdict,
    /// Instance of the equivalence that holds when the nilpotents are
    /// prime.
    pub harmonic_iff_unique_maximal: Option<String>,
}

impl ExtensionVerdicts {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdicts serialize")
    }
}

/// Derives the extension-level verdicts from the validated base data.
pub fn extension_verdicts(ext: &Extension) -> Result<ExtensionVerdicts, SpectraError> {
    let profile = hypothesis_profile(ext);
    if !(profile.weak_compatible && profile.ni) {
        let mut missing = Vec::new();
        if !profile.weak_compatible {
            missing.push("weak_compatible");
        }
        if !profile.ni {
            missing.push("ni");
        }
        return Err(SpectraError::HypothesesUnsatisfied {
            missing: missing.join(", "),
        });
    }
    let ring = ext.base();
    let nil = ring.nilpotents();
    let mut prime_witness = None;
    let proper = nil.len() < ring.order();
    if proper {
        'outer: for a in ring.elements() {
            if nil.contains(&a) {
                continue;
            }
            for b in ring.elements() {
                if nil.contains(&b) {
                    continue;
                }
                if ring
                    .elements()
                    .all(|t| nil.contains(&ring.mul(ring.mul(a, t), b)))
                {
                    prime_witness = Some((a, b));
                    break 'outer;
                }
            }
        }
    }
    let nilpotents_prime = proper && prime_witness.is_none();
    let (mod_jacobson, mod_prime_radical, harmonic) = if nilpotents_prime {
        (
            GelfandVerdict::Refuted,
            GelfandVerdict::Refuted,
            Some(
                "extension modulo its radical is strongly harmonic exactly when \
                 the extension has a unique maximal ideal"
                    .to_string(),
            ),
        )
    } else {
        (GelfandVerdict::Undetermined, GelfandVerdict::Undetermined, None)
    };
    Ok(ExtensionVerdicts {
        not_local: true,
        not_local_reason: format!(
            "x{} is not a unit (zero constant coefficient) and not nilpotent \
             (leading coefficient 1), so the non-units of the extension are \
             not closed under the radical",
            ext.n()
        ),
        nilpotents_prime,
        prime_witness,
        mod_jacobson_gelfand: mod_jacobson,
        mod_prime_radical_gelfand: mod_prime_radical,
        harmonic_iff_unique_maximal: harmonic,
    })
}
