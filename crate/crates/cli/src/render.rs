//! Text and JSON renderings of the analysis reports.

use serde_json::json;

use skewpbw_core::classifiers::{hypothesis_profile, Verdict, VerdictValue};
use skewpbw_core::finite_rings::FiniteRing;
use skewpbw_core::oracles::CrosscheckReport;
use skewpbw_core::pbw::Extension;
use skewpbw_core::spectra::{
    self, extension_verdicts, mod_radical_gelfand_criterion, GelfandVerdict,
};

use crate::Failure;

fn name_set(ring: &FiniteRing, set: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<String> = set
        .into_iter()
        .map(|a| ring.name(a).to_string())
        .collect();
    format!("{{{}}}", names.join(", "))
}

pub fn ring_report(ring: &FiniteRing) -> Result<(String, serde_json::Value), Failure> {
    let nil = ring.nilpotents().clone();
    let units = ring.units().clone();
    let idem = ring.idempotents().clone();
    let jac = ring.jacobson_radical();
    let prime = ring.prime_radical()?;
    let classes = ring.class_report();

    let text = format!(
        "ring: {} (order {})\n\
         nilpotents N: {}\n\
         units U: {}\n\
         idempotents: {}\n\
         jacobson radical J: {}\n\
         prime radical N*: {}\n\
         classes: {}",
        ring.describe(),
        ring.order(),
        name_set(ring, nil.iter().copied()),
        name_set(ring, units.iter().copied()),
        name_set(ring, idem.iter().copied()),
        name_set(ring, jac.elements().iter().copied()),
        name_set(ring, prime.elements().iter().copied()),
        serde_json::to_string(&classes).expect("classes serialize"),
    );
    let jsonv = json!({
        "ring": ring.describe(),
        "order": ring.order(),
        "nilpotents": nil.iter().copied().collect::<Vec<_>>(),
        "units": units.iter().copied().collect::<Vec<_>>(),
        "idempotents": idem.iter().copied().collect::<Vec<_>>(),
        "jacobson_radical": jac.elements().iter().copied().collect::<Vec<_>>(),
        "prime_radical": prime.elements().iter().copied().collect::<Vec<_>>(),
        "classes": classes,
    });
    Ok((text, jsonv))
}

pub fn ext_report(ext: &Extension) -> (String, serde_json::Value) {
    let profile = hypothesis_profile(ext);
    let compat = ext.compat();
    let diag = ext.diagnostics();
    let warning_lines: Vec<String> = diag.warnings.iter().map(|w| w.to_string()).collect();
    let text = format!(
        "extension over {} in {} variable(s): valid\n\
         associativity: {} sampled triples, no counterexample\n\
         warnings: {}\n\
         compatibility: sigma={} delta={} weak_sigma={} weak_delta={} rigid={}\n\
         per-sigma compatible: {:?} (weak: {:?})\n\
         hypothesis profile: weak_compatible={} ni={} abelian={} reduced={} d_ok={}",
        ext.base().describe(),
        ext.n(),
        diag.assoc_triples_checked,
        if warning_lines.is_empty() {
            "none".to_string()
        } else {
            warning_lines.join("; ")
        },
        compat.sigma_compatible,
        compat.delta_compatible,
        compat.weak_sigma_compatible,
        compat.weak_delta_compatible,
        compat.sigma_rigid,
        compat.per_sigma_compatible,
        compat.per_sigma_weak_compatible,
        profile.weak_compatible,
        profile.ni,
        profile.abelian,
        profile.reduced,
        profile.d_central_invertible,
    );
    let jsonv = json!({
        "ring": ext.base().describe(),
        "n": ext.n(),
        "valid": true,
        "assoc_triples_checked": diag.assoc_triples_checked,
        "warnings": warning_lines,
        "compatibility": compat,
        "profile": profile,
    });
    (text, jsonv)
}

pub fn crosscheck_text(report: &CrosscheckReport) -> String {
    let mut out = format!(
        "theorem {}: swept {}, agreements {}, counterexamples {}, unresolved {}{}",
        report.theorem,
        report.swept,
        report.agreements,
        report.counterexamples.len(),
        report.unresolved.len(),
        if report.exhaustive {
            " (exhaustive)"
        } else {
            " (sampled)"
        }
    );
    for c in &report.counterexamples {
        out.push_str(&format!(
            "\ncounterexample: {}{} classifier={:?} oracle={}",
            c.element,
            c.second
                .as_ref()
                .map(|s| format!(" / {s}"))
                .unwrap_or_default(),
            c.classifier.value,
            c.oracle
        ));
    }
    for u in &report.unresolved {
        out.push_str(&format!("\nunresolved (bound too small): {u}"));
    }
    out
}

pub fn nj_text(verdict: &Verdict) -> String {
    match verdict.value {
        VerdictValue::True => format!(
            "radical-equals-nilpotents (bounded suite): pass {}",
            verdict
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default()
        ),
        VerdictValue::False => format!(
            "radical-equals-nilpotents (bounded suite): FAIL {}",
            verdict
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default()
        ),
        VerdictValue::HypothesesUnsatisfied => {
            "radical-equals-nilpotents: hypotheses unsatisfied".to_string()
        }
    }
}

pub fn spectra_report(ext: &Extension) -> Result<(String, serde_json::Value, u8), Failure> {
    let ring = ext.base();
    let profile = hypothesis_profile(ext);
    let base = spectra::spectrum_report(ring)?;
    let criterion = mod_radical_gelfand_criterion(ext)?;
    let mut lines = Vec::new();
    lines.push(format!(
        "base ring {}: {} maximal right ideal(s), {} maximal two-sided ideal(s)",
        ring.describe(),
        base.maximal_right_ideals.len(),
        base.maximal_two_sided_ideals.len()
    ));
    for (k, m) in base.maximal_right_ideals.iter().enumerate() {
        lines.push(format!(
            "  maximal right ideal {k}: {}",
            name_set(ring, m.elements().iter().copied())
        ));
    }
    lines.push(format!(
        "base gelfand: {} / strongly harmonic: {}",
        base.gelfand, base.strongly_harmonic
    ));
    for w in &base.right_witnesses {
        lines.push(format!(
            "  separation ({}, {}): r = {}, s = {} with r R s = 0",
            w.first,
            w.second,
            ring.name(w.r),
            ring.name(w.s)
        ));
    }
    lines.push(format!(
        "base-level mod-radical separation criterion: {:?} [hypotheses: weak_compatible={}, ni={}]",
        criterion.value, profile.weak_compatible, profile.ni
    ));

    match extension_verdicts(ext) {
        Ok(verdicts) => {
            lines.push(format!(
                "extension not local: {} [hypotheses: weak_compatible={}, ni={}]",
                verdicts.not_local, profile.weak_compatible, profile.ni
            ));
            lines.push(format!("  reason: {}", verdicts.not_local_reason));
            lines.push(format!(
                "base nilpotents prime: {}{}",
                verdicts.nilpotents_prime,
                verdicts
                    .prime_witness
                    .map(|(a, b)| format!(
                        " (witness: {} R {} lands in the nilpotents)",
                        ring.name(a),
                        ring.name(b)
                    ))
                    .unwrap_or_default()
            ));
            let gelfand_line = |v: GelfandVerdict| match v {
                GelfandVerdict::Refuted => "refuted (nilpotents of the base are prime)",
                GelfandVerdict::Undetermined => "undetermined (nilpotents of the base not prime)",
            };
            lines.push(format!(
                "extension mod jacobson radical gelfand: {}",
                gelfand_line(verdicts.mod_jacobson_gelfand)
            ));
            lines.push(format!(
                "extension mod prime radical gelfand: {}",
                gelfand_line(verdicts.mod_prime_radical_gelfand)
            ));
            if let Some(h) = &verdicts.harmonic_iff_unique_maximal {
                lines.push(format!("harmonic equivalence: {h}"));
            }
            let jsonv = json!({
                "base": base.to_json(ring),
                "mod_radical_criterion": criterion,
                "extension": verdicts.to_json(),
                "profile": profile,
            });
            Ok((lines.join("\n"), jsonv, crate::EXIT_TRUE))
        }
        Err(e @ spectra::SpectraError::HypothesesUnsatisfied { .. }) => {
            lines.push(format!("extension verdicts unavailable: {e}"));
            let jsonv = json!({
                "base": base.to_json(ring),
                "mod_radical_criterion": criterion,
                "extension": null,
                "profile": profile,
            });
            Ok((lines.join("\n"), jsonv, crate::EXIT_HYPOTHESES))
        }
        Err(e) => Err(e.into()),
    }
}
