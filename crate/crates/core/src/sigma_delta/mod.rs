//! Systems of ring endomorphisms and skew derivations on a finite ring,
//! with exhaustive compatibility, rigidity and invariance checks.
//!
//! For a system (sigma_1..sigma_n, delta_1..delta_n) the checks quantify
//! over the *ordered* composites sigma_1^{a1} o ... o sigma_n^{an} and
//! delta_1^{b1} o ... o delta_n^{bn}. On a finite ring each power sequence
//! is eventually periodic, so both families of composites are finite and
//! are enumerated exactly at validation time.

mod compat;

pub use compat::{CompatWitness, CompatibilityReport, ConsequenceItem, ConsequencesReport};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_rings::{FiniteRing, IdealDescriptor, RingError, RingFamily, Sidedness};

/// Cap on the number of distinct composite maps tracked per closure.
pub const CLOSURE_BOUND: usize = 4096;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("map law `{law}` fails at witness {witness:?}")]
    LawViolation { law: String, witness: Vec<usize> },
    #[error("closure bound exceeded: more than {bound} composite maps")]
    ClosureBoundExceeded { bound: usize },
    #[error("malformed map description: {reason}")]
    InvalidMapSpec { reason: String },
    #[error("ideal is not invariant under the system: {reason}")]
    NotInvariant { reason: String },
    #[error("operation requires a two-sided ideal")]
    RequiresTwoSidedIdeal,
    #[error("operation requires weak compatibility of the system")]
    WeakCompatibilityRequired,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Serializable description of a single map on a ring.
///
/// Named forms: `{"name":"identity"}` (sigma), `{"name":"zero"}` (delta),
/// `{"name":"ut2_diag"}`, `{"name":"ut2_strict_upper_delta"}`,
/// `{"name":"s2_negate_b"}`, `{"name":"s2_zero_b"}`; or an explicit
/// `{"table":[i0,i1,...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MapSpec {
    Named { name: String },
    Table { table: Vec<usize> },
}

impl MapSpec {
    pub fn named(name: &str) -> MapSpec {
        MapSpec::Named { name: name.into() }
    }

    /// Resolves the description to a raw function table on `ring`.
    pub fn resolve(&self, ring: &FiniteRing) -> Result<Vec<usize>, SystemError> {
        match self {
            MapSpec::Table { table } => {
                if table.len() != ring.order() || table.iter().any(|&v| v >= ring.order()) {
                    return Err(SystemError::InvalidMapSpec {
                        reason: "table length or entry out of range".into(),
                    });
                }
                Ok(table.clone())
            }
            MapSpec::Named { name } => match name.as_str() {
                "identity" => Ok(ring.elements().collect()),
                "zero" => Ok(vec![ring.zero(); ring.order()]),
                "ut2_diag" | "ut2_strict_upper_delta" => {
                    let RingFamily::Ut2 { base } = ring.family() else {
                        return Err(SystemError::InvalidMapSpec {
                            reason: format!("map `{name}` requires a ut2 ring"),
                        });
                    };
                    let k = base.order();
                    let table = (0..ring.order())
                        .map(|x| {
                            let (a, b, c) = (x / (k * k), (x / k) % k, x % k);
                            match name.as_str() {
                                // (a b; 0 c) -> (a 0; 0 c)
                                "ut2_diag" => (a * k + base.zero()) * k + c,
                                // (a b; 0 c) -> (0 b; 0 0)
                                _ => (base.zero() * k + b) * k + base.zero(),
                            }
                        })
                        .collect();
                    Ok(table)
                }
                "s2_negate_b" | "s2_zero_b" => {
                    let RingFamily::S2 { base } = ring.family() else {
                        return Err(SystemError::InvalidMapSpec {
                            reason: format!("map `{name}` requires an s2 ring"),
                        });
                    };
                    let k = base.order();
                    let table = (0..ring.order())
                        .map(|x| {
                            let (a, b) = (x / k, x % k);
                            match name.as_str() {
                                // (a b; 0 a) -> (a -b; 0 a)
                                "s2_negate_b" => a * k + base.neg(b),
                                // (a b; 0 a) -> (a 0; 0 a)
                                _ => a * k + base.zero(),
                            }
                        })
                        .collect();
                    Ok(table)
                }
                other => Err(SystemError::InvalidMapSpec {
                    reason: format!("unknown map name `{other}`"),
                }),
            },
        }
    }
}

/// A validated ring endomorphism: fixes 0 and 1, additive and
/// multiplicative on all pairs. Injectivity is recorded, not required.
#[derive(Debug, Clone)]
pub struct EndoMap {
    ring: FiniteRing,
    table: Vec<usize>,
    injective: bool,
}

impl EndoMap {
    pub fn new(ring: FiniteRing, table: Vec<usize>) -> Result<EndoMap, SystemError> {
        let order = ring.order();
        if table.len() != order || table.iter().any(|&v| v >= order) {
            return Err(SystemError::InvalidMapSpec {
                reason: "endomorphism table length or entry out of range".into(),
            });
        }
        if table[ring.zero()] != ring.zero() {
            return Err(SystemError::LawViolation {
                law: "sigma(0) = 0".into(),
                witness: vec![ring.zero()],
            });
        }
        if table[ring.one()] != ring.one() {
            return Err(SystemError::LawViolation {
                law: "sigma(1) = 1".into(),
                witness: vec![ring.one()],
            });
        }
        for a in 0..order {
            for b in 0..order {
                if table[ring.add(a, b)] != ring.add(table[a], table[b]) {
                    return Err(SystemError::LawViolation {
                        law: "sigma(a+b) = sigma(a)+sigma(b)".into(),
                        witness: vec![a, b],
                    });
                }
                if table[ring.mul(a, b)] != ring.mul(table[a], table[b]) {
                    return Err(SystemError::LawViolation {
                        law: "sigma(ab) = sigma(a)sigma(b)".into(),
                        witness: vec![a, b],
                    });
                }
            }
        }
        let mut seen = vec![false; order];
        let mut injective = true;
        for &v in &table {
            if seen[v] {
                injective = false;
                break;
            }
            seen[v] = true;
        }
        Ok(EndoMap {
            ring,
            table,
            injective,
        })
    }

    pub fn identity(ring: &FiniteRing) -> EndoMap {
        EndoMap {
            ring: ring.clone(),
            table: ring.elements().collect(),
            injective: true,
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }
}

/// A validated sigma-derivation: additive, with
/// `delta(ab) = sigma(a) delta(b) + delta(a) b` on all pairs.
#[derive(Debug, Clone)]
pub struct SigmaDerivation {
    ring: FiniteRing,
    table: Vec<usize>,
}

impl SigmaDerivation {
    pub fn new(
        ring: FiniteRing,
        sigma: &EndoMap,
        table: Vec<usize>,
    ) -> Result<SigmaDerivation, SystemError> {
        let order = ring.order();
        if table.len() != order || table.iter().any(|&v| v >= order) {
            return Err(SystemError::InvalidMapSpec {
                reason: "derivation table length or entry out of range".into(),
            });
        }
        for a in 0..order {
            for b in 0..order {
                if table[ring.add(a, b)] != ring.add(table[a], table[b]) {
                    return Err(SystemError::LawViolation {
                        law: "delta(a+b) = delta(a)+delta(b)".into(),
                        witness: vec![a, b],
                    });
                }
                let lhs = table[ring.mul(a, b)];
                let rhs = ring.add(
                    ring.mul(sigma.apply(a), table[b]),
                    ring.mul(table[a], b),
                );
                if lhs != rhs {
                    return Err(SystemError::LawViolation {
                        law: "delta(ab) = sigma(a)delta(b) + delta(a)b".into(),
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(SigmaDerivation { ring, table })
    }

    pub fn zero(ring: &FiniteRing) -> SigmaDerivation {
        SigmaDerivation {
            table: vec![ring.zero(); ring.order()],
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SystemWarning {
    /// The stated theory assumes injective endomorphisms; both matrix
    /// fixture systems violate this, so it is surfaced rather than
    /// rejected.
    NonInjectiveSigma { var: usize },
}

impl std::fmt::Display for SystemWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemWarning::NonInjectiveSigma { var } => {
                write!(f, "sigma_{var} is not injective")
            }
        }
    }
}

/// Distinct powers of a self-map of a finite set: `tables[k]` is the k-th
/// power for `k < tables.len()`, and the sequence cycles back to
/// `cycle_start` afterwards.
#[derive(Debug, Clone)]
struct PowerSeq {
    tables: Vec<Vec<usize>>,
    cycle_start: usize,
}

impl PowerSeq {
    fn build(table: &[usize], order: usize) -> PowerSeq {
        let identity: Vec<usize> = (0..order).collect();
        let mut tables = vec![identity.clone()];
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        seen.insert(identity, 0);
        let mut cur = tables[0].clone();
        loop {
            let next: Vec<usize> = cur.iter().map(|&x| table[x]).collect();
            if let Some(&k) = seen.get(&next) {
                return PowerSeq {
                    tables,
                    cycle_start: k,
                };
            }
            seen.insert(next.clone(), tables.len());
            tables.push(next.clone());
            cur = next;
        }
    }

    fn resolve(&self, k: usize) -> &Vec<usize> {
        if k < self.tables.len() {
            &self.tables[k]
        } else {
            let len = self.tables.len() - self.cycle_start;
            &self.tables[self.cycle_start + (k - self.cycle_start) % len]
        }
    }

    fn distinct(&self) -> usize {
        self.tables.len()
    }
}

/// Composes `f o g` as tables: `(f o g)(x) = f(g(x))`.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// A composite map together with the least exponent vector producing it.
#[derive(Debug, Clone)]
pub struct CompositeMap {
    pub exponents: Vec<usize>,
    pub table: Vec<usize>,
}

/// A validated system of endomorphisms and paired derivations, with both
/// composite-map closures precomputed.
#[derive(Debug, Clone)]
pub struct EndoSystem {
    ring: FiniteRing,
    n: usize,
    sigmas: Vec<EndoMap>,
    deltas: Vec<SigmaDerivation>,
    sigma_powers: Vec<PowerSeq>,
    delta_powers: Vec<PowerSeq>,
    sigma_monoid: Vec<CompositeMap>,
    delta_words: Vec<CompositeMap>,
    warnings: Vec<SystemWarning>,
}

/// Enumerates the distinct ordered composites `m_1^{a1} o ... o m_n^{an}`
/// from per-variable power sequences. Exponent tuples are visited in
/// lexicographic order, so the recorded exponent vector for each distinct
/// table is the least one.
fn ordered_composites(
    powers: &[PowerSeq],
    order: usize,
    bound: usize,
) -> Result<Vec<CompositeMap>, SystemError> {
    let ranges: Vec<usize> = powers.iter().map(|p| p.distinct()).collect();
    let total: usize = ranges.iter().try_fold(1usize, |acc, &r| {
        acc.checked_mul(r).filter(|&v| v <= bound)
    })
    .ok_or(SystemError::ClosureBoundExceeded { bound })?;
    let n = powers.len();
    let mut out: Vec<CompositeMap> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut exps = vec![0usize; n];
    for _ in 0..total {
        let mut table: Vec<usize> = (0..order).collect();
        for i in (0..n).rev() {
            if exps[i] > 0 {
                table = compose(powers[i].resolve(exps[i]), &table);
            }
        }
        if !seen.contains_key(&table) {
            seen.insert(table.clone(), out.len());
            out.push(CompositeMap {
                exponents: exps.clone(),
                table,
            });
        }
        // lexicographic increment, last coordinate fastest
        for i in (0..n).rev() {
            exps[i] += 1;
            if exps[i] < ranges[i] {
                break;
            }
            exps[i] = 0;
        }
    }
    Ok(out)
}

impl EndoSystem {
    /// Validates the maps pairwise and computes both closures.
    pub fn validate(
        ring: FiniteRing,
        sigmas: Vec<EndoMap>,
        deltas: Vec<SigmaDerivation>,
    ) -> Result<EndoSystem, SystemError> {
        if sigmas.is_empty() || sigmas.len() != deltas.len() {
            return Err(SystemError::InvalidMapSpec {
                reason: "need n >= 1 sigmas with matching deltas".into(),
            });
        }
        let n = sigmas.len();
        for (i, s) in sigmas.iter().enumerate() {
            if !s.ring().same_ring(&ring) {
                return Err(SystemError::InvalidMapSpec {
                    reason: format!("sigma_{} is defined on a different ring", i + 1),
                });
            }
            // Re-check the derivation law against its paired sigma; the
            // derivation may have been constructed against another map.
            SigmaDerivation::new(ring.clone(), s, deltas[i].table().to_vec())?;
        }
        let order = ring.order();
        let sigma_powers: Vec<PowerSeq> = sigmas
            .iter()
            .map(|s| PowerSeq::build(s.table(), order))
            .collect();
        let delta_powers: Vec<PowerSeq> = deltas
            .iter()
            .map(|d| PowerSeq::build(d.table(), order))
            .collect();
        let sigma_monoid = ordered_composites(&sigma_powers, order, CLOSURE_BOUND)?;
        let delta_words = ordered_composites(&delta_powers, order, CLOSURE_BOUND)?;
        let warnings = sigmas
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_injective())
            .map(|(i, _)| SystemWarning::NonInjectiveSigma { var: i + 1 })
            .collect();
        Ok(EndoSystem {
            ring,
            n,
            sigmas,
            deltas,
            sigma_powers,
            delta_powers,
            sigma_monoid,
            delta_words,
            warnings,
        })
    }

    /// Builds a system skipping the map-law checks, so fault-injection
    /// tests can observe the downstream sweeps catching a corrupted table.
    #[cfg(test)]
    pub(crate) fn validate_unchecked_for_tests(
        ring: FiniteRing,
        sigmas: Vec<EndoMap>,
        deltas: Vec<SigmaDerivation>,
    ) -> EndoSystem {
        let order = ring.order();
        let sigma_powers: Vec<PowerSeq> = sigmas
            .iter()
            .map(|s| PowerSeq::build(s.table(), order))
            .collect();
        let delta_powers: Vec<PowerSeq> = deltas
            .iter()
            .map(|d| PowerSeq::build(d.table(), order))
            .collect();
        let sigma_monoid = ordered_composites(&sigma_powers, order, CLOSURE_BOUND).unwrap();
        let delta_words = ordered_composites(&delta_powers, order, CLOSURE_BOUND).unwrap();
        let n = sigmas.len();
        EndoSystem {
            ring,
            n,
            sigmas,
            deltas,
            sigma_powers,
            delta_powers,
            sigma_monoid,
            delta_words,
            warnings: Vec::new(),
        }
    }

    /// Builds a system from map descriptions.
    pub fn from_specs(
        ring: &FiniteRing,
        sigma_specs: &[MapSpec],
        delta_specs: &[MapSpec],
    ) -> Result<EndoSystem, SystemError> {
        let sigmas: Vec<EndoMap> = sigma_specs
            .iter()
            .map(|m| EndoMap::new(ring.clone(), m.resolve(ring)?))
            .collect::<Result<_, _>>()?;
        let deltas: Vec<SigmaDerivation> = delta_specs
            .iter()
            .zip(&sigmas)
            .map(|(m, s)| SigmaDerivation::new(ring.clone(), s, m.resolve(ring)?))
            .collect::<Result<_, _>>()?;
        EndoSystem::validate(ring.clone(), sigmas, deltas)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, i: usize) -> &EndoMap {
        &self.sigmas[i]
    }

    pub fn delta(&self, i: usize) -> &SigmaDerivation {
        &self.deltas[i]
    }

    pub fn warnings(&self) -> &[SystemWarning] {
        &self.warnings
    }

    pub fn sigma_monoid(&self) -> &[CompositeMap] {
        &self.sigma_monoid
    }

    pub fn delta_words(&self) -> &[CompositeMap] {
        &self.delta_words
    }

    /// The table of `sigma_1^{a1} o ... o sigma_n^{an}` for an arbitrary
    /// exponent vector (reduced through the per-variable cycles).
    pub fn sigma_power(&self, alpha: &[usize]) -> Vec<usize> {
        self.composite(&self.sigma_powers, alpha)
    }

    /// The table of `delta_1^{b1} o ... o delta_n^{bn}`.
    pub fn delta_power(&self, beta: &[usize]) -> Vec<usize> {
        self.composite(&self.delta_powers, beta)
    }

    fn composite(&self, powers: &[PowerSeq], exps: &[usize]) -> Vec<usize> {
        assert_eq!(exps.len(), self.n, "exponent vector length mismatch");
        let mut table: Vec<usize> = self.ring.elements().collect();
        for i in (0..self.n).rev() {
            if exps[i] > 0 {
                table = compose(powers[i].resolve(exps[i]), &table);
            }
        }
        table
    }

    /// Distinct power tables of a single sigma, for per-variable reports.
    pub(crate) fn sigma_power_tables(&self, i: usize) -> &[Vec<usize>] {
        &self.sigma_powers[i].tables
    }

    /// Whether an ideal is carried into itself by every composite map.
    pub fn ideal_invariance(
        &self,
        ideal: &IdealDescriptor,
    ) -> Result<InvarianceReport, SystemError> {
        if ideal.sidedness() != Sidedness::TwoSided {
            return Err(SystemError::RequiresTwoSidedIdeal);
        }
        let mut report = InvarianceReport {
            sigma_invariant: true,
            delta_invariant: true,
            witness: None,
        };
        'sigma: for m in &self.sigma_monoid {
            for &a in ideal.elements() {
                if !ideal.contains(m.table[a]) {
                    report.sigma_invariant = false;
                    report.witness = Some(InvarianceWitness {
                        kind: MapKind::Sigma,
                        exponents: m.exponents.clone(),
                        element: a,
                        image: m.table[a],
                    });
                    break 'sigma;
                }
            }
        }
        'delta: for m in &self.delta_words {
            for &a in ideal.elements() {
                if !ideal.contains(m.table[a]) {
                    report.delta_invariant = false;
                    if report.witness.is_none() {
                        report.witness = Some(InvarianceWitness {
                            kind: MapKind::Delta,
                            exponents: m.exponents.clone(),
                            element: a,
                            image: m.table[a],
                        });
                    }
                    break 'delta;
                }
            }
        }
        Ok(report)
    }

    /// Quotient ring together with the induced system. Requires the ideal
    /// to be two-sided, proper and invariant under the system.
    pub fn quotient(
        &self,
        ideal: &IdealDescriptor,
    ) -> Result<(FiniteRing, EndoSystem), SystemError> {
        let inv = self.ideal_invariance(ideal)?;
        if !inv.sigma_invariant || !inv.delta_invariant {
            return Err(SystemError::NotInvariant {
                reason: format!("{:?}", inv.witness),
            });
        }
        let quotient = self.ring.quotient_by(ideal)?;
        let proj = quotient
            .quotient_projection()
            .expect("quotient ring carries its projection")
            .to_vec();
        let reps: Vec<usize> = match quotient.family() {
            RingFamily::Quotient { reps, .. } => reps.clone(),
            _ => unreachable!(),
        };
        let induced = |table: &[usize]| -> Vec<usize> {
            reps.iter().map(|&r| proj[table[r]]).collect()
        };
        let sigmas: Vec<EndoMap> = self
            .sigmas
            .iter()
            .map(|s| EndoMap::new(quotient.clone(), induced(s.table())))
            .collect::<Result<_, _>>()?;
        let deltas: Vec<SigmaDerivation> = self
            .deltas
            .iter()
            .zip(&sigmas)
            .map(|(d, s)| SigmaDerivation::new(quotient.clone(), s, induced(d.table())))
            .collect::<Result<_, _>>()?;
        let system = EndoSystem::validate(quotient.clone(), sigmas, deltas)?;
        Ok((quotient, system))
    }

    /// The image sets sigma_i(I), for the equality diagnostics required by
    /// quotient extensions.
    pub fn sigma_image_of(&self, i: usize, ideal: &IdealDescriptor) -> BTreeSet<usize> {
        ideal
            .elements()
            .iter()
            .map(|&a| self.sigmas[i].apply(a))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Sigma,
    Delta,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceWitness {
    pub kind: MapKind,
    pub exponents: Vec<usize>,
    pub element: usize,
    pub image: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub sigma_invariant: bool,
    pub delta_invariant: bool,
    pub witness: Option<InvarianceWitness>,
}
