//! Exact normal-form arithmetic in `A = sigma(R)<x_1,...,x_n>`.
//!
//! Elements are finite maps from standard monomials to left coefficients.
//! Multiplication rewrites `x_i r -> sigma_i(r) x_i + delta_i(r)` and
//! resolves out-of-order adjacent variable pairs through the stored
//! relations `x_j x_i = d_ij x_i x_j + r0 + sum_k r_k x_k`; the rewriting
//! terminates because every step either lowers total degree or removes an
//! inversion at equal degree.

pub mod parse;
mod spec;

pub use parse::{parse_expr, ParseError};
pub use spec::{ExtensionSpecJson, MapEntry, RelationEntry};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::finite_rings::{
    FiniteRing, IdealDescriptor, RingClassReport, RingError, Sidedness,
};
use crate::sigma_delta::{
    CompatibilityReport, EndoSystem, SystemError, SystemWarning,
};

/// Default cap on the degree of any intermediate product.
pub const DEFAULT_MAX_DEGREE: u32 = 16;

/// Default number of random associativity triples sampled at validation.
pub const DEFAULT_ASSOC_SAMPLES: usize = 500;

/// Fixed default seed for validation sampling, so reports are reproducible
/// without configuration.
pub const DEFAULT_ASSOC_SEED: u64 = 0x736b_6577;

#[derive(Debug, Error)]
pub enum PbwError {
    #[error("relation constant d({i},{j}) violates the hypotheses: {reason}")]
    HypothesisViolation { i: usize, j: usize, reason: String },
    #[error("associativity counterexample: f = {f}, g = {g}, h = {h}")]
    AssociativityCounterexample { f: String, g: String, h: String },
    #[error("degree {degree} exceeds the bound {bound}")]
    ResourceBoundExceeded { degree: u32, bound: u32 },
    #[error("ideal is not invariant under the system: {reason}")]
    NotInvariant { reason: String },
    #[error("ideal is not proper")]
    NotProper,
    #[error("malformed extension description: {reason}")]
    InvalidSpec { reason: String },
    #[error("malformed element: {reason}")]
    InvalidElement { reason: String },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A standard monomial `x_1^{a_1} ... x_n^{a_n}`, ordered by total degree
/// then lexicographically on the exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial { exps: vec![0; n] }
    }

    /// The generator `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Monomial {
        assert!(i >= 1 && i <= n, "variable index out of range");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Largest 0-based variable index with positive exponent.
    fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Smallest 0-based variable index with positive exponent.
    fn min_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    fn minus_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        debug_assert!(exps[i] > 0);
        exps[i] -= 1;
        Monomial { exps }
    }

    fn plus_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    fn plus(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.exps).cmp(&(other.degree(), &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `n` variables of total degree at most `d`, ascending.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial {
                exps: prefix.clone(),
            });
            return;
        }
        let used: u32 = prefix.iter().sum();
        for e in 0..=(d - used) {
            prefix.push(e);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The reordering constants of one variable pair `i < j` (1-based in the
/// public API): `x_j x_i = d x_i x_j + r0 + sum_k r_k x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub r0: usize,
    pub r: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionDiagnostics {
    pub assoc_triples_checked: usize,
    pub warnings: Vec<SystemWarning>,
}

struct ExtensionInner {
    base: FiniteRing,
    system: EndoSystem,
    n: usize,
    /// 0-based (i, j) with i < j.
    d: BTreeMap<(usize, usize), usize>,
    rel: BTreeMap<(usize, usize), Relation>,
    max_degree: u32,
    assoc_samples: usize,
    assoc_seed: u64,
    compat: CompatibilityReport,
    base_classes: RingClassReport,
    diagnostics: OnceLock<ExtensionDiagnostics>,
}

/// A validated skew PBW extension. Immutable and cheap to clone.
#[derive(Clone)]
pub struct Extension {
    inner: Arc<ExtensionInner>,
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Extension over {} in {} variable(s)",
            self.base().describe(),
            self.n()
        )
    }
}

/// Construction parameters for [`validate_extension`]. `d` and `rel` use
/// 1-based variable pairs `(i, j)` with `i < j`; missing entries default to
/// `d = 1` and a zero relation.
pub struct ExtensionParams {
    pub base: FiniteRing,
    pub system: EndoSystem,
    pub d: BTreeMap<(usize, usize), usize>,
    pub rel: BTreeMap<(usize, usize), Relation>,
    pub max_degree: u32,
    pub assoc_samples: usize,
    pub assoc_seed: u64,
}

impl ExtensionParams {
    pub fn new(base: FiniteRing, system: EndoSystem) -> ExtensionParams {
        ExtensionParams {
            base,
            system,
            d: BTreeMap::new(),
            rel: BTreeMap::new(),
            max_degree: DEFAULT_MAX_DEGREE,
            assoc_samples: DEFAULT_ASSOC_SAMPLES,
            assoc_seed: DEFAULT_ASSOC_SEED,
        }
    }
}

/// Validates the construction data and returns the extension.
///
/// Every `d_ij` must be nonzero, central and invertible in the base ring.
/// Associativity of the induced product is sampled: all triples over the
/// generators and a slice of constants, plus `assoc_samples` random triples
/// of degree at most 2.
pub fn validate_extension(params: ExtensionParams) -> Result<Extension, PbwError> {
    let ExtensionParams {
        base,
        system,
        d,
        rel,
        max_degree,
        assoc_samples,
        assoc_seed,
    } = params;
    if !system.ring().same_ring(&base) {
        return Err(PbwError::InvalidSpec {
            reason: "system is defined on a different ring".into(),
        });
    }
    let n = system.n();
    let order = base.order();

    let mut d0: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rel0: BTreeMap<(usize, usize), Relation> = BTreeMap::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            d0.insert((i - 1, j - 1), base.one());
            rel0.insert(
                (i - 1, j - 1),
                Relation {
                    r0: base.zero(),
                    r: vec![base.zero(); n],
                },
            );
        }
    }
    for ((i, j), v) in d {
        if !(1 <= i && i < j && j <= n) || v >= order {
            return Err(PbwError::InvalidSpec {
                reason: format!("bad d entry ({i},{j})"),
            });
        }
        d0.insert((i - 1, j - 1), v);
    }
    for ((i, j), r) in rel {
        if !(1 <= i && i < j && j <= n) || r.r0 >= order || r.r.len() != n
            || r.r.iter().any(|&v| v >= order)
        {
            return Err(PbwError::InvalidSpec {
                reason: format!("bad relation entry ({i},{j})"),
            });
        }
        rel0.insert((i - 1, j - 1), r);
    }
    for (&(i, j), &v) in &d0 {
        if v == base.zero() {
            return Err(PbwError::HypothesisViolation {
                i: i + 1,
                j: j + 1,
                reason: "d is zero".into(),
            });
        }
        if !base.is_central(v) {
            return Err(PbwError::HypothesisViolation {
                i: i + 1,
                j: j + 1,
                reason: format!("d = {} is not central", base.name(v)),
            });
        }
        if base.inverse(v).is_none() {
            return Err(PbwError::HypothesisViolation {
                i: i + 1,
                j: j + 1,
                reason: format!("d = {} is not invertible", base.name(v)),
            });
        }
    }

    let compat = system.compatibility_report();
    let base_classes = base.class_report();
    let warnings = system.warnings().to_vec();
    let ext = Extension {
        inner: Arc::new(ExtensionInner {
            base,
            system,
            n,
            d: d0,
            rel: rel0,
            max_degree,
            assoc_samples,
            assoc_seed,
            compat,
            base_classes,
            diagnostics: OnceLock::new(),
        }),
    };

    let checked = ext.check_associativity(assoc_samples, assoc_seed)?;
    let _ = ext.inner.diagnostics.set(ExtensionDiagnostics {
        assoc_triples_checked: checked,
        warnings,
    });
    Ok(ext)
}

impl Extension {
    pub fn base(&self) -> &FiniteRing {
        &self.inner.base
    }

    pub fn system(&self) -> &EndoSystem {
        &self.inner.system
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn max_degree(&self) -> u32 {
        self.inner.max_degree
    }

    pub fn compat(&self) -> &CompatibilityReport {
        &self.inner.compat
    }

    pub fn base_classes(&self) -> &RingClassReport {
        &self.inner.base_classes
    }

    pub fn diagnostics(&self) -> &ExtensionDiagnostics {
        self.inner.diagnostics.get().expect("set at validation")
    }

    /// `d_ij` for a 1-based pair `i < j`.
    pub fn d(&self, i: usize, j: usize) -> usize {
        self.inner.d[&(i - 1, j - 1)]
    }

    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        &self.inner.rel[&(i - 1, j - 1)]
    }

    pub fn same_extension(&self, other: &Extension) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly {
            ext: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(self.base().one())
    }

    pub fn constant(&self, c: usize) -> SkewPoly {
        assert!(c < self.base().order(), "coefficient index out of range");
        let mut terms = BTreeMap::new();
        if c != self.base().zero() {
            terms.insert(Monomial::one(self.n()), c);
        }
        SkewPoly {
            ext: self.clone(),
            terms,
        }
    }

    /// The generator `x_i` (1-based).
    pub fn var(&self, i: usize) -> SkewPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(self.n(), i), self.base().one());
        SkewPoly {
            ext: self.clone(),
            terms,
        }
    }

    pub fn monomial(&self, mono: Monomial, c: usize) -> SkewPoly {
        assert_eq!(mono.exps.len(), self.n(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if c != self.base().zero() {
            terms.insert(mono, c);
        }
        SkewPoly {
            ext: self.clone(),
            terms,
        }
    }

    /// Normal form of `x_i * r`: `sigma_i(r) x_i + delta_i(r)` (1-based `i`).
    pub fn var_times_coeff(&self, i: usize, r: usize) -> SkewPoly {
        assert!(i >= 1 && i <= self.n(), "variable index out of range");
        let s = self.system().sigma(i - 1).apply(r);
        let dl = self.system().delta(i - 1).apply(r);
        let mut terms = BTreeMap::new();
        let zero = self.base().zero();
        if s != zero {
            terms.insert(Monomial::var(self.n(), i), s);
        }
        if dl != zero {
            add_term(self.base(), &mut terms, Monomial::one(self.n()), dl);
        }
        SkewPoly {
            ext: self.clone(),
            terms,
        }
    }

    /// Normal form of `x_j x_i` for `j > i` (1-based): the stored relation
    /// `d_ij x_i x_j + r0 + sum_k r_k x_k`.
    pub fn reorder(&self, j: usize, i: usize) -> SkewPoly {
        assert!(i >= 1 && j <= self.n() && j > i, "need n >= j > i >= 1");
        SkewPoly {
            ext: self.clone(),
            terms: self.reorder_terms(j - 1, i - 1),
        }
    }

    /// 0-based variant of [`Extension::reorder`], as raw terms.
    fn reorder_terms(&self, j: usize, i: usize) -> Terms {
        let base = self.base();
        let zero = base.zero();
        let mut terms = BTreeMap::new();
        let dij = self.inner.d[&(i, j)];
        let mono = Monomial::var(self.n(), i + 1).plus_var(j);
        terms.insert(mono, dij);
        let rel = &self.inner.rel[&(i, j)];
        if rel.r0 != zero {
            add_term(base, &mut terms, Monomial::one(self.n()), rel.r0);
        }
        for (k, &rk) in rel.r.iter().enumerate() {
            if rk != zero {
                add_term(base, &mut terms, Monomial::var(self.n(), k + 1), rk);
            }
        }
        terms
    }

    /// Normal form of `x^alpha * c` for a coefficient `c`. Never grows the
    /// degree and introduces no new variables, by induction on `|alpha|`.
    fn mono_times_coeff(&self, alpha: &Monomial, c: usize) -> Terms {
        let base = self.base();
        let zero = base.zero();
        let mut out = BTreeMap::new();
        if c == zero {
            return out;
        }
        let Some(i) = alpha.max_var() else {
            out.insert(alpha.clone(), c);
            return out;
        };
        let alpha_prime = alpha.minus_var(i);
        let s = self.system().sigma(i).apply(c);
        let dl = self.system().delta(i).apply(c);
        for (gamma, m) in self.mono_times_coeff(&alpha_prime, s) {
            debug_assert!(gamma.max_var().map_or(true, |v| v <= i));
            add_term(base, &mut out, gamma.plus_var(i), m);
        }
        for (gamma, m) in self.mono_times_coeff(&alpha_prime, dl) {
            add_term(base, &mut out, gamma, m);
        }
        out
    }

    /// Normal form of `x^alpha * x^beta`. Recursion measure: total degree,
    /// then the number of out-of-order variable pairs.
    fn mono_times_mono(&self, alpha: &Monomial, beta: &Monomial) -> Result<Terms, PbwError> {
        let (Some(j), Some(i)) = (alpha.max_var(), beta.min_var()) else {
            let mut out = BTreeMap::new();
            out.insert(alpha.plus(beta), self.base().one());
            return Ok(out);
        };
        if j <= i {
            let mut out = BTreeMap::new();
            out.insert(alpha.plus(beta), self.base().one());
            return Ok(out);
        }
        let alpha_prime = alpha.minus_var(j);
        let beta_prime = beta.minus_var(i);
        let rel = self.reorder_terms(j, i);
        let mut left = BTreeMap::new();
        left.insert(alpha_prime, self.base().one());
        let mid = self.mul_terms(&left, &rel)?;
        let mut right = BTreeMap::new();
        right.insert(beta_prime, self.base().one());
        self.mul_terms(&mid, &right)
    }

    /// Product of two normal forms, as raw terms.
    fn mul_terms(&self, f: &Terms, g: &Terms) -> Result<Terms, PbwError> {
        let base = self.base();
        let mut acc = BTreeMap::new();
        if f.is_empty() || g.is_empty() {
            return Ok(acc);
        }
        let deg_f = f.keys().map(|m| m.degree()).max().unwrap_or(0);
        let deg_g = g.keys().map(|m| m.degree()).max().unwrap_or(0);
        if deg_f + deg_g > self.inner.max_degree {
            return Err(PbwError::ResourceBoundExceeded {
                degree: deg_f + deg_g,
                bound: self.inner.max_degree,
            });
        }
        for (alpha, &ca) in f {
            for (beta, &cb) in g {
                for (mu, m) in self.mono_times_coeff(alpha, cb) {
                    let parts = self.mono_times_mono(&mu, beta)?;
                    let cam = base.mul(ca, m);
                    for (gamma, c) in parts {
                        add_term(base, &mut acc, gamma, base.mul(cam, c));
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Samples associativity: all triples over the generators plus a slice
    /// of constants, then `samples` random triples of degree <= 2. Returns
    /// the number of triples checked.
    fn check_associativity(&self, samples: usize, seed: u64) -> Result<usize, PbwError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = self.base();
        let mut gens: Vec<SkewPoly> = (1..=self.n()).map(|i| self.var(i)).collect();
        if base.order() <= 8 {
            for c in base.elements() {
                gens.push(self.constant(c));
            }
        } else {
            gens.push(self.constant(base.zero()));
            gens.push(self.constant(base.one()));
            for _ in 0..6 {
                gens.push(self.constant(rng.random_range(0..base.order())));
            }
        }
        let mut checked = 0usize;
        let verify = |f: &SkewPoly, g: &SkewPoly, h: &SkewPoly| -> Result<(), PbwError> {
            let lhs = f.mul(g)?.mul(h)?;
            let rhs = f.mul(&g.mul(h)?)?;
            if lhs != rhs {
                return Err(PbwError::AssociativityCounterexample {
                    f: f.to_string(),
                    g: g.to_string(),
                    h: h.to_string(),
                });
            }
            Ok(())
        };
        for f in &gens {
            for g in &gens {
                for h in &gens {
                    verify(f, g, h)?;
                    checked += 1;
                }
            }
        }
        for _ in 0..samples {
            let f = self.random_poly(2, &mut rng);
            let g = self.random_poly(2, &mut rng);
            let h = self.random_poly(2, &mut rng);
            verify(&f, &g, &h)?;
            checked += 1;
        }
        Ok(checked)
    }

    /// Uniform random coefficients on every monomial of degree <= `d`.
    pub fn random_poly(&self, d: u32, rng: &mut impl Rng) -> SkewPoly {
        let order = self.base().order();
        let mut terms = BTreeMap::new();
        for mono in monomials_up_to(self.n(), d) {
            let c = rng.random_range(0..order);
            if c != self.base().zero() {
                terms.insert(mono, c);
            }
        }
        SkewPoly {
            ext: self.clone(),
            terms,
        }
    }

    /// Extension over `R/I` with the induced system and projected
    /// constants. `I` must be proper, two-sided and invariant under the
    /// system.
    pub fn quotient(&self, ideal: &IdealDescriptor) -> Result<QuotientExtension, PbwError> {
        if ideal.sidedness() != Sidedness::TwoSided {
            return Err(PbwError::InvalidSpec {
                reason: "quotient requires a two-sided ideal".into(),
            });
        }
        if !ideal.is_proper() {
            return Err(PbwError::NotProper);
        }
        let inv = self.system().ideal_invariance(ideal)?;
        if !inv.sigma_invariant || !inv.delta_invariant {
            return Err(PbwError::NotInvariant {
                reason: format!("{:?}", inv.witness),
            });
        }
        // The classical quotient statement additionally wants
        // sigma_i(I) = I; with non-injective sigmas the image can be
        // strictly smaller while the induced extension still validates,
        // so inclusion failures are the only hard error here.
        let (qring, qsystem) = self.system().quotient(ideal)?;
        let proj = qring
            .quotient_projection()
            .expect("quotient ring carries its projection")
            .to_vec();
        let d: BTreeMap<(usize, usize), usize> = self
            .inner
            .d
            .iter()
            .map(|(&(i, j), &v)| ((i + 1, j + 1), proj[v]))
            .collect();
        let rel: BTreeMap<(usize, usize), Relation> = self
            .inner
            .rel
            .iter()
            .map(|(&(i, j), r)| {
                (
                    (i + 1, j + 1),
                    Relation {
                        r0: proj[r.r0],
                        r: r.r.iter().map(|&v| proj[v]).collect(),
                    },
                )
            })
            .collect();
        let ext = validate_extension(ExtensionParams {
            base: qring,
            system: qsystem,
            d,
            rel,
            max_degree: self.inner.max_degree,
            assoc_samples: self.inner.assoc_samples,
            assoc_seed: self.inner.assoc_seed,
        })?;
        Ok(QuotientExtension {
            ext,
            projection: proj,
        })
    }
}

/// A quotient extension `A/IA` together with the coefficient projection.
pub struct QuotientExtension {
    pub ext: Extension,
    /// base-ring index -> quotient-ring index
    pub projection: Vec<usize>,
}

impl QuotientExtension {
    /// Image of an element of `A` in `A/IA` (coefficientwise projection).
    pub fn project(&self, f: &SkewPoly) -> SkewPoly {
        let base = self.ext.base();
        let mut terms = BTreeMap::new();
        for (mono, &c) in f.terms() {
            add_term(base, &mut terms, mono.clone(), self.projection[c]);
        }
        SkewPoly {
            ext: self.ext.clone(),
            terms,
        }
    }
}

type Terms = BTreeMap<Monomial, usize>;

fn add_term(ring: &FiniteRing, acc: &mut Terms, mono: Monomial, coeff: usize) {
    if coeff == ring.zero() {
        return;
    }
    match acc.entry(mono) {
        Entry::Occupied(mut e) => {
            let s = ring.add(*e.get(), coeff);
            if s == ring.zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

/// An element of the extension in normal form: a finite map from standard
/// monomials to left coefficients, zero coefficients absent.
#[derive(Clone)]
pub struct SkewPoly {
    ext: Extension,
    terms: Terms,
}

impl SkewPoly {
    pub fn ext(&self) -> &Extension {
        &self.ext
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero element.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn coeff(&self, mono: &Monomial) -> usize {
        self.terms
            .get(mono)
            .copied()
            .unwrap_or_else(|| self.ext.base().zero())
    }

    pub fn constant_coeff(&self) -> usize {
        self.coeff(&Monomial::one(self.ext.n()))
    }

    /// Coefficients of the nonconstant monomials.
    pub fn tail_coeffs(&self) -> impl Iterator<Item = (&Monomial, usize)> {
        self.terms
            .iter()
            .filter(|(m, _)| !m.is_one())
            .map(|(m, &c)| (m, c))
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        assert!(
            self.ext.same_extension(&other.ext),
            "operands from different extensions"
        );
        let base = self.ext.base();
        let mut terms = self.terms.clone();
        for (mono, &c) in &other.terms {
            add_term(base, &mut terms, mono.clone(), c);
        }
        SkewPoly {
            ext: self.ext.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> SkewPoly {
        let base = self.ext.base();
        SkewPoly {
            ext: self.ext.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.add(&other.neg())
    }

    /// Left module action: multiplies every coefficient by `c` on the left.
    pub fn scalar_left(&self, c: usize) -> SkewPoly {
        let base = self.ext.base();
        let mut terms = BTreeMap::new();
        for (m, &a) in &self.terms {
            add_term(base, &mut terms, m.clone(), base.mul(c, a));
        }
        SkewPoly {
            ext: self.ext.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly, PbwError> {
        assert!(
            self.ext.same_extension(&other.ext),
            "operands from different extensions"
        );
        Ok(SkewPoly {
            ext: self.ext.clone(),
            terms: self.ext.mul_terms(&self.terms, &other.terms)?,
        })
    }

    pub fn pow(&self, k: usize) -> Result<SkewPoly, PbwError> {
        let mut acc = self.ext.one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Expression-form rendering that reparses to an equal element.
    pub fn to_expr_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let base = self.ext.base();
        let mut parts = Vec::with_capacity(self.terms.len());
        for (mono, &c) in &self.terms {
            let mono_str = mono
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_one() {
                parts.push(base.coeff_literal(c));
            } else if c == base.one() {
                parts.push(mono_str);
            } else {
                parts.push(format!("{}*{}", base.coeff_literal(c), mono_str));
            }
        }
        parts.join(" + ")
    }

    /// Serialized form: `{"terms":[{"coeff":k,"exp":[...]},...]}` sorted by
    /// monomial order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                serde_json::json!({
                    "exp": m.exponents(),
                    "coeff": c,
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json_value(ext: &Extension, value: &serde_json::Value) -> Result<SkewPoly, PbwError> {
        let bad = |reason: &str| PbwError::InvalidElement {
            reason: reason.into(),
        };
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing `terms` array"))?;
        let base = ext.base();
        let mut out: Terms = BTreeMap::new();
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("term missing `exp`"))?;
            if exp.len() != ext.n() {
                return Err(bad("exponent vector has wrong arity"));
            }
            let exps: Vec<u32> = exp
                .iter()
                .map(|v| v.as_u64().map(|x| x as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("exponent is not a natural number"))?;
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_u64())
                .ok_or_else(|| bad("term missing `coeff`"))? as usize;
            if coeff >= base.order() {
                return Err(bad("coefficient index out of range"));
            }
            add_term(base, &mut out, Monomial::from_exponents(exps), coeff);
        }
        Ok(SkewPoly {
            ext: ext.clone(),
            terms: out,
        })
    }
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ext.same_extension(&other.ext) && self.terms == other.terms
    }
}

impl Eq for SkewPoly {}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_rings::RingSpec;
    use crate::fixtures;
    use crate::sigma_delta::MapSpec;

    const E12: usize = 2; // index of the strict-upper unit matrix in UT2(Z/2)

    #[test]
    fn var_times_coeff_rewrites() {
        let ext = fixtures::ut2_z2_ore();
        // sigma kills E12, delta fixes it: x * E12 = E12.
        assert_eq!(ext.var_times_coeff(1, E12), ext.constant(E12));
        assert_eq!(ext.var_times_coeff(1, ext.base().one()), ext.var(1));
        assert_eq!(ext.var_times_coeff(1, ext.base().zero()), ext.zero());
    }

    fn two_var_z4(d12: Option<usize>, r0: Option<usize>) -> Extension {
        let mut spec = ExtensionSpecJson {
            ring: RingSpec::Zmod { n: 4 },
            n: 2,
            sigmas: vec![MapSpec::named("identity"), MapSpec::named("identity")],
            deltas: None,
            d: vec![],
            rel: vec![],
            max_degree: None,
        };
        if let Some(v) = d12 {
            spec.d.push(MapEntry {
                i: 1,
                j: 2,
                coeff: v,
            });
        }
        if let Some(v) = r0 {
            spec.rel.push(RelationEntry {
                i: 1,
                j: 2,
                r0: v,
                r: vec![0, 0],
            });
        }
        spec.build().unwrap()
    }

    #[test]
    fn reorder_variants() {
        let plain = two_var_z4(None, None);
        let x1x2 = plain.var(1).mul(&plain.var(2)).unwrap();
        assert_eq!(plain.reorder(2, 1), x1x2);

        let weyl = two_var_z4(None, Some(1));
        let expect = weyl
            .var(1)
            .mul(&weyl.var(2))
            .unwrap()
            .add(&weyl.one());
        assert_eq!(weyl.reorder(2, 1), expect);
        // And the engine applies it: x2 * x1 normalizes to x1*x2 + 1.
        assert_eq!(weyl.var(2).mul(&weyl.var(1)).unwrap(), expect);

        let quantum = two_var_z4(Some(3), None);
        let expect = quantum
            .var(1)
            .mul(&quantum.var(2))
            .unwrap()
            .scalar_left(3);
        assert_eq!(quantum.reorder(2, 1), expect);
    }

    #[test]
    fn one_is_neutral_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, ext) in fixtures::all_extensions() {
            for _ in 0..20 {
                let f = ext.random_poly(2, &mut rng);
                assert_eq!(f.mul(&ext.one()).unwrap(), f);
                assert_eq!(ext.one().mul(&f).unwrap(), f);
            }
        }
    }

    #[test]
    fn unit_square_over_z4() {
        let ext = fixtures::z4_poly();
        let f = parse::parse_expr(&ext, "1 + 2*x1").unwrap();
        assert_eq!(f.mul(&f).unwrap(), ext.one());
    }

    #[test]
    fn nilpotent_square_over_ut2_ore() {
        let ext = fixtures::ut2_z2_ore();
        let f = ext
            .constant(E12)
            .add(&ext.monomial(Monomial::var(1, 1), E12));
        assert!(f.mul(&f).unwrap().is_zero());
    }

    #[test]
    fn module_operations() {
        let ext = fixtures::z4_poly();
        let f = parse::parse_expr(&ext, "3 + x1 + 2*x1^2").unwrap();
        assert!(f.add(&f.neg()).is_zero());
        assert_eq!(
            ext.var(1).pow(3).unwrap(),
            ext.monomial(Monomial::from_exponents(vec![3]), 1)
        );
        assert_eq!(
            ext.var(1).scalar_left(2),
            ext.monomial(Monomial::var(1, 1), 2)
        );
    }

    #[test]
    fn degree_never_exceeds_sum_and_can_drop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ext = fixtures::ut2_z2_ore();
        for _ in 0..50 {
            let f = ext.random_poly(2, &mut rng);
            let g = ext.random_poly(2, &mut rng);
            let p = f.mul(&g).unwrap();
            if let (Some(df), Some(dg), Some(dp)) = (f.degree(), g.degree(), p.degree()) {
                assert!(dp <= df + dg);
            }
        }
        // sigma kills the leading coefficient here: deg drops strictly.
        let h = ext.monomial(Monomial::var(1, 1), E12);
        assert!(h.mul(&h).unwrap().is_zero());
    }

    #[test]
    fn left_linearity_exhaustive_at_degree_one() {
        let ext = fixtures::z4_poly();
        let base = ext.base().clone();
        let polys: Vec<SkewPoly> = (0..16)
            .map(|k| {
                ext.constant(k % 4)
                    .add(&ext.monomial(Monomial::var(1, 1), k / 4))
            })
            .collect();
        for a in base.elements() {
            for b in base.elements() {
                for f in polys.iter().step_by(3) {
                    for g in polys.iter().step_by(3) {
                        for h in polys.iter().step_by(5) {
                            let lhs = f.scalar_left(a).add(&g.scalar_left(b)).mul(h).unwrap();
                            let rhs = f
                                .mul(h)
                                .unwrap()
                                .scalar_left(a)
                                .add(&g.mul(h).unwrap().scalar_left(b));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_bound_aborts_multiplication() {
        let ext = fixtures::z4_poly();
        let x16 = ext.var(1).pow(16).unwrap();
        assert_eq!(x16.degree(), Some(16));
        match ext.var(1).pow(17) {
            Err(PbwError::ResourceBoundExceeded { degree, bound }) => {
                assert_eq!((degree, bound), (17, 16));
            }
            other => panic!("expected resource bound, got {other:?}"),
        }
    }

    #[test]
    fn hypothesis_violation_on_non_central_d() {
        let spec = ExtensionSpecJson {
            ring: RingSpec::Ut2 {
                base: Box::new(RingSpec::Zmod { n: 2 }),
            },
            n: 2,
            sigmas: vec![MapSpec::named("identity"), MapSpec::named("identity")],
            deltas: None,
            d: vec![MapEntry {
                i: 1,
                j: 2,
                coeff: 4, // E11: idempotent, not central, not invertible
            }],
            rel: vec![],
            max_degree: None,
        };
        match spec.build() {
            Err(PbwError::HypothesisViolation { i, j, reason }) => {
                assert_eq!((i, j), (1, 2));
                assert!(reason.contains("central"));
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn associativity_sampling_catches_non_commuting_sigmas() {
        // On Z/2 x Z/2 take sigma_1 = (a,b) -> (a,a) and sigma_2 = swap.
        // They do not commute, so x2*x1 = x1*x2 cannot define an
        // associative product.
        let spec = ExtensionSpecJson {
            ring: RingSpec::Product {
                factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
            },
            n: 2,
            sigmas: vec![
                MapSpec::Table {
                    table: vec![0, 0, 3, 3],
                },
                MapSpec::Table {
                    table: vec![0, 2, 1, 3],
                },
            ],
            deltas: None,
            d: vec![],
            rel: vec![],
            max_degree: None,
        };
        assert!(matches!(
            spec.build(),
            Err(PbwError::AssociativityCounterexample { .. })
        ));
    }

    #[test]
    fn quotient_extension_over_reduced_base() {
        let ext = fixtures::ut2_z2_ore();
        let r = ext.base().clone();
        let nil = IdealDescriptor::new(r.clone(), Sidedness::TwoSided, r.nilpotents().clone())
            .unwrap();
        let q = ext.quotient(&nil).unwrap();
        assert_eq!(q.ext.base().order(), 4);
        assert!(q.ext.base_classes().reduced);

        // Projection commutes with multiplication on sampled pairs.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let f = ext.random_poly(2, &mut rng);
            let g = ext.random_poly(2, &mut rng);
            let lhs = q.project(&f.mul(&g).unwrap());
            let rhs = q.project(&f).mul(&q.project(&g)).unwrap();
            assert_eq!(lhs, rhs);
        }

        let zero = IdealDescriptor::new(r.clone(), Sidedness::TwoSided, [r.zero()].into())
            .unwrap();
        let same = ext.quotient(&zero).unwrap();
        assert_eq!(same.ext.base().order(), r.order());

        let whole =
            IdealDescriptor::new(r.clone(), Sidedness::TwoSided, r.elements().collect()).unwrap();
        assert!(matches!(ext.quotient(&whole), Err(PbwError::NotProper)));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (_, ext) in fixtures::all_extensions() {
            for _ in 0..10 {
                let f = ext.random_poly(2, &mut rng);
                let back = SkewPoly::from_json_value(&ext, &f.to_json_value()).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn monomial_order_is_degree_then_lex() {
        let monos = monomials_up_to(2, 2);
        let rendered: Vec<Vec<u32>> =
            monos.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(
            rendered,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0],
            ]
        );
    }
}

