//! Exact computer algebra for skew PBW extensions over small finite
//! coefficient rings.
//!
//! The crate builds finite rings from structural descriptions, validates
//! systems of endomorphisms and skew derivations on them, performs exact
//! normal-form arithmetic in the generated extension
//! `A = sigma(R)<x_1,...,x_n>`, classifies elements of `A` (units,
//! nilpotents, idempotents, von Neumann regular, pi-regular, von Neumann
//! local, clean) through coefficient-shape criteria, and cross-validates
//! every such verdict against independent brute-force searches. A spectra
//! layer decides Gelfand / strongly-harmonic separation for the finite
//! base ring and derives the corresponding verdicts for the extension.

pub mod classifiers;
pub mod finite_rings;
pub mod fixtures;
pub mod oracles;
pub mod spectra;
pub mod pbw;
pub mod sigma_delta;

pub use finite_rings::{build_ring, build_ring_bounded, FiniteRing, RingSpec};
pub use pbw::{parse_expr, Extension, ExtensionSpecJson, Monomial, SkewPoly};
pub use sigma_delta::{EndoMap, EndoSystem, MapSpec, SigmaDerivation};
