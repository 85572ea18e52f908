//! Serializable description of a full extension: base ring, maps, and
//! reordering constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::finite_rings::{build_ring_bounded, RingSpec, DEFAULT_MAX_ORDER};
use crate::sigma_delta::{EndoSystem, MapSpec};

use super::{
    validate_extension, Extension, ExtensionParams, PbwError, Relation, DEFAULT_ASSOC_SAMPLES,
    DEFAULT_ASSOC_SEED, DEFAULT_MAX_DEGREE,
};

/// One `d_ij` entry; variable pairs are 1-based with `i < j`. The
/// coefficient is a canonical element index of the base ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: usize,
}

/// One relation entry `x_j x_i = d_ij x_i x_j + r0 + sum_k r_k x_k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationEntry {
    pub i: usize,
    pub j: usize,
    pub r0: usize,
    pub r: Vec<usize>,
}

/// JSON description of an extension:
/// ```json
/// {
///   "ring": {"family":"zmod","n":4},
///   "n": 1,
///   "sigmas": [{"name":"identity"}],
///   "deltas": [{"name":"zero"}],
///   "d": [],
///   "rel": [],
///   "max_degree": 16
/// }
/// ```
/// `deltas` defaults to all-zero maps, `d` entries default to 1, and `rel`
/// entries default to zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionSpecJson {
    pub ring: RingSpec,
    pub n: usize,
    pub sigmas: Vec<MapSpec>,
    #[serde(default)]
    pub deltas: Option<Vec<MapSpec>>,
    #[serde(default)]
    pub d: Vec<MapEntry>,
    #[serde(default)]
    pub rel: Vec<RelationEntry>,
    #[serde(default)]
    pub max_degree: Option<u32>,
}

impl ExtensionSpecJson {
    /// Builds and validates the described extension.
    pub fn build(&self) -> Result<Extension, PbwError> {
        self.build_bounded(DEFAULT_MAX_ORDER)
    }

    pub fn build_bounded(&self, max_order: usize) -> Result<Extension, PbwError> {
        if self.n == 0 || self.sigmas.len() != self.n {
            return Err(PbwError::InvalidSpec {
                reason: "need n >= 1 and exactly n sigmas".into(),
            });
        }
        let ring = build_ring_bounded(&self.ring, max_order)?;
        let deltas: Vec<MapSpec> = match &self.deltas {
            Some(ds) => {
                if ds.len() != self.n {
                    return Err(PbwError::InvalidSpec {
                        reason: "deltas must match the number of variables".into(),
                    });
                }
                ds.clone()
            }
            None => vec![MapSpec::named("zero"); self.n],
        };
        let system = EndoSystem::from_specs(&ring, &self.sigmas, &deltas)?;
        let mut d = BTreeMap::new();
        for e in &self.d {
            d.insert((e.i, e.j), e.coeff);
        }
        let mut rel = BTreeMap::new();
        for e in &self.rel {
            rel.insert(
                (e.i, e.j),
                Relation {
                    r0: e.r0,
                    r: e.r.clone(),
                },
            );
        }
        validate_extension(ExtensionParams {
            base: ring,
            system,
            d,
            rel,
            max_degree: self.max_degree.unwrap_or(DEFAULT_MAX_DEGREE),
            assoc_samples: DEFAULT_ASSOC_SAMPLES,
            assoc_seed: DEFAULT_ASSOC_SEED,
        })
    }
}
