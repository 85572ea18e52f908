//! Canonical example rings and extensions used across tests, benchmarks
//! and documentation. Built through the same JSON descriptions the CLI
//! accepts; the heavy extensions are validated once and shared.

use std::sync::OnceLock;

use crate::finite_rings::{build_ring, FiniteRing, RingSpec};
use crate::pbw::{Extension, ExtensionSpecJson};
use crate::sigma_delta::MapSpec;

pub fn zmod(n: usize) -> FiniteRing {
    build_ring(&RingSpec::Zmod { n }).expect("modular ring")
}

pub fn ut2_z2() -> FiniteRing {
    build_ring(&RingSpec::Ut2 {
        base: Box::new(RingSpec::Zmod { n: 2 }),
    })
    .expect("ut2 ring")
}

pub fn s2_z4() -> FiniteRing {
    build_ring(&RingSpec::S2 {
        base: Box::new(RingSpec::Zmod { n: 4 }),
    })
    .expect("s2 ring")
}

pub fn z2_x_z2() -> FiniteRing {
    build_ring(&RingSpec::Product {
        factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
    })
    .expect("product ring")
}

fn cached(cell: &'static OnceLock<Extension>, spec: fn() -> ExtensionSpecJson) -> Extension {
    cell.get_or_init(|| spec().build().expect("fixture extension validates"))
        .clone()
}

/// `UT2(Z/2)[x; sigma, delta]` with the diagonal sigma and strict-upper
/// delta. Weakly compatible but not compatible; the base is NI and not
/// Abelian.
pub fn ut2_z2_ore() -> Extension {
    static CELL: OnceLock<Extension> = OnceLock::new();
    cached(&CELL, ut2_z2_ore_spec)
}

pub fn ut2_z2_ore_spec() -> ExtensionSpecJson {
    ExtensionSpecJson {
        ring: RingSpec::Ut2 {
            base: Box::new(RingSpec::Zmod { n: 2 }),
        },
        n: 1,
        sigmas: vec![MapSpec::named("ut2_diag")],
        deltas: Some(vec![MapSpec::named("ut2_strict_upper_delta")]),
        d: vec![],
        rel: vec![],
        max_degree: None,
    }
}

/// `S2(Z/4)[x; sigma]` with sigma negating the strict-upper entry. The
/// base is commutative, NI and Abelian.
pub fn s2_z4_negate() -> Extension {
    static CELL: OnceLock<Extension> = OnceLock::new();
    cached(&CELL, s2_z4_negate_spec)
}

pub fn s2_z4_negate_spec() -> ExtensionSpecJson {
    ExtensionSpecJson {
        ring: RingSpec::S2 {
            base: Box::new(RingSpec::Zmod { n: 4 }),
        },
        n: 1,
        sigmas: vec![MapSpec::named("s2_negate_b")],
        deltas: None,
        d: vec![],
        rel: vec![],
        max_degree: None,
    }
}

/// `S2(Z/4)<x1,x2,x3>` with sigma_1 = identity, sigma_2 negating and
/// sigma_3 killing the strict-upper entry; all deltas zero, commuting
/// variables.
pub fn s2_z4_triple() -> Extension {
    static CELL: OnceLock<Extension> = OnceLock::new();
    cached(&CELL, s2_z4_triple_spec)
}

pub fn s2_z4_triple_spec() -> ExtensionSpecJson {
    ExtensionSpecJson {
        ring: RingSpec::S2 {
            base: Box::new(RingSpec::Zmod { n: 4 }),
        },
        n: 3,
        sigmas: vec![
            MapSpec::named("identity"),
            MapSpec::named("s2_negate_b"),
            MapSpec::named("s2_zero_b"),
        ],
        deltas: None,
        d: vec![],
        rel: vec![],
        max_degree: None,
    }
}

/// Commutative polynomial ring `Z/4[x]`.
pub fn z4_poly() -> Extension {
    static CELL: OnceLock<Extension> = OnceLock::new();
    cached(&CELL, z4_poly_spec)
}

pub fn z4_poly_spec() -> ExtensionSpecJson {
    ExtensionSpecJson {
        ring: RingSpec::Zmod { n: 4 },
        n: 1,
        sigmas: vec![MapSpec::named("identity")],
        deltas: None,
        d: vec![],
        rel: vec![],
        max_degree: None,
    }
}

/// Commutative polynomial ring `Z/6[x]` (reduced base).
pub fn z6_poly() -> Extension {
    static CELL: OnceLock<Extension> = OnceLock::new();
    cached(&CELL, z6_poly_spec)
}

pub fn z6_poly_spec() -> ExtensionSpecJson {
    ExtensionSpecJson {
        ring: RingSpec::Zmod { n: 6 },
        n: 1,
        sigmas: vec![MapSpec::named("identity")],
        deltas: None,
        d: vec![],
        rel: vec![],
        max_degree: None,
    }
}

/// Every fixture extension with a short label, for sweeping checks.
pub fn all_extensions() -> Vec<(&'static str, Extension)> {
    vec![
        ("ut2_z2_ore", ut2_z2_ore()),
        ("s2_z4_negate", s2_z4_negate()),
        ("s2_z4_triple", s2_z4_triple()),
        ("z4_poly", z4_poly()),
        ("z6_poly", z6_poly()),
    ]
}
