//! Compatibility, weak compatibility and rigidity, decided by exhaustive
//! quantification over element pairs and the composite-map closures.

use serde::Serialize;

use super::{EndoSystem, SystemError};

/// A pair refuting one of the compatibility biconditionals. `twisted` is
/// the product `a * m(b)` for the composite map with the given exponents,
/// `plain` is `a * b`.
#[derive(Debug, Clone, Serialize)]
pub struct CompatWitness {
    pub a: usize,
    pub b: usize,
    pub exponents: Vec<usize>,
    pub twisted: usize,
    pub plain: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityReport {
    /// `a sigma^alpha(b) = 0` iff `ab = 0`, for all pairs and exponents.
    pub sigma_compatible: bool,
    pub sigma_witness: Option<CompatWitness>,
    /// `ab = 0` implies `a delta^beta(b) = 0`.
    pub delta_compatible: bool,
    pub delta_witness: Option<CompatWitness>,
    /// `a sigma^alpha(b) in N(R)` iff `ab in N(R)`.
    pub weak_sigma_compatible: bool,
    pub weak_sigma_witness: Option<CompatWitness>,
    /// `ab in N(R)` implies `a delta^beta(b) in N(R)`.
    pub weak_delta_compatible: bool,
    pub weak_delta_witness: Option<CompatWitness>,
    /// `r sigma^alpha(r) = 0` implies `r = 0`.
    pub sigma_rigid: bool,
    pub rigid_witness: Option<usize>,
    /// Compatibility restricted to powers of each single sigma_i.
    pub per_sigma_compatible: Vec<bool>,
    pub per_sigma_weak_compatible: Vec<bool>,
}

impl CompatibilityReport {
    pub fn weak_compatible(&self) -> bool {
        self.weak_sigma_compatible && self.weak_delta_compatible
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsequenceItem {
    pub description: &'static str,
    pub holds: bool,
    pub witness: Option<CompatWitness>,
}

/// Results of re-verifying the four closure properties that weak
/// compatibility implies. All four are expected to hold whenever the weak
/// flags do; a failure indicates a corrupted system and is reported with
/// its witness.
#[derive(Debug, Clone, Serialize)]
pub struct ConsequencesReport {
    pub items: Vec<ConsequenceItem>,
}

impl ConsequencesReport {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }
}

impl EndoSystem {
    /// Decides every compatibility flag by sweeping all element pairs
    /// against the precomputed closures. Witnesses are the first violating
    /// triple in canonical order (a, then b, then closure position).
    pub fn compatibility_report(&self) -> CompatibilityReport {
        let ring = self.ring();
        let nil = ring.nilpotents();
        let zero = ring.zero();
        let order = ring.order();

        let mut sigma_compatible = true;
        let mut sigma_witness = None;
        let mut weak_sigma_compatible = true;
        let mut weak_sigma_witness = None;
        'sig: for a in 0..order {
            for b in 0..order {
                let plain = ring.mul(a, b);
                for m in self.sigma_monoid() {
                    let twisted = ring.mul(a, m.table[b]);
                    if sigma_compatible && ((twisted == zero) != (plain == zero)) {
                        sigma_compatible = false;
                        sigma_witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                    }
                    if weak_sigma_compatible
                        && (nil.contains(&twisted) != nil.contains(&plain))
                    {
                        weak_sigma_compatible = false;
                        weak_sigma_witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                    }
                    if !sigma_compatible && !weak_sigma_compatible {
                        break 'sig;
                    }
                }
            }
        }

        let mut delta_compatible = true;
        let mut delta_witness = None;
        let mut weak_delta_compatible = true;
        let mut weak_delta_witness = None;
        'del: for a in 0..order {
            for b in 0..order {
                let plain = ring.mul(a, b);
                for m in self.delta_words() {
                    let twisted = ring.mul(a, m.table[b]);
                    if delta_compatible && plain == zero && twisted != zero {
                        delta_compatible = false;
                        delta_witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                    }
                    if weak_delta_compatible
                        && nil.contains(&plain)
                        && !nil.contains(&twisted)
                    {
                        weak_delta_compatible = false;
                        weak_delta_witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                    }
                    if !delta_compatible && !weak_delta_compatible {
                        break 'del;
                    }
                }
            }
        }

        let mut sigma_rigid = true;
        let mut rigid_witness = None;
        'rig: for m in self.sigma_monoid() {
            for r in 0..order {
                if r != zero && ring.mul(r, m.table[r]) == zero {
                    sigma_rigid = false;
                    rigid_witness = Some(r);
                    break 'rig;
                }
            }
        }

        let per = |i: usize| -> (bool, bool) {
            let tables = self.sigma_power_tables(i);
            let mut plain_ok = true;
            let mut weak_ok = true;
            for a in 0..order {
                for b in 0..order {
                    let p = ring.mul(a, b);
                    for t in tables {
                        let tw = ring.mul(a, t[b]);
                        plain_ok &= (tw == zero) == (p == zero);
                        weak_ok &= nil.contains(&tw) == nil.contains(&p);
                    }
                }
            }
            (plain_ok, weak_ok)
        };
        let mut per_sigma_compatible = Vec::with_capacity(self.n());
        let mut per_sigma_weak_compatible = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let (p, w) = per(i);
            per_sigma_compatible.push(p);
            per_sigma_weak_compatible.push(w);
        }

        CompatibilityReport {
            sigma_compatible,
            sigma_witness,
            delta_compatible,
            delta_witness,
            weak_sigma_compatible,
            weak_sigma_witness,
            weak_delta_compatible,
            weak_delta_witness,
            sigma_rigid,
            rigid_witness,
            per_sigma_compatible,
            per_sigma_weak_compatible,
        }
    }

    /// Verifies the four consequences of weak compatibility on the full
    /// closure sweep. Requires the weak flags to hold.
    pub fn weak_compat_consequences(&self) -> Result<ConsequencesReport, SystemError> {
        let report = self.compatibility_report();
        if !report.weak_compatible() {
            return Err(SystemError::WeakCompatibilityRequired);
        }
        Ok(self.consequences_sweep())
    }

    /// The raw sweep behind [`EndoSystem::weak_compat_consequences`],
    /// without the gate. Exercised directly by fault-injection tests.
    pub(crate) fn consequences_sweep(&self) -> ConsequencesReport {
        let ring = self.ring();
        let nil = ring.nilpotents();
        let order = ring.order();
        let in_nil = |x: usize| nil.contains(&x);

        let mut items = Vec::with_capacity(4);

        // (1) ab in N  =>  a sigma^alpha(b) in N and sigma^beta(a) b in N.
        let mut item = ConsequenceItem {
            description: "ab nilpotent forces a*sigma^alpha(b) and sigma^beta(a)*b nilpotent",
            holds: true,
            witness: None,
        };
        'one: for a in 0..order {
            for b in 0..order {
                if !in_nil(ring.mul(a, b)) {
                    continue;
                }
                for m in self.sigma_monoid() {
                    let t1 = ring.mul(a, m.table[b]);
                    let t2 = ring.mul(m.table[a], b);
                    if !in_nil(t1) || !in_nil(t2) {
                        item.holds = false;
                        item.witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted: if in_nil(t1) { t2 } else { t1 },
                            plain: ring.mul(a, b),
                        });
                        break 'one;
                    }
                }
            }
        }
        items.push(item);

        // (2) sigma^alpha(a) b in N for some alpha  =>  ab in N.
        let mut item = ConsequenceItem {
            description: "sigma^alpha(a)*b nilpotent forces ab nilpotent",
            holds: true,
            witness: None,
        };
        'two: for a in 0..order {
            for b in 0..order {
                let plain = ring.mul(a, b);
                if in_nil(plain) {
                    continue;
                }
                for m in self.sigma_monoid() {
                    let twisted = ring.mul(m.table[a], b);
                    if in_nil(twisted) {
                        item.holds = false;
                        item.witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                        break 'two;
                    }
                }
            }
        }
        items.push(item);

        // (3) a sigma^beta(b) in N for some beta  =>  ab in N.
        let mut item = ConsequenceItem {
            description: "a*sigma^beta(b) nilpotent forces ab nilpotent",
            holds: true,
            witness: None,
        };
        'three: for a in 0..order {
            for b in 0..order {
                let plain = ring.mul(a, b);
                if in_nil(plain) {
                    continue;
                }
                for m in self.sigma_monoid() {
                    let twisted = ring.mul(a, m.table[b]);
                    if in_nil(twisted) {
                        item.holds = false;
                        item.witness = Some(CompatWitness {
                            a,
                            b,
                            exponents: m.exponents.clone(),
                            twisted,
                            plain,
                        });
                        break 'three;
                    }
                }
            }
        }
        items.push(item);

        // (4) ab in N  =>  sigma^alpha(a) delta^beta(b) in N and
        //     delta^beta(a) sigma^alpha(b) in N.
        let mut item = ConsequenceItem {
            description:
                "ab nilpotent forces sigma^alpha(a)*delta^beta(b) and delta^beta(a)*sigma^alpha(b) nilpotent",
            holds: true,
            witness: None,
        };
        'four: for a in 0..order {
            for b in 0..order {
                let plain = ring.mul(a, b);
                if !in_nil(plain) {
                    continue;
                }
                for ms in self.sigma_monoid() {
                    for md in self.delta_words() {
                        let t1 = ring.mul(ms.table[a], md.table[b]);
                        let t2 = ring.mul(md.table[a], ms.table[b]);
                        if !in_nil(t1) || !in_nil(t2) {
                            item.holds = false;
                            let mut exps = ms.exponents.clone();
                            exps.extend_from_slice(&md.exponents);
                            item.witness = Some(CompatWitness {
                                a,
                                b,
                                exponents: exps,
                                twisted: if in_nil(t1) { t2 } else { t1 },
                                plain,
                            });
                            break 'four;
                        }
                    }
                }
            }
        }
        items.push(item);

        ConsequencesReport { items }
    }
}
