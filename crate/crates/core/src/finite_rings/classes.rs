//! Exhaustively decided ring-level and element-level classification flags.

use serde::Serialize;

use super::{FiniteRing, IdealDescriptor, Sidedness};

/// Ring-class flags, each decided by exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingClassReport {
    /// No nonzero nilpotent elements.
    pub reduced: bool,
    /// `ab = 0` implies `aRb = 0`.
    pub semicommutative: bool,
    /// The nilpotent elements form a two-sided ideal (equivalently, they
    /// coincide with the upper nil radical).
    pub ni: bool,
    /// Jacobson radical equals the nilpotent set.
    pub nj: bool,
    /// Every idempotent is central.
    pub abelian: bool,
    /// Every right ideal is two-sided (`Ra` contained in `aR` for all `a`).
    pub right_duo: bool,
    pub left_duo: bool,
    /// Every element is idempotent.
    pub boolean: bool,
    pub von_neumann_regular: bool,
    pub pi_regular: bool,
    pub clean: bool,
    /// The non-units are closed under addition (unique maximal right ideal).
    pub local: bool,
}

/// Element-class flags, each decided by exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementClassReport {
    pub unit: bool,
    pub nilpotent: bool,
    pub idempotent: bool,
    /// `a = a r a` for some `r`.
    pub vnr: bool,
    /// `a^m = a^m r a^m` for some `r` and some `m <= order`.
    pub pi_regular: bool,
    /// `a` or `1 - a` is von Neumann regular.
    pub vnl: bool,
    /// `a = u + e` with `u` a unit and `e` idempotent.
    pub clean: bool,
}

impl FiniteRing {
    pub fn class_report(&self) -> RingClassReport {
        let nil = self.nilpotents();
        let reduced = nil.len() == 1;
        let semicommutative = self.elements().all(|a| {
            self.elements().all(|b| {
                self.mul(a, b) != self.zero()
                    || self.elements().all(|r| self.mul(self.mul(a, r), b) == self.zero())
            })
        });
        let ni = IdealDescriptor::new(self.clone(), Sidedness::TwoSided, nil.clone()).is_ok();
        let nj = self.jacobson_radical().elements() == nil;
        let abelian = self.idempotents().iter().all(|&e| self.is_central(e));
        let right_duo = self.elements().all(|a| {
            self.elements().all(|r| {
                let ra = self.mul(r, a);
                self.elements().any(|s| self.mul(a, s) == ra)
            })
        });
        let left_duo = self.elements().all(|a| {
            self.elements().all(|r| {
                let ar = self.mul(a, r);
                self.elements().any(|s| self.mul(s, a) == ar)
            })
        });
        let boolean = self.elements().all(|a| self.is_idempotent(a));
        let mut von_neumann_regular = true;
        let mut pi_regular = true;
        let mut clean = true;
        for a in self.elements() {
            let rep = self.element_report(a);
            von_neumann_regular &= rep.vnr;
            pi_regular &= rep.pi_regular;
            clean &= rep.clean;
        }
        let local = self.elements().all(|a| {
            self.is_unit(a)
                || self
                    .elements()
                    .all(|b| self.is_unit(b) || !self.is_unit(self.add(a, b)))
        });
        RingClassReport {
            reduced,
            semicommutative,
            ni,
            nj,
            abelian,
            right_duo,
            left_duo,
            boolean,
            von_neumann_regular,
            pi_regular,
            clean,
            local,
        }
    }

    pub fn element_report(&self, a: usize) -> ElementClassReport {
        let unit = self.is_unit(a);
        let nilpotent = self.is_nilpotent(a);
        let idempotent = self.is_idempotent(a);
        let vnr_of = |x: usize| {
            self.elements()
                .any(|r| self.mul(self.mul(x, r), x) == x)
        };
        let vnr = vnr_of(a);
        let pi_regular = {
            let mut p = a;
            let mut found = false;
            for _ in 1..=self.order() {
                if self.elements().any(|r| self.mul(self.mul(p, r), p) == p) {
                    found = true;
                    break;
                }
                p = self.mul(p, a);
            }
            found
        };
        let vnl = vnr || vnr_of(self.sub(self.one(), a));
        let clean = self
            .idempotents()
            .iter()
            .any(|&e| self.is_unit(self.sub(a, e)));
        ElementClassReport {
            unit,
            nilpotent,
            idempotent,
            vnr,
            pi_regular,
            vnl,
            clean,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_ring, RingSpec};
    use super::*;

    fn zmod(n: usize) -> FiniteRing {
        build_ring(&RingSpec::Zmod { n }).unwrap()
    }

    fn ut2_z2() -> FiniteRing {
        build_ring(&RingSpec::Ut2 {
            base: Box::new(RingSpec::Zmod { n: 2 }),
        })
        .unwrap()
    }

    #[test]
    fn zmod4_flags() {
        let rep = zmod(4).class_report();
        assert!(!rep.reduced);
        assert!(rep.ni);
        assert!(rep.clean);
        assert!(rep.local);
        assert!(rep.nj);
        assert!(!rep.boolean);
    }

    #[test]
    fn ut2_z2_flags() {
        let rep = ut2_z2().class_report();
        assert!(!rep.abelian); // E11 is idempotent but not central
        assert!(rep.ni); // strict uppers form an ideal
        assert!(!rep.reduced);
    }

    #[test]
    fn z2_x_z2_flags() {
        let r = build_ring(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 2 }],
        })
        .unwrap();
        let rep = r.class_report();
        assert!(rep.boolean);
        assert!(rep.von_neumann_regular);
        assert!(!rep.local);
    }

    #[test]
    fn element_reports() {
        let z4 = zmod(4);
        let two = z4.element_report(2);
        assert!(two.nilpotent && two.pi_regular && two.clean);
        assert!(!two.unit && !two.vnr);
        let one = z4.element_report(1);
        assert!(one.unit && one.vnr && one.clean);

        let z6 = zmod(6);
        let three = z6.element_report(3);
        assert!(three.idempotent && three.vnr);
    }

    #[test]
    fn class_implication_chain() {
        // reduced => semicommutative => NI, and the elementwise chain
        // idempotent => vnr => pi-regular, on a spread of small rings.
        let mut rings = vec![
            zmod(2),
            zmod(3),
            zmod(4),
            zmod(6),
            zmod(8),
            zmod(12),
            ut2_z2(),
        ];
        rings.push(
            build_ring(&RingSpec::S2 {
                base: Box::new(RingSpec::Zmod { n: 4 }),
            })
            .unwrap(),
        );
        for r in rings {
            let rep = r.class_report();
            if rep.reduced {
                assert!(rep.semicommutative, "{}", r.describe());
            }
            if rep.semicommutative {
                assert!(rep.ni, "{}", r.describe());
            }
            if rep.boolean {
                assert!(rep.von_neumann_regular);
            }
            if rep.von_neumann_regular {
                assert!(rep.pi_regular);
            }
            if rep.ni {
                let jac = r.jacobson_radical();
                assert!(r.nilpotents().iter().all(|a| jac.contains(*a)));
            }
            for a in r.elements() {
                let e = r.element_report(a);
                if e.idempotent {
                    assert!(e.vnr);
                }
                if e.vnr {
                    assert!(e.pi_regular && e.vnl);
                }
            }
        }
    }
}
