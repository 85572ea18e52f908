//! Property tests for the structural invariants of the arithmetic layers.

use proptest::prelude::*;

use skewpbw_core::fixtures;
use skewpbw_core::pbw::{monomials_up_to, parse_expr, Monomial, SkewPoly};
use skewpbw_core::Extension;

fn poly_from_digits(ext: &Extension, digits: &[usize]) -> SkewPoly {
    let monos = monomials_up_to(ext.n(), 2);
    let mut acc = ext.zero();
    for (m, &c) in monos.iter().zip(digits) {
        acc = acc.add(&ext.monomial(m.clone(), c % ext.base().order()));
    }
    acc
}

fn digits(len: usize, order: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..order, len)
}

proptest! {
    #[test]
    fn addition_is_an_abelian_group(a in digits(3, 4), b in digits(3, 4), c in digits(3, 4)) {
        let ext = fixtures::z4_poly();
        let (f, g, h) = (
            poly_from_digits(&ext, &a),
            poly_from_digits(&ext, &b),
            poly_from_digits(&ext, &c),
        );
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in digits(6, 8), b in digits(6, 8), c in digits(6, 8)) {
        let ext = fixtures::ut2_z2_ore();
        let (f, g, h) = (
            poly_from_digits(&ext, &a),
            poly_from_digits(&ext, &b),
            poly_from_digits(&ext, &c),
        );
        let lhs = f.add(&g).mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = h.mul(&f.add(&g)).unwrap();
        let rhs = h.mul(&f).unwrap().add(&h.mul(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_law_holds(a in digits(3, 4), b in digits(3, 4)) {
        let ext = fixtures::z4_poly();
        let f = poly_from_digits(&ext, &a);
        let g = poly_from_digits(&ext, &b);
        let p = f.mul(&g).unwrap();
        if let (Some(df), Some(dg), Some(dp)) = (f.degree(), g.degree(), p.degree()) {
            prop_assert!(dp <= df + dg);
        }
    }

    #[test]
    fn rendering_round_trips(a in digits(10, 16)) {
        let ext = fixtures::s2_z4_negate();
        let f = poly_from_digits(&ext, &a);
        let back = parse_expr(&ext, &f.to_expr_string()).unwrap();
        prop_assert_eq!(&back, &f);
        let json = SkewPoly::from_json_value(&ext, &f.to_json_value()).unwrap();
        prop_assert_eq!(&json, &f);
    }

    #[test]
    fn monomial_order_is_translation_invariant(
        a in prop::collection::vec(0u32..4, 3),
        b in prop::collection::vec(0u32..4, 3),
        c in prop::collection::vec(0u32..3, 3),
    ) {
        let ma = Monomial::from_exponents(a);
        let mb = Monomial::from_exponents(b);
        let shift = |m: &Monomial| {
            Monomial::from_exponents(
                m.exponents()
                    .iter()
                    .zip(&c)
                    .map(|(&x, &y)| x + y)
                    .collect(),
            )
        };
        prop_assert_eq!(ma.cmp(&mb), shift(&ma).cmp(&shift(&mb)));
    }

    #[test]
    fn elementwise_class_chain_on_modular_rings(n in 2usize..=20, a_seed in 0usize..400) {
        let ring = fixtures::zmod(n);
        let a = a_seed % n;
        let rep = ring.element_report(a);
        if rep.idempotent {
            prop_assert!(rep.vnr);
        }
        if rep.vnr {
            prop_assert!(rep.pi_regular && rep.vnl);
        }
        if rep.unit {
            prop_assert!(rep.vnr && rep.clean);
        }
    }
}
