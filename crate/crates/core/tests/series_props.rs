//! Property tests for truncated Laurent series over the rationals.

use jetoper::series::TruncLaurent;
use jetoper::Q;
use num_traits::Zero;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = TruncLaurent> {
    (-3i64..3, prop::collection::vec((-20i64..20, 1i64..6), 1..6)).prop_map(|(v, cs)| {
        let coeffs = cs.into_iter().map(|(p, q)| Q::new(p.into(), q.into())).collect();
        TruncLaurent::new(v, coeffs).unwrap()
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero_in_window());
    }

    #[test]
    fn product_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        let ab = a.mul(&b);
        prop_assert!(ab.agrees_with(&b.mul(&a)));
        prop_assert_eq!(ab.precision(), b.mul(&a).precision());
        let l = ab.mul(&c);
        let r = a.mul(&b.mul(&c));
        prop_assert!(l.agrees_with(&r));
        prop_assert_eq!(l.precision(), r.precision());
    }

    #[test]
    fn product_distributes(a in series(), b in series(), c in series()) {
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn product_precision_rule(a in series(), b in series()) {
        let expected = (a.precision() + b.valuation()).min(b.precision() + a.valuation());
        prop_assert_eq!(a.mul(&b).precision(), expected);
    }

    #[test]
    fn leibniz_rule(a in series(), b in series()) {
        let l = a.mul(&b).derivative();
        let r = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn derivatives_have_no_residue(a in series()) {
        let d = a.derivative();
        if d.precision() > -1 {
            prop_assert!(d.residue_coeff().unwrap().is_zero());
        } else {
            prop_assert!(d.residue_coeff().is_err());
        }
    }

    #[test]
    fn shift_is_multiplication_by_a_monomial(a in series(), k in -4i64..4) {
        let m = TruncLaurent::monomial(k, Q::from_integer(1.into()), k + 40);
        prop_assert!(a.shift(k).agrees_with(&a.mul(&m)));
    }

    #[test]
    fn truncation_commutes_with_addition(a in series(), b in series()) {
        let n = a.precision().min(b.precision());
        let l = a.add(&b).truncate(n - 1).unwrap();
        let r = a.truncate(n - 1).unwrap().add(&b.truncate(n - 1).unwrap());
        prop_assert!(l.agrees_with(&r));
        prop_assert_eq!(l.precision(), r.precision());
    }
}
