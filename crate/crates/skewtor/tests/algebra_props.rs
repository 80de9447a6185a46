//! Property tests of the exterior algebra over random rational forms.

use proptest::prelude::*;

use skewtor::{rat, KForm};

fn arb_scalar() -> impl Strategy<Value = skewtor::Scalar> {
    (-12i64..=12, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn arb_form(dim: u8, degree: u8) -> impl Strategy<Value = KForm> {
    let indices: Vec<Vec<u8>> = index_tuples(dim, degree);
    proptest::collection::vec(arb_scalar(), indices.len()).prop_map(move |coeffs| {
        let mut f = KForm::zero(dim, degree);
        for (idx, c) in indices.iter().zip(coeffs) {
            f.add_term(idx, c);
        }
        f
    })
}

fn index_tuples(n: u8, k: u8) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k as usize, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(a in arb_form(6, 2), b in arb_form(6, 3)) {
        // a∧b = (-1)^{|a||b|} b∧a
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, ba); // 2·3 even
        let c = a.clone();
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap());
    }

    #[test]
    fn odd_forms_square_to_zero(a in arb_form(7, 3)) {
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative(a in arb_form(7, 1), b in arb_form(7, 2), c in arb_form(7, 2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_an_isometry(a in arb_form(6, 2), b in arb_form(6, 2)) {
        prop_assert_eq!(
            a.hodge_star().inner(&b.hodge_star()).unwrap(),
            a.inner(&b).unwrap()
        );
    }

    #[test]
    fn defining_star_identity(a in arb_form(5, 2), b in arb_form(5, 2)) {
        let lhs = a.wedge(&b.hodge_star()).unwrap();
        let rhs = KForm::volume(5).scale(&a.inner(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inner_is_positive_definite(a in arb_form(8, 3)) {
        let norm = a.inner(&a).unwrap();
        prop_assert!(norm >= skewtor::int(0));
        prop_assert_eq!(norm == skewtor::int(0), a.is_zero());
    }
}
