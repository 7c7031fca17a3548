use std::collections::BTreeSet;

use alcbc_core::propositional::*;
use proptest::prelude::*;

fn signature(n: usize) -> PropSignature {
    PropSignature::new((0..n).map(|i| format!("p{i}"))).unwrap()
}

fn prop_formula(n: usize) -> BoxedStrategy<PropFormula> {
    let leaf = prop_oneof![
        6 => (0..n).prop_map(|i| PropFormula::atom(format!("p{i}"))),
        1 => Just(PropFormula::Top),
        1 => Just(PropFormula::Bot),
    ];
    leaf.prop_recursive(4, 16, 2, |f| {
        prop_oneof![
            f.clone().prop_map(PropFormula::not),
            (f.clone(), f.clone()).prop_map(|(l, r)| PropFormula::and(l, r)),
            (f.clone(), f).prop_map(|(l, r)| PropFormula::or(l, r)),
        ]
    })
    .boxed()
}

proptest! {
    #[test]
    fn representation_is_exact(n in 1usize..=6, mask in any::<u64>()) {
        let sig = signature(n);
        let set: BTreeSet<PropModel> = sig.models().filter(|m| mask >> m.0 & 1 == 1).collect();
        prop_assert_eq!(fr_prop(&set, &sig).models(&sig).unwrap(), set);
    }

    #[test]
    fn entailment_is_model_inclusion((b, c) in (prop_formula(3), prop_formula(3))) {
        let sig = signature(3);
        let inclusion = b.models(&sig).unwrap().is_subset(&c.models(&sig).unwrap());
        prop_assert_eq!(entails(&b, &c, &sig).unwrap(), inclusion);
    }

    #[test]
    fn printing_round_trips(f in prop_formula(3)) {
        let sig = signature(3);
        prop_assert_eq!(parse_prop(&f.to_string(), &sig).unwrap(), f);
    }

    #[test]
    fn change_postulates_on_random_bases(b in prop_formula(4), bits in 0u32..16) {
        let sig = signature(4);
        let m = PropModel(bits);
        let con = check_prop_contraction(&prop_contract, &b, m, &sig).unwrap();
        prop_assert!(con.iter().all(|v| v.1), "{:?}", con);
        let exp = check_prop_expansion(&prop_expand, &b, m, &sig).unwrap();
        prop_assert!(exp.iter().all(|v| v.1), "{:?}", exp);
    }
}
