mod common;

use alcbc_core::dnf::{dnf_translate, equivalent};
use alcbc_core::verify::{oracle_equiv_check, Evidence};
use alcbc_core::{Config, Error, Formula};
use common::*;
use proptest::prelude::*;

fn within_caps<T>(r: Result<T, Error>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn translation_is_equivalent(f in formula()) {
        let cfg = Config::default();
        let Some(d) = within_caps(dnf_translate(&f, &cfg)) else { return Ok(()) };
        prop_assert!(equivalent(&f, &d.formula, &cfg).unwrap(), "{} vs {}", f, d.formula);
        for (ft, disjunct) in &d.disjuncts {
            prop_assert!(ft.contains(&f));
            let probe = Formula::and(disjunct.clone(), f.negated());
            prop_assert!(!alcbc_core::typesys::satisfiable(&probe, &cfg).unwrap());
        }
        for (i, (a, _)) in d.disjuncts.iter().enumerate() {
            for (b, _) in &d.disjuncts[i + 1..] {
                prop_assert_ne!(a.lits(), b.lits());
            }
        }
    }

    #[test]
    fn translation_is_idempotent_up_to_equivalence(f in formula_over(3)) {
        let cfg = Config::default();
        let Some(d) = within_caps(dnf_translate(&f, &cfg)) else { return Ok(()) };
        if d.formula == Formula::Falsum {
            return Ok(());
        }
        let dd = dnf_translate(&d.formula, &cfg).unwrap();
        prop_assert!(equivalent(&d.formula, &dd.formula, &cfg).unwrap());
    }

    #[test]
    fn oracle_never_refutes_translation(f in formula_over(3)) {
        let cfg = Config::default();
        let Some(d) = within_caps(dnf_translate(&f, &cfg)) else { return Ok(()) };
        let Some(check) = within_caps(oracle_equiv_check(&f, &d.formula, 2, &cfg)) else { return Ok(()) };
        prop_assert!(check.equivalent, "{:?}", check.evidence);
        prop_assert_eq!(check.evidence, Evidence::AgreeUpTo(2));
    }
}
