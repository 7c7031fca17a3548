mod common;

use alcbc_core::change::{contract, contract_fast, expand, CellSpace};
use alcbc_core::dnf::equivalent;
use alcbc_core::verify::{check_contraction, check_expansion};
use alcbc_core::{Config, Error, Formula, Interpretation};
use common::*;
use proptest::prelude::*;

fn space(f: &Formula) -> Option<CellSpace> {
    match CellSpace::new(f, &Config::default()) {
        Ok(s) => Some(s),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

fn full(f: &Formula, m: &Interpretation) -> alcbc_core::Result<Formula> {
    contract(f, m, &Config::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_removes_exactly_one_cell(f in formula(), m in interpretation()) {
        prop_assume!(m.holds(&f).unwrap());
        let Some(space) = space(&f) else { return Ok(()) };
        let cfg = Config::default();
        let a = contract(&f, &m, &cfg).unwrap();
        let b = contract_fast(&f, &m).unwrap();
        let mut expected = space.base_cells();
        prop_assert!(expected.remove(&space.cell_of(&m).unwrap()));
        prop_assert_eq!(space.cells_of(&a).unwrap(), expected.clone());
        prop_assert_eq!(space.cells_of(&b).unwrap(), expected);
        prop_assert!(equivalent(&a, &b, &cfg).unwrap());
        prop_assert!(!m.holds(&a).unwrap() && !m.holds(&b).unwrap());
        let report = check_contraction(&f, &m, &full, &cfg).unwrap();
        prop_assert!(report.passed(), "{}", report.table());
    }

    #[test]
    fn expansion_adds_exactly_one_cell(f in formula(), m in interpretation()) {
        let Some(space) = space(&f) else { return Ok(()) };
        let cfg = Config::default();
        let e = expand(&f, &m).unwrap();
        prop_assert!(m.holds(&e).unwrap());
        let mut expected = space.base_cells();
        expected.insert(space.cell_of(&m).unwrap());
        prop_assert_eq!(space.cells_of(&e).unwrap(), expected);
        let report = check_expansion(&f, &m, &|f, m| expand(f, m), &cfg).unwrap();
        prop_assert!(report.passed(), "{}", report.table());
    }

    #[test]
    fn change_leaves_non_applicable_inputs_alone(f in formula(), m in interpretation()) {
        if m.holds(&f).unwrap() {
            prop_assert_eq!(expand(&f, &m).unwrap(), f);
        } else {
            prop_assert_eq!(contract_fast(&f, &m).unwrap(), f.clone());
            prop_assert_eq!(contract(&f, &m, &Config::default()).unwrap(), f);
        }
    }
}
