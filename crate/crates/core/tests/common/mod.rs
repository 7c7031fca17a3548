#![allow(dead_code)]

use alcbc_core::{Concept, Formula, Interpretation};
use proptest::prelude::*;

pub const CONCEPTS: [&str; 3] = ["A", "B", "C"];
pub const ROLES: [&str; 2] = ["r", "s"];
pub const INDIVIDUALS: [&str; 2] = ["a", "b"];

pub fn concept(depth: u32) -> BoxedStrategy<Concept> {
    let leaf = prop_oneof![
        4 => prop::sample::select(&CONCEPTS[..]).prop_map(Concept::name),
        1 => Just(Concept::top()),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    let inner = concept(depth - 1);
    leaf.prop_recursive(3, 8, 2, move |c| {
        prop_oneof![
            c.clone().prop_map(Concept::not),
            (c.clone(), c.clone()).prop_map(|(l, r)| Concept::and(l, r)),
            (c.clone(), c).prop_map(|(l, r)| Concept::or(l, r)),
            (prop::sample::select(&ROLES[..]), inner.clone()).prop_map(|(r, c)| Concept::exists(r, c)),
            (prop::sample::select(&ROLES[..]), inner.clone()).prop_map(|(r, c)| Concept::forall(r, c)),
        ]
    })
    .boxed()
}

pub fn atom() -> BoxedStrategy<Formula> {
    let ind = || prop::sample::select(&INDIVIDUALS[..]);
    prop_oneof![
        3 => (concept(1), ind()).prop_map(|(c, a)| Formula::assertion(c, a)),
        2 => (prop::sample::select(&ROLES[..]), ind(), ind()).prop_map(|(r, a, b)| Formula::role(r, a, b)),
        1 => concept(1).prop_map(Formula::eq_top),
    ]
    .boxed()
}

/// Formulae over a pool of at most `pool` distinct atoms.
pub fn formula_over(pool: usize) -> BoxedStrategy<Formula> {
    prop::collection::vec(atom(), 1..=pool)
        .prop_flat_map(|atoms| {
            let leaf = prop::sample::select(atoms);
            leaf.prop_recursive(4, 12, 2, |f| {
                prop_oneof![
                    f.clone().prop_map(Formula::not),
                    (f.clone(), f.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                    (f.clone(), f).prop_map(|(l, r)| Formula::or(l, r)),
                ]
            })
        })
        .boxed()
}

pub fn formula() -> BoxedStrategy<Formula> {
    formula_over(4)
}

/// Interpretations over `e1..en`, `n ≤ 3`, of the fixed vocabulary.
pub fn interpretation() -> BoxedStrategy<Interpretation> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<u8>(), CONCEPTS.len()),
                prop::collection::vec(any::<u16>(), ROLES.len()),
                prop::collection::vec(0..n, INDIVIDUALS.len()),
            )
        })
        .prop_map(|(n, cs, rs, inds)| {
            let el = |i: usize| format!("e{}", i + 1);
            let mut b = Interpretation::builder((0..n).map(el));
            for (name, mask) in CONCEPTS.iter().zip(cs) {
                b = b.concept(*name, (0..n).filter(|i| mask >> i & 1 == 1).map(el));
            }
            for (name, mask) in ROLES.iter().zip(rs) {
                let pairs: Vec<(String, String)> = (0..n * n)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| (el(k / n), el(k % n)))
                    .collect();
                b = b.role(*name, pairs);
            }
            for (name, x) in INDIVIDUALS.iter().zip(inds) {
                b = b.individual(*name, el(x));
            }
            b.build().unwrap()
        })
        .boxed()
}
