//! Subformula and subconcept closures and simple measures over formulae.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Concept, Formula};
use crate::error::{Error, Result};

/// `sub(φ)`: the subformulae of `φ`, closed under single negation.
pub fn subformulae(f: &Formula) -> Result<BTreeSet<Formula>> {
    let mut out = BTreeSet::new();
    collect_sub(f, &mut out)?;
    Ok(out)
}

fn collect_sub(f: &Formula, out: &mut BTreeSet<Formula>) -> Result<()> {
    let (pos, _) = f.unsigned();
    match pos {
        Formula::Falsum => return Err(Error::FalsumUnsupported),
        Formula::And(l, r) => {
            if !out.insert(pos.clone()) {
                return Ok(());
            }
            out.insert(pos.negated());
            collect_sub(l, out)?;
            collect_sub(r, out)?;
        }
        Formula::Not(_) => unreachable!("normalised formulae have no double negation"),
        atom => {
            out.insert(atom.clone());
            out.insert(atom.negated());
        }
    }
    Ok(())
}

/// `con(φ)`: the least set containing the concepts of every concept assertion
/// and `(C = ⊤)` atom of `sub(φ)`, closed under conjuncts, existential fillers
/// and single negation.
pub fn subconcepts(f: &Formula) -> Result<BTreeSet<Concept>> {
    let mut out = BTreeSet::new();
    for g in subformulae(f)? {
        match g {
            Formula::ConceptAssertion(c, _) | Formula::ConceptEqTop(c) => collect_con(&c, &mut out),
            _ => {}
        }
    }
    Ok(out)
}

fn collect_con(c: &Concept, out: &mut BTreeSet<Concept>) {
    let (pos, _) = c.unsigned();
    if !out.insert(pos.clone()) {
        return;
    }
    out.insert(pos.negated());
    match pos {
        Concept::And(l, r) => {
            collect_con(l, out);
            collect_con(r, out);
        }
        Concept::Exists(_, body) => collect_con(body, out),
        Concept::Name(_) | Concept::Top => {}
        Concept::Not(_) => unreachable!("normalised concepts have no double negation"),
    }
}

pub fn degree(f: &Formula) -> Result<usize> {
    Ok(match f {
        Formula::Falsum => return Err(Error::FalsumUnsupported),
        Formula::Not(inner) => degree(inner)? + 1,
        Formula::And(l, r) => degree(l)? + degree(r)?,
        _ => 1,
    })
}

/// The atomic subformulae of `f`. `false` has none.
pub fn atoms(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_atoms(f, &mut out);
    out
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::Not(inner) => collect_atoms(inner, out),
        Formula::And(l, r) => {
            collect_atoms(l, out);
            collect_atoms(r, out);
        }
        Formula::Falsum => {}
        atom => {
            out.insert(atom.clone());
        }
    }
}

/// Whether `g` is a boolean combination of atoms of `f`.
pub fn is_in_langlit(g: &Formula, f: &Formula) -> bool {
    let base = atoms(f);
    atoms(g).iter().all(|a| base.contains(a))
}

pub fn individuals(f: &Formula) -> BTreeSet<String> {
    atoms(f)
        .into_iter()
        .flat_map(|a| match a {
            Formula::ConceptAssertion(_, i) => alloc::vec![i],
            Formula::RoleAssertion(_, x, y) => alloc::vec![x, y],
            _ => Vec::new(),
        })
        .collect()
}

fn concept_symbols(c: &Concept, names: &mut BTreeSet<String>, roles: &mut BTreeSet<String>) {
    match c {
        Concept::Name(n) => {
            names.insert(n.clone());
        }
        Concept::Top => {}
        Concept::Not(x) => concept_symbols(x, names, roles),
        Concept::And(l, r) => {
            concept_symbols(l, names, roles);
            concept_symbols(r, names, roles);
        }
        Concept::Exists(r, x) => {
            roles.insert(r.clone());
            concept_symbols(x, names, roles);
        }
    }
}

fn symbols(f: &Formula) -> (BTreeSet<String>, BTreeSet<String>) {
    let (mut names, mut roles) = (BTreeSet::new(), BTreeSet::new());
    for a in atoms(f) {
        match a {
            Formula::ConceptAssertion(c, _) | Formula::ConceptEqTop(c) => concept_symbols(&c, &mut names, &mut roles),
            Formula::RoleAssertion(r, _, _) => {
                roles.insert(r);
            }
            _ => {}
        }
    }
    (names, roles)
}

pub fn concept_names(f: &Formula) -> BTreeSet<String> {
    symbols(f).0
}

pub fn role_names(f: &Formula) -> BTreeSet<String> {
    symbols(f).1
}

/// Sort by printed form, the canonical order for anything user-visible.
pub fn sort_by_print<'a, I: IntoIterator<Item = &'a Formula>>(items: I) -> Vec<Formula> {
    let mut keyed: Vec<(String, Formula)> = items.into_iter().map(|f| (f.to_string(), f.clone())).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, f)| f).collect()
}

/// `⋀ lits` in canonical order.
pub fn literal_conjunction<'a, I: IntoIterator<Item = &'a Formula>>(lits: I) -> Formula {
    Formula::conjunction(sort_by_print(lits))
}
