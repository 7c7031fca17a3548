//! Finite interpretations and satisfaction of concepts and formulae.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::syntax::{atoms, Concept, Formula};

/// A finite interpretation. Elements are stored by index; names are kept for
/// display and serialisation. Concept and role names that are not listed have
/// the empty extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub(crate) elements: Vec<String>,
    pub(crate) concepts: BTreeMap<String, Vec<bool>>,
    /// Sorted, deduplicated successor lists per element.
    pub(crate) roles: BTreeMap<String, Vec<Vec<usize>>>,
    pub(crate) individuals: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default)]
pub struct InterpretationBuilder {
    domain: Vec<String>,
    concepts: Vec<(String, Vec<String>)>,
    roles: Vec<(String, Vec<(String, String)>)>,
    individuals: Vec<(String, String)>,
}

impl InterpretationBuilder {
    pub fn concept<I, S>(mut self, name: impl Into<String>, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.concepts
            .push((name.into(), members.into_iter().map(Into::into).collect()));
        self
    }

    pub fn role<I, S, T>(mut self, name: impl Into<String>, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        self.roles.push((
            name.into(),
            pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        ));
        self
    }

    pub fn individual(mut self, name: impl Into<String>, element: impl Into<String>) -> Self {
        self.individuals.push((name.into(), element.into()));
        self
    }

    pub fn build(self) -> Result<Interpretation> {
        let elements: Vec<String> = self
            .domain
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if elements.is_empty() {
            return Err(Error::InvalidInterpretation("the domain is empty".into()));
        }
        let index = |e: &str, ctx: &str| -> Result<usize> {
            elements
                .binary_search_by(|x| x.as_str().cmp(e))
                .map_err(|_| Error::InvalidInterpretation(format!("`{}` in {} is not a domain element", e, ctx)))
        };
        let n = elements.len();
        let mut concepts = BTreeMap::new();
        for (name, members) in &self.concepts {
            let ext: &mut Vec<bool> = concepts.entry(name.clone()).or_insert_with(|| alloc::vec![false; n]);
            for m in members {
                ext[index(m, &format!("concept `{}`", name))?] = true;
            }
        }
        let mut roles = BTreeMap::new();
        for (name, pairs) in &self.roles {
            let succ: &mut Vec<Vec<usize>> = roles.entry(name.clone()).or_insert_with(|| alloc::vec![Vec::new(); n]);
            for (a, b) in pairs {
                let ctx = format!("role `{}`", name);
                let (x, y) = (index(a, &ctx)?, index(b, &ctx)?);
                succ[x].push(y);
            }
        }
        for succ in roles.values_mut() {
            for s in succ.iter_mut() {
                s.sort_unstable();
                s.dedup();
            }
        }
        let mut individuals = BTreeMap::new();
        for (name, e) in &self.individuals {
            let x = index(e, &format!("individual `{}`", name))?;
            if let Some(prev) = individuals.insert(name.clone(), x) {
                if prev != x {
                    return Err(Error::InvalidInterpretation(format!(
                        "individual `{}` is mapped twice",
                        name
                    )));
                }
            }
        }
        Ok(Interpretation {
            elements,
            concepts,
            roles,
            individuals,
        })
    }
}

impl Interpretation {
    pub fn builder<I, S>(domain: I) -> InterpretationBuilder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        InterpretationBuilder {
            domain: domain.into_iter().map(Into::into).collect(),
            ..InterpretationBuilder::default()
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.elements
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &str> {
        self.concepts.keys().map(String::as_str)
    }

    pub fn role_names(&self) -> impl Iterator<Item = &str> {
        self.roles.keys().map(String::as_str)
    }

    pub fn individual_names(&self) -> impl Iterator<Item = &str> {
        self.individuals.keys().map(String::as_str)
    }

    /// Members of a concept name, in domain order.
    pub fn concept_members(&self, name: &str) -> Vec<&str> {
        match self.concepts.get(name) {
            Some(ext) => ext
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| self.elements[i].as_str())
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn role_pairs(&self, name: &str) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        if let Some(succ) = self.roles.get(name) {
            for (x, ys) in succ.iter().enumerate() {
                for &y in ys {
                    out.push((self.elements[x].as_str(), self.elements[y].as_str()));
                }
            }
        }
        out
    }

    pub fn individual(&self, name: &str) -> Option<&str> {
        self.individuals.get(name).map(|&x| self.elements[x].as_str())
    }

    pub(crate) fn individual_index(&self, name: &str) -> Result<usize> {
        self.individuals
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnmappedIndividual(name.to_string()))
    }

    pub(crate) fn successors(&self, role: &str, x: usize) -> &[usize] {
        match self.roles.get(role) {
            Some(succ) => &succ[x],
            None => &[],
        }
    }

    /// Whether element `x` belongs to the extension of `c`.
    pub(crate) fn member(&self, x: usize, c: &Concept) -> bool {
        match c {
            Concept::Name(n) => self.concepts.get(n).is_some_and(|ext| ext[x]),
            Concept::Top => true,
            Concept::Not(inner) => !self.member(x, inner),
            Concept::And(l, r) => self.member(x, l) && self.member(x, r),
            Concept::Exists(r, body) => self.successors(r, x).iter().any(|&y| self.member(y, body)),
        }
    }

    /// `C^I` as element names.
    pub fn concept_extension(&self, c: &Concept) -> BTreeSet<&str> {
        (0..self.elements.len())
            .filter(|&x| self.member(x, c))
            .map(|x| self.elements[x].as_str())
            .collect()
    }

    /// `I ⊨ f`. `false` holds nowhere.
    pub fn holds(&self, f: &Formula) -> Result<bool> {
        Ok(match f {
            Formula::ConceptAssertion(c, a) => self.member(self.individual_index(a)?, c),
            Formula::RoleAssertion(r, a, b) => {
                let (x, y) = (self.individual_index(a)?, self.individual_index(b)?);
                self.successors(r, x).binary_search(&y).is_ok()
            }
            Formula::ConceptEqTop(c) => (0..self.elements.len()).all(|x| self.member(x, c)),
            Formula::Not(inner) => !self.holds(inner)?,
            Formula::And(l, r) => {
                // evaluate both sides so unmapped individuals are always reported
                let lv = self.holds(l)?;
                let rv = self.holds(r)?;
                lv && rv
            }
            Formula::Falsum => false,
        })
    }

    /// A stable textual rendering used for digests and debugging.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "domain:{}", self.elements.join(","));
        for name in self.concepts.keys() {
            let _ = write!(s, ";{}={}", name, self.concept_members(name).join(","));
        }
        for name in self.roles.keys() {
            let pairs: Vec<String> = self
                .role_pairs(name)
                .into_iter()
                .map(|(a, b)| format!("{}>{}", a, b))
                .collect();
            let _ = write!(s, ";{}={}", name, pairs.join(","));
        }
        for (name, &x) in &self.individuals {
            let _ = write!(s, ";{}@{}", name, self.elements[x]);
        }
        s
    }
}

pub fn concept_extension<'a>(c: &Concept, i: &'a Interpretation) -> BTreeSet<&'a str> {
    i.concept_extension(c)
}

pub fn holds(f: &Formula, i: &Interpretation) -> Result<bool> {
    i.holds(f)
}

/// Whether `m1` and `m2` agree on every atom of `f`, i.e. lie in the same
/// literal-equivalence class for `f`.
pub fn equiv_lit(m1: &Interpretation, m2: &Interpretation, f: &Formula) -> Result<bool> {
    for a in atoms(f) {
        if m1.holds(&a)? != m2.holds(&a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::syntax::parse_formula;

    /// The interpretation `M` used in the contraction and expansion examples.
    pub fn example_model() -> Interpretation {
        Interpretation::builder(["m", "d", "a"])
            .concept("P", ["m"])
            .concept("C", ["d", "a"])
            .role("teaches", [("m", "d")])
            .individual("Mary", "m")
            .individual("DL", "d")
            .individual("AI", "a")
            .build()
            .unwrap()
    }

    pub fn example_contract_kb() -> Formula {
        parse_formula(
            "P(Mary) /\\ C(DL) /\\ C(AI) /\\ ((teaches(Mary,DL) /\\ !teaches(Mary,AI)) \\/ (!teaches(Mary,DL) /\\ teaches(Mary,AI)))",
        )
        .unwrap()
    }

    pub fn example_expand_kb() -> Formula {
        parse_formula("P(Mary) /\\ C(DL) /\\ C(AI) /\\ teaches(Mary,AI) /\\ !teaches(Mary,DL)").unwrap()
    }

    pub fn top_role_kb() -> Formula {
        parse_formula("[C == top] /\\ !(C(a) /\\ !r(a,b))").unwrap()
    }
}
