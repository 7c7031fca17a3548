//! The DNF translation `φ†` and equivalence checking.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::config::Config;
use crate::error::Result;
use crate::syntax::{literal_conjunction, Formula};
use crate::typesys::{FormulaType, Reasoner};

/// `lit(f)`: the atoms and negated atoms of a formula type.
pub fn lit(ft: &FormulaType) -> BTreeSet<Formula> {
    ft.lits()
}

/// `⋀ lit(f)` in canonical literal order.
pub fn lit_conjunction(ft: &FormulaType) -> Formula {
    literal_conjunction(&ft.lits())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfResult {
    /// One entry per formula type with a quasimodel, sorted by the printed conjunction.
    pub disjuncts: Vec<(FormulaType, Formula)>,
    pub formula: Formula,
}

impl DnfResult {
    /// One line per disjunct prefixed by `| `, or `false`.
    pub fn render(&self) -> String {
        if self.disjuncts.is_empty() {
            return "false\n".to_string();
        }
        let mut out = String::new();
        for (_, d) in &self.disjuncts {
            out.push_str("| ");
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }
}

/// `ftypes(φ)`: the formula types of `τ(φ)` that have a quasimodel. Empty for `false`.
pub fn ftypes(f: &Formula, config: &Config) -> Result<Vec<FormulaType>> {
    if *f == Formula::Falsum {
        return Ok(Vec::new());
    }
    Reasoner::new(f, config)?.ftypes()
}

pub fn dnf_from_ftypes(types: Vec<FormulaType>) -> DnfResult {
    let mut disjuncts: Vec<(String, FormulaType, Formula)> = types
        .into_iter()
        .map(|ft| {
            let c = lit_conjunction(&ft);
            (c.to_string(), ft, c)
        })
        .collect();
    disjuncts.sort_by(|a, b| a.0.cmp(&b.0));
    disjuncts.dedup_by(|a, b| a.0 == b.0);
    let formula = Formula::disjunction(disjuncts.iter().map(|d| d.2.clone()));
    DnfResult {
        disjuncts: disjuncts.into_iter().map(|(_, ft, c)| (ft, c)).collect(),
        formula,
    }
}

/// `φ†`: the disjunction over `ftypes(φ)` of `⋀ lit(f)`; `false` when there is none.
pub fn dnf_translate(f: &Formula, config: &Config) -> Result<DnfResult> {
    Ok(dnf_from_ftypes(ftypes(f, config)?))
}

/// Whether `(f ∧ ¬g) ∨ (g ∧ ¬f)` is unsatisfiable.
pub fn equivalent(f: &Formula, g: &Formula, config: &Config) -> Result<bool> {
    if f == g {
        return Ok(true);
    }
    let diff = difference(f, g);
    Ok(!crate::typesys::satisfiable(&diff, config)?)
}

/// `(f ∧ ¬g) ∨ (g ∧ ¬f)`.
pub fn difference(f: &Formula, g: &Formula) -> Formula {
    Formula::or(
        Formula::and(f.clone(), g.negated()),
        Formula::and(g.clone(), f.negated()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::fixtures::*;
    use crate::syntax::parse_formula;

    fn parse(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn top_role_translation() {
        let phi = top_role_kb();
        let d = dnf_translate(&phi, &Config::paper()).unwrap();
        let printed: Vec<String> = d.disjuncts.iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(
            printed,
            [
                "!C(a) /\\ !r(a,b) /\\ [C == top]",
                "!C(a) /\\ [C == top] /\\ r(a,b)",
                "C(a) /\\ [C == top] /\\ r(a,b)"
            ]
        );
        assert!(equivalent(&phi, &d.formula, &Config::default()).unwrap());
    }

    #[test]
    fn trivial_translations() {
        let cfg = Config::default();
        assert_eq!(
            dnf_translate(&parse("P(m) /\\ !P(m)"), &cfg).unwrap().formula,
            Formula::Falsum
        );
        assert_eq!(dnf_translate(&parse("P(m)"), &cfg).unwrap().formula, parse("P(m)"));
        assert_eq!(
            dnf_translate(&parse("P(m) /\\ !P(m)"), &cfg).unwrap().render(),
            "false\n"
        );
    }

    #[test]
    fn example_two_has_two_types() {
        let phi = example_contract_kb();
        let cfg = Config::default();
        assert_eq!(ftypes(&phi, &cfg).unwrap().len(), 2);
        let d = dnf_translate(&phi, &cfg).unwrap();
        assert!(equivalent(&phi, &d.formula, &cfg).unwrap());
    }

    #[test]
    fn equivalence() {
        let cfg = Config::default();
        assert!(equivalent(&parse("P(m)"), &parse("P(m)"), &cfg).unwrap());
        assert!(!equivalent(&parse("P(m)"), &parse("Q(m)"), &cfg).unwrap());
        assert!(equivalent(&parse("[A <= B] /\\ A(a)"), &parse("[A <= B] /\\ A(a) /\\ B(a)"), &cfg).unwrap());
        assert!(equivalent(
            &parse("(forall r.A)(a) /\\ r(a,b)"),
            &parse("(forall r.A)(a) /\\ r(a,b) /\\ A(b)"),
            &cfg
        )
        .unwrap());
        assert!(equivalent(&Formula::Falsum, &parse("P(m) /\\ !P(m)"), &cfg).unwrap());
    }
}
