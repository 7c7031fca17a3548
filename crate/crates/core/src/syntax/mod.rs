//! ALC concepts and formulae.
//!
//! Values are always kept in normal form: the constructors below strip double
//! negations and keep `Falsum` at the top level, so the enum variants should
//! only be built directly when the argument is already normalised.

mod closure;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

pub use closure::{
    atoms, concept_names, degree, individuals, is_in_langlit, literal_conjunction, role_names, sort_by_print,
    subconcepts, subformulae,
};
pub use parse::{parse_concept, parse_formula};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Name(String),
    Top,
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Exists(String, Box<Concept>),
}

impl Concept {
    pub fn name(name: impl Into<String>) -> Self {
        Concept::Name(name.into())
    }

    pub fn top() -> Self {
        Concept::Top
    }

    pub fn bot() -> Self {
        Concept::not(Concept::Top)
    }

    /// Negation with double negation removed.
    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        match c {
            Concept::Not(inner) => *inner,
            other => Concept::Not(Box::new(other)),
        }
    }

    pub fn and(l: Concept, r: Concept) -> Self {
        Concept::And(Box::new(l), Box::new(r))
    }

    /// `C | D` := `¬(¬C ⊓ ¬D)`.
    pub fn or(l: Concept, r: Concept) -> Self {
        Concept::not(Concept::and(Concept::not(l), Concept::not(r)))
    }

    pub fn exists(role: impl Into<String>, c: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(c))
    }

    /// `∀r.C` := `¬∃r.¬C`.
    pub fn forall(role: impl Into<String>, c: Concept) -> Self {
        Concept::not(Concept::exists(role, Concept::not(c)))
    }

    /// The normalised negation of `self`.
    pub fn negated(&self) -> Self {
        Concept::not(self.clone())
    }

    pub fn is_negation(&self) -> bool {
        matches!(self, Concept::Not(_))
    }

    /// The concept with its outer negation (if any) removed, and whether it was there.
    pub fn unsigned(&self) -> (&Concept, bool) {
        match self {
            Concept::Not(inner) => (inner, false),
            other => (other, true),
        }
    }

    /// Quantifier nesting depth.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Name(_) | Concept::Top => 0,
            Concept::Not(c) => c.depth(),
            Concept::And(l, r) => l.depth().max(r.depth()),
            Concept::Exists(_, c) => 1 + c.depth(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Concept::Name(_) | Concept::Top => 1,
            Concept::Not(c) | Concept::Exists(_, c) => 1 + c.size(),
            Concept::And(l, r) => 1 + l.size() + r.size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `C(a)`
    ConceptAssertion(Concept, String),
    /// `r(a,b)`
    RoleAssertion(String, String, String),
    /// `(C = ⊤)`
    ConceptEqTop(Concept),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// The formula without models. Only ever appears as a whole formula.
    Falsum,
}

impl Formula {
    pub fn assertion(c: Concept, individual: impl Into<String>) -> Self {
        Formula::ConceptAssertion(c, individual.into())
    }

    pub fn role(role: impl Into<String>, subject: impl Into<String>, object: impl Into<String>) -> Self {
        Formula::RoleAssertion(role.into(), subject.into(), object.into())
    }

    pub fn eq_top(c: Concept) -> Self {
        Formula::ConceptEqTop(c)
    }

    /// `C ⊑ D` encoded as `(¬C ⊔ D = ⊤)`.
    pub fn subsumption(sub: Concept, sup: Concept) -> Self {
        Formula::ConceptEqTop(Concept::or(Concept::not(sub), sup))
    }

    /// `[top == top]`, the canonical tautology.
    pub fn tautology() -> Self {
        Formula::ConceptEqTop(Concept::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        match f {
            Formula::Not(inner) => *inner,
            Formula::Falsum => Formula::tautology(),
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        if l == Formula::Falsum || r == Formula::Falsum {
            return Formula::Falsum;
        }
        Formula::And(Box::new(l), Box::new(r))
    }

    /// `φ ∨ ψ` := `¬(¬φ ∧ ¬ψ)`; `false` is the unit.
    pub fn or(l: Formula, r: Formula) -> Self {
        match (l, r) {
            (Formula::Falsum, other) | (other, Formula::Falsum) => other,
            (l, r) => Formula::not(Formula::and(Formula::not(l), Formula::not(r))),
        }
    }

    /// Left-associated conjunction; the empty conjunction is the tautology.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::tautology)
    }

    /// Left-associated disjunction; the empty disjunction is `false`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().fold(Formula::Falsum, Formula::or)
    }

    pub fn negated(&self) -> Self {
        Formula::not(self.clone())
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self,
            Formula::ConceptAssertion(..) | Formula::RoleAssertion(..) | Formula::ConceptEqTop(_)
        )
    }

    /// An atom or a negated atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Not(inner) => inner.is_atom(),
            other => other.is_atom(),
        }
    }

    /// The formula with its outer negation (if any) removed, and whether it was there.
    pub fn unsigned(&self) -> (&Formula, bool) {
        match self {
            Formula::Not(inner) => (inner, false),
            other => (other, true),
        }
    }

    /// Leaves of the left-associated conjunction spine.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Formula::And(l, r) = cur {
            out.push(&**r);
            cur = l;
        }
        out.push(cur);
        out.reverse();
        out
    }

    /// Drop repeated literals from every conjunction spine; nothing else changes.
    pub fn dedup_literals(&self) -> Formula {
        match self {
            Formula::Not(inner) => Formula::not(inner.dedup_literals()),
            Formula::And(..) => {
                let mut seen: Vec<Formula> = Vec::new();
                let mut kept = Vec::new();
                for c in self.conjuncts() {
                    if c.is_literal() {
                        if seen.contains(c) {
                            continue;
                        }
                        seen.push(c.clone());
                        kept.push(c.clone());
                    } else {
                        kept.push(c.dedup_literals());
                    }
                }
                Formula::conjunction(kept)
            }
            other => other.clone(),
        }
    }
}
