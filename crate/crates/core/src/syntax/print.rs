//! Text rendering in the surface grammar. Re-parsing the output yields the
//! same tree, including the association of `/\` and `\/` chains.

use alloc::vec::Vec;
use core::fmt::{self, Display, Formatter, Write};

use super::{Concept, Formula};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Disj,
    Conj,
    Unit,
}

/// If `node` is `¬(l1 ∧ ... ∧ ln)` along a left spine with every leaf a negation
/// (n ≥ 2), the disjuncts `d1 .. dn` where `li = ¬di`.
fn formula_disjuncts(node: &Formula) -> Option<Vec<&Formula>> {
    let Formula::Not(inner) = node else { return None };
    if !matches!(**inner, Formula::And(..)) {
        return None;
    }
    inner
        .conjuncts()
        .into_iter()
        .map(|leaf| match leaf {
            Formula::Not(d) => Some(&**d),
            _ => None,
        })
        .collect()
}

fn concept_spine(c: &Concept) -> Vec<&Concept> {
    let mut out = Vec::new();
    let mut cur = c;
    while let Concept::And(l, r) = cur {
        out.push(&**r);
        cur = l;
    }
    out.push(cur);
    out.reverse();
    out
}

fn concept_disjuncts(node: &Concept) -> Option<Vec<&Concept>> {
    let Concept::Not(inner) = node else { return None };
    if !matches!(**inner, Concept::And(..)) {
        return None;
    }
    concept_spine(inner)
        .into_iter()
        .map(|leaf| match leaf {
            Concept::Not(d) => Some(&**d),
            _ => None,
        })
        .collect()
}

fn write_concept(out: &mut dyn Write, c: &Concept, level: Level) -> fmt::Result {
    if let Some(ds) = concept_disjuncts(c) {
        if level > Level::Disj {
            out.write_char('(')?;
        }
        for (i, d) in ds.iter().enumerate() {
            if i > 0 {
                out.write_str(" | ")?;
            }
            write_concept(out, d, if i == 0 { Level::Disj } else { Level::Conj })?;
        }
        if level > Level::Disj {
            out.write_char(')')?;
        }
        return Ok(());
    }
    match c {
        Concept::Name(n) => out.write_str(n),
        Concept::Top => out.write_str("top"),
        Concept::Not(inner) => match &**inner {
            Concept::Top => out.write_str("bot"),
            Concept::Exists(r, body) if body.is_negation() => {
                let Concept::Not(pos) = &**body else { unreachable!() };
                write!(out, "forall {}.", r)?;
                write_concept(out, pos, Level::Unit)
            }
            other => {
                out.write_char('~')?;
                write_concept(out, other, Level::Unit)
            }
        },
        Concept::And(l, r) => {
            if level > Level::Conj {
                out.write_char('(')?;
            }
            write_concept(out, l, Level::Conj)?;
            out.write_str(" & ")?;
            write_concept(out, r, Level::Unit)?;
            if level > Level::Conj {
                out.write_char(')')?;
            }
            Ok(())
        }
        Concept::Exists(r, body) => {
            write!(out, "exists {}.", r)?;
            write_concept(out, body, Level::Unit)
        }
    }
}

fn write_formula(out: &mut dyn Write, f: &Formula, level: Level) -> fmt::Result {
    if let Some(ds) = formula_disjuncts(f) {
        if level > Level::Disj {
            out.write_char('(')?;
        }
        for (i, d) in ds.iter().enumerate() {
            if i > 0 {
                out.write_str(" \\/ ")?;
            }
            write_formula(out, d, if i == 0 { Level::Disj } else { Level::Conj })?;
        }
        if level > Level::Disj {
            out.write_char(')')?;
        }
        return Ok(());
    }
    match f {
        Formula::ConceptAssertion(c, a) => {
            if let Concept::Name(n) = c {
                write!(out, "{}({})", n, a)
            } else {
                out.write_char('(')?;
                write_concept(out, c, Level::Disj)?;
                write!(out, ")({})", a)
            }
        }
        Formula::RoleAssertion(r, a, b) => write!(out, "{}({},{})", r, a, b),
        Formula::ConceptEqTop(c) => {
            if concept_disjuncts(c).is_none() {
                if let Concept::Not(inner) = c {
                    if let Concept::And(l, r) = &**inner {
                        if let Concept::Not(sup) = &**r {
                            out.write_char('[')?;
                            write_concept(out, l, Level::Disj)?;
                            out.write_str(" <= ")?;
                            write_concept(out, sup, Level::Disj)?;
                            return out.write_char(']');
                        }
                    }
                }
            }
            out.write_char('[')?;
            write_concept(out, c, Level::Disj)?;
            out.write_str(" == top]")
        }
        Formula::Not(inner) => {
            out.write_char('!')?;
            write_formula(out, inner, Level::Unit)
        }
        Formula::And(l, r) => {
            if level > Level::Conj {
                out.write_char('(')?;
            }
            write_formula(out, l, Level::Conj)?;
            out.write_str(" /\\ ")?;
            write_formula(out, r, Level::Unit)?;
            if level > Level::Conj {
                out.write_char(')')?;
            }
            Ok(())
        }
        Formula::Falsum => out.write_str("false"),
    }
}

impl Display for Concept {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_concept(f, self, Level::Disj)
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, Level::Disj)
    }
}
