//! Finite-signature propositional logic as an ideal logical system.
//!
//! Every set of models is represented exactly by its full-literal DNF, so
//! contraction and expansion are computed directly on model sets.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub const MAX_PROP_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropSignature {
    atoms: Vec<String>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PropSignature {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() || atoms.len() > MAX_PROP_ATOMS {
            return Err(Error::Propositional(format!(
                "a signature needs between 1 and {} atoms, got {}",
                MAX_PROP_ATOMS,
                atoms.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !is_ident(a) || matches!(a.as_str(), "true" | "false") {
                return Err(Error::Propositional(format!("invalid atom name `{}`", a)));
            }
            if !seen.insert(a.as_str()) {
                return Err(Error::Propositional(format!("atom `{}` listed twice", a)));
            }
        }
        Ok(PropSignature { atoms })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// All `2^|Σ|` models in ascending bit order.
    pub fn models(&self) -> impl Iterator<Item = PropModel> {
        (0..1u32 << self.atoms.len()).map(PropModel)
    }
}

/// A total assignment; bit `i` is the value of the `i`-th signature atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropModel(pub u32);

impl PropModel {
    pub fn from_pairs<'a, I>(sig: &PropSignature, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, bool)>,
    {
        let mut bits = 0u32;
        let mut set = 0u32;
        for (name, value) in pairs {
            let i = sig
                .index(name)
                .ok_or_else(|| Error::Propositional(format!("atom `{}` is not in the signature", name)))?;
            if set & (1 << i) != 0 {
                return Err(Error::Propositional(format!("atom `{}` assigned twice", name)));
            }
            set |= 1 << i;
            if value {
                bits |= 1 << i;
            }
        }
        if set.count_ones() as usize != sig.len() {
            let missing: Vec<&str> = (0..sig.len())
                .filter(|i| set & (1 << i) == 0)
                .map(|i| sig.atoms[i].as_str())
                .collect();
            return Err(Error::Propositional(format!(
                "model is not total, missing {}",
                missing.join(",")
            )));
        }
        Ok(PropModel(bits))
    }

    pub fn value(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Atom(String),
    Top,
    Bot,
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        PropFormula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        PropFormula::Not(Box::new(f))
    }

    pub fn and(l: PropFormula, r: PropFormula) -> Self {
        PropFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: PropFormula, r: PropFormula) -> Self {
        PropFormula::Or(Box::new(l), Box::new(r))
    }

    fn check(&self, sig: &PropSignature) -> Result<()> {
        match self {
            PropFormula::Atom(a) if sig.index(a).is_none() => {
                Err(Error::Propositional(format!("atom `{}` is not in the signature", a)))
            }
            PropFormula::Not(x) => x.check(sig),
            PropFormula::And(l, r) | PropFormula::Or(l, r) => {
                l.check(sig)?;
                r.check(sig)
            }
            _ => Ok(()),
        }
    }

    fn eval_unchecked(&self, sig: &PropSignature, m: PropModel) -> bool {
        match self {
            PropFormula::Atom(a) => m.value(sig.index(a).expect("checked")),
            PropFormula::Top => true,
            PropFormula::Bot => false,
            PropFormula::Not(x) => !x.eval_unchecked(sig, m),
            PropFormula::And(l, r) => l.eval_unchecked(sig, m) && r.eval_unchecked(sig, m),
            PropFormula::Or(l, r) => l.eval_unchecked(sig, m) || r.eval_unchecked(sig, m),
        }
    }

    pub fn eval(&self, sig: &PropSignature, m: PropModel) -> Result<bool> {
        self.check(sig)?;
        Ok(self.eval_unchecked(sig, m))
    }

    /// `Mod(self)` by truth table.
    pub fn models(&self, sig: &PropSignature) -> Result<BTreeSet<PropModel>> {
        self.check(sig)?;
        Ok(sig.models().filter(|&m| self.eval_unchecked(sig, m)).collect())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Or,
    And,
    Unit,
}

fn write_prop(out: &mut fmt::Formatter<'_>, f: &PropFormula, level: Level) -> fmt::Result {
    match f {
        PropFormula::Atom(a) => out.write_str(a),
        PropFormula::Top => out.write_str("true"),
        PropFormula::Bot => out.write_str("false"),
        PropFormula::Not(x) => {
            out.write_str("!")?;
            write_prop(out, x, Level::Unit)
        }
        PropFormula::And(l, r) | PropFormula::Or(l, r) => {
            let (mine, op) = if matches!(f, PropFormula::And(..)) {
                (Level::And, " /\\ ")
            } else {
                (Level::Or, " \\/ ")
            };
            if level > mine {
                out.write_str("(")?;
            }
            write_prop(out, l, mine)?;
            out.write_str(op)?;
            write_prop(out, r, if mine == Level::Or { Level::And } else { Level::Unit })?;
            if level > mine {
                out.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prop(f, self, Level::Or)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'!' => {
                out.push((i, Tok::Not));
                i += 1
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                out.push((i, Tok::And));
                i += 2
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                out.push((i, Tok::Or));
                i += 2
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Propositional(format!(
                    "unexpected character `{}` at column {}",
                    text[i..].chars().next().unwrap_or('?'),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len) + 1
    }

    fn fail<T>(&self, what: &str) -> Result<T> {
        Err(Error::Propositional(format!(
            "expected {} at column {}",
            what,
            self.column()
        )))
    }

    fn disj(&mut self) -> Result<PropFormula> {
        let mut f = self.conj()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            f = PropFormula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<PropFormula> {
        let mut f = self.unit()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            f = PropFormula::and(f, self.unit()?);
        }
        Ok(f)
    }

    fn unit(&mut self) -> Result<PropFormula> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(PropFormula::not(self.unit()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.disj()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("`)`");
                }
                self.pos += 1;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "true" => PropFormula::Top,
                    "false" => PropFormula::Bot,
                    _ => PropFormula::Atom(name),
                })
            }
            _ => self.fail("a formula"),
        }
    }
}

/// Parses `!`, `/\`, `\/`, parentheses, `true`, `false` and atoms of `sig`.
pub fn parse_prop(text: &str, sig: &PropSignature) -> Result<PropFormula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        len: text.len(),
    };
    let f = p.disj()?;
    if p.pos != p.toks.len() {
        return p.fail("end of input");
    }
    f.check(sig)?;
    Ok(f)
}

/// `FR_prop`: one full-literal conjunction per model, positive literals first.
pub fn fr_prop(ms: &BTreeSet<PropModel>, sig: &PropSignature) -> PropFormula {
    let mut disjuncts = ms.iter().map(|&m| {
        let pos = (0..sig.len())
            .filter(|&i| m.value(i))
            .map(|i| PropFormula::atom(sig.atoms[i].clone()));
        let neg = (0..sig.len())
            .filter(|&i| !m.value(i))
            .map(|i| PropFormula::not(PropFormula::atom(sig.atoms[i].clone())));
        pos.chain(neg)
            .reduce(PropFormula::and)
            .expect("signatures are nonempty")
    });
    match disjuncts.next() {
        None => PropFormula::Bot,
        Some(first) => disjuncts.fold(first, PropFormula::or),
    }
}

/// `[M]`: the models satisfying exactly the same formulae as `m`.
/// Two assignments that differ on an atom are told apart by that atom, so this is `{m}`.
pub fn equivalence_class(m: PropModel, sig: &PropSignature) -> BTreeSet<PropModel> {
    sig.models()
        .filter(|&m2| (0..sig.len()).all(|i| m.value(i) == m2.value(i)))
        .collect()
}

pub fn prop_contract(b: &PropFormula, m: PropModel, sig: &PropSignature) -> Result<PropFormula> {
    let class = equivalence_class(m, sig);
    let ms: BTreeSet<PropModel> = b.models(sig)?.difference(&class).copied().collect();
    Ok(fr_prop(&ms, sig))
}

pub fn prop_expand(b: &PropFormula, m: PropModel, sig: &PropSignature) -> Result<PropFormula> {
    let class = equivalence_class(m, sig);
    let ms: BTreeSet<PropModel> = b.models(sig)?.union(&class).copied().collect();
    Ok(fr_prop(&ms, sig))
}

/// Whether `b ⊨ c`, decided by checking that `b ∧ ¬c` has no model.
pub fn entails(b: &PropFormula, c: &PropFormula, sig: &PropSignature) -> Result<bool> {
    let f = PropFormula::and(b.clone(), PropFormula::not(c.clone()));
    Ok(f.models(sig)?.is_empty())
}

pub type PropOperator<'a> = &'a dyn Fn(&PropFormula, PropModel, &PropSignature) -> Result<PropFormula>;

/// Verdicts for success, inclusion, retainment and extensionality.
pub fn check_prop_contraction(
    op: PropOperator<'_>,
    b: &PropFormula,
    m: PropModel,
    sig: &PropSignature,
) -> Result<Vec<(&'static str, bool)>> {
    let result = op(b, m, sig)?;
    let base = b.models(sig)?;
    let after = result.models(sig)?;
    let class = equivalence_class(m, sig);
    let success = !after.contains(&m);
    let inclusion = after.is_subset(&base);
    let retainment = base.difference(&after).all(|m2| class.contains(m2));
    let mut extensionality = true;
    for &m2 in &class {
        if op(b, m2, sig)? != result {
            extensionality = false;
        }
    }
    Ok(alloc::vec![
        ("success", success),
        ("inclusion", inclusion),
        ("retainment", retainment),
        ("extensionality", extensionality),
    ])
}

/// Verdicts for success, persistence, vacuity and extensionality.
pub fn check_prop_expansion(
    op: PropOperator<'_>,
    b: &PropFormula,
    m: PropModel,
    sig: &PropSignature,
) -> Result<Vec<(&'static str, bool)>> {
    let result = op(b, m, sig)?;
    let base = b.models(sig)?;
    let after = result.models(sig)?;
    let class = equivalence_class(m, sig);
    let success = after.contains(&m);
    let persistence = base.is_subset(&after);
    let vacuity = !base.contains(&m) || after == base;
    let mut extensionality = true;
    for &m2 in &class {
        if op(b, m2, sig)? != result {
            extensionality = false;
        }
    }
    Ok(alloc::vec![
        ("success", success),
        ("persistence", persistence),
        ("vacuity", vacuity),
        ("extensionality", extensionality),
    ])
}
