//! Postulate checks for contraction and expansion, and a brute-force oracle.
//!
//! The postulates quantify over all models. Every formula a change operation
//! produces is built from the atoms of the base, so its model set is a union
//! of literal cells and the checks below work on cell sets. The oracle is
//! independent of the type machinery: it enumerates small interpretations
//! and model-checks them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use sha2::{Digest, Sha256};

use crate::change::{CellSet, CellSpace};
use crate::config::{CandidateMode, Config};
use crate::dnf::{difference, equivalent};
use crate::error::{Error, Result};
use crate::semantics::{equiv_lit, Interpretation};
use crate::syntax::{concept_names, individuals, literal_conjunction, role_names, Formula};
use crate::typesys::{realize, Reasoner};

/// A change operator under test.
pub type Operator<'a> = &'a dyn Fn(&Formula, &Interpretation) -> Result<Formula>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Contraction,
    Expansion,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Contraction => "contraction",
            Operation::Expansion => "expansion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub postulate: &'static str,
    pub passed: bool,
    /// Literals of a cell witnessing the failure.
    pub counterexample: Option<BTreeSet<Formula>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub operation: Operation,
    pub result: Formula,
    pub verdicts: Vec<Verdict>,
    /// Whether the cells of the result are exactly `F ∖ {cell(M)}` (contraction)
    /// or `F ∪ {cell(M)}` (expansion), `F` being the cells of the base.
    pub cell_equation: bool,
    /// SHA-256 over the operation, the base, the model and the result.
    pub digest: String,
}

impl PostulateReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.verdicts
            .iter()
            .filter(|v| !v.passed)
            .map(|v| v.postulate)
            .collect()
    }

    pub fn verdict(&self, postulate: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.postulate == postulate)
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "operation: {}", self.operation.name());
        let _ = writeln!(s, "result: {}", self.result);
        let _ = writeln!(s, "{:<24}{:<8}counterexample cell", "postulate", "verdict");
        for v in &self.verdicts {
            let cx = match &v.counterexample {
                Some(lits) => literal_conjunction(lits).to_string(),
                None => "-".to_string(),
            };
            let _ = writeln!(
                s,
                "{:<24}{:<8}{}",
                v.postulate,
                if v.passed { "pass" } else { "FAIL" },
                cx
            );
        }
        let _ = writeln!(
            s,
            "{:<24}{}",
            "cell equation",
            if self.cell_equation { "holds" } else { "does not hold" }
        );
        let _ = writeln!(s, "digest: {}", self.digest);
        s
    }
}

fn digest(op: Operation, f: &Formula, m: &Interpretation, result: &Formula) -> String {
    let mut h = Sha256::new();
    h.update(op.name().as_bytes());
    h.update(b"\n");
    h.update(f.to_string().as_bytes());
    h.update(b"\n");
    h.update(m.canonical_text().as_bytes());
    h.update(b"\n");
    h.update(result.to_string().as_bytes());
    let mut out = String::from("sha256:");
    for b in h.finalize() {
        let _ = write!(out, "{:02x}", b);
    }
    out
}

fn lits_of(space: &CellSpace, i: usize) -> BTreeSet<Formula> {
    space.cell(i).lits().clone()
}

fn verdict(postulate: &'static str, failure: Option<usize>, space: &CellSpace) -> Verdict {
    Verdict {
        postulate,
        passed: failure.is_none(),
        counterexample: failure.map(|i| lits_of(space, i)),
    }
}

/// `m` with a copy of its first element. The copy has the same concept
/// memberships and successors and no predecessors, so it satisfies the same
/// concepts as the original and every atom keeps its truth value.
fn padded(m: &Interpretation) -> Interpretation {
    let mut fresh = String::from("@copy");
    while m.elements.contains(&fresh) {
        fresh.push('_');
    }
    let mut out = m.clone();
    let pos = out.elements.binary_search(&fresh).unwrap_err();
    let orig = if pos == 0 { 1 } else { 0 };
    out.elements.insert(pos, fresh);
    let shift = |x: usize| if x >= pos { x + 1 } else { x };
    for ext in out.concepts.values_mut() {
        let v = ext[0];
        ext.insert(pos, v);
    }
    for succ in out.roles.values_mut() {
        for s in succ.iter_mut() {
            for y in s.iter_mut() {
                *y = shift(*y);
            }
        }
        succ.insert(pos, Vec::new());
        succ[pos] = succ[orig].clone();
    }
    for x in out.individuals.values_mut() {
        *x = shift(*x);
    }
    out
}

/// Other models in the same cell as `m`: `m` with a duplicated element,
/// and the realisation of a quasimodel for the cell's formula type.
fn cell_mates(
    f: &Formula,
    m: &Interpretation,
    space: &CellSpace,
    cm: usize,
    strict: &Reasoner,
) -> Result<Vec<Interpretation>> {
    let mut out = Vec::new();
    let copy = padded(m);
    if equiv_lit(m, &copy, f)? {
        out.push(copy);
    }
    let cell = space.cell(cm);
    let reasoner = if cell.in_base() {
        strict.with_mode(CandidateMode::Strict)
    } else {
        strict.negated()
    };
    if let Some(q) = reasoner.exists_quasimodel(cell.ftype()) {
        let twin = realize(&q);
        if equiv_lit(m, &twin, f)? {
            out.push(twin);
        }
    }
    Ok(out)
}

fn extensionality(
    f: &Formula,
    m: &Interpretation,
    op: Operator<'_>,
    space: &CellSpace,
    cm: usize,
    result_cells: &CellSet,
    config: &Config,
) -> Result<Verdict> {
    let strict = Reasoner::new(f, &config.with_mode(CandidateMode::Strict))?;
    for twin in cell_mates(f, m, space, cm, &strict)? {
        let other = space.cells_of(&op(f, &twin)?)?;
        if other != *result_cells {
            let diff = other.symmetric_difference(result_cells).next().copied();
            return Ok(verdict("atomic extensionality", diff.or(Some(cm)), space));
        }
    }
    Ok(verdict("atomic extensionality", None, space))
}

/// Success, inclusion, atomic retainment and atomic extensionality for `op` at `(f, m)`.
pub fn check_contraction(
    f: &Formula,
    m: &Interpretation,
    op: Operator<'_>,
    config: &Config,
) -> Result<PostulateReport> {
    let result = op(f, m)?;
    let space = CellSpace::new(f, config)?;
    let cm = space.cell_of(m)?;
    let base = space.base_cells();
    let r = space.cells_of(&result)?;
    let mut target = base.clone();
    target.remove(&cm);

    // a representable set strictly between r and target exists iff r ⊊ target
    let retainment_failure = if r.is_subset(&target) && r != target {
        target.difference(&r).next().copied()
    } else {
        None
    };
    let verdicts = alloc::vec![
        verdict("success", r.contains(&cm).then_some(cm), &space),
        verdict("inclusion", r.difference(&base).next().copied(), &space),
        verdict("atomic retainment", retainment_failure, &space),
        extensionality(f, m, op, &space, cm, &r, config)?,
    ];
    Ok(PostulateReport {
        operation: Operation::Contraction,
        digest: digest(Operation::Contraction, f, m, &result),
        cell_equation: r == target,
        result,
        verdicts,
    })
}

/// Success, persistence, atomic temperance and atomic extensionality for `op` at `(f, m)`.
pub fn check_expansion(f: &Formula, m: &Interpretation, op: Operator<'_>, config: &Config) -> Result<PostulateReport> {
    let result = op(f, m)?;
    let space = CellSpace::new(f, config)?;
    let cm = space.cell_of(m)?;
    let base = space.base_cells();
    let r = space.cells_of(&result)?;
    let mut target = base.clone();
    target.insert(cm);

    // a representable set between target and r ∪ {M}, short of the latter, exists iff target ⊊ r
    let temperance_failure = if target.is_subset(&r) && r != target {
        r.difference(&target).next().copied()
    } else {
        None
    };
    let verdicts = alloc::vec![
        verdict("success", (!r.contains(&cm)).then_some(cm), &space),
        verdict("persistence", base.difference(&r).next().copied(), &space),
        verdict("atomic temperance", temperance_failure, &space),
        extensionality(f, m, op, &space, cm, &r, config)?,
    ];
    Ok(PostulateReport {
        operation: Operation::Expansion,
        digest: digest(Operation::Expansion, f, m, &result),
        cell_equation: r == target,
        result,
        verdicts,
    })
}

/// Interpretations at most this large are enumerated.
pub const MAX_ORACLE_DOMAIN: usize = 4;
/// Upper bound on the number of interpretations a single enumeration may visit.
pub const ORACLE_BUDGET: u128 = 10_000_000;

/// The symbols an enumeration interprets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
}

impl Vocabulary {
    pub fn of(f: &Formula) -> Self {
        Self::of_all([f])
    }

    pub fn of_all<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> Self {
        let (mut c, mut r, mut i) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for f in fs {
            c.extend(concept_names(f));
            r.extend(role_names(f));
            i.extend(individuals(f));
        }
        Vocabulary {
            concepts: c.into_iter().collect(),
            roles: r.into_iter().collect(),
            individuals: i.into_iter().collect(),
        }
    }

    /// Number of interpretations with domains `e1..ek`, `1 ≤ k ≤ n`. Saturates.
    pub fn interpretation_count(&self, n: usize) -> u128 {
        let mut total: u128 = 0;
        for k in 1..=n as u32 {
            let bits = self.concepts.len() as u32 * k + self.roles.len() as u32 * k * k;
            let maps = (k as u128).checked_pow(self.individuals.len() as u32);
            let here = match (2u128.checked_pow(bits), maps) {
                (Some(a), Some(b)) => a.checked_mul(b),
                _ => None,
            };
            total = match here {
                Some(h) => total.saturating_add(h),
                None => u128::MAX,
            };
        }
        total
    }
}

fn check_budget(voc: &Vocabulary, n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_DOMAIN {
        return Err(Error::ResourceLimit {
            what: "oracle domain bound",
            found: n as u128,
            cap: MAX_ORACLE_DOMAIN as u128,
        });
    }
    let count = voc.interpretation_count(n);
    if count > ORACLE_BUDGET {
        return Err(Error::ResourceLimit {
            what: "oracle interpretations",
            found: count,
            cap: ORACLE_BUDGET,
        });
    }
    Ok(())
}

/// Calls `visit` on every interpretation of `voc` over domains `e1..ek`,
/// `k ≤ n`, until it returns `false`.
pub fn oracle_for_each<F>(voc: &Vocabulary, n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&Interpretation) -> bool,
{
    check_budget(voc, n)?;
    for k in 1..=n {
        let mut i = Interpretation {
            elements: (1..=k).map(|x| format!("e{}", x)).collect(),
            concepts: voc
                .concepts
                .iter()
                .map(|c| (c.clone(), alloc::vec![false; k]))
                .collect(),
            roles: voc
                .roles
                .iter()
                .map(|r| (r.clone(), alloc::vec![Vec::new(); k]))
                .collect(),
            individuals: voc.individuals.iter().map(|a| (a.clone(), 0)).collect(),
        };
        let cbits = voc.concepts.len() * k;
        let rbits = voc.roles.len() * k * k;
        let maps = k.pow(voc.individuals.len() as u32);
        for map in 0..maps {
            let mut rest = map;
            for x in i.individuals.values_mut() {
                *x = rest % k;
                rest /= k;
            }
            for rmask in 0u64..(1u64 << rbits) {
                for (ri, succ) in i.roles.values_mut().enumerate() {
                    for (x, s) in succ.iter_mut().enumerate() {
                        s.clear();
                        for y in 0..k {
                            if (rmask >> (ri * k * k + x * k + y)) & 1 == 1 {
                                s.push(y);
                            }
                        }
                    }
                }
                for cmask in 0u64..(1u64 << cbits) {
                    for (ci, ext) in i.concepts.values_mut().enumerate() {
                        for (x, v) in ext.iter_mut().enumerate() {
                            *v = (cmask >> (ci * k + x)) & 1 == 1;
                        }
                    }
                    if !visit(&i) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Every interpretation of `voc` with at most `n` elements satisfying `f`.
/// `voc` must cover the symbols of `f`.
pub fn oracle_models(f: &Formula, voc: &Vocabulary, n: usize) -> Result<Vec<Interpretation>> {
    let mut out = Vec::new();
    let mut err = None;
    oracle_for_each(voc, n, |i| match i.holds(f) {
        Ok(true) => {
            out.push(i.clone());
            true
        }
        Ok(false) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// The first interpretation within the bound that satisfies `f`.
pub fn oracle_find_model(f: &Formula, voc: &Vocabulary, n: usize) -> Result<Option<Interpretation>> {
    let mut found = None;
    let mut err = None;
    oracle_for_each(voc, n, |i| match i.holds(f) {
        Ok(true) => {
            found = Some(i.clone());
            false
        }
        Ok(false) => true,
        Err(e) => {
            err = Some(e);
            false
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// An interpretation on which the two formulae differ. Decisive.
    Distinguished(Interpretation),
    /// No interpretation up to this size tells them apart. Bounded evidence only.
    AgreeUpTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivCheck {
    pub equivalent: bool,
    pub evidence: Evidence,
    /// The quasimodel verdict, if it could be computed within the caps.
    pub solver: Option<bool>,
    /// Whether a realised witness had to settle a disagreement.
    pub adjudicated: bool,
}

pub fn oracle_equiv_check(f: &Formula, g: &Formula, n: usize, config: &Config) -> Result<EquivCheck> {
    let voc = Vocabulary::of_all([f, g]);
    let mut witness = None;
    let mut err = None;
    oracle_for_each(&voc, n, |i| match (i.holds(f), i.holds(g)) {
        (Ok(a), Ok(b)) => {
            if a != b {
                witness = Some(i.clone());
            }
            a == b
        }
        (Err(e), _) | (_, Err(e)) => {
            err = Some(e);
            false
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let solver = match equivalent(f, g, config) {
        Ok(v) => Some(v),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(w) = witness {
        return Ok(EquivCheck {
            equivalent: false,
            evidence: Evidence::Distinguished(w),
            solver,
            adjudicated: false,
        });
    }
    if solver == Some(false) {
        // the distinguishing model may need more elements than the bound allows
        let diff = difference(f, g);
        let r = Reasoner::new(&diff, &config.with_mode(CandidateMode::Strict))?;
        if let Some(q) = r.quasimodels()?.into_iter().next() {
            let w = realize(&q);
            if w.holds(f)? != w.holds(g)? {
                return Ok(EquivCheck {
                    equivalent: false,
                    evidence: Evidence::Distinguished(w),
                    solver,
                    adjudicated: true,
                });
            }
        }
        return Ok(EquivCheck {
            equivalent: true,
            evidence: Evidence::AgreeUpTo(n),
            solver,
            adjudicated: true,
        });
    }
    Ok(EquivCheck {
        equivalent: true,
        evidence: Evidence::AgreeUpTo(n),
        solver,
        adjudicated: false,
    })
}

/// `false` only with a distinguishing interpretation in hand.
pub fn oracle_equiv(f: &Formula, g: &Formula, n: usize, config: &Config) -> Result<bool> {
    Ok(oracle_equiv_check(f, g, n, config)?.equivalent)
}
