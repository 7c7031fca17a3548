//! Concept types, formula types, model candidates and quasimodels.
//!
//! Satisfiability is decided by type elimination. For a formula type `f` of
//! `φ`, start from every concept type over `con(φ)` that is compatible with
//! the `(C = ⊤)` atoms of `f`, repeatedly drop types whose existential
//! restrictions have no witness among the survivors, and finally search for an
//! assignment of individuals to surviving types that respects the concept and
//! role assertions of `f`.
//!
//! Internally a concept type is a bit mask over the non-negated members of
//! `con(φ)`; bit `i` set means the `i`-th concept is in the type, clear means its
//! negation is. The public types are plain sets so they can be checked
//! independently of that encoding.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::config::{CandidateMode, Config, HARD_MAX_SUBCONCEPTS};
use crate::error::{Error, Result};
use crate::semantics::Interpretation;
use crate::syntax::{atoms, concept_names, individuals, role_names, subconcepts, subformulae, Concept, Formula};

/// A subset of `con(φ)` that is closed and consistent w.r.t. negation and conjunction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptType(BTreeSet<Concept>);

/// A subset of `sub(φ)` that is closed and consistent w.r.t. negation and conjunction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormulaType(BTreeSet<Formula>);

impl ConceptType {
    pub fn new(concepts: BTreeSet<Concept>) -> Self {
        ConceptType(concepts)
    }

    pub fn concepts(&self) -> &BTreeSet<Concept> {
        &self.0
    }

    pub fn contains(&self, c: &Concept) -> bool {
        self.0.contains(c)
    }

    /// `{¬E | ¬∃r.E ∈ self}`: what every `r`-successor has to satisfy.
    pub fn universal_requirements(&self, role: &str) -> BTreeSet<Concept> {
        self.0
            .iter()
            .filter_map(|c| match c {
                Concept::Not(inner) => match &**inner {
                    Concept::Exists(r, body) if r == role => Some(body.negated()),
                    _ => None,
                },
                _ => None,
            })
            .collect()
    }

    /// Members rendered and sorted by printed form.
    pub fn printed(&self) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.sort();
        v
    }
}

impl FormulaType {
    pub fn new(formulas: BTreeSet<Formula>) -> Self {
        FormulaType(formulas)
    }

    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.0
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∩ set`.
    pub fn restrict(&self, set: &BTreeSet<Formula>) -> FormulaType {
        FormulaType(self.0.intersection(set).cloned().collect())
    }

    /// The literals (atoms and negated atoms) of the type.
    pub fn lits(&self) -> BTreeSet<Formula> {
        self.0.iter().filter(|f| f.is_literal()).cloned().collect()
    }

    pub fn printed(&self) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.sort();
        v
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, items: &[String]) -> fmt::Result {
    f.write_str("{")?;
    for (i, s) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(s)?;
    }
    f.write_str("}")
}

impl fmt::Display for ConceptType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.printed())
    }
}

impl fmt::Display for FormulaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.printed())
    }
}

/// `(T, o, f)` for the formula `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCandidate {
    pub origin: Formula,
    pub types: BTreeSet<ConceptType>,
    pub assignment: BTreeMap<String, ConceptType>,
    pub ftype: FormulaType,
}

/// A model candidate that passed [`is_quasimodel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasimodel(ModelCandidate);

impl Quasimodel {
    pub fn candidate(&self) -> &ModelCandidate {
        &self.0
    }

    pub fn into_candidate(self) -> ModelCandidate {
        self.0
    }

    pub fn origin(&self) -> &Formula {
        &self.0.origin
    }

    pub fn types(&self) -> &BTreeSet<ConceptType> {
        &self.0.types
    }

    pub fn assignment(&self) -> &BTreeMap<String, ConceptType> {
        &self.0.assignment
    }

    pub fn ftype(&self) -> &FormulaType {
        &self.0.ftype
    }

    /// Validate a candidate.
    pub fn try_from_candidate(mc: ModelCandidate, mode: CandidateMode) -> Option<Self> {
        is_quasimodel(&mc, mode).then_some(Quasimodel(mc))
    }
}

/// Whether `set` is a formula type for a formula whose closure is `sub`.
pub fn is_formula_type_over(set: &BTreeSet<Formula>, sub: &BTreeSet<Formula>) -> bool {
    if !set.is_subset(sub) {
        return false;
    }
    sub.iter().all(|g| {
        let neg_ok = set.contains(g) != set.contains(&g.negated());
        let and_ok = match g {
            Formula::And(l, r) => set.contains(g) == (set.contains(l) && set.contains(r)),
            _ => true,
        };
        neg_ok && and_ok
    })
}

pub fn is_formula_type(set: &BTreeSet<Formula>, origin: &Formula) -> Result<bool> {
    Ok(is_formula_type_over(set, &subformulae(origin)?))
}

/// Whether `set` is a concept type over `con`. When `⊤ ∈ con` the type has to contain `⊤`.
pub fn is_concept_type_over(set: &BTreeSet<Concept>, con: &BTreeSet<Concept>) -> bool {
    if !set.is_subset(con) {
        return false;
    }
    if con.contains(&Concept::Top) && !set.contains(&Concept::Top) {
        return false;
    }
    con.iter().all(|c| {
        let neg_ok = set.contains(c) != set.contains(&c.negated());
        let and_ok = match c {
            Concept::And(l, r) => set.contains(c) == (set.contains(l) && set.contains(r)),
            _ => true,
        };
        neg_ok && and_ok
    })
}

/// `τ(f)`: the formula types for `f` that contain `f`, built by recursion on
/// `f` (atoms give `{{f}}`, conjunctions join the types of their conjuncts,
/// negated conjunctions join types of either polarity with at least one
/// conjunct negated).
pub fn enumerate_tau(f: &Formula) -> Result<Vec<FormulaType>> {
    let sub = subformulae(f)?;
    let raw = tau_sets(f);
    let mut out = BTreeSet::new();
    for set in raw {
        debug_assert!(is_formula_type_over(&set, &sub));
        if is_formula_type_over(&set, &sub) {
            out.insert(FormulaType(set));
        }
    }
    Ok(out.into_iter().collect())
}

fn tau_sets(f: &Formula) -> Vec<BTreeSet<Formula>> {
    match f {
        Formula::And(l, r) => join(f, &tau_sets(l), &tau_sets(r), atoms(l), atoms(r)),
        Formula::Not(inner) => match &**inner {
            Formula::And(l, r) => {
                let (nl, nr) = (l.negated(), r.negated());
                let (pos_l, neg_l) = (tau_sets(l), tau_sets(&nl));
                let (pos_r, neg_r) = (tau_sets(r), tau_sets(&nr));
                let (al, ar) = (atoms(l), atoms(r));
                let mut out = join(f, &neg_l, &pos_r, al.clone(), ar.clone());
                out.extend(join(f, &pos_l, &neg_r, al.clone(), ar.clone()));
                out.extend(join(f, &neg_l, &neg_r, al, ar));
                out
            }
            _ => alloc::vec![BTreeSet::from([f.clone()])],
        },
        _ => alloc::vec![BTreeSet::from([f.clone()])],
    }
}

/// Unions `{top} ∪ a ∪ b` of every pair that agrees on the shared atoms.
fn join(
    top: &Formula,
    left: &[BTreeSet<Formula>],
    right: &[BTreeSet<Formula>],
    left_atoms: BTreeSet<Formula>,
    right_atoms: BTreeSet<Formula>,
) -> Vec<BTreeSet<Formula>> {
    let shared: Vec<Formula> = left_atoms.intersection(&right_atoms).cloned().collect();
    let key = |t: &BTreeSet<Formula>| -> Vec<bool> { shared.iter().map(|a| t.contains(a)).collect() };
    let mut by_key: BTreeMap<Vec<bool>, Vec<&BTreeSet<Formula>>> = BTreeMap::new();
    for t in right {
        by_key.entry(key(t)).or_default().push(t);
    }
    let mut out = Vec::new();
    for l in left {
        if let Some(rs) = by_key.get(&key(l)) {
            for r in rs {
                let mut u = l.clone();
                u.extend(r.iter().cloned());
                u.insert(top.clone());
                out.push(u);
            }
        }
    }
    out
}

/// Membership literal of a concept in a mask-encoded type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit {
    bit: usize,
    positive: bool,
}

impl Lit {
    fn holds(self, mask: u64) -> bool {
        ((mask >> self.bit) & 1 == 1) == self.positive
    }

    fn negate(self) -> Lit {
        Lit {
            bit: self.bit,
            positive: !self.positive,
        }
    }
}

/// Accumulated "must be set" / "must be clear" bits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
struct Need {
    ones: u64,
    zeros: u64,
}

impl Need {
    fn add(&mut self, l: Lit) {
        if l.positive {
            self.ones |= 1 << l.bit;
        } else {
            self.zeros |= 1 << l.bit;
        }
    }

    fn consistent(self) -> bool {
        self.ones & self.zeros == 0
    }

    fn met_by(self, mask: u64) -> bool {
        mask & self.ones == self.ones && mask & self.zeros == 0
    }
}

#[derive(Debug, Clone, Copy)]
enum Derived {
    Top(usize),
    And(usize, Lit, Lit),
}

/// Precomputed closures of one formula plus a cache of eliminated type sets.
///
/// Not `Sync`; build one per thread.
pub struct Reasoner {
    origin: Formula,
    config: Config,
    sub: BTreeSet<Formula>,
    con: BTreeSet<Concept>,
    positive: Vec<Concept>,
    index: BTreeMap<Concept, usize>,
    free: Vec<usize>,
    derived: Vec<Derived>,
    /// Per role: `(bit of ∃r.E, literal of E)`.
    exists_by_role: BTreeMap<String, Vec<(usize, Lit)>>,
    individuals: Vec<String>,
    candidates: Vec<u64>,
    survivors: Rc<RefCell<BTreeMap<Need, Rc<Vec<u64>>>>>,
}

impl Reasoner {
    pub fn new(origin: &Formula, config: &Config) -> Result<Self> {
        let sub = subformulae(origin)?;
        let n_atoms = atoms(origin).len();
        if n_atoms > config.max_atoms {
            return Err(Error::ResourceLimit {
                what: "number of atoms",
                found: n_atoms as u128,
                cap: config.max_atoms as u128,
            });
        }
        let con = subconcepts(origin)?;
        let mut positive: Vec<Concept> = con.iter().filter(|c| !c.is_negation()).cloned().collect();
        let cap = config.max_subconcepts.min(HARD_MAX_SUBCONCEPTS);
        if positive.len() > cap {
            return Err(Error::ResourceLimit {
                what: "number of subconcepts",
                found: positive.len() as u128,
                cap: cap as u128,
            });
        }
        // children are strictly smaller than parents
        positive.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        let index: BTreeMap<Concept, usize> = positive.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let lit = |c: &Concept| -> Lit {
            let (pos, sign) = c.unsigned();
            Lit {
                bit: index[pos],
                positive: sign,
            }
        };
        let mut free = Vec::new();
        let mut derived = Vec::new();
        let mut exists_by_role: BTreeMap<String, Vec<(usize, Lit)>> = BTreeMap::new();
        for (i, c) in positive.iter().enumerate() {
            match c {
                Concept::Name(_) => free.push(i),
                Concept::Exists(r, body) => {
                    free.push(i);
                    exists_by_role.entry(r.clone()).or_default().push((i, lit(body)));
                }
                Concept::Top => derived.push(Derived::Top(i)),
                Concept::And(l, r) => derived.push(Derived::And(i, lit(l), lit(r))),
                Concept::Not(_) => unreachable!(),
            }
        }
        let mut candidates = Vec::with_capacity(1 << free.len());
        for k in 0u64..(1u64 << free.len()) {
            let mut mask = 0u64;
            for (j, &bit) in free.iter().enumerate() {
                if (k >> j) & 1 == 1 {
                    mask |= 1 << bit;
                }
            }
            for d in &derived {
                match *d {
                    Derived::Top(i) => mask |= 1 << i,
                    Derived::And(i, l, r) => {
                        if l.holds(mask) && r.holds(mask) {
                            mask |= 1 << i;
                        }
                    }
                }
            }
            candidates.push(mask);
        }
        candidates.sort_unstable();
        Ok(Reasoner {
            origin: origin.clone(),
            config: *config,
            sub,
            con,
            positive,
            index,
            free,
            derived,
            exists_by_role,
            individuals: individuals(origin).into_iter().collect(),
            candidates,
            survivors: Rc::new(RefCell::new(BTreeMap::new())),
        })
    }

    pub fn origin(&self) -> &Formula {
        &self.origin
    }

    /// A reasoner for `¬φ`. `sub(¬φ) = sub(φ)`, so all tables and the cache are shared.
    pub fn negated(&self) -> Reasoner {
        Reasoner {
            origin: self.origin.negated(),
            config: self.config,
            sub: self.sub.clone(),
            con: self.con.clone(),
            positive: self.positive.clone(),
            index: self.index.clone(),
            free: self.free.clone(),
            derived: self.derived.clone(),
            exists_by_role: self.exists_by_role.clone(),
            individuals: self.individuals.clone(),
            candidates: self.candidates.clone(),
            survivors: self.survivors.clone(),
        }
    }

    /// The same tables under a different model-candidate mode. The elimination
    /// cache does not depend on the mode and is shared.
    pub fn with_mode(&self, mode: CandidateMode) -> Reasoner {
        let mut r = self.negated();
        r.origin = self.origin.clone();
        r.config.mode = mode;
        r
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn subformulae(&self) -> &BTreeSet<Formula> {
        &self.sub
    }

    pub fn subconcepts(&self) -> &BTreeSet<Concept> {
        &self.con
    }

    /// Number of concept types over `con(φ)` (before any elimination).
    pub fn concept_type_count(&self) -> usize {
        self.candidates.len()
    }

    fn lit(&self, c: &Concept) -> Lit {
        let (pos, sign) = c.unsigned();
        Lit {
            bit: self.index[pos],
            positive: sign,
        }
    }

    fn mask_to_type(&self, mask: u64) -> ConceptType {
        ConceptType(
            self.positive
                .iter()
                .enumerate()
                .map(|(i, c)| if (mask >> i) & 1 == 1 { c.clone() } else { c.negated() })
                .collect(),
        )
    }

    /// What an `r`-successor of a type with `mask` must satisfy.
    fn universal(&self, mask: u64, role: &str) -> Need {
        let mut need = Need::default();
        if let Some(list) = self.exists_by_role.get(role) {
            for &(bit, body) in list {
                if (mask >> bit) & 1 == 0 {
                    need.add(body.negate());
                }
            }
        }
        need
    }

    /// Index into `set` of the first witness for every existential restriction
    /// of `mask`, or `None` if one is missing.
    fn witnesses(&self, mask: u64, set: &[u64]) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (role, list) in &self.exists_by_role {
            let univ = self.universal(mask, role);
            for &(bit, body) in list {
                if (mask >> bit) & 1 == 0 {
                    continue;
                }
                let mut need = univ;
                need.add(body);
                if !need.consistent() {
                    return None;
                }
                out.push(set.iter().position(|&c| need.met_by(c))?);
            }
        }
        Some(out)
    }

    /// The greatest saturated set of concept types compatible with the given TBox requirement.
    fn saturated(&self, tbox: Need) -> Rc<Vec<u64>> {
        if let Some(hit) = self.survivors.borrow().get(&tbox) {
            return hit.clone();
        }
        let mut set: Vec<u64> = if tbox.consistent() {
            self.candidates.iter().copied().filter(|&c| tbox.met_by(c)).collect()
        } else {
            Vec::new()
        };
        loop {
            let before = set.len();
            let snapshot = set.clone();
            set.retain(|&c| self.witnesses(c, &snapshot).is_some());
            if set.len() == before {
                break;
            }
        }
        let set = Rc::new(set);
        self.survivors.borrow_mut().insert(tbox, set.clone());
        set
    }

    /// `τ(φ)`.
    pub fn tau(&self) -> Result<Vec<FormulaType>> {
        enumerate_tau(&self.origin)
    }

    /// A quasimodel for `φ` whose formula type is `ft`, if one exists.
    /// `ft` must be a formula type over `sub(φ)` containing `φ`; otherwise `None`.
    pub fn exists_quasimodel(&self, ft: &FormulaType) -> Option<Quasimodel> {
        if !ft.contains(&self.origin) || !is_formula_type_over(ft.formulas(), &self.sub) {
            return None;
        }
        let mut tbox = Need::default();
        let mut co_witness = Vec::new();
        let mut unary: BTreeMap<&str, Need> = BTreeMap::new();
        let mut binary: Vec<(&str, &str, &str)> = Vec::new();
        for g in ft.formulas() {
            match g {
                Formula::ConceptEqTop(c) => tbox.add(self.lit(c)),
                Formula::ConceptAssertion(c, a) => unary.entry(a).or_default().add(self.lit(c)),
                Formula::RoleAssertion(r, a, b) => binary.push((r, a, b)),
                Formula::Not(inner) => match &**inner {
                    Formula::ConceptEqTop(c) => co_witness.push(self.lit(c)),
                    Formula::ConceptAssertion(c, a) if self.config.mode == CandidateMode::Strict => {
                        unary.entry(a).or_default().add(self.lit(c).negate())
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        let set = self.saturated(tbox);
        if set.is_empty() {
            return None;
        }
        let mut chosen: Vec<u64> = Vec::new();
        for l in &co_witness {
            chosen.push(*set.iter().find(|&&c| !l.holds(c))?);
        }

        // backtracking search for o
        let domains: Vec<Vec<u64>> = self
            .individuals
            .iter()
            .map(|a| {
                let need = unary.get(a.as_str()).copied().unwrap_or_default();
                if need.consistent() {
                    set.iter().copied().filter(|&c| need.met_by(c)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let pos = |a: &str| self.individuals.iter().position(|x| x == a).unwrap();
        let constraints: Vec<(&str, usize, usize)> = binary.iter().map(|&(r, a, b)| (r, pos(a), pos(b))).collect();
        let n = self.individuals.len();
        let mut pick = alloc::vec![0usize; n];
        let mut assigned = 0usize;
        let ok = |pick: &[usize], upto: usize| -> bool {
            constraints.iter().all(|&(r, a, b)| {
                if a > upto || b > upto {
                    return true;
                }
                let (ca, cb) = (domains[a][pick[a]], domains[b][pick[b]]);
                self.universal(ca, r).met_by(cb)
            })
        };
        // iterative DFS over pick[0..n]
        if n > 0 {
            if domains.iter().any(Vec::is_empty) {
                return None;
            }
            loop {
                if ok(&pick, assigned) {
                    if assigned + 1 == n {
                        break;
                    }
                    assigned += 1;
                    pick[assigned] = 0;
                    continue;
                }
                // advance, backtracking as needed
                loop {
                    pick[assigned] += 1;
                    if pick[assigned] < domains[assigned].len() {
                        break;
                    }
                    if assigned == 0 {
                        return None;
                    }
                    assigned -= 1;
                }
            }
        }
        let assignment_masks: Vec<u64> = (0..n).map(|i| domains[i][pick[i]]).collect();

        // keep only what is reachable from the assignment and the co-witnesses
        let mut keep: BTreeSet<u64> = BTreeSet::new();
        let mut queue: Vec<u64> = assignment_masks.iter().chain(chosen.iter()).copied().collect();
        if queue.is_empty() {
            queue.push(set[0]);
        }
        while let Some(c) = queue.pop() {
            if !keep.insert(c) {
                continue;
            }
            let ws = self.witnesses(c, &set).expect("saturated types have witnesses");
            queue.extend(ws.into_iter().map(|i| set[i]));
        }

        let mc = ModelCandidate {
            origin: self.origin.clone(),
            types: keep.iter().map(|&m| self.mask_to_type(m)).collect(),
            assignment: self
                .individuals
                .iter()
                .zip(&assignment_masks)
                .map(|(a, &m)| (a.clone(), self.mask_to_type(m)))
                .collect(),
            ftype: ft.clone(),
        };
        debug_assert!(is_quasimodel(&mc, self.config.mode));
        Some(Quasimodel(mc))
    }

    /// The formula types of `τ(φ)` that have a quasimodel, with one quasimodel each.
    pub fn quasimodels(&self) -> Result<Vec<Quasimodel>> {
        Ok(self.tau()?.iter().filter_map(|ft| self.exists_quasimodel(ft)).collect())
    }

    /// `ftypes(φ)`.
    pub fn ftypes(&self) -> Result<Vec<FormulaType>> {
        Ok(self
            .tau()?
            .into_iter()
            .filter(|ft| self.exists_quasimodel(ft).is_some())
            .collect())
    }

    pub fn satisfiable(&self) -> Result<bool> {
        Ok(self.tau()?.iter().any(|ft| self.exists_quasimodel(ft).is_some()))
    }

    /// Number of free (non-derived) positions in a concept type.
    pub fn free_concepts(&self) -> usize {
        self.free.len()
    }

    #[doc(hidden)]
    pub fn derived_concepts(&self) -> usize {
        self.derived.len()
    }
}

pub fn exists_quasimodel(origin: &Formula, ft: &FormulaType, config: &Config) -> Result<Option<Quasimodel>> {
    Ok(Reasoner::new(origin, config)?.exists_quasimodel(ft))
}

/// Whether `f` has a quasimodel. `false` is unsatisfiable.
pub fn satisfiable(f: &Formula, config: &Config) -> Result<bool> {
    if *f == Formula::Falsum {
        return Ok(false);
    }
    Reasoner::new(f, config)?.satisfiable()
}

/// `qm(f, I)`: the concept types realised by the elements of `I`, the types of
/// the named individuals, and the subformulae of `f` true in `I`.
pub fn qm_of(f: &Formula, i: &Interpretation) -> Result<ModelCandidate> {
    let sub = subformulae(f)?;
    let con = subconcepts(f)?;
    let names = individuals(f);
    for a in &names {
        i.individual_index(a)?;
    }
    let type_of = |x: usize| -> ConceptType { ConceptType(con.iter().filter(|c| i.member(x, c)).cloned().collect()) };
    let types = (0..i.domain().len()).map(type_of).collect();
    let mut assignment = BTreeMap::new();
    for a in names {
        let x = i.individual_index(&a)?;
        assignment.insert(a, type_of(x));
    }
    let mut ftype = BTreeSet::new();
    for g in sub {
        if i.holds(&g)? {
            ftype.insert(g);
        }
    }
    Ok(ModelCandidate {
        origin: f.clone(),
        types,
        assignment,
        ftype: FormulaType(ftype),
    })
}

/// Checks every model-candidate and quasimodel condition directly on the sets.
pub fn is_quasimodel(mc: &ModelCandidate, mode: CandidateMode) -> bool {
    let Ok(sub) = subformulae(&mc.origin) else { return false };
    let Ok(con) = subconcepts(&mc.origin) else { return false };
    let f = mc.ftype.formulas();

    // model candidate
    if !f.contains(&mc.origin) || !is_formula_type_over(f, &sub) {
        return false;
    }
    if mc.types.is_empty() {
        return false;
    }
    if !mc.types.iter().all(|t| is_concept_type_over(t.concepts(), &con)) {
        return false;
    }
    let names = individuals(&mc.origin);
    if names.len() != mc.assignment.len() || !names.iter().all(|a| mc.assignment.contains_key(a)) {
        return false;
    }
    if !mc.assignment.values().all(|t| mc.types.contains(t)) {
        return false;
    }
    for g in &sub {
        match g {
            Formula::ConceptAssertion(c, a) => {
                let in_type = mc.assignment[a].contains(c);
                let in_f = f.contains(g);
                let ok = match mode {
                    CandidateMode::Strict => in_f == in_type,
                    CandidateMode::Paper => !in_f || in_type,
                };
                if !ok {
                    return false;
                }
            }
            Formula::RoleAssertion(r, a, b) if f.contains(g) => {
                let need = mc.assignment[a].universal_requirements(r);
                if !need.iter().all(|c| mc.assignment[b].contains(c)) {
                    return false;
                }
            }
            _ => {}
        }
    }

    // quasimodel
    for t in &mc.types {
        for c in t.concepts() {
            if let Concept::Exists(r, body) = c {
                let mut need = t.universal_requirements(r);
                need.insert((**body).clone());
                if !mc.types.iter().any(|w| need.iter().all(|d| w.contains(d))) {
                    return false;
                }
            }
            if c.is_negation() && f.contains(&Formula::eq_top(c.negated())) {
                return false;
            }
        }
    }
    for g in f {
        if let Formula::Not(inner) = g {
            if let Formula::ConceptEqTop(c) = &**inner {
                if !mc.types.iter().any(|t| !t.contains(c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn type_element(i: usize) -> String {
    format!("@t{}", i)
}

/// The interpretation `I_(T,o,f)` with domain `T ∪ individuals(φ)`.
pub fn realize(q: &Quasimodel) -> Interpretation {
    let mc = q.candidate();
    let types: Vec<&ConceptType> = mc.types.iter().collect();
    let names: Vec<&String> = mc.assignment.keys().collect();
    let mut builder = Interpretation::builder(
        (0..types.len())
            .map(type_element)
            .chain(names.iter().map(|a| (*a).clone())),
    );
    for a in &names {
        builder = builder.individual((*a).clone(), (*a).clone());
    }
    for cname in concept_names(&mc.origin) {
        let c = Concept::Name(cname.clone());
        let members: Vec<String> = types
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&c))
            .map(|(k, _)| type_element(k))
            .chain(
                names
                    .iter()
                    .filter(|a| mc.assignment[**a].contains(&c))
                    .map(|a| (*a).clone()),
            )
            .collect();
        builder = builder.concept(cname, members);
    }
    for role in role_names(&mc.origin) {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (k, t) in types.iter().enumerate() {
            let need = t.universal_requirements(&role);
            for (k2, t2) in types.iter().enumerate() {
                if need.iter().all(|c| t2.contains(c)) {
                    pairs.push((type_element(k), type_element(k2)));
                }
            }
        }
        for a in &names {
            let need = mc.assignment[*a].universal_requirements(&role);
            for b in &names {
                if mc
                    .ftype
                    .contains(&Formula::role(role.clone(), (*a).clone(), (*b).clone()))
                {
                    pairs.push(((*a).clone(), (*b).clone()));
                }
            }
            for (k, t) in types.iter().enumerate() {
                if need.iter().all(|c| t.contains(c)) {
                    pairs.push(((*a).clone(), type_element(k)));
                }
            }
        }
        builder = builder.role(role, pairs);
    }
    builder.build().expect("realisation only uses its own domain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::fixtures::*;
    use crate::syntax::parse_formula;

    fn parse(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn ftype(items: &[&str]) -> FormulaType {
        FormulaType(items.iter().map(|s| parse(s)).collect())
    }

    /// All formula types over `sub(f)` containing `f`, by trying every valuation of the atoms.
    fn tau_by_valuations(f: &Formula) -> BTreeSet<FormulaType> {
        let sub = subformulae(f).unwrap();
        let atoms: Vec<Formula> = atoms(f).into_iter().collect();
        let mut out = BTreeSet::new();
        for bits in 0u32..(1 << atoms.len()) {
            fn eval(g: &Formula, atoms: &[Formula], bits: u32) -> bool {
                match g {
                    Formula::Not(x) => !eval(x, atoms, bits),
                    Formula::And(l, r) => eval(l, atoms, bits) && eval(r, atoms, bits),
                    a => (bits >> atoms.iter().position(|x| x == a).unwrap()) & 1 == 1,
                }
            }
            let set: BTreeSet<Formula> = sub.iter().filter(|g| eval(g, &atoms, bits)).cloned().collect();
            if set.contains(f) {
                out.insert(FormulaType(set));
            }
        }
        out
    }

    #[test]
    fn top_role_kb_has_three_formula_types() {
        let phi = top_role_kb();
        let tau = enumerate_tau(&phi).unwrap();
        let expected: BTreeSet<FormulaType> = [
            ftype(&[
                "[C == top] /\\ !(C(a) /\\ !r(a,b))",
                "[C == top]",
                "!(C(a) /\\ !r(a,b))",
                "C(a)",
                "r(a,b)",
            ]),
            ftype(&[
                "[C == top] /\\ !(C(a) /\\ !r(a,b))",
                "[C == top]",
                "!(C(a) /\\ !r(a,b))",
                "!C(a)",
                "r(a,b)",
            ]),
            ftype(&[
                "[C == top] /\\ !(C(a) /\\ !r(a,b))",
                "[C == top]",
                "!(C(a) /\\ !r(a,b))",
                "!C(a)",
                "!r(a,b)",
            ]),
        ]
        .into();
        assert_eq!(tau.into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn tau_small_cases() {
        assert_eq!(enumerate_tau(&parse("P(m)")).unwrap(), [ftype(&["P(m)"])]);
        assert_eq!(
            enumerate_tau(&parse("P(m) /\\ r(a,b)")).unwrap(),
            [ftype(&["P(m) /\\ r(a,b)", "P(m)", "r(a,b)"])]
        );
        assert!(enumerate_tau(&parse("P(m) /\\ !P(m)")).unwrap().is_empty());
        assert_eq!(enumerate_tau(&Formula::Falsum), Err(Error::FalsumUnsupported));
    }

    #[test]
    fn tau_recursion_matches_valuations() {
        for s in [
            "[C == top] /\\ !(C(a) /\\ !r(a,b))",
            "P(Mary) /\\ C(DL) /\\ C(AI) /\\ ((teaches(Mary,DL) /\\ !teaches(Mary,AI)) \\/ (!teaches(Mary,DL) /\\ teaches(Mary,AI)))",
            "!(P(m) /\\ (Q(m) \\/ !P(m))) \\/ r(a,b)",
            "!((A(a) \\/ B(a)) /\\ !(A(a) /\\ B(a)))",
        ] {
            let f = parse(s);
            let got: BTreeSet<FormulaType> = enumerate_tau(&f).unwrap().into_iter().collect();
            assert_eq!(got, tau_by_valuations(&f), "{}", s);
        }
    }

    #[test]
    fn quasimodel_for_single_assertion() {
        let f = parse("P(m)");
        let q = exists_quasimodel(&f, &ftype(&["P(m)"]), &Config::default())
            .unwrap()
            .unwrap();
        assert_eq!(q.types().len(), 1);
        assert!(q.assignment()["m"].contains(&Concept::name("P")));
        assert!(realize(&q).holds(&f).unwrap());
        assert_eq!(realize(&q).individual("m"), Some("m"));
    }

    #[test]
    fn tbox_against_assertion_has_no_quasimodel() {
        let f = parse("[~C == top] /\\ C(a)");
        let tau = enumerate_tau(&f).unwrap();
        assert_eq!(tau.len(), 1);
        for mode in [CandidateMode::Strict, CandidateMode::Paper] {
            let cfg = Config::default().with_mode(mode);
            assert!(exists_quasimodel(&f, &tau[0], &cfg).unwrap().is_none());
        }
    }

    #[test]
    fn satisfiability_examples() {
        let cfg = Config::default();
        assert_eq!(satisfiable(&parse("P(m) /\\ !P(m)"), &cfg), Ok(false));
        assert_eq!(satisfiable(&example_contract_kb(), &cfg), Ok(true));
        assert_eq!(satisfiable(&parse("[C == top] /\\ !C(a)"), &cfg), Ok(false));
        assert_eq!(satisfiable(&Formula::Falsum, &cfg), Ok(false));
        assert_eq!(satisfiable(&parse("(exists r.A & forall r.~A)(a)"), &cfg), Ok(false));
        assert_eq!(
            satisfiable(
                &parse("(exists r.A)(a) /\\ [forall r.B == top] /\\ ![exists r.(A & B) == top]"),
                &cfg
            ),
            Ok(true)
        );
        assert_eq!(satisfiable(&parse("[bot == top]"), &cfg), Ok(false));
        assert_eq!(satisfiable(&parse("![top == top]"), &cfg), Ok(false));
    }

    #[test]
    fn relaxed_mode_accepts_negated_assertion_under_tbox() {
        // the one-directional condition cannot see that ¬C(a) contradicts (C = ⊤)
        let f = parse("[C == top] /\\ !C(a)");
        assert_eq!(satisfiable(&f, &Config::paper()), Ok(true));
    }

    #[test]
    fn resource_limit() {
        let f = parse("A(a) /\\ B(a) /\\ C(a)");
        let cfg = Config {
            max_atoms: 2,
            ..Config::default()
        };
        assert!(matches!(satisfiable(&f, &cfg), Err(Error::ResourceLimit { .. })));
        let cfg = Config {
            max_subconcepts: 2,
            ..Config::default()
        };
        assert!(matches!(satisfiable(&f, &cfg), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn qm_of_example_model() {
        let m = example_model();
        let qm = qm_of(&example_contract_kb(), &m).unwrap();
        let lits: BTreeSet<Formula> = ["P(Mary)", "C(DL)", "C(AI)", "teaches(Mary,DL)", "!teaches(Mary,AI)"]
            .iter()
            .map(|s| parse(s))
            .collect();
        assert_eq!(qm.ftype.lits(), lits);
        assert!(is_quasimodel(&qm, CandidateMode::Strict));

        let qm_neg = qm_of(&example_expand_kb().negated(), &m).unwrap();
        assert_eq!(qm_neg.ftype.lits(), lits);

        let p = Interpretation::builder(["x"])
            .concept("P", ["x"])
            .individual("m", "x")
            .build()
            .unwrap();
        assert_eq!(qm_of(&parse("P(m)"), &p).unwrap().ftype, ftype(&["P(m)"]));
    }

    #[test]
    fn broken_candidates_are_rejected() {
        let m = example_model();
        let mut qm = qm_of(&example_contract_kb(), &m).unwrap();
        qm.types.clear();
        assert!(!is_quasimodel(&qm, CandidateMode::Strict));

        // a single type claiming ∃r.A without any type containing A
        let f = parse("(exists r.A)(a)");
        let a = Concept::name("A");
        let ex = Concept::exists("r", a.clone());
        let t = ConceptType([ex.clone(), a.negated()].into());
        let mc = ModelCandidate {
            origin: f.clone(),
            types: [t.clone()].into(),
            assignment: [("a".into(), t)].into(),
            ftype: ftype(&["(exists r.A)(a)"]),
        };
        assert!(!is_quasimodel(&mc, CandidateMode::Strict));
        let w = ConceptType([ex.negated(), a.clone()].into());
        let fixed = ModelCandidate {
            types: [mc.assignment["a"].clone(), w].into(),
            ..mc
        };
        assert!(is_quasimodel(&fixed, CandidateMode::Strict));
    }

    #[test]
    fn realisation_of_top_role_quasimodel() {
        let phi = top_role_kb();
        let r = Reasoner::new(&phi, &Config::default()).unwrap();
        let qms = r.quasimodels().unwrap();
        assert_eq!(qms.len(), 1);
        let i = realize(&qms[0]);
        assert!(i.holds(&phi).unwrap());
        assert!(i.holds(&parse("C(a) /\\ r(a,b)")).unwrap());
    }

    #[test]
    fn top_is_in_every_type() {
        let f = parse("(exists r.top)(a)");
        let r = Reasoner::new(&f, &Config::default()).unwrap();
        assert_eq!(r.concept_type_count(), 2);
        for q in r.quasimodels().unwrap() {
            assert!(q.types().iter().all(|t| t.contains(&Concept::Top)));
            assert!(realize(&q).holds(&f).unwrap());
        }
    }
}
