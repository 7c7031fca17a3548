//! Model contraction and model expansion, and the literal-cell quotient.
//!
//! A cell is a satisfiable formula type of `φ` or `¬φ`. Its literals fix the
//! truth value of every atom of `φ`, so two models fall in the same cell iff
//! they agree on those atoms, and every formula over the atoms of `φ` is
//! either true in the whole cell or false in the whole cell.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::config::Config;
use crate::dnf::lit_conjunction;
use crate::error::{Error, Result};
use crate::semantics::Interpretation;
use crate::syntax::{atoms, literal_conjunction, Formula};
use crate::typesys::{qm_of, FormulaType, Reasoner};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    lits: BTreeSet<Formula>,
    ftype: FormulaType,
    in_base: bool,
}

impl Cell {
    pub fn lits(&self) -> &BTreeSet<Formula> {
        &self.lits
    }

    pub fn ftype(&self) -> &FormulaType {
        &self.ftype
    }

    /// Whether the models of this cell satisfy the base formula.
    pub fn in_base(&self) -> bool {
        self.in_base
    }

    pub fn conjunction(&self) -> Formula {
        literal_conjunction(&self.lits)
    }

    fn value_of(&self, atom: &Formula) -> bool {
        self.lits.contains(atom)
    }

    /// Truth value of `g` throughout the cell. `g` must only use atoms of the base.
    pub fn evaluate(&self, g: &Formula) -> Result<bool> {
        Ok(match g {
            Formula::Falsum => false,
            Formula::Not(x) => !self.evaluate(x)?,
            Formula::And(l, r) => self.evaluate(l)? && self.evaluate(r)?,
            atom => {
                if !self.lits.contains(atom) && !self.lits.contains(&atom.negated()) {
                    return Err(Error::NotInLanguage(alloc::format!("{}", atom)));
                }
                self.value_of(atom)
            }
        })
    }
}

/// All cells of a base formula.
#[derive(Debug, Clone)]
pub struct CellSpace {
    base: Formula,
    cells: Vec<Cell>,
    by_lits: BTreeMap<BTreeSet<Formula>, usize>,
}

pub type CellSet = BTreeSet<usize>;

impl CellSpace {
    pub fn new(base: &Formula, config: &Config) -> Result<Self> {
        Self::with_reasoner(&Reasoner::new(base, config)?)
    }

    pub fn with_reasoner(reasoner: &Reasoner) -> Result<Self> {
        let neg = reasoner.negated();
        let mut cells = BTreeSet::new();
        for (r, in_base) in [(reasoner, true), (&neg, false)] {
            for ft in r.ftypes()? {
                cells.insert(Cell {
                    lits: ft.lits(),
                    ftype: ft,
                    in_base,
                });
            }
        }
        let cells: Vec<Cell> = cells.into_iter().collect();
        let by_lits = cells.iter().enumerate().map(|(i, c)| (c.lits.clone(), i)).collect();
        Ok(CellSpace {
            base: reasoner.origin().clone(),
            cells,
            by_lits,
        })
    }

    pub fn base(&self) -> &Formula {
        &self.base
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The cells inside `Mod(φ)`.
    pub fn base_cells(&self) -> CellSet {
        (0..self.cells.len()).filter(|&i| self.cells[i].in_base).collect()
    }

    /// The cells whose models satisfy `g`. `g` must be over the atoms of the base.
    pub fn cells_of(&self, g: &Formula) -> Result<CellSet> {
        let base_atoms = atoms(&self.base);
        if let Some(a) = atoms(g).into_iter().find(|a| !base_atoms.contains(a)) {
            return Err(Error::NotInLanguage(alloc::format!("{}", a)));
        }
        let mut out = CellSet::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.evaluate(g)? {
                out.insert(i);
            }
        }
        Ok(out)
    }

    /// The cell containing `m`.
    pub fn cell_of(&self, m: &Interpretation) -> Result<usize> {
        let mut lits = BTreeSet::new();
        for a in atoms(&self.base) {
            if m.holds(&a)? {
                lits.insert(a);
            } else {
                lits.insert(a.negated());
            }
        }
        self.by_lits
            .get(&lits)
            .copied()
            .ok_or_else(|| Error::InvalidInterpretation("model lies in no satisfiable cell".into()))
    }

    pub fn index_of(&self, lits: &BTreeSet<Formula>) -> Option<usize> {
        self.by_lits.get(lits).copied()
    }
}

pub fn cells(f: &Formula, config: &Config) -> Result<CellSpace> {
    CellSpace::new(f, config)
}

pub fn cell_of(m: &Interpretation, f: &Formula, config: &Config) -> Result<Cell> {
    let space = CellSpace::new(f, config)?;
    let i = space.cell_of(m)?;
    Ok(space.cells[i].clone())
}

/// `ftypes(φ)` without the formula type of `qm(φ, M)`.
pub fn qfilter(f: &Formula, m: &Interpretation, config: &Config) -> Result<Vec<FormulaType>> {
    if *f == Formula::Falsum {
        return Ok(Vec::new());
    }
    let own = qm_of(f, m)?.ftype;
    let mut types = Reasoner::new(f, config)?.ftypes()?;
    types.retain(|t| *t != own);
    Ok(types)
}

/// The literal set of the cell a change of `f` by `m` acts on: `lit(qm(φ, M))`
/// when `M ⊨ φ`, otherwise `lit(qm(¬φ, M))`.
pub fn affected_literals(f: &Formula, m: &Interpretation) -> Result<BTreeSet<Formula>> {
    if *f == Formula::Falsum {
        return Ok(qm_of(&Formula::tautology(), m)?.ftype.lits());
    }
    let g = if m.holds(f)? { f.clone() } else { f.negated() };
    Ok(qm_of(&g, m)?.ftype.lits())
}

/// `Con(φ, M)`.
pub fn contract(f: &Formula, m: &Interpretation, config: &Config) -> Result<Formula> {
    if !m.holds(f)? {
        return Ok(f.clone());
    }
    let q = qfilter(f, m, config)?;
    Ok(crate::dnf::dnf_from_ftypes(q).formula)
}

/// `Con_s(φ, M) = φ ∧ ¬⋀lit(qm(φ, M))`.
pub fn contract_fast(f: &Formula, m: &Interpretation) -> Result<Formula> {
    if !m.holds(f)? {
        return Ok(f.clone());
    }
    let qm = qm_of(f, m)?;
    Ok(Formula::and(f.clone(), lit_conjunction(&qm.ftype).negated()))
}

/// `Ex(φ, M) = φ ∨ ⋀lit(qm(¬φ, M))`. For `false` the negation is the
/// tautology `[top == top]`.
pub fn expand(f: &Formula, m: &Interpretation) -> Result<Formula> {
    if m.holds(f)? {
        return Ok(f.clone());
    }
    let qm = qm_of(&f.negated(), m)?;
    Ok(Formula::or(f.clone(), lit_conjunction(&qm.ftype)))
}
