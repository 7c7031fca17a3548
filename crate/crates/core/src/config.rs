//! Reasoner knobs shared by every operation that enumerates types.

/// Which direction of the concept-assertion condition a model candidate must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CandidateMode {
    /// `C(a) ∈ f` iff `C ∈ o(a)`. Needed for realisations to satisfy `¬C(a) ∈ f`.
    #[default]
    Strict,
    /// Only `C(a) ∈ f` implies `C ∈ o(a)`, as in the original definition.
    /// Not sound for negated concept assertions; useful for reproducing
    /// published worked examples.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Config {
    /// Cap on the number of distinct atoms of a formula.
    pub max_atoms: usize,
    /// Cap on the number of non-negated members of the subconcept closure.
    pub max_subconcepts: usize,
    pub mode: CandidateMode,
}

pub const DEFAULT_MAX_ATOMS: usize = 12;
pub const DEFAULT_MAX_SUBCONCEPTS: usize = 14;
/// Concept types are bit masks over the non-negated subconcepts.
pub const HARD_MAX_SUBCONCEPTS: usize = 63;

impl Default for Config {
    fn default() -> Self {
        Config {
            max_atoms: DEFAULT_MAX_ATOMS,
            max_subconcepts: DEFAULT_MAX_SUBCONCEPTS,
            mode: CandidateMode::Strict,
        }
    }
}

impl Config {
    pub fn paper() -> Self {
        Config {
            mode: CandidateMode::Paper,
            ..Config::default()
        }
    }

    pub fn with_mode(mut self, mode: CandidateMode) -> Self {
        self.mode = mode;
        self
    }
}
