use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("`false` has no subformulae, types or quasimodels")]
    FalsumUnsupported,
    #[error("individual `{0}` is not mapped by the interpretation")]
    UnmappedIndividual(String),
    #[error("invalid interpretation: {0}")]
    InvalidInterpretation(String),
    #[error("resource limit exceeded: {what} is {found}, cap is {cap}")]
    ResourceLimit { what: &'static str, found: u128, cap: u128 },
    #[error("atom `{0}` is not in the language of the literals of the base")]
    NotInLanguage(String),
    #[error("invalid propositional input: {0}")]
    Propositional(String),
}
