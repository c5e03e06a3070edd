#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("generator index {index} out of range 1..{n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("parent map has a cycle through vertex {0}")]
    Cyclic(usize),
    #[error("expected a tree, found {0} roots")]
    NotATree(usize),
    #[error("length {k} out of range for rank {n}")]
    LengthOutOfRange { k: usize, n: usize },
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("object {0} is not rigid")]
    NotRigid(String),
    #[error("shift flag on {0}, which is not relatively projective")]
    ShiftedNonProjective(String),
    #[error("expected exactly one {what}, found {found}")]
    NotUnique { what: &'static str, found: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
