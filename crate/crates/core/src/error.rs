use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("undeclared vertex `{name}` at line {line}, column {col}")]
    UndeclaredVertex { name: String, line: usize, col: usize },
    #[error("relation at line {line} is not a combination of parallel paths: {msg}")]
    NonParallelRelation { line: usize, msg: String },
    #[error("relation at line {line} contains a path of length < 2: `{path}`")]
    ShortRelation { line: usize, path: String },
    #[error("ideal is not admissible: paths survive beyond length bound {bound}")]
    NonAdmissible { bound: usize },
    #[error("inconsistent relations: {0}")]
    Inconsistent(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid object: {0}")]
    Invalid(String),
    #[error("module has a projective summand: {0}")]
    Projective(String),
    #[error("module has an injective summand: {0}")]
    Injective(String),
    #[error("object is decomposable: {0}")]
    Decomposable(String),
    #[error("object is zero: {0}")]
    ZeroObject(String),
    #[error("complex is not perfect (a minimized term is not projective); see the injective-dimension obstructions: {0}")]
    NotPerfect(String),
    #[error("complex is not coperfect (a minimized term is not injective): {0}")]
    NotCoperfect(String),
    #[error("empty corpus: a certificate over no test objects would be vacuous")]
    EmptyCorpus,
    #[error("subcategory hypothesis not witnessed in the corpus: {0}")]
    HypothesisNotWitnessed(String),
    #[error("no cover/envelope found within bound {0}")]
    NotFoundWithinBound(usize),
    #[error("algebra is not Gorenstein within bound {0}")]
    NotGorenstein(usize),
    #[error("could not certify local endomorphism ring: {0}")]
    Locality(String),
    #[error("verification failure (engine bug): {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}
