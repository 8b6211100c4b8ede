use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("point {point} is outside degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in more than one place")]
    RepeatedPoint(usize),
    #[error("not a bijection: {point} and an earlier point both map to {image}")]
    NotBijective { point: usize, image: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    DimensionMismatch {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("not a Latin square: value {value} repeats at ({row}, {col})")]
    NotLatinSquare {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("labels has {found} entries for a group of order {order}")]
    LabelCount { found: usize, order: usize },
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("permutation closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element set is not a subgroup: {reason}")]
    NotASubgroup { reason: String },
    #[error("subgroup is not normal: {conjugator} moves member {member} outside it")]
    NotNormal { conjugator: usize, member: usize },
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("element {0} is not a conjugate generator")]
    NotConjugateGenerator(usize),
    #[error("the subgroup must be nontrivial")]
    TrivialSubgroup,
    #[error("the quotient is not cyclic")]
    QuotientNotCyclic,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator '{name}' at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("invalid generator name '{0}'")]
    InvalidGeneratorName(String),
    #[error("the empty word has no root")]
    EmptyWord,
    #[error("word uses generator index {index} but the alphabet has {size} generators")]
    AlphabetMismatch { index: usize, size: usize },
    #[error("expected an alphabet of {expected} generators, found {found}")]
    AlphabetArity { expected: usize, found: usize },
    #[error("exponent overflow")]
    Overflow,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("expected {generators} generators and {relators} relator(s), found {found_generators} and {found_relators}")]
    Arity {
        generators: usize,
        relators: usize,
        found_generators: usize,
        found_relators: usize,
    },
    #[error("one-relator analysis needs at most one relator, found {0}")]
    TooManyRelators(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("group '{name}': {source}")]
    Construction { name: String, source: GroupError },
    #[error("group '{name}': {source}")]
    Analysis { name: String, source: AnalysisError },
    #[error("order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("duplicate group name {0:?}")]
    DuplicateName(String),
    #[error("worker pool: {0}")]
    Pool(String),
}
