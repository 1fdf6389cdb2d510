use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("classes do not partition Z_{n}: {reason}")]
    NotAPartition { n: usize, reason: String },

    #[error("the class containing 0 is not {{0}}: {class:?}")]
    ZeroClassNotSingleton { class: Vec<usize> },

    #[error("negation of class {class:?} is not a class")]
    NotInverseClosed { class: Vec<usize> },

    #[error(
        "product of classes {x:?} and {y:?} is not constant on a class: \
         {z1} occurs {c1} times, {z2} occurs {c2} times"
    )]
    NotClosedUnderProduct {
        x: Vec<usize>,
        y: Vec<usize>,
        z1: usize,
        z2: usize,
        c1: usize,
        c2: usize,
    },

    #[error("subgroup of order {d} is not an A-group of the S-ring over Z_{n}")]
    NotAnAGroup { d: usize, n: usize },

    #[error("{d} and {e} are not complementary A-group orders in Z_{n}")]
    NotComplementary { d: usize, e: usize, n: usize },

    #[error("orders {n1} and {n2} are not coprime")]
    NotCoprime { n1: usize, n2: usize },

    #[error("section rings over Z_{m} differ: quotient side {left:?}, subgroup side {right:?}")]
    IncompatibleSection {
        m: usize,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    },

    #[error("witness precondition violated: {0}")]
    WitnessPrecondition(String),

    #[error("not a permutation of degree {degree}")]
    NotAPermutation { degree: usize },

    #[error("subgroup generators are not contained in the group")]
    NotASubgroup,

    #[error("section actions do not agree: {0}")]
    SectionActionMismatch(String),

    #[error("automorphism search exceeded the budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },

    #[error("the S-ring is schurian")]
    NotNonSchurian,

    #[error("order {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
