use crate::eset::ESet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ground set has {0} elements, the limit is 64")]
    GroundTooLarge(usize),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("duplicate edge label {0}")]
    DuplicateLabel(u32),

    #[error("edge labels are not contiguous from 0: missing label {0}")]
    MissingLabel(u32),

    #[error("bases list is empty")]
    EmptyBases,

    #[error("bases differ in size: {first:?} vs {offender:?}")]
    UnequalBasisSize { first: ESet, offender: ESet },

    #[error("basis element {0} out of range for {1} ground elements")]
    BasisElementOutOfRange(u32, usize),

    #[error("exchange axiom fails for bases {left:?}, {right:?} at element {element}")]
    ExchangeFailed { left: ESet, right: ESet, element: u8 },

    #[error("{0:?} is not a basis")]
    NotABasis(ESet),

    #[error("element {element} lies in the basis {basis:?}")]
    ElementInBasis { basis: ESet, element: u8 },

    #[error("element {element} lies outside the basis {basis:?}")]
    ElementNotInBasis { basis: ESet, element: u8 },

    #[error("{set:?} is not a flat of the {side}")]
    NotAFlat { set: ESet, side: &'static str },

    #[error("interval bounds are not nested: {lo:?} ⊄ {hi:?}")]
    IntervalNotNested { lo: ESet, hi: ESet },

    #[error("{0:?} is dependent")]
    DependentSet(ESet),

    #[error("basis {0:?} has a broken circuit (nonempty external activity)")]
    NotNbc(ESet),

    #[error("matroid has loops {loops:?} / coloops {coloops:?}; conormal constructions need neither")]
    LoopsOrColoops { loops: ESet, coloops: ESet },

    #[error("{0} is not a biflat")]
    NotABiflat(String),

    #[error("{0} is not a biflag")]
    NotABiflag(String),

    #[error("power {power} out of range, expected 0..={max}")]
    PowerOutOfRange { power: usize, max: usize },

    #[error("activity parameter {k} out of range, expected 0..={max}")]
    ActivityOutOfRange { k: usize, max: usize },

    #[error("monomial has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },

    #[error("γ_{pivot} cannot multiply a monomial whose top proper flat contains {pivot}")]
    PivotInFlat { pivot: u8 },

    #[error("ground set with {0} elements is too large for exhaustive enumeration (limit {1})")]
    TooLargeForEnumeration(usize, usize),

    #[error("pipeline invariant violated: {0}")]
    PipelineInvariant(String),
}
