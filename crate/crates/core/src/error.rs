use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the library. Variants carry enough context
/// for a caller to name the violated precondition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    ZeroDegree,
    FieldTooLarge { p: u32, m: u32 },
    ModulusDegree { expected: usize, found: usize },
    ModulusNotMonic,
    ModulusCoefficient(u32),
    ReducibleModulus,
    NotPrimitive,
    ElementOutOfRange { index: u32, order: u32 },
    DivisionByZero,
    ZeroElement,
    MixedFields,
    NotADivisor { d: usize, order: u32 },
    Parse(String),

    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    NotSquare { rows: usize, cols: usize },
    IndexOutOfRange { index: usize, bound: usize },
    RankDeficient { rank: usize, rows: usize },

    /// A twisted-code recipe violates one of its invariants; the string names it.
    InvalidSpec(&'static str),
    DuplicatePoint(usize, usize),
    PointCollidesWithAnchor(usize),
    DimensionTooLarge { k: usize, n: usize },
    NoSubgroupLargeEnough { needed: usize },
    NotEnoughNonMembers,
    WrongArity { expected: usize, found: usize },
    FieldShape(&'static str),
    KOutOfCertificateRange { k: usize, n: usize },

    BudgetExceeded { needed: u128, budget: u128 },
    /// A closed-form or cross-check failed; this indicates a bug, not bad input.
    Inconsistent(&'static str),

    TooManyErasures { erased: usize, allowed: usize },
    SingularSurvivors(Vec<usize>),
    CorruptSymbol(usize),
    LengthMismatch { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            NotPrime(p) => write!(f, "characteristic {p} is not prime"),
            ZeroDegree => write!(f, "extension degree must be at least 1"),
            FieldTooLarge { p, m } => write!(f, "GF({p}^{m}) exceeds the supported order 2^16"),
            ModulusDegree { expected, found } => {
                write!(f, "modulus must have {expected} coefficients, found {found}")
            }
            ModulusNotMonic => write!(f, "modulus is not monic"),
            ModulusCoefficient(c) => write!(f, "modulus coefficient {c} is not reduced mod p"),
            ReducibleModulus => write!(f, "modulus is reducible"),
            NotPrimitive => write!(f, "element does not generate the multiplicative group"),
            ElementOutOfRange { index, order } => {
                write!(f, "element index {index} is outside a field of order {order}")
            }
            DivisionByZero => write!(f, "division by zero"),
            ZeroElement => write!(f, "zero is not a member of any multiplicative group"),
            MixedFields => write!(f, "operands belong to different fields"),
            NotADivisor { d, order } => write!(f, "{d} does not divide q - 1 = {order}"),
            Parse(s) => write!(f, "parse error: {s}"),
            DimensionMismatch { op, left, right } => write!(
                f,
                "{op}: incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            IndexOutOfRange { index, bound } => write!(f, "index {index} out of range 0..{bound}"),
            RankDeficient { rank, rows } => write!(f, "matrix has rank {rank} < {rows} rows"),
            InvalidSpec(what) => write!(f, "invalid code spec: {what}"),
            DuplicatePoint(i, j) => write!(f, "evaluation points {i} and {j} coincide"),
            PointCollidesWithAnchor(i) => write!(f, "evaluation point {i} equals b or c"),
            DimensionTooLarge { k, n } => write!(f, "dimension k = {k} exceeds length n = {n}"),
            NoSubgroupLargeEnough { needed } => {
                write!(f, "no proper subgroup has {needed} non-identity elements")
            }
            NotEnoughNonMembers => write!(f, "fewer than the required twist scalars lie outside H"),
            WrongArity { expected, found } => {
                write!(f, "expected {expected} twisted column(s), spec has {found}")
            }
            FieldShape(what) => write!(f, "field does not fit this construction: {what}"),
            KOutOfCertificateRange { k, n } => {
                write!(f, "Schur certificate needs 3 <= k <= n/2, got k = {k}, n = {n}")
            }
            BudgetExceeded { needed, budget } => {
                write!(f, "enumeration needs {needed} steps, budget is {budget}")
            }
            Inconsistent(what) => write!(f, "internal consistency check failed: {what}"),
            TooManyErasures { erased, allowed } => {
                write!(f, "{erased} erasures, at most {allowed} are recoverable")
            }
            SingularSurvivors(cols) => write!(f, "surviving columns {cols:?} are dependent"),
            CorruptSymbol(i) => write!(f, "symbol {i} disagrees with the re-encoded codeword"),
            LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
