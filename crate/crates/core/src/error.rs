//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by exact-arithmetic operations, model construction and
/// the certified root-modulus routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series must have zero constant term, found {0}")]
    NonzeroConstantTerm(String),

    #[error("series must have constant term 1, found {0}")]
    ConstantTermNotOne(String),

    #[error("series order {order} is below the required minimum {min}")]
    OrderTooSmall { order: usize, min: usize },

    #[error("sequence of length {len} is too short for degree bounds ({num_deg}, {den_deg})")]
    SequenceTooShort {
        len: usize,
        num_deg: usize,
        den_deg: usize,
    },

    #[error("no rational function within the degree bounds matches; first mismatch at coefficient {mismatch_index}")]
    ReconstructionFailed { mismatch_index: usize },

    #[error("polynomial gcd of two zero polynomials is undefined")]
    GcdOfZeroPolynomials,

    #[error("denominator polynomial is zero")]
    ZeroDenominator,

    #[error("denominator constant term is zero; no power-series expansion at the origin")]
    DenominatorVanishesAtOrigin,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions {0}x{0} and {1}x{1} do not match")]
    DimensionMismatch(usize, usize),

    #[error("exterior power index {k} out of range for a {size}x{size} matrix")]
    ExteriorPowerOutOfRange { k: usize, size: usize },

    #[error("graded piece (degree {degree}, weight {weight}): actions do not commute")]
    NonCommutingActions { degree: usize, weight: usize },

    #[error("graded piece (degree {degree}, weight {weight}): f and Frobenius matrices have different sizes")]
    PieceSizeMismatch { degree: usize, weight: usize },

    #[error("duplicate graded piece at (degree {degree}, weight {weight})")]
    DuplicatePiece { degree: usize, weight: usize },

    #[error("graded piece (degree {degree}, weight {weight}) exceeds the bound 2*dim = {max}")]
    GradingOutOfRange {
        degree: usize,
        weight: usize,
        max: usize,
    },

    #[error("purity violated on piece (degree {degree}, weight {weight}): Frobenius eigenvalue modulus in [{lo}, {hi}] is not q^(weight/2) = {expected}")]
    PurityViolation {
        degree: usize,
        weight: usize,
        lo: String,
        hi: String,
        expected: String,
    },

    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),

    #[error("torus matrix must be invertible over the rationals")]
    SingularTorusMatrix,

    #[error("built-in torus model supports rank 2 only, got rank {0}")]
    UnsupportedTorusRank(usize),

    #[error("Frobenius trace {trace} violates the Weil bound 2*sqrt({q})")]
    WeilBoundViolated { trace: i64, q: u64 },

    #[error("abelian product matrix must have nonzero determinant")]
    SingularAbelianMatrix,

    #[error("fixed points of the twisted map are not isolated (det(q^n M - I) = 0)")]
    NonIsolatedFixedPoints,

    #[error("extension bound {ext_bound} too small: solutions require F_q^{needed}")]
    InsufficientExtension { ext_bound: u32, needed: u32 },

    #[error("field size q^{ext} = {size} exceeds the enumeration guard {guard}")]
    FieldTooLarge { ext: u32, size: u128, guard: u128 },

    #[error("curve y^2 = x^3 + {a4}x + {a6} is singular modulo {q}")]
    SingularCurve { q: u64, a4: i64, a6: i64 },

    #[error("elliptic point count requires an odd prime base field, got {0}")]
    EvenCharacteristic(u64),

    #[error("no primitive polynomial found for F_{p}^{m} within the search budget")]
    PrimitivePolyNotFound { p: u64, m: u32 },

    #[error("polynomial of degree zero has no roots")]
    NoRoots,

    #[error("polynomial has a root at the origin; minimum root modulus is zero")]
    RootAtOrigin,

    #[error("root-modulus tolerance must be positive")]
    NonPositiveTolerance,

    #[error("series has a negative coefficient at index {0}; nonnegativity precondition violated")]
    NegativeCoefficient(usize),

    #[error("Bell polynomial index {0} out of the supported range 1..=12")]
    BellIndexOutOfRange(usize),

    #[error("radius estimate needs order >= 2*window, got order {order} with window {window}")]
    WindowTooLarge { order: usize, window: usize },

    #[error("radius estimate window must be at least 4, got {0}")]
    WindowTooSmall(usize),

    #[error("trace length {have} is shorter than the requested order {want}")]
    NotEnoughTraces { have: usize, want: usize },

    #[error("zeta needs at least {min} series terms for reconstruction, got {got}")]
    NotEnoughTerms { got: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
