use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors for generator construction, linear algebra, and process evaluation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |A - A^H| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("dimension {dim} exceeds the eigensolver limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("unitarity check failed (max |U U^H - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("projector for symbol '{symbol}' failed the {check} check (residual {residual:.3e})")]
    NotProjector {
        symbol: String,
        check: &'static str,
        residual: f64,
    },

    #[error("projectors for '{a}' and '{b}' are not orthogonal (max |P(a) P(b)| = {residual:.3e})")]
    ProjectorsNotOrthogonal { a: String, b: String, residual: f64 },

    #[error("projectors do not sum to the identity (max |sum - I| = {residual:.3e})")]
    ProjectorsIncomplete { residual: f64 },

    #[error("alphabet has {symbols} symbols but {projectors} projectors were supplied")]
    AlphabetMismatch { symbols: usize, projectors: usize },

    #[error("duplicate symbol '{symbol}' in alphabet")]
    DuplicateSymbol { symbol: String },

    #[error("unknown symbol '{symbol}'")]
    UnknownSymbol { symbol: String },

    #[error("symbol index {index} out of range for alphabet of size {alphabet}")]
    SymbolIndexOutOfRange { index: usize, alphabet: usize },

    #[error("measurement pattern is empty")]
    EmptyPattern,

    #[error("measurement pattern contains no measure act")]
    PatternWithoutMeasure,

    #[error("pattern '{pattern}' is not of the form S..SM; no single-symbol effective generator exists")]
    PatternNotReducible { pattern: String },

    #[error("generator is not deterministic: {context}")]
    NotDeterministic { context: String },

    #[error("projector for symbol '{symbol}' is not diagonal in the computational basis")]
    ProjectorNotDiagonal { symbol: String },

    #[error("invalid density matrix: {reason} (residual {residual:.3e})")]
    InvalidDensity { reason: &'static str, residual: f64 },

    #[error("invalid state vector: squared norm {norm_sq:.6e}")]
    InvalidStateVector { norm_sq: f64 },

    #[error("stationarity verification failed (max residual {residual:.3e})")]
    StationarityViolated { residual: f64 },

    #[error("live prefix count {live} exceeds the cap of {cap}")]
    PrefixCapExceeded { live: usize, cap: usize },

    #[error("all outcome probabilities below {tol:.1e} at step {step}; state is numerically degenerate")]
    DegenerateOutcome { step: usize, tol: f64 },

    #[error("trajectory of length {len} is shorter than the block length {block}")]
    TrajectoryTooShort { len: usize, block: usize },

    #[error("word of length {found} in a distribution of length {expected}")]
    WordLengthMismatch { expected: usize, found: usize },

    #[error("distribution is not normalized: total probability {total}")]
    NotNormalized { total: f64 },

    #[error("probability {value} for word at index {index} is outside [0, 1]")]
    InvalidProbability { index: usize, value: f64 },

    #[error("entropy curve must start at H(0) = 0, got {value}")]
    CurveOrigin { value: f64 },

    #[error("entropy curve violates {property} at L = {l} (delta {delta:.3e})")]
    CurveShape {
        property: &'static str,
        l: usize,
        delta: f64,
    },

    #[error("classical generator invalid: {reason} (residual {residual:.3e})")]
    InvalidClassical { reason: &'static str, residual: f64 },

    #[error("L_max must be at least 1")]
    LMaxTooSmall,
}
