use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// [`Error::class`] buckets variants into the coarse classes the CLI maps to
/// exit codes: anything user-correctable is `Usage`, a failed cross-size
/// stabilization check is `Gate`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}; truncate explicitly before combining")]
    OrderMismatch { left: usize, right: usize },

    #[error("series logarithm requires constant term 1, got {got}")]
    LogConstantTerm { got: String },

    #[error("series exponential requires constant term 0, got {got}")]
    ExpConstantTerm { got: String },

    #[error("series composition requires inner constant term 0, got {got}")]
    ComposeConstantTerm { got: String },

    #[error("series reversion requires s(0) = 0 and s'(0) != 0")]
    RevertPrecondition,

    #[error("{lattice} lattice size {lx}x{ly} below minimum {min} in the periodic direction")]
    DimensionTooSmall {
        lattice: &'static str,
        lx: u32,
        ly: u32,
        min: u32,
    },

    #[error("hexagonal lattice dimensions must be even, got {lx}x{ly}")]
    OddHexagonalDimension { lx: u32, ly: u32 },

    #[error("chain lattice takes size Nx1 (a cycle of length N), got {lx}x{ly}")]
    BadChainDims { lx: u32, ly: u32 },

    #[error("chain cylinder takes circumference 1 (a path), got {circumference}")]
    BadChainCylinder { circumference: u32 },

    #[error(
        "graph too large for brute force (E = {edges}, max dimers = {max_dimers}); \
         need E <= 40 or max dimers <= 4"
    )]
    TooLargeForBruteForce { edges: usize, max_dimers: usize },

    #[error("frontier width {width} exceeds the supported bound {bound}")]
    FrontierTooWide { width: u32, bound: u32 },

    #[error(
        "stabilization gate failed for {lattice} at order {order} (sizes {sizes}): \
         sizes too small for this order; first differing coefficient k = {k}: {left} vs {right}"
    )]
    GateFailure {
        lattice: &'static str,
        order: usize,
        sizes: String,
        k: usize,
        left: String,
        right: String,
    },

    #[error("pressure series for {lattice} has f_1 = {got}, expected q/2 = {expected}")]
    BadLinearPressure {
        lattice: &'static str,
        got: String,
        expected: String,
    },

    #[error("{lattice} lattice has no kernel table")]
    NoKernelTable { lattice: &'static str },

    #[error("{lattice} lattice has no tabulated reference series")]
    NoReferenceSeries { lattice: &'static str },

    #[error("requested order {requested} exceeds the tabulated order {available} for {lattice}")]
    OrderBeyondReference {
        lattice: &'static str,
        requested: usize,
        available: usize,
    },

    #[error("p = {p} outside [0, 1]")]
    POutOfRange { p: f64 },

    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

/// Coarse error classes, one per CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Gate,
}

impl Error {
    pub fn with_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::GateFailure { .. } => ErrorClass::Gate,
            Error::Context { source, .. } => source.class(),
            _ => ErrorClass::Usage,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
