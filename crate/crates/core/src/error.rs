use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 256")]
    BadModulus(u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("ring element is not a unit")]
    NotUnit,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("generator `{0}` has no assigned value")]
    Unassigned(String),
    #[error("expression parse error at byte {pos}: {msg}")]
    ExprParse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the transposition chi_g is undefined for the identity")]
    ChiOfIdentity,
    #[error("the given elements do not generate the group")]
    NotGenerating,
    #[error("labeled set has {0} elements, at least 5 are required")]
    SetTooSmall(usize),
    #[error("prime {p} does not divide the set size {size}")]
    PrimeDoesNotDivide { p: u32, size: usize },
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("enumeration cap of {cap} exceeded at radius {reached}")]
    CapExceeded { cap: usize, reached: usize },
    #[error("marking arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("generation certificate failed: {0}")]
    CertificateFailed(String),
    #[error("chain file line {line}: {msg}")]
    ChainParse { line: usize, msg: String },
    #[error("invalid chain: {}", .0.join("; "))]
    InvalidChain(Vec<String>),
    #[error("limit-model support escaped the window of half-width {0}")]
    WindowExceeded(i64),
    #[error("separation condition violated: {0}")]
    Separation(String),
    #[error("orders {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("commutator search exhausted: {0}")]
    SearchExhausted(String),
    #[error("{vertices} vertices exceed the vertex cap of {cap}")]
    VertexCap { cap: usize, vertices: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
