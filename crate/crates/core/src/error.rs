use alloc::string::String;

/// Errors raised by constructions and computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is out of range (need 2 <= N <= 2^31)")]
    BadModulus(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("the zero ring is not allowed")]
    ZeroRing,
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("ring is not local ({0} maximal ideals)")]
    NotLocal(usize),
    #[error("enumeration budget exceeded: {order} elements > cap {cap}")]
    BudgetExceeded { order: String, cap: u128 },
    #[error("element does not lie in the required set: {0}")]
    NotMember(String),
    #[error("inconsistent module action: {0}")]
    InconsistentModule(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
