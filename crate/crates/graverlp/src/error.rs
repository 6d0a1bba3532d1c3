use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    InvalidInput(String),
    LengthMismatch { expected: usize, found: usize },
    /// Subdeterminant lcm is undefined for the all-zero matrix.
    ZeroMatrix,
    /// The zero vector is not a direction.
    ZeroDirection,
    /// A vector required to lie in ker(A) does not.
    NotInKernel,
    /// A starting point violates the constraints.
    NotFeasible,
    NotAVertex,
    /// The feasible region is empty where a feasible point is required.
    Infeasible,
    /// A desk-scale enumeration guard was exceeded.
    ResourceLimit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::ZeroMatrix => write!(f, "subdeterminant lcm is undefined for a zero matrix"),
            Error::ZeroDirection => write!(f, "the zero vector is not a valid direction"),
            Error::NotInKernel => write!(f, "vector does not lie in the kernel of the matrix"),
            Error::NotFeasible => write!(f, "point is not feasible for the instance"),
            Error::NotAVertex => write!(f, "point is not a vertex of the feasible polyhedron"),
            Error::Infeasible => write!(f, "the instance has no feasible solution"),
            Error::ResourceLimit(msg) => write!(f, "resource cap exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
