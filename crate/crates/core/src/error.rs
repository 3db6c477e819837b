use core::fmt;

/// Errors shared by the exact layers of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Vectors or forms of inconsistent length were mixed.
    DimensionMismatch { expected: usize, got: usize },
    /// An operation that needs a nonempty polyhedron got an empty one.
    EmptyPolyhedron,
    /// A hyperplane was built from a form with zero linear part.
    ZeroLinearPart,
    /// Two hyperplanes of an arrangement are proportional as projective forms.
    ProportionalForms,
    /// Hyperplane labels within an arrangement must be unique.
    DuplicateLabel,
    /// `kn_arrangement` and friends need N >= 1.
    InvalidN,
    /// The flat's equations are inconsistent (the subspace is empty).
    InconsistentFlat,
    /// The integration domain does not have full dimension N.
    DegenerateDomain { dim: i64, ambient: usize },
    /// Infinity-flat contribution tests need the domain in KN atoms.
    UnsupportedInfinity,
    /// The requested condition is not in the condition list.
    UnknownCondition,
    /// `general_conditions` only accepts general arrangements.
    NotGeneralArrangement,
    /// A rational literal failed to parse.
    BadRational,
    /// Precondition violation with a short explanation.
    Precondition(&'static str),
}

impl core::error::Error for Error {}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::EmptyPolyhedron => write!(f, "polyhedron is empty"),
            Error::ZeroLinearPart => write!(f, "hyperplane has zero linear part"),
            Error::ProportionalForms => write!(f, "proportional hyperplane forms in arrangement"),
            Error::DuplicateLabel => write!(f, "duplicate hyperplane label"),
            Error::InvalidN => write!(f, "N must be at least 1"),
            Error::InconsistentFlat => write!(f, "flat equations are inconsistent"),
            Error::DegenerateDomain { dim, ambient } => {
                write!(f, "domain has dimension {dim}, expected full dimension {ambient}")
            }
            Error::UnsupportedInfinity => {
                write!(f, "infinity-flat test requires a domain given by KN atoms")
            }
            Error::UnknownCondition => write!(f, "condition is not in the condition list"),
            Error::NotGeneralArrangement => {
                write!(f, "operation requires a general arrangement (use kn_conditions for KN)")
            }
            Error::BadRational => write!(f, "malformed rational literal"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}
