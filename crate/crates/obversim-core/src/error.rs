use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A rotation or reflection axis was too far from unit length to
    /// normalise (including the zero vector).
    InvalidAxis { norm: f64 },
    /// Rejection sampling accepted almost nothing; the density is
    /// incompatible with its claimed supremum bound.
    PathologicalDensity { acceptance_rate: f64 },
    /// The initial point of a trajectory lies in a region where the
    /// density vanishes, so the dissipation production is undefined.
    ZeroProbabilityOrigin,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAxis { norm } => {
                write!(f, "axis norm {norm} is too far from 1 to normalise")
            }
            Error::PathologicalDensity { acceptance_rate } => write!(
                f,
                "rejection sampling acceptance rate {acceptance_rate:.3e} is below 1e-4"
            ),
            Error::ZeroProbabilityOrigin => {
                write!(f, "initial configuration has zero probability density")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
