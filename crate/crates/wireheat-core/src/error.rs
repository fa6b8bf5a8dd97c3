use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Numerical routines never return NaN or infinity silently; they report
/// the failure through one of these variants instead.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument fell outside the documented domain of a function.
    Domain {
        what: &'static str,
    },
    /// A special-function argument exceeded the range for which the
    /// implementation guarantees finite, accurate results.
    Range {
        what: &'static str,
        limit: f64,
        got: f64,
    },
    /// A Bessel-function order exceeded the configured cap.
    OrderCap {
        cap: i32,
        got: i32,
    },
    /// The integrand produced a non-finite value at this abscissa.
    PoisonedIntegrand {
        x: f64,
    },
    /// An iterative scheme (continued fraction, bisection, golden-section)
    /// failed to converge within its iteration budget.
    NoConvergence {
        what: &'static str,
    },
    /// The azimuthal mode sum did not settle below tolerance before the
    /// order cap was reached.
    ModeSumTruncated {
        n_reached: i32,
    },
    /// A root or extremum bracket could not be established.
    BracketFailed {
        what: &'static str,
    },
    /// The material model does not have the requested feature (for
    /// instance a resonance of the dipole susceptibility).
    NotResonant,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what } => write!(f, "argument outside domain: {what}"),
            Error::Range { what, limit, got } => {
                write!(f, "{what} out of supported range (limit {limit:e}, got {got:e})")
            }
            Error::OrderCap { cap, got } => {
                write!(f, "Bessel order {got} exceeds configured cap {cap}")
            }
            Error::PoisonedIntegrand { x } => {
                write!(f, "integrand returned a non-finite value at x = {x:e}")
            }
            Error::NoConvergence { what } => write!(f, "iteration failed to converge: {what}"),
            Error::ModeSumTruncated { n_reached } => {
                write!(f, "azimuthal mode sum still changing at order cap {n_reached}")
            }
            Error::BracketFailed { what } => write!(f, "could not bracket {what}"),
            Error::NotResonant => write!(f, "material susceptibility has no resonance peak"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
