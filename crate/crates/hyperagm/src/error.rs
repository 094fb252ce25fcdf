//! Error type shared by every module.

use alloc::string::String;
use core::fmt;

/// Failure modes of the numerical routines.
///
/// Variants split into two families: *domain* errors (the input lies outside
/// the contract of the routine) and *convergence* errors (the input was
/// admissible but an iteration or quadrature failed to reach its target).
/// The CLI maps the two families to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the routine.
    Domain(String),
    /// The sextic has (nearly) repeated roots; the curve degenerates.
    SingularCurve { discriminant: f64 },
    /// Real Richelot step produced roots violating the expected interlacing.
    OrderingViolation(String),
    /// An iteration hit its cap before reaching tolerance.
    NoConvergence { steps: usize },
    /// The u, v, w values of a conjugate-pair step had a non-negligible
    /// imaginary part where a real value was required.
    ComplexUvw { max_imag: f64 },
    /// Branchpoint configuration matches neither tabulated ordering case.
    UnsupportedOrdering(String),
    /// An integration path passes too close to a branchpoint that is not
    /// one of its endpoints.
    PathThroughBranchpoint { distance: f64 },
    /// Adaptive quadrature exhausted its depth budget.
    ToleranceNotMet { achieved: f64, requested: f64 },
    /// A Moebius relabelling sent a branchpoint to infinity.
    DegenerateMap,
    /// A bracketing root search found no sign change.
    NoRoot(String),
    /// Continuation lost the solution branch: no root inside the predicted
    /// bracket even after widening.
    RootLost { a: f64 },
    /// The second constraint integral should be real but was not.
    NonRealC2 { im: f64 },
    /// Absolute Igusa invariants are undefined: the weight-2 invariant
    /// vanishes.
    WeightTwoZero,
}

impl Error {
    /// True for the convergence family (iteration/search/quadrature failed),
    /// false for the domain family.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::OrderingViolation(_)
                | Error::ToleranceNotMet { .. }
                | Error::NoRoot(_)
                | Error::RootLost { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::SingularCurve { discriminant } => {
                write!(f, "singular curve: |discriminant| = {discriminant:.3e}")
            }
            Error::OrderingViolation(msg) => write!(f, "ordering violation: {msg}"),
            Error::NoConvergence { steps } => {
                write!(f, "no convergence after {steps} iterations")
            }
            Error::ComplexUvw { max_imag } => write!(
                f,
                "u,v,w not real: max imaginary residue {max_imag:.3e}"
            ),
            Error::UnsupportedOrdering(msg) => {
                write!(f, "unsupported branchpoint ordering: {msg}")
            }
            Error::PathThroughBranchpoint { distance } => write!(
                f,
                "integration path passes within {distance:.3e} of a branchpoint"
            ),
            Error::ToleranceNotMet { achieved, requested } => write!(
                f,
                "quadrature reached {achieved:.3e}, requested {requested:.3e}"
            ),
            Error::DegenerateMap => write!(f, "degenerate Moebius relabelling"),
            Error::NoRoot(msg) => write!(f, "no root bracketed: {msg}"),
            Error::RootLost { a } => {
                write!(f, "continuation lost the solution branch near a = {a}")
            }
            Error::NonRealC2 { im } => {
                write!(f, "second constraint integral not real: Im = {im:.3e}")
            }
            Error::WeightTwoZero => {
                write!(f, "weight-2 invariant vanishes; absolute invariants undefined")
            }
        }
    }
}
