use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// The energy does not exceed the potential minimum, so there is no oscillation.
    NoOscillation { energy: f64, minimum: f64 },
    /// The integrator produced a nonpositive curvature.
    IntegrationBlowup { theta: f64, kappa: f64 },
    /// The integrator exceeded its step budget or underflowed its step size.
    IntegratorFailure(&'static str),
    /// A curve or profile that must close does not.
    NotClosed { defect: f64, tolerance: f64 },
    /// The requested rotation ratio is not below the small-oscillation limit.
    Threshold { q: f64, omega_plus: f64 },
    /// A bracketing or iterative solver failed.
    Solver(&'static str),
    /// A normal offset would destroy the immersion.
    DegenerateOffset { product: f64 },
    /// Node spacing collapsed below the resolution floor.
    Resolution { spacing: f64, floor: f64 },
    /// A certification residual exceeded its tolerance.
    Certification { check: &'static str, value: f64, tolerance: f64 },
    /// Adaptive quadrature did not reach the requested tolerance.
    Quadrature { estimate: f64, tolerance: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NoOscillation { energy, minimum } => write!(
                f,
                "no oscillation: energy {energy} does not exceed the potential minimum {minimum}"
            ),
            Error::IntegrationBlowup { theta, kappa } => {
                write!(f, "integration blow-up: curvature {kappa} at angle {theta}")
            }
            Error::IntegratorFailure(msg) => write!(f, "integrator failure: {msg}"),
            Error::NotClosed { defect, tolerance } => {
                write!(f, "curve not closed: defect {defect:e} exceeds {tolerance:e}")
            }
            Error::Threshold { q, omega_plus } => write!(
                f,
                "threshold error: q = {q} is not below the small-oscillation limit {omega_plus}"
            ),
            Error::Solver(msg) => write!(f, "solver error: {msg}"),
            Error::DegenerateOffset { product } => write!(
                f,
                "degenerate offset: |eps| * max kappa = {product} must stay below 1"
            ),
            Error::Resolution { spacing, floor } => {
                write!(f, "resolution error: node spacing {spacing:e} below floor {floor:e}")
            }
            Error::Certification { check, value, tolerance } => {
                write!(f, "certification failed: {check} = {value:e} exceeds {tolerance:e}")
            }
            Error::Quadrature { estimate, tolerance } => write!(
                f,
                "quadrature did not converge: error estimate {estimate:e} above {tolerance:e}"
            ),
        }
    }
}

impl core::error::Error for Error {}
