use crate::params::ValidationError;
use crate::scattering::Sideband;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),

    /// `M + iωI` is numerically singular; the frequency sits on (or next to) a pole.
    #[error("resolvent is singular at omega = {omega} THz (condition estimate {condition:e})")]
    SingularAtFrequency { omega: f64, condition: f64 },

    /// A closed-form expression has a vanishing denominator.
    #[error("closed-form expression has a pole at omega = {omega} THz")]
    PoleAtFrequency { omega: f64 },

    #[error("steady-state root bracketing failed")]
    NoConvergence,

    #[error("eigenvalue iteration did not converge")]
    EigensolverFailure,

    #[error("conversion efficiency vanishes at the {0} sideband; added noise is undefined")]
    ZeroEfficiency(Sideband),

    #[error("closed form requires {0}")]
    PrereqViolation(&'static str),

    #[error("no stable grid point carries a value for the requested metric")]
    AllUnstable,

    #[error("operation requires a {0} drive")]
    WrongDrive(&'static str),

    #[error("invalid axis: {0}")]
    InvalidAxis(&'static str),
}
