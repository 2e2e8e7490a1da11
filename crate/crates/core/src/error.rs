use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: f64 },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("y = {y} is outside the coupling domain [{y_min}, {y_max}]")]
    Domain { y: f64, y_min: f64, y_max: f64 },

    #[error("trajectory left the coupling domain at t = {t} (y = {y})")]
    DomainExit { t: f64, y: f64 },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("Bogoliubov ratio |beta/alpha| = {0} is not below 1")]
    InvalidRatio(f64),

    #[error("expansion order {expansion} exceeds basis cutoff {basis}")]
    TruncationMismatch { expansion: usize, basis: usize },

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("plate separation must be positive, got {0}")]
    NonpositiveSeparation(f64),

    #[error("oracle force route projected to take {projected_s:.1} s, budget is {budget_s:.1} s")]
    OracleTooSlow { projected_s: f64, budget_s: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}
