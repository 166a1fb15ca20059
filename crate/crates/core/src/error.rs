use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("dispersive n_opt defined for red detuning (delta = {delta})")]
    BlueDetuning { delta: f64 },

    #[error("ancilla softened to instability (omega1^2 + 2 omega1 Re Sigma = {value})")]
    AncillaSoftened { value: f64 },

    #[error("dissipative heating: S_FF[omega1] = {plus} <= S_FF[-omega1] = {minus}")]
    DissipativeHeating { plus: f64, minus: f64 },

    #[error("no net cooling at omega0: S[omega0] = {plus} <= S[-omega0] = {minus}")]
    NoNetCooling { plus: f64, minus: f64 },

    #[error("non-positive total damping {0} in thermal mixing")]
    NonPositiveDamping(f64),

    #[error("quality ratio undefined for n_th1 = 0")]
    UndefinedRatio,

    #[error("divergent integral: system is unstable (margin = {margin:e})")]
    Unstable { margin: f64 },

    #[error("eigenvalue solver failed: {0}")]
    EigenSolver(String),

    #[error("evaluated at system pole (omega = {omega})")]
    AtPole { omega: f64 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error(
        "quadrature did not converge after {panels} panels: estimate {estimate:e}, error {error:e}"
    )]
    NonConvergence {
        estimate: f64,
        error: f64,
        panels: usize,
    },
}
