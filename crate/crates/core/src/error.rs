use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("root solver failed to converge after {iterations} iterations (worst residual {residual:.3e})")]
    RootsDiverged { iterations: usize, residual: f64 },

    #[error("derivative vanishes identically; critical values are undefined")]
    DegenerateDerivative,

    #[error("evaluation at {z} hits a pole (|denominator| = {denom:.3e})")]
    PoleHit { z: Complex64, denom: f64 },

    #[error("samples are not consistent with a Blaschke product with the given zeros (sup residual {residual:.3e})")]
    BlaschkeFit { residual: f64 },

    #[error("critical value {value} lies on the unit circle within {tol:.1e}; the lemniscate is degenerate")]
    DegenerateLemniscate { value: Complex64, tol: f64 },

    #[error("level-set step size underflow near {location}")]
    StepUnderflow { location: Complex64 },

    #[error("level-set seed search exhausted without closing a component")]
    SeedSearch,

    #[error("boundary solver did not reach tolerance (tail history {history:?})")]
    BoundarySolver { history: Vec<f64> },

    #[error("point {0} is not strictly inside the curve")]
    NotInterior(Complex64),

    #[error("point {0} is not in the image domain of the map")]
    NotInImage(Complex64),

    #[error("Newton inversion diverged for target {0}")]
    InversionDiverged(Complex64),

    #[error("circle lift undersampled: consecutive argument jump {jump:.3} at grid size {grid}; increase N")]
    UnwrapUndersampled { jump: f64, grid: usize },

    #[error("conjugacy residual {0:.3e} above tolerance")]
    ConjugacyResidual(f64),

    #[error("sublevel region is not simply connected ({components} level-set components)")]
    NotSimplyConnected { components: usize },

    #[error("homotopy failed: {0}")]
    Homotopy(String),

    #[error("no homotopy sheet matched the Blaschke data; candidates: {0:?}")]
    SheetExhausted(Vec<String>),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Tag an error with the pipeline stage it came from.
    pub fn stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| e.stage(stage))
    }
}
