//! Numerical tolerances used by every invariant check.
//!
//! The defaults live in [`Tolerances::DEFAULT`]. A run can override
//! individual entries through the `CTXKIT_TOL` environment variable, a
//! comma separated list of `key=value` pairs such as
//! `CTXKIT_TOL="edge=1e-6,sdp_gap=1e-7"`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity of density matrices.
    pub hermitian: f64,
    /// Unit trace of density matrices.
    pub trace: f64,
    /// Smallest eigenvalue accepted as nonnegative.
    pub psd: f64,
    /// Idempotency, orthogonality and completeness of projectors.
    pub projector: f64,
    /// Hermiticity of observables.
    pub observable: f64,
    /// Deviation of `A^2` from the identity for a +-1 observable.
    pub dichotomic: f64,
    /// Eigenpair residual accepted from the eigensolver.
    pub eigen_residual: f64,
    /// Eigenvalues closer than this are reported as degenerate.
    pub degeneracy: f64,
    /// Probabilities below this make a conditional state undefined.
    pub null_event: f64,
    /// Normalized overlap above `1 - parallel` marks floating rays as equal.
    pub parallel: f64,
    /// Normalized overlap below this marks floating rays as orthogonal.
    pub edge: f64,
    /// Duality gap requested from the theta solver.
    pub sdp_gap: f64,
    /// Pivot threshold for rank-revealing factorizations.
    pub rank: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-12,
        psd: 1e-10,
        projector: 1e-10,
        observable: 1e-10,
        dichotomic: 1e-8,
        eigen_residual: 1e-9,
        degeneracy: 1e-7,
        null_event: 1e-12,
        parallel: 1e-9,
        edge: 1e-7,
        sdp_gap: 1e-8,
        rank: 1e-6,
    };

    /// Defaults with any overrides found in `CTXKIT_TOL` applied.
    pub fn from_env() -> Result<Self> {
        match std::env::var("CTXKIT_TOL") {
            Ok(spec) => Self::DEFAULT.with_overrides(&spec),
            Err(_) => Ok(Self::DEFAULT),
        }
    }

    /// Applies `key=value` overrides separated by commas.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("tolerance override `{item}`")))?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("tolerance value `{}`", value.trim()))
            })?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance `{key}` must be positive"
                )));
            }
            let slot = match key.trim() {
                "hermitian" => &mut self.hermitian,
                "trace" => &mut self.trace,
                "psd" => &mut self.psd,
                "projector" => &mut self.projector,
                "observable" => &mut self.observable,
                "dichotomic" => &mut self.dichotomic,
                "eigen_residual" => &mut self.eigen_residual,
                "degeneracy" => &mut self.degeneracy,
                "null_event" => &mut self.null_event,
                "parallel" => &mut self.parallel,
                "edge" => &mut self.edge,
                "sdp_gap" => &mut self.sdp_gap,
                "rank" => &mut self.rank,
                other => {
                    return Err(Error::InvalidArgument(format!("unknown tolerance `{other}`")))
                }
            };
            *slot = value;
        }
        Ok(self)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
