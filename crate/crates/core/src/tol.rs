//! Centralized numerical tolerances.
//!
//! Every threshold that gates an operation or an invariant lives here so
//! the acceptance tests and the library agree on the same numbers.

/// Leading coefficient must exceed this fraction of the largest coefficient.
pub const LEADING_COEFF_REL: f64 = 1e-14;

/// Root-solver backward residual: |p(root)| relative to the coefficient scale at root.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Cluster radius for multiplicity detection in the root solver.
pub const ROOT_CLUSTER: f64 = 1e-7;

/// Minimum separation between numerator and denominator roots of a rational map.
pub const SHARED_ROOT_SEP: f64 = 1e-10;

/// Blaschke zeros must satisfy |a| < 1 - this margin.
pub const BLASCHKE_ZERO_MARGIN: f64 = 1e-12;

/// Unimodularity slack for Blaschke boundary values and zero-at-origin checks.
pub const UNIT_CIRCLE_EPS: f64 = 1e-12;

/// Input samples for a Blaschke fit must be unimodular within this.
pub const FIT_SAMPLE_UNIMODULAR: f64 = 1e-8;

/// Sup residual above which a Blaschke fit is rejected.
pub const FIT_RESIDUAL: f64 = 1e-6;

/// Critical values this close to the unit circle make the lemniscate degenerate.
pub const DEGENERATE_CRITICAL: f64 = 1e-9;

/// Newton correction target while tracing a level set.
pub const TRACE_RESIDUAL: f64 = 1e-12;

/// Every emitted level-set sample must satisfy | |m(z)| - 1 | below this.
pub const SAMPLE_ON_CURVE: f64 = 1e-10;

/// Consecutive-gap ratio bound for Jordan curve samples.
pub const GAP_RATIO: f64 = 4.0;

/// Riemann-map normalization residual (|map(0) - z0|, imaginary part of the capacity).
pub const NORMALIZATION: f64 = 1e-10;

/// Boundary images of circle points must land on the curve within this.
pub const BOUNDARY_DISTANCE: f64 = 1e-8;

/// Newton inversion of a Riemann map targets this residual.
pub const MAP_INVERT_RESIDUAL: f64 = 1e-10;

/// Spectral-tail bound certifying a circle lift as smooth.
pub const SMOOTHNESS_TAIL: f64 = 1e-8;

/// Sup residual of A(k) - B accepted from the conjugacy solver.
pub const CONJUGACY_RESIDUAL: f64 = 1e-9;

/// Sup residual of k^n - B accepted from the n-th root construction.
pub const NTH_ROOT_RESIDUAL: f64 = 1e-10;

/// Theorem residual recorded by the forward pipelines.
pub const THEOREM_RESIDUAL: f64 = 1e-6;

/// Fitted A in the rational pipeline must vanish at 0 within this.
pub const A_ZERO_AT_ORIGIN: f64 = 1e-8;

/// Critical values of a reconstructed polynomial must match targets within this.
pub const CRITICAL_MATCH: f64 = 1e-8;

/// Sup residual |B - P(phi_-)| accepted from the polynomial inverse.
pub const INVERSE_RESIDUAL: f64 = 1e-5;

/// Fingerprint alignment accepted when closing the inverse loop.
pub const INVERSE_ALIGN: f64 = 1e-4;

/// Functional-equation residual accepted from the rational inverse.
pub const RATIONAL_RESIDUAL: f64 = 1e-4;

/// Coefficientwise agreement of canonical polynomial forms.
pub const CANONICAL_COEFF: f64 = 1e-6;

/// Homotopy corrector residual at accepted steps.
pub const HOMOTOPY_RESIDUAL: f64 = 1e-10;

/// Retry budget for perturbed homotopy paths.
pub const HOMOTOPY_RETRIES: usize = 25;

/// Default circle-grid size; doubled until the smoothness proxy passes.
pub const DEFAULT_GRID: usize = 1024;

/// Default boundary grid for the conformal solver.
pub const DEFAULT_BOUNDARY_GRID: usize = 512;

/// Hard cap on adaptive grid doubling.
pub const MAX_GRID: usize = 8192;
