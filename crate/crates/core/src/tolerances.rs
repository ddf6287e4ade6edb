//! Tolerances used by the verification suites.
//!
//! These are artifact constants. Grid-based tolerances assume the default
//! 2048-point logarithmic grid on `[1e-4, 60]` (in units of the natural
//! length scale of the check).

/// Clifford relation `{γ^μ, γ^ν} = 2 g^{μν}` for any valid frame.
pub const CLIFFORD: f64 = 1e-12;

/// Tetrad relation `η^{ab} e_a^μ e_b^ν = g^{μν}`.
pub const TETRAD: f64 = 1e-14;

/// Laguerre recurrence self-consistency (relative).
pub const LAGUERRE_RECURRENCE: f64 = 1e-11;

/// Generating-function partial sums (relative).
pub const GENERATING_FUNCTION: f64 = 1e-10;

/// Moment exactness of a Gauss-Laguerre rule (relative).
pub const QUADRATURE_MOMENT: f64 = 1e-12;

/// First Laguerre integral identity vs quadrature (relative).
pub const LAGUERRE_IDENTITY: f64 = 1e-9;

/// Algebraic vs finite-difference ε after Richardson extrapolation (relative).
pub const SPECTRUM_ORACLE: f64 = 1e-5;

/// Overlap of the discrete eigenvector with the sampled closed form.
pub const EIGENVECTOR_OVERLAP: f64 = 1e-6;

/// Closed-form ODE residuals with analytic derivatives (relative, per row).
pub const CLOSED_FORM_RESIDUAL: f64 = 1e-8;

/// Minimum inflation of the residual when the energy is perturbed by 1 %.
pub const PERTURBATION_INFLATION: f64 = 1e3;

/// Finite-difference operator identities on 2048-point log grids (relative).
pub const GRID_IDENTITY: f64 = 1e-6;

/// Minimum error reduction per grid doubling in the pre-floor regime.
pub const GRID_REFINEMENT_RATIO: f64 = 8.0;

/// Ladder coefficient extracted by projection (absolute).
pub const LADDER_COEFFICIENT: f64 = 1e-5;

/// Relativistic norm of a quadrature-normalized spinor.
pub const NORMALIZATION: f64 = 1e-8;

/// Series vs closed-form coherent states (relative).
pub const COHERENT_SERIES: f64 = 1e-10;

/// Pointwise proportionality of two closed forms.
pub const PROPORTIONALITY: f64 = 1e-12;

/// Σ|c_s|² = 1 for truncated Perelomov coefficients.
pub const FOCK_NORM: f64 = 1e-12;

/// Truncated-Fock displacement operator vs its normal form.
pub const DISPLACEMENT: f64 = 1e-8;

/// Similarity transform of the 1/r coupling matrix.
pub const DIAGONALIZATION: f64 = 1e-12;
