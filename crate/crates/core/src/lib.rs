//! Filtering with integral operators through their induced
//! reproducing-kernel Hilbert spaces.
//!
//! The crate discretizes kernel integral operators on midpoint quadrature
//! grids and builds the whole filtering toolchain on top of that single
//! representation:
//!
//! - [`grid`]: quadrature grids, sampled signals, discrete L2 geometry.
//! - [`kernel`]: sampled kernels, the box product, tag validation, the
//!   closed-form kernel catalog, and kernel-to-graphon rescaling.
//! - [`spectral`]: quadrature eigendecompositions, Mercer reconstruction,
//!   operator square roots, and closed-form oracles.
//! - [`rkhs`]: the Hilbert-space geometry induced by a kernel, its inner
//!   product, kernel sections, expansions, and membership diagnostics.
//! - [`boxalg`]: polynomials under the box product, their realization as
//!   sampled symbols, and the spectral transfer theorem.
//! - [`filtering`]: the two equivalent filter implementations, operator
//!   polynomials and point-wise section pairings, plus filter banks.
//! - [`graphon`]: graphon Fourier transforms, induced kernels of box
//!   powers, and digraphon factorizations.
//! - [`localize`]: bandlimits, finite-expansion duals, the uncertainty
//!   identity, and coefficient design.
//! - [`learn`]: filter learning over operator spectra by kernel ridge
//!   interpolation.
//! - [`io`]: deterministic CSV serialization for every artifact above.
//! - [`verify`]: the self-check suite used by the command-line driver.
//!
//! Signals are complex valued throughout; real examples embed as complex
//! samples with zero imaginary part.

pub mod boxalg;
pub mod error;
pub mod filtering;
pub mod graphon;
pub mod grid;
pub mod io;
pub mod kernel;
pub mod learn;
pub mod localize;
pub mod rkhs;
pub mod spectral;
pub mod verify;

pub use boxalg::{box_power, poly_linear, poly_mul, realize, spectral_transfer, BoxPolynomial};
pub use error::{Error, Result};
pub use filtering::{bank_decompose, filter_operator, filter_pointwise, q_section, FilterSpec};
pub use graphon::{
    digraphon_kernel, gft, igft, induced_graphon_kernel, kv_fourier, FourierCoefficients,
    OperatorIdentityReport,
};
pub use grid::{inner_l2, integrate, norm_l2, rel_l2_error, Grid, Signal};
pub use kernel::{
    adjoint, apply_operator, box_product, induced_kernel, kernel_to_graphon, validate_psd,
    CatalogKernel, GridKernel, KernelTag, PsdReport,
};
pub use learn::{apply_learned, eval_filter, fit_filter, DesignKernel, FilterModel};
pub use localize::{
    bandlimit_check, design_coeffs, spectral_response, uncertainty_residuals, Band, BandEnergies,
    BandReport, BandlimitReport, DesignOutcome, RkhsFiniteSignal,
};
pub use rkhs::{
    expand, h_inner, h_norm, kernel_section, membership_score, project_effective,
    MembershipReport, RkhsContext,
};
pub use spectral::{decompose, SpectralDecomposition, SpectralKind};
pub use verify::{run_all, CriterionResult};

/// Complex scalar used for every signal and kernel sample.
pub type Complex64 = num_complex::Complex64;
