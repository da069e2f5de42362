//! Spatial–spectral localization diagnostics.
//!
//! Signals assembled from finitely many kernel sections have Fourier
//! coefficients given in closed form by the expansion data: `fhat_i =
//! sigma_i sum_t a_t conj(theta_i(t))`. Because every coefficient carries
//! a factor `sigma_i > 0`, such signals are never exactly bandlimited;
//! the useful statement is quantitative, splitting spectral energy into a
//! constrained low band, a mid band the coefficients can still shape, and
//! a tail controlled by eigenvalue decay. This module provides the
//! bandlimitation test, the closed-form residual report, the constrained
//! coefficient design for the mid band, and the recovery of a filter's
//! spectral response from expansion coefficients.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{norm_l2, require_same_grid, Signal};
use crate::kernel::{GridKernel, KernelTag};
use crate::rkhs::expand;
use crate::spectral::{SpectralDecomposition, SpectralKind};

/// Default relative out-of-band tolerance for approximate bandlimitation.
pub const DEFAULT_BANDLIMIT_TOL: f64 = 1e-3;

/// Eigenfunction magnitude below which the spectral-response formula is
/// reported as undefined at that mode.
pub const RESPONSE_MASK_TOL: f64 = 1e-8;

/// Relative singular-value cutoff for the numerical rank of the
/// constraint matrix in coefficient design.
pub const CONSTRAINT_RANK_TOL: f64 = 1e-12;

/// A signal given as a finite combination of kernel sections,
/// `f = sum_t a_t k_{centers[t]}`.
#[derive(Debug, Clone)]
pub struct RkhsFiniteSignal {
    centers: Vec<usize>,
    coeffs: Vec<Complex64>,
    kernel: GridKernel,
}

impl RkhsFiniteSignal {
    /// Wraps expansion data over a kernel-tagged operator. Centers are
    /// node indices and must be distinct and in range.
    pub fn new(
        kernel: GridKernel,
        centers: Vec<usize>,
        coeffs: Vec<Complex64>,
    ) -> Result<RkhsFiniteSignal> {
        if kernel.tag() != KernelTag::Kernel {
            return Err(Error::TagViolation(format!(
                "section expansions need a kernel tag, got {}",
                kernel.tag().name()
            )));
        }
        if centers.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: centers.len(),
                got: coeffs.len(),
            });
        }
        if centers.is_empty() {
            return Err(Error::InvalidArgument(
                "a section expansion needs at least one center".into(),
            ));
        }
        let n = kernel.grid().len();
        for (idx, &t) in centers.iter().enumerate() {
            if t >= n {
                return Err(Error::IndexOutOfRange {
                    what: "expansion center",
                    index: t,
                    len: n,
                });
            }
            if centers[..idx].contains(&t) {
                return Err(Error::InvalidArgument(format!(
                    "expansion centers must be distinct; node {t} repeats"
                )));
            }
        }
        Ok(RkhsFiniteSignal {
            centers,
            coeffs,
            kernel,
        })
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn kernel(&self) -> &GridKernel {
        &self.kernel
    }

    /// Assembles the expansion into a grid signal.
    pub fn expand(&self) -> Result<Signal> {
        expand(&self.kernel, &self.centers, &self.coeffs)
    }
}

/// Which of the three spectral bands a mode index falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// Constrained modes below the bandwidth.
    Low,
    /// Modes the expansion coefficients can still shape.
    Mid,
    /// Modes left to eigenvalue decay.
    Tail,
}

impl Band {
    pub fn name(self) -> &'static str {
        match self {
            Band::Low => "low",
            Band::Mid => "mid",
            Band::Tail => "tail",
        }
    }
}

/// Spectral energy split across the three bands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEnergies {
    pub low: f64,
    pub mid: f64,
    pub tail: f64,
}

impl BandEnergies {
    pub fn total(&self) -> f64 {
        self.low + self.mid + self.tail
    }
}

/// Closed-form Fourier data of a section expansion, binned into bands.
#[derive(Debug, Clone)]
pub struct BandReport {
    /// The bandwidth B separating the low band from the mid band.
    pub bandwidth: usize,
    /// Number of expansion centers (the mid band ends here).
    pub center_count: usize,
    /// Fourier coefficients from the closed formula, one per mode.
    pub coefficients: Vec<Complex64>,
    /// Coefficient magnitudes, one per mode.
    pub magnitudes: Vec<f64>,
    /// Energy in each band.
    pub energies: BandEnergies,
}

impl BandReport {
    /// Band containing mode `i`, under the report's cuts.
    pub fn band_of(&self, i: usize) -> Band {
        let m = self.coefficients.len();
        let cut_low = self.bandwidth.min(m);
        let cut_mid = self.center_count.clamp(cut_low, m);
        if i < cut_low {
            Band::Low
        } else if i < cut_mid {
            Band::Mid
        } else {
            Band::Tail
        }
    }
}

/// Outcome of a bandlimitation test.
#[derive(Debug, Clone, Copy)]
pub struct BandlimitReport {
    pub bandwidth: usize,
    /// Largest coefficient magnitude at or beyond the bandwidth.
    pub max_out_of_band: f64,
    /// The relative tolerance the test ran with.
    pub tol: f64,
    pub pass: bool,
}

/// Tests whether `f` is bandlimited to the first `b` modes of `dec`:
/// passes iff `max_{i >= b} |fhat_i| <= tol * ||f||`.
pub fn bandlimit_check(
    f: &Signal,
    dec: &SpectralDecomposition,
    b: usize,
    tol: f64,
) -> Result<BandlimitReport> {
    require_same_grid(dec.grid(), f.grid(), "bandlimit test")?;
    if b > dec.len() {
        return Err(Error::InvalidArgument(format!(
            "bandwidth {b} exceeds the {} retained modes",
            dec.len()
        )));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bandlimit tolerance must be nonnegative, got {tol}"
        )));
    }
    let w = f.grid().weight();
    let mut max_out = 0.0f64;
    for i in b..dec.len() {
        let fhat = (dec.modes().column(i).adjoint() * f.values())[(0, 0)] * w;
        max_out = max_out.max(fhat.norm());
    }
    Ok(BandlimitReport {
        bandwidth: b,
        max_out_of_band: max_out,
        tol,
        pass: max_out <= tol * norm_l2(f),
    })
}

/// Fourier coefficients of a section expansion by the closed formula
/// `fhat_i = sigma_i sum_t a_t conj(theta_i(t))`, binned into low
/// `[0, B)`, mid `[B, |T|)`, and tail `[|T|, m)` bands.
///
/// No quadrature of the assembled signal is involved.
pub fn uncertainty_residuals(
    fs: &RkhsFiniteSignal,
    dec: &SpectralDecomposition,
    b: usize,
) -> Result<BandReport> {
    if dec.kind() != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "the closed-form coefficient identity needs a kernel-kind decomposition".into(),
        ));
    }
    require_same_grid(dec.grid(), fs.kernel.grid(), "closed-form coefficients")?;
    let m = dec.len();
    if b > m {
        return Err(Error::InvalidArgument(format!(
            "bandwidth {b} exceeds the {m} retained modes"
        )));
    }
    let mut coefficients = Vec::with_capacity(m);
    let mut magnitudes = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = Complex64::ZERO;
        for (&t, &a) in fs.centers.iter().zip(fs.coeffs.iter()) {
            acc += a * dec.mode_value(i, t).conj();
        }
        let fhat = acc * dec.eigenvalue(i);
        magnitudes.push(fhat.norm());
        coefficients.push(fhat);
    }
    let cut_low = b.min(m);
    let cut_mid = fs.centers.len().clamp(cut_low, m);
    let energy = |range: std::ops::Range<usize>| -> f64 {
        coefficients[range].iter().map(|z| z.norm_sqr()).sum()
    };
    let energies = BandEnergies {
        low: energy(0..cut_low),
        mid: energy(cut_low..cut_mid),
        tail: energy(cut_mid..m),
    };
    Ok(BandReport {
        bandwidth: b,
        center_count: fs.centers.len(),
        coefficients,
        magnitudes,
        energies,
    })
}

/// Result of the constrained coefficient design.
#[derive(Debug, Clone)]
pub struct DesignOutcome {
    /// Expansion coefficients, one per center.
    pub coeffs: Vec<Complex64>,
    /// The minimized energy `sum_{i in [B, |T|)} |fhat_i|^2`.
    pub mid_band_energy: f64,
    /// Numerical rank of the constraint matrix.
    pub constraint_rank: usize,
}

/// Designs expansion coefficients over `centers` so that the first `b`
/// Fourier coefficients equal `targets` exactly while the mid-band energy
/// over modes `[b, |T|)` is minimized.
///
/// The constraint system is solved through its singular value
/// decomposition: the particular solution comes from the pseudo-inverse
/// and the remaining freedom is the projection onto the constraint null
/// space, over which the mid-band rows are least-squares minimized. The
/// constraint matrix must have full row rank.
pub fn design_coeffs(
    centers: &[usize],
    dec: &SpectralDecomposition,
    b: usize,
    targets: &[Complex64],
) -> Result<DesignOutcome> {
    if dec.kind() != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "coefficient design needs a kernel-kind decomposition".into(),
        ));
    }
    let m = dec.len();
    let t_count = centers.len();
    if b == 0 {
        return Err(Error::InvalidArgument(
            "coefficient design needs at least one constrained mode".into(),
        ));
    }
    if targets.len() != b {
        return Err(Error::DimensionMismatch {
            expected: b,
            got: targets.len(),
        });
    }
    if t_count < b {
        return Err(Error::InvalidArgument(format!(
            "{b} constraints need at least {b} centers, got {t_count}"
        )));
    }
    if t_count > m {
        return Err(Error::InvalidArgument(format!(
            "{t_count} centers need at least as many retained modes, got {m}"
        )));
    }
    let n = dec.grid().len();
    for (idx, &t) in centers.iter().enumerate() {
        if t >= n {
            return Err(Error::IndexOutOfRange {
                what: "design center",
                index: t,
                len: n,
            });
        }
        if centers[..idx].contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "design centers must be distinct; node {t} repeats"
            )));
        }
    }

    // row i, column t: sigma_i conj(theta_i(center_t))
    let row_entry =
        |i: usize, t: usize| dec.mode_value(i, centers[t]).conj() * dec.eigenvalue(i);
    let c_mat = DMatrix::from_fn(b, t_count, row_entry);
    let y = DVector::from_column_slice(targets);

    let svd = c_mat.svd(true, true);
    let s_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let s_cut = CONSTRAINT_RANK_TOL * s_max;
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s.is_finite() && s > s_cut && s > 0.0)
        .count();
    if rank < b {
        return Err(Error::RankDeficient { rank, need: b });
    }
    let u = svd.u.as_ref().expect("singular vectors were requested");
    let v_t = svd.v_t.as_ref().expect("singular vectors were requested");

    // particular (pseudo-inverse) solution and null-space projector
    let mut a = DVector::from_element(t_count, Complex64::ZERO);
    let mut null_proj =
        DMatrix::from_diagonal_element(t_count, t_count, Complex64::ONE);
    for j in 0..svd.singular_values.len() {
        let s = svd.singular_values[j];
        if !(s.is_finite() && s > s_cut && s > 0.0) {
            continue;
        }
        let vj: DVector<Complex64> = v_t.row(j).adjoint();
        let uj_dot_y = (u.column(j).adjoint() * &y)[(0, 0)];
        a += vj.map(|z| z * (uj_dot_y / s));
        null_proj -= &vj * vj.adjoint();
    }

    let mid_rows = t_count - b;
    if mid_rows > 0 {
        let r_mat = DMatrix::from_fn(mid_rows, t_count, |i, t| row_entry(b + i, t));
        let reachable = &r_mat * &null_proj;
        let rhs = (&r_mat * &a).map(|z| -z);
        let svd_r = reachable.svd(true, true);
        let r_max = svd_r.singular_values.iter().copied().fold(0.0, f64::max);
        if r_max > 0.0 {
            let z = svd_r
                .solve(&rhs, CONSTRAINT_RANK_TOL * r_max)
                .map_err(|e| Error::SingularSystem(e.into()))?;
            a += &null_proj * z;
        }
        let achieved = &r_mat * &a;
        let mid_band_energy = achieved.iter().map(|v| v.norm_sqr()).sum();
        Ok(DesignOutcome {
            coeffs: a.iter().copied().collect(),
            mid_band_energy,
            constraint_rank: rank,
        })
    } else {
        Ok(DesignOutcome {
            coeffs: a.iter().copied().collect(),
            mid_band_energy: 0.0,
            constraint_rank: rank,
        })
    }
}

/// Recovers a filter's spectral response from expansion coefficients:
/// `p(sigma_i) = (sum_l alpha_l conj(theta_i(center_l))) / conj(theta_i(v))`,
/// valid where `|theta_i(v)|` exceeds [`RESPONSE_MASK_TOL`]; other modes
/// report `None`.
pub fn spectral_response(
    alpha: &[Complex64],
    centers: &[usize],
    dec: &SpectralDecomposition,
    v: usize,
) -> Result<Vec<Option<Complex64>>> {
    if dec.kind() != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "spectral response recovery needs a kernel-kind decomposition".into(),
        ));
    }
    if alpha.len() != centers.len() {
        return Err(Error::DimensionMismatch {
            expected: centers.len(),
            got: alpha.len(),
        });
    }
    let n = dec.grid().len();
    if v >= n {
        return Err(Error::IndexOutOfRange {
            what: "response node",
            index: v,
            len: n,
        });
    }
    for &t in centers {
        if t >= n {
            return Err(Error::IndexOutOfRange {
                what: "response center",
                index: t,
                len: n,
            });
        }
    }
    let mut out = Vec::with_capacity(dec.len());
    for i in 0..dec.len() {
        let denom = dec.mode_value(i, v).conj();
        if denom.norm() <= RESPONSE_MASK_TOL {
            out.push(None);
            continue;
        }
        let mut acc = Complex64::ZERO;
        for (&t, &al) in centers.iter().zip(alpha.iter()) {
            acc += al * dec.mode_value(i, t).conj();
        }
        out.push(Some(acc / denom));
    }
    Ok(out)
}
