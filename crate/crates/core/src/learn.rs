//! Filter learning by kernel ridge regression over the spectrum.
//!
//! A spectral filter is a function of the operator eigenvalue. Given
//! desired amplitudes at a set of eigenvalues, the regularized
//! least-squares fit over a reproducing-kernel space of functions on the
//! spectrum's domain has a finite closed form: an expansion in design
//! kernel sections centered at the given eigenvalues, with coefficients
//! solving `(G + lambda q I) a = y` where `G(i, j) = K(sigma_i,
//! sigma_j)`. The fitted filter then acts on signals as a spectral
//! multiplier.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{require_same_grid, Signal};
use crate::kernel::CatalogKernel;
use crate::spectral::{SpectralDecomposition, SpectralKind};

/// Abscissae closer than this collapse into one before fitting.
pub const ABSCISSA_MERGE_TOL: f64 = 1e-12;

/// Collapsed abscissae whose targets disagree by more than this are
/// rejected as contradictory.
pub const TARGET_CONFLICT_TOL: f64 = 1e-9;

/// An abscissa must match a decomposition eigenvalue within this to apply
/// the fitted filter spectrally.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-9;

/// A scalar reproducing kernel on an interval, used as the hypothesis
/// space for filter fitting.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignKernel {
    entry: CatalogKernel,
    lo: f64,
    hi: f64,
}

impl DesignKernel {
    /// A catalog rule restricted to the closed interval `[lo, hi]`.
    pub fn new(entry: CatalogKernel, lo: f64, hi: f64) -> Result<DesignKernel> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "the design domain needs finite bounds with lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(DesignKernel { entry, lo, hi })
    }

    pub fn entry(&self) -> &CatalogKernel {
        &self.entry
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, u: f64) -> bool {
        u.is_finite() && u >= self.lo && u <= self.hi
    }

    fn check_domain(&self, u: f64) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                value: u,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// Evaluates the rule; both arguments must lie in the domain.
    pub fn eval(&self, u: f64, v: f64) -> Result<f64> {
        self.check_domain(u)?;
        self.check_domain(v)?;
        Ok(self.entry.eval(u, v))
    }
}

/// A fitted spectral filter: a design-kernel expansion over eigenvalue
/// abscissae.
#[derive(Debug, Clone)]
pub struct FilterModel {
    abscissae: Vec<f64>,
    coeffs: Vec<f64>,
    design: DesignKernel,
    reg: f64,
}

impl FilterModel {
    /// The eigenvalue centers of the expansion (after duplicate collapse).
    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn design(&self) -> &DesignKernel {
        &self.design
    }

    pub fn reg(&self) -> f64 {
        self.reg
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }

    /// The filter's reproducing-space energy `a^T G a`.
    pub fn hypothesis_norm_sqr(&self) -> Result<f64> {
        let q = self.len();
        let mut acc = 0.0;
        for i in 0..q {
            for j in 0..q {
                acc += self.coeffs[i]
                    * self.coeffs[j]
                    * self.design.eval(self.abscissae[i], self.abscissae[j])?;
            }
        }
        Ok(acc)
    }
}

/// Fits a filter to target amplitudes at eigenvalue abscissae by the
/// regularized kernel least squares `(G + reg * q * I) a = y`.
///
/// Abscissae within [`ABSCISSA_MERGE_TOL`] of each other collapse into
/// one; their targets must agree within [`TARGET_CONFLICT_TOL`]. All
/// abscissae must lie inside the design kernel's domain. With `reg = 0`
/// the solve interpolates the targets when the Gram matrix is
/// nonsingular, and a singular system is reported as such.
pub fn fit_filter(
    sigmas: &[f64],
    targets: &[f64],
    design: DesignKernel,
    reg: f64,
) -> Result<FilterModel> {
    if sigmas.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: sigmas.len(),
            got: targets.len(),
        });
    }
    if sigmas.is_empty() {
        return Err(Error::InvalidArgument(
            "fitting needs at least one abscissa".into(),
        ));
    }
    if !(reg.is_finite() && reg >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "the regularization weight must be nonnegative, got {reg}"
        )));
    }
    let mut abscissae: Vec<f64> = Vec::with_capacity(sigmas.len());
    let mut y: Vec<f64> = Vec::with_capacity(sigmas.len());
    for (&s, &t) in sigmas.iter().zip(targets.iter()) {
        if !s.is_finite() || !t.is_finite() {
            return Err(Error::InvalidArgument(
                "abscissae and targets must be finite".into(),
            ));
        }
        design.check_domain(s)?;
        match abscissae
            .iter()
            .position(|&prev| (prev - s).abs() <= ABSCISSA_MERGE_TOL)
        {
            Some(at) => {
                if (y[at] - t).abs() > TARGET_CONFLICT_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "abscissa {s} repeats with contradictory targets {} and {t}",
                        y[at]
                    )));
                }
            }
            None => {
                abscissae.push(s);
                y.push(t);
            }
        }
    }
    let q = abscissae.len();
    let gram = DMatrix::from_fn(q, q, |i, j| design.entry.eval(abscissae[i], abscissae[j]));
    let system = &gram + DMatrix::from_diagonal_element(q, q, reg * q as f64);
    let rhs = DVector::from_column_slice(&y);
    let coeffs = match system.clone().cholesky() {
        Some(chol) => chol.solve(&rhs),
        None => {
            let lu = system.full_piv_lu();
            if !lu.is_invertible() {
                return Err(Error::SingularSystem(format!(
                    "the {q}x{q} regularized Gram system is singular at \
                     regularization weight {reg}"
                )));
            }
            lu.solve(&rhs).ok_or_else(|| {
                Error::SingularSystem("the regularized Gram solve failed".into())
            })?
        }
    };
    Ok(FilterModel {
        abscissae,
        coeffs: coeffs.iter().copied().collect(),
        design,
        reg,
    })
}

/// Evaluates the fitted filter at a point of the design domain:
/// `p(u) = sum_i a_i K(u, sigma_i)`.
pub fn eval_filter(model: &FilterModel, u: f64) -> Result<f64> {
    model.design.check_domain(u)?;
    let mut acc = 0.0;
    for (&s, &a) in model.abscissae.iter().zip(model.coeffs.iter()) {
        acc += a * model.design.entry.eval(u, s);
    }
    Ok(acc)
}

/// Applies the fitted filter as a spectral multiplier: `g = sum_i
/// p(sigma_i) <f, theta_i> theta_i` over all retained modes.
///
/// Every model abscissa must match one of the decomposition's eigenvalues
/// within [`SPECTRUM_MATCH_TOL`], and every retained eigenvalue must lie
/// in the design domain so the filter can be evaluated there.
pub fn apply_learned(
    model: &FilterModel,
    dec: &SpectralDecomposition,
    f: &Signal,
) -> Result<Signal> {
    if dec.kind() != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "learned filters act on kernel-kind decompositions".into(),
        ));
    }
    require_same_grid(dec.grid(), f.grid(), "learned filter application")?;
    for &s in &model.abscissae {
        let matched = (0..dec.len())
            .any(|i| (dec.eigenvalue(i) - s).abs() <= SPECTRUM_MATCH_TOL);
        if !matched {
            return Err(Error::SpectrumMismatch(format!(
                "model abscissa {s} matches no retained eigenvalue"
            )));
        }
    }
    let w = f.grid().weight();
    let fhat = (dec.modes().adjoint() * f.values()).scale(w);
    let mut scaled = DVector::from_element(dec.len(), Complex64::ZERO);
    for i in 0..dec.len() {
        let p = eval_filter(model, dec.eigenvalue(i))?;
        scaled[i] = fhat[i] * p;
    }
    Ok(Signal::from_raw(f.grid(), dec.modes() * scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{norm_l2, rel_l2_error, Grid};
    use crate::kernel::{apply_operator, GridKernel, KernelTag};
    use crate::spectral::decompose;

    /// Closed-form spectrum 1/((i + 1/2)^2 pi^2), i zero-based.
    fn reference_spectrum(q: usize) -> Vec<f64> {
        (0..q)
            .map(|i| {
                let a = (i as f64 + 0.5) * std::f64::consts::PI;
                1.0 / (a * a)
            })
            .collect()
    }

    fn bump(sigma: f64, center: f64, gamma: f64) -> f64 {
        (-(sigma - center) * (sigma - center) / gamma).exp()
    }

    fn gaussian_design(width: f64) -> DesignKernel {
        DesignKernel::new(CatalogKernel::Gaussian { width }, 0.0, 1.0).unwrap()
    }

    #[test]
    fn scalar_system_divides() {
        let design = DesignKernel::new(CatalogKernel::Constant { value: 2.5 }, 0.0, 1.0).unwrap();
        let model = fit_filter(&[0.3], &[5.0], design, 0.0).unwrap();
        assert!((model.coeffs()[0] - 2.0).abs() < 1e-14);
        assert!((eval_filter(&model, 0.9).unwrap() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn zero_regularization_interpolates() {
        let sigmas = reference_spectrum(8);
        let targets: Vec<f64> = sigmas.iter().map(|&s| bump(s, 2e-3, 1e-5)).collect();
        let model = fit_filter(&sigmas, &targets, gaussian_design(1e-3), 0.0).unwrap();
        for (s, t) in sigmas.iter().zip(targets.iter()) {
            assert!(
                (eval_filter(&model, *s).unwrap() - t).abs() < 1e-8,
                "abscissa {s}"
            );
        }
    }

    #[test]
    fn constant_targets_are_reproduced() {
        let sigmas = reference_spectrum(5);
        let targets = vec![0.75; 5];
        let model = fit_filter(&sigmas, &targets, gaussian_design(0.01), 0.0).unwrap();
        for &s in &sigmas {
            assert!((eval_filter(&model, s).unwrap() - 0.75).abs() < 1e-8);
        }
        // all-zero coefficients evaluate to zero everywhere
        let zero = FilterModel {
            abscissae: sigmas.clone(),
            coeffs: vec![0.0; 5],
            design: gaussian_design(0.01),
            reg: 0.0,
        };
        assert_eq!(eval_filter(&zero, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn regularization_path_is_monotone() {
        let sigmas = reference_spectrum(8);
        let targets: Vec<f64> = sigmas.iter().map(|&s| bump(s, 2e-3, 1e-5)).collect();
        let design = gaussian_design(1e-3);
        let mut prev_res = -1.0f64;
        let mut prev_norm = f64::INFINITY;
        for &reg in &[0.0, 1e-4, 1e-2, 1.0] {
            let model = fit_filter(&sigmas, &targets, design.clone(), reg).unwrap();
            let res: f64 = sigmas
                .iter()
                .zip(targets.iter())
                .map(|(&s, &t)| {
                    let d = eval_filter(&model, s).unwrap() - t;
                    d * d
                })
                .sum();
            let h_norm = model.hypothesis_norm_sqr().unwrap();
            assert!(
                res >= prev_res - 1e-12,
                "residual fell from {prev_res} to {res} at reg {reg}"
            );
            assert!(
                h_norm <= prev_norm + 1e-12,
                "hypothesis norm rose from {prev_norm} to {h_norm} at reg {reg}"
            );
            prev_res = res;
            prev_norm = h_norm;
        }
    }

    #[test]
    fn residual_shrinks_with_more_abscissae() {
        let design = gaussian_design(0.002);
        let mut prev = f64::INFINITY;
        for &q in &[15usize, 20, 25, 30, 35] {
            let sigmas = reference_spectrum(q);
            let targets: Vec<f64> = sigmas.iter().map(|&s| bump(s, 1e-3, 1e-5)).collect();
            let model = fit_filter(&sigmas, &targets, design.clone(), 1e-8).unwrap();
            let max_res = sigmas
                .iter()
                .zip(targets.iter())
                .map(|(&s, &t)| (eval_filter(&model, s).unwrap() - t).abs())
                .fold(0.0, f64::max);
            assert!(
                max_res < prev,
                "max residual {max_res} did not shrink below {prev} at q = {q}"
            );
            prev = max_res;
        }
        // the last sweep point sits near the frozen reference value
        assert!(prev > 1e-8 && prev < 1e-5, "final residual {prev}");
    }

    #[test]
    fn normal_equations_are_satisfied() {
        let sigmas = reference_spectrum(8);
        let targets: Vec<f64> = sigmas.iter().map(|&s| bump(s, 2e-3, 1e-5)).collect();
        let reg = 1e-4;
        let model = fit_filter(&sigmas, &targets, gaussian_design(1e-3), reg).unwrap();
        let q = model.len();
        let mut worst = 0.0f64;
        for i in 0..q {
            let mut lhs = reg * q as f64 * model.coeffs()[i];
            for j in 0..q {
                lhs += model.design().eval(sigmas[i], sigmas[j]).unwrap() * model.coeffs()[j];
            }
            worst = worst.max((lhs - targets[i]).abs());
        }
        let y_norm = targets.iter().map(|t| t * t).sum::<f64>().sqrt();
        assert!(worst <= 1e-8 * y_norm.max(1.0), "residual {worst}");
    }

    #[test]
    fn duplicate_abscissae_collapse_or_conflict() {
        let design = gaussian_design(0.05);
        let merged = fit_filter(
            &[0.1, 0.1 + 1e-13, 0.3],
            &[1.0, 1.0, 2.0],
            design.clone(),
            0.0,
        )
        .unwrap();
        assert_eq!(merged.len(), 2);
        let conflicting = fit_filter(&[0.1, 0.1 + 1e-13, 0.3], &[1.0, 1.1, 2.0], design, 0.0);
        assert!(conflicting.is_err());
    }

    #[test]
    fn domain_violations_are_rejected() {
        let design = gaussian_design(0.05);
        assert!(matches!(
            fit_filter(&[1.5], &[1.0], design.clone(), 0.0).unwrap_err(),
            Error::OutOfDomain { .. }
        ));
        let model = fit_filter(&[0.2], &[1.0], design, 0.0).unwrap();
        assert!(matches!(
            eval_filter(&model, -0.1).unwrap_err(),
            Error::OutOfDomain { .. }
        ));
    }

    #[test]
    fn singular_unregularized_system_is_reported() {
        // a constant kernel makes the Gram matrix all-ones
        let design = DesignKernel::new(CatalogKernel::Constant { value: 1.0 }, 0.0, 1.0).unwrap();
        let err = fit_filter(&[0.1, 0.4], &[1.0, 2.0], design.clone(), 0.0).unwrap_err();
        assert!(matches!(err, Error::SingularSystem(_)));
        // regularization rescues it
        assert!(fit_filter(&[0.1, 0.4], &[1.0, 1.0], design, 1e-3).is_ok());
    }

    #[test]
    fn unit_response_reproduces_span_signals() {
        let grid = Grid::new(0.0, 1.0, 64).unwrap();
        let k = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Kernel).unwrap();
        let dec = decompose(&k, None).unwrap();
        let q = 8;
        let sigmas: Vec<f64> = (0..q).map(|i| dec.eigenvalue(i)).collect();
        let model = fit_filter(&sigmas, &vec![1.0; q], gaussian_design(1e-3), 0.0).unwrap();
        let f = dec
            .eigenfunction(0)
            .unwrap()
            .scale(Complex64::new(0.5, 1.0))
            .add(&dec.eigenfunction(3).unwrap().scale(Complex64::new(-1.0, 0.0)))
            .unwrap()
            .add(&dec.eigenfunction(6).unwrap().scale(Complex64::new(0.0, 2.0)))
            .unwrap();
        let g = apply_learned(&model, &dec, &f).unwrap();
        assert!(rel_l2_error(&g, &f).unwrap() < 1e-6);
    }

    #[test]
    fn identity_response_matches_operator_action() {
        let grid = Grid::new(0.0, 1.0, 64).unwrap();
        let k = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Kernel).unwrap();
        let dec = decompose(&k, None).unwrap();
        let q = 8;
        let sigmas: Vec<f64> = (0..q).map(|i| dec.eigenvalue(i)).collect();
        let model = fit_filter(&sigmas, &sigmas.clone(), gaussian_design(1e-3), 0.0).unwrap();
        let f = dec
            .eigenfunction(1)
            .unwrap()
            .scale(Complex64::new(2.0, -0.5))
            .add(&dec.eigenfunction(5).unwrap().scale(Complex64::new(1.0, 1.0)))
            .unwrap();
        let via_model = apply_learned(&model, &dec, &f).unwrap();
        let via_operator = apply_operator(&k, &f).unwrap();
        assert!(rel_l2_error(&via_model, &via_operator).unwrap() < 1e-6);
    }

    #[test]
    fn narrow_bump_isolates_one_mode() {
        let grid = Grid::new(0.0, 1.0, 64).unwrap();
        let k = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Kernel).unwrap();
        let dec = decompose(&k, None).unwrap();
        let q = 8;
        let sigmas: Vec<f64> = (0..q).map(|i| dec.eigenvalue(i)).collect();
        let center = sigmas[1];
        let targets: Vec<f64> = sigmas.iter().map(|&s| bump(s, center, 1e-4)).collect();
        let model = fit_filter(&sigmas, &targets, gaussian_design(1e-3), 0.0).unwrap();
        // an even mix of the top modes
        let mut f = Signal::zeros(&grid);
        for i in 0..q {
            f = f.add(&dec.eigenfunction(i).unwrap()).unwrap();
        }
        let g = apply_learned(&model, &dec, &f).unwrap();
        let w = grid.weight();
        let gain = |i: usize| -> f64 {
            ((dec.modes().column(i).adjoint() * g.values())[(0, 0)] * w).norm()
        };
        assert!(gain(1) > 0.99, "kept-mode gain {}", gain(1));
        for i in [0usize, 2, 3, 4] {
            assert!(
                gain(i) < 0.05,
                "mode {i} leaked with gain {}",
                gain(i)
            );
        }
        assert!(norm_l2(&g) < 1.2);
    }

    #[test]
    fn spectrum_mismatch_is_refused() {
        let grid = Grid::new(0.0, 1.0, 32).unwrap();
        let k = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Kernel).unwrap();
        let dec = decompose(&k, None).unwrap();
        let model = fit_filter(&[0.123], &[1.0], gaussian_design(0.05), 0.0).unwrap();
        let f = Signal::from_real_fn(&grid, |u| u);
        assert!(matches!(
            apply_learned(&model, &dec, &f).unwrap_err(),
            Error::SpectrumMismatch(_)
        ));
    }
}
