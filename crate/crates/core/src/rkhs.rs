//! The Hilbert space induced by a positive-semidefinite kernel.
//!
//! A kernel-kind decomposition turns the span of its eigenfunctions into a
//! reproducing-kernel Hilbert space: the inner product divides each mode
//! pairing by its eigenvalue, `<f, g>_H = sum_i <f, theta_i> conj(<g,
//! theta_i>) / sigma_i`, kernel sections `k_v = K(., v)` act as evaluation
//! functionals, and membership of a signal is quantified by how much of
//! its energy the effective modes capture.
//!
//! All sums run over the effective modes only: those whose eigenvalue
//! exceeds `rank_tol` times the top eigenvalue. This keeps the geometry
//! numerically meaningful for kernels of low numerical rank.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{norm_l2, require_same_grid, Signal};
use crate::kernel::GridKernel;
use crate::spectral::{SpectralDecomposition, SpectralKind};

/// Default relative eigenvalue cutoff for the effective rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// A kernel-kind decomposition together with the effective rank used for
/// all Hilbert-space computations.
#[derive(Debug, Clone)]
pub struct RkhsContext {
    dec: SpectralDecomposition,
    rank_tol: f64,
    effective: usize,
}

impl RkhsContext {
    /// Wraps a kernel-kind decomposition. `rank_tol` is relative to the
    /// top eigenvalue and defaults to `DEFAULT_RANK_TOL`.
    pub fn new(dec: SpectralDecomposition, rank_tol: Option<f64>) -> Result<RkhsContext> {
        if dec.kind() != SpectralKind::Kernel {
            return Err(Error::TagViolation(
                "a reproducing-kernel context needs a kernel-kind decomposition".into(),
            ));
        }
        let rank_tol = rank_tol.unwrap_or(DEFAULT_RANK_TOL);
        if !(rank_tol.is_finite() && rank_tol > 0.0 && rank_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rank tolerance must lie in (0, 1), got {rank_tol}"
            )));
        }
        let top = dec.eigenvalues().first().copied().unwrap_or(0.0);
        if top <= 0.0 {
            return Err(Error::DegenerateKernel(
                "the kernel has no positive eigenvalue".into(),
            ));
        }
        let cutoff = rank_tol * top;
        let effective = dec
            .eigenvalues()
            .iter()
            .take_while(|&&sigma| sigma > cutoff)
            .count();
        Ok(RkhsContext {
            dec,
            rank_tol,
            effective,
        })
    }

    pub fn dec(&self) -> &SpectralDecomposition {
        &self.dec
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    /// Number of modes whose eigenvalue exceeds the relative cutoff.
    pub fn effective_rank(&self) -> usize {
        self.effective
    }

    /// Quadrature inner products of `f` against the effective modes.
    pub(crate) fn mode_coefficients(&self, f: &Signal) -> Result<DVector<Complex64>> {
        require_same_grid(self.dec.grid(), f.grid(), "mode expansion")?;
        let theta = self.dec.modes().columns(0, self.effective);
        // <f, theta_i> = w * theta_i^H f
        Ok((theta.adjoint() * f.values()).scale(f.grid().weight()))
    }
}

/// Inner product of the induced Hilbert space over the effective modes.
pub fn h_inner(ctx: &RkhsContext, f: &Signal, g: &Signal) -> Result<Complex64> {
    let fc = ctx.mode_coefficients(f)?;
    let gc = ctx.mode_coefficients(g)?;
    let mut acc = Complex64::ZERO;
    for i in 0..ctx.effective {
        acc += fc[i] * gc[i].conj() / ctx.dec.eigenvalue(i);
    }
    Ok(acc)
}

/// Norm of the induced Hilbert space.
pub fn h_norm(ctx: &RkhsContext, f: &Signal) -> Result<f64> {
    let fc = ctx.mode_coefficients(f)?;
    let mut acc = 0.0f64;
    for i in 0..ctx.effective {
        acc += fc[i].norm_sqr() / ctx.dec.eigenvalue(i);
    }
    Ok(acc.sqrt())
}

/// The kernel section `k_v = K(., v)` at node index `v`.
pub fn kernel_section(k: &GridKernel, v: usize) -> Result<Signal> {
    let n = k.grid().len();
    if v >= n {
        return Err(Error::IndexOutOfRange {
            what: "kernel section node",
            index: v,
            len: n,
        });
    }
    Ok(Signal::from_raw(
        k.grid(),
        DVector::from_column_slice(k.matrix().column(v).as_slice()),
    ))
}

/// Finite expansion in kernel sections: `sum_t coeffs[t] k_{centers[t]}`.
/// Centers are node indices and must be distinct.
pub fn expand(k: &GridKernel, centers: &[usize], coeffs: &[Complex64]) -> Result<Signal> {
    if centers.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: centers.len(),
            got: coeffs.len(),
        });
    }
    if centers.is_empty() {
        return Err(Error::InvalidArgument(
            "an expansion needs at least one center".into(),
        ));
    }
    let n = k.grid().len();
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
    let mut values = DVector::from_element(n, Complex64::ZERO);
    for (&t, &a) in centers.iter().zip(coeffs.iter()) {
        values += k.matrix().column(t).map(|z| z * a);
    }
    Ok(Signal::from_raw(k.grid(), values))
}

/// How much of a signal the induced Hilbert space explains.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    /// The Hilbert-space energy `sum_i |<f, theta_i>|^2 / sigma_i` over the
    /// effective modes; finite for members, blowing up with rank for
    /// signals outside the space.
    pub score: f64,
    /// L2 energy of `f` left outside the effective span.
    pub residual: f64,
    /// Number of modes the score ran over.
    pub effective_rank: usize,
}

/// Scores membership of `f` in the induced Hilbert space.
pub fn membership_score(ctx: &RkhsContext, f: &Signal) -> Result<MembershipReport> {
    let fc = ctx.mode_coefficients(f)?;
    let mut score = 0.0f64;
    let mut captured = 0.0f64;
    for i in 0..ctx.effective {
        let e = fc[i].norm_sqr();
        score += e / ctx.dec.eigenvalue(i);
        captured += e;
    }
    let total = norm_l2(f).powi(2);
    Ok(MembershipReport {
        score,
        residual: (total - captured).max(0.0),
        effective_rank: ctx.effective,
    })
}

/// Projects `f` onto the effective span of the context.
pub fn project_effective(ctx: &RkhsContext, f: &Signal) -> Result<Signal> {
    let fc = ctx.mode_coefficients(f)?;
    let theta = ctx.dec.modes().columns(0, ctx.effective);
    Ok(Signal::from_raw(f.grid(), &theta * fc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::kernel::{box_product, CatalogKernel, GridKernel, KernelTag};
    use crate::spectral::decompose;
    use approx::assert_relative_eq;

    fn min_squared_context(n: usize) -> (std::sync::Arc<Grid>, GridKernel, RkhsContext) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let w = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Graphon).unwrap();
        // K = box(W, W) is Hermitian positive semidefinite because W is
        let k = box_product(&w, &w).unwrap().retag(KernelTag::Kernel).unwrap();
        let dec = decompose(&k, None).unwrap();
        let ctx = RkhsContext::new(dec, None).unwrap();
        (grid, k, ctx)
    }

    #[test]
    fn eigenfunction_norm_is_inverse_eigenvalue() {
        let (_, _, ctx) = min_squared_context(128);
        let sigma0 = ctx.dec().eigenvalue(0);
        let theta0 = ctx.dec().eigenfunction(0).unwrap();
        let ip = h_inner(&ctx, &theta0, &theta0).unwrap();
        assert_relative_eq!(ip.re, 1.0 / sigma0, max_relative = 1e-8);
        assert!(ip.im.abs() < 1e-10);
        // scaled eigenfunctions are orthonormal in the Hilbert space
        let scaled0 = theta0.scale(Complex64::new(sigma0.sqrt(), 0.0));
        assert_relative_eq!(
            h_inner(&ctx, &scaled0, &scaled0).unwrap().re,
            1.0,
            max_relative = 1e-8
        );
        let theta1 = ctx.dec().eigenfunction(1).unwrap();
        assert!(h_inner(&ctx, &theta0, &theta1).unwrap().norm() < 1e-8);
    }

    #[test]
    fn reproducing_property_at_nodes() {
        let (grid, k, ctx) = min_squared_context(96);
        // f in the effective span: a mix of two eigenfunctions
        let f = ctx
            .dec()
            .eigenfunction(0)
            .unwrap()
            .scale(Complex64::new(0.7, 0.2))
            .add(
                &ctx.dec()
                    .eigenfunction(2)
                    .unwrap()
                    .scale(Complex64::new(-0.4, 1.1)),
            )
            .unwrap();
        for &v in &[0, grid.len() / 2, grid.len() - 1] {
            let section = kernel_section(&k, v).unwrap();
            let got = h_inner(&ctx, &f, &section).unwrap();
            let want = f.value(v);
            assert!(
                (got - want).norm() < 1e-8,
                "node {v}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn membership_score_of_section_is_diagonal_value() {
        let (grid, k, ctx) = min_squared_context(128);
        let v = grid.len() / 3;
        let section = kernel_section(&k, v).unwrap();
        let report = membership_score(&ctx, &section).unwrap();
        assert!(
            (report.score - k.entry(v, v).re).abs() < 1e-4,
            "score {} vs diagonal {}",
            report.score,
            k.entry(v, v).re
        );
        assert!(report.residual < 1e-10);
    }

    #[test]
    fn membership_score_grows_for_rough_signals() {
        let (grid, _, ctx) = min_squared_context(128);
        // a smooth in-span signal vs a square wave whose energy sits at
        // tiny eigenvalues
        let smooth = ctx.dec().eigenfunction(0).unwrap();
        let rough = Signal::from_real_fn(&grid, |u| {
            if (u * 32.0) as usize % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        });
        let a = membership_score(&ctx, &smooth).unwrap();
        let b = membership_score(&ctx, &rough).unwrap();
        assert!(b.score > 100.0 * a.score);

        // with an aggressive cutoff the effective span is tiny and the
        // square wave's energy falls almost entirely outside it
        let loose = RkhsContext::new(ctx.dec().clone(), Some(1e-2)).unwrap();
        assert!(loose.effective_rank() <= 4);
        let c = membership_score(&loose, &rough).unwrap();
        assert!(c.residual > 0.5, "residual {}", c.residual);
    }

    #[test]
    fn expansion_matches_sections() {
        let (grid, k, _) = min_squared_context(64);
        let centers = [5usize, 20, 40];
        let coeffs = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.0, 2.0),
        ];
        let f = expand(&k, &centers, &coeffs).unwrap();
        let mut want = Signal::zeros(&grid);
        for (&t, &a) in centers.iter().zip(coeffs.iter()) {
            want = want.add(&kernel_section(&k, t).unwrap().scale(a)).unwrap();
        }
        for i in 0..grid.len() {
            assert!((f.value(i) - want.value(i)).norm() < 1e-14);
        }
    }

    #[test]
    fn expansion_rejects_duplicates_and_bad_indices() {
        let (_, k, _) = min_squared_context(16);
        let a = Complex64::new(1.0, 0.0);
        assert!(expand(&k, &[1, 1], &[a, a]).is_err());
        assert!(expand(&k, &[99], &[a]).is_err());
        assert!(expand(&k, &[], &[]).is_err());
        assert!(expand(&k, &[1, 2], &[a]).is_err());
    }

    #[test]
    fn context_requires_kernel_kind() {
        let grid = Grid::new(0.0, 1.0, 32).unwrap();
        let w = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Graphon).unwrap();
        let dec = decompose(&w, None).unwrap();
        assert!(RkhsContext::new(dec, None).is_err());
    }

    #[test]
    fn rank_tol_controls_effective_rank() {
        let (_, _, ctx) = min_squared_context(64);
        // eigenvalues sigma_i = lambda_i^2 decay like i^-4, so a loose
        // tolerance keeps few modes
        let loose = RkhsContext::new(ctx.dec().clone(), Some(1e-2)).unwrap();
        assert!(loose.effective_rank() < ctx.effective_rank());
        assert!(loose.effective_rank() >= 1);
    }
}
