//! Spectra of sampled integral operators.
//!
//! The eigenproblem of a Hermitian kernel under the quadrature inner
//! product is solved by symmetrization: the matrix `diag(sqrt w) K
//! diag(sqrt w)` is eigendecomposed and eigenvectors are rescaled by
//! `1 / sqrt(w)`, which makes the eigenfunctions orthonormal with respect
//! to the discrete L2 inner product. Kernel-kind spectra are nonnegative
//! and sorted in nonincreasing order; graphon-kind spectra are real of
//! either sign and sorted by magnitude.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, Signal};
use crate::kernel::{CatalogKernel, GridKernel, KernelTag, HERMITIAN_TOL};

/// Eigenvalues of a kernel-kind decomposition in `(-EIG_CLAMP, 0)` are
/// treated as floating-point drift and clamped to zero; anything below
/// `-EIG_CLAMP` makes the decomposition fail as indefinite.
pub const EIG_CLAMP: f64 = 1e-10;

/// Magnitude threshold used when fixing the phase of an eigenfunction:
/// the first node value above this is rotated to the positive real axis.
pub const PHASE_TOL: f64 = 1e-8;

/// Ordering and sign conventions for a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    /// Nonnegative eigenvalues, sorted nonincreasing.
    Kernel,
    /// Real eigenvalues of either sign, sorted by magnitude, positive
    /// first on ties.
    Graphon,
}

/// Truncated eigendecomposition of a sampled Hermitian kernel.
///
/// Column `i` of `modes` holds the node samples of the `i`-th
/// eigenfunction; the columns are orthonormal under the quadrature inner
/// product. Mode indices are zero based throughout.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    grid: Arc<Grid>,
    kind: SpectralKind,
    eigenvalues: Vec<f64>,
    modes: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    /// Number of retained modes.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    /// Node samples of all eigenfunctions, one per column.
    pub fn modes(&self) -> &DMatrix<Complex64> {
        &self.modes
    }

    /// The `i`-th eigenfunction as a signal.
    pub fn eigenfunction(&self, i: usize) -> Result<Signal> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                what: "eigenfunction",
                index: i,
                len: self.len(),
            });
        }
        Ok(Signal::from_raw(
            &self.grid,
            DVector::from_column_slice(self.modes.column(i).as_slice()),
        ))
    }

    /// Value of eigenfunction `i` at node `k`.
    pub fn mode_value(&self, i: usize, k: usize) -> Complex64 {
        self.modes[(k, i)]
    }
}

/// Rotates each column so its first entry with magnitude above
/// `PHASE_TOL` lies on the positive real axis. This pins the arbitrary
/// eigenvector phase and makes decompositions reproducible.
fn normalize_phases(modes: &mut DMatrix<Complex64>) {
    for mut col in modes.column_iter_mut() {
        let lead = col.iter().find(|z| z.norm() > PHASE_TOL).copied();
        if let Some(z) = lead {
            let factor = z.conj() / z.norm();
            for entry in col.iter_mut() {
                *entry *= factor;
            }
        }
    }
}

/// Solves the quadrature-symmetrized eigenproblem of a Hermitian kernel.
///
/// `m` limits the number of retained modes; `None` keeps all of them.
/// Kernel-tagged input produces a `Kernel`-kind decomposition and rejects
/// eigenvalues below the negativity floor; graphon-tagged input produces a
/// `Graphon`-kind decomposition ordered by eigenvalue magnitude. Symbols
/// must be retagged before decomposition so the intended convention is
/// explicit.
pub fn decompose(k: &GridKernel, m: Option<usize>) -> Result<SpectralDecomposition> {
    let kind = match k.tag() {
        KernelTag::Kernel => SpectralKind::Kernel,
        KernelTag::Graphon => SpectralKind::Graphon,
        KernelTag::Symbol => {
            return Err(Error::TagViolation(
                "decomposition needs a kernel or graphon tag; retag the symbol first".into(),
            ))
        }
    };
    let n = k.grid().len();
    let m = match m {
        Some(0) => {
            return Err(Error::InvalidArgument(
                "decomposition needs at least one mode".into(),
            ))
        }
        Some(m) if m > n => {
            return Err(Error::InvalidArgument(format!(
                "requested {m} modes from a grid with {n} nodes"
            )));
        }
        Some(m) => m,
        None => n,
    };

    let matrix = k.matrix();
    let scale = matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            defect = defect.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian {
            defect,
            tol: HERMITIAN_TOL * scale,
        });
    }

    let w = k.grid().weight();
    // eigenvectors of diag(sqrt w) K diag(sqrt w) are orthonormal in the
    // plain Euclidean sense; rescaling by 1/sqrt(w) moves that
    // orthonormality to the quadrature inner product
    let (raw_values, raw_vectors) = if k.is_real() {
        let sym = matrix.map(|z| z.re * w);
        let eig = sym.symmetric_eigen();
        let vectors = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        (eig.eigenvalues, vectors)
    } else {
        let sym = matrix.scale(w);
        let eig = sym.symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors)
    };

    let mut order: Vec<usize> = (0..n).collect();
    match kind {
        SpectralKind::Kernel => {
            order.sort_by(|&a, &b| raw_values[b].partial_cmp(&raw_values[a]).unwrap());
        }
        SpectralKind::Graphon => {
            order.sort_by(|&a, &b| {
                raw_values[b]
                    .abs()
                    .partial_cmp(&raw_values[a].abs())
                    .unwrap()
                    .then(raw_values[b].partial_cmp(&raw_values[a]).unwrap())
            });
        }
    }

    let mut eigenvalues = Vec::with_capacity(m);
    let mut modes = DMatrix::zeros(n, m);
    let inv_sqrt_w = 1.0 / w.sqrt();
    for (out, &src) in order.iter().take(m).enumerate() {
        let mut lam = raw_values[src];
        if kind == SpectralKind::Kernel {
            if lam <= -EIG_CLAMP {
                return Err(Error::IndefiniteKernel {
                    index: out,
                    value: lam,
                });
            }
            if lam < 0.0 {
                lam = 0.0;
            }
        }
        eigenvalues.push(lam);
        modes
            .column_mut(out)
            .copy_from(&raw_vectors.column(src).scale(inv_sqrt_w));
    }
    normalize_phases(&mut modes);

    Ok(SpectralDecomposition {
        grid: Arc::clone(k.grid()),
        kind,
        eigenvalues,
        modes,
    })
}

/// Rebuilds the kernel from its leading `r` modes:
/// `sum_{i<r} lambda_i theta_i(u) conj(theta_i(v))`.
///
/// Kernel-kind output is tagged as a kernel (it is positive semidefinite
/// by construction); graphon-kind output carries mixed-sign eigenvalues
/// and is tagged as a symbol.
pub fn mercer_reconstruct(dec: &SpectralDecomposition, r: usize) -> Result<GridKernel> {
    if r > dec.len() {
        return Err(Error::IndexOutOfRange {
            what: "reconstruction rank",
            index: r,
            len: dec.len(),
        });
    }
    let n = dec.grid.len();
    match dec.kind {
        SpectralKind::Kernel => {
            // K = A A^H with A = Theta diag(lambda^(1/2)) keeps the result
            // Hermitian to the last bit
            let mut a = DMatrix::zeros(n, r);
            for i in 0..r {
                let root = dec.eigenvalues[i].sqrt();
                a.column_mut(i).copy_from(&dec.modes.column(i).scale(root));
            }
            let matrix = &a * a.adjoint();
            Ok(GridKernel::assemble(&dec.grid, matrix, KernelTag::Kernel))
        }
        SpectralKind::Graphon => {
            let theta = dec.modes.columns(0, r).clone_owned();
            let mut scaled = theta.clone();
            for i in 0..r {
                let lam = Complex64::new(dec.eigenvalues[i], 0.0);
                scaled.column_mut(i).apply(|z| *z *= lam);
            }
            let matrix = &scaled * theta.adjoint();
            // average out rounding so the result is exactly Hermitian
            let sym = DMatrix::from_fn(n, n, |i, j| {
                (matrix[(i, j)] + matrix[(j, i)].conj()) * 0.5
            });
            Ok(GridKernel::assemble(&dec.grid, sym, KernelTag::Symbol))
        }
    }
}

/// The positive square root of a kernel-kind operator as a symbol:
/// `S = sum_i sqrt(lambda_i) theta_i(u) conj(theta_i(v))`, so that
/// applying `S` twice reproduces the kernel's operator.
pub fn sqrt_symbol(dec: &SpectralDecomposition) -> Result<GridKernel> {
    if dec.kind != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "square-root symbols are defined for kernel-kind decompositions".into(),
        ));
    }
    let n = dec.grid.len();
    let r = dec.len();
    // S = A A^H with A = Theta diag(lambda^(1/4))
    let mut a = DMatrix::zeros(n, r);
    for i in 0..r {
        let root = dec.eigenvalues[i].powf(0.25);
        a.column_mut(i).copy_from(&dec.modes.column(i).scale(root));
    }
    let matrix = &a * a.adjoint();
    Ok(GridKernel::assemble(&dec.grid, matrix, KernelTag::Symbol))
}

/// Closed-form eigenpair of the `min(u, v)` graphon on `[0, 1]`:
/// eigenvalue `1 / ((i + 1/2)^2 pi^2)` and eigenfunction
/// `sqrt(2) sin((i + 1/2) pi u)` for the zero-based mode index `i`.
pub fn min_graphon_oracle(grid: &Arc<Grid>, i: usize) -> Result<(f64, Signal)> {
    if grid.lo().abs() > 1e-12 || (grid.hi() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "the min-graphon closed form lives on [0, 1], got [{}, {}]",
            grid.lo(),
            grid.hi()
        )));
    }
    let halves = i as f64 + 0.5;
    let lam = 1.0 / (halves * halves * std::f64::consts::PI * std::f64::consts::PI);
    let phi = Signal::from_real_fn(grid, |u| {
        std::f64::consts::SQRT_2 * (halves * std::f64::consts::PI * u).sin()
    });
    Ok((lam, phi))
}

/// Evaluates eigenfunction `mode` of a decomposition at an arbitrary point
/// through the quadrature extension formula
/// `theta(x) = (1 / lambda) sum_k rule(x, node_k) theta(node_k) w`.
///
/// `rule` must be the closed form the decomposed kernel was sampled from;
/// this is what makes off-grid evaluation meaningful.
pub fn nystrom_extend(
    dec: &SpectralDecomposition,
    rule: &CatalogKernel,
    mode: usize,
    x: f64,
) -> Result<Complex64> {
    if mode >= dec.len() {
        return Err(Error::IndexOutOfRange {
            what: "eigenfunction",
            index: mode,
            len: dec.len(),
        });
    }
    let lam = dec.eigenvalues[mode];
    if lam.abs() < 1e-300 {
        return Err(Error::DegenerateKernel(
            "cannot extend an eigenfunction with zero eigenvalue".into(),
        ));
    }
    let w = dec.grid.weight();
    let mut acc = Complex64::ZERO;
    for (k, &node) in dec.grid.nodes().iter().enumerate() {
        acc += dec.modes[(k, mode)] * rule.eval(x, node);
    }
    Ok(acc * w / lam)
}
