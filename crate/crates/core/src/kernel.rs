//! Sampled kernels and the box product.
//!
//! A `GridKernel` is a two-variable function sampled on the tensor grid,
//! acting on signals through the quadrature rule: `(T f)(u) = sum_v
//! S(u, v) f(v) w`. Composing two such operators corresponds to the box
//! product of their symbols, `box(A, B)(u, v) = sum_z A(u, z) B(z, v) w`,
//! which is the workhorse of every filtering construction in this crate.
//!
//! Each kernel carries a tag recording which structural invariants its
//! matrix satisfies. Tags are validated on construction and on retagging,
//! so downstream code can rely on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{require_same_grid, Grid, Signal};

/// Hermitian-defect tolerance used by tag validation, relative to the
/// larger of 1 and the largest entry magnitude.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default eigenvalue-negativity tolerance for positive-semidefinite
/// validation, relative to the larger of 1 and the top eigenvalue.
pub const PSD_TOL: f64 = 1e-8;

/// Slack allowed on the real-valuedness and range checks of graphon tags.
pub const GRAPHON_RANGE_TOL: f64 = 1e-12;

/// Structural invariant recorded with a sampled kernel.
///
/// - `Symbol`: any finite matrix; no structure promised.
/// - `Kernel`: Hermitian and positive semidefinite.
/// - `Graphon`: real, symmetric, entries in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelTag {
    Symbol,
    Kernel,
    Graphon,
}

impl KernelTag {
    pub fn name(self) -> &'static str {
        match self {
            KernelTag::Symbol => "symbol",
            KernelTag::Kernel => "kernel",
            KernelTag::Graphon => "graphon",
        }
    }
}

/// Closed-form kernel rules that can be sampled on a grid or evaluated at
/// arbitrary points.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogKernel {
    /// `K(u, v) = value`.
    Constant { value: f64 },
    /// `K(u, v) = min(u, v)`.
    Min,
    /// `K(u, v) = u v`.
    Product,
    /// `K(u, v) = (1 + u v)^2`.
    Quadratic,
    /// `K(u, v) = exp(-(u - v)^2 / (2 width^2))`.
    Gaussian { width: f64 },
    /// `K(u, v) = exp(-|u - v| / width)`.
    Laplace { width: f64 },
    /// `K(u, v) = exp(-2 sin^2(pi (u - v)) / length^2)`.
    Periodic { length: f64 },
    /// `K(u, v) = sin(B (u - v)) / (pi (u - v))`, the band-limiting kernel
    /// with bandwidth `B`; the diagonal value is `B / pi`.
    Sinc { bandwidth: f64 },
    /// `K(u, v) = min(u, v) (1 - max(u, v))`.
    Bridge,
    /// `K(u, v) = 1 - max(u, v)`.
    OneMinusMax,
}

impl CatalogKernel {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogKernel::Constant { .. } => "constant",
            CatalogKernel::Min => "min",
            CatalogKernel::Product => "product",
            CatalogKernel::Quadratic => "quadratic",
            CatalogKernel::Gaussian { .. } => "gaussian",
            CatalogKernel::Laplace { .. } => "laplace",
            CatalogKernel::Periodic { .. } => "periodic",
            CatalogKernel::Sinc { .. } => "sinc",
            CatalogKernel::Bridge => "bridge",
            CatalogKernel::OneMinusMax => "one_minus_max",
        }
    }

    /// Evaluates the rule at an arbitrary point pair.
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        match self {
            CatalogKernel::Constant { value } => *value,
            CatalogKernel::Min => u.min(v),
            CatalogKernel::Product => u * v,
            CatalogKernel::Quadratic => {
                let t = 1.0 + u * v;
                t * t
            }
            CatalogKernel::Gaussian { width } => {
                let d = u - v;
                (-d * d / (2.0 * width * width)).exp()
            }
            CatalogKernel::Laplace { width } => (-(u - v).abs() / width).exp(),
            CatalogKernel::Periodic { length } => {
                let s = (std::f64::consts::PI * (u - v)).sin();
                (-2.0 * s * s / (length * length)).exp()
            }
            CatalogKernel::Sinc { bandwidth } => {
                let d = u - v;
                if d == 0.0 {
                    bandwidth / std::f64::consts::PI
                } else {
                    (bandwidth * d).sin() / (std::f64::consts::PI * d)
                }
            }
            CatalogKernel::Bridge => u.min(v) * (1.0 - u.max(v)),
            CatalogKernel::OneMinusMax => 1.0 - u.max(v),
        }
    }

    /// Builds a rule from a name and parameter map; unknown names and
    /// unknown or missing parameters are rejected.
    pub fn parse(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogKernel> {
        fn only(params: &BTreeMap<String, f64>, allowed: &[&str]) -> Result<()> {
            for key in params.keys() {
                if !allowed.contains(&key.as_str()) {
                    return Err(Error::InvalidArgument(format!(
                        "unknown kernel parameter {key:?}"
                    )));
                }
            }
            Ok(())
        }
        fn required(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
            params.get(key).copied().ok_or_else(|| {
                Error::InvalidArgument(format!("missing kernel parameter {key:?}"))
            })
        }
        fn positive(value: f64, key: &str) -> Result<f64> {
            if value.is_finite() && value > 0.0 {
                Ok(value)
            } else {
                Err(Error::InvalidArgument(format!(
                    "kernel parameter {key:?} must be positive and finite, got {value}"
                )))
            }
        }

        let rule = match name {
            "constant" => {
                only(params, &["value"])?;
                let value = params.get("value").copied().unwrap_or(1.0);
                if !value.is_finite() {
                    return Err(Error::InvalidArgument("constant value must be finite".into()));
                }
                CatalogKernel::Constant { value }
            }
            "min" => {
                only(params, &[])?;
                CatalogKernel::Min
            }
            "product" => {
                only(params, &[])?;
                CatalogKernel::Product
            }
            "quadratic" => {
                only(params, &[])?;
                CatalogKernel::Quadratic
            }
            "gaussian" => {
                only(params, &["width"])?;
                CatalogKernel::Gaussian {
                    width: positive(required(params, "width")?, "width")?,
                }
            }
            "laplace" => {
                only(params, &["width"])?;
                CatalogKernel::Laplace {
                    width: positive(required(params, "width")?, "width")?,
                }
            }
            "periodic" => {
                only(params, &["length"])?;
                CatalogKernel::Periodic {
                    length: positive(required(params, "length")?, "length")?,
                }
            }
            "sinc" => {
                only(params, &["bandwidth"])?;
                CatalogKernel::Sinc {
                    bandwidth: positive(required(params, "bandwidth")?, "bandwidth")?,
                }
            }
            "bridge" => {
                only(params, &[])?;
                CatalogKernel::Bridge
            }
            "one_minus_max" => {
                only(params, &[])?;
                CatalogKernel::OneMinusMax
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown catalog kernel {other:?}"
                )))
            }
        };
        Ok(rule)
    }
}

/// A kernel sampled on the tensor grid: `matrix[(i, j)] = S(node_i, node_j)`.
#[derive(Debug, Clone)]
pub struct GridKernel {
    grid: Arc<Grid>,
    matrix: DMatrix<Complex64>,
    tag: KernelTag,
}

fn max_abs(matrix: &DMatrix<Complex64>) -> f64 {
    matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_defect(matrix: &DMatrix<Complex64>) -> f64 {
    let n = matrix.nrows();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
            defect = defect.max(d);
        }
    }
    defect
}

impl GridKernel {
    /// Wraps a sampled matrix after validating the invariants promised by
    /// `tag`. Kernel tags require a Hermitian, positive-semidefinite matrix;
    /// graphon tags require real symmetric entries in `[0, 1]`.
    pub fn new(grid: &Arc<Grid>, matrix: DMatrix<Complex64>, tag: KernelTag) -> Result<GridKernel> {
        let n = grid.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("kernel entries must be finite".into()));
        }
        let kernel = GridKernel {
            grid: Arc::clone(grid),
            matrix,
            tag,
        };
        kernel.validate_tag()?;
        Ok(kernel)
    }

    /// Samples a closed-form rule on the grid.
    pub fn from_fn(
        grid: &Arc<Grid>,
        tag: KernelTag,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<GridKernel> {
        let nodes = grid.nodes();
        let matrix = DMatrix::from_fn(grid.len(), grid.len(), |i, j| f(nodes[i], nodes[j]));
        GridKernel::new(grid, matrix, tag)
    }

    /// Samples a catalog rule on the grid.
    pub fn sample(grid: &Arc<Grid>, rule: &CatalogKernel, tag: KernelTag) -> Result<GridKernel> {
        GridKernel::from_fn(grid, tag, |u, v| Complex64::new(rule.eval(u, v), 0.0))
    }

    /// Internal constructor for matrices whose tag invariants hold by
    /// construction.
    pub(crate) fn assemble(
        grid: &Arc<Grid>,
        matrix: DMatrix<Complex64>,
        tag: KernelTag,
    ) -> GridKernel {
        debug_assert_eq!(matrix.nrows(), grid.len());
        debug_assert_eq!(matrix.ncols(), grid.len());
        GridKernel {
            grid: Arc::clone(grid),
            matrix,
            tag,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn tag(&self) -> KernelTag {
        self.tag
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Re-labels the kernel, validating the invariants of the new tag.
    pub fn retag(mut self, tag: KernelTag) -> Result<GridKernel> {
        self.tag = tag;
        self.validate_tag()?;
        Ok(self)
    }

    fn validate_tag(&self) -> Result<()> {
        match self.tag {
            KernelTag::Symbol => Ok(()),
            KernelTag::Kernel => {
                let scale = max_abs(&self.matrix).max(1.0);
                let defect = hermitian_defect(&self.matrix);
                if defect > HERMITIAN_TOL * scale {
                    return Err(Error::NotHermitian {
                        defect,
                        tol: HERMITIAN_TOL * scale,
                    });
                }
                let report = validate_psd(self, PSD_TOL)?;
                if !report.pass {
                    return Err(Error::TagViolation(format!(
                        "kernel tag requires a positive-semidefinite matrix; \
                         min eigenvalue {:.6e}",
                        report.min_eigenvalue.unwrap_or(f64::NAN)
                    )));
                }
                Ok(())
            }
            KernelTag::Graphon => {
                let n = self.grid.len();
                for i in 0..n {
                    for j in 0..n {
                        let z = self.matrix[(i, j)];
                        if z.im.abs() > GRAPHON_RANGE_TOL {
                            return Err(Error::TagViolation(format!(
                                "graphon tag requires real entries; entry ({i}, {j}) \
                                 has imaginary part {:.3e}",
                                z.im
                            )));
                        }
                        if z.re < -GRAPHON_RANGE_TOL || z.re > 1.0 + GRAPHON_RANGE_TOL {
                            return Err(Error::TagViolation(format!(
                                "graphon tag requires entries in [0, 1]; entry ({i}, {j}) \
                                 is {:.6e}",
                                z.re
                            )));
                        }
                    }
                }
                let defect = hermitian_defect(&self.matrix);
                if defect > HERMITIAN_TOL {
                    return Err(Error::TagViolation(format!(
                        "graphon tag requires a symmetric matrix; max asymmetry {defect:.3e}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }
}

/// Box product of two symbols on the same grid: the symbol of the composed
/// integral operators, `box(A, B)(u, v) = sum_z A(u, z) B(z, v) w`.
pub fn box_product(a: &GridKernel, b: &GridKernel) -> Result<GridKernel> {
    require_same_grid(a.grid(), b.grid(), "box product")?;
    let w = a.grid().weight();
    let matrix = (&a.matrix * &b.matrix).scale(w);
    Ok(GridKernel::assemble(a.grid(), matrix, KernelTag::Symbol))
}

/// Adjoint symbol `A*(u, v) = conj(A(v, u))`, the symbol of the adjoint
/// operator with respect to the quadrature inner product.
pub fn adjoint(a: &GridKernel) -> GridKernel {
    GridKernel::assemble(a.grid(), a.matrix.adjoint(), KernelTag::Symbol)
}

/// The reproducing kernel induced by a symbol: `K = box(S, S*)`, i.e.
/// `K(u, v) = sum_z S(u, z) conj(S(v, z)) w`. The result is Hermitian and
/// positive semidefinite by construction and is tagged as a kernel.
pub fn induced_kernel(s: &GridKernel) -> GridKernel {
    let w = s.grid().weight();
    let matrix = (&s.matrix * s.matrix.adjoint()).scale(w);
    GridKernel::assemble(s.grid(), matrix, KernelTag::Kernel)
}

/// Outcome of a positive-semidefiniteness check.
#[derive(Debug, Clone)]
pub struct PsdReport {
    /// Largest deviation between the matrix and its conjugate transpose.
    pub hermitian_defect: f64,
    /// Whether the matrix is Hermitian within `HERMITIAN_TOL`.
    pub is_hermitian: bool,
    /// Smallest eigenvalue of the quadrature-symmetrized matrix, when the
    /// matrix is Hermitian.
    pub min_eigenvalue: Option<f64>,
    /// Largest eigenvalue, when the matrix is Hermitian.
    pub max_eigenvalue: Option<f64>,
    /// True when the matrix is Hermitian and the smallest eigenvalue is
    /// above `-tol * max(1, max_eigenvalue)`.
    pub pass: bool,
}

/// Checks whether the operator defined by the sampled kernel is positive
/// semidefinite, by eigendecomposing the quadrature symmetrization.
/// Non-Hermitian input is reported as a failed check, not an error.
pub fn validate_psd(k: &GridKernel, tol: f64) -> Result<PsdReport> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "psd tolerance must be nonnegative, got {tol}"
        )));
    }
    let scale = max_abs(&k.matrix).max(1.0);
    let defect = hermitian_defect(&k.matrix);
    if defect > HERMITIAN_TOL * scale {
        return Ok(PsdReport {
            hermitian_defect: defect,
            is_hermitian: false,
            min_eigenvalue: None,
            max_eigenvalue: None,
            pass: false,
        });
    }
    // eigenvalues of diag(sqrt w) K diag(sqrt w); for the uniform midpoint
    // rule this is just w K
    let eigenvalues = if k.is_real() {
        let real = k.matrix.map(|z| z.re * k.grid.weight());
        real.symmetric_eigenvalues()
    } else {
        let scaled = k.matrix.scale(k.grid.weight());
        scaled.symmetric_eigenvalues()
    };
    let min = eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let pass = min >= -tol * max.max(1.0);
    Ok(PsdReport {
        hermitian_defect: defect,
        is_hermitian: true,
        min_eigenvalue: Some(min),
        max_eigenvalue: Some(max),
        pass,
    })
}

/// Rescales a nonnegative real kernel into a graphon by its largest entry.
/// Returns the graphon-tagged kernel and the scaling constant, so that
/// `K = c W`. Rounding residue outside `[0, 1]` is clipped.
pub fn kernel_to_graphon(k: &GridKernel) -> Result<(GridKernel, f64)> {
    let mut c = 0.0f64;
    for z in k.matrix.iter() {
        if z.im.abs() > GRAPHON_RANGE_TOL {
            return Err(Error::TagViolation(format!(
                "graphon rescaling requires a real kernel; found imaginary part {:.3e}",
                z.im
            )));
        }
        if z.re < -GRAPHON_RANGE_TOL {
            return Err(Error::TagViolation(format!(
                "graphon rescaling requires nonnegative entries; found {:.6e}",
                z.re
            )));
        }
        c = c.max(z.re);
    }
    if c <= GRAPHON_RANGE_TOL {
        return Err(Error::DegenerateKernel(
            "graphon rescaling needs a kernel with a positive entry".into(),
        ));
    }
    let matrix = k
        .matrix
        .map(|z| Complex64::new((z.re / c).clamp(0.0, 1.0), 0.0));
    let w = GridKernel::new(k.grid(), matrix, KernelTag::Graphon)?;
    Ok((w, c))
}

/// Applies the integral operator of a sampled kernel to a signal through
/// the quadrature rule: `g(u) = sum_v S(u, v) f(v) w`.
pub fn apply_operator(k: &GridKernel, f: &Signal) -> Result<Signal> {
    require_same_grid(k.grid(), f.grid(), "operator application")?;
    let values = (&k.matrix * f.values()).scale(k.grid().weight());
    Ok(Signal::from_raw(k.grid(), values))
}
