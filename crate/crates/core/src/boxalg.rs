//! Polynomial calculus over the box product.
//!
//! Polynomials in one variable act on kernels through iterated box
//! products: `p(K) = sum_r a_r K^{box r}`, where `K^{box 0}` is the
//! quadrature surrogate of the identity (the diagonal matrix `1/w`, which
//! reproduces any signal under the weighted action). On a decomposition
//! the same polynomial acts directly on the eigenvalues, and the two
//! routes agree whenever enough modes are retained.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{box_product, GridKernel, KernelTag};
use crate::spectral::SpectralDecomposition;

/// A polynomial `a_0 + a_1 x + ... + a_R x^R` with complex coefficients.
///
/// The representation is canonical: trailing coefficients that are exactly
/// zero are trimmed, so the zero polynomial has an empty coefficient list
/// and `degree() == None`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxPolynomial {
    coeffs: Vec<Complex64>,
}

impl BoxPolynomial {
    /// Builds a polynomial from coefficients in degree order, trimming
    /// trailing exact zeros.
    pub fn new(mut coeffs: Vec<Complex64>) -> BoxPolynomial {
        while coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        BoxPolynomial { coeffs }
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> BoxPolynomial {
        BoxPolynomial::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zero() -> BoxPolynomial {
        BoxPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> BoxPolynomial {
        BoxPolynomial {
            coeffs: vec![Complex64::ONE],
        }
    }

    /// Coefficients in degree order; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^r`, zero beyond the stored degree.
    pub fn coeff(&self, r: usize) -> Complex64 {
        self.coeffs.get(r).copied().unwrap_or(Complex64::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Horner evaluation at a real point.
    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(Complex64::new(x, 0.0))
    }

    /// Returns the polynomial with every coefficient conjugated.
    pub fn conjugated(&self) -> BoxPolynomial {
        BoxPolynomial {
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
        }
    }

    /// True when every coefficient has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|a| a.im == 0.0)
    }
}

/// Linear combination `a p + b q`.
pub fn poly_linear(
    p: &BoxPolynomial,
    q: &BoxPolynomial,
    a: Complex64,
    b: Complex64,
) -> BoxPolynomial {
    let len = p.coeffs.len().max(q.coeffs.len());
    let coeffs = (0..len).map(|r| a * p.coeff(r) + b * q.coeff(r)).collect();
    BoxPolynomial::new(coeffs)
}

/// Product of two polynomials (coefficient convolution).
pub fn poly_mul(p: &BoxPolynomial, q: &BoxPolynomial) -> BoxPolynomial {
    if p.is_zero() || q.is_zero() {
        return BoxPolynomial::zero();
    }
    let mut coeffs = vec![Complex64::ZERO; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, &pa) in p.coeffs.iter().enumerate() {
        for (j, &qa) in q.coeffs.iter().enumerate() {
            coeffs[i + j] += pa * qa;
        }
    }
    BoxPolynomial::new(coeffs)
}

/// Iterated box power `K^{box r}`.
///
/// `r = 0` yields the quadrature surrogate of the identity: the diagonal
/// matrix with entries `1/w`, which acts as the identity under the
/// weighted operator action. `r = 1` returns the kernel unchanged.
pub fn box_power(k: &GridKernel, r: usize) -> GridKernel {
    let grid = k.grid();
    match r {
        0 => {
            let n = grid.len();
            let inv_w = Complex64::new(1.0 / grid.weight(), 0.0);
            let mut m = DMatrix::from_element(n, n, Complex64::ZERO);
            for i in 0..n {
                m[(i, i)] = inv_w;
            }
            GridKernel::assemble(grid, m, KernelTag::Symbol)
        }
        1 => GridKernel::assemble(grid, k.matrix().clone(), k.tag()),
        _ => {
            let mut m = k.matrix().clone();
            let w = grid.weight();
            for _ in 1..r {
                m = (&m * k.matrix()).scale(w);
            }
            GridKernel::assemble(grid, m, KernelTag::Symbol)
        }
    }
}

/// Realizes `p(K) = sum_r a_r K^{box r}` as a kernel on the same grid.
///
/// The result carries the symbol tag: even for a positive-semidefinite
/// input, coefficients of mixed sign can leave the definite cone.
pub fn realize(p: &BoxPolynomial, k: &GridKernel) -> Result<GridKernel> {
    if p.is_zero() {
        let n = k.grid().len();
        return Ok(GridKernel::assemble(
            k.grid(),
            DMatrix::from_element(n, n, Complex64::ZERO),
            KernelTag::Symbol,
        ));
    }
    let n = k.grid().len();
    let mut acc = DMatrix::from_element(n, n, Complex64::ZERO);
    // ascending powers share the running box product
    let mut power = box_power(k, 0);
    for (r, &a) in p.coeffs.iter().enumerate() {
        if r > 0 {
            power = box_product(&power, k)?;
        }
        if a != Complex64::ZERO {
            acc += power.matrix().map(|z| z * a);
        }
    }
    Ok(GridKernel::assemble(k.grid(), acc, KernelTag::Symbol))
}

/// Applies `p` to a decomposition spectrally: `Theta diag(p(sigma))
/// Theta^H`.
///
/// A nonzero constant term needs the full decomposition, because the
/// identity surrogate is only resolved by the complete mode family.
pub fn spectral_transfer(
    p: &BoxPolynomial,
    dec: &SpectralDecomposition,
) -> Result<GridKernel> {
    let n = dec.grid().len();
    let m = dec.len();
    if p.coeff(0) != Complex64::ZERO && m < n {
        return Err(Error::NeedsFullDecomposition { got: m, need: n });
    }
    let theta = dec.modes();
    let mut scaled = theta.clone_owned();
    for (i, mut col) in scaled.column_iter_mut().enumerate() {
        let pi = p.eval_real(dec.eigenvalue(i));
        for z in col.iter_mut() {
            *z *= pi;
        }
    }
    let out = scaled * theta.adjoint();
    Ok(GridKernel::assemble(dec.grid(), out, KernelTag::Symbol))
}
