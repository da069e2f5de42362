//! Polynomial filters in operator and pointwise form.
//!
//! A filter is a polynomial `p` applied to the integral operator of a
//! positive-semidefinite kernel. It can act two ways:
//!
//! * **operator route** — Horner iteration of the weighted kernel action,
//!   never forming a decomposition;
//! * **pointwise route** — evaluating `g(v)` through inner products with
//!   filter sections `q_v` in the induced Hilbert space, which collapses
//!   to the spectral multiplier `g = sum_i p(sigma_i) <f, theta_i>
//!   theta_i` over the effective modes.
//!
//! For sections built from the literal coefficients, the Hilbert-space
//! pairing conjugates the multiplier. Sections are therefore built from
//! conjugated coefficients so that both routes implement the same
//! multiplier `p(sigma_i)` — for real coefficients the two section
//! families coincide.

use num_complex::Complex64;

use crate::boxalg::{box_power, BoxPolynomial};
use crate::error::{Error, Result};
use crate::grid::{norm_l2, require_same_grid, Signal};
use crate::kernel::{apply_operator, GridKernel, KernelTag};
use crate::rkhs::RkhsContext;
use crate::spectral::{SpectralDecomposition, SpectralKind};

/// Relative out-of-span energy above which the pointwise route logs a
/// warning about dropped signal content.
pub const SPAN_LEAK_WARN: f64 = 1e-6;

/// A polynomial filter bound to the kernel it acts through.
#[derive(Debug, Clone)]
pub struct FilterSpec {
    poly: BoxPolynomial,
    kernel: GridKernel,
}

impl FilterSpec {
    /// Binds a polynomial to a kernel-tagged operator.
    pub fn new(poly: BoxPolynomial, kernel: GridKernel) -> Result<FilterSpec> {
        if kernel.tag() != KernelTag::Kernel {
            return Err(Error::TagViolation(format!(
                "filters act through kernel-tagged operators, got the {} tag",
                kernel.tag().name()
            )));
        }
        Ok(FilterSpec { poly, kernel })
    }

    pub fn poly(&self) -> &BoxPolynomial {
        &self.poly
    }

    pub fn kernel(&self) -> &GridKernel {
        &self.kernel
    }
}

/// Applies the filter by Horner iteration of the operator action:
/// `g = a_0 f + a_1 T f + ... + a_R T^R f`.
pub fn filter_operator(spec: &FilterSpec, f: &Signal) -> Result<Signal> {
    require_same_grid(spec.kernel.grid(), f.grid(), "operator filtering")?;
    let coeffs = spec.poly.coeffs();
    if coeffs.is_empty() {
        return Ok(Signal::zeros(f.grid()));
    }
    let mut g = f.scale(coeffs[coeffs.len() - 1]);
    for &a in coeffs.iter().rev().skip(1) {
        g = apply_operator(&spec.kernel, &g)?.add(&f.scale(a))?;
    }
    Ok(g)
}

/// The filter section at node `v`: `q_v(u) = sum_i p(sigma_i) sigma_i
/// theta_i(u) conj(theta_i(v))`, taken over all modes of `dec`.
pub fn q_section(
    spec: &FilterSpec,
    dec: &SpectralDecomposition,
    v: usize,
) -> Result<Signal> {
    if dec.kind() != SpectralKind::Kernel {
        return Err(Error::TagViolation(
            "filter sections need a kernel-kind decomposition".into(),
        ));
    }
    require_same_grid(spec.kernel.grid(), dec.grid(), "filter section")?;
    let n = dec.grid().len();
    if v >= n {
        return Err(Error::IndexOutOfRange {
            what: "filter section node",
            index: v,
            len: n,
        });
    }
    let mut values = nalgebra::DVector::from_element(n, Complex64::ZERO);
    for i in 0..dec.len() {
        let sigma = dec.eigenvalue(i);
        let weight_i = spec.poly.eval_real(sigma) * sigma * dec.mode_value(i, v).conj();
        values += dec.modes().column(i).map(|z| z * weight_i);
    }
    Ok(Signal::from_raw(dec.grid(), values))
}

/// Applies the filter through Hilbert-space pairings with its sections.
///
/// Node by node this is `g(v) = <f, q~_v>_H` with sections `q~` built from
/// the conjugated coefficients; vectorized over the effective modes it is
/// the spectral multiplier `g = sum_i p(sigma_i) <f, theta_i> theta_i`.
/// Signal energy outside the effective span is dropped; when the relative
/// leak exceeds `SPAN_LEAK_WARN` a warning is logged.
pub fn filter_pointwise(spec: &FilterSpec, ctx: &RkhsContext, f: &Signal) -> Result<Signal> {
    require_same_grid(spec.kernel.grid(), ctx.dec().grid(), "pointwise filtering")?;
    let fc = ctx.mode_coefficients(f)?;
    let total = norm_l2(f).powi(2);
    if total > 0.0 {
        let captured: f64 = fc.iter().map(|z| z.norm_sqr()).sum();
        let leak = ((total - captured).max(0.0)) / total;
        if leak > SPAN_LEAK_WARN {
            log::warn!(
                "pointwise filter drops {leak:.3e} of the signal energy \
                 outside the {}-mode effective span",
                ctx.effective_rank()
            );
        }
    }
    let m = ctx.effective_rank();
    let theta = ctx.dec().modes().columns(0, m);
    let mut scaled = nalgebra::DVector::from_element(m, Complex64::ZERO);
    for i in 0..m {
        scaled[i] = spec.poly.eval_real(ctx.dec().eigenvalue(i)) * fc[i];
    }
    Ok(Signal::from_raw(f.grid(), &theta * scaled))
}

/// Splits the filter into its per-power branches: branch `r` carries
/// `a_r K^{box r}` applied to the signal, and the branches sum to the
/// operator route.
pub fn bank_decompose(spec: &FilterSpec, f: &Signal) -> Result<Vec<Signal>> {
    require_same_grid(spec.kernel.grid(), f.grid(), "filter bank")?;
    let mut branches = Vec::with_capacity(spec.poly.coeffs().len());
    for (r, &a) in spec.poly.coeffs().iter().enumerate() {
        let branch = if r == 0 {
            f.scale(a)
        } else {
            apply_operator(&box_power(&spec.kernel, r), f)?.scale(a)
        };
        branches.push(branch);
    }
    Ok(branches)
}
