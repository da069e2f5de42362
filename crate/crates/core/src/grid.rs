//! Quadrature grids and sampled signals.
//!
//! Everything in this crate acts on functions sampled at the nodes of a
//! midpoint-rule grid. Integrals become weighted sums, so operator
//! identities hold exactly at the discrete level and converge to their
//! continuum counterparts as the grid refines.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Midpoint-rule quadrature on an interval `[lo, hi]`.
///
/// Node `k` sits at the midpoint of the `k`-th of `n` equal subintervals
/// and every node carries the same weight `(hi - lo) / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
    weight: f64,
}

impl Grid {
    /// Builds a midpoint grid with `n >= 1` nodes on `[lo, hi]`, `lo < hi`.
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Arc<Grid>> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs at least one node".into()));
        }
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "grid interval must satisfy lo < hi with finite endpoints, got [{lo}, {hi}]"
            )));
        }
        let h = (hi - lo) / n as f64;
        let nodes = (0..n).map(|k| lo + (k as f64 + 0.5) * h).collect();
        Ok(Arc::new(Grid {
            lo,
            hi,
            nodes,
            weight: h,
        }))
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> f64 {
        self.nodes[k]
    }

    /// Quadrature weight shared by every node.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Per-node weights; uniform for the midpoint rule.
    pub fn weights(&self) -> Vec<f64> {
        vec![self.weight; self.nodes.len()]
    }

    /// Index of the node closest to `x`.
    pub fn nearest_node(&self, x: f64) -> usize {
        let raw = (x - self.lo) / self.weight - 0.5;
        let k = raw.round();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.nodes.len() - 1)
        }
    }

    /// True when `other` describes the same quadrature rule.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.nodes.len() == other.nodes.len()
    }
}

pub(crate) fn require_same_grid(a: &Grid, b: &Grid, what: &str) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!(
            "{what}: [{}, {}] with {} nodes vs [{}, {}] with {} nodes",
            a.lo,
            a.hi,
            a.len(),
            b.lo,
            b.hi,
            b.len()
        )))
    }
}

/// A complex-valued function sampled at the nodes of a grid.
#[derive(Debug, Clone)]
pub struct Signal {
    grid: Arc<Grid>,
    values: DVector<Complex64>,
}

impl Signal {
    /// Wraps node values; the length must match the grid.
    pub fn from_values(grid: &Arc<Grid>, values: DVector<Complex64>) -> Result<Signal> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Signal {
            grid: Arc::clone(grid),
            values,
        })
    }

    /// Samples a closed-form function at the grid nodes.
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> Complex64) -> Signal {
        let values = DVector::from_iterator(grid.len(), grid.nodes().iter().map(|&u| f(u)));
        Signal {
            grid: Arc::clone(grid),
            values,
        }
    }

    /// Samples a real-valued function at the grid nodes.
    pub fn from_real_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Signal {
        Signal::from_fn(grid, |u| Complex64::new(f(u), 0.0))
    }

    pub fn zeros(grid: &Arc<Grid>) -> Signal {
        Signal {
            grid: Arc::clone(grid),
            values: DVector::from_element(grid.len(), Complex64::ZERO),
        }
    }

    /// Independent standard complex Gaussian values at every node.
    pub fn random(grid: &Arc<Grid>, rng: &mut impl Rng) -> Signal {
        let values = DVector::from_iterator(
            grid.len(),
            (0..grid.len()).map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            }),
        );
        Signal {
            grid: Arc::clone(grid),
            values,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &DVector<Complex64> {
        &self.values
    }

    pub fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    pub fn add(&self, rhs: &Signal) -> Result<Signal> {
        require_same_grid(&self.grid, &rhs.grid, "signal add")?;
        Ok(Signal {
            grid: Arc::clone(&self.grid),
            values: &self.values + &rhs.values,
        })
    }

    pub fn sub(&self, rhs: &Signal) -> Result<Signal> {
        require_same_grid(&self.grid, &rhs.grid, "signal sub")?;
        Ok(Signal {
            grid: Arc::clone(&self.grid),
            values: &self.values - &rhs.values,
        })
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal {
            grid: Arc::clone(&self.grid),
            values: self.values.map(|z| z * c),
        }
    }

    pub(crate) fn from_raw(grid: &Arc<Grid>, values: DVector<Complex64>) -> Signal {
        debug_assert_eq!(values.len(), grid.len());
        Signal {
            grid: Arc::clone(grid),
            values,
        }
    }
}

/// Quadrature approximation of the integral of `f` over the grid interval.
pub fn integrate(f: &Signal) -> Complex64 {
    f.values.sum() * Complex64::new(f.grid.weight(), 0.0)
}

/// Discrete L2 inner product, conjugate-linear in the second argument.
pub fn inner_l2(f: &Signal, g: &Signal) -> Result<Complex64> {
    require_same_grid(&f.grid, &g.grid, "inner product")?;
    let mut acc = Complex64::ZERO;
    for (a, b) in f.values.iter().zip(g.values.iter()) {
        acc += a * b.conj();
    }
    Ok(acc * f.grid.weight())
}

/// Discrete L2 norm.
pub fn norm_l2(f: &Signal) -> f64 {
    let sq: f64 = f.values.iter().map(|z| z.norm_sqr()).sum();
    (sq * f.grid.weight()).sqrt()
}

/// Relative L2 deviation between two signals on the same grid. Falls back
/// to the absolute deviation when the reference is the zero signal.
pub fn rel_l2_error(got: &Signal, want: &Signal) -> Result<f64> {
    let diff = got.sub(want)?;
    let scale = norm_l2(want);
    if scale == 0.0 {
        Ok(norm_l2(&diff))
    } else {
        Ok(norm_l2(&diff) / scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn midpoint_two_nodes() {
        let grid = Grid::new(0.0, 1.0, 2).unwrap();
        assert_eq!(grid.nodes(), &[0.25, 0.75]);
        assert_eq!(grid.weight(), 0.5);
        assert_eq!(grid.weights(), vec![0.5, 0.5]);
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(Grid::new(0.0, 1.0, 0).is_err());
        assert!(Grid::new(1.0, 0.0, 4).is_err());
        assert!(Grid::new(0.0, f64::NAN, 4).is_err());
    }

    #[test]
    fn quadrature_of_monomials() {
        let grid = Grid::new(0.0, 1.0, 256).unwrap();
        let u = Signal::from_real_fn(&grid, |u| u);
        let u2 = Signal::from_real_fn(&grid, |u| u * u);
        assert_relative_eq!(integrate(&u).re, 0.5, max_relative = 1e-4);
        assert_relative_eq!(integrate(&u2).re, 1.0 / 3.0, max_relative = 1e-3);
        // the midpoint rule is exact for linear integrands
        assert!((integrate(&u).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn inner_product_conjugates_second_slot() {
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let f = Signal::from_fn(&grid, |_| Complex64::new(0.0, 1.0));
        let g = Signal::from_fn(&grid, |_| Complex64::new(1.0, 0.0));
        let ip = inner_l2(&f, &g).unwrap();
        assert_relative_eq!(ip.im, 1.0, max_relative = 1e-12);
        assert!(ip.re.abs() < 1e-15);
        // <f, f> is real and positive
        let ff = inner_l2(&f, &f).unwrap();
        assert!(ff.im.abs() < 1e-15 && ff.re > 0.0);
    }

    #[test]
    fn mismatched_grids_error() {
        let a = Grid::new(0.0, 1.0, 8).unwrap();
        let b = Grid::new(0.0, 1.0, 9).unwrap();
        let f = Signal::zeros(&a);
        let g = Signal::zeros(&b);
        assert!(matches!(inner_l2(&f, &g), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn nearest_node_clamps() {
        let grid = Grid::new(0.0, 1.0, 4).unwrap();
        assert_eq!(grid.nearest_node(-3.0), 0);
        assert_eq!(grid.nearest_node(0.13), 0);
        assert_eq!(grid.nearest_node(0.4), 1);
        assert_eq!(grid.nearest_node(5.0), 3);
    }
}
