//! Property-based checks of the algebraic laws the library is built on,
//! over randomized symbols and polynomials on small grids.

use std::sync::Arc;

use boxkernel::kernel::PSD_TOL;
use boxkernel::{
    adjoint, box_power, box_product, induced_kernel, poly_linear, poly_mul, realize,
    validate_psd, BoxPolynomial, CatalogKernel, Complex64, Grid, GridKernel, KernelTag,
};
use proptest::prelude::*;

fn complex_unit() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A symbol whose sample at node pair (i, j) is `values[i * n + j]`.
fn symbol_from_values(grid: &Arc<Grid>, values: &[Complex64]) -> GridKernel {
    let n = grid.len();
    GridKernel::from_fn(grid, KernelTag::Symbol, |u, v| {
        values[grid.nearest_node(u) * n + grid.nearest_node(v)]
    })
    .expect("finite samples")
}

fn max_entry_diff(a: &GridKernel, b: &GridKernel) -> f64 {
    (a.matrix() - b.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Grid size plus three independent random symbol sample sets.
fn three_symbols() -> impl Strategy<Value = (usize, Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)>
{
    (6usize..=12).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(complex_unit(), n * n),
            proptest::collection::vec(complex_unit(), n * n),
            proptest::collection::vec(complex_unit(), n * n),
        )
    })
}

fn coeff_vec(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec(complex_unit(), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((n, av, bv, cv) in three_symbols()) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let a = symbol_from_values(&grid, &av);
        let b = symbol_from_values(&grid, &bv);
        let c = symbol_from_values(&grid, &cv);
        let left = box_product(&box_product(&a, &b).unwrap(), &c).unwrap();
        let right = box_product(&a, &box_product(&b, &c).unwrap()).unwrap();
        prop_assert!(max_entry_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn composition_distributes_over_sums((n, av, bv, cv) in three_symbols()) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let a = symbol_from_values(&grid, &av);
        let b = symbol_from_values(&grid, &bv);
        let c = symbol_from_values(&grid, &cv);
        let sum_values: Vec<Complex64> =
            av.iter().zip(bv.iter()).map(|(x, y)| x + y).collect();
        let sum = symbol_from_values(&grid, &sum_values);
        let lumped = box_product(&sum, &c).unwrap();
        let ac = box_product(&a, &c).unwrap();
        let bc = box_product(&b, &c).unwrap();
        let split_values: Vec<Complex64> = (0..n * n)
            .map(|t| ac.matrix()[(t / n, t % n)] + bc.matrix()[(t / n, t % n)])
            .collect();
        let split = symbol_from_values(&grid, &split_values);
        prop_assert!(max_entry_diff(&lumped, &split) < 1e-12);
    }

    #[test]
    fn zeroth_power_is_a_two_sided_identity((n, av, _b, _c) in three_symbols()) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let a = symbol_from_values(&grid, &av);
        let delta = box_power(&a, 0);
        prop_assert!(max_entry_diff(&box_product(&delta, &a).unwrap(), &a) < 1e-13);
        prop_assert!(max_entry_diff(&box_product(&a, &delta).unwrap(), &a) < 1e-13);
    }

    #[test]
    fn adjoint_is_an_involution_and_antihomomorphism((n, av, bv, _c) in three_symbols()) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let a = symbol_from_values(&grid, &av);
        let b = symbol_from_values(&grid, &bv);
        let involuted = adjoint(&adjoint(&a));
        prop_assert_eq!(involuted.matrix(), a.matrix());
        let flipped = adjoint(&box_product(&a, &b).unwrap());
        let staged = box_product(&adjoint(&b), &adjoint(&a)).unwrap();
        prop_assert!(max_entry_diff(&flipped, &staged) < 1e-13);
    }

    #[test]
    fn induced_kernels_are_hermitian_psd((n, av, _b, _c) in three_symbols()) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let s = symbol_from_values(&grid, &av);
        let k = induced_kernel(&s);
        let report = validate_psd(&k, PSD_TOL).unwrap();
        prop_assert!(report.is_hermitian, "defect {}", report.hermitian_defect);
        prop_assert!(report.pass, "min eigenvalue {:?}", report.min_eigenvalue);
    }

    #[test]
    fn realization_is_a_homomorphism(
        n in 6usize..=12,
        p in coeff_vec(4),
        q in coeff_vec(4),
    ) {
        let grid = Grid::new(0.0, 1.0, n).unwrap();
        let k = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Kernel).unwrap();
        let p = BoxPolynomial::new(p);
        let q = BoxPolynomial::new(q);
        let composed = realize(&poly_mul(&p, &q), &k).unwrap();
        let staged = box_product(&realize(&p, &k).unwrap(), &realize(&q, &k).unwrap()).unwrap();
        prop_assert!(max_entry_diff(&composed, &staged) < 1e-10);
    }

    #[test]
    fn polynomial_product_evaluates_pointwise(
        p in coeff_vec(6),
        q in coeff_vec(6),
        z in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let z = Complex64::new(z.0, z.1);
        let p = BoxPolynomial::new(p);
        let q = BoxPolynomial::new(q);
        let left = poly_mul(&p, &q).eval(z);
        let right = p.eval(z) * q.eval(z);
        let scale = 1.0 + left.norm().max(right.norm());
        prop_assert!((left - right).norm() <= 1e-12 * scale);
    }

    #[test]
    fn linear_combinations_evaluate_pointwise(
        p in coeff_vec(6),
        q in coeff_vec(6),
        a in complex_unit(),
        b in complex_unit(),
        z in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let z = Complex64::new(z.0, z.1);
        let p = BoxPolynomial::new(p);
        let q = BoxPolynomial::new(q);
        let left = poly_linear(&p, &q, a, b).eval(z);
        let right = a * p.eval(z) + b * q.eval(z);
        let scale = 1.0 + left.norm().max(right.norm());
        prop_assert!((left - right).norm() <= 1e-12 * scale);
    }

    #[test]
    fn coefficient_lists_are_canonical(p in coeff_vec(6), pad in 0usize..4) {
        let mut padded = p.clone();
        padded.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(pad));
        let canonical = BoxPolynomial::new(p);
        let trimmed = BoxPolynomial::new(padded);
        prop_assert_eq!(canonical.coeffs(), trimmed.coeffs());
        if let Some(last) = trimmed.coeffs().last() {
            prop_assert!(*last != Complex64::new(0.0, 0.0));
        }
    }
}
