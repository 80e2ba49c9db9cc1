//! Tensor-product Gauss-Legendre quadrature, used as an independent check of
//! the exact box integrals.

use std::f64::consts::PI;

use super::poly::TrigPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::mode_basis::CavityGeometry;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Minimum number of points per axis accepted by [`integrate_numeric`].
pub fn min_points(p: &TrigPoly<impl Scalar>) -> usize {
    2 * p.max_harmonic() as usize + 1
}

/// Gauss-Legendre estimate of `∫_V p d³x` with `points_per_axis` nodes along
/// each axis.
pub fn integrate_numeric<S: Scalar>(
    p: &TrigPoly<S>,
    geom: &CavityGeometry,
    points_per_axis: usize,
) -> Result<f64> {
    let required = min_points(p);
    if points_per_axis < required {
        return Err(Error::InsufficientQuadrature { required, given: points_per_axis });
    }
    let (nodes, weights) = gauss_legendre(points_per_axis);
    let lengths = geom.lengths_f64();
    let grids: Vec<Vec<f64>> = lengths
        .iter()
        .map(|&l| nodes.iter().map(|&t| 0.5 * l * (t + 1.0)).collect())
        .collect();

    // Each term is a product of one-dimensional factors, so the tensor-product
    // rule factorises axis by axis.
    let mut total = 0.0;
    for (key, c) in p.terms() {
        let mut value = c.to_f64();
        for axis in 0..3 {
            let half = 0.5 * lengths[axis];
            let s: f64 = grids[axis]
                .iter()
                .zip(&weights)
                .map(|(&x, &w)| w * key[axis].eval(x, lengths[axis]))
                .sum();
            value *= half * s;
        }
        total += value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        // exact up to degree 9
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((integral - 2.0 / 9.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_rule_has_centre_node() {
        let (x, _) = gauss_legendre(7);
        assert!(x[3].abs() < 1e-15);
    }
}
