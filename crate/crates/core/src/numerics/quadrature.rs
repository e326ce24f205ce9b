use std::f64::consts::PI;

use crate::error::{domain, Result};

pub const DEFAULT_RHO_MAX: f64 = 8.0;
pub const DEFAULT_RADIAL_POINTS: usize = 256;
const MIN_POINTS: usize = 16;

/// Gauss–Legendre nodes and weights on [a, b].
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// ∫₀^{rho_max} f(ρ) ρ dρ by Gauss–Legendre.
pub fn radial_quadrature(f: impl Fn(f64) -> f64, rho_max: f64, n_points: usize) -> Result<f64> {
    if !(rho_max > 0.0) || !rho_max.is_finite() {
        return Err(domain(format!("rho_max must be positive and finite, got {rho_max}")));
    }
    if n_points < MIN_POINTS {
        return Err(domain(format!("need at least {MIN_POINTS} quadrature points, got {n_points}")));
    }
    let (x, w) = gauss_legendre(n_points, 0.0, rho_max);
    Ok(x.iter().zip(&w).map(|(&r, &wi)| wi * f(r) * r).sum())
}
