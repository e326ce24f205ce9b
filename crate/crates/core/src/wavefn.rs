//! Polar wavefunctions of the 2D isotropic oscillator and of the number
//! coherent states built on them.
//!
//! `angle` is always the polar angle of the position plane; `phi` is reserved
//! for the coherent-state phase. The radial factor uses |m| so negative
//! angular momenta stay finite at the origin.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coherent::{pncs, CoherentParams};
use crate::error::{domain, Result};
use crate::numerics::{assoc_laguerre, gauss_legendre, ln_factorial};
use crate::su2::HalfInt;

/// (N, m) labels of the 2D oscillator with radial number n_ρ = (N − |m|)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
    pub n_rho: u32,
}

impl QuantumNumbers {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 0 || m.abs() > n {
            return Err(domain(format!("need |m| <= N with N >= 0, got (N, m) = ({n}, {m})")));
        }
        if (n - m) % 2 != 0 {
            return Err(domain(format!("N - m must be even, got (N, m) = ({n}, {m})")));
        }
        if n > i32::MAX as i64 {
            return Err(domain(format!("N = {n} is too large")));
        }
        Ok(Self {
            n: n as u32,
            m: m as i32,
            n_rho: ((n - m.abs()) / 2) as u32,
        })
    }

    pub fn j(&self) -> HalfInt {
        HalfInt::from_twice(self.n as i32)
    }

    pub fn mu(&self) -> HalfInt {
        HalfInt::from_twice(self.m)
    }
}

/// (N, m) → (j = N/2, μ = m/2, n_ρ).
pub fn map_quantum_numbers(n: i64, m: i64) -> Result<(HalfInt, HalfInt, u32)> {
    let q = QuantumNumbers::new(n, m)?;
    Ok((q.j(), q.mu(), q.n_rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// 1/√π angular prefactor; norm² = 2
    Paper,
    /// 1/√(2π) angular prefactor; unit norm
    Normalized,
}

impl Convention {
    fn prefactor(self) -> f64 {
        match self {
            Convention::Paper => 1.0 / PI.sqrt(),
            Convention::Normalized => 1.0 / (2.0 * PI).sqrt(),
        }
    }
}

/// ψ_{N,m}(ρ, angle) = c·e^{im·angle}(−1)^{n_ρ}√(2n_ρ!/(n_ρ+|m|)!)·ρ^{|m|}L_{n_ρ}^{|m|}(ρ²)e^{−ρ²/2}.
pub fn psi_nm(n: i64, m: i64, rho: f64, angle: f64, convention: Convention) -> Result<Complex64> {
    let q = QuantumNumbers::new(n, m)?;
    if !(rho >= 0.0) || !rho.is_finite() || !angle.is_finite() {
        return Err(domain(format!("need finite rho >= 0 and finite angle, got ({rho}, {angle})")));
    }
    Ok(eval_psi(q, rho, angle, convention))
}

fn eval_psi(q: QuantumNumbers, rho: f64, angle: f64, convention: Convention) -> Complex64 {
    Complex64::from_polar(radial(q, rho, convention), q.m as f64 * angle)
}

fn radial(q: QuantumNumbers, rho: f64, convention: Convention) -> f64 {
    let am = q.m.unsigned_abs();
    let x = rho * rho;
    let ln_norm = 0.5 * (std::f64::consts::LN_2 + ln_factorial(q.n_rho as u64) - ln_factorial((q.n_rho + am) as u64));
    let sign = if q.n_rho % 2 == 0 { 1.0 } else { -1.0 };
    sign * convention.prefactor() * (ln_norm - 0.5 * x).exp() * rho.powi(am as i32) * assoc_laguerre(q.n_rho, am, x)
}

/// ⟨ψ_{N,m}|ψ_{N′,m′}⟩ by Gauss–Legendre in ρ on [0, rho_max] and a uniform
/// angular rule (exact for |m − m′| < n_angle).
pub fn overlap(
    a: (i64, i64),
    b: (i64, i64),
    convention: Convention,
    rho_max: f64,
    n_rho: usize,
    n_angle: usize,
) -> Result<Complex64> {
    let qa = QuantumNumbers::new(a.0, a.1)?;
    let qb = QuantumNumbers::new(b.0, b.1)?;
    if !(rho_max > 0.0) || n_rho == 0 || n_angle == 0 {
        return Err(domain("quadrature needs rho_max > 0 and at least one node per axis"));
    }
    let (nodes, weights) = gauss_legendre(n_rho, 0.0, rho_max);
    let radial_part: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&r, &w)| w * r * radial(qa, r, convention) * radial(qb, r, convention))
        .sum();
    let dm = (qb.m - qa.m) as f64;
    let h = 2.0 * PI / n_angle as f64;
    let angular: Complex64 = (0..n_angle).map(|i| Complex64::from_polar(h, dm * i as f64 * h)).sum();
    Ok(angular * radial_part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    A,
    ADag,
    B,
    BDag,
}

/// Action of a single boson operator on |N, m⟩: (coefficient, N′, m′).
/// A zero coefficient means the state is annihilated.
pub fn polar_ladder_action(op: LadderOp, n: i64, m: i64) -> (f64, i64, i64) {
    let plus = 0.5 * (n + m) as f64;
    let minus = 0.5 * (n - m) as f64;
    match op {
        LadderOp::A => (plus.max(0.0).sqrt(), n - 1, m - 1),
        LadderOp::ADag => ((plus + 1.0).sqrt(), n + 1, m + 1),
        LadderOp::B => (minus.max(0.0).sqrt(), n - 1, m + 1),
        LadderOp::BDag => ((minus + 1.0).sqrt(), n + 1, m - 1),
    }
}

/// Eigenvalue of op₁†op₁-type products applied label-wise: applies `second`
/// then `first` and returns the accumulated coefficient and final labels.
pub fn ladder_product(first: LadderOp, second: LadderOp, n: i64, m: i64) -> (f64, i64, i64) {
    let (c1, n1, m1) = polar_ladder_action(second, n, m);
    if c1 == 0.0 {
        return (0.0, n1, m1);
    }
    let (c2, n2, m2) = polar_ladder_action(first, n1, m1);
    (c1 * c2, n2, m2)
}

/// A number coherent state in the position representation, expanded over
/// ψ_{2j, 2k} (normalized convention) with the closed-form amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PncsWavefunction {
    labels: Vec<QuantumNumbers>,
    coefficients: Vec<Complex64>,
}

impl PncsWavefunction {
    pub fn new(j: HalfInt, mu: HalfInt, p: &CoherentParams) -> Result<Self> {
        let state = pncs(j, mu, p)?;
        let tj = j.twice() as i64;
        let labels = (0..=tj)
            .map(|i| QuantumNumbers::new(tj, 2 * i - tj))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            labels,
            coefficients: state.amplitudes,
        })
    }

    /// Amplitudes over ψ_{2j, m} with m ascending.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn eval(&self, rho: f64, angle: f64) -> Complex64 {
        self.labels
            .iter()
            .zip(&self.coefficients)
            .map(|(&q, c)| c * eval_psi(q, rho, angle, Convention::Normalized))
            .sum()
    }
}

pub fn pncs_wavefunction(j: HalfInt, mu: HalfInt, p: &CoherentParams, rho: f64, angle: f64) -> Result<Complex64> {
    if !(rho >= 0.0) || !rho.is_finite() || !angle.is_finite() {
        return Err(domain(format!("need finite rho >= 0 and finite angle, got ({rho}, {angle})")));
    }
    Ok(PncsWavefunction::new(j, mu, p)?.eval(rho, angle))
}

/// Sample points; ρ values positive and increasing, angles increasing in [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    rho_values: Vec<f64>,
    angle_values: Vec<f64>,
}

pub const DEFAULT_ANGLE_POINTS: usize = 128;

impl PolarGrid {
    pub fn new(rho_values: Vec<f64>, angle_values: Vec<f64>) -> Result<Self> {
        if rho_values.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(domain("rho values must be positive and finite"));
        }
        if angle_values.iter().any(|a| !(0.0..2.0 * PI).contains(a)) {
            return Err(domain("angle values must lie in [0, 2pi)"));
        }
        if !rho_values.windows(2).all(|w| w[0] < w[1]) || !angle_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(domain("grid values must be strictly increasing"));
        }
        Ok(Self {
            rho_values,
            angle_values,
        })
    }

    /// Midpoint radial nodes (i + ½)·rho_max/n_rho and angles i·2π/n_angle.
    pub fn uniform(rho_max: f64, n_rho: usize, n_angle: usize) -> Result<Self> {
        if !(rho_max > 0.0) || !rho_max.is_finite() {
            return Err(domain(format!("rho_max must be positive and finite, got {rho_max}")));
        }
        let dr = rho_max / n_rho as f64;
        let da = 2.0 * PI / n_angle as f64;
        Self::new(
            (0..n_rho).map(|i| (i as f64 + 0.5) * dr).collect(),
            (0..n_angle).map(|i| i as f64 * da).collect(),
        )
    }

    pub fn rho_values(&self) -> &[f64] {
        &self.rho_values
    }

    pub fn angle_values(&self) -> &[f64] {
        &self.angle_values
    }

    pub fn len(&self) -> usize {
        self.rho_values.len() * self.angle_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Radial cell widths: boundaries halfway between neighbours, the first
    /// cell clipped at 0.
    fn rho_widths(&self) -> Vec<f64> {
        let r = &self.rho_values;
        let n = r.len();
        if n == 1 {
            return vec![2.0 * r[0]];
        }
        (0..n)
            .map(|i| {
                let lo = if i == 0 { (r[0] - 0.5 * (r[1] - r[0])).max(0.0) } else { 0.5 * (r[i - 1] + r[i]) };
                let hi = if i == n - 1 { r[i] + 0.5 * (r[i] - r[i - 1]) } else { 0.5 * (r[i] + r[i + 1]) };
                hi - lo
            })
            .collect()
    }
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self::uniform(crate::numerics::DEFAULT_RHO_MAX, crate::numerics::DEFAULT_RADIAL_POINTS, DEFAULT_ANGLE_POINTS)
            .expect("default grid is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub rho: f64,
    pub angle: f64,
    pub re: f64,
    pub im: f64,
}

/// Samples the PNCS wavefunction over the grid, ρ-major.
pub fn grid_eval(j: HalfInt, mu: HalfInt, p: &CoherentParams, grid: &PolarGrid) -> Result<Vec<GridRow>> {
    if grid.is_empty() {
        return Err(domain("grid has no points"));
    }
    let wf = PncsWavefunction::new(j, mu, p)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &rho in grid.rho_values() {
        for &angle in grid.angle_values() {
            let z = wf.eval(rho, angle);
            rows.push(GridRow { rho, angle, re: z.re, im: z.im });
        }
    }
    Ok(rows)
}

/// Σ |ψ|² ρ Δρ Δangle over rows produced by [`grid_eval`] on `grid`, with a
/// uniform periodic angular weight 2π/n_angle.
pub fn grid_norm_sqr(grid: &PolarGrid, rows: &[GridRow]) -> Result<f64> {
    if rows.len() != grid.len() || grid.is_empty() {
        return Err(domain("rows do not match the grid"));
    }
    let na = grid.angle_values().len();
    let da = 2.0 * PI / na as f64;
    let widths = grid.rho_widths();
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.re * r.re + r.im * r.im) * r.rho * widths[i / na] * da)
        .sum())
}
