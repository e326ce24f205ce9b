//! Two coupled oscillators H = ω1 a†a + ω2 b†b + λ(a†b + b†a) in su(2) block
//! form.
//!
//! On the block with total quantum number N = 2j the Hamiltonian reads
//! H = ½(ω1+ω2)·2j + (ω1−ω2)J0 + λ(J+ + J−). Tilting by D(ξ) with θ = atan2(2λ, ω1−ω2)
//! diagonalises it, giving E(j, μ) = (ω1+ω2)j + μ√(4λ² + (ω1−ω2)²).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{coherent_params, CoherentParams};
use crate::error::{domain, Result};
use crate::numerics::OperatorMatrix;
use crate::su2::{check_pair, generators, HalfInt, Irrep};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub omega1: f64,
    pub omega2: f64,
    pub lambda: f64,
}

impl OscillatorSpec {
    pub fn new(omega1: f64, omega2: f64, lambda: f64) -> Result<Self> {
        if !(omega1 > 0.0 && omega1.is_finite()) || !(omega2 > 0.0 && omega2.is_finite()) {
            return Err(domain(format!(
                "frequencies must be positive and finite, got ({omega1}, {omega2})"
            )));
        }
        if !lambda.is_finite() {
            return Err(domain(format!("coupling must be finite, got {lambda}")));
        }
        Ok(Self { omega1, omega2, lambda })
    }

    /// √(4λ² + (ω1−ω2)²), the level spacing in μ.
    pub fn splitting(&self) -> f64 {
        (2.0 * self.lambda).hypot(self.omega1 - self.omega2)
    }

    /// E(j, μ) = (ω1+ω2)j + μ√(4λ² + (ω1−ω2)²).
    pub fn energy(&self, j: HalfInt, mu: HalfInt) -> f64 {
        (self.omega1 + self.omega2) * j.value() + mu.value() * self.splitting()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub j: HalfInt,
    pub mu: HalfInt,
    pub energy: f64,
}

/// Temperature in units where k = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalInput {
    temperature: f64,
}

impl ThermalInput {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) || temperature.is_nan() {
            return Err(domain(format!("temperature must be positive, got {temperature}")));
        }
        Ok(Self { temperature })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }
}

/// ½(ω1+ω2)·2j·I + (ω1−ω2)J0 + λ(J+ + J−) on the spin-j block.
pub fn su2_hamiltonian(spec: &OscillatorSpec, j: HalfInt) -> Result<OperatorMatrix> {
    let g = generators(j)?;
    let n_total = j.twice() as f64;
    let mut h = OperatorMatrix::identity(g.zero.dim()).scale_real(0.5 * (spec.omega1 + spec.omega2) * n_total);
    h += &g.zero.scale_real(spec.omega1 - spec.omega2);
    h += &(&g.plus + &g.minus).scale_real(spec.lambda);
    Ok(h)
}

/// Coherent parameters whose tilt diagonalises the Hamiltonian on every block.
///
/// θ = atan2(2|λ|, ω1−ω2) ∈ (0, π) with φ = 0 for λ > 0 and φ = π for λ < 0;
/// both give the + branch H′ = ½(ω1+ω2)N + √(4λ²+(ω1−ω2)²)J0. When λ = 0 and
/// ω1 ≥ ω2 the Hamiltonian is already diagonal and θ = 0. λ = 0 with ω1 < ω2
/// would need θ = π, outside the supported domain, and is rejected.
pub fn diagonalizing_params(spec: &OscillatorSpec) -> Result<CoherentParams> {
    let delta = spec.omega1 - spec.omega2;
    if spec.lambda == 0.0 {
        if delta >= 0.0 {
            return coherent_params(0.0, 0.0);
        }
        return Err(domain(
            "lambda = 0 with omega1 < omega2 needs theta = pi (outside the supported domain)",
        ));
    }
    let theta = (2.0 * spec.lambda.abs()).atan2(delta);
    let phi = if spec.lambda > 0.0 { 0.0 } else { std::f64::consts::PI };
    coherent_params(theta, phi)
}

/// The φ prescription −i ln[(−2ελ + δ(ω1−ω2)) / (2(ε+1)λ)] evaluated at `p`.
///
/// It is derived for the φ = 0 branch, where the argument reduces to 1 and the
/// result to 0. Returns `None` when λ = 0 (the expression is singular).
pub fn paper_phi(spec: &OscillatorSpec, p: &CoherentParams) -> Option<Complex64> {
    if spec.lambda == 0.0 {
        return None;
    }
    let num = -2.0 * p.eps * spec.lambda + p.delta * (spec.omega1 - spec.omega2);
    let den = 2.0 * (p.eps + 1.0) * spec.lambda;
    let arg = Complex64::new(num / den, 0.0);
    Some(-Complex64::i() * arg.ln())
}

/// The tilted Hamiltonian D†HD assembled from its explicit J0, J±, N
/// coefficients.
pub fn tilted_hamiltonian(spec: &OscillatorSpec, j: HalfInt, p: &CoherentParams) -> Result<OperatorMatrix> {
    let g = generators(j)?;
    // at θ = 0, δ = ε = 0 and the phase drops out
    let u = p.xi_phase().unwrap_or(Complex64::new(1.0, 0.0));
    let ub = u.conj();
    let dw = spec.omega1 - spec.omega2;
    let lam = spec.lambda;
    let (d, e) = (p.delta, p.eps);

    let c0 = dw * (2.0 * e + 1.0) - lam * d * (u + ub).re;
    let cp = u * (dw * d / 2.0) + (u * u + 1.0) * (lam * e) + lam;
    let cm = ub * (dw * d / 2.0) + (ub * ub + 1.0) * (lam * e) + lam;

    let n_total = j.twice() as f64;
    let mut h = OperatorMatrix::identity(g.zero.dim()).scale_real(0.5 * (spec.omega1 + spec.omega2) * n_total);
    h += &g.zero.scale_real(c0);
    h += &g.plus.scale(cp);
    h += &g.minus.scale(cm);
    Ok(h)
}

/// Analytic block spectrum, μ ascending.
pub fn spectrum(spec: &OscillatorSpec, j: HalfInt) -> Result<Vec<SpectrumEntry>> {
    let irrep = Irrep::new(j)?;
    Ok(irrep
        .mus()
        .map(|mu| SpectrumEntry {
            j,
            mu,
            energy: spec.energy(j, mu),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    /// (2j+1)·exp(−E₋/kT) with E₋ = [(ω1+ω2) − √(4λ²+(ω1−ω2)²)]·j
    Paper,
    /// Σ_μ exp(−E(j, μ)/kT) over the block
    Exact,
}

pub fn partition_function(
    spec: &OscillatorSpec,
    j: HalfInt,
    th: &ThermalInput,
    mode: PartitionMode,
) -> Result<f64> {
    let irrep = Irrep::new(j)?;
    let kt = th.temperature();
    Ok(match mode {
        PartitionMode::Paper => {
            let e_minus = lowest_weight_energy(spec, j);
            irrep.dim() as f64 * (-e_minus / kt).exp()
        }
        PartitionMode::Exact => irrep.mus().map(|mu| (-spec.energy(j, mu) / kt).exp()).sum(),
    })
}

/// [(ω1+ω2) − √(4λ²+(ω1−ω2)²)]·j, the μ = −j level.
pub fn lowest_weight_energy(spec: &OscillatorSpec, j: HalfInt) -> f64 {
    ((spec.omega1 + spec.omega2) - spec.splitting()) * j.value()
}

/// exp(−i E(j, μ) t), the phase acquired by the (j, μ) eigenstate.
pub fn evolve_phase(spec: &OscillatorSpec, j: HalfInt, mu: HalfInt, t: f64) -> Result<Complex64> {
    check_pair(j, mu)?;
    Ok(Complex64::from_polar(1.0, -spec.energy(j, mu) * t))
}
