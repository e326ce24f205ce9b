//! Displacement operators, SU(2) Perelomov (number) coherent states and the
//! similarity-transformed generators.
//!
//! The displacement operator is D(ξ) = exp(ξJ+ − ξ*J−) with
//! ξ = −(θ/2)e^{−iφ}, and its normal form is exp(ζJ+)·exp(ηJ0)·exp(−ζ*J−)
//! with ζ = −tan(θ/2)e^{−iφ}, η = ln(1 + |ζ|²). The supported domain is
//! θ ∈ [0, π): ζ diverges at θ = π.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::{accumulate, binomial, signed_log, PowerTable};
use crate::numerics::{ln_factorial, matrix_exp, OperatorMatrix};
use crate::su2::{check_pair, generators, Generators, HalfInt, Irrep};

/// The coherent-state parameter bundle derived from (θ, φ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    pub theta: f64,
    pub phi: f64,
    /// ξ = −(θ/2) e^{−iφ}
    pub xi: Complex64,
    /// ζ = −tan(θ/2) e^{−iφ}
    pub zeta: Complex64,
    /// η = ln(1 + |ζ|²)
    pub eta: f64,
    /// δ = sin(2|ξ|)
    pub delta: f64,
    /// ε = (cos(2|ξ|) − 1)/2
    pub eps: f64,
    /// |ζ|², kept as the exact f64 fed to the closed-form sums.
    zeta_norm_sqr: f64,
}

pub fn coherent_params(theta: f64, phi: f64) -> Result<CoherentParams> {
    if !(0.0..PI).contains(&theta) {
        return Err(domain(format!("theta must lie in [0, pi), got {theta}")));
    }
    if !phi.is_finite() {
        return Err(domain(format!("phi must be finite, got {phi}")));
    }
    let half = 0.5 * theta;
    let rot = Complex64::from_polar(1.0, -phi);
    let tan_half = half.tan();
    let zeta_norm_sqr = tan_half * tan_half;
    let sin_half = half.sin();
    Ok(CoherentParams {
        theta,
        phi,
        xi: rot * (-half),
        zeta: rot * (-tan_half),
        eta: zeta_norm_sqr.ln_1p(),
        delta: theta.sin(),
        // (cos θ − 1)/2 without the cancellation near θ = 0
        eps: -sin_half * sin_half,
        zeta_norm_sqr,
    })
}

impl CoherentParams {
    pub fn identity() -> Self {
        coherent_params(0.0, 0.0).expect("theta = 0 is valid")
    }

    /// |ζ|² = tan²(θ/2).
    pub fn zeta_norm_sqr(&self) -> f64 {
        self.zeta_norm_sqr
    }

    /// ξ/|ξ| = −e^{−iφ}; `None` at θ = 0 where the phase is undefined.
    pub fn xi_phase(&self) -> Option<Complex64> {
        if self.theta == 0.0 {
            None
        } else {
            Some(-Complex64::from_polar(1.0, -self.phi))
        }
    }
}

/// A state on one irrep, amplitudes in μ-ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub j: HalfInt,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(j: HalfInt, mu: HalfInt) -> Result<Self> {
        let irrep = Irrep::new(j)?;
        let idx = irrep.index_of(mu)?;
        let mut amplitudes = vec![Complex64::zero(); irrep.dim()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { j, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementMethod {
    /// matrix_exp(ξJ+ − ξ*J−)
    Exponential,
    /// exp(ζJ+)·exp(ηJ0)·exp(−ζ*J−) from the exact triangular factors
    Factored,
}

pub fn displacement_matrix(
    j: HalfInt,
    p: &CoherentParams,
    method: DisplacementMethod,
) -> Result<OperatorMatrix> {
    match method {
        DisplacementMethod::Exponential => {
            let g = generators(j)?;
            let a = &g.plus.scale(p.xi) - &g.minus.scale(p.xi.conj());
            Ok(matrix_exp(&a))
        }
        DisplacementMethod::Factored => factored_displacement(j, p),
    }
}

/// Target-label accumulators shared by the closed-form evaluators.
struct LabelSums<'a> {
    j: HalfInt,
    mu: HalfInt,
    p: &'a CoherentParams,
    table: PowerTable,
    sums: Vec<BigInt>,
}

impl<'a> LabelSums<'a> {
    fn new(j: HalfInt, mu: HalfInt, p: &'a CoherentParams) -> Self {
        let dim = j.twice() as usize + 1;
        Self {
            j,
            mu,
            p,
            table: PowerTable::new(p.zeta_norm_sqr, dim - 1),
            sums: vec![BigInt::zero(); dim],
        }
    }

    fn add(&mut self, k_index: usize, negative: bool, weight: &num_bigint::BigUint, a: usize, b: usize) {
        let v = self.table.term(weight, a, b);
        accumulate(&mut self.sums[k_index], negative, v);
    }

    /// Applies the k-only factors
    /// e^{i(μ−k)φ} t^{|k−μ|} (1+x)^{−j} √((j+μ)!(j+k)!/((j−μ)!(j−k)!)) (j−k)!/(j+μ)!.
    fn finish(self) -> Vec<Complex64> {
        let j = self.j;
        let x = self.p.zeta_norm_sqr;
        let tj = j.twice();
        let jp_mu = ((tj + self.mu.twice()) / 2) as u64;
        let jm_mu = ((tj - self.mu.twice()) / 2) as u64;
        let ln_x = x.ln();
        let ln_1px = x.ln_1p();
        let ln_den = self.table.ln_denominator();
        self.sums
            .iter()
            .enumerate()
            .map(|(idx, s)| {
                let sl = signed_log(s);
                if sl.sign == 0 {
                    return Complex64::zero();
                }
                let k_twice = 2 * idx as i32 - tj;
                let jp_k = idx as u64;
                let jm_k = (tj as usize - idx) as u64;
                let dk = (k_twice - self.mu.twice()).unsigned_abs() as f64 / 2.0;
                let ln_mag = sl.ln_abs - ln_den + 0.5 * dk * ln_x - j.value() * ln_1px
                    + 0.5 * (ln_factorial(jp_mu) + ln_factorial(jp_k) - ln_factorial(jm_mu) - ln_factorial(jm_k))
                    + ln_factorial(jm_k)
                    - ln_factorial(jp_mu);
                let phase = (self.mu.twice() - k_twice) as f64 / 2.0 * self.p.phi;
                Complex64::from_polar(sl.sign as f64 * ln_mag.exp(), phase)
            })
            .collect()
    }
}

/// Perelomov number coherent state D(ξ)|j, μ⟩ from the closed-form double sum.
///
/// Iteration order: n runs over 0..=(j+μ) and, for each n, s runs over
/// 0..=(j−μ+n); a term lands on the label μ − n + s, and any term whose label
/// would leave [−j, j] is skipped (with these limits none does). The term
///
/// ```text
///   ζ^s/s! (−ζ*)^n/n! e^{η(μ−n)} Γ(j−μ+n+1)/Γ(j+μ−n+1)
///   × [Γ(j+μ+1) Γ(j+μ−n+s+1) / (Γ(j−μ+1) Γ(j−μ+n−s+1))]^{1/2}
/// ```
///
/// is split into an exact integer part (−1)^s C(j−μ+n, s) C(j+μ, n)
/// x^{min(s,n)} (1+x)^{j+μ−n}, with x = |ζ|², and a factor depending only on
/// the label, which is applied in log space after the exact sum.
pub fn pncs(j: HalfInt, mu: HalfInt, p: &CoherentParams) -> Result<StateVector> {
    check_pair(j, mu)?;
    if p.zeta_norm_sqr == 0.0 {
        return StateVector::basis(j, mu);
    }
    let tj = j.twice();
    let jp_mu = (tj + mu.twice()) / 2;
    let jm_mu = (tj - mu.twice()) / 2;
    let mut sums = LabelSums::new(j, mu, p);
    for n in 0..=jp_mu {
        let c_n = binomial(jp_mu as u64, n as u64);
        for s in 0..=(jm_mu + n) {
            let label_twice = mu.twice() - 2 * n + 2 * s;
            if label_twice.abs() > tj {
                continue;
            }
            let weight = &c_n * binomial((jm_mu + n) as u64, s as u64);
            let k_index = ((label_twice + tj) / 2) as usize;
            sums.add(k_index, s % 2 == 1, &weight, n.min(s) as usize, (jp_mu - n) as usize);
        }
    }
    Ok(StateVector {
        j,
        amplitudes: sums.finish(),
    })
}

/// Entries of exp(ζJ+)·exp(ηJ0)·exp(−ζ*J−), column by column, summing over the
/// intermediate label l ≤ min(k, μ) of the triangular product exactly.
fn factored_displacement(j: HalfInt, p: &CoherentParams) -> Result<OperatorMatrix> {
    let irrep = Irrep::new(j)?;
    let dim = irrep.dim();
    if p.zeta_norm_sqr == 0.0 {
        return Ok(OperatorMatrix::identity(dim));
    }
    let mut out = OperatorMatrix::zeros(dim);
    let tj = j.twice();
    for col in 0..dim {
        let mu = irrep.mu_at(col);
        let jp_mu = col as i32;
        let mut sums = LabelSums::new(j, mu, p);
        for row in 0..dim {
            // l runs from −j up to min(k, μ); in index form li ≤ min(row, col)
            for li in 0..=row.min(col) {
                let k_minus_l = (row - li) as u64;
                let mu_minus_l = (col - li) as u64;
                let weight = binomial((tj as usize - li) as u64, k_minus_l) * binomial(jp_mu as u64, mu_minus_l);
                sums.add(row, k_minus_l % 2 == 1, &weight, row.min(col) - li, li);
            }
        }
        for (row, z) in sums.finish().into_iter().enumerate() {
            out[(row, col)] = z;
        }
    }
    Ok(out)
}

/// Standard (atomic) coherent state D(ξ)|j, −j⟩ from its single binomial sum.
pub fn scs(j: HalfInt, p: &CoherentParams) -> Result<StateVector> {
    let irrep = Irrep::new(j)?;
    let lowest = HalfInt::from_twice(-j.twice());
    if p.zeta_norm_sqr == 0.0 {
        return StateVector::basis(j, lowest);
    }
    let tj = j.twice() as u64;
    let ln_x = p.zeta_norm_sqr.ln();
    let prefactor = -j.value() * p.zeta_norm_sqr.ln_1p();
    let amplitudes = (0..irrep.dim() as u64)
        .map(|n| {
            // n = j + μ
            let ln_binom = ln_factorial(tj) - ln_factorial(n) - ln_factorial(tj - n);
            let mag = (0.5 * ln_binom + prefactor + n as f64 * 0.5 * ln_x).exp();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::from_polar(sign * mag, -(n as f64) * p.phi)
        })
        .collect();
    Ok(StateVector { j, amplitudes })
}

/// I± = D J± D†, I0 = D J0 D† from their explicit linear combinations of J.
pub fn transformed_generators(j: HalfInt, p: &CoherentParams) -> Result<Generators> {
    let g = generators(j)?;
    let Some(u) = p.xi_phase() else {
        return Ok(g);
    };
    let ub = u.conj();
    let (d, e) = (p.delta, p.eps);
    let plus = combine(&g, ub * d, e + 1.0, ub * ub * e);
    let minus = combine(&g, u * d, u * u * e, e + 1.0);
    let zero = combine(&g, 2.0 * e + 1.0, -d * u / 2.0, -d * ub / 2.0);
    Ok(Generators { plus, minus, zero })
}

/// D† J± D, D† J0 D from their explicit linear combinations of J.
pub fn dagger_transformed_generators(j: HalfInt, p: &CoherentParams) -> Result<Generators> {
    let g = generators(j)?;
    let Some(u) = p.xi_phase() else {
        return Ok(g);
    };
    let ub = u.conj();
    let (d, e) = (p.delta, p.eps);
    let plus = combine(&g, -ub * d, e + 1.0, ub * ub * e);
    let minus = combine(&g, -u * d, u * u * e, e + 1.0);
    let zero = combine(&g, 2.0 * e + 1.0, d * u / 2.0, d * ub / 2.0);
    Ok(Generators { plus, minus, zero })
}

/// c0·J0 + cp·J+ + cm·J−
fn combine(
    g: &Generators,
    c0: impl Into<Complex64>,
    cp: impl Into<Complex64>,
    cm: impl Into<Complex64>,
) -> OperatorMatrix {
    let mut m = g.zero.scale(c0.into());
    m += &g.plus.scale(cp.into());
    m += &g.minus.scale(cm.into());
    m
}
