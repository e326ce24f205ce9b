//! Independent evaluators used as oracles by tests and `verify`.
//!
//! These follow the closed forms literally, term by term, in exact rational
//! arithmetic (the f64 inputs are converted exactly), and only the per-label
//! totals are rounded. They are deliberately slow and share no code with the
//! production paths beyond the basic types.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coherent::{CoherentParams, StateVector};
use crate::error::{domain, Result};
use crate::su2::{check_pair, HalfInt};

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

fn ln_abs_int(v: &BigInt) -> f64 {
    let bits = v.bits();
    let drop = bits.saturating_sub(60);
    let top = (v.abs() >> drop).to_f64().expect("60 bits fit");
    top.ln() + drop as f64 * LN_2
}

/// (sign, ln|v|) of a non-zero rational.
fn signed_ln(v: &BigRational) -> (f64, f64) {
    let sign = if v.is_negative() { -1.0 } else { 1.0 };
    (sign, ln_abs_int(v.numer()) - ln_abs_int(v.denom()))
}

fn pow(base: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Shared literal double sum: for each target index k − (−j) returns
/// Σ (−1)^s x^{(s+n−|k−μ|)/2} (1+x)^{μ−n−f} (j−μ+n)! / ((j+μ−n)! s! n!)
/// with k = μ − n + s and f the fractional part of μ. Both loops run over
/// 0..=2j; a term whose Γ-function arguments make it vanish (1/Γ at a
/// non-positive integer) is dropped, so the summation limits are not imposed
/// by hand.
fn label_sums(j: HalfInt, mu: HalfInt, x: &BigRational) -> Vec<BigRational> {
    let tj = j.twice() as i64;
    let jm = (j.twice() - mu.twice()) as i64 / 2; // j − μ
    let jp = (j.twice() + mu.twice()) as i64 / 2; // j + μ
    let one_plus_x = x + BigRational::one();
    let mu_floor2 = mu.twice() as i64 - (mu.twice() as i64).rem_euclid(2); // 2(μ − f)
    let mut sums = vec![BigRational::zero(); tj as usize + 1];
    for s in 0..=tj {
        for n in 0..=tj {
            // 1/Γ(j+μ−n+1) = 0 for n > j+μ
            if jp - n < 0 {
                continue;
            }
            // twice k, and j − k must be ≥ 0 for Γ(j−k+1) in the denominator
            let tk = mu.twice() as i64 - 2 * n + 2 * s;
            let j_minus_k = (tj - tk) / 2;
            let j_plus_k = (tj + tk) / 2;
            if j_minus_k < 0 || j_plus_k < 0 {
                continue;
            }
            let d2 = (tk - mu.twice() as i64).abs(); // 2|k − μ|
            let xpow = (2 * (s + n) - d2) / 4;
            let mut term = BigRational::new(
                factorial(jm + n),
                factorial(jp - n) * factorial(s) * factorial(n),
            );
            term *= pow(x, xpow);
            term *= pow(&one_plus_x, mu_floor2 / 2 - n);
            if s % 2 == 1 {
                term = -term;
            }
            sums[j_plus_k as usize] += term;
        }
    }
    sums
}

/// Closed-form number coherent state evaluated literally from its double
/// sum in exact arithmetic.
pub fn literal_pncs(j: HalfInt, mu: HalfInt, p: &CoherentParams) -> Result<StateVector> {
    check_pair(j, mu)?;
    let x = rational(p.zeta_norm_sqr());
    let sums = label_sums(j, mu, &x);
    let tj = j.twice() as i64;
    let jm = (j.twice() - mu.twice()) as i64 / 2;
    let jp = (j.twice() + mu.twice()) as i64 / 2;
    let f = if mu.is_integer() { 0.0 } else { 0.5 };
    let xf = p.zeta_norm_sqr();
    let amplitudes = sums
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if a.is_zero() {
                return Complex64::new(0.0, 0.0);
            }
            let tk = 2 * i as i64 - tj;
            let d = (tk - mu.twice() as i64).abs() as f64 / 2.0;
            let (jpk, jmk) = ((tj + tk) / 2, (tj - tk) / 2);
            let ratio = BigRational::new(factorial(jp) * factorial(jpk), factorial(jm) * factorial(jmk));
            let (sign, ln_a) = signed_ln(a);
            let ln_ratio = signed_ln(&ratio).1;
            let ln_t = if d == 0.0 { 0.0 } else { 0.5 * d * xf.ln() };
            let mag = (ln_a + ln_t + f * xf.ln_1p() + 0.5 * ln_ratio).exp();
            Complex64::from_polar(sign * mag, (mu.value() - tk as f64 / 2.0) * p.phi)
        })
        .collect();
    Ok(StateVector { j, amplitudes })
}

/// Generalised Laguerre polynomial L_n^α(y) from its explicit series
/// Σ_i C(n+α, n−i)(−y)^i/i!, valid for negative integer α with n + α ≥ 0.
pub fn laguerre_rational(n: i64, alpha: i64, y: &BigRational) -> BigRational {
    assert!(n >= 0 && n + alpha >= 0, "needs n >= 0 and n + alpha >= 0");
    let top = n + alpha;
    let mut sum = BigRational::zero();
    for i in 0..=n {
        let bottom = n - i;
        if bottom > top {
            continue;
        }
        let binom = BigRational::new(factorial(top), factorial(bottom) * factorial(top - bottom));
        let mut term = binom * pow(y, i) / BigRational::from_integer(factorial(i));
        if i % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    sum
}

/// Position-space number coherent state from the literal double sum over
/// (s, n) with signed Laguerre upper index 2(μ − n + s), normalised with the
/// 1/√(2π) angular prefactor. Requires ρ > 0.
pub fn literal_pncs_wavefunction(j: HalfInt, mu: HalfInt, p: &CoherentParams, rho: f64, angle: f64) -> Result<Complex64> {
    check_pair(j, mu)?;
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(domain(format!("rho must be positive and finite, got {rho}")));
    }
    let x = rational(p.zeta_norm_sqr());
    let xf = p.zeta_norm_sqr();
    let y_f = rho * rho;
    let y = rational(y_f);
    let sums = label_sums(j, mu, &x);
    let tj = j.twice() as i64;
    let jm = (j.twice() - mu.twice()) as i64 / 2;
    let jp = (j.twice() + mu.twice()) as i64 / 2;
    let f = if mu.is_integer() { 0.0 } else { 0.5 };
    let ln_common = -0.5 * y_f - 0.5 * (2.0 * PI).ln()
        + 0.5 * (LN_2 + signed_ln(&BigRational::new(factorial(jp), factorial(jm))).1);

    let mut total = Complex64::new(0.0, 0.0);
    for (i, a) in sums.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let tk = 2 * i as i64 - tj; // 2k
        let j_minus_k = (tj - tk) / 2;
        // ρ^{2k} = y^{⌊k⌋}·y^{g} with g ∈ {0, ½}
        let g = tk.rem_euclid(2);
        let mut b = a * pow(&y, (tk - g) / 2) * laguerre_rational(j_minus_k, tk, &y);
        if b.is_zero() {
            continue;
        }
        if j_minus_k % 2 == 1 {
            b = -b;
        }
        let (sign, ln_b) = signed_ln(&b);
        let d = (tk - mu.twice() as i64).abs() as f64 / 2.0;
        let ln_t = if d == 0.0 { 0.0 } else { 0.5 * d * xf.ln() };
        let ln_rho = if g == 1 { rho.ln() } else { 0.0 };
        let mag = (ln_b + ln_t + f * xf.ln_1p() + ln_rho + ln_common).exp();
        let phase = (mu.value() - tk as f64 / 2.0) * p.phi + tk as f64 * angle;
        total += Complex64::from_polar(sign * mag, phase);
    }
    Ok(total)
}

/// Position-space standard coherent state from its single sum over μ,
/// evaluated in floating point with the explicit Laguerre series and the
/// 1/√(2π) angular prefactor. Requires ρ > 0.
pub fn standard_cs_wavefunction(j: HalfInt, p: &CoherentParams, rho: f64, angle: f64) -> Result<Complex64> {
    if j.twice() < 0 {
        return Err(domain(format!("j must be non-negative, got {j}")));
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(domain(format!("rho must be positive and finite, got {rho}")));
    }
    let tj = j.twice() as i64;
    let fact = |n: i64| (2..=n).fold(1.0f64, |a, i| a * i as f64);
    let y = rho * rho;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..=tj {
        // i = j + μ, 2μ = 2i − 2j
        let tmu = 2 * i - tj;
        let n_lag = tj - i; // j − μ
        let alpha = tmu;
        let top = n_lag + alpha; // j + μ
        let mut lag = 0.0;
        for r in 0..=n_lag {
            let bottom = n_lag - r;
            if bottom > top {
                continue;
            }
            let c = fact(top) / (fact(bottom) * fact(top - bottom));
            lag += c * (-y).powi(r as i32) / fact(r);
        }
        let coeff = (2.0 * fact(tj)).sqrt() / fact(i);
        let sign = if n_lag % 2 == 0 { 1.0 } else { -1.0 };
        let zeta_pow = p.zeta.powi(i as i32);
        let amp = zeta_pow * (coeff * (-j.value() * p.zeta_norm_sqr().ln_1p()).exp() * sign * rho.powi(tmu as i32) * lag);
        total += amp * Complex64::from_polar(1.0, tmu as f64 * angle);
    }
    Ok(total * (-0.5 * y).exp() / (2.0 * PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{coherent_params, displacement_matrix, pncs, DisplacementMethod};
    use crate::wavefn::{psi_nm, Convention, PncsWavefunction};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn laguerre_series_examples() {
        let y = rational(0.5);
        // L_1^1(y) = 2 − y
        assert_eq!(laguerre_rational(1, 1, &y), rational(1.5));
        // L_2^{-1}(y) = y²/2 − y
        assert_eq!(laguerre_rational(2, -1, &y), rational(0.125 - 0.5));
        // L_n^{-α} = (−y)^α (n−α)!/n! L_{n−α}^α
        let y = rational(1.75);
        let lhs = laguerre_rational(5, -3, &y);
        let rhs = pow(&(-y.clone()), 3) * BigRational::new(factorial(2), factorial(5)) * laguerre_rational(2, 3, &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn literal_sum_matches_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for tj in 0..=12 {
            let p = coherent_params(rng.gen_range(0.0..3.0), rng.gen_range(0.0..6.3)).unwrap();
            let d = displacement_matrix(h(tj), &p, DisplacementMethod::Exponential).unwrap();
            for (col, tm) in (-tj..=tj).step_by(2).enumerate() {
                let lit = literal_pncs(h(tj), h(tm), &p).unwrap();
                let fast = pncs(h(tj), h(tm), &p).unwrap();
                for (row, z) in lit.amplitudes.iter().enumerate() {
                    assert!((z - d[(row, col)]).norm() <= 1e-10, "2j={tj} 2mu={tm}");
                }
                assert!(lit.max_abs_diff(&fast) <= 1e-12);
            }
        }
    }

    #[test]
    fn literal_wavefunction_matches_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..30 {
            let tj = rng.gen_range(0..=10);
            let tm = 2 * rng.gen_range(0..=tj) - tj;
            let p = coherent_params(rng.gen_range(0.0..3.0), rng.gen_range(0.0..6.3)).unwrap();
            let rho = rng.gen_range(0.05..4.0);
            let angle = rng.gen_range(0.0..6.28);
            let a = literal_pncs_wavefunction(h(tj), h(tm), &p, rho, angle).unwrap();
            let b = PncsWavefunction::new(h(tj), h(tm), &p).unwrap().eval(rho, angle);
            assert!((a - b).norm() <= 1e-8 * b.norm(), "2j={tj} 2mu={tm}: {a} vs {b}");
        }
    }

    #[test]
    fn identity_literal_wavefunction_is_basis_function() {
        let p = CoherentParams::identity();
        for (tj, tm) in [(1, -1), (3, -3), (4, 2), (5, -1)] {
            let a = literal_pncs_wavefunction(h(tj), h(tm), &p, 1.3, 0.4).unwrap();
            let b = psi_nm(tj as i64, tm as i64, 1.3, 0.4, Convention::Normalized).unwrap();
            assert!((a - b).norm() <= 1e-14);
        }
    }

    #[test]
    fn standard_cs_matches_lowest_pncs() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for tj in 0..=10 {
            let p = coherent_params(rng.gen_range(0.0..3.0), rng.gen_range(0.0..6.3)).unwrap();
            let rho = rng.gen_range(0.1..3.5);
            let angle = rng.gen_range(0.0..6.28);
            let a = standard_cs_wavefunction(h(tj), &p, rho, angle).unwrap();
            let b = PncsWavefunction::new(h(tj), h(-tj), &p).unwrap().eval(rho, angle);
            assert!((a - b).norm() <= 1e-9 * b.norm().max(1e-3));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p = CoherentParams::identity();
        assert!(literal_pncs(h(2), h(1), &p).is_err());
        assert!(literal_pncs_wavefunction(h(2), h(0), &p, 0.0, 0.0).is_err());
        assert!(standard_cs_wavefunction(h(2), &p, -1.0, 0.0).is_err());
    }
}
