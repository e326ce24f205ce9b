use crate::error::{domain, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN: f64 = 15.0;

/// Natural log of Γ(x) for x > 0.
///
/// Integer arguments up to 21 go through an exact `u64` factorial; everything
/// else is shifted up to x ≥ 15 and evaluated with the Stirling series.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma requires finite x > 0, got {x}")));
    }
    if x.fract() == 0.0 && x <= 21.0 {
        return Ok(ln_factorial_exact(x as u64 - 1));
    }
    Ok(log_gamma_unchecked(x))
}

fn log_gamma_unchecked(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    if z < STIRLING_MIN {
        let mut prod = 1.0;
        while z < STIRLING_MIN {
            prod *= z;
            z += 1.0;
        }
        shift = prod.ln();
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - shift
}

fn ln_factorial_exact(n: u64) -> f64 {
    debug_assert!(n <= 20);
    let prod: u64 = (2..=n).product();
    (prod as f64).ln()
}

/// ln(n!).
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        ln_factorial_exact(n)
    } else {
        log_gamma_unchecked(n as f64 + 1.0)
    }
}

/// Associated Laguerre polynomial L_n^m(x), by upward recurrence in n.
pub fn assoc_laguerre(n: u32, m: u32, x: f64) -> f64 {
    let m = m as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + m - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + m + 1.0 - x) * cur - (k + m) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit series L_n^m(x) = Σ_i (-1)^i C(n+m, n-i) x^i / i!.
    fn laguerre_series(n: u32, m: u32, x: f64) -> f64 {
        let binom = |a: u32, b: u32| -> f64 {
            (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
        };
        let mut sum = 0.0;
        let mut xi_over_fact = 1.0;
        for i in 0..=n {
            if i > 0 {
                xi_over_fact *= x / i as f64;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom(n + m, n - i) * xi_over_fact;
        }
        sum
    }

    #[test]
    fn log_gamma_examples() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-15);
        assert!((log_gamma(5.0).unwrap() - 3.178_053_83).abs() < 1e-8);
    }

    #[test]
    fn log_gamma_domain() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn log_gamma_matches_factorial_products() {
        let mut fact = 1u64;
        for n in 0..=20u64 {
            if n > 0 {
                fact *= n;
            }
            let exact = (fact as f64).ln();
            let got = log_gamma(n as f64 + 1.0).unwrap();
            assert!((got - exact).abs() <= 1e-12 * exact.abs().max(f64::MIN_POSITIVE));
            assert_eq!(ln_factorial(n), got);
        }
    }

    #[test]
    fn log_gamma_half_integers() {
        // Γ(1/2) = √π, Γ(n + 1/2) = (2n)! √π / (4^n n!)
        let sqrt_pi_ln = 0.5 * std::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - sqrt_pi_ln).abs() < 1e-14);
        let expect = (720.0f64 / (64.0 * 6.0)).ln() + sqrt_pi_ln; // n = 3
        assert!((log_gamma(3.5).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_continuous_across_integer_path() {
        // Stirling path vs exact-integer path at the switchover.
        let a = log_gamma_unchecked(21.0);
        let b = log_gamma(21.0).unwrap();
        assert!((a - b).abs() <= 1e-13 * b);
        let large = log_gamma(200.0).unwrap();
        let summed: f64 = (1..200).map(|k| (k as f64).ln()).sum();
        assert!((large - summed).abs() <= 1e-12 * summed);
    }

    #[test]
    fn laguerre_examples() {
        for m in 0..5 {
            for &x in &[-3.0, 0.0, 0.7, 12.0] {
                assert_eq!(assoc_laguerre(0, m, x), 1.0);
            }
        }
        assert!((assoc_laguerre(1, 0, 0.5) - 0.5).abs() < 1e-15);
        assert!((assoc_laguerre(2, 1, 2.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn laguerre_matches_explicit_series() {
        for n in 0..12 {
            for m in 0..8 {
                for &x in &[0.0, 0.3, 1.0, 2.5, 7.0] {
                    let a = assoc_laguerre(n, m, x);
                    let b = laguerre_series(n, m, x);
                    assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "n={n} m={m} x={x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_recurrence_identity() {
        for m in (0..=40).step_by(5) {
            for &x in &[0.0, 0.5, 3.0, 17.0, 50.0] {
                for n in 1..60 {
                    let lm1 = assoc_laguerre(n - 1, m, x);
                    let l0 = assoc_laguerre(n, m, x);
                    let lp1 = assoc_laguerre(n + 1, m, x);
                    let nf = n as f64;
                    let mf = m as f64;
                    let a = (2.0 * nf + mf + 1.0 - x) * l0;
                    let b = (nf + mf) * lm1;
                    let scale = a.abs().max(b.abs()).max((nf + 1.0) * lp1.abs());
                    let resid = (nf + 1.0) * lp1 - (a - b);
                    assert!(resid.abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE));
                }
            }
        }
    }
}
