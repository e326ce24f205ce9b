use super::OperatorMatrix;

/// Norm threshold after scaling; the Taylor order is then picked so the
/// truncated tail is below `TAIL_TOL`.
const SCALED_NORM: f64 = 0.5;
const TAIL_TOL: f64 = 1e-17;
const MAX_ORDER: u32 = 40;

/// Matrix exponential by scaling and squaring with a Horner-evaluated
/// truncated Taylor series.
///
/// The zero matrix maps to the identity exactly.
pub fn matrix_exp(a: &OperatorMatrix) -> OperatorMatrix {
    let n = a.dim();
    let norm = a.norm_1();
    if norm == 0.0 {
        return OperatorMatrix::identity(n);
    }

    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));
    let b = norm * 0.5f64.powi(squarings as i32);
    let order = taylor_order(b);

    // P = I + B/1 (I + B/2 (I + ... (I + B/m)))
    let id = OperatorMatrix::identity(n);
    let mut p = id.clone();
    for k in (1..=order).rev() {
        let bp = (&scaled * &p).scale_real(1.0 / k as f64);
        p = &id + &bp;
    }

    for _ in 0..squarings {
        p = &p * &p;
    }
    p
}

/// Smallest m with b^{m+1}/(m+1)! · (1 − b/(m+2))^{-1} ≤ TAIL_TOL · e^{-b}.
fn taylor_order(b: f64) -> u32 {
    let target = TAIL_TOL * (-b).exp();
    let mut term = b; // b^{m+1}/(m+1)! at m = 0
    for m in 0..MAX_ORDER {
        let ratio = b / (m as f64 + 2.0);
        if term / (1.0 - ratio) <= target {
            return m.max(1);
        }
        term *= ratio;
    }
    MAX_ORDER
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_is_identity_exactly() {
        for n in 1..6 {
            assert_eq!(matrix_exp(&OperatorMatrix::zeros(n)), OperatorMatrix::identity(n));
        }
    }

    #[test]
    fn diagonal_case() {
        let d = [c(0.3, 0.0), c(-2.0, 1.0), c(5.5, -0.25)];
        let e = matrix_exp(&OperatorMatrix::from_diag(&d));
        for (i, z) in d.iter().enumerate() {
            assert!((e[(i, i)] - z.exp()).norm() <= 1e-13 * z.exp().norm());
        }
        assert!(e.max_abs_offdiag() == 0.0);
    }

    #[test]
    fn rotation_generator() {
        // exp(θ/2 [[0,-1],[1,0]]) is the rotation by θ/2
        for &theta in &[0.1, 1.3, 3.0, 17.0] {
            let h = theta / 2.0;
            let a = OperatorMatrix::from_real_rows(&[&[0.0, -h], &[h, 0.0]]);
            let e = matrix_exp(&a);
            let expect =
                OperatorMatrix::from_real_rows(&[&[h.cos(), -h.sin()], &[h.sin(), h.cos()]]);
            assert!(e.max_abs_diff(&expect) <= 1e-13, "theta = {theta}");
        }
    }

    #[test]
    fn nilpotent_is_exact_polynomial() {
        // exp(N) for strictly upper triangular 3x3 is I + N + N²/2
        let nmat = OperatorMatrix::from_real_rows(&[&[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0], &[0.0, 0.0, 0.0]]);
        let e = matrix_exp(&nmat);
        let expect = OperatorMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[0.0, 1.0, 3.0], &[0.0, 0.0, 1.0]]);
        assert!(e.max_abs_diff(&expect) <= 1e-14);
    }

    #[test]
    fn taylor_order_reasonable() {
        assert!(taylor_order(0.5) <= 20);
        assert!(taylor_order(1e-6) >= 1);
    }
}
