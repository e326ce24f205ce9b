use num_complex::Complex64;

use super::OperatorMatrix;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const OFFDIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and the unitary matrix whose columns are the
/// matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: OperatorMatrix,
}

impl EigenSystem {
    /// `V · diag(values) · V^H`.
    pub fn reconstruct(&self) -> OperatorMatrix {
        let d = OperatorMatrix::from_real_diag(&self.values);
        &(&self.vectors * &d) * &self.vectors.adjoint()
    }
}

/// Diagonalises a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// The input must satisfy max |A − A^H| ≤ 1e−12 · max(1, max |A|); it is
/// symmetrised before iterating. Sweeps continue until the off-diagonal
/// Frobenius mass is ≤ 1e−13 · ‖A‖_F.
pub fn hermitian_eigensystem(a: &OperatorMatrix) -> Result<EigenSystem> {
    let scale = a.max_abs().max(1.0);
    let deviation = a.hermitian_deviation();
    if !(deviation <= HERMITIAN_TOL * scale) {
        return Err(Error::NotHermitian { deviation });
    }

    let n = a.dim();
    let half = Complex64::new(0.5, 0.0);
    let mut m = OperatorMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex64::new(a[(r, r)].re, 0.0)
        } else {
            (a[(r, c)] + a[(c, r)].conj()) * half
        }
    });
    let mut v = OperatorMatrix::identity(n);
    let target = OFFDIAG_TOL * m.frobenius();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = OperatorMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenSystem { values, vectors })
}

fn off_diagonal_mass(m: &OperatorMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += m[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating entry (p, q).
///
/// With u = a_pq/|a_pq| the unitary is U = Φ·R where Φ = diag(1, ū) on (p, q)
/// makes the pivot real and R is the real rotation [[c, s], [−s, c]].
fn rotate(m: &mut OperatorMatrix, v: &mut OperatorMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let u = apq / mag;
    let ub = u.conj();

    let n = m.dim();
    // columns: M ← M·U
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * ub * s;
        m[(k, q)] = mkp * s + mkq * ub * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ub * s;
        v[(k, q)] = vkp * s + vkq * ub * c;
    }
    // rows: M ← U^H·M
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * u * s;
        m[(q, k)] = mpk * s + mqk * u * c;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_sorted() {
        let es = hermitian_eigensystem(&OperatorMatrix::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(es.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x() {
        let x = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let es = hermitian_eigensystem(&x).unwrap();
        assert!((es.values[0] + 1.0).abs() < 1e-15);
        assert!((es.values[1] - 1.0).abs() < 1e-15);
        assert!(es.reconstruct().max_abs_diff(&x) < 1e-15);
    }

    #[test]
    fn complex_hermitian_residual() {
        let a = OperatorMatrix::from_fn(4, |r, c| {
            let (r, c) = (r as f64, c as f64);
            if r == c {
                Complex64::new(r * 1.5 - 2.0, 0.0)
            } else if r < c {
                Complex64::new(0.3 * (r + c), 0.7 * (c - r))
            } else {
                Complex64::new(0.3 * (r + c), -0.7 * (r - c))
            }
        });
        let es = hermitian_eigensystem(&a).unwrap();
        let d = OperatorMatrix::from_real_diag(&es.values);
        let av = &a * &es.vectors;
        let vd = &es.vectors * &d;
        assert!(av.max_abs_diff(&vd) <= 1e-12);
        let vhv = &es.vectors.adjoint() * &es.vectors;
        assert!(vhv.max_abs_diff(&OperatorMatrix::identity(4)) <= 1e-13);
        assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
        let tr: f64 = es.values.iter().sum();
        assert!((tr - a.trace().re).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigensystem(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix() {
        let es = hermitian_eigensystem(&OperatorMatrix::zeros(3)).unwrap();
        assert_eq!(es.values, vec![0.0; 3]);
        assert_eq!(es.vectors, OperatorMatrix::identity(3));
    }
}
