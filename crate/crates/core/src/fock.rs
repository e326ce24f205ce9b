//! Brute-force two-mode Fock space truncated by total quantum number.
//!
//! States are grouped by N = n_a + n_b ascending and ordered by n_a ascending
//! inside each block, so block N lines up with the spin-N/2 Dicke basis
//! (μ = (n_a − n_b)/2 ascending) without any permutation. Every operator built
//! here conserves N, so retained blocks are exact.

use std::ops::Range;

use num_complex::Complex64;

use crate::coherent::StateVector;
use crate::coupled::OscillatorSpec;
use crate::error::{domain, Error, Result};
use crate::numerics::{hermitian_eigensystem, matrix_exp, OperatorMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
    states: Vec<(usize, usize)>,
}

pub fn build_space(n_max: i64) -> Result<FockSpace> {
    if n_max < 0 {
        return Err(domain(format!("n_max must be non-negative, got {n_max}")));
    }
    let n_max = n_max as usize;
    let mut states = Vec::with_capacity((n_max + 1) * (n_max + 2) / 2);
    for n in 0..=n_max {
        for na in 0..=n {
            states.push((na, n - na));
        }
    }
    Ok(FockSpace { n_max, states })
}

impl FockSpace {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(usize, usize)] {
        &self.states
    }

    /// (n_a, n_b) at basis position `index`.
    pub fn state(&self, index: usize) -> (usize, usize) {
        self.states[index]
    }

    pub fn index_of(&self, na: usize, nb: usize) -> Option<usize> {
        let n = na + nb;
        (n <= self.n_max).then(|| n * (n + 1) / 2 + na)
    }

    /// Basis positions of the N block.
    pub fn block_range(&self, n: usize) -> Result<Range<usize>> {
        if n > self.n_max {
            return Err(domain(format!("block N = {n} exceeds n_max = {}", self.n_max)));
        }
        let start = n * (n + 1) / 2;
        Ok(start..start + n + 1)
    }

    fn operator(&self, f: impl Fn(usize, usize) -> Vec<(f64, usize, usize)>) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(self.dim());
        for (col, &(na, nb)) in self.states.iter().enumerate() {
            for (c, na2, nb2) in f(na, nb) {
                if c == 0.0 {
                    continue;
                }
                if let Some(row) = self.index_of(na2, nb2) {
                    m[(row, col)] += Complex64::new(c, 0.0);
                }
            }
        }
        m
    }
}

/// Amplitudes over the full truncated basis of `space`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState<'a> {
    pub space: &'a FockSpace,
    pub amplitudes: Vec<Complex64>,
}

impl<'a> FockState<'a> {
    pub fn new(space: &'a FockSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { space, amplitudes })
    }

    /// Places a spin-j state into block N = 2j.
    pub fn embed(space: &'a FockSpace, state: &StateVector) -> Result<Self> {
        let range = space.block_range(state.j.twice() as usize)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); space.dim()];
        amplitudes[range].copy_from_slice(&state.amplitudes);
        Ok(Self { space, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &FockState<'_>) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

// ladder matrix elements: a|n⟩ = √n |n−1⟩, a†|n⟩ = √(n+1) |n+1⟩
fn lower(n: usize) -> f64 {
    (n as f64).sqrt()
}

fn raise(n: usize) -> f64 {
    ((n + 1) as f64).sqrt()
}

/// a†b: (n_a, n_b) → √(n_a+1)√n_b (n_a+1, n_b−1)
fn adag_b(na: usize, nb: usize) -> Vec<(f64, usize, usize)> {
    if nb == 0 {
        return vec![];
    }
    vec![(raise(na) * lower(nb), na + 1, nb - 1)]
}

/// b†a
fn bdag_a(na: usize, nb: usize) -> Vec<(f64, usize, usize)> {
    if na == 0 {
        return vec![];
    }
    vec![(lower(na) * raise(nb), na - 1, nb + 1)]
}

/// ω1 a†a + ω2 b†b + λ(a†b + b†a)
pub fn build_hamiltonian(spec: &OscillatorSpec, space: &FockSpace) -> OperatorMatrix {
    space.operator(|na, nb| {
        let mut out = vec![(spec.omega1 * na as f64 + spec.omega2 * nb as f64, na, nb)];
        out.extend(adag_b(na, nb).into_iter().map(|(c, a, b)| (spec.lambda * c, a, b)));
        out.extend(bdag_a(na, nb).into_iter().map(|(c, a, b)| (spec.lambda * c, a, b)));
        out
    })
}

/// Jordan–Schwinger operators on the truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSchwinger {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub zero: OperatorMatrix,
    pub number: OperatorMatrix,
}

pub fn jordan_schwinger(space: &FockSpace) -> JordanSchwinger {
    JordanSchwinger {
        plus: space.operator(adag_b),
        minus: space.operator(bdag_a),
        zero: space.operator(|na, nb| vec![((na as f64 - nb as f64) / 2.0, na, nb)]),
        number: space.operator(|na, nb| vec![((na + nb) as f64, na, nb)]),
    }
}

/// I+, I−, I0 of the isotropic tilt built from boson bilinears.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicGenerators {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub zero: OperatorMatrix,
}

/// I+ = (a†b − b†a − a†a + b†b)/2, I− = (b†a − a†b − a†a + b†b)/2,
/// I0 = (a†b + b†a)/2.
pub fn transformed_js_isotropic(space: &FockSpace) -> IsotropicGenerators {
    let ab = space.operator(adag_b);
    let ba = space.operator(bdag_a);
    let diag = space.operator(|na, nb| vec![(nb as f64 - na as f64, na, nb)]);
    IsotropicGenerators {
        plus: (&(&ab - &ba) + &diag).scale_real(0.5),
        minus: (&(&ba - &ab) + &diag).scale_real(0.5),
        zero: (&ab + &ba).scale_real(0.5),
    }
}

/// Eigenvalues of the N block, ascending.
pub fn block_spectrum(spec: &OscillatorSpec, n: usize, space: &FockSpace) -> Result<Vec<f64>> {
    let range = space.block_range(n)?;
    let h = build_hamiltonian(spec, space);
    Ok(hermitian_eigensystem(&h.sub_block(range.start, range.len()))?.values)
}

/// exp(−iHt)·ψ, one block exponential at a time.
pub fn propagate<'a>(spec: &OscillatorSpec, space: &'a FockSpace, psi: &FockState<'_>, t: f64) -> Result<FockState<'a>> {
    if psi.amplitudes.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: psi.amplitudes.len(),
        });
    }
    let h = build_hamiltonian(spec, space);
    let mut out = vec![Complex64::new(0.0, 0.0); space.dim()];
    for n in 0..=space.n_max() {
        let range = space.block_range(n)?;
        let part = &psi.amplitudes[range.clone()];
        if part.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            continue;
        }
        let u = matrix_exp(&h.sub_block(range.start, range.len()).scale(Complex64::new(0.0, -t)));
        out[range].copy_from_slice(&u.apply(part));
    }
    Ok(FockState {
        space,
        amplitudes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{coherent_params, displacement_matrix, pncs, DisplacementMethod};
    use crate::coupled::{diagonalizing_params, evolve_phase, spectrum};
    use crate::su2::{generators, HalfInt};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(w1: f64, w2: f64, l: f64) -> OscillatorSpec {
        OscillatorSpec::new(w1, w2, l).unwrap()
    }

    #[test]
    fn enumeration() {
        let s = build_space(1).unwrap();
        assert_eq!(s.states(), &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(build_space(5).unwrap().dim(), 21);
        assert!(build_space(-1).is_err());
        let s = build_space(9).unwrap();
        for i in 0..s.dim() {
            let (a, b) = s.state(i);
            assert_eq!(s.index_of(a, b), Some(i));
        }
        for n in 0..=9 {
            assert_eq!(s.block_range(n).unwrap().len(), n + 1);
        }
        assert!(s.block_range(10).is_err());
        assert_eq!(s.index_of(5, 5), None);
    }

    #[test]
    fn hamiltonian_structure() {
        let s = build_space(6).unwrap();
        let h = build_hamiltonian(&spec(1.3, 0.4, 0.0), &s);
        assert_eq!(h.max_abs_offdiag(), 0.0);
        for (i, &(a, b)) in s.states().iter().enumerate() {
            assert_eq!(h[(i, i)].re, 1.3 * a as f64 + 0.4 * b as f64);
        }

        let h = build_hamiltonian(&spec(2.0, 1.0, 0.75), &s);
        let block = h.sub_block(1, 2);
        assert_eq!(block, OperatorMatrix::from_real_rows(&[&[1.0, 0.75], &[0.75, 2.0]]));

        // exactly zero between blocks
        for r in 0..s.dim() {
            for c in 0..s.dim() {
                let (a, b) = s.state(r);
                let (x, y) = s.state(c);
                if a + b != x + y {
                    assert_eq!(h[(r, c)], Complex64::new(0.0, 0.0));
                }
            }
        }
        let js = jordan_schwinger(&s);
        assert_eq!(h.commutator(&js.number).max_abs(), 0.0);
    }

    #[test]
    fn jordan_schwinger_blocks_match_irreps() {
        let s = build_space(12).unwrap();
        let js = jordan_schwinger(&s);
        for (i, &(a, b)) in s.states().iter().enumerate() {
            assert_eq!(js.zero[(i, i)].re, (a as f64 - b as f64) / 2.0);
        }
        for n in 0..=12usize {
            let r = s.block_range(n).unwrap();
            let g = generators(HalfInt::from_twice(n as i32)).unwrap();
            let sub = |m: &OperatorMatrix| m.sub_block(r.start, r.len());
            assert!(sub(&js.plus).max_abs_diff(&g.plus) <= 1e-12);
            assert!(sub(&js.minus).max_abs_diff(&g.minus) <= 1e-12);
            assert!(sub(&js.zero).max_abs_diff(&g.zero) <= 1e-12);
            let c = sub(&js.plus).commutator(&sub(&js.minus));
            assert!(c.max_abs_diff(&sub(&js.zero).scale_real(2.0)) <= 1e-12);
            let cas = &(&sub(&js.zero) * &sub(&js.zero))
                + &(&(&sub(&js.plus) * &sub(&js.minus)) + &(&sub(&js.minus) * &sub(&js.plus))).scale_real(0.5);
            let jj = n as f64 / 2.0 * (n as f64 / 2.0 + 1.0);
            assert!(cas.max_abs_diff(&OperatorMatrix::identity(n + 1).scale_real(jj)) <= 1e-10);
        }
    }

    #[test]
    fn isotropic_generators() {
        let s = build_space(12).unwrap();
        let ig = transformed_js_isotropic(&s);
        let js = jordan_schwinger(&s);
        let p = coherent_params(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        assert_eq!(ig.zero.scale_real(2.0), &js.plus + &js.minus);
        for n in 0..=12usize {
            let r = s.block_range(n).unwrap();
            let sub = |m: &OperatorMatrix| m.sub_block(r.start, r.len());
            let c = sub(&ig.plus).commutator(&sub(&ig.minus));
            assert!(c.max_abs_diff(&sub(&ig.zero).scale_real(2.0)) <= 1e-12);
            let g = generators(HalfInt::from_twice(n as i32)).unwrap();
            let d = displacement_matrix(HalfInt::from_twice(n as i32), &p, DisplacementMethod::Exponential).unwrap();
            assert!(sub(&ig.plus).max_abs_diff(&g.plus.conjugate_by(&d)) <= 1e-10);
            assert!(sub(&ig.minus).max_abs_diff(&g.minus.conjugate_by(&d)) <= 1e-10);
            assert!(sub(&ig.zero).max_abs_diff(&g.zero.conjugate_by(&d)) <= 1e-10);
        }
    }

    #[test]
    fn block_spectra() {
        let s = build_space(8).unwrap();
        let e = block_spectrum(&spec(2.0, 1.0, 0.75), 1, &s).unwrap();
        let r = 13f64.sqrt() / 4.0;
        assert!((e[0] - (1.5 - r)).abs() < 1e-14 && (e[1] - (1.5 + r)).abs() < 1e-14);
        assert!(block_spectrum(&spec(1.0, 1.0, 0.0), 9, &s).is_err());

        let sp = spec(0.3, 1.1, 0.0);
        let mut want: Vec<f64> = (0..=7).map(|a| 0.3 * a as f64 + 1.1 * (7 - a) as f64).collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in block_spectrum(&sp, 7, &s).unwrap().iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let sp = spec(rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0), rng.gen_range(-2.0..2.0));
            let h = build_hamiltonian(&sp, &s);
            for n in 0..=8usize {
                let got = block_spectrum(&sp, n, &s).unwrap();
                let r = s.block_range(n).unwrap();
                let tr: f64 = r.clone().map(|i| h[(i, i)].re).sum();
                assert!((got.iter().sum::<f64>() - tr).abs() <= 1e-10);
                let want = spectrum(&sp, HalfInt::from_twice(n as i32)).unwrap();
                for (a, b) in got.iter().zip(&want) {
                    assert!((a - b.energy).abs() <= 1e-8);
                }
            }
        }
    }

    #[test]
    fn propagation() {
        let s = build_space(6).unwrap();
        let sp = spec(1.0, 1.0, 0.3);
        let j = HalfInt::from_int(1);
        let p = diagonalizing_params(&sp).unwrap();
        let v = pncs(j, HalfInt::ZERO, &p).unwrap();
        let psi = FockState::embed(&s, &v).unwrap();
        assert_eq!(propagate(&sp, &s, &psi, 0.0).unwrap(), psi);

        let out = propagate(&sp, &s, &psi, 2.0).unwrap();
        assert!((out.norm() - 1.0).abs() <= 1e-10);
        let overlap = psi.inner(&out);
        let phase = evolve_phase(&sp, j, HalfInt::ZERO, 2.0).unwrap();
        assert!((overlap - phase).norm() <= 1e-8);

        // additivity on a superposition across blocks
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mut amps: Vec<Complex64> = (0..s.dim())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let nrm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|z| *z /= nrm);
        let sp = spec(1.7, 0.6, -0.4);
        let st = FockState::new(&s, amps).unwrap();
        let two = propagate(&sp, &s, &propagate(&sp, &s, &st, 0.7).unwrap(), 1.1).unwrap();
        let one = propagate(&sp, &s, &st, 1.8).unwrap();
        let diff = two.amplitudes.iter().zip(&one.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff <= 1e-9);
        assert!(FockState::new(&s, vec![]).is_err());
    }
}
