use num_complex::Complex64;
use proptest::prelude::*;

use pncs::coherent::{coherent_params, displacement_matrix, pncs, transformed_generators, DisplacementMethod};
use pncs::coupled::{
    diagonalizing_params, partition_function, spectrum, su2_hamiltonian, tilted_hamiltonian, OscillatorSpec,
    PartitionMode, ThermalInput,
};
use pncs::fock::{block_spectrum, build_space};
use pncs::numerics::{hermitian_eigensystem, matrix_exp};
use pncs::su2::{generators, Irrep};
use pncs::wavefn::{map_quantum_numbers, overlap, Convention};
use pncs::{HalfInt, OperatorMatrix};

fn entries(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim)
}

fn square(dim: usize, e: &[(f64, f64)]) -> OperatorMatrix {
    OperatorMatrix::from_fn(dim, |r, c| Complex64::new(e[r * dim + c].0, e[r * dim + c].1))
}

fn anti_hermitian() -> impl Strategy<Value = OperatorMatrix> {
    (1usize..=41).prop_flat_map(|n| entries(n).prop_map(move |e| {
        let m = square(n, &e);
        (&m - &m.adjoint()).scale_real(0.5)
    }))
}

fn hermitian() -> impl Strategy<Value = OperatorMatrix> {
    (1usize..=24).prop_flat_map(|n| entries(n).prop_map(move |e| {
        let m = square(n, &e);
        (&m + &m.adjoint()).scale_real(0.5)
    }))
}

fn twice_j() -> impl Strategy<Value = i32> {
    0i32..=40
}

fn angles() -> impl Strategy<Value = (f64, f64)> {
    (0.0..3.1f64, 0.0..std::f64::consts::TAU)
}

fn oscillator() -> impl Strategy<Value = OscillatorSpec> {
    (0.1..5.0f64, 0.1..5.0f64, -3.0..3.0f64).prop_map(|(a, b, l)| OscillatorSpec::new(a, b, l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_of_anti_hermitian_is_unitary(a in anti_hermitian()) {
        let n = a.dim();
        let u = matrix_exp(&a);
        let id = OperatorMatrix::identity(n);
        prop_assert!((&u * &u.adjoint()).max_abs_diff(&id) < 1e-12);
        let back = &u * &matrix_exp(&a.scale_real(-1.0));
        prop_assert!(back.max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn eigenvalues_survive_unitary_conjugation(h in hermitian(), seed in any::<u64>()) {
        let n = h.dim();
        let mut s = seed;
        let gen = OperatorMatrix::from_fn(n, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Complex64::new(((s >> 11) as f64) / (1u64 << 53) as f64 - 0.5, ((s >> 7) % 1000) as f64 / 1000.0 - 0.5)
        });
        let u = matrix_exp(&(&gen - &gen.adjoint()).scale_real(0.5));
        let a = hermitian_eigensystem(&h).unwrap();
        let b = hermitian_eigensystem(&h.conjugate_by(&u)).unwrap();
        prop_assert!(a.reconstruct().max_abs_diff(&h) < 1e-11);
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn halfint_round_trip(twice in -200i32..=200) {
        let h = HalfInt::from_twice(twice);
        prop_assert_eq!(HalfInt::from_f64(h.value()).unwrap(), h);
    }

    #[test]
    fn generators_close_on_su2(tj in twice_j()) {
        let j = HalfInt::from_twice(tj);
        let g = generators(j).unwrap();
        let jj = j.value() * (j.value() + 1.0);
        let n = g.zero.dim();
        prop_assert!(g.plus.commutator(&g.minus).max_abs_diff(&g.zero.scale_real(2.0)) < 1e-12);
        prop_assert!(g.casimir().max_abs_diff(&OperatorMatrix::identity(n).scale_real(jj)) < 1e-9);
    }

    #[test]
    fn pncs_states_are_orthonormal_displacement_columns(tj in 0i32..=20, (theta, phi) in angles()) {
        let j = HalfInt::from_twice(tj);
        let p = coherent_params(theta, phi).unwrap();
        let d = displacement_matrix(j, &p, DisplacementMethod::Exponential).unwrap();
        let irrep = Irrep::new(j).unwrap();
        let states: Vec<_> = irrep.mus().map(|mu| pncs(j, mu, &p).unwrap()).collect();
        for (a, sa) in states.iter().enumerate() {
            let col = d.column(a);
            let diff = sa.amplitudes.iter().zip(&col).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            prop_assert!(diff < 1e-8, "column {a}: {diff}");
            for (b, sb) in states.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((sa.inner(sb) - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn transformed_generators_keep_casimir(tj in twice_j(), (theta, phi) in angles()) {
        let j = HalfInt::from_twice(tj);
        let p = coherent_params(theta, phi).unwrap();
        let g = transformed_generators(j, &p).unwrap();
        let jj = j.value() * (j.value() + 1.0);
        let n = g.zero.dim();
        prop_assert!(g.casimir().max_abs_diff(&OperatorMatrix::identity(n).scale_real(jj)) < 1e-8);
    }

    #[test]
    fn tilt_diagonalizes_and_matches_spectrum(spec in oscillator(), tj in twice_j()) {
        let j = HalfInt::from_twice(tj);
        let p = diagonalizing_params(&spec).unwrap();
        let tilted = tilted_hamiltonian(&spec, j, &p).unwrap();
        let scale = 1.0 + spec.splitting() * j.value();
        prop_assert!(tilted.max_abs_offdiag() < 1e-12 * scale);
        let levels = spectrum(&spec, j).unwrap();
        let eig = hermitian_eigensystem(&su2_hamiltonian(&spec, j).unwrap()).unwrap();
        for (l, e) in levels.iter().zip(&eig.values) {
            prop_assert!((l.energy - e).abs() < 1e-10 * scale);
        }
        for w in levels.windows(2) {
            prop_assert!(w[0].mu < w[1].mu && w[0].energy <= w[1].energy);
        }
    }

    #[test]
    fn fock_blocks_match_su2_spectrum(spec in oscillator(), n in 0usize..=12) {
        let space = build_space(12).unwrap();
        let fock = block_spectrum(&spec, n, &space).unwrap();
        let j = HalfInt::from_twice(n as i32);
        let levels = spectrum(&spec, j).unwrap();
        prop_assert_eq!(fock.len(), levels.len());
        for (f, l) in fock.iter().zip(&levels) {
            prop_assert!((f - l.energy).abs() < 1e-9 * (1.0 + l.energy.abs()));
        }
    }

    #[test]
    fn partition_modes_agree_when_degenerate(w in 0.1..5.0f64, tj in twice_j(), t in 0.05..50.0f64) {
        let spec = OscillatorSpec::new(w, w, 0.0).unwrap();
        let j = HalfInt::from_twice(tj);
        let th = ThermalInput::new(t).unwrap();
        let a = partition_function(&spec, j, &th, PartitionMode::Paper).unwrap();
        let b = partition_function(&spec, j, &th, PartitionMode::Exact).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn exact_partition_bounds_paper(spec in oscillator(), tj in twice_j(), t in 0.05..50.0f64) {
        // every level sits at or above E₋, so the exact sum never exceeds (2j+1)e^{−E₋/kT}
        let j = HalfInt::from_twice(tj);
        let th = ThermalInput::new(t).unwrap();
        let a = partition_function(&spec, j, &th, PartitionMode::Paper).unwrap();
        let b = partition_function(&spec, j, &th, PartitionMode::Exact).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-12));
    }

    #[test]
    fn quantum_number_map(n in 0i64..=30, k in 0i64..=30) {
        let k = k.min(n);
        let m = n - 2 * k;
        let (j, mu, n_rho) = map_quantum_numbers(n, m).unwrap();
        prop_assert_eq!(j.twice() as i64, n);
        prop_assert_eq!(mu.twice() as i64, m);
        prop_assert_eq!(2 * n_rho as i64 + m.abs(), n);
        prop_assert!(map_quantum_numbers(n, m + 1).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn polar_states_orthonormal(n in 0i64..=8, k in 0i64..=8, n2 in 0i64..=8, k2 in 0i64..=8) {
        let a = (n, n - 2 * k.min(n));
        let b = (n2, n2 - 2 * k2.min(n2));
        let s = overlap(a, b, Convention::Normalized, 9.0, 96, 64).unwrap();
        let want = if a == b { 1.0 } else { 0.0 };
        prop_assert!((s - want).norm() < 1e-9, "{a:?} {b:?} {s}");
    }
}
