//! Closed forms against the exact-arithmetic literal sums.

use pncs::coherent::{coherent_params, pncs, scs};
use pncs::reference::{literal_pncs, literal_pncs_wavefunction, standard_cs_wavefunction};
use pncs::su2::Irrep;
use pncs::wavefn::pncs_wavefunction;
use pncs::HalfInt;

const ANGLES: [(f64, f64); 4] = [(0.3, 0.0), (1.1, 2.0), (std::f64::consts::FRAC_PI_2, 0.7), (2.6, 5.5)];

#[test]
fn amplitudes_match_literal_double_sum() {
    for tj in 0..=12 {
        let j = HalfInt::from_twice(tj);
        for &(theta, phi) in &ANGLES {
            let p = coherent_params(theta, phi).unwrap();
            for mu in Irrep::new(j).unwrap().mus() {
                let a = pncs(j, mu, &p).unwrap();
                let b = literal_pncs(j, mu, &p).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-10, "j={} mu={} θ={theta}", j.value(), mu.value());
            }
        }
    }
}

#[test]
fn wavefunctions_match_literal_double_sum() {
    for tj in 0..=6 {
        let j = HalfInt::from_twice(tj);
        for &(theta, phi) in &ANGLES {
            let p = coherent_params(theta, phi).unwrap();
            for mu in Irrep::new(j).unwrap().mus() {
                for &(rho, angle) in &[(0.4, 0.1), (1.3, 2.9), (2.2, 4.4)] {
                    let a = pncs_wavefunction(j, mu, &p, rho, angle).unwrap();
                    let b = literal_pncs_wavefunction(j, mu, &p, rho, angle).unwrap();
                    assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "{a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn lowest_weight_is_the_standard_coherent_state() {
    for tj in 0..=8 {
        let j = HalfInt::from_twice(tj);
        for &(theta, phi) in &ANGLES {
            let p = coherent_params(theta, phi).unwrap();
            let a = pncs(j, HalfInt::from_twice(-tj), &p).unwrap();
            assert!(a.max_abs_diff(&scs(j, &p).unwrap()) < 1e-12);
            let w = pncs_wavefunction(j, HalfInt::from_twice(-tj), &p, 1.7, 0.9).unwrap();
            let s = standard_cs_wavefunction(j, &p, 1.7, 0.9).unwrap();
            assert!((w - s).norm() < 1e-10, "{w} vs {s}");
        }
    }
}
