//! Finite-dimensional su(2) irreps on the Dicke basis |j, μ⟩.
//!
//! Basis vectors are always ordered with μ ascending from −j to +j, so index
//! `i` corresponds to μ = −j + i.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::OperatorMatrix;

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i32) -> Self {
        Self { twice: 2 * n }
    }

    /// Parses a float that must be an exact multiple of 1/2.
    pub fn from_f64(x: f64) -> Result<Self> {
        let t = 2.0 * x;
        if !t.is_finite() || t.fract() != 0.0 || t.abs() > i32::MAX as f64 {
            return Err(domain(format!("{x} is not a multiple of 1/2")));
        }
        Ok(Self { twice: t as i32 })
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Self { twice: self.twice.abs() }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// The (2j+1)-dimensional irrep with label j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Irrep {
    j: HalfInt,
}

impl Irrep {
    pub fn new(j: HalfInt) -> Result<Self> {
        if j.twice < 0 {
            return Err(domain(format!("j must be non-negative, got {j}")));
        }
        Ok(Self { j })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.twice as usize + 1
    }

    /// μ values in basis order (ascending).
    pub fn mus(&self) -> impl Iterator<Item = HalfInt> + '_ {
        let tj = self.j.twice;
        (0..=tj).map(move |i| HalfInt::from_twice(2 * i - tj))
    }

    pub fn mu_at(&self, index: usize) -> HalfInt {
        HalfInt::from_twice(2 * index as i32 - self.j.twice)
    }

    pub fn index_of(&self, mu: HalfInt) -> Result<usize> {
        check_pair(self.j, mu)?;
        Ok(((mu.twice + self.j.twice) / 2) as usize)
    }
}

/// Validates a (j, μ) label pair: j ≥ 0, |μ| ≤ j, j − μ integer.
pub fn check_pair(j: HalfInt, mu: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(domain(format!("j must be non-negative, got {j}")));
    }
    if mu.twice.abs() > j.twice || (j.twice - mu.twice) % 2 != 0 {
        return Err(domain(format!("invalid pair (j, mu) = ({j}, {mu})")));
    }
    Ok(())
}

/// ⟨j, μ+1| J+ |j, μ⟩ = √((j−μ)(j+μ+1)), from an exact integer product.
pub fn raising_element(j: HalfInt, mu: HalfInt) -> f64 {
    let a = ((j.twice - mu.twice) / 2) as i64;
    let b = ((j.twice + mu.twice) / 2 + 1) as i64;
    ((a * b) as f64).sqrt()
}

/// ⟨j, μ−1| J− |j, μ⟩ = √((j+μ)(j−μ+1)).
pub fn lowering_element(j: HalfInt, mu: HalfInt) -> f64 {
    let a = ((j.twice + mu.twice) / 2) as i64;
    let b = ((j.twice - mu.twice) / 2 + 1) as i64;
    ((a * b) as f64).sqrt()
}

/// J+, J−, J0 on one irrep.
#[derive(Debug, Clone, PartialEq)]
pub struct Generators {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub zero: OperatorMatrix,
}

impl Generators {
    /// J0² + (J+J− + J−J+)/2.
    pub fn casimir(&self) -> OperatorMatrix {
        let pm = &self.plus * &self.minus;
        let mp = &self.minus * &self.plus;
        let z2 = &self.zero * &self.zero;
        &z2 + &(&pm + &mp).scale_real(0.5)
    }
}

pub fn generators(j: HalfInt) -> Result<Generators> {
    let irrep = Irrep::new(j)?;
    let dim = irrep.dim();
    let mut plus = OperatorMatrix::zeros(dim);
    for i in 0..dim - 1 {
        plus[(i + 1, i)] = Complex64::new(raising_element(j, irrep.mu_at(i)), 0.0);
    }
    let minus = plus.adjoint();
    let zero = OperatorMatrix::from_real_diag(&irrep.mus().map(HalfInt::value).collect::<Vec<_>>());
    Ok(Generators { plus, minus, zero })
}

pub fn casimir(j: HalfInt) -> Result<OperatorMatrix> {
    Ok(generators(j)?.casimir())
}
