//! Exact integer accumulation of normal-ordered SU(2) coefficient sums.
//!
//! Every term of the closed-form coherent-state sums has the shape
//!
//! ```text
//!   (±1) · w · x^a · (1 + x)^b · F(k)
//! ```
//!
//! with an integer weight `w`, non-negative integer powers `a`, `b`, and a
//! factor `F(k)` depending only on the target label k. Terms reaching the
//! same k alternate in sign and reach ~1e135 at j = 20 for θ near π, so they
//! are summed exactly: x is the exact binary value P/Q of the f64 input, and
//! the k-sum is accumulated as a big integer over the common denominator
//! Q^{2j}. Only the final magnitude is taken to log space.

use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

/// Powers of P and P + Q for x = P / 2^shift.
pub(crate) struct PowerTable {
    pow_p: Vec<BigUint>,
    pow_w: Vec<BigUint>,
    shift: u64,
    max_power: usize,
}

impl PowerTable {
    /// `x` must be finite and ≥ 0; powers up to `max_power` are tabulated.
    pub(crate) fn new(x: f64, max_power: usize) -> Self {
        debug_assert!(x.is_finite() && x >= 0.0);
        let (p, shift) = exact_binary(x);
        let q = BigUint::one() << shift;
        let w = &p + &q;
        let mut pow_p = Vec::with_capacity(max_power + 1);
        let mut pow_w = Vec::with_capacity(max_power + 1);
        pow_p.push(BigUint::one());
        pow_w.push(BigUint::one());
        for i in 1..=max_power {
            pow_p.push(&pow_p[i - 1] * &p);
            pow_w.push(&pow_w[i - 1] * &w);
        }
        Self {
            pow_p,
            pow_w,
            shift,
            max_power,
        }
    }

    /// w · x^a · (1+x)^b scaled by Q^{max_power}, as an exact integer.
    /// Requires a + b ≤ max_power.
    pub(crate) fn term(&self, weight: &BigUint, a: usize, b: usize) -> BigUint {
        debug_assert!(a + b <= self.max_power);
        let q_pow = (self.max_power - a - b) as u64 * self.shift;
        (weight * &self.pow_p[a] * &self.pow_w[b]) << q_pow
    }

    /// ln of the denominator Q^{max_power} that every `term` carries.
    pub(crate) fn ln_denominator(&self) -> f64 {
        self.max_power as f64 * self.shift as f64 * LN_2
    }
}

/// Decomposes a non-negative finite f64 as P / 2^shift with P an integer.
fn exact_binary(x: f64) -> (BigUint, u64) {
    if x == 0.0 {
        return (BigUint::zero(), 0);
    }
    let bits = x.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut exp) = if exp_bits == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let tz = mant.trailing_zeros() as i64;
    mant >>= tz;
    exp += tz;
    if exp >= 0 {
        (BigUint::from(mant) << (exp as u64), 0)
    } else {
        (BigUint::from(mant), (-exp) as u64)
    }
}

/// Signed natural log: value = sign · exp(ln_abs). `sign == 0` means exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SignedLog {
    pub sign: i8,
    pub ln_abs: f64,
}

pub(crate) fn signed_log(v: &BigInt) -> SignedLog {
    let sign = match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => return SignedLog { sign: 0, ln_abs: f64::NEG_INFINITY },
        Sign::Plus => 1,
    };
    let mag = v.magnitude();
    let bits = mag.bits();
    let drop = bits.saturating_sub(64);
    let top = (mag >> drop).to_u64().expect("at most 64 bits remain");
    SignedLog {
        sign,
        ln_abs: (top as f64).ln() + drop as f64 * LN_2,
    }
}

/// Binomial coefficient C(n, k) as an exact big integer.
pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Accumulator for one target label.
pub(crate) fn accumulate(acc: &mut BigInt, negative: bool, value: BigUint) {
    let v = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, value);
    *acc += v;
}
