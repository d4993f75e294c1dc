//! ℤ, ℚ and p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::field::FieldRing;
use crate::order::{Semiring, Theta, ThetaValue, Q};
use crate::report::Carrier;
use crate::valuation::MValuationInstance;

/// The ring ℤ. Sampled carriers draw from [−range, range] after the seeds
/// 0, 1, −1, 2, −2, ….
#[derive(Debug, Clone, Copy)]
pub struct Integers {
    pub range: i64,
}

impl Default for Integers {
    fn default() -> Self {
        Integers { range: 200 }
    }
}

impl Integers {
    /// Every n with |n| ≤ bound, in the order 0, 1, −1, 2, −2, ….
    pub fn window(bound: i64) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero()];
        for k in 1..=bound {
            v.push(BigInt::from(k));
            v.push(BigInt::from(-k));
        }
        v
    }
}

impl Semiring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn carrier(&self) -> Carrier<BigInt> {
        let r = self.range;
        Carrier::sampled(move |rng: &mut ChaCha8Rng| BigInt::from(rng.gen_range(-r..=r))).with_seeds(Self::window(3))
    }
}

/// The semiring (ℕ, +, ·).
#[derive(Debug, Clone, Copy, Default)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn carrier(&self) -> Carrier<BigInt> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| BigInt::from(rng.gen_range(0..=50)))
            .with_seeds((0..4).map(BigInt::from).collect())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u64);

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Exponent of p in n ≠ 0.
pub fn ord_p(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "ord of 0");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (d, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = d;
        k += 1;
    }
}

/// v_p(n) = ϑ^{ord_p n}, v_p(0) = 0.
pub fn padic_valuation(p: u64) -> Result<MValuationInstance<Integers, Theta>, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime(p));
    }
    Ok(MValuationInstance::new(format!("v{p}"), Integers::default(), Theta, move |n: &BigInt| {
        if n.is_zero() {
            ThetaValue::zero()
        } else {
            ThetaValue::powi(ord_p(n, p))
        }
    })
    .with_support("{0}"))
}

/// v_p on ℚ: ϑ^{ord_p(num) − ord_p(den)}.
pub fn padic_rational_valuation(p: u64) -> Result<MValuationInstance<FieldRing<Q>, Theta>, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime(p));
    }
    Ok(MValuationInstance::new(format!("v{p} on ℚ"), FieldRing::<Q>::new(), Theta, move |x: &Q| {
        if x.is_zero() {
            ThetaValue::zero()
        } else {
            ThetaValue::powi(ord_p(x.numer(), p) - ord_p(x.denom(), p))
        }
    })
    .with_support("{0}"))
}
