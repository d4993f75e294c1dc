//! Coefficient fields: ℚ and 𝔽_p.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::order::{fmt_q, Semiring, Q};
use crate::report::Carrier;

pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Every element, for finite fields.
    fn elements() -> Option<Vec<Self>>;
    /// Display form used by the series grammar.
    fn render(&self) -> String;
    fn is_negative(&self) -> bool {
        false
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// A random nonzero element with small numerator and denominator.
    fn sample_nonzero(rng: &mut ChaCha8Rng) -> Self {
        match Self::elements() {
            Some(all) => {
                let nz: Vec<Self> = all.into_iter().filter(|x| !x.is_zero()).collect();
                nz[rng.gen_range(0..nz.len())].clone()
            }
            None => {
                let mut n = rng.gen_range(1..=5);
                if rng.gen() {
                    n = -n;
                }
                Self::from_i64(n)
            }
        }
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// The prime field 𝔽_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // a^(P-2) by square and multiply.
        let (mut base, mut e, mut acc) = (self.0, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Some(Fp(acc))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
    fn render(&self) -> String {
        self.0.to_string()
    }
}

/// A field viewed as a semiring.
#[derive(Debug, Clone, Copy, Default)]
pub struct FieldRing<F>(std::marker::PhantomData<F>);

impl<F> FieldRing<F> {
    pub fn new() -> Self {
        FieldRing(std::marker::PhantomData)
    }
}

impl<F: Field> Semiring for FieldRing<F> {
    type Elem = F;
    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.add(b)
    }
    fn mul(&self, a: &F, b: &F) -> F {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<F> {
        match F::elements() {
            Some(all) => Carrier::finite(all),
            None => Carrier::sampled(|rng: &mut ChaCha8Rng| {
                if rng.gen_ratio(1, 8) {
                    F::zero()
                } else {
                    F::sample_nonzero(rng)
                }
            }),
        }
    }
}
