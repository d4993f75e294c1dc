//! Γ = ℚ_{>0} × ℚ under lexicographic order, its convex subgroup
//! H = {1} × ℚ, and the map M = H ∪ 𝔞 → H ∪ {0} that kills 𝔞.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::order::{q, qi, Semiring, Q};
use crate::report::Carrier;
use crate::valuation::MValuationInstance;

/// (a, b) ∈ ℚ_{>0} × ℚ, written multiplicatively: (a, b)(c, d) = (ac, b + d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LexPairValue {
    pub a: Q,
    pub b: Q,
}

impl LexPairValue {
    pub fn new(a: Q, b: Q) -> Self {
        assert!(a > Q::zero(), "first coordinate must be positive");
        LexPairValue { a, b }
    }

    pub fn one() -> Self {
        LexPairValue { a: Q::one(), b: Q::zero() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        LexPairValue { a: &self.a * &o.a, b: &self.b + &o.b }
    }

    pub fn in_h(&self) -> bool {
        self.a.is_one()
    }
}

impl Ord for LexPairValue {
    fn cmp(&self, o: &Self) -> Ordering {
        self.a.cmp(&o.a).then_with(|| self.b.cmp(&o.b))
    }
}

impl PartialOrd for LexPairValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for LexPairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", crate::order::fmt_q(&self.a), crate::order::fmt_q(&self.b))
    }
}

/// Elements of Γ ∪ {0}; None is 0.
pub type LexElem = Option<LexPairValue>;

/// A subsemiring of Γ ∪ {0} with max as addition: either H ∪ {0}
/// (`h_only`) or M = H ∪ 𝔞 with 𝔞 = {g > H} ∪ {0}.
#[derive(Debug, Clone, Copy)]
pub struct LexMax {
    pub h_only: bool,
}

impl Semiring for LexMax {
    type Elem = LexElem;
    fn zero(&self) -> LexElem {
        None
    }
    fn one(&self) -> LexElem {
        Some(LexPairValue::one())
    }
    fn add(&self, x: &LexElem, y: &LexElem) -> LexElem {
        x.clone().max(y.clone())
    }
    fn mul(&self, x: &LexElem, y: &LexElem) -> LexElem {
        match (x, y) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        }
    }
    fn carrier(&self) -> Carrier<LexElem> {
        let h_only = self.h_only;
        let seeds = if h_only {
            vec![None, Some(LexPairValue::one())]
        } else {
            vec![None, Some(LexPairValue::one()), Some(LexPairValue::new(qi(2), qi(0)))]
        };
        Carrier::sampled(move |rng: &mut ChaCha8Rng| {
            if rng.gen_ratio(1, 8) {
                return None;
            }
            let b = q(rng.gen_range(-6..=6), rng.gen_range(1..=2));
            let a = if h_only || rng.gen_bool(0.5) { qi(1) } else { q(rng.gen_range(3..=8), 2) };
            Some(LexPairValue::new(a, b))
        })
        .with_seeds(seeds)
    }
}

/// v(x) = x on H, 0 on 𝔞.
pub fn convex_subgroup_valuation() -> MValuationInstance<LexMax, LexMax> {
    MValuationInstance::new("convex subgroup", LexMax { h_only: false }, LexMax { h_only: true }, |x: &LexElem| {
        x.clone().filter(|g| g.in_h())
    })
    .with_support("𝔞 = {(a, b) : a > 1} ∪ {0}")
}
