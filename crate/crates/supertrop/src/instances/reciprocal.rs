//! The semifield ℚ_{≥0} and the valuation a ↦ 1/a into T(ℚ_{>0}).

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::order::{q, qi, Monoid, OrderedMonoid, Semiring, WithZero, Q, TG};
use crate::report::Carrier;
use crate::valuation::MValuationInstance;

/// Nonnegative rationals with the usual + and ·.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonnegRationals;

impl Semiring for NonnegRationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn carrier(&self) -> Carrier<Q> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| q(rng.gen_range(0..=12), rng.gen_range(1..=4)))
            .with_seeds(vec![qi(0), qi(1), qi(2), q(1, 2)])
    }
}

/// ℚ_{>0} under multiplication with the usual order.
#[derive(Debug, Clone, Copy, Default)]
pub struct PositiveRationals;

impl Monoid for PositiveRationals {
    type Elem = Q;
    fn unit(&self) -> Q {
        Q::one()
    }
    fn op(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn carrier(&self) -> Carrier<Q> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| q(rng.gen_range(1..=12), rng.gen_range(1..=4)))
    }
}

impl OrderedMonoid for PositiveRationals {
    fn compare(&self, a: &Q, b: &Q) -> Ordering {
        a.cmp(b)
    }
}

/// v(0) = 0, v(a) = 1/a.
pub fn reciprocal_valuation() -> MValuationInstance<NonnegRationals, TG<PositiveRationals>> {
    MValuationInstance::new("reciprocal", NonnegRationals, TG { monoid: PositiveRationals }, |a: &Q| {
        if a.is_zero() {
            WithZero::Zero
        } else {
            WithZero::Val(a.recip())
        }
    })
    .with_support("{0}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckConfig;
    use crate::valuation::{check_mvaluation, is_strong};

    #[test]
    fn valuation_not_strong() {
        let cfg = CheckConfig::default();
        let v = reciprocal_valuation();
        assert_eq!(v.eval(&qi(2)), WithZero::Val(q(1, 2)));
        let t = &v.target;
        // v(1 + 2) = 1/3 ≤ max(1, 1/2).
        assert!(t.le(&v.eval(&qi(3)), &t.add(&v.eval(&qi(1)), &v.eval(&qi(2)))));
        assert!(check_mvaluation(&v, &cfg).passed());
        let s = is_strong(&v, &cfg);
        assert!(s.witnesses_for("strong").any(|w| w.inputs == ["1", "2"]));
    }
}
