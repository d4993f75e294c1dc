//! Concrete rings and valuations used as test beds.

pub mod convex;
pub mod field;
pub mod integers;
pub mod kx;
pub mod puiseux;
pub mod reciprocal;
pub mod truncated;

pub use convex::{convex_subgroup_valuation, LexMax, LexPairValue};
pub use field::{Field, FieldRing, Fp};
pub use integers::{ord_p, padic_rational_valuation, padic_valuation, Integers, Naturals, NotPrime};
pub use kx::{degree_valuation, degree_valuation_literal, PolyRing, UniPoly};
pub use puiseux::{
    leading_power_superval, leading_term_superval, puiseux_valuation, Monomial, MonomialGroup, PuiseuxRing,
    PuiseuxSeries, SeriesFraction, SeriesShape,
};
pub use reciprocal::{reciprocal_valuation, NonnegRationals, PositiveRationals};
pub use truncated::{
    degree_truncation_cover, prime_power_order_valuation, truncated_order_valuation, truncated_value, PrimePowerRing,
    Trunc, TruncatedRing,
};

use crate::order::{FiniteSemiringTable, Semiring};
use crate::supertropical::fixtures::boolean;
use crate::valuation::MValuationInstance;

/// w(0) = 0, w(a) = 1 otherwise, into the Boolean semiring. A valuation
/// when the domain has no zero divisors.
pub fn trivial_valuation<R: Semiring + Clone>(r: &R) -> MValuationInstance<R, FiniteSemiringTable> {
    let zero = r.zero();
    MValuationInstance::new("trivial", r.clone(), boolean(), move |a: &R::Elem| usize::from(*a != zero))
        .with_support("{0}")
}
