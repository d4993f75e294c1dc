//! Corner loci of tropical polynomials and root sets over supertropical
//! semirings.

use serde::Serialize;

use super::{coeff_map, eval_term, evaluate, ArityError, Multidegree, Poly};
use crate::order::Semiring;
use crate::superval::NonzeroValues;
use crate::supertropical::{d_of, STElement};

/// Where the maximum of the monomials of g at b is attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerReport<E> {
    pub point: Vec<E>,
    /// Monomials of g attaining the maximum, highest first.
    pub dominating: Vec<Multidegree>,
    /// The maximum, g(b) in M.
    pub value: E,
    /// At least two multi-indices attain the maximum. When the maximum is
    /// 0_M every multi-index outside the support ties with it, so this holds
    /// even with fewer than two dominating monomials.
    pub in_locus: bool,
}

/// Evaluate every monomial of g at b exactly and collect the argmax. M is
/// assumed bipotent; coordinates equal to 0_M are admitted.
pub fn corner_query<M: Semiring>(m: &M, g: &Poly<M::Elem>, b: &[M::Elem]) -> Result<CornerReport<M::Elem>, ArityError> {
    let value = evaluate(m, g, b)?;
    let dominating: Vec<Multidegree> =
        g.terms().rev().filter(|(d, c)| eval_term(m, d, c, b) == value).map(|(d, _)| d.clone()).collect();
    let in_locus = value == m.zero() || dominating.len() >= 2;
    Ok(CornerReport { point: b.to_vec(), dominating, value, in_locus })
}

/// The same question answered in D(M): lift g and b tangibly, evaluate, and
/// ask whether the result is ghost or zero.
pub fn corner_via_lift<M>(m: &M, g: &Poly<M::Elem>, b: &[M::Elem]) -> Result<bool, ArityError>
where
    M: Semiring + Clone + Send + Sync + 'static,
{
    let d = d_of(NonzeroValues::all(m.clone()));
    let z = m.zero();
    let lift = |x: &M::Elem| if *x == z { STElement::Zero } else { STElement::Tangible(x.clone()) };
    let g_lift = coeff_map(g, lift, &STElement::Zero);
    let b_lift: Vec<_> = b.iter().map(lift).collect();
    Ok(d.is_ghost_or_zero(&evaluate(&d, &g_lift, &b_lift)?))
}

/// b is a root of f: f(b) ∈ eU ∪ {0}.
pub fn root_query<U: Semiring>(u: &U, f: &Poly<U::Elem>, b: &[U::Elem]) -> Result<bool, ArityError> {
    Ok(u.is_ghost_or_zero(&evaluate(u, f, b)?))
}

/// b is a root of f with every coordinate tangible or zero.
pub fn tangible_root_query<U: Semiring>(u: &U, f: &Poly<U::Elem>, b: &[U::Elem]) -> Result<bool, ArityError> {
    let tangible = b.iter().all(|x| *x == u.zero() || u.is_tangible(x));
    Ok(root_query(u, f, b)? && tangible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{leading_term_superval, PuiseuxSeries};
    use crate::order::{q, Theta, ThetaValue};
    use crate::poly::poly_add;
    use num_rational::BigRational as Q;
    use proptest::prelude::*;

    fn th(n: i64, d: i64) -> ThetaValue {
        ThetaValue::pow(q(n, d))
    }

    fn tropical(terms: &[(Vec<u32>, ThetaValue)]) -> Poly<ThetaValue> {
        let n = terms.first().map_or(1, |t| t.0.len());
        Poly::from_terms(&Theta, n, terms.iter().map(|(d, c)| (Multidegree(d.clone()), c.clone())))
    }

    #[test]
    fn line_through_theta() {
        let g = tropical(&[(vec![1], ThetaValue::one()), (vec![0], th(1, 1))]);
        let at = corner_query(&Theta, &g, &[th(1, 1)]).unwrap();
        assert!(at.in_locus);
        assert_eq!(at.dominating.len(), 2);
        let off = corner_query(&Theta, &g, &[th(2, 1)]).unwrap();
        assert!(!off.in_locus);
        assert_eq!(off.dominating, vec![Multidegree(vec![0])]);
        assert!(corner_via_lift(&Theta, &g, &[th(1, 1)]).unwrap());
        assert!(!corner_via_lift(&Theta, &g, &[th(2, 1)]).unwrap());
    }

    #[test]
    fn constants_have_no_corners() {
        let g = tropical(&[(vec![0, 0], th(3, 2))]);
        for b in [[th(0, 1), th(1, 1)], [ThetaValue::zero(), th(-2, 1)]] {
            assert!(!corner_query(&Theta, &g, &b).unwrap().in_locus);
        }
    }

    #[test]
    fn zero_coordinates_are_admitted() {
        // λ at 0: every monomial is 0, so off-support indices tie.
        let g = tropical(&[(vec![1], ThetaValue::one())]);
        let r = corner_query(&Theta, &g, &[ThetaValue::zero()]).unwrap();
        assert!(r.in_locus);
        assert!(corner_via_lift(&Theta, &g, &[ThetaValue::zero()]).unwrap());
        assert_eq!(corner_query(&Theta, &g, &[th(1, 1), th(1, 1)]), Err(ArityError { expected: 1, got: 2 }));
    }

    #[test]
    fn quadratic_corner_on_a_grid() {
        let g = tropical(&[(vec![2], ThetaValue::one()), (vec![1], ThetaValue::one()), (vec![0], ThetaValue::one())]);
        for k in -3..=3 {
            let r = corner_query(&Theta, &g, &[th(k, 2)]).unwrap();
            // Exponents 2q, q, 0: the corner is where the minimum repeats.
            let exps = [q(2 * k, 2), q(k, 2), q(0, 1)];
            let lo = exps.iter().min().unwrap();
            let ties = exps.iter().filter(|e| *e == lo).count();
            assert_eq!(r.in_locus, ties >= 2, "q = {k}/2");
            assert_eq!(r.in_locus, k == 0);
        }
        let all = corner_query(&Theta, &g, &[ThetaValue::one()]).unwrap();
        assert_eq!(all.dominating.len(), 3);
    }

    #[test]
    fn root_examples() {
        let d = d_of(crate::order::ThetaGroup);
        let x = Poly::var(&d, 1, 0);
        let ghostly = poly_add(&d, &x, &x);
        for b in [STElement::Zero, STElement::Tangible(th(1, 1)), STElement::Ghost(th(-1, 2))] {
            assert!(root_query(&d, &ghostly, std::slice::from_ref(&b)).unwrap());
        }
        assert!(!tangible_root_query(&d, &ghostly, &[STElement::Ghost(th(-1, 2))]).unwrap());

        let phi = leading_term_superval::<Q>();
        let t = PuiseuxSeries::<Q>::t();
        let r = &phi.domain;
        let f = poly_add(r, &Poly::var(r, 1, 0), &Poly::constant(r, 1, t.neg()));
        let fu = coeff_map(&f, |c| phi.eval(c), &STElement::Zero);
        let at_t = [phi.eval(&t)];
        assert!(tangible_root_query(&phi.target, &fu, &at_t).unwrap());
        assert_eq!(evaluate(&phi.target, &fu, &at_t).unwrap(), STElement::Ghost(th(1, 1)));
        let at_t2 = [phi.eval(&t.mul(&t))];
        assert!(!root_query(&phi.target, &fu, &at_t2).unwrap());
    }

    fn theta_strategy() -> impl Strategy<Value = ThetaValue> {
        prop_oneof![
            1 => Just(ThetaValue::zero()),
            8 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| th(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn corner_matches_ghost_evaluation(
            terms in prop::collection::vec((prop::collection::vec(0u32..=3, 2), theta_strategy()), 0..6),
            b in prop::collection::vec(theta_strategy(), 2),
        ) {
            let g = Poly::from_terms(&Theta, 2, terms.into_iter().map(|(d, c)| (Multidegree(d), c)));
            let r = corner_query(&Theta, &g, &b).unwrap();
            prop_assert_eq!(r.in_locus, corner_via_lift(&Theta, &g, &b).unwrap());
        }
    }
}
