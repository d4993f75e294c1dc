//! Finitely supported Puiseux series Σ c_j t^j with exact rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use crate::order::{fmt_q, q, Monoid, Semiring, Theta, ThetaGroup, ThetaValue, Q};
use crate::report::Carrier;
use crate::superval::Supervaluation;
use crate::supertropical::{d_of, STElement, Str};
use crate::valuation::MValuationInstance;

/// A nonzero monomial c·t^q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial<F> {
    pub coeff: F,
    pub exp: Q,
}

impl<F: Field> Monomial<F> {
    pub fn mul(&self, o: &Self) -> Self {
        Monomial { coeff: self.coeff.mul(&o.coeff), exp: &self.exp + &o.exp }
    }

    pub fn series(&self) -> PuiseuxSeries<F> {
        PuiseuxSeries::monomial(self.coeff.clone(), self.exp.clone())
    }
}

impl<F: Field> fmt::Debug for Monomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries<F> {
    terms: BTreeMap<Q, F>,
}

impl<F: Field> PuiseuxSeries<F> {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, <Q as num_traits::Zero>::zero())
    }

    pub fn monomial(c: F, exp: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        PuiseuxSeries { terms }
    }

    /// The series t.
    pub fn t() -> Self {
        Self::monomial(F::one(), <Q as num_traits::One>::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Q, F)>) -> Self {
        let mut s = Self::zero();
        for (e, c) in it {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, e: Q, c: F) {
        let sum = match self.terms.get(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &F)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                s.add_term(e1 + e2, c1.mul(c2));
            }
        }
        s
    }

    pub fn scale(&self, m: &Monomial<F>) -> Self {
        self.mul(&m.series())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Minimal exponent; None for the zero series.
    pub fn ord(&self) -> Option<Q> {
        self.terms.keys().next().cloned()
    }

    pub fn leading_term(&self) -> Option<Monomial<F>> {
        self.terms.iter().next().map(|(e, c)| Monomial { coeff: c.clone(), exp: e.clone() })
    }

    /// Terms with exponent ≤ order.
    pub fn truncate(&self, order: &Q) -> Self {
        PuiseuxSeries { terms: self.terms.iter().filter(|(e, _)| *e <= order).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// self / d expanded as a series, keeping exponents ≤ order. None if d = 0.
    pub fn div_truncated(&self, d: &Self, order: &Q) -> Option<Self> {
        let lead = d.leading_term()?;
        let inv_lead = Monomial { coeff: lead.coeff.inv()?, exp: -lead.exp.clone() };
        // d = lead·(1 + u) with ord(u) > 0, so 1/d = lead⁻¹ Σ (−u)^k.
        let u = d.scale(&inv_lead).sub(&Self::one());
        let mut term = self.scale(&inv_lead).truncate(order);
        let mut sum = Self::zero();
        while !term.is_zero() {
            sum = sum.add(&term);
            term = term.mul(&u).neg().truncate(order);
        }
        Some(sum)
    }
}

impl<F: Field> fmt::Display for PuiseuxSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let power = if num_traits::Zero::is_zero(e) {
                    None
                } else if e.is_one() {
                    Some("t".to_string())
                } else if e.is_integer() && !num_traits::Signed::is_negative(e) {
                    Some(format!("t^{}", e.numer()))
                } else {
                    Some(format!("t^({})", fmt_q(e)))
                };
                match power {
                    None => c.render(),
                    Some(p) if *c == F::one() => p,
                    Some(p) => format!("{}*{p}", c.render()),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for PuiseuxSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shape of random series: term count, exponent range and denominators.
#[derive(Debug, Clone, Copy)]
pub struct SeriesShape {
    pub max_terms: usize,
    pub min_exp: i64,
    pub max_exp: i64,
    pub max_denom: i64,
    pub zero_one_in: u32,
}

impl Default for SeriesShape {
    fn default() -> Self {
        SeriesShape { max_terms: 3, min_exp: -2, max_exp: 6, max_denom: 2, zero_one_in: 10 }
    }
}

impl SeriesShape {
    pub fn sample<F: Field>(&self, rng: &mut ChaCha8Rng) -> PuiseuxSeries<F> {
        if self.zero_one_in > 0 && rng.gen_ratio(1, self.zero_one_in) {
            return PuiseuxSeries::zero();
        }
        self.sample_nonzero(rng)
    }

    pub fn sample_nonzero<F: Field>(&self, rng: &mut ChaCha8Rng) -> PuiseuxSeries<F> {
        loop {
            let n = rng.gen_range(1..=self.max_terms);
            let s = PuiseuxSeries::from_terms((0..n).map(|_| {
                let d = rng.gen_range(1..=self.max_denom);
                let k = rng.gen_range(self.min_exp * d..=self.max_exp * d);
                (q(k, d), F::sample_nonzero(rng))
            }));
            if !s.is_zero() {
                return s;
            }
        }
    }
}

/// The ring of finitely supported Puiseux series over F.
#[derive(Debug, Clone, Copy, Default)]
pub struct PuiseuxRing<F> {
    pub shape: SeriesShape,
    _f: std::marker::PhantomData<F>,
}

impl<F> PuiseuxRing<F> {
    pub fn new() -> Self {
        PuiseuxRing { shape: SeriesShape::default(), _f: std::marker::PhantomData }
    }

    pub fn with_shape(shape: SeriesShape) -> Self {
        PuiseuxRing { shape, _f: std::marker::PhantomData }
    }
}

impl<F: Field> Semiring for PuiseuxRing<F> {
    type Elem = PuiseuxSeries<F>;
    fn zero(&self) -> Self::Elem {
        PuiseuxSeries::zero()
    }
    fn one(&self) -> Self::Elem {
        PuiseuxSeries::one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<Self::Elem> {
        let shape = self.shape;
        Carrier::sampled(move |rng: &mut ChaCha8Rng| shape.sample(rng)).with_seeds(puiseux_seeds())
    }
}

fn puiseux_seeds<F: Field>() -> Vec<PuiseuxSeries<F>> {
    let t = PuiseuxSeries::<F>::t();
    vec![
        PuiseuxSeries::zero(),
        PuiseuxSeries::one(),
        PuiseuxSeries::one().neg(),
        t.clone(),
        t.neg(),
        PuiseuxSeries::one().add(&t),
        PuiseuxSeries::one().sub(&t),
    ]
}

/// Nonzero monomials c·t^q under multiplication.
#[derive(Debug, Clone, Copy, Default)]
pub struct MonomialGroup<F>(std::marker::PhantomData<F>);

impl<F> MonomialGroup<F> {
    pub fn new() -> Self {
        MonomialGroup(std::marker::PhantomData)
    }
}

impl<F: Field> Monoid for MonomialGroup<F> {
    type Elem = Monomial<F>;
    fn unit(&self) -> Monomial<F> {
        Monomial { coeff: F::one(), exp: <Q as num_traits::Zero>::zero() }
    }
    fn op(&self, a: &Monomial<F>, b: &Monomial<F>) -> Monomial<F> {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<Monomial<F>> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| {
            SeriesShape::default().sample_nonzero::<F>(rng).leading_term().expect("nonzero")
        })
    }
}

/// The monomial t^q ↦ ϑ^q.
pub fn monomial_value<F: Field>(m: &Monomial<F>) -> ThetaValue {
    ThetaValue::pow(m.exp.clone())
}

pub fn series_value<F: Field>(a: &PuiseuxSeries<F>) -> ThetaValue {
    a.ord().map(ThetaValue::pow).unwrap_or_else(ThetaValue::zero)
}

/// v(a) = ϑ^{ord a}.
pub fn puiseux_valuation<F: Field>() -> MValuationInstance<PuiseuxRing<F>, Theta> {
    MValuationInstance::new("puiseux", PuiseuxRing::new(), Theta, series_value::<F>).with_support("{0}")
}

pub type LeadingTermTarget<F> = Str<MonomialGroup<F>, ThetaGroup>;

/// STR(monomials, ϑ^ℚ, c·t^q ↦ ϑ^q).
pub fn leading_term_target<F: Field>() -> LeadingTermTarget<F> {
    Str { tangibles: MonomialGroup::new(), ghosts: ThetaGroup, v: std::sync::Arc::new(monomial_value::<F>) }
}

/// a ↦ ℓ(a), tangible for a ≠ 0.
pub fn leading_term_superval<F: Field>() -> Supervaluation<PuiseuxRing<F>, LeadingTermTarget<F>> {
    Supervaluation::new("leading term", PuiseuxRing::new(), leading_term_target(), |a: &PuiseuxSeries<F>| {
        match a.leading_term() {
            Some(m) => STElement::Tangible(m),
            None => STElement::Zero,
        }
    })
}

/// a ↦ ϑ^{ord a} as a tangible of D(ϑ^ℚ).
pub fn leading_power_superval<F: Field>() -> Supervaluation<PuiseuxRing<F>, Str<ThetaGroup, ThetaGroup>> {
    Supervaluation::new("leading power", PuiseuxRing::new(), d_of(ThetaGroup), |a: &PuiseuxSeries<F>| match a.ord() {
        Some(e) => STElement::Tangible(ThetaValue::pow(e)),
        None => STElement::Zero,
    })
}

/// A fraction p/q of series with q ≠ 0.
#[derive(Clone)]
pub struct SeriesFraction<F> {
    pub num: PuiseuxSeries<F>,
    pub den: PuiseuxSeries<F>,
}

impl<F: Field> SeriesFraction<F> {
    pub fn new(num: PuiseuxSeries<F>, den: PuiseuxSeries<F>) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(SeriesFraction { num, den })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// ℓ(p)/ℓ(q), the leading term of the expanded quotient.
    pub fn leading_term(&self) -> Option<Monomial<F>> {
        let (a, b) = (self.num.leading_term()?, self.den.leading_term()?);
        Some(Monomial { coeff: a.coeff.mul(&b.coeff.inv()?), exp: a.exp - b.exp })
    }

    pub fn ord(&self) -> Option<Q> {
        Some(self.num.ord()? - self.den.ord()?)
    }

    pub fn value(&self) -> ThetaValue {
        self.ord().map(ThetaValue::pow).unwrap_or_else(ThetaValue::zero)
    }

    /// 1 − p/q = (q − p)/q.
    pub fn one_minus(&self) -> Self {
        SeriesFraction { num: self.den.sub(&self.num), den: self.den.clone() }
    }

    /// Expansion with exponents ≤ ord + depth.
    pub fn expand(&self, depth: &Q) -> PuiseuxSeries<F> {
        let order = self.ord().unwrap_or_else(<Q as num_traits::Zero>::zero) + depth;
        self.num.div_truncated(&self.den, &order).expect("nonzero denominator")
    }
}

impl<F: Field> PartialEq for SeriesFraction<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl<F: Field> fmt::Debug for SeriesFraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::qi;
    use crate::report::CheckConfig;
    use crate::valuation::{check_mvaluation, is_strong};

    type S = PuiseuxSeries<Q>;

    fn s(terms: &[(i64, i64, i64)]) -> S {
        S::from_terms(terms.iter().map(|&(n, d, c)| (q(n, d), qi(c))))
    }

    #[test]
    fn cancellation_and_leading_term() {
        let a = s(&[(1, 1, 2), (2, 1, 1)]);
        assert_eq!(a.add(&s(&[(1, 1, -2)])), s(&[(2, 1, 1)]));
        let l = a.leading_term().unwrap();
        assert_eq!((l.coeff, l.exp), (qi(2), qi(1)));
        assert_eq!(a.ord(), Some(qi(1)));
        assert_eq!(S::zero().ord(), None);
    }

    #[test]
    fn square_of_binomial() {
        let a = s(&[(0, 1, 1), (1, 2, 1)]);
        let expect = s(&[(0, 1, 1), (1, 2, 2), (1, 1, 1)]);
        assert_eq!(a.pow(2), expect);
        // Agreement after truncation at several orders.
        for k in [q(1, 2), qi(1), qi(3)] {
            assert_eq!(a.mul(&a).truncate(&k), expect.truncate(&k));
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(s(&[(0, 1, 1), (3, 2, 2), (2, 1, -1)]).to_string(), "1 + 2*t^(3/2) + -1*t^2");
        assert_eq!(S::zero().to_string(), "0");
        assert_eq!(s(&[(-1, 1, 1)]).to_string(), "t^(-1)");
    }

    #[test]
    fn truncated_division() {
        // 1/(1 − t) = 1 + t + t² + …
        let one_minus_t = s(&[(0, 1, 1), (1, 1, -1)]);
        let inv = S::one().div_truncated(&one_minus_t, &qi(4)).unwrap();
        assert_eq!(inv, s(&[(0, 1, 1), (1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1)]));
        let back = inv.mul(&one_minus_t).truncate(&qi(4));
        assert_eq!(back, S::one());
    }

    #[test]
    fn valuation_is_strong() {
        let cfg = CheckConfig::default();
        let v = puiseux_valuation::<Q>();
        assert!(check_mvaluation(&v, &cfg).passed());
        assert!(is_strong(&v, &cfg).passed());
        assert_eq!(v.eval(&s(&[(1, 2, 1), (1, 1, 1)])), ThetaValue::pow(q(1, 2)));
    }

    #[test]
    fn fraction_leading_term() {
        let f = SeriesFraction::new(s(&[(0, 1, 1), (1, 1, 1)]), s(&[(0, 1, 1), (1, 1, 2)])).unwrap();
        let l = f.leading_term().unwrap();
        assert_eq!((l.coeff, l.exp), (qi(1), qi(0)));
        assert_eq!(f.expand(&qi(2)), s(&[(0, 1, 1), (1, 1, -1), (2, 1, 2)]));
    }
}
