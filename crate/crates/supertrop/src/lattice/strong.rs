//! The relation S(v): a₁ ~ a₂ iff both values vanish or a₁ + c₁ = a₂ + c₂
//! with v(cᵢ) < v(aᵢ); the very strong cover φ̄_v it induces; and the
//! tangible cover v̂ into D(M).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use super::partition::{Partition, UnionFind};
use crate::instances::field::Field;
use crate::instances::integers::{is_prime, ord_p, NotPrime};
use crate::instances::puiseux::{PuiseuxRing, PuiseuxSeries, SeriesFraction, SeriesShape};
use crate::instances::truncated::{PrimePowerRing, Trunc, TruncatedRing};
use crate::order::{qi, Semiring, ThetaValue, Q};
use crate::report::{CheckConfig, Mode, Report};
use crate::superval::{cover_table_by_classes, CoverError, NonzeroValues, Supervaluation};
use crate::supertropical::{d_of, FiniteSupertropical, STElement, Str};
use crate::valuation::MValuationInstance;

pub type RelFn<E> = Arc<dyn Fn(&E, &E) -> bool + Send + Sync>;

/// A decision procedure for a₁ ~_v a₂.
#[derive(Clone)]
pub struct SvRelation<E> {
    pub name: String,
    test: RelFn<E>,
}

impl<E> SvRelation<E> {
    pub fn new(name: impl Into<String>, test: impl Fn(&E, &E) -> bool + Send + Sync + 'static) -> Self {
        SvRelation { name: name.into(), test: Arc::new(test) }
    }

    pub fn related(&self, a: &E, b: &E) -> bool {
        (self.test)(a, b)
    }

    pub fn test(&self) -> RelFn<E> {
        self.test.clone()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no decision procedure for S(v) on {0}")]
pub struct Unsupported(pub String);

/// Rings whose S(v) for the order valuation is decided by leading terms.
pub trait LeadingTermOracle: Semiring {
    fn same_leading_term(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

impl<F: Field> LeadingTermOracle for PuiseuxRing<F> {
    fn same_leading_term(&self, a: &PuiseuxSeries<F>, b: &PuiseuxSeries<F>) -> bool {
        a.leading_term() == b.leading_term()
    }
}

impl<F: Field> LeadingTermOracle for TruncatedRing<F> {
    fn same_leading_term(&self, a: &Trunc<F>, b: &Trunc<F>) -> bool {
        a.leading_term() == b.leading_term()
    }
}

impl LeadingTermOracle for PrimePowerRing {
    /// Same p-order and same first p-adic digit.
    fn same_leading_term(&self, a: &u64, b: &u64) -> bool {
        match (self.ord(*a), self.ord(*b)) {
            (None, None) => true,
            (Some(i), Some(j)) => i == j && (a / self.p.pow(i as u32)) % self.p == (b / self.p.pow(j as u32)) % self.p,
            _ => false,
        }
    }
}

/// S(v) through the ring's leading-term oracle.
pub fn sv_relation<R, M>(v: &MValuationInstance<R, M>) -> SvRelation<R::Elem>
where
    R: LeadingTermOracle + Clone + Send + Sync + 'static,
    M: Semiring,
{
    let r = v.domain.clone();
    SvRelation::new(format!("S({}) by leading terms", v.name), move |a, b| r.same_leading_term(a, b))
}

/// S(v_p) on ℤ: equal p-order and equal unit digit mod p.
pub fn sv_padic(p: u64) -> Result<SvRelation<BigInt>, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime(p));
    }
    let pb = BigInt::from(p);
    Ok(SvRelation::new(format!("S(v{p})"), move |a: &BigInt, b: &BigInt| match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (false, false) => {
            let (i, j) = (ord_p(a, p), ord_p(b, p));
            let digit = |n: &BigInt, k: i64| (n / pb.pow(k as u32)).mod_floor(&pb);
            i == j && digit(a, i) == digit(b, j)
        }
        _ => false,
    }))
}

/// S(v) straight from the definition, searching c₁ over a finite carrier
/// and solving c₂ = a₁ + c₁ − a₂ by search as well.
pub fn sv_bruteforce<R, M>(v: &MValuationInstance<R, M>) -> Result<SvRelation<R::Elem>, Unsupported>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let all = v.carrier.all().ok_or_else(|| Unsupported(v.name.clone()))?.to_vec();
    let (r, m, map) = (v.domain.clone(), v.target.clone(), v.map.clone());
    Ok(SvRelation::new(format!("S({}) by search", v.name), move |a1: &R::Elem, a2: &R::Elem| {
        let (v1, v2, mz) = (map(a1), map(a2), m.zero());
        if v1 == mz && v2 == mz {
            return true;
        }
        let below = |c: &R::Elem, bound: &M::Elem| {
            let vc = map(c);
            vc != *bound && m.le(&vc, bound)
        };
        let small1: Vec<&R::Elem> = all.iter().filter(|c| below(c, &v1)).collect();
        let small2: Vec<&R::Elem> = all.iter().filter(|c| below(c, &v2)).collect();
        small1.iter().any(|c1| {
            let lhs = r.add(a1, c1);
            small2.iter().any(|c2| r.add(a2, c2) == lhs)
        })
    }))
}

/// E(v) on U(v): S(v) on tangibles, ghosts and 0 alone.
pub fn e_of_v<R: Semiring>(phi: &Supervaluation<R, FiniteSupertropical>, rel: &SvRelation<R::Elem>) -> Result<Partition, Unsupported> {
    let u = &phi.target;
    let all = phi.carrier.all().ok_or_else(|| Unsupported(phi.name.clone()))?;
    let mut rep: Vec<Option<&R::Elem>> = vec![None; u.len()];
    for a in all {
        let x = phi.eval(a);
        if !u.is_ghost(x) && rep[x].is_none() {
            rep[x] = Some(a);
        }
    }
    let mut uf = UnionFind::new(u.len());
    let t = u.tangibles();
    for &x in &t {
        for &y in &t {
            if let (Some(a), Some(b)) = (rep[x], rep[y]) {
                if x < y && rel.related(a, b) {
                    uf.union(x, y);
                }
            }
        }
    }
    Ok(uf.into_partition())
}

/// Ū(v) = STR(R̄ ∖ 𝔮̄, M ∖ {0}, v̄) with φ̄_v(a) = [a], built directly from
/// the classes of S(v) on a finite domain.
pub fn initial_very_strong<R, M>(
    v: &MValuationInstance<R, M>,
    rel: &SvRelation<R::Elem>,
) -> Result<Supervaluation<R, FiniteSupertropical>, CoverError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let test = rel.test();
    let mut phi = cover_table_by_classes(v, move |a: &R::Elem, b: &R::Elem| test(a, b), |m: &M::Elem| format!("{m:?}ν"))?;
    phi.name = format!("φ̄_{}", v.name);
    Ok(phi)
}

pub type HatTarget<M> = Str<NonzeroValues<M>, NonzeroValues<M>>;

/// v̂(a) = v(a) as a tangible of D(M), and 0 on the support.
pub fn hat_v<R, M>(v: &MValuationInstance<R, M>) -> Supervaluation<R, HatTarget<M>>
where
    R: Semiring + Clone,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let (map, mz) = (v.map.clone(), v.target.zero());
    Supervaluation::new(format!("v̂_{}", v.name), v.domain.clone(), d_of(NonzeroValues::all(v.target.clone())), move |a: &R::Elem| {
        let x = map(a);
        if x == mz {
            STElement::Zero
        } else {
            STElement::Tangible(x)
        }
    })
    .with_carrier(v.carrier.clone())
}

/// Counts from the fraction-field sampling.
#[derive(Debug, Clone, Default)]
pub struct UnitSampleCounts {
    pub samples: usize,
    pub related_to_one: usize,
}

/// On fractions of Puiseux series over ℚ, for sampled nonzero a:
/// v(1 − a) < v(a) (the witness c₁ = 1 − a, c₂ = 0) ⇔ ℓ(a) = 1 ⇔ the
/// expansion to depth 6 starts with 1; and v(a) = 1 ⇔ a and a⁻¹ lie in 𝔬_v.
pub fn check_unit_relation(cfg: &CheckConfig) -> (Report, UnitSampleCounts) {
    let mut rng = cfg.rng_for(1112);
    let shape = SeriesShape { max_terms: 3, min_exp: -2, max_exp: 4, max_denom: 2, zero_one_in: 0 };
    let mut r = Report::new(Mode::Sampled(cfg.samples));
    for ax in ["witness iff leading term", "leading term iff expansion", "unit fiber is 𝔬_v^*"] {
        r.check(ax);
    }
    let one = <Q as Field>::one();
    let depth = qi(6);
    let mut counts = UnitSampleCounts::default();
    for i in 0..cfg.samples {
        let num: PuiseuxSeries<Q> = shape.sample_nonzero(&mut rng);
        let den: PuiseuxSeries<Q> = shape.sample_nonzero(&mut rng);
        let mut a = SeriesFraction::new(num, den).expect("nonzero denominator");
        // Every other sample is normalized to leading term 1.
        if i % 2 == 0 || rng.gen_ratio(1, 8) {
            let l = a.leading_term().expect("nonzero");
            let inv = crate::instances::Monomial { coeff: l.coeff.inv().expect("nonzero"), exp: -l.exp };
            a = SeriesFraction::new(a.num.scale(&inv), a.den.clone()).expect("nonzero denominator");
        }
        counts.samples += 1;
        let witness = a.one_minus().value() < a.value();
        let lt = a.leading_term().is_some_and(|m| m.coeff == one && num_traits::Zero::is_zero(&m.exp));
        let ex = a.expand(&depth).leading_term().is_some_and(|m| m.coeff == one && num_traits::Zero::is_zero(&m.exp));
        let shown = format!("{a:?}");
        if witness != lt {
            r.witness("witness iff leading term", vec![shown.clone()], format!("witness {witness}, leading term 1 {lt}"));
        }
        if lt != ex {
            r.witness("leading term iff expansion", vec![shown.clone()], format!("leading term 1 {lt}, expansion {ex}"));
        }
        let inv = SeriesFraction::new(a.den.clone(), a.num.clone()).expect("a ≠ 0");
        let in_o = |f: &SeriesFraction<Q>| f.value() <= ThetaValue::one();
        let unit_value = a.value() == ThetaValue::one();
        if unit_value != (in_o(&a) && in_o(&inv)) {
            r.witness("unit fiber is 𝔬_v^*", vec![shown], "");
        }
        if lt {
            counts.related_to_one += 1;
        }
    }
    (r, counts)
}
