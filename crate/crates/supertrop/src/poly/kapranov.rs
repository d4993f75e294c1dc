//! Kapranov-type checks: valuations of roots lie in the corner locus, and
//! evaluation nearly commutes with a tangibly additive supervaluation.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::corner::{corner_query, CornerReport};
use super::gs::gs;
use super::{coeff_map, evaluate, poly_add, poly_mul, ArityError, Multidegree, Poly, PolyShape};
use crate::order::Semiring;
use crate::report::{CheckConfig, Mode, Report};
use crate::superval::{is_tangibly_additive, Supervaluation};
use crate::valuation::{is_strong, MValuationInstance, MapFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KapranovError {
    #[error("a is not a root: f(a) = {0}")]
    NotARoot(String),
    #[error(transparent)]
    Arity(#[from] ArityError),
}

/// ṽ(f): v applied to each coefficient.
pub fn tilde_v<R: Semiring, M: Semiring>(v: &MValuationInstance<R, M>, f: &Poly<R::Elem>) -> Poly<M::Elem> {
    coeff_map(f, |c| v.eval(c), &v.target.zero())
}

/// φ̃(f): φ applied to each coefficient.
pub fn tilde_phi<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, f: &Poly<R::Elem>) -> Poly<U::Elem> {
    coeff_map(f, |c| phi.eval(c), &phi.target.zero())
}

/// For a root a of f, v(a) lies in the corner locus of ṽ(f).
pub fn kapranov_corner_check<R: Semiring, M: Semiring>(
    v: &MValuationInstance<R, M>,
    f: &Poly<R::Elem>,
    a: &[R::Elem],
) -> Result<(Report, CornerReport<M::Elem>), KapranovError> {
    let fa = evaluate(&v.domain, f, a)?;
    if fa != v.domain.zero() {
        return Err(KapranovError::NotARoot(format!("{fa:?}")));
    }
    let b: Vec<M::Elem> = a.iter().map(|x| v.eval(x)).collect();
    let corner = corner_query(&v.target, &tilde_v(v, f), &b)?;
    let mut r = Report::new(Mode::Exhaustive);
    r.check("v(a) ∈ Corn(ṽ(f))");
    if !corner.in_locus {
        r.witness("v(a) ∈ Corn(ṽ(f))", vec![f.to_string(), format!("{a:?}")], format!("dominating {:?}", corner.dominating));
    }
    Ok((r, corner))
}

/// Both sides of ε_{φ(a)}(φ̃(f)) ⊨ φ(ε_a(f)).
#[derive(Debug, Clone, PartialEq)]
pub struct GsSides<E> {
    pub evaluated_image: E,
    pub image_of_value: E,
}

/// ε_{φ(a)}(φ̃(f)) ⊨ φ(ε_a(f)). Holds for every a once φ is tangibly
/// additive; that precondition is checked separately.
pub fn kapranov_gs_check<R: Semiring, U: Semiring>(
    phi: &Supervaluation<R, U>,
    f: &Poly<R::Elem>,
    a: &[R::Elem],
) -> Result<(Report, GsSides<U::Elem>), ArityError> {
    let pa: Vec<U::Elem> = a.iter().map(|x| phi.eval(x)).collect();
    let left = evaluate(&phi.target, &tilde_phi(phi, f), &pa)?;
    let right = phi.eval(&evaluate(&phi.domain, f, a)?);
    let mut r = Report::new(Mode::Exhaustive);
    r.check("ε_φ(a)(φ̃(f)) ⊨ φ(ε_a(f))");
    if !gs(&phi.target, &left, &right) {
        r.witness("ε_φ(a)(φ̃(f)) ⊨ φ(ε_a(f))", vec![f.to_string(), format!("{a:?}")], format!("{left:?} vs {right:?}"));
    }
    Ok((r, GsSides { evaluated_image: left, image_of_value: right }))
}

/// Sizes and switches for a batch of manufactured-root trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_deg: u32,
    pub max_vars: usize,
    /// Move one coordinate off the root before checking.
    pub inject_non_root: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { seed: 42, trials: 1000, max_deg: 4, max_vars: 3, inject_non_root: false }
    }
}

/// A failed or rejected trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialWitness {
    pub trial: usize,
    pub check: String,
    pub f: String,
    pub a: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KapranovSummary {
    pub instance: String,
    pub config: TrialConfig,
    /// v is strong on the sampled pairs.
    pub valuation_strong: bool,
    /// φ satisfies SV5 on the sampled pairs.
    pub tangibly_additive: bool,
    pub corner_passed: usize,
    pub gs_passed: usize,
    /// Trials whose point was not a root and so skipped the corner check.
    pub rejected_non_roots: usize,
    pub first_witness: Option<TrialWitness>,
}

impl KapranovSummary {
    /// Every trial passed both checks and both preconditions hold.
    pub fn passed(&self) -> bool {
        let n = self.config.trials;
        self.valuation_strong && self.tangibly_additive && self.corner_passed + self.rejected_non_roots == n && self.gs_passed == n
    }
}

/// f = Σ gᵢ·(λᵢ − aᵢ) with random gᵢ of degree < max_deg, never zero.
pub fn manufacture_root<R: Semiring>(
    r: &R,
    coeffs: &dyn Fn(&mut ChaCha8Rng) -> R::Elem,
    a: &[R::Elem],
    max_deg: u32,
    rng: &mut ChaCha8Rng,
    neg: &dyn Fn(&R::Elem) -> R::Elem,
) -> Poly<R::Elem> {
    let n = a.len();
    let shape = PolyShape { nvars: n, max_deg: max_deg.saturating_sub(1), max_terms: 4 };
    loop {
        let mut f = Poly::zero(n);
        for (i, ai) in a.iter().enumerate() {
            let terms: Vec<(Multidegree, R::Elem)> =
                (0..rng.gen_range(1..=shape.max_terms)).map(|_| (shape.sample_degree(rng), coeffs(rng))).collect();
            let g = Poly::from_terms(r, n, terms);
            let lin = poly_add(r, &Poly::var(r, n, i), &Poly::constant(r, n, neg(ai)));
            f = poly_add(r, &f, &poly_mul(r, &g, &lin));
        }
        if !f.is_empty() {
            return f;
        }
    }
}

struct TrialOutcome {
    corner: Result<(), TrialWitness>,
    gs: Result<(), TrialWitness>,
}

/// Run manufactured-root trials of both checks. Trial i draws from its own
/// stream of the seed, so results do not depend on scheduling.
pub fn kapranov_trials<R, M, U>(
    v: &MValuationInstance<R, M>,
    phi: &Supervaluation<R, U>,
    neg: impl Fn(&R::Elem) -> R::Elem + Send + Sync,
    tc: &TrialConfig,
) -> KapranovSummary
where
    R: Semiring + Sync,
    M: Semiring + Sync,
    U: Semiring + Sync,
{
    let cfg = CheckConfig { seed: tc.seed, samples: tc.trials };
    let valuation_strong = is_strong(v, &cfg).passed();
    let tangibly_additive = is_tangibly_additive(phi, &cfg).passed();
    let carrier = v.carrier.clone();
    let draw: crate::report::SampleFn<R::Elem> = Arc::new(move |rng| carrier.draw(rng));

    let run = |i: usize| -> TrialOutcome {
        let mut rng = cfg.rng_for(1_000 + i as u64);
        let n = rng.gen_range(1..=tc.max_vars.max(1));
        let a: Vec<R::Elem> = (0..n).map(|_| draw(&mut rng)).collect();
        let f = manufacture_root(&v.domain, &*draw, &a, tc.max_deg.max(1), &mut rng, &neg);
        let mut point = a.clone();
        if tc.inject_non_root {
            point[0] = v.domain.add(&point[0], &v.domain.one());
        }
        let wit = |check: &str, pt: &[R::Elem], detail: String| TrialWitness {
            trial: i,
            check: check.into(),
            f: f.to_string(),
            a: pt.iter().map(|x| format!("{x:?}")).collect(),
            detail,
        };
        let corner = match kapranov_corner_check(v, &f, &point) {
            Ok((r, _)) if r.passed() => Ok(()),
            Ok((_, c)) => Err(wit("corner", &point, format!("dominating {:?}", c.dominating))),
            Err(KapranovError::NotARoot(val)) => Err(wit("root", &point, val)),
            Err(e) => Err(wit("corner", &point, e.to_string())),
        };
        // The GS statement holds at every point, so test a random one too.
        let other: Vec<R::Elem> = (0..n).map(|_| draw(&mut rng)).collect();
        let gs = [&point, &other]
            .into_iter().try_for_each(|pt| match kapranov_gs_check(phi, &f, pt) {
                Ok((r, _)) if r.passed() => Ok(()),
                Ok((r, _)) => Err(wit("gs", pt, r.witnesses[0].detail.clone())),
                Err(e) => Err(wit("gs", pt, e.to_string())),
            });
        TrialOutcome { corner, gs }
    };

    let outcomes = run_indexed(tc.trials, &run);
    let mut s = KapranovSummary {
        instance: v.name.clone(),
        config: *tc,
        valuation_strong,
        tangibly_additive,
        corner_passed: 0,
        gs_passed: 0,
        rejected_non_roots: 0,
        first_witness: None,
    };
    for o in outcomes {
        match o.corner {
            Ok(()) => s.corner_passed += 1,
            Err(w) if w.check == "root" => {
                s.rejected_non_roots += 1;
                if !tc.inject_non_root {
                    s.first_witness.get_or_insert(w);
                }
            }
            Err(w) => {
                s.first_witness.get_or_insert(w);
            }
        }
        match o.gs {
            Ok(()) => s.gs_passed += 1,
            Err(w) => {
                s.first_witness.get_or_insert(w);
            }
        }
    }
    s
}

/// Map 0..n through `f` on scoped threads, returning results in index order.
fn run_indexed<T: Send>(n: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n.max(1));
    let chunk = n.div_ceil(workers.max(1)).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|lo| scope.spawn(move || (lo..(lo + chunk).min(n)).map(f).collect::<Vec<T>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trial worker panicked")).collect()
    })
}

/// A tangible multiplicative section s: M → 𝒯(U) ∪ {0} of the ghost map,
/// with `ghost` embedding M onto eU.
pub struct Section<M: Semiring, U: Semiring> {
    pub source: M,
    pub target: U,
    pub lift: MapFn<M::Elem, U::Elem>,
    pub ghost: MapFn<M::Elem, U::Elem>,
}

/// Checks the section axioms on samples of M, then returns s∘v.
pub fn tangible_section_cover<R, M, U>(
    s: &Section<M, U>,
    v: &MValuationInstance<R, M>,
    cfg: &CheckConfig,
) -> Result<Supervaluation<R, U>, Report>
where
    R: Semiring + Clone,
    M: Semiring,
    U: Semiring + Clone,
{
    let (pairs, mode) = s.source.carrier().pairs(cfg);
    let mut r = Report::new(mode);
    for a in ["s(0) = 0", "s(1) = 1", "s(xy) = s(x)s(y)", "ν∘s = id", "tangible"] {
        r.check(a);
    }
    let (m, u) = (&s.source, &s.target);
    if (s.lift)(&m.zero()) != u.zero() {
        r.witness("s(0) = 0", vec![], "");
    }
    if (s.lift)(&m.one()) != u.one() {
        r.witness("s(1) = 1", vec![], "");
    }
    for (x, y) in &pairs {
        let (sx, sy) = ((s.lift)(x), (s.lift)(y));
        if (s.lift)(&m.mul(x, y)) != u.mul(&sx, &sy) {
            r.witness("s(xy) = s(x)s(y)", crate::inputs![x, y], "");
        }
        if u.nu(&sx) != (s.ghost)(x) {
            r.witness("ν∘s = id", crate::inputs![x], format!("ν(s(x)) = {:?}", u.nu(&sx)));
        }
        if sx != u.zero() && !u.is_tangible(&sx) {
            r.witness("tangible", crate::inputs![x], format!("s(x) = {sx:?}"));
        }
    }
    if !r.passed() {
        return Err(r);
    }
    let (lift, map) = (s.lift.clone(), v.map.clone());
    Ok(Supervaluation::new(format!("s∘{}", v.name), v.domain.clone(), s.target.clone(), move |a| lift(&map(a)))
        .with_carrier(v.carrier.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{leading_term_superval, padic_valuation, puiseux_valuation, PuiseuxRing, PuiseuxSeries};
    use crate::order::{Theta, ThetaValue};
    use crate::superval::{check_supervaluation, cover_of, NonzeroValues, SupervaluationKind};
    use crate::supertropical::{d_of, STElement};
    use crate::lattice::strong::hat_v;
    use crate::valuation::identity_valuation;
    use num_bigint::BigInt;
    use num_rational::BigRational as Q;

    type S = PuiseuxSeries<Q>;

    fn lin(r: &PuiseuxRing<Q>, n: usize, i: usize, c: &S) -> Poly<S> {
        poly_add(r, &Poly::var(r, n, i), &Poly::constant(r, n, c.neg()))
    }

    #[test]
    fn line_minus_t() {
        let v = puiseux_valuation::<Q>();
        let phi = leading_term_superval::<Q>();
        let r = &v.domain;
        let t = S::t();
        let f = lin(r, 1, 0, &t);
        let (rep, c) = kapranov_corner_check(&v, &f, std::slice::from_ref(&t)).unwrap();
        assert!(rep.passed());
        assert_eq!(c.point, vec![ThetaValue::powi(1)]);
        assert_eq!(c.dominating.len(), 2);
        let (rep, sides) = kapranov_gs_check(&phi, &f, std::slice::from_ref(&t)).unwrap();
        assert!(rep.passed());
        assert_eq!(sides.evaluated_image, STElement::Ghost(ThetaValue::powi(1)));
        assert_eq!(sides.image_of_value, STElement::Zero);
        assert_eq!(kapranov_corner_check(&v, &f, &[t.mul(&t)]).unwrap_err(), KapranovError::NotARoot("-1*t + t^2".into()));
    }

    #[test]
    fn product_of_lines_in_two_variables() {
        let v = puiseux_valuation::<Q>();
        let r = &v.domain;
        let (t, t2) = (S::t(), S::t().mul(&S::t()));
        let f = poly_mul(r, &lin(r, 2, 0, &t), &lin(r, 2, 1, &t2));
        assert_eq!(f.len(), 4);
        let (rep, c) = kapranov_corner_check(&v, &f, &[t, t2]).unwrap();
        assert!(rep.passed());
        // All four monomials take the value ϑ³.
        assert_eq!(c.dominating.len(), 4);
        assert_eq!(c.value, ThetaValue::powi(3));
    }

    #[test]
    fn constants_satisfy_gs_trivially() {
        let phi = leading_term_superval::<Q>();
        let r = &phi.domain;
        let c = S::from_terms([(crate::order::q(1, 2), crate::order::q(3, 1))]);
        let f = Poly::constant(r, 2, c.clone());
        let (rep, sides) = kapranov_gs_check(&phi, &f, &[S::t(), S::zero()]).unwrap();
        assert!(rep.passed());
        assert_eq!(sides.evaluated_image, phi.eval(&c));
        assert_eq!(sides.image_of_value, phi.eval(&c));
    }

    #[test]
    fn puiseux_trials_pass() {
        let tc = TrialConfig { trials: 150, ..TrialConfig::default() };
        let s = kapranov_trials(&puiseux_valuation::<Q>(), &leading_term_superval::<Q>(), S::neg, &tc);
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.corner_passed, 150);
        assert_eq!(s, kapranov_trials(&puiseux_valuation::<Q>(), &leading_term_superval::<Q>(), S::neg, &tc));
    }

    #[test]
    fn padic_trials_pass() {
        let v = padic_valuation(2).unwrap();
        let tc = TrialConfig { trials: 150, ..TrialConfig::default() };
        let s = kapranov_trials(&v, &hat_v(&v), |x: &BigInt| -x, &tc);
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn injected_non_roots_are_counted_apart() {
        let tc = TrialConfig { trials: 60, inject_non_root: true, ..TrialConfig::default() };
        let s = kapranov_trials(&puiseux_valuation::<Q>(), &leading_term_superval::<Q>(), S::neg, &tc);
        assert!(s.rejected_non_roots > 0);
        assert_eq!(s.corner_passed + s.rejected_non_roots, 60);
        assert_eq!(s.gs_passed, 60);
        assert!(s.first_witness.is_none());
    }

    #[test]
    fn a_broken_supervaluation_is_caught() {
        // The trailing term is multiplicative but not tangibly additive.
        let mut phi = leading_term_superval::<Q>();
        phi.map = Arc::new(|a: &S| match a.terms().last() {
            Some((e, c)) => STElement::Tangible(crate::instances::Monomial { coeff: c.clone(), exp: e.clone() }),
            None => STElement::Zero,
        });
        let tc = TrialConfig { trials: 100, ..TrialConfig::default() };
        let s = kapranov_trials(&puiseux_valuation::<Q>(), &phi, S::neg, &tc);
        assert!(!s.tangibly_additive);
        assert!(s.gs_passed < 100);
        assert_eq!(s.first_witness.as_ref().map(|w| w.check.as_str()), Some("gs"));
    }

    fn hat_section() -> Section<Theta, crate::lattice::strong::HatTarget<Theta>> {
        let lift = |z: &ThetaValue| if z.is_zero() { STElement::Zero } else { STElement::Tangible(z.clone()) };
        let ghost = |z: &ThetaValue| if z.is_zero() { STElement::Zero } else { STElement::Ghost(z.clone()) };
        Section { source: Theta, target: d_of(NonzeroValues::all(Theta)), lift: Arc::new(lift), ghost: Arc::new(ghost) }
    }

    #[test]
    fn section_cover_is_the_leading_power() {
        let cfg = CheckConfig { seed: 42, samples: 1000 };
        let v = puiseux_valuation::<Q>();
        let phi = tangible_section_cover(&hat_section(), &v, &cfg).unwrap();
        let sv = check_supervaluation(&phi, &cfg);
        assert!(sv.report.passed());
        assert_eq!(sv.kind, SupervaluationKind::Tangible);
        assert!(is_tangibly_additive(&phi, &cfg).passed());
        let lp = crate::instances::leading_power_superval::<Q>();
        let (elems, _) = v.carrier.elements(&cfg);
        for a in &elems {
            assert_eq!(phi.eval(a), lp.eval(a));
        }
        let id = tangible_section_cover(&hat_section(), &identity_valuation(&Theta), &cfg).unwrap();
        assert_eq!(id.eval(&ThetaValue::powi(2)), STElement::Tangible(ThetaValue::powi(2)));
    }

    #[test]
    fn a_ghost_section_is_refused() {
        let mut s = hat_section();
        s.lift = s.ghost.clone();
        let r = tangible_section_cover(&s, &puiseux_valuation::<Q>(), &CheckConfig::default()).err().expect("ghost section refused");
        assert!(r.failed("tangible"));
        assert!(r.failed("s(1) = 1"));
    }

    #[test]
    fn tangible_and_tangibly_additive_covers_are_strong() {
        let cfg = CheckConfig { seed: 7, samples: 600 };
        let v2 = padic_valuation(2).unwrap();
        let covers: Vec<Box<dyn Fn() -> (bool, bool, bool)>> = vec![
            Box::new(|| {
                let phi = leading_term_superval::<Q>();
                tangible_additive_strong(&phi, &cfg)
            }),
            Box::new(|| tangible_additive_strong(&hat_v(&v2), &cfg)),
            Box::new(|| tangible_additive_strong(&crate::instances::leading_power_superval::<Q>(), &cfg)),
        ];
        for c in covers {
            let (tangible, additive, strong) = c();
            assert!(tangible && additive);
            assert!(strong);
        }
    }

    fn tangible_additive_strong<R, U>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> (bool, bool, bool)
    where
        R: Semiring + Clone,
        U: Semiring + Clone + Send + Sync + 'static,
    {
        let tangible = check_supervaluation(phi, cfg).kind == SupervaluationKind::Tangible;
        (tangible, is_tangibly_additive(phi, cfg).passed(), is_strong(&cover_of(phi), cfg).passed())
    }
}
