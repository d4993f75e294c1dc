//! Iq-valuations into idempotent semirings, evaluation of ṽ and φ̃ at a
//! point, and the lattice structure of an idempotent semifield.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{coeff_map, evaluate, Poly, PolySemiring, PolyShape};
use crate::inputs;
use crate::order::Semiring;
use crate::report::{CheckConfig, Mode, Report};
use crate::superval::{check_strong_supervaluation, Supervaluation};
use crate::valuation::{check_mvaluation, is_strong, MValuationInstance};

/// Result of the iq-valuation check, with the number of pairs where IQV3
/// holds strictly.
#[derive(Debug, Clone, Serialize)]
pub struct IqReport {
    pub report: Report,
    pub strict_iqv3: usize,
    pub first_strict: Option<Vec<String>>,
}

/// IQV1 w(0) = 0, IQV2 w(1) = 1, IQV3 w(xy) ≤ w(x)w(y), IQV4 w(x+y) ≤
/// w(x) + w(y), with ≤ the order induced by + on an idempotent target.
pub fn check_iq_valuation<R: Semiring, M: Semiring>(w: &MValuationInstance<R, M>, cfg: &CheckConfig) -> IqReport {
    let (pairs, mode) = w.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    for a in ["idempotent target", "IQV1", "IQV2", "IQV3", "IQV4"] {
        r.check(a);
    }
    let (d, m) = (&w.domain, &w.target);
    let (targets, _) = m.carrier().elements(cfg);
    for x in &targets {
        if m.add(x, x) != *x {
            r.witness("idempotent target", inputs![x], "x + x ≠ x");
            return IqReport { report: r, strict_iqv3: 0, first_strict: None };
        }
    }
    if w.eval(&d.zero()) != m.zero() {
        r.witness("IQV1", vec![], format!("w(0) = {:?}", w.eval(&d.zero())));
    }
    if w.eval(&d.one()) != m.one() {
        r.witness("IQV2", vec![], format!("w(1) = {:?}", w.eval(&d.one())));
    }
    let (mut strict, mut first) = (0, None);
    for (x, y) in &pairs {
        let (wx, wy) = (w.eval(x), w.eval(y));
        let (lhs, rhs) = (w.eval(&d.mul(x, y)), m.mul(&wx, &wy));
        if !m.le(&lhs, &rhs) {
            r.witness("IQV3", inputs![x, y], format!("w(xy) = {lhs:?}, w(x)w(y) = {rhs:?}"));
        } else if lhs != rhs {
            strict += 1;
            first.get_or_insert_with(|| inputs![x, y]);
        }
        let (lhs, rhs) = (w.eval(&d.add(x, y)), m.add(&wx, &wy));
        if !m.le(&lhs, &rhs) {
            r.witness("IQV4", inputs![x, y], format!("w(x+y) = {lhs:?}, w(x)+w(y) = {rhs:?}"));
        }
    }
    IqReport { report: r, strict_iqv3: strict, first_strict: first }
}

/// ṽ: R[λ] → M[λ] as a map between polynomial semirings.
pub fn tilde_v_map<R, M>(v: &MValuationInstance<R, M>, shape: PolyShape) -> MValuationInstance<PolySemiring<R>, PolySemiring<M>>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let (map, z) = (v.map.clone(), v.target.zero());
    let domain = PolySemiring::new(v.domain.clone(), shape);
    let carrier = poly_carrier(&v.domain, &v.carrier, shape);
    MValuationInstance::new(format!("ṽ for {}", v.name), domain, PolySemiring::new(v.target.clone(), shape), move |f| {
        coeff_map(f, |c| map(c), &z)
    })
    .with_carrier(carrier)
}

/// ε_a∘ṽ: R[λ] → M.
pub fn eval_tilde_v<R, M>(v: &MValuationInstance<R, M>, a: Vec<M::Elem>, shape: PolyShape) -> MValuationInstance<PolySemiring<R>, M>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let (map, m) = (v.map.clone(), v.target.clone());
    let name = format!("ε_{a:?}∘ṽ for {}", v.name);
    let carrier = poly_carrier(&v.domain, &v.carrier, shape);
    MValuationInstance::new(name, PolySemiring::new(v.domain.clone(), shape), v.target.clone(), move |f| {
        let g = coeff_map(f, |c| map(c), &m.zero());
        evaluate(&m, &g, &a).expect("point arity matches the shape")
    })
    .with_carrier(carrier)
}

/// Random polynomials whose coefficients come from the valuation's carrier.
fn poly_carrier<R>(r: &R, coeffs: &crate::report::Carrier<R::Elem>, shape: PolyShape) -> crate::report::Carrier<Poly<R::Elem>>
where
    R: Semiring + Clone + Send + Sync + 'static,
{
    let (r, coeffs) = (r.clone(), coeffs.clone());
    let mut seeds = vec![Poly::zero(shape.nvars), Poly::constant(&r, shape.nvars, r.one())];
    seeds.extend((0..shape.nvars).map(|i| Poly::var(&r, shape.nvars, i)));
    crate::report::Carrier::sampled(move |rng: &mut ChaCha8Rng| shape.sample(&r, &coeffs, rng)).with_seeds(seeds)
}

/// V1–V4 and the strong rule for ε_a∘ṽ at a fixed point a ∈ Mⁿ.
pub fn eval_strong_check<R, M>(v: &MValuationInstance<R, M>, a: Vec<M::Elem>, shape: PolyShape, cfg: &CheckConfig) -> Report
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let w = eval_tilde_v(v, a, shape);
    let mut r = check_mvaluation(&w, cfg);
    r.absorb(is_strong(&w, cfg));
    r
}

/// Sampled (f, g, a) triples with a = v(c) for random c, so the point is
/// always in the image: multiplicativity, V4 and the strong rule for ε_a∘ṽ.
pub fn eval_strong_trials<R, M>(v: &MValuationInstance<R, M>, shape: PolyShape, cfg: &CheckConfig) -> Report
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let mut rng = cfg.rng_for(21);
    let mut r = Report::new(Mode::Sampled(cfg.samples));
    for a in ["multiplicative", "V4", "strong"] {
        r.check(a);
    }
    let (d, m) = (&v.domain, &v.target);
    let pd = PolySemiring::new(d.clone(), shape);
    for _ in 0..cfg.samples {
        let a: Vec<M::Elem> = (0..shape.nvars).map(|_| v.eval(&v.carrier.draw(&mut rng))).collect();
        let f = shape.sample(d, &v.carrier, &mut rng);
        let g = shape.sample(d, &v.carrier, &mut rng);
        let w = |p: &Poly<R::Elem>| evaluate(m, &coeff_map(p, |c| v.eval(c), &m.zero()), &a).expect("arity");
        let (wf, wg) = (w(&f), w(&g));
        let wfg = w(&pd.mul(&f, &g));
        let ws = w(&pd.add(&f, &g));
        let args = || vec![f.to_string(), g.to_string(), format!("{a:?}")];
        if wfg != m.mul(&wf, &wg) {
            r.witness("multiplicative", args(), format!("w(fg) = {wfg:?}, w(f)w(g) = {:?}", m.mul(&wf, &wg)));
        }
        if !m.le(&ws, &m.add(&wf, &wg)) {
            r.witness("V4", args(), format!("w(f+g) = {ws:?}"));
        }
        if wf != wg && ws != m.add(&wf, &wg) {
            r.witness("strong", args(), format!("w(f) = {wf:?}, w(g) = {wg:?}, w(f+g) = {ws:?}"));
        }
    }
    r
}

/// ε_a∘φ̃ at a fixed a ∈ Uⁿ is a strong supervaluation whose ghost part is
/// ε_{ea}∘ṽ, computed from the ghost images of the coefficients.
pub fn eval_superval_check<R, U>(phi: &Supervaluation<R, U>, a: Vec<U::Elem>, shape: PolyShape, cfg: &CheckConfig) -> Report
where
    R: Semiring + Clone + Send + Sync + 'static,
    U: Semiring + Clone + Send + Sync + 'static,
{
    let (map, u) = (phi.map.clone(), phi.target.clone());
    let name = format!("ε_{a:?}∘φ̃ for {}", phi.name);
    let ea: Vec<U::Elem> = a.iter().map(|x| u.nu(x)).collect();
    let psi = Supervaluation::new(name, PolySemiring::new(phi.domain.clone(), shape), phi.target.clone(), {
        let (map, u, a) = (map.clone(), u.clone(), a.clone());
        move |f: &Poly<R::Elem>| evaluate(&u, &coeff_map(f, |c| map(c), &u.zero()), &a).expect("arity")
    })
    .with_carrier(poly_carrier(&phi.domain, &phi.carrier, shape));
    let mut r = check_strong_supervaluation(&psi, cfg);
    r.check("covers ε_ea∘ṽ");
    let (elems, _) = psi.carrier.elements(cfg);
    for f in &elems {
        let ghostly = coeff_map(f, |c| u.nu(&map(c)), &u.zero());
        let lhs = evaluate(&u, &ghostly, &ea).expect("arity");
        let rhs = u.nu(&psi.eval(f));
        if lhs != rhs {
            r.witness("covers ε_ea∘ṽ", vec![f.to_string()], format!("{lhs:?} vs {rhs:?}"));
        }
    }
    r
}

/// x ∧ y = xy / (x + y), with 0 ∧ x = x ∧ 0 = 0.
pub fn semifield_meet<S: Semiring>(
    s: &S,
    div: impl Fn(&S::Elem, &S::Elem) -> Option<S::Elem>,
    x: &S::Elem,
    y: &S::Elem,
) -> S::Elem {
    if *x == s.zero() || *y == s.zero() {
        return s.zero();
    }
    div(&s.mul(x, y), &s.add(x, y)).expect("x + y ≠ 0 in a semifield")
}

/// Lattice laws of (S, +, ∧) on sampled triples: (x∨y)(x∧y) = xy,
/// x∧x = x, (x∧y)∨z = (x∨z)∧(y∨z), and a(x∧y) = ax ∧ ay.
pub fn semifield_lattice_check<S: Semiring>(s: &S, div: impl Fn(&S::Elem, &S::Elem) -> Option<S::Elem>, cfg: &CheckConfig) -> Report {
    let (trip, mode) = s.carrier().triples(cfg);
    let mut r = Report::new(mode);
    for a in ["(x∨y)(x∧y) = xy", "x∧x = x", "∨ distributes over ∧", "a(x∧y) = ax∧ay"] {
        r.check(a);
    }
    let meet = |x: &S::Elem, y: &S::Elem| semifield_meet(s, &div, x, y);
    for (x, y, z) in &trip {
        if s.mul(&s.add(x, y), &meet(x, y)) != s.mul(x, y) {
            r.witness("(x∨y)(x∧y) = xy", inputs![x, y], "");
        }
        if meet(x, x) != *x {
            r.witness("x∧x = x", inputs![x], format!("x∧x = {:?}", meet(x, x)));
        }
        if s.add(&meet(x, y), z) != meet(&s.add(x, z), &s.add(y, z)) {
            r.witness("∨ distributes over ∧", inputs![x, y, z], "");
        }
        if s.mul(z, &meet(x, y)) != meet(&s.mul(z, x), &s.mul(z, y)) {
            r.witness("a(x∧y) = ax∧ay", inputs![z, x, y], "");
        }
    }
    r
}
