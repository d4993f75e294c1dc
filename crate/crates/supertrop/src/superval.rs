//! Supervaluations φ: R → U, their covers, dominance, transmissions and the
//! initial cover φ_v: R → U(v).

use std::cmp::Ordering;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::inputs;
use crate::order::{Monoid, OrderedMonoid, Semiring};
use crate::report::{tidy, Carrier, CheckConfig, Mode, Report, Witness};
use crate::supertropical::{str_construct, FiniteSupertropical, STElement, Str, StrError, SupertropicalError};
use crate::valuation::{is_strong, MValuationInstance, MapFn};

/// A map φ: R → U into a supertropical semiring, with a domain sampler.
pub struct Supervaluation<R: Semiring, U: Semiring> {
    pub name: String,
    pub domain: R,
    pub target: U,
    pub map: MapFn<R::Elem, U::Elem>,
    pub carrier: Carrier<R::Elem>,
}

impl<R: Semiring + Clone, U: Semiring + Clone> Clone for Supervaluation<R, U> {
    fn clone(&self) -> Self {
        Supervaluation {
            name: self.name.clone(),
            domain: self.domain.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
            carrier: self.carrier.clone(),
        }
    }
}

impl<R: Semiring, U: Semiring> Supervaluation<R, U> {
    pub fn new(
        name: impl Into<String>,
        domain: R,
        target: U,
        map: impl Fn(&R::Elem) -> U::Elem + Send + Sync + 'static,
    ) -> Self {
        let carrier = domain.carrier();
        Supervaluation { name: name.into(), domain, target, map: Arc::new(map), carrier }
    }

    pub fn with_carrier(mut self, carrier: Carrier<R::Elem>) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn eval(&self, a: &R::Elem) -> U::Elem {
        (self.map)(a)
    }
}

/// eU as a semiring in its own right, with unit e.
#[derive(Debug, Clone)]
pub struct GhostIdeal<U>(pub U);

impl<U: Semiring + Clone + Send + Sync + 'static> Semiring for GhostIdeal<U> {
    type Elem = U::Elem;
    fn zero(&self) -> U::Elem {
        self.0.zero()
    }
    fn one(&self) -> U::Elem {
        self.0.e()
    }
    fn add(&self, a: &U::Elem, b: &U::Elem) -> U::Elem {
        self.0.add(a, b)
    }
    fn mul(&self, a: &U::Elem, b: &U::Elem) -> U::Elem {
        self.0.mul(a, b)
    }
    fn carrier(&self) -> Carrier<U::Elem> {
        let u = self.0.clone();
        let c = self.0.carrier();
        match c.all() {
            Some(all) => {
                let mut v: Vec<U::Elem> = Vec::new();
                for x in all {
                    let g = u.nu(x);
                    if !v.contains(&g) {
                        v.push(g);
                    }
                }
                Carrier::finite(v)
            }
            None => c.map(move |x| u.nu(x)),
        }
    }
    fn e(&self) -> U::Elem {
        self.0.e()
    }
    fn nu(&self, x: &U::Elem) -> U::Elem {
        x.clone()
    }
}

/// v = e·φ on the same domain and sampler.
pub fn cover_of<R, U>(phi: &Supervaluation<R, U>) -> MValuationInstance<R, GhostIdeal<U>>
where
    R: Semiring + Clone,
    U: Semiring + Clone + Send + Sync + 'static,
{
    let (f, u) = (phi.map.clone(), phi.target.clone());
    MValuationInstance::new(format!("e·{}", phi.name), phi.domain.clone(), GhostIdeal(phi.target.clone()), move |a| {
        u.nu(&f(a))
    })
    .with_carrier(phi.carrier.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupervaluationKind {
    /// φ(R) ⊆ 𝒯(U) ∪ {0}.
    Tangible,
    /// φ(R) ⊆ eU.
    Ghost,
    Mixed,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupervaluationReport {
    pub report: Report,
    pub kind: SupervaluationKind,
}

/// SV1–SV4 and the tangible / ghost classification on the checked set.
pub fn check_supervaluation<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> SupervaluationReport {
    let (pairs, mode) = phi.carrier.pairs(cfg);
    let (elems, _) = phi.carrier.elements(cfg);
    let mut r = Report::new(mode);
    for a in ["SV1", "SV2", "SV3", "SV4"] {
        r.check(a);
    }
    let (d, u) = (&phi.domain, &phi.target);
    if phi.eval(&d.zero()) != u.zero() {
        r.witness("SV1", vec![], format!("φ(0) = {:?}", phi.eval(&d.zero())));
    }
    if phi.eval(&d.one()) != u.one() {
        r.witness("SV2", vec![], format!("φ(1) = {:?}", phi.eval(&d.one())));
    }
    for (a, b) in &pairs {
        let (fa, fb) = (phi.eval(a), phi.eval(b));
        let fab = phi.eval(&d.mul(a, b));
        if fab != u.mul(&fa, &fb) {
            r.witness("SV3", inputs![a, b], format!("φ(ab) = {fab:?}"));
        }
        let lhs = u.nu(&phi.eval(&d.add(a, b)));
        let rhs = u.nu(&u.add(&fa, &fb));
        if !u.le(&lhs, &rhs) {
            r.witness("SV4", inputs![a, b], format!("eφ(a+b) = {lhs:?}, e(φ(a)+φ(b)) = {rhs:?}"));
        }
    }
    let values: Vec<U::Elem> = elems.iter().chain([d.one()].iter()).map(|a| phi.eval(a)).collect();
    let kind = if values.iter().all(|x| u.is_ghost_or_zero(x)) {
        SupervaluationKind::Ghost
    } else if values.iter().all(|x| *x == u.zero() || u.is_tangible(x)) {
        SupervaluationKind::Tangible
    } else {
        SupervaluationKind::Mixed
    };
    SupervaluationReport { report: r, kind }
}

/// SV5: φ(a) + φ(b) tangible ⇒ φ(a) + φ(b) = φ(a + b).
pub fn is_tangibly_additive<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = phi.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("SV5");
    let u = &phi.target;
    for (a, b) in &pairs {
        let s = u.add(&phi.eval(a), &phi.eval(b));
        if u.is_tangible(&s) {
            let fab = phi.eval(&phi.domain.add(a, b));
            if fab != s {
                r.witness("SV5", inputs![a, b], format!("φ(a)+φ(b) = {s:?}, φ(a+b) = {fab:?}"));
            }
        }
    }
    r
}

/// SV5*: eφ(a) < eφ(b) ⇒ φ(a + b) = φ(b).
pub fn is_very_strong<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = phi.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("SV5*");
    let u = &phi.target;
    for (a, b) in &pairs {
        let (fa, fb) = (phi.eval(a), phi.eval(b));
        if u.lt(&u.nu(&fa), &u.nu(&fb)) {
            let fab = phi.eval(&phi.domain.add(a, b));
            if fab != fb {
                r.witness("SV5*", inputs![a, b], format!("φ(a+b) = {fab:?}, φ(b) = {fb:?}"));
            }
        }
    }
    r
}

/// Strong supervaluation: SV1–SV4, SV5 and a strong cover.
pub fn check_strong_supervaluation<R, U>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> Report
where
    R: Semiring + Clone,
    U: Semiring + Clone + Send + Sync + 'static,
{
    let mut r = check_supervaluation(phi, cfg).report;
    r.absorb(is_tangibly_additive(phi, cfg));
    r.absorb(is_strong(&cover_of(phi), cfg));
    r
}

// ---------------------------------------------------------------------------
// The initial cover
// ---------------------------------------------------------------------------

/// Keep the elements of a carrier that satisfy a predicate.
pub fn filter_carrier<E>(c: &Carrier<E>, keep: Arc<dyn Fn(&E) -> bool + Send + Sync>) -> Carrier<E>
where
    E: Clone + Send + Sync + 'static,
{
    if let Some(all) = c.all() {
        return Carrier::finite(all.iter().filter(|x| keep(x)).cloned().collect());
    }
    let c = c.clone();
    Carrier::sampled(move |rng: &mut ChaCha8Rng| loop {
        let x = c.draw(rng);
        if keep(&x) {
            return x;
        }
    })
}

/// R ∖ 𝔮 under multiplication.
pub struct NonSupport<R: Semiring> {
    pub ring: R,
    carrier: Carrier<R::Elem>,
}

impl<R: Semiring + Clone> Clone for NonSupport<R> {
    fn clone(&self) -> Self {
        NonSupport { ring: self.ring.clone(), carrier: self.carrier.clone() }
    }
}

impl<R: Semiring> Monoid for NonSupport<R> {
    type Elem = R::Elem;
    fn unit(&self) -> R::Elem {
        self.ring.one()
    }
    fn op(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.mul(a, b)
    }
    fn carrier(&self) -> Carrier<R::Elem> {
        self.carrier.clone()
    }
}

/// The nonzero values of M ordered by the semiring's own order. The
/// carrier is the image of the valuation off its support.
pub struct NonzeroValues<M: Semiring> {
    pub m: M,
    carrier: Carrier<M::Elem>,
}

impl<M: Semiring + Clone> Clone for NonzeroValues<M> {
    fn clone(&self) -> Self {
        NonzeroValues { m: self.m.clone(), carrier: self.carrier.clone() }
    }
}

impl<M: Semiring + Clone + Send + Sync + 'static> NonzeroValues<M> {
    /// Every nonzero element of M.
    pub fn all(m: M) -> Self {
        let z = m.zero();
        let carrier = filter_carrier(&m.carrier(), Arc::new(move |x: &M::Elem| *x != z));
        NonzeroValues { m, carrier }
    }
}

impl<M: Semiring + Clone + Send + Sync + 'static> Monoid for NonzeroValues<M> {
    type Elem = M::Elem;
    fn unit(&self) -> M::Elem {
        self.m.one()
    }
    fn op(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.m.mul(a, b)
    }
    fn carrier(&self) -> Carrier<M::Elem> {
        self.carrier.clone()
    }
}

impl<M: Semiring + Clone + Send + Sync + 'static> OrderedMonoid for NonzeroValues<M> {
    fn compare(&self, a: &M::Elem, b: &M::Elem) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if self.m.le(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

pub type InitialCover<R, M> = Str<NonSupport<R>, NonzeroValues<M>>;

/// U(v) = STR(R ∖ 𝔮, M ∖ {0}, v) and φ_v(a) = a off the support, 0 on it.
pub fn initial_cover<R, M>(
    v: &MValuationInstance<R, M>,
    cfg: &CheckConfig,
) -> Result<Supervaluation<R, InitialCover<R, M>>, StrError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let (map, mz) = (v.map.clone(), v.target.zero());
    let off_support = Arc::new(move |a: &R::Elem| map(a) != mz);
    let t = NonSupport { ring: v.domain.clone(), carrier: filter_carrier(&v.carrier, off_support.clone()) };
    let map = v.map.clone();
    let image = t.carrier.map(move |a| map(a));
    let image = match image.all() {
        Some(all) => {
            let mut d: Vec<M::Elem> = Vec::new();
            for x in all {
                if !d.contains(x) {
                    d.push(x.clone());
                }
            }
            Carrier::finite(d)
        }
        None => image,
    };
    let map = v.map.clone();
    let g = NonzeroValues { m: v.target.clone(), carrier: image };
    let u = str_construct(t, g, move |a: &R::Elem| map(a), cfg)?;
    let phi = Supervaluation::new(format!("φ_{}", v.name), v.domain.clone(), u, move |a: &R::Elem| {
        if off_support(a) {
            STElement::Tangible(a.clone())
        } else {
            STElement::Zero
        }
    })
    .with_carrier(v.carrier.clone());
    Ok(phi)
}

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("domain carrier is not finite")]
    NotFinite,
    #[error("the listed domain is not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Table(#[from] SupertropicalError),
}

/// φ_v: R → U(v) as a finite table, for a finite domain listed by the
/// carrier of v. Tangibles are the elements off the support, ghosts the
/// nonzero values; a tangible product inside the support is 0. This also
/// covers m-valuations whose value monoid is not cancellative.
pub fn initial_cover_table<R, M>(v: &MValuationInstance<R, M>) -> Result<Supervaluation<R, FiniteSupertropical>, CoverError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    initial_cover_table_named(v, |m: &M::Elem| format!("{m:?}ν"))
}

/// As [`initial_cover_table`], naming each ghost other than e by `ghost_name`.
pub fn initial_cover_table_named<R, M>(
    v: &MValuationInstance<R, M>,
    ghost_name: impl Fn(&M::Elem) -> String,
) -> Result<Supervaluation<R, FiniteSupertropical>, CoverError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    cover_table_by_classes(v, |a: &R::Elem, b: &R::Elem| a == b, ghost_name)
}

/// As [`initial_cover_table_named`], with tangibles the classes of R ∖ 𝔮
/// under `same`, each named by its first listed member. `same` must be a
/// multiplicative equivalence that refines the fibers of v.
pub fn cover_table_by_classes<R, M>(
    v: &MValuationInstance<R, M>,
    same: impl Fn(&R::Elem, &R::Elem) -> bool + Send + Sync + 'static,
    ghost_name: impl Fn(&M::Elem) -> String,
) -> Result<Supervaluation<R, FiniteSupertropical>, CoverError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let all = v.carrier.all().ok_or(CoverError::NotFinite)?;
    let (ring, m) = (&v.domain, &v.target);
    let mz = m.zero();
    let mut tangibles: Vec<R::Elem> = Vec::new();
    let mut ghosts: Vec<M::Elem> = Vec::new();
    for a in all {
        let va = v.eval(a);
        if va == mz {
            continue;
        }
        if !tangibles.iter().any(|t| same(t, a)) {
            tangibles.push(a.clone());
        }
        if !ghosts.contains(&va) {
            ghosts.push(va);
        }
    }
    let (nt, ng) = (tangibles.len(), ghosts.len());
    let n = 1 + nt + ng;
    let value = |x: usize| -> M::Elem {
        if x == 0 {
            mz.clone()
        } else if x <= nt {
            v.eval(&tangibles[x - 1])
        } else {
            ghosts[x - 1 - nt].clone()
        }
    };
    let ghost_index = |g: &M::Elem| -> Result<usize, CoverError> {
        if *g == mz {
            return Ok(0);
        }
        ghosts.iter().position(|h| h == g).map(|j| 1 + nt + j).ok_or_else(|| CoverError::NotClosed(format!("{g:?}")))
    };
    let mut mul = vec![vec![0; n]; n];
    let mut add = vec![vec![0; n]; n];
    let nu: Vec<usize> = (0..n).map(|x| ghost_index(&value(x))).collect::<Result<_, _>>()?;
    for x in 0..n {
        for y in 0..n {
            mul[x][y] = if x == 0 || y == 0 {
                0
            } else if x <= nt && y <= nt {
                let d = ring.mul(&tangibles[x - 1], &tangibles[y - 1]);
                if v.eval(&d) == mz {
                    0
                } else {
                    1 + tangibles.iter().position(|t| same(t, &d)).ok_or_else(|| CoverError::NotClosed(tidy(&format!("{d:?}"))))?
                }
            } else {
                ghost_index(&m.mul(&value(x), &value(y)))?
            };
            add[x][y] = if x == 0 {
                y
            } else if y == 0 {
                x
            } else if nu[x] == nu[y] {
                nu[x]
            } else if m.le(&value(x), &value(y)) {
                y
            } else {
                x
            };
        }
    }
    let one = match ring.one() {
        o if v.eval(&o) == mz => 0,
        o => 1 + tangibles.iter().position(|t| same(t, &o)).ok_or_else(|| CoverError::NotClosed("1".into()))?,
    };
    let mone = m.one();
    let mut names = vec!["0".to_string()];
    names.extend(tangibles.iter().map(|a| tidy(&format!("{a:?}"))));
    names.extend(ghosts.iter().map(|g| if *g == mone { "e".to_string() } else { ghost_name(g) }));
    let table = crate::order::FiniteSemiringTable { names, zero: 0, one, add, mul, e: None, nu: None };
    let u = FiniteSupertropical::from_table(table)?;
    Ok(Supervaluation::new(format!("φ_{}", v.name), ring.clone(), u, move |a: &R::Elem| {
        tangibles.iter().position(|t| same(t, a)).map(|i| i + 1).unwrap_or(0)
    })
    .with_carrier(v.carrier.clone()))
}

// ---------------------------------------------------------------------------
// Dominance and transmissions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct DominanceReport {
    pub d1: Vec<Witness>,
    pub d2: Vec<Witness>,
    pub d3: Vec<Witness>,
    pub mode: Mode,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.d1.is_empty() && self.d2.is_empty() && self.d3.is_empty()
    }
}

fn push_capped(v: &mut Vec<Witness>, axiom: &str, inputs: Vec<String>, detail: String) {
    if v.len() < 32 {
        let inputs = inputs.iter().map(|s| tidy(s)).collect();
        v.push(Witness { axiom: axiom.into(), inputs, detail: tidy(&detail) });
    }
}

/// D1 φ(a) = φ(b) ⇒ ψ(a) = ψ(b); D2 eφ(a) ≤ eφ(b) ⇒ eψ(a) ≤ eψ(b);
/// D3 φ(a) ∈ eU ⇒ ψ(a) ∈ eV.
pub fn check_dominance<R: Semiring, U: Semiring, V: Semiring>(
    phi: &Supervaluation<R, U>,
    psi: &Supervaluation<R, V>,
    cfg: &CheckConfig,
) -> DominanceReport {
    let (pairs, mode) = phi.carrier.pairs(cfg);
    let (elems, _) = phi.carrier.elements(cfg);
    let (u, w) = (&phi.target, &psi.target);
    let mut rep = DominanceReport { d1: vec![], d2: vec![], d3: vec![], mode };
    for (a, b) in &pairs {
        let (fa, fb, sa, sb) = (phi.eval(a), phi.eval(b), psi.eval(a), psi.eval(b));
        if fa == fb && sa != sb {
            push_capped(&mut rep.d1, "D1", inputs![a, b], format!("ψ: {sa:?} ≠ {sb:?}"));
        }
        if u.le(&u.nu(&fa), &u.nu(&fb)) && !w.le(&w.nu(&sa), &w.nu(&sb)) {
            push_capped(&mut rep.d2, "D2", inputs![a, b], String::new());
        }
    }
    for a in &elems {
        if u.is_ghost_or_zero(&phi.eval(a)) && !w.is_ghost_or_zero(&psi.eval(a)) {
            push_capped(&mut rep.d3, "D3", inputs![a], format!("ψ(a) = {:?}", psi.eval(a)));
        }
    }
    rep
}

/// A map α: U → V between supertropical semirings.
pub struct Transmission<U: Semiring, V: Semiring> {
    pub name: String,
    pub source: U,
    pub target: V,
    pub map: MapFn<U::Elem, V::Elem>,
}

impl<U: Semiring + Clone, V: Semiring + Clone> Clone for Transmission<U, V> {
    fn clone(&self) -> Self {
        Transmission { name: self.name.clone(), source: self.source.clone(), target: self.target.clone(), map: self.map.clone() }
    }
}

impl<U: Semiring, V: Semiring> Transmission<U, V> {
    pub fn new(name: impl Into<String>, source: U, target: V, map: impl Fn(&U::Elem) -> V::Elem + Send + Sync + 'static) -> Self {
        Transmission { name: name.into(), source, target, map: Arc::new(map) }
    }

    pub fn apply(&self, x: &U::Elem) -> V::Elem {
        (self.map)(x)
    }

    /// α^ν, the restriction to eU.
    pub fn ghost_part(&self, x: &U::Elem) -> V::Elem {
        self.apply(&self.source.nu(x))
    }

    /// β∘α.
    pub fn then<W: Semiring>(&self, beta: &Transmission<V, W>) -> Transmission<U, W>
    where
        U: Clone,
        W: Clone,
        U::Elem: 'static,
    {
        let (a, b) = (self.map.clone(), beta.map.clone());
        Transmission::new(format!("{}∘{}", beta.name, self.name), self.source.clone(), beta.target.clone(), move |x| b(&a(x)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransmissionReport {
    pub report: Report,
    /// α(x + y) = α(x) + α(y) on every checked pair.
    pub is_homomorphism: bool,
    /// α^ν injective on the checked ghosts.
    pub ghost_part_injective: bool,
}

/// TM1–TM5, plus the two additivity cases that always hold for a
/// transmission: ex = ey, and α(x) + α(y) tangible.
pub fn check_transmission<U: Semiring, V: Semiring>(alpha: &Transmission<U, V>, cfg: &CheckConfig) -> TransmissionReport {
    let (pairs, mode) = alpha.source.carrier().pairs(cfg);
    let mut r = Report::new(mode);
    for a in ["TM1", "TM2", "TM3", "TM4", "TM5", "eU ↦ eV", "additive when ex = ey", "additive when sum tangible"] {
        r.check(a);
    }
    let (u, v) = (&alpha.source, &alpha.target);
    if alpha.apply(&u.zero()) != v.zero() {
        r.witness("TM1", vec![], "");
    }
    if alpha.apply(&u.one()) != v.one() {
        r.witness("TM2", vec![], format!("α(1) = {:?}", alpha.apply(&u.one())));
    }
    if alpha.apply(&u.e()) != v.e() {
        r.witness("TM4", vec![], format!("α(e) = {:?}", alpha.apply(&u.e())));
    }
    let mut homomorphism = true;
    let mut ghost_images: Vec<(U::Elem, V::Elem)> = Vec::new();
    let mut injective = true;
    for (x, y) in &pairs {
        let (ax, ay) = (alpha.apply(x), alpha.apply(y));
        if alpha.apply(&u.mul(x, y)) != v.mul(&ax, &ay) {
            r.witness("TM3", inputs![x, y], "");
        }
        let (gx, gy) = (u.nu(x), u.nu(y));
        let (agx, agy) = (alpha.apply(&gx), alpha.apply(&gy));
        if !v.is_ghost_or_zero(&agx) {
            r.witness("eU ↦ eV", inputs![gx], format!("α = {agx:?}"));
        }
        if alpha.apply(&u.add(&gx, &gy)) != v.add(&agx, &agy) {
            r.witness("TM5", inputs![gx, gy], "");
        }
        if !ghost_images.iter().any(|(g, _)| *g == gx) {
            ghost_images.push((gx.clone(), agx.clone()));
        }
        let sum_ok = alpha.apply(&u.add(x, y)) == v.add(&ax, &ay);
        homomorphism &= sum_ok;
        if !sum_ok && gx == gy {
            r.witness("additive when ex = ey", inputs![x, y], "");
        }
        if !sum_ok && v.is_tangible(&v.add(&ax, &ay)) {
            r.witness("additive when sum tangible", inputs![x, y], "");
        }
    }
    for (i, (g, ag)) in ghost_images.iter().enumerate() {
        for (h, ah) in &ghost_images[i + 1..] {
            if g != h && ag == ah {
                injective = false;
            }
        }
    }
    TransmissionReport { report: r, is_homomorphism: homomorphism, ghost_part_injective: injective }
}

/// α∘φ.
pub fn compose<R: Semiring + Clone, U: Semiring, V: Semiring + Clone>(
    alpha: &Transmission<U, V>,
    phi: &Supervaluation<R, U>,
) -> Supervaluation<R, V> {
    let (a, f) = (alpha.map.clone(), phi.map.clone());
    Supervaluation::new(format!("{}∘{}", alpha.name, phi.name), phi.domain.clone(), alpha.target.clone(), move |x| a(&f(x)))
        .with_carrier(phi.carrier.clone())
}

#[derive(Debug, Error)]
pub enum TransmissionError {
    #[error("insufficient evidence: dominance was only sampled")]
    InsufficientEvidence,
    #[error("φ does not dominate ψ")]
    NotDominated(DominanceReport),
    #[error("φ is not surjective; missing {0:?}")]
    NotSurjective(Vec<String>),
    #[error("transmission not well defined at {0}")]
    NotWellDefined(String),
}

/// The unique α with ψ = α∘φ and α∘ν = ν∘α, glued from β: φ(a) ↦ ψ(a) and
/// γ: eφ(a) ↦ eψ(a). Needs exhaustive dominance and φ surjective.
pub fn derive_transmission<R: Semiring + Clone, V: Semiring + Clone>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    psi: &Supervaluation<R, V>,
    cfg: &CheckConfig,
) -> Result<Transmission<FiniteSupertropical, V>, TransmissionError> {
    let dom = check_dominance(phi, psi, cfg);
    if !dom.mode.is_exhaustive() {
        return Err(TransmissionError::InsufficientEvidence);
    }
    if !dom.passed() {
        return Err(TransmissionError::NotDominated(dom));
    }
    let u = &phi.target;
    let w = &psi.target;
    let (elems, _) = phi.carrier.elements(cfg);
    let mut image: Vec<Option<V::Elem>> = vec![None; u.len()];
    let mut assign = |x: usize, y: V::Elem| -> Result<(), TransmissionError> {
        match &image[x] {
            Some(old) if *old != y => Err(TransmissionError::NotWellDefined(u.name(x).to_string())),
            _ => {
                image[x] = Some(y);
                Ok(())
            }
        }
    };
    for a in elems.iter().chain([phi.domain.zero(), phi.domain.one()].iter()) {
        let (fa, sa) = (phi.eval(a), psi.eval(a));
        assign(fa, sa.clone())?;
        assign(u.nu[fa], w.nu(&sa))?;
    }
    let missing: Vec<String> = (0..u.len()).filter(|&x| image[x].is_none()).map(|x| u.name(x).to_string()).collect();
    if !missing.is_empty() {
        return Err(TransmissionError::NotSurjective(missing));
    }
    let image: Vec<V::Elem> = image.into_iter().map(|x| x.expect("assigned")).collect();
    Ok(Transmission::new(format!("α[{}←{}]", psi.name, phi.name), u.clone(), w.clone(), move |x: &usize| image[*x].clone()))
}

/// ν_U as a transmission U → eU.
pub fn ghost_transmission<U: Semiring + Clone + Send + Sync + 'static>(u: &U) -> Transmission<U, GhostIdeal<U>> {
    let s = u.clone();
    Transmission::new("ν", u.clone(), GhostIdeal(u.clone()), move |x| s.nu(x))
}

#[derive(Debug, Error)]
#[error("L violates {axiom}: {witness:?}")]
pub struct SubmonoidError {
    pub axiom: String,
    pub witness: Vec<String>,
}

/// x ↦ x if ex ∈ L, ex otherwise, after checking that L is a submonoid of
/// M = eU and M·(M ∖ L) ⊆ M ∖ L on the checked ghosts.
pub fn fiber_contraction_l<U>(
    u: &U,
    l: impl Fn(&U::Elem) -> bool + Send + Sync + 'static,
    cfg: &CheckConfig,
) -> Result<Transmission<U, U>, SubmonoidError>
where
    U: Semiring + Clone + Send + Sync + 'static,
{
    let fail = |axiom: &str, witness: Vec<String>| SubmonoidError { axiom: axiom.into(), witness };
    if !l(&u.e()) {
        return Err(fail("1 ∈ L", vec![]));
    }
    let ghosts = GhostIdeal(u.clone()).carrier();
    let (pairs, _) = ghosts.pairs(cfg);
    for (x, y) in &pairs {
        let xy = u.mul(x, y);
        if l(x) && l(y) && !l(&xy) {
            return Err(fail("L·L ⊆ L", inputs![x, y]));
        }
        if !l(y) && l(&xy) {
            return Err(fail("M·(M∖L) ⊆ M∖L", inputs![x, y]));
        }
    }
    let s = u.clone();
    Ok(Transmission::new("α_L", u.clone(), u.clone(), move |x| {
        let ex = s.nu(x);
        if l(&ex) {
            x.clone()
        } else {
            ex
        }
    }))
}

/// L = {x ∈ M : x ≥ h for some h ∈ H}, with H given by enough of its
/// elements to reach below every value in question.
pub fn upper_set_of<M: Semiring + Send + Sync + 'static>(m: M, h: Vec<M::Elem>) -> impl Fn(&M::Elem) -> bool + Send + Sync + 'static {
    move |x| *x != m.zero() && h.iter().any(|g| m.le(g, x))
}
