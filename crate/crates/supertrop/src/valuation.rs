//! m-valuations v: R → M into bipotent semirings and their checkers.

use std::sync::Arc;

use crate::inputs;
use crate::order::{FiniteSemiringTable, Semiring};
use crate::report::{Carrier, CheckConfig, Mode, Report};
use crate::supertropical::FiniteSupertropical;

pub type MapFn<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;

/// A map v: R → M together with where to draw elements of R from.
pub struct MValuationInstance<R: Semiring, M: Semiring> {
    pub name: String,
    pub domain: R,
    pub target: M,
    pub map: MapFn<R::Elem, M::Elem>,
    pub carrier: Carrier<R::Elem>,
    /// Human description of v⁻¹(0) when known.
    pub support_description: Option<String>,
}

impl<R: Semiring + Clone, M: Semiring + Clone> Clone for MValuationInstance<R, M> {
    fn clone(&self) -> Self {
        MValuationInstance {
            name: self.name.clone(),
            domain: self.domain.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
            carrier: self.carrier.clone(),
            support_description: self.support_description.clone(),
        }
    }
}

impl<R: Semiring, M: Semiring> MValuationInstance<R, M> {
    pub fn new(
        name: impl Into<String>,
        domain: R,
        target: M,
        map: impl Fn(&R::Elem) -> M::Elem + Send + Sync + 'static,
    ) -> Self {
        let carrier = domain.carrier();
        MValuationInstance {
            name: name.into(),
            domain,
            target,
            map: Arc::new(map),
            carrier,
            support_description: None,
        }
    }

    pub fn with_carrier(mut self, carrier: Carrier<R::Elem>) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn with_support(mut self, description: impl Into<String>) -> Self {
        self.support_description = Some(description.into());
        self
    }

    pub fn eval(&self, a: &R::Elem) -> M::Elem {
        (self.map)(a)
    }

    /// Same domain and target with a different map.
    pub fn remap(&self, name: &str, map: impl Fn(&R::Elem) -> M::Elem + Send + Sync + 'static) -> Self
    where
        R: Clone,
        M: Clone,
    {
        MValuationInstance {
            name: name.into(),
            domain: self.domain.clone(),
            target: self.target.clone(),
            map: Arc::new(map),
            carrier: self.carrier.clone(),
            support_description: None,
        }
    }
}

/// V1 v(0) = 0, V2 v(1) = 1, V3 v(xy) = v(x)v(y), V4 v(x+y) ≤ v(x) + v(y).
pub fn check_mvaluation<R: Semiring, M: Semiring>(v: &MValuationInstance<R, M>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = v.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    for a in ["V1", "V2", "V3", "V4"] {
        r.check(a);
    }
    let (d, m) = (&v.domain, &v.target);
    if v.eval(&d.zero()) != m.zero() {
        r.witness("V1", vec![], format!("v(0) = {:?}", v.eval(&d.zero())));
    }
    if v.eval(&d.one()) != m.one() {
        r.witness("V2", vec![], format!("v(1) = {:?}", v.eval(&d.one())));
    }
    for (x, y) in &pairs {
        let (vx, vy) = (v.eval(x), v.eval(y));
        let vxy = v.eval(&d.mul(x, y));
        if vxy != m.mul(&vx, &vy) {
            r.witness("V3", inputs![x, y], format!("v(xy) = {vxy:?}"));
        }
        let vs = v.eval(&d.add(x, y));
        if !m.le(&vs, &m.add(&vx, &vy)) {
            r.witness("V4", inputs![x, y], format!("v(x+y) = {vs:?}"));
        }
    }
    r
}

/// V5: v(x+y) = v(x) + v(y).
pub fn is_strict<R: Semiring, M: Semiring>(v: &MValuationInstance<R, M>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = v.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("V5");
    for (x, y) in &pairs {
        let lhs = v.eval(&v.domain.add(x, y));
        let rhs = v.target.add(&v.eval(x), &v.eval(y));
        if lhs != rhs {
            r.witness("V5", inputs![x, y], format!("v(x+y) = {lhs:?}, v(x)+v(y) = {rhs:?}"));
        }
    }
    r
}

/// v(a+b) = max(v(a), v(b)) whenever v(a) ≠ v(b).
pub fn is_strong<R: Semiring, M: Semiring>(v: &MValuationInstance<R, M>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = v.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("strong");
    for (a, b) in &pairs {
        let (va, vb) = (v.eval(a), v.eval(b));
        if va == vb {
            continue;
        }
        let lhs = v.eval(&v.domain.add(a, b));
        let rhs = v.target.add(&va, &vb);
        if lhs != rhs {
            r.witness("strong", inputs![a, b], format!("v(a+b) = {lhs:?}, max = {rhs:?}"));
        }
    }
    r
}

/// Membership test for v⁻¹(0).
pub struct Support<'a, R: Semiring, M: Semiring> {
    v: &'a MValuationInstance<R, M>,
}

impl<R: Semiring, M: Semiring> Support<'_, R, M> {
    pub fn contains(&self, a: &R::Elem) -> bool {
        self.v.eval(a) == self.v.target.zero()
    }

    pub fn description(&self) -> Option<&str> {
        self.v.support_description.as_deref()
    }
}

pub fn support<R: Semiring, M: Semiring>(v: &MValuationInstance<R, M>) -> Support<'_, R, M> {
    Support { v }
}

/// Elements of the support seen among the samples, always including 0.
fn support_sample<R: Semiring, M: Semiring>(
    v: &MValuationInstance<R, M>,
    elems: &[R::Elem],
    cap: usize,
) -> Vec<R::Elem> {
    let s = support(v);
    let mut out = vec![v.domain.zero()];
    for a in elems {
        if out.len() >= cap {
            break;
        }
        if s.contains(a) && !out.contains(a) {
            out.push(a.clone());
        }
    }
    out
}

/// Support closed under +, absorbing ·, complement multiplicatively closed.
pub fn check_support_prime<R: Semiring, M: Semiring>(
    v: &MValuationInstance<R, M>,
    cfg: &CheckConfig,
) -> Report {
    let (pairs, mode) = v.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    for a in ["support additive", "support absorbing", "complement multiplicative"] {
        r.check(a);
    }
    let s = support(v);
    for (a, b) in &pairs {
        let (ia, ib) = (s.contains(a), s.contains(b));
        if ia && ib && !s.contains(&v.domain.add(a, b)) {
            r.witness("support additive", inputs![a, b], "");
        }
        if ia && !s.contains(&v.domain.mul(a, b)) {
            r.witness("support absorbing", inputs![a, b], "");
        }
        if !ia && !ib && s.contains(&v.domain.mul(a, b)) {
            r.witness("complement multiplicative", inputs![a, b], "");
        }
    }
    r
}

/// v(x + z) = v(x) for z in the support.
pub fn is_insensitive<R: Semiring, M: Semiring>(
    v: &MValuationInstance<R, M>,
    cfg: &CheckConfig,
) -> Report {
    let (elems, mode) = v.carrier.elements(cfg);
    let supp = support_sample(v, &elems, 24);
    let mut r = Report::new(mode);
    r.check("insensitive");
    for x in &elems {
        for z in &supp {
            let lhs = v.eval(&v.domain.add(x, z));
            if lhs != v.eval(x) {
                r.witness("insensitive", inputs![x, z], format!("v(x+z) = {lhs:?}, v(x) = {:?}", v.eval(x)));
            }
        }
    }
    r
}

/// v(a) ≤ v(b) ⇒ w(a) ≤ w(b). When both maps pass the strong check the
/// equality version is evaluated too and the two verdicts must agree.
pub fn dominates_mval<R: Semiring, M: Semiring, N: Semiring>(
    v: &MValuationInstance<R, M>,
    w: &MValuationInstance<R, N>,
    cfg: &CheckConfig,
) -> Report {
    let (pairs, mode) = v.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("dominance");
    let mut eq_fail = None;
    for (a, b) in &pairs {
        let (va, vb, wa, wb) = (v.eval(a), v.eval(b), w.eval(a), w.eval(b));
        if v.target.le(&va, &vb) && !w.target.le(&wa, &wb) {
            r.witness("dominance", inputs![a, b], format!("v: {va:?} ≤ {vb:?}, w: {wa:?} > {wb:?}"));
        }
        if eq_fail.is_none() && va == vb && wa != wb {
            eq_fail = Some(inputs![a, b]);
        }
    }
    if is_strong(v, cfg).passed() && is_strong(w, cfg).passed() {
        r.check("equality criterion agrees");
        let dominance_holds = !r.failed("dominance");
        if dominance_holds != eq_fail.is_none() {
            r.witness(
                "equality criterion agrees",
                eq_fail.unwrap_or_default(),
                format!("dominance {dominance_holds}, equality criterion {}", !dominance_holds),
            );
        }
    }
    r
}

/// γ with w = γ∘v, as an association on the observed image of v.
pub struct Gamma<A, B> {
    pub pairs: Vec<(A, B)>,
    pub mode: Mode,
}

impl<A: PartialEq + Clone, B: Clone> Gamma<A, B> {
    pub fn apply(&self, a: &A) -> Option<B> {
        self.pairs.iter().find(|(x, _)| x == a).map(|(_, y)| y.clone())
    }
}

/// Build γ_{w,v}; the error report carries well-definedness or morphism witnesses.
pub fn gamma_of<R: Semiring, M: Semiring, N: Semiring>(
    v: &MValuationInstance<R, M>,
    w: &MValuationInstance<R, N>,
    cfg: &CheckConfig,
) -> Result<Gamma<M::Elem, N::Elem>, Report> {
    let (elems, mode) = v.carrier.elements(cfg);
    let mut r = Report::new(mode);
    for a in ["well-defined", "multiplicative", "order preserving", "0 ↦ 0", "1 ↦ 1"] {
        r.check(a);
    }
    let mut pairs: Vec<(M::Elem, N::Elem)> = Vec::new();
    let d = &v.domain;
    for a in elems.iter().chain([d.zero(), d.one()].iter()) {
        let (va, wa) = (v.eval(a), w.eval(a));
        match pairs.iter().find(|(x, _)| *x == va) {
            Some((_, y)) if *y != wa => {
                r.witness("well-defined", inputs![a], format!("v = {va:?} already sent to {y:?}, w = {wa:?}"));
            }
            Some(_) => {}
            None => pairs.push((va, wa)),
        }
    }
    let g = Gamma { pairs, mode };
    let (m, n) = (&v.target, &w.target);
    if g.apply(&m.zero()).is_some_and(|z| z != n.zero()) {
        r.witness("0 ↦ 0", vec![], "");
    }
    if g.apply(&m.one()).is_some_and(|o| o != n.one()) {
        r.witness("1 ↦ 1", vec![], "");
    }
    for (x, gx) in &g.pairs {
        for (y, gy) in &g.pairs {
            if let Some(gxy) = g.apply(&m.mul(x, y)) {
                if gxy != n.mul(gx, gy) {
                    r.witness("multiplicative", inputs![x, y], "");
                }
            }
            if m.le(x, y) && !n.le(gx, gy) {
                r.witness("order preserving", inputs![x, y], "");
            }
        }
    }
    if r.passed() {
        Ok(g)
    } else {
        Err(r)
    }
}

/// The ghost map of a finite fixture as an m-valuation into its ghost ideal.
pub fn nu_valuation(u: &FiniteSupertropical) -> MValuationInstance<FiniteSupertropical, FiniteSemiringTable> {
    let ghosts = u.ghost_ideal_elems();
    let target = u.ghost_ideal();
    let nu = u.nu.clone();
    MValuationInstance::new("nu", u.clone(), target, move |x: &usize| {
        ghosts.iter().position(|&g| g == nu[*x]).expect("ν lands in eU")
    })
}

/// The identity of a semiring as a valuation on itself.
pub fn identity_valuation<S: Semiring + Clone>(s: &S) -> MValuationInstance<S, S> {
    MValuationInstance::new("identity", s.clone(), s.clone(), |x: &S::Elem| x.clone())
}
