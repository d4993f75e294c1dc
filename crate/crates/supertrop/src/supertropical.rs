//! Supertropical semirings: the STR(T, G, v) presentation, D(G), finite
//! supertropical tables and their validators.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::inputs;
use crate::order::{
    check_semiring_axioms, FiniteSemiringTable, Monoid, OrderedMonoid, Semiring, TableError,
};
use crate::report::{Carrier, CheckConfig, Mode, Report};

pub mod fixtures;

/// An element of STR(T, G, v). Tangible and ghost payloads never compare
/// equal, even when the ghost is ν of the tangible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum STElement<T, G> {
    Zero,
    Tangible(T),
    Ghost(G),
}

impl<T: fmt::Debug, G: fmt::Debug> fmt::Debug for STElement<T, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            STElement::Zero => write!(f, "0"),
            STElement::Tangible(t) => write!(f, "{t:?}"),
            STElement::Ghost(g) => write!(f, "[{g:?}]ν"),
        }
    }
}

pub type NuFn<T, G> = Arc<dyn Fn(&T) -> G + Send + Sync>;

/// STR(T, G, v): tangibles T, ghosts G, and v: T → G.
pub struct Str<T: Monoid, G: OrderedMonoid> {
    pub tangibles: T,
    pub ghosts: G,
    pub v: NuFn<T::Elem, G::Elem>,
}

impl<T: Monoid + Clone, G: OrderedMonoid + Clone> Clone for Str<T, G> {
    fn clone(&self) -> Self {
        Str { tangibles: self.tangibles.clone(), ghosts: self.ghosts.clone(), v: self.v.clone() }
    }
}

#[derive(Debug, Error)]
pub enum StrError {
    #[error("v(1) is not 1")]
    UnitNotPreserved,
    #[error("v is not multiplicative on {0:?}")]
    NotMultiplicative(Vec<String>),
    #[error("ghost monoid is not cancellative: {0:?}")]
    NotCancellative(Vec<String>),
}

/// Build STR(T, G, v) after checking v(1) = 1, multiplicativity and
/// cancellativity of G.
pub fn str_construct<T: Monoid, G: OrderedMonoid>(
    t: T,
    g: G,
    v: impl Fn(&T::Elem) -> G::Elem + Send + Sync + 'static,
    cfg: &CheckConfig,
) -> Result<Str<T, G>, StrError> {
    if v(&t.unit()) != g.unit() {
        return Err(StrError::UnitNotPreserved);
    }
    let (pairs, _) = t.carrier().pairs(cfg);
    for (a, b) in &pairs {
        if v(&t.op(a, b)) != g.op(&v(a), &v(b)) {
            return Err(StrError::NotMultiplicative(inputs![a, b]));
        }
    }
    if let Some(w) = cancellative_witness(&g, cfg) {
        return Err(StrError::NotCancellative(w));
    }
    Ok(Str { tangibles: t, ghosts: g, v: Arc::new(v) })
}

/// A triple with x·z = y·z and x ≠ y, if one is found.
pub fn cancellative_witness<G: Monoid>(g: &G, cfg: &CheckConfig) -> Option<Vec<String>> {
    let c = g.carrier();
    let (trip, _) = c.triples(cfg);
    for (x, y, z) in &trip {
        if x != y && g.op(x, z) == g.op(y, z) {
            return Some(inputs![x, y, z]);
        }
    }
    None
}

/// D(G) = STR(G, G, id).
pub fn d_of<G: OrderedMonoid + Clone>(g: G) -> Str<G, G> {
    Str { tangibles: g.clone(), ghosts: g, v: Arc::new(|x: &G::Elem| x.clone()) }
}

impl<T: Monoid, G: OrderedMonoid> Str<T, G> {
    /// Value of x in G ∪ {0}; None stands for 0.
    pub fn ghost_value(&self, x: &STElement<T::Elem, G::Elem>) -> Option<G::Elem> {
        match x {
            STElement::Zero => None,
            STElement::Tangible(t) => Some((self.v)(t)),
            STElement::Ghost(g) => Some(g.clone()),
        }
    }

    /// Compare e·x with e·y.
    pub fn compare_nu(
        &self,
        x: &STElement<T::Elem, G::Elem>,
        y: &STElement<T::Elem, G::Elem>,
    ) -> Ordering {
        match (self.ghost_value(x), self.ghost_value(y)) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => self.ghosts.compare(&a, &b),
        }
    }
}

/// Addition: x if ex > ey, y if ex < ey, the ghost ex if they tie.
pub fn st_add<T: Monoid, G: OrderedMonoid>(
    s: &Str<T, G>,
    x: &STElement<T::Elem, G::Elem>,
    y: &STElement<T::Elem, G::Elem>,
) -> STElement<T::Elem, G::Elem> {
    if *x == STElement::Zero {
        return y.clone();
    }
    if *y == STElement::Zero {
        return x.clone();
    }
    match s.compare_nu(x, y) {
        Ordering::Greater => x.clone(),
        Ordering::Less => y.clone(),
        Ordering::Equal => ghost_map(s, x),
    }
}

pub fn st_mul<T: Monoid, G: OrderedMonoid>(
    s: &Str<T, G>,
    x: &STElement<T::Elem, G::Elem>,
    y: &STElement<T::Elem, G::Elem>,
) -> STElement<T::Elem, G::Elem> {
    use STElement::*;
    match (x, y) {
        (Zero, _) | (_, Zero) => Zero,
        (Tangible(a), Tangible(b)) => Tangible(s.tangibles.op(a, b)),
        (Tangible(a), Ghost(m)) | (Ghost(m), Tangible(a)) => Ghost(s.ghosts.op(&(s.v)(a), m)),
        (Ghost(m), Ghost(n)) => Ghost(s.ghosts.op(m, n)),
    }
}

pub fn ghost_map<T: Monoid, G: OrderedMonoid>(
    s: &Str<T, G>,
    x: &STElement<T::Elem, G::Elem>,
) -> STElement<T::Elem, G::Elem> {
    match x {
        STElement::Zero => STElement::Zero,
        STElement::Tangible(t) => STElement::Ghost((s.v)(t)),
        STElement::Ghost(g) => STElement::Ghost(g.clone()),
    }
}

impl<T: Monoid, G: OrderedMonoid> Semiring for Str<T, G> {
    type Elem = STElement<T::Elem, G::Elem>;

    fn zero(&self) -> Self::Elem {
        STElement::Zero
    }
    fn one(&self) -> Self::Elem {
        STElement::Tangible(self.tangibles.unit())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        st_add(self, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        st_mul(self, a, b)
    }
    fn e(&self) -> Self::Elem {
        STElement::Ghost(self.ghosts.unit())
    }
    fn nu(&self, x: &Self::Elem) -> Self::Elem {
        ghost_map(self, x)
    }
    fn is_ghost_or_zero(&self, x: &Self::Elem) -> bool {
        !matches!(x, STElement::Tangible(_))
    }
    fn carrier(&self) -> Carrier<Self::Elem> {
        let tc = self.tangibles.carrier();
        let gc = self.ghosts.carrier();
        if let (Some(ts), Some(gs)) = (tc.all(), gc.all()) {
            let mut v = vec![STElement::Zero];
            v.extend(ts.iter().cloned().map(STElement::Tangible));
            v.extend(gs.iter().cloned().map(STElement::Ghost));
            return Carrier::finite(v);
        }
        Carrier::sampled(move |rng: &mut ChaCha8Rng| match rng.gen_range(0..10) {
            0 => STElement::Zero,
            1..=5 => STElement::Tangible(tc.draw(rng)),
            _ => STElement::Ghost(gc.draw(rng)),
        })
    }
}

// ---------------------------------------------------------------------------
// Finite supertropical tables
// ---------------------------------------------------------------------------

/// Outcome of the supertropical validator, with the derived partition.
#[derive(Debug, Clone, Serialize)]
pub struct SupertropicalReport {
    pub report: Report,
    pub e: String,
    pub tangibles: Vec<String>,
    pub ghosts: Vec<String>,
}

/// Axioms 1+1 = 1+1+1+1, a+a = b+b ⇒ a+b = a+a, and ea ≠ eb ⇒ a+b ∈ {a, b}.
/// Stored "e" and "nu" annotations are cross-checked when present.
pub fn check_supertropical_axioms(t: &FiniteSemiringTable) -> SupertropicalReport {
    let n = t.len();
    let mut r = Report::new(Mode::Exhaustive);
    for a in ["1+1 = 1+1+1+1", "a+a = b+b ⇒ a+b = a+a", "ea ≠ eb ⇒ a+b ∈ {a,b}"] {
        r.check(a);
    }
    let e = t.add[t.one][t.one];
    let four = t.add[e][e];
    if e != four {
        r.witness("1+1 = 1+1+1+1", vec![t.names[e].clone(), t.names[four].clone()], "");
    }
    for a in 0..n {
        for b in 0..n {
            let (aa, bb, ab) = (t.add[a][a], t.add[b][b], t.add[a][b]);
            if a < b && aa == bb && ab != aa {
                r.witness(
                    "a+a = b+b ⇒ a+b = a+a",
                    vec![t.names[a].clone(), t.names[b].clone()],
                    format!("a+b = {}, a+a = {}", t.names[ab], t.names[aa]),
                );
            }
            if a < b && t.mul[e][a] != t.mul[e][b] && ab != a && ab != b {
                r.witness(
                    "ea ≠ eb ⇒ a+b ∈ {a,b}",
                    vec![t.names[a].clone(), t.names[b].clone()],
                    format!("a+b = {}", t.names[ab]),
                );
            }
        }
    }
    if let Some(se) = t.e {
        r.check("stored e");
        if se != e {
            r.witness("stored e", vec![t.names[se].clone()], format!("1+1 = {}", t.names[e]));
        }
    }
    if let Some(nu) = &t.nu {
        r.check("stored nu");
        for x in 0..n {
            if nu[x] != t.mul[e][x] {
                r.witness("stored nu", vec![t.names[x].clone()], format!("e·x = {}", t.names[t.mul[e][x]]));
            }
        }
    }
    let ghost = |x: usize| t.mul[e][x] == x;
    SupertropicalReport {
        report: r,
        e: t.names[e].clone(),
        tangibles: (0..n).filter(|&x| !ghost(x)).map(|x| t.names[x].clone()).collect(),
        ghosts: (0..n).filter(|&x| ghost(x) && x != t.zero).map(|x| t.names[x].clone()).collect(),
    }
}

#[derive(Debug, Error)]
pub enum SupertropicalError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("not a semiring: {}", .0.witnesses.first().map(|w| w.axiom.as_str()).unwrap_or("?"))]
    NotSemiring(Report),
    #[error("not supertropical: {}", .0.witnesses.first().map(|w| w.axiom.as_str()).unwrap_or("?"))]
    NotSupertropical(Report),
}

/// A validated finite supertropical semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSupertropical {
    pub table: FiniteSemiringTable,
    pub e: usize,
    pub nu: Vec<usize>,
}

impl FiniteSupertropical {
    pub fn from_table(mut t: FiniteSemiringTable) -> Result<Self, SupertropicalError> {
        let sr = check_semiring_axioms(&t)?;
        if !sr.passed() {
            return Err(SupertropicalError::NotSemiring(sr));
        }
        let st = check_supertropical_axioms(&t);
        if !st.report.passed() {
            return Err(SupertropicalError::NotSupertropical(st.report));
        }
        let e = t.add[t.one][t.one];
        let nu: Vec<usize> = (0..t.len()).map(|x| t.mul[e][x]).collect();
        t.e = Some(e);
        t.nu = Some(nu.clone());
        Ok(FiniteSupertropical { table: t, e, nu })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.table.names[i]
    }

    pub fn is_ghost(&self, x: usize) -> bool {
        self.nu[x] == x
    }

    pub fn tangibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !self.is_ghost(x)).collect()
    }

    /// Nonzero ghosts.
    pub fn ghosts(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_ghost(x) && x != self.table.zero).collect()
    }

    /// eU, including 0.
    pub fn ghost_ideal_elems(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_ghost(x)).collect()
    }

    /// Order of ghosts by the table's own addition.
    pub fn ghost_le(&self, a: usize, b: usize) -> bool {
        self.table.add[a][b] == b
    }

    /// The ghost ideal eU as a table; e is its unit.
    pub fn ghost_ideal(&self) -> FiniteSemiringTable {
        self.table.restrict(&self.ghost_ideal_elems(), self.e).expect("eU is closed under + and ·")
    }

    /// Indices sharing a ν-value with x.
    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.nu[y] == self.nu[x]).collect()
    }

    /// The ν-fibers, each sorted, listed by their ghost in index order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        self.ghost_ideal_elems().into_iter().map(|g| self.fiber(g)).collect()
    }
}

impl Semiring for FiniteSupertropical {
    type Elem = usize;
    fn zero(&self) -> usize {
        self.table.zero
    }
    fn one(&self) -> usize {
        self.table.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.table.add[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table.mul[*a][*b]
    }
    fn carrier(&self) -> Carrier<usize> {
        Carrier::finite((0..self.len()).collect())
    }
    fn e(&self) -> usize {
        self.e
    }
    fn nu(&self, x: &usize) -> usize {
        self.nu[*x]
    }
}

/// Rebuild the addition table from multiplication, e and the order of eU.
pub fn reconstruct_addition(u: &FiniteSupertropical) -> Vec<Vec<usize>> {
    let n = u.len();
    let z = u.table.zero;
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (u.table.mul[u.e][x], u.table.mul[u.e][y]);
            out[x][y] = if x == z {
                y
            } else if y == z {
                x
            } else if ex == ey {
                ex
            } else if u.ghost_le(ex, ey) {
                y
            } else {
                x
            };
        }
    }
    out
}

/// 𝒯·𝒯 ⊆ 𝒯, and when it holds, cancellativity of e𝒯.
pub fn tangible_closed_check<S: Semiring>(s: &S, cfg: &CheckConfig) -> Report {
    let carrier = s.carrier();
    let (pairs, mode) = carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("tangibles closed");
    let tang: Vec<(S::Elem, S::Elem)> =
        pairs.into_iter().filter(|(a, b)| s.is_tangible(a) && s.is_tangible(b)).collect();
    for (a, b) in &tang {
        let p = s.mul(a, b);
        if !s.is_tangible(&p) {
            r.witness("tangibles closed", inputs![a, b], format!("product {p:?}"));
        }
    }
    if !r.passed() {
        return r;
    }
    r.check("e𝒯 cancellative");
    let (trip, _) = carrier.triples(cfg);
    for (a, b, c) in &trip {
        if !(s.is_tangible(a) && s.is_tangible(b) && s.is_tangible(c)) {
            continue;
        }
        let (ea, eb, ec) = (s.nu(a), s.nu(b), s.nu(c));
        if ea != eb && s.mul(&ea, &ec) == s.mul(&eb, &ec) {
            r.witness("e𝒯 cancellative", inputs![ea, eb, ec], "");
        }
    }
    r
}
