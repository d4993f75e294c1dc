//! Ordered monoids, the bipotent semiring T(G), the order a ≤ b ⇔ a + b = b,
//! and finite semiring tables.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inputs;
use crate::report::{Carrier, CheckConfig, Mode, Report};

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Render a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Commutative monoid given behaviorally.
pub trait Monoid {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;
    fn unit(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn carrier(&self) -> Carrier<Self::Elem>;
}

/// Monoid with a total order, weakly compatible with the operation.
pub trait OrderedMonoid: Monoid {
    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
}

/// Commutative semiring given behaviorally.
pub trait Semiring {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn carrier(&self) -> Carrier<Self::Elem>;

    /// e = 1 + 1.
    fn e(&self) -> Self::Elem {
        self.add(&self.one(), &self.one())
    }

    /// Ghost map x ↦ e·x.
    fn nu(&self, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.e(), x)
    }

    /// Membership in eR, which contains 0.
    fn is_ghost_or_zero(&self, x: &Self::Elem) -> bool {
        self.nu(x) == *x
    }

    fn is_tangible(&self, x: &Self::Elem) -> bool {
        !self.is_ghost_or_zero(x)
    }

    /// a ≤ b in the order induced by addition.
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.add(a, b) == *b
    }

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.le(a, b)
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a);
        }
        out
    }
}

/// Result of comparing two elements under a ≤ b ⇔ a + b = b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRel {
    Less,
    Equal,
    Greater,
    Incomparable,
}

pub fn induced_order<S: Semiring + ?Sized>(r: &S, a: &S::Elem, b: &S::Elem) -> OrderRel {
    if a == b {
        return OrderRel::Equal;
    }
    let s = r.add(a, b);
    if s == *b {
        OrderRel::Less
    } else if s == *a {
        OrderRel::Greater
    } else {
        OrderRel::Incomparable
    }
}

/// A monoid element or the adjoined bottom 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WithZero<T> {
    Zero,
    Val(T),
}

/// T(G): an ordered monoid with a bottom adjoined and addition = max.
#[derive(Debug, Clone)]
pub struct TG<G> {
    pub monoid: G,
}

impl<G: OrderedMonoid> Semiring for TG<G> {
    type Elem = WithZero<G::Elem>;

    fn zero(&self) -> Self::Elem {
        WithZero::Zero
    }

    fn one(&self) -> Self::Elem {
        WithZero::Val(self.monoid.unit())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (WithZero::Zero, x) | (x, WithZero::Zero) => x.clone(),
            (WithZero::Val(x), WithZero::Val(y)) => {
                if self.monoid.compare(x, y) == Ordering::Less {
                    b.clone()
                } else {
                    a.clone()
                }
            }
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (WithZero::Val(x), WithZero::Val(y)) => WithZero::Val(self.monoid.op(x, y)),
            _ => WithZero::Zero,
        }
    }

    fn carrier(&self) -> Carrier<Self::Elem> {
        let inner = self.monoid.carrier();
        if let Some(all) = inner.all() {
            let mut v = vec![WithZero::Zero];
            v.extend(all.iter().cloned().map(WithZero::Val));
            return Carrier::finite(v);
        }
        Carrier::sampled(move |rng: &mut ChaCha8Rng| {
            if rng.gen_ratio(1, 10) {
                WithZero::Zero
            } else {
                WithZero::Val(inner.draw(rng))
            }
        })
    }
}

#[derive(Debug, Error)]
#[error("ordered monoid invariant failed: {}", .0.witnesses.first().map(|w| w.axiom.as_str()).unwrap_or("?"))]
pub struct MonoidError(pub Report);

/// Validate the ordered-monoid invariants of `g`.
pub fn check_ordered_monoid<G: OrderedMonoid>(g: &G, cfg: &CheckConfig) -> Report {
    let carrier = g.carrier();
    let (trip, mode) = carrier.triples(cfg);
    let mut r = Report::new(mode);
    for a in ["associative", "commutative", "unit", "total order", "weakly compatible"] {
        r.check(a);
    }
    let one = g.unit();
    for (x, y, z) in &trip {
        if g.op(&g.op(x, y), z) != g.op(x, &g.op(y, z)) {
            r.witness("associative", inputs![x, y, z], "");
        }
        if g.op(x, y) != g.op(y, x) {
            r.witness("commutative", inputs![x, y], "");
        }
        if g.op(x, &one) != *x {
            r.witness("unit", inputs![x], "");
        }
        let xy = g.compare(x, y);
        if xy != g.compare(y, x).reverse() || ((xy == Ordering::Equal) != (x == y)) {
            r.witness("total order", inputs![x, y], "antisymmetry");
        }
        if g.compare(x, y) != Ordering::Greater
            && g.compare(y, z) != Ordering::Greater
            && g.compare(x, z) == Ordering::Greater
        {
            r.witness("total order", inputs![x, y, z], "transitivity");
        }
        if g.compare(x, y) != Ordering::Greater
            && g.compare(&g.op(z, x), &g.op(z, y)) == Ordering::Greater
        {
            r.witness("weakly compatible", inputs![x, y, z], "");
        }
    }
    r
}

/// Build T(G), refusing monoids that break an invariant.
pub fn tg_from_monoid<G: OrderedMonoid>(g: G, cfg: &CheckConfig) -> Result<TG<G>, MonoidError> {
    let r = check_ordered_monoid(&g, cfg);
    if r.passed() {
        Ok(TG { monoid: g })
    } else {
        Err(MonoidError(r))
    }
}

/// The nonzero part of T(G), compared against G itself: products and order
/// must correspond under x ↦ Val(x).
pub fn check_round_trip<G: OrderedMonoid>(tg: &TG<G>, cfg: &CheckConfig) -> Report {
    let g = &tg.monoid;
    let (pairs, mode) = g.carrier().pairs(cfg);
    let mut r = Report::new(mode);
    r.check("product");
    r.check("order");
    if tg.one() != WithZero::Val(g.unit()) {
        r.witness("product", vec![], "unit");
    }
    for (x, y) in &pairs {
        let (vx, vy) = (WithZero::Val(x.clone()), WithZero::Val(y.clone()));
        if tg.mul(&vx, &vy) != WithZero::Val(g.op(x, y)) {
            r.witness("product", inputs![x, y], "");
        }
        let le_g = g.compare(x, y) != Ordering::Greater;
        if tg.le(&vx, &vy) != le_g {
            r.witness("order", inputs![x, y], "");
        }
    }
    if let Some(all) = tg.carrier().all() {
        let nonzero = all.iter().filter(|x| **x != WithZero::Zero).count();
        if Some(nonzero) != g.carrier().all().map(|a| a.len()) {
            r.witness("product", vec![], "cardinality mismatch after removing 0");
        }
    }
    r
}

/// Totality of the induced order and its compatibility with + and ·.
pub fn check_order_compatible<S: Semiring>(s: &S, cfg: &CheckConfig) -> Report {
    let (trip, mode) = s.carrier().triples(cfg);
    let mut r = Report::new(mode);
    r.check("total");
    r.check("compatible");
    for (a, b, c) in &trip {
        if induced_order(s, a, b) == OrderRel::Incomparable {
            r.witness("total", inputs![a, b], "");
        }
        if s.le(a, b) && (!s.le(&s.add(a, c), &s.add(b, c)) || !s.le(&s.mul(a, c), &s.mul(b, c))) {
            r.witness("compatible", inputs![a, b, c], "");
        }
    }
    r
}

// ---------------------------------------------------------------------------
// ϑ-values
// ---------------------------------------------------------------------------

/// ϑ^q for exact rational q, or the bottom 0. ϑ is a symbolic constant in
/// (0, 1), so larger exponents are smaller values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThetaValue(Option<Q>);

impl ThetaValue {
    pub fn zero() -> Self {
        ThetaValue(None)
    }

    pub fn one() -> Self {
        ThetaValue(Some(Q::zero()))
    }

    pub fn pow(exp: Q) -> Self {
        ThetaValue(Some(exp))
    }

    pub fn powi(n: i64) -> Self {
        ThetaValue(Some(qi(n)))
    }

    pub fn exponent(&self) -> Option<&Q> {
        self.0.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Some(p), Some(q)) => ThetaValue(Some(p + q)),
            _ => ThetaValue(None),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Quotient in the semifield; None for division by 0.
    pub fn div(&self, other: &Self) -> Option<Self> {
        match (&self.0, &other.0) {
            (_, None) => None,
            (None, Some(_)) => Some(ThetaValue(None)),
            (Some(p), Some(q)) => Some(ThetaValue(Some(p - q))),
        }
    }

    pub fn powu(&self, n: u32) -> Self {
        match &self.0 {
            None if n == 0 => ThetaValue::one(),
            None => ThetaValue(None),
            Some(p) => ThetaValue(Some(p * qi(n as i64))),
        }
    }
}

impl Ord for ThetaValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(p), Some(q)) => q.cmp(p),
        }
    }
}

impl PartialOrd for ThetaValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ThetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ThetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "0"),
            Some(p) if p.is_integer() => write!(f, "ϑ^{}", p.numer()),
            Some(p) => write!(f, "ϑ^({})", fmt_q(p)),
        }
    }
}

impl Serialize for ThetaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Random ϑ-value with exponent k/d, |k| ≤ 6, d ∈ {1, 2, 3}.
pub fn sample_theta(rng: &mut ChaCha8Rng, allow_zero: bool) -> ThetaValue {
    if allow_zero && rng.gen_ratio(1, 12) {
        return ThetaValue::zero();
    }
    let d = rng.gen_range(1..=3);
    ThetaValue::pow(q(rng.gen_range(-6..=6), d))
}

/// The bipotent semifield M = {ϑ^q} ∪ {0}.
#[derive(Debug, Clone, Copy, Default)]
pub struct Theta;

impl Semiring for Theta {
    type Elem = ThetaValue;

    fn zero(&self) -> ThetaValue {
        ThetaValue::zero()
    }
    fn one(&self) -> ThetaValue {
        ThetaValue::one()
    }
    fn add(&self, a: &ThetaValue, b: &ThetaValue) -> ThetaValue {
        a.add(b)
    }
    fn mul(&self, a: &ThetaValue, b: &ThetaValue) -> ThetaValue {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<ThetaValue> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| sample_theta(rng, true))
    }
    fn e(&self) -> ThetaValue {
        ThetaValue::one()
    }
    fn nu(&self, x: &ThetaValue) -> ThetaValue {
        x.clone()
    }
}

/// Nonzero ϑ-values as an ordered group.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThetaGroup;

impl Monoid for ThetaGroup {
    type Elem = ThetaValue;
    fn unit(&self) -> ThetaValue {
        ThetaValue::one()
    }
    fn op(&self, a: &ThetaValue, b: &ThetaValue) -> ThetaValue {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<ThetaValue> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| sample_theta(rng, false))
    }
}

impl OrderedMonoid for ThetaGroup {
    fn compare(&self, a: &ThetaValue, b: &ThetaValue) -> Ordering {
        a.cmp(b)
    }
}

/// {ϑ^n : n ∈ ℕ₀}, optionally cut to n ≤ bound for exhaustive checks.
#[derive(Debug, Clone, Copy)]
pub struct ThetaPowers {
    pub bound: Option<u32>,
}

impl Monoid for ThetaPowers {
    type Elem = ThetaValue;
    fn unit(&self) -> ThetaValue {
        ThetaValue::one()
    }
    fn op(&self, a: &ThetaValue, b: &ThetaValue) -> ThetaValue {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<ThetaValue> {
        match self.bound {
            Some(b) => Carrier::finite((0..=b as i64).map(ThetaValue::powi).collect()),
            None => Carrier::sampled(|rng: &mut ChaCha8Rng| ThetaValue::powi(rng.gen_range(0..40))),
        }
    }
}

impl OrderedMonoid for ThetaPowers {
    fn compare(&self, a: &ThetaValue, b: &ThetaValue) -> Ordering {
        a.cmp(b)
    }
}

/// (ℚ, +) with the usual order; T of it is the max-plus semifield.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdditiveRationals;

impl Monoid for AdditiveRationals {
    type Elem = Q;
    fn unit(&self) -> Q {
        Q::zero()
    }
    fn op(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn carrier(&self) -> Carrier<Q> {
        Carrier::sampled(|rng: &mut ChaCha8Rng| q(rng.gen_range(-20..=20), rng.gen_range(1..=4)))
    }
}

impl OrderedMonoid for AdditiveRationals {
    fn compare(&self, a: &Q, b: &Q) -> Ordering {
        a.cmp(b)
    }
}

/// Finite ordered monoid given by a table and ranks (smaller rank = smaller).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub names: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    pub rank: Vec<usize>,
}

impl FiniteMonoid {
    pub fn trivial() -> Self {
        FiniteMonoid { names: vec!["1".into()], unit: 0, table: vec![vec![0]], rank: vec![0] }
    }

    /// {1 < g} with g·g = g.
    pub fn two_chain() -> Self {
        FiniteMonoid {
            names: vec!["1".into(), "g".into()],
            unit: 0,
            table: vec![vec![0, 1], vec![1, 1]],
            rank: vec![0, 1],
        }
    }

    /// ϑ-powers 1 > ϑ > … > ϑ^k where products past ϑ^k stay at ϑ^k.
    pub fn theta_chain(k: usize) -> Self {
        let n = k + 1;
        FiniteMonoid {
            names: (0..n).map(|i| format!("ϑ^{i}")).collect(),
            unit: 0,
            table: (0..n).map(|i| (0..n).map(|j| (i + j).min(k)).collect()).collect(),
            rank: (0..n).map(|i| k - i).collect(),
        }
    }
}

impl Monoid for FiniteMonoid {
    type Elem = usize;
    fn unit(&self) -> usize {
        self.unit
    }
    fn op(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn carrier(&self) -> Carrier<usize> {
        Carrier::finite((0..self.names.len()).collect())
    }
}

impl OrderedMonoid for FiniteMonoid {
    fn compare(&self, a: &usize, b: &usize) -> Ordering {
        self.rank[*a].cmp(&self.rank[*b])
    }
}

// ---------------------------------------------------------------------------
// Finite tables
// ---------------------------------------------------------------------------

/// A finite semiring by explicit tables. `e` and `nu` are optional
/// supertropical annotations checked by the supertropical validator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSemiringTable {
    pub names: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("table json: {0}")]
    Json(String),
    #[error("operation leaves the listed elements: {0}")]
    NotClosed(String),
}

impl FiniteSemiringTable {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn validate(&self) -> Result<(), TableError> {
        let n = self.names.len();
        let bad = |m: String| Err(TableError::Malformed(m));
        if n == 0 {
            return bad("empty carrier".into());
        }
        if self.zero >= n || self.one >= n {
            return bad("zero/one index out of range".into());
        }
        for (label, t) in [("add", &self.add), ("mul", &self.mul)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return bad(format!("{label} table is not {n}x{n}"));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return bad(format!("{label} table has an index out of range"));
            }
        }
        if self.e.is_some_and(|e| e >= n) {
            return bad("e out of range".into());
        }
        if let Some(nu) = &self.nu {
            if nu.len() != n || nu.iter().any(|&x| x >= n) {
                return bad("nu has wrong length or range".into());
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        let t: Self = serde_json::from_str(s).map_err(|e| TableError::Json(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn names_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// Restrict to a subset closed under both operations, with `one` as unit.
    pub fn restrict(&self, subset: &[usize], one: usize) -> Result<Self, TableError> {
        let pos = |x: usize| subset.iter().position(|&s| s == x);
        let look = |x: usize| pos(x).ok_or_else(|| TableError::NotClosed(self.names[x].clone()));
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for &a in subset {
            let mut ra = Vec::new();
            let mut rm = Vec::new();
            for &b in subset {
                ra.push(look(self.add[a][b])?);
                rm.push(look(self.mul[a][b])?);
            }
            add.push(ra);
            mul.push(rm);
        }
        Ok(FiniteSemiringTable {
            names: self.names_of(subset),
            zero: look(self.zero)?,
            one: look(one)?,
            add,
            mul,
            e: None,
            nu: None,
        })
    }
}

impl Semiring for FiniteSemiringTable {
    type Elem = usize;
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }
    fn carrier(&self) -> Carrier<usize> {
        Carrier::finite((0..self.names.len()).collect())
    }
}

/// Tabulate a semiring on a listed carrier closed under its operations.
pub fn tabulate<S: Semiring>(
    s: &S,
    elems: &[S::Elem],
    name: impl Fn(&S::Elem) -> String,
) -> Result<FiniteSemiringTable, TableError> {
    let find = |x: &S::Elem| {
        elems.iter().position(|y| y == x).ok_or_else(|| TableError::NotClosed(format!("{x:?}")))
    };
    let mut add = Vec::with_capacity(elems.len());
    let mut mul = Vec::with_capacity(elems.len());
    for a in elems {
        let mut ra = Vec::with_capacity(elems.len());
        let mut rm = Vec::with_capacity(elems.len());
        for b in elems {
            ra.push(find(&s.add(a, b))?);
            rm.push(find(&s.mul(a, b))?);
        }
        add.push(ra);
        mul.push(rm);
    }
    Ok(FiniteSemiringTable {
        names: elems.iter().map(name).collect(),
        zero: find(&s.zero())?,
        one: find(&s.one())?,
        add,
        mul,
        e: None,
        nu: None,
    })
}

/// Associativity, commutativity, distributivity, neutral elements and 0·x = 0.
pub fn check_semiring_axioms(t: &FiniteSemiringTable) -> Result<Report, TableError> {
    t.validate()?;
    let n = t.len();
    let mut r = Report::new(Mode::Exhaustive);
    for a in [
        "add associative",
        "add commutative",
        "mul associative",
        "mul commutative",
        "distributive",
        "zero neutral",
        "one neutral",
        "zero absorbing",
    ] {
        r.check(a);
    }
    let (ad, mu) = (&t.add, &t.mul);
    for x in 0..n {
        if ad[x][t.zero] != x {
            r.witness("zero neutral", t.names_of(&[x]), "");
        }
        if mu[x][t.one] != x || mu[t.one][x] != x {
            r.witness("one neutral", t.names_of(&[x]), "");
        }
        if mu[x][t.zero] != t.zero || mu[t.zero][x] != t.zero {
            r.witness("zero absorbing", t.names_of(&[x]), "");
        }
        for y in 0..n {
            if ad[x][y] != ad[y][x] {
                r.witness("add commutative", t.names_of(&[x, y]), "");
            }
            if mu[x][y] != mu[y][x] {
                r.witness("mul commutative", t.names_of(&[x, y]), "");
            }
            for z in 0..n {
                if ad[ad[x][y]][z] != ad[x][ad[y][z]] {
                    r.witness("add associative", t.names_of(&[x, y, z]), "");
                }
                if mu[mu[x][y]][z] != mu[x][mu[y][z]] {
                    r.witness("mul associative", t.names_of(&[x, y, z]), "");
                }
                if mu[x][ad[y][z]] != ad[mu[x][y]][mu[x][z]]
                    || mu[ad[y][z]][x] != ad[mu[y][x]][mu[z][x]]
                {
                    r.witness("distributive", t.names_of(&[x, y, z]), "");
                }
            }
        }
    }
    Ok(r)
}

/// Every unordered pair with a + b ∉ {a, b}.
pub fn check_bipotent(t: &FiniteSemiringTable) -> Report {
    let mut r = Report::new(Mode::Exhaustive);
    r.check("bipotent");
    for a in 0..t.len() {
        for b in a..t.len() {
            let s = t.add[a][b];
            if s != a && s != b {
                r.witness("bipotent", t.names_of(&[a, b]), format!("sum {}", t.names[s]));
            }
        }
    }
    r
}
