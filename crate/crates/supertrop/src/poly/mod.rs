//! Polynomials over a semiring, coefficientwise maps, evaluation, and the
//! checks built on them.

pub mod corner;
pub mod gs;
pub mod iq;
pub mod kapranov;
pub mod parser;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::order::Semiring;
use crate::report::Carrier;

pub use corner::{corner_query, corner_via_lift, root_query, tangible_root_query, CornerReport};
pub use gs::{check_gs_laws, check_ub, check_ub_semiring, gs, gs_bruteforce, ub_rephrased};
pub use kapranov::{kapranov_corner_check, kapranov_gs_check, kapranov_trials, KapranovSummary, TrialConfig};
pub use iq::{check_iq_valuation, eval_strong_check, eval_strong_trials, eval_superval_check, semifield_lattice_check, semifield_meet, IqReport};
pub use parser::{parse_point, parse_poly, parse_series, ParseError};

/// Exponent vector of a monomial λ₁^{i₁}⋯λₙ^{iₙ}. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The exponent of λᵢ alone (0-based i).
    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        Multidegree(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Multidegree {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total().cmp(&o.total()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Σ cᵢ λⁱ with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Multidegree, E>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected {expected} coordinates, got {got}")]
pub struct ArityError {
    pub expected: usize,
    pub got: usize,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    /// Collect terms, adding coefficients of repeated multidegrees.
    pub fn from_terms<S: Semiring<Elem = E>>(s: &S, nvars: usize, it: impl IntoIterator<Item = (Multidegree, E)>) -> Self {
        let mut terms: BTreeMap<Multidegree, E> = BTreeMap::new();
        for (d, c) in it {
            assert_eq!(d.0.len(), nvars, "multidegree length");
            let c = match terms.remove(&d) {
                Some(old) => s.add(&old, &c),
                None => c,
            };
            if c != s.zero() {
                terms.insert(d, c);
            }
        }
        Poly { nvars, terms }
    }

    pub fn constant<S: Semiring<Elem = E>>(s: &S, nvars: usize, c: E) -> Self {
        Self::from_terms(s, nvars, [(Multidegree::zero(nvars), c)])
    }

    /// c·λⁱ.
    pub fn monomial<S: Semiring<Elem = E>>(s: &S, d: Multidegree, c: E) -> Self {
        let n = d.0.len();
        Self::from_terms(s, n, [(d, c)])
    }

    /// λᵢ (0-based i).
    pub fn var<S: Semiring<Elem = E>>(s: &S, nvars: usize, i: usize) -> Self {
        Self::monomial(s, Multidegree::var(nvars, i), s.one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Multidegree, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Multidegree) -> Option<&E> {
        self.terms.get(d)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Multidegree::total).max()
    }
}

pub fn poly_add<S: Semiring>(s: &S, f: &Poly<S::Elem>, g: &Poly<S::Elem>) -> Poly<S::Elem> {
    assert_eq!(f.nvars, g.nvars, "variable count");
    Poly::from_terms(s, f.nvars, f.terms.iter().chain(g.terms.iter()).map(|(d, c)| (d.clone(), c.clone())))
}

pub fn poly_mul<S: Semiring>(s: &S, f: &Poly<S::Elem>, g: &Poly<S::Elem>) -> Poly<S::Elem> {
    assert_eq!(f.nvars, g.nvars, "variable count");
    let prods = f.terms.iter().flat_map(|(d, c)| g.terms.iter().map(move |(e, b)| (d.add(e), s.mul(c, b))));
    Poly::from_terms(s, f.nvars, prods)
}

/// c·aⁱ for one term.
pub fn eval_term<S: Semiring>(s: &S, d: &Multidegree, c: &S::Elem, a: &[S::Elem]) -> S::Elem {
    d.0.iter().zip(a).fold(c.clone(), |acc, (&k, x)| s.mul(&acc, &s.pow(x, k)))
}

/// ε_a(f) = Σ cᵢ aⁱ in the arithmetic of S.
pub fn evaluate<S: Semiring>(s: &S, f: &Poly<S::Elem>, a: &[S::Elem]) -> Result<S::Elem, ArityError> {
    if a.len() != f.nvars {
        return Err(ArityError { expected: f.nvars, got: a.len() });
    }
    let vals: Vec<S::Elem> = f.terms.iter().map(|(d, c)| eval_term(s, d, c, a)).collect();
    Ok(s.sum(vals.iter()))
}

/// Apply a map to every coefficient, dropping terms sent to `target_zero`.
pub fn coeff_map<A, B: Clone + PartialEq>(f: &Poly<A>, map: impl Fn(&A) -> B, target_zero: &B) -> Poly<B> {
    let terms = f
        .terms
        .iter()
        .map(|(d, c)| (d.clone(), map(c)))
        .filter(|(_, c)| c != target_zero)
        .collect();
    Poly { nvars: f.nvars, terms }
}

impl<E: fmt::Debug> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| {
                let c = crate::report::tidy(&format!("{c:?}"));
                let c = if c.contains(" + ") { format!("({c})") } else { c };
                match (d.is_zero(), c.as_str()) {
                    (true, _) => c,
                    (false, "1") => d.to_string(),
                    _ => format!("{c}*{d}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E: fmt::Debug> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bounds for random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyShape {
    pub nvars: usize,
    pub max_deg: u32,
    pub max_terms: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { nvars: 1, max_deg: 4, max_terms: 6 }
    }
}

impl PolyShape {
    /// A multidegree of total degree ≤ max_deg.
    pub fn sample_degree(&self, rng: &mut ChaCha8Rng) -> Multidegree {
        let total = rng.gen_range(0..=self.max_deg);
        let mut v = vec![0; self.nvars];
        for _ in 0..total {
            v[rng.gen_range(0..self.nvars)] += 1;
        }
        Multidegree(v)
    }

    pub fn sample<S: Semiring>(&self, s: &S, coeffs: &Carrier<S::Elem>, rng: &mut ChaCha8Rng) -> Poly<S::Elem> {
        let n = rng.gen_range(0..=self.max_terms);
        let terms: Vec<(Multidegree, S::Elem)> = (0..n).map(|_| (self.sample_degree(rng), coeffs.draw(rng))).collect();
        Poly::from_terms(s, self.nvars, terms)
    }
}

/// S[λ₁, …, λₙ] with a sampler bounded by a [`PolyShape`].
#[derive(Clone)]
pub struct PolySemiring<S> {
    pub base: S,
    pub shape: PolyShape,
}

impl<S: Semiring> PolySemiring<S> {
    pub fn new(base: S, shape: PolyShape) -> Self {
        PolySemiring { base, shape }
    }
}

impl<S: Semiring + Clone + Send + Sync + 'static> Semiring for PolySemiring<S> {
    type Elem = Poly<S::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero(self.shape.nvars)
    }
    fn one(&self) -> Self::Elem {
        Poly::constant(&self.base, self.shape.nvars, self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly_add(&self.base, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        poly_mul(&self.base, a, b)
    }
    fn carrier(&self) -> Carrier<Self::Elem> {
        let (base, shape) = (self.base.clone(), self.shape);
        let coeffs = base.carrier();
        let mut seeds = vec![self.zero(), self.one()];
        seeds.extend((0..shape.nvars).map(|i| Poly::var(&base, shape.nvars, i)));
        Carrier::sampled(move |rng: &mut ChaCha8Rng| shape.sample(&base, &coeffs, rng)).with_seeds(seeds)
    }
}
