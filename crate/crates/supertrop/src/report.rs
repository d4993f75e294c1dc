//! Check reports, sampling configuration and element carriers.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Upper bound on witnesses kept per report.
pub const WITNESS_CAP: usize = 32;

/// How much of a universally quantified statement a check covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled(usize),
}

impl Mode {
    pub fn is_exhaustive(self) -> bool {
        matches!(self, Mode::Exhaustive)
    }

    /// Sampled dominates exhaustive when two modes are merged.
    pub fn merge(self, other: Mode) -> Mode {
        match (self, other) {
            (Mode::Exhaustive, Mode::Exhaustive) => Mode::Exhaustive,
            (Mode::Sampled(a), Mode::Sampled(b)) => Mode::Sampled(a.max(b)),
            (Mode::Sampled(a), _) | (_, Mode::Sampled(a)) => Mode::Sampled(a),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled(n) => write!(f, "sampled at {n} points"),
        }
    }
}

/// A counterexample to a named axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub axiom: String,
    pub inputs: Vec<String>,
    pub detail: String,
}

/// Outcome of a validator: the axioms it looked at and what broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checked: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub mode: Mode,
}

impl Report {
    pub fn new(mode: Mode) -> Self {
        Report { checked: Vec::new(), witnesses: Vec::new(), mode }
    }

    pub fn check(&mut self, axiom: &str) {
        if !self.checked.iter().any(|a| a == axiom) {
            self.checked.push(axiom.to_string());
        }
    }

    pub fn witness(&mut self, axiom: &str, inputs: Vec<String>, detail: impl Into<String>) {
        self.check(axiom);
        if self.witnesses.len() < WITNESS_CAP {
            let inputs = inputs.into_iter().map(|s| tidy(&s)).collect();
            self.witnesses.push(Witness { axiom: axiom.to_string(), inputs, detail: tidy(&detail.into()) });
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.witnesses.iter().any(|w| w.axiom == axiom)
    }

    pub fn witnesses_for<'a>(&'a self, axiom: &'a str) -> impl Iterator<Item = &'a Witness> + 'a {
        self.witnesses.iter().filter(move |w| w.axiom == axiom)
    }

    pub fn absorb(&mut self, other: Report) {
        for a in other.checked {
            self.check(&a);
        }
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
        self.mode = self.mode.merge(other.mode);
    }
}

/// Rewrites `Ratio { numer: a, denom: b }` as `a/b` (or `a` when b = 1).
pub fn tidy(s: &str) -> String {
    const OPEN: &str = "Ratio { numer: ";
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find(OPEN) {
        out.push_str(&rest[..i]);
        let after = &rest[i + OPEN.len()..];
        let parsed = after.split_once(", denom: ").and_then(|(n, tail)| tail.split_once(" }").map(|(d, tail)| (n, d, tail)));
        match parsed {
            Some((n, d, tail)) if !n.contains(' ') && !d.contains(' ') => {
                out.push_str(n);
                if d != "1" {
                    out.push('/');
                    out.push_str(d);
                }
                rest = tail;
            }
            _ => {
                out.push_str(OPEN);
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

/// Debug-format a list of values for a witness.
#[macro_export]
macro_rules! inputs {
    ($($x:expr),* $(,)?) => { vec![$(format!("{:?}", $x)),*] };
}

/// Seed and sample count shared by all sampled checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 42, samples: 1000 }
    }
}

impl CheckConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Independent stream for a named sub-check.
    pub fn rng_for(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    pub fn with_samples(self, samples: usize) -> Self {
        CheckConfig { samples, ..self }
    }
}

pub type SampleFn<E> = Arc<dyn Fn(&mut ChaCha8Rng) -> E + Send + Sync>;

/// Where checks draw elements from: a full list, a sampler, or both.
///
/// `seeds` are distinguished elements placed ahead of random draws so that
/// documented counterexamples are always visited.
pub struct Carrier<E> {
    finite: Option<Arc<Vec<E>>>,
    seeds: Vec<E>,
    sampler: Option<SampleFn<E>>,
}

impl<E: Clone> Clone for Carrier<E> {
    fn clone(&self) -> Self {
        Carrier { finite: self.finite.clone(), seeds: self.seeds.clone(), sampler: self.sampler.clone() }
    }
}

/// Largest finite carrier for which triples are enumerated rather than sampled.
const TRIPLE_LIMIT: usize = 64;

impl<E: Clone> Carrier<E> {
    pub fn finite(elems: Vec<E>) -> Self {
        Carrier { finite: Some(Arc::new(elems)), seeds: Vec::new(), sampler: None }
    }

    pub fn sampled(sampler: impl Fn(&mut ChaCha8Rng) -> E + Send + Sync + 'static) -> Self {
        Carrier { finite: None, seeds: Vec::new(), sampler: Some(Arc::new(sampler)) }
    }

    pub fn with_seeds(mut self, seeds: Vec<E>) -> Self {
        self.seeds = seeds;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.finite.is_some()
    }

    pub fn all(&self) -> Option<&[E]> {
        self.finite.as_deref().map(|v| v.as_slice())
    }

    pub fn sampler(&self) -> Option<&SampleFn<E>> {
        self.sampler.as_ref()
    }

    /// Draw one element; finite carriers draw uniformly from their list.
    pub fn draw(&self, rng: &mut ChaCha8Rng) -> E {
        use rand::Rng;
        if let Some(s) = &self.sampler {
            return s(rng);
        }
        let all = self.finite.as_ref().expect("carrier has neither list nor sampler");
        all[rng.gen_range(0..all.len())].clone()
    }

    /// The full carrier when finite, else seeds followed by `samples` draws.
    pub fn elements(&self, cfg: &CheckConfig) -> (Vec<E>, Mode) {
        if let Some(all) = &self.finite {
            return (all.as_ref().clone(), Mode::Exhaustive);
        }
        let mut rng = cfg.rng_for(1);
        let mut out = self.seeds.clone();
        out.extend((0..cfg.samples).map(|_| self.draw(&mut rng)));
        let n = out.len();
        (out, Mode::Sampled(n))
    }

    /// All ordered pairs when finite, else seed pairs followed by random pairs.
    pub fn pairs(&self, cfg: &CheckConfig) -> (Vec<(E, E)>, Mode) {
        if let Some(all) = &self.finite {
            let mut out = Vec::with_capacity(all.len() * all.len());
            for a in all.iter() {
                for b in all.iter() {
                    out.push((a.clone(), b.clone()));
                }
            }
            return (out, Mode::Exhaustive);
        }
        let mut rng = cfg.rng_for(2);
        let mut out = Vec::new();
        for a in &self.seeds {
            for b in &self.seeds {
                out.push((a.clone(), b.clone()));
            }
        }
        out.extend((0..cfg.samples).map(|_| (self.draw(&mut rng), self.draw(&mut rng))));
        let n = out.len();
        (out, Mode::Sampled(n))
    }

    /// All triples for small finite carriers, else random triples.
    pub fn triples(&self, cfg: &CheckConfig) -> (Vec<(E, E, E)>, Mode) {
        if let Some(all) = &self.finite {
            if all.len() <= TRIPLE_LIMIT {
                let mut out = Vec::with_capacity(all.len().pow(3));
                for a in all.iter() {
                    for b in all.iter() {
                        for c in all.iter() {
                            out.push((a.clone(), b.clone(), c.clone()));
                        }
                    }
                }
                return (out, Mode::Exhaustive);
            }
        }
        let mut rng = cfg.rng_for(3);
        let mut out = Vec::new();
        for a in &self.seeds {
            for b in &self.seeds {
                out.push((a.clone(), b.clone(), a.clone()));
            }
        }
        out.extend(
            (0..cfg.samples).map(|_| (self.draw(&mut rng), self.draw(&mut rng), self.draw(&mut rng))),
        );
        let n = out.len();
        (out, Mode::Sampled(n))
    }

    pub fn map<F, T>(&self, f: F) -> Carrier<T>
    where
        F: Fn(&E) -> T + Send + Sync + 'static,
        E: Send + Sync + 'static,
        T: Clone,
    {
        let f = Arc::new(f);
        Carrier {
            finite: self.finite.as_ref().map(|v| Arc::new(v.iter().map(|x| f(x)).collect())),
            seeds: self.seeds.iter().map(|x| f(x)).collect(),
            sampler: self.sampler.as_ref().map(|s| {
                let s = s.clone();
                let f = f.clone();
                Arc::new(move |rng: &mut ChaCha8Rng| f(&s(rng))) as SampleFn<T>
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tidy_rationals() {
        let s = format!("{:?}", (crate::order::q(3, 4), crate::order::qi(-2)));
        assert_eq!(tidy(&s), "(3/4, -2)");
        assert_eq!(tidy("Ratio { numer: x"), "Ratio { numer: x");
    }

    #[test]
    fn finite_pairs_are_exhaustive() {
        let c = Carrier::finite(vec![1, 2, 3]);
        let (p, m) = c.pairs(&CheckConfig::default());
        assert_eq!(p.len(), 9);
        assert_eq!(m, Mode::Exhaustive);
    }

    #[test]
    fn sampling_is_deterministic_and_seeds_come_first() {
        use rand::Rng;
        let c = Carrier::sampled(|r: &mut ChaCha8Rng| r.gen_range(0..100)).with_seeds(vec![-1, -2]);
        let cfg = CheckConfig { seed: 7, samples: 10 };
        let (a, m) = c.pairs(&cfg);
        let (b, _) = c.pairs(&cfg);
        assert_eq!(a, b);
        assert_eq!(a[0], (-1, -1));
        assert_eq!(a[1], (-1, -2));
        assert_eq!(m, Mode::Sampled(14));
    }

    #[test]
    fn witness_cap_holds() {
        let mut r = Report::new(Mode::Exhaustive);
        for i in 0..100 {
            r.witness("A", vec![i.to_string()], "");
        }
        assert_eq!(r.witnesses.len(), WITNESS_CAP);
        assert_eq!(r.checked, vec!["A".to_string()]);
    }
}
