//! The polynomial ring k[x] in one variable and its degree valuation.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use crate::order::{Semiring, Theta, ThetaValue};
use crate::report::Carrier;
use crate::valuation::MValuationInstance;

/// Dense coefficients c_0, c_1, …, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F>(Vec<F>);

impl<F: Field> UniPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.0.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Self, i: usize| p.0.get(i).cloned().unwrap_or_else(F::zero);
        Self::new((0..n).map(|i| get(self, i).add(&get(o, i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.0.iter().map(|a| a.mul(c)).collect())
    }

    /// f divided by its leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().and_then(|c| c.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Every polynomial of degree ≤ d over a finite field, including 0.
    pub fn all_up_to(d: usize) -> Vec<Self> {
        let elems = F::elements().expect("finite field");
        let mut out: Vec<Vec<F>> = vec![vec![]];
        for _ in 0..=d {
            out = out
                .into_iter()
                .flat_map(|p| {
                    elems.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        let mut v: Vec<Self> = out.into_iter().map(Self::new).collect();
        v.dedup();
        v
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.render(),
                1 => format!("{}*x", c.render()),
                _ => format!("{}*x^{i}", c.render()),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PolyRing<F> {
    pub max_degree: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F> PolyRing<F> {
    pub fn new(max_degree: usize) -> Self {
        PolyRing { max_degree, _f: std::marker::PhantomData }
    }
}

impl<F: Field> Semiring for PolyRing<F> {
    type Elem = UniPoly<F>;
    fn zero(&self) -> UniPoly<F> {
        UniPoly::zero()
    }
    fn one(&self) -> UniPoly<F> {
        UniPoly::constant(F::one())
    }
    fn add(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.add(b)
    }
    fn mul(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.mul(b)
    }
    fn carrier(&self) -> Carrier<UniPoly<F>> {
        let d = self.max_degree;
        let x2 = UniPoly::new(vec![F::zero(), F::zero(), F::one()]);
        let seeds = vec![x2.clone(), UniPoly::constant(F::one()).add(&x2.scale(&F::one().neg()))];
        Carrier::sampled(move |rng: &mut ChaCha8Rng| {
            let deg = rng.gen_range(0..=d);
            UniPoly::new(
                (0..=deg)
                    .map(|_| if rng.gen_ratio(1, 4) { F::zero() } else { F::sample_nonzero(rng) })
                    .collect(),
            )
        })
        .with_seeds(seeds)
    }
}

/// v(f) = ϑ^{−deg f}: higher degree means larger value.
pub fn degree_valuation<F: Field>() -> MValuationInstance<PolyRing<F>, Theta> {
    MValuationInstance::new("degree", PolyRing::new(4), Theta, |f: &UniPoly<F>| match f.degree() {
        Some(d) => ThetaValue::powi(-(d as i64)),
        None => ThetaValue::zero(),
    })
    .with_support("{0}")
}

/// v(f) = ϑ^{deg f} with ϑ < 1, which is not subadditive.
pub fn degree_valuation_literal<F: Field>() -> MValuationInstance<PolyRing<F>, Theta> {
    degree_valuation::<F>().remap("degree (ϑ^deg)", |f: &UniPoly<F>| match f.degree() {
        Some(d) => ThetaValue::powi(d as i64),
        None => ThetaValue::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::field::Fp;
    use crate::order::Q;
    use crate::report::CheckConfig;
    use crate::valuation::{check_mvaluation, is_strong};

    #[test]
    fn degree_valuation_passes() {
        let cfg = CheckConfig::default();
        let v = degree_valuation::<Q>();
        assert!(check_mvaluation(&v, &cfg).passed());
        assert!(is_strong(&v, &cfg).passed());
        let one = <Q as Field>::one();
        let x2_plus_1 = UniPoly::new(vec![one.clone(), Q::from_integer(0.into()), one]);
        assert_eq!(v.eval(&x2_plus_1), ThetaValue::powi(-2));
    }

    #[test]
    fn literal_sign_breaks_subadditivity() {
        let r = check_mvaluation(&degree_valuation_literal::<Q>(), &CheckConfig::default());
        assert!(r.witnesses_for("V4").any(|w| w.inputs == ["1*x^2", "-1*x^2 + 1"]));
    }

    /// f ~ g iff c·f = d·g for nonzero constants c, d.
    fn orbit_equivalent<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> bool {
        let units: Vec<F> = F::elements().unwrap().into_iter().filter(|c| !c.is_zero()).collect();
        units.iter().any(|c| units.iter().any(|d| f.scale(c) == g.scale(d)))
    }

    fn class_counts<F: Field>(max_deg: usize) -> Vec<usize> {
        let polys: Vec<UniPoly<F>> = UniPoly::all_up_to(max_deg).into_iter().filter(|f| !f.is_zero()).collect();
        let mut reps: Vec<UniPoly<F>> = Vec::new();
        for f in &polys {
            if !reps.iter().any(|r| orbit_equivalent(r, f)) {
                reps.push(f.clone());
            }
        }
        for r in &reps {
            // Each class contains exactly one monic polynomial.
            let monic: Vec<_> = polys.iter().filter(|g| orbit_equivalent(r, g) && g.leading_coeff() == Some(&F::one())).collect();
            assert_eq!(monic.len(), 1);
        }
        (0..=max_deg).map(|n| reps.iter().filter(|r| r.degree() == Some(n)).count()).collect()
    }

    #[test]
    fn constant_orbit_classes_count_monic_polynomials() {
        assert_eq!(class_counts::<Fp<2>>(3), vec![1, 2, 4, 8]);
        assert_eq!(class_counts::<Fp<3>>(3), vec![1, 3, 9, 27]);
    }

    #[test]
    fn value_one_exactly_on_constants() {
        let v = degree_valuation::<Fp<3>>();
        for f in UniPoly::<Fp<3>>::all_up_to(3) {
            let unit_value = v.eval(&f) == ThetaValue::one();
            assert_eq!(unit_value, f.degree() == Some(0));
        }
    }
}
