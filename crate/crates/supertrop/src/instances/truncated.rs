//! The finite rings F[t]/(t^{k+1}) with the t-adic order, for exhaustive
//! checks on initial covers.

use std::fmt;

use super::field::Field;
use crate::order::{FiniteSemiringTable, Semiring};
use crate::report::Carrier;
use crate::supertropical::fixtures::{add_from_nu, truncated_d};
use crate::supertropical::FiniteSupertropical;
use crate::valuation::MValuationInstance;

/// c_0 + c_1 t + … + c_k t^k, stored densely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Trunc<F>(pub Vec<F>);

impl<F: Field> Trunc<F> {
    /// Index of the first nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// (c, i) for the leading term c·t^i.
    pub fn leading_term(&self) -> Option<(F, usize)> {
        self.ord().map(|i| (self.0[i].clone(), i))
    }
}

impl<F: Field> fmt::Debug for Trunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = c.render();
                match (i, c.as_str()) {
                    (0, _) => c,
                    (1, "1") => "t".into(),
                    (1, _) => format!("{c}t"),
                    (_, "1") => format!("t^{i}"),
                    _ => format!("{c}t^{i}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// F[t]/(t^{k+1}) for a finite field F.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedRing<F> {
    pub k: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> TruncatedRing<F> {
    pub fn new(k: usize) -> Self {
        TruncatedRing { k, _f: std::marker::PhantomData }
    }

    /// Every element, in lexicographic order of (c_0, …, c_k).
    pub fn elements(&self) -> Vec<Trunc<F>> {
        let field = F::elements().expect("finite coefficient field");
        let mut out: Vec<Vec<F>> = vec![vec![]];
        for _ in 0..=self.k {
            out = out
                .into_iter()
                .flat_map(|p| {
                    field.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Trunc).collect()
    }
}

impl<F: Field> Semiring for TruncatedRing<F> {
    type Elem = Trunc<F>;
    fn zero(&self) -> Trunc<F> {
        Trunc(vec![F::zero(); self.k + 1])
    }
    fn one(&self) -> Trunc<F> {
        let mut c = vec![F::zero(); self.k + 1];
        c[0] = F::one();
        Trunc(c)
    }
    fn add(&self, a: &Trunc<F>, b: &Trunc<F>) -> Trunc<F> {
        Trunc(a.0.iter().zip(&b.0).map(|(x, y)| x.add(y)).collect())
    }
    fn mul(&self, a: &Trunc<F>, b: &Trunc<F>) -> Trunc<F> {
        let mut c = vec![F::zero(); self.k + 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate().take(self.k + 1 - i) {
                c[i + j] = c[i + j].add(&x.mul(y));
            }
        }
        Trunc(c)
    }
    fn carrier(&self) -> Carrier<Trunc<F>> {
        Carrier::finite(self.elements())
    }
}

/// ϑ^i in the value table of [`truncated_order_valuation`].
pub fn truncated_value(i: usize) -> usize {
    1 + i
}

/// v(a) = ϑ^{ord a}, v(0) = 0, into {0, 1, ϑ, …, ϑ^k} where products past
/// ϑ^k vanish. A strong m-valuation whose value monoid is not cancellative.
pub fn truncated_order_valuation<F: Field>(k: usize) -> MValuationInstance<TruncatedRing<F>, FiniteSemiringTable> {
    let m = truncated_d(k).ghost_ideal();
    MValuationInstance::new(format!("ord mod t^{}", k + 1), TruncatedRing::new(k), m, |a: &Trunc<F>| {
        a.ord().map(truncated_value).unwrap_or(0)
    })
    .with_support("{0}")
}

/// ℤ/p^{k+1}, with elements 0, …, p^{k+1} − 1.
#[derive(Debug, Clone, Copy)]
pub struct PrimePowerRing {
    pub p: u64,
    pub k: usize,
}

impl PrimePowerRing {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.k as u32 + 1)
    }

    /// Exponent of p in a ≠ 0.
    pub fn ord(&self, mut a: u64) -> Option<usize> {
        if a.is_multiple_of(self.modulus()) {
            return None;
        }
        let mut i = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            i += 1;
        }
        Some(i)
    }
}

impl Semiring for PrimePowerRing {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus()
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.modulus()
    }
    fn carrier(&self) -> Carrier<u64> {
        Carrier::finite((0..self.modulus()).collect())
    }
}

/// v(a) = ϑ^{ord_p a} on ℤ/p^{k+1}, the finite shadow of the p-adic valuation.
pub fn prime_power_order_valuation(p: u64, k: usize) -> MValuationInstance<PrimePowerRing, FiniteSemiringTable> {
    let m = truncated_d(k).ghost_ideal();
    let r = PrimePowerRing { p, k };
    MValuationInstance::new(format!("ord_{p} mod {p}^{}", k + 1), r, m, move |a: &u64| {
        r.ord(*a).map(truncated_value).unwrap_or(0)
    })
    .with_support("{0}")
}

/// U(v) for v(f) = ϑ^{deg f} on F[x] with ϑ < 1, truncated so that every
/// product of degree > d is 0. Tangibles are the nonzero polynomials of
/// degree ≤ d; ghosts are ϑ^0, …, ϑ^d, named e, xν, x^2ν, ….
pub fn degree_truncation_cover<F: Field>(d: usize) -> FiniteSupertropical {
    use super::kx::UniPoly;
    let polys: Vec<UniPoly<F>> = UniPoly::<F>::all_up_to(d).into_iter().filter(|f| !f.is_zero()).collect();
    let nt = polys.len();
    let n = 1 + nt + d + 1;
    let ghost = |i: usize| 1 + nt + i;
    let deg = |x: usize| -> Option<usize> {
        if x == 0 {
            None
        } else if x <= nt {
            polys[x - 1].degree()
        } else {
            Some(x - 1 - nt)
        }
    };
    let mut nu = vec![0; n];
    let mut rank = vec![0; n];
    for x in 1..n {
        let i = deg(x).unwrap();
        nu[x] = ghost(i);
        rank[x] = d + 1 - i;
    }
    let mut mul = vec![vec![0; n]; n];
    for x in 1..n {
        for y in 1..n {
            let (i, j) = (deg(x).unwrap(), deg(y).unwrap());
            mul[x][y] = if i + j > d {
                0
            } else if x <= nt && y <= nt {
                let p = polys[x - 1].mul(&polys[y - 1]);
                1 + polys.iter().position(|q| *q == p).unwrap()
            } else {
                ghost(i + j)
            };
        }
    }
    let mut names = vec!["0".to_string()];
    names.extend(polys.iter().map(|f| format!("{f:?}")));
    names.extend((0..=d).map(|i| match i {
        0 => "e".to_string(),
        1 => "xν".to_string(),
        _ => format!("x^{i}ν"),
    }));
    let one = 1 + polys.iter().position(|f| *f == UniPoly::constant(F::one())).unwrap();
    let t = FiniteSemiringTable {
        names,
        zero: 0,
        one,
        add: add_from_nu(0, &nu, &rank),
        mul,
        e: None,
        nu: None,
    };
    FiniteSupertropical::from_table(t).expect("degree truncation is supertropical")
}
