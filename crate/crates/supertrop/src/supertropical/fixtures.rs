//! Small finite semirings shipped as JSON fixtures.

use crate::order::{tabulate, FiniteMonoid, FiniteSemiringTable, Monoid, Semiring, TG};
use crate::report::Carrier;
use crate::supertropical::{FiniteSupertropical, STElement, Str};
use std::sync::Arc;

/// ℤ/n written multiplicatively as powers of g.
#[derive(Debug, Clone, Copy)]
pub struct CyclicGroup(pub usize);

impl Monoid for CyclicGroup {
    type Elem = usize;
    fn unit(&self) -> usize {
        0
    }
    fn op(&self, a: &usize, b: &usize) -> usize {
        (a + b) % self.0
    }
    fn carrier(&self) -> Carrier<usize> {
        Carrier::finite((0..self.0).collect())
    }
}

fn power_name(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "g".into(),
        _ => format!("g^{k}"),
    }
}

pub fn boolean() -> FiniteSemiringTable {
    FiniteSemiringTable {
        names: vec!["0".into(), "1".into()],
        zero: 0,
        one: 1,
        add: vec![vec![0, 1], vec![1, 1]],
        mul: vec![vec![0, 0], vec![0, 1]],
        e: None,
        nu: None,
    }
}

fn tg_table(g: FiniteMonoid) -> FiniteSemiringTable {
    let names = g.names.clone();
    let t = TG { monoid: g };
    let elems = t.carrier().all().unwrap().to_vec();
    tabulate(&t, &elems, |x| match x {
        crate::order::WithZero::Zero => "0".into(),
        crate::order::WithZero::Val(i) => names[*i].clone(),
    })
    .expect("T(G) is closed")
}

/// T({1 < g}) with g·g = g.
pub fn tg_two_chain() -> FiniteSemiringTable {
    tg_table(FiniteMonoid::two_chain())
}

/// T of the ϑ-chain 1 > ϑ > … > ϑ^k with saturating products.
pub fn tg_theta_chain(k: usize) -> FiniteSemiringTable {
    tg_table(FiniteMonoid::theta_chain(k))
}

/// STR(ℤ/n, {1}, trivial): tangibles ℤ/n over one ghost e.
pub fn cyclic(n: usize) -> FiniteSupertropical {
    let s = Str {
        tangibles: CyclicGroup(n),
        ghosts: FiniteMonoid::trivial(),
        v: Arc::new(|_: &usize| 0usize),
    };
    let elems = s.carrier().all().unwrap().to_vec();
    let t = tabulate(&s, &elems, |x| match x {
        STElement::Zero => "0".into(),
        STElement::Tangible(k) => power_name(*k),
        STElement::Ghost(_) => "e".into(),
    })
    .expect("STR over a finite group is closed");
    FiniteSupertropical::from_table(t).expect("STR is supertropical")
}

/// U = {0, 1, g, e} with g² = 1 and ν(1) = ν(g) = e.
pub fn z2() -> FiniteSupertropical {
    cyclic(2)
}

/// Tangibles ℤ/4 over a single ghost.
pub fn z4() -> FiniteSupertropical {
    cyclic(4)
}

/// Addition from multiplication, ν and a rank on ghost values, following
/// the three-way rule; used to build tables whose semiring axioms are then
/// validated independently.
pub(crate) fn add_from_nu(zero: usize, nu: &[usize], rank: &[usize]) -> Vec<Vec<usize>> {
    let n = nu.len();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if x == zero {
                        y
                    } else if y == zero {
                        x
                    } else if nu[x] == nu[y] {
                        nu[x]
                    } else if rank[nu[x]] > rank[nu[y]] {
                        x
                    } else {
                        y
                    }
                })
                .collect()
        })
        .collect()
}

/// D(ϑ^ℕ) with every value below ϑ^k identified with 0: tangibles
/// 1, t, …, t^k over ghosts e, tν, …, t^kν, and t^i·t^j = 0 once i + j > k.
pub fn truncated_d(k: usize) -> FiniteSupertropical {
    // index 0 is zero, 1..=k+1 are tangibles t^0..t^k, k+2..=2k+2 are ghosts.
    let n = 2 * k + 3;
    let tang = |i: usize| 1 + i;
    let ghost = |i: usize| k + 2 + i;
    let decode = |x: usize| -> Option<(bool, usize)> {
        if x == 0 {
            None
        } else if x <= k + 1 {
            Some((false, x - 1))
        } else {
            Some((true, x - k - 2))
        }
    };
    let mut names = vec!["0".to_string()];
    for i in 0..=k {
        names.push(match i {
            0 => "1".into(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        });
    }
    for i in 0..=k {
        names.push(match i {
            0 => "e".into(),
            1 => "tν".into(),
            _ => format!("t^{i}ν"),
        });
    }
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| match (decode(x), decode(y)) {
                    (Some((gx, i)), Some((gy, j))) if i + j <= k => {
                        if gx || gy {
                            ghost(i + j)
                        } else {
                            tang(i + j)
                        }
                    }
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let nu: Vec<usize> = (0..n).map(|x| decode(x).map(|(_, i)| ghost(i)).unwrap_or(0)).collect();
    let rank: Vec<usize> = (0..n).map(|x| decode(x).map(|(_, i)| k + 1 - i).unwrap_or(0)).collect();
    let t = FiniteSemiringTable {
        names,
        zero: 0,
        one: tang(0),
        add: add_from_nu(0, &nu, &rank),
        mul,
        e: None,
        nu: None,
    };
    FiniteSupertropical::from_table(t).expect("truncated D is supertropical")
}

/// Five elements {0, 1, g, 1ν, gν} over the ghost chain 1ν < gν with
/// gν·gν = gν. The product g·g lands on the ghost gν: a tangible g·g = g
/// would break distributivity, see [`d_pair_literal`].
pub fn d_pair() -> FiniteSupertropical {
    let names: Vec<String> = ["0", "1", "g", "1ν", "gν"].iter().map(|s| s.to_string()).collect();
    let nu = vec![0, 3, 4, 3, 4];
    let rank = vec![0, 0, 0, 1, 2];
    let mul = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 2, 3, 4],
        vec![0, 2, 4, 4, 4],
        vec![0, 3, 4, 3, 4],
        vec![0, 4, 4, 4, 4],
    ];
    let t = FiniteSemiringTable {
        names,
        zero: 0,
        one: 1,
        add: add_from_nu(0, &nu, &rank),
        mul,
        e: None,
        nu: None,
    };
    FiniteSupertropical::from_table(t).expect("five-element fixture is supertropical")
}

/// STR({1 < g}, {1 < g}, id) taken literally with g·g = g. The ghost monoid
/// is not cancellative and g·(g + 1) ≠ g·g + g·1.
pub fn d_pair_literal() -> FiniteSemiringTable {
    let s = Str {
        tangibles: FiniteMonoid::two_chain(),
        ghosts: FiniteMonoid::two_chain(),
        v: Arc::new(|x: &usize| *x),
    };
    let elems = s.carrier().all().unwrap().to_vec();
    tabulate(&s, &elems, |x| match x {
        STElement::Zero => "0".into(),
        STElement::Tangible(0) => "1".into(),
        STElement::Tangible(_) => "g".into(),
        STElement::Ghost(0) => "1ν".into(),
        STElement::Ghost(_) => "gν".into(),
    })
    .unwrap()
}

/// Every finite supertropical fixture by name.
pub fn supertropical_fixtures() -> Vec<(&'static str, FiniteSupertropical)> {
    vec![
        ("z2", z2()),
        ("z4", z4()),
        ("d_pair", d_pair()),
        ("truncated_d1", truncated_d(1)),
        ("truncated_d2", truncated_d(2)),
        ("boolean", FiniteSupertropical::from_table(boolean()).unwrap()),
        ("tg_two_chain", FiniteSupertropical::from_table(tg_two_chain()).unwrap()),
        ("tg_theta_chain3", FiniteSupertropical::from_table(tg_theta_chain(3)).unwrap()),
    ]
}

/// The tables written to `fixtures/<name>.json`.
pub fn shipped_tables() -> Vec<(&'static str, FiniteSemiringTable)> {
    let mut out: Vec<(&'static str, FiniteSemiringTable)> =
        supertropical_fixtures().into_iter().map(|(n, u)| (n, u.table)).collect();
    out.push(("tg_theta_chain2", tg_theta_chain(2)));
    out.push(("d_pair_literal", d_pair_literal()));
    out
}
