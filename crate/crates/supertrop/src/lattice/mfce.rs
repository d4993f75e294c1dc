//! Multiplicative fiber conserving equivalence relations on finite
//! supertropical semirings, their quotients and their enumeration.

use serde::Serialize;
use thiserror::Error;

use super::partition::{set_partitions, Partition, PartitionError};
use crate::order::{FiniteSemiringTable, Semiring};
use crate::superval::Transmission;
use crate::report::{Mode, Report};
use crate::supertropical::{FiniteSupertropical, SupertropicalError};

fn names(u: &FiniteSupertropical, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| u.name(x).to_string()).collect()
}

/// x₁ ~ x₂ ⇒ x₁y ~ x₂y for all y.
pub fn is_multiplicative(u: &FiniteSupertropical, p: &Partition) -> bool {
    let n = u.len();
    (0..n).all(|x1| (0..x1).all(|x2| !p.same(x1, x2) || (0..n).all(|y| p.same(u.table.mul[x1][y], u.table.mul[x2][y]))))
}

/// Multiplicativity and fiber conservation, exhaustively.
pub fn check_mfce(u: &FiniteSupertropical, p: &Partition) -> Report {
    let mut r = Report::new(Mode::Exhaustive);
    r.check("multiplicative");
    r.check("fiber conserving");
    if p.len() != u.len() {
        r.witness("size", vec![], format!("partition of {} elements, carrier has {}", p.len(), u.len()));
        return r;
    }
    let n = u.len();
    for x1 in 0..n {
        for x2 in 0..x1 {
            if !p.same(x1, x2) {
                continue;
            }
            if u.nu[x1] != u.nu[x2] {
                r.witness("fiber conserving", names(u, &[x2, x1]), "");
            }
            for y in 0..n {
                let (a, b) = (u.table.mul[x1][y], u.table.mul[x2][y]);
                if !p.same(a, b) {
                    r.witness("multiplicative", names(u, &[x2, x1, y]), format!("{} ≁ {}", u.name(b), u.name(a)));
                }
            }
        }
    }
    r
}

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("not an MFCE relation")]
    NotMfce(Report),
    #[error(transparent)]
    Table(#[from] SupertropicalError),
}

/// U/E with the projection x ↦ [x].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub u: FiniteSupertropical,
    pub projection: Vec<usize>,
}

/// Name of a class: the ghost it contains, else its only element, else the
/// braced list of members.
fn class_name(u: &FiniteSupertropical, block: &[usize]) -> String {
    if let Some(&g) = block.iter().find(|&&x| u.is_ghost(x)) {
        return u.name(g).to_string();
    }
    if block.len() == 1 {
        return u.name(block[0]).to_string();
    }
    format!("{{{}}}", names(u, block).join(","))
}

/// The quotient semiring U/E, validated as supertropical.
pub fn quotient(u: &FiniteSupertropical, p: &Partition) -> Result<Quotient, QuotientError> {
    let r = check_mfce(u, p);
    if !r.passed() {
        return Err(QuotientError::NotMfce(r));
    }
    let blocks = p.blocks();
    let rep: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let k = blocks.len();
    let op = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..k).map(|i| (0..k).map(|j| p.class_of(t[rep[i]][rep[j]])).collect()).collect()
    };
    let table = FiniteSemiringTable {
        names: blocks.iter().map(|b| class_name(u, b)).collect(),
        zero: p.class_of(u.table.zero),
        one: p.class_of(u.table.one),
        add: op(&u.table.add),
        mul: op(&u.table.mul),
        e: None,
        nu: None,
    };
    let q = FiniteSupertropical::from_table(table)?;
    Ok(Quotient { u: q, projection: (0..u.len()).map(|x| p.class_of(x)).collect() })
}

/// E(ν): x ~ y iff ex = ey. The coarsest MFCE relation.
pub fn e_nu(u: &FiniteSupertropical) -> Partition {
    Partition::kernel(u.len(), |x| u.nu[x])
}

/// E_t: equal, or both tangible in one fiber. Errors with the MFCE report
/// when tangible products leave 𝒯 unevenly.
pub fn e_t(u: &FiniteSupertropical) -> Result<Partition, Report> {
    let p = Partition::kernel(u.len(), |x| if u.is_ghost(x) { (true, x) } else { (false, u.nu[x]) });
    let r = check_mfce(u, &p);
    if r.passed() {
        Ok(p)
    } else {
        Err(r)
    }
}

/// E(L) for L ⊆ M = eU: x ~ y iff x = y or ex = ey ∉ L. Errors unless
/// M·(M∖L) ⊆ M∖L.
pub fn e_l(u: &FiniteSupertropical, l: &[usize]) -> Result<Partition, Report> {
    let mut r = Report::new(Mode::Exhaustive);
    r.check("M·(M∖L) ⊆ M∖L");
    let m = u.ghost_ideal_elems();
    let outside: Vec<usize> = m.iter().copied().filter(|x| !l.contains(x)).collect();
    for &x in &m {
        for &y in &outside {
            let xy = u.table.mul[x][y];
            if l.contains(&xy) {
                r.witness("M·(M∖L) ⊆ M∖L", names(u, &[x, y]), format!("product {}", u.name(xy)));
            }
        }
    }
    if !r.passed() {
        return Err(r);
    }
    Ok(Partition::kernel(u.len(), |x| if outside.contains(&u.nu[x]) { (true, u.nu[x]) } else { (false, x) }))
}

#[derive(Debug, Error)]
#[error("α does not respect E at {0} ~ {1}")]
pub struct NotRespected(pub String, pub String);

/// ᾱ: U/E → V with ᾱ([x]) = α(x), for α constant on E-classes.
pub fn induced_transmission<V: Semiring + Clone>(
    alpha: &Transmission<FiniteSupertropical, V>,
    e: &Partition,
    q: &Quotient,
) -> Result<Transmission<FiniteSupertropical, V>, NotRespected> {
    let u = &alpha.source;
    for block in e.blocks() {
        for &x in &block[1..] {
            if alpha.apply(&x) != alpha.apply(&block[0]) {
                return Err(NotRespected(u.name(block[0]).into(), u.name(x).into()));
            }
        }
    }
    let reps: Vec<usize> = e.blocks().iter().map(|b| b[0]).collect();
    let image: Vec<V::Elem> = reps.iter().map(|x| alpha.apply(x)).collect();
    Ok(Transmission::new(format!("{}/E", alpha.name), q.u.clone(), alpha.target.clone(), move |c: &usize| image[*c].clone()))
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("carrier has {size} elements, bound is {bound}")]
pub struct BoundExceeded {
    pub size: usize,
    pub bound: usize,
}

pub const DEFAULT_BOUND: usize = 12;

/// Canonical order: finer relations first, ties by labels.
pub fn sort_canonical(ps: &mut [Partition]) {
    ps.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
}

/// Every MFCE relation on U: partitions of each ν-fiber combined, then
/// filtered by multiplicativity. The diagonal comes first, E(ν) last.
pub fn enumerate_mfce(u: &FiniteSupertropical, bound: usize) -> Result<Vec<Partition>, BoundExceeded> {
    if u.len() > bound {
        return Err(BoundExceeded { size: u.len(), bound });
    }
    let per_fiber: Vec<Vec<Vec<Vec<usize>>>> = u.fibers().iter().map(|f| set_partitions(f)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_fiber.len()];
    loop {
        let blocks: Vec<Vec<usize>> =
            per_fiber.iter().zip(&choice).flat_map(|(opts, &c)| opts[c].iter().cloned()).collect();
        let p = Partition::from_blocks(u.len(), &blocks).expect("fibers partition U");
        if is_multiplicative(u, &p) {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                sort_canonical(&mut out);
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_fiber[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// A partition given by blocks of element names.
pub fn partition_from_names(u: &FiniteSupertropical, blocks: &[Vec<String>]) -> Result<Partition, NamedPartitionError> {
    let idx: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            b.iter().map(|s| u.table.index_of(s).ok_or_else(|| NamedPartitionError::UnknownName(s.clone()))).collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(Partition::from_blocks(u.len(), &idx)?)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NamedPartitionError {
    #[error("unknown element {0}")]
    UnknownName(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A relation and its quotient, rendered for reports.
#[derive(Debug, Clone, Serialize)]
pub struct NamedPartition {
    pub blocks: Vec<Vec<String>>,
}

pub fn named(u: &FiniteSupertropical, p: &Partition) -> NamedPartition {
    NamedPartition { blocks: p.named_blocks(|x| u.name(x).to_string()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{prime_power_order_valuation, truncated_order_valuation, Fp};
    use crate::lattice::iso::find_isomorphism;
    use crate::order::check_semiring_axioms;
    use crate::superval::{check_transmission, initial_cover_table};
    use crate::report::CheckConfig;
    use crate::supertropical::fixtures::{self, truncated_d, z2, z4};
    use crate::supertropical::{check_supertropical_axioms, tangible_closed_check};

    fn pn(u: &FiniteSupertropical, blocks: &[&[&str]]) -> Partition {
        let b: Vec<Vec<String>> = blocks.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect();
        partition_from_names(u, &b).unwrap()
    }

    #[test]
    fn z2_has_three_relations() {
        let u = z2();
        let all = enumerate_mfce(&u, DEFAULT_BOUND).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all[0].is_diagonal());
        assert_eq!(all[1], e_t(&u).unwrap());
        assert_eq!(all[2], e_nu(&u));
        assert_eq!(named(&u, &all[1]).blocks, vec![vec!["0"], vec!["1", "g"], vec!["e"]]);
    }

    #[test]
    fn z4_has_four_relations() {
        assert_eq!(enumerate_mfce(&z4(), DEFAULT_BOUND).unwrap().len(), 4);
    }

    #[test]
    fn all_ghost_has_only_the_diagonal() {
        let u = FiniteSupertropical::from_table(fixtures::boolean()).unwrap();
        let all = enumerate_mfce(&u, DEFAULT_BOUND).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_diagonal());
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(enumerate_mfce(&z4(), 4), Err(BoundExceeded { size: 6, bound: 4 }));
    }

    #[test]
    fn cross_fiber_block_is_caught() {
        let u = fixtures::d_pair();
        let within = pn(&u, &[&["0"], &["1", "1ν"], &["g"], &["gν"]]);
        assert!(!check_mfce(&u, &within).failed("fiber conserving"));
        let across = pn(&u, &[&["0"], &["1", "g"], &["1ν"], &["gν"]]);
        assert!(check_mfce(&u, &across).failed("fiber conserving"));
    }

    #[test]
    fn quotients_are_supertropical() {
        for (name, u) in fixtures::supertropical_fixtures() {
            if u.len() > DEFAULT_BOUND {
                continue;
            }
            for p in enumerate_mfce(&u, DEFAULT_BOUND).unwrap() {
                let q = quotient(&u, &p).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(check_supertropical_axioms(&q.u.table).report.passed());
                // π is injective on eU.
                let ghosts = u.ghost_ideal_elems();
                for &a in &ghosts {
                    for &b in &ghosts {
                        assert_eq!(a == b, q.projection[a] == q.projection[b], "{name}");
                    }
                }
                // π is a homomorphism.
                for x in 0..u.len() {
                    for y in 0..u.len() {
                        assert_eq!(q.projection[u.add(&x, &y)], q.u.add(&q.projection[x], &q.projection[y]));
                        assert_eq!(q.projection[u.mul(&x, &y)], q.u.mul(&q.projection[x], &q.projection[y]));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_by_e_nu_is_all_ghost() {
        for (_, u) in fixtures::supertropical_fixtures() {
            let q = quotient(&u, &e_nu(&u)).unwrap();
            assert!(q.u.tangibles().is_empty());
            assert_eq!(q.u.len(), u.ghost_ideal_elems().len());
        }
    }

    #[test]
    fn e_l_with_non_submonoid_l() {
        let u = truncated_d(2);
        let l = [u.table.index_of("e").unwrap(), u.table.index_of("tν").unwrap()];
        let p = e_l(&u, &l).unwrap();
        let q = quotient(&u, &p).unwrap();
        assert!(check_semiring_axioms(&q.u.table).unwrap().passed());
        let r = tangible_closed_check(&q.u, &CheckConfig::default());
        assert!(r.failed("tangibles closed"));
        let bad = e_l(&u, &[u.table.index_of("e").unwrap(), u.table.index_of("t^2ν").unwrap()]);
        assert!(bad.is_err());
    }

    #[test]
    fn tangible_quotient_of_truncated_cover_is_d_of_m() {
        for k in [1, 2] {
            let phi = initial_cover_table(&truncated_order_valuation::<Fp<2>>(k)).unwrap();
            let q = quotient(&phi.target, &e_t(&phi.target).unwrap()).unwrap();
            assert!(find_isomorphism(&q.u, &truncated_d(k)).is_some());
        }
    }

    #[test]
    fn e_t_on_two_adic_truncation() {
        // ℤ/8 with ord_2: units {1, 3, 5, 7}, then {2, 6}, then {4}.
        let phi = initial_cover_table(&prime_power_order_valuation(2, 2)).unwrap();
        let u = &phi.target;
        let p = e_t(u).unwrap();
        let blocks = named(u, &p).blocks;
        assert!(blocks.contains(&vec!["1".to_string(), "3".into(), "5".into(), "7".into()]));
        assert!(blocks.contains(&vec!["2".to_string(), "6".into()]));
        assert!(blocks.contains(&vec!["4".to_string()]));
    }

    #[test]
    fn e_t_on_d_of_g_is_diagonal() {
        assert!(e_t(&truncated_d(2)).unwrap().is_diagonal());
    }

    #[test]
    fn induced_transmissions_on_quotients() {
        let cfg = CheckConfig::default();
        for (name, u) in fixtures::supertropical_fixtures() {
            let rels = enumerate_mfce(&u, DEFAULT_BOUND).unwrap();
            for outer in &rels {
                let qo = quotient(&u, outer).unwrap();
                let proj = qo.projection.clone();
                let alpha = Transmission::new("π", u.clone(), qo.u.clone(), move |x: &usize| proj[*x]);
                for inner in rels.iter().filter(|e| e.refines(outer)) {
                    let qi = quotient(&u, inner).unwrap();
                    let bar = induced_transmission(&alpha, inner, &qi).unwrap();
                    assert!(check_transmission(&bar, &cfg).report.passed(), "{name}");
                }
                for other in rels.iter().filter(|e| !e.refines(outer)) {
                    assert!(induced_transmission(&alpha, other, &quotient(&u, other).unwrap()).is_err());
                }
            }
        }
    }
}
