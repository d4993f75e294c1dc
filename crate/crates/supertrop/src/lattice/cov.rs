//! The lattice Cov(v) of supervaluations covering a finite m-valuation,
//! materialized as {φ_v/E : E MFCE on U(v)}, and suprema of covers.

use serde::Serialize;
use thiserror::Error;

use super::mfce::{enumerate_mfce, quotient, BoundExceeded, QuotientError};
use super::partition::Partition;
use crate::order::{FiniteSemiringTable, Semiring};
use crate::report::{CheckConfig, Mode, Report};
use crate::superval::{check_dominance, initial_cover_table, CoverError, Supervaluation};
use crate::supertropical::{FiniteSupertropical, SupertropicalError};
use crate::valuation::MValuationInstance;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Bound(#[from] BoundExceeded),
}

/// MFCE relations on U(v), finest first. Relation i stands for the cover
/// φ_v/E_i; φ_v/E_i ≥ φ_v/E_j iff E_i ⊆ E_j.
#[derive(Debug, Clone)]
pub struct CovLattice {
    pub u: FiniteSupertropical,
    pub relations: Vec<Partition>,
    /// order[i][j]: E_i ⊆ E_j.
    pub order: Vec<Vec<bool>>,
    /// (i, j) when φ_v/E_i covers φ_v/E_j immediately.
    pub hasse: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct JsonNode {
    id: usize,
    label: String,
    blocks: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct JsonLattice {
    carrier: Vec<String>,
    nodes: Vec<JsonNode>,
    hasse: Vec<(usize, usize)>,
}

impl CovLattice {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// "phi_v" for the diagonal, "v" for E(ν), "phi_v/E<i>" otherwise.
    pub fn label(&self, i: usize) -> String {
        if self.relations[i].is_diagonal() {
            "phi_v".into()
        } else if i + 1 == self.len() {
            "v".into()
        } else {
            format!("phi_v/E{i}")
        }
    }

    /// Blocks by element names, each block and the list sorted.
    pub fn sorted_blocks(&self, i: usize) -> Vec<Vec<String>> {
        let mut b = self.relations[i].named_blocks(|x| self.u.name(x).to_string());
        for block in &mut b {
            block.sort();
        }
        b.sort();
        b
    }

    /// The Hasse diagram, larger covers on top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cov {\n  rankdir=TB;\n");
        for i in 0..self.len() {
            let blocks: Vec<String> = self.sorted_blocks(i).iter().map(|b| format!("{{{}}}", b.join(","))).collect();
            s += &format!("  n{i} [label=\"{}\", tooltip=\"{}\"];\n", self.label(i), blocks.join(" ").replace('"', "'"));
        }
        for (a, b) in &self.hasse {
            s += &format!("  n{a} -> n{b};\n");
        }
        s + "}\n"
    }

    pub fn to_json(&self) -> String {
        let j = JsonLattice {
            carrier: self.u.table.names.clone(),
            nodes: (0..self.len()).map(|i| JsonNode { id: i, label: self.label(i), blocks: self.sorted_blocks(i) }).collect(),
            hasse: self.hasse.clone(),
        };
        serde_json::to_string_pretty(&j).expect("lattice serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} covers\n", self.len());
        for i in 0..self.len() {
            let blocks: Vec<String> = self.sorted_blocks(i).iter().map(|b| format!("{{{}}}", b.join(","))).collect();
            s += &format!("{}: {}\n", self.label(i), blocks.join(" "));
        }
        for (a, b) in &self.hasse {
            s += &format!("{} > {}\n", self.label(*a), self.label(*b));
        }
        s
    }
}

/// Refinement order and its covering pairs.
pub fn order_and_hasse(relations: &[Partition]) -> (Vec<Vec<bool>>, Vec<(usize, usize)>) {
    let n = relations.len();
    let order: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| relations[i].refines(&relations[j])).collect()).collect();
    let lt = |i: usize, j: usize| i != j && order[i][j];
    let hasse = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)))
        .collect();
    (order, hasse)
}

/// MFC(U) as the lattice of covers of any tangibly surjective φ: R → U.
pub fn cov_lattice_of(u: &FiniteSupertropical, bound: usize) -> Result<CovLattice, BoundExceeded> {
    let relations = enumerate_mfce(u, bound)?;
    let (order, hasse) = order_and_hasse(&relations);
    Ok(CovLattice { u: u.clone(), relations, order, hasse })
}

/// Cov(v) through the initial cover U(v).
pub fn cov_lattice<R, M>(v: &MValuationInstance<R, M>, bound: usize) -> Result<CovLattice, LatticeError>
where
    R: Semiring + Clone + Send + Sync + 'static,
    M: Semiring + Clone + Send + Sync + 'static,
{
    let phi = initial_cover_table(v)?;
    Ok(cov_lattice_of(&phi.target, bound)?)
}

/// φ/E = π_E∘φ.
pub fn quotient_superval<R: Semiring + Clone>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    e: &Partition,
) -> Result<Supervaluation<R, FiniteSupertropical>, QuotientError> {
    let q = quotient(&phi.target, e)?;
    let (f, proj) = (phi.map.clone(), q.projection);
    Ok(Supervaluation::new(format!("{}/E", phi.name), phi.domain.clone(), q.u, move |a: &R::Elem| proj[f(a)])
        .with_carrier(phi.carrier.clone()))
}

/// The order of {φ/E} computed by dominance alone, for comparison with
/// refinement of the relations.
pub fn dominance_order<R: Semiring + Clone>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    relations: &[Partition],
    cfg: &CheckConfig,
) -> Result<Vec<Vec<bool>>, QuotientError> {
    let covers: Vec<_> = relations.iter().map(|e| quotient_superval(phi, e)).collect::<Result<_, _>>()?;
    Ok(covers.iter().map(|a| covers.iter().map(|b| check_dominance(a, b, cfg).passed()).collect()).collect())
}

/// φ/E_i dominates φ/E_j exactly when E_i ⊆ E_j, over every pair.
pub fn check_dominance_matches_refinement<R: Semiring + Clone>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    bound: usize,
    cfg: &CheckConfig,
) -> Result<Report, LatticeError> {
    let rels = enumerate_mfce(&phi.target, bound)?;
    let dom = dominance_order(phi, &rels, cfg).expect("enumerated relations are MFCE");
    let mut r = Report::new(phi.carrier.elements(cfg).1);
    r.check("dominance iff refinement");
    for i in 0..rels.len() {
        for j in 0..rels.len() {
            let refines = rels[i].refines(&rels[j]);
            if dom[i][j] != refines {
                r.witness("dominance iff refinement", vec![format!("E{i}"), format!("E{j}")], format!("refines {refines}"));
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Error)]
pub enum SupError {
    #[error("no covers given")]
    Empty,
    #[error("the domain carrier is not finite")]
    NotFinite,
    #[error("ghost {0} is missing from some cover")]
    GhostMismatch(String),
    #[error("the equalized product is not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Table(#[from] SupertropicalError),
}

/// ⋁ψ_i: the subsemiring of ∏V_i of tuples (ψ_i(a))_i and of ghost tuples
/// whose components share one ghost name, with ψ(a) = (ψ_i(a))_i.
pub fn sup_cover<R: Semiring + Clone>(
    psis: &[Supervaluation<R, FiniteSupertropical>],
) -> Result<Supervaluation<R, FiniteSupertropical>, SupError> {
    let first = psis.first().ok_or(SupError::Empty)?;
    let domain = first.carrier.all().ok_or(SupError::NotFinite)?.to_vec();
    let vs: Vec<&FiniteSupertropical> = psis.iter().map(|p| &p.target).collect();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let push = |t: Vec<usize>, tuples: &mut Vec<Vec<usize>>| -> usize {
        match tuples.iter().position(|s| *s == t) {
            Some(i) => i,
            None => {
                tuples.push(t);
                tuples.len() - 1
            }
        }
    };
    for g in vs[0].ghost_ideal_elems() {
        let name = vs[0].name(g);
        let t: Vec<usize> = vs
            .iter()
            .map(|v| v.table.index_of(name).filter(|&h| v.is_ghost(h)).ok_or_else(|| SupError::GhostMismatch(name.into())))
            .collect::<Result<_, _>>()?;
        push(t, &mut tuples);
    }
    let mut image = Vec::with_capacity(domain.len());
    for a in &domain {
        let t: Vec<usize> = psis.iter().map(|p| p.eval(a)).collect();
        image.push(push(t, &mut tuples));
    }
    let n = tuples.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let s: Vec<usize> = vs.iter().enumerate().map(|(i, v)| v.table.add[tuples[x][i]][tuples[y][i]]).collect();
            let p: Vec<usize> = vs.iter().enumerate().map(|(i, v)| v.table.mul[tuples[x][i]][tuples[y][i]]).collect();
            let find = |t: &Vec<usize>| {
                tuples.iter().position(|s| s == t).ok_or_else(|| {
                    let names: Vec<&str> = t.iter().enumerate().map(|(i, &z)| vs[i].name(z)).collect();
                    SupError::NotClosed(format!("({})", names.join(",")))
                })
            };
            add[x][y] = find(&s)?;
            mul[x][y] = find(&p)?;
        }
    }
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().enumerate().map(|(i, &z)| vs[i].name(z)).collect();
            if parts.iter().all(|p| *p == parts[0]) {
                parts[0].to_string()
            } else {
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let idx = |t: Vec<usize>| tuples.iter().position(|s| *s == t).expect("0 and 1 are images");
    let zero = idx(vs.iter().map(|v| v.table.zero).collect());
    let one = idx(vs.iter().map(|v| v.table.one).collect());
    let table = FiniteSemiringTable { names, zero, one, add, mul, e: None, nu: None };
    let u = FiniteSupertropical::from_table(table)?;
    let name = format!("⋁({})", psis.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", "));
    let lookup = domain.clone();
    Ok(Supervaluation::new(name, first.domain.clone(), u, move |a: &R::Elem| {
        image[lookup.iter().position(|b| b == a).expect("argument in the listed domain")]
    })
    .with_carrier(first.carrier.clone()))
}

/// φ_v/E_1 ∨ φ_v/E_2 against φ_v/(E_1 ∩ E_2).
pub fn check_sup_is_meet<R: Semiring + Clone>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    e1: &Partition,
    e2: &Partition,
    cfg: &CheckConfig,
) -> Report {
    let mut r = Report::new(Mode::Exhaustive);
    r.check("sup of quotients is quotient by meet");
    let build = || -> Result<_, String> {
        let a = quotient_superval(phi, e1).map_err(|e| e.to_string())?;
        let b = quotient_superval(phi, e2).map_err(|e| e.to_string())?;
        let s = sup_cover(&[a, b]).map_err(|e| e.to_string())?;
        let m = quotient_superval(phi, &e1.meet(e2)).map_err(|e| e.to_string())?;
        Ok((s, m))
    };
    match build() {
        Ok((s, m)) => r.absorb(super::iso::iso_over_m(&s, &m, cfg)),
        Err(e) => r.witness("sup of quotients is quotient by meet", vec![], e),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{trivial_valuation, truncated_order_valuation, FieldRing, Fp, Trunc, TruncatedRing};
    use crate::lattice::iso::iso_over_m;
    use crate::lattice::mfce::DEFAULT_BOUND;
    use crate::superval::check_supervaluation;
    use crate::supertropical::fixtures::z2;

    /// The trivial valuation on F_3 has U(v) ≅ {0, 1, 2, e}, with 2² = 1.
    fn f3_cover() -> Supervaluation<FieldRing<Fp<3>>, FiniteSupertropical> {
        initial_cover_table(&trivial_valuation(&FieldRing::<Fp<3>>::new())).unwrap()
    }

    #[test]
    fn z2_based_valuation_gives_a_three_chain() {
        let phi = f3_cover();
        assert!(crate::lattice::iso::find_isomorphism(&phi.target, &z2()).is_some());
        let l = cov_lattice(&trivial_valuation(&FieldRing::<Fp<3>>::new()), DEFAULT_BOUND).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.hasse, vec![(0, 1), (1, 2)]);
        assert_eq!(l.label(0), "phi_v");
        assert_eq!(l.label(2), "v");
        let dot = l.to_dot();
        assert!(dot.contains("label=\"phi_v\"") && dot.contains("label=\"v\""));
        assert_eq!(l.to_json(), l.clone().to_json());
    }

    #[test]
    fn lattice_is_closed_under_meet_and_join() {
        let v = truncated_order_valuation::<Fp<2>>(2);
        let l = cov_lattice(&v, DEFAULT_BOUND).unwrap();
        for a in &l.relations {
            for b in &l.relations {
                assert!(l.relations.contains(&a.meet(b)));
                assert!(l.relations.contains(&a.join(b)));
                assert_eq!(a.meet(&a.join(b)), *a);
                assert_eq!(a.join(&a.meet(b)), *a);
            }
            assert_eq!(a.meet(a), *a);
            assert_eq!(a.join(a), *a);
        }
        assert!(l.relations[0].is_diagonal());
        assert_eq!(*l.relations.last().unwrap(), crate::lattice::mfce::e_nu(&l.u));
    }

    #[test]
    fn dominance_matches_refinement() {
        let cfg = CheckConfig::default();
        let phi = initial_cover_table(&truncated_order_valuation::<Fp<2>>(1)).unwrap();
        assert!(check_dominance_matches_refinement(&phi, DEFAULT_BOUND, &cfg).unwrap().passed());
        assert!(check_dominance_matches_refinement(&f3_cover(), DEFAULT_BOUND, &cfg).unwrap().passed());
    }

    #[test]
    fn covers_are_supervaluations() {
        let cfg = CheckConfig::default();
        let phi = initial_cover_table(&truncated_order_valuation::<Fp<2>>(2)).unwrap();
        for e in enumerate_mfce(&phi.target, DEFAULT_BOUND).unwrap() {
            let q = quotient_superval(&phi, &e).unwrap();
            assert!(check_supervaluation(&q, &cfg).report.passed());
        }
    }

    #[test]
    fn lattice_depends_only_on_the_target() {
        // φ∘σ for the automorphism t ↦ t + t² of F_2[t]/(t³).
        let cfg = CheckConfig::default();
        let phi = initial_cover_table(&truncated_order_valuation::<Fp<2>>(2)).unwrap();
        let r = TruncatedRing::<Fp<2>>::new(2);
        let sigma = move |a: &Trunc<Fp<2>>| {
            let t = Trunc(vec![Fp::new(0), Fp::new(1), Fp::new(1)]);
            let mut out = r.zero();
            let mut pow = r.one();
            for c in &a.0 {
                out = r.add(&out, &r.mul(&Trunc(vec![*c, Fp::new(0), Fp::new(0)]), &pow));
                pow = r.mul(&pow, &t);
            }
            out
        };
        let f = phi.map.clone();
        let phi2 = Supervaluation::new("φ∘σ", r, phi.target.clone(), move |a| f(&sigma(a))).with_carrier(phi.carrier.clone());
        assert!(check_supervaluation(&phi2, &cfg).report.passed());
        let rels = enumerate_mfce(&phi.target, DEFAULT_BOUND).unwrap();
        assert_eq!(dominance_order(&phi, &rels, &cfg).unwrap(), dominance_order(&phi2, &rels, &cfg).unwrap());
        assert_eq!(dominance_order(&phi, &rels, &cfg).unwrap(), cov_lattice_of(&phi.target, DEFAULT_BOUND).unwrap().order);
    }

    #[test]
    fn sup_of_single_cover_is_itself() {
        let cfg = CheckConfig::default();
        let phi = f3_cover();
        let s = sup_cover(std::slice::from_ref(&phi)).unwrap();
        assert!(iso_over_m(&s, &phi, &cfg).passed());
    }

    #[test]
    fn sup_of_quotients_is_quotient_by_meet() {
        let cfg = CheckConfig::default();
        for phi in [initial_cover_table(&truncated_order_valuation::<Fp<2>>(2)).unwrap()] {
            let rels = enumerate_mfce(&phi.target, DEFAULT_BOUND).unwrap();
            for a in &rels {
                for b in &rels {
                    let r = check_sup_is_meet(&phi, a, b, &cfg);
                    assert!(r.passed(), "{:?}", r.witnesses.first());
                }
            }
        }
    }

    #[test]
    fn sup_of_all_covers_is_the_initial_cover() {
        let cfg = CheckConfig::default();
        let phi = f3_cover();
        let all: Vec<_> = enumerate_mfce(&phi.target, DEFAULT_BOUND)
            .unwrap()
            .iter()
            .map(|e| quotient_superval(&phi, e).unwrap())
            .collect();
        assert!(iso_over_m(&sup_cover(&all).unwrap(), &phi, &cfg).passed());
    }
}
