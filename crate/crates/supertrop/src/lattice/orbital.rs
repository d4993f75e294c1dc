//! Orbital relations x ~_G y ⇔ ∃ g, h ∈ G: gx = hy for submonoids G of
//! S(U) = {x : x𝒯 ⊆ 𝒯}.

use serde::Serialize;

use super::mfce::{check_mfce, enumerate_mfce, BoundExceeded};
use super::partition::{Partition, UnionFind};
use crate::supertropical::FiniteSupertropical;

/// S(U): elements whose products with tangibles stay tangible.
pub fn s_of(u: &FiniteSupertropical) -> Vec<usize> {
    let t = u.tangibles();
    t.iter().copied().filter(|&x| t.iter().all(|&y| !u.is_ghost(u.table.mul[x][y]))).collect()
}

/// S_e(U) = {x ∈ S(U) : ex = e}.
pub fn s_e(u: &FiniteSupertropical) -> Vec<usize> {
    s_of(u).into_iter().filter(|&x| u.nu[x] == u.e).collect()
}

/// 𝒯_e(U) = {x ∈ 𝒯 : ex = e}.
pub fn t_e(u: &FiniteSupertropical) -> Vec<usize> {
    u.tangibles().into_iter().filter(|&x| u.nu[x] == u.e).collect()
}

/// The submonoid generated by `gens`, sorted.
pub fn generated_submonoid(u: &FiniteSupertropical, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![u.table.one];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = u.table.mul[x][g];
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Contains 1 and is closed under products.
pub fn is_submonoid(u: &FiniteSupertropical, g: &[usize]) -> bool {
    g.contains(&u.table.one) && g.iter().all(|&x| g.iter().all(|&y| g.contains(&u.table.mul[x][y])))
}

/// E(G): orbits Gx and Gy intersect.
pub fn orbital(u: &FiniteSupertropical, g: &[usize]) -> Partition {
    let n = u.len();
    let orbits: Vec<Vec<usize>> = (0..n).map(|x| g.iter().map(|&h| u.table.mul[h][x]).collect()).collect();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in 0..x {
            if orbits[x].iter().any(|z| orbits[y].contains(z)) {
                uf.union(x, y);
            }
        }
    }
    uf.into_partition()
}

/// G′ = {x ∈ S(U) : ∃ g ∈ G, gx ∈ G}.
pub fn saturate(u: &FiniteSupertropical, g: &[usize]) -> Vec<usize> {
    s_of(u).into_iter().filter(|&x| g.iter().any(|&h| g.contains(&u.table.mul[h][x]))).collect()
}

/// G_E = {x ∈ S(U) : x ~_E 1}.
pub fn g_of(u: &FiniteSupertropical, e: &Partition) -> Vec<usize> {
    s_of(u).into_iter().filter(|&x| e.same(x, u.table.one)).collect()
}

/// Every submonoid of U contained in `within`, by subset search.
pub fn submonoids(u: &FiniteSupertropical, within: &[usize]) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = within.iter().copied().filter(|&x| x != u.table.one).collect();
    assert!(rest.len() < 20, "subset search over {} elements", rest.len());
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let mut g = vec![u.table.one];
        g.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        g.sort_unstable();
        if is_submonoid(u, &g) {
            out.push(g);
        }
    }
    out
}

/// Saturated submonoids of S_e(U), each giving an orbital MFCE relation.
pub fn saturated_unit_submonoids(u: &FiniteSupertropical) -> Vec<Vec<usize>> {
    submonoids(u, &s_e(u)).into_iter().filter(|g| saturate(u, g) == *g).collect()
}

/// Whether the meet of two orbital MFCE relations is again orbital,
/// recorded per pair and left unasserted.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitalMeetData {
    pub pairs: usize,
    pub orbital_meets: usize,
    pub non_orbital: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn orbital_meet_data(u: &FiniteSupertropical) -> OrbitalMeetData {
    let sat = saturated_unit_submonoids(u);
    let rels: Vec<Partition> = sat.iter().map(|g| orbital(u, g)).collect();
    let mut data = OrbitalMeetData { pairs: 0, orbital_meets: 0, non_orbital: Vec::new() };
    for i in 0..rels.len() {
        for j in 0..i {
            data.pairs += 1;
            let m = rels[i].meet(&rels[j]);
            if orbital(u, &g_of(u, &m)) == m {
                data.orbital_meets += 1;
            } else {
                data.non_orbital.push((sat[j].clone(), sat[i].clone()));
            }
        }
    }
    data
}

/// Every MFCE relation other than E(ν), paired with the orbital relation of
/// its G_E. On semifields the two agree.
pub fn orbital_reconstruction(u: &FiniteSupertropical, bound: usize) -> Result<Vec<(Partition, Partition)>, BoundExceeded> {
    let all = enumerate_mfce(u, bound)?;
    let top = super::mfce::e_nu(u);
    Ok(all.into_iter().filter(|p| *p != top).map(|p| (orbital(u, &g_of(u, &p)), p)).collect())
}

/// E(G) is MFCE exactly when G ⊆ 𝒯_e.
pub fn orbital_is_mfce(u: &FiniteSupertropical, g: &[usize]) -> bool {
    check_mfce(u, &orbital(u, g)).passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{degree_truncation_cover, Fp};
    use crate::lattice::mfce::{e_nu, e_t, named, DEFAULT_BOUND};
    use crate::supertropical::fixtures::{cyclic, truncated_d, z2, z4};

    fn idx(u: &FiniteSupertropical, names: &[&str]) -> Vec<usize> {
        let mut v: Vec<usize> = names.iter().map(|s| u.table.index_of(s).unwrap()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn trivial_group_gives_diagonal() {
        let u = z4();
        assert!(orbital(&u, &[u.table.one]).is_diagonal());
    }

    #[test]
    fn z2_full_group_orbit() {
        let u = z2();
        let p = orbital(&u, &u.tangibles());
        assert_eq!(named(&u, &p).blocks, vec![vec!["0"], vec!["1", "g"], vec!["e"]]);
        assert_eq!(p, e_t(&u).unwrap());
    }

    #[test]
    fn coarsest_orbital_on_domains_has_three_classes() {
        for u in [z2(), z4(), cyclic(3)] {
            let s = s_of(&u);
            assert_eq!(s, u.tangibles());
            let p = orbital(&u, &s);
            assert_eq!(p.num_blocks(), 3);
            assert_eq!(p.blocks(), vec![vec![u.table.zero], u.tangibles(), u.ghosts()]);
        }
    }

    #[test]
    fn saturation_is_idempotent_and_preserves_orbits() {
        for u in [z2(), z4(), truncated_d(2), degree_truncation_cover::<Fp<2>>(2)] {
            for g in submonoids(&u, &s_of(&u)) {
                let sat = saturate(&u, &g);
                assert!(g.iter().all(|x| sat.contains(x)));
                assert_eq!(saturate(&u, &sat), sat);
                assert_eq!(orbital(&u, &g), orbital(&u, &sat));
                if g.iter().all(|&x| u.nu[x] == u.e) {
                    assert!(sat.iter().all(|&x| u.nu[x] == u.e));
                }
            }
        }
    }

    #[test]
    fn saturation_in_a_group_is_the_generated_subgroup() {
        let u = cyclic(6);
        let g2 = idx(&u, &["g^2"]);
        assert_eq!(saturate(&u, &generated_submonoid(&u, &g2)), idx(&u, &["1", "g^2", "g^4"]));
    }

    #[test]
    fn degree_truncation_constants_are_saturated() {
        let u = degree_truncation_cover::<Fp<3>>(3);
        let constants = idx(&u, &["1", "2"]);
        // Nonconstant polynomials are pushed past degree 3 by x^3.
        assert_eq!(s_of(&u), constants);
        assert_eq!(s_e(&u), constants);
        assert_eq!(saturate(&u, &constants), constants);
    }

    #[test]
    fn g_of_examples() {
        let u = z2();
        assert_eq!(g_of(&u, &Partition::diagonal(u.len())), vec![u.table.one]);
        assert_eq!(g_of(&u, &e_nu(&u)), idx(&u, &["1", "g"]));
        assert_eq!(g_of(&u, &e_nu(&u)), t_e(&u));
        let v = z4();
        for h in submonoids(&v, &s_of(&v)) {
            assert_eq!(g_of(&v, &orbital(&v, &h)), saturate(&v, &h));
        }
    }

    #[test]
    fn g_of_gives_the_coarsest_orbital_below() {
        for u in [z4(), truncated_d(2)] {
            let sat: Vec<Vec<usize>> = submonoids(&u, &s_of(&u)).into_iter().filter(|g| saturate(&u, g) == *g).collect();
            for e in enumerate_mfce(&u, DEFAULT_BOUND).unwrap() {
                let ge = g_of(&u, &e);
                assert!(ge.iter().all(|&x| u.nu[x] == u.e));
                let best = orbital(&u, &ge);
                assert!(best.refines(&e));
                for h in &sat {
                    let eh = orbital(&u, h);
                    if eh.refines(&e) {
                        assert!(eh.refines(&best));
                    }
                }
            }
        }
    }

    #[test]
    fn join_of_orbitals_is_orbital_of_generated() {
        let u = z4();
        let subs = submonoids(&u, &s_of(&u));
        for g1 in &subs {
            for g2 in &subs {
                let lhs = orbital(&u, g1).join(&orbital(&u, g2));
                let mut gens = g1.clone();
                gens.extend(g2);
                let rhs = orbital(&u, &generated_submonoid(&u, &gens));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn semifield_relations_are_orbital_or_top() {
        for u in [z2(), z4(), cyclic(6)] {
            for (orb, e) in orbital_reconstruction(&u, DEFAULT_BOUND).unwrap() {
                assert_eq!(orb, e);
            }
        }
    }

    #[test]
    fn mfce_exactly_inside_unit_fiber() {
        let u = truncated_d(2);
        for g in submonoids(&u, &s_of(&u)) {
            assert_eq!(orbital_is_mfce(&u, &g), g.iter().all(|&x| u.nu[x] == u.e));
        }
    }

    #[test]
    fn sat_to_orbital_is_an_order_isomorphism() {
        for u in [z4(), cyclic(6)] {
            let sat = saturated_unit_submonoids(&u);
            for a in &sat {
                assert_eq!(g_of(&u, &orbital(&u, a)), *a);
                for b in &sat {
                    let inc = a.iter().all(|x| b.contains(x));
                    assert_eq!(inc, orbital(&u, a).refines(&orbital(&u, b)));
                }
            }
        }
    }

    #[test]
    fn meet_data_is_recorded() {
        let d = orbital_meet_data(&z4());
        assert_eq!(d.pairs, 3);
        assert_eq!(d.orbital_meets + d.non_orbital.len(), d.pairs);
    }

    #[test]
    fn mfce_relations_match_unit_fiber_subgroups() {
        for (u, expected) in [(z2(), 2), (z4(), 3), (cyclic(6), 4)] {
            // In a finite group every submonoid is a subgroup.
            let subgroups = submonoids(&u, &t_e(&u));
            assert_eq!(subgroups.len(), expected);
            let top = e_nu(&u);
            let rels: Vec<Partition> = enumerate_mfce(&u, DEFAULT_BOUND).unwrap().into_iter().filter(|p| *p != top).collect();
            let image: Vec<Partition> = subgroups.iter().map(|h| orbital(&u, h)).collect();
            let mut sorted = image.clone();
            crate::lattice::mfce::sort_canonical(&mut sorted);
            assert_eq!(sorted, rels);
            for (a, ha) in subgroups.iter().enumerate() {
                for (b, hb) in subgroups.iter().enumerate() {
                    assert_eq!(ha.iter().all(|x| hb.contains(x)), image[a].refines(&image[b]));
                }
            }
        }
    }
}
