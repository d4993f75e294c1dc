//! Isomorphisms of finite supertropical semirings.

use crate::order::Semiring;
use crate::report::{CheckConfig, Report};
use crate::superval::Supervaluation;
use crate::supertropical::FiniteSupertropical;

/// A bijection f: a → b preserving 0, 1, + and ·, found by backtracking.
pub fn find_isomorphism(a: &FiniteSupertropical, b: &FiniteSupertropical) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.tangibles().len() != b.tangibles().len() {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[a.table.zero] = b.table.zero;
    used[b.table.zero] = true;
    if a.table.one != a.table.zero {
        f[a.table.one] = b.table.one;
        used[b.table.one] = true;
    }
    // Assign ghosts before tangibles so fiber constraints prune early.
    let mut order: Vec<usize> = a.ghost_ideal_elems();
    order.extend(a.tangibles());
    order.retain(|&x| f[x] == usize::MAX);
    if search(a, b, &order, 0, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

fn consistent(a: &FiniteSupertropical, b: &FiniteSupertropical, f: &[usize], x: usize) -> bool {
    if a.is_ghost(x) != b.is_ghost(f[x]) {
        return false;
    }
    (0..a.len()).filter(|&y| f[y] != usize::MAX).all(|y| {
        let ok = |p: usize, q: usize| f[p] == usize::MAX || f[p] == q;
        ok(a.table.mul[x][y], b.table.mul[f[x]][f[y]])
            && ok(a.table.add[x][y], b.table.add[f[x]][f[y]])
            && ok(a.table.mul[y][x], b.table.mul[f[y]][f[x]])
    })
}

fn search(
    a: &FiniteSupertropical,
    b: &FiniteSupertropical,
    order: &[usize],
    i: usize,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == order.len() {
        let n = a.len();
        return (0..n).all(|x| {
            (0..n).all(|y| f[a.table.mul[x][y]] == b.table.mul[f[x]][f[y]] && f[a.table.add[x][y]] == b.table.add[f[x]][f[y]])
        });
    }
    let x = order[i];
    for c in 0..b.len() {
        if used[c] {
            continue;
        }
        f[x] = c;
        used[c] = true;
        if consistent(a, b, f, x) && search(a, b, order, i + 1, f, used) {
            return true;
        }
        used[c] = false;
    }
    f[x] = usize::MAX;
    false
}

/// φ and ψ are isomorphic over the ghost ideal: the assignment φ(a) ↦ ψ(a)
/// on tangibles and ghost ↦ ghost of the same name is a well-defined
/// semiring isomorphism. Both are assumed tangibly surjective.
pub fn iso_over_m<R: Semiring>(
    phi: &Supervaluation<R, FiniteSupertropical>,
    psi: &Supervaluation<R, FiniteSupertropical>,
    cfg: &CheckConfig,
) -> Report {
    let (u, v) = (&phi.target, &psi.target);
    let (elems, mode) = phi.carrier.elements(cfg);
    let mut r = Report::new(mode);
    r.check("well defined");
    r.check("bijective");
    r.check("homomorphism");
    let mut f = vec![usize::MAX; u.len()];
    for g in u.ghost_ideal_elems() {
        match v.table.index_of(u.name(g)) {
            Some(h) if v.is_ghost(h) => f[g] = h,
            _ => r.witness("well defined", vec![u.name(g).into()], "ghost has no counterpart"),
        }
    }
    for a in &elems {
        let (x, y) = (phi.eval(a), psi.eval(a));
        if f[x] == usize::MAX {
            f[x] = y;
        } else if f[x] != y {
            r.witness("well defined", vec![format!("{a:?}")], format!("{} ↦ {} and {}", u.name(x), v.name(f[x]), v.name(y)));
        }
    }
    if !r.passed() {
        return r;
    }
    let mut hit = vec![false; v.len()];
    for (x, &y) in f.iter().enumerate() {
        if y == usize::MAX {
            r.witness("bijective", vec![u.name(x).into()], "not in the image of φ");
        } else if std::mem::replace(&mut hit[y], true) {
            r.witness("bijective", vec![v.name(y).into()], "hit twice");
        }
    }
    if let Some(y) = hit.iter().position(|h| !h) {
        r.witness("bijective", vec![v.name(y).into()], "missed");
    }
    if !r.passed() {
        return r;
    }
    for x in 0..u.len() {
        for y in 0..u.len() {
            if f[u.table.add[x][y]] != v.table.add[f[x]][f[y]] || f[u.table.mul[x][y]] != v.table.mul[f[x]][f[y]] {
                r.witness("homomorphism", vec![u.name(x).into(), u.name(y).into()], "");
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supertropical::fixtures::{cyclic, truncated_d, z2, z4};

    #[test]
    fn fixtures_are_self_isomorphic() {
        for u in [z2(), z4(), truncated_d(2)] {
            assert!(find_isomorphism(&u, &u).is_some());
        }
        assert!(find_isomorphism(&z4(), &truncated_d(2)).is_none());
        assert!(find_isomorphism(&cyclic(3), &truncated_d(1)).is_none());
    }

    #[test]
    fn z4_has_a_nontrivial_automorphism() {
        // g ↦ g³ fixes 1 and g².
        let u = z4();
        let f = find_isomorphism(&u, &u).unwrap();
        assert_eq!(f[u.table.one], u.table.one);
    }
}
