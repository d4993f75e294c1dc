//! The ghost surpassing relation x ⊨ y and the upper-bound property.

use crate::inputs;
use crate::order::Semiring;
use crate::report::{CheckConfig, Mode, Report};
use crate::superval::{Supervaluation, Transmission};

/// x ⊨ y: x = y, or x ∈ eU ∪ {0} with ν(y) ≤ x.
pub fn gs<S: Semiring + ?Sized>(s: &S, x: &S::Elem, y: &S::Elem) -> bool {
    x == y || (s.is_ghost_or_zero(x) && s.le(&s.nu(y), x))
}

/// x ⊨ y straight from the definition: some z ∈ eU ∪ {0} has x = y + z.
pub fn gs_bruteforce<S: Semiring + ?Sized>(s: &S, elems: &[S::Elem], x: &S::Elem, y: &S::Elem) -> bool {
    elems.iter().filter(|z| s.is_ghost_or_zero(z)).any(|z| s.add(y, z) == *x)
}

/// (x, y, z) with x ⊨ y ⊨ z by construction: y = z + ν(b), x = y + ν(a).
fn chain<S: Semiring + ?Sized>(s: &S, a: &S::Elem, b: &S::Elem, c: &S::Elem) -> (S::Elem, S::Elem, S::Elem) {
    let y = s.add(c, &s.nu(b));
    let x = s.add(&y, &s.nu(a));
    (x, y, c.clone())
}

fn laws_on<S: Semiring + ?Sized>(s: &S, r: &mut Report, x: &S::Elem, y: &S::Elem, z: &S::Elem) {
    let (xy, yx, yz) = (gs(s, x, y), gs(s, y, x), gs(s, y, z));
    if xy && yx && x != y {
        r.witness("antisymmetric", inputs![x, y], "");
    }
    if xy && yz && !gs(s, x, z) {
        r.witness("transitive", inputs![x, y, z], "");
    }
    if xy {
        let (xz, yz) = (s.add(x, z), s.add(y, z));
        if !gs(s, &xz, &yz) {
            r.witness("x+z ⊨ y+z", inputs![x, y, z], format!("{xz:?} vs {yz:?}"));
        }
        let (xz, yz) = (s.mul(x, z), s.mul(y, z));
        if !gs(s, &xz, &yz) {
            r.witness("xz ⊨ yz", inputs![x, y, z], format!("{xz:?} vs {yz:?}"));
        }
    }
}

/// Antisymmetry, transitivity and compatibility with + and ·. Finite
/// carriers are run on all triples and compared with the definition;
/// sampled ones also get a related chain built from every triple, so the
/// implications are not vacuous.
pub fn check_gs_laws<S: Semiring + ?Sized>(s: &S, cfg: &CheckConfig) -> Report {
    let carrier = s.carrier();
    let (trip, mode) = carrier.triples(cfg);
    let mut r = Report::new(mode);
    for a in ["antisymmetric", "transitive", "x+z ⊨ y+z", "xz ⊨ yz"] {
        r.check(a);
    }
    if let Some(all) = carrier.all() {
        r.check("matches definition");
        for x in all {
            for y in all {
                if gs(s, x, y) != gs_bruteforce(s, all, x, y) {
                    r.witness("matches definition", inputs![x, y], "");
                }
            }
        }
    }
    for (a, b, c) in &trip {
        laws_on(s, &mut r, a, b, c);
        if !mode.is_exhaustive() {
            let (x, y, z) = chain(s, a, b, c);
            laws_on(s, &mut r, &x, &y, &z);
            laws_on(s, &mut r, &x, &y, a);
            laws_on(s, &mut r, &y, &x, b);
        }
    }
    r
}

/// x ⊨ y ⇒ α(x) ⊨ α(y) for a transmission α.
pub fn check_gs_preserved<U: Semiring, V: Semiring>(alpha: &Transmission<U, V>, cfg: &CheckConfig) -> Report {
    let u = &alpha.source;
    let (pairs, mode) = u.carrier().pairs(cfg);
    let mut r = Report::new(mode);
    r.check("α preserves ⊨");
    for (a, b) in &pairs {
        let candidates = [(a.clone(), b.clone()), (u.add(b, &u.nu(a)), b.clone())];
        for (x, y) in &candidates {
            if gs(u, x, y) && !gs(&alpha.target, &alpha.apply(x), &alpha.apply(y)) {
                r.witness("α preserves ⊨", inputs![x, y], "");
            }
        }
    }
    r
}

/// SV5 for the pair (a, b) holds exactly when φ(a) + φ(b) ⊨ φ(a + b).
pub fn check_sv5_as_gs<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, cfg: &CheckConfig) -> Report {
    let (pairs, mode) = phi.carrier.pairs(cfg);
    let mut r = Report::new(mode);
    r.check("SV5 ⇔ ⊨");
    let u = &phi.target;
    for (a, b) in &pairs {
        let sum = u.add(&phi.eval(a), &phi.eval(b));
        let fab = phi.eval(&phi.domain.add(a, b));
        let sv5 = !u.is_tangible(&sum) || sum == fab;
        if sv5 != gs(u, &sum, &fab) {
            r.witness("SV5 ⇔ ⊨", inputs![a, b], format!("{sum:?} vs {fab:?}"));
        }
    }
    r
}

/// Σφ(aᵢ) ⊨ φ(Σaᵢ) on sampled tuples of length 1..=max_len.
pub fn check_gs_sums<R: Semiring, U: Semiring>(phi: &Supervaluation<R, U>, max_len: usize, cfg: &CheckConfig) -> Report {
    use rand::Rng;
    let mut rng = cfg.rng_for(11);
    let mut r = Report::new(Mode::Sampled(cfg.samples));
    r.check("Σφ(aᵢ) ⊨ φ(Σaᵢ)");
    let (d, u) = (&phi.domain, &phi.target);
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=max_len);
        let xs: Vec<R::Elem> = (0..n).map(|_| phi.carrier.draw(&mut rng)).collect();
        let images: Vec<U::Elem> = xs.iter().map(|x| phi.eval(x)).collect();
        let lhs = u.sum(images.iter());
        let rhs = phi.eval(&d.sum(xs.iter()));
        if !gs(u, &lhs, &rhs) {
            r.witness("Σφ(aᵢ) ⊨ φ(Σaᵢ)", inputs![xs], format!("{lhs:?} vs {rhs:?}"));
        }
    }
    r
}

/// x + a + b = x ⇒ x + a = x, the rephrased upper-bound condition.
pub fn ub_rephrased<S: Semiring + ?Sized>(s: &S, x: &S::Elem, a: &S::Elem, b: &S::Elem) -> bool {
    s.add(&s.add(x, a), b) != *x || s.add(x, a) == *x
}

/// Number of listed elements whose triples are always enumerated.
const UB_HEAD: usize = 8;

/// The upper-bound condition on every triple of a finite carrier, or on
/// all triples of the first listed elements plus random triples.
pub fn check_ub<S: Semiring + ?Sized>(s: &S, cfg: &CheckConfig) -> Report {
    let carrier = s.carrier();
    let (trip, mode) = carrier.triples(cfg);
    let mut r = Report::new(mode);
    r.check("ub");
    let mut test = |x: &S::Elem, a: &S::Elem, b: &S::Elem| {
        if !ub_rephrased(s, x, a, b) {
            r.witness("ub", inputs![x, a, b], "x + a + b = x but x + a ≠ x");
        }
    };
    if !mode.is_exhaustive() {
        let (head, _) = carrier.elements(cfg);
        let head = &head[..head.len().min(UB_HEAD)];
        for x in head {
            for a in head {
                for b in head {
                    test(x, a, b);
                }
            }
        }
    }
    for (x, a, b) in &trip {
        test(x, a, b);
    }
    r
}

/// Exhaustive upper-bound check on a finite table, with antisymmetry of
/// y ⊨ x ⇔ ∃a: y = x + a checked straight from the definition.
pub fn check_ub_semiring(t: &crate::order::FiniteSemiringTable) -> Report {
    let mut r = check_ub(t, &CheckConfig::default());
    r.check("antisymmetric");
    let n = t.len();
    let above = |y: usize, x: usize| (0..n).any(|a| t.add[x][a] == y);
    for x in 0..n {
        for y in 0..x {
            if above(x, y) && above(y, x) {
                r.witness("antisymmetric", vec![t.name(x).into(), t.name(y).into()], "");
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{leading_term_superval, padic_valuation, Integers, Naturals};
    use crate::order::{FiniteSemiringTable, Theta, ThetaGroup};
    use crate::poly::{PolySemiring, PolyShape};
    use crate::superval::ghost_transmission;
    use crate::supertropical::d_of;
    use crate::supertropical::fixtures::{boolean, supertropical_fixtures, tg_two_chain, z4};
    use crate::lattice::strong::hat_v;
    use crate::lattice::{enumerate_mfce, quotient};
    use num_bigint::BigInt;
    use num_rational::BigRational as Q;

    #[test]
    fn gs_examples() {
        let u = z4();
        let idx = |s: &str| u.table.index_of(s).unwrap();
        for x in 0..u.len() {
            assert!(gs(&u, &x, &x));
            assert_eq!(gs(&u, &x, &u.table.zero), u.is_ghost(x) || x == u.table.zero);
        }
        assert!(gs(&u, &idx("e"), &idx("g")));
        assert!(!gs(&u, &idx("g"), &idx("1")));
        assert!(!gs(&u, &idx("1"), &idx("e")));
    }

    #[test]
    fn ghost_surpasses_iff_nu_dominates() {
        let d = d_of(ThetaGroup);
        let cfg = CheckConfig { seed: 9, samples: 500 };
        let (pairs, _) = d.carrier().pairs(&cfg);
        for (x, y) in pairs {
            if let crate::supertropical::STElement::Ghost(_) = x {
                let by_value = d.compare_nu(&x, &y) != std::cmp::Ordering::Less;
                assert_eq!(gs(&d, &x, &y), by_value, "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn laws_hold_on_fixtures_and_dm() {
        for (name, u) in supertropical_fixtures() {
            let r = check_gs_laws(&u, &CheckConfig::default());
            assert!(r.passed(), "{name}: {:?}", r.witnesses);
            assert!(r.mode.is_exhaustive());
        }
        let r = check_gs_laws(&d_of(ThetaGroup), &CheckConfig { seed: 1, samples: 2000 });
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn transmissions_preserve_gs() {
        for (name, u) in supertropical_fixtures() {
            let alpha = ghost_transmission(&u);
            assert!(check_gs_preserved(&alpha, &CheckConfig::default()).passed(), "{name}");
            if u.len() <= 9 {
                for p in enumerate_mfce(&u, 12).unwrap() {
                    let q = quotient(&u, &p).unwrap();
                    let pi = q.projection.clone();
                    let alpha = Transmission::new("π", u.clone(), q.u.clone(), move |x: &usize| pi[*x]);
                    assert!(check_gs_preserved(&alpha, &CheckConfig::default()).passed(), "{name}");
                }
            }
        }
    }

    #[test]
    fn sv5_matches_gs_pairwise() {
        let cfg = CheckConfig { seed: 4, samples: 800 };
        let phi = leading_term_superval::<Q>();
        assert!(check_sv5_as_gs(&phi, &cfg).passed());
        assert!(check_gs_sums(&phi, 6, &cfg).passed());
        let v2 = padic_valuation(2).unwrap();
        let hat = hat_v(&v2);
        assert!(check_sv5_as_gs(&hat, &cfg).passed());
        assert!(check_gs_sums(&hat, 6, &cfg).passed());
    }

    #[test]
    fn idempotent_and_supertropical_are_ub() {
        for t in [boolean(), tg_two_chain()] {
            assert!(check_ub_semiring(&t).passed());
        }
        for (name, u) in supertropical_fixtures() {
            assert!(check_ub_semiring(&u.table).passed(), "{name}");
        }
        let cfg = CheckConfig { seed: 2, samples: 400 };
        let shape = PolyShape { nvars: 2, max_deg: 3, max_terms: 4 };
        assert!(check_ub(&PolySemiring::new(z4(), shape), &cfg).passed());
        assert!(check_ub(&PolySemiring::new(d_of(ThetaGroup), shape), &cfg).passed());
        assert!(check_ub(&PolySemiring::new(Theta, shape), &cfg).passed());
    }

    #[test]
    fn naturals_are_ub_and_integers_are_not() {
        let cfg = CheckConfig { seed: 2, samples: 400 };
        assert!(check_ub(&Naturals, &cfg).passed());
        let r = check_ub(&Integers::default(), &cfg);
        let w = r.witnesses_for("ub").find(|w| w.inputs == ["0", "1", "-1"]);
        assert!(w.is_some(), "{:?}", r.witnesses);
        let z = |n: i64| BigInt::from(n);
        assert!(!ub_rephrased(&Integers::default(), &z(0), &z(1), &z(-1)));
    }

    #[test]
    fn definition_antisymmetry_catches_a_broken_table() {
        // {0, 1, 2} with addition mod 3 and 1·x = x: y ⊨ x for every pair.
        let t = FiniteSemiringTable {
            names: vec!["0".into(), "1".into(), "2".into()],
            zero: 0,
            one: 1,
            add: (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect(),
            mul: (0..3).map(|a| (0..3).map(|b| (a * b) % 3).collect()).collect(),
            e: None,
            nu: None,
        };
        let r = check_ub_semiring(&t);
        assert!(r.failed("antisymmetric"));
        assert!(r.failed("ub"));
    }
}
