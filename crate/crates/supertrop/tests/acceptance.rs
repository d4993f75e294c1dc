//! Acceptance suite: one PASS/FAIL line per criterion, exact checks only.
//! Runs without the libtest harness so every line is printed.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational as Q;

use supertrop::cli::{cmd_kapranov, Instance, RunConfig};
use supertrop::instances::{
    convex_subgroup_valuation, degree_valuation, leading_term_superval, padic_rational_valuation, padic_valuation,
    puiseux_valuation, reciprocal_valuation, trivial_valuation, truncated_order_valuation, FieldRing, Fp,
};
use supertrop::lattice::cov::check_sup_is_meet;
use supertrop::lattice::strong::check_unit_relation;
use supertrop::lattice::{e_l, enumerate_mfce, find_isomorphism, quotient, Partition, DEFAULT_BOUND};
use supertrop::order::{check_bipotent, check_round_trip, check_semiring_axioms, tg_from_monoid, FiniteMonoid, ThetaGroup};
use supertrop::poly::iq::tilde_v_map;
use supertrop::poly::{check_gs_laws, eval_strong_trials, kapranov_trials, Poly, PolyShape, TrialConfig};
use supertrop::superval::initial_cover_table;
use supertrop::supertropical::fixtures::{shipped_tables, supertropical_fixtures, truncated_d, z2, z4};
use supertrop::supertropical::{check_supertropical_axioms, d_of, reconstruct_addition, tangible_closed_check};
use supertrop::valuation::{identity_valuation, is_insensitive, is_strict, is_strong, nu_valuation};
use supertrop::{CheckConfig, FiniteSupertropical, Semiring};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn axiom_suites() -> Outcome {
    let start = Instant::now();
    let cfg = CheckConfig::default();
    let tables = shipped_tables();
    for (name, t) in &tables {
        let semiring = check_semiring_axioms(t).map_err(|e| e.to_string())?.passed();
        ensure(semiring == (*name != "d_pair_literal"), format!("semiring verdict on {name}"))?;
        let bipotent = check_bipotent(t).passed();
        let expect_bipotent = matches!(*name, "boolean" | "tg_two_chain" | "tg_theta_chain2" | "tg_theta_chain3");
        ensure(bipotent == expect_bipotent, format!("bipotent verdict on {name}"))?;
    }
    for (name, u) in supertropical_fixtures() {
        ensure(check_supertropical_axioms(&u.table).report.passed(), format!("supertropical axioms on {name}"))?;
    }
    let tg = tg_from_monoid(FiniteMonoid::theta_chain(3), &cfg).map_err(|_| "T(G) construction".to_string())?;
    ensure(check_round_trip(&tg, &cfg).passed(), "T(G) round trip")?;

    // L = {e, tν} is not a submonoid: the quotient is a semiring whose
    // tangibles are not closed under products.
    let u = truncated_d(2);
    let l = [u.table.index_of("e").unwrap(), u.table.index_of("tν").unwrap()];
    let q = quotient(&u, &e_l(&u, &l).map_err(|_| "E(L) refused")?).map_err(|e| e.to_string())?;
    ensure(check_semiring_axioms(&q.u.table).unwrap().passed(), "U/E(L) semiring")?;
    ensure(tangible_closed_check(&q.u, &cfg).failed("tangibles closed"), "U/E(L) tangibles closed")?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.2}s"))?;
    Ok(format!("{} tables, {secs:.3}s", tables.len()))
}

fn addition_reconstruction() -> Outcome {
    let mut cells = 0;
    for (name, u) in supertropical_fixtures() {
        ensure(reconstruct_addition(&u) == u.table.add, format!("addition differs on {name}"))?;
        cells += u.len() * u.len();
    }
    Ok(format!("{cells} entries"))
}

fn mfce_quotients() -> Outcome {
    let mut total = 0;
    for (name, u) in supertropical_fixtures() {
        let rels = enumerate_mfce(&u, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        for p in &rels {
            let q = quotient(&u, p).map_err(|e| format!("{name}: {e}"))?;
            ensure(check_supertropical_axioms(&q.u.table).report.passed(), format!("quotient of {name}"))?;
        }
        if name == "z4" {
            ensure(rels.len() == 4, format!("z4 gave {} quotients", rels.len()))?;
        }
        total += rels.len();
    }
    Ok(format!("{total} quotients"))
}

/// Block labels by first occurrence, so equal partitions compare equal.
fn canonical(labels: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .into_iter()
        .map(|l| match seen.iter().position(|&s| s == l) {
            Some(i) => i,
            None => {
                seen.push(l);
                seen.len() - 1
            }
        })
        .collect()
}

/// Subgroups H of the tangibles x with e·x = e, each giving x ~ y iff
/// Hx ∩ Hy ≠ ∅, plus the relation ex = ey. Works on raw tables only.
fn subgroup_relations(u: &FiniteSupertropical) -> BTreeSet<Vec<usize>> {
    let t = &u.table;
    let n = t.len();
    let e = t.add[t.one][t.one];
    let ghost = |x: usize| t.mul[e][x] == x;
    let unit_fiber: Vec<usize> = (0..n).filter(|&x| x != t.zero && !ghost(x) && t.mul[e][x] == e && x != t.one).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << unit_fiber.len()) {
        let mut h = vec![t.one];
        h.extend(unit_fiber.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        if !h.iter().all(|&a| h.iter().all(|&b| h.contains(&t.mul[a][b]))) {
            continue;
        }
        let orbit = |x: usize| -> BTreeSet<usize> { h.iter().map(|&g| t.mul[g][x]).collect() };
        let mut label: Vec<usize> = (0..n).collect();
        // Orbits of a group action are disjoint or equal.
        for x in 0..n {
            for y in 0..x {
                if !orbit(x).is_disjoint(&orbit(y)) {
                    label[x] = label[y];
                    break;
                }
            }
        }
        out.insert(canonical(label));
    }
    out.insert(canonical((0..n).map(|x| t.mul[e][x])));
    out
}

fn enumeration_matches_subgroups() -> Outcome {
    let start = Instant::now();
    let mut counts = vec![];
    for (name, u, expected) in [("z2", z2(), 3), ("z4", z4(), 4)] {
        let rels = enumerate_mfce(&u, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<usize>> = rels.iter().map(|p: &Partition| canonical(p.labels().iter().copied())).collect();
        ensure(rels.len() == expected, format!("{name}: {} relations", rels.len()))?;
        ensure(got == subgroup_relations(&u), format!("{name}: relations differ from subgroup construction"))?;
        counts.push(rels.len());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.2}s"))?;
    Ok(format!("z2 → {}, z4 → {}", counts[0], counts[1]))
}

fn kapranov_suite() -> Outcome {
    let start = Instant::now();
    let tc = TrialConfig::default();
    let s = kapranov_trials(&puiseux_valuation::<Q>(), &leading_term_superval::<Q>(), |x| x.neg(), &tc);
    let line = format!("corner {}/{}, gs {}/{}", s.corner_passed, tc.trials, s.gs_passed, tc.trials);
    ensure(s.passed() && s.corner_passed == 1000 && s.gs_passed == 1000, format!("{line}; first witness {:?}", s.first_witness))?;
    Ok(format!("{line}, {:.1}s", start.elapsed().as_secs_f64()))
}

fn gs_laws() -> Outcome {
    let cfg = CheckConfig { seed: 42, samples: 10_000 };
    let r = check_gs_laws(&d_of(ThetaGroup), &cfg);
    ensure(r.passed(), format!("D(M): {:?}", r.witnesses.first()))?;
    for (name, u) in supertropical_fixtures() {
        let r = check_gs_laws(&u, &cfg);
        ensure(r.passed() && r.mode.is_exhaustive(), format!("{name}: {:?}", r.witnesses.first()))?;
    }
    Ok("10000 triples on D(M), fixtures exhaustive".into())
}

fn strong_and_strict() -> Outcome {
    let cfg = CheckConfig::default();
    ensure(is_strong(&padic_valuation(2).unwrap(), &cfg).passed(), "p-adic strong")?;
    ensure(is_strong(&puiseux_valuation::<Q>(), &cfg).passed(), "Puiseux strong")?;
    let rec = is_strong(&reciprocal_valuation(), &cfg);
    ensure(rec.witnesses_for("strong").any(|w| w.inputs == ["1", "2"]), "reciprocal witness (1, 2)")?;
    for (name, u) in supertropical_fixtures() {
        ensure(is_strict(&nu_valuation(&u), &cfg).passed(), format!("ν strict on {name}"))?;
    }
    let p = is_strict(&padic_valuation(2).unwrap(), &cfg);
    ensure(p.witnesses_for("V5").any(|w| w.inputs == ["1", "-1"]), "p-adic witness (1, -1)")?;
    Ok("reciprocal (1, 2), p-adic (1, -1)".into())
}

fn sensitivity() -> Outcome {
    let cfg = CheckConfig::default();
    let convex = is_insensitive(&convex_subgroup_valuation(), &cfg);
    ensure(
        convex.witnesses_for("insensitive").any(|w| w.inputs == ["Some((1, 0))", "Some((2, 0))"]),
        "convex witness",
    )?;
    let mut strong = 0;
    macro_rules! implication {
        ($v:expr) => {{
            let v = $v;
            if is_strong(&v, &cfg).passed() {
                strong += 1;
                ensure(is_insensitive(&v, &cfg).passed(), format!("{} strong but sensitive", v.name))?;
            }
        }};
    }
    implication!(padic_valuation(2).unwrap());
    implication!(padic_valuation(3).unwrap());
    implication!(padic_rational_valuation(2).unwrap());
    implication!(puiseux_valuation::<Q>());
    implication!(reciprocal_valuation());
    implication!(convex_subgroup_valuation());
    implication!(degree_valuation::<Fp<3>>());
    implication!(truncated_order_valuation::<Fp<2>>(2));
    implication!(trivial_valuation(&FieldRing::<Fp<3>>::new()));
    implication!(identity_valuation(&supertrop::order::Theta));
    Ok(format!("convex (1,0),(2,0); {strong} strong instances insensitive"))
}

fn unit_relation() -> Outcome {
    let (r, counts) = check_unit_relation(&CheckConfig { seed: 42, samples: 500 });
    ensure(r.passed(), format!("{:?}", r.witnesses.first()))?;
    Ok(format!("{} samples, {} related to 1", counts.samples, counts.related_to_one))
}

fn evaluation_is_strong() -> Outcome {
    let cfg = CheckConfig { seed: 42, samples: 500 };
    let shape = PolyShape { nvars: 2, max_deg: 4, max_terms: 6 };
    let v2 = padic_valuation(2).unwrap();
    let r = eval_strong_trials(&v2, shape, &cfg);
    ensure(r.passed(), format!("ℤ: {:?}", r.witnesses.first()))?;
    let r = eval_strong_trials(&puiseux_valuation::<Q>(), shape, &cfg);
    ensure(r.passed(), format!("Puiseux: {:?}", r.witnesses.first()))?;

    let one = PolyShape { nvars: 1, ..shape };
    let w = tilde_v_map(&v2, one);
    let z = &v2.domain;
    let lin = |c: i64| supertrop::poly::poly_add(z, &Poly::var(z, 1, 0), &Poly::constant(z, 1, BigInt::from(c)));
    let (f, g) = (lin(1), lin(-1));
    let lhs = w.eval(&supertrop::poly::poly_mul(z, &f, &g));
    let rhs = w.target.mul(&w.eval(&f), &w.eval(&g));
    ensure(w.target.lt(&lhs, &rhs), format!("ṽ(fg) = {lhs}, ṽ(f)ṽ(g) = {rhs}"))?;
    Ok(format!("500 + 500 triples; ṽ((λ+1)(λ−1)) = {lhs} < {rhs}"))
}

fn sup_of_quotients() -> Outcome {
    let cfg = CheckConfig::default();
    let phi = initial_cover_table(&trivial_valuation(&FieldRing::<Fp<3>>::new())).map_err(|e| e.to_string())?;
    ensure(find_isomorphism(&phi.target, &z2()).is_some(), "U(v) is not the z2 fixture")?;
    let rels = enumerate_mfce(&phi.target, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in &rels {
        for b in &rels {
            let r = check_sup_is_meet(&phi, a, b, &cfg);
            ensure(r.passed(), format!("{:?}", r.witnesses.first()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn cli_determinism() -> Outcome {
    let cfg = RunConfig::default();
    let a = cmd_kapranov(&cfg, Instance::Puiseux, false);
    let b = cmd_kapranov(&cfg, Instance::Puiseux, false);
    ensure(a.stdout.as_bytes() == b.stdout.as_bytes(), "outputs differ")?;
    ensure(a.code == 0, a.summary.clone())?;
    Ok(format!("{} bytes identical", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suites on shipped fixtures", axiom_suites),
        ("addition reconstructed from ν", addition_reconstruction),
        ("MFCE quotients are supertropical", mfce_quotients),
        ("MFCE enumeration vs subgroups", enumeration_matches_subgroups),
        ("Kapranov trials", kapranov_suite),
        ("GS relation laws", gs_laws),
        ("strong and strict discrimination", strong_and_strict),
        ("sensitivity", sensitivity),
        ("unit relation on fractions", unit_relation),
        ("evaluation of ṽ is strong", evaluation_is_strong),
        ("sup of quotients is quotient by meet", sup_of_quotients),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
