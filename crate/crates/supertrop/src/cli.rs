//! Commands behind the `stv` binary. Each returns an exit code, the
//! machine-readable output and a one-line human summary; the binary only
//! parses flags and does file IO.

use serde::Serialize;
use serde_json::{json, Value};

use crate::instances::puiseux::series_value;
use crate::instances::{leading_term_superval, padic_valuation, puiseux_valuation, PuiseuxSeries};
use crate::lattice::mfce::partition_from_names;
use crate::lattice::orbital::submonoids;
use crate::lattice::{check_mfce, cov_lattice_of, e_nu, orbital, quotient, t_e, CovLattice, Partition};
use crate::lattice::strong::hat_v;
use crate::order::{check_bipotent, check_semiring_axioms, FiniteSemiringTable, Theta, ThetaValue, Q};
use crate::poly::{check_ub_semiring, coeff_map, corner_query, parse_point, parse_poly, TrialConfig};
use crate::report::Report;
use crate::supertropical::{check_supertropical_axioms, FiniteSupertropical};

pub const EXIT_OK: i32 = 0;
pub const EXIT_WITNESS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// Shared knobs for every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree_bound: u32,
    pub var_bound: usize,
    pub carrier_bound: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 42, samples: 1000, degree_bound: 4, var_bound: 3, carrier_bound: 12 }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    /// JSON, DOT or text, ending in a newline.
    pub stdout: String,
    pub summary: String,
}

impl CmdOutput {
    fn json(code: i32, v: &impl Serialize, summary: impl Into<String>) -> Self {
        let mut stdout = serde_json::to_string_pretty(v).expect("reports serialize");
        stdout.push('\n');
        CmdOutput { code, stdout, summary: summary.into() }
    }

    pub fn input_error(message: impl Into<String>) -> Self {
        let message = message.into();
        CmdOutput::json(EXIT_INPUT, &json!({ "error": message }), message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Semiring,
    Bipotent,
    Supertropical,
    Ub,
    Mfce,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Semiring => "semiring",
            Suite::Bipotent => "bipotent",
            Suite::Supertropical => "supertropical",
            Suite::Ub => "ub",
            Suite::Mfce => "mfce",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    Puiseux,
    Padic,
}

fn verdict(suite: &str, r: Report, extra: Value) -> CmdOutput {
    let code = if r.passed() { EXIT_OK } else { EXIT_WITNESS };
    let summary = match r.witnesses.first() {
        None => format!("{suite}: passed {} axioms ({})", r.checked.len(), r.mode),
        Some(w) => format!("{suite}: {} witnesses, first against {}", r.witnesses.len(), w.axiom),
    };
    let mut v = json!({ "suite": suite, "passed": r.passed(), "report": r });
    if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
        m.extend(x);
    }
    CmdOutput::json(code, &v, summary)
}

/// Run one validator on a table given as JSON. `partition` is required for
/// the mfce suite: a JSON list of blocks of element names.
pub fn cmd_check(table: &str, suite: Suite, partition: Option<&str>) -> CmdOutput {
    let t = match FiniteSemiringTable::from_json(table) {
        Ok(t) => t,
        Err(e) => return CmdOutput::input_error(e.to_string()),
    };
    let semiring = || check_semiring_axioms(&t).expect("validated table");
    match suite {
        Suite::Semiring => verdict(suite.name(), semiring(), json!({})),
        Suite::Bipotent => {
            let mut r = semiring();
            r.absorb(check_bipotent(&t));
            verdict(suite.name(), r, json!({}))
        }
        Suite::Supertropical => {
            let mut r = semiring();
            let st = check_supertropical_axioms(&t);
            r.absorb(st.report);
            verdict(suite.name(), r, json!({ "e": st.e, "tangibles": st.tangibles, "ghosts": st.ghosts }))
        }
        Suite::Ub => verdict(suite.name(), check_ub_semiring(&t), json!({})),
        Suite::Mfce => {
            let Some(p) = partition else {
                return CmdOutput::input_error("the mfce suite needs a partition file");
            };
            let blocks: Vec<Vec<String>> = match serde_json::from_str(p) {
                Ok(b) => b,
                Err(e) => return CmdOutput::input_error(format!("partition json: {e}")),
            };
            let u = match FiniteSupertropical::from_table(t) {
                Ok(u) => u,
                Err(e) => {
                    let mut r = Report::new(crate::report::Mode::Exhaustive);
                    r.check("supertropical");
                    r.witness("supertropical", vec![], e.to_string());
                    return verdict(suite.name(), r, json!({}));
                }
            };
            let p = match partition_from_names(&u, &blocks) {
                Ok(p) => p,
                Err(e) => return CmdOutput::input_error(e.to_string()),
            };
            let r = check_mfce(&u, &p);
            let extra = match quotient(&u, &p) {
                Ok(q) => json!({ "quotient": q.u.table }),
                Err(_) => json!({}),
            };
            verdict(suite.name(), r, extra)
        }
    }
}

/// Compare MFC(U) with subgroups of 𝒯_e(U) when the tangibles form a group:
/// each subgroup H gives the orbital relation E(H), and E(ν) is added on top.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupCheck {
    pub subgroups: usize,
    pub relations: usize,
    pub agrees: bool,
}

fn tangibles_form_group(u: &FiniteSupertropical) -> bool {
    let t = u.tangibles();
    !t.is_empty()
        && t.iter().all(|&x| t.iter().all(|&y| !u.is_ghost(u.table.mul[x][y]) && u.table.mul[x][y] != u.table.zero))
        && t.iter().all(|&x| t.iter().any(|&y| u.table.mul[x][y] == u.table.one))
}

pub fn subgroup_check(u: &FiniteSupertropical, lattice: &CovLattice) -> Option<SubgroupCheck> {
    if !tangibles_form_group(u) {
        return None;
    }
    let subgroups = submonoids(u, &t_e(u));
    let mut expected: Vec<Partition> = subgroups.iter().map(|h| orbital(u, h)).collect();
    expected.push(e_nu(u));
    expected.sort_by(|a, b| a.labels().cmp(b.labels()));
    expected.dedup();
    let mut got = lattice.relations.clone();
    got.sort_by(|a, b| a.labels().cmp(b.labels()));
    Some(SubgroupCheck { subgroups: subgroups.len(), relations: lattice.len(), agrees: expected == got })
}

/// Enumerate MFC(U) for a supertropical table and render Cov as a lattice.
pub fn cmd_lattice(table: &str, format: Format, bound: usize) -> CmdOutput {
    let u = match FiniteSemiringTable::from_json(table).map_err(|e| e.to_string()).and_then(|t| {
        FiniteSupertropical::from_table(t).map_err(|e| e.to_string())
    }) {
        Ok(u) => u,
        Err(e) => return CmdOutput::input_error(e),
    };
    let lattice = match cov_lattice_of(&u, bound) {
        Ok(l) => l,
        Err(e) => return CmdOutput::json(EXIT_BOUND, &json!({ "error": e.to_string() }), e.to_string()),
    };
    let check = subgroup_check(&u, &lattice);
    let code = if check.as_ref().is_some_and(|c| !c.agrees) { EXIT_WITNESS } else { EXIT_OK };
    let summary = match &check {
        Some(c) => format!("{} relations; {} subgroups of the unit fiber, agreement {}", c.relations, c.subgroups, c.agrees),
        None => format!("{} relations", lattice.len()),
    };
    let stdout = match format {
        Format::Dot => lattice.to_dot(),
        Format::Text => lattice.to_text(),
        Format::Json => {
            let mut v: Value = serde_json::from_str(&lattice.to_json()).expect("lattice json");
            v["subgroup_check"] = serde_json::to_value(&check).expect("serializes");
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
    };
    CmdOutput { code, stdout, summary }
}

/// Manufactured-root trials on the Puiseux series field with the leading
/// term supervaluation, or on ℤ with v₂ and its hat cover.
pub fn cmd_kapranov(cfg: &RunConfig, instance: Instance, inject_non_root: bool) -> CmdOutput {
    let tc = TrialConfig {
        seed: cfg.seed,
        trials: cfg.samples,
        max_deg: cfg.degree_bound,
        max_vars: cfg.var_bound,
        inject_non_root,
    };
    let s = match instance {
        Instance::Puiseux => crate::poly::kapranov_trials(
            &puiseux_valuation::<Q>(),
            &leading_term_superval::<Q>(),
            PuiseuxSeries::neg,
            &tc,
        ),
        Instance::Padic => {
            let v = padic_valuation(2).expect("2 is prime");
            crate::poly::kapranov_trials(&v, &hat_v(&v), |x: &num_bigint::BigInt| -x, &tc)
        }
    };
    let code = if s.passed() { EXIT_OK } else { EXIT_WITNESS };
    let summary = format!(
        "{}: corner {}/{}, gs {}/{}, {} non-roots rejected",
        s.instance, s.corner_passed, tc.trials, s.gs_passed, tc.trials, s.rejected_non_roots
    );
    CmdOutput::json(code, &s, summary)
}

#[derive(Debug, Clone, Serialize)]
struct CornerJson {
    poly: String,
    point: Vec<ThetaValue>,
    value: ThetaValue,
    dominating: Vec<String>,
    in_locus: bool,
}

/// Tropicalize a polynomial and a point by leading exponents and ask
/// whether the point lies on the corner locus.
pub fn cmd_corner(poly: &str, point: &str) -> CmdOutput {
    let pt = match parse_point(point) {
        Ok(p) => p,
        Err(e) => return CmdOutput::input_error(format!("point: {e}")),
    };
    let f = match parse_poly(poly, Some(pt.len())) {
        Ok(f) => f,
        Err(e) => return CmdOutput::input_error(format!("polynomial: {e}")),
    };
    let g = coeff_map(&f, series_value::<Q>, &ThetaValue::zero());
    let b: Vec<ThetaValue> = pt.iter().map(series_value::<Q>).collect();
    let r = corner_query(&Theta, &g, &b).expect("arity fixed by the point");
    let out = CornerJson {
        poly: g.to_string(),
        point: r.point,
        value: r.value,
        dominating: r.dominating.iter().map(|d| d.to_string()).collect(),
        in_locus: r.in_locus,
    };
    let summary = format!("{} at {:?}: in locus {}", out.poly, out.point, out.in_locus);
    CmdOutput::json(EXIT_OK, &out, summary)
}
