use std::fmt;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_power, p_part, prime_divisors};
use crate::characters::{character_table_seeded, integrality_report, simplicity_by_characters};
use crate::cli::run::parse_subgroup;
use crate::cli::spec::{parse_group_spec, GroupSpec};
use crate::coh::{cohomology, FinAbGroup, GModule, MAX_ROWS};
use crate::error::{FinisError, Result};
use crate::ffgroups::theoretical_order;
use crate::frobenius::{frobenius_couple, frobenius_kernel, thompson_nilpotency_check};
use crate::hall::{hall_subgroup, p_complement, sylow_system, PrimeSet};
use crate::perm::PermGroup;
use crate::structure::{classify, conjugacy_classes, frattini_via_lattice, frattini_via_powers, jordan_holder_seeded};
use crate::sylow::{miller_wielandt_count, sylow_report};
use crate::transfer::{cyclic_2sylow_obstruction, transfer_image_in_sylow};

pub const STANDARD_MANIFEST: &str = include_str!("../../corpus/standard.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub groups: Vec<CorpusEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: String,
    pub order: usize,
    pub classes: usize,
    /// Frobenius complement, as accepted by `--subgroup`.
    #[serde(default)]
    pub complement: Option<String>,
}

pub fn standard_manifest() -> Manifest {
    serde_json::from_str(STANDARD_MANIFEST).expect("bundled manifest parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orders,
    Sylow,
    Series,
    Frattini,
    Characters,
    Cohomology,
    Transfer,
    Hall,
    Frobenius,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Orders,
        Suite::Sylow,
        Suite::Series,
        Suite::Frattini,
        Suite::Characters,
        Suite::Cohomology,
        Suite::Transfer,
        Suite::Hall,
        Suite::Frobenius,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Orders => "orders",
            Suite::Sylow => "sylow",
            Suite::Series => "series",
            Suite::Frattini => "frattini",
            Suite::Characters => "characters",
            Suite::Cohomology => "cohomology",
            Suite::Transfer => "transfer",
            Suite::Hall => "hall",
            Suite::Frobenius => "frobenius",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub group: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub manifest_version: u32,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

struct Sink<'a> {
    suite: Suite,
    group: &'a str,
    checks: Vec<Check>,
}

impl Sink<'_> {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite.to_string(),
            group: self.group.to_string(),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn outcome<T>(&mut self, name: &str, r: Result<T>, pass: impl FnOnce(&T) -> (bool, String)) {
        match r {
            Ok(v) => {
                let (ok, detail) = pass(&v);
                self.check(name, ok, detail);
            }
            Err(e) => self.check(name, false, e.to_string()),
        }
    }
}

pub fn verify_corpus(suite: Option<Suite>, seed: u64) -> Result<CorpusSummary> {
    verify_manifest(&standard_manifest(), suite, seed)
}

pub fn verify_manifest(manifest: &Manifest, suite: Option<Suite>, seed: u64) -> Result<CorpusSummary> {
    let suites: Vec<Suite> = match suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let mut checks = Vec::new();
    for entry in &manifest.groups {
        let spec = parse_group_spec(&entry.spec)?;
        let g = spec.build()?;
        for &s in &suites {
            let mut sink = Sink {
                suite: s,
                group: &entry.name,
                checks: Vec::new(),
            };
            if let Err(e) = run_suite(s, entry, &spec, &g, seed, &mut sink) {
                sink.check("suite", false, e.to_string());
            }
            checks.extend(sink.checks);
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    Ok(CorpusSummary {
        manifest_version: manifest.version,
        passed: checks.len() - failed,
        failed,
        checks,
    })
}

fn run_suite(s: Suite, entry: &CorpusEntry, spec: &GroupSpec, g: &PermGroup, seed: u64, out: &mut Sink) -> Result<()> {
    let n = g.order()?;
    match s {
        Suite::Orders => {
            out.check("order", n == entry.order, format!("{n} vs manifest {}", entry.order));
            let h = conjugacy_classes(g)?.len();
            out.check("classes", h == entry.classes, format!("{h} vs manifest {}", entry.classes));
            if let GroupSpec::Matrix(m) = spec {
                let t = theoretical_order(m)?;
                out.check("order_formula", t == n.into(), format!("formula {t}"));
            }
        }
        Suite::Sylow => {
            for p in prime_divisors(n as u64) {
                out.outcome(&format!("sylow_{p}"), sylow_report(g, p), |r| {
                    (
                        r.congruence_ok && r.count == r.normalizer_index,
                        format!("count {} index {}", r.count, r.normalizer_index),
                    )
                });
                out.outcome(&format!("binomial_{p}"), miller_wielandt_count(g, p), |b| {
                    (true, format!("binom ≡ {b}"))
                });
            }
        }
        Suite::Series => {
            let report = classify(g)?;
            let commute = coprime_elements_commute(g)?;
            out.check(
                "nilpotency_criteria",
                report.nilpotent == commute,
                format!("nilpotent {} coprime-commute {commute}", report.nilpotent),
            );
            let base = jordan_holder_seeded(g, seed)?.factor_multiset();
            let mut stable = true;
            for k in 1..=10 {
                stable &= jordan_holder_seeded(g, seed.wrapping_add(k))?.factor_multiset() == base;
            }
            out.check("jordan_holder_invariance", stable, format!("{base:?}"));
        }
        Suite::Frattini => {
            if n > 1 && is_prime_power(n as u64) {
                let a = frattini_via_powers(g)?;
                let b = frattini_via_lattice(g)?;
                out.check("frattini_paths", a.same_elements(&b)?, format!("order {}", a.order()?));
            }
        }
        Suite::Characters => {
            let ct = character_table_seeded(g, seed)?;
            let sq: u64 = ct.degrees.iter().map(|d| d * d).sum();
            out.check("degree_squares", sq == n as u64, format!("{:?}", ct.degrees));
            out.check("degrees_divide", ct.verification.degree_divides, "");
            out.check(
                "orthogonality",
                ct.verification.row_orth && ct.verification.col_orth,
                format!("max error {:e}", ct.verification.max_error),
            );
            out.outcome("integrality", integrality_report(&ct), |r| {
                (r.values_integral, format!("residue {:e}", r.max_residue))
            });
            if n > 1 {
                out.outcome("simplicity", simplicity_by_characters(&ct), |s| (true, format!("simple {s}")));
            }
        }
        Suite::Cohomology => {
            for d in [2u64, 3] {
                let m = GModule::trivial(g.clone(), FinAbGroup::cyclic(d))?;
                let h0 = cohomology(&m, 0)?;
                out.check(
                    format!("h0_fixed_z{d}"),
                    h0.order() == m.fixed_points().len() as u64,
                    format!("|H⁰| = {}", h0.order()),
                );
                for deg in 1..=2usize {
                    if n.pow(deg as u32 + 1) > MAX_ROWS {
                        continue;
                    }
                    let h = cohomology(&m, deg)?;
                    let e = h.group.exponent();
                    out.check(
                        format!("h{deg}_exponent_z{d}"),
                        n as u64 % e == 0,
                        format!("H^{deg} = {}", h.group),
                    );
                }
            }
        }
        Suite::Transfer => {
            for p in prime_divisors(n as u64) {
                match transfer_image_in_sylow(g, p) {
                    Ok(r) => out.check(format!("sylow_image_{p}"), r.image.order() as usize == r.fixed_order, format!("{}", r.image)),
                    Err(FinisError::SylowNotAbelian) => {}
                    Err(e) => out.check(format!("sylow_image_{p}"), false, e.to_string()),
                }
            }
            if n % 2 == 0 {
                out.outcome("cyclic_2sylow", cyclic_2sylow_obstruction(g), |b| (true, format!("{b}")));
            }
        }
        Suite::Hall => {
            if classify(g)?.solvable {
                for p in prime_divisors(n as u64) {
                    let want = n / p_part(n as u64, p) as usize;
                    out.outcome(&format!("complement_{p}"), hall_subgroup(g, &PrimeSet::all_but(p)), |h| {
                        let o = h.order().unwrap_or(0);
                        (o == want, format!("order {o}"))
                    });
                }
                out.outcome("sylow_system", sylow_system(g), |s| (s.permutable, format!("{} primes", s.sylows.len())));
            } else {
                let pc = p_complement(g, 2)?;
                let want = n / p_part(n as u64, 2) as usize;
                let order = pc.group.as_ref().map(|h| h.order()).transpose()?;
                out.check(
                    "2_complement",
                    pc.exhaustive && order.is_none_or(|o| o == want),
                    match order {
                        Some(o) => format!("found, order {o}"),
                        None => "none".to_string(),
                    },
                );
            }
        }
        Suite::Frobenius => {
            if let Some(text) = &entry.complement {
                let h = parse_subgroup(g, text)?;
                let fc = frobenius_couple(g, &h)?;
                let k = frobenius_kernel(&fc)?;
                out.check("kernel_order", k.order()? * h.order()? == n, format!("{}", k.order()?));
                out.outcome("kernel_nilpotent", thompson_nilpotency_check(&fc), |r| (r.nilpotent, String::new()));
                out.outcome(
                    "kernel_via_characters",
                    crate::characters::frobenius_kernel_via_characters(g, &h),
                    |c| (c.same_elements(&k).unwrap_or(false), String::new()),
                );
            }
        }
    }
    Ok(())
}

/// Whether elements of coprime orders always commute.
pub fn coprime_elements_commute(g: &PermGroup) -> Result<bool> {
    let els = g.elements()?;
    for x in els.iter() {
        for y in els.iter() {
            if gcd(x.order(), y.order()) == 1 && x.compose(y) != y.compose(x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses() {
        let m = standard_manifest();
        assert_eq!(m.groups.len(), 23);
    }

    #[test]
    fn orders_suite_passes() {
        let s = verify_corpus(Some(Suite::Orders), 0x5EED).unwrap();
        let failed: Vec<_> = s.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
