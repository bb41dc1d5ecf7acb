use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{mod_pow, prime_divisors};
use crate::characters::{
    character_table_seeded, display_value, frobenius_kernel_via_characters, integrality_report, C64,
    DEFAULT_SEED,
};
use crate::cli::corpus::{verify_corpus, Suite};
use crate::cli::spec::{parse_generators, parse_group_spec};
use crate::coh::{cohomology, ActionMatrix, FinAbGroup, GModule};
use crate::error::{FinisError, Result};
use crate::frobenius::{frobenius_couple, frobenius_kernel, thompson_nilpotency_check};
use crate::hall::{hall_subgroup, PrimeSet};
use crate::perm::{PermGroup, Permutation};
use crate::structure::{
    center, classify, conjugacy_classes, derived_series, derived_subgroup, is_simple,
    jordan_holder_seeded, lower_central_series, normalizer, CLASS_LIMIT,
};
use crate::sylow::{miller_wielandt_count, sylow_report};
use crate::transfer::{legendre_gauss, transfer_image_in_sylow, TransferMap};

#[derive(Debug, Parser)]
#[command(name = "finis", version, about = "Finite group computations on permutation groups")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Enumeration cap; overrides FINIS_CAP.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Order, classes, centre, solvability and composition factors.
    Analyze { group: String },
    /// Sylow subgroups, their counts and the binomial congruence.
    Sylow {
        group: String,
        #[arg(short = 'p')]
        prime: Option<u64>,
    },
    /// A Hall subgroup for a set of primes, e.g. `--primes 2,3`.
    Hall {
        group: String,
        #[arg(long)]
        primes: String,
    },
    /// Derived, lower central and composition series.
    Series { group: String },
    /// Character table.
    Chartab { group: String },
    /// Hⁿ(G, A) for `A = ⊕ Z/dᵢ`.
    Cohomology {
        group: String,
        #[arg(long, default_value = "2")]
        module: String,
        /// trivial, sign (odd permutations act by −1) or `;`-separated
        /// matrices per generator.
        #[arg(long, default_value = "trivial")]
        action: String,
        #[arg(short = 'n', default_value_t = 2)]
        degree: usize,
    },
    /// Transfer into a subgroup, or into an abelian Sylow subgroup.
    Transfer {
        group: String,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(short = 'p')]
        prime: Option<u64>,
    },
    /// Frobenius couple check and kernel.
    Frobenius {
        group: String,
        #[arg(long, default_value = "stab(1)")]
        subgroup: String,
    },
    /// Legendre symbol (a/p) by Gauss's lemma.
    Legendre { a: i64, p: u64 },
    /// Runs the property suites over the standard corpus.
    VerifyCorpus {
        #[arg(long)]
        suite: Option<Suite>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Sylow { .. } => "sylow",
            Command::Hall { .. } => "hall",
            Command::Series { .. } => "series",
            Command::Chartab { .. } => "chartab",
            Command::Cohomology { .. } => "cohomology",
            Command::Transfer { .. } => "transfer",
            Command::Frobenius { .. } => "frobenius",
            Command::Legendre { .. } => "legendre",
            Command::VerifyCorpus { .. } => "verify-corpus",
        }
    }

    fn input(&self) -> String {
        match self {
            Command::Analyze { group }
            | Command::Sylow { group, .. }
            | Command::Hall { group, .. }
            | Command::Series { group }
            | Command::Chartab { group }
            | Command::Cohomology { group, .. }
            | Command::Transfer { group, .. }
            | Command::Frobenius { group, .. } => group.clone(),
            Command::Legendre { a, p } => format!("{a} {p}"),
            Command::VerifyCorpus { suite } => suite.map(|s| s.to_string()).unwrap_or_else(|| "all".into()),
        }
    }
}

/// Machine-readable result of one command. Contains no timing so that
/// identical invocations give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub version: String,
    pub seed: u64,
    pub result: Value,
    /// False when a corpus check failed.
    pub ok: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn exit_code(result: &Result<Report>) -> i32 {
    match result {
        Ok(r) if r.ok => 0,
        Ok(_) => 2,
        Err(e) if e.is_guarantee_violation() => 2,
        Err(_) => 1,
    }
}

fn group_of(text: &str, cap: Option<usize>) -> Result<PermGroup> {
    let spec = parse_group_spec(text)?;
    match cap {
        Some(c) => spec.build_with_cap(c),
        None => spec.build(),
    }
}

/// `stab(k)` for a point stabilizer (1-indexed) or a generator list.
pub fn parse_subgroup(g: &PermGroup, text: &str) -> Result<PermGroup> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("stab(").and_then(|r| r.strip_suffix(')')) {
        let k: usize = inner.trim().parse().map_err(|_| FinisError::ParseError {
            position: 5,
            expected: "a point number".into(),
        })?;
        if k == 0 || k > g.degree() {
            return Err(FinisError::BadInput(format!("point {k} outside 1..={}", g.degree())));
        }
        let fixers: Vec<Permutation> = g.elements()?.iter().filter(|x| x.apply(k - 1) == k - 1).cloned().collect();
        return g.subgroup_from_elements(fixers);
    }
    let (degree, gens) = parse_generators(t, 0)?;
    if degree > g.degree() {
        return Err(FinisError::DegreeMismatch {
            expected: g.degree(),
            got: degree,
        });
    }
    let gens: Vec<Permutation> = gens
        .into_iter()
        .map(|x| {
            let mut imgs: Vec<usize> = x.images().iter().map(|&i| i as usize).collect();
            imgs.extend(degree..g.degree());
            Permutation::from_images(imgs)
        })
        .collect::<Result<_>>()?;
    g.subgroup_generated(&gens)
}

fn parse_primes(text: &str) -> Result<PrimeSet> {
    let (body, complement) = match text.trim().strip_suffix('\'') {
        Some(b) => (b, true),
        None => (text.trim(), false),
    };
    let mut primes = Vec::new();
    for (i, piece) in body.split(',').enumerate() {
        let p: u64 = piece.trim().parse().map_err(|_| FinisError::ParseError {
            position: i,
            expected: "a comma-separated list of primes".into(),
        })?;
        if !crate::arith::is_prime(p) {
            return Err(FinisError::NotPrime(p));
        }
        primes.push(p);
    }
    let set = PrimeSet::new(primes);
    Ok(if complement { set.complement() } else { set })
}

fn parse_int_list(text: &str, what: &str) -> Result<Vec<i64>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim().parse().map_err(|_| FinisError::ParseError {
                position: i,
                expected: what.into(),
            })
        })
        .collect()
}

fn build_module(g: &PermGroup, module: &str, action: &str) -> Result<GModule> {
    let orders: Vec<u64> = parse_int_list(module, "a comma-separated list of cyclic orders")?
        .into_iter()
        .map(|d| u64::try_from(d).ok().filter(|&d| d >= 1))
        .collect::<Option<_>>()
        .ok_or_else(|| FinisError::InvalidModule("cyclic orders must be positive".into()))?;
    let ab = FinAbGroup::from_cyclic_orders(&orders);
    let r = ab.rank();
    let gens = g.generators();
    let scalar = |k: i64| -> ActionMatrix { (0..r).map(|i| (0..r).map(|j| if i == j { k } else { 0 }).collect()).collect() };
    let mats: Vec<ActionMatrix> = match action.trim() {
        "trivial" => return GModule::trivial(g.clone(), ab),
        "sign" | "inversion" => gens.iter().map(|s| scalar(s.sign() as i64)).collect(),
        text => {
            let mut out = Vec::new();
            for m in text.split(';') {
                let parsed: Vec<Vec<i64>> = serde_json::from_str(m.trim()).map_err(|_| FinisError::ParseError {
                    position: 0,
                    expected: "trivial, sign, or matrices like [[1,0],[0,1]];[[0,1],[1,0]]".into(),
                })?;
                out.push(parsed);
            }
            out
        }
    };
    GModule::new(g.clone(), ab, mats)
}

pub fn run(cli: &Cli) -> Result<Report> {
    let mut ok = true;
    let result = match &cli.command {
        Command::Analyze { group } => analyze(&group_of(group, cli.cap)?, cli.seed)?,
        Command::Sylow { group, prime } => sylow_cmd(&group_of(group, cli.cap)?, *prime)?,
        Command::Hall { group, primes } => hall_cmd(&group_of(group, cli.cap)?, &parse_primes(primes)?)?,
        Command::Series { group } => series_cmd(&group_of(group, cli.cap)?, cli.seed)?,
        Command::Chartab { group } => chartab_cmd(&group_of(group, cli.cap)?, cli.seed)?,
        Command::Cohomology {
            group,
            module,
            action,
            degree,
        } => {
            let g = group_of(group, cli.cap)?;
            let m = build_module(&g, module, action)?;
            let h = cohomology(&m, *degree)?;
            json!({
                "group_order": g.order()?,
                "module": m.ab().to_string(),
                "action": action,
                "cohomology": h.summary(),
                "group": h.group.to_string(),
            })
        }
        Command::Transfer { group, subgroup, prime } => {
            transfer_cmd(&group_of(group, cli.cap)?, subgroup.as_deref(), *prime)?
        }
        Command::Frobenius { group, subgroup } => {
            let g = group_of(group, cli.cap)?;
            frobenius_cmd(&g, &parse_subgroup(&g, subgroup)?)?
        }
        Command::Legendre { a, p } => {
            let v = legendre_gauss(*a, *p)?;
            let r = (a.rem_euclid(*p as i64)) as u64;
            let euler = mod_pow(r, (p - 1) / 2, *p);
            json!({ "a": a, "p": p, "symbol": v, "euler": if euler == 1 { 1 } else { -1 } })
        }
        Command::VerifyCorpus { suite } => {
            let summary = verify_corpus(*suite, cli.seed)?;
            ok = summary.failed == 0;
            serde_json::to_value(summary).expect("serializable")
        }
    };
    Ok(Report {
        command: cli.command.name().to_string(),
        input: cli.command.input(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cli.seed,
        result,
        ok,
    })
}

fn analyze(g: &PermGroup, seed: u64) -> Result<Value> {
    let n = g.order()?;
    let classes = conjugacy_classes(g)?;
    let simple = if n > 1 && classes.len() <= CLASS_LIMIT {
        Some(is_simple(g)?)
    } else {
        None
    };
    let mut sylow_counts = serde_json::Map::new();
    for p in prime_divisors(n as u64) {
        sylow_counts.insert(p.to_string(), json!(sylow_report(g, p)?.count));
    }
    Ok(json!({
        "order": n,
        "degree": g.degree(),
        "abelian": g.is_abelian(),
        "class_sizes": classes.sizes,
        "center_order": center(g)?.order()?,
        "derived_order": derived_subgroup(g)?.order()?,
        "classification": classify(g)?,
        "composition_factors": jordan_holder_seeded(g, seed)?.factor_multiset(),
        "simple": simple,
        "sylow_counts": sylow_counts,
    }))
}

fn sylow_cmd(g: &PermGroup, prime: Option<u64>) -> Result<Value> {
    let n = g.order()? as u64;
    let primes = match prime {
        Some(p) => vec![p],
        None => prime_divisors(n),
    };
    let mut out = Vec::new();
    for p in primes {
        let r = sylow_report(g, p)?;
        out.push(json!({
            "p": p,
            "sylow": r,
            "binomial_mod_p": miller_wielandt_count(g, p)?,
        }));
    }
    Ok(json!({ "order": n, "primes": out }))
}

fn hall_cmd(g: &PermGroup, pi: &PrimeSet) -> Result<Value> {
    let h = hall_subgroup(g, pi)?;
    let n = g.order()?;
    let ho = h.order()?;
    Ok(json!({
        "primes": pi.to_string(),
        "order": n,
        "hall_order": ho,
        "index": n / ho,
        "conjugates": n / normalizer(g, &h)?.order()?,
        "generators": h.generators().iter().map(Permutation::to_string).collect::<Vec<_>>(),
    }))
}

fn series_cmd(g: &PermGroup, seed: u64) -> Result<Value> {
    let d = derived_series(g)?;
    let l = lower_central_series(g)?;
    let jh = jordan_holder_seeded(g, seed)?;
    let orders = |s: &crate::structure::SubnormalSeries| -> Result<Vec<usize>> {
        s.terms.iter().map(|t| t.order()).collect()
    };
    Ok(json!({
        "derived": orders(&d)?,
        "lower_central": orders(&l)?,
        "composition": orders(&jh)?,
        "composition_factors": jh.factor_multiset(),
        "classification": classify(g)?,
    }))
}

fn chartab_cmd(g: &PermGroup, seed: u64) -> Result<Value> {
    let ct = character_table_seeded(g, seed)?;
    let integrality = integrality_report(&ct)?;
    let orders: Vec<u64> = (0..ct.classes.len()).map(|c| ct.classes.element_order(c)).collect();
    let mut v = serde_json::to_value(ct.summary()).expect("serializable");
    v["element_orders"] = json!(orders);
    v["integrality"] = serde_json::to_value(integrality).expect("serializable");
    v["seed_used"] = json!(ct.seed);
    Ok(v)
}

fn transfer_cmd(g: &PermGroup, subgroup: Option<&str>, prime: Option<u64>) -> Result<Value> {
    match (subgroup, prime) {
        (Some(text), _) => {
            let h = parse_subgroup(g, text)?;
            let t = TransferMap::new(g, &h)?;
            let images = g
                .generators()
                .iter()
                .map(|s| Ok(json!({ "element": s.to_string(), "image": t.transfer(s)?.coords })))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "index": t.index(),
                "target": t.target().to_string(),
                "images": images,
            }))
        }
        (None, Some(p)) => Ok(serde_json::to_value(transfer_image_in_sylow(g, p)?).expect("serializable")),
        (None, None) => Err(FinisError::BadInput("give --subgroup or -p".into())),
    }
}

fn frobenius_cmd(g: &PermGroup, h: &PermGroup) -> Result<Value> {
    let couple = crate::frobenius::is_frobenius_couple(g, h)?;
    if !couple {
        return Ok(json!({ "couple": false }));
    }
    let fc = frobenius_couple(g, h)?;
    let n = frobenius_kernel(&fc)?;
    let via_chars = frobenius_kernel_via_characters(g, h)?;
    Ok(json!({
        "couple": true,
        "complement_order": h.order()?,
        "kernel_order": n.order()?,
        "kernel": serde_json::to_value(thompson_nilpotency_check(&fc)?).expect("serializable"),
        "character_kernel_agrees": via_chars.same_elements(&n)?,
    }))
}

/// Human-readable rendering of a report, computed from its JSON.
pub fn render_text(report: &Report) -> String {
    if report.command == "chartab" {
        return render_chartab(&report.result);
    }
    let mut out = String::new();
    render_value(&report.result, 0, &mut out);
    out
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_value(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn render_chartab(v: &Value) -> String {
    let num = |x: &Value| x.as_f64().unwrap_or(f64::NAN);
    let sizes: Vec<String> = v["class_sizes"].as_array().into_iter().flatten().map(scalar).collect();
    let orders: Vec<String> = v["element_orders"].as_array().into_iter().flatten().map(scalar).collect();
    let mut cells: Vec<Vec<String>> = vec![sizes.iter().zip(&orders).map(|(s, o)| format!("{s}:o{o}")).collect()];
    for row in v["rows"].as_array().into_iter().flatten() {
        cells.push(
            row.as_array()
                .into_iter()
                .flatten()
                .map(|z| display_value(C64::new(num(&z[0]), num(&z[1]))))
                .collect(),
        );
    }
    let h = cells[0].len();
    let widths: Vec<usize> = (0..h)
        .map(|c| cells.iter().map(|r| r.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        let label = if i == 0 { String::new() } else { format!("X{i}") };
        out.push_str(&format!("{label:<4}"));
        for (c, cell) in row.iter().enumerate() {
            out.push_str(&format!(" {cell:>w$}", w = widths[c]));
        }
        out.push('\n');
    }
    let verified = &v["verified"];
    out.push_str(&format!(
        "row_orth {} col_orth {} degree_divides {}\n",
        verified["row_orth"], verified["col_orth"], verified["degree_divides"]
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("finis").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn analyze_s4() {
        let r = run(&cli(&["analyze", "S4"])).unwrap();
        assert_eq!(r.result["classification"]["solvable"], json!(true));
        assert_eq!(r.result["composition_factors"], json!([2, 2, 2, 3]));
    }

    #[test]
    fn legendre_two_mod_17() {
        let r = run(&cli(&["legendre", "2", "17"])).unwrap();
        assert_eq!(r.result["symbol"], json!(1));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(&cli(&["chartab", "A4", "--json"])).unwrap().to_json();
        let b = run(&cli(&["chartab", "A4", "--json"])).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn exit_codes() {
        let bad = run(&cli(&["analyze", "Z9"]));
        assert_eq!(exit_code(&bad), 1);
        assert_eq!(exit_code(&Err(FinisError::inconsistency("x"))), 2);
        assert_eq!(exit_code(&run(&cli(&["legendre", "3", "7"]))), 0);
    }

    #[test]
    fn subcommands_produce_payloads() {
        let r = run(&cli(&["cohomology", "C2", "--module", "2", "-n", "2"])).unwrap();
        assert_eq!(r.result["cohomology"]["order"], json!(2));
        let r = run(&cli(&["cohomology", "S3", "--module", "5", "--action", "inversion", "-n", "1"])).unwrap();
        assert_eq!(r.result["cohomology"]["order"], json!(1));
        let r = run(&cli(&["frobenius", "AGL(1,5)"])).unwrap();
        assert_eq!(r.result["kernel_order"], json!(5));
        let r = run(&cli(&["hall", "S4", "--primes", "3"])).unwrap();
        assert_eq!(r.result["hall_order"], json!(3));
        let r = run(&cli(&["transfer", "S3", "--subgroup", "(1 2 3)"])).unwrap();
        assert_eq!(r.result["index"], json!(2));
        let r = run(&cli(&["sylow", "A5", "-p", "5"])).unwrap();
        assert_eq!(r.result["primes"][0]["sylow"]["count"], json!(6));
        let text = render_text(&run(&cli(&["chartab", "S3"])).unwrap());
        assert!(text.contains("X3"));
    }
}
