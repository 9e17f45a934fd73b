//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::Command;

use mw_opinion_cli::config::DEFAULT_SEED;
use mw_opinion_cli::report::ClaimReport;
use mw_opinion_cli::reproduce::run_claims;
use serde_json::Value;

/// Every claim with the criterion it covers and its pinned tolerance.
const PINNED: [(&str, u32, f64); 19] = [
    ("classical-structure", 1, 0.0),
    ("gm3-threshold", 2, 0.0),
    ("gm3-pareto", 3, 0.0),
    ("gm1-closed-form", 4, 1e-12),
    ("gm3-joint-closed-form", 4, 1e-12),
    ("gm3-entangled-closed-form", 4, 1e-12),
    ("gm3-joint-ignores-d-weights", 4, 1e-12),
    ("zero-sum-gm1", 5, 1e-12),
    ("zero-sum-gm2", 5, 1e-12),
    ("classical-reduction", 6, 1e-12),
    ("gm3-max", 7, 0.0),
    ("gm3-max-grid", 7, 0.0),
    ("gm3-winwin-unconditional", 8, 1e-12),
    ("gm3-winwin-equilibrium", 8, 1e-12),
    ("gm3-deviation-identity", 9, 1e-12),
    ("density-invariants", 10, 1e-12),
    ("phase-invariance", 10, 1e-12),
    ("multilinearity", 10, 1e-12),
    ("vertex-reduction-soundness", 10, 1e-9),
];

const TITLES: [&str; 11] = [
    "classical structure",
    "GM3 threshold",
    "GM3 Pareto optimality",
    "closed forms vs pipeline",
    "quantum zero-sum preservation",
    "classical reduction",
    "GM3 joint maximum 4/d",
    "unconditional win-win equilibrium",
    "deviation identity (p1* - p1)(a+b)/2",
    "property suite",
    "CLI contract",
];

/// Problems with one claim beyond its own status.
fn pinned_problems(claim: &ClaimReport) -> Vec<String> {
    let mut problems = Vec::new();
    match PINNED.iter().find(|(id, ..)| *id == claim.claim_id) {
        None => problems.push(format!("{}: unexpected claim", claim.claim_id)),
        Some(&(_, criterion, tolerance)) => {
            if claim.criterion != criterion {
                problems.push(format!("{}: criterion {} != {criterion}", claim.claim_id, claim.criterion));
            }
            if claim.tolerance != tolerance {
                problems.push(format!("{}: tolerance {} != {tolerance}", claim.claim_id, claim.tolerance));
            }
        }
    }
    if !claim.passed() {
        problems.push(format!(
            "{}: observed {:?}, expected {:?}",
            claim.claim_id, claim.observed, claim.expected
        ));
    }
    problems
}

/// Value checks tied to specific claims, independent of the report status.
fn value_problems(claims: &[ClaimReport]) -> Vec<String> {
    let mut problems = Vec::new();
    let get = |id: &str| claims.iter().find(|c| c.claim_id == id);
    if let Some(c) = get("gm3-max") {
        if c.observed.len() != 20 {
            problems.push(format!("gm3-max: {} values of d, 20 required", c.observed.len()));
        }
    }
    for id in ["gm3-max", "gm3-max-grid"] {
        if let Some(c) = get(id) {
            // Expected values are 4/d; recover d and check exact equality.
            for (o, e) in c.observed.iter().zip(&c.expected) {
                let d = 4.0 / e;
                if !(0.1 - 1e-12..=10.0 + 1e-12).contains(&d) || *o != 4.0 / d {
                    problems.push(format!("{id}: observed {o} at d = {d}"));
                }
            }
        }
    }
    if let Some(c) = get("gm3-winwin-unconditional") {
        if c.observed.len() < 100 {
            problems.push(format!("gm3-winwin-unconditional: only {} draws", c.observed.len()));
        }
    }
    problems
}

fn cli_contract() -> Vec<String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mw-opinion"))
            .args(["reproduce-paper", "--json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let mut problems = Vec::new();
    for (k, out) in [&first, &second].iter().enumerate() {
        if out.status.code() != Some(0) {
            problems.push(format!("run {}: exit status {:?}", k + 1, out.status.code()));
        }
    }
    if first.stdout != second.stdout {
        problems.push("JSON output differs between runs".into());
    }
    match serde_json::from_slice::<Value>(&first.stdout) {
        Err(e) => problems.push(format!("JSON does not parse: {e}")),
        Ok(doc) => {
            if doc["seed"] != DEFAULT_SEED {
                problems.push(format!("seed {} is not the default", doc["seed"]));
            }
            let claims = doc["claims"].as_array().cloned().unwrap_or_default();
            for (id, ..) in PINNED {
                match claims.iter().find(|c| c["claim_id"] == id) {
                    None => problems.push(format!("{id} missing from JSON")),
                    Some(c) if c["status"] != "pass" => problems.push(format!("{id} is not pass")),
                    Some(c) => {
                        for field in ["description", "observed", "expected", "tolerance", "provenance"] {
                            if c.get(field).is_none() {
                                problems.push(format!("{id} lacks {field}"));
                            }
                        }
                    }
                }
            }
        }
    }
    problems
}

fn main() {
    let claims = match run_claims(DEFAULT_SEED, None) {
        Ok(claims) => claims,
        Err(e) => {
            println!("FAIL  claims did not run: {e}");
            std::process::exit(1);
        }
    };

    let mut by_criterion: BTreeMap<u32, Vec<String>> = (1..=11).map(|k| (k, Vec::new())).collect();
    let mut ids: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
    for claim in &claims {
        by_criterion.entry(claim.criterion).or_default().extend(pinned_problems(claim));
        ids.entry(claim.criterion).or_default().push(&claim.claim_id);
    }
    for (id, criterion, _) in PINNED {
        if !claims.iter().any(|c| c.claim_id == id) {
            by_criterion.entry(criterion).or_default().push(format!("{id}: missing"));
        }
    }
    for problem in value_problems(&claims) {
        let id = problem.split(':').next().unwrap_or_default();
        let criterion = PINNED.iter().find(|(p, ..)| *p == id).map_or(7, |p| p.1);
        by_criterion.entry(criterion).or_default().push(problem);
    }
    by_criterion.insert(11, cli_contract());
    ids.insert(11, vec!["reproduce-paper --json, twice"]);

    let mut failed = 0;
    for (criterion, problems) in &by_criterion {
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        let title = TITLES.get(*criterion as usize - 1).copied().unwrap_or("?");
        let covered = ids.get(criterion).map(|v| v.join(", ")).unwrap_or_default();
        println!("{status}  criterion {criterion:>2}  {title}  [{covered}]");
        for p in problems {
            println!("        {p}");
        }
        failed += usize::from(!problems.is_empty());
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
