use std::str::FromStr;

use serde_json::{json, Value};

use hyperswitch::bkq::{enumerate_bkq, reproduce_prop4, verify_membership, BkqOptions, Prop4Part};
use hyperswitch::catalog::{build, vq, SwitchFamily};
use hyperswitch::echar::{
    echar_eliminate, eigenpairs_numeric, generic_degree_bound, is_sign_symmetric, GroebnerLimits, NumericOptions,
};
use hyperswitch::fixtures::{checksum, graph_fixture, pinned_checksum, switch_fixture, FIXTURE_NAMES};
use hyperswitch::hypergraph::{ForbiddenPattern, Hypergraph};
use hyperswitch::numbers::{format_rational, RatMatrix};
use hyperswitch::regularity::{decide_regularity, decide_regularity_algebraic, pattern_witness, verify_witness};
use hyperswitch::switch::{switch, verify_fixture};
use hyperswitch::tensor::{adjacency_tensor, certify_similarity, SymTensor};

use crate::{read_input, render, write_atomic, Cli, Command, FixtureAction, Failure, Method};

pub struct Outcome {
    pub value: Value,
    /// False when the command ran but its check did not pass.
    pub ok: bool,
}

fn done(value: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { value, ok: true })
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn family(s: &str) -> Result<SwitchFamily, Failure> {
    Ok(SwitchFamily::from_str(s)?)
}

fn hypergraph(path: &str) -> Result<Hypergraph, Failure> {
    Ok(Hypergraph::parse(&read_input(path)?)?)
}

fn parse_json(path: &str) -> Result<Value, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Failure::new("input", format!("{path}: {e}")))
}

/// A matrix given as rows of `"p/q"` strings, or an object holding one
/// under `matrix` or `q`.
fn matrix(path: &str) -> Result<RatMatrix, Failure> {
    let v = parse_json(path)?;
    let rows = match &v {
        Value::Object(o) => o.get("matrix").or_else(|| o.get("q")).cloned().unwrap_or(Value::Null),
        _ => v,
    };
    serde_json::from_value(rows).map_err(|e| Failure::new("input", format!("{path}: not a matrix: {e}")))
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Catalog { family: f, vq: with_vq } => catalog(f, *with_vq),
        Command::Switch { family: f, set, input, cert } => {
            let g = hypergraph(input)?;
            let labels: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let c = g.resolve(&labels)?;
            let out = switch(&g, &c, family(f)?)?;
            if let Some(path) = cert {
                let cert = json!({ "certificate": out.certificate, "replacements": out.replacements });
                write_atomic(path, &render(&cert, cli.common.pretty))?;
            }
            done(to_value(&out.h))
        }
        Command::Verify { q, g, h } => {
            let (q, g, h) = (matrix(q)?, hypergraph(g)?, hypergraph(h)?);
            done(to_value(&certify_similarity(&q, &g, &h)?))
        }
        Command::Bkq { family: f, k, budget_nodes, no_symmetry } => {
            let r = build(family(f)?)?;
            let opts = BkqOptions { budget_nodes: *budget_nodes, symmetry: !no_symmetry, ..Default::default() };
            done(to_value(&enumerate_bkq(&r, *k, &opts)?.pairs))
        }
        Command::Regular { input, algebraic } => {
            let g = hypergraph(input)?;
            let mut v = to_value(&decide_regularity(&g)?);
            if *algebraic {
                v["algebraic"] = json!(decide_regularity_algebraic(&g, &GroebnerLimits::default())?);
            }
            done(v)
        }
        Command::Echar { input, method, scaled, starts, tol, budget_pairs } => {
            let text = read_input(input)?;
            let t = tensor_input(&text)?;
            echar(&t, *method, *scaled, *starts, *tol, *budget_pairs, cli.common.seed)
        }
        Command::Fixtures { action } => fixtures(action),
        Command::Prop4 { part, param, budget_nodes } => {
            let part = Prop4Part::from_str(part).map_err(|e| Failure::new("input", e))?;
            let opts = BkqOptions { budget_nodes: *budget_nodes, ..Default::default() };
            let rep = reproduce_prop4(part, *param, &opts)?;
            done(to_value(&rep))
        }
    }
}

fn catalog(f: &str, with_vq: bool) -> Result<Outcome, Failure> {
    let f = family(f)?;
    let r = build(f)?;
    let row_sum = r.is_regular_orthogonal().map_err(|e| Failure::new("catalog", e.to_string()))?;
    let mut v = json!({
        "family": f.to_string(),
        "dim": r.rows(),
        "matrix": r,
        "row_sum": format_rational(&row_sum),
        "level": r.level().to_string(),
    });
    if with_vq {
        let pairs = vq(&r)?;
        v["vq"] = pairs.iter().map(|p| json!({ "v": p.support(), "image": p.image_support() })).collect();
    }
    done(v)
}

/// Tensor JSON when the input has `entries`, otherwise a hypergraph.
fn tensor_input(text: &str) -> Result<SymTensor, Failure> {
    if let Ok(Value::Object(o)) = serde_json::from_str::<Value>(text) {
        if o.contains_key("entries") {
            return serde_json::from_value(Value::Object(o)).map_err(|e| Failure::new("tensor", e.to_string()));
        }
    }
    Ok(adjacency_tensor(&Hypergraph::parse(text)?))
}

fn echar(
    t: &SymTensor,
    method: Method,
    scaled: bool,
    starts: usize,
    tol: f64,
    budget_pairs: u64,
    seed: u64,
) -> Result<Outcome, Failure> {
    let mut v = json!({
        "k": t.order(),
        "n": t.dim(),
        "scaled": scaled,
        "degree_bound": generic_degree_bound(t.dim().max(1), t.order().max(2)).to_string(),
    });
    if method != Method::Numeric {
        let limits = GroebnerLimits { max_pairs: budget_pairs, ..Default::default() };
        let e = echar_eliminate(t, scaled, &limits)?;
        v["polynomial"] = to_value(&e.polynomial);
        v["squarefree"] = to_value(&e.squarefree);
        v["display"] = json!(e.polynomial.to_string());
        v["within_bound"] = json!(e.within_bound);
        v["pairs_processed"] = json!(e.pairs_processed);
        v["sign_symmetric"] = json!(is_sign_symmetric(&e.polynomial));
        v["roots"] = e.squarefree.roots().iter().map(|z| json!({ "re": z.re, "im": z.im })).collect();
        if let Some(d) = e.diagnostic {
            v["diagnostic"] = json!(d);
        }
    }
    if method != Method::Groebner {
        let opts = NumericOptions { starts, tol, seed, ..Default::default() };
        let pairs = eigenpairs_numeric(t, scaled, &opts);
        v["roots_numeric"] = pairs.iter().map(|p| to_value(&p.lambda)).collect();
        v["eigenpairs"] = to_value(&pairs);
    }
    done(v)
}

fn is_switch_fixture(name: &str) -> bool {
    switch_fixture(name).is_some()
}

fn fixtures(action: &FixtureAction) -> Result<Outcome, Failure> {
    match action {
        FixtureAction::List => done(
            FIXTURE_NAMES
                .iter()
                .map(|n| {
                    let sum = checksum(n).unwrap_or_default();
                    json!({
                        "name": n,
                        "kind": if is_switch_fixture(n) { "switch_pair" } else { "hypergraph" },
                        "sha256": sum,
                        "pinned": Some(sum.as_str()) == pinned_checksum(n),
                    })
                })
                .collect(),
        ),
        FixtureAction::Show { name } => {
            let v = hyperswitch::fixtures::fixture_json(name)
                .ok_or_else(|| Failure::new("fixture", format!("unknown fixture {name:?}")))?;
            done(v)
        }
        FixtureAction::Verify { name: Some(name), .. } => {
            let (v, ok) = verify_one(name)?;
            Ok(Outcome { value: v, ok })
        }
        FixtureAction::Verify { name: None, all } => {
            if !all {
                return Err(Failure::new("usage", "give a fixture name or --all"));
            }
            let mut ok = true;
            let mut out = Vec::new();
            for n in FIXTURE_NAMES {
                let (v, good) = verify_one(n)?;
                ok &= good;
                out.push(v);
            }
            Ok(Outcome { value: Value::Array(out), ok })
        }
    }
}

/// Checksum plus the fixture's own exact check.
fn verify_one(name: &str) -> Result<(Value, bool), Failure> {
    let sum = checksum(name).ok_or_else(|| Failure::new("fixture", format!("unknown fixture {name:?}")))?;
    let checksum_ok = Some(sum.as_str()) == pinned_checksum(name);
    let (check, passed) = if is_switch_fixture(name) {
        let cert = verify_fixture(name)?;
        let valid = cert.certificate.valid;
        (to_value(&cert), valid)
    } else {
        let g = graph_fixture(name).expect("listed fixture");
        match name {
            "g1" | "g2" | "g3" => {
                let p = match name {
                    "g1" => ForbiddenPattern::G1,
                    "g2" => ForbiddenPattern::G2,
                    _ => ForbiddenPattern::G3,
                };
                let x = pattern_witness(p);
                let ok = verify_witness(&g, &x)?;
                (json!({ "witness": x, "witness_verified": ok }), ok)
            }
            _ => {
                let r = build(SwitchFamily::Fano)?;
                let other = graph_fixture(if name.ends_with('1') { "fano_plane_F2" } else { "fano_plane_F1" })
                    .expect("both planes exist");
                let m = if name.ends_with('1') { r } else { r.transpose() };
                let image = verify_membership(&m, &g);
                let ok = image.as_ref() == Some(&other);
                (json!({ "image": image, "maps_to_other_plane": ok }), ok)
            }
        }
    };
    let v = json!({ "name": name, "sha256": sum, "checksum_ok": checksum_ok, "check": check, "passed": passed && checksum_ok });
    Ok((v, passed && checksum_ok))
}
