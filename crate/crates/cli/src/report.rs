//! Command implementations: each returns the rendered table or JSON document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use diamond_core::abelian::{
    aut_order, aut_order_of_type, group_order, partitions, subgroup_lattice_size_elementary,
    subgroup_lattice_size_rank2, GroupType, PPartition,
};
use diamond_core::formula::{
    component_dm, dm, dm_elementary, dm_master_sum, dm_multiprime, dm_rank2, dm_rank2_shortcut,
    ClosedFormCensus, DmConfig, Method,
};
use diamond_core::oracle::{
    build_group, count_diamonds_with, section_census, DiamondStrategy, SubgroupLattice,
};
use diamond_core::Count;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::spec::GroupSpec;
use crate::{Context, Failure, MethodArg, SortKey};

/// Rendered output, or a failure with whatever output was produced before it.
pub type Outcome = Result<String, (Option<String>, Failure)>;

fn fail(f: impl Into<Failure>) -> (Option<String>, Failure) {
    (None, f.into())
}

fn elapsed_ms(ctx: &Context) -> String {
    format!("{:.3}", ctx.started.elapsed().as_secs_f64() * 1e3)
}

fn header(spec: &GroupSpec) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("input".into(), json!(spec.source));
    m.insert("canonical_type".into(), json!(spec.group.to_string()));
    m.insert("order".into(), json!(group_order(&spec.group).to_string()));
    m
}

fn finish_json(ctx: &Context, mut m: serde_json::Map<String, Value>) -> String {
    m.insert("timings".into(), json!({ "total_ms": elapsed_ms(ctx) }));
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}

/// Plain-text table; columns holding only integers are right-aligned.
fn table(head: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = head.iter().map(|h| h.chars().count()).collect();
    let mut numeric = vec![true; head.len()];
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            widths[k] = widths[k].max(c.chars().count());
            numeric[k] &= !c.is_empty() && c.bytes().all(|b| b.is_ascii_digit());
        }
    }
    let line = |cells: &[&str], out: &mut String| {
        let mut text = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                text.push_str("  ");
            }
            let pad = " ".repeat(widths[k] - c.chars().count());
            if numeric[k] && !rows.is_empty() {
                text.push_str(&pad);
                text.push_str(c);
            } else {
                text.push_str(c);
                text.push_str(&pad);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    let mut out = String::new();
    line(head, &mut out);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(
        &rule.iter().map(String::as_str).collect::<Vec<_>>(),
        &mut out,
    );
    for r in rows {
        line(&r.iter().map(String::as_str).collect::<Vec<_>>(), &mut out);
    }
    out
}

fn oracle_lattice(ctx: &Context, t: &GroupType) -> Result<SubgroupLattice, Failure> {
    let g = build_group(t, ctx.oracle.order_cap)
        .map_err(|e| Failure::Unavailable(format!("{e} (raise it with --oracle-cap)")))?;
    Ok(SubgroupLattice::enumerate(g, ctx.oracle)?)
}

pub fn dm_cmd(ctx: &Context, spec: &GroupSpec, method: MethodArg) -> Outcome {
    let config = DmConfig {
        preference: method.into(),
        oracle: ctx.oracle,
    };
    let r = dm(&spec.group, &config).map_err(fail)?;
    if ctx.json {
        let mut m = header(spec);
        m.insert("value".into(), json!(r.value.to_string()));
        m.insert("method".into(), json!(r.method.as_str()));
        let comps: Vec<Value> = r
            .components
            .iter()
            .map(|c| {
                json!({
                    "prime": c.component.prime().to_string(),
                    "type": c.component.to_string(),
                    "value": c.dm.to_string(),
                    "lattice_size": c.lattice_size.to_string(),
                    "method": c.method.as_str(),
                })
            })
            .collect();
        m.insert("components".into(), Value::Array(comps));
        return Ok(finish_json(ctx, m));
    }
    let mut out = format!("dm({}) = {}  [{}]\n", spec.group, r.value, r.method);
    if r.components.len() > 1 {
        let rows: Vec<Vec<String>> = r
            .components
            .iter()
            .map(|c| {
                vec![
                    c.component.to_string(),
                    c.dm.to_string(),
                    c.lattice_size.to_string(),
                    c.method.to_string(),
                ]
            })
            .collect();
        out.push('\n');
        out.push_str(&table(&["component", "dm", "|L|", "method"], &rows));
    }
    Ok(out)
}

/// Every formula route that applies to one primary component.
fn component_routes(ctx: &Context, c: &PPartition) -> Vec<(String, Result<Count, String>)> {
    let p = c.prime();
    let e = c.exponents();
    let mut routes = Vec::new();
    if c.is_elementary() {
        routes.push((
            "elementary".to_string(),
            dm_elementary(c.rank() as u32, p).map_err(|e| e.to_string()),
        ));
    }
    if c.rank() <= 2 {
        let (a1, a2) = if e.len() == 1 {
            (0, e[0])
        } else {
            (e[0], e[1])
        };
        routes.push((
            "rank2".to_string(),
            dm_rank2(a1, a2, p).map_err(|e| e.to_string()),
        ));
        if let Some(v) = dm_rank2_shortcut(a1, a2, p) {
            routes.push(("rank2-shortcut".to_string(), Ok(v)));
        }
    }
    if let Ok(census) = ClosedFormCensus::new(c.clone()) {
        routes.push((
            "master-sum (closed-form census)".to_string(),
            dm_master_sum(c, &census).map_err(|e| e.to_string()),
        ));
    }
    let oracle_census = oracle_lattice(ctx, &c.to_group_type())
        .map_err(|f| f.message().to_string())
        .and_then(|lat| dm_master_sum(c, &section_census(&lat)).map_err(|e| e.to_string()));
    routes.push(("master-sum (oracle census)".to_string(), oracle_census));
    routes
}

pub fn verify(ctx: &Context, spec: &GroupSpec) -> Outcome {
    let t = &spec.group;
    let lat = oracle_lattice(ctx, t).map_err(|f| (None, f))?;
    let oracle = count_diamonds_with(&lat, DiamondStrategy::SectionMemo).map_err(fail)?;

    // (scope, method, value)
    let mut rows: Vec<(String, String, Result<Count, String>)> = Vec::new();
    let mut consistent = true;
    let mut dms = BTreeMap::new();
    let mut lattices = BTreeMap::new();
    for c in t.components() {
        let routes = component_routes(ctx, c);
        let values: Vec<&Count> = routes.iter().filter_map(|(_, v)| v.as_ref().ok()).collect();
        consistent &= values.windows(2).all(|w| w[0] == w[1]);
        if let Some(v) = values.first() {
            dms.insert(c.prime(), (*v).clone());
        }
        if let Ok(r) = component_dm(c, &ctx.oracle) {
            lattices.insert(c.prime(), r.lattice_size);
        }
        rows.extend(routes.into_iter().map(|(m, v)| (c.to_string(), m, v)));
    }
    let whole = t.to_string();
    if t.components().len() > 1 {
        let combined = dm_multiprime(t, &dms, &lattices).map_err(|e| e.to_string());
        rows.push((
            whole.clone(),
            Method::MultiprimeCombination.to_string(),
            combined,
        ));
    }
    let dispatcher = dm(
        t,
        &DmConfig {
            oracle: ctx.oracle,
            ..Default::default()
        },
    )
    .map(|r| r.value)
    .map_err(|e| e.to_string());
    rows.push((whole.clone(), "dispatcher".to_string(), dispatcher));
    rows.push((
        whole.clone(),
        Method::Oracle.to_string(),
        Ok(oracle.clone()),
    ));

    // Whole-group values must all equal the oracle.
    for (scope, _, v) in &rows {
        if scope == &whole || t.components().len() == 1 {
            if let Ok(v) = v {
                consistent &= v == &oracle;
            }
        }
    }
    let status = if consistent { "PASS" } else { "FAIL" };

    let output = if ctx.json {
        let mut m = header(spec);
        let values: Vec<Value> = rows
            .iter()
            .map(|(scope, method, v)| match v {
                Ok(v) => json!({ "scope": scope, "method": method, "value": v.to_string() }),
                Err(e) => {
                    json!({ "scope": scope, "method": method, "value": Value::Null, "error": e })
                }
            })
            .collect();
        m.insert("values".into(), Value::Array(values));
        m.insert("value".into(), json!(oracle.to_string()));
        m.insert("method".into(), json!("verify"));
        m.insert("status".into(), json!(status));
        finish_json(ctx, m)
    } else {
        let trows: Vec<Vec<String>> = rows
            .iter()
            .map(|(scope, method, v)| {
                let v = match v {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("unavailable: {e}"),
                };
                vec![scope.clone(), method.clone(), v]
            })
            .collect();
        let mut out = table(&["scope", "method", "dm"], &trows);
        writeln!(out, "\n{status}: dm({whole}) = {oracle}").unwrap();
        out
    };
    if consistent {
        Ok(output)
    } else {
        Err((
            Some(output),
            Failure::Mismatch(format!("methods disagree on {whole}")),
        ))
    }
}

pub fn sections(ctx: &Context, spec: &GroupSpec) -> Outcome {
    let t = &spec.group;
    let lat = oracle_lattice(ctx, t).map_err(|f| (None, f))?;
    let census = section_census(&lat);
    let mut by_order: Vec<(&GroupType, &Count)> = census.iter().collect();
    by_order.sort_by_key(|(s, _)| (group_order(s), *s));

    let mut squares = Vec::new();
    let mut total = Count::default();
    for &(s, n) in &by_order {
        let Some(half) = halve(s) else { continue };
        // Primary diamonds of S x S: |Aut(S x S)| / (6 |Aut(S)|).
        let per = aut_order_of_type(s) / (aut_order_of_type(&half) * 6u32);
        let sub = n * &per;
        total += &sub;
        squares.push((s.clone(), n.clone(), per, sub));
    }

    if ctx.json {
        let mut m = header(spec);
        let rows: Vec<Value> = by_order
            .iter()
            .map(|(s, n)| json!({ "type": s.to_string(), "count": n.to_string() }))
            .collect();
        m.insert("sections".into(), Value::Array(rows));
        let sq: Vec<Value> = squares
            .iter()
            .map(|(s, n, per, sub)| {
                json!({
                    "type": s.to_string(),
                    "count": n.to_string(),
                    "primary_per_section": per.to_string(),
                    "subtotal": sub.to_string(),
                })
            })
            .collect();
        m.insert("square_sections".into(), Value::Array(sq));
        m.insert("value".into(), json!(total.to_string()));
        m.insert("method".into(), json!("oracle"));
        return Ok(finish_json(ctx, m));
    }
    let rows: Vec<Vec<String>> = by_order
        .iter()
        .map(|(s, n)| vec![s.to_string(), n.to_string()])
        .collect();
    let mut out = format!("sections of {} ({} pairs H <= K)\n\n", t, census.total());
    out.push_str(&table(&["section", "count"], &rows));
    if !squares.is_empty() {
        let rows: Vec<Vec<String>> = squares
            .iter()
            .map(|(s, n, per, sub)| {
                vec![
                    s.to_string(),
                    n.to_string(),
                    per.to_string(),
                    sub.to_string(),
                ]
            })
            .collect();
        out.push('\n');
        out.push_str(&table(
            &["S x S section", "count", "primary", "subtotal"],
            &rows,
        ));
    }
    writeln!(out, "\ndm({t}) = {total}").unwrap();
    Ok(out)
}

/// S with S x S ≅ t, if t is a square.
fn halve(t: &GroupType) -> Option<GroupType> {
    if t.is_trivial() {
        return None;
    }
    let halves: Option<Vec<PPartition>> = t.components().map(PPartition::halved).collect();
    GroupType::from_components(halves?).ok()
}

pub fn aut(ctx: &Context, spec: &GroupSpec) -> Outcome {
    let t = &spec.group;
    let value = aut_order_of_type(t);
    let comps: Vec<(String, Count)> = t
        .components()
        .map(|c| (c.to_string(), aut_order(c)))
        .collect();
    if ctx.json {
        let mut m = header(spec);
        m.insert("value".into(), json!(value.to_string()));
        m.insert("method".into(), json!("product-formula"));
        let c: Vec<Value> = comps
            .iter()
            .map(|(c, v)| json!({ "type": c, "value": v.to_string() }))
            .collect();
        m.insert("components".into(), Value::Array(c));
        return Ok(finish_json(ctx, m));
    }
    let mut out = format!("|Aut({t})| = {value}\n");
    if comps.len() > 1 {
        let rows: Vec<Vec<String>> = comps
            .iter()
            .map(|(c, v)| vec![c.clone(), v.to_string()])
            .collect();
        out.push('\n');
        out.push_str(&table(&["component", "|Aut|"], &rows));
    }
    Ok(out)
}

/// |L(G)| as the product of the closed forms of its components, when they all have one.
fn closed_form_lattice_size(t: &GroupType) -> Option<Count> {
    let mut total = BigUint::from(1u32);
    for c in t.components() {
        let p = c.prime();
        let e = c.exponents();
        let size = if c.is_elementary() {
            subgroup_lattice_size_elementary(c.rank() as u32, p).ok()?
        } else if c.rank() <= 2 {
            let (a1, a2) = if e.len() == 1 {
                (0, e[0])
            } else {
                (e[0], e[1])
            };
            subgroup_lattice_size_rank2(a1, a2, p).ok()?
        } else {
            return None;
        };
        total *= size;
    }
    Some(total)
}

pub fn subgroups(ctx: &Context, spec: &GroupSpec, dump: Option<&Path>) -> Outcome {
    let t = &spec.group;
    let closed = closed_form_lattice_size(t);
    let within_cap = group_order(t) <= BigUint::from(ctx.oracle.order_cap);
    let lat = if within_cap || dump.is_some() {
        Some(oracle_lattice(ctx, t).map_err(|f| (None, f))?)
    } else {
        None
    };
    let (value, method) = match (&lat, &closed) {
        (Some(lat), _) => (Count::from(lat.len()), "oracle"),
        (None, Some(c)) => (c.clone(), "closed-form"),
        (None, None) => {
            return Err(fail(Failure::Unavailable(format!(
                "no closed form for |L({t})| and its order exceeds the oracle cap {}",
                ctx.oracle.order_cap
            ))))
        }
    };
    if let (Some(c), "oracle") = (&closed, method) {
        if c != &value {
            return Err(fail(Failure::Mismatch(format!(
                "closed form {c} but oracle found {value}"
            ))));
        }
    }
    if let (Some(path), Some(lat)) = (dump, &lat) {
        let mut file = std::fs::File::create(path)
            .map(std::io::BufWriter::new)
            .map_err(|e| fail(Failure::Usage(format!("{}: {e}", path.display()))))?;
        lat.write_dump(&mut file)
            .and_then(|()| std::io::Write::flush(&mut file))
            .map_err(|e| fail(Failure::Usage(format!("{}: {e}", path.display()))))?;
    }
    let hist = lat
        .as_ref()
        .map(|l| l.order_histogram())
        .unwrap_or_default();
    if ctx.json {
        let mut m = header(spec);
        m.insert("value".into(), json!(value.to_string()));
        m.insert("method".into(), json!(method));
        if let Some(c) = &closed {
            m.insert("closed_form".into(), json!(c.to_string()));
        }
        let rows: Vec<Value> = hist
            .iter()
            .map(|(o, c)| json!({ "order": o.to_string(), "count": c.to_string() }))
            .collect();
        m.insert("by_order".into(), Value::Array(rows));
        return Ok(finish_json(ctx, m));
    }
    let mut out = format!("|L({t})| = {value}  [{method}]\n");
    if !hist.is_empty() {
        let rows: Vec<Vec<String>> = hist
            .iter()
            .map(|(o, c)| vec![o.to_string(), c.to_string()])
            .collect();
        out.push('\n');
        out.push_str(&table(&["order", "subgroups"], &rows));
    }
    Ok(out)
}

struct SurveyRow {
    group: PPartition,
    lex_rank: usize,
    result: Result<(Count, Method), String>,
    violation: bool,
}

pub fn survey(ctx: &Context, p: u64, n: u32, sort: SortKey) -> Outcome {
    if !diamond_core::primes::is_prime(p) {
        return Err(fail(Failure::Usage(format!("{p} is not prime"))));
    }
    if n == 0 {
        return Err(fail(Failure::Usage("exponent must be at least 1".into())));
    }
    let config = DmConfig {
        oracle: ctx.oracle,
        ..Default::default()
    };
    let mut rows: Vec<SurveyRow> = partitions(n)
        .into_iter()
        .enumerate()
        .map(|(i, exps)| {
            let group = PPartition::new(p, exps).expect("valid partition");
            let result = dm(&group.to_group_type(), &config)
                .map(|r| (r.value, r.method))
                .map_err(|e| e.to_string());
            SurveyRow {
                group,
                lex_rank: i + 1,
                result,
                violation: false,
            }
        })
        .collect();
    // Conjecture: dm strictly decreases along the lexicographic order.
    let mut prev: Option<Count> = None;
    let mut violations = Vec::new();
    for row in &mut rows {
        if let Ok((v, _)) = &row.result {
            if prev.as_ref().is_some_and(|pv| v >= pv) {
                row.violation = true;
                violations.push(row.group.to_string());
            }
            prev = Some(v.clone());
        }
    }
    if sort == SortKey::Dm {
        rows.sort_by(|a, b| match (&a.result, &b.result) {
            (Ok((x, _)), Ok((y, _))) => y.cmp(x).then(a.lex_rank.cmp(&b.lex_rank)),
            (Ok(_), Err(_)) => std::cmp::Ordering::Less,
            (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
            (Err(_), Err(_)) => a.lex_rank.cmp(&b.lex_rank),
        });
    }
    let order = BigUint::from(p).pow(n);
    if ctx.json {
        let mut m = serde_json::Map::new();
        m.insert("input".into(), json!(format!("p={p} n={n}")));
        m.insert("prime".into(), json!(p.to_string()));
        m.insert("exponent".into(), json!(n.to_string()));
        m.insert("order".into(), json!(order.to_string()));
        let v: Vec<Value> = rows
            .iter()
            .map(|r| {
                let (value, method, error) = match &r.result {
                    Ok((v, m)) => (json!(v.to_string()), json!(m.as_str()), Value::Null),
                    Err(e) => (Value::Null, json!("unavailable"), json!(e)),
                };
                json!({
                    "type": r.group.to_string(),
                    "lex_rank": r.lex_rank.to_string(),
                    "value": value,
                    "method": method,
                    "error": error,
                    "violation": r.violation,
                })
            })
            .collect();
        m.insert("values".into(), Value::Array(v));
        m.insert("violations".into(), json!(violations));
        m.insert("method".into(), json!("survey"));
        return Ok(finish_json(ctx, m));
    }
    let trows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let (v, m) = match &r.result {
                Ok((v, m)) => (v.to_string(), m.to_string()),
                Err(_) => ("unavailable".to_string(), "-".to_string()),
            };
            let flag = if r.violation { "not decreasing" } else { "" };
            vec![
                r.group.to_string(),
                r.lex_rank.to_string(),
                v,
                m,
                flag.to_string(),
            ]
        })
        .collect();
    let mut out = format!("abelian groups of order {p}^{n} = {order}\n\n");
    out.push_str(&table(
        &["type", "lex", "dm", "method", "order check"],
        &trows,
    ));
    if violations.is_empty() {
        out.push_str("\ndm strictly decreases in lexicographic order over the computed rows\n");
    } else {
        writeln!(out, "\nordering violated at: {}", violations.join(", ")).unwrap();
    }
    Ok(out)
}
