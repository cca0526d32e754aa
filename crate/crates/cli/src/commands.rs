use std::path::{Path, PathBuf};
use std::str::FromStr;

use cubesum::catalog::{AddOutcome, Catalog, Filter};
use cubesum::enumerate::{enumerate_with_report, zero_sum_search, SearchConfig, ZeroSumSearchConfig};
use cubesum::extend::{chain, extend_one, extend_two, two_extension_reps, RootChoice, TwoExtensionRep};
use cubesum::families::{
    chowla_members, distinct_cs_n, frolov_member, frolov_target_member, frolov_zero_sum, prop7_members, pyth_to_sp,
    FrolovMember, PythTuple,
};
use cubesum::liouville::{liouville_set, Factorization};
use cubesum::{CsSet, Error, Multiset, Result};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::{CatalogAction, Command, Family, GenOpts, Root};

/// Everything a command produces; the caller picks text or JSON.
#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub json: Value,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
    /// Sets to store with `--save`: set, tags, source.
    pub records: Vec<(CsSet, Vec<&'static str>, String)>,
    pub sidecar: Option<PathBuf>,
    /// Reported after the output; sets a nonzero exit code.
    pub failure: Option<Error>,
}

fn big(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

fn multiset_value(m: &Multiset) -> Value {
    Value::Array(m.entries().iter().map(big).collect())
}

fn set_value(s: &CsSet) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("set".into(), multiset_value(s.elements()));
    map.insert("n".into(), json!(s.len()));
    map.insert("sum".into(), big(s.sum()));
    map.insert("cube_sum".into(), big(s.cube_sum()));
    map
}

fn with_source(s: &CsSet, source: Value) -> Value {
    let mut map = set_value(s);
    map.insert("source".into(), source);
    Value::Object(map)
}

fn sets_value(sets: &[CsSet]) -> Value {
    Value::Array(sets.iter().map(|s| Value::Object(set_value(s))).collect())
}

fn record(set: &CsSet, tags: &[&'static str], source: String) -> (CsSet, Vec<&'static str>, String) {
    let mut tags = tags.to_vec();
    if set.is_positive() {
        tags.push("positive");
    }
    if set.is_zero_sum() {
        tags.push("zero-sum");
    }
    (set.clone(), tags, source)
}

pub fn run(command: &Command, catalog_path: &Path) -> Result<Outcome> {
    match command {
        Command::Verify { set } => Ok(verify(set)),
        Command::Enumerate {
            n,
            bound,
            prefix,
            count_only,
        } => enumerate(*n, *bound, prefix.as_ref().map(|p| p.0.clone()), *count_only),
        Command::Liouville { m, show_factorization } => liouville(*m, *show_factorization),
        Command::Extend { set, two: false, .. } => extend_single(set),
        Command::Extend {
            set, all_reps, pair, ..
        } => extend_double(set, *all_reps, pair.as_ref()),
        Command::Chain { set, steps, root } => chain_cmd(set, *steps, *root),
        Command::Gen { family } => generate(family),
        Command::ZerosumSearch { n, bound } => zerosum(*n, *bound),
        Command::Catalog { action } => catalog(action, catalog_path),
    }
}

fn verify(set: &Multiset) -> Outcome {
    let p = set.power_sums();
    let mut out = Outcome::default();
    match set.verify_cs() {
        Ok(cs) => {
            out.lines.push(format!("{set} sum={} cube_sum={}", p.sum, p.cube_sum));
            let mut map = set_value(&cs);
            map.insert("command".into(), json!("verify"));
            map.insert("verified".into(), json!(true));
            out.json = Value::Object(map);
            out.records.push(record(&cs, &["verified"], "verify".into()));
        }
        Err(e) => {
            let squared = &p.sum * &p.sum;
            out.lines.push(format!(
                "{set} sum={} cube_sum={} sum_squared={squared}",
                p.sum, p.cube_sum
            ));
            out.json = json!({
                "command": "verify",
                "set": multiset_value(set),
                "n": set.len(),
                "sum": big(&p.sum),
                "cube_sum": big(&p.cube_sum),
                "sum_squared": big(&squared),
                "verified": false,
                "reason": e.to_string(),
            });
            out.failure = Some(e);
        }
    }
    out
}

fn enumerate(n: usize, bound: Option<u64>, prefix: Option<Vec<u64>>, count_only: bool) -> Result<Outcome> {
    let mut cfg = SearchConfig::new(n);
    if let Some(b) = bound {
        cfg = cfg.with_bound(b);
    }
    if let Some(p) = prefix {
        cfg = cfg.with_prefix(p);
    }
    let (sets, report) = enumerate_with_report(&cfg)?;
    let mut out = Outcome::default();
    if count_only {
        out.lines.push(sets.len().to_string());
    } else {
        out.lines.extend(sets.iter().map(ToString::to_string));
    }
    if let Some(excluded) = report.excluded.as_ref().filter(|e| !e.is_empty()) {
        out.notes.push(format!(
            "note: bound {} is below {n}^2 = {} and misses {} set(s): {}",
            report.bound,
            report.default_bound,
            excluded.len(),
            excluded.join(" ")
        ));
    }
    let mut doc = serde_json::to_value(&report).expect("report serializes");
    doc["command"] = json!("enumerate");
    doc["prefix"] = json!(cfg.prefix);
    if !count_only {
        doc["sets"] = sets_value(&sets);
    }
    out.json = doc;
    let source = format!("enumerate n={n} bound={}", cfg.element_bound);
    out.records = sets
        .iter()
        .map(|s| record(s, &["enumerated"], source.clone()))
        .collect();
    Ok(out)
}

fn liouville(m: i128, show_factorization: bool) -> Result<Outcome> {
    let set = liouville_set(m)?;
    let mut out = Outcome::default();
    let mut map = set_value(&set);
    map.insert("command".into(), json!("liouville"));
    map.insert("m".into(), json!(m.to_string().parse::<Number>().expect("integer")));
    if show_factorization {
        let f = Factorization::of(m as u64)?;
        let shown: Vec<String> = f
            .factors()
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        let shown = if shown.is_empty() {
            "1".to_string()
        } else {
            shown.join(" * ")
        };
        out.lines.push(format!("{m} = {shown}"));
        map.insert("factorization".into(), json!(f.factors()));
    }
    out.lines.push(set.to_string());
    out.json = Value::Object(map);
    out.records
        .push(record(&set, &["liouville"], format!("liouville m={m}")));
    Ok(out)
}

fn extend_single(set: &Multiset) -> Result<Outcome> {
    let s = set.verify_cs()?;
    let options = extend_one(&s)?;
    let mut out = Outcome::default();
    let mut items = Vec::new();
    for opt in &options {
        let action = serde_json::to_value(opt.action).expect("action serializes");
        let action = action.as_str().expect("string").to_string();
        let mut line = format!("{} z={} {action}", opt.result, opt.z);
        if !opt.admissible {
            line.push_str(" inadmissible");
        }
        out.lines.push(line);
        let p = opt.result.power_sums();
        items.push(json!({
            "z": big(&opt.z),
            "action": action,
            "admissible": opt.admissible,
            "set": multiset_value(&opt.result),
            "n": opt.result.len(),
            "sum": big(&p.sum),
            "cube_sum": big(&p.cube_sum),
        }));
        if let Ok(v) = opt.verified() {
            out.records
                .push(record(&v, &["extension"], format!("extend {set} z={}", opt.z)));
        }
    }
    out.json = json!({
        "command": "extend",
        "from": Value::Object(set_value(&s)),
        "options": items,
    });
    Ok(out)
}

fn rep_value(rep: &TwoExtensionRep) -> Value {
    json!({ "u": big(&rep.u), "v": big(&rep.v), "x": big(&rep.x), "y": big(&rep.y) })
}

fn extend_double(set: &Multiset, all_reps: bool, pair: Option<&(BigInt, BigInt)>) -> Result<Outcome> {
    let s = set.verify_cs()?;
    let reps = match pair {
        Some((x, y)) => vec![TwoExtensionRep::from_entries(x.clone(), y.clone())],
        None => two_extension_reps(s.sum()),
    };
    let mut out = Outcome::default();
    let mut items = Vec::new();
    for rep in &reps {
        let result = extend_two(&s, rep);
        if pair.is_some() {
            result.clone()?;
        }
        let tail = format!("x={} y={} u={} v={}", rep.x, rep.y, rep.u, rep.v);
        match &result {
            Ok(r) => {
                out.lines.push(format!("{r} {tail}"));
                let mut item = set_value(r);
                item.insert("rep".into(), rep_value(rep));
                items.push(Value::Object(item));
                out.records
                    .push(record(r, &["extension"], format!("extend {set} {tail}")));
            }
            Err(e) => {
                out.lines.push(format!("- {tail} ({e})"));
                items.push(json!({ "rep": rep_value(rep), "set": null, "reason": e.to_string() }));
            }
        }
        if result.is_ok() && !all_reps {
            break;
        }
    }
    if !all_reps {
        // keep only the first success
        let first = items.iter().position(|i| !i["set"].is_null());
        match first {
            Some(i) => {
                items = vec![items.swap_remove(i)];
                out.lines = vec![out.lines.swap_remove(i)];
            }
            None => return Err(Error::NoExtension(s.sum().clone())),
        }
    }
    out.json = json!({
        "command": "extend",
        "two": true,
        "from": Value::Object(set_value(&s)),
        "results": items,
    });
    Ok(out)
}

fn chain_cmd(set: &Multiset, steps: usize, root: Root) -> Result<Outcome> {
    let s = set.verify_cs()?;
    let choice = match root {
        Root::Pos => RootChoice::Positive,
        Root::Neg => RootChoice::Negative,
    };
    let sets = chain(&s, steps, choice)?;
    Ok(Outcome {
        lines: sets.iter().map(ToString::to_string).collect(),
        json: json!({
            "command": "chain",
            "from": Value::Object(set_value(&s)),
            "root": match root { Root::Pos => "pos", Root::Neg => "neg" },
            "sets": sets_value(&sets),
        }),
        records: sets
            .iter()
            .enumerate()
            .map(|(i, r)| record(r, &["chain"], format!("chain {set} step {}", i + 1)))
            .collect(),
        ..Outcome::default()
    })
}

fn pell_pair(x: &BigInt, y: &BigInt) -> String {
    format!("[{x},{y}]")
}

fn generate(family: &Family) -> Result<Outcome> {
    let (mut out, opts) = match family {
        Family::Prop7 { count, opts } => (gen_prop7(*count, opts)?, opts),
        Family::Chowla { count, n, opts } => (gen_chowla(*count, *n as usize, opts)?, opts),
        Family::Frolov {
            triple,
            tuple,
            c,
            target,
            index,
            opts,
        } => {
            let given = triple.as_ref().or(tuple.as_ref()).map(|l| &l.0);
            (gen_frolov(given, c.as_ref(), *target, *index)?, opts)
        }
        Family::Distinct { n, index, opts } => (gen_distinct(*n, *index, opts)?, opts),
    };
    out.sidecar = opts.sidecar.clone();
    Ok(out)
}

fn finish_gen(name: &str, params: Value, members: Vec<(CsSet, Value, String)>, tags: &[&'static str]) -> Outcome {
    let mut out = Outcome::default();
    let mut results = Vec::new();
    for (set, source, label) in members {
        out.lines.push(set.to_string());
        results.push(with_source(&set, source));
        out.records.push(record(&set, tags, label));
    }
    out.json = json!({
        "command": format!("gen {name}"),
        "params": params,
        "results": results,
    });
    out
}

fn gen_prop7(count: usize, opts: &GenOpts) -> Result<Outcome> {
    let members = prop7_members(count)?;
    let notes: Vec<String> = members.iter().map(|m| pell_pair(&m.t, &m.r)).collect();
    let items = members
        .into_iter()
        .map(|m| {
            let source = json!({ "r": big(&m.r), "s": big(&m.s), "t": big(&m.t) });
            let label = format!("prop7 r={} s={}", m.r, m.s);
            (m.set, source, label)
        })
        .collect();
    let mut out = finish_gen(
        "prop7",
        json!({ "count": count, "pell": { "d": 10, "n": 6 } }),
        items,
        &["prop7"],
    );
    if opts.pell_debug {
        out.notes = notes;
    }
    Ok(out)
}

fn gen_chowla(count: usize, n: usize, opts: &GenOpts) -> Result<Outcome> {
    let members = chowla_members(count, n)?;
    let notes: Vec<String> = members
        .iter()
        .map(|m| pell_pair(&((&m.triple.x - &m.triple.y) * 3u32), &m.triple.psi))
        .collect();
    let items = members
        .into_iter()
        .map(|m| {
            let t = &m.triple;
            let source = json!({
                "triple": [big(&t.x), big(&t.y), big(&t.z)],
                "psi": big(&t.psi),
                "k": t.k,
                "appended": m.appended.as_ref().map(big),
                "scale": big(&m.scale),
            });
            let label = format!("chowla psi={} scale={}", t.psi, m.scale);
            (m.set, source, label)
        })
        .collect();
    let mut out = finish_gen(
        "chowla",
        json!({ "count": count, "n": n, "pell": { "d": 5, "n": 4 } }),
        items,
        &["chowla"],
    );
    if opts.pell_debug {
        out.notes = notes;
    }
    Ok(out)
}

fn gen_frolov(given: Option<&Vec<BigInt>>, c: Option<&BigInt>, target: Option<usize>, index: usize) -> Result<Outcome> {
    let member = match (given, target) {
        (Some(entries), Some(n)) => frolov_target_member(n, &PythTuple::new(entries.clone())?, c)?,
        (Some(entries), None) => {
            let c = c.ok_or_else(|| Error::InvalidConfig("--c is required without --target".into()))?;
            let tuple = PythTuple::new(entries.clone())?;
            let set = frolov_zero_sum(&pyth_to_sp(&tuple), c)?;
            FrolovMember {
                tuple,
                c: c.clone(),
                set,
            }
        }
        (None, Some(n)) => {
            if c.is_some() {
                return Err(Error::InvalidConfig("--c needs --triple or --tuple".into()));
            }
            frolov_member(n, index)?
        }
        (None, None) => {
            return Err(Error::InvalidConfig("give --triple, --tuple or --target".into()));
        }
    };
    let tuple: Vec<Value> = member.tuple.entries().iter().map(big).collect();
    let source = json!({ "tuple": tuple, "c": big(&member.c) });
    let label = format!(
        "frolov tuple={} c={}",
        member
            .tuple
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
        member.c
    );
    let params = json!({ "target": target, "index": given.is_none().then_some(index) });
    Ok(finish_gen(
        "frolov",
        params,
        vec![(member.set, source, label)],
        &["frolov"],
    ))
}

fn gen_distinct(n: usize, index: usize, opts: &GenOpts) -> Result<Outcome> {
    let set = distinct_cs_n(n, index)?;
    let base = prop7_members(index + 1)?.pop().expect("requested member");
    let source = json!({
        "prefix": n.saturating_sub(5),
        "member": multiset_value(base.set.elements()),
        "r": big(&base.r),
        "s": big(&base.s),
    });
    let label = format!("distinct n={n} index={index}");
    let mut out = finish_gen(
        "distinct",
        json!({ "n": n, "index": index }),
        vec![(set, source, label)],
        &["distinct"],
    );
    if opts.pell_debug {
        out.notes.push(pell_pair(&base.t, &base.r));
    }
    Ok(out)
}

fn zerosum(n: usize, bound: u32) -> Result<Outcome> {
    let sets = zero_sum_search(&ZeroSumSearchConfig::new(n, bound))?;
    let source = format!("zerosum-search n={n} bound={bound}");
    let out = Outcome {
        lines: sets.iter().map(ToString::to_string).collect(),
        json: json!({
            "command": "zerosum-search",
            "n": n,
            "bound": bound,
            "count": sets.len(),
            "sets": sets_value(&sets),
        }),
        records: sets.iter().map(|s| record(s, &["searched"], source.clone())).collect(),
        ..Outcome::default()
    };
    Ok(out)
}

fn catalog(action: &CatalogAction, path: &Path) -> Result<Outcome> {
    let mut out = Outcome::default();
    match action {
        CatalogAction::Add { set, tags, source } => {
            let mut cat = Catalog::load(path)?;
            let status = cat.add(set, tags.iter().cloned(), source.clone())?;
            cat.save(path)?;
            let status = match status {
                AddOutcome::Added => "added",
                AddOutcome::Duplicate => "duplicate",
            };
            out.lines.push(format!("{status} {set}"));
            let rec = cat.get(set).expect("just added");
            out.json = json!({
                "command": "catalog add",
                "status": status,
                "record": serde_json::from_str::<Value>(&rec.to_json_line()).expect("record json"),
            });
        }
        CatalogAction::List { n, tags, zero_sum } => {
            let cat = Catalog::load(path)?;
            let filter = Filter {
                n: *n,
                tags: tags.clone(),
                sum: zero_sum.then(|| BigInt::from(0)),
            };
            let found = cat.query(&filter);
            let mut records = Vec::new();
            for rec in found {
                let tags: Vec<&str> = rec.tags().collect();
                out.lines.push(format!("{}\t{}", rec.entries(), tags.join(",")));
                records.push(serde_json::from_str::<Value>(&rec.to_json_line()).expect("record json"));
            }
            out.json = json!({ "command": "catalog list", "count": records.len(), "records": records });
        }
    }
    Ok(out)
}
