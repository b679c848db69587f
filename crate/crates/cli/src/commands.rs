use std::path::Path;

use maniplex::constructions::{
    corpus, cube_stack, polygon, prism_over, toroid_44, trivial_extension, two_power, ToroidParams,
};
use maniplex::mix::{covers, mix_rooted, unrooted_mix_welldefined, UnrootedMix};
use maniplex::monodromy::{chirality_group, is_string_c_group, minimal_regular_cover, mon_bounds_report, monodromy_group};
use maniplex::poset::{has_digonal_residue, is_polytopal, FacePoset, FacePosetJson, PolytopalityReport};
use maniplex::symmetry::{automorphism_group, flag_orbits, quotient_graph, stg_generators, SymmetryTypeGraph};
use maniplex::{Error, FlagGraph};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::run::{sha256_hex, Run};
use crate::{BuildKind, Budgets, CliError};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

/// Orders as JSON numbers when they fit, decimal strings otherwise.
fn order_value(n: BigUint) -> Value {
    match u64::try_from(&n) {
        Ok(x) => json!(x),
        Err(_) => json!(n.to_string()),
    }
}

pub fn load_graph(run: &mut Run, path: &Path) -> Result<FlagGraph, CliError> {
    let text = run.read(path)?;
    Ok(FlagGraph::from_json_str(&text)?)
}

fn graph_json(g: &FlagGraph) -> String {
    g.to_json_string() + "\n"
}

fn stg_value(t: &SymmetryTypeGraph) -> Value {
    let edges: Vec<Value> =
        t.edges().iter().map(|e| json!({ "color": e.color, "from": e.from, "to": e.to })).collect();
    json!({
        "vertices": t.vertex_count(),
        "edges": edges,
        "semi_edges": t.semi_edges(),
        "graph": t.to_json(),
    })
}

fn polytopality_value(r: &PolytopalityReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

pub fn build(run: &mut Run, kind: &BuildKind, budgets: &Budgets, out: Option<&Path>) -> Result<(), CliError> {
    let g = match kind {
        BuildKind::Polygon { p } => polygon(*p)?,
        BuildKind::Prism { p } => prism_over(&polygon(*p)?)?,
        BuildKind::Toroid { b, c } => toroid_44(ToroidParams { b: *b, c: *c })?,
        BuildKind::Cubestack { m } => cube_stack(*m)?,
        BuildKind::Trivext { input } => trivial_extension(&load_graph(run, input)?),
        BuildKind::Twopower { input } => two_power(&load_graph(run, input)?, budgets.flags)?,
        BuildKind::Dual { input } => load_graph(run, input)?.dual(),
    };
    run.emit(out, graph_json(&g))
}

pub fn analyze(
    run: &mut Run,
    input: &Path,
    dot: Option<&Path>,
    budgets: &Budgets,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let g = load_graph(run, input)?;
    let gamma = automorphism_group(&g);
    let orbits = maniplex::symmetry::orbits_of_group(&gamma);
    let stg = quotient_graph(&g, &orbits);
    let mon = monodromy_group(&g);
    let c_group = match is_string_c_group(&mon.as_sggi(), budgets.group) {
        Ok(r) => json!({ "verdict": r.string_c_group, "witness": r.witness }),
        Err(e) if e.is_budget() => json!({ "verdict": null, "skipped": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    let chirality = if orbits.count() == 2 { order_value(chirality_group(&g)?.order()) } else { Value::Null };
    let report = json!({
        "rank": g.rank(),
        "flags": g.flag_count(),
        "orbits": orbits.count(),
        "orbit_sizes": orbits.sizes(),
        "orbit_representatives": orbits.representatives,
        "gamma_order": order_value(gamma.order()),
        "mon_order": order_value(mon.order()),
        "string_c_group": c_group,
        "polytopality": polytopality_value(&is_polytopal(&g)),
        "digonal_residue": has_digonal_residue(&g),
        "chirality_order": chirality,
        "stg": stg_value(&stg),
    });
    if let Some(path) = dot {
        run.write(path, &stg.to_dot(None))?;
    }
    run.emit(out, pretty(&report))
}

pub fn mix(
    run: &mut Run,
    a: &Path,
    b: &Path,
    roots: (usize, usize),
    unrooted: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (p, q) = (load_graph(run, a)?, load_graph(run, b)?);
    if unrooted {
        let report = match unrooted_mix_welldefined(&p, &q)? {
            UnrootedMix::WellDefined { graph, stg_product_connected } => {
                let r = json!({
                    "well_defined": true,
                    "stg_product_connected": stg_product_connected,
                    "flags": graph.flag_count(),
                });
                if let Some(path) = out {
                    run.write(path, &graph_json(&graph))?;
                }
                r
            }
            UnrootedMix::Incomparable { first, second, stg_product_connected } => json!({
                "well_defined": false,
                "stg_product_connected": stg_product_connected,
                "first": { "roots": [first.0 .0, first.0 .1], "flags": first.1.graph.flag_count() },
                "second": { "roots": [second.0 .0, second.0 .1], "flags": second.1.graph.flag_count() },
            }),
        };
        run.print(pretty(&report));
        return Ok(());
    }
    let m = mix_rooted(&p.rooted(roots.0)?, &q.rooted(roots.1)?)?;
    let orbits = flag_orbits(&m.graph);
    let stg = quotient_graph(&m.graph, &orbits);
    let report = json!({
        "root_a": roots.0,
        "root_b": roots.1,
        "rank": m.graph.rank(),
        "flags": m.graph.flag_count(),
        "orbits": orbits.count(),
        "polytopality": polytopality_value(&is_polytopal(&m.graph)),
        "stg": stg_value(&stg),
    });
    if let Some(path) = out {
        run.write(path, &graph_json(&m.graph))?;
    }
    run.print(pretty(&report));
    Ok(())
}

pub fn cover(
    run: &mut Run,
    a: &Path,
    b: Option<&Path>,
    roots: (usize, usize),
    budgets: &Budgets,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let p = load_graph(run, a)?;
    let Some(b) = b else {
        let c = minimal_regular_cover(&p, budgets.flags)?;
        return run.emit(out, graph_json(&c.graph));
    };
    let q = load_graph(run, b)?;
    let report = match covers(&p.rooted(roots.0)?, &q.rooted(roots.1)?) {
        Ok(_) => json!({ "covers": true, "root_a": roots.0, "root_b": roots.1 }),
        Err(Error::NoCover { word }) => {
            json!({ "covers": false, "root_a": roots.0, "root_b": roots.1, "conflict_word": word.to_string() })
        }
        Err(e) => return Err(e.into()),
    };
    run.emit(out, pretty(&report))
}

pub fn polytopal(run: &mut Run, input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = run.read(input)?;
    let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    let report = if value.get("faces").is_some() {
        let json: FacePosetJson = serde_json::from_value(value).map_err(Error::from)?;
        let poset = FacePoset::from_json(&json)?;
        let chains = poset.flag_chains()?;
        let g = maniplex::poset::flag_graph_of_poset(&poset)?;
        let r = is_polytopal(&g);
        // name witness faces by their ids in the input poset
        let witness = r.witness.as_ref().map(|w| {
            let chain: Vec<Value> = w
                .chain
                .0
                .iter()
                .map(|f| json!({ "rank": f.rank, "id": poset.face_id(chains[f.min_flag][f.rank + 1] as usize) }))
                .collect();
            json!({ "chain": chain, "failure": w.failure })
        });
        json!({ "input": "poset", "polytopal": r.polytopal, "witness": witness })
    } else {
        let g = FlagGraph::from_json(serde_json::from_value(value).map_err(Error::from)?)?;
        let r = is_polytopal(&g);
        json!({ "input": "flag_graph", "polytopal": r.polytopal, "witness": r.witness })
    };
    run.emit(out, pretty(&report))
}

pub fn stg(run: &mut Run, input: &Path, root: Option<usize>, dot: Option<&Path>, out: Option<&Path>) -> Result<(), CliError> {
    let g = load_graph(run, input)?;
    let orbits = flag_orbits(&g);
    let t = quotient_graph(&g, &orbits);
    let mut report = stg_value(&t);
    report["orbit_sizes"] = json!(orbits.sizes());
    report["orbit_representatives"] = json!(orbits.representatives);
    if let Some(r) = root {
        let words: Vec<String> = stg_generators(&g.rooted(r)?).iter().map(|s| s.word.to_string()).collect();
        report["base"] = json!(r);
        report["base_vertex"] = json!(orbits.of(r));
        report["generators"] = json!(words);
    }
    if let Some(path) = dot {
        let base = root.map(|r| orbits.of(r));
        run.write(path, &t.to_dot(base))?;
    }
    run.emit(out, pretty(&report))
}

pub fn mon(run: &mut Run, input: &Path, budgets: &Budgets, out: Option<&Path>) -> Result<(), CliError> {
    let g = load_graph(run, input)?;
    let m = monodromy_group(&g);
    let orbits = flag_orbits(&g);
    let stabilizer_orders: Vec<Value> = orbits
        .representatives
        .iter()
        .map(|&r| m.group().point_stabilizer(r).map(|s| order_value(s.order())))
        .collect::<Result<_, _>>()?;
    let chirality = if orbits.count() == 2 { order_value(chirality_group(&g)?.order()) } else { Value::Null };
    let c_group = match is_string_c_group(&m.as_sggi(), budgets.group) {
        Ok(r) => json!({ "verdict": r.string_c_group, "witness": r.witness }),
        Err(e) if e.is_budget() => json!({ "verdict": null, "skipped": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    let bounds = match mon_bounds_report(&g, budgets.group) {
        Ok(b) => serde_json::to_value(b).expect("bounds serialize"),
        Err(e) if e.is_budget() => json!({ "skipped": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "mon_order": order_value(m.order()),
        "k": orbits.count(),
        "orbit_representatives": orbits.representatives,
        "stabilizer_orders": stabilizer_orders,
        "chirality_order": chirality,
        "string_c_group": c_group,
        "bounds": bounds,
    });
    run.emit(out, pretty(&report))
}

pub fn corpus_cmd(run: &mut Run, out: Option<&Path>) -> Result<(), CliError> {
    let dir = out.ok_or_else(|| CliError::usage("corpus needs --out <DIR>"))?;
    let mut index = Vec::new();
    for e in corpus() {
        let text = graph_json(&e.graph);
        let file = format!("{}.json", e.name);
        run.write(&dir.join(&file), &text)?;
        index.push(json!({
            "name": e.name,
            "file": file,
            "rank": e.graph.rank(),
            "flags": e.graph.flag_count(),
            "sha256": sha256_hex(text.as_bytes()),
        }));
    }
    run.write(&dir.join("index.json"), &pretty(&json!(index)))
}
