use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use sepprof::cayley::{cayley_ball_capped, free_product_ball_capped, validate_group, GroupSpec};
use sepprof::layout::{
    cutwidth_exact, path_decomposition, sumcut_exact, vertex_separation_exact, LayoutParameter,
};
use sepprof::profile::profile as run_profile;
use sepprof::separation::{
    balanced_separator_min, balanced_separator_min_with, cutset_to_balanced_separator,
    cutsize_exact, separation_number, Completion,
};
use sepprof::treegraded::{
    tw_profile_via_pieces, tw_via_grading, GluingDocument, LoopCheck, TreeGrading,
};
use sepprof::treewidth::treewidth_exact;
use sepprof::{Format, Graph, Invariant, Profile, ProfileOptions, TreeDecomposition, VertexSet};

use crate::report::{Failure, Report};
use crate::{EnumerationArgs, Measure, ProfileMeasure};

const SUMCUT_NOTE: &str = "sumcut sums the vertex boundary of every prefix";
const FINITE_WINDOW: &str =
    "exact statements on a finite window; asymptotic equivalences are not checked";

fn read_graph(report: &mut Report, path: &Path) -> Result<Graph, Failure> {
    let text = report.read(path)?;
    let format = if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::EdgeList
    };
    Graph::parse(&text, format).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn read_grading(report: &mut Report, path: &Path) -> Result<TreeGrading, Failure> {
    let text = report.read(path)?;
    Ok(TreeGrading::from_json(&text)?)
}

fn valid_grading(report: &mut Report, path: &Path) -> Result<TreeGrading, Failure> {
    let tg = read_grading(report, path)?;
    tg.validate().map_err(|v| {
        Failure::input(format!("{}: not a tree-grading: {v}", path.display()))
            .with_witness(json!(format!("{v:?}")))
    })?;
    Ok(tg)
}

fn options(e: &EnumerationArgs) -> ProfileOptions {
    ProfileOptions {
        mode: e.mode.into(),
        budget: e.budget,
        jobs: e.jobs.max(1),
    }
}

fn enumeration_flags(report: &mut Report, e: &EnumerationArgs, partial: bool) {
    report.flag("mode", format!("{:?}", e.mode).to_lowercase());
    report.flag("budget", e.budget);
    report.flag("lower_bound", partial);
}

fn layout_json(order: &[usize], value: usize, parameter: LayoutParameter) -> Value {
    json!({ "order": order, "value": value, "parameter": parameter })
}

pub fn compute(
    report: &mut Report,
    measure: Measure,
    path: &Path,
    no_completion: bool,
) -> Result<(), Failure> {
    let g = read_graph(report, path)?;
    if no_completion && measure != Measure::Bsep {
        return Err(Failure::input("--no-completion only applies to bsep"));
    }
    let (name, value, certificate) = match measure {
        Measure::Tw => {
            let (w, td) = treewidth_exact(&g)?;
            check_td(&g, &td, w)?;
            ("tw", w, td.to_json_value())
        }
        Measure::Cut => {
            let c = cutsize_exact(&g)?;
            ("cut", c.value, serde_json::to_value(&c)?)
        }
        Measure::Sn => {
            let (sn, witness) = separation_number(&g)?;
            let (sub, map) = g.induced_subgraph(&witness)?;
            let (_, sep) = balanced_separator_min(&sub)?;
            let separator = json!({
                "A": sep.a.map(&map),
                "B": sep.b.map(&map),
                "size": sep.size(),
            });
            (
                "sn",
                sn,
                json!({ "subgraph": witness, "separator": separator }),
            )
        }
        Measure::Bsep => {
            let completion = if no_completion {
                report.flag("completion", "relaxed: A and B need not cover every vertex");
                Completion::Relaxed
            } else {
                Completion::Required
            };
            let (size, sep) = balanced_separator_min_with(&g, completion)?;
            sep.validate(&g, completion)
                .map_err(|v| Failure::from(sepprof::Error::Internal(v.to_string())))?;
            ("bsep", size, serde_json::to_value(&sep)?)
        }
        Measure::Cw => {
            let (v, l) = cutwidth_exact(&g)?;
            ("cw", v, serde_json::to_value(&l)?)
        }
        Measure::Pw => {
            let (v, l) = vertex_separation_exact(&g)?;
            let pd = path_decomposition(&g, &l.order)?;
            check_td(&g, &pd, v)?;
            (
                "pw",
                v,
                json!({ "order": l.order, "path_decomposition": pd.to_json_value() }),
            )
        }
        Measure::Sumcut => {
            report.flag("definition", SUMCUT_NOTE);
            let (v, l) = sumcut_exact(&g)?;
            (
                "sumcut",
                v,
                layout_json(&l.order, v, LayoutParameter::Sumcut),
            )
        }
    };
    report.results = json!({
        "invariant": name,
        "n": g.n(),
        "m": g.m(),
        "value": value,
        "certificate": certificate,
    });
    report.flag("optimality", "exhaustive search");
    Ok(())
}

fn check_td(g: &Graph, td: &TreeDecomposition, width: usize) -> Result<(), Failure> {
    match td.validate(g) {
        Ok(w) if w == width => Ok(()),
        other => Err(Failure::from(sepprof::Error::Internal(format!(
            "certificate check failed: {other:?}"
        )))),
    }
}

fn profile_invariant(m: ProfileMeasure) -> Invariant {
    match m {
        ProfileMeasure::Tw => Invariant::Treewidth,
        ProfileMeasure::Cut => Invariant::Cutsize,
        ProfileMeasure::Bsep => Invariant::BalancedSeparator,
        ProfileMeasure::Cw => Invariant::Layout(LayoutParameter::Cutwidth),
        ProfileMeasure::Pw => Invariant::Layout(LayoutParameter::Pathwidth),
        ProfileMeasure::Sumcut => Invariant::Layout(LayoutParameter::Sumcut),
    }
}

fn profile_json(p: &Profile) -> Value {
    json!({
        "invariant": p.invariant.name(),
        "rows": p.rows,
        "subgraphs": p.subgraphs,
        "partial": p.partial,
    })
}

/// Returns the CSV table; the JSON form goes into the report.
pub fn profile(
    report: &mut Report,
    measure: ProfileMeasure,
    path: &Path,
    e: &EnumerationArgs,
) -> Result<String, Failure> {
    let g = read_graph(report, path)?;
    let inv = profile_invariant(measure);
    let p = run_profile(&g, inv, e.r, &options(e))?;
    enumeration_flags(report, e, p.partial);
    if measure == ProfileMeasure::Sumcut {
        report.flag("definition", SUMCUT_NOTE);
    }
    report.results = profile_json(&p);
    Ok(p.to_csv())
}

pub fn sandwich(report: &mut Report, path: &Path, e: &EnumerationArgs) -> Result<(), Failure> {
    let g = read_graph(report, path)?;
    let opts = options(e);
    let tw = run_profile(&g, Invariant::Treewidth, e.r, &opts)?;
    let sep = run_profile(&g, Invariant::Cutsize, e.r, &opts)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (t, s) in tw.rows.iter().zip(&sep.rows) {
        let lower = s.value <= t.value + 1;
        let upper = t.value <= 15 * s.value;
        all_ok &= lower && upper;
        let (tsub, tmap) = g.induced_subgraph(&t.witness)?;
        let (_, td) = treewidth_exact(&tsub)?;
        let td = TreeDecomposition {
            bags: td.bags.iter().map(|b| b.map(&tmap)).collect(),
            tree_edges: td.tree_edges,
        };
        let (ssub, smap) = g.induced_subgraph(&s.witness)?;
        let cut = cutsize_exact(&ssub)?;
        rows.push(json!({
            "k": t.k,
            "sep": s.value,
            "tw": t.value,
            "sep_minus_1_le_tw": lower,
            "tw_le_15_sep": upper,
            "ratio": if s.value > 0 { json!(t.value as f64 / s.value as f64) } else { Value::Null },
            "tw_witness": { "subgraph": t.witness, "decomposition": td },
            "sep_witness": { "subgraph": s.witness, "S": cut.set.map(&smap), "value": cut.value },
        }));
    }
    enumeration_flags(report, e, tw.partial || sep.partial);
    report.flag("scope", FINITE_WINDOW);
    report.passed = all_ok;
    report.results = json!({ "suite": "sandwich", "n": g.n(), "r": e.r, "rows": rows });
    Ok(())
}

pub fn treegraded_eq(report: &mut Report, path: &Path, e: &EnumerationArgs) -> Result<(), Failure> {
    let tg = valid_grading(report, path)?;
    let opts = options(e);
    let host = run_profile(&tg.host, Invariant::Treewidth, e.r, &opts)?;
    let pieces = tw_profile_via_pieces(&tg, e.r, &opts)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (h, p) in host.rows.iter().zip(&pieces.rows) {
        all_ok &= h.value == p.value;
        rows.push(json!({
            "k": h.k,
            "host": h.value,
            "pieces": p.value,
            "equal": h.value == p.value,
            "host_witness": h.witness,
            "piece_witness": p.witness,
        }));
    }
    enumeration_flags(report, e, host.partial || pieces.partial);
    report.flag("scope", FINITE_WINDOW);
    report.passed = all_ok;
    report.results = json!({
        "suite": "treegraded-eq",
        "n": tg.host.n(),
        "pieces": tg.pieces.len(),
        "r": e.r,
        "rows": rows,
    });
    Ok(())
}

pub fn join(report: &mut Report, path: &Path) -> Result<(), Failure> {
    let tg = valid_grading(report, path)?;
    let (width, td) = tw_via_grading(&tg)?;
    let valid = td.validate(&tg.host);
    let (exact, _) = treewidth_exact(&tg.host)?;
    report.flag("scope", FINITE_WINDOW);
    report.passed = valid == Ok(width) && exact == width;
    report.results = json!({
        "suite": "join",
        "n": tg.host.n(),
        "pieces": tg.pieces.len(),
        "joined_width": width,
        "exact_treewidth": exact,
        "decomposition_valid": valid.is_ok(),
        "decomposition": td,
    });
    Ok(())
}

pub fn conversion(
    report: &mut Report,
    path: &Path,
    cutset: Option<Vec<usize>>,
) -> Result<(), Failure> {
    let g = read_graph(report, path)?;
    let c = match cutset {
        Some(vs) => VertexSet::new(vs),
        None => {
            report.flag("cutset", "minimum half-cutset");
            cutsize_exact(&g)?.set
        }
    };
    let conv = cutset_to_balanced_separator(&g, &c)?;
    let valid = conv.separator.validate(&g, Completion::Required);
    let size_ok = conv.separator.size() == c.len();
    report.passed = valid.is_ok() && size_ok;
    report.results = json!({
        "suite": "conversion",
        "cutset": c,
        "components": conv.components,
        "prefix_len": conv.prefix_len,
        "separator": conv.separator,
        "size_equals_cutset": size_ok,
        "valid": valid.is_ok(),
        "violation": valid.err().map(|v| v.to_string()),
    });
    Ok(())
}

#[derive(Deserialize)]
struct BallSpec {
    g: GroupSpec,
    h: Option<GroupSpec>,
}

fn check_group(spec: &GroupSpec, name: &str) -> Result<(), Failure> {
    validate_group(spec).map_err(|v| {
        Failure {
            code: crate::report::EXIT_INPUT,
            kind: "group",
            message: format!("group `{name}` is invalid: {v}"),
            witness: None,
        }
        .with_witness(json!({ "group": name, "violation": format!("{v:?}") }))
    })
}

pub fn gen_cayley(
    report: &mut Report,
    path: &Path,
    radius: usize,
    output: Option<&Path>,
    cap: usize,
) -> Result<(), Failure> {
    let text = report.read(path)?;
    let spec: BallSpec = serde_json::from_str(&text)?;
    check_group(&spec.g, "g")?;
    report.flag("scope", FINITE_WINDOW);
    report.flag("edges", "only between vertices inside the ball");
    match &spec.h {
        None => {
            let g = cayley_ball_capped(&spec.g, radius, cap)?;
            if let Some(dir) = output {
                report.write(&dir.join("graph.json"), &g.to_json())?;
            }
            report.results =
                json!({ "kind": "cayley-ball", "radius": radius, "n": g.n(), "m": g.m() });
        }
        Some(h) => {
            check_group(h, "h")?;
            let ball = free_product_ball_capped(&spec.g, h, radius, cap)?;
            let tg = &ball.grading;
            tg.validate()
                .map_err(|v| Failure::from(sepprof::Error::Internal(v.to_string())))?;
            if let Some(dir) = output {
                report.write(&dir.join("graph.json"), &tg.host.to_json())?;
                report.write(&dir.join("grading.json"), &tg.to_json())?;
            }
            report.results = json!({
                "kind": "free-product-ball",
                "radius": radius,
                "n": tg.host.n(),
                "m": tg.host.m(),
                "pieces": tg.pieces.len(),
                "grading_valid": true,
            });
        }
    }
    Ok(())
}

pub fn gen_compose(report: &mut Report, path: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let text = report.read(path)?;
    let doc: GluingDocument = serde_json::from_str(&text)?;
    let tg = doc.compose()?;
    tg.validate()
        .map_err(|v| Failure::input(format!("composition is not tree-graded: {v}")))?;
    let sizes: BTreeMap<usize, usize> = tg.pieces.iter().fold(BTreeMap::new(), |mut m, p| {
        *m.entry(p.len()).or_default() += 1;
        m
    });
    report.results = json!({
        "kind": "composition",
        "n": tg.host.n(),
        "m": tg.host.m(),
        "pieces": tg.pieces.len(),
        "piece_sizes": sizes,
        "grading_valid": true,
    });
    match output {
        Some(file) => report.write(file, &tg.to_json())?,
        None => report.results["grading"] = tg.to_json_value(),
    }
    Ok(())
}

pub fn validate_td(report: &mut Report, graph: &Path, td_path: &Path) -> Result<(), Failure> {
    let g = read_graph(report, graph)?;
    let text = report.read(td_path)?;
    let td = if text.trim_start().starts_with('{') {
        serde_json::from_str::<TreeDecomposition>(&text)?
    } else {
        let (td, n) = TreeDecomposition::from_pace(&text)?;
        if n != g.n() {
            return Err(Failure::input(format!(
                "decomposition is for {n} vertices, graph has {}",
                g.n()
            )));
        }
        td
    };
    let outcome = td.validate(&g);
    report.passed = outcome.is_ok();
    report.results = match outcome {
        Ok(width) => json!({ "valid": true, "width": width, "bags": td.bags.len() }),
        Err(v) => json!({ "valid": false, "violation": v.to_string(), "width": Value::Null }),
    };
    Ok(())
}

pub fn validate_grading(
    report: &mut Report,
    path: &Path,
    cycles: Option<usize>,
) -> Result<(), Failure> {
    let tg = read_grading(report, path)?;
    let check = match cycles {
        Some(limit) => LoopCheck::Cycles { limit },
        None => LoopCheck::Blocks,
    };
    report.flag(
        "loop_check",
        match check {
            LoopCheck::Blocks => "blocks",
            LoopCheck::Cycles { .. } => "cycles",
        },
    );
    let outcome = tg.validate_with(check);
    report.passed = outcome.is_ok();
    report.results = match outcome {
        Ok(()) => json!({ "valid": true, "n": tg.host.n(), "pieces": tg.pieces.len() }),
        Err(v) => json!({ "valid": false, "violation": v.to_string() }),
    };
    Ok(())
}
