use std::path::Path;
use std::time::Instant;

use gstab_core::classify::{classify, ClassifyOptions, TraceReport};
use gstab_core::graph::{Graph, GraphFile};
use gstab_core::numsgp::{family, NumericalSemigroup};
use gstab_core::poset::{hmp_poset, PolytopeKind, Poset, PosetFile};
use gstab_core::toric::TraceHeight;
use gstab_core::verify::verify_up_to;
use gstab_core::SizeLimits;
use serde::Serialize;

use crate::report::{CliError, Output};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

#[derive(Serialize)]
struct GraphResult {
    perfect: bool,
    maximal_cliques: Vec<Vec<usize>>,
    clique_complex_dim: i64,
    #[serde(flatten)]
    trace: TraceReport,
}

fn analyze_graph(
    g: &Graph,
    oracle: bool,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<GraphResult, CliError> {
    let trace = classify(
        g,
        limits,
        ClassifyOptions {
            oracle,
            degree_layers,
        },
    )?;
    let cc = g.maximal_cliques();
    Ok(GraphResult {
        perfect: true,
        maximal_cliques: cc.maximal_cliques.iter().map(|c| c.labels()).collect(),
        clique_complex_dim: cc.dim,
        trace,
    })
}

fn agreement_of(r: &GraphResult) -> Option<bool> {
    r.trace.oracle.as_ref().map(|o| o.agreement)
}

#[derive(Serialize)]
struct FileInput<'a, T> {
    file: String,
    #[serde(flatten)]
    content: &'a T,
}

pub fn graph_analyze(
    path: &Path,
    oracle: bool,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<Output, CliError> {
    let start = Instant::now();
    let g = Graph::from_json(&read(path)?)?;
    let result = analyze_graph(&g, oracle, degree_layers, limits)?;
    let agreement = agreement_of(&result);
    let input = FileInput {
        file: path.display().to_string(),
        content: &g.to_file(),
    };
    let mut out = Output::new("graph analyze", input, result)?;
    out.agreement = agreement;
    out.ok = agreement.unwrap_or(true);
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}

#[derive(Serialize)]
struct EhrhartRow {
    q: u64,
    order: u64,
    chain: u64,
}

#[derive(Serialize)]
struct PosetResult {
    covers: Vec<[String; 2]>,
    maximal_chains: Vec<Vec<String>>,
    x_subposet: Option<[String; 5]>,
    antichains: usize,
    ehrhart: Vec<EhrhartRow>,
    comparability_graph: GraphFile,
    stable_sets_equal_antichains: bool,
    graph: GraphResult,
}

fn poset_result(
    p: &Poset,
    oracle: bool,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<PosetResult, CliError> {
    let name = |i: usize| p.labels()[i].clone();
    let g = p.comparability_graph();
    let x_subposet = p
        .x_subposet()
        .map(|w| [name(w.a), name(w.b), name(w.x), name(w.y), name(w.z)]);
    let ehrhart = (0..=4)
        .map(|q| EhrhartRow {
            q,
            order: p.polytope_point_count(PolytopeKind::Order, q),
            chain: p.polytope_point_count(PolytopeKind::Chain, q),
        })
        .collect();
    Ok(PosetResult {
        covers: p.to_file().covers,
        maximal_chains: p
            .maximal_chains()
            .into_iter()
            .map(|c| c.into_iter().map(name).collect())
            .collect(),
        x_subposet,
        antichains: p.antichains().len(),
        ehrhart,
        comparability_graph: g.to_file(),
        stable_sets_equal_antichains: p.antichains() == g.stable_sets(),
        graph: analyze_graph(&g, oracle, degree_layers, limits)?,
    })
}

pub fn poset_analyze(
    path: &Path,
    oracle: bool,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<Output, CliError> {
    let start = Instant::now();
    let p = Poset::from_json(&read(path)?)?;
    let result = poset_result(&p, oracle, degree_layers, limits)?;
    let agreement = agreement_of(&result.graph);
    let input = FileInput {
        file: path.display().to_string(),
        content: &p.to_file(),
    };
    let mut out = Output::new("poset analyze", input, result)?;
    out.agreement = agreement;
    out.ok = agreement.unwrap_or(true);
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}

#[derive(Serialize)]
struct HmpInput {
    a: usize,
    b: usize,
    oracle: bool,
}

#[derive(Serialize)]
struct HmpResult {
    poset: PosetFile,
    comparability_graph: GraphFile,
    x_subposet: bool,
    connected: bool,
    dim: usize,
    dim_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<TraceHeight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height_match: Option<bool>,
    classification: TraceReport,
}

pub fn family_hmp(
    a: usize,
    b: usize,
    oracle: bool,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<Output, CliError> {
    let start = Instant::now();
    let p = hmp_poset(a, b)?;
    let g = p.comparability_graph();
    let report = classify(
        &g,
        limits,
        ClassifyOptions {
            oracle,
            degree_layers,
        },
    )?;
    let height = report.height;
    let height_match = height.map(|h| h == TraceHeight::Height(a));
    let dim_match = report.dim == b;
    let agreement = report.oracle.as_ref().map(|o| o.agreement);
    let result = HmpResult {
        poset: p.to_file(),
        comparability_graph: g.to_file(),
        x_subposet: p.has_x_subposet(),
        connected: g.connected_components().len() == 1,
        dim: report.dim,
        dim_match,
        height,
        height_match,
        classification: report,
    };
    let mut out = Output::new("family hmp", HmpInput { a, b, oracle }, result)?;
    out.agreement = agreement;
    out.ok = dim_match && height_match.unwrap_or(true) && agreement.unwrap_or(true);
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}

#[derive(Serialize)]
struct SemigroupResult {
    generators: Vec<u64>,
    gaps: Vec<u64>,
    frobenius: i64,
    conductor: u64,
    pseudo_frobenius: Vec<u64>,
    #[serde(rename = "type")]
    cm_type: usize,
    residue: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<FamilyExpectation>,
}

#[derive(Serialize)]
struct FamilyExpectation {
    #[serde(rename = "type")]
    cm_type: u64,
    residue: u64,
    pseudo_frobenius: Vec<u64>,
    type_match: bool,
    residue_match: bool,
    pseudo_frobenius_match: bool,
}

fn semigroup_result(h: &NumericalSemigroup) -> SemigroupResult {
    SemigroupResult {
        generators: h.generators().to_vec(),
        gaps: h.gaps(),
        frobenius: h.frobenius(),
        conductor: h.conductor(),
        pseudo_frobenius: h.pseudo_frobenius(),
        cm_type: h.cm_type(),
        residue: h.residue(),
        expected: None,
    }
}

#[derive(Serialize)]
struct GensInput<'a> {
    generators: &'a [u64],
}

pub fn numsgp_gens(gens: &[u64]) -> Result<Output, CliError> {
    let start = Instant::now();
    let h = NumericalSemigroup::new(gens)?;
    let mut out = Output::new(
        "numsgp",
        GensInput { generators: gens },
        semigroup_result(&h),
    )?;
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}

#[derive(Serialize)]
struct FamilyInput {
    family: [u64; 2],
}

pub fn numsgp_family(a: u64, b: u64) -> Result<Output, CliError> {
    let start = Instant::now();
    let h = family(a, b)?;
    let mut result = semigroup_result(&h);
    let base = (b - 1) * (a + 1);
    let pf: Vec<u64> = (1..=a).map(|k| base + k).collect();
    let exp = FamilyExpectation {
        cm_type: a,
        residue: b,
        type_match: result.cm_type as u64 == a,
        residue_match: result.residue as u64 == b,
        pseudo_frobenius_match: result.pseudo_frobenius == pf,
        pseudo_frobenius: pf,
    };
    let ok = exp.type_match && exp.residue_match && exp.pseudo_frobenius_match;
    result.expected = Some(exp);
    let mut out = Output::new("numsgp", FamilyInput { family: [a, b] }, result)?;
    out.ok = ok;
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}

#[derive(Serialize)]
struct VerifyInput {
    max_n: usize,
}

pub fn verify(
    max_n: usize,
    degree_layers: Option<usize>,
    limits: &SizeLimits,
) -> Result<Output, CliError> {
    let start = Instant::now();
    let summary = verify_up_to(max_n, limits, degree_layers)?;
    let agreement = summary.disagreements == 0;
    let mut out = Output::new("verify", VerifyInput { max_n }, summary)?;
    out.agreement = Some(agreement);
    out.ok = agreement;
    out.timings_ms.insert("total".into(), millis(start));
    Ok(out)
}
