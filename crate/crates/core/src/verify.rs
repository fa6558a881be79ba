//! Batch comparison of the component criterion against the lattice-point
//! oracle.

use serde::Serialize;

use crate::classify::{classify, ClassifyOptions, TraceReport};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, Graph};
use crate::SizeLimits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedGraph {
    pub name: String,
    #[serde(skip)]
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph {
            name: name.into(),
            graph,
        }
    }
}

fn edge_name(g: &Graph) -> String {
    let edges: Vec<String> = g
        .edge_labels()
        .iter()
        .map(|(u, v)| format!("{u}{v}"))
        .collect();
    format!("n{}[{}]", g.n(), edges.join(","))
}

/// One graph per isomorphism class on `1..=max_n` vertices, with the
/// total number of classes enumerated.
pub fn all_graphs_up_to(max_n: usize, limits: &SizeLimits) -> Result<Vec<NamedGraph>> {
    let limit = limits.enumeration_vertices.min(8);
    if max_n > limit {
        return Err(Error::SizeLimit {
            what: "graph enumeration",
            size: max_n,
            limit,
        });
    }
    Ok((1..=max_n)
        .flat_map(enumerate_graphs)
        .map(|g| NamedGraph::new(edge_name(&g), g))
        .collect())
}

/// The five small connected graphs whose pairwise unions join the corpus.
pub fn union_factors() -> Vec<NamedGraph> {
    vec![
        NamedGraph::new("K1", Graph::complete(1)),
        NamedGraph::new("K2", Graph::complete(2)),
        NamedGraph::new("K3", Graph::complete(3)),
        NamedGraph::new("P3", Graph::path(3)),
        NamedGraph::new("paw", Graph::paw()),
    ]
}

/// Every unordered pair (with repetition) of [`union_factors`].
pub fn two_component_unions() -> Vec<NamedGraph> {
    let factors = union_factors();
    let mut out = Vec::new();
    for i in 0..factors.len() {
        for j in i..factors.len() {
            let g = factors[i]
                .graph
                .disjoint_union(&factors[j].graph)
                .expect("small unions fit");
            out.push(NamedGraph::new(
                format!("{}+{}", factors[i].name, factors[j].name),
                g,
            ));
        }
    }
    out
}

/// Perfect graphs on at most five vertices followed by the fifteen
/// two-component unions.
pub fn theorem_corpus(limits: &SizeLimits) -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for ng in all_graphs_up_to(
        5,
        &SizeLimits {
            enumeration_vertices: 5,
            ..*limits
        },
    )? {
        if ng.graph.is_perfect(limits.perfection_vertices)? {
            out.push(ng);
        }
    }
    out.extend(two_component_unions());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
    pub report: TraceReport,
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        self.report.oracle.as_ref().is_some_and(|o| o.agreement)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub graphs: usize,
    pub perfect: usize,
    pub checked: usize,
    pub disagreements: usize,
    pub verdicts: Vec<Verdict>,
}

/// Classifies every perfect graph in `graphs` with the oracle enabled.
pub fn verify_graphs(
    graphs: &[NamedGraph],
    limits: &SizeLimits,
    degree_layers: Option<usize>,
) -> Result<VerifySummary> {
    let opts = ClassifyOptions {
        oracle: true,
        degree_layers,
    };
    let mut verdicts = Vec::new();
    let mut perfect = 0;
    for ng in graphs {
        if !ng.graph.is_perfect(limits.perfection_vertices)? {
            continue;
        }
        perfect += 1;
        let report = classify(&ng.graph, limits, opts)?;
        verdicts.push(Verdict {
            name: ng.name.clone(),
            edges: ng.graph.edge_labels(),
            report,
        });
    }
    let disagreements = verdicts.iter().filter(|v| !v.agrees()).count();
    Ok(VerifySummary {
        graphs: graphs.len(),
        perfect,
        checked: verdicts.len(),
        disagreements,
        verdicts,
    })
}

pub fn verify_up_to(
    max_n: usize,
    limits: &SizeLimits,
    degree_layers: Option<usize>,
) -> Result<VerifySummary> {
    let graphs = all_graphs_up_to(max_n, limits)?;
    verify_graphs(&graphs, limits, degree_layers)
}
