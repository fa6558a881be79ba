//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gstab_core::classify::{
    contains_maximal_ideal, dimension_spread, trace_equals_power_of, trace_height,
};
use gstab_core::graph::Graph;
use gstab_core::numsgp::family;
use gstab_core::poset::{enumerate_posets, hmp_poset, PolytopeKind};
use gstab_core::toric::{FacetSystem, Monomial, Region, TraceHeight};
use gstab_core::verify::{theorem_corpus, NamedGraph};
use gstab_core::SizeLimits;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn(&[NamedGraph]) -> Outcome,
}

fn facets(g: &Graph) -> FacetSystem {
    FacetSystem::new(g, &SizeLimits::default()).expect("corpus graphs are perfect and small")
}

fn union(a: Graph, b: Graph) -> Graph {
    a.disjoint_union(&b).unwrap()
}

fn theorem_equivalence(corpus: &[NamedGraph]) -> Outcome {
    let limits = SizeLimits::default();
    let mut bad = Vec::new();
    for ng in corpus {
        let fs = facets(&ng.graph);
        let pure = ng
            .graph
            .connected_components()
            .iter()
            .all(|c| c.graph.is_pure());
        let power =
            trace_equals_power_of(&fs, dimension_spread(&ng.graph)).map_err(|e| e.to_string())?;
        let faces = fs.cone_faces(&limits).map_err(|e| e.to_string())?;
        let trace = fs
            .trace_ideal(fs.default_layers())
            .map_err(|e| e.to_string())?;
        let primary = trace.is_m_primary(&fs, &faces);
        if pure != power || pure != primary {
            bad.push(format!(
                "{} (pure {pure}, power {power}, m-primary {primary})",
                ng.name
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} graphs, 0 disagreements", corpus.len()))
    } else {
        Err(format!("{} disagreements: {}", bad.len(), bad.join("; ")))
    }
}

fn power_exactness(_: &[NamedGraph]) -> Outcome {
    let cases = [
        (
            "K2+K1",
            union(Graph::complete(2), Graph::complete(1)),
            1usize,
        ),
        ("K3+K1", union(Graph::complete(3), Graph::complete(1)), 2),
    ];
    for (name, g, exact) in cases {
        let fs = facets(&g);
        for n in 0..=exact {
            let got = trace_equals_power_of(&fs, n).map_err(|e| e.to_string())?;
            if got != (n == exact) {
                return Err(format!("{name}: trace = m^{n} returned {got}"));
            }
        }
    }
    Ok("K2+K1 exact at N=1, K3+K1 exact at N=2".into())
}

fn nearly_gorenstein(corpus: &[NamedGraph]) -> Outcome {
    let mut bad = Vec::new();
    for ng in corpus {
        let comps = ng.graph.connected_components();
        let pure = comps.iter().all(|c| c.graph.is_pure());
        let flag = pure && dimension_spread(&ng.graph) <= 1;
        let oracle = contains_maximal_ideal(&facets(&ng.graph)).map_err(|e| e.to_string())?;
        if flag != oracle {
            bad.push(ng.name.clone());
        }
    }
    if bad.is_empty() {
        Ok(format!("{} graphs, 0 disagreements", corpus.len()))
    } else {
        Err(format!("disagreements: {}", bad.join(", ")))
    }
}

fn hmp_family(_: &[NamedGraph]) -> Outcome {
    let limits = SizeLimits::default();
    let mut seen = Vec::new();
    for (a, b) in [(4, 5), (4, 6), (5, 6)] {
        let g = hmp_poset(a, b)
            .map_err(|e| e.to_string())?
            .comparability_graph();
        let dim = facets(&g).ring_dim();
        let height = trace_height(&g, &limits, None).map_err(|e| e.to_string())?;
        if dim != b || height != TraceHeight::Height(a) {
            return Err(format!("({a},{b}): height {height}, dim {dim}"));
        }
        seen.push(format!("({a},{b}) height {height} dim {dim}"));
    }
    Ok(seen.join(", "))
}

fn type_and_residue(_: &[NamedGraph]) -> Outcome {
    for a in 2..=6u64 {
        for b in 1..=6u64 {
            let h = family(a, b).map_err(|e| e.to_string())?;
            let base = (b - 1) * (a + 1);
            let pf: Vec<u64> = (1..=a).map(|k| base + k).collect();
            if h.cm_type() as u64 != a || h.residue() as u64 != b || h.pseudo_frobenius() != pf {
                return Err(format!(
                    "({a},{b}): type {}, residue {}, PF {:?}",
                    h.cm_type(),
                    h.residue(),
                    h.pseudo_frobenius()
                ));
            }
        }
    }
    Ok("36 parameter pairs exact".into())
}

fn a_invariant(corpus: &[NamedGraph]) -> Outcome {
    for ng in corpus {
        let fs = facets(&ng.graph);
        let scanned = -fs.min_canonical_degree_by_scan();
        let formula = -ng.graph.maximal_cliques().dim - 2;
        if scanned != formula {
            return Err(format!("{}: scan {scanned}, formula {formula}", ng.name));
        }
    }
    Ok(format!("{} graphs exact", corpus.len()))
}

fn segre_identity(corpus: &[NamedGraph]) -> Outcome {
    let mut checked = 0;
    for ng in corpus {
        let comps = ng.graph.connected_components();
        if comps.len() < 2 {
            continue;
        }
        let whole = facets(&ng.graph);
        let parts: Vec<FacetSystem> = comps.iter().map(|c| facets(&c.graph)).collect();
        for q in 0..=6 {
            let product: u64 = parts.iter().map(|p| p.hilbert_function(q)).product();
            let direct = whole.hilbert_function(q);
            if product != direct {
                return Err(format!("{} q={q}: {direct} != {product}", ng.name));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} multi-component graphs, q <= 6 exact"))
}

fn anticanonical_routes(corpus: &[NamedGraph]) -> Outcome {
    let mut points = 0u64;
    for ng in corpus {
        let fs = facets(&ng.graph);
        let omega = fs
            .minimal_generators(Region::Canonical, fs.default_layers())
            .map_err(|e| e.to_string())?;
        let n = fs.n();
        let lowest = -(fs.delta() as i64 + 1);
        let mut a = vec![-2i64; n];
        loop {
            for q in lowest..=8 {
                let m = Monomial::new(a.clone(), q);
                let threshold = fs.in_anticanonical(&m).unwrap();
                let definition = fs.in_anticanonical_by_definition(&m, &omega).unwrap();
                if threshold != definition {
                    return Err(format!(
                        "{} at {m}: threshold {threshold}, definition {definition}",
                        ng.name
                    ));
                }
                points += 1;
            }
            // odometer over [-2, 3]^n
            let Some(i) = (0..n).find(|&i| a[i] < 3) else {
                break;
            };
            a[i] += 1;
            a[..i].iter_mut().for_each(|x| *x = -2);
        }
    }
    Ok(format!("{points} monomials, 0 disagreements"))
}

fn ehrhart_equality(_: &[NamedGraph]) -> Outcome {
    let mut posets = 0;
    for n in 0..=5 {
        for p in enumerate_posets(n) {
            for q in 0..=5 {
                let order = p.polytope_point_count(PolytopeKind::Order, q);
                let chain = p.polytope_point_count(PolytopeKind::Chain, q);
                if order != chain {
                    return Err(format!(
                        "{:?} q={q}: order {order}, chain {chain}",
                        p.to_file()
                    ));
                }
            }
            posets += 1;
        }
    }
    Ok(format!("{posets} posets, q <= 5, 0 disagreements"))
}

fn main() -> ExitCode {
    let corpus = theorem_corpus(&SizeLimits::default()).expect("corpus builds");
    let criteria = [
        Criterion {
            id: 1,
            name: "purity, trace power and m-primary agree",
            budget: Duration::from_secs(300),
            run: theorem_equivalence,
        },
        Criterion {
            id: 2,
            name: "trace power exactness",
            budget: Duration::from_secs(60),
            run: power_exactness,
        },
        Criterion {
            id: 3,
            name: "nearly Gorenstein corollary",
            budget: Duration::from_secs(300),
            run: nearly_gorenstein,
        },
        Criterion {
            id: 4,
            name: "poset family height and dimension",
            budget: Duration::from_secs(600),
            run: hmp_family,
        },
        Criterion {
            id: 5,
            name: "numerical semigroup type and residue",
            budget: Duration::from_secs(10),
            run: type_and_residue,
        },
        Criterion {
            id: 6,
            name: "a-invariant",
            budget: Duration::from_secs(300),
            run: a_invariant,
        },
        Criterion {
            id: 7,
            name: "Segre product Hilbert function",
            budget: Duration::from_secs(300),
            run: segre_identity,
        },
        Criterion {
            id: 8,
            name: "anticanonical threshold vs definition",
            budget: Duration::from_secs(600),
            run: anticanonical_routes,
        },
        Criterion {
            id: 9,
            name: "order/chain polytope Ehrhart equality",
            budget: Duration::from_secs(60),
            run: ehrhart_equality,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)(&corpus);
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}; took {elapsed:.2?}, budget {:?}",
                c.budget
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "[PASS] criterion {}: {} -- {detail} ({elapsed:.2?})",
                c.id, c.name
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "[FAIL] criterion {}: {} -- {detail} ({elapsed:.2?})",
                    c.id, c.name
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
