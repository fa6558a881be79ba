use gstab_core::classify::{is_m_primary, trace_height};
use gstab_core::graph::Graph;
use gstab_core::poset::{hmp_poset, Poset};
use gstab_core::toric::{FacetSystem, Monomial, Region, TraceHeight};
use gstab_core::verify::theorem_corpus;
use gstab_core::SizeLimits;
use proptest::prelude::*;

fn box_monomials(n: usize, lo: i64, hi: i64, qmax: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut a = vec![lo; n];
    loop {
        for q in -2..=qmax {
            out.push(Monomial::new(a.clone(), q));
        }
        let Some(i) = (0..n).find(|&i| a[i] < hi) else {
            break;
        };
        a[i] += 1;
        a[..i].iter_mut().for_each(|x| *x = lo);
    }
    out
}

#[test]
fn modules_are_closed_under_ring_generators() {
    let limits = SizeLimits::default();
    for ng in theorem_corpus(&limits)
        .unwrap()
        .iter()
        .filter(|g| g.graph.n() <= 4)
    {
        let fs = FacetSystem::new(&ng.graph, &limits).unwrap();
        let gens = fs.ring_generators();
        let trace = fs.trace_ideal(fs.default_layers()).unwrap();
        for m in box_monomials(fs.n(), -1, 2, 4) {
            for region in [Region::Ring, Region::Canonical, Region::Anticanonical] {
                if fs.contains(region, &m).unwrap() {
                    for g in &gens {
                        assert!(
                            fs.contains(region, &m.add(g)).unwrap(),
                            "{} {region:?} {m}",
                            ng.name
                        );
                    }
                }
            }
            if trace.contains(&fs, &m) {
                assert!(
                    fs.in_ring(&m).unwrap(),
                    "{} trace element {m} outside R",
                    ng.name
                );
                for g in &gens {
                    assert!(trace.contains(&fs, &m.add(g)));
                }
            }
        }
    }
}

#[test]
fn trace_generators_match_the_brute_force_membership() {
    let limits = SizeLimits::default();
    for ng in theorem_corpus(&limits)
        .unwrap()
        .iter()
        .filter(|g| g.graph.n() <= 4)
    {
        let fs = FacetSystem::new(&ng.graph, &limits).unwrap();
        let trace = fs.trace_ideal(fs.default_layers()).unwrap();
        for q in 0..=3 {
            for m in fs.degree_monomials(q) {
                assert_eq!(
                    trace.contains(&fs, &m),
                    fs.in_trace(&m).unwrap(),
                    "{} {m}",
                    ng.name
                );
            }
        }
    }
}

#[test]
fn full_height_exactly_when_m_primary() {
    let limits = SizeLimits::default();
    for ng in theorem_corpus(&limits).unwrap() {
        let dim = ng.graph.n() + 1;
        let h = trace_height(&ng.graph, &limits, None).unwrap();
        let primary = is_m_primary(&ng.graph, &limits, None).unwrap();
        match h {
            TraceHeight::Unit => assert!(primary),
            TraceHeight::Height(h) => assert_eq!(h == dim, primary, "{}", ng.name),
        }
    }
}

#[test]
fn hmp_comparability_graphs_are_perfect_and_connected() {
    for (a, b) in [(4, 5), (4, 6), (4, 7), (5, 6), (5, 7)] {
        let p = hmp_poset(a, b).unwrap();
        let g = p.comparability_graph();
        assert_eq!(g.n() + 1, b);
        assert!(g.is_perfect(12).unwrap());
        assert_eq!(g.connected_components().len(), 1);
    }
    assert!(hmp_poset(3, 5).is_err());
    assert!(hmp_poset(4, 4).is_err());
}

#[test]
fn chains_never_contain_the_x_pattern() {
    for k in 0..=10 {
        assert!(!Poset::chain(k).has_x_subposet());
    }
}

fn x_poset() -> Poset {
    let labels = ["a", "b", "x", "y", "z"].map(String::from).to_vec();
    Poset::from_relations(labels, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap()
}

fn arb_poset() -> impl Strategy<Value = Poset> {
    (0usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut rel = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            rel.push((i, j));
                        }
                        k += 1;
                    }
                }
                let labels = (0..n).map(|i| format!("e{i}")).collect();
                Poset::from_relations(labels, &rel).unwrap()
            },
        )
    })
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn x_pattern_survives_adding_elements(p in arb_poset()) {
        let x = x_poset();
        prop_assert!(p.disjoint_union(&x).unwrap().has_x_subposet());
        prop_assert!(x.ordinal_sum(&p).unwrap().has_x_subposet());
        if p.has_x_subposet() {
            prop_assert!(p.with_minimum("bottom").unwrap().has_x_subposet());
        }
    }

    #[test]
    fn comparability_graphs_are_perfect(p in arb_poset()) {
        let g = p.comparability_graph();
        prop_assert!(g.is_perfect(12).unwrap());
        prop_assert_eq!(p.antichains(), g.stable_sets());
    }

    #[test]
    fn perfection_is_closed_under_complement(g in arb_graph()) {
        prop_assert_eq!(g.is_perfect(12).unwrap(), g.complement().is_perfect(12).unwrap());
        prop_assert_eq!(g.stable_sets(), g.complement().cliques());
    }
}
