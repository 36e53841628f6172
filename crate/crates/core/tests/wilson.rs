use fsgraph::fs;
use fsgraph::graph::{connected_graphs, generator, Family, THETA0_EDGES};
use fsgraph::wilson::{classify, predict_star_components, StarPrediction, WilsonStatus, Witness};
use fsgraph::{Bijection, Graph};
use proptest::prelude::*;

#[test]
fn wilsonian_means_connected_star_graph_up_to_six_vertices() {
    for n in 3..=6 {
        let star = generator(Family::Star(n)).unwrap();
        for y in connected_graphs(n).unwrap() {
            let connected = fs::components(&star, &y).unwrap().is_connected();
            if predict_star_components(&y) == StarPrediction::Connected {
                assert!(connected, "wilsonian {y:?} gave a disconnected FS(Star, Y)");
            }
            // Below seven vertices the exceptions are exact: every
            // non-Wilsonian connected Y disconnects FS(Star_n, Y).
            assert_eq!(connected, classify(&y).status == WilsonStatus::Wilsonian, "{y:?}");
        }
    }
}

#[test]
fn witnesses_are_meaningful() {
    let path = generator(Family::Path(4)).unwrap();
    let v = classify(&path);
    assert_eq!(v.status, WilsonStatus::NotBiconnected);
    assert!(matches!(v.witness, Some(Witness::ArticulationVertex(1 | 2))));
    let disjoint = Graph::from_edges(4, &[(0, 1), (2, 3)], None).unwrap();
    assert_eq!(classify(&disjoint).witness, Some(Witness::Disconnected));
    let k23 = generator(Family::CompleteBipartite(2, 3)).unwrap();
    assert_eq!(classify(&k23).status, WilsonStatus::BipartiteException);
    assert_eq!(classify(&k23).status.token(), "bipartite_exception");
}

proptest! {
    #[test]
    fn theta0_recognised_under_any_labelling(index in 0u64..5040) {
        let b = Bijection::unrank(index, 7).unwrap();
        let edges: Vec<_> = THETA0_EDGES.iter().map(|&(u, v)| (b.apply(u), b.apply(v))).collect();
        let y = Graph::from_edges(7, &edges, None).unwrap();
        let verdict = classify(&y);
        prop_assert_eq!(verdict.status, WilsonStatus::Theta0Exception);
        let Some(Witness::Theta0Isomorphism(map)) = verdict.witness else { panic!("missing witness") };
        for (u, v) in THETA0_EDGES {
            prop_assert!(y.has_edge(map[u], map[v]));
        }
    }
}
