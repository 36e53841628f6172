use fsgraph::fs::{self, Cap, IsolatedOutcome, Reachability};
use fsgraph::graph::{degree_stats, generator, Family};
use fsgraph::perm::{self, Bijection};
use fsgraph::{sample, Graph, RandomModel, SwapSequence};
use proptest::prelude::*;

fn all_bijections(n: usize) -> impl Iterator<Item = Bijection> {
    (0..perm::factorial(n).unwrap()).map(move |i| Bijection::unrank(i, n).unwrap())
}

fn pair(n: usize, p: f64, seed: u64) -> (Graph, Graph) {
    (
        sample(&RandomModel::gnp(n, p, seed)).unwrap(),
        sample(&RandomModel::gnp(n, p, seed ^ 0xabcdef)).unwrap(),
    )
}

#[test]
fn rank_round_trip_is_exhaustive_at_n5() {
    let mut seen = [false; 120];
    for i in 0..120 {
        let b = Bijection::unrank(i, 5).unwrap();
        assert_eq!(b.rank().unwrap(), i);
        seen[perm::rank(b.image()).unwrap() as usize] = true;
    }
    assert!(seen.iter().all(|&s| s));
    assert_eq!(Bijection::identity(4).rank().unwrap(), 0);
    assert_eq!("3,2,1,0".parse::<Bijection>().unwrap().rank().unwrap(), 23);
}

#[test]
fn component_counts_of_small_families() {
    let k4 = generator(Family::Complete(4)).unwrap();
    assert_eq!(fs::components(&k4, &k4).unwrap().sizes, vec![24]);
    let empty = Graph::empty(4);
    let s = fs::components(&empty, &k4).unwrap();
    assert_eq!((s.component_count, s.isolated_count), (24, 24));
    let k22 = generator(Family::CompleteBipartite(2, 2)).unwrap();
    assert_eq!(fs::components(&k22, &k22).unwrap().to_string(), "count 2 sizes 12*2");
}

#[test]
fn star_against_theta0_and_cycles() {
    let theta = generator(Family::Theta0).unwrap();
    let s = fs::components(&generator(Family::Star(7)).unwrap(), &theta).unwrap();
    assert_eq!(s.size_multiset(), vec![(840, 6)]);
    // Oracle: FS(Star_n, Cycle_n) splits into (n-2)! classes of size n(n-1).
    for n in 4..=8 {
        let s = fs::components(
            &generator(Family::Star(n)).unwrap(),
            &generator(Family::Cycle(n)).unwrap(),
        )
        .unwrap();
        let classes: u64 = (1..=(n as u64 - 2)).product();
        assert_eq!(s.size_multiset(), vec![(n as u64 * (n as u64 - 1), classes)], "n = {n}");
    }
}

#[test]
fn cap_is_reported_not_ignored() {
    let k = generator(Family::Complete(13)).unwrap();
    assert!(matches!(
        fs::components(&k, &k),
        Err(fs::FsError::CapExceeded { n: 13, cap: 12 })
    ));
    assert!(Cap::new(14).is_err());
}

#[test]
fn isolated_vertex_search() {
    let k3 = generator(Family::Complete(3)).unwrap();
    let out = fs::find_isolated_vertex(&k3, &k3, fs::DEFAULT_ISOLATED_BUDGET).unwrap();
    assert_eq!(out.outcome, IsolatedOutcome::NoneExists);
    let two_k2 = Graph::from_edges(5, &[(0, 1), (2, 3)], None).unwrap();
    let out = fs::find_isolated_vertex(&two_k2, &two_k2, fs::DEFAULT_ISOLATED_BUDGET).unwrap();
    let b = out.found().expect("2*1*1 < 5");
    assert!(fs::is_isolated(&two_k2, &two_k2, b).unwrap());
    // Brute force agrees that some bijection has no friendly swap.
    assert!(all_bijections(5).any(|b| fs::is_isolated(&two_k2, &two_k2, &b).unwrap()));
}

#[test]
fn exchangeable_edge_cases() {
    let k4 = generator(Family::Complete(4)).unwrap();
    let id = Bijection::identity(4);
    match fs::exchangeable(&k4, &k4, &id, 1, 2).unwrap() {
        Reachability::Found(seq) => assert_eq!(seq, SwapSequence::from_pairs(&[(1, 2)])),
        other => panic!("{other:?}"),
    }
    assert_eq!(
        fs::exchangeable(&Graph::empty(4), &k4, &id, 0, 1).unwrap(),
        Reachability::CertifiedAbsent
    );
}

#[test]
fn concordance_labels_split_k22_evenly() {
    let k22 = generator(Family::CompleteBipartite(2, 2)).unwrap();
    assert_eq!(fs::concordance_class(&k22, &k22, &Bijection::identity(4)).unwrap(), 0);
    let zeros = all_bijections(4)
        .filter(|b| fs::concordance_class(&k22, &k22, b).unwrap() == 0)
        .count();
    assert_eq!(zeros, 12);
    assert!(fs::concordance_class(&Graph::empty(4), &k22, &Bijection::identity(4)).is_err());
}

#[test]
fn apply_sequence_reports_failing_position() {
    let p3 = generator(Family::Path(3)).unwrap();
    let id = Bijection::identity(3);
    assert_eq!(
        fs::apply_sequence(&p3, &p3, &id, &SwapSequence::new()).unwrap().result,
        id
    );
    let bad = SwapSequence::from_pairs(&[(0, 1), (0, 2)]);
    assert!(matches!(
        fs::apply_sequence(&p3, &p3, &id, &bad),
        Err(fs::FsError::NonFriendlyMove { position: 1, .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_swaps_roles(seed in any::<u64>(), n in 3usize..=6, p in 0.2f64..0.9) {
        let (x, y) = pair(n, p, seed);
        let a = fs::components(&x, &y).unwrap();
        let b = fs::components(&y, &x).unwrap();
        prop_assert_eq!(a.sizes, b.sizes);
    }

    #[test]
    fn adding_y_edges_only_merges(seed in any::<u64>(), n in 3usize..=6, p in 0.2f64..0.8) {
        let (x, y) = pair(n, p, seed);
        let mut bigger = y.clone();
        let (a, c) = ((seed % n as u64) as usize, ((seed >> 8) % n as u64) as usize);
        if a != c {
            bigger.add_edge(a, c);
        }
        let fine = fs::component_map(&x, &y, Cap::DEFAULT).unwrap();
        let coarse = fs::component_map(&x, &bigger, Cap::DEFAULT).unwrap();
        let mut rep = std::collections::HashMap::new();
        for b in all_bijections(n) {
            let prev = *rep.entry(fine.label_of(&b)).or_insert(coarse.label_of(&b));
            prop_assert_eq!(prev, coarse.label_of(&b));
        }
    }

    #[test]
    fn components_respect_concordance(seed in any::<u64>(), r in 2usize..=3, p in 0.3f64..1.0) {
        let x = sample(&RandomModel::bipartite_gnp(r, p, seed)).unwrap();
        let y = sample(&RandomModel::bipartite_gnp(r, p, !seed)).unwrap();
        let map = fs::component_map(&x, &y, Cap::DEFAULT).unwrap();
        let mut label = std::collections::HashMap::new();
        for b in all_bijections(2 * r) {
            let c = fs::concordance_class(&x, &y, &b).unwrap();
            prop_assert_eq!(*label.entry(map.label_of(&b)).or_insert(c), c);
        }
    }

    #[test]
    fn neighbors_are_single_moves(seed in any::<u64>(), n in 2usize..=7, p in 0.2f64..0.9) {
        let (x, y) = pair(n, p, seed);
        let b = Bijection::unrank(seed % perm::factorial(n).unwrap(), n).unwrap();
        let nbrs = fs::friendly_neighbors(&x, &y, &b).unwrap();
        let mut count = 0;
        for (a, c) in x.edges() {
            let (u, v) = (b.apply(a), b.apply(c));
            let one = SwapSequence::from_pairs(&[(u, v)]);
            match fs::apply_sequence(&x, &y, &b, &one) {
                Ok(r) => {
                    count += 1;
                    prop_assert!(nbrs.iter().any(|(_, nb)| *nb == r.result));
                }
                Err(_) => prop_assert!(!y.has_edge(u, v)),
            }
        }
        prop_assert_eq!(count, nbrs.len());
    }

    #[test]
    fn exchangeability_translates_to_the_swapped_pair(seed in any::<u64>(), p in 0.3f64..0.8) {
        let (x, y) = pair(6, p, seed);
        let b = Bijection::unrank(seed % 720, 6).unwrap();
        let forward = fs::exchangeable(&x, &y, &b, 0, 1).unwrap();
        let inv = b.inverse();
        let back = fs::exchangeable(&y, &x, &inv, inv.apply(0), inv.apply(1)).unwrap();
        prop_assert_eq!(forward.sequence().is_some(), back.sequence().is_some());
        if let Reachability::Found(seq) = forward {
            let end = fs::apply_sequence(&x, &y, &b, &seq).unwrap().result;
            prop_assert_eq!(end, fs::exchange_target(&b, 0, 1));
        }
    }

    #[test]
    fn half_degree_forbids_isolated_vertices(seed in any::<u64>(), n in 2usize..=7) {
        let (x, y) = pair(n, 0.85, seed);
        prop_assume!(2 * degree_stats(&x).0 >= n && 2 * degree_stats(&y).0 >= n);
        let out = fs::find_isolated_vertex(&x, &y, u64::MAX).unwrap();
        prop_assert_eq!(out.outcome, IsolatedOutcome::NoneExists);
    }
}
