use fsgraph::embed::*;
use fsgraph::graph::{generator, Family, Side};
use fsgraph::{sample, Bijection, Graph, RandomModel};
use itertools::Itertools;
use proptest::prelude::*;

/// Exhaustive oracle over `V_1 × … × V_m`.
fn brute_force(inst: &EmbedInstance) -> bool {
    let inv = inst.sigma.inverse();
    inst.sets
        .iter()
        .map(|s| s.iter().copied())
        .multi_cartesian_product()
        .any(|pick| {
            (0..pick.len()).tuple_combinations().all(|(i, j)| {
                (!inst.h.has_edge(i, j) || inst.y.has_edge(pick[i], pick[j]))
                    && (!inst.g.has_edge(i, j) || inst.x.has_edge(inv.apply(pick[i]), inv.apply(pick[j])))
            })
        })
}

fn instance(seed: u64, n: usize, m: usize, p: f64) -> EmbedInstance {
    let g = sample(&RandomModel::gnp(m, 0.5, seed)).unwrap();
    let h = sample(&RandomModel::gnp(m, 0.5, seed.rotate_left(17))).unwrap();
    let x = sample(&RandomModel::gnp(n, p, seed.rotate_left(29))).unwrap();
    let y = sample(&RandomModel::gnp(n, p, seed.rotate_left(41))).unwrap();
    let sigma = Bijection::unrank(seed % 3_628_800 % fsgraph::perm::factorial(n).unwrap(), n).unwrap();
    // Consecutive chunks of a seed-rotated vertex order.
    let order: Vec<usize> = (0..n).map(|i| (i + seed as usize % n) % n).collect();
    let size = n / m;
    let sets = (0..m).map(|i| order[i * size..(i + 1) * size].to_vec()).collect();
    EmbedInstance {
        g,
        h,
        x,
        y,
        sigma,
        sets,
    }
}

#[test]
fn hypothesis_inequality_single_edge_by_hand() {
    let g = generator(Family::Complete(2)).unwrap();
    let h = Graph::empty(2);
    let (p, q, n) = (0.5, [400usize, 600], 5000usize);
    let rep = check_hypothesis_inequality(&g, &h, p, &q, n, false).unwrap();
    assert_eq!(rep.checks.len(), 1);
    let lhs = p * 400.0 * 600.0;
    let rhs = 3.0 * 8.0 * 1000.0 * (n as f64).ln();
    assert!((rep.checks[0].lhs_ln - lhs.ln()).abs() < 1e-12);
    assert!((rep.threshold_ln - rhs.ln()).abs() < 1e-12);
    assert_eq!(rep.passes(), lhs >= rhs);
    let tight = check_hypothesis_inequality(&g, &h, 0.2, &q, n, false).unwrap();
    assert!(!tight.passes());
    assert_eq!(tight.worst().unwrap().j, vec![0, 1]);
}

#[test]
fn hypothesis_inequality_rejects_bad_input() {
    let g = generator(Family::Complete(3)).unwrap();
    assert!(check_hypothesis_inequality(&g, &g, 0.5, &[1, 1], 10, false).is_err());
    assert!(check_hypothesis_inequality(&g, &g, 1.5, &[1, 1, 1], 10, false).is_err());
    assert!(check_hypothesis_inequality(&g, &g, 0.5, &[5, 5, 5], 10, false).is_err());
    let big = generator(Family::Complete(MAX_SUBSET_M + 1)).unwrap();
    assert!(check_hypothesis_inequality(&big, &big, 0.5, &[1; MAX_SUBSET_M + 1], 100, false).is_err());
}

#[test]
fn admissibility_follows_the_parts() {
    let k22 = generator(Family::CompleteBipartite(2, 2)).unwrap();
    let k33 = generator(Family::CompleteBipartite(3, 3)).unwrap();
    let id = Bijection::identity(6);
    assert!(is_admissible(&[vec![0, 1], vec![2], vec![3], vec![4, 5]], &id, &k22, &k22, &k33, &k33).unwrap());
    // Pattern vertices 0 and 1 share a side, their sets do not.
    assert!(!is_admissible(&[vec![0], vec![3], vec![1], vec![4]], &id, &k22, &k22, &k33, &k33).unwrap());
    // Whole-side flip is fine.
    assert!(is_admissible(&[vec![3], vec![4], vec![0], vec![1]], &id, &k22, &k22, &k33, &k33).unwrap());
    assert!(is_admissible(
        &[vec![0], vec![1], vec![3], vec![4]],
        &id,
        &k22,
        &k22,
        &Graph::empty(6),
        &k33
    )
    .is_err());
}

#[test]
fn identity_on_complete_bipartite_is_case_iv() {
    for r in 2..=5 {
        let k = generator(Family::CompleteBipartite(r, r)).unwrap();
        let rep = majority_map_case(&k, &k, &Bijection::identity(2 * r), 0, r).unwrap();
        assert_eq!(rep.case, MajorityCase::IV);
        assert_eq!(rep.y_sides, (Side::B, Side::A));
        assert!(matches!(
            majority_map_case(&k, &k, &Bijection::identity(2 * r), 0, 1),
            Err(EmbedError::SamePart)
        ));
    }
}

#[test]
fn estimates_at_extreme_densities() {
    let g = generator(Family::Complete(3)).unwrap();
    let full = HostModel {
        bipartite: false,
        size: 12,
        p: 1.0,
    };
    assert_eq!(
        estimate_embeddability(&g, &g, full, &[3, 3, 3], 40, 1)
            .unwrap()
            .frequency,
        1.0
    );
    let empty = HostModel { p: 0.0, ..full };
    assert_eq!(
        estimate_embeddability(&g, &g, empty, &[3, 3, 3], 40, 1)
            .unwrap()
            .successes,
        0
    );
    let k22 = generator(Family::CompleteBipartite(2, 2)).unwrap();
    let bip = HostModel {
        bipartite: true,
        size: 8,
        p: 0.6,
    };
    let a = estimate_embeddability(&k22, &k22, bip, &[1, 1, 1, 1], 60, 9).unwrap();
    assert_eq!(
        a,
        estimate_embeddability(&k22, &k22, bip, &[1, 1, 1, 1], 60, 9).unwrap()
    );
    assert!(a.frequency > 0.0 && a.frequency <= 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn backtracking_matches_brute_force(seed in any::<u64>(), n in 6usize..=10, m in 2usize..=4, p in 0.2f64..0.9) {
        prop_assume!(n >= m);
        let inst = instance(seed, n, m, p);
        let found = find_embedding(&inst).unwrap();
        prop_assert_eq!(found.is_some(), brute_force(&inst));
        if let Some(w) = found {
            let single = EmbedInstance { sets: w.chosen.iter().map(|&a| vec![a]).collect(), ..inst.clone() };
            prop_assert!(brute_force(&single));
            prop_assert!(w.chosen.iter().zip(&inst.sets).all(|(a, s)| s.contains(a)));
        }
    }

    #[test]
    fn extra_host_edges_never_hurt(seed in any::<u64>(), n in 6usize..=9, p in 0.2f64..0.7, a in 0usize..9, b in 0usize..9) {
        let inst = instance(seed, n, 3, p);
        prop_assume!(a < n && b < n && a != b);
        let before = find_embedding(&inst).unwrap().is_some();
        let mut denser = inst.clone();
        denser.x.add_edge(a, b);
        denser.y.add_edge(a, b);
        prop_assert!(!before || find_embedding(&denser).unwrap().is_some());
    }

    #[test]
    fn hypothesis_is_monotone_in_p(p in 0.01f64..0.99, bump in 0.0f64..0.5) {
        let g = generator(Family::Cycle(5)).unwrap();
        let h = generator(Family::Path(5)).unwrap();
        let q = [2000, 2000, 2000, 2000, 2000];
        let lo = check_hypothesis_inequality(&g, &h, p, &q, 100_000, false).unwrap();
        let hi = check_hypothesis_inequality(&g, &h, (p + bump).min(1.0), &q, 100_000, false).unwrap();
        prop_assert!(!lo.passes() || hi.passes());
        prop_assert_eq!(lo.checks.len(), (1..32u32).filter(|mask| beta(&g, &h, &(0..5).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>()) > 0).count());
    }
}
