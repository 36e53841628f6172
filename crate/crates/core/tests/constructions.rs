use fsgraph::constructions::*;
use fsgraph::fs::{self, Cap};
use fsgraph::graph::degree_stats;
use fsgraph::wilson::{classify, WilsonStatus};
use fsgraph::Bijection;

#[test]
fn five_block_degrees_and_certificate() {
    for n in 5..=60 {
        let c = build_lower_bound_pair(n).unwrap();
        let bound = (3.0 * n as f64 - 11.0) / 5.0;
        assert!(degree_stats(&c.x).0 as f64 >= bound, "n = {n}");
        assert!(degree_stats(&c.y).0 as f64 >= bound, "n = {n}");
        let cert = certify_block_disconnected(&c).unwrap();
        assert!(cert.x_pairs.is_disjoint(&cert.y_pairs));
    }
    assert!(build_lower_bound_pair(4).is_err());
}

#[test]
fn five_block_certificate_agrees_with_brute_force() {
    for n in 5..=8 {
        let c = build_lower_bound_pair(n).unwrap();
        let cert = certify_block_disconnected(&c).unwrap();
        let map = fs::component_map(&c.x, &c.y, Cap::DEFAULT).unwrap();
        assert!(!map.same_component(&Bijection::identity(n), &cert.outside), "n = {n}");
        assert!(fs::components(&c.x, &c.y).unwrap().component_count >= 2);
    }
}

#[test]
fn four_block_sigma0_is_isolated() {
    for r in 2..=50 {
        let (c, sigma0) = build_bipartite_lower_bound(r).unwrap();
        let need = bipartite_lower_bound_degree(r);
        assert_eq!(degree_stats(&c.x).0.min(degree_stats(&c.y).0), need, "r = {r}");
        assert!(fs::is_isolated(&c.x, &c.y, &sigma0).unwrap(), "r = {r}");
    }
}

#[test]
fn four_block_small_r_brute_force() {
    for r in 2..=4 {
        let (c, sigma0) = build_bipartite_lower_bound(r).unwrap();
        let s = fs::components(&c.x, &c.y).unwrap();
        assert!(s.isolated_count >= 1);
        assert!(fs::friendly_neighbors(&c.x, &c.y, &sigma0).unwrap().is_empty());
    }
}

#[test]
fn gadget_feasibility_boundary() {
    for m in [20, 100, 140, 141, 142, 143, 196] {
        assert!(
            matches!(build_large_gadget(m), Err(ConstructionError::Infeasible { .. })),
            "m = {m}"
        );
    }
    let smallest = smallest_feasible_gadget(100, 200).expect("a feasible m below 200");
    assert_eq!((smallest.m, smallest.ell), (144, 6));
    assert_eq!(smallest_feasible_gadget(145, 400).map(|g| g.m), Some(162));
}

#[test]
fn gadget_layouts_pass_and_are_wilsonian() {
    for m in [144, 256] {
        let layout = build_large_gadget(m).unwrap();
        let report = verify_gadget_constraints(&layout);
        assert!(report.all_passed(), "m = {m}: {report:?}");
        assert_eq!(classify(&layout.g_2star).status, WilsonStatus::Wilsonian);
        assert_eq!(classify(&layout.g_triple_star()).status, WilsonStatus::Wilsonian);
        assert_eq!(layout.g_star.n(), m + 2);
        assert_eq!(layout.h_star.degree(layout.w()), m - 1);
        assert_eq!(layout.z_count(), m - 2 * layout.ell - 1);
    }
}

#[test]
fn verifier_pinpoints_broken_layouts() {
    let layout = build_large_gadget(144).unwrap();
    // Moving z5 one step breaks its adjacency to z4 and z6.
    let p = layout.position(layout.z(5));
    let broken = layout.with_swapped_positions(p, (p + 2) % layout.m);
    let report = verify_gadget_constraints(&broken);
    assert!(!report.all_passed());
    assert!(!report.check(Constraint::CycleOrder).passed || !report.check(Constraint::ArcLengths).passed);
    // Exchanging two specials keeps every constraint intact.
    let (a, b) = (layout.position(layout.x(1)), layout.position(layout.y(1)));
    assert!(verify_gadget_constraints(&layout.with_swapped_positions(a, b)).all_passed());
}

#[test]
fn derived_gadgets_replay_each_sequence() {
    let (u, v) = GADGET_EXCHANGE;
    for (i, seq) in builtin_bipartite_gadget_sequences().iter().enumerate() {
        assert_eq!(seq.to_string().split(' ').count(), seq.len());
        let d = derive_gadget_from_sequence(seq, GADGET_SIZE, u, v).unwrap();
        let id = Bijection::identity(GADGET_SIZE);
        let replay = fs::apply_sequence(&d.g, &d.h, &id, seq).unwrap_or_else(|e| panic!("sequence {i}: {e}"));
        assert_eq!(replay.result, id.swapped(u, v), "sequence {i}");
        // Dropping any one move leaves something that no longer nets the swap.
        for k in 0..seq.len() {
            let mut shorter = seq.clone();
            shorter.0.remove(k);
            if let Ok(r) = fs::apply_sequence(&d.g, &d.h, &id, &shorter) {
                assert_ne!(r.result, id.swapped(u, v), "sequence {i} without move {k}");
            }
        }
    }
}

#[test]
fn gadget_sequences_are_zero_based_transcriptions() {
    let seqs = builtin_bipartite_gadget_sequences();
    assert_eq!(seqs.each_ref().map(|s| s.len()), [33, 27, 25, 23]);
    // "46, 34, ..." becomes 3-5, 2-3, ...
    assert!(seqs[0].to_string().starts_with("3-5 2-3 3-4 3-6"));
    assert!(seqs[3].to_string().ends_with("2-3 2-7 2-4"));
}
