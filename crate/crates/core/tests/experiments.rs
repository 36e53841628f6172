use std::collections::BTreeMap;

use fsgraph::experiments::*;
use fsgraph::fs::Cap;
use proptest::prelude::*;

fn config(mode: Mode, size: usize, trials: usize, seed: u64) -> SweepConfig {
    SweepConfig {
        mode,
        size,
        p_grid: parse_pgrid("0.1:0.9:0.1").unwrap(),
        trials,
        seed,
        cap: DEFAULT_SWEEP_CAP,
    }
}

fn csv(records: &[ExperimentRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, false, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

// First-run fixture: G(K_{4,4}, p), 100 trials, seed 2024.
const BIP4_FIXTURE: &str = "\
mode,size,p,trials,seed,frac_connected,frac_isolated_exists,frac_exactly_two,mean_components,wall_ms
bip,4,0.1,100,2024,0.000000,1.000000,0.000000,38556.480000,0
bip,4,0.2,100,2024,0.000000,1.000000,0.000000,33017.960000,0
bip,4,0.3,100,2024,0.000000,1.000000,0.000000,24817.360000,0
bip,4,0.4,100,2024,0.000000,1.000000,0.000000,16704.910000,0
bip,4,0.5,100,2024,0.000000,0.990000,0.000000,8670.870000,0
bip,4,0.6,100,2024,0.000000,0.830000,0.130000,3339.050000,0
bip,4,0.7,100,2024,0.000000,0.520000,0.410000,513.500000,0
bip,4,0.8,100,2024,0.000000,0.130000,0.840000,58.690000,0
bip,4,0.9,100,2024,0.000000,0.000000,1.000000,2.000000,0
";

#[test]
fn bipartite_sweep_regression() {
    let records = run_bipartite_sweep(&config(Mode::Bipartite, 4, 100, 2024)).unwrap();
    assert_eq!(csv(&records), BIP4_FIXTURE);
}

#[test]
fn hitting_gap_regression() {
    // First-run fixture: n = 6, 200 trials, seed 2024.
    let mut gaps = BTreeMap::new();
    for h in run_hitting(6, 200, 2024, Cap::DEFAULT).unwrap() {
        assert!(h.t_iso <= h.t_conn && h.t_conn <= 15);
        *gaps.entry(h.t_conn - h.t_iso).or_insert(0) += 1;
    }
    assert_eq!(gaps, BTreeMap::from([(0, 19), (1, 86), (2, 74), (3, 18), (4, 3)]));
}

#[test]
fn endpoints_of_the_grid() {
    let mut c = config(Mode::Gnp, 8, 10, 1);
    c.p_grid = vec![0.0, 1.0];
    let r = run_sweep(&c).unwrap();
    assert_eq!((r[0].frac_connected, r[0].frac_isolated_exists), (0.0, 1.0));
    assert_eq!(r[1].frac_connected, 1.0);
    let mut c = config(Mode::Bipartite, 3, 10, 1);
    c.p_grid = vec![0.0, 1.0];
    let r = run_sweep(&c).unwrap();
    assert_eq!((r[0].mean_components, r[0].frac_exactly_two), (720.0, 0.0));
    assert_eq!(r[1].frac_exactly_two, 1.0);
}

#[test]
fn bipartite_never_connected() {
    let r = run_bipartite_sweep(&config(Mode::Bipartite, 3, 50, 5)).unwrap();
    assert!(r
        .iter()
        .all(|rec| rec.frac_connected == 0.0 && rec.mean_components >= 2.0));
}

#[test]
fn reports() {
    let r = run_sweep(&config(Mode::Gnp, 5, 5, 3)).unwrap();
    assert_eq!(csv(&r).lines().count(), 10);
    assert_eq!(csv(&r[..1]).lines().count(), 2);
    assert!(matches!(render_svg(&[]), Err(ExperimentError::Empty)));
    let svg = render_svg(&r).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    let mut timed = Vec::new();
    write_csv(&r, true, &mut timed).unwrap();
    assert_eq!(String::from_utf8(timed).unwrap().lines().count(), 10);
}

#[test]
fn invalid_configs() {
    let mut c = config(Mode::Gnp, 5, 0, 0);
    assert!(matches!(run_sweep(&c), Err(ExperimentError::Config(_))));
    c.trials = 1;
    c.p_grid = vec![1.5];
    assert!(matches!(run_sweep(&c), Err(ExperimentError::Config(_))));
    c.p_grid = vec![0.5];
    c.cap = 14;
    assert!(run_sweep(&c).is_err());
    assert!(hitting_time_trial(1, 0, Cap::DEFAULT).is_err());
    assert!(hitting_time_trial(13, 0, Cap::DEFAULT).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coupling_makes_monotonicity_exact(seed in any::<u64>(), n in 3usize..=6, trials in 1usize..20) {
        let r = run_sweep(&config(Mode::Gnp, n, trials, seed)).unwrap();
        for w in r.windows(2) {
            prop_assert!(w[0].frac_connected <= w[1].frac_connected);
            prop_assert!(w[0].frac_isolated_exists >= w[1].frac_isolated_exists);
            prop_assert!(w[0].mean_components >= w[1].mean_components);
        }
    }

    #[test]
    fn sweeps_are_deterministic(seed in any::<u64>()) {
        let c = config(Mode::Bipartite, 2, 7, seed);
        prop_assert_eq!(csv(&run_sweep(&c).unwrap()), csv(&run_sweep(&c).unwrap()));
    }

    #[test]
    fn connectivity_never_precedes_losing_isolated_vertices(seed in any::<u64>(), n in 2usize..=6) {
        let h = hitting_time_trial(n, seed, Cap::DEFAULT).unwrap();
        prop_assert!(h.t_iso <= h.t_conn && h.t_conn <= n * (n - 1) / 2);
    }
}
