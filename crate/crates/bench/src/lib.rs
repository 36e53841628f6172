//! Shared fixtures for the benchmarks.

use fsgraph::exchanger;
use fsgraph::graph::sample_min_degree_bipartite;
use fsgraph::{sample, Bijection, Graph, RandomModel};

/// Two independent `G(n, p)` samples.
pub fn gnp_pair(n: usize, p: f64, seed: u64) -> (Graph, Graph) {
    let x = sample(&RandomModel::gnp(n, p, seed)).expect("valid model");
    let y = sample(&RandomModel::gnp(n, p, seed ^ 0x5555)).expect("valid model");
    (x, y)
}

/// A bipartite pair at the exchanger's degree threshold together with a
/// bijection and a cross pair `(u, v)` whose preimages form an X-edge.
pub fn threshold_instance(r: usize, seed: u64) -> (Graph, Graph, Bijection, usize, usize) {
    let need = exchanger::bipartite_degree_threshold(r);
    let x = sample_min_degree_bipartite(r, need, seed).expect("r >= 1");
    let y = sample_min_degree_bipartite(r, need, !seed).expect("r >= 1");
    let b = Bijection::identity(2 * r);
    let (u, v) = x
        .edges()
        .into_iter()
        .find(|&(a, c)| y.side(b.apply(a)) != y.side(b.apply(c)))
        .map(|(a, c)| (b.apply(a), b.apply(c)))
        .expect("X has crossing edges");
    (x, y, b, u, v)
}
