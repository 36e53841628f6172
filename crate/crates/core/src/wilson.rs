//! Wilsonian classification: biconnected, non-bipartite, not a cycle on at
//! least four vertices and not θ₀. For such `Y`, FS(Star_n, Y) is connected.

use crate::graph::{self, Family, Graph, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WilsonStatus {
    Wilsonian,
    NotBiconnected,
    CycleException,
    Theta0Exception,
    BipartiteException,
}

impl WilsonStatus {
    pub fn token(self) -> &'static str {
        match self {
            WilsonStatus::Wilsonian => "wilsonian",
            WilsonStatus::NotBiconnected => "not_biconnected",
            WilsonStatus::CycleException => "cycle_exception",
            WilsonStatus::Theta0Exception => "theta0_exception",
            WilsonStatus::BipartiteException => "bipartite_exception",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A vertex whose removal disconnects the graph.
    ArticulationVertex(usize),
    /// The graph itself is disconnected; no vertex needs to be removed.
    Disconnected,
    /// A proper 2-colouring, certifying there is no odd cycle.
    TwoColouring(Vec<Side>),
    /// `map[i]` is the vertex playing θ₀'s vertex `i`.
    Theta0Isomorphism(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilsonVerdict {
    pub status: WilsonStatus,
    pub witness: Option<Witness>,
}

/// Exceptions are tested in a fixed order, so a 4-cycle is a cycle exception
/// even though it is also bipartite.
pub fn classify(y: &Graph) -> WilsonVerdict {
    let verdict = |status, witness| WilsonVerdict { status, witness };
    if !graph::is_connected(y) {
        return verdict(WilsonStatus::NotBiconnected, Some(Witness::Disconnected));
    }
    if let Some(&cut) = graph::articulation_points(y).first() {
        return verdict(WilsonStatus::NotBiconnected, Some(Witness::ArticulationVertex(cut)));
    }
    let n = y.n();
    if n >= 4 && (0..n).all(|v| y.degree(v) == 2) {
        return verdict(WilsonStatus::CycleException, None);
    }
    if let Some(map) = theta0_isomorphism(y) {
        return verdict(WilsonStatus::Theta0Exception, Some(Witness::Theta0Isomorphism(map)));
    }
    if let Some(colouring) = graph::is_bipartite(y) {
        return verdict(WilsonStatus::BipartiteException, Some(Witness::TwoColouring(colouring)));
    }
    verdict(WilsonStatus::Wilsonian, None)
}

/// An isomorphism from θ₀ onto `y`, if there is one.
pub fn theta0_isomorphism(y: &Graph) -> Option<Vec<usize>> {
    let theta = graph::generator(Family::Theta0).expect("θ₀ is well formed");
    if y.n() != 7 || y.edge_count() != 8 {
        return None;
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..7).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(y) != degrees(&theta) {
        return None;
    }
    fn extend(t: &Graph, y: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == t.n() {
            return true;
        }
        for c in 0..y.n() {
            if used[c] || y.degree(c) != t.degree(i) {
                continue;
            }
            if (0..i).any(|j| t.has_edge(i, j) != y.has_edge(c, map[j])) {
                continue;
            }
            map.push(c);
            used[c] = true;
            if extend(t, y, map, used) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }
    let mut map = Vec::with_capacity(7);
    extend(&theta, y, &mut map, &mut [false; 7]).then_some(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarPrediction {
    Connected,
    NotGuaranteed,
}

/// Only sufficiency is known in general: a Wilsonian `Y` makes
/// FS(Star_n, Y) connected.
pub fn predict_star_components(y: &Graph) -> StarPrediction {
    if classify(y).status == WilsonStatus::Wilsonian {
        StarPrediction::Connected
    } else {
        StarPrediction::NotGuaranteed
    }
}
