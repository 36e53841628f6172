//! Embeddability of a pattern pair `(G, H)` on `[m]` into `(X, Y)` relative
//! to disjoint candidate sets `V_1, …, V_m ⊆ V(Y)` and a bijection `σ`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{self, Graph, GraphError, RandomModel, Side};
use crate::perm::Bijection;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("pattern graphs have {g} and {h} vertices")]
    PatternMismatch { g: usize, h: usize },
    #[error("X has {x} vertices but Y has {y}")]
    HostMismatch { x: usize, y: usize },
    #[error("bijection has length {got}, expected {n}")]
    BijectionLength { got: usize, n: usize },
    #[error("expected {m} candidate sets, got {got}")]
    SetCount { m: usize, got: usize },
    #[error("vertex {vertex} appears in more than one candidate set or twice in one")]
    NotDisjoint { vertex: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("every graph involved needs a declared bipartition")]
    MissingPartition,
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("set sizes must be positive with total at most {max}, got {q:?}")]
    InvalidSizes { q: Vec<usize>, max: usize },
    #[error("subset enumeration is limited to m <= {max}, got {m}")]
    TooManyIndices { m: usize, max: usize },
    #[error("u and v must lie in different parts of Y")]
    SamePart,
    #[error("the preimages of u and v are not adjacent in X")]
    NotAnXEdge,
    #[error("not enough free vertices to draw admissible sets of sizes {0:?}")]
    NoRoom(Vec<usize>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedInstance {
    pub g: Graph,
    pub h: Graph,
    pub x: Graph,
    pub y: Graph,
    pub sigma: Bijection,
    pub sets: Vec<Vec<usize>>,
}

impl EmbedInstance {
    pub fn validate(&self) -> Result<(), EmbedError> {
        let m = self.g.n();
        if self.h.n() != m {
            return Err(EmbedError::PatternMismatch { g: m, h: self.h.n() });
        }
        let n = self.x.n();
        if self.y.n() != n {
            return Err(EmbedError::HostMismatch { x: n, y: self.y.n() });
        }
        if self.sigma.len() != n {
            return Err(EmbedError::BijectionLength {
                got: self.sigma.len(),
                n,
            });
        }
        if self.sets.len() != m {
            return Err(EmbedError::SetCount {
                m,
                got: self.sets.len(),
            });
        }
        let mut seen = vec![false; n];
        for &vertex in self.sets.iter().flatten() {
            if vertex >= n {
                return Err(EmbedError::OutOfRange { vertex, n });
            }
            if std::mem::replace(&mut seen[vertex], true) {
                return Err(EmbedError::NotDisjoint { vertex });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedWitness {
    /// `chosen[i] ∈ V_i`.
    pub chosen: Vec<usize>,
}

/// `β(J) = |E(G|_J)| + |E(H|_J)|`.
pub fn beta(g: &Graph, h: &Graph, j: &[usize]) -> usize {
    let mut count = 0;
    for (k, &a) in j.iter().enumerate() {
        for &b in &j[k + 1..] {
            count += usize::from(g.has_edge(a, b)) + usize::from(h.has_edge(a, b));
        }
    }
    count
}

/// Backtracking over `V_1 × … × V_m` in index order, values ascending, with
/// forward checking of the remaining domains after each choice.
pub fn find_embedding(inst: &EmbedInstance) -> Result<Option<EmbedWitness>, EmbedError> {
    inst.validate()?;
    let inv = inst.sigma.inverse();
    let compatible = |i: usize, a: usize, j: usize, c: usize| {
        (!inst.h.has_edge(i, j) || inst.y.has_edge(a, c))
            && (!inst.g.has_edge(i, j) || inst.x.has_edge(inv.apply(a), inv.apply(c)))
    };
    let mut domains: Vec<Vec<usize>> = inst
        .sets
        .iter()
        .map(|s| {
            let mut d = s.clone();
            d.sort_unstable();
            d
        })
        .collect();
    let mut chosen = Vec::with_capacity(domains.len());
    let found = search(&mut domains, &mut chosen, &compatible);
    Ok(found.then_some(EmbedWitness { chosen }))
}

fn search(
    domains: &mut Vec<Vec<usize>>,
    chosen: &mut Vec<usize>,
    compatible: &impl Fn(usize, usize, usize, usize) -> bool,
) -> bool {
    let i = chosen.len();
    if i == domains.len() {
        return true;
    }
    for a in domains[i].clone() {
        let saved: Vec<Vec<usize>> = domains[i + 1..].to_vec();
        let mut wiped = false;
        for (k, dom) in domains[i + 1..].iter_mut().enumerate() {
            dom.retain(|&c| compatible(i, a, i + 1 + k, c));
            if dom.is_empty() {
                wiped = true;
                break;
            }
        }
        if !wiped {
            chosen.push(a);
            if search(domains, chosen, compatible) {
                return true;
            }
            chosen.pop();
        }
        for (dom, old) in domains[i + 1..].iter_mut().zip(saved) {
            *dom = old;
        }
    }
    false
}

pub const MAX_SUBSET_M: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetCheck {
    pub j: Vec<usize>,
    pub beta: usize,
    /// `β(J) ln p + Σ_{j∈J} ln q_j`.
    pub lhs_ln: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    /// `ln(3 · 2^{m+1} · Q · ln N)` with `N = n`, or `N = 2r` for the bipartite form.
    pub threshold_ln: f64,
    pub checks: Vec<SubsetCheck>,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }

    pub fn failing(&self) -> impl Iterator<Item = &SubsetCheck> {
        self.checks.iter().filter(|c| !c.passes)
    }

    /// The failing subset with the largest shortfall.
    pub fn worst(&self) -> Option<&SubsetCheck> {
        self.failing().min_by(|a, b| a.lhs_ln.total_cmp(&b.lhs_ln))
    }
}

/// Evaluates `p^{β(J)} Π_{j∈J} q_j ≥ 3 · 2^{m+1} Q log N` for every `J` with
/// `β(J) ≥ 1`, in log space with the natural logarithm. `size` is `n`, or
/// `r` when `bipartite` (then `N = 2r`).
pub fn check_hypothesis_inequality(
    g: &Graph,
    h: &Graph,
    p: f64,
    q: &[usize],
    size: usize,
    bipartite: bool,
) -> Result<HypothesisReport, EmbedError> {
    let m = g.n();
    if h.n() != m {
        return Err(EmbedError::PatternMismatch { g: m, h: h.n() });
    }
    if m > MAX_SUBSET_M {
        return Err(EmbedError::TooManyIndices { m, max: MAX_SUBSET_M });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(EmbedError::InvalidProbability(p));
    }
    let big_n = if bipartite { 2 * size } else { size };
    let total: usize = q.iter().sum();
    if q.len() != m || q.contains(&0) || total > big_n {
        return Err(EmbedError::InvalidSizes {
            q: q.to_vec(),
            max: big_n,
        });
    }
    let threshold_ln = 3f64.ln() + (m as f64 + 1.0) * 2f64.ln() + (total as f64).ln() + (big_n as f64).ln().ln();
    let mut checks = Vec::new();
    for mask in 1u32..(1 << m) {
        let j: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let b = beta(g, h, &j);
        if b == 0 {
            continue;
        }
        let lhs_ln = b as f64 * p.ln() + j.iter().map(|&i| (q[i] as f64).ln()).sum::<f64>();
        checks.push(SubsetCheck {
            j,
            beta: b,
            lhs_ln,
            passes: lhs_ln >= threshold_ln,
        });
    }
    Ok(HypothesisReport { threshold_ln, checks })
}

fn partitions(graphs: [&Graph; 4]) -> Result<[&[Side]; 4], EmbedError> {
    let mut out = [&[][..]; 4];
    for (slot, g) in out.iter_mut().zip(graphs) {
        *slot = g.partition().ok_or(EmbedError::MissingPartition)?;
    }
    Ok(out)
}

/// Whether `sets` is admissible for `sigma` with respect to `(g, h)`: the
/// sets indexed by `A_H` lie in one part of `Y` and those indexed by `B_H` in
/// the other, and likewise for their preimages against the parts of `G` and `X`.
pub fn is_admissible(
    sets: &[Vec<usize>],
    sigma: &Bijection,
    g: &Graph,
    h: &Graph,
    x: &Graph,
    y: &Graph,
) -> Result<bool, EmbedError> {
    let [gp, hp, xp, yp] = partitions([g, h, x, y])?;
    if sets.len() != gp.len() || sets.len() != hp.len() {
        return Err(EmbedError::SetCount {
            m: gp.len(),
            got: sets.len(),
        });
    }
    let inv = sigma.inverse();
    // Some assignment of pattern sides to host sides must fit every vertex;
    // trying both keeps the test symmetric in the host part names.
    let fits = |pattern: &[Side], host: &[Side], map: &dyn Fn(usize) -> usize| {
        [false, true].into_iter().any(|flip| {
            sets.iter().enumerate().all(|(i, set)| {
                let want = if flip { pattern[i].flip() } else { pattern[i] };
                set.iter().all(|&a| host[map(a)] == want)
            })
        })
    };
    Ok(fits(hp, yp, &|a| a) && fits(gp, xp, &|a| inv.apply(a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MajorityCase {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajorityReport {
    pub case: MajorityCase,
    /// Where `σ` majority-maps `N(u′)` and `N(v′)`: `Side::A` is the part of `u`.
    pub y_sides: (Side, Side),
    /// Where `σ⁻¹` majority-maps `N(u)` and `N(v)`: `Side::A` is the part of `u′`.
    pub x_sides: (Side, Side),
}

/// Classifies `(σ, u, v)` by whether `σ` majority-maps `N(u′)` and `N(v′)`
/// into the same part of `Y`, and whether `σ⁻¹` majority-maps `N(u)` and
/// `N(v)` into the same part of `X`. Parts are named so that `u ∈ A_Y` and
/// `u′ ∈ A_X`; holding at least half counts as a majority into `A`.
pub fn majority_map_case(
    x: &Graph,
    y: &Graph,
    sigma: &Bijection,
    u: usize,
    v: usize,
) -> Result<MajorityReport, EmbedError> {
    let n = x.n();
    if y.n() != n {
        return Err(EmbedError::HostMismatch { x: n, y: y.n() });
    }
    if sigma.len() != n {
        return Err(EmbedError::BijectionLength { got: sigma.len(), n });
    }
    for vertex in [u, v] {
        if vertex >= n {
            return Err(EmbedError::OutOfRange { vertex, n });
        }
    }
    let (Some(xp), Some(yp)) = (x.partition(), y.partition()) else {
        return Err(EmbedError::MissingPartition);
    };
    if yp[u] == yp[v] {
        return Err(EmbedError::SamePart);
    }
    let inv = sigma.inverse();
    let (up, vp) = (inv.apply(u), inv.apply(v));
    if !x.has_edge(up, vp) {
        return Err(EmbedError::NotAnXEdge);
    }
    let majority = |nbrs: Vec<usize>, in_a: &dyn Fn(usize) -> bool| {
        let hits = nbrs.iter().filter(|&&a| in_a(a)).count();
        if 2 * hits >= nbrs.len() {
            Side::A
        } else {
            Side::B
        }
    };
    let in_a_y = |a: usize| yp[sigma.apply(a)] == yp[u];
    let in_a_x = |c: usize| xp[inv.apply(c)] == xp[up];
    let y_sides = (
        majority(x.neighbors(up).collect(), &in_a_y),
        majority(x.neighbors(vp).collect(), &in_a_y),
    );
    let x_sides = (
        majority(y.neighbors(u).collect(), &in_a_x),
        majority(y.neighbors(v).collect(), &in_a_x),
    );
    let case = match (y_sides.0 == y_sides.1, x_sides.0 == x_sides.1) {
        (true, true) => MajorityCase::I,
        (true, false) => MajorityCase::II,
        (false, true) => MajorityCase::III,
        (false, false) => MajorityCase::IV,
    };
    Ok(MajorityReport { case, y_sides, x_sides })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HostModel {
    /// `G(n, p)` on `size` vertices, or `G(K_{r,r}, p)` with `r = size`.
    pub bipartite: bool,
    pub size: usize,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedEstimate {
    pub successes: usize,
    pub trials: usize,
    pub frequency: f64,
}

/// Monte Carlo frequency of embeddability. Trial `t` draws from a ChaCha8
/// stream seeded with `seed ^ t`: host graphs `X`, `Y`, a uniform `σ`, and
/// disjoint sets of sizes `q` (admissible ones in the bipartite model).
pub fn estimate_embeddability(
    g: &Graph,
    h: &Graph,
    model: HostModel,
    q: &[usize],
    trials: usize,
    seed: u64,
) -> Result<EmbedEstimate, EmbedError> {
    let m = g.n();
    if h.n() != m {
        return Err(EmbedError::PatternMismatch { g: m, h: h.n() });
    }
    if !(0.0..=1.0).contains(&model.p) {
        return Err(EmbedError::InvalidProbability(model.p));
    }
    let n = if model.bipartite { 2 * model.size } else { model.size };
    if q.len() != m || q.iter().sum::<usize>() > n {
        return Err(EmbedError::InvalidSizes { q: q.to_vec(), max: n });
    }
    if model.bipartite && (g.partition().is_none() || h.partition().is_none()) {
        return Err(EmbedError::MissingPartition);
    }
    let outcomes: Result<Vec<bool>, EmbedError> = (0..trials)
        .into_par_iter()
        .map(|t| embed_trial(g, h, model, q, seed ^ t as u64))
        .collect();
    let successes = outcomes?.into_iter().filter(|&ok| ok).count();
    let frequency = if trials == 0 {
        0.0
    } else {
        successes as f64 / trials as f64
    };
    Ok(EmbedEstimate {
        successes,
        trials,
        frequency,
    })
}

fn embed_trial(g: &Graph, h: &Graph, model: HostModel, q: &[usize], seed: u64) -> Result<bool, EmbedError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xm, ym) = if model.bipartite {
        (
            RandomModel::bipartite_gnp(model.size, model.p, rng.gen()),
            RandomModel::bipartite_gnp(model.size, model.p, rng.gen()),
        )
    } else {
        (
            RandomModel::gnp(model.size, model.p, rng.gen()),
            RandomModel::gnp(model.size, model.p, rng.gen()),
        )
    };
    let (x, y) = (graph::sample(&xm)?, graph::sample(&ym)?);
    let n = x.n();
    let sigma = Bijection::random(n, &mut rng);
    let sets = if model.bipartite {
        admissible_sets(g, h, &x, &y, &sigma, q, &mut rng)?
    } else {
        let mut pool: Vec<usize> = (0..n).collect();
        pool.shuffle(&mut rng);
        let mut rest = &pool[..];
        q.iter()
            .map(|&k| {
                let (head, tail) = rest.split_at(k);
                rest = tail;
                head.to_vec()
            })
            .collect()
    };
    let inst = EmbedInstance {
        g: g.clone(),
        h: h.clone(),
        x,
        y,
        sigma,
        sets,
    };
    Ok(find_embedding(&inst)?.is_some())
}

/// Random disjoint sets with `V_i` inside the cell `Y`-part × `σ(X`-part)
/// dictated by the sides of `i`, under a random orientation of the parts.
fn admissible_sets(
    g: &Graph,
    h: &Graph,
    x: &Graph,
    y: &Graph,
    sigma: &Bijection,
    q: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<usize>>, EmbedError> {
    let [gp, hp, xp, yp] = partitions([g, h, x, y])?;
    let (flip_y, flip_x): (bool, bool) = (rng.gen(), rng.gen());
    let inv = sigma.inverse();
    let mut cells: [Vec<usize>; 4] = Default::default();
    for c in 0..y.n() {
        let idx = usize::from(yp[c] == Side::B) * 2 + usize::from(xp[inv.apply(c)] == Side::B);
        cells[idx].push(c);
    }
    for cell in cells.iter_mut() {
        cell.shuffle(rng);
    }
    let mut sets = Vec::with_capacity(q.len());
    for (i, &k) in q.iter().enumerate() {
        let ys = if flip_y { hp[i].flip() } else { hp[i] };
        let xs = if flip_x { gp[i].flip() } else { gp[i] };
        let cell = &mut cells[usize::from(ys == Side::B) * 2 + usize::from(xs == Side::B)];
        if cell.len() < k {
            return Err(EmbedError::NoRoom(q.to_vec()));
        }
        sets.push(cell.split_off(cell.len() - k));
    }
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generator, Family};

    #[test]
    fn beta_counts_both_graphs() {
        let k3 = generator(Family::Complete(3)).unwrap();
        assert_eq!(beta(&k3, &k3, &[]), 0);
        assert_eq!(beta(&k3, &k3, &[0, 1, 2]), 6);
        assert_eq!(beta(&k3, &Graph::empty(3), &[0, 2]), 1);
    }

    #[test]
    fn embedding_small_cases() {
        let edge = Graph::from_edges(2, &[(0, 1)], None).unwrap();
        let k3 = generator(Family::Complete(3)).unwrap();
        let inst = EmbedInstance {
            g: edge.clone(),
            h: edge.clone(),
            x: k3.clone(),
            y: k3.clone(),
            sigma: Bijection::identity(3),
            sets: vec![vec![0], vec![2]],
        };
        assert_eq!(find_embedding(&inst).unwrap().unwrap().chosen, vec![0, 2]);
        let mut y = k3.clone();
        y.remove_edge(0, 2);
        let blocked = EmbedInstance { y, ..inst.clone() };
        assert!(find_embedding(&blocked).unwrap().is_none());
        let empty = EmbedInstance {
            g: Graph::empty(2),
            h: Graph::empty(2),
            sets: vec![vec![2, 1], vec![0]],
            ..inst
        };
        assert_eq!(find_embedding(&empty).unwrap().unwrap().chosen, vec![1, 0]);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let k3 = generator(Family::Complete(3)).unwrap();
        let inst = EmbedInstance {
            g: Graph::empty(2),
            h: Graph::empty(2),
            x: k3.clone(),
            y: k3,
            sigma: Bijection::identity(3),
            sets: vec![vec![0, 1], vec![1]],
        };
        assert_eq!(find_embedding(&inst), Err(EmbedError::NotDisjoint { vertex: 1 }));
    }

    #[test]
    fn inequality_trivial_cases() {
        let k3 = generator(Family::Complete(3)).unwrap();
        let q = [100_000; 3];
        assert!(check_hypothesis_inequality(&k3, &k3, 1.0, &q, 300_000, false)
            .unwrap()
            .passes());
        let rep = check_hypothesis_inequality(&k3, &k3, 0.0, &q, 300_000, false).unwrap();
        assert!(rep.failing().any(|c| c.j == vec![0, 1, 2]));
    }

    #[test]
    fn admissibility() {
        let g = generator(Family::CompleteBipartite(1, 1)).unwrap();
        let host = generator(Family::CompleteBipartite(2, 2)).unwrap();
        let id = Bijection::identity(4);
        let check = |sets: Vec<Vec<usize>>, s: &Bijection| is_admissible(&sets, s, &g, &g, &host, &host).unwrap();
        assert!(check(vec![vec![0], vec![2]], &id));
        assert!(check(vec![vec![3], vec![1]], &id));
        assert!(!check(vec![vec![0, 2], vec![3]], &id));
        assert!(!check(
            vec![vec![0], vec![2]],
            &Bijection::new(vec![0, 2, 1, 3]).unwrap().inverse().swapped(0, 1)
        ));
    }

    #[test]
    fn majority_tie_goes_to_a() {
        let k = generator(Family::CompleteBipartite(2, 2)).unwrap();
        // σ swaps 1 and 2, so N(0) = {2, 3} maps onto {1, 3}: one in each part.
        let sigma = Bijection::new(vec![0, 2, 1, 3]).unwrap();
        let rep = majority_map_case(&k, &k, &sigma, 0, 3).unwrap();
        assert_eq!(rep.y_sides.0, Side::A);
    }
}
