//! Explicit graph families: the five-block and four-block lower-bound pairs,
//! the large cycle gadget (G**, H**, G*, H*), and small bipartite gadgets
//! recovered from fixed swap sequences.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fs::{self, FsError};
use crate::graph::{self, Graph, Side};
use crate::perm::{Bijection, SwapSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("block certificate failed: block pair {0:?} carries both an X-edge and a Y-edge")]
    CertificateFailed((usize, usize)),
    #[error("certificates only apply to the five-block construction")]
    WrongKind,
    #[error("no layout satisfies the placement constraints for m = {m}: {reason}")]
    Infeasible { m: usize, reason: String },
    #[error("cycle is not a permutation of 0..{0}")]
    BadCycle(usize),
    #[error("sequence label {label} out of range for n = {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("sequence replay nets {got}, not the transposition of {u} and {v}")]
    NotATransposition { got: Bijection, u: usize, v: usize },
    #[error("empty sequence")]
    EmptySequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    FiveBlock,
    BipartiteFourBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockConstruction {
    pub kind: BlockKind,
    pub x: Graph,
    pub y: Graph,
    /// Blocks of `V(X)`; for the five-block family the same blocks are used on `Y`.
    pub x_blocks: Vec<Vec<usize>>,
    pub y_blocks: Vec<Vec<usize>>,
    pub block_names: Vec<&'static str>,
}

/// Five blocks `A_1..A_5`; `{a, b}` is an X-edge iff the block indices differ
/// by neither +2 nor -2 (mod 5), a Y-edge iff they differ by neither +1 nor -1.
/// The first `n mod 5` blocks get the extra vertices.
pub fn build_lower_bound_pair(n: usize) -> Result<BlockConstruction, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::InvalidSize(format!(
            "five-block construction needs n >= 5, got {n}"
        )));
    }
    let (base, extra) = (n / 5, n % 5);
    let mut block_of = Vec::with_capacity(n);
    let mut blocks = vec![Vec::new(); 5];
    for (i, block) in blocks.iter_mut().enumerate() {
        let size = base + usize::from(i < extra);
        for _ in 0..size {
            block.push(block_of.len());
            block_of.push(i);
        }
    }
    let mut x = Graph::empty(n);
    let mut y = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            let d = (block_of[b] + 5 - block_of[a]) % 5;
            if d != 2 && d != 3 {
                x.add_edge(a, b);
            }
            if d != 1 && d != 4 {
                y.add_edge(a, b);
            }
        }
    }
    Ok(BlockConstruction {
        kind: BlockKind::FiveBlock,
        x,
        y,
        x_blocks: blocks.clone(),
        y_blocks: blocks,
        block_names: vec!["A1", "A2", "A3", "A4", "A5"],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCertificate {
    /// Unordered block-index pairs joined by some X-edge across blocks.
    pub x_pairs: BTreeSet<(usize, usize)>,
    /// The same for Y-edges. Disjoint from `x_pairs`.
    pub y_pairs: BTreeSet<(usize, usize)>,
    /// A bijection that does not preserve the blocks, hence outside the
    /// component of the identity.
    pub outside: Bijection,
}

/// Certifies that block-preserving bijections are closed under friendly
/// swaps: a swap across blocks `i != j` would need an X-edge and a Y-edge
/// between the same two blocks, and no block pair carries both.
pub fn certify_block_disconnected(c: &BlockConstruction) -> Result<BlockCertificate, ConstructionError> {
    if c.kind != BlockKind::FiveBlock {
        return Err(ConstructionError::WrongKind);
    }
    let n = c.x.n();
    let mut block_of = vec![0; n];
    for (i, block) in c.x_blocks.iter().enumerate() {
        for &v in block {
            block_of[v] = i;
        }
    }
    let pairs = |g: &Graph| -> BTreeSet<(usize, usize)> {
        g.edges()
            .into_iter()
            .map(|(a, b)| (block_of[a].min(block_of[b]), block_of[a].max(block_of[b])))
            .filter(|(i, j)| i != j)
            .collect()
    };
    let (x_pairs, y_pairs) = (pairs(&c.x), pairs(&c.y));
    if let Some(&p) = x_pairs.intersection(&y_pairs).next() {
        return Err(ConstructionError::CertificateFailed(p));
    }
    let outside = Bijection::identity(n).swapped(c.x_blocks[0][0], c.x_blocks[1][0]);
    Ok(BlockCertificate {
        x_pairs,
        y_pairs,
        outside,
    })
}

/// Four blocks per side of `K_{r,r}` with `σ₀` isolated in FS(X, Y).
///
/// `X` has parts `A_X ∪ B_X = 0..r` and `C_X ∪ D_X = r..2r`; `Y` has parts
/// `A_Y ∪ C_Y = 0..r` and `B_Y ∪ D_Y = r..2r`. `A` and `D` blocks have
/// `⌈r/2⌉` vertices, `B` and `C` blocks `⌊r/2⌋`, and `σ₀` maps each X-block
/// onto the Y-block of the same letter.
pub fn build_bipartite_lower_bound(r: usize) -> Result<(BlockConstruction, Bijection), ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::InvalidSize(format!(
            "four-block construction needs r >= 2, got {r}"
        )));
    }
    let (h, f) = (r.div_ceil(2), r / 2);
    let span = |start: usize, len: usize| (start..start + len).collect::<Vec<_>>();
    let (ax, bx, cx, dx) = (span(0, h), span(h, f), span(r, f), span(r + f, h));
    let (ay, cy, by, dy) = (span(0, h), span(h, f), span(r, f), span(r + f, h));
    let halves: Vec<Side> = (0..2 * r).map(|i| if i < r { Side::A } else { Side::B }).collect();

    let mut sigma0 = vec![0; 2 * r];
    for (xs, ys) in [(&ax, &ay), (&bx, &by), (&cx, &cy), (&dx, &dy)] {
        for (&a, &t) in xs.iter().zip(ys.iter()) {
            sigma0[a] = t;
        }
    }
    let sigma0 = Bijection::new(sigma0).expect("blocks have matching sizes");

    // Circulant partial join: the i-th vertex of `p` meets the next `k`
    // vertices of `q` starting at index i.
    let circulant = |p: &[usize], q: &[usize], k: usize| -> Vec<(usize, usize)> {
        let len = q.len();
        p.iter()
            .enumerate()
            .flat_map(|(i, &a)| (0..k).map(move |j| (a, q[(i + j) % len])))
            .collect()
    };
    let mut x_edges = Vec::new();
    x_edges.extend(ax.iter().flat_map(|&a| cx.iter().map(move |&c| (a, c))));
    x_edges.extend(bx.iter().flat_map(|&b| dx.iter().map(move |&d| (b, d))));
    x_edges.extend(circulant(&ax, &dx, h / 2));
    x_edges.extend(circulant(&bx, &cx, f / 2));
    let x = Graph::from_edges(2 * r, &x_edges, Some(halves.clone())).expect("X edges cross the halves");

    let inv = sigma0.inverse();
    let mut y_edges = Vec::new();
    y_edges.extend(ay.iter().flat_map(|&a| by.iter().map(move |&b| (a, b))));
    y_edges.extend(cy.iter().flat_map(|&c| dy.iter().map(move |&d| (c, d))));
    for (p, q) in [(&ay, &dy), (&cy, &by)] {
        for &s in p.iter() {
            for &t in q.iter() {
                if !x.has_edge(inv.apply(s), inv.apply(t)) {
                    y_edges.push((s, t));
                }
            }
        }
    }
    let y = Graph::from_edges(2 * r, &y_edges, Some(halves)).expect("Y edges cross the halves");
    let construction = BlockConstruction {
        kind: BlockKind::BipartiteFourBlock,
        x,
        y,
        x_blocks: vec![ax, bx, cx, dx],
        y_blocks: vec![ay, by, cy, dy],
        block_names: vec!["A", "B", "C", "D"],
    };
    Ok((construction, sigma0))
}

/// `⌈(3r+1)/4⌉ - 1`, the common minimum degree the four-block pair attains.
pub fn bipartite_lower_bound_degree(r: usize) -> usize {
    (3 * r + 1).div_ceil(4) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    W,
    X(usize),
    Y(usize),
    Z(usize),
    /// The two vertices outside `[m]` (`m` and `m + 1`), numbered 1 and 2.
    Extra(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::W => write!(f, "w"),
            Role::X(i) => write!(f, "x{i}"),
            Role::Y(i) => write!(f, "y{i}"),
            Role::Z(i) => write!(f, "z{i}"),
            Role::Extra(i) => write!(f, "extra{i}"),
        }
    }
}

/// The large-cycle gadget. Vertex ids are fixed by role: `w = 0`,
/// `x_i = i`, `y_j = ℓ + j`, `z_k = 2ℓ + k`, and the extras `m`, `m + 1`.
/// Only the placement on the cycle varies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub m: usize,
    pub ell: usize,
    /// `cycle[p]` is the vertex at clockwise position `p`.
    pub cycle: Vec<usize>,
    pub g_2star: Graph,
    pub h_2star: Graph,
    pub g_star: Graph,
    pub h_star: Graph,
}

pub fn gadget_ell(m: usize) -> usize {
    ((m as f64).sqrt() / 2.0).floor() as usize
}

impl GadgetLayout {
    pub fn w(&self) -> usize {
        0
    }
    pub fn x(&self, i: usize) -> usize {
        i
    }
    pub fn y(&self, j: usize) -> usize {
        self.ell + j
    }
    pub fn z(&self, k: usize) -> usize {
        2 * self.ell + k
    }
    pub fn z_count(&self) -> usize {
        self.m - 2 * self.ell - 1
    }

    pub fn role(&self, v: usize) -> Role {
        let l = self.ell;
        match v {
            0 => Role::W,
            _ if v <= l => Role::X(v),
            _ if v <= 2 * l => Role::Y(v - l),
            _ if v < self.m => Role::Z(v - 2 * l),
            _ => Role::Extra(v - self.m + 1),
        }
    }

    /// `w, x_1..x_ℓ, y_1..y_ℓ`.
    pub fn specials(&self) -> Vec<usize> {
        (0..=2 * self.ell).collect()
    }

    pub fn position(&self, v: usize) -> usize {
        self.cycle.iter().position(|&c| c == v).expect("vertex on the cycle")
    }

    /// Number of clockwise steps from `a` to `b` along the cycle.
    pub fn clockwise(&self, a: usize, b: usize) -> usize {
        (self.position(b) + self.m - self.position(a)) % self.m
    }

    /// Builds all four graphs from a placement.
    pub fn from_cycle(m: usize, ell: usize, cycle: Vec<usize>) -> Result<GadgetLayout, ConstructionError> {
        if m < 2 * ell + 13 {
            return Err(ConstructionError::InvalidSize(format!(
                "m = {m} leaves fewer than 12 z-vertices"
            )));
        }
        if Bijection::new(cycle.clone()).is_err() || cycle.len() != m {
            return Err(ConstructionError::BadCycle(m));
        }
        let z = |k: usize| 2 * ell + k;
        let mut g2 = Graph::empty(m);
        for p in 0..m {
            g2.add_edge(cycle[p], cycle[(p + 1) % m]);
        }
        for (a, b) in [(1, 6), (2, 4), (7, 12), (8, 10)] {
            g2.add_edge(z(a), z(b));
        }
        let mut h2 = Graph::empty(m);
        for v in 1..m {
            h2.add_edge(0, v);
        }
        let (e1, e2) = (m, m + 1);
        let mut g1 = Graph::empty(m + 2);
        for (a, b) in g2.edges() {
            g1.add_edge(a, b);
        }
        for (a, b) in [(e1, e2), (e1, z(3)), (e1, z(11)), (e2, z(5)), (e2, z(9))] {
            g1.add_edge(a, b);
        }
        let mut h1 = Graph::empty(m + 2);
        for (a, b) in h2.edges() {
            h1.add_edge(a, b);
        }
        for i in 1..=ell {
            h1.add_edge(e1, i);
            h1.add_edge(e2, ell + i);
        }
        Ok(GadgetLayout {
            m,
            ell,
            cycle,
            g_2star: g2,
            h_2star: h2,
            g_star: g1,
            h_star: h1,
        })
    }

    /// `G*` restricted to `[m+2] ∖ {z_5, z_11}`, relabelled in ascending order.
    pub fn g_triple_star(&self) -> Graph {
        let drop = [self.z(5), self.z(11)];
        let keep: Vec<usize> = (0..self.m + 2).filter(|v| !drop.contains(v)).collect();
        self.g_star.induced(&keep)
    }

    /// A copy with the vertices at two cycle positions exchanged.
    pub fn with_swapped_positions(&self, p: usize, q: usize) -> GadgetLayout {
        let mut cycle = self.cycle.clone();
        cycle.swap(p, q);
        GadgetLayout::from_cycle(self.m, self.ell, cycle).expect("still a permutation")
    }

    /// Plain-text manifest of roles by cycle position.
    pub fn manifest(&self) -> String {
        let mut out = format!(
            "m {}\nell {}\nextra1 {}\nextra2 {}\n",
            self.m,
            self.ell,
            self.m,
            self.m + 1
        );
        for (p, &v) in self.cycle.iter().enumerate() {
            out.push_str(&format!("position {p} vertex {v} role {}\n", self.role(v)));
        }
        out
    }
}

/// Arc lengths of one z-cluster: `z_1 →a→ z_2 →k→ z_4 → z_5 → z_6`, with
/// `z_3` placed `ℓ - 2` steps before `z_4`.
#[derive(Debug, Clone, Copy)]
struct ClusterArcs {
    a: usize,
    k: usize,
}

fn place_clusters(m: usize, ell: usize, arcs: ClusterArcs, c: usize) -> [usize; 12] {
    let span = arcs.a + arcs.k + 2;
    let mut pos = [0; 12];
    for (cluster, start) in [(0, 0), (6, span + c)] {
        pos[cluster] = start;
        pos[cluster + 1] = start + arcs.a;
        pos[cluster + 3] = start + arcs.a + arcs.k;
        pos[cluster + 2] = pos[cluster + 3] - (ell - 2);
        pos[cluster + 4] = pos[cluster + 3] + 1;
        pos[cluster + 5] = pos[cluster + 3] + 2;
    }
    debug_assert!(pos[11] < m);
    pos
}

/// Greedy placement of the specials: scan positions clockwise from
/// `offset` (just past one of the z-vertices), keeping each free position far
/// enough from the four anchor z-vertices and from the specials already kept.
/// Only distances from kept positions are read; `rows` caches them per
/// position across offsets.
fn place_specials(
    pg: &Graph,
    rows: &mut [Option<Vec<usize>>],
    anchors: &[usize],
    taken: &[bool],
    need: usize,
    far: impl Fn(usize) -> bool,
    offset: usize,
) -> Option<Vec<usize>> {
    let m = taken.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    for step in 0..m {
        let p = (offset + step) % m;
        if taken[p] {
            continue;
        }
        let ok = anchors
            .iter()
            .chain(&chosen)
            .all(|&q| far(rows[q].get_or_insert_with(|| distance_row(pg, q))[p]));
        if !ok {
            continue;
        }
        chosen.push(p);
        if chosen.len() == need {
            return Some(chosen);
        }
    }
    None
}

fn distance_row(g: &Graph, src: usize) -> Vec<usize> {
    graph::bfs_distances(g, src)
        .into_iter()
        .map(|d| d.unwrap_or(usize::MAX))
        .collect()
}

const CHORDS: [(usize, usize); 4] = [(1, 6), (2, 4), (7, 12), (8, 10)];

fn position_graph(m: usize, pos: &[usize; 12]) -> Graph {
    let mut g = Graph::empty(m);
    for p in 0..m {
        g.add_edge(p, (p + 1) % m);
    }
    for (a, b) in CHORDS {
        g.add_edge(pos[a - 1], pos[b - 1]);
    }
    g
}

/// Girth of the m-cycle plus chords: any other cycle uses a chord, and the
/// shortest cycle through chord `uv` is one longer than the `u`-`v` distance
/// once the chord is removed.
fn position_girth(pg: &Graph, pos: &[usize; 12]) -> usize {
    CHORDS
        .iter()
        .filter_map(|&(a, b)| {
            let (u, v) = (pos[a - 1], pos[b - 1]);
            let mut g = pg.clone();
            g.remove_edge(u, v);
            graph::bfs_distances(&g, u)[v].map(|d| d + 1)
        })
        .fold(pg.n(), usize::min)
}

/// Searches arithmetic cluster layouts in a fixed order and places the
/// specials greedily, returning the first candidate the verifier accepts.
pub fn build_large_gadget(m: usize) -> Result<GadgetLayout, ConstructionError> {
    let ell = gadget_ell(m);
    let infeasible = |reason: &str| ConstructionError::Infeasible {
        m,
        reason: reason.to_string(),
    };
    if ell < 3 {
        return Err(infeasible(
            "z3 to z5 must span ell - 1 >= 2 steps to leave room for z4, so ell >= 3",
        ));
    }
    if m < 2 * ell + 13 {
        return Err(infeasible("fewer than 12 z-vertices"));
    }
    let girth_min = m.div_ceil(6);
    let far = |d: usize| 3 * ell * d >= m;
    let a_min = girth_min.saturating_sub(4).max(1);
    let mut k_min = (girth_min.saturating_sub(1)).max(ell - 1);
    k_min += k_min % 2;

    for a in a_min..a_min + 8 {
        for k in (k_min..k_min + 6).step_by(2) {
            let span = a + k + 2;
            if 2 * span + 2 > m {
                continue;
            }
            let rest = m - 2 * span;
            for c in 1..rest {
                let d = rest - c;
                if c + d + 2 < girth_min {
                    continue;
                }
                let pos = place_clusters(m, ell, ClusterArcs { a, k }, c);
                let pg = position_graph(m, &pos);
                if 6 * position_girth(&pg, &pos) < m {
                    continue;
                }
                let mut taken = vec![false; m];
                for &p in &pos {
                    taken[p] = true;
                }
                let anchors = [pos[2], pos[4], pos[8], pos[10]];
                let mut rows = vec![None; m];
                for offset in pos.iter().map(|p| (p + 1) % m) {
                    let Some(spots) = place_specials(&pg, &mut rows, &anchors, &taken, 2 * ell + 1, far, offset) else {
                        continue;
                    };
                    let layout = assemble(m, ell, &pos, &spots)?;
                    if verify_gadget_constraints(&layout).all_passed() {
                        return Ok(layout);
                    }
                }
            }
        }
    }
    Err(infeasible(
        "no arithmetic cluster layout admits a spaced placement of the specials",
    ))
}

fn assemble(m: usize, ell: usize, zpos: &[usize; 12], spots: &[usize]) -> Result<GadgetLayout, ConstructionError> {
    let mut cycle = vec![usize::MAX; m];
    for (k, &p) in zpos.iter().enumerate() {
        cycle[p] = 2 * ell + k + 1;
    }
    for (v, &p) in spots.iter().enumerate() {
        cycle[p] = v;
    }
    let free = cycle.iter_mut().filter(|s| **s == usize::MAX);
    for (slot, z) in free.zip(2 * ell + 13..) {
        *slot = z;
    }
    GadgetLayout::from_cycle(m, ell, cycle)
}

/// Smallest `m` in `start..=limit` for which [`build_large_gadget`] succeeds.
pub fn smallest_feasible_gadget(start: usize, limit: usize) -> Option<GadgetLayout> {
    (start..=limit).find_map(|m| build_large_gadget(m).ok())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `z_1..z_12` in clockwise order, with `z_4 z_5`, `z_5 z_6`,
    /// `z_10 z_11`, `z_11 z_12` consecutive on the cycle.
    CycleOrder,
    /// Clockwise `z_3 → z_5` and `z_9 → z_11` both equal `ℓ - 1`.
    ArcLengths,
    /// Clockwise `z_2 → z_4` is even.
    EvenArc,
    /// Specials pairwise, and from `z_3, z_5, z_9, z_11`, at distance `>= m/(3ℓ)` in G**.
    SpecialSpacing,
    /// `girth(G**) >= m/6`.
    Girth,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub passed: bool,
    /// Offending vertex pair, when there is one.
    pub violation: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub checks: Vec<ConstraintCheck>,
}

impl GadgetReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, c: Constraint) -> &ConstraintCheck {
        self.checks
            .iter()
            .find(|k| k.constraint == c)
            .expect("every constraint is checked")
    }
}

pub fn verify_gadget_constraints(layout: &GadgetLayout) -> GadgetReport {
    let (m, ell) = (layout.m, layout.ell);
    let z = |k| layout.z(k);
    let cw = |a, b| layout.clockwise(a, b);
    let mut checks = Vec::new();
    let mut push = |constraint, violation: Option<(usize, usize)>, detail: String| {
        checks.push(ConstraintCheck {
            constraint,
            passed: violation.is_none(),
            violation,
            detail,
        });
    };

    // Clockwise order: summing the arcs z_k → z_{k+1} around the twelve
    // goes around exactly once.
    let total: usize = (1..=12).map(|k| cw(z(k), z(k % 12 + 1))).sum();
    let mut bad = (total != m).then(|| (z(1), z(12)));
    for (a, b) in [(4, 5), (5, 6), (10, 11), (11, 12)] {
        if bad.is_none() && cw(z(a), z(b)) != 1 {
            bad = Some((z(a), z(b)));
        }
    }
    push(Constraint::CycleOrder, bad, format!("arc sum {total} over z1..z12"));

    let arcs = [(3, 5), (9, 11)].map(|(a, b)| (z(a), z(b), cw(z(a), z(b))));
    let bad = arcs.iter().find(|a| a.2 + 1 != ell).map(|a| (a.0, a.1));
    push(
        Constraint::ArcLengths,
        bad,
        format!("arcs {} and {}, want {}", arcs[0].2, arcs[1].2, ell as isize - 1),
    );

    let even = cw(z(2), z(4));
    push(
        Constraint::EvenArc,
        (even % 2 == 1).then(|| (z(2), z(4))),
        format!("z2 to z4 spans {even}"),
    );

    let specials = layout.specials();
    let anchors = [z(3), z(5), z(9), z(11)];
    let mut worst: Option<(usize, usize, usize)> = None;
    for (i, &s) in specials.iter().enumerate() {
        let dist = graph::bfs_distances(&layout.g_2star, s);
        for &t in specials[i + 1..].iter().chain(&anchors) {
            let d = dist[t].unwrap_or(usize::MAX);
            if 3 * ell * d < m && worst.is_none_or(|w| d < w.2) {
                worst = Some((s, t, d));
            }
        }
    }
    push(
        Constraint::SpecialSpacing,
        worst.map(|w| (w.0, w.1)),
        match worst {
            Some(w) => format!("distance {} < {m}/{}", w.2, 3 * ell),
            None => format!("all distances >= {m}/{}", 3 * ell),
        },
    );

    let girth = graph::girth(&layout.g_2star);
    let short = girth.is_some_and(|g| 6 * g < m);
    push(
        Constraint::Girth,
        short.then(|| shortest_cycle_pair(layout)),
        format!("girth {girth:?}, want >= {m}/6"),
    );

    GadgetReport { checks }
}

/// Endpoints of some chord on a shortest cycle, used to point at a girth violation.
fn shortest_cycle_pair(layout: &GadgetLayout) -> (usize, usize) {
    let z = |k| layout.z(k);
    let mut best = (usize::MAX, (z(1), z(6)));
    for (a, b) in [(1, 6), (2, 4), (7, 12), (8, 10)] {
        let mut g = layout.g_2star.clone();
        g.remove_edge(z(a), z(b));
        if let Some(d) = graph::bfs_distances(&g, z(a))[z(b)] {
            best = best.min((d + 1, (z(a), z(b))));
        }
    }
    best.1
}

/// Graphs recovered from a swap sequence played from the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGadget {
    /// Position pairs swapped during the replay (the pattern for `X`).
    pub g: Graph,
    /// Label pairs named by the moves (the pattern for `Y`).
    pub h: Graph,
    pub g_parts: Option<Vec<Side>>,
    pub h_parts: Option<Vec<Side>>,
}

impl DerivedGadget {
    /// Both graphs restricted to `0..k`, keeping the bipartitions.
    pub fn restricted(&self, k: usize) -> (Graph, Graph) {
        let keep: Vec<usize> = (0..k).collect();
        let with = |g: &Graph, parts: &Option<Vec<Side>>| {
            let sub = g.induced(&keep);
            match parts {
                Some(p) => sub
                    .with_partition(p[..k].to_vec())
                    .expect("restriction keeps edges crossing"),
                None => sub,
            }
        };
        (with(&self.g, &self.g_parts), with(&self.h, &self.h_parts))
    }
}

pub fn derive_gadget_from_sequence(
    seq: &SwapSequence,
    n: usize,
    u: usize,
    v: usize,
) -> Result<DerivedGadget, ConstructionError> {
    if seq.is_empty() {
        return Err(ConstructionError::EmptySequence);
    }
    for label in seq.moves().iter().flat_map(|m| [m.u, m.v]).chain([u, v]) {
        if label >= n {
            return Err(ConstructionError::LabelOutOfRange { label, n });
        }
    }
    let mut pos: Vec<usize> = (0..n).collect();
    let mut g = Graph::empty(n);
    let mut h = Graph::empty(n);
    for mv in seq.moves() {
        g.add_edge(pos[mv.u], pos[mv.v]);
        h.add_edge(mv.u, mv.v);
        pos.swap(mv.u, mv.v);
    }
    let id = Bijection::identity(n);
    let net = fs::apply_sequence(&g, &h, &id, seq).map_err(|e| match e {
        FsError::NonFriendlyMove { .. } => unreachable!("the graphs contain every move by construction"),
        _ => ConstructionError::InvalidSize(e.to_string()),
    })?;
    if net.result != id.swapped(u, v) {
        return Err(ConstructionError::NotATransposition { got: net.result, u, v });
    }
    let g_parts = graph::is_bipartite(&g);
    let h_parts = graph::is_bipartite(&h);
    let g = match &g_parts {
        Some(p) => g.with_partition(p.clone()).expect("a proper colouring"),
        None => g,
    };
    let h = match &h_parts {
        Some(p) => h.with_partition(p.clone()).expect("a proper colouring"),
        None => h,
    };
    Ok(DerivedGadget { g, h, g_parts, h_parts })
}

/// The four gadget sequences, one-based labels, as they are usually quoted.
pub const GADGET_SEQUENCE_TEXT: [&str; 4] = [
    "46, 34, 45, 47, 34, 38, 46, 47, 24, 34, 14, 46, 45, 24, 34, 14, 46, 45, 24, 34, 47, 24, 45, 46, 14, 47, 24, 45, 46, 14, 47, 24, 45",
    "16, 56, 67, 46, 36, 67, 46, 36, 26, 16, 56, 38, 36, 16, 26, 67, 46, 36, 56, 26, 67, 46, 36, 56, 16, 67, 26",
    "36, 34, 47, 35, 34, 38, 14, 34, 24, 14, 34, 35, 47, 34, 38, 35, 34, 14, 24, 47, 14, 34, 35, 38, 36",
    "26, 35, 14, 34, 38, 36, 34, 67, 38, 16, 36, 35, 38, 34, 14, 16, 36, 38, 26, 35, 34, 38, 35",
];

/// Zero-based labels exchanged by every gadget sequence (one-based 7 and 8).
pub const GADGET_EXCHANGE: (usize, usize) = (6, 7);
pub const GADGET_SIZE: usize = 8;

/// The four gadget sequences in zero-based labels.
pub fn builtin_bipartite_gadget_sequences() -> [SwapSequence; 4] {
    GADGET_SEQUENCE_TEXT.map(|text| {
        let pairs: Vec<(usize, usize)> = text
            .split(", ")
            .map(|tok| {
                let d: Vec<usize> = tok.bytes().map(|b| (b - b'1') as usize).collect();
                (d[0], d[1])
            })
            .collect();
        SwapSequence::from_pairs(&pairs)
    })
}

/// A four-vertex instance in which `u = 0` and `v = 1` are exchanged by the
/// five swaps `wx, wu, wv, wu, wx` with `w = 2`, `x = 3`, although no single
/// friendly swap involves both.
#[derive(Debug, Clone)]
pub struct StarExchangeExample {
    pub x: Graph,
    pub y: Graph,
    pub sigma: Bijection,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub xv: usize,
    pub sequence: SwapSequence,
}

pub fn star_exchange_example() -> StarExchangeExample {
    let (u, v, w, xv) = (0, 1, 2, 3);
    let x = Graph::from_edges(4, &[(w, xv), (xv, u), (u, v), (v, xv)], None).expect("valid");
    let y = Graph::from_edges(4, &[(w, u), (w, v), (w, xv)], None).expect("valid");
    let sequence = SwapSequence::from_pairs(&[(w, xv), (w, u), (w, v), (w, u), (w, xv)]);
    StarExchangeExample {
        x,
        y,
        sigma: Bijection::identity(4),
        u,
        v,
        w,
        xv,
        sequence,
    }
}
