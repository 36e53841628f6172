//! Undirected simple graphs stored as bit rows, with the named families,
//! seeded random models and structural predicates used by everything else.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("edge {{{0}, {1}}} does not cross the declared bipartition")]
    NonCrossingEdge(usize, usize),
    #[error("partition has {got} labels but the graph has {n} vertices")]
    PartitionLength { got: usize, n: usize },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid probability {0}")]
    InvalidProbability(f64),
    #[error("edge list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Side of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    partition: Option<Vec<Side>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .field("partition", &self.partition)
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; words * n],
            partition: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are tolerated.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], partition: Option<Vec<Side>>) -> Result<Graph, GraphError> {
        if let Some(p) = &partition {
            if p.len() != n {
                return Err(GraphError::PartitionLength { got: p.len(), n });
            }
        }
        let mut g = Graph::empty(n);
        g.partition = partition;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if let Some(p) = &self.partition {
            if p[u] == p[v] {
                return Err(GraphError::NonCrossingEdge(u.min(v), u.max(v)));
            }
        }
        self.set(u, v, true);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (iu, bu) = (u * self.words + v / 64, 1u64 << (v % 64));
        let (iv, bv) = (v * self.words + u / 64, 1u64 << (u % 64));
        if on {
            self.rows[iu] |= bu;
            self.rows[iv] |= bv;
        } else {
            self.rows[iu] &= !bu;
            self.rows[iv] &= !bv;
        }
    }

    /// Adds an edge; panics on invalid input. Intended for constructors that
    /// already guarantee validity.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n && u != v {
            self.set(u, v, false);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Neighbor set of `u` as a bit mask. Only valid for `n <= 64`.
    #[inline]
    pub fn mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[u * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn partition(&self) -> Option<&[Side]> {
        self.partition.as_deref()
    }

    pub fn side(&self, u: usize) -> Option<Side> {
        self.partition.as_ref().map(|p| p[u])
    }

    /// Returns a copy with the given bipartition declared.
    pub fn with_partition(&self, partition: Vec<Side>) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, &self.edges(), Some(partition))
    }

    pub fn without_partition(&self) -> Graph {
        Graph {
            partition: None,
            ..self.clone()
        }
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn is_edge_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }
}

/// Named graph families with canonical numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Cycle(usize),
    Path(usize),
    Theta0,
}

/// Edges of θ₀: the hexagon 0‥5 plus vertex 6 joined to the opposite
/// vertices 0 and 3, i.e. two vertices linked by paths of lengths 2, 3, 3.
pub const THETA0_EDGES: [(usize, usize); 8] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (3, 6)];

pub fn generator(family: Family) -> Result<Graph, GraphError> {
    let bad = |what: &str| Err(GraphError::InvalidSize(what.to_string()));
    match family {
        Family::Complete(n) => {
            if n < 1 {
                return bad("complete graph needs n >= 1");
            }
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.set(u, v, true);
                }
            }
            Ok(g)
        }
        Family::CompleteBipartite(r, s) => {
            if r < 1 || s < 1 {
                return bad("complete bipartite graph needs both parts nonempty");
            }
            let part = (0..r + s).map(|i| if i < r { Side::A } else { Side::B }).collect();
            let edges: Vec<_> = (0..r).flat_map(|a| (r..r + s).map(move |b| (a, b))).collect();
            Graph::from_edges(r + s, &edges, Some(part))
        }
        Family::Star(n) => {
            if n < 1 {
                return bad("star needs n >= 1");
            }
            if n == 1 {
                return Graph::from_edges(1, &[], Some(vec![Side::A]));
            }
            generator(Family::CompleteBipartite(1, n - 1))
        }
        Family::Cycle(n) => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges, None)
        }
        Family::Path(n) => {
            if n < 1 {
                return bad("path needs n >= 1");
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges, None)
        }
        Family::Theta0 => Graph::from_edges(7, &THETA0_EDGES, None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    Gnp { n: usize, p: f64 },
    BipartiteGnp { r: usize, p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomModel {
    pub kind: ModelKind,
    pub seed: u64,
}

impl RandomModel {
    pub fn gnp(n: usize, p: f64, seed: u64) -> RandomModel {
        RandomModel {
            kind: ModelKind::Gnp { n, p },
            seed,
        }
    }

    pub fn bipartite_gnp(r: usize, p: f64, seed: u64) -> RandomModel {
        RandomModel {
            kind: ModelKind::BipartiteGnp { r, p },
            seed,
        }
    }

    pub fn p(&self) -> f64 {
        match self.kind {
            ModelKind::Gnp { p, .. } | ModelKind::BipartiteGnp { p, .. } => p,
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let p = self.p();
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidProbability(p));
        }
        match self.kind {
            ModelKind::Gnp { n: 0, .. } => Err(GraphError::InvalidSize("gnp needs n >= 1".into())),
            ModelKind::BipartiteGnp { r: 0, .. } => Err(GraphError::InvalidSize("bipartite gnp needs r >= 1".into())),
            _ => Ok(()),
        }
    }
}

/// One uniform draw per eligible pair, in lexicographic pair order, from a
/// ChaCha8 stream seeded with the model seed. Thresholding the same draws at
/// several probabilities gives monotonically coupled graphs.
#[derive(Debug, Clone)]
pub struct EdgeDraws {
    n: usize,
    partition: Option<Vec<Side>>,
    pairs: Vec<(usize, usize)>,
    uniforms: Vec<f64>,
}

impl EdgeDraws {
    pub fn gnp(n: usize, seed: u64) -> EdgeDraws {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        EdgeDraws::draw(n, None, pairs, seed)
    }

    pub fn bipartite(r: usize, seed: u64) -> EdgeDraws {
        let part = (0..2 * r).map(|i| if i < r { Side::A } else { Side::B }).collect();
        let pairs = (0..r).flat_map(|a| (r..2 * r).map(move |b| (a, b))).collect();
        EdgeDraws::draw(2 * r, Some(part), pairs, seed)
    }

    fn draw(n: usize, partition: Option<Vec<Side>>, pairs: Vec<(usize, usize)>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let uniforms = pairs.iter().map(|_| rng.gen::<f64>()).collect();
        EdgeDraws {
            n,
            partition,
            pairs,
            uniforms,
        }
    }

    /// The graph containing exactly the pairs whose draw is below `p`.
    pub fn graph_at(&self, p: f64) -> Graph {
        let mut g = Graph::empty(self.n);
        g.partition = self.partition.clone();
        for (&(u, v), &x) in self.pairs.iter().zip(&self.uniforms) {
            if x < p {
                g.set(u, v, true);
            }
        }
        g
    }
}

pub fn sample(model: &RandomModel) -> Result<Graph, GraphError> {
    model.validate()?;
    let draws = match model.kind {
        ModelKind::Gnp { n, .. } => EdgeDraws::gnp(n, model.seed),
        ModelKind::BipartiteGnp { r, .. } => EdgeDraws::bipartite(r, model.seed),
    };
    Ok(draws.graph_at(model.p()))
}

/// `K_{r,r}` with edges deleted in a seeded random order whenever both
/// endpoints keep degree at least `min_degree`. The result has minimum degree
/// at least `min_degree` and is edge-maximal-sparse for that order.
pub fn sample_min_degree_bipartite(r: usize, min_degree: usize, seed: u64) -> Result<Graph, GraphError> {
    if r == 0 || min_degree > r {
        return Err(GraphError::InvalidSize(format!(
            "need 1 <= r and min_degree <= r, got r = {r}, min_degree = {min_degree}"
        )));
    }
    let mut g = EdgeDraws::bipartite(r, 0).graph_at(1.0);
    let mut edges = g.edges();
    edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for (a, b) in edges {
        if g.degree(a) > min_degree && g.degree(b) > min_degree {
            g.remove_edge(a, b);
        }
    }
    Ok(g)
}

/// `(min degree, max degree)`; `(0, 0)` for the empty graph.
pub fn degree_stats(g: &Graph) -> (usize, usize) {
    let degs = (0..g.n()).map(|u| g.degree(u));
    let (lo, hi) = degs.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
    if g.n() == 0 {
        (0, 0)
    } else {
        (lo, hi)
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || bfs_distances(g, 0).iter().all(Option::is_some)
}

/// Largest order for which [`all_graphs`] is offered.
pub const ENUMERATION_MAX_N: usize = 7;

fn pair_bit(n: usize, a: usize, b: usize) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a * (2 * n - a - 1) / 2 + (b - a - 1)) as u32
}

/// Canonical code: the largest pair-bitmask over relabelings that list
/// vertices by ascending degree (isomorphic graphs share the same code).
fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| g.degree(u));
    let wanted: Vec<usize> = order.iter().map(|&u| g.degree(u)).collect();
    let mut best = 0u64;
    let mut placed = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(g: &Graph, wanted: &[usize], placed: &mut Vec<usize>, used: &mut [bool], best: &mut u64) {
        let n = g.n();
        let k = placed.len();
        if k == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    if g.has_edge(placed[i], placed[j]) {
                        code |= 1 << pair_bit(n, i, j);
                    }
                }
            }
            *best = (*best).max(code);
            return;
        }
        for u in 0..n {
            if !used[u] && g.degree(u) == wanted[k] {
                used[u] = true;
                placed.push(u);
                rec(g, wanted, placed, used, best);
                placed.pop();
                used[u] = false;
            }
        }
    }
    rec(g, &wanted, &mut placed, &mut used, &mut best);
    best
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// grown vertex by vertex from the classes on `n - 1` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > ENUMERATION_MAX_N {
        return Err(GraphError::InvalidSize(format!(
            "enumeration supports n <= {ENUMERATION_MAX_N}, got {n}"
        )));
    }
    let mut classes = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for base in &classes {
            for nbrs in 0u32..(1 << (k - 1)) {
                let mut g = Graph::empty(k);
                for (a, b) in base.edges() {
                    g.add_edge(a, b);
                }
                for u in (0..k - 1).filter(|u| nbrs >> u & 1 == 1) {
                    g.add_edge(u, k - 1);
                }
                if seen.insert(canonical_code(&g)) {
                    next.push(g);
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}

/// Connected isomorphism classes on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(all_graphs(n)?.into_iter().filter(is_connected).collect())
}

/// Articulation vertices in ascending order (iterative lowpoint DFS).
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, remaining neighbours)
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(root, usize::MAX, g.neighbors(root).collect())];
        while let Some(top) = stack.last_mut() {
            let (u, parent) = (top.0, top.1);
            if let Some(v) = top.2.pop() {
                if disc[v] == usize::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((v, u, g.neighbors(v).collect()));
                } else if v != parent {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected with no articulation vertex. `K_1` and `K_2` count as biconnected.
pub fn is_biconnected(g: &Graph) -> bool {
    is_connected(g) && articulation_points(g).is_empty()
}

/// A proper 2-colouring if one exists. A declared partition is returned as is.
pub fn is_bipartite(g: &Graph) -> Option<Vec<Side>> {
    if let Some(p) = g.partition() {
        return Some(p.to_vec());
    }
    let n = g.n();
    let mut color: Vec<Option<Side>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(Side::A);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(cu.flip());
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub fn bfs_distances(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    if src >= g.n() {
        return dist;
    }
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Shortest-path length, `Ok(None)` when unreachable.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(GraphError::OutOfRange { vertex: w, n: g.n() });
        }
    }
    Ok(bfs_distances(g, u)[v])
}

/// Parses the edge-list format: a header `n m` or `bipartite r m`, then `m`
/// lines `u v`. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let perr = |line: usize, msg: &str| GraphError::Parse {
        line,
        msg: msg.to_string(),
    };
    let num = |line: usize, tok: Option<&str>| -> Result<usize, GraphError> {
        tok.ok_or_else(|| perr(line, "missing field"))?
            .parse()
            .map_err(|_| perr(line, "expected a non-negative integer"))
    };
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (n, m, partition) = match toks.as_slice() {
        ["bipartite", r, m] => {
            let r = num(hl, Some(r))?;
            let part = (0..2 * r).map(|i| if i < r { Side::A } else { Side::B }).collect();
            (2 * r, num(hl, Some(m))?, Some(part))
        }
        [n, m] => (num(hl, Some(n))?, num(hl, Some(m))?, None),
        _ => return Err(perr(hl, "header must be `n m` or `bipartite r m`")),
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        let u = num(ln, it.next())?;
        let v = num(ln, it.next())?;
        if it.next().is_some() {
            return Err(perr(ln, "trailing tokens"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(perr(hl, &format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges, partition)
}

/// Serializes a graph. The `bipartite r m` header is used when the declared
/// partition is exactly `{0..r-1}, {r..2r-1}`.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let n = g.n();
    let halves = n % 2 == 0
        && n > 0
        && g.partition()
            .is_some_and(|p| p.iter().enumerate().all(|(i, &s)| (s == Side::A) == (i < n / 2)));
    let mut out = if halves {
        format!("bipartite {} {}\n", n / 2, edges.len())
    } else {
        format!("{} {}\n", n, edges.len())
    };
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_class_counts() {
        let all: Vec<usize> = (1..=7).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, [1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=7).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(conn, [1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn k2_and_k4() {
        let k2 = Graph::from_edges(2, &[(0, 1)], None).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let all: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        assert_eq!(
            Graph::from_edges(4, &all, None).unwrap(),
            generator(Family::Complete(4)).unwrap()
        );
    }

    #[test]
    fn make_graph_errors() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)], None), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)], None),
            Err(GraphError::OutOfRange { .. })
        ));
        let part = vec![Side::A, Side::A, Side::B];
        assert_eq!(
            Graph::from_edges(3, &[(0, 1)], Some(part)),
            Err(GraphError::NonCrossingEdge(0, 1))
        );
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)], None).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn theta0_shape() {
        let t = generator(Family::Theta0).unwrap();
        assert_eq!((t.n(), t.edge_count()), (7, 8));
        assert_eq!(degree_stats(&t), (2, 3));
        assert!(is_biconnected(&t));
        assert!(is_bipartite(&t).is_none());
        assert_eq!(girth(&t), Some(5));
    }

    #[test]
    fn named_families() {
        let s = generator(Family::Star(4)).unwrap();
        assert_eq!(s.edges(), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(degree_stats(&generator(Family::Star(5)).unwrap()), (1, 4));
        assert_eq!(generator(Family::CompleteBipartite(2, 2)).unwrap().edge_count(), 4);
        assert_eq!(degree_stats(&generator(Family::Complete(4)).unwrap()), (3, 3));
        assert!(generator(Family::Cycle(2)).is_err());
        assert!(generator(Family::Complete(0)).is_err());
    }

    #[test]
    fn predicates_on_small_families() {
        assert!(is_biconnected(&generator(Family::Cycle(5)).unwrap()));
        assert!(!is_biconnected(&generator(Family::Path(4)).unwrap()));
        assert!(is_biconnected(&generator(Family::Complete(1)).unwrap()));
        assert!(is_biconnected(&generator(Family::Complete(2)).unwrap()));
        assert!(!is_biconnected(&Graph::empty(2)));
        assert!(is_bipartite(&generator(Family::Cycle(6)).unwrap()).is_some());
        assert!(is_bipartite(&generator(Family::Cycle(5)).unwrap()).is_none());
        let k23 = is_bipartite(&generator(Family::CompleteBipartite(2, 3)).unwrap()).unwrap();
        assert_eq!(k23.iter().filter(|&&s| s == Side::A).count(), 2);
        assert_eq!(girth(&generator(Family::Cycle(7)).unwrap()), Some(7));
        assert_eq!(girth(&generator(Family::Path(6)).unwrap()), None);
        assert_eq!(girth(&generator(Family::Complete(4)).unwrap()), Some(3));
        assert_eq!(articulation_points(&generator(Family::Path(4)).unwrap()), vec![1, 2]);
    }

    #[test]
    fn distances() {
        let p5 = generator(Family::Path(5)).unwrap();
        assert_eq!(distance(&p5, 0, 4), Ok(Some(4)));
        assert_eq!(distance(&Graph::empty(2), 0, 1), Ok(None));
        assert_eq!(distance(&generator(Family::Cycle(8)).unwrap(), 0, 4), Ok(Some(4)));
        assert!(distance(&p5, 0, 5).is_err());
    }

    #[test]
    fn sampling_extremes() {
        assert_eq!(sample(&RandomModel::gnp(5, 0.0, 9)).unwrap().edge_count(), 0);
        assert_eq!(
            sample(&RandomModel::gnp(5, 1.0, 9)).unwrap(),
            generator(Family::Complete(5)).unwrap()
        );
        let k33 = generator(Family::CompleteBipartite(3, 3)).unwrap();
        assert_eq!(sample(&RandomModel::bipartite_gnp(3, 1.0, 9)).unwrap(), k33);
        assert!(sample(&RandomModel::gnp(5, 1.5, 0)).is_err());
        assert!(sample(&RandomModel::gnp(0, 0.5, 0)).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let k33 = generator(Family::CompleteBipartite(3, 3)).unwrap();
        let text = to_edge_list(&k33);
        assert!(text.starts_with("bipartite 3 9\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), k33);
        let t = generator(Family::Theta0).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&t)).unwrap(), t);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("bipartite 2 1\n0 1\n").is_err());
    }
}
