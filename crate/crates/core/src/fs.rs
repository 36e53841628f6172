//! The state space of FS(X, Y): friendly swaps, exact component enumeration
//! over Lehmer ranks, isolated vertices, exchangeability and concordance.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Side};
use crate::perm::{self, Bijection, PermError, SwapMove, SwapSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FsError {
    #[error("X has {x} vertices but Y has {y}")]
    SizeMismatch { x: usize, y: usize },
    #[error("bijection has length {got}, expected {n}")]
    BijectionLength { got: usize, n: usize },
    #[error("exact analysis is capped at n = {cap}, got n = {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("requested cap {0} exceeds the supported maximum {max}", max = Cap::EXTENDED.0)]
    CapTooLarge(usize),
    #[error("label {label} out of range for n = {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("u and v must differ")]
    SameLabel,
    #[error("both graphs need a declared bipartition")]
    MissingPartition,
    #[error("move {position} ({mv}) is not a friendly swap")]
    NonFriendlyMove { position: usize, mv: SwapMove },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Upper bound on `n` for exhaustive state-space work. The visited bitset
/// takes `n!/8` bytes: about 60 MB at 12 and 780 MB at 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(usize);

impl Cap {
    pub const DEFAULT: Cap = Cap(12);
    pub const EXTENDED: Cap = Cap(13);

    pub fn new(max_n: usize) -> Result<Cap, FsError> {
        if max_n > Cap::EXTENDED.0 {
            return Err(FsError::CapTooLarge(max_n));
        }
        Ok(Cap(max_n))
    }

    pub fn max_n(self) -> usize {
        self.0
    }

    pub(crate) fn check(self, n: usize) -> Result<(), FsError> {
        if n > self.0 {
            Err(FsError::CapExceeded { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Cap {
    fn default() -> Self {
        Cap::DEFAULT
    }
}

pub(crate) fn check_labels(n: usize, u: usize, v: usize) -> Result<(), FsError> {
    for label in [u, v] {
        if label >= n {
            return Err(FsError::LabelOutOfRange { label, n });
        }
    }
    if u == v {
        return Err(FsError::SameLabel);
    }
    Ok(())
}

pub(crate) fn check_sizes(x: &Graph, y: &Graph) -> Result<usize, FsError> {
    if x.n() != y.n() {
        return Err(FsError::SizeMismatch { x: x.n(), y: y.n() });
    }
    Ok(x.n())
}

pub(crate) fn check_bijection(n: usize, b: &Bijection) -> Result<(), FsError> {
    if b.len() != n {
        return Err(FsError::BijectionLength { got: b.len(), n });
    }
    Ok(())
}

/// Precomputed adjacency for walking the state space on rank-encoded states.
struct Space {
    n: usize,
    x_edges: Vec<(usize, usize)>,
    y_mask: Vec<u32>,
}

impl Space {
    fn new(x: &Graph, y: &Graph) -> Space {
        Space {
            n: x.n(),
            x_edges: x.edges(),
            y_mask: (0..y.n()).map(|u| y.mask(u) as u32).collect(),
        }
    }

    /// Calls `f(rank, label_u, label_v)` for every friendly neighbour of the
    /// state held in `img` (which is restored afterwards).
    #[inline]
    fn for_each_neighbor(&self, img: &mut [usize], mut f: impl FnMut(u64, usize, usize)) {
        for &(a, c) in &self.x_edges {
            let (ya, yc) = (img[a], img[c]);
            if self.y_mask[ya] >> yc & 1 == 1 {
                img.swap(a, c);
                f(perm::rank_unchecked(img), ya, yc);
                img.swap(a, c);
            }
        }
    }
}

/// An X-edge together with the bijection reached by swapping across it.
pub type Neighbor = ((usize, usize), Bijection);

/// Ascending list of `(X-edge, neighbour)` pairs, one per friendly swap.
pub fn friendly_neighbors(x: &Graph, y: &Graph, b: &Bijection) -> Result<Vec<Neighbor>, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, b)?;
    Ok(x.edges()
        .into_iter()
        .filter(|&(a, c)| y.has_edge(b.apply(a), b.apply(c)))
        .map(|(a, c)| ((a, c), b.swapped(a, c)))
        .collect())
}

pub fn is_isolated(x: &Graph, y: &Graph, b: &Bijection) -> Result<bool, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, b)?;
    Ok(!x.edges().into_iter().any(|(a, c)| y.has_edge(b.apply(a), b.apply(c))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub component_count: u64,
    /// Component sizes in ascending order.
    pub sizes: Vec<u64>,
    pub isolated_count: u64,
    /// `n!`, the number of states.
    pub total: u64,
}

impl ComponentSummary {
    fn from_sizes(mut sizes: Vec<u64>, total: u64) -> ComponentSummary {
        sizes.sort_unstable();
        ComponentSummary {
            component_count: sizes.len() as u64,
            isolated_count: sizes.iter().filter(|&&s| s == 1).count() as u64,
            sizes,
            total,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    /// `(size, multiplicity)` pairs in ascending size order.
    pub fn size_multiset(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &s in &self.sizes {
            match out.last_mut() {
                Some((size, mult)) if *size == s => *mult += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }
}

impl fmt::Display for ComponentSummary {
    /// `count k sizes s1*m1,s2*m2,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.size_multiset().iter().map(|(s, m)| format!("{s}*{m}")).collect();
        write!(f, "count {} sizes {}", self.component_count, parts.join(","))
    }
}

pub fn components(x: &Graph, y: &Graph) -> Result<ComponentSummary, FsError> {
    components_capped(x, y, Cap::DEFAULT)
}

/// Exact component summary by breadth-first flood fill over ranks, with a
/// flat bitset as the visited set.
pub fn components_capped(x: &Graph, y: &Graph, cap: Cap) -> Result<ComponentSummary, FsError> {
    let n = check_sizes(x, y)?;
    cap.check(n)?;
    let total = perm::factorial(n)?;
    let space = Space::new(x, y);
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut img = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut sizes = Vec::new();
    for start in 0..total {
        if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        visited[(start / 64) as usize] |= 1 << (start % 64);
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(r) = queue.pop_front() {
            size += 1;
            perm::unrank_unchecked(r, &mut img);
            space.for_each_neighbor(&mut img, |nr, _, _| {
                let (w, bit) = ((nr / 64) as usize, 1u64 << (nr % 64));
                if visited[w] & bit == 0 {
                    visited[w] |= bit;
                    queue.push_back(nr);
                }
            });
        }
        sizes.push(size);
    }
    Ok(ComponentSummary::from_sizes(sizes, total))
}

/// Component label of every state, indexed by rank. Labels are assigned in
/// order of the least rank in each component.
#[derive(Debug, Clone)]
pub struct ComponentMap {
    pub n: usize,
    pub labels: Vec<u32>,
    pub count: u32,
}

impl ComponentMap {
    pub fn label_of(&self, b: &Bijection) -> u32 {
        self.labels[perm::rank_unchecked(b.image()) as usize]
    }

    pub fn same_component(&self, a: &Bijection, b: &Bijection) -> bool {
        self.label_of(a) == self.label_of(b)
    }
}

/// Like [`components_capped`] but records the label of every state. Uses
/// four bytes per state, so it is meant for `n <= 10`.
pub fn component_map(x: &Graph, y: &Graph, cap: Cap) -> Result<ComponentMap, FsError> {
    let n = check_sizes(x, y)?;
    cap.check(n)?;
    let total = perm::factorial(n)?;
    let space = Space::new(x, y);
    let mut labels = vec![u32::MAX; total as usize];
    let mut img = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut count = 0u32;
    for start in 0..total as usize {
        if labels[start] != u32::MAX {
            continue;
        }
        labels[start] = count;
        queue.push_back(start as u64);
        while let Some(r) = queue.pop_front() {
            perm::unrank_unchecked(r, &mut img);
            space.for_each_neighbor(&mut img, |nr, _, _| {
                if labels[nr as usize] == u32::MAX {
                    labels[nr as usize] = count;
                    queue.push_back(nr);
                }
            });
        }
        count += 1;
    }
    Ok(ComponentMap { n, labels, count })
}

pub const DEFAULT_ISOLATED_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatedOutcome {
    Found(Bijection),
    /// The search finished without a hit: no isolated vertex exists.
    NoneExists,
    /// Ran out of budget; nothing can be concluded.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedSearch {
    pub outcome: IsolatedOutcome,
    pub attempts: u64,
}

impl IsolatedSearch {
    pub fn found(&self) -> Option<&Bijection> {
        match &self.outcome {
            IsolatedOutcome::Found(b) => Some(b),
            _ => None,
        }
    }

    pub fn exhaustive(&self) -> bool {
        self.outcome != IsolatedOutcome::BudgetExhausted
    }
}

/// Backtracking search for a bijection with no friendly swap. X-vertices are
/// placed in descending-degree order, images tried in ascending order, and a
/// placement is pruned when it maps an X-edge onto a Y-edge. Every tried
/// placement counts against `budget`.
pub fn find_isolated_vertex(x: &Graph, y: &Graph, budget: u64) -> Result<IsolatedSearch, FsError> {
    let n = check_sizes(x, y)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(x.degree(a)));

    struct Search<'a> {
        x: &'a Graph,
        y: &'a Graph,
        order: Vec<usize>,
        img: Vec<usize>,
        used: Vec<bool>,
        placed: Vec<bool>,
        attempts: u64,
        budget: u64,
    }

    impl Search<'_> {
        // Some(true) = found, Some(false) = subtree exhausted, None = budget hit.
        fn go(&mut self, depth: usize) -> Option<bool> {
            if depth == self.order.len() {
                return Some(true);
            }
            let a = self.order[depth];
            for t in 0..self.order.len() {
                if self.used[t] {
                    continue;
                }
                if self.attempts >= self.budget {
                    return None;
                }
                self.attempts += 1;
                let clash = self
                    .x
                    .neighbors(a)
                    .any(|c| self.placed[c] && self.y.has_edge(t, self.img[c]));
                if clash {
                    continue;
                }
                self.img[a] = t;
                self.used[t] = true;
                self.placed[a] = true;
                match self.go(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.used[t] = false;
                self.placed[a] = false;
            }
            Some(false)
        }
    }

    let mut s = Search {
        x,
        y,
        order,
        img: vec![0; n],
        used: vec![false; n],
        placed: vec![false; n],
        attempts: 0,
        budget,
    };
    let outcome = match s.go(0) {
        Some(true) => IsolatedOutcome::Found(Bijection::new(s.img.clone())?),
        Some(false) => IsolatedOutcome::NoneExists,
        None => IsolatedOutcome::BudgetExhausted,
    };
    Ok(IsolatedSearch {
        outcome,
        attempts: s.attempts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reachability {
    Found(SwapSequence),
    /// The whole component of the start was explored without reaching the target.
    CertifiedAbsent,
}

impl Reachability {
    pub fn sequence(&self) -> Option<&SwapSequence> {
        match self {
            Reachability::Found(s) => Some(s),
            Reachability::CertifiedAbsent => None,
        }
    }
}

/// The target of an exchange: `b ∘ (b⁻¹(u) b⁻¹(v))`.
pub fn exchange_target(b: &Bijection, u: usize, v: usize) -> Bijection {
    let inv = b.inverse();
    b.swapped(inv.apply(u), inv.apply(v))
}

pub fn exchangeable(x: &Graph, y: &Graph, b: &Bijection, u: usize, v: usize) -> Result<Reachability, FsError> {
    exchangeable_capped(x, y, b, u, v, Cap::DEFAULT)
}

/// Bidirectional BFS between `b` and its exchange target, always expanding
/// the side with the smaller frontier.
pub fn exchangeable_capped(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
    cap: Cap,
) -> Result<Reachability, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, b)?;
    check_labels(n, u, v)?;
    cap.check(n)?;
    Ok(exchange_search(x, y, b, u, v).0)
}

/// Unchecked core of [`exchangeable_capped`], also returning the number of
/// states reached.
pub(crate) fn exchange_search(x: &Graph, y: &Graph, b: &Bijection, u: usize, v: usize) -> (Reachability, u64) {
    let target = exchange_target(b, u, v);
    match shortest_path(&Space::new(x, y), b, &target) {
        (Some(seq), nodes) => (Reachability::Found(seq), nodes),
        (None, nodes) => (Reachability::CertifiedAbsent, nodes),
    }
}

/// Shortest friendly-swap sequence from `from` to `to`, if any.
pub fn path_between(
    x: &Graph,
    y: &Graph,
    from: &Bijection,
    to: &Bijection,
    cap: Cap,
) -> Result<Option<SwapSequence>, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, from)?;
    check_bijection(n, to)?;
    cap.check(n)?;
    Ok(shortest_path(&Space::new(x, y), from, to).0)
}

fn shortest_path(space: &Space, from: &Bijection, to: &Bijection) -> (Option<SwapSequence>, u64) {
    let (s, t) = (perm::rank_unchecked(from.image()), perm::rank_unchecked(to.image()));
    if s == t {
        return (Some(SwapSequence::new()), 1);
    }
    type Parents = HashMap<u64, Option<(u64, SwapMove)>>;
    let mut parents: [Parents; 2] = [HashMap::from([(s, None)]), HashMap::from([(t, None)])];
    let mut frontiers: [Vec<u64>; 2] = [vec![s], vec![t]];
    let mut img = vec![0usize; space.n];

    let meet = 'search: loop {
        if frontiers[0].is_empty() || frontiers[1].is_empty() {
            return (None, (parents[0].len() + parents[1].len()) as u64);
        }
        let side = usize::from(frontiers[1].len() < frontiers[0].len());
        let mut next = Vec::new();
        for &r in &frontiers[side] {
            perm::unrank_unchecked(r, &mut img);
            let mut hit = None;
            space.for_each_neighbor(&mut img, |nr, ya, yc| {
                if hit.is_some() || parents[side].contains_key(&nr) {
                    return;
                }
                parents[side].insert(nr, Some((r, SwapMove::new(ya, yc))));
                if parents[1 - side].contains_key(&nr) {
                    hit = Some(nr);
                }
                next.push(nr);
            });
            if let Some(m) = hit {
                break 'search m;
            }
        }
        frontiers[side] = next;
    };

    let mut forward = Vec::new();
    let mut cur = meet;
    while let Some((p, mv)) = parents[0][&cur] {
        forward.push(mv);
        cur = p;
    }
    forward.reverse();
    cur = meet;
    while let Some((p, mv)) = parents[1][&cur] {
        forward.push(mv);
        cur = p;
    }
    (
        Some(SwapSequence(forward)),
        (parents[0].len() + parents[1].len()) as u64,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub result: Bijection,
    /// Every `Y`-label named by some move.
    pub involved: BTreeSet<usize>,
}

/// Replays `seq` from `b`, checking each move is a friendly swap at its turn.
pub fn apply_sequence(x: &Graph, y: &Graph, b: &Bijection, seq: &SwapSequence) -> Result<Replay, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, b)?;
    let mut img = b.image().to_vec();
    let mut pos = b.inverse().image().to_vec();
    let mut involved = BTreeSet::new();
    for (k, &mv) in seq.moves().iter().enumerate() {
        let bad = FsError::NonFriendlyMove { position: k, mv };
        if mv.u >= n || mv.v >= n || !y.has_edge(mv.u, mv.v) {
            return Err(bad);
        }
        let (a, c) = (pos[mv.u], pos[mv.v]);
        if !x.has_edge(a, c) {
            return Err(bad);
        }
        img.swap(a, c);
        pos.swap(mv.u, mv.v);
        involved.insert(mv.u);
        involved.insert(mv.v);
    }
    Ok(Replay {
        result: Bijection::new(img)?,
        involved,
    })
}

/// Reference bijection for concordance labels: sorted `A_X` onto sorted
/// `A_Y` and sorted `B_X` onto sorted `B_Y` when the parts match in size,
/// otherwise the identity.
fn concordance_reference(xp: &[Side], yp: &[Side]) -> Bijection {
    let part = |p: &[Side], s: Side| -> Vec<usize> { (0..p.len()).filter(|&i| p[i] == s).collect() };
    let (ax, bx, ay, by) = (
        part(xp, Side::A),
        part(xp, Side::B),
        part(yp, Side::A),
        part(yp, Side::B),
    );
    if ax.len() != ay.len() {
        return Bijection::identity(xp.len());
    }
    let mut img = vec![0; xp.len()];
    for (a, t) in ax.iter().zip(&ay).chain(bx.iter().zip(&by)) {
        img[*a] = *t;
    }
    Bijection::new(img).expect("parts partition both vertex sets")
}

/// Concordance label in `{0, 1}`: two bijections are concordant exactly when
/// their labels agree. Normalised so the reference bijection has label 0.
pub fn concordance_class(x: &Graph, y: &Graph, b: &Bijection) -> Result<u8, FsError> {
    let n = check_sizes(x, y)?;
    check_bijection(n, b)?;
    let (xp, yp) = match (x.partition(), y.partition()) {
        (Some(xp), Some(yp)) => (xp, yp),
        _ => return Err(FsError::MissingPartition),
    };
    let reference = concordance_reference(xp, yp);
    let overlap = |f: &Bijection| {
        (0..n)
            .filter(|&a| xp[a] == Side::A && yp[f.apply(a)] == Side::A)
            .count()
    };
    let rel = reference.inverse().compose(b);
    Ok(((rel.parity() as usize + overlap(b) + overlap(&reference)) % 2) as u8)
}
