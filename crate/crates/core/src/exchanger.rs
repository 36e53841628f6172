//! Constructive exchanges. Each strategy produces a friendly-swap sequence
//! that carries `b` to `b ∘ (b⁻¹(u) b⁻¹(v))`, and every returned sequence has
//! been replayed against the graphs before it leaves this module.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::fs::{self, Cap, FsError, Reachability};
use crate::graph::{Graph, Side};
use crate::perm::{Bijection, SwapSequence};
use crate::wilson::{self, WilsonStatus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error(transparent)]
    Fs(#[from] FsError),
    #[error("both graphs need a declared bipartition")]
    MissingPartition,
    #[error("parts must both have r vertices (n = {n})")]
    Unbalanced { n: usize },
    #[error("minimum degree {delta} is below the required {need}")]
    DegreeTooLow { delta: usize, need: usize },
    #[error("u and v lie in the same part of Y")]
    SamePart,
    #[error("the preimages of u and v are not adjacent in X")]
    NotAnXEdge,
    #[error("dichotomy probe is limited to m <= {max}, got m = {m}")]
    TooLarge { m: usize, max: usize },
    /// A choice the counting argument guarantees was unavailable. Never
    /// expected on inputs that meet the preconditions.
    #[error("counting argument failed: {0}")]
    CountingFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Direct,
    CommonNeighbor,
    PathConjugation,
    BipartiteMinDegree,
    BfsFallback,
}

impl Strategy {
    pub fn token(self) -> &'static str {
        match self {
            Strategy::Direct => "direct",
            Strategy::CommonNeighbor => "common_neighbor",
            Strategy::PathConjugation => "path_conjugation",
            Strategy::BipartiteMinDegree => "bipartite_min_degree",
            Strategy::BfsFallback => "bfs_fallback",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExchangeStats {
    pub moves: usize,
    /// States touched by a search; zero for purely constructive strategies.
    pub search_nodes: u64,
    pub first_kind: usize,
    pub second_kind: usize,
    /// The bipartite construction ran from `b ∘ (u′ v′)` and reversed.
    pub reoriented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeResult {
    pub sequence: SwapSequence,
    pub strategy: Strategy,
    pub stats: ExchangeStats,
}

impl ExchangeResult {
    fn new(sequence: SwapSequence, strategy: Strategy) -> ExchangeResult {
        let stats = ExchangeStats {
            moves: sequence.len(),
            ..ExchangeStats::default()
        };
        ExchangeResult {
            sequence,
            strategy,
            stats,
        }
    }
}

fn validate(x: &Graph, y: &Graph, b: &Bijection, u: usize, v: usize, seq: &SwapSequence) -> Result<(), ExchangeError> {
    let replay = fs::apply_sequence(x, y, b, seq)
        .map_err(|e| ExchangeError::CountingFailure(format!("constructed sequence does not replay: {e}")))?;
    if replay.result != fs::exchange_target(b, u, v) {
        return Err(ExchangeError::CountingFailure(format!(
            "sequence nets {} instead of exchanging {u} and {v}",
            replay.result
        )));
    }
    Ok(())
}

fn check_inputs(x: &Graph, y: &Graph, b: &Bijection, u: usize, v: usize) -> Result<usize, ExchangeError> {
    let n = fs::check_sizes(x, y)?;
    fs::check_bijection(n, b)?;
    fs::check_labels(n, u, v)?;
    Ok(n)
}

/// `wu, wv, wu` for the least `w ∈ N_Y(u) ∩ N_Y(v)` whose preimage is adjacent
/// to both `u′` and `v′`. The template also needs `u′v′ ∈ E(X)`.
pub fn common_neighbor_exchange(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
) -> Result<Option<ExchangeResult>, ExchangeError> {
    check_inputs(x, y, b, u, v)?;
    let pos = b.inverse();
    let (up, vp) = (pos.apply(u), pos.apply(v));
    if !x.has_edge(up, vp) {
        return Ok(None);
    }
    let found = y.neighbors(u).filter(|&w| y.has_edge(w, v)).find(|&w| {
        let wp = pos.apply(w);
        x.has_edge(wp, up) && x.has_edge(wp, vp)
    });
    let Some(w) = found else { return Ok(None) };
    let seq = SwapSequence::from_pairs(&[(w, u), (w, v), (w, u)]);
    validate(x, y, b, u, v, &seq)?;
    Ok(Some(ExchangeResult::new(seq, Strategy::CommonNeighbor)))
}

/// Shortest path in `x` from `start` to any vertex with `is_target`, whose
/// interior vertices all satisfy `allowed`. Returns the full path.
fn restricted_path(x: &Graph, start: usize, allowed: &[bool], is_target: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = x.n();
    let mut parent = vec![usize::MAX; n];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for c in x.neighbors(a) {
            if parent[c] != usize::MAX {
                continue;
            }
            parent[c] = a;
            if is_target(c) {
                let mut path = vec![c];
                let mut cur = c;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if allowed[c] {
                queue.push_back(c);
            }
        }
    }
    None
}

/// Conjugates the core `core` by the walk of `w′` along `ts` (Y-labels).
fn conjugated(w: usize, ts: &[usize], core: &[usize]) -> Vec<(usize, usize)> {
    let mut moves: Vec<(usize, usize)> = ts.iter().map(|&t| (w, t)).collect();
    moves.extend(core.iter().map(|&c| (w, c)));
    moves.extend(ts.iter().rev().map(|&t| (w, t)));
    moves
}

/// The conjugated templates for a common neighbour `w` of `u` and `v` and a
/// vertex `x ∈ N_Y(w)` whose preimage is adjacent to `u′` and `v′`: a single
/// path from `w′` to `x′` through preimages of `N_Y(w) ∖ {u, v}`, or failing
/// that, two paths ending `…, u′, x′` and `…, v′, x′`. When `w′` is itself
/// adjacent to `u′` and `v′` this is the three-move common-neighbour swap.
pub fn path_conjugation_exchange(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
) -> Result<Option<ExchangeResult>, ExchangeError> {
    let n = check_inputs(x, y, b, u, v)?;
    let pos = b.inverse();
    let (up, vp) = (pos.apply(u), pos.apply(v));
    if !x.has_edge(up, vp) {
        return Ok(None);
    }
    let commons: Vec<usize> = y.neighbors(u).filter(|&w| y.has_edge(w, v)).collect();
    let allowed_for = |w: usize| {
        let mut allowed = vec![false; n];
        for t in y.neighbors(w).filter(|&t| t != u && t != v) {
            allowed[pos.apply(t)] = true;
        }
        allowed
    };
    let is_x = |a: usize| a != up && a != vp && x.has_edge(a, up) && x.has_edge(a, vp);
    let labels = |path: &[usize]| path.iter().map(|&a| b.apply(a)).collect::<Vec<_>>();

    for &w in &commons {
        let wp = pos.apply(w);
        if x.has_edge(wp, up) && x.has_edge(wp, vp) {
            let seq = SwapSequence::from_pairs(&[(w, u), (w, v), (w, u)]);
            validate(x, y, b, u, v, &seq)?;
            return Ok(Some(ExchangeResult::new(seq, Strategy::PathConjugation)));
        }
        let allowed = allowed_for(w);
        if let Some(path) = restricted_path(x, wp, &allowed, |a| allowed[a] && is_x(a)) {
            let ys = labels(&path);
            let (ts, xl) = (&ys[1..ys.len() - 1], ys[ys.len() - 1]);
            let seq = SwapSequence::from_pairs(&conjugated(w, ts, &[xl, u, v, u, xl]));
            validate(x, y, b, u, v, &seq)?;
            return Ok(Some(ExchangeResult::new(seq, Strategy::PathConjugation)));
        }
    }

    for &w in &commons {
        let wp = pos.apply(w);
        let allowed = allowed_for(w);
        let candidates = (0..n).filter(|&a| allowed[a] && is_x(a));
        for xp in candidates {
            let xl = b.apply(xp);
            let to_u = restricted_path(x, wp, &allowed, |a| a == up);
            let to_v = restricted_path(x, wp, &allowed, |a| a == vp);
            let (Some(pu), Some(pv)) = (to_u, to_v) else { continue };
            let (tu, tv) = (labels(&pu), labels(&pv));
            let (ts, tts) = (&tu[1..tu.len() - 1], &tv[1..tv.len() - 1]);
            let mut moves = conjugated(w, ts, &[u, xl, v, xl, u]);
            moves.extend(conjugated(w, tts, &[xl, v, u, v, xl]));
            moves.extend(conjugated(w, ts, &[v, u, xl, u, v]));
            let seq = SwapSequence::from_pairs(&moves);
            validate(x, y, b, u, v, &seq)?;
            return Ok(Some(ExchangeResult::new(seq, Strategy::PathConjugation)));
        }
    }
    Ok(None)
}

/// Minimum degree demanded of both graphs: `⌈(3r+2)/4⌉`.
pub fn bipartite_degree_threshold(r: usize) -> usize {
    (3 * r + 2).div_ceil(4)
}

/// Checks the hypotheses of the bipartite minimum-degree exchange and
/// returns `r`.
pub fn bipartite_preconditions(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
) -> Result<usize, ExchangeError> {
    let n = check_inputs(x, y, b, u, v)?;
    let (Some(xp), Some(yp)) = (x.partition(), y.partition()) else {
        return Err(ExchangeError::MissingPartition);
    };
    let r = n / 2;
    let balanced = |p: &[Side]| p.iter().filter(|&&s| s == Side::A).count() == r;
    if n % 2 != 0 || !balanced(xp) || !balanced(yp) {
        return Err(ExchangeError::Unbalanced { n });
    }
    let delta = (0..n).map(|a| x.degree(a).min(y.degree(a))).min().unwrap_or(0);
    let need = bipartite_degree_threshold(r);
    if delta < need {
        return Err(ExchangeError::DegreeTooLow { delta, need });
    }
    if yp[u] == yp[v] {
        return Err(ExchangeError::SamePart);
    }
    let pos = b.inverse();
    if !x.has_edge(pos.apply(u), pos.apply(v)) {
        return Err(ExchangeError::NotAnXEdge);
    }
    Ok(r)
}

/// Mutable bijection with both directions, recording the swaps applied.
struct Tracker<'a> {
    x: &'a Graph,
    y: &'a Graph,
    img: Vec<usize>,
    pos: Vec<usize>,
    seq: SwapSequence,
}

impl<'a> Tracker<'a> {
    fn new(x: &'a Graph, y: &'a Graph, b: &Bijection) -> Tracker<'a> {
        Tracker {
            x,
            y,
            img: b.image().to_vec(),
            pos: b.inverse().image().to_vec(),
            seq: SwapSequence::new(),
        }
    }

    fn friendly(&self, p: usize, q: usize) -> bool {
        self.y.has_edge(p, q) && self.x.has_edge(self.pos[p], self.pos[q])
    }

    fn swap(&mut self, p: usize, q: usize) {
        let (a, c) = (self.pos[p], self.pos[q]);
        self.img.swap(a, c);
        self.pos.swap(p, q);
        self.seq.push(p, q);
    }
}

/// The bipartite minimum-degree exchange for `X, Y ⊆ K_{r,r}` with both
/// minimum degrees at least `⌈(3r+2)/4⌉`, `u` and `v` on opposite sides of
/// `Y` and `u′v′ ∈ E(X)`.
///
/// Preliminary swaps avoiding `u, v, w` move `D = A_X ∖ (N(v′) ∩ N(w′))`
/// into `B_Y` and shrink `τ⁻¹(B_Y) ∩ A_X`; then
/// `vz1, wz2, wz1, wu, wz2, wz1, vz1, vz2, wz2` exchanges `u` and `v`, and
/// the preliminary swaps are undone.
pub fn bipartite_min_degree_exchange(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
) -> Result<ExchangeResult, ExchangeError> {
    let r = bipartite_preconditions(x, y, b, u, v)?;
    let pos = b.inverse();
    let (up, vp) = (pos.apply(u), pos.apply(v));
    if y.has_edge(u, v) {
        // Already friendly; also keeps `w` below distinct from `v`.
        let seq = SwapSequence::from_pairs(&[(u, v)]);
        validate(x, y, b, u, v, &seq)?;
        return Ok(ExchangeResult::new(seq, Strategy::BipartiteMinDegree));
    }
    let xp = x.partition().expect("checked");
    let yp = y.partition().expect("checked");
    let in_b_y = |img: &[usize], a: usize| yp[img[a]] == yp[v];
    let oriented = (0..2 * r).filter(|&a| xp[a] == xp[vp] && in_b_y(b.image(), a)).count();
    let (start, reoriented) = if 2 * oriented >= r {
        (b.clone(), false)
    } else {
        (b.swapped(up, vp), true)
    };

    let (core, first_kind, second_kind) = bipartite_core(x, y, &start, u, v, r)?;
    let seq = if reoriented { core.reversed() } else { core };
    validate(x, y, b, u, v, &seq)?;
    let stats = ExchangeStats {
        moves: seq.len(),
        search_nodes: 0,
        first_kind,
        second_kind,
        reoriented,
    };
    Ok(ExchangeResult {
        sequence: seq,
        strategy: Strategy::BipartiteMinDegree,
        stats,
    })
}

fn bipartite_core(
    x: &Graph,
    y: &Graph,
    sigma: &Bijection,
    u: usize,
    v: usize,
    r: usize,
) -> Result<(SwapSequence, usize, usize), ExchangeError> {
    let fail = |msg: String| ExchangeError::CountingFailure(msg);
    let n = 2 * r;
    let xp = x.partition().expect("checked");
    let yp = y.partition().expect("checked");
    let delta = (0..n).map(|a| x.degree(a).min(y.degree(a))).min().unwrap_or(0);
    let mut t = Tracker::new(x, y, sigma);
    let (up, vp) = (t.pos[u], t.pos[v]);
    let a_x = |a: usize| xp[a] == xp[up];
    let a_y = |p: usize| yp[p] == yp[u];

    let aligned = (0..n).filter(|&a| !a_x(a) && !a_y(t.img[a])).count();
    if 2 * aligned < r {
        return Err(fail(format!("orientation left |B_X ∩ σ⁻¹(B_Y)| = {aligned} < r/2")));
    }

    let w = y
        .neighbors(u)
        .find(|&w| x.has_edge(t.pos[w], up))
        .ok_or_else(|| fail("no w ∈ N(u) with σ⁻¹(w) adjacent to u′".into()))?;
    let wp = t.pos[w];
    let in_d: Vec<bool> = (0..n)
        .map(|a| a_x(a) && !(x.has_edge(a, vp) && x.has_edge(a, wp)))
        .collect();

    // (|τ(D) ∩ A_Y|, |B_Y ∩ τ(A_X ∖ D)|)
    let potential = |t: &Tracker| {
        let d_in_a = (0..n).filter(|&a| in_d[a] && a_y(t.img[a])).count();
        let rest_in_b = (0..n).filter(|&a| a_x(a) && !in_d[a] && !a_y(t.img[a])).count();
        (d_in_a, rest_in_b)
    };
    let slack = 2 * r - 2 * delta.min(r);
    let (mut first_kind, mut second_kind) = (0, 0);
    loop {
        let case_one = (0..n).find(|&p| a_y(p) && in_d[t.pos[p]]);
        let a_to_b = (0..n).filter(|&a| a_x(a) && !a_y(t.img[a])).count();
        let case_two = a_to_b > slack;
        if case_one.is_none() && !case_two {
            break;
        }
        if first_kind + second_kind > 2 * n {
            return Err(fail("preliminary swaps did not terminate".into()));
        }
        let before = potential(&t);
        let a_to_a = r - a_to_b;
        let first = match case_one {
            Some(xl) if a_to_a > slack + 1 => {
                let yl = (0..n)
                    .find(|&q| !a_y(q) && !a_x(t.pos[q]) && q != v && q != w && t.friendly(xl, q))
                    .ok_or_else(|| fail(format!("no first-kind partner for {xl}")))?;
                t.swap(xl, yl);
                first_kind += 1;
                true
            }
            _ => {
                if !case_two {
                    return Err(fail("case I without the first-kind count implies case II".into()));
                }
                let q = (0..n)
                    .find(|&q| !a_y(q) && a_x(t.pos[q]) && !in_d[t.pos[q]])
                    .ok_or_else(|| fail("no q ∈ B_Y ∩ τ(A_X ∖ D)".into()))?;
                let s = (0..n)
                    .find(|&s| a_y(s) && !a_x(t.pos[s]) && t.friendly(q, s))
                    .ok_or_else(|| fail(format!("no second-kind partner for {q}")))?;
                t.swap(q, s);
                second_kind += 1;
                false
            }
        };
        let after = potential(&t);
        let decreased = if first {
            after.0 < before.0 && after.1 <= before.1
        } else {
            after.1 < before.1 && after.0 <= before.0
        };
        if !decreased {
            return Err(fail(format!("potential went from {before:?} to {after:?}")));
        }
    }
    if t.pos[u] != up || t.pos[v] != vp || t.pos[w] != wp {
        return Err(fail("a preliminary swap moved u, v or w".into()));
    }
    let prelim = t.seq.clone();

    let zs: Vec<usize> = y
        .neighbors(v)
        .filter(|&z| y.has_edge(z, w) && a_x(t.pos[z]))
        .take(2)
        .collect();
    let [z1, z2] = zs[..] else {
        return Err(fail("fewer than two z ∈ N(v) ∩ N(w) with preimage in A_X".into()));
    };
    let mut seq = prelim.clone();
    seq.extend(&SwapSequence::from_pairs(&[
        (v, z1),
        (w, z2),
        (w, z1),
        (w, u),
        (w, z2),
        (w, z1),
        (v, z1),
        (v, z2),
        (w, z2),
    ]));
    seq.extend(&prelim.reversed());
    Ok((seq, first_kind, second_kind))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsentReason {
    /// BFS explored the whole component of `b` without meeting the target.
    CertifiedByBfs,
    CapExceeded {
        n: usize,
        cap: usize,
    },
}

impl fmt::Display for AbsentReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsentReason::CertifiedByBfs => f.write_str("certified by BFS"),
            AbsentReason::CapExceeded { n, cap } => write!(f, "n = {n} exceeds the BFS cap {cap}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LadderOutcome {
    Exchanged(ExchangeResult),
    Absent(AbsentReason),
}

impl LadderOutcome {
    pub fn result(&self) -> Option<&ExchangeResult> {
        match self {
            LadderOutcome::Exchanged(r) => Some(r),
            LadderOutcome::Absent(_) => None,
        }
    }
}

fn bfs_exchange(x: &Graph, y: &Graph, b: &Bijection, u: usize, v: usize, cap: Cap) -> LadderOutcome {
    let n = x.n();
    if n > cap.max_n() {
        return LadderOutcome::Absent(AbsentReason::CapExceeded { n, cap: cap.max_n() });
    }
    match fs::exchange_search(x, y, b, u, v) {
        (Reachability::Found(seq), nodes) => {
            let mut result = ExchangeResult::new(seq, Strategy::BfsFallback);
            result.stats.search_nodes = nodes;
            LadderOutcome::Exchanged(result)
        }
        (Reachability::CertifiedAbsent, _) => LadderOutcome::Absent(AbsentReason::CertifiedByBfs),
    }
}

/// Direct swap, common neighbour, path conjugation, the bipartite
/// construction when its hypotheses hold, then BFS when `n ≤ cap`.
pub fn exchange_ladder(
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
    cap: Cap,
) -> Result<LadderOutcome, ExchangeError> {
    check_inputs(x, y, b, u, v)?;
    let pos = b.inverse();
    if y.has_edge(u, v) && x.has_edge(pos.apply(u), pos.apply(v)) {
        return Ok(LadderOutcome::Exchanged(ExchangeResult::new(
            SwapSequence::from_pairs(&[(u, v)]),
            Strategy::Direct,
        )));
    }
    if let Some(r) = common_neighbor_exchange(x, y, b, u, v)? {
        return Ok(LadderOutcome::Exchanged(r));
    }
    if let Some(r) = path_conjugation_exchange(x, y, b, u, v)? {
        return Ok(LadderOutcome::Exchanged(r));
    }
    if bipartite_preconditions(x, y, b, u, v).is_ok() {
        return bipartite_min_degree_exchange(x, y, b, u, v).map(LadderOutcome::Exchanged);
    }
    Ok(bfs_exchange(x, y, b, u, v, cap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrategyChoice {
    #[default]
    Auto,
    /// Only the bipartite minimum-degree construction; its precondition
    /// failures are reported as errors.
    Bip62,
    Bfs,
}

pub fn exchange_with(
    choice: StrategyChoice,
    x: &Graph,
    y: &Graph,
    b: &Bijection,
    u: usize,
    v: usize,
    cap: Cap,
) -> Result<LadderOutcome, ExchangeError> {
    match choice {
        StrategyChoice::Auto => exchange_ladder(x, y, b, u, v, cap),
        StrategyChoice::Bip62 => bipartite_min_degree_exchange(x, y, b, u, v).map(LadderOutcome::Exchanged),
        StrategyChoice::Bfs => {
            check_inputs(x, y, b, u, v)?;
            Ok(bfs_exchange(x, y, b, u, v, cap))
        }
    }
}

pub const DICHOTOMY_MAX_M: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyStructure {
    pub w: usize,
    pub x: usize,
    /// The label of `{u, v}` removed from `N[w]` to split it.
    pub removed: usize,
    /// Vertices of `G`: contains `t⁻¹(u)`, `t⁻¹(v)`, `t⁻¹(x)`.
    pub c1: Vec<usize>,
    /// Vertices of `G`: contains `t⁻¹(w)`.
    pub c2: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyBranch {
    Exchangeable,
    Structure,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyReport {
    pub m: usize,
    pub exchange: Option<SwapSequence>,
    pub structure: Option<DichotomyStructure>,
    pub search_nodes: u64,
}

impl DichotomyReport {
    /// Exchangeability wins when both hold.
    pub fn branch(&self) -> DichotomyBranch {
        match (&self.exchange, &self.structure) {
            (Some(_), _) => DichotomyBranch::Exchangeable,
            (None, Some(_)) => DichotomyBranch::Structure,
            (None, None) => DichotomyBranch::Violation,
        }
    }
}

/// For `m ≤ 9` vertices with both minimum degrees at least `9m/14 + 1`:
/// either `u` and `v` are exchangeable from `t` (decided by BFS), or some
/// `w ∈ N(u) ∩ N(v)`, `x ∈ N_H(w)` with `t⁻¹(x)` adjacent to `t⁻¹(u)` and
/// `t⁻¹(v)` split `G|t⁻¹(N[w])` into two Wilsonian pieces of `2m/7` to
/// `3m/7` vertices. Both are computed; the report says which hold.
pub fn check_9_14_dichotomy(
    g: &Graph,
    h: &Graph,
    t: &Bijection,
    u: usize,
    v: usize,
) -> Result<DichotomyReport, ExchangeError> {
    let m = check_inputs(g, h, t, u, v)?;
    if m > DICHOTOMY_MAX_M {
        return Err(ExchangeError::TooLarge {
            m,
            max: DICHOTOMY_MAX_M,
        });
    }
    let delta = (0..m).map(|a| g.degree(a).min(h.degree(a))).min().unwrap_or(0);
    if 14 * delta < 9 * m + 14 {
        return Err(ExchangeError::DegreeTooLow {
            delta,
            need: (9 * m + 14).div_ceil(14),
        });
    }
    let pos = t.inverse();
    let (up, vp) = (pos.apply(u), pos.apply(v));
    if !g.has_edge(up, vp) {
        return Err(ExchangeError::NotAnXEdge);
    }
    let (reach, search_nodes) = fs::exchange_search(g, h, t, u, v);
    let exchange = match reach {
        Reachability::Found(s) => Some(s),
        Reachability::CertifiedAbsent => None,
    };
    let structure = dichotomy_structure(g, h, t, u, v);
    Ok(DichotomyReport {
        m,
        exchange,
        structure,
        search_nodes,
    })
}

fn dichotomy_structure(g: &Graph, h: &Graph, t: &Bijection, u: usize, v: usize) -> Option<DichotomyStructure> {
    let m = g.n();
    let pos = t.inverse();
    let (up, vp) = (pos.apply(u), pos.apply(v));
    let sized = |c: &[usize]| 2 * m <= 7 * c.len() && 7 * c.len() <= 3 * m;
    let wilsonian = |c: &[usize]| wilson::classify(&g.induced(c)).status == WilsonStatus::Wilsonian;
    for w in h.neighbors(u).filter(|&w| h.has_edge(w, v)) {
        let wp = pos.apply(w);
        for xl in h.neighbors(w).filter(|&c| c != u && c != v) {
            let xp = pos.apply(xl);
            if !(g.has_edge(xp, up) && g.has_edge(xp, vp)) {
                continue;
            }
            for removed in [u, v] {
                let mut inside = vec![false; m];
                inside[wp] = true;
                for c in h.neighbors(w).filter(|&c| c != removed) {
                    inside[pos.apply(c)] = true;
                }
                let component = |s: usize| {
                    let mut seen = vec![false; m];
                    seen[s] = true;
                    let mut stack = vec![s];
                    while let Some(a) = stack.pop() {
                        for c in g.neighbors(a) {
                            if inside[c] && !seen[c] {
                                seen[c] = true;
                                stack.push(c);
                            }
                        }
                    }
                    (0..m).filter(|&a| seen[a]).collect::<Vec<_>>()
                };
                let c2 = component(wp);
                if c2.contains(&xp) {
                    continue;
                }
                let mut c1 = component(xp);
                c1.push(pos.apply(removed));
                c1.sort_unstable();
                let holds = c1.contains(&up)
                    && c1.contains(&vp)
                    && sized(&c1)
                    && sized(&c2)
                    && wilsonian(&c1)
                    && wilsonian(&c2);
                if holds {
                    return Some(DichotomyStructure {
                        w,
                        x: xl,
                        removed,
                        c1,
                        c2,
                    });
                }
            }
        }
    }
    None
}
