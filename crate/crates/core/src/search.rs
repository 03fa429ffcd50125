//! Branch-and-bound search for long snakes on small `n`, the octal encoding
//! of two-transition codes, and the 57-codeword Kendall snake over `A_5`
//! with its extension to a complete non-cyclic code.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{unit_neighbors, verify_codewords, verify_snake, GrayCode, Metric, SnakeReport};
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, Transition};

/// Largest `n` the search accepts.
pub const SEARCH_MAX_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub metric: Metric,
    pub cyclic: bool,
    /// Transition indices the code may use, each in `2..=n`.
    pub allowed: Vec<usize>,
    pub start: Permutation,
    /// Cap on explored search nodes; `None` searches exhaustively.
    pub node_budget: Option<u64>,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl SearchSpec {
    /// Cyclic search over all of `t_2, …, t_n` from the identity.
    pub fn new(n: usize, metric: Metric) -> Result<Self> {
        Ok(SearchSpec {
            n,
            metric,
            cyclic: true,
            allowed: (2..=n).collect(),
            start: Permutation::identity(n)?,
            node_budget: None,
            jobs: 1,
        })
    }

    fn validate(&self) -> Result<()> {
        if !(2..=SEARCH_MAX_ORDER).contains(&self.n) {
            return Err(Error::Unsupported(format!(
                "search order {} (2..={SEARCH_MAX_ORDER})",
                self.n
            )));
        }
        if self.start.len() != self.n {
            return Err(Error::StartLength {
                start: self.start.len(),
                n: self.n,
            });
        }
        if self.allowed.is_empty() {
            return Err(Error::Precondition("no allowed transitions".into()));
        }
        for &i in &self.allowed {
            Transition::new(i, self.n)?;
        }
        if self.jobs == 0 {
            return Err(Error::Precondition("jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub best: GrayCode,
    pub size: usize,
    /// No larger code exists under the spec.
    pub proven_optimal: bool,
    /// The whole tree (after pruning) was explored within the budget.
    pub exhausted: bool,
    pub nodes: u64,
}

/// A snake can hold at most one permutation from each class, so `n!/2` for
/// Kendall (pairs `σ`, `t_2 σ`) and `n!/2^⌊n/2⌋` for ℓ∞.
fn size_ceiling(n: usize, metric: Metric) -> usize {
    let total = factorial(n) as usize;
    match metric {
        Metric::Kendall => (total / 2).max(1),
        Metric::Linf => total >> (n / 2),
    }
}

/// Vertex-indexed view of `S_n` shared by all workers.
struct Graph {
    n: usize,
    metric: Metric,
    cyclic: bool,
    /// Allowed transition indices, ascending.
    allowed: Vec<usize>,
    /// `step[v][a]`: image of vertex `v` under `allowed[a]`.
    step: Vec<Vec<u16>>,
    /// Vertices at distance exactly 1.
    ball: Vec<Vec<u16>>,
    /// ℓ∞ only: class of each vertex under swaps of values `2k-1, 2k`.
    class: Vec<u32>,
    classes: usize,
    start: u16,
    /// Upper bound on the size of any snake.
    ceiling: usize,
}

impl Graph {
    fn new(spec: &SearchSpec) -> Graph {
        let n = spec.n;
        let total = factorial(n) as usize;
        let perms: Vec<Permutation> = (0..total as u64)
            .map(|r| Permutation::from_lex_rank(n, r).unwrap())
            .collect();
        let mut allowed = spec.allowed.clone();
        allowed.sort_unstable();
        allowed.dedup();
        let step = perms
            .iter()
            .map(|p| {
                allowed
                    .iter()
                    .map(|&i| {
                        let mut q = p.clone();
                        q.push_top_in_place(i);
                        q.lex_rank() as u16
                    })
                    .collect()
            })
            .collect();
        let ball = perms
            .iter()
            .map(|p| {
                unit_neighbors(p, spec.metric)
                    .iter()
                    .map(|q| q.lex_rank() as u16)
                    .collect()
            })
            .collect();

        let mut class = vec![u32::MAX; total];
        let mut classes = 0;
        if spec.metric == Metric::Linf {
            let pair_of = |v: u8| if v % 2 == 1 { v + 1 } else { v - 1 };
            for (r, p) in perms.iter().enumerate() {
                if class[r] != u32::MAX {
                    continue;
                }
                // canonical member: every paired value in increasing order
                let orbit = class_members(p, n, pair_of);
                for m in orbit {
                    class[m] = classes as u32;
                }
                classes += 1;
            }
        }
        Graph {
            n,
            metric: spec.metric,
            cyclic: spec.cyclic,
            allowed,
            step,
            ball,
            class,
            classes,
            start: spec.start.lex_rank() as u16,
            ceiling: size_ceiling(n, spec.metric),
        }
    }

    fn total(&self) -> usize {
        self.step.len()
    }

    /// Kendall edges meeting `v`, as `(other endpoint, edge id)`.
    fn edges(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.n - 1;
        self.ball[v].iter().enumerate().map(move |(j, &u)| {
            let u = u as usize;
            (u, v.min(u) * d + j)
        })
    }
}

/// All permutations obtained from `p` by exchanging any subset of the value
/// pairs `(1,2), (3,4), …`, as lexicographic ranks.
fn class_members(p: &Permutation, n: usize, pair_of: impl Fn(u8) -> u8) -> Vec<usize> {
    let pairs = n / 2;
    (0..1u32 << pairs)
        .map(|mask| {
            let v: Vec<u8> = p
                .values()
                .iter()
                .map(|&x| {
                    let k = (x as usize - 1) / 2;
                    if k < pairs && mask >> k & 1 == 1 {
                        pair_of(x)
                    } else {
                        x
                    }
                })
                .collect();
            Permutation::from_vec_unchecked(v).lex_rank() as usize
        })
        .collect()
}

/// Shared between workers: the best size found anywhere, and the earliest
/// subtree that reached the ceiling.
struct Shared {
    best: AtomicUsize,
    ceiling_hit: AtomicUsize,
    nodes: AtomicU64,
    budget: Option<u64>,
}

/// Per-worker search state.
struct Worker<'g> {
    g: &'g Graph,
    shared: &'g Shared,
    subtree: usize,
    /// Only positions `min_allowed..` of `g.allowed` may be used.
    min_allowed: usize,
    in_code: Vec<bool>,
    /// Number of codewords within distance ≤ 1.
    blocked: Vec<u16>,
    path: Vec<u16>,
    moves: Vec<u8>,
    /// Kendall: edges with no endpoint in the code and a free endpoint.
    free_edges: usize,
    /// ℓ∞: per class, whether it holds a codeword and how many members are free.
    class_used: Vec<bool>,
    class_free: Vec<u16>,
    open_classes: usize,
    /// Predecessors of the start under the usable transitions.
    closers: Vec<u16>,
    best: usize,
    best_moves: Vec<u8>,
    nodes: u64,
    out_of_budget: bool,
}

impl<'g> Worker<'g> {
    fn new(g: &'g Graph, shared: &'g Shared, subtree: usize, min_allowed: usize) -> Self {
        let total = g.total();
        let closers = (0..total)
            .filter(|&v| g.step[v][min_allowed..].contains(&g.start))
            .map(|v| v as u16)
            .collect();
        let mut w = Worker {
            g,
            shared,
            subtree,
            min_allowed,
            in_code: vec![false; total],
            blocked: vec![0; total],
            path: Vec::with_capacity(total),
            moves: Vec::with_capacity(total),
            free_edges: 0,
            class_used: vec![false; g.classes],
            class_free: vec![0; g.classes],
            open_classes: 0,
            closers,
            best: 0,
            best_moves: vec![],
            nodes: 0,
            out_of_budget: false,
        };
        match g.metric {
            Metric::Kendall => w.free_edges = total * (g.n - 1) / 2,
            Metric::Linf => {
                for v in 0..total {
                    w.class_free[g.class[v] as usize] += 1;
                }
                w.open_classes = g.classes;
            }
        }
        w
    }

    fn edge_counts(&self, u: usize, v: usize) -> bool {
        !self.in_code[u] && !self.in_code[v] && (self.blocked[u] == 0 || self.blocked[v] == 0)
    }

    fn affected_edges(&self, v: usize, buf: &mut Vec<(usize, usize, usize)>) {
        buf.clear();
        for x in std::iter::once(v).chain(self.g.ball[v].iter().map(|&u| u as usize)) {
            for (u, id) in self.g.edges(x) {
                buf.push((id, x, u));
            }
        }
        buf.sort_unstable();
        buf.dedup_by_key(|e| e.0);
    }

    fn count_edges(&self, buf: &[(usize, usize, usize)]) -> usize {
        buf.iter()
            .filter(|&&(_, a, b)| self.edge_counts(a, b))
            .count()
    }

    fn block(&mut self, u: usize) {
        if self.blocked[u] == 0 && self.g.metric == Metric::Linf {
            let c = self.g.class[u] as usize;
            if !self.class_used[c] && self.class_free[c] == 1 {
                self.open_classes -= 1;
            }
            self.class_free[c] -= 1;
        }
        self.blocked[u] += 1;
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] -= 1;
        if self.blocked[u] == 0 && self.g.metric == Metric::Linf {
            let c = self.g.class[u] as usize;
            self.class_free[c] += 1;
            if !self.class_used[c] && self.class_free[c] == 1 {
                self.open_classes += 1;
            }
        }
    }

    /// Adds `v` as a codeword; returns the saved bound counter for [`Self::pop`].
    fn push(&mut self, v: usize, buf: &mut Vec<(usize, usize, usize)>) -> usize {
        let saved = match self.g.metric {
            Metric::Kendall => {
                self.affected_edges(v, buf);
                let before = self.count_edges(buf);
                self.apply(v);
                let after = self.count_edges(buf);
                let saved = self.free_edges;
                self.free_edges = self.free_edges - before + after;
                saved
            }
            Metric::Linf => {
                let c = self.g.class[v] as usize;
                // v is free, so its class was open
                self.open_classes -= 1;
                self.class_used[c] = true;
                let saved = self.open_classes;
                self.apply(v);
                saved
            }
        };
        self.path.push(v as u16);
        saved
    }

    fn apply(&mut self, v: usize) {
        self.in_code[v] = true;
        self.block(v);
        for k in 0..self.g.ball[v].len() {
            self.block(self.g.ball[v][k] as usize);
        }
    }

    fn pop(&mut self, saved: usize) {
        let v = self.path.pop().unwrap() as usize;
        for k in 0..self.g.ball[v].len() {
            self.unblock(self.g.ball[v][k] as usize);
        }
        self.unblock(v);
        self.in_code[v] = false;
        match self.g.metric {
            Metric::Kendall => self.free_edges = saved,
            Metric::Linf => {
                let c = self.g.class[v] as usize;
                self.class_used[c] = false;
                self.open_classes = saved + 1;
            }
        }
    }

    /// Largest size any extension of the current path can reach.
    fn bound(&self) -> usize {
        let k = self.path.len();
        let extra = match self.g.metric {
            Metric::Kendall => self.free_edges / (self.g.n - 1).max(1),
            Metric::Linf => self.open_classes,
        };
        (k + extra).min(self.g.ceiling)
    }

    fn closes(&self, v: usize) -> Option<u8> {
        (self.min_allowed..self.g.allowed.len())
            .find(|&a| self.g.step[v][a] == self.g.start)
            .map(|a| a as u8)
    }

    fn record(&mut self, closing: Option<u8>) {
        let k = self.path.len();
        if k > self.best {
            self.best = k;
            self.best_moves = self.moves.clone();
            if let Some(a) = closing {
                self.best_moves.push(a);
            }
            self.shared.best.fetch_max(k, Ordering::Relaxed);
            if k >= self.g.ceiling {
                self.shared
                    .ceiling_hit
                    .fetch_min(self.subtree, Ordering::Relaxed);
            }
        }
    }

    fn record_if_complete(&mut self, v: usize) {
        if !self.g.cyclic {
            self.record(None);
        } else if self.path.len() >= 2 {
            if let Some(a) = self.closes(v) {
                self.record(Some(a));
            }
        }
    }

    fn should_stop(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        // an earlier subtree already holds a code no later one can beat
        if self.shared.ceiling_hit.load(Ordering::Relaxed) < self.subtree {
            return true;
        }
        if let Some(budget) = self.shared.budget {
            if self.shared.nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                self.out_of_budget = true;
                return true;
            }
        }
        false
    }

    fn dfs(&mut self, v: usize, buf: &mut Vec<(usize, usize, usize)>) {
        self.nodes += 1;
        if self.should_stop() {
            return;
        }
        self.record_if_complete(v);
        let bound = self.bound();
        if bound <= self.best || bound < self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        if self.g.cyclic
            && !self.closers.iter().any(|&c| {
                let c = c as usize;
                c == v || self.blocked[c] == 0
            })
        {
            return;
        }
        for a in self.min_allowed..self.g.allowed.len() {
            let w = self.g.step[v][a] as usize;
            if self.blocked[w] != 0 {
                continue;
            }
            let saved = self.push(w, buf);
            self.moves.push(a as u8);
            self.dfs(w, buf);
            self.moves.pop();
            self.pop(saved);
            if self.out_of_budget {
                return;
            }
        }
    }

    /// Replays `prefix` (positions into `allowed`) from the start, recording
    /// any complete code met before its last node. Returns the last node, or
    /// `None` if the prefix breaks the snake condition.
    fn replay(&mut self, prefix: &[u8], buf: &mut Vec<(usize, usize, usize)>) -> Option<usize> {
        let mut v = self.g.start as usize;
        self.push(v, buf);
        for &a in prefix {
            self.record_if_complete(v);
            let w = self.g.step[v][a as usize] as usize;
            if self.blocked[w] != 0 {
                return None;
            }
            self.push(w, buf);
            self.moves.push(a);
            v = w;
        }
        Some(v)
    }
}

/// Independent starting points for the workers, as `(min allowed position,
/// forced prefix)` in the order the sequential search would visit them.
fn subtrees(g: &Graph, jobs: usize) -> Vec<(usize, Vec<u8>)> {
    let k = g.allowed.len();
    // Kendall is invariant under relabelling values, so a cyclic code can be
    // rotated to begin with its smallest transition and relabelled to start at
    // the identity. ℓ∞ has no such symmetry.
    let roots: Vec<(usize, Vec<u8>)> = if g.cyclic && g.metric == Metric::Kendall {
        (0..k).map(|a| (a, vec![a as u8])).collect()
    } else {
        vec![(0, vec![])]
    };
    if jobs == 1 {
        return roots;
    }
    let depth = match k {
        1 => 0,
        2 => 6,
        3 => 4,
        _ => 3,
    };
    let mut out = vec![];
    for (min, prefix) in roots {
        let mut frontier = vec![prefix];
        for _ in 0..depth {
            frontier = frontier
                .into_iter()
                .flat_map(|p| {
                    (min..k).map(move |a| {
                        let mut q = p.clone();
                        q.push(a as u8);
                        q
                    })
                })
                .collect();
        }
        out.extend(frontier.into_iter().map(|p| (min, p)));
    }
    out
}

struct SubtreeResult {
    best: usize,
    moves: Vec<u8>,
    nodes: u64,
    out_of_budget: bool,
}

fn run_subtree(g: &Graph, shared: &Shared, idx: usize, min: usize, prefix: &[u8]) -> SubtreeResult {
    let mut w = Worker::new(g, shared, idx, min);
    let mut buf = Vec::new();
    if let Some(v) = w.replay(prefix, &mut buf) {
        w.dfs(v, &mut buf);
    }
    SubtreeResult {
        best: w.best,
        moves: w.best_moves,
        nodes: w.nodes,
        out_of_budget: w.out_of_budget,
    }
}

/// Longest snake reachable from `spec.start` by depth-first extension,
/// transitions tried in ascending order, pruned by counting bounds. Among the
/// longest codes the one with the lexicographically least transition
/// sequence is returned. Without a budget the result does not depend on the
/// number of workers.
pub fn longest_snake(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let g = Graph::new(spec);
    let shared = Shared {
        best: AtomicUsize::new(0),
        ceiling_hit: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        budget: spec.node_budget,
    };
    let roots = subtrees(&g, spec.jobs);
    let results: Vec<SubtreeResult> = if spec.jobs == 1 {
        roots
            .iter()
            .enumerate()
            .map(|(i, (min, p))| run_subtree(&g, &shared, i, *min, p))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| {
            roots
                .par_iter()
                .enumerate()
                .map(|(i, (min, p))| run_subtree(&g, &shared, i, *min, p))
                .collect()
        })
    };

    let nodes = results.iter().map(|r| r.nodes).sum();
    let out_of_budget = results.iter().any(|r| r.out_of_budget);
    // earliest subtree wins ties, matching the sequential visiting order
    let winner = results
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.best.cmp(&b.best).then(j.cmp(i)))
        .map(|(_, r)| r)
        .filter(|r| r.best > 0);

    let (best, size) = match winner {
        Some(r) => {
            let indices: Vec<usize> = r.moves.iter().map(|&a| g.allowed[a as usize]).collect();
            let code = GrayCode::from_indices(spec.start.clone(), &indices, spec.cyclic)?;
            (code, r.best)
        }
        None => (GrayCode::new(spec.start.clone(), vec![], false)?, 1),
    };
    let report = verify_snake(&best, spec.metric)?;
    if !report.valid || best.len() != size {
        return Err(Error::Construction(format!(
            "search produced an invalid code: {report:?}"
        )));
    }
    let exhausted = !out_of_budget;
    // Exhausting the tree proves optimality only where fixing the start loses
    // nothing; reaching the counting ceiling proves it outright.
    let symmetric = spec.metric == Metric::Kendall;
    let proven_optimal = size >= g.ceiling || (exhausted && symmetric);
    Ok(SearchResult {
        best,
        size,
        proven_optimal,
        exhausted,
        nodes,
    })
}

/// Computer-found cyclic ℓ∞ snakes meeting the `n!/2^⌊n/2⌋` bound, as
/// `(n, octal transitions, size)` for [`parse_octal_code`].
pub const LINF_OCTAL_CODES: [(usize, &str, usize); 3] = [
    (4, "55", 6),
    (5, "0212206063", 30),
    (6, "010204410222042124446130162347", 90),
];

/// Reads a code whose transitions are all `t_n` or `t_(n-1)` from octal
/// digits: each digit gives three bits, most significant first, with 0 for
/// `t_n` and 1 for `t_(n-1)`. The code starts at the identity and is cyclic.
pub fn parse_octal_code(n: usize, octal: &str) -> Result<GrayCode> {
    if n < 3 {
        return Err(Error::Octal(format!(
            "two distinct transitions need n ≥ 3, got {n}"
        )));
    }
    let mut indices = Vec::with_capacity(octal.len() * 3);
    for c in octal.trim().chars() {
        let d = c
            .to_digit(8)
            .ok_or_else(|| Error::Octal(format!("{c:?} is not an octal digit")))?;
        for shift in [2, 1, 0] {
            indices.push(if d >> shift & 1 == 1 { n - 1 } else { n });
        }
    }
    if indices.is_empty() {
        return Err(Error::Octal("empty string".into()));
    }
    let code = GrayCode::from_indices(Permutation::identity(n)?, &indices, true)?;
    code.expand()?;
    Ok(code)
}

/// Inverse of [`parse_octal_code`].
pub fn emit_octal_code(code: &GrayCode) -> Result<String> {
    let n = code.n();
    let idx = code.transition_indices();
    if !code.is_cyclic() || !code.start().is_identity() {
        return Err(Error::Octal(
            "only cyclic codes starting at the identity".into(),
        ));
    }
    if !idx.len().is_multiple_of(3) {
        return Err(Error::Octal(format!(
            "{} transitions is not a multiple of 3",
            idx.len()
        )));
    }
    idx.chunks(3)
        .map(|chunk| {
            chunk.iter().try_fold(0u32, |acc, &i| match i {
                i if i == n => Ok(acc << 1),
                i if i + 1 == n => Ok(acc << 1 | 1),
                _ => Err(Error::Octal(format!(
                    "t_{i} is neither t_{n} nor t_{}",
                    n - 1
                ))),
            })
        })
        .map(|d| d.map(|d| char::from_digit(d, 8).unwrap()))
        .collect()
}

/// Transitions of the 57-codeword cyclic Kendall snake on `S_5`: a 19-step
/// segment repeated three times from the identity.
pub fn a5_snake_transitions() -> Vec<usize> {
    let s1 = [3, 3, 5];
    let s2: Vec<usize> = [&s1[..], &s1[..], &[3, 5, 5]].concat();
    let s3: Vec<usize> = [&s2[..], &s2[..], &[5]].concat();
    s3.repeat(3)
}

/// The 57-codeword cyclic Kendall snake on `S_5`, expanded and checked.
pub fn a5_snake() -> Result<GrayCode> {
    let code = GrayCode::from_indices(Permutation::identity(5)?, &a5_snake_transitions(), true)?;
    if code.expand()?.len() != 57 {
        return Err(Error::Construction(
            "A_5 snake fixture does not have 57 codewords".into(),
        ));
    }
    Ok(code)
}

/// Summary of the 57-codeword fixture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A5Report {
    pub snake: SnakeReport,
    pub all_even: bool,
    /// Even permutations the code misses.
    pub complement: Vec<Permutation>,
}

pub fn verify_a5_snake() -> Result<A5Report> {
    let code = a5_snake()?;
    let words = code.expand()?;
    Ok(A5Report {
        snake: verify_codewords(&words, Metric::Kendall),
        all_even: words.iter().all(Permutation::is_even),
        complement: even_complement(&words, 5)?,
    })
}

fn even_complement(words: &[Permutation], n: usize) -> Result<Vec<Permutation>> {
    let mut present = vec![false; factorial(n) as usize];
    for w in words {
        present[w.lex_rank() as usize] = true;
    }
    Ok((0..factorial(n))
        .map(|r| Permutation::from_lex_rank(n, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.is_even() && !present[p.lex_rank() as usize])
        .collect())
}

/// Prepends the missing even permutations to a cyclic Kendall snake that
/// misses exactly three of them: starting at one of the three, two `t_3`
/// steps cover the others and a `t_5` lands on the cycle, which is then
/// followed once around. The result covers `A_5` and is not cyclic.
pub fn extend_to_complete(code: &GrayCode) -> Result<GrayCode> {
    let n = code.n();
    if n != 5 || !code.is_cyclic() {
        return Err(Error::Precondition("expects a cyclic code on S_5".into()));
    }
    let words = code.expand()?;
    let missing = even_complement(&words, n)?;
    if missing.len() != 3 || words.len() != 57 {
        return Err(Error::Precondition(format!(
            "expects 57 codewords missing 3 even permutations, got {} missing {}",
            words.len(),
            missing.len()
        )));
    }
    let t3 = Transition::new(3, n)?;
    let t5 = Transition::new(5, n)?;
    for s in &missing {
        let a = s.push_top(t3)?;
        let b = a.push_top(t3)?;
        if !(missing.contains(&a) && missing.contains(&b) && a != b && a != *s && b != *s) {
            continue;
        }
        let landing = b.push_top(t5)?;
        let Some(k) = words.iter().position(|w| *w == landing) else {
            continue;
        };
        let rotated = code.rotated(k)?;
        let mut indices = vec![3, 3, 5];
        let cycle = rotated.transition_indices();
        indices.extend_from_slice(&cycle[..cycle.len() - 1]);
        let out = GrayCode::from_indices(s.clone(), &indices, false)?;
        let report = verify_snake(&out, Metric::Kendall)?;
        if !report.valid {
            return Err(Error::Construction(format!(
                "extension is not a snake: {report:?}"
            )));
        }
        return Ok(out);
    }
    Err(Error::Precondition(
        "missing permutations do not form a t_3 chain ending one t_5 away from the code".into(),
    ))
}
