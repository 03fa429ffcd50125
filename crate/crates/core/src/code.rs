//! Gray codes over `S_n` driven by push-to-the-top transitions, and the
//! predicates used to certify them: distinctness, cyclic closure, the
//! snake (distance ≥ 2) property, rate and balance.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{factorial, kendall_unchecked, linf_unchecked, Permutation, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Kendall,
    Linf,
}

impl Metric {
    pub fn distance(self, a: &Permutation, b: &Permutation) -> Result<u32> {
        match self {
            Metric::Kendall => a.kendall_distance(b),
            Metric::Linf => a.linf_distance(b),
        }
    }

    fn distance_unchecked(self, a: &[u8], b: &[u8]) -> u32 {
        match self {
            Metric::Kendall => kendall_unchecked(a, b),
            Metric::Linf => linf_unchecked(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Kendall => "kendall",
            Metric::Linf => "linf",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kendall" | "K" => Ok(Metric::Kendall),
            "linf" | "inf" => Ok(Metric::Linf),
            other => Err(Error::Unsupported(format!("metric {other:?}"))),
        }
    }
}

/// A start permutation plus the transitions generating the rest of the code.
///
/// A cyclic code of size `M` stores `M` transitions, the last one being the
/// closure back to `start`; a non-cyclic code stores `M - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayCode {
    start: Permutation,
    transitions: Vec<Transition>,
    cyclic: bool,
}

impl GrayCode {
    pub fn new(start: Permutation, transitions: Vec<Transition>, cyclic: bool) -> Result<Self> {
        let n = start.len();
        for t in &transitions {
            Transition::new(t.index(), n)?;
        }
        if cyclic && transitions.is_empty() {
            return Err(Error::EmptyCyclic);
        }
        Ok(GrayCode {
            start,
            transitions,
            cyclic,
        })
    }

    pub fn from_indices(start: Permutation, indices: &[usize], cyclic: bool) -> Result<Self> {
        let transitions = indices.iter().map(|&i| Transition::raw(i)).collect();
        GrayCode::new(start, transitions, cyclic)
    }

    pub fn n(&self) -> usize {
        self.start.len()
    }

    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition_indices(&self) -> Vec<usize> {
        self.transitions.iter().map(|t| t.index()).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Number of codewords `M`.
    pub fn len(&self) -> usize {
        if self.cyclic {
            self.transitions.len()
        } else {
            self.transitions.len() + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Codewords in order, without any distinctness or closure check.
    pub fn codewords(&self) -> impl Iterator<Item = Permutation> + '_ {
        let steps = self.len() - 1;
        let mut cur = Some(self.start.clone());
        let mut idx = 0;
        std::iter::from_fn(move || {
            let out = cur.take()?;
            if idx < steps {
                let mut next = out.clone();
                next.push_top_in_place(self.transitions[idx].index());
                cur = Some(next);
                idx += 1;
            }
            Some(out)
        })
    }

    /// The `M` codewords, checked to be pairwise distinct and, for cyclic
    /// codes, to close back onto the start.
    pub fn expand(&self) -> Result<Vec<Permutation>> {
        let words: Vec<Permutation> = self.codewords().collect();
        let mut seen: HashMap<&Permutation, usize> = HashMap::with_capacity(words.len());
        for (j, w) in words.iter().enumerate() {
            if let Some(&i) = seen.get(w) {
                return Err(Error::DuplicateCodeword {
                    first: i,
                    second: j,
                });
            }
            seen.insert(w, j);
        }
        if self.cyclic {
            let mut last = words.last().expect("non-empty").clone();
            last.push_top_in_place(self.transitions.last().expect("cyclic").index());
            if last != self.start {
                return Err(Error::NotClosed);
            }
        }
        Ok(words)
    }

    /// Rotation of a cyclic code so that codeword `k` becomes the start.
    pub fn rotated(&self, k: usize) -> Result<GrayCode> {
        if !self.cyclic {
            return Err(Error::NotCyclic);
        }
        let k = k % self.len();
        let start = self.codewords().nth(k).expect("k < len");
        let mut transitions = self.transitions.clone();
        transitions.rotate_left(k);
        Ok(GrayCode {
            start,
            transitions,
            cyclic: true,
        })
    }
}

/// Outcome of checking the snake property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeReport {
    pub valid: bool,
    pub metric: Metric,
    pub size: usize,
    /// `None` when the code has fewer than two codewords.
    pub min_pairwise_distance: Option<u32>,
    /// Lowest-index pair of codewords closer than 2, if any.
    pub witness: Option<(usize, usize)>,
}

/// Exhaustive pairwise check of the snake property, adjacent codewords
/// included. Rows of the pair matrix are split across worker threads; the
/// reported witness is the lexicographically least violating pair.
pub fn verify_snake(code: &GrayCode, metric: Metric) -> Result<SnakeReport> {
    let words = code.expand()?;
    Ok(verify_codewords(&words, metric))
}

pub fn verify_codewords(words: &[Permutation], metric: Metric) -> SnakeReport {
    let rows: Vec<(u32, Option<usize>)> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let a = words[i].values();
            let mut row_min = u32::MAX;
            for (j, w) in words.iter().enumerate().skip(i + 1) {
                let d = metric.distance_unchecked(a, w.values());
                if d < 2 {
                    return (d, Some(j));
                }
                row_min = row_min.min(d);
            }
            (row_min, None)
        })
        .collect();

    let witness = rows
        .iter()
        .enumerate()
        .find_map(|(i, &(_, j))| j.map(|j| (i, j)));
    let min = match witness {
        Some((i, _)) => Some(rows[i].0),
        None => rows.iter().map(|r| r.0).min().filter(|&d| d != u32::MAX),
    };
    SnakeReport {
        valid: witness.is_none(),
        metric,
        size: words.len(),
        min_pairwise_distance: min,
        witness,
    }
}

/// Permutations at distance exactly 1 from `p`.
///
/// Kendall: the `n-1` adjacent transpositions of positions. ℓ∞: every
/// `f ∘ p` where `f` swaps one or more disjoint pairs of consecutive values.
pub fn unit_neighbors(p: &Permutation, metric: Metric) -> Vec<Permutation> {
    let n = p.len();
    match metric {
        Metric::Kendall => (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = p.values().to_vec();
                v.swap(i, i + 1);
                Permutation::from_vec_unchecked(v)
            })
            .collect(),
        Metric::Linf => {
            let mut out = Vec::new();
            let mut swaps = Vec::new();
            collect_value_matchings(1, n as u8, &mut swaps, &mut |pairs| {
                if pairs.is_empty() {
                    return;
                }
                out.push(p.map_values(|v| {
                    for &a in pairs {
                        if v == a {
                            return a + 1;
                        }
                        if v == a + 1 {
                            return a;
                        }
                    }
                    v
                }));
            });
            out
        }
    }
}

fn collect_value_matchings(from: u8, n: u8, acc: &mut Vec<u8>, emit: &mut impl FnMut(&[u8])) {
    if from >= n {
        emit(acc);
        return;
    }
    collect_value_matchings(from + 1, n, acc, emit);
    acc.push(from);
    collect_value_matchings(from + 2, n, acc, emit);
    acc.pop();
}

/// Snake check by hashing: for every codeword, look up its distance-1
/// neighbourhood among the codewords. Runs in `O(M · |ball|)` and is an
/// independent route to the same verdict as [`verify_snake`]; it reports no
/// minimum distance.
pub fn has_unit_distance_pair(words: &[Permutation], metric: Metric) -> Option<(usize, usize)> {
    let index: HashMap<&Permutation, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut best: Option<(usize, usize)> = None;
    for (i, w) in words.iter().enumerate() {
        for nb in unit_neighbors(w, metric) {
            if let Some(&j) = index.get(&nb) {
                let pair = (i.min(j), i.max(j));
                best = Some(best.map_or(pair, |b| b.min(pair)));
            }
        }
    }
    best
}

/// `log2 M / log2 n!`.
pub fn rate(code: &GrayCode) -> f64 {
    let total = factorial(code.n()) as f64;
    if total <= 1.0 {
        return 0.0;
    }
    (code.len() as f64).log2() / total.log2()
}

/// For each codeword, the number of steps until the next codeword (cyclically,
/// possibly itself after a full turn) with the same top element; returns the
/// maximum over the code.
pub fn balance_gap(code: &GrayCode) -> Result<usize> {
    if !code.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let words = code.expand()?;
    let m = words.len();
    let mut first: HashMap<u8, usize> = HashMap::new();
    let mut last: HashMap<u8, usize> = HashMap::new();
    let mut gap = 0;
    for (k, w) in words.iter().enumerate() {
        let top = w.at(1);
        if let Some(prev) = last.insert(top, k) {
            gap = gap.max(k - prev);
        }
        first.entry(top).or_insert(k);
    }
    for (top, &l) in &last {
        gap = gap.max(first[top] + m - l);
    }
    Ok(gap)
}

/// The `n - 1` permutations differing from `p` by one adjacent transposition.
pub fn adjacent_transpositions(p: &Permutation) -> Vec<Permutation> {
    unit_neighbors(p, Metric::Kendall)
}

/// Largest order the breadth-first oracle accepts.
pub const BFS_MAX_ORDER: usize = 6;

/// Shortest-path distances from `source` in the graph on `S_n` whose edges are
/// given by `neighbors`.
pub fn bfs_distances(
    source: &Permutation,
    neighbors: impl Fn(&Permutation) -> Vec<Permutation>,
) -> Result<HashMap<Permutation, usize>> {
    if source.len() > BFS_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "breadth-first search on S_{} (limit {BFS_MAX_ORDER})",
            source.len()
        )));
    }
    let mut dist = HashMap::new();
    dist.insert(source.clone(), 0);
    let mut queue = VecDeque::from([source.clone()]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        for nb in neighbors(&cur) {
            if !dist.contains_key(&nb) {
                dist.insert(nb.clone(), d + 1);
                queue.push_back(nb);
            }
        }
    }
    Ok(dist)
}

/// Shortest-path length between `alpha` and `beta`; errors if `beta` is
/// unreachable.
pub fn bfs_distance(
    alpha: &Permutation,
    beta: &Permutation,
    neighbors: impl Fn(&Permutation) -> Vec<Permutation>,
) -> Result<usize> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: beta.len(),
        });
    }
    bfs_distances(alpha, neighbors)?
        .get(beta)
        .copied()
        .ok_or_else(|| Error::Precondition(format!("{beta} is unreachable from {alpha}")))
}
