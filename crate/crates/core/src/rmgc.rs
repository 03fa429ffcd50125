//! Complete cyclic rank-modulation Gray codes (all of `S_n` visited by
//! push-to-the-top steps) with tabulated successor, rank and unrank.

use crate::code::GrayCode;
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, Transition};

pub const RMGC_MAX_ORDER: usize = 8;

/// A complete cyclic `n`-RMGC normalised so that rank 0 is the identity and
/// the closing transition (from the last codeword back to the identity) is
/// `t_2`. Every transition of the code is stored, so lookups are `O(n)`.
#[derive(Clone, Debug)]
pub struct RmgcTable {
    code: GrayCode,
    words: Vec<Permutation>,
    /// Indexed by lexicographic rank of the permutation.
    rank_by_lex: Vec<u32>,
}

impl RmgcTable {
    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn code(&self) -> &GrayCode {
        &self.code
    }

    pub fn size(&self) -> u64 {
        self.words.len() as u64
    }

    pub fn rank(&self, sigma: &Permutation) -> Result<u64> {
        self.check_len(sigma)?;
        Ok(self.rank_by_lex[sigma.lex_rank() as usize] as u64)
    }

    pub fn unrank(&self, k: u64) -> Result<Permutation> {
        self.words
            .get(k as usize)
            .cloned()
            .ok_or(Error::RankOutOfRange {
                rank: k,
                size: self.size(),
            })
    }

    /// Transition from `sigma` to its cyclic successor.
    pub fn succ(&self, sigma: &Permutation) -> Result<Transition> {
        let k = self.rank(sigma)?;
        self.transition_at(k)
    }

    /// Transition leaving the codeword of rank `k`.
    pub fn transition_at(&self, k: u64) -> Result<Transition> {
        if !self.code.is_cyclic() {
            return Err(Error::Unsupported("successor in S_1".into()));
        }
        self.code
            .transitions()
            .get(k as usize)
            .copied()
            .ok_or(Error::RankOutOfRange {
                rank: k,
                size: self.size(),
            })
    }

    fn check_len(&self, sigma: &Permutation) -> Result<()> {
        if sigma.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: sigma.len(),
                right: self.n(),
            });
        }
        Ok(())
    }
}

/// Builds the table for order `n` (`1 ≤ n ≤ 8`).
///
/// The transitions come from the recursive expansion (each `t_j` of the
/// `(n-1)`-code becomes `t_n^(n-1), t_(n-j+1)`). The result is validated for
/// completeness, cyclicity and the presence of `t_2` and `t_n`; if validation
/// fails, [`search_complete_rmgc`] takes over.
pub fn build_rmgc(n: usize) -> Result<RmgcTable> {
    if n == 0 || n > RMGC_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "RMGC of order {n} (1..={RMGC_MAX_ORDER})"
        )));
    }
    if n == 1 {
        let code = GrayCode::new(Permutation::identity(1)?, vec![], false)?;
        return Ok(RmgcTable {
            words: code.expand()?,
            code,
            rank_by_lex: vec![0],
        });
    }
    let recursive = recursive_transitions(n);
    let transitions = if is_valid_complete(n, &recursive) {
        recursive
    } else {
        search_complete_rmgc(n)
            .filter(|t| is_valid_complete(n, t))
            .ok_or_else(|| {
                Error::Construction(format!("no complete cyclic {n}-RMGC found by search"))
            })?
    };
    table_from_transitions(n, &transitions)
}

/// Transition indices of the recursive construction, starting from the
/// complete 2-RMGC `(t_2, t_2)`.
pub fn recursive_transitions(n: usize) -> Vec<usize> {
    let mut code = vec![2, 2];
    for m in 3..=n {
        code = code
            .iter()
            .flat_map(|&j| std::iter::repeat_n(m, m - 1).chain(std::iter::once(m - j + 1)))
            .collect();
    }
    code
}

/// True if the transitions, applied cyclically from the identity, visit all
/// of `S_n` once, close up, and use both `t_2` and `t_n`.
pub fn is_valid_complete(n: usize, transitions: &[usize]) -> bool {
    let total = factorial(n) as usize;
    if transitions.len() != total {
        return false;
    }
    if n >= 2 && !(transitions.contains(&2) && transitions.contains(&n)) {
        return false;
    }
    let Ok(code) =
        Permutation::identity(n).and_then(|start| GrayCode::from_indices(start, transitions, true))
    else {
        return false;
    };
    code.expand().is_ok()
}

fn table_from_transitions(n: usize, transitions: &[usize]) -> Result<RmgcTable> {
    let raw = GrayCode::from_indices(Permutation::identity(n)?, transitions, true)?;
    let raw_words = raw.expand()?;
    let m = raw_words.len();

    // Enter the cycle at a codeword reached by t_2, then relabel values so that
    // codeword becomes the identity. Push-to-the-top acts on positions, so
    // relabelling keeps the transition sequence intact.
    let entry = (0..m)
        .find(|&k| transitions[(k + m - 1) % m] == 2)
        .ok_or_else(|| Error::Construction("RMGC lacks t_2".into()))?;
    let relabel = raw_words[entry].inverse();
    let mut rotated = transitions.to_vec();
    rotated.rotate_left(entry);
    let words: Vec<Permutation> = (0..m)
        .map(|k| {
            relabel
                .compose(&raw_words[(entry + k) % m])
                .expect("same length")
        })
        .collect();

    let code = GrayCode::from_indices(Permutation::identity(n)?, &rotated, true)?;
    let mut rank_by_lex = vec![u32::MAX; m];
    for (k, w) in words.iter().enumerate() {
        rank_by_lex[w.lex_rank() as usize] = k as u32;
    }
    if rank_by_lex.contains(&u32::MAX) || code.codewords().ne(words.iter().cloned()) {
        return Err(Error::Construction(format!(
            "normalised {n}-RMGC is not complete"
        )));
    }
    Ok(RmgcTable {
        code,
        words,
        rank_by_lex,
    })
}

/// Finds a Hamiltonian cycle of `S_n` under push-to-the-top moves that uses
/// `t_2` and `t_n`, independently of the recursive expansion.
///
/// Start from the cycle cover in which every permutation takes `t_n` (the
/// orbits of `t_n`, each of length `n`). Redirecting a set of vertices to a
/// different generator keeps a cycle cover whenever the set is closed under
/// `g = t_n^(-1) t_k`; if the set meets pairwise distinct cycles, they merge
/// into one. For `k = 2`, `g` moves the second entry to the end (orbits of
/// size `n - 1`); for `k = n - 1`, `g` swaps the last two entries (orbits of
/// size 2). One `t_2` orbit is merged first, then `t_(n-1)` pairs greedily.
/// Returns the transition indices from the identity, or `None` if the greedy
/// joins leave more than one cycle.
pub fn search_complete_rmgc(n: usize) -> Option<Vec<usize>> {
    if !(2..=RMGC_MAX_ORDER).contains(&n) {
        return None;
    }
    if n == 2 {
        return Some(vec![2, 2]);
    }
    let total = factorial(n) as usize;
    let perms: Vec<Permutation> = (0..total as u64)
        .map(|r| Permutation::from_lex_rank(n, r).unwrap())
        .collect();
    let image = |f: &dyn Fn(&mut Vec<u8>)| -> Vec<usize> {
        perms
            .iter()
            .map(|p| {
                let mut v = p.values().to_vec();
                f(&mut v);
                Permutation::from_vec_unchecked(v).lex_rank() as usize
            })
            .collect()
    };
    let push = |k: usize| image(&move |v: &mut Vec<u8>| v[..k].rotate_right(1));
    let steps = [push(2), push(n - 1), push(n)];
    let second_to_end = image(&|v: &mut Vec<u8>| v[1..].rotate_left(1));
    let swap_last = image(&|v: &mut Vec<u8>| v.swap(n - 2, n - 1));

    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in 0..total {
        let (rv, rw) = (find(&mut parent, v), find(&mut parent, steps[2][v]));
        parent[rv] = rw;
    }

    // choice[v] indexes `steps`
    let mut choice = vec![2u8; total];
    let mut try_join = |orbit: &[usize], gen: u8, choice: &mut Vec<u8>| -> bool {
        if orbit.iter().any(|&w| choice[w] != 2) {
            return false;
        }
        let mut roots: Vec<usize> = orbit.iter().map(|&w| find(&mut parent, w)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() != orbit.len() {
            return false;
        }
        for &w in orbit {
            choice[w] = gen;
        }
        for &r in &roots[1..] {
            parent[r] = roots[0];
        }
        true
    };

    for v in 0..total {
        let mut orbit = vec![v];
        let mut w = second_to_end[v];
        while w != v {
            orbit.push(w);
            w = second_to_end[w];
        }
        if try_join(&orbit, 0, &mut choice) {
            break;
        }
    }
    for v in 0..total {
        try_join(&[v, swap_last[v]], 1, &mut choice);
    }

    let labels = [2, n - 1, n];
    let mut path = Vec::with_capacity(total);
    let mut v = 0;
    loop {
        let c = choice[v] as usize;
        path.push(labels[c]);
        v = steps[c][v];
        if v == 0 {
            break;
        }
    }
    (path.len() == total && path.contains(&2) && path.contains(&n)).then_some(path)
}
