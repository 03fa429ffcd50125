//! Recursive cyclic Kendall-τ snakes over the alternating group `A_N`, `N`
//! odd, using only push-to-the-top operations on odd indices.
//!
//! Write `N = 2h + 1`. The code `C_N` is assembled from `2h - 1` sub-cycles
//! `C^(j)`, one per choice of the element `a_j` sitting next to the value 1.
//! Each sub-cycle replays `C_(N-2)` as push-to-the-bottom moves on the last
//! `N - 2` positions of `[1, a_j, 3, a_(j+1), …]`, every push-to-the-bottom
//! being rewritten as `t_(N+1-k)` followed by `2h` copies of `t_N`. The
//! sub-cycles are entered two steps in and stitched together with `t_3`.
//!
//! The auxiliary values are `a_0 = 2`, `a_i = i + 3`, so `{a_i} = [N] \ {1, 3}`
//! with the index inverse `ind`. Ranks count from the first codeword of
//! [`build_ksnake`], whose `N = 3` base is `[1,2,3], [3,1,2], [2,3,1]`.

use crate::code::GrayCode;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Transition, MAX_ORDER};

/// Largest `N` for which [`build_ksnake`] materialises the code (`M_9 = 99225`).
pub const KSNAKE_BUILD_MAX: usize = 9;
/// Largest `N` accepted by the rank, unrank and successor functions.
pub const KSNAKE_MAX: usize = MAX_ORDER - 1;

const FAMILY: &str = "the K-snake";

const BASE: [[u8; 3]; 3] = [[1, 2, 3], [3, 1, 2], [2, 3, 1]];

fn check_order(n: usize, max: usize) -> Result<usize> {
    if n < 3 || n > max || n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "K-snake length {n} (odd, 3..={max})"
        )));
    }
    Ok((n - 1) / 2)
}

/// `M_N`: `M_3 = 3`, `M_N = (N-2) · N · M_(N-2)`.
pub fn ksnake_size(n: usize) -> Result<u64> {
    let h = check_order(n, KSNAKE_MAX)?;
    Ok(size_h(h))
}

fn size_h(h: usize) -> u64 {
    (2..=h as u64).fold(3, |m, k| m * (2 * k - 1) * (2 * k + 1))
}

/// `a_i` for half-order `h`, `0 ≤ i < 2h - 1`.
#[inline]
fn a(i: usize) -> u8 {
    if i == 0 {
        2
    } else {
        (i + 3) as u8
    }
}

/// Inverse of [`a`].
#[inline]
fn ind(b: u8) -> usize {
    if b == 2 {
        0
    } else {
        b as usize - 3
    }
}

/// Relabels an element of the tail of a sub-cycle `j` permutation into the
/// alphabet of the half-order `h - 1` code.
fn down(h: usize, j: usize, b: u8) -> u8 {
    let m = 2 * h - 1;
    if b == 3 {
        1
    } else if ind(b) == (j + 1) % m {
        3
    } else {
        a((j + 2 * m - ind(b) - 1) % m)
    }
}

/// Inverse of [`down`].
fn up(h: usize, j: usize, b: u8) -> u8 {
    let m = 2 * h - 1;
    match b {
        1 => 3,
        3 => a((j + 1) % m),
        _ => a((j + 2 * m - ind(b) - 1) % m),
    }
}

/// Rank, within the half-order `h - 1` code, of the relabelled tail of every
/// sub-cycle origin `[1, a_j, 3, a_(j+1), …]`, namely `[a_0, …, a_(2h-4), 3, 1]`.
///
/// This is `2(h-1) - 2` for `h ≥ 3`. The base code starts at `[1,2,3]`, which
/// puts `[2,3,1]` at rank 2 rather than 0, hence the special case.
fn subcode_origin(h: usize) -> u64 {
    if h == 2 {
        2
    } else {
        2 * h as u64 - 4
    }
}

/// Origin `[1, a_j, 3, a_(j+1), …, a_(j+2h-2)]` of sub-cycle `j`.
fn subcycle_origin(h: usize, j: usize) -> Vec<u8> {
    let m = 2 * h - 1;
    let mut v = vec![1, a(j), 3];
    v.extend((1..m).map(|s| a((j + s) % m)));
    v
}

fn transitions_h(h: usize) -> Vec<u8> {
    if h == 1 {
        return vec![3, 3, 3];
    }
    let n = (2 * h + 1) as u8;
    let mut prev = transitions_h(h - 1);
    let origin = subcode_origin(h) as usize;
    prev.rotate_left(origin);
    assert_eq!(
        prev[0] as usize,
        2 * h - 1,
        "sub-code must leave its origin by its last index"
    );

    let mut mirrored = Vec::with_capacity(prev.len() * n as usize);
    for &k in &prev {
        mirrored.push(n + 1 - k);
        mirrored.extend(std::iter::repeat_n(n, 2 * h));
    }
    // enter each sub-cycle at its third element, leave through the first two,
    // then step into the next sub-cycle with t_3
    let mut column = mirrored[2..].to_vec();
    column.push(mirrored[0]);
    column.push(3);

    let columns = 2 * h - 1;
    let mut out = Vec::with_capacity(column.len() * columns);
    for _ in 0..columns {
        out.extend_from_slice(&column);
    }
    out
}

/// First codeword: the third element of sub-cycle 0.
fn start_h(h: usize) -> Vec<u8> {
    if h == 1 {
        return BASE[0].to_vec();
    }
    let n = 2 * h + 1;
    let mut v = subcycle_origin(h, 0);
    v[..3].rotate_right(1);
    v[..n].rotate_right(1);
    v
}

/// The cyclic `(N, M_N)` K-snake for odd `3 ≤ N ≤ 9`.
pub fn build_ksnake(n: usize) -> Result<GrayCode> {
    let h = check_order(n, KSNAKE_BUILD_MAX)?;
    for j in 0..2 * h - 1 {
        let origin = Permutation::new(subcycle_origin(h, j))?;
        if h > 1 && !origin.is_even() {
            return Err(Error::Construction(format!(
                "sub-cycle origin {origin} is odd"
            )));
        }
    }
    let start = Permutation::new(start_h(h))?;
    let indices: Vec<usize> = transitions_h(h).into_iter().map(usize::from).collect();
    GrayCode::from_indices(start, &indices, true)
}

fn rank_h(h: usize, v: &[u8]) -> Option<u64> {
    if h == 1 {
        return BASE.iter().position(|b| b == v).map(|k| k as u64);
    }
    let n = 2 * h + 1;
    let m = 2 * h - 1;
    let one = v.iter().position(|&x| x == 1)?;
    let after = v[(one + 1) % n];
    if after == 1 || after == 3 || ind(after) >= m {
        return None;
    }
    let col = ind(after);
    // tail of the rotation that puts 1 first, read backwards
    let tail: Vec<u8> = (1..=m)
        .map(|l| down(h, col, v[(one + n - l) % n]))
        .collect();
    let sub_size = size_h(h - 1);
    let state = (rank_h(h - 1, &tail)? + sub_size - subcode_origin(h)) % sub_size;

    let n64 = n as u64;
    let offset = one as u64;
    let idx = if offset == 0 {
        state * n64
    } else {
        ((state + sub_size - 1) % sub_size) * n64 + offset
    };
    let col_len = n64 * sub_size;
    Some(col as u64 * col_len + (idx + col_len - 2) % col_len)
}

fn unrank_h(h: usize, k: u64) -> Vec<u8> {
    if h == 1 {
        return BASE[k as usize].to_vec();
    }
    let n = 2 * h + 1;
    let n64 = n as u64;
    let sub_size = size_h(h - 1);
    let col_len = n64 * sub_size;
    let col = (k / col_len) as usize;
    let idx = (k % col_len + 2) % col_len;
    let (s, offset) = (idx / n64, (idx % n64) as usize);
    let state = if offset == 0 { s } else { (s + 1) % sub_size };
    let sub = unrank_h(h - 1, (state + subcode_origin(h)) % sub_size);

    let mut v = Vec::with_capacity(n);
    v.push(1);
    v.push(a(col));
    v.extend(sub.iter().rev().map(|&b| up(h, col, b)));
    debug_assert_eq!(v.len(), n);
    v.rotate_right(offset);
    v
}

fn successor_h(h: usize, v: &[u8]) -> usize {
    if h == 1 {
        return 3;
    }
    let n = 2 * h + 1;
    let m = 2 * h - 1;
    if v[0] == 3 && v[1] == 1 && (2..n - 1).all(|i| (ind(v[i + 1]) + m - ind(v[i])) % m == 1) {
        return 3;
    }
    if v[0] == 1 {
        let j = ind(v[1]);
        let tail: Vec<u8> = v[2..].iter().rev().map(|&b| down(h, j, b)).collect();
        return 2 * h + 2 - successor_h(h - 1, &tail);
    }
    n
}

/// Rank of `sigma` in the K-snake of its length.
pub fn rank_k(sigma: &Permutation) -> Result<u64> {
    let h = check_order(sigma.len(), KSNAKE_MAX)?;
    let not_member = || Error::NotACodeword {
        perm: sigma.to_string(),
        family: FAMILY,
    };
    let k = rank_h(h, sigma.values()).ok_or_else(not_member)?;
    if k >= size_h(h) || unrank_h(h, k) != sigma.values() {
        return Err(not_member());
    }
    Ok(k)
}

/// Codeword of rank `k` in the K-snake of length `n`.
pub fn unrank_k(n: usize, k: u64) -> Result<Permutation> {
    let h = check_order(n, KSNAKE_MAX)?;
    let size = size_h(h);
    if k >= size {
        return Err(Error::RankOutOfRange { rank: k, size });
    }
    Ok(Permutation::from_vec_unchecked(unrank_h(h, k)))
}

/// Transition from `sigma` to the next codeword. Always an odd index.
pub fn successor_k(sigma: &Permutation) -> Result<Transition> {
    rank_k(sigma)?;
    let h = (sigma.len() - 1) / 2;
    Ok(Transition::raw(successor_h(h, sigma.values())))
}
