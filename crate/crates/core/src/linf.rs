//! Cyclic ℓ∞ snakes built from blocks of push-to-the-top moves.
//!
//! Values split by parity into a *block* class and an *outer* class. In the
//! default (odd-top) variant the block class is the `q = ⌊n/2⌋` even values
//! and the outer class the `p = ⌈n/2⌉` odd values; the even-top variant swaps
//! the two. A block starts from `[x, e_1, …, e_q, rest]` with `x` an outer
//! value, pushes `x` through the block values with `q` copies of `t_(q+1)`,
//! and then runs a complete `(q-1)`-RMGC on the first `q - 1` positions
//! (closing `t_2` omitted). Consecutive blocks are joined by `t_(q+s)`, where
//! `t_s` is the step of a complete `p`-RMGC acting on the outer values.
//!
//! Code size is `p! · (q + (q-1)!)`. Within a block the leading pair of block
//! values ends up swapped when `q ≥ 3`, so odd-numbered blocks see their
//! block values with the two smallest exchanged.

use crate::code::{verify_snake, GrayCode, Metric};
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, Transition};
use crate::rmgc::{build_rmgc, RmgcTable, RMGC_MAX_ORDER};

pub const LINF_MIN_ORDER: usize = 4;
pub const LINF_MAX_ORDER: usize = 10;

const FAMILY: &str = "the ℓ∞ snake";

/// Which parity class takes the role of the pushed (outer) values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Odd values are pushed through blocks of even values.
    #[default]
    OddTop,
    /// Even values are pushed through blocks of odd values.
    EvenTop,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::OddTop => "odd-top",
            Variant::EvenTop => "even-top",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "odd-top" | "odd" => Ok(Variant::OddTop),
            "even-top" | "even" => Ok(Variant::EvenTop),
            _ => Err(Error::Unsupported(format!(
                "variant {s:?} (odd-top or even-top)"
            ))),
        }
    }
}

/// `p! · (q + (q-1)!)` for the default variant, with `p` and `q` swapped for
/// the even-top one.
pub fn linf_size(n: usize, variant: Variant) -> Result<u64> {
    let (nb, no) = split(n, variant)?;
    Ok(factorial(no) * (nb as u64 + factorial(nb - 1)))
}

fn split(n: usize, variant: Variant) -> Result<(usize, usize)> {
    if !(LINF_MIN_ORDER..=LINF_MAX_ORDER).contains(&n) {
        return Err(Error::Unsupported(format!(
            "ℓ∞ snake length {n} ({LINF_MIN_ORDER}..={LINF_MAX_ORDER})"
        )));
    }
    let (p, q) = (n.div_ceil(2), n / 2);
    Ok(match variant {
        Variant::OddTop => (q, p),
        Variant::EvenTop => (p, q),
    })
}

/// The tables and parameters behind one ℓ∞ snake, with successor, rank and
/// unrank against its enumeration (rank 0 is the start `σ_0`).
#[derive(Clone, Debug)]
pub struct LinfSnake {
    n: usize,
    variant: Variant,
    /// Number of block values (`q` in the odd-top variant).
    nb: usize,
    /// Number of outer values (`p` in the odd-top variant).
    no: usize,
    outer: RmgcTable,
    inner: RmgcTable,
}

impl LinfSnake {
    pub fn new(n: usize, variant: Variant) -> Result<Self> {
        let (nb, no) = split(n, variant)?;
        debug_assert!(no <= RMGC_MAX_ORDER && nb - 1 <= RMGC_MAX_ORDER);
        Ok(LinfSnake {
            n,
            variant,
            nb,
            no,
            outer: build_rmgc(no)?,
            inner: build_rmgc(nb - 1)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Codewords per block.
    pub fn block_size(&self) -> u64 {
        self.nb as u64 + self.inner.size()
    }

    pub fn size(&self) -> u64 {
        self.outer.size() * self.block_size()
    }

    fn outer_is_odd(&self) -> bool {
        self.variant == Variant::OddTop
    }

    fn is_outer(&self, v: u8) -> bool {
        (v % 2 == 1) == self.outer_is_odd()
    }

    /// Maps a value of either class to its 1-based index within the class.
    fn norm(&self, v: u8) -> u8 {
        if v % 2 == 1 {
            v.div_ceil(2)
        } else {
            v / 2
        }
    }

    fn outer_value(&self, k: u8) -> u8 {
        if self.outer_is_odd() {
            2 * k - 1
        } else {
            2 * k
        }
    }

    fn block_value(&self, k: u8) -> u8 {
        if self.outer_is_odd() {
            2 * k
        } else {
            2 * k - 1
        }
    }

    /// Whether the two smallest block values are exchanged in block `r`.
    fn swapped(&self, r: u64) -> bool {
        self.nb >= 3 && r % 2 == 1
    }

    /// Swaps labels 1 and 2 when `on`; an involution.
    fn sw(on: bool, k: u8) -> u8 {
        match (on, k) {
            (true, 1) => 2,
            (true, 2) => 1,
            _ => k,
        }
    }

    pub fn start(&self) -> Permutation {
        let mut v = vec![self.outer_value(1)];
        v.extend((1..=self.nb as u8).map(|k| self.block_value(k)));
        v.extend((2..=self.no as u8).map(|k| self.outer_value(k)));
        Permutation::from_vec_unchecked(v)
    }

    /// The whole cyclic code, checked pairwise under ℓ∞ before it is returned.
    pub fn build(&self) -> Result<GrayCode> {
        let code = self.build_unchecked()?;
        let report = verify_snake(&code, Metric::Linf)?;
        if !report.valid {
            return Err(Error::Construction(format!(
                "ℓ∞ snake for n = {} has codewords {:?} at distance {:?}",
                self.n, report.witness, report.min_pairwise_distance
            )));
        }
        Ok(code)
    }

    fn build_unchecked(&self) -> Result<GrayCode> {
        let inner = self.inner.code().transition_indices();
        let inner_steps = &inner[..inner.len().saturating_sub(1)];
        let mut transitions = Vec::with_capacity(self.size() as usize);
        for r in 0..self.outer.size() {
            transitions.extend(std::iter::repeat_n(self.nb + 1, self.nb));
            transitions.extend_from_slice(inner_steps);
            transitions.push(self.nb + self.outer.transition_at(r)?.index());
        }
        GrayCode::from_indices(self.start(), &transitions, true)
    }

    fn not_member(&self, sigma: &Permutation) -> Error {
        Error::NotACodeword {
            perm: sigma.to_string(),
            family: FAMILY,
        }
    }

    /// Normalised outer values read from `vals`, as a permutation of `[p]`.
    fn outer_order(&self, vals: impl Iterator<Item = u8>) -> Option<Permutation> {
        let v: Vec<u8> = vals.map(|x| self.norm(x)).collect();
        Permutation::new(v).ok().filter(|p| p.len() == self.no)
    }

    fn rank_unchecked(&self, sigma: &Permutation) -> Option<u64> {
        let v = sigma.values();
        let nb = self.nb;
        let bs = self.block_size();
        if !v.iter().all(|&x| (x as usize) <= self.n) || v.len() != self.n {
            return None;
        }
        if !self.is_outer(v[nb]) {
            // push phase: the outer value x is somewhere in the first nb positions
            let i = v[..nb].iter().position(|&x| self.is_outer(x))?;
            let order =
                self.outer_order(std::iter::once(v[i]).chain(v[nb + 1..].iter().copied()))?;
            let r = self.outer.rank(&order).ok()?;
            return Some(r * bs + i as u64);
        }
        let order = self.outer_order(v[nb..].iter().copied())?;
        let r = self.outer.rank(&order).ok()?;
        let on = self.swapped(r);
        let lead: Vec<u8> = v[..nb - 1]
            .iter()
            .map(|&x| Self::sw(on, self.norm(x)))
            .collect();
        let inner = Permutation::new(lead).ok()?;
        if inner.len() != nb - 1 {
            return None;
        }
        Some(r * bs + nb as u64 + self.inner.rank(&inner).ok()?)
    }

    fn unrank_unchecked(&self, k: u64) -> Permutation {
        let nb = self.nb;
        let bs = self.block_size();
        let (r, off) = (k / bs, k % bs);
        let order = self.outer.unrank(r).expect("block index in range");
        let on = self.swapped(r);
        let block: Vec<u8> = (1..=nb as u8)
            .map(|k| self.block_value(Self::sw(on, k)))
            .collect();
        let x = self.outer_value(order.at(1));
        let mut v = Vec::with_capacity(self.n);
        if (off as usize) < nb {
            let i = off as usize;
            v.extend_from_slice(&block[nb - i..]);
            v.push(x);
            v.extend_from_slice(&block[..nb - i]);
        } else {
            let inner = self.inner.unrank(off - nb as u64).expect("offset in range");
            v.extend(inner.values().iter().map(|&j| block[j as usize - 1]));
            v.push(block[nb - 1]);
            v.push(x);
        }
        v.extend(order.values()[1..].iter().map(|&k| self.outer_value(k)));
        Permutation::from_vec_unchecked(v)
    }

    pub fn rank(&self, sigma: &Permutation) -> Result<u64> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch {
                left: sigma.len(),
                right: self.n,
            });
        }
        match self.rank_unchecked(sigma) {
            Some(k) if k < self.size() && self.unrank_unchecked(k) == *sigma => Ok(k),
            _ => Err(self.not_member(sigma)),
        }
    }

    pub fn unrank(&self, k: u64) -> Result<Permutation> {
        if k >= self.size() {
            return Err(Error::RankOutOfRange {
                rank: k,
                size: self.size(),
            });
        }
        Ok(self.unrank_unchecked(k))
    }

    /// Transition leading from `sigma` to the next codeword.
    pub fn successor(&self, sigma: &Permutation) -> Result<Transition> {
        self.rank(sigma)?;
        let v = sigma.values();
        let nb = self.nb;
        if !self.is_outer(v[nb]) {
            return Ok(Transition::raw(nb + 1));
        }
        let order = self.outer_order(v[nb..].iter().copied()).expect("member");
        let r = self.outer.rank(&order)?;
        let on = self.swapped(r);
        let lead: Vec<u8> = v[..nb - 1]
            .iter()
            .map(|&x| Self::sw(on, self.norm(x)))
            .collect();
        let ir = self.inner.rank(&Permutation::from_vec_unchecked(lead))?;
        if ir + 1 == self.inner.size() {
            Ok(Transition::raw(nb + self.outer.transition_at(r)?.index()))
        } else {
            self.inner.transition_at(ir)
        }
    }
}

/// The cyclic ℓ∞ snake of length `n` (`4 ≤ n ≤ 10`), verified before return.
pub fn build_linf_snake(n: usize, variant: Variant) -> Result<GrayCode> {
    LinfSnake::new(n, variant)?.build()
}

/// One block starting at `sigma`: `n_block` pushes of `t_(n_block+1)` followed
/// by a complete `(n_block-1)`-RMGC on the leading `n_block - 1` entries,
/// without its closing `t_2`. `sigma` must start with one value followed by
/// `n_block` values of the opposite parity.
pub fn build_block(sigma: &Permutation, n_block: usize) -> Result<GrayCode> {
    if !(2..=RMGC_MAX_ORDER + 1).contains(&n_block) || sigma.len() < n_block + 1 {
        return Err(Error::Precondition(format!(
            "block of {n_block} values inside a permutation of length {}",
            sigma.len()
        )));
    }
    let v = sigma.values();
    let head_parity = v[0] % 2;
    if v[1..=n_block].iter().any(|&x| x % 2 == head_parity) {
        return Err(Error::Precondition(format!(
            "{sigma}: positions 2..={} must all have the parity opposite to position 1",
            n_block + 1
        )));
    }
    let inner = build_rmgc(n_block - 1)?.code().transition_indices();
    let mut transitions = vec![n_block + 1; n_block];
    transitions.extend_from_slice(&inner[..inner.len().saturating_sub(1)]);
    GrayCode::from_indices(sigma.clone(), &transitions, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::verify_codewords;

    fn p(v: &[u32]) -> Permutation {
        Permutation::from_slice(v).unwrap()
    }

    #[test]
    fn block_of_two() {
        let b = build_block(&p(&[1, 2, 4, 3]), 2).unwrap();
        assert_eq!(
            b.expand().unwrap(),
            vec![p(&[1, 2, 4, 3]), p(&[4, 1, 2, 3]), p(&[2, 4, 1, 3])]
        );
    }

    #[test]
    fn block_sizes_and_distance() {
        for nb in 2..=4 {
            let mut v = vec![1u32];
            v.extend((1..=nb as u32).map(|k| 2 * k));
            v.extend((1..nb as u32 + 1).map(|k| 2 * k + 1));
            let b = build_block(&p(&v), nb).unwrap();
            let words = b.expand().unwrap();
            assert_eq!(words.len() as u64, nb as u64 + factorial(nb - 1));
            assert!(
                verify_codewords(&words, Metric::Linf).valid,
                "n_block = {nb}"
            );
        }
    }

    #[test]
    fn block_ends_with_swapped_pair_for_three_or_more() {
        for nb in 3..=5 {
            let mut v = vec![1u32];
            v.extend((1..=nb as u32).map(|k| 2 * k));
            v.extend((1..nb as u32).map(|k| 2 * k + 1));
            let sigma = p(&v);
            let last = build_block(&sigma, nb).unwrap().codewords().last().unwrap();
            let mut expected = sigma.clone();
            for _ in 0..nb {
                expected = expected
                    .push_top(Transition::new(nb + 1, v.len()).unwrap())
                    .unwrap();
            }
            expected = expected
                .push_top(Transition::new(2, v.len()).unwrap())
                .unwrap();
            assert_eq!(last, expected);
        }
    }

    #[test]
    fn block_parity_precondition() {
        assert!(build_block(&p(&[1, 2, 3, 4]), 2).is_err());
        assert!(build_block(&p(&[1, 2, 3]), 3).is_err());
        assert!(build_block(&p(&[1, 2, 4, 3]), 1).is_err());
    }

    #[test]
    fn order_four_codewords() {
        let code = build_linf_snake(4, Variant::OddTop).unwrap();
        let expected: Vec<Permutation> = [
            [1, 2, 4, 3],
            [4, 1, 2, 3],
            [2, 4, 1, 3],
            [3, 2, 4, 1],
            [4, 3, 2, 1],
            [2, 4, 3, 1],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(code.expand().unwrap(), expected);
    }

    #[test]
    fn sizes_match_formula() {
        let expected = [
            (4, 6),
            (5, 18),
            (6, 30),
            (7, 120),
            (8, 240),
            (9, 1200),
            (10, 3480),
        ];
        for (n, m) in expected {
            assert_eq!(linf_size(n, Variant::OddTop).unwrap(), m, "n = {n}");
        }
        assert_eq!(linf_size(5, Variant::EvenTop).unwrap(), 2 * (3 + 2));
        assert!(linf_size(3, Variant::OddTop).is_err());
        assert!(linf_size(11, Variant::OddTop).is_err());
    }

    #[test]
    fn start_is_documented_sigma0() {
        let s = LinfSnake::new(7, Variant::OddTop).unwrap();
        assert_eq!(s.start(), p(&[1, 2, 4, 6, 3, 5, 7]));
        let e = LinfSnake::new(7, Variant::EvenTop).unwrap();
        assert_eq!(e.start(), p(&[2, 1, 3, 5, 7, 4, 6]));
    }

    #[test]
    fn successor_push_phase() {
        let s = LinfSnake::new(4, Variant::OddTop).unwrap();
        assert_eq!(s.successor(&p(&[1, 2, 4, 3])).unwrap().index(), 3);
    }

    #[test]
    fn functions_agree_with_expansion() {
        for variant in [Variant::OddTop, Variant::EvenTop] {
            for n in 4..=7 {
                let s = LinfSnake::new(n, variant).unwrap();
                let words = s.build().unwrap().expand().unwrap();
                assert_eq!(words.len() as u64, s.size());
                for (k, w) in words.iter().enumerate() {
                    assert_eq!(s.rank(w).unwrap(), k as u64, "{variant:?} n = {n}");
                    assert_eq!(&s.unrank(k as u64).unwrap(), w);
                    let next = w.push_top(s.successor(w).unwrap()).unwrap();
                    assert_eq!(next, words[(k + 1) % words.len()]);
                }
            }
        }
    }

    #[test]
    fn block_boundaries_are_regular() {
        let s = LinfSnake::new(7, Variant::OddTop).unwrap();
        let words = s.build().unwrap().expand().unwrap();
        let bs = s.block_size() as usize;
        for (k, w) in words.iter().enumerate() {
            let t = s.successor(w).unwrap().index();
            assert_eq!(t > s.nb + 1, k % bs == bs - 1, "k = {k}");
            if k % bs >= s.nb {
                // after the push phase the first nb positions hold block values
                assert!(w.values()[..s.nb].iter().all(|&x| x % 2 == 0));
            }
        }
    }

    #[test]
    fn rejects_non_codewords() {
        let s = LinfSnake::new(5, Variant::OddTop).unwrap();
        assert!(s.rank(&p(&[1, 2, 3, 4, 5])).is_err());
        assert!(s.successor(&p(&[2, 1, 3, 4, 5])).is_err());
        assert!(s.rank(&p(&[1, 2, 3])).is_err());
        assert!(s.unrank(18).is_err());
    }
}
