//! Permutations in vector notation and the push-to-the-top algebra.
//!
//! Positions and values are 1-based at every public interface: `σ.at(i)` is
//! the value in position `i`, and `[3,1,2]` denotes the permutation sending
//! 1 to 3, 2 to 1 and 3 to 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported length. `20!` is the largest factorial that fits in a `u64`.
pub const MAX_ORDER: usize = 20;

/// A permutation of `1..=n` in vector notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u8>);

/// A push-to-the-top operation `t_i`, which moves the element in position `i`
/// to position 1. The valid range `2..=n` depends on the permutation it is
/// applied to and is checked on application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transition(u8);

impl Transition {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index < 2 || index > n || n > MAX_ORDER {
            return Err(Error::TransitionOutOfRange { index, n });
        }
        Ok(Transition(index as u8))
    }

    /// Builds a transition without knowing the length it will be applied to.
    pub(crate) const fn raw(index: usize) -> Self {
        Transition(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    pub(crate) fn check(self, n: usize) -> Result<()> {
        if self.index() < 2 || self.index() > n {
            Err(Error::TransitionOutOfRange {
                index: self.index(),
                n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl Permutation {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut seen = [false; MAX_ORDER + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotBijection {
                    n,
                    values: values.iter().map(|&v| v as u32).collect(),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn from_slice(values: &[u32]) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        if values.iter().any(|&v| v == 0 || v as usize > n) {
            return Err(Error::NotBijection {
                n,
                values: values.to_vec(),
            });
        }
        Permutation::new(values.iter().map(|&v| v as u8).collect())
    }

    /// Skips validation; callers guarantee a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Permutation((1..=n as u8).collect()))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; a permutation has at least one element.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The value in (1-based) position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.0[pos - 1]
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: u8) -> usize {
        self.0
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    /// `self ∘ other`, i.e. `result(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.same_len(other)?;
        Ok(Permutation(
            other.0.iter().map(|&j| self.0[j as usize - 1]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// `t_i σ`: the element in position `i` moves to the front.
    pub fn push_top(&self, t: Transition) -> Result<Permutation> {
        t.check(self.len())?;
        let mut out = self.clone();
        out.push_top_in_place(t.index());
        Ok(out)
    }

    #[inline]
    pub(crate) fn push_top_in_place(&mut self, index: usize) {
        debug_assert!((2..=self.len()).contains(&index));
        self.0[..index].rotate_right(1);
    }

    /// Push-to-the-bottom on index `i`: the element in position `n+1-i`
    /// moves to the last position.
    pub fn push_bottom(&self, t: Transition) -> Result<Permutation> {
        let n = self.len();
        t.check(n)?;
        let mut out = self.clone();
        out.0[n - t.index()..].rotate_left(1);
        Ok(out)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let mut seen = [false; MAX_ORDER];
        let mut transpositions = 0usize;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cur = start;
            let mut cycle_len = 0;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.0[cur] as usize - 1;
                cycle_len += 1;
            }
            transpositions += cycle_len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Kendall's τ distance: the least number of adjacent transpositions
    /// turning one permutation into the other. Counts the pairs of values
    /// whose relative order differs between the two.
    pub fn kendall_distance(&self, other: &Permutation) -> Result<u32> {
        self.same_len(other)?;
        Ok(kendall_unchecked(&self.0, &other.0))
    }

    /// `max_i |α(i) − β(i)|`.
    pub fn linf_distance(&self, other: &Permutation) -> Result<u32> {
        self.same_len(other)?;
        Ok(linf_unchecked(&self.0, &other.0))
    }

    /// Lexicographic rank in `S_n`, starting at zero for the identity.
    pub fn lex_rank(&self) -> u64 {
        let n = self.len();
        let mut rank = 0u64;
        let mut used = 0u32;
        for (i, &v) in self.0.iter().enumerate() {
            let smaller_unused = (v as u32 - 1) - (used & ((1u32 << (v - 1)) - 1)).count_ones();
            rank += smaller_unused as u64 * factorial(n - 1 - i);
            used |= 1 << (v - 1);
        }
        rank
    }

    pub fn from_lex_rank(n: usize, mut rank: u64) -> Result<Permutation> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let size = factorial(n);
        if rank >= size {
            return Err(Error::RankOutOfRange { rank, size });
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let f = factorial(i);
            let idx = (rank / f) as usize;
            rank %= f;
            out.push(pool.remove(idx));
        }
        Ok(Permutation(out))
    }

    /// Applies `f` to every value: the result is `f ∘ self`.
    pub(crate) fn map_values(&self, f: impl Fn(u8) -> u8) -> Permutation {
        Permutation::from_vec_unchecked(self.0.iter().map(|&v| f(v)).collect())
    }

    fn same_len(&self, other: &Permutation) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn kendall_unchecked(a: &[u8], b: &[u8]) -> u32 {
    let n = a.len();
    let mut pos_a = [0u8; MAX_ORDER + 1];
    let mut pos_b = [0u8; MAX_ORDER + 1];
    for i in 0..n {
        pos_a[a[i] as usize] = i as u8;
        pos_b[b[i] as usize] = i as u8;
    }
    let mut d = 0;
    for x in 1..=n {
        for y in x + 1..=n {
            if (pos_a[x] < pos_a[y]) != (pos_b[x] < pos_b[y]) {
                d += 1;
            }
        }
    }
    d
}

pub(crate) fn linf_unchecked(a: &[u8], b: &[u8]) -> u32 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.abs_diff(y) as u32)
        .max()
        .unwrap_or(0)
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Permutation::from_slice(&values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0.into_iter().map(u32::from).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `[3,1,2,4,5]`; whitespace around entries and the brackets
    /// themselves are optional.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body);
        let values = body
            .split(',')
            .map(|tok| tok.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParsePermutation(s.to_string()))?;
        Permutation::from_slice(&values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Permutation {
        Permutation::from_slice(v).unwrap()
    }

    fn t(i: usize) -> Transition {
        Transition::raw(i)
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_slice(&[1, 1, 2]).is_err());
        assert!(Permutation::from_slice(&[0, 1]).is_err());
        assert!(Permutation::from_slice(&[1, 4, 2]).is_err());
        assert!(Permutation::from_slice(&[]).is_err());
        assert!(Permutation::identity(21).is_err());
        assert!(Permutation::identity(20).is_ok());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            p(&[2, 1, 3]).compose(&p(&[1, 2, 3])).unwrap(),
            p(&[2, 1, 3])
        );
        assert_eq!(
            p(&[2, 1, 3, 4]).compose(&p(&[3, 1, 4, 2])).unwrap(),
            p(&[3, 2, 4, 1])
        );
        assert!(p(&[1, 2]).compose(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn push_top_examples() {
        assert_eq!(
            p(&[1, 2, 3, 4, 5]).push_top(t(3)).unwrap(),
            p(&[3, 1, 2, 4, 5])
        );
        assert_eq!(
            p(&[2, 3, 1, 4, 5]).push_top(t(5)).unwrap(),
            p(&[5, 2, 3, 1, 4])
        );
        assert!(p(&[1, 2, 3]).push_top(t(4)).is_err());
        assert!(p(&[1, 2, 3]).push_top(t(1)).is_err());
    }

    #[test]
    fn push_bottom_examples() {
        assert_eq!(
            p(&[1, 2, 3, 4, 5]).push_bottom(t(5)).unwrap(),
            p(&[2, 3, 4, 5, 1])
        );
        assert_eq!(p(&[1, 2, 3]).push_bottom(t(2)).unwrap(), p(&[1, 3, 2]));
        assert!(p(&[1, 2, 3]).push_bottom(t(4)).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(6).unwrap().sign(), 1);
        assert_eq!(p(&[2, 1, 3]).sign(), -1);
        assert_eq!(p(&[2, 3, 1]).sign(), 1);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(
            p(&[2, 1, 4, 3])
                .kendall_distance(&p(&[2, 4, 3, 1]))
                .unwrap(),
            2
        );
        assert_eq!(p(&[1, 2, 3]).kendall_distance(&p(&[3, 2, 1])).unwrap(), 3);
        assert_eq!(
            p(&[1, 2, 3, 4]).linf_distance(&p(&[3, 1, 2, 4])).unwrap(),
            2
        );
        assert_eq!(
            p(&[1, 2, 3, 4]).linf_distance(&p(&[4, 3, 1, 2])).unwrap(),
            3
        );
        assert!(p(&[1, 2]).linf_distance(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn text_format() {
        let s: Permutation = "[3,1,2,4,5]".parse().unwrap();
        assert_eq!(s, p(&[3, 1, 2, 4, 5]));
        assert_eq!(s.to_string(), "[3,1,2,4,5]");
        assert_eq!(" [ 2, 1 ] ".parse::<Permutation>().unwrap(), p(&[2, 1]));
        assert!("[1,2,x]".parse::<Permutation>().is_err());
        assert!("[1,3]".parse::<Permutation>().is_err());
    }

    #[test]
    fn lex_rank_round_trip_s4() {
        for r in 0..24 {
            let s = Permutation::from_lex_rank(4, r).unwrap();
            assert_eq!(s.lex_rank(), r);
        }
        assert_eq!(
            Permutation::from_lex_rank(4, 0).unwrap(),
            Permutation::identity(4).unwrap()
        );
        assert!(Permutation::from_lex_rank(4, 24).is_err());
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    fn arb_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
        (1..=max_n).prop_flat_map(|n| {
            let base: Vec<u8> = (1..=n as u8).collect();
            (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
                .prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
        })
    }

    fn arb_triple(max_n: usize) -> impl Strategy<Value = [Permutation; 3]> {
        (1..=max_n).prop_flat_map(|n| {
            let base: Vec<u8> = (1..=n as u8).collect();
            [
                Just(base.clone()).prop_shuffle(),
                Just(base.clone()).prop_shuffle(),
                Just(base).prop_shuffle(),
            ]
            .prop_map(|vs| vs.map(|v| Permutation::new(v).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn operators_preserve_bijection(s in arb_perm(10)) {
            for i in 2..=s.len() {
                let top = s.push_top(t(i)).unwrap();
                let bottom = s.push_bottom(t(i)).unwrap();
                prop_assert!(Permutation::new(top.clone().into_values()).is_ok());
                prop_assert!(Permutation::new(bottom.into_values()).is_ok());
            }
            prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
            prop_assert!(s.inverse().compose(&s).unwrap().is_identity());
        }

        #[test]
        fn t2_is_an_involution(s in arb_perm(10)) {
            prop_assume!(s.len() >= 2);
            prop_assert_eq!(s.push_top(t(2)).unwrap().push_top(t(2)).unwrap(), s);
        }

        #[test]
        fn push_bottom_as_push_tops(s in arb_perm(7)) {
            // push_bottom(k) = t_m^(m-1) t_(m+1-k) in S_m
            let m = s.len();
            prop_assume!(m >= 2);
            for k in 2..=m {
                // t_1 is the identity
                let mut via_top = if k == m { s.clone() } else { s.push_top(t(m + 1 - k)).unwrap() };
                for _ in 0..m - 1 {
                    via_top = via_top.push_top(t(m)).unwrap();
                }
                prop_assert_eq!(via_top, s.push_bottom(t(k)).unwrap());
            }
        }

        #[test]
        fn push_top_sign_law(s in arb_perm(8)) {
            for i in 2..=s.len() {
                let expected = s.sign() * if (i - 1) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(s.push_top(t(i)).unwrap().sign(), expected);
            }
        }

        #[test]
        fn distances_are_metrics([a, b, c] in arb_triple(7)) {
            for d in [
                |x: &Permutation, y: &Permutation| x.kendall_distance(y).unwrap(),
                |x: &Permutation, y: &Permutation| x.linf_distance(y).unwrap(),
            ] {
                prop_assert_eq!(d(&a, &a), 0);
                prop_assert_eq!(d(&a, &b), d(&b, &a));
                prop_assert_eq!(d(&a, &b) == 0, a == b);
                prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
            }
        }

        #[test]
        fn compose_is_pointwise((a, b) in arb_pair(8)) {
            let c = a.compose(&b).unwrap();
            for i in 1..=a.len() {
                prop_assert_eq!(c.at(i), a.at(b.at(i) as usize));
            }
        }

        #[test]
        fn lex_rank_round_trip(s in arb_perm(12)) {
            prop_assert_eq!(Permutation::from_lex_rank(s.len(), s.lex_rank()).unwrap(), s);
        }

        #[test]
        fn display_parse_round_trip(s in arb_perm(20)) {
            prop_assert_eq!(s.to_string().parse::<Permutation>().unwrap(), s);
        }
    }
}
