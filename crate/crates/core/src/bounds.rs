//! Closed-form upper bounds on snake sizes and the size/density table of the
//! two constructions.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ksnake::ksnake_size;
use crate::linf::{linf_size, Variant, LINF_MAX_ORDER, LINF_MIN_ORDER};
use crate::perm::{factorial, MAX_ORDER};

fn check(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "bound for n = {n} ({min}..={MAX_ORDER})"
        )));
    }
    Ok(())
}

/// `n!/2`: a Kendall snake holds at most one of `σ` and `t_2 σ`.
pub fn trivial_upper(n: usize) -> Result<u64> {
    check(n, 2)?;
    Ok(factorial(n) / 2)
}

/// `⌊n!/2 - C(⌊n/2⌋-1, 2)/(n-1)⌋`, the bound for Kendall snakes that use
/// even-index pushes.
pub fn even_push_upper(n: usize) -> Result<u64> {
    check(n, 2)?;
    let k = (n / 2).saturating_sub(1) as u64;
    let binom = k * k.saturating_sub(1) / 2;
    let exact = Ratio::new(factorial(n) as u128, 2) - Ratio::new(binom as u128, (n - 1) as u128);
    Ok(exact.floor().to_integer() as u64)
}

/// `n!/2^⌊n/2⌋`: each class of permutations related by swapping the values
/// `2k-1` and `2k` is at pairwise ℓ∞ distance 1.
pub fn linf_upper(n: usize) -> Result<u64> {
    check(n, 1)?;
    Ok(factorial(n) >> (n / 2))
}

/// `M_N / N!` for the K-snake of odd length `N = 2h+1`, equal to
/// `(2h)! / (h!² 4^h)`.
pub fn ksnake_density(n: usize) -> Result<Ratio<u128>> {
    if n < 3 || n.is_multiple_of(2) || n > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "K-snake density for N = {n} (odd, 3..={MAX_ORDER})"
        )));
    }
    let h = (n - 1) / 2;
    Ok((1..=h as u128).fold(Ratio::from_integer(1), |d, m| {
        d * Ratio::new(2 * m - 1, 2 * m)
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub trivial_upper: u64,
    pub even_push_upper: u64,
    pub linf_upper: u64,
    pub ksnake_size: Option<u64>,
    /// As `"num/den"`.
    pub ksnake_density: Option<String>,
    pub ksnake_rate: Option<f64>,
    pub linf_size: Option<u64>,
    pub linf_rate: Option<f64>,
}

fn rate(m: u64, n: usize) -> f64 {
    (m as f64).log2() / (factorial(n) as f64).log2()
}

pub fn bounds_row(n: usize) -> Result<BoundsRow> {
    let odd = n % 2 == 1 && n >= 3;
    let ks = if odd { Some(ksnake_size(n)?) } else { None };
    let ls = if (LINF_MIN_ORDER..=LINF_MAX_ORDER).contains(&n) {
        Some(linf_size(n, Variant::OddTop)?)
    } else {
        None
    };
    Ok(BoundsRow {
        n,
        trivial_upper: trivial_upper(n)?,
        even_push_upper: even_push_upper(n)?,
        linf_upper: linf_upper(n)?,
        ksnake_size: ks,
        ksnake_density: if odd {
            Some(ksnake_density(n)?.to_string())
        } else {
            None
        },
        ksnake_rate: ks.map(|m| rate(m, n)),
        linf_size: ls,
        linf_rate: ls.map(|m| rate(m, n)),
    })
}

pub fn bounds_table(range: std::ops::RangeInclusive<usize>) -> Result<Vec<BoundsRow>> {
    range.map(bounds_row).collect()
}

/// Fixed-width text rendering of [`bounds_table`].
pub fn format_table(rows: &[BoundsRow]) -> String {
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    let optf = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
    let mut out = format!(
        "{:>3} {:>20} {:>20} {:>18} {:>14} {:>12} {:>8} {:>10} {:>8}\n",
        "n",
        "n!/2",
        "even-push",
        "linf-upper",
        "K-snake",
        "density",
        "K-rate",
        "linf-size",
        "l-rate"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:>20} {:>20} {:>18} {:>14} {:>12} {:>8} {:>10} {:>8}\n",
            r.n,
            r.trivial_upper,
            r.even_push_upper,
            r.linf_upper,
            opt(r.ksnake_size),
            r.ksnake_density.clone().unwrap_or_else(|| "-".into()),
            optf(r.ksnake_rate),
            opt(r.linf_size),
            optf(r.linf_rate),
        ));
    }
    out
}
