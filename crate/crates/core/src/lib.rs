//! Snake-in-the-box codes over permutations under Kendall's τ and the ℓ∞
//! metric, built from push-to-the-top transitions.
//!
//! * [`perm`]: permutations, push-to-the-top/bottom, sign and both metrics.
//! * [`code`]: Gray codes, expansion and the snake verifier.
//! * [`rmgc`]: complete rank-modulation Gray codes with rank and unrank.
//! * [`ksnake`]: cyclic Kendall snakes over `A_N` for odd `N`.
//! * [`linf`]: cyclic ℓ∞ snakes.
//! * [`search`]: exhaustive search and computer-found codes.
//! * [`bounds`]: upper bounds and size tables.

pub mod bounds;
pub mod code;
pub mod error;
pub mod json;
pub mod ksnake;
pub mod linf;
pub mod perm;
pub mod rmgc;
pub mod search;

pub use code::{GrayCode, Metric, SnakeReport};
pub use error::{Error, Result};
pub use json::CodeRecord;
pub use perm::{Permutation, Transition};
