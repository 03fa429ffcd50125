//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every line is printed even when an earlier check fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rmsnake::bounds::{even_push_upper, ksnake_density, linf_upper, trivial_upper};
use rmsnake::code::{adjacent_transpositions, balance_gap, bfs_distances, verify_snake};
use rmsnake::ksnake::{build_ksnake, ksnake_size, rank_k, successor_k, unrank_k};
use rmsnake::linf::{build_linf_snake, linf_size, LinfSnake, Variant};
use rmsnake::perm::factorial;
use rmsnake::search::{
    a5_snake, extend_to_complete, longest_snake, parse_octal_code, verify_a5_snake, SearchSpec,
    LINF_OCTAL_CODES,
};
use rmsnake::{Metric, Permutation};

fn p(v: &[u32]) -> Permutation {
    Permutation::from_slice(v).unwrap()
}

fn within(start: Instant, limit: Duration) {
    let t = start.elapsed();
    assert!(t < limit, "took {t:?}, limit {limit:?}");
}

fn sizes() {
    let t = Instant::now();
    for (n, m) in [(3, 3), (5, 45), (7, 1575), (9, 99225)] {
        let code = build_ksnake(n).unwrap();
        assert_eq!(code.len(), m, "N = {n}");
        assert_eq!(ksnake_size(n).unwrap(), m as u64);
    }
    within(t, Duration::from_secs(1));
}

/// The order-5 code printed column by column: `(column, k, codeword)` for
/// `σ_k` of that column.
const COLUMNS: [(u64, u64, [u32; 5]); 21] = [
    (0, 2, [5, 3, 1, 2, 4]),
    (0, 5, [1, 2, 4, 5, 3]),
    (0, 6, [4, 1, 2, 5, 3]),
    (0, 10, [1, 2, 5, 3, 4]),
    (0, 11, [5, 1, 2, 3, 4]),
    (0, 0, [1, 2, 3, 4, 5]),
    (0, 1, [3, 1, 2, 4, 5]),
    (1, 2, [2, 3, 1, 4, 5]),
    (1, 5, [1, 4, 5, 2, 3]),
    (1, 6, [5, 1, 4, 2, 3]),
    (1, 10, [1, 4, 2, 3, 5]),
    (1, 11, [2, 1, 4, 3, 5]),
    (1, 0, [1, 4, 3, 5, 2]),
    (1, 1, [3, 1, 4, 5, 2]),
    (2, 2, [4, 3, 1, 5, 2]),
    (2, 5, [1, 5, 2, 4, 3]),
    (2, 6, [2, 1, 5, 4, 3]),
    (2, 10, [1, 5, 4, 3, 2]),
    (2, 11, [4, 1, 5, 3, 2]),
    (2, 0, [1, 5, 3, 2, 4]),
    (2, 1, [3, 1, 5, 2, 4]),
];

fn order5_columns() {
    let t = Instant::now();
    let code = build_ksnake(5).unwrap();
    let words = code.expand().unwrap();
    let steps = code.transition_indices();
    for (col, k, w) in COLUMNS {
        // each column of 15 starts at its σ_2 and ends at σ_1
        let pos = (15 * col + (k + 13) % 15) as usize;
        assert_eq!(words[pos], p(&w), "column {col}, σ_{k}");
    }
    // down arrows are runs of t_5
    for col in 0..3usize {
        for (from, to) in [(2, 5), (6, 10), (11, 15)] {
            for k in from..to {
                assert_eq!(steps[15 * col + k - 2], 5, "column {col}, after σ_{k}");
            }
        }
        // σ_1 of one column to σ_2 of the next
        assert_eq!(steps[15 * col + 14], 3);
    }
    let stitch = p(&[3, 1, 2, 4, 5])
        .push_top(rmsnake::Transition::new(3, 5).unwrap())
        .unwrap();
    assert_eq!(stitch, p(&[2, 3, 1, 4, 5]));
    within(t, Duration::from_secs(1));
}

fn ksnake_validity() {
    let t = Instant::now();
    for n in [3, 5, 7] {
        let code = build_ksnake(n).unwrap();
        let report = verify_snake(&code, Metric::Kendall).unwrap();
        assert!(report.valid, "N = {n}: {report:?}");
        assert_eq!(report.size as u64, ksnake_size(n).unwrap());
    }
    let code = build_ksnake(9).unwrap();
    assert!(code.transitions().iter().all(|t| t.is_odd()));
    assert!(code.codewords().all(|w| w.is_even()));
    assert_eq!(code.expand().unwrap().len(), 99225);
    within(t, Duration::from_secs(60));
}

fn ksnake_round_trips() {
    let t = Instant::now();
    for n in [3, 5, 7] {
        let code = build_ksnake(n).unwrap();
        let words = code.expand().unwrap();
        let m = words.len();
        let mut s = code.start().clone();
        for step in 0..m {
            assert_eq!(s, words[step]);
            assert_eq!(rank_k(&s).unwrap(), step as u64);
            assert_eq!(unrank_k(n, step as u64).unwrap(), s);
            s = s.push_top(successor_k(&s).unwrap()).unwrap();
        }
        assert_eq!(&s, code.start(), "N = {n}: walk does not close");
    }
    within(t, Duration::from_secs(30));
}

fn balance() {
    let t = Instant::now();
    for n in [5, 7, 9] {
        let gap = balance_gap(&build_ksnake(n).unwrap()).unwrap();
        assert!(gap <= n + 2, "N = {n}: gap {gap}");
    }
    within(t, Duration::from_secs(60));
}

fn linf_construction() {
    let t = Instant::now();
    for n in 4..=10usize {
        let (p, q) = (n.div_ceil(2), n / 2);
        let expected = factorial(p) * (q as u64 + factorial(q - 1));
        let code = build_linf_snake(n, Variant::OddTop).unwrap();
        assert_eq!(code.len() as u64, expected, "n = {n}");
        assert_eq!(linf_size(n, Variant::OddTop).unwrap(), expected);
        assert!(verify_snake(&code, Metric::Linf).unwrap().valid, "n = {n}");
    }
    for n in 4..=7 {
        let snake = LinfSnake::new(n, Variant::OddTop).unwrap();
        let words = snake.build().unwrap().expand().unwrap();
        let m = words.len();
        let mut s = snake.start();
        for step in 0..m {
            assert_eq!(s, words[step]);
            assert_eq!(snake.rank(&s).unwrap(), step as u64);
            assert_eq!(snake.unrank(step as u64).unwrap(), s);
            s = s.push_top(snake.successor(&s).unwrap()).unwrap();
        }
        assert_eq!(s, snake.start(), "n = {n}: walk does not close");
    }
    within(t, Duration::from_secs(60));
}

fn octal_codes() {
    let t = Instant::now();
    let sizes: Vec<usize> = LINF_OCTAL_CODES.iter().map(|c| c.2).collect();
    assert_eq!(sizes, vec![6, 30, 90]);
    for (n, octal, size) in LINF_OCTAL_CODES {
        let code = parse_octal_code(n, octal).unwrap();
        assert!(code.is_cyclic());
        assert_eq!(code.expand().unwrap().len(), size);
        assert!(verify_snake(&code, Metric::Linf).unwrap().valid, "n = {n}");
    }
    within(t, Duration::from_secs(1));
}

fn a5_code() {
    let t = Instant::now();
    let code = a5_snake().unwrap();
    assert!(code.is_cyclic());
    let words = code.expand().unwrap();
    assert_eq!(words.len(), 57);
    let r = verify_a5_snake().unwrap();
    assert!(r.snake.valid && r.all_even);
    assert_eq!(r.complement.len(), 3);
    // the three missing permutations share the entries in positions 4 and 5
    let tail = &r.complement[0].values()[3..];
    assert!(r.complement.iter().all(|c| &c.values()[3..] == tail));
    assert!(r
        .complement
        .iter()
        .all(|c| c.is_even() && !words.contains(c)));

    let ext = extend_to_complete(&code).unwrap();
    assert!(!ext.is_cyclic());
    let all = ext.expand().unwrap();
    assert_eq!(all.len(), 60);
    assert!(all.iter().all(Permutation::is_even));
    assert!(verify_snake(&ext, Metric::Kendall).unwrap().valid);
    within(t, Duration::from_secs(1));
}

fn search() {
    let t = Instant::now();
    let r = longest_snake(&SearchSpec::new(4, Metric::Linf).unwrap()).unwrap();
    assert_eq!(r.size, 6);
    assert!(r.proven_optimal);
    let r = longest_snake(&SearchSpec::new(5, Metric::Linf).unwrap()).unwrap();
    assert!(r.size >= 30, "n = 5 ℓ∞: {}", r.size);
    let mut spec = SearchSpec::new(6, Metric::Linf).unwrap();
    spec.allowed = vec![5, 6];
    let r = longest_snake(&spec).unwrap();
    assert!(r.size >= 90, "n = 6 ℓ∞: {}", r.size);
    within(t, Duration::from_secs(60));

    let t = Instant::now();
    let r = longest_snake(&SearchSpec::new(5, Metric::Kendall).unwrap()).unwrap();
    assert_eq!(r.size, 57);
    assert!(r.proven_optimal && r.exhausted);
    assert!(r.best.codewords().all(|w| w.is_even()));
    assert!(verify_snake(&r.best, Metric::Kendall).unwrap().valid);
    within(t, Duration::from_secs(30 * 60));
}

fn bounds() {
    assert_eq!(trivial_upper(5).unwrap(), 60);
    assert_eq!(even_push_upper(5).unwrap(), 60);
    assert_eq!(even_push_upper(7).unwrap(), 2519);
    assert_eq!(even_push_upper(9).unwrap(), 181439);
    assert_eq!([4, 5, 6].map(|n| linf_upper(n).unwrap()), [6, 30, 90]);
    assert_eq!(ksnake_density(3).unwrap(), Ratio::new(1, 2));
    assert_eq!(ksnake_density(5).unwrap(), Ratio::new(3, 8));
    for n in (5..=19u128).step_by(2) {
        let h = (n - 1) / 2;
        let r = ksnake_density(n as usize).unwrap() / ksnake_density(n as usize - 2).unwrap();
        assert_eq!(r, Ratio::new(2 * h - 1, 2 * h));
    }
    for n in [3, 5, 7, 9] {
        let m = ksnake_size(n).unwrap() as u128;
        assert_eq!(
            ksnake_density(n).unwrap(),
            Ratio::new(m, factorial(n) as u128)
        );
    }
}

fn bfs_table(n: usize) -> HashMap<(Permutation, Permutation), usize> {
    let perms: Vec<Permutation> = (0..factorial(n))
        .map(|r| Permutation::from_lex_rank(n, r).unwrap())
        .collect();
    let mut table = HashMap::new();
    for a in &perms {
        for (b, d) in bfs_distances(a, adjacent_transpositions).unwrap() {
            table.insert((a.clone(), b), d);
        }
    }
    table
}

fn kendall_oracle() {
    let t = Instant::now();
    for n in 1..=4 {
        let table = bfs_table(n);
        assert_eq!(table.len() as u64, factorial(n) * factorial(n));
        for ((a, b), d) in &table {
            assert_eq!(a.kendall_distance(b).unwrap() as usize, *d, "{a} {b}");
        }
    }
    let table = bfs_table(5);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let a = Permutation::from_lex_rank(5, rng.gen_range(0..120)).unwrap();
        let b = Permutation::from_lex_rank(5, rng.gen_range(0..120)).unwrap();
        assert_eq!(
            a.kendall_distance(&b).unwrap() as usize,
            table[&(a.clone(), b.clone())]
        );
    }
    within(t, Duration::from_secs(60));
}

fn main() {
    let criteria: [(&str, fn()); 11] = [
        ("K-snake sizes", sizes),
        ("order-5 K-snake columns and stitches", order5_columns),
        ("K-snake validity", ksnake_validity),
        ("K-snake successor/rank/unrank", ksnake_round_trips),
        ("K-snake balance", balance),
        ("ℓ∞ construction", linf_construction),
        ("octal ℓ∞ codes", octal_codes),
        ("57-codeword code over A_5 and its extension", a5_code),
        ("search", search),
        ("bounds", bounds),
        ("Kendall distance vs breadth-first search", kendall_oracle),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = t.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
