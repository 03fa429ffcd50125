//! Rebuilds reference artifacts and compares them with embedded copies.

use clap::ValueEnum;
use serde_json::json;

use rmsnake::bounds::{even_push_upper, ksnake_density, linf_upper, trivial_upper};
use rmsnake::code::verify_snake;
use rmsnake::ksnake::build_ksnake;
use rmsnake::search::{
    a5_snake, extend_to_complete, parse_octal_code, verify_a5_snake, LINF_OCTAL_CODES,
};
use rmsnake::{Metric, Permutation, Transition};

use crate::Failed;

#[derive(Clone, Copy, ValueEnum)]
pub enum Artifact {
    /// The (5,45) Kendall snake, column by column.
    Fig1,
    /// The computer-found (5,57) Kendall snake and its (5,60) extension.
    Fig2,
    /// The three octal-encoded ℓ∞ snakes.
    Fig3,
    /// Bound and density values.
    TableBounds,
}

/// `(column, k, σ_k)`; each column of 15 codewords starts at its `σ_2`.
const ORDER5_COLUMNS: [(usize, usize, [u32; 5]); 21] = [
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

struct Checks {
    artifact: &'static str,
    failures: Vec<String>,
}

impl Checks {
    fn new(artifact: &'static str) -> Self {
        Checks {
            artifact,
            failures: vec![],
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        eprintln!("{} {what}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            self.failures.push(what);
        }
    }

    fn finish(self, extra: serde_json::Value) -> anyhow::Result<()> {
        let ok = self.failures.is_empty();
        println!(
            "{}",
            json!({ "artifact": self.artifact, "ok": ok, "failures": self.failures, "details": extra })
        );
        if ok {
            Ok(())
        } else {
            Err(Failed(format!("{} does not reproduce", self.artifact)).into())
        }
    }
}

pub fn run(artifact: Artifact) -> anyhow::Result<()> {
    match artifact {
        Artifact::Fig1 => fig1(),
        Artifact::Fig2 => fig2(),
        Artifact::Fig3 => fig3(),
        Artifact::TableBounds => table_bounds(),
    }
}

fn fig1() -> anyhow::Result<()> {
    let mut c = Checks::new("fig1");
    let code = build_ksnake(5)?;
    let words = code.expand()?;
    let steps = code.transition_indices();
    c.check(
        words.len() == 45,
        format!("45 codewords (got {})", words.len()),
    );
    for (col, k, w) in ORDER5_COLUMNS {
        let pos = 15 * col + (k + 13) % 15;
        let expected = Permutation::from_slice(&w)?;
        c.check(
            words.get(pos) == Some(&expected),
            format!("column {col} σ_{k} = {expected}"),
        );
    }
    for col in 0..3 {
        c.check(
            steps[15 * col + 14] == 3,
            format!("column {col} is left by t_3"),
        );
    }
    let stitched = Permutation::from_slice(&[3, 1, 2, 4, 5])?.push_top(Transition::new(3, 5)?)?;
    c.check(
        stitched == Permutation::from_slice(&[2, 3, 1, 4, 5])?,
        "[3,1,2,4,5] →t3 [2,3,1,4,5]",
    );
    c.finish(json!({ "size": words.len() }))
}

fn fig2() -> anyhow::Result<()> {
    let mut c = Checks::new("fig2");
    let code = a5_snake()?;
    let r = verify_a5_snake()?;
    c.check(
        r.snake.size == 57,
        format!("57 codewords (got {})", r.snake.size),
    );
    c.check(code.is_cyclic(), "cyclic");
    c.check(r.all_even, "all codewords even");
    c.check(r.snake.valid, "Kendall snake");
    c.check(r.complement.len() == 3, "3 even permutations missing");
    let same_tail = r
        .complement
        .windows(2)
        .all(|w| w[0].values()[3..] == w[1].values()[3..]);
    c.check(same_tail, "missing permutations agree in positions 4 and 5");
    let ext = extend_to_complete(&code)?;
    let ext_words = ext.expand()?;
    c.check(
        ext_words.len() == 60 && !ext.is_cyclic(),
        "extension has 60 codewords, not cyclic",
    );
    c.check(
        verify_snake(&ext, Metric::Kendall)?.valid,
        "extension is a Kendall snake",
    );
    let complement: Vec<String> = r.complement.iter().map(ToString::to_string).collect();
    c.finish(json!({ "complement": complement, "extension_start": ext.start().to_string() }))
}

fn fig3() -> anyhow::Result<()> {
    let mut c = Checks::new("fig3");
    let mut sizes = vec![];
    for (n, octal, size) in LINF_OCTAL_CODES {
        match parse_octal_code(n, octal) {
            Ok(code) => {
                sizes.push(code.len());
                c.check(
                    code.len() == size,
                    format!("n = {n}: {size} codewords (got {})", code.len()),
                );
                c.check(
                    verify_snake(&code, Metric::Linf)?.valid,
                    format!("n = {n}: ℓ∞ snake"),
                );
            }
            Err(e) => c.check(false, format!("n = {n}: {e}")),
        }
    }
    c.finish(json!({ "sizes": sizes }))
}

fn table_bounds() -> anyhow::Result<()> {
    let mut c = Checks::new("table-bounds");
    for (n, v) in [(2, 1), (3, 3), (5, 60)] {
        c.check(trivial_upper(n)? == v, format!("n!/2 at n = {n} is {v}"));
    }
    for (n, v) in [(5, 60), (7, 2519), (9, 181439)] {
        c.check(
            even_push_upper(n)? == v,
            format!("even-push bound at n = {n} is {v}"),
        );
    }
    for (n, v) in [(2, 1), (4, 6), (5, 30), (6, 90), (7, 630)] {
        c.check(linf_upper(n)? == v, format!("ℓ∞ bound at n = {n} is {v}"));
    }
    for (n, v) in [(3, "1/2"), (5, "3/8")] {
        c.check(
            ksnake_density(n)?.to_string() == v,
            format!("K-snake density at N = {n} is {v}"),
        );
    }
    c.finish(json!({}))
}
