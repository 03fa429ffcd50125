//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function returns a JSON string or throws a string error.
//! The plain `*_json` functions carry the logic so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use rmsnake::code::verify_snake;
use rmsnake::ksnake::{build_ksnake, rank_k, unrank_k};
use rmsnake::linf::{LinfSnake, Variant};
use rmsnake::{CodeRecord, GrayCode, Metric, Permutation};

/// Codes above this size are summarised without listing codewords.
pub const LIST_LIMIT: usize = 5040;

#[derive(Serialize)]
struct Generated {
    record: CodeRecord,
    size: usize,
    codewords: Option<Vec<Vec<u32>>>,
}

fn build(family: &str, n: usize, variant: &str) -> Result<(GrayCode, Metric), String> {
    match family {
        "ksnake" => Ok((build_ksnake(n).map_err(|e| e.to_string())?, Metric::Kendall)),
        "linf" => {
            let v: Variant = variant.parse().map_err(|e: rmsnake::Error| e.to_string())?;
            let code = LinfSnake::new(n, v)
                .and_then(|s| s.build())
                .map_err(|e| e.to_string())?;
            Ok((code, Metric::Linf))
        }
        other => Err(format!("unknown family {other:?} (ksnake or linf)")),
    }
}

pub fn generate_json(family: &str, n: usize, variant: &str) -> Result<String, String> {
    let (code, metric) = build(family, n, variant)?;
    let size = code.len();
    let codewords = if size <= LIST_LIMIT {
        let words = code.expand().map_err(|e| e.to_string())?;
        Some(words.into_iter().map(Vec::<u32>::from).collect())
    } else {
        None
    };
    let out = Generated {
        record: CodeRecord::from_code(&code, Some(metric)),
        size,
        codewords,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

pub fn rank_json(family: &str, n: usize, variant: &str, perm: &str) -> Result<String, String> {
    let p: Permutation = perm.parse().map_err(|e: rmsnake::Error| e.to_string())?;
    if p.len() != n {
        return Err(format!("expected a permutation of length {n}"));
    }
    let rank = match family {
        "ksnake" => rank_k(&p),
        "linf" => {
            let v: Variant = variant.parse().map_err(|e: rmsnake::Error| e.to_string())?;
            LinfSnake::new(n, v).and_then(|s| s.rank(&p))
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    let value = match rank {
        Ok(k) => serde_json::json!({ "member": true, "rank": k }),
        Err(rmsnake::Error::NotACodeword { .. }) => serde_json::json!({ "member": false }),
        Err(e) => return Err(e.to_string()),
    };
    Ok(value.to_string())
}

pub fn unrank_json(family: &str, n: usize, variant: &str, rank: u64) -> Result<String, String> {
    let p = match family {
        "ksnake" => unrank_k(n, rank),
        "linf" => {
            let v: Variant = variant.parse().map_err(|e: rmsnake::Error| e.to_string())?;
            LinfSnake::new(n, v).and_then(|s| s.unrank(rank))
        }
        other => return Err(format!("unknown family {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(serde_json::json!({ "perm": Vec::<u32>::from(p) }).to_string())
}

/// Verifies a pasted JSON code record. `metric` may be empty to use the
/// record's own metric.
pub fn verify_json(record: &str, metric: &str) -> Result<String, String> {
    let record =
        CodeRecord::from_json(record.trim()).map_err(|e| format!("malformed record: {e}"))?;
    let metric = match metric {
        "" => record.metric.ok_or("the record has no metric")?,
        "kendall" => Metric::Kendall,
        "linf" => Metric::Linf,
        other => return Err(format!("unknown metric {other:?}")),
    };
    let code = record.to_code().map_err(|e| e.to_string())?;
    if code.len() > LIST_LIMIT {
        return Err(format!(
            "{} codewords is too many to check in the browser",
            code.len()
        ));
    }
    match verify_snake(&code, metric) {
        Ok(report) => serde_json::to_string(&report).map_err(|e| e.to_string()),
        Err(e) => Ok(serde_json::json!({ "valid": false, "error": e.to_string() }).to_string()),
    }
}

#[wasm_bindgen]
pub fn generate(family: &str, n: usize, variant: &str) -> Result<String, JsValue> {
    generate_json(family, n, variant).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rank(family: &str, n: usize, variant: &str, perm: &str) -> Result<String, JsValue> {
    rank_json(family, n, variant, perm).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn unrank(family: &str, n: usize, variant: &str, rank: u64) -> Result<String, JsValue> {
    unrank_json(family, n, variant, rank).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(record: &str, metric: &str) -> Result<String, JsValue> {
    verify_json(record, metric).map_err(|e| JsValue::from_str(&e))
}
