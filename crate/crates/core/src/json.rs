//! The JSON interchange record for codes:
//! `{"n":5,"metric":"kendall","start":[...],"transitions":[...],"cyclic":true}`.

use serde::{Deserialize, Serialize};

use crate::code::{GrayCode, Metric};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub n: usize,
    pub metric: Option<Metric>,
    pub start: Vec<u32>,
    pub transitions: Vec<usize>,
    pub cyclic: bool,
}

impl CodeRecord {
    pub fn from_code(code: &GrayCode, metric: Option<Metric>) -> Self {
        CodeRecord {
            n: code.n(),
            metric,
            start: code.start().clone().into(),
            transitions: code.transition_indices(),
            cyclic: code.is_cyclic(),
        }
    }

    /// Checks the record and builds the code. Expansion is not performed.
    pub fn to_code(&self) -> Result<GrayCode> {
        let start = Permutation::from_slice(&self.start)?;
        if start.len() != self.n {
            return Err(Error::StartLength {
                start: start.len(),
                n: self.n,
            });
        }
        GrayCode::from_indices(start, &self.transitions, self.cyclic)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let code =
            GrayCode::from_indices(Permutation::identity(3).unwrap(), &[3, 3, 3], true).unwrap();
        let json = CodeRecord::from_code(&code, Some(Metric::Kendall)).to_json();
        assert_eq!(
            json,
            r#"{"n":3,"metric":"kendall","start":[1,2,3],"transitions":[3,3,3],"cyclic":true}"#
        );
        let back = CodeRecord::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert_eq!(back.to_code().unwrap(), code);
    }

    #[test]
    fn null_metric_and_bad_records() {
        let r = CodeRecord::from_json(
            r#"{"n":2,"metric":null,"start":[2,1],"transitions":[],"cyclic":false}"#,
        )
        .unwrap();
        assert_eq!(r.metric, None);
        assert!(r.to_code().is_ok());
        let bad = CodeRecord {
            n: 3,
            metric: None,
            start: vec![1, 2],
            transitions: vec![],
            cyclic: false,
        };
        assert!(bad.to_code().is_err());
        let bad = CodeRecord {
            n: 3,
            metric: None,
            start: vec![1, 2, 3],
            transitions: vec![4],
            cyclic: false,
        };
        assert!(bad.to_code().is_err());
        assert!(CodeRecord::from_json("{").is_err());
    }
}
