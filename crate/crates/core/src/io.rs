//! On-disk family format: `{"n": 3, "vectors": [[0,0,0],[1,0,0]]}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{Family, IntSeq};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    pub vectors: Vec<Vec<u32>>,
}

impl FamilyFile {
    /// Rows in canonical order.
    pub fn from_family(family: &Family) -> Self {
        FamilyFile {
            n: family.dim(),
            vectors: family.iter().map(|x| x.entries().to_vec()).collect(),
        }
    }

    /// Rejects rows of the wrong length and duplicate rows.
    pub fn to_family(&self) -> Result<Family> {
        let mut seen = BTreeSet::new();
        for (i, row) in self.vectors.iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::MalformedFamily(format!(
                    "row {i} has length {}, expected {}",
                    row.len(),
                    self.n
                )));
            }
            if !seen.insert(row) {
                return Err(Error::MalformedFamily(format!("row {i} is a duplicate")));
            }
        }
        Family::from_members(self.n, self.vectors.iter().cloned().map(IntSeq::new))
    }

    /// One vector per line, comma separated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.vectors {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}
