//! JSON space files: maximal simplices plus optional boundary regions.

use serde::{Deserialize, Serialize};
use topsym_core::{BoundarySplit, SimplicialComplex, TopologyError, Vertex};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub maximal_simplices: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_region: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_region: Option<Vec<Vec<Vertex>>>,
}

/// Byte offset of a 1-based (line, column) position.
fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = bytes
        .split(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum();
    (line_start + column.saturating_sub(1)).min(bytes.len())
}

/// Parses and validates a space file; the regions must form a valid split
/// of the computed boundary.
pub fn parse_space_file(bytes: &[u8]) -> Result<SpaceFile, CliError> {
    let file: SpaceFile = serde_json::from_slice(bytes).map_err(|e| CliError::Parse {
        offset: byte_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.to_split()?;
    Ok(file)
}

fn complex(simplices: &[Vec<Vertex>]) -> Result<SimplicialComplex, TopologyError> {
    SimplicialComplex::from_maximal(simplices.iter().map(|s| s.iter().copied()))
}

impl SpaceFile {
    /// A missing region defaults to the closure of the rest of the boundary;
    /// with neither region the positive region is empty.
    pub fn to_split(&self) -> Result<BoundarySplit, TopologyError> {
        let w = complex(&self.maximal_simplices)?;
        match (&self.positive_region, &self.negative_region) {
            (Some(p), Some(n)) => BoundarySplit::new(w, complex(p)?, complex(n)?),
            (Some(p), None) => BoundarySplit::from_positive(w, complex(p)?),
            (None, Some(n)) => BoundarySplit::from_negative(w, complex(n)?),
            (None, None) => Ok(BoundarySplit::with_empty_positive(w)),
        }
    }

    /// Both regions are written unless both are empty.
    pub fn from_split(name: &str, split: &BoundarySplit) -> Self {
        let listed = |c: &SimplicialComplex| -> Vec<Vec<Vertex>> {
            c.maximal_simplices()
                .into_iter()
                .map(|s| s.vertices().to_vec())
                .collect()
        };
        let regions = !(split.positive().is_empty() && split.negative().is_empty());
        SpaceFile {
            name: name.to_string(),
            maximal_simplices: listed(split.complex()),
            positive_region: regions.then(|| listed(split.positive())),
            negative_region: regions.then(|| listed(split.negative())),
        }
    }

    pub fn to_json(&self) -> String {
        crate::to_json_lines(self)
    }
}
