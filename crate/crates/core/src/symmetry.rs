//! Palindrome verdicts on Betti tables.
//!
//! A table is symmetric when some shift `m` makes `dim_{m-k} = dim_k` for
//! every degree `k`. Over the integers the only possible shift is the sum of
//! the lowest and highest nonzero degrees; tables rolled up modulo `2N` are
//! tested against every residue.

use std::fmt;

use serde::Serialize;

use crate::complexes::{betti, reduced_betti, BettiTable, ComplexPair, Flavor, SimplicialComplex};
use crate::error::{Result, TopologyError};
use crate::exactness::{lefschetz_duality_check, DualityReport};
use crate::spaces::{truncated_double, BoundarySplit};

/// A degree where the candidate shift fails, with both dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: i64,
    pub shift: i64,
    /// `dim_k`
    pub dim_degree: usize,
    /// `dim_{m-k}`
    pub dim_mirror: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    pub symmetric: bool,
    /// Every valid shift; residues in `0..2N` for rolled tables.
    pub shifts: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl fmt::Display for SymmetryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symmetric {
            write!(f, "symmetric (shift {:?})", self.shifts)
        } else if let Some(w) = self.witness {
            write!(
                f,
                "asymmetric: with m = {}, dim H_{} = {} but dim H_{} = {}",
                w.shift,
                w.shift - w.degree,
                w.dim_mirror,
                w.degree,
                w.dim_degree
            )
        } else {
            write!(f, "asymmetric")
        }
    }
}

/// Tests the unique candidate shift `min + max` of the support; an empty
/// table is symmetric with shift 0.
pub fn check_symmetry(table: &BettiTable) -> SymmetryVerdict {
    let (Some(lo), Some(hi)) = (table.min_degree(), table.max_degree()) else {
        return SymmetryVerdict {
            symmetric: true,
            shifts: vec![0],
            witness: None,
        };
    };
    let m = lo + hi;
    let failure = (lo..=hi)
        .map(|k| (k, table.get(k), table.get(m - k)))
        .find(|(_, here, mirror)| here != mirror);
    match failure {
        None => SymmetryVerdict {
            symmetric: true,
            shifts: vec![m],
            witness: None,
        },
        Some((degree, dim_degree, dim_mirror)) => SymmetryVerdict {
            symmetric: false,
            shifts: Vec::new(),
            witness: Some(Witness {
                degree,
                shift: m,
                dim_degree,
                dim_mirror,
            }),
        },
    }
}

/// Verdict on the reduced table of the region `P` of a sphere. The empty
/// region keeps its degree -1 class, giving shift -2.
pub fn check_sphere_action(p: &SimplicialComplex) -> SymmetryVerdict {
    check_symmetry(&reduced_betti(p))
}

/// Betti dimensions summed over residue classes modulo `2N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RolledTable {
    pub modulus: usize,
    pub entries: Vec<usize>,
}

impl RolledTable {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(TopologyError::ParameterOutOfRange {
                name: "rolled table".into(),
                reason: format!("length {} is not a positive even number", entries.len()),
            });
        }
        Ok(Self {
            modulus: entries.len(),
            entries,
        })
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    fn at(&self, k: i64) -> usize {
        self.entries[k.rem_euclid(self.modulus as i64) as usize]
    }
}

/// Rolls a table up modulo `2n`.
pub fn roll_up(table: &BettiTable, n: usize) -> Result<RolledTable> {
    if n == 0 {
        return Err(TopologyError::ZeroModulus);
    }
    let modulus = 2 * n;
    let mut entries = vec![0; modulus];
    for (&k, &d) in table.nonzero() {
        entries[k.rem_euclid(modulus as i64) as usize] += d;
    }
    Ok(RolledTable { modulus, entries })
}

/// Tests every residue shift cyclically.
pub fn check_symmetry_rolled(rolled: &RolledTable) -> SymmetryVerdict {
    let n = rolled.modulus as i64;
    let shifts: Vec<i64> = (0..n)
        .filter(|&m| (0..n).all(|k| rolled.at(m - k) == rolled.at(k)))
        .collect();
    SymmetryVerdict {
        symmetric: !shifts.is_empty(),
        shifts,
        witness: None,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Roll tables up modulo `2N` for this `N`.
    pub modulus: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not_applicable",
        })
    }
}

/// `H_*(M_T, minus)` against twice `H_*(W, P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor2Report {
    pub doubled: BettiTable,
    pub expected: BettiTable,
    pub status: CheckStatus,
}

pub fn factor2_check(split: &BoundarySplit) -> Result<Factor2Report> {
    let double = truncated_double(split)?;
    let doubled = betti(
        &ComplexPair::new(double.complex, double.minus)?,
        Flavor::Relative,
    )?;
    let expected = betti(
        &ComplexPair::new(split.complex().clone(), split.positive().clone())?,
        Flavor::Relative,
    )?
    .scaled(2);
    let status = CheckStatus::from_bool(doubled.same_dims(&expected));
    Ok(Factor2Report {
        doubled,
        expected,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RolledReport {
    pub table: RolledTable,
    pub verdict: SymmetryVerdict,
}

/// Everything computed for one split domain.
#[derive(Clone, Debug)]
pub struct ActionReport {
    /// `H_*(W, P)`
    pub positive: BettiTable,
    /// `H_*(W, Nn)`
    pub negative: BettiTable,
    pub verdict_positive: SymmetryVerdict,
    pub verdict_negative: SymmetryVerdict,
    pub duality: CheckStatus,
    pub duality_table: Option<DualityReport>,
    pub factor2: Factor2Report,
    /// Rolled positive table, when a modulus was requested.
    pub rolled: Option<RolledReport>,
}

impl ActionReport {
    pub fn regions_agree(&self) -> bool {
        self.verdict_positive.symmetric == self.verdict_negative.symmetric
    }
}

pub fn analyze_action(split: &BoundarySplit, options: &AnalyzeOptions) -> Result<ActionReport> {
    let w = split.complex();
    let positive = betti(
        &ComplexPair::new(w.clone(), split.positive().clone())?,
        Flavor::Relative,
    )?;
    let negative = betti(
        &ComplexPair::new(w.clone(), split.negative().clone())?,
        Flavor::Relative,
    )?;
    let (duality, duality_table) = match lefschetz_duality_check(split) {
        Ok(r) => (CheckStatus::from_bool(r.passed), Some(r)),
        Err(TopologyError::NotAPseudomanifold { .. }) => (CheckStatus::NotApplicable, None),
        Err(e) => return Err(e),
    };
    let rolled = match options.modulus {
        Some(n) => {
            let table = roll_up(&positive, n)?;
            let verdict = check_symmetry_rolled(&table);
            Some(RolledReport { table, verdict })
        }
        None => None,
    };
    Ok(ActionReport {
        verdict_positive: check_symmetry(&positive),
        verdict_negative: check_symmetry(&negative),
        positive,
        negative,
        duality,
        duality_table,
        factor2: factor2_check(split)?,
        rolled,
    })
}
