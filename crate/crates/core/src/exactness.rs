//! Chain-level checks of exact sequences and dimension-level duality.
//!
//! Maps on homology are computed in explicit bases: each source class
//! representative is pushed forward at the chain level, its class is read
//! off in the target basis, and the difference from the chosen
//! representatives is certified to be a boundary by solving for a bounding
//! chain. Exactness of the long exact sequence of a pair is then checked as
//! an equality of subspaces at every slot.

use std::fmt;

use crate::complexes::{
    betti, BettiTable, ChainComplex, ComplexPair, Flavor, HomologyBasis, Simplex, SimplicialComplex,
};
use crate::error::{Result, TopologyError};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::spaces::BoundarySplit;

#[derive(Clone, Debug)]
enum ModelKind {
    Reduced,
    Relative(ComplexPair),
}

/// A chain complex with a fixed homology basis: either the augmented
/// complex of a space or the quotient complex of a pair.
#[derive(Clone, Debug)]
pub struct HomologyModel {
    kind: ModelKind,
    chains: ChainComplex,
    basis: HomologyBasis,
}

impl HomologyModel {
    pub fn reduced(complex: &SimplicialComplex) -> Self {
        let chains = ChainComplex::reduced(complex);
        let basis = HomologyBasis::compute(&chains);
        Self {
            kind: ModelKind::Reduced,
            chains,
            basis,
        }
    }

    pub fn relative(pair: &ComplexPair) -> Self {
        let chains = ChainComplex::relative(pair);
        let basis = HomologyBasis::compute(&chains);
        Self {
            kind: ModelKind::Relative(pair.clone()),
            chains,
            basis,
        }
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.basis.dim(degree)
    }

    /// Cells that the quotient sends to zero.
    fn kills(&self, cell: &Simplex) -> bool {
        match &self.kind {
            ModelKind::Reduced => false,
            ModelKind::Relative(p) => cell.is_empty() || p.sub().contains(cell),
        }
    }
}

/// Evidence that a pushed-forward representative lies in the class given
/// by the matrix column: `image - sum(reps) = boundary(correction)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    pub image: BitVec,
    pub correction: BitVec,
}

/// One degree of a map on homology.
#[derive(Clone, Debug)]
pub struct DegreeMap {
    pub source_degree: i64,
    pub target_degree: i64,
    /// Target dimension by source dimension; column `j` is the image of
    /// source basis class `j`.
    pub matrix: Gf2Matrix,
    pub witnesses: Vec<ClassWitness>,
}

#[derive(Clone, Debug, Default)]
pub struct HomologyMap {
    pub degrees: Vec<DegreeMap>,
}

impl HomologyMap {
    pub fn at(&self, source_degree: i64) -> Option<&DegreeMap> {
        self.degrees
            .iter()
            .find(|d| d.source_degree == source_degree)
    }

    pub fn rank(&self, source_degree: i64) -> usize {
        self.at(source_degree).map_or(0, |d| d.matrix.rank())
    }
}

fn map_classes(
    source: &HomologyModel,
    source_degree: i64,
    target: &HomologyModel,
    target_degree: i64,
    push: impl Fn(&BitVec) -> Result<BitVec>,
) -> Result<DegreeMap> {
    let target_n = target.chains.n_cells(target_degree);
    let mut columns = Vec::new();
    let mut witnesses = Vec::new();
    for rep in source.basis.representatives(source_degree) {
        let image = push(rep)?;
        let coords = target
            .basis
            .coordinates(target_degree, &image)
            .ok_or_else(|| {
                TopologyError::Internal(format!(
                    "image of a degree-{source_degree} class is not a cycle"
                ))
            })?;
        let mut residual = target.basis.combine(target_degree, &coords, target_n);
        residual.xor_assign(&image);
        let correction = target
            .chains
            .boundary(target_degree + 1)
            .solve_preimage(&residual)?
            .ok_or_else(|| {
                TopologyError::Internal("class coordinates are off by a non-boundary".into())
            })?;
        columns.push(coords);
        witnesses.push(ClassWitness { image, correction });
    }
    Ok(DegreeMap {
        source_degree,
        target_degree,
        matrix: Gf2Matrix::from_columns(target.dim(target_degree), &columns)?,
        witnesses,
    })
}

/// The map on homology induced by cell identity between two models, in
/// every degree. Cells missing from the target must be killed there.
pub fn induced_between(source: &HomologyModel, target: &HomologyModel) -> Result<HomologyMap> {
    let top = source.chains.top_degree().max(target.chains.top_degree());
    let degrees = (-1..=top)
        .map(|k| {
            map_classes(source, k, target, k, |chain| {
                let (image, dropped) = source.chains.transfer(k, chain, &target.chains);
                match dropped.into_iter().find(|c| !target.kills(c)) {
                    Some(c) => Err(TopologyError::NotAnInclusion {
                        part: "source chain",
                        simplex: c,
                    }),
                    None => Ok(image),
                }
            })
        })
        .collect::<Result<_>>()?;
    Ok(HomologyMap { degrees })
}

/// An inclusion of pairs `(X, A) -> (Y, B)`.
#[derive(Clone, Debug)]
pub struct PairMorphism {
    source: ComplexPair,
    target: ComplexPair,
}

impl PairMorphism {
    pub fn new(source: ComplexPair, target: ComplexPair) -> Result<Self> {
        if let Some(s) = source
            .ambient()
            .iter()
            .find(|s| !target.ambient().contains(s))
        {
            return Err(TopologyError::NotAnInclusion {
                part: "ambient complex",
                simplex: s.clone(),
            });
        }
        if let Some(s) = source.sub().iter().find(|s| !target.sub().contains(s)) {
            return Err(TopologyError::NotAnInclusion {
                part: "subcomplex",
                simplex: s.clone(),
            });
        }
        Ok(Self { source, target })
    }

    pub fn identity(pair: ComplexPair) -> Self {
        Self {
            source: pair.clone(),
            target: pair,
        }
    }
}

/// Map on relative homology induced by an inclusion of pairs.
pub fn induced_map(morphism: &PairMorphism) -> Result<HomologyMap> {
    induced_between(
        &HomologyModel::relative(&morphism.source),
        &HomologyModel::relative(&morphism.target),
    )
}

/// Boundary map `H_{k+1}(X, A) -> H~_k(A)` from prebuilt models.
fn connecting_from_models(
    relative: &HomologyModel,
    ambient: &HomologyModel,
    sub: &HomologyModel,
    k: i64,
) -> Result<DegreeMap> {
    map_classes(relative, k + 1, sub, k, |chain| {
        // lift to the ambient complex, take the boundary there, and
        // restrict to the subcomplex
        let (lift, dropped) = relative.chains.transfer(k + 1, chain, &ambient.chains);
        if !dropped.is_empty() {
            return Err(TopologyError::Internal(
                "relative cell missing from ambient".into(),
            ));
        }
        let boundary = ambient.chains.boundary(k + 1).mul_vec(&lift)?;
        let (restricted, outside) = ambient.chains.transfer(k, &boundary, &sub.chains);
        if let Some(c) = outside.first() {
            return Err(TopologyError::Internal(format!(
                "boundary of a relative cycle leaves the subcomplex at {c}"
            )));
        }
        Ok(restricted)
    })
}

/// The connecting homomorphism `H_{k+1}(X, A) -> H~_k(A)` of the long exact
/// sequence of the pair.
pub fn connecting_map(pair: &ComplexPair, k: i64) -> Result<HomologyMap> {
    let relative = HomologyModel::relative(pair);
    let ambient = HomologyModel::reduced(pair.ambient());
    let sub = HomologyModel::reduced(pair.sub());
    Ok(HomologyMap {
        degrees: vec![connecting_from_models(&relative, &ambient, &sub, k)?],
    })
}

/// One group of the long exact sequence and the exactness test there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSlot {
    pub group: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub image_in_kernel: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    pub slots: Vec<LesSlot>,
    pub first_failure: Option<usize>,
}

impl LesReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for LesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slots {
            writeln!(
                f,
                "{:>12}  dim {:>3}  in {:>3}  out {:>3}  {}",
                s.group,
                s.dim,
                s.rank_in,
                s.rank_out,
                if s.exact { "exact" } else { "NOT EXACT" }
            )?;
        }
        Ok(())
    }
}

/// Subspace test: image of `incoming` equals kernel of `outgoing`.
fn slot_exactness(incoming: &Gf2Matrix, outgoing: &Gf2Matrix, dim: usize) -> Result<(bool, bool)> {
    let kernel = outgoing.kernel_basis();
    let kernel_matrix = Gf2Matrix::from_columns(dim, &kernel)?;
    let mut contained = true;
    for col in incoming.columns() {
        if kernel_matrix.solve_preimage(&col)?.is_none() {
            contained = false;
            break;
        }
    }
    let ranks_add_up = incoming.rank() + outgoing.rank() == dim;
    Ok((contained, contained && ranks_add_up))
}

/// Assembles `... -> H~_k(A) -> H~_k(X) -> H_k(X,A) -> H~_{k-1}(A) -> ...`
/// and checks image = kernel at every group, from the top degree down to -1.
pub fn les_exactness_check(pair: &ComplexPair) -> Result<LesReport> {
    let relative = HomologyModel::relative(pair);
    let ambient = HomologyModel::reduced(pair.ambient());
    let sub = HomologyModel::reduced(pair.sub());
    let inclusion = induced_between(&sub, &ambient)?;
    let projection = induced_between(&ambient, &relative)?;

    // (label, dim, outgoing map)
    let mut chain: Vec<(String, usize, Gf2Matrix)> = Vec::new();
    let top = pair.ambient().dimension().max(0);
    for k in (-1..=top).rev() {
        let i_k = inclusion.at(k).map(|d| d.matrix.clone());
        let j_k = projection.at(k).map(|d| d.matrix.clone());
        let delta = if k >= 0 {
            connecting_from_models(&relative, &ambient, &sub, k - 1)?.matrix
        } else {
            Gf2Matrix::zeros(0, relative.dim(k))
        };
        chain.push((
            format!("H~{k}(A)"),
            sub.dim(k),
            i_k.unwrap_or_else(|| Gf2Matrix::zeros(ambient.dim(k), sub.dim(k))),
        ));
        chain.push((
            format!("H~{k}(X)"),
            ambient.dim(k),
            j_k.unwrap_or_else(|| Gf2Matrix::zeros(relative.dim(k), ambient.dim(k))),
        ));
        chain.push((format!("H{k}(X,A)"), relative.dim(k), delta));
    }

    let mut slots = Vec::with_capacity(chain.len());
    let mut first_failure = None;
    for (i, (label, dim, outgoing)) in chain.iter().enumerate() {
        let incoming = match i {
            0 => Gf2Matrix::zeros(*dim, 0),
            _ => chain[i - 1].2.clone(),
        };
        if incoming.n_rows() != *dim || outgoing.n_cols() != *dim {
            return Err(TopologyError::Internal(format!(
                "shape mismatch at {label}: incoming {}x{}, outgoing {}x{}, dim {dim}",
                incoming.n_rows(),
                incoming.n_cols(),
                outgoing.n_rows(),
                outgoing.n_cols()
            )));
        }
        let (image_in_kernel, exact) = slot_exactness(&incoming, outgoing, *dim)?;
        if !exact && first_failure.is_none() {
            first_failure = Some(i);
        }
        slots.push(LesSlot {
            group: label.clone(),
            dim: *dim,
            rank_in: incoming.rank(),
            rank_out: outgoing.rank(),
            image_in_kernel,
            exact,
        });
    }
    Ok(LesReport {
        slots,
        first_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MayerVietorisOutcome {
    /// `dim H_k(X, U_A ∪ U_B) = dim H_k(V_A, U_A) + dim H_k(V_B, U_B)` for all k.
    Holds,
    Mismatch {
        degree: i64,
    },
    /// The overlap pair has homology in this degree, so no splitting is claimed.
    OverlapObstruction {
        degree: i64,
    },
}

#[derive(Clone, Debug)]
pub struct MayerVietorisReport {
    pub overlap: BettiTable,
    pub total: BettiTable,
    pub part_a: BettiTable,
    pub part_b: BettiTable,
    pub outcome: MayerVietorisOutcome,
}

impl MayerVietorisReport {
    pub fn holds(&self) -> bool {
        self.outcome == MayerVietorisOutcome::Holds
    }
}

/// Relative Mayer-Vietoris splitting for `X = V_A ∪ V_B` with exit parts
/// `U_A ⊂ V_A`, `U_B ⊂ V_B`.
pub fn mayer_vietoris_check(
    x: &SimplicialComplex,
    v_a: &SimplicialComplex,
    v_b: &SimplicialComplex,
    u_a: &SimplicialComplex,
    u_b: &SimplicialComplex,
) -> Result<MayerVietorisReport> {
    for (part, name) in [(v_a, "V_A"), (v_b, "V_B")] {
        if let Some(s) = part.iter().find(|s| !x.contains(s)) {
            return Err(TopologyError::CoverViolation {
                reason: format!("{s} of {name} is not in X"),
            });
        }
    }
    if let Some(s) = x.iter().find(|s| !v_a.contains(s) && !v_b.contains(s)) {
        return Err(TopologyError::CoverViolation {
            reason: format!("{s} is in neither V_A nor V_B"),
        });
    }
    for (u, v, name) in [(u_a, v_a, "U_A"), (u_b, v_b, "U_B")] {
        if let Some(s) = u.iter().find(|s| !v.contains(s)) {
            return Err(TopologyError::CoverViolation {
                reason: format!("{s} of {name} is outside its piece"),
            });
        }
    }
    let rel = |amb: &SimplicialComplex, sub: &SimplicialComplex| -> Result<BettiTable> {
        betti(
            &ComplexPair::new(amb.clone(), sub.clone())?,
            Flavor::Relative,
        )
    };
    let overlap = rel(&v_a.intersection(v_b), &u_a.intersection(u_b))?;
    let total = rel(x, &u_a.union(u_b))?;
    let part_a = rel(v_a, u_a)?;
    let part_b = rel(v_b, u_b)?;
    let outcome = if let Some(degree) = overlap.min_degree() {
        MayerVietorisOutcome::OverlapObstruction { degree }
    } else {
        let top = x.dimension().max(0);
        match (-1..=top).find(|&k| total.get(k) != part_a.get(k) + part_b.get(k)) {
            Some(degree) => MayerVietorisOutcome::Mismatch { degree },
            None => MayerVietorisOutcome::Holds,
        }
    };
    Ok(MayerVietorisReport {
        overlap,
        total,
        part_a,
        part_b,
        outcome,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityRow {
    pub degree: i64,
    /// `dim H_k(W, N)`
    pub negative: usize,
    /// `dim H_{d-k}(W, P)`
    pub dual_positive: usize,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub dimension: i64,
    pub negative: BettiTable,
    pub positive: BettiTable,
    pub rows: Vec<DualityRow>,
    pub passed: bool,
}

/// Compares `dim H_k(W, N)` with `dim H_{d-k}(W, P)` for every k.
///
/// Requires `W` to be a strongly connected pure pseudomanifold; inputs
/// outside that class are rejected rather than judged.
pub fn lefschetz_duality_check(split: &BoundarySplit) -> Result<DualityReport> {
    let w = split.complex();
    if w.is_empty() {
        return Err(TopologyError::NotAPseudomanifold {
            reason: "empty complex".into(),
        });
    }
    w.validate_pseudomanifold()?;
    // re-validate the split against the boundary
    BoundarySplit::new(
        w.clone(),
        split.positive().clone(),
        split.negative().clone(),
    )?;
    let d = w.dimension();
    let negative = betti(
        &ComplexPair::new(w.clone(), split.negative().clone())?,
        Flavor::Relative,
    )?;
    let positive = betti(
        &ComplexPair::new(w.clone(), split.positive().clone())?,
        Flavor::Relative,
    )?;
    let rows: Vec<DualityRow> = (0..=d)
        .map(|k| DualityRow {
            degree: k,
            negative: negative.get(k),
            dual_positive: positive.get(d - k),
        })
        .collect();
    let passed = rows.iter().all(|r| r.negative == r.dual_positive);
    Ok(DualityReport {
        dimension: d,
        negative,
        positive,
        rows,
        passed,
    })
}
